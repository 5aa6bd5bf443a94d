//! Exact rational linear algebra: rank, span membership, and nullspaces.
//!
//! Everything here is over arbitrary-precision rationals; there is no
//! floating point anywhere. Rank runs fraction-free (Bareiss) on a
//! denominator-cleared integer copy, which keeps the intermediate entries as
//! minors instead of letting fractions pile up. Span solving keeps an
//! incremental echelon basis so one set of vectors can answer many targets.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse vector: sorted `(index, value)` pairs, no explicit zeros.
pub type SparseVec = Vec<(usize, Rat)>;

pub fn sv_unit(i: usize) -> SparseVec {
    vec![(i, Rat::one())]
}

pub fn sv_get(v: &SparseVec, i: usize) -> Rat {
    match v.binary_search_by_key(&i, |e| e.0) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Rat::zero(),
    }
}

/// `dst += c * src`, merging sorted supports.
pub fn sv_add_scaled(dst: &SparseVec, src: &SparseVec, c: &Rat) -> SparseVec {
    if c.is_zero() || src.is_empty() {
        return dst.clone();
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut a, mut b) = (0, 0);
    while a < dst.len() || b < src.len() {
        if b >= src.len() || (a < dst.len() && dst[a].0 < src[b].0) {
            out.push(dst[a].clone());
            a += 1;
        } else if a >= dst.len() || src[b].0 < dst[a].0 {
            out.push((src[b].0, &src[b].1 * c));
            b += 1;
        } else {
            let val = &dst[a].1 + &src[b].1 * c;
            if !val.is_zero() {
                out.push((dst[a].0, val));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub fn sv_add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    sv_add_scaled(a, b, &Rat::one())
}

pub fn sv_sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    sv_add_scaled(a, b, &-Rat::one())
}

pub fn sv_scale(v: &SparseVec, c: &Rat) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, q)| (*i, q * c)).collect()
}

pub fn sv_neg(v: &SparseVec) -> SparseVec {
    v.iter().map(|(i, q)| (*i, -q.clone())).collect()
}

pub fn sv_from_dense(dense: &[Rat]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| (i, q.clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactlaError {
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for ExactlaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactlaError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
        }
    }
}

impl std::error::Error for ExactlaError {}

/// Row-sparse exact rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(p) => {
                if v.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = v;
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    row.insert(p, (c, v));
                }
            }
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        sv_get(&self.data[r], c)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn scale(&self, c: &Rat) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| sv_scale(r, c)).collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| sv_add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut data = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc: SparseVec = Vec::new();
            for (k, v) in &self.data[r] {
                acc = sv_add_scaled(&acc, &other.data[*k], v);
            }
            data.push(acc);
        }
        RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn commutator(&self, other: &RationalMatrix) -> RationalMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for (c, v) in &self.data[r] {
                out.set(*c, r, v.clone());
            }
        }
        out
    }

    pub fn block_diag(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
        let mut out = RationalMatrix::zero(a.rows + b.rows, a.cols + b.cols);
        for r in 0..a.rows {
            out.data[r] = a.data[r].clone();
        }
        for r in 0..b.rows {
            out.data[a.rows + r] = b.data[r]
                .iter()
                .map(|(c, v)| (c + a.cols, v.clone()))
                .collect();
        }
        out
    }

    /// Row-major flattening to a sparse vector of length `rows * cols`.
    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for (c, v) in &self.data[r] {
                out.push((r * self.cols + c, v.clone()));
            }
        }
        out
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        self.data.iter().all(|row| sv_get(row, c).is_zero())
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.data[r].is_empty()
    }

    /// Sparse triplets `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Rat)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for (c, v) in &self.data[r] {
                out.push((r, *c, v.clone()));
            }
        }
        out
    }
}

/// Exact rank via fraction-free Bareiss elimination.
///
/// Rows are first cleared of denominators (which preserves rank); the
/// elimination then stays in integers, every intermediate entry being a minor
/// of the cleared matrix.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let mut lcm = BigInt::one();
        for (_, v) in m.row(r) {
            let d = v.denom();
            lcm = &lcm / num_bigint_gcd(&lcm, d) * d;
        }
        let mut dense = vec![BigInt::zero(); m.cols];
        for (c, v) in m.row(r) {
            dense[*c] = v.numer() * (&lcm / v.denom());
        }
        a.push(dense);
    }
    bareiss_rank(&mut a)
}

fn num_bigint_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    if x.is_zero() {
        BigInt::one()
    } else {
        x
    }
}

fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let found = (pivot_row..rows).find(|&r| !a[r][col].is_zero());
        let Some(r) = found else { continue };
        a.swap(pivot_row, r);
        for i in (pivot_row + 1)..rows {
            for j in (col + 1)..cols {
                let num = &a[pivot_row][col] * &a[i][j] - &a[i][col] * &a[pivot_row][j];
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[pivot_row][col].clone();
        pivot_row += 1;
    }
    pivot_row
}

/// Incremental echelon basis for span-membership queries.
///
/// Vectors are reduced against the stored pivots as they arrive; each stored
/// pivot remembers how it was combined from the input vectors, so membership
/// answers come with exact coefficients.
pub struct SpanSolver {
    dim: usize,
    added: usize,
    /// (pivot index, reduced vector with pivot normalized to 1, combination
    /// over input vectors producing it)
    pivots: Vec<(usize, SparseVec, SparseVec)>,
}

impl SpanSolver {
    pub fn new(dim: usize) -> SpanSolver {
        SpanSolver {
            dim,
            added: 0,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut combo: SparseVec = Vec::new();
        for (p, vec, trans) in &self.pivots {
            let c = sv_get(&rem, *p);
            if !c.is_zero() {
                rem = sv_add_scaled(&rem, vec, &-c.clone());
                combo = sv_add_scaled(&combo, trans, &c);
            }
        }
        (rem, combo)
    }

    /// Add a vector to the span. Returns `None` if it was independent, or the
    /// coefficients over previously added vectors if dependent.
    pub fn push(&mut self, v: SparseVec) -> Result<Option<SparseVec>, ExactlaError> {
        if let Some((i, _)) = v.last() {
            if *i >= self.dim {
                return Err(ExactlaError::DimensionMismatch {
                    expected: self.dim,
                    got: i + 1,
                });
            }
        }
        let idx = self.added;
        self.added += 1;
        let (rem, combo) = self.reduce(&v);
        if rem.is_empty() {
            return Ok(Some(combo));
        }
        let (p, lead) = rem[0].clone();
        let inv = Rat::one() / lead;
        let vec = sv_scale(&rem, &inv);
        // combination producing the normalized remainder: (e_idx - combo)/lead
        let mut trans = sv_neg(&combo);
        trans = sv_add_scaled(&trans, &sv_unit(idx), &Rat::one());
        trans = sv_scale(&trans, &inv);
        self.pivots.push((p, vec, trans));
        self.pivots.sort_by_key(|(p, _, _)| *p);
        Ok(None)
    }

    /// Exact coefficients expressing `target` over the added vectors, if it
    /// lies in their span.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.reduce(target);
        if rem.is_empty() {
            Some(combo)
        } else {
            None
        }
    }
}

/// Rank of a family of sparse vectors of common dimension.
pub fn rank_of(vectors: &[SparseVec], dim: usize) -> usize {
    let mut solver = SpanSolver::new(dim);
    for v in vectors {
        let _ = solver.push(v.clone()).expect("within dimension");
    }
    solver.rank()
}

/// Coefficients expressing `target` in the span of `vectors`, if any.
pub fn solve_in_span(
    vectors: &[SparseVec],
    dim: usize,
    target: &SparseVec,
) -> Result<Option<Vec<Rat>>, ExactlaError> {
    let mut solver = SpanSolver::new(dim);
    for v in vectors {
        solver.push(v.clone())?;
    }
    Ok(solver.solve(target).map(|combo| {
        let mut dense = vec![Rat::zero(); vectors.len()];
        for (i, c) in combo {
            dense[i] = c;
        }
        dense
    }))
}

/// Basis of the right kernel of `m`, exact.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rat>> {
    let cols = m.cols;
    let mut solver = SpanSolver::new(m.rows.max(1));
    let mut kernel = Vec::new();
    let t = m.transpose();
    for j in 0..cols {
        let col = t.row(j).clone();
        match solver.push(col).expect("column within bounds") {
            Some(combo) => {
                let mut vec = vec![Rat::zero(); cols];
                vec[j] = Rat::one();
                for (i, c) in combo {
                    vec[i] = -c;
                }
                kernel.push(vec);
            }
            None => {}
        }
    }
    kernel
}
