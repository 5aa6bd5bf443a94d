//! Explicit matrix representations and homomorphisms of the electrical Lie
//! algebras: the symplectic realization of type A, the direct-sum map for
//! type B, the adjoint-style and scalar maps for type C, and the embedding of
//! the even type-C algebra into odd type D.

use crate::dynkin::{DynkinDiagram, Family, Node};
use crate::exactla::{ratio, Rat, RationalMatrix};
use crate::freelie::{substitute, BracketTree, LieElement};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepsError {
    MissingGenerator(Node),
    SizeMismatch { expected: usize, got: usize },
}

impl fmt::Display for RepsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepsError::MissingGenerator(n) => write!(f, "no image for generator {n}"),
            RepsError::SizeMismatch { expected, got } => {
                write!(f, "matrix size mismatch: expected {expected}, got {got}")
            }
        }
    }
}

impl std::error::Error for RepsError {}

/// Assignment of an exact rational square matrix to every generator.
#[derive(Clone, Debug)]
pub struct Representation {
    pub diagram: DynkinDiagram,
    pub dim: usize,
    images: BTreeMap<Node, RationalMatrix>,
}

impl Representation {
    pub fn new(
        diagram: DynkinDiagram,
        dim: usize,
        images: BTreeMap<Node, RationalMatrix>,
    ) -> Representation {
        for m in images.values() {
            assert_eq!(m.rows, dim);
            assert_eq!(m.cols, dim);
        }
        Representation {
            diagram,
            dim,
            images,
        }
    }

    pub fn image(&self, n: Node) -> &RationalMatrix {
        &self.images[&n]
    }

    /// Homomorphic evaluation: brackets become matrix commutators.
    pub fn evaluate(&self, x: &LieElement) -> Result<RationalMatrix, RepsError> {
        let mut out = RationalMatrix::zero(self.dim, self.dim);
        for (t, c) in x.terms() {
            let m = self.eval_tree(t)?;
            out = out.add(&m.scale(c));
        }
        Ok(out)
    }

    fn eval_tree(&self, t: &BracketTree) -> Result<RationalMatrix, RepsError> {
        match t {
            BracketTree::Leaf(n) => self
                .images
                .get(n)
                .cloned()
                .ok_or(RepsError::MissingGenerator(*n)),
            BracketTree::Pair(l, r) => {
                let ml = self.eval_tree(l)?;
                let mr = self.eval_tree(r)?;
                Ok(ml.commutator(&mr))
            }
        }
    }

    /// Sparse triplet serialization `(row, col, fraction)` per generator.
    pub fn triplets(&self) -> BTreeMap<Node, Vec<(usize, usize, String)>> {
        self.images
            .iter()
            .map(|(n, m)| {
                (
                    *n,
                    m.triplets()
                        .into_iter()
                        .map(|(r, c, v)| (r, c, v.to_string()))
                        .collect(),
                )
            })
            .collect()
    }

    /// Direct sum with another representation of the same diagram.
    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert_eq!(self.diagram, other.diagram);
        let images = self
            .images
            .iter()
            .map(|(n, m)| (*n, RationalMatrix::block_diag(m, other.image(*n))))
            .collect();
        Representation {
            diagram: self.diagram.clone(),
            dim: self.dim + other.dim,
            images,
        }
    }
}

/// The standard skew form `[[0, I], [-I, 0]]` on a space of dimension
/// `2 * half`, with the distinguished covector index `half` (the coordinate
/// whose vanishing carves out the odd symplectic subalgebra).
#[derive(Clone, Copy, Debug)]
pub struct SymplecticForm {
    pub half: usize,
}

impl SymplecticForm {
    pub fn size(&self) -> usize {
        2 * self.half
    }

    pub fn beta_index(&self) -> usize {
        self.half
    }

    pub fn matrix(&self) -> RationalMatrix {
        let h = self.half;
        let mut m = RationalMatrix::zero(2 * h, 2 * h);
        for i in 0..h {
            m.set(i, h + i, Rat::one());
            m.set(h + i, i, -Rat::one());
        }
        m
    }

    /// `m` preserves the form: `J m + m^T J = 0`.
    pub fn contains(&self, m: &RationalMatrix) -> bool {
        let j = self.matrix();
        j.mul(m).add(&m.transpose().mul(&j)).is_zero()
    }
}

/// The symplectic representation of the even type-A algebra on `2n + 2`
/// coordinates: with `a_1 = eps_1`, `a_i = eps_{i-1} + eps_i` and
/// `b_i = eps_i`,
///
/// `e_{2i-1} -> [[0, a_i a_i^T], [0, 0]]`, `e_{2i} -> [[0, 0], [b_i b_i^T, 0]]`.
///
/// Restricting to the first `m` generators gives the representation of every
/// smaller type-A algebra.
pub fn rep_a_even(n: usize) -> Representation {
    let half = n + 1;
    let size = 2 * half;
    let diagram = DynkinDiagram::new(Family::A, size).unwrap();
    let mut images = BTreeMap::new();
    for label in 1..=size {
        let mut m = RationalMatrix::zero(size, size);
        if label % 2 == 1 {
            let i = (label + 1) / 2; // 1-based
            let support: Vec<usize> = if i == 1 { vec![0] } else { vec![i - 2, i - 1] };
            for &r in &support {
                for &c in &support {
                    m.set(r, half + c, Rat::one());
                }
            }
        } else {
            let i = label / 2;
            m.set(half + (i - 1), i - 1, Rat::one());
        }
        images.insert(label - 1, m);
    }
    Representation::new(diagram, size, images)
}

/// Symplectic representation of `e_{A_rank}`, truncated from the smallest
/// even case that contains it (size `rank` for even rank, `rank + 1` for
/// odd).
pub fn rep_a(rank: usize) -> Representation {
    assert!(rank >= 1);
    let size = if rank % 2 == 0 { rank } else { rank + 1 };
    let full = rep_a_even((size - 2) / 2);
    let diagram = DynkinDiagram::new(Family::A, rank).unwrap();
    let images = (0..rank).map(|p| (p, full.image(p).clone())).collect();
    Representation::new(diagram, size, images)
}

/// Membership in the odd symplectic algebra inside `sp_{2n+2}`: the matrix
/// preserves the skew form and its distinguished column (index `n + 1`,
/// 1-based) vanishes; by the symplectic block symmetry the mirrored row
/// (index `2n + 2`) then vanishes as well, and both are checked.
pub fn odd_symplectic_membership(m: &RationalMatrix, n: usize) -> Result<bool, RepsError> {
    let size = 2 * n + 2;
    if m.rows != size || m.cols != size {
        return Err(RepsError::SizeMismatch {
            expected: size,
            got: m.rows,
        });
    }
    let form = SymplecticForm { half: n + 1 };
    Ok(form.contains(m) && m.column_is_zero(n) && m.row_is_zero(size - 1))
}

/// Target of a homomorphism: one algebra or a direct sum of two.
#[derive(Clone, Debug)]
pub enum HomTarget {
    Single(DynkinDiagram),
    Sum(DynkinDiagram, DynkinDiagram),
}

/// Element of a homomorphism target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetElem {
    Single(LieElement),
    Sum(LieElement, LieElement),
}

/// Generator assignment extended multiplicatively to bracket words.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub source: DynkinDiagram,
    pub target: HomTarget,
    pub images: BTreeMap<Node, TargetElem>,
}

impl Homomorphism {
    pub fn apply(&self, x: &LieElement) -> Result<TargetElem, RepsError> {
        match &self.target {
            HomTarget::Single(_) => {
                let assign: BTreeMap<Node, LieElement> = self
                    .images
                    .iter()
                    .map(|(n, e)| match e {
                        TargetElem::Single(v) => (*n, v.clone()),
                        TargetElem::Sum(..) => unreachable!("single target"),
                    })
                    .collect();
                substitute(x, &assign)
                    .map(TargetElem::Single)
                    .map_err(|e| match e {
                        crate::freelie::FreeLieError::MissingAssignment(n) => {
                            RepsError::MissingGenerator(n)
                        }
                    })
            }
            HomTarget::Sum(..) => {
                let mut left = BTreeMap::new();
                let mut right = BTreeMap::new();
                for (n, e) in &self.images {
                    match e {
                        TargetElem::Sum(l, r) => {
                            left.insert(*n, l.clone());
                            right.insert(*n, r.clone());
                        }
                        TargetElem::Single(_) => unreachable!("sum target"),
                    }
                }
                let l = substitute(x, &left);
                let r = substitute(x, &right);
                match (l, r) {
                    (Ok(l), Ok(r)) => Ok(TargetElem::Sum(l, r)),
                    _ => Err(RepsError::MissingGenerator(0)),
                }
            }
        }
    }
}

/// The type-B splitting map into `e_{A_n} (+) e_{A_{n-1}}`:
/// `e_1 -> (f_1, 0)`, `e_k -> (f_k, f_k)` for `k >= 2`. In the second
/// summand `f_k` is the generator `k - 1` of a fresh `A_{n-1}`.
pub fn hom_b_to_a_plus_a(n: usize) -> Homomorphism {
    assert!(n >= 2);
    let source = DynkinDiagram::new(Family::B, n).unwrap();
    let ta = DynkinDiagram::new(Family::A, n).unwrap();
    let tb = DynkinDiagram::new(Family::A, n - 1).unwrap();
    let mut images = BTreeMap::new();
    images.insert(
        0,
        TargetElem::Sum(LieElement::generator(0), LieElement::zero()),
    );
    for p in 1..n {
        images.insert(
            p,
            TargetElem::Sum(LieElement::generator(p), LieElement::generator(p - 1)),
        );
    }
    Homomorphism {
        source,
        target: HomTarget::Sum(ta, tb),
        images,
    }
}

/// Block-diagonal matrix realization of the type-B algebra obtained by
/// composing the splitting map with the symplectic representation of each
/// summand.
pub fn rep_b(n: usize) -> Representation {
    assert!(n >= 2);
    let diagram = DynkinDiagram::new(Family::B, n).unwrap();
    let left = rep_a(n);
    let right = rep_a(n - 1);
    let dim = left.dim + right.dim;
    let zero_right = RationalMatrix::zero(right.dim, right.dim);
    let mut images = BTreeMap::new();
    images.insert(0, RationalMatrix::block_diag(left.image(0), &zero_right));
    for p in 1..n {
        images.insert(
            p,
            RationalMatrix::block_diag(left.image(p), right.image(p - 1)),
        );
    }
    Representation::new(diagram, dim, images)
}

/// The type-C matrix map on `(2n)^2` coordinates, with `F[i, j]` the matrix
/// unit in 1-based indexing. Index pairs that fall outside the square are
/// dropped; the boundary cases are validated by the relator checks.
pub fn rep_c_gl(n: usize) -> Representation {
    assert!(n >= 1);
    let rank = 2 * n;
    let diagram = DynkinDiagram::new(Family::C, rank).unwrap();
    let dim = rank * rank;
    let f = |m: &mut RationalMatrix, r: i64, c: i64, v: i64| {
        if r >= 1 && c >= 1 && (r as usize) <= dim && (c as usize) <= dim {
            m.add_to((r - 1) as usize, (c - 1) as usize, ratio(v, 1));
        }
    };
    let mut images = BTreeMap::new();

    let mut e1 = RationalMatrix::zero(dim, dim);
    f(&mut e1, 3, 2, 1);
    f(&mut e1, 4, 3, 1);
    f(&mut e1, 8, 16, -1);
    for j in 3..=(rank as i64) {
        let q = (j - 1) * (j - 1);
        f(&mut e1, q + j, q + j - 1, 1);
        f(&mut e1, q + j + 1, q + j, 1);
        f(&mut e1, q + j + 1, q + j + 2, 1);
    }
    images.insert(0, e1);

    for k in 2..=(rank as i64) {
        let mut ek = RationalMatrix::zero(dim, dim);
        let km1 = (k - 1) * (k - 1);
        let km2 = (k - 2) * (k - 2);
        let k2 = k * k;
        for i in 2..=(2 * k - 2) {
            f(&mut ek, km1 + i, km2 + i - 1, -1);
        }
        f(&mut ek, km1 + 1, km1 + 2, 2);
        if k >= 3 {
            f(&mut ek, km1 + 2 * k - 2, km1 + 2 * k - 1, 1);
        } else {
            f(&mut ek, 3, 4, 2);
        }
        f(&mut ek, k2 + 2, k2 + 1, 1);
        f(&mut ek, k2 + 2, k2 + 3, 1);
        f(&mut ek, km1 + 1, k2 + 2, -2);
        for i in 3..=(2 * k - 1) {
            f(&mut ek, km1 + i - 1, k2 + i, -1);
        }
        f(&mut ek, k2 + 2 * k + 1, k2 + 2 * k, 1);
        f(
            &mut ek,
            (k + 1) * (k + 1) + 2 * k + 2,
            (k + 2) * (k + 2) + 2 * k + 5,
            -1,
        );
        for j in (k + 2)..=(rank as i64) {
            let q = (j - 1) * (j - 1);
            f(&mut ek, q + j - k + 1, q + j - k, 1);
            f(&mut ek, q + j - k + 1, q + j - k + 2, 1);
            f(&mut ek, q + j + k, q + j + k - 1, 1);
            f(&mut ek, q + j + k, q + j + k + 1, 1);
        }
        images.insert((k - 1) as usize, ek);
    }
    Representation::new(diagram, dim, images)
}

/// The scalar map of the even type-C algebra: `e_1 -> 1`, `e_k -> 0`.
pub fn rep_c_scalar(n: usize) -> Representation {
    assert!(n >= 1);
    let rank = 2 * n;
    let diagram = DynkinDiagram::new(Family::C, rank).unwrap();
    let mut images = BTreeMap::new();
    for p in 0..rank {
        let mut m = RationalMatrix::zero(1, 1);
        if p == 0 {
            m.set(0, 0, Rat::one());
        }
        images.insert(p, m);
    }
    Representation::new(diagram, 1, images)
}

/// The matrix map of `rep_c_gl` extended by the scalar map on an extra
/// coordinate. The scalar block separates the central element, making the
/// sum faithful on the whole algebra.
pub fn rep_c_combined(n: usize) -> Representation {
    rep_c_gl(n).direct_sum(&rep_c_scalar(n))
}

/// The embedding of the even type-C algebra into odd type D:
/// `f_1 -> (e_1 + e_1')/2`, `f_k -> e_k`.
pub fn hom_c_into_d(n: usize) -> Homomorphism {
    assert!(n >= 1);
    let source = DynkinDiagram::new(Family::C, 2 * n).unwrap();
    let target = DynkinDiagram::new(Family::D, 2 * n + 1).unwrap();
    let half = ratio(1, 2);
    let mut images = BTreeMap::new();
    images.insert(
        0,
        TargetElem::Single(
            LieElement::generator(0)
                .add(&LieElement::generator(1))
                .scale(&half),
        ),
    );
    for p in 1..(2 * n) {
        images.insert(p, TargetElem::Single(LieElement::generator(p + 1)));
    }
    Homomorphism {
        source,
        target: HomTarget::Single(target),
        images,
    }
}

/// Free-function form of representation evaluation.
pub fn evaluate(x: &LieElement, rep: &Representation) -> Result<RationalMatrix, RepsError> {
    rep.evaluate(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::freelie::bracket;
    use crate::freelie::electrical_relators;

    #[test]
    fn rep_a_even_smallest_case() {
        // n = 0: e1 -> E12, e2 -> E21
        let rep = rep_a_even(0);
        assert_eq!(rep.dim, 2);
        assert_eq!(rep.image(0).get(0, 1), rat(1));
        assert_eq!(rep.image(0).triplets().len(), 1);
        assert_eq!(rep.image(1).get(1, 0), rat(1));
    }

    #[test]
    fn rep_a_even_satisfies_relators() {
        for n in 0..=2 {
            let rep = rep_a_even(n);
            for rel in electrical_relators(&rep.diagram) {
                let m = rep.evaluate(&rel.lhs).unwrap();
                assert!(m.is_zero(), "n={n} relator {}", rel.label);
            }
        }
    }

    #[test]
    fn rep_a_images_are_symplectic() {
        let rep = rep_a_even(2);
        let form = SymplecticForm { half: 3 };
        for p in 0..6 {
            assert!(form.contains(rep.image(p)));
        }
    }

    #[test]
    fn odd_symplectic_examples() {
        let n = 1;
        let zero = RationalMatrix::zero(4, 4);
        assert!(odd_symplectic_membership(&zero, n).unwrap());
        // restriction of the A-representation to the first 2n+1 generators
        // stays inside; the last generator escapes
        let rep = rep_a_even(n);
        for p in 0..3 {
            assert!(odd_symplectic_membership(rep.image(p), n).unwrap());
        }
        assert!(!odd_symplectic_membership(rep.image(3), n).unwrap());
        // size guard
        assert!(odd_symplectic_membership(&RationalMatrix::zero(3, 3), n).is_err());
    }

    #[test]
    fn rep_b_satisfies_relators() {
        for n in 2..=4 {
            let rep = rep_b(n);
            for rel in electrical_relators(&rep.diagram) {
                assert!(
                    rep.evaluate(&rel.lhs).unwrap().is_zero(),
                    "B_{n} relator {}",
                    rel.label
                );
            }
        }
    }

    #[test]
    fn rep_c_gl_satisfies_relators() {
        for n in 2..=3 {
            let rep = rep_c_gl(n);
            for rel in electrical_relators(&rep.diagram) {
                assert!(
                    rep.evaluate(&rel.lhs).unwrap().is_zero(),
                    "C_{} relator {}",
                    2 * n,
                    rel.label
                );
            }
        }
    }

    #[test]
    fn rep_c_gl_entry_14_10() {
        // the doubled word [e1[e1[e2e3]]] has entry (14,10) equal to 1
        let rep = rep_c_gl(2);
        let e1 = LieElement::generator(0);
        let e2 = LieElement::generator(1);
        let e3 = LieElement::generator(2);
        let w = bracket(&e1, &bracket(&e1, &bracket(&e2, &e3)));
        let m = rep.evaluate(&w).unwrap();
        assert_eq!(m.get(13, 9), rat(1));
        assert!(!m.is_zero());
    }

    #[test]
    fn rep_c_scalar_values() {
        let rep = rep_c_scalar(2);
        assert_eq!(
            rep.evaluate(&LieElement::generator(1)).unwrap().get(0, 0),
            rat(0)
        );
        let b = bracket(&LieElement::generator(0), &LieElement::generator(1));
        assert!(rep.evaluate(&b).unwrap().is_zero());
        // every spanning word other than e_1 alone dies under the scalar map
        for w in crate::closure::spanning_basis(&rep.diagram) {
            let elem = LieElement::from_tree(BracketTree::right_nested(&w.seq));
            let image = rep.evaluate(&elem).unwrap();
            if w.seq == vec![0] {
                assert_eq!(image.get(0, 0), rat(1));
            } else {
                assert!(image.is_zero(), "word {:?}", w.seq);
            }
        }
    }

    #[test]
    fn triplet_serialization_is_sparse() {
        let rep = rep_a_even(1);
        let triplets = rep.triplets();
        assert_eq!(triplets.len(), 4);
        // e_3 image is a_2 a_2^T in the upper-right block: four entries
        assert_eq!(triplets[&2].len(), 4);
        for (r, c, v) in &triplets[&2] {
            assert!(*r < 2 && *c >= 2, "upper-right block");
            assert_eq!(v, "1");
        }
    }

    #[test]
    fn combined_c_rep_satisfies_relators() {
        let rep = rep_c_combined(2);
        for rel in electrical_relators(&rep.diagram) {
            assert!(rep.evaluate(&rel.lhs).unwrap().is_zero(), "{}", rel.label);
        }
    }

    #[test]
    fn hom_b_images() {
        let phi = hom_b_to_a_plus_a(3);
        match phi.apply(&LieElement::generator(0)).unwrap() {
            TargetElem::Sum(l, r) => {
                assert_eq!(l, LieElement::generator(0));
                assert!(r.is_zero());
            }
            _ => panic!("sum target"),
        }
    }

    #[test]
    fn hom_c_into_d_images() {
        let phi = hom_c_into_d(2);
        match phi.apply(&LieElement::generator(1)).unwrap() {
            TargetElem::Single(e) => assert_eq!(e, LieElement::generator(2)),
            _ => panic!("single target"),
        }
        match phi.apply(&LieElement::generator(0)).unwrap() {
            TargetElem::Single(e) => {
                let expect = LieElement::generator(0)
                    .add(&LieElement::generator(1))
                    .scale(&ratio(1, 2));
                assert_eq!(e, expect);
            }
            _ => panic!("single target"),
        }
    }
}
