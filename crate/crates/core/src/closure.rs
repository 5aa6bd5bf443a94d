//! Structure-constant tables on the spanning basis indexed by positive
//! roots, built either by pulling back a faithful matrix representation or by
//! closing the presentation directly, plus post-hoc certification.
//!
//! The certificate is what makes either construction sound: a table whose
//! bilinear product satisfies the Jacobi identity, kills every defining
//! relator, and reproduces each basis word from the generator rows defines a
//! Lie algebra that the presented algebra surjects onto. Combined with the
//! spanning bound `dim <= |Phi^+|` this pins the dimension exactly, no matter
//! which heuristics found the constants.

use crate::dynkin::{cartan_matrix, positive_roots, root_decomposition, DynkinDiagram, Node, Root};
use crate::exactla::{
    rat, sv_add, sv_add_scaled, sv_neg, sv_scale, sv_unit, Rat, RationalMatrix, SpanSolver,
    SparseVec,
};
use crate::freelie::{electrical_relators, BracketTree, LieElement};
use crate::reps::Representation;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// How a table was obtained. Certification treats both the same.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    RepDerived,
    ClosureDerived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::RepDerived => write!(f, "rep-derived"),
            Provenance::ClosureDerived => write!(f, "closure-derived"),
        }
    }
}

/// A basis word: positive root plus the generator sequence of its
/// right-nested bracket word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisWord {
    pub root: Root,
    pub seq: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureError {
    NotFaithfulAtThisRank { expected: usize, got: usize },
    NotClosed { description: String },
    ClosureDiverged { cap: usize },
    InconsistentPresentation(String),
    UnknownGenerator(Node),
}

impl fmt::Display for ClosureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureError::NotFaithfulAtThisRank { expected, got } => write!(
                f,
                "representation not faithful at this rank: span rank {got}, need {expected}"
            ),
            ClosureError::NotClosed { description } => {
                write!(f, "bracket escapes the spanning set: {description}")
            }
            ClosureError::ClosureDiverged { cap } => {
                write!(f, "closure exceeded the iteration cap {cap}")
            }
            ClosureError::InconsistentPresentation(s) => {
                write!(f, "inconsistent presentation: {s}")
            }
            ClosureError::UnknownGenerator(n) => write!(f, "generator {n} outside the diagram"),
        }
    }
}

impl std::error::Error for ClosureError {}

/// Exact structure constants `[w_a, w_b] = sum_g c_ab^g w_g` on the basis of
/// spanning words. Antisymmetry and a zero diagonal hold by construction.
#[derive(Clone, Debug)]
pub struct StructureTable {
    pub diagram: DynkinDiagram,
    pub basis: Vec<BasisWord>,
    pub provenance: Provenance,
    index: BTreeMap<Root, usize>,
    constants: Vec<Vec<SparseVec>>,
}

/// Certification outcome. `dimension` equals the basis size exactly when all
/// three flags hold.
#[derive(Clone, Debug)]
pub struct TableCertificate {
    pub jacobi_ok: bool,
    pub relations_ok: bool,
    pub generated_ok: bool,
    pub dimension: usize,
    pub checked_triples: usize,
    pub total_triples: usize,
    pub exhaustive: bool,
    pub failures: Vec<String>,
}

impl TableCertificate {
    pub fn all_ok(&self) -> bool {
        self.jacobi_ok && self.relations_ok && self.generated_ok
    }
}

/// Triples are checked exhaustively up to this basis size, sampled above.
pub const EXHAUSTIVE_JACOBI_LIMIT: usize = 64;

/// Default rewriting-step budget for `table_from_presentation`.
pub fn default_iteration_cap(d: &DynkinDiagram) -> usize {
    let n = crate::dynkin::positive_root_count(d);
    10 * n * n
}

impl StructureTable {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn word_index(&self, root: &Root) -> Option<usize> {
        self.index.get(root).copied()
    }

    /// Index of the basis word of the simple root of `node`.
    pub fn simple_index(&self, node: Node) -> usize {
        self.index[&Root::simple(self.diagram.rank, node)]
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.constants[a][b]
    }

    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                out = sv_add_scaled(&out, &self.constants[*a][*b], &(ca * cb));
            }
        }
        out
    }

    /// Expand a formal element in the basis, mapping generator leaves to the
    /// corresponding simple basis vectors and pairs to table brackets.
    pub fn reduce(&self, x: &LieElement) -> Result<SparseVec, ClosureError> {
        let mut out = SparseVec::new();
        for (t, c) in x.terms() {
            let v = self.reduce_tree(t)?;
            out = sv_add_scaled(&out, &v, c);
        }
        Ok(out)
    }

    fn reduce_tree(&self, t: &BracketTree) -> Result<SparseVec, ClosureError> {
        match t {
            BracketTree::Leaf(n) => {
                if *n >= self.diagram.rank {
                    return Err(ClosureError::UnknownGenerator(*n));
                }
                Ok(sv_unit(self.simple_index(*n)))
            }
            BracketTree::Pair(l, r) => {
                let vl = self.reduce_tree(l)?;
                let vr = self.reduce_tree(r)?;
                Ok(self.bracket_vec(&vl, &vr))
            }
        }
    }

    /// Stacked adjoint-action matrix of all generators: the right kernel is
    /// the center of the algebra.
    pub fn adjoint_stack(&self) -> RationalMatrix {
        let n = self.dimension();
        let gens = self.diagram.rank;
        let mut m = RationalMatrix::zero(gens * n, n);
        for g in 0..gens {
            let gi = self.simple_index(g);
            for b in 0..n {
                for (r, c) in &self.constants[gi][b] {
                    m.set(g * n + r, b, c.clone());
                }
            }
        }
        m
    }

    pub fn render_word(&self, b: usize) -> String {
        crate::freelie::render_tree(
            &BracketTree::right_nested(&self.basis[b].seq),
            &self.diagram,
        )
    }

    /// Exact equality of basis labels and all constants, ignoring provenance.
    pub fn same_constants(&self, other: &StructureTable) -> bool {
        self.diagram == other.diagram
            && self.basis == other.basis
            && self.constants == other.constants
    }

    /// Perturb one constant (and its antisymmetric mirror); test hook for the
    /// mutation check.
    pub fn mutate_constant(&mut self, a: usize, b: usize, gamma: usize, delta: Rat) {
        assert_ne!(a, b);
        let row = sv_add_scaled(&self.constants[a][b], &sv_unit(gamma), &delta);
        self.constants[a][b] = row.clone();
        self.constants[b][a] = sv_neg(&row);
    }

    /// Rescale basis word `t` by a nonzero rational, adjusting the constants
    /// so the table describes the same algebra in the rescaled basis.
    pub fn rescale_basis(&self, t: usize, lambda: &Rat) -> StructureTable {
        assert!(!lambda.is_zero());
        let n = self.dimension();
        let mut constants = vec![vec![SparseVec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut scale = Rat::one();
                if a == t {
                    scale *= lambda;
                }
                if b == t {
                    scale *= lambda;
                }
                let row: SparseVec = self.constants[a][b]
                    .iter()
                    .map(|(g, c)| {
                        let mut v = c * &scale;
                        if *g == t {
                            v /= lambda;
                        }
                        (*g, v)
                    })
                    .collect();
                constants[a][b] = row;
            }
        }
        StructureTable {
            diagram: self.diagram.clone(),
            basis: self.basis.clone(),
            provenance: self.provenance,
            index: self.index.clone(),
            constants,
        }
    }

    /// JSON document: basis words in bracket syntax, constants as exact
    /// fraction strings, keys sorted for byte-stable output.
    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, w)| {
                json!({
                    "root": w.root.0,
                    "word": self.render_word(i),
                })
            })
            .collect();
        let mut constants = Vec::new();
        for a in 0..self.dimension() {
            for b in (a + 1)..self.dimension() {
                if !self.constants[a][b].is_empty() {
                    let terms: Vec<Value> = self.constants[a][b]
                        .iter()
                        .map(|(g, c)| json!({"k": g, "c": c.to_string()}))
                        .collect();
                    constants.push(json!({"i": a, "j": b, "terms": terms}));
                }
            }
        }
        json!({
            "schema": 1,
            "family": self.diagram.family.to_string(),
            "rank": self.diagram.rank,
            "provenance": self.provenance.to_string(),
            "dimension": self.dimension(),
            "basis": basis,
            "constants": constants,
        })
    }
}

/// The ordered spanning basis of `d`: positive roots by height then
/// coefficients, each with its greedy word.
pub fn spanning_basis(d: &DynkinDiagram) -> Vec<BasisWord> {
    positive_roots(d)
        .into_iter()
        .map(|root| {
            let seq = root_decomposition(&root, d).expect("enumerated root decomposes");
            BasisWord { root, seq }
        })
        .collect()
}

struct BasisLayout {
    words: Vec<BasisWord>,
    index: BTreeMap<Root, usize>,
    /// For non-simple words: (head generator, index of the tail word).
    parent: Vec<Option<(Node, usize)>>,
}

fn layout(d: &DynkinDiagram) -> BasisLayout {
    let words = spanning_basis(d);
    let index: BTreeMap<Root, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.root.clone(), i))
        .collect();
    let parent = words
        .iter()
        .map(|w| {
            if w.seq.len() == 1 {
                None
            } else {
                let head = w.seq[0];
                let rest = w.root.minus_simple(head).expect("head occurs in root");
                Some((head, index[&rest]))
            }
        })
        .collect();
    BasisLayout {
        words,
        index,
        parent,
    }
}

/// `[e_i, e_j]` in the basis: zero for equal or commuting pairs, otherwise
/// the signed height-two basis word.
fn pair_value(i: Node, j: Node, d: &DynkinDiagram, index: &BTreeMap<Root, usize>) -> SparseVec {
    if i == j || !d.adjacent(i, j) {
        return SparseVec::new();
    }
    let root = Root::simple(d.rank, i).plus_simple(j);
    let idx = index[&root];
    if i < j {
        sv_unit(idx)
    } else {
        sv_neg(&sv_unit(idx))
    }
}

/// Affine expression over the current stage's unknown generator rows.
#[derive(Clone, Default)]
struct Affine {
    num: SparseVec,
    sym: Vec<(usize, Rat)>,
}

impl Affine {
    fn add_num(&mut self, v: &SparseVec, c: &Rat) {
        self.num = sv_add_scaled(&self.num, v, c);
    }

    fn add_sym(&mut self, id: usize, c: Rat) {
        match self.sym.binary_search_by_key(&id, |e| e.0) {
            Ok(p) => {
                self.sym[p].1 += c;
                if self.sym[p].1.is_zero() {
                    self.sym.remove(p);
                }
            }
            Err(p) => self.sym.insert(p, (id, c)),
        }
    }

    fn add_scaled(&mut self, other: &Affine, c: &Rat) {
        self.add_num(&other.num, c);
        for (id, q) in &other.sym {
            self.add_sym(*id, q * c);
        }
    }
}

struct StageContext<'a> {
    d: &'a DynkinDiagram,
    lay: &'a BasisLayout,
    rows: &'a HashMap<(Node, usize), SparseVec>,
    unknown_ids: &'a HashMap<(Node, usize), usize>,
    steps: &'a mut usize,
    cap: usize,
}

impl<'a> StageContext<'a> {
    fn tick(&mut self) -> Result<(), ClosureError> {
        *self.steps += 1;
        if *self.steps > self.cap {
            return Err(ClosureError::ClosureDiverged { cap: self.cap });
        }
        Ok(())
    }

    /// `[e_g, v]` as an affine expression: resolved rows contribute to the
    /// numeric part, rows of the current stage stay symbolic.
    fn apply_gen(&mut self, g: Node, v: &SparseVec) -> Result<Affine, ClosureError> {
        self.tick()?;
        let mut out = Affine::default();
        for (m, q) in v {
            if let Some(row) = self.rows.get(&(g, *m)) {
                out.add_num(row, q);
            } else if let Some(&id) = self.unknown_ids.get(&(g, *m)) {
                out.add_sym(id, q.clone());
            } else {
                return Err(ClosureError::InconsistentPresentation(format!(
                    "row ({g}, {m}) requested outside its stage"
                )));
            }
        }
        Ok(out)
    }

    /// `[e_g, v]` when every looked-up row is already resolved.
    fn apply_gen_numeric(&mut self, g: Node, v: &SparseVec) -> Result<SparseVec, ClosureError> {
        let a = self.apply_gen(g, v)?;
        if a.sym.is_empty() {
            Ok(a.num)
        } else {
            Err(ClosureError::InconsistentPresentation(
                "symbolic row where a resolved one was required".into(),
            ))
        }
    }

    /// `[w_u, v]` with all intermediate rows resolved. The `u`-coordinate of
    /// `v` contributes nothing (`[w, w] = 0`) and is dropped up front, which
    /// also keeps expansions from cycling through themselves.
    fn word_bracket_numeric(&mut self, u: usize, v: &SparseVec) -> Result<SparseVec, ClosureError> {
        let v: SparseVec = v.iter().filter(|(m, _)| *m != u).cloned().collect();
        if v.is_empty() {
            return Ok(SparseVec::new());
        }
        match self.lay.parent[u] {
            None => self.apply_gen_numeric(self.lay.words[u].seq[0], &v),
            Some((g, u2)) => {
                let t1 = self.word_bracket_numeric(u2, &v)?;
                let r1 = self.apply_gen_numeric(g, &t1)?;
                let t2 = self.apply_gen_numeric(g, &v)?;
                let r2 = self.word_bracket_numeric(u2, &t2)?;
                Ok(sv_add(&r1, &sv_neg(&r2)))
            }
        }
    }

    /// `[w_u, v]`, allowing unknown rows of the current stage to enter the
    /// outermost generator application only.
    fn word_bracket_affine(&mut self, u: usize, v: &SparseVec) -> Result<Affine, ClosureError> {
        let v: SparseVec = v.iter().filter(|(m, _)| *m != u).cloned().collect();
        if v.is_empty() {
            return Ok(Affine::default());
        }
        match self.lay.parent[u] {
            None => self.apply_gen(self.lay.words[u].seq[0], &v),
            Some((g, u2)) => {
                let t1 = self.word_bracket_numeric(u2, &v)?;
                let mut out = self.apply_gen(g, &t1)?;
                let t2 = self.apply_gen_numeric(g, &v)?;
                let r2 = self.word_bracket_affine(u2, &t2)?;
                out.add_scaled(&r2, &-Rat::one());
                Ok(out)
            }
        }
    }

    /// `[x, v]` for a low-height element `x` given as a basis expansion.
    fn elem_bracket_affine(
        &mut self,
        x: &SparseVec,
        v: &SparseVec,
    ) -> Result<Affine, ClosureError> {
        let mut out = Affine::default();
        for (u, q) in x {
            let t = self.word_bracket_affine(*u, v)?;
            out.add_scaled(&t, q);
        }
        Ok(out)
    }

    /// `ad(e_c)^2(e_j)` in the basis: `-2 e_c` on a simply-laced edge, the
    /// signed doubled word on a doubled edge, zero otherwise.
    fn ad2_value(&self, c: Node, j: Node) -> SparseVec {
        let a = cartan_matrix(self.d).entry(c, j);
        match a {
            -1 => sv_scale(
                &sv_unit(self.lay.index[&Root::simple(self.d.rank, c)]),
                &rat(-2),
            ),
            -2 => {
                let root = Root::simple(self.d.rank, c).plus_simple(c).plus_simple(j);
                let idx = self.lay.index[&root];
                // basis word is [e_min, [e_min, e_max]]; flip when c > j
                if c < j {
                    sv_unit(idx)
                } else {
                    sv_neg(&sv_unit(idx))
                }
            }
            _ => SparseVec::new(),
        }
    }

    /// `ad(e_c)^m(e_j)` for `m >= 0`; zero from `m = 3` on, by the relators.
    fn ad_power_gen(&self, c: Node, j: Node, m: usize) -> SparseVec {
        match m {
            0 => sv_unit(self.lay.index[&Root::simple(self.d.rank, j)]),
            1 => pair_value(c, j, self.d, &self.lay.index),
            2 => self.ad2_value(c, j),
            _ => SparseVec::new(),
        }
    }

    /// Numeric expansion of `ad(e_c)^m(w_u)` through the iterated Leibniz
    /// rule, splitting the ad-powers over the head generator and the tail:
    /// `ad^m([x, y]) = sum_s C(m, s) [ad^s(x), ad^{m-s}(y)]`.
    fn ad_power_word(&mut self, c: Node, m: usize, u: usize) -> Result<SparseVec, ClosureError> {
        self.tick()?;
        if m == 0 {
            return Ok(sv_unit(u));
        }
        match self.lay.parent[u] {
            None => Ok(self.ad_power_gen(c, self.lay.words[u].seq[0], m)),
            Some((j, u2)) => {
                let mut out = SparseVec::new();
                for s in 0..=m.min(2) {
                    let head = self.ad_power_gen(c, j, s);
                    if head.is_empty() {
                        continue;
                    }
                    let tail = self.ad_power_word(c, m - s, u2)?;
                    if tail.is_empty() {
                        continue;
                    }
                    let mut term = SparseVec::new();
                    for (w, q) in &head {
                        let t = self.word_bracket_numeric(*w, &tail)?;
                        term = sv_add_scaled(&term, &t, q);
                    }
                    let binom = rat(binomial(m, s));
                    out = sv_add_scaled(&out, &term, &binom);
                }
                Ok(out)
            }
        }
    }
}

fn binomial(m: usize, s: usize) -> i64 {
    let mut num = 1i64;
    for t in 0..s {
        num = num * ((m - t) as i64) / ((t + 1) as i64);
    }
    num
}

/// Close the presentation into a structure table.
///
/// Generator rows `[e_i, w]` are produced height by height. Rows pinned by
/// the relators and by the structural splittings `w = [e_c, w']` are seeded;
/// for the rest, every Jacobi instance
///
/// `[e_i, [e_k, w'']] = [[e_i, e_k], w''] + [e_k, [e_i, w'']]`
///
/// over every splitting of `w` (with the pair bracket expanded through both
/// of its sides), together with an iterated-Leibniz instance for the head
/// run of `w`, is written as an affine relation in the unknown rows of the
/// current height and stacked into one exact linear system. Memoized lower
/// rows keep the expansion work polynomial. The resolved rows are then
/// extended to all basis pairs by the derivation recursion on the left
/// word's head; certification happens separately and post hoc.
pub fn table_from_presentation(
    d: &DynkinDiagram,
    max_iterations: usize,
) -> Result<StructureTable, ClosureError> {
    let lay = layout(d);
    let n = lay.words.len();
    let cap = if max_iterations == 0 {
        default_iteration_cap(d)
    } else {
        max_iterations
    };
    let mut steps = 0usize;

    let mut rows: HashMap<(Node, usize), SparseVec> = HashMap::new();
    // height-one rows are the pair relators; structural rows are exact by
    // the definition of the basis words
    for j in 0..d.rank {
        let bj = lay.index[&Root::simple(d.rank, j)];
        for i in 0..d.rank {
            rows.insert((i, bj), pair_value(i, j, d, &lay.index));
        }
    }
    for (b, p) in lay.parent.iter().enumerate() {
        if let Some((c, pidx)) = p {
            rows.insert((*c, *pidx), sv_unit(b));
        }
    }
    // relator rows: ad(e_i)^2(e_j) = -2 e_i on simply-laced edges (applied to
    // the oriented basis word), ad(e_i)^3(e_j) = 0 on doubled edges
    let cartan = cartan_matrix(d);
    for i in 0..d.rank {
        for j in 0..d.rank {
            if i == j || !d.adjacent(i, j) {
                continue;
            }
            match cartan.entry(i, j) {
                -1 => {
                    let pair_idx = lay.index[&Root::simple(d.rank, i).plus_simple(j)];
                    let ei = lay.index[&Root::simple(d.rank, i)];
                    let sign = if i < j { rat(-2) } else { rat(2) };
                    rows.insert((i, pair_idx), sv_scale(&sv_unit(ei), &sign));
                }
                -2 => {
                    let dbl = Root::simple(d.rank, i).plus_simple(i).plus_simple(j);
                    rows.insert((i, lay.index[&dbl]), SparseVec::new());
                }
                _ => unreachable!("adjacent nodes carry -1 or -2"),
            }
        }
    }

    let max_height = lay.words.last().map(|w| w.root.height()).unwrap_or(1);
    for h in 2..=max_height {
        let stage_words: Vec<usize> = (0..n)
            .filter(|&b| lay.words[b].root.height() == h)
            .collect();
        // unknowns: generator rows at this height not already pinned
        let mut unknown_ids: HashMap<(Node, usize), usize> = HashMap::new();
        let mut id_keys: Vec<(Node, usize)> = Vec::new();
        for &b in &stage_words {
            for i in 0..d.rank {
                if !rows.contains_key(&(i, b)) {
                    unknown_ids.insert((i, b), id_keys.len());
                    id_keys.push((i, b));
                }
            }
        }

        // every equation is one Jacobi or Leibniz instance, written as
        // `affine = X_id`, stacked into one overdetermined linear system
        let mut system: Vec<(Vec<(usize, Rat)>, SparseVec)> = Vec::new();
        let push_eq =
            |system: &mut Vec<(Vec<(usize, Rat)>, SparseVec)>, lhs: Affine, rhs: Affine| {
                // lhs - rhs = 0: coefficient part over unknowns, constant to the
                // right-hand side
                let mut coeffs = lhs.sym;
                for (id, q) in rhs.sym {
                    match coeffs.binary_search_by_key(&id, |e| e.0) {
                        Ok(p) => {
                            coeffs[p].1 -= q;
                            if coeffs[p].1.is_zero() {
                                coeffs.remove(p);
                            }
                        }
                        Err(p) => coeffs.insert(p, (id, -q)),
                    }
                }
                let rhs_vec = sv_add_scaled(&rhs.num, &lhs.num, &-Rat::one());
                if !(coeffs.is_empty() && rhs_vec.is_empty()) {
                    system.push((coeffs, rhs_vec));
                }
            };

        for &b in &stage_words {
            let mut ctx = StageContext {
                d,
                lay: &lay,
                rows: &rows,
                unknown_ids: &unknown_ids,
                steps: &mut steps,
                cap,
            };
            // Jacobi instances over every splitting b = [e_k, w''] with the
            // tail again a positive root: for all generators i,
            // [e_i, [e_k, w'']] = [[e_i, e_k], w''] + [e_k, [e_i, w'']],
            // with the pair bracket expanded through both of its sides.
            let root = lay.words[b].root.clone();
            for k in 0..d.rank {
                let Some(rest) = root.minus_simple(k) else {
                    continue;
                };
                let Some(&widx) = lay.index.get(&rest) else {
                    continue;
                };
                let head_value = ctx.rows.get(&(k, widx)).expect("lower row").clone();
                for i in 0..d.rank {
                    let lhs = ctx.apply_gen(i, &head_value)?;
                    let inner = ctx.rows.get(&(i, widx)).expect("lower row").clone();
                    let tail_term = ctx.apply_gen(k, &inner)?;
                    let pair = pair_value(i, k, d, &lay.index);
                    // route one: expand [[e_i,e_k], w''] through the pair word
                    let mut rhs_a = ctx.elem_bracket_affine(&pair, &sv_unit(widx))?;
                    rhs_a.add_scaled(&tail_term, &Rat::one());
                    push_eq(&mut system, lhs.clone(), rhs_a);
                    // route two: expand it through w'' instead
                    let mut rhs_b = ctx.word_bracket_affine(widx, &pair)?;
                    rhs_b.sym.iter_mut().for_each(|(_, q)| *q = -q.clone());
                    rhs_b.num = sv_neg(&rhs_b.num);
                    rhs_b.add_scaled(&tail_term, &Rat::one());
                    push_eq(&mut system, lhs, rhs_b);
                }
            }
            // Leibniz instance for the head generator: with w = ad(e_c)^r(u)
            // and u = [e_j, u'] (j != c), the relators truncate
            // ad(e_c)^{r+1}(u) at ad^2 on the head.
            let (c, _) = lay.parent[b].expect("stage words are non-simple");
            if unknown_ids.contains_key(&(c, b)) {
                let seq = &lay.words[b].seq;
                let r = seq.iter().take_while(|&&g| g == c).count();
                let mut tail_root = root.clone();
                for _ in 0..r {
                    tail_root = tail_root.minus_simple(c).expect("head run present");
                }
                let u = lay.index[&tail_root];
                let mut lhs = Affine::default();
                lhs.add_sym(unknown_ids[&(c, b)], Rat::one());
                let rhs = match lay.parent[u] {
                    None => {
                        let j = lay.words[u].seq[0];
                        Affine {
                            num: ctx.ad_power_gen(c, j, r + 1),
                            sym: Vec::new(),
                        }
                    }
                    Some((j, u2)) => {
                        let m = r + 1;
                        let mut rhs = Affine::default();
                        let v0 = ctx.ad_power_word(c, m, u2)?;
                        let t0 = ctx.apply_gen(j, &v0)?;
                        rhs.add_scaled(&t0, &Rat::one());
                        for s in 1..=m.min(2) {
                            let head = ctx.ad_power_gen(c, j, s);
                            if head.is_empty() {
                                continue;
                            }
                            let v = ctx.ad_power_word(c, m - s, u2)?;
                            let t = ctx.elem_bracket_affine(&head, &v)?;
                            rhs.add_scaled(&t, &rat(binomial(m, s)));
                        }
                        rhs
                    }
                };
                push_eq(&mut system, lhs, rhs);
            }
        }

        let values = solve_stacked(system, id_keys.len()).map_err(|kind| match kind {
            StackedOutcome::Underdetermined => ClosureError::InconsistentPresentation(format!(
                "underdetermined row system at height {h}"
            )),
            StackedOutcome::Inconsistent => ClosureError::InconsistentPresentation(format!(
                "contradictory row system at height {h}"
            )),
        })?;
        for (id, key) in id_keys.iter().enumerate() {
            rows.insert(*key, values[id].clone());
        }
    }

    let constants = assemble(&lay, &rows)?;
    Ok(StructureTable {
        diagram: d.clone(),
        basis: lay.words,
        provenance: Provenance::ClosureDerived,
        index: lay.index,
        constants,
    })
}

enum StackedOutcome {
    Underdetermined,
    Inconsistent,
}

/// Solve an overdetermined but consistent sparse system with vector-valued
/// right-hand sides; every one of the `s` unknowns must be pinned.
fn solve_stacked(
    system: Vec<(Vec<(usize, Rat)>, SparseVec)>,
    s: usize,
) -> Result<Vec<SparseVec>, StackedOutcome> {
    let mut pivots: Vec<Option<(Vec<(usize, Rat)>, SparseVec)>> = (0..s).map(|_| None).collect();
    for (mut coeffs, mut rhs) in system {
        let mut installed = false;
        loop {
            let Some((var, q)) = coeffs.first().cloned() else {
                break;
            };
            match &pivots[var] {
                Some((pc, pr)) => {
                    coeffs = sv_add_scaled(&coeffs, pc, &-q.clone());
                    rhs = sv_add_scaled(&rhs, pr, &-q);
                }
                None => {
                    let inv = Rat::one() / q;
                    pivots[var] = Some((sv_scale(&coeffs, &inv), sv_scale(&rhs, &inv)));
                    installed = true;
                    break;
                }
            }
        }
        if !installed && !rhs.is_empty() {
            return Err(StackedOutcome::Inconsistent);
        }
    }
    let mut values: Vec<Option<SparseVec>> = vec![None; s];
    for var in (0..s).rev() {
        let Some((coeffs, rhs)) = &pivots[var] else {
            return Err(StackedOutcome::Underdetermined);
        };
        let mut v = rhs.clone();
        for (v2, q) in coeffs.iter().skip(1) {
            let val = values[*v2].as_ref().expect("later vars resolved");
            v = sv_add_scaled(&v, val, &-q.clone());
        }
        values[var] = Some(v);
    }
    Ok(values.into_iter().map(|v| v.unwrap()).collect())
}

/// Extend resolved generator rows to the full antisymmetric table via the
/// derivation recursion on the head of the left word.
fn assemble(
    lay: &BasisLayout,
    rows: &HashMap<(Node, usize), SparseVec>,
) -> Result<Vec<Vec<SparseVec>>, ClosureError> {
    let n = lay.words.len();
    let mut memo: HashMap<(usize, usize), SparseVec> = HashMap::new();

    fn wbf(
        a: usize,
        b: usize,
        lay: &BasisLayout,
        rows: &HashMap<(Node, usize), SparseVec>,
        memo: &mut HashMap<(usize, usize), SparseVec>,
    ) -> SparseVec {
        if a == b {
            return SparseVec::new();
        }
        if a > b {
            return sv_neg(&wbf(b, a, lay, rows, memo));
        }
        if let Some(v) = memo.get(&(a, b)) {
            return v.clone();
        }
        let result = match lay.parent[a] {
            None => rows[&(lay.words[a].seq[0], b)].clone(),
            Some((g, ap)) => {
                // [w_a, w_b] = [e_g, [w_a', w_b]] - [w_a', [e_g, w_b]]
                let t1 = wbf(ap, b, lay, rows, memo);
                let mut r1 = SparseVec::new();
                for (m, q) in &t1 {
                    r1 = sv_add_scaled(&r1, &rows[&(g, *m)], q);
                }
                let t2 = rows[&(g, b)].clone();
                let mut r2 = SparseVec::new();
                for (m, q) in &t2 {
                    let v = wbf(ap, *m, lay, rows, memo);
                    r2 = sv_add_scaled(&r2, &v, q);
                }
                sv_add(&r1, &sv_neg(&r2))
            }
        };
        memo.insert((a, b), result.clone());
        result
    }

    let mut constants = vec![vec![SparseVec::new(); n]; n];
    for a in 0..n {
        for b in (a + 1)..n {
            let v = wbf(a, b, lay, rows, &mut memo);
            constants[b][a] = sv_neg(&v);
            constants[a][b] = v;
        }
    }
    Ok(constants)
}

/// Pull the table back through a matrix representation.
///
/// The flattened images of the basis words must be linearly independent
/// (checked via the span rank), which certifies faithfulness at this rank;
/// generator brackets are then solved exactly in that span and the rest of
/// the table follows by the derivation recursion.
pub fn table_from_representation(
    d: &DynkinDiagram,
    rep: &Representation,
) -> Result<StructureTable, ClosureError> {
    assert_eq!(&rep.diagram, d, "representation is for a different diagram");
    let lay = layout(d);
    let n = lay.words.len();

    let mut images: Vec<RationalMatrix> = Vec::with_capacity(n);
    for b in 0..n {
        let m = match lay.parent[b] {
            None => rep.image(lay.words[b].seq[0]).clone(),
            Some((g, p)) => rep.image(g).commutator(&images[p]),
        };
        images.push(m);
    }

    let flat_dim = rep.dim * rep.dim;
    let mut solver = SpanSolver::new(flat_dim);
    for img in &images {
        let dep = solver
            .push(img.flatten())
            .expect("flattened image within bounds");
        if dep.is_some() {
            return Err(ClosureError::NotFaithfulAtThisRank {
                expected: n,
                got: solver.rank(),
            });
        }
    }

    let mut rows: HashMap<(Node, usize), SparseVec> = HashMap::new();
    for i in 0..d.rank {
        let gi = rep.image(i);
        for b in 0..n {
            let target = gi.commutator(&images[b]).flatten();
            let coeffs = solver
                .solve(&target)
                .ok_or_else(|| ClosureError::NotClosed {
                    description: format!(
                        "[{}, w_{}] leaves the span of basis images",
                        d.generator_name(i),
                        b
                    ),
                })?;
            rows.insert((i, b), coeffs);
        }
    }

    let constants = assemble(&lay, &rows)?;
    Ok(StructureTable {
        diagram: d.clone(),
        basis: lay.words,
        provenance: Provenance::RepDerived,
        index: lay.index,
        constants,
    })
}

/// Certify a table: exact Jacobi residuals on basis triples, every defining
/// relator reduced to zero, and each basis word regenerated from the
/// generator rows (a nonzero rational multiple keeps certification invariant
/// under basis rescaling; the multiple is 1 for tables built here).
pub fn certify_table(t: &StructureTable, d: &DynkinDiagram) -> TableCertificate {
    let n = t.dimension();
    let mut failures = Vec::new();

    let mut relations_ok = true;
    for rel in electrical_relators(d) {
        match t.reduce(&rel.lhs) {
            Ok(v) if v.is_empty() => {}
            Ok(_) => {
                relations_ok = false;
                failures.push(format!("relator {} does not vanish", rel.label));
            }
            Err(e) => {
                relations_ok = false;
                failures.push(format!("relator {}: {e}", rel.label));
            }
        }
    }

    let total_triples = if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
    let exhaustive = n <= EXHAUSTIVE_JACOBI_LIMIT;
    let stride = if exhaustive {
        1
    } else {
        (total_triples / 60_000).max(1)
    };
    let mut jacobi_ok = true;
    let mut checked = 0usize;
    let mut counter = 0usize;
    'outer: for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                counter += 1;
                if (counter - 1) % stride != 0 {
                    continue;
                }
                checked += 1;
                let mut j = t.bracket_vec(t.bracket_basis(a, b), &sv_unit(c));
                j = sv_add(&j, &t.bracket_vec(t.bracket_basis(b, c), &sv_unit(a)));
                j = sv_add(&j, &t.bracket_vec(t.bracket_basis(c, a), &sv_unit(b)));
                if !j.is_empty() {
                    jacobi_ok = false;
                    failures.push(format!("jacobi fails on triple ({a},{b},{c})"));
                    if failures.len() > 8 {
                        break 'outer;
                    }
                }
            }
        }
    }

    let mut generated_ok = true;
    for b in 0..n {
        let seq = &t.basis[b].seq;
        let mut v = sv_unit(t.simple_index(seq[seq.len() - 1]));
        for &g in seq.iter().rev().skip(1) {
            v = t.bracket_vec(&sv_unit(t.simple_index(g)), &v);
        }
        let ok = v.len() == 1 && v[0].0 == b && !v[0].1.is_zero();
        if !ok {
            generated_ok = false;
            failures.push(format!("word {} does not regenerate its basis vector", b));
        }
    }

    TableCertificate {
        jacobi_ok,
        relations_ok,
        generated_ok,
        dimension: n,
        checked_triples: checked,
        total_triples,
        exhaustive,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::Family;
    use crate::exactla::rat;
    use crate::freelie::bracket;

    fn diagram(f: Family, n: usize) -> DynkinDiagram {
        DynkinDiagram::new(f, n).unwrap()
    }

    fn table(f: Family, n: usize) -> StructureTable {
        table_from_presentation(&diagram(f, n), 0).unwrap()
    }

    #[test]
    fn a1_is_trivial() {
        let t = table(Family::A, 1);
        assert_eq!(t.dimension(), 1);
        let cert = certify_table(&t, &t.diagram.clone());
        assert!(cert.all_ok());
    }

    #[test]
    fn a2_matches_hand_table() {
        let t = table(Family::A, 2);
        assert_eq!(t.dimension(), 3);
        let d = t.diagram.clone();
        // [e1,[e1,e2]] = -2 e1
        let e1 = LieElement::generator(0);
        let e2 = LieElement::generator(1);
        let v = t.reduce(&bracket(&e1, &bracket(&e1, &e2))).unwrap();
        assert_eq!(v, sv_scale(&sv_unit(t.simple_index(0)), &rat(-2)));
        let cert = certify_table(&t, &d);
        assert!(cert.all_ok(), "failures: {:?}", cert.failures);
    }

    #[test]
    fn c2_table_by_hand() {
        let t = table(Family::C, 2);
        assert_eq!(t.dimension(), 4);
        let i_e1 = t.simple_index(0);
        let i_e2 = t.simple_index(1);
        let i_12 = t.word_index(&Root(vec![1, 1])).unwrap();
        let i_dbl = t.word_index(&Root(vec![2, 1])).unwrap();
        // [e1, e2] = [e1e2]
        assert_eq!(t.bracket_basis(i_e1, i_e2), &sv_unit(i_12));
        // [e1, [e1e2]] = [e1[e1e2]]
        assert_eq!(t.bracket_basis(i_e1, i_12), &sv_unit(i_dbl));
        // ad(e1)^3(e2) = 0
        assert!(t.bracket_basis(i_e1, i_dbl).is_empty());
        // [e2, [e1e2]] = 2 e2
        assert_eq!(
            t.bracket_basis(i_e2, i_12),
            &sv_scale(&sv_unit(i_e2), &rat(2))
        );
        // [e2, [e1[e1e2]]] = 2 [e1e2]
        assert_eq!(
            t.bracket_basis(i_e2, i_dbl),
            &sv_scale(&sv_unit(i_12), &rat(2))
        );
        // [[e1e2], [e1[e1e2]]] = 2 [e1[e1e2]]
        assert_eq!(
            t.bracket_basis(i_12, i_dbl),
            &sv_scale(&sv_unit(i_dbl), &rat(2))
        );
        let cert = certify_table(&t, &t.diagram.clone());
        assert!(cert.all_ok(), "failures: {:?}", cert.failures);
    }

    #[test]
    fn b2_table_by_hand() {
        let t = table(Family::B, 2);
        assert_eq!(t.dimension(), 4);
        let i_e1 = t.simple_index(0);
        let i_e2 = t.simple_index(1);
        let i_12 = t.word_index(&Root(vec![1, 1])).unwrap();
        let i_dbl = t.word_index(&Root(vec![1, 2])).unwrap();
        // [e1, [e1e2]] = -2 e1
        assert_eq!(
            t.bracket_basis(i_e1, i_12),
            &sv_scale(&sv_unit(i_e1), &rat(-2))
        );
        // [e2, [e1e2]] is the doubled word
        assert_eq!(t.bracket_basis(i_e2, i_12), &sv_unit(i_dbl));
        // ad(e2)^3(e1) = 0 reads [e2, dbl] = 0
        assert!(t.bracket_basis(i_e2, i_dbl).is_empty());
        // [e1, dbl] = 2 [e1e2]
        assert_eq!(
            t.bracket_basis(i_e1, i_dbl),
            &sv_scale(&sv_unit(i_12), &rat(2))
        );
        let cert = certify_table(&t, &t.diagram.clone());
        assert!(cert.all_ok(), "failures: {:?}", cert.failures);
    }

    #[test]
    fn presentation_tables_certify_small_ranks() {
        for (f, lo, hi) in [
            (Family::A, 1, 5),
            (Family::B, 2, 4),
            (Family::C, 2, 4),
            (Family::D, 3, 5),
        ] {
            for n in lo..=hi {
                let d = diagram(f, n);
                let t = table_from_presentation(&d, 0).unwrap();
                assert_eq!(t.dimension(), crate::dynkin::positive_root_count(&d));
                let cert = certify_table(&t, &d);
                assert!(cert.all_ok(), "{d}: {:?}", cert.failures);
            }
        }
    }

    #[test]
    fn mutation_is_detected() {
        let d = diagram(Family::C, 4);
        let t = table_from_presentation(&d, 0).unwrap();
        let mut bad = t.clone();
        // perturb a non-generator constant, keeping antisymmetry
        bad.mutate_constant(6, 9, 2, rat(1));
        let cert = certify_table(&bad, &d);
        assert!(!cert.all_ok());
        assert!(!cert.jacobi_ok || !cert.relations_ok || !cert.generated_ok);
    }

    #[test]
    fn rescaling_preserves_certification() {
        let d = diagram(Family::C, 3);
        let t = table_from_presentation(&d, 0).unwrap();
        let scaled = t.rescale_basis(5, &crate::exactla::ratio(3, 7));
        let cert = certify_table(&scaled, &d);
        assert!(cert.all_ok(), "failures: {:?}", cert.failures);
    }

    #[test]
    fn tiny_iteration_cap_diverges() {
        let d = diagram(Family::C, 4);
        match table_from_presentation(&d, 3) {
            Err(ClosureError::ClosureDiverged { cap }) => assert_eq!(cap, 3),
            other => panic!("expected divergence, got {other:?}"),
        }
    }
}
