//! Bracket expressions over the generators and their formal rational
//! linear combinations, plus the deformed Serre relators.
//!
//! Trees are kept in an oriented normal form: each pair is ordered by the
//! structural order on trees (leaves before pairs, then lexicographic), with
//! antisymmetry supplying the sign and `[t, t] = 0` dropping repeats. No
//! rewriting modulo the Jacobi identity happens here; identities that need it
//! are checked downstream through structure tables or matrix representations.

use crate::dynkin::{cartan_matrix, DynkinDiagram, DynkinError, Node, Root};
use crate::exactla::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A formal bracket word: a generator leaf or an ordered pair of subtrees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BracketTree {
    Leaf(Node),
    Pair(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn leaf(n: Node) -> BracketTree {
        BracketTree::Leaf(n)
    }

    pub fn pair(l: BracketTree, r: BracketTree) -> BracketTree {
        BracketTree::Pair(Box::new(l), Box::new(r))
    }

    /// Right-nested word from a generator sequence `(i_1, ..., i_t)`.
    pub fn right_nested(seq: &[Node]) -> BracketTree {
        assert!(!seq.is_empty());
        let mut tree = BracketTree::leaf(seq[seq.len() - 1]);
        for &i in seq.iter().rev().skip(1) {
            tree = BracketTree::pair(BracketTree::leaf(i), tree);
        }
        tree
    }

    pub fn leaves(&self, out: &mut Vec<Node>) {
        match self {
            BracketTree::Leaf(n) => out.push(*n),
            BracketTree::Pair(l, r) => {
                l.leaves(out);
                r.leaves(out);
            }
        }
    }

    /// Orient the tree: returns `None` for an alternating zero, otherwise the
    /// canonical representative together with its sign.
    fn orient(&self) -> Option<(i32, BracketTree)> {
        match self {
            BracketTree::Leaf(n) => Some((1, BracketTree::Leaf(*n))),
            BracketTree::Pair(l, r) => {
                let (sl, nl) = l.orient()?;
                let (sr, nr) = r.orient()?;
                match nl.cmp(&nr) {
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Less => Some((sl * sr, BracketTree::pair(nl, nr))),
                    std::cmp::Ordering::Greater => Some((-sl * sr, BracketTree::pair(nr, nl))),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeLieError {
    MissingAssignment(Node),
}

impl fmt::Display for FreeLieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeLieError::MissingAssignment(n) => write!(f, "no assignment for generator {n}"),
        }
    }
}

impl std::error::Error for FreeLieError {}

/// Exact-rational formal linear combination of bracket trees.
///
/// Zero coefficients are never stored and all trees are oriented, so equality
/// of elements is structural equality of the term maps.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<BracketTree, Rat>,
}

impl LieElement {
    pub fn zero() -> LieElement {
        LieElement::default()
    }

    pub fn generator(n: Node) -> LieElement {
        LieElement::from_tree(BracketTree::leaf(n))
    }

    pub fn from_tree(t: BracketTree) -> LieElement {
        let mut e = LieElement::zero();
        e.add_term(&t, Rat::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BracketTree, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, t: &BracketTree, c: Rat) {
        if c.is_zero() {
            return;
        }
        if let Some((sign, nt)) = t.orient() {
            let coef = if sign < 0 { -c } else { c };
            match self.terms.entry(nt) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += coef;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(coef);
                }
            }
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> LieElement {
        if c.is_zero() {
            return LieElement::zero();
        }
        let mut out = LieElement::zero();
        for (t, q) in self.terms() {
            out.terms.insert(t.clone(), q * c);
        }
        out
    }

    /// Re-run normalization. Elements are always kept normalized, so this is
    /// the identity; it exists so idempotence is testable directly.
    pub fn normalize(&self) -> LieElement {
        let mut out = LieElement::zero();
        for (t, c) in self.terms() {
            out.add_term(t, c.clone());
        }
        out
    }
}

/// Bilinear formal bracket. `[x, x]` normalizes to zero and swapped pairs
/// pick up a sign, so `bracket(x, y) + bracket(y, x)` vanishes.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (s, a) in x.terms() {
        for (t, b) in y.terms() {
            out.add_term(&BracketTree::pair(s.clone(), t.clone()), a * b);
        }
    }
    out
}

/// Homomorphic substitution: leaves are replaced by their assigned elements,
/// pairs become brackets of the substituted children.
pub fn substitute(
    x: &LieElement,
    assignment: &BTreeMap<Node, LieElement>,
) -> Result<LieElement, FreeLieError> {
    fn sub_tree(
        t: &BracketTree,
        assignment: &BTreeMap<Node, LieElement>,
    ) -> Result<LieElement, FreeLieError> {
        match t {
            BracketTree::Leaf(n) => assignment
                .get(n)
                .cloned()
                .ok_or(FreeLieError::MissingAssignment(*n)),
            BracketTree::Pair(l, r) => {
                let sl = sub_tree(l, assignment)?;
                let sr = sub_tree(r, assignment)?;
                Ok(bracket(&sl, &sr))
            }
        }
    }
    let mut out = LieElement::zero();
    for (t, c) in x.terms() {
        out = out.add(&sub_tree(t, assignment)?.scale(c));
    }
    Ok(out)
}

/// One defining relator of the presentation.
#[derive(Clone, Debug)]
pub struct Relator {
    pub lhs: LieElement,
    pub label: String,
}

/// The deformed Serre relators of `d`, one per ordered pair of distinct
/// nodes: `ad(e_i)^{1-a_ij}(e_j)` when `a_ij != -1` (commuting pairs and the
/// cubic relators of B/C), and `ad(e_i)^2(e_j) + 2 e_i` when `a_ij = -1`.
pub fn electrical_relators(d: &DynkinDiagram) -> Vec<Relator> {
    let cartan = cartan_matrix(d);
    let mut out = Vec::new();
    for i in d.nodes() {
        for j in d.nodes() {
            if i == j {
                continue;
            }
            let a = cartan.entry(i, j);
            let power = (1 - a) as usize;
            let ei = LieElement::generator(i);
            let mut lhs = LieElement::generator(j);
            for _ in 0..power {
                lhs = bracket(&ei, &lhs);
            }
            let label = if a == -1 {
                lhs = lhs.add(&ei.scale(&Rat::from_integer(2.into())));
                format!(
                    "[{0},[{0},{1}]] + 2*{0}",
                    d.generator_name(i),
                    d.generator_name(j)
                )
            } else {
                format!(
                    "ad({})^{}({})",
                    d.generator_name(i),
                    power,
                    d.generator_name(j)
                )
            };
            out.push(Relator { lhs, label });
        }
    }
    out
}

/// The spanning word `e_alpha` attached to a positive root: the right-nested
/// bracket over the root decomposition of `alpha`.
pub fn spanning_word(alpha: &Root, d: &DynkinDiagram) -> Result<BracketTree, DynkinError> {
    let seq = crate::dynkin::root_decomposition(alpha, d)?;
    Ok(BracketTree::right_nested(&seq))
}

/// Text form of a word in the bracket style used throughout the tables,
/// e.g. `[e1[e2e3]]`.
pub fn render_tree(t: &BracketTree, d: &DynkinDiagram) -> String {
    match t {
        BracketTree::Leaf(n) => d.generator_name(*n),
        BracketTree::Pair(l, r) => {
            format!("[{}{}]", render_tree(l, d), render_tree(r, d))
        }
    }
}

/// Text form of an element, terms in tree order.
pub fn render_element(x: &LieElement, d: &DynkinDiagram) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (t, c) in x.terms() {
        let word = render_tree(t, d);
        if c.is_one() {
            parts.push(format!("+ {word}"));
        } else if *c == -Rat::one() {
            parts.push(format!("- {word}"));
        } else if c.numer() >= &num_bigint::BigInt::from(0) {
            parts.push(format!("+ {c}*{word}"));
        } else {
            parts.push(format!("- {}*{word}", -c.clone()));
        }
    }
    let joined = parts.join(" ");
    joined.strip_prefix("+ ").unwrap_or(&joined).to_string()
}
