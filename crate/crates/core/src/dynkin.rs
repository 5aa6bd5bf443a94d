//! Classical Dynkin diagrams, Cartan matrices, and positive root systems.
//!
//! Nodes are identified by 0-based position. For families A, B, C the node at
//! position `p` carries the label `p + 1`. For family D the positions 0 and 1
//! are the two fork nodes, written `1'` and `1`, and both are attached to the
//! node labelled 2; the chain `2, 3, ..., rank - 1` follows.
//!
//! The Cartan matrix convention is fixed by the defining relations of the
//! electrical Lie algebras: `ad(e_i)^{1-a_ij}(e_j)` is a relator, so the
//! doubled entry sits at `a_21` for family B (forcing `[e2,[e2,[e2,e1]]] = 0`)
//! and at `a_12` for family C (forcing `[e1,[e1,[e1,e2]]] = 0`).

use std::collections::BTreeSet;
use std::fmt;

/// Diagram node, identified by position.
pub type Node = usize;

/// Classical family letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn parse(s: &str) -> Result<Family, DynkinError> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(DynkinError::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynkinError {
    UnsupportedType(String),
    NotAPositiveRoot(String),
}

impl fmt::Display for DynkinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinError::UnsupportedType(s) => write!(f, "unsupported diagram: {s}"),
            DynkinError::NotAPositiveRoot(s) => write!(f, "not a positive root: {s}"),
        }
    }
}

impl std::error::Error for DynkinError {}

/// A classical Dynkin diagram: family letter plus rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DynkinDiagram {
    pub family: Family,
    pub rank: usize,
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: usize) -> Result<DynkinDiagram, DynkinError> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            return Err(DynkinError::UnsupportedType(format!(
                "{family}_{rank}: family {family} requires rank >= {min}"
            )));
        }
        Ok(DynkinDiagram { family, rank })
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        0..self.rank
    }

    /// Human label of a node: `1'` and `1` for the D fork, `p + 1` otherwise.
    pub fn node_label(&self, n: Node) -> String {
        match self.family {
            Family::D => match n {
                0 => "1'".to_string(),
                k => k.to_string(),
            },
            _ => (n + 1).to_string(),
        }
    }

    pub fn generator_name(&self, n: Node) -> String {
        format!("e{}", self.node_label(n))
    }

    pub fn adjacent(&self, i: Node, j: Node) -> bool {
        if i == j || i >= self.rank || j >= self.rank {
            return false;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match self.family {
            Family::D => {
                // Fork nodes 0 and 1 both hang off node 2; 0-1 is not an edge.
                if a == 0 || a == 1 {
                    b == 2
                } else {
                    b == a + 1
                }
            }
            _ => b == a + 1,
        }
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.rank)
    }
}

/// Cartan matrix in the convention `ad(e_i)^{1-a_ij}(e_j) = relator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    pub rank: usize,
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn entry(&self, i: Node, j: Node) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// Cartan matrix of a classical diagram.
///
/// The asymmetric entry is pinned by the cubic relator of the presentation:
/// B puts `-2` at position pair (2,1), C at (1,2). Everything else is the
/// usual simply-laced pattern.
pub fn cartan_matrix(d: &DynkinDiagram) -> CartanMatrix {
    let n = d.rank;
    let mut entries = vec![vec![0i64; n]; n];
    for i in 0..n {
        entries[i][i] = 2;
        for j in 0..n {
            if d.adjacent(i, j) {
                entries[i][j] = -1;
            }
        }
    }
    match d.family {
        Family::B if n >= 2 => entries[1][0] = -2,
        Family::C if n >= 2 => entries[0][1] = -2,
        _ => {}
    }
    CartanMatrix { rank: n, entries }
}

/// Positive root, as a coefficient vector over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: Node) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn plus_simple(&self, i: Node) -> Root {
        let mut v = self.0.clone();
        v[i] += 1;
        Root(v)
    }

    /// `self - alpha_i`, or None if the coefficient would go negative.
    pub fn minus_simple(&self, i: Node) -> Option<Root> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(Root(v))
    }

    pub fn is_simple(&self) -> bool {
        self.height() == 1
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Closed-form count `|Phi^+|` for each classical family.
pub fn positive_root_count(d: &DynkinDiagram) -> usize {
    let n = d.rank;
    match d.family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * n - n,
    }
}

/// Enumerate the positive roots of `d`, sorted by height then coefficients.
///
/// Built level by level with the root-string criterion: for a known root
/// `beta`, `beta + alpha_i` is a root iff `p - <beta, alpha_i^v> >= 1`, where
/// `p` is the length of the downward `alpha_i`-string through `beta`.
pub fn positive_roots(d: &DynkinDiagram) -> Vec<Root> {
    let cartan = cartan_matrix(d);
    let n = d.rank;
    let mut found: BTreeSet<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut frontier: Vec<Root> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                // pairing <beta, alpha_i^v> = sum_j beta_j a_ij
                let pairing: i64 = (0..n).map(|j| beta.0[j] * cartan.entry(i, j)).sum();
                let mut p = 0i64;
                let mut down = beta.clone();
                loop {
                    match down.minus_simple(i) {
                        Some(lower) if found.contains(&lower) => {
                            p += 1;
                            down = lower;
                        }
                        _ => break,
                    }
                }
                if p - pairing >= 1 {
                    let up = beta.plus_simple(i);
                    if found.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut roots: Vec<Root> = found.into_iter().collect();
    roots.sort_by_key(|r| (r.height(), r.0.clone()));
    roots
}

/// Decompose a positive root into a generator sequence `(i_1, ..., i_t)`.
///
/// The sequence labels the right-nested bracket word
/// `[e_{i_1},[e_{i_2},[...,[e_{i_{t-1}},e_{i_t}]...]]]`; every nested subword
/// again corresponds to a positive root, i.e. every tail sum
/// `alpha_{i_s} + ... + alpha_{i_t}` lies in `Phi^+`. Among all such
/// sequences the lexicographically smallest is returned, which the greedy
/// choice of the smallest valid head realizes.
pub fn root_decomposition(alpha: &Root, d: &DynkinDiagram) -> Result<Vec<Node>, DynkinError> {
    let roots: BTreeSet<Root> = positive_roots(d).into_iter().collect();
    if !roots.contains(alpha) {
        return Err(DynkinError::NotAPositiveRoot(format!("{alpha} in {d}")));
    }
    let mut seq = Vec::new();
    let mut current = alpha.clone();
    while !current.is_simple() {
        let mut picked = None;
        for i in 0..d.rank {
            if let Some(rest) = current.minus_simple(i) {
                if roots.contains(&rest) {
                    picked = Some((i, rest));
                    break;
                }
            }
        }
        match picked {
            Some((i, rest)) => {
                seq.push(i);
                current = rest;
            }
            None => {
                return Err(DynkinError::NotAPositiveRoot(format!(
                    "{alpha} has no prefix-positive decomposition in {d}"
                )))
            }
        }
    }
    let i = current.0.iter().position(|&c| c == 1).unwrap();
    seq.push(i);
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(f: Family, n: usize) -> DynkinDiagram {
        DynkinDiagram::new(f, n).unwrap()
    }

    #[test]
    fn cartan_a2() {
        let c = cartan_matrix(&diagram(Family::A, 2));
        assert_eq!(c.rows(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn cartan_b_and_c_orientation() {
        // B: ad(e2)^3(e1) = 0, so a_21 = -2.
        let b = cartan_matrix(&diagram(Family::B, 2));
        assert_eq!(b.entry(1, 0), -2);
        assert_eq!(b.entry(0, 1), -1);
        assert_eq!(b.entry(0, 1) * b.entry(1, 0), 2);
        // C: ad(e1)^3(e2) = 0, so a_12 = -2.
        let c = cartan_matrix(&diagram(Family::C, 2));
        assert_eq!(c.entry(0, 1), -2);
        assert_eq!(c.entry(1, 0), -1);
    }

    #[test]
    fn cartan_d_fork() {
        let d = cartan_matrix(&diagram(Family::D, 4));
        assert_eq!(d.entry(0, 1), 0);
        assert_eq!(d.entry(1, 0), 0);
        assert_eq!(d.entry(0, 2), -1);
        assert_eq!(d.entry(1, 2), -1);
        assert_eq!(d.entry(2, 3), -1);
        assert_eq!(d.entry(0, 3), 0);
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!(DynkinDiagram::new(Family::D, 2).is_err());
        assert!(DynkinDiagram::new(Family::B, 1).is_err());
        assert!(DynkinDiagram::new(Family::A, 1).is_ok());
    }

    #[test]
    fn root_counts_match_closed_forms() {
        for n in 1..=8 {
            let d = diagram(Family::A, n);
            assert_eq!(positive_roots(&d).len(), n * (n + 1) / 2);
        }
        for n in 2..=7 {
            for f in [Family::B, Family::C] {
                let d = diagram(f, n);
                assert_eq!(positive_roots(&d).len(), n * n, "{d}");
            }
        }
        for n in 3..=7 {
            let d = diagram(Family::D, n);
            assert_eq!(positive_roots(&d).len(), n * n - n);
        }
    }

    #[test]
    fn a3_has_six_roots_c4_sixteen_d5_twenty() {
        assert_eq!(positive_roots(&diagram(Family::A, 3)).len(), 6);
        assert_eq!(positive_roots(&diagram(Family::C, 4)).len(), 16);
        assert_eq!(positive_roots(&diagram(Family::D, 5)).len(), 20);
    }

    #[test]
    fn c2_roots_include_doubled() {
        let roots = positive_roots(&diagram(Family::C, 2));
        assert!(roots.contains(&Root(vec![2, 1])));
        assert!(!roots.contains(&Root(vec![1, 2])));
        // B2 is mirrored.
        let roots = positive_roots(&diagram(Family::B, 2));
        assert!(roots.contains(&Root(vec![1, 2])));
        assert!(!roots.contains(&Root(vec![2, 1])));
    }

    #[test]
    fn decomposition_simple_root() {
        let d = diagram(Family::A, 2);
        assert_eq!(
            root_decomposition(&Root::simple(2, 0), &d).unwrap(),
            vec![0]
        );
        assert_eq!(
            root_decomposition(&Root(vec![1, 1]), &d).unwrap(),
            vec![0, 1]
        );
    }

    #[test]
    fn decomposition_c2_doubled() {
        let d = diagram(Family::C, 2);
        // 2a1 + a2 peels as e1.e1.e2: every tail (a2, a1+a2, 2a1+a2) is a root.
        assert_eq!(
            root_decomposition(&Root(vec![2, 1]), &d).unwrap(),
            vec![0, 0, 1]
        );
    }

    #[test]
    fn decomposition_rejects_non_roots() {
        let d = diagram(Family::A, 2);
        assert!(root_decomposition(&Root(vec![2, 1]), &d).is_err());
    }

    // Exhaustive oracle: enumerate every sequence whose tail sums all lie in
    // Phi^+, and check the greedy output is the lexicographic minimum.
    fn all_valid(alpha: &Root, roots: &BTreeSet<Root>, rank: usize) -> Vec<Vec<Node>> {
        if alpha.is_simple() {
            let i = alpha.0.iter().position(|&c| c == 1).unwrap();
            return vec![vec![i]];
        }
        let mut out = Vec::new();
        for i in 0..rank {
            if let Some(rest) = alpha.minus_simple(i) {
                if roots.contains(&rest) {
                    for mut tail in all_valid(&rest, roots, rank) {
                        let mut seq = vec![i];
                        seq.append(&mut tail);
                        out.push(seq);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn decomposition_is_lex_minimal() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let d = diagram(f, n);
            let roots = positive_roots(&d);
            let set: BTreeSet<Root> = roots.iter().cloned().collect();
            for alpha in &roots {
                let greedy = root_decomposition(alpha, &d).unwrap();
                let mut valid = all_valid(alpha, &set, n);
                valid.sort();
                assert_eq!(greedy, valid[0], "{f}{n} root {alpha}");
                // prefix property: every tail of the sequence sums to a root
                for s in 0..greedy.len() {
                    let mut v = vec![0i64; n];
                    for &i in &greedy[s..] {
                        v[i] += 1;
                    }
                    assert!(set.contains(&Root(v)));
                }
            }
        }
    }
}
