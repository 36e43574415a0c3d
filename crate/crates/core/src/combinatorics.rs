//! Partitions, multipartitions, tableaux, contents and residues.
//!
//! Enumeration order is fixed: component-size compositions in decreasing
//! lexicographic order, and within a component the partitions in decreasing
//! lexicographic order. For `n = 2, r = 2` this gives
//! `[[2],[]], [[1,1],[]], [[1],[1]], [[],[2]], [[],[1,1]]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::rings::LaurentPoly;

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Boxes `(row, col)`, 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| (i as u32 + 1, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// An `r`-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "a multipartition has at least one component");
        Multipartition(components)
    }

    /// Builds from nested part lists, e.g. `&[&[2, 1], &[1]]`.
    pub fn from_parts(parts: &[&[u32]]) -> Self {
        Self::new(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    /// All nodes, component by component, row by row.
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.0.iter().enumerate().flat_map(|(c, p)| {
            p.boxes().map(move |(row, col)| Node { row, col, component: c as u32 + 1 })
        })
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<&[u32]> = self.0.iter().map(|p| p.parts()).collect();
        v.serialize(s)
    }
}

/// A box `(row, col)` of component `component`, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: u32,
    pub col: u32,
    pub component: u32,
}

/// Content `col - row` of a node.
pub fn content(node: &Node) -> i32 {
    node.col as i32 - node.row as i32
}

/// Compositions of `n` into `r` non-negative parts, decreasing lex order.
fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `P^r_n`: all `r`-multipartitions of `n` in the fixed order described in
/// the module docs.
pub fn enumerate_multipartitions(n: usize, r: usize) -> Vec<Multipartition> {
    assert!(r >= 1, "level must be positive");
    let mut out = Vec::new();
    for sizes in compositions(n, r) {
        let mut acc: Vec<Vec<Partition>> = vec![Vec::new()];
        for &s in &sizes {
            let ps = partitions(s);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    ps.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(Multipartition));
    }
    out
}

/// The multiset `{ q^(b-a) Q_c : (a,b,c) a node }`, sorted.
pub fn alpha_multiset(mp: &Multipartition) -> Vec<LaurentPoly> {
    let r = mp.level();
    let mut out: Vec<LaurentPoly> = mp
        .nodes()
        .map(|node| {
            let mut exps = vec![0i32; r + 1];
            exps[0] = content(&node);
            exps[node.component as usize] = 1;
            LaurentPoly::from_exponents(&exps)
        })
        .collect();
    out.sort();
    out
}

/// A standard filling of a multipartition: `entries[c][row][col]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    pub shape: Multipartition,
    pub entries: Vec<Vec<Vec<u32>>>,
}

impl StandardTableau {
    /// The node holding entry `k` (1-based).
    pub fn node_of(&self, k: u32) -> Option<Node> {
        for (c, comp) in self.entries.iter().enumerate() {
            for (i, row) in comp.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v == k {
                        return Some(Node { row: i as u32 + 1, col: j as u32 + 1, component: c as u32 + 1 });
                    }
                }
            }
        }
        None
    }
}

/// Places `1..n` one at a time on addable nodes of the growing shape;
/// `visit` sees every completed filling.
fn fill_tableaux(shape: &Multipartition, visit: &mut dyn FnMut(&[Vec<Vec<u32>>])) {
    let target: Vec<Vec<u32>> = shape.0.iter().map(|p| p.0.clone()).collect();
    let mut cur: Vec<Vec<Vec<u32>>> = target.iter().map(|rows| vec![Vec::new(); rows.len()]).collect();
    fn rec(
        k: u32,
        n: u32,
        target: &[Vec<u32>],
        cur: &mut Vec<Vec<Vec<u32>>>,
        visit: &mut dyn FnMut(&[Vec<Vec<u32>>]),
    ) {
        if k > n {
            visit(cur);
            return;
        }
        for c in 0..target.len() {
            for i in 0..target[c].len() {
                let len = cur[c][i].len();
                let fits = (len as u32) < target[c][i] && (i == 0 || cur[c][i - 1].len() > len);
                if fits {
                    cur[c][i].push(k);
                    rec(k + 1, n, target, cur, visit);
                    cur[c][i].pop();
                }
            }
        }
    }
    rec(1, shape.size() as u32, &target, &mut cur, visit);
}

/// Number of standard tableaux of shape `mp`, by exhaustive enumeration.
pub fn count_standard_tableaux(mp: &Multipartition) -> u64 {
    let mut count = 0;
    fill_tableaux(mp, &mut |_| count += 1);
    count
}

pub fn standard_tableaux(mp: &Multipartition) -> Vec<StandardTableau> {
    let mut out = Vec::new();
    fill_tableaux(mp, &mut |e| out.push(StandardTableau { shape: mp.clone(), entries: e.to_vec() }));
    out
}

/// Residue counts `d_0, ..., d_{l-1}` of the nodes of a multipartition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueVector {
    pub modulus: u32,
    pub counts: Vec<u32>,
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for ResidueVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.counts.serialize(s)
    }
}

/// Residue of a node is `(col - row + s_c) mod l`.
pub fn residue_vector(mp: &Multipartition, modulus: u32, charge: &[i64]) -> ResidueVector {
    assert_eq!(charge.len(), mp.level(), "multicharge length must equal the level");
    assert!(modulus >= 1);
    let mut counts = vec![0u32; modulus as usize];
    for node in mp.nodes() {
        let res = (content(&node) as i64 + charge[node.component as usize - 1]).rem_euclid(modulus as i64);
        counts[res as usize] += 1;
    }
    ResidueVector { modulus, counts }
}

/// Groups `P^r_n` by residue vector. Classes keep enumeration order.
pub fn block_partition(n: usize, r: usize, modulus: u32, charge: &[i64]) -> BTreeMap<ResidueVector, Vec<Multipartition>> {
    let mut out: BTreeMap<ResidueVector, Vec<Multipartition>> = BTreeMap::new();
    for mp in enumerate_multipartitions(n, r) {
        out.entry(residue_vector(&mp, modulus, charge)).or_default().push(mp);
    }
    out
}

/// `binom(n, k)` as a `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let e = enumerate_multipartitions(0, 3);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].to_string(), "[[],[],[]]");
        let e = enumerate_multipartitions(2, 2);
        let names: Vec<String> = e.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["[[2],[]]", "[[1,1],[]]", "[[1],[1]]", "[[],[2]]", "[[],[1,1]]"]);
        let e = enumerate_multipartitions(3, 1);
        let names: Vec<String> = e.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["[[3]]", "[[2,1]]", "[[1,1,1]]"]);
    }

    #[test]
    fn contents() {
        let n = |row, col| Node { row, col, component: 1 };
        assert_eq!(content(&n(1, 1)), 0);
        assert_eq!(content(&n(2, 1)), -1);
        assert_eq!(content(&n(1, 3)), 2);
    }

    #[test]
    fn alpha_examples() {
        let show = |mp: &Multipartition| alpha_multiset(mp).iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(show(&Multipartition::from_parts(&[&[1]])), ["Q1"]);
        assert_eq!(show(&Multipartition::from_parts(&[&[2, 1]])), ["q^-1*Q1", "Q1", "q*Q1"]);
        assert_eq!(show(&Multipartition::from_parts(&[&[1], &[1]])), ["Q1", "Q2"]);
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(count_standard_tableaux(&Multipartition::from_parts(&[&[4]])), 1);
        assert_eq!(count_standard_tableaux(&Multipartition::from_parts(&[&[2, 1]])), 2);
        assert_eq!(count_standard_tableaux(&Multipartition::from_parts(&[&[1], &[1]])), 2);
        assert_eq!(count_standard_tableaux(&Multipartition::from_parts(&[&[3, 2]])), 5);
    }

    #[test]
    fn residue_examples() {
        let rv = |p: &[&[u32]], s: &[i64]| residue_vector(&Multipartition::from_parts(p), 2, s).counts;
        assert_eq!(rv(&[&[2]], &[0]), [1, 1]);
        assert_eq!(rv(&[&[1, 1]], &[0]), [1, 1]);
        assert_eq!(rv(&[&[1], &[1]], &[0, 0]), [2, 0]);
    }

    #[test]
    fn block_partition_examples() {
        let b = block_partition(2, 1, 2, &[0]);
        assert_eq!(b.len(), 1);
        assert_eq!(b.values().next().unwrap().len(), 2);

        let b = block_partition(2, 2, 2, &[0, 0]);
        let sizes: Vec<(Vec<u32>, usize)> = b.iter().map(|(k, v)| (k.counts.clone(), v.len())).collect();
        assert_eq!(sizes, [(vec![1, 1], 4), (vec![2, 0], 1)]);

        let b = block_partition(3, 1, 2, &[0]);
        let classes: Vec<(Vec<u32>, Vec<String>)> =
            b.iter().map(|(k, v)| (k.counts.clone(), v.iter().map(|m| m.to_string()).collect())).collect();
        assert_eq!(
            classes,
            [
                (vec![1, 2], vec!["[[2,1]]".to_string()]),
                (vec![2, 1], vec!["[[3]]".to_string(), "[[1,1,1]]".to_string()]),
            ]
        );
    }

    #[test]
    fn tableau_node_lookup() {
        let mp = Multipartition::from_parts(&[&[2], &[1]]);
        let ts = standard_tableaux(&mp);
        assert_eq!(ts.len(), 3);
        for t in &ts {
            for k in 1..=3 {
                assert!(t.node_of(k).is_some());
            }
        }
    }
}
