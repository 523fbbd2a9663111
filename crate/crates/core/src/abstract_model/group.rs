//! Small finite groups given by a multiplication table, built from
//! permutation generators.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Elements are indices `0..order`, with `0` the identity.
pub type Elem = usize;
pub type ElemSet = BTreeSet<Elem>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub name: String,
    /// Display names of the elements (cycle notation for permutation groups).
    pub labels: Vec<String>,
    /// `table[a][b] = a * b`.
    pub table: Vec<Vec<Elem>>,
    #[serde(skip)]
    inverses: Vec<Elem>,
}

/// Names accepted by [`FiniteGroup::library`].
pub const LIBRARY: &[&str] = &[
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z2xZ2", "S3", "D4", "Q8", "A4", "S4",
];

type Perm = Vec<u8>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply b first, then a
    b.iter().map(|&i| a[i as usize]).collect()
}

fn cycle_notation(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = p[start] as usize;
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = p[i] as usize;
        }
        let parts: Vec<String> = cycle.iter().map(|c| (c + 1).to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn perm_from_cycles(n: usize, cycles: &[&[u8]]) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    for c in cycles {
        for (i, &a) in c.iter().enumerate() {
            p[a as usize] = c[(i + 1) % c.len()];
        }
    }
    p
}

impl FiniteGroup {
    /// Closes the generators under composition.
    pub fn from_permutations(name: &str, degree: usize, generators: &[Perm]) -> Self {
        let identity: Perm = (0..degree as u8).collect();
        let mut elems: BTreeSet<Perm> = [identity.clone()].into_iter().collect();
        let mut frontier = vec![identity.clone()];
        while let Some(a) = frontier.pop() {
            for g in generators {
                let b = compose(g, &a);
                if elems.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        // identity sorts first
        let list: Vec<Perm> = elems.into_iter().collect();
        debug_assert_eq!(list[0], identity);
        let index: BTreeMap<&Perm, usize> = list.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = list
            .iter()
            .map(|a| list.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(name, list.iter().map(cycle_notation).collect(), table)
            .expect("permutation groups are groups")
    }

    /// Validates a multiplication table (identity at index 0).
    pub fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<Elem>>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: &str| Error::Config(format!("group {name}: {msg}"));
        if n == 0 || labels.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(bad("table shape"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(bad("entry out of range"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(bad("element 0 is not the identity"));
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let row: ElemSet = table[a].iter().copied().collect();
            if row.len() != n {
                return Err(bad("not a Latin square"));
            }
            inverses[a] = (0..n).find(|&b| table[a][b] == 0).expect("Latin square");
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            labels,
            table,
            inverses,
        })
    }

    /// Rebuilds derived data after deserialization.
    pub fn revalidated(self) -> Result<Self> {
        FiniteGroup::from_table(&self.name, self.labels, self.table)
    }

    pub fn library(name: &str) -> Result<Self> {
        let s = |n: usize, cycles: &[&[u8]]| perm_from_cycles(n, cycles);
        Ok(match name {
            "Z2xZ2" => Self::from_permutations(name, 4, &[s(4, &[&[0, 1]]), s(4, &[&[2, 3]])]),
            "S3" => Self::from_permutations(name, 3, &[s(3, &[&[0, 1, 2]]), s(3, &[&[0, 1]])]),
            "D4" => Self::from_permutations(name, 4, &[s(4, &[&[0, 1, 2, 3]]), s(4, &[&[1, 3]])]),
            "A4" => {
                Self::from_permutations(name, 4, &[s(4, &[&[0, 1, 2]]), s(4, &[&[0, 1], &[2, 3]])])
            }
            "S4" => Self::from_permutations(name, 4, &[s(4, &[&[0, 1, 2, 3]]), s(4, &[&[0, 1]])]),
            "Q8" => {
                // left multiplication by i and j on 1, i, j, k, -1, -i, -j, -k
                let i = vec![1, 4, 3, 6, 5, 0, 7, 2];
                let j = vec![2, 7, 4, 1, 6, 3, 0, 5];
                Self::from_permutations(name, 8, &[i, j])
            }
            _ => {
                let n: usize = name
                    .strip_prefix('Z')
                    .and_then(|n| n.parse().ok())
                    .filter(|&n| (1..=64).contains(&n))
                    .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
                let cycle: Vec<u8> = (0..n as u8).collect();
                Self::from_permutations(name, n, &[s(n, &[&cycle])])
            }
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a][b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// `g a g^-1`.
    pub fn conj(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        (0..n).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    /// Looks an element up by label (spaces ignored) or by index.
    pub fn find(&self, label: &str) -> Result<Elem> {
        if let Ok(i) = label.trim().parse::<usize>() {
            return if i < self.order() {
                Ok(i)
            } else {
                Err(Error::ElementNotInGroup(label.to_string()))
            };
        }
        let clean: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        self.labels
            .iter()
            .position(|l| l.replace(' ', "") == clean)
            .ok_or_else(|| Error::ElementNotInGroup(label.to_string()))
    }

    pub fn span(&self, gens: &[Elem]) -> ElemSet {
        let mut set: ElemSet = [0].into_iter().collect();
        let mut frontier = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        set
    }

    pub fn conjugacy_class(&self, a: Elem) -> ElemSet {
        self.elements().map(|g| self.conj(g, a)).collect()
    }

    pub fn conjugate_set(&self, g: Elem, set: &ElemSet) -> ElemSet {
        set.iter().map(|&a| self.conj(g, a)).collect()
    }

    /// `g H`.
    pub fn left_coset(&self, g: Elem, set: &ElemSet) -> ElemSet {
        set.iter().map(|&h| self.mul(g, h)).collect()
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        set.contains(&0)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// Whether `sub` is normalized by every element of `by`.
    pub fn normalizes(&self, by: &ElemSet, sub: &ElemSet) -> bool {
        by.iter().all(|&g| &self.conjugate_set(g, sub) == sub)
    }

    pub fn normal_closure(&self, gens: &[Elem]) -> ElemSet {
        let conjugates: Vec<Elem> = gens
            .iter()
            .flat_map(|&a| self.elements().map(move |g| (g, a)))
            .map(|(g, a)| self.conj(g, a))
            .collect();
        self.span(&conjugates)
    }

    /// Subgroups generated by at most two elements. For the library groups
    /// this is every subgroup.
    pub fn subgroups(&self) -> Vec<ElemSet> {
        let mut out: BTreeSet<ElemSet> = BTreeSet::new();
        for a in self.elements() {
            for b in a..self.order() {
                out.insert(self.span(&[a, b]));
            }
        }
        out.into_iter().collect()
    }

    /// Left cosets of `sub`, each represented by its smallest element.
    pub fn coset_representatives(&self, sub: &ElemSet) -> Vec<Elem> {
        let mut seen = ElemSet::new();
        let mut reps = Vec::new();
        for g in self.elements() {
            if !seen.contains(&g) {
                reps.push(g);
                seen.extend(self.left_coset(g, sub));
            }
        }
        reps
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_orders() {
        let expected = [2, 3, 4, 5, 6, 4, 6, 8, 8, 12, 24];
        for (name, n) in LIBRARY.iter().zip(expected) {
            let g = FiniteGroup::library(name).unwrap();
            assert_eq!(g.order(), n, "{name}");
        }
        let q8 = FiniteGroup::library("Q8").unwrap();
        assert_eq!(
            q8.elements().filter(|&a| q8.element_order(a) == 2).count(),
            1
        );
        assert!(matches!(
            FiniteGroup::library("M11"),
            Err(Error::UnknownGroup(_))
        ));
    }

    #[test]
    fn subgroup_counts() {
        let count = |name: &str| FiniteGroup::library(name).unwrap().subgroups().len();
        assert_eq!(count("S3"), 6);
        assert_eq!(count("Q8"), 6);
        assert_eq!(count("D4"), 10);
        assert_eq!(count("A4"), 10);
        assert_eq!(count("S4"), 30);
    }

    #[test]
    fn s3_labels() {
        let g = FiniteGroup::library("S3").unwrap();
        let t = g.find("(1 2)").unwrap();
        assert_eq!(g.element_order(t), 2);
        assert_eq!(g.conjugacy_class(t).len(), 3);
        assert!(!g.is_abelian());
    }

    #[test]
    fn table_validation() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table("bad", vec!["e".into(), "a".into()], bad).is_err());
    }
}
