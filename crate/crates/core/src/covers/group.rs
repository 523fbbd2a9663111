//! Finite abelian groups `Z/n_1 x ... x Z/n_r` with elements written as
//! exponent vectors in the labeled generators.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub type Subset = BTreeSet<GroupElement>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        assert!(orders.iter().all(|&n| n >= 1));
        AbelianGroup { orders }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(a, n)| a < n)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementNotInGroup(g.to_string()))
        }
    }

    /// Parses `"1"`, `"1,0"` or `"(1,0)"`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad group element {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.len() != self.orders.len() {
            return Err(Error::ElementNotInGroup(s.to_string()));
        }
        Ok(GroupElement(
            parts
                .iter()
                .zip(&self.orders)
                .map(|(&a, &n)| a.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn mul_scalar(&self, a: &GroupElement, k: u64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((x as u128 * k as u128) % n as u128) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&x, &n)| acc.lcm(&(n / x.gcd(&n))))
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::new()];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |a| {
                        let mut w = v.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElement).collect()
    }

    /// The subgroup generated by `gens`.
    pub fn span(&self, gens: &[GroupElement]) -> Subset {
        let mut set: Subset = [self.identity()].into_iter().collect();
        let mut frontier = vec![self.identity()];
        while let Some(a) = frontier.pop() {
            for g in gens {
                let b = self.add(&a, g);
                if set.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        set
    }

    /// `a + H`.
    pub fn coset(&self, a: &GroupElement, subgroup: &Subset) -> Subset {
        subgroup.iter().map(|h| self.add(a, h)).collect()
    }

    /// Direct product, factors kept in order.
    pub fn product(groups: &[AbelianGroup]) -> AbelianGroup {
        AbelianGroup::new(
            groups
                .iter()
                .flat_map(|g| g.orders.iter().copied())
                .collect(),
        )
    }
}
