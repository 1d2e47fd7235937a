//! Integer partitions used as path types and arc types.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

/// Weakly decreasing positive parts. The empty partition is legal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypePartition(Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: usize,
    pub length: usize,
    pub multiplicity_factor: BigUint,
}

impl TypePartition {
    /// Sorts and drops nothing; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, String> {
        if parts.contains(&0) {
            return Err("partition parts must be positive".into());
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TypePartition(parts))
    }

    pub(crate) fn from_unsorted(parts: Vec<usize>) -> Self {
        TypePartition::new(parts).expect("positive parts")
    }

    pub fn empty() -> Self {
        TypePartition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// Multiplicities of the distinct parts, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// m_λ = ∏ m_i(λ)!
    pub fn multiplicity_factor(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .map(|(_, m)| crate::counting::factorial(m))
            .fold(BigUint::one(), |acc, f| acc * f)
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.size(),
            length: self.length(),
            multiplicity_factor: self.multiplicity_factor(),
        }
    }

    /// Every partition with `|λ| ≤ max_size` and `ℓ(λ) ≤ max_length`,
    /// by increasing size, then reverse-lexicographically.
    pub fn with_bounds(max_size: usize, max_length: usize) -> impl Iterator<Item = TypePartition> {
        (0..=max_size).flat_map(move |s| of_size(s, s, max_length).into_iter())
    }

    /// Distinct orderings of the parts (the ℓ!/m_λ arrangements of runs).
    pub fn arrangements(&self) -> Vec<Vec<usize>> {
        let mut parts = self.0.clone();
        parts.sort_unstable();
        let mut out = vec![parts.clone()];
        while next_permutation(&mut parts) {
            out.push(parts.clone());
        }
        out
    }
}

fn of_size(size: usize, max_part: usize, max_length: usize) -> Vec<TypePartition> {
    fn rec(rem: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<TypePartition>) {
        if rem == 0 {
            out.push(TypePartition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, max_part, max_length, &mut Vec::new(), &mut out);
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for TypePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TypePartition {
    type Err = String;

    /// `"2,1"`; the empty string (or `"()"`) is the empty partition.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(TypePartition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad part {p:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        TypePartition::new(parts)
    }
}

impl Serialize for TypePartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}
