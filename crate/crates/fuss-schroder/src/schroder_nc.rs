//! Noncrossing set partitions and the tracing map from (k,k)-Fuss–Schröder
//! paths to sparse noncrossing partitions.

use serde::Serialize;
use thiserror::Error;

use crate::partition::TypePartition;
use crate::path::{is_member, FamilyClass, FamilySpec, LatticePath, Step};

/// A set partition of `[m]`; blocks sorted internally and ordered by their
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NCPartition {
    m: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("blocks do not partition [{0}]")]
    NotAPartition(usize),
    #[error("{0} is not a large (k,k)-Fuss-Schröder path")]
    NotLarge(String),
    #[error("{0} is not a small (k,k)-Fuss-Schröder path")]
    NotSmall(String),
    #[error("last element of {0} is not a singleton second component")]
    SecondComponent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NcPredicates {
    pub noncrossing: bool,
    pub sparse: bool,
    /// Inclusive intervals `(first, last)`.
    pub components: Vec<(usize, usize)>,
    pub arc_type: TypePartition,
}

impl NCPartition {
    pub fn new(m: usize, blocks: Vec<Vec<usize>>) -> Result<Self, NcError> {
        let mut seen = vec![false; m + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(NcError::NotAPartition(m));
            }
            for &x in b {
                if x == 0 || x > m || seen[x] {
                    return Err(NcError::NotAPartition(m));
                }
                seen[x] = true;
            }
        }
        if seen[1..].iter().any(|&s| !s) {
            return Err(NcError::NotAPartition(m));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(NCPartition { m, blocks })
    }

    /// Blocks from a labelling: positions carrying the same label share a block.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (pos, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(pos + 1);
        }
        NCPartition::new(labels.len(), by_label.into_values().collect()).expect("labels cover every position")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.m + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                of[x] = i;
            }
        }
        of
    }

    pub fn is_noncrossing(&self) -> bool {
        // consecutive elements of each block are the arcs; two arcs cross iff
        // exactly one endpoint of one lies strictly inside the other
        let arcs: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
            .collect();
        arcs.iter().all(|&(a, b)| {
            arcs.iter()
                .all(|&(c, d)| !(a < c && c < b && b < d) && !(c < a && a < d && d < b))
        })
    }

    pub fn is_sparse(&self) -> bool {
        let of = self.block_of();
        (1..self.m).all(|x| of[x] != of[x + 1])
    }

    pub fn components(&self) -> Vec<(usize, usize)> {
        let of = self.block_of();
        let max: Vec<usize> = self.blocks.iter().map(|b| *b.last().unwrap()).collect();
        let mut out = Vec::new();
        let mut start = 1;
        while start <= self.m {
            let mut end = max[of[start]];
            let mut x = start;
            while x <= end {
                end = end.max(max[of[x]]);
                x += 1;
            }
            out.push((start, end));
            start = end + 1;
        }
        out
    }

    pub fn arc_type(&self) -> TypePartition {
        TypePartition::new(self.blocks.iter().map(|b| b.len() - 1).filter(|&a| a > 0).collect())
            .expect("positive arc counts")
    }

    pub fn singletons(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    pub fn predicates(&self) -> NcPredicates {
        NcPredicates {
            noncrossing: self.is_noncrossing(),
            sparse: self.is_sparse(),
            components: self.components(),
            arc_type: self.arc_type(),
        }
    }
}

fn large_spec(p: &LatticePath) -> FamilySpec {
    FamilySpec::new(FamilyClass::LargeFuss, p.n(), p.k(), p.k()).expect("dimensions of a valid path")
}

/// Labels of the east steps and of the diagonal steps, in path order.
/// Row `(n-i)k` carries `i(k+1)+2`; line `y = (n-i)k + j`, `0 ≤ j < k`,
/// carries `i(k+1)+1-j`.
fn step_labels(p: &LatticePath) -> (Vec<usize>, Vec<usize>) {
    let (n, k) = (p.n(), p.k());
    let (mut east, mut diag) = (Vec::new(), Vec::new());
    let mut y = 0;
    for &s in p.steps() {
        match s {
            Step::E => {
                let i = n - y / k;
                east.push(i * (k + 1) + 1 - y % k);
            }
            Step::D => diag.push((n - (y + 1) / k) * (k + 1) + 2),
            Step::N => {}
        }
        y += s.delta().1;
    }
    (east, diag)
}

/// The sorted label sequence `s₁ ≤ … ≤ s_n`.
pub fn path_to_labels(p: &LatticePath) -> Result<Vec<usize>, NcError> {
    if !is_member(p, &large_spec(p)) {
        return Err(NcError::NotLarge(p.to_string()));
    }
    let (mut labels, diag) = step_labels(p);
    labels.extend(diag);
    labels.sort_unstable();
    Ok(labels)
}

/// Runs the rewriting on an explicit number sequence starting from `1 2`.
pub fn trace_sequence(p: &LatticePath) -> Result<Vec<usize>, NcError> {
    let labels = path_to_labels(p)?;
    let (east, diag) = step_labels(p);
    assert!(east.iter().all(|l| !diag.contains(l)), "east and diagonal labels overlap");
    let k = p.k();
    let mut seq = vec![1usize, 2];
    let mut i = 0;
    while i < labels.len() {
        let s = labels[i];
        let m = labels[i..].iter().take_while(|&&l| l == s).count();
        assert!(m == 1 || !diag.contains(&s), "repeated diagonal label {s}");
        let width = m * (k + 1);
        let at = seq.iter().position(|&x| x == s).expect("label present in sequence");
        assert_eq!(seq.iter().filter(|&&x| x == s).count(), 1, "label {s} must occur once");
        for x in seq.iter_mut().filter(|x| **x > s) {
            *x += width;
        }
        let mut pattern = Vec::with_capacity(2 * width + 1);
        pattern.push(s);
        for t in 1..=width {
            pattern.push(s + t);
            pattern.push(s);
        }
        seq.splice(at..=at, pattern);
        i += m;
    }
    Ok(seq)
}

pub fn trace_to_partition(p: &LatticePath) -> Result<NCPartition, NcError> {
    Ok(NCPartition::from_labels(&trace_sequence(p)?))
}

/// The trace of a small path with its last element, a singleton second
/// component, removed.
pub fn small_partition(p: &LatticePath) -> Result<NCPartition, NcError> {
    let spec = FamilySpec::new(FamilyClass::SmallFuss, p.n(), p.k(), p.k()).expect("valid dimensions");
    if !is_member(p, &spec) {
        return Err(NcError::NotSmall(p.to_string()));
    }
    let full = trace_to_partition(p)?;
    let m = full.m;
    if full.components() != vec![(1, m - 1), (m, m)] {
        return Err(NcError::SecondComponent(p.to_string()));
    }
    let blocks = full.blocks.into_iter().filter(|b| b != &vec![m]).collect();
    Ok(NCPartition::new(m - 1, blocks).expect("dropping a singleton keeps a partition"))
}
