//! Lattice paths from (0,0) to (n, kn) and the families they belong to.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::partition::TypePartition;

/// Ordered `E < N < D`; enumeration order follows this.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    E,
    N,
    D,
}

impl Step {
    pub fn delta(self) -> (usize, usize) {
        match self {
            Step::E => (1, 0),
            Step::N => (0, 1),
            Step::D => (1, 1),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
            Step::D => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'E' => Some(Step::E),
            'N' => Some(Step::N),
            'D' => Some(Step::D),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("illegal character {0:?} at position {1}")]
    IllegalChar(char, usize),
    #[error("horizontal displacement {got} != {want}")]
    Horizontal { got: usize, want: usize },
    #[error("vertical displacement {got} != {want}")]
    Vertical { got: usize, want: usize },
    #[error("n and k must be positive")]
    Dimensions,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
    n: usize,
    k: usize,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>, n: usize, k: usize) -> Result<Self, PathError> {
        if n == 0 || k == 0 {
            return Err(PathError::Dimensions);
        }
        let (x, y) = steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.delta();
            (x + dx, y + dy)
        });
        if x != n {
            return Err(PathError::Horizontal { got: x, want: n });
        }
        if y != k * n {
            return Err(PathError::Vertical { got: y, want: k * n });
        }
        Ok(LatticePath { steps, n, k })
    }

    pub fn parse(text: &str, n: usize, k: usize) -> Result<Self, PathError> {
        let steps = text
            .chars()
            .enumerate()
            .map(|(i, c)| Step::from_char(c).ok_or(PathError::IllegalChar(c, i)))
            .collect::<Result<Vec<_>, _>>()?;
        LatticePath::new(steps, n, k)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Starting point of every step, followed by the endpoint `(n, kn)`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let (mut x, mut y) = (0, 0);
        out.push((x, y));
        for s in &self.steps {
            let (dx, dy) = s.delta();
            x += dx;
            y += dy;
            out.push((x, y));
        }
        out
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// Lengths of the maximal east runs, in path order.
    pub fn east_runs(&self) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut cur = 0;
        for &s in &self.steps {
            if s == Step::E {
                cur += 1;
            } else if cur > 0 {
                runs.push(cur);
                cur = 0;
            }
        }
        if cur > 0 {
            runs.push(cur);
        }
        runs
    }

    pub fn path_type(&self) -> TypePartition {
        TypePartition::from_unsorted(self.east_runs())
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for LatticePath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyClass {
    Dyck,
    FussCatalan,
    LargeSchroder,
    SmallSchroder,
    LargeFuss,
    SmallFuss,
    Free,
}

impl FamilyClass {
    pub const ALL: [FamilyClass; 7] = [
        FamilyClass::Dyck,
        FamilyClass::FussCatalan,
        FamilyClass::LargeSchroder,
        FamilyClass::SmallSchroder,
        FamilyClass::LargeFuss,
        FamilyClass::SmallFuss,
        FamilyClass::Free,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyClass::Dyck => "dyck",
            FamilyClass::FussCatalan => "fuss-catalan",
            FamilyClass::LargeSchroder => "large-schroder",
            FamilyClass::SmallSchroder => "small-schroder",
            FamilyClass::LargeFuss => "large-fuss",
            FamilyClass::SmallFuss => "small-fuss",
            FamilyClass::Free => "free",
        }
    }

    fn allows_diagonal(self) -> bool {
        !matches!(self, FamilyClass::Dyck | FamilyClass::FussCatalan)
    }

    fn is_small(self) -> bool {
        matches!(self, FamilyClass::SmallSchroder | FamilyClass::SmallFuss)
    }
}

impl FromStr for FamilyClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.replace('_', "-").to_ascii_lowercase();
        FamilyClass::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("n and k must be positive")]
    Dimensions,
    #[error("r = {r} outside 1..={k}")]
    R { r: usize, k: usize },
    #[error("class {0} requires k = 1")]
    NeedsK1(FamilyClass),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilySpec {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub class: FamilyClass,
}

impl FamilySpec {
    /// `r` is forced to `k` for the free class and to 1 where it carries no meaning.
    pub fn new(class: FamilyClass, n: usize, k: usize, r: usize) -> Result<Self, SpecError> {
        if n == 0 || k == 0 {
            return Err(SpecError::Dimensions);
        }
        if matches!(
            class,
            FamilyClass::Dyck | FamilyClass::LargeSchroder | FamilyClass::SmallSchroder
        ) && k != 1
        {
            return Err(SpecError::NeedsK1(class));
        }
        let r = match class {
            FamilyClass::Free => k,
            FamilyClass::Dyck | FamilyClass::FussCatalan => 1,
            _ => r,
        };
        if r == 0 || r > k {
            return Err(SpecError::R { r, k });
        }
        Ok(FamilySpec { n, k, r, class })
    }

    /// Residue that a diagonal step must start on, if diagonals are allowed.
    fn diagonal_start_residue(&self) -> usize {
        self.r - 1
    }
}

/// Moves every diagonal step to the top row of its block of `k` rows by
/// exchanging it with the north step leaving that row. Identity when `r = k`.
/// Returns `None` if some block has no such north step.
pub(crate) fn lift_diagonals(steps: &[Step], k: usize) -> Option<Vec<Step>> {
    let mut out = steps.to_vec();
    let mut y = 0;
    let mut levels = Vec::with_capacity(steps.len());
    for &s in steps {
        levels.push(y);
        y += s.delta().1;
    }
    for i in 0..out.len() {
        if steps[i] != Step::D {
            continue;
        }
        let top = (levels[i] / k) * k + k - 1;
        if levels[i] == top {
            continue;
        }
        let j = (i + 1..out.len()).find(|&j| levels[j] == top && steps[j] == Step::N)?;
        out[i] = Step::N;
        out[j] = Step::D;
    }
    Some(out)
}

fn weakly_above(steps: &[Step], k: usize) -> bool {
    let (mut x, mut y) = (0usize, 0usize);
    for s in steps {
        let (dx, dy) = s.delta();
        x += dx;
        y += dy;
        if y < k * x {
            return false;
        }
    }
    true
}

fn diagonal_touches(steps: &[Step], k: usize) -> bool {
    let (mut x, mut y) = (0usize, 0usize);
    for s in steps {
        if *s == Step::D && (y == k * x || y + 1 == k * (x + 1)) {
            return true;
        }
        let (dx, dy) = s.delta();
        x += dx;
        y += dy;
    }
    false
}

pub fn is_member(path: &LatticePath, spec: &FamilySpec) -> bool {
    if path.n != spec.n || path.k != spec.k {
        return false;
    }
    let k = spec.k;
    let steps = &path.steps;
    if !spec.class.allows_diagonal() {
        return !steps.contains(&Step::D) && weakly_above(steps, k);
    }
    if spec.class == FamilyClass::Free {
        let mut y = 0;
        for &s in steps {
            if s == Step::D {
                let row = y + 1;
                if row % k != 0 || row / k < 2 {
                    return false;
                }
            }
            y += s.delta().1;
        }
        return true;
    }
    let residue = spec.diagonal_start_residue();
    let mut y = 0;
    for &s in steps {
        if s == Step::D && y % k != residue {
            return false;
        }
        y += s.delta().1;
    }
    if spec.class.is_small() {
        // same set as "lifted path is small"; the unlifted form is the direct one
        weakly_above(steps, k) && !diagonal_touches(steps, k)
    } else {
        match lift_diagonals(steps, k) {
            Some(lifted) => weakly_above(&lifted, k),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(class: FamilyClass, n: usize, k: usize, r: usize) -> FamilySpec {
        FamilySpec::new(class, n, k, r).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let p = LatticePath::parse("ENNNDEENNNN", 4, 2).unwrap();
        assert_eq!(*p.points().last().unwrap(), (4, 8));
        assert_eq!(p.to_string(), "ENNNDEENNNN");
        assert_eq!(
            LatticePath::parse("EE", 1, 2),
            Err(PathError::Horizontal { got: 2, want: 1 })
        );
        assert_eq!(
            LatticePath::parse("NNX", 1, 2),
            Err(PathError::IllegalChar('X', 2))
        );
        assert!(matches!(
            LatticePath::parse("E", 1, 2),
            Err(PathError::Vertical { got: 0, want: 2 })
        ));
    }

    #[test]
    fn types() {
        let p = LatticePath::parse("NENNNEEDNEEDNE", 8, 1).unwrap();
        assert_eq!(p.path_type().parts(), &[2, 2, 1, 1]);
        let p = LatticePath::parse("NNNNNNENDEE", 4, 2).unwrap();
        assert_eq!(p.path_type().parts(), &[2, 1]);
        let p = LatticePath::parse("DNDN", 2, 2).unwrap();
        assert!(p.path_type().is_empty());
    }

    #[test]
    fn membership() {
        let dn = LatticePath::parse("DN", 1, 2).unwrap();
        assert!(is_member(&dn, &spec(FamilyClass::LargeFuss, 1, 2, 1)));
        assert!(!is_member(&dn, &spec(FamilyClass::SmallFuss, 1, 2, 1)));
        assert!(!is_member(&dn, &spec(FamilyClass::LargeFuss, 1, 2, 2)));

        let p = LatticePath::parse("NNNDE", 2, 2).unwrap();
        assert!(is_member(&p, &spec(FamilyClass::LargeFuss, 2, 2, 2)));
        assert!(is_member(&p, &spec(FamilyClass::SmallFuss, 2, 2, 2)));

        let cyc = LatticePath::parse("ENNNDEENNNN", 4, 2).unwrap();
        assert!(is_member(&cyc, &spec(FamilyClass::Free, 4, 2, 2)));
        assert!(!is_member(&cyc, &spec(FamilyClass::LargeFuss, 4, 2, 2)));

        // a diagonal in row k is not free
        let p = LatticePath::parse("NDNNE", 2, 2).unwrap();
        assert!(!is_member(&p, &spec(FamilyClass::Free, 2, 2, 2)));
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            FamilySpec::new(FamilyClass::Dyck, 3, 2, 1),
            Err(SpecError::NeedsK1(FamilyClass::Dyck))
        );
        assert_eq!(FamilySpec::new(FamilyClass::Free, 3, 2, 1).unwrap().r, 2);
        assert!(FamilySpec::new(FamilyClass::LargeFuss, 3, 2, 3).is_err());
        assert_eq!("small_fuss".parse::<FamilyClass>(), Ok(FamilyClass::SmallFuss));
    }

    #[test]
    fn lifting_moves_diagonal_to_block_top() {
        let steps = LatticePath::parse("DNNNE", 2, 2).unwrap().steps().to_vec();
        let lifted = lift_diagonals(&steps, 2).unwrap();
        let s: String = lifted.iter().map(|s| s.as_char()).collect();
        assert_eq!(s, "NDNNE");
    }
}
