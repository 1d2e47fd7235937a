//! Exhaustive generation of path families in `E < N < D` lexicographic order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::counting::Count;
use crate::partition::TypePartition;
use crate::path::{FamilyClass, FamilySpec, LatticePath, Step};

const ORDER: [Step; 3] = [Step::E, Step::N, Step::D];

#[derive(Clone, Copy, Debug)]
struct Frame {
    x: usize,
    y: usize,
    // after a diagonal below the top row of its block, points up to that top
    // may sit one column to the right of the line (see `path::lift_diagonals`)
    slack_until: Option<usize>,
    next: usize,
}

/// Depth-first generator with prefix pruning; pull-based and restartable
/// via `Clone`.
#[derive(Clone, Debug)]
pub struct Dfs {
    spec: FamilySpec,
    steps: Vec<Step>,
    stack: Vec<Frame>,
}

impl Dfs {
    fn new(spec: FamilySpec) -> Self {
        Dfs {
            spec,
            steps: Vec::new(),
            stack: vec![Frame { x: 0, y: 0, slack_until: None, next: 0 }],
        }
    }

    fn child(&self, f: &Frame, s: Step) -> Option<Frame> {
        let FamilySpec { n, k, r, class } = self.spec;
        let (dx, dy) = s.delta();
        let (x, y) = (f.x + dx, f.y + dy);
        if x > n || y > k * n {
            return None;
        }
        let small = matches!(class, FamilyClass::SmallFuss | FamilyClass::SmallSchroder);
        let mut slack_until = f.slack_until.filter(|&top| y < top);
        if s == Step::D {
            match class {
                FamilyClass::Dyck | FamilyClass::FussCatalan => return None,
                FamilyClass::Free => {
                    if y % k != 0 || y / k < 2 {
                        return None;
                    }
                }
                _ => {
                    if f.y % k != r - 1 {
                        return None;
                    }
                    if small && (f.y == k * f.x || y == k * x) {
                        return None;
                    }
                    if !small && y % k != 0 {
                        slack_until = Some((f.y / k) * k + k);
                    }
                }
            }
        }
        if class != FamilyClass::Free {
            let ok = match slack_until {
                Some(_) => y + k >= k * x,
                None => y >= k * x,
            };
            if !ok {
                return None;
            }
        }
        Some(Frame { x, y, slack_until, next: 0 })
    }
}

impl Iterator for Dfs {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        let (n, k) = (self.spec.n, self.spec.k);
        loop {
            let top = *self.stack.last()?;
            if top.next == 0 && top.x == n && top.y == k * n {
                self.stack.last_mut().unwrap().next = ORDER.len();
                return Some(LatticePath::new(self.steps.clone(), n, k).expect("complete path"));
            }
            if top.next >= ORDER.len() {
                self.stack.pop();
                self.steps.pop();
                continue;
            }
            self.stack.last_mut().unwrap().next += 1;
            let s = ORDER[top.next];
            if let Some(child) = self.child(&top, s) {
                self.steps.push(s);
                self.stack.push(child);
            }
        }
    }
}

pub enum Enumeration {
    Dfs(Dfs),
    Listed(std::vec::IntoIter<LatticePath>),
}

impl Iterator for Enumeration {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        match self {
            Enumeration::Dfs(d) => d.next(),
            Enumeration::Listed(l) => l.next(),
        }
    }
}

/// All members of the family, each once, in lexicographic order.
pub fn enumerate(spec: &FamilySpec) -> Enumeration {
    if spec.class == FamilyClass::Free {
        Enumeration::Listed(free_paths(spec.n, spec.k).into_iter())
    } else {
        Enumeration::Dfs(Dfs::new(*spec))
    }
}

/// Builds a free path from its encoding: the rows carrying diagonals and the
/// `(line, length)` of each run.
pub fn free_path_from_encoding(n: usize, k: usize, d_rows: &[usize], runs: &[(usize, usize)]) -> LatticePath {
    let mut steps = Vec::with_capacity(n + k * n);
    for y in 0..=k * n {
        if let Some(&(_, len)) = runs.iter().find(|(line, _)| *line == y) {
            steps.extend(std::iter::repeat_n(Step::E, len));
        }
        if y < k * n {
            steps.push(if d_rows.contains(&(y + 1)) { Step::D } else { Step::N });
        }
    }
    LatticePath::new(steps, n, k).expect("encoding yields a closed path")
}

fn combinations(items: &[usize], m: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < m - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, m, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Free paths of one type, sorted.
pub fn free_paths_of_type(n: usize, k: usize, lambda: &TypePartition) -> Vec<LatticePath> {
    if lambda.size() > n || (lambda.is_empty() && n > 0) {
        return Vec::new();
    }
    let rows: Vec<usize> = (2..=n).map(|i| i * k).collect();
    let lines: Vec<usize> = (0..=k * n).collect();
    let arrangements = lambda.arrangements();
    let mut out = Vec::new();
    for d_rows in combinations(&rows, n - lambda.size()) {
        for chosen in combinations(&lines, lambda.length()) {
            for lens in &arrangements {
                let runs: Vec<(usize, usize)> = chosen.iter().copied().zip(lens.iter().copied()).collect();
                out.push(free_path_from_encoding(n, k, &d_rows, &runs));
            }
        }
    }
    out.sort();
    out
}

pub fn free_paths(n: usize, k: usize) -> Vec<LatticePath> {
    let mut out: Vec<LatticePath> = TypePartition::with_bounds(n, n)
        .flat_map(|lambda| free_paths_of_type(n, k, &lambda))
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub spec: FamilySpec,
    pub entries: BTreeMap<TypePartition, Count>,
}

impl Serialize for CountTable {
    // counts go out as decimal strings; types as arrays
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Row<'a> {
            #[serde(rename = "type")]
            lambda: &'a TypePartition,
            count: String,
        }
        let rows: Vec<Row> = self
            .entries
            .iter()
            .map(|(lambda, c)| Row { lambda, count: c.to_string() })
            .collect();
        let mut st = s.serialize_struct("CountTable", 3)?;
        st.serialize_field("spec", &self.spec)?;
        st.serialize_field("entries", &rows)?;
        st.serialize_field("total", &self.total().to_string())?;
        st.end()
    }
}

impl CountTable {
    pub fn total(&self) -> Count {
        self.entries.values().sum()
    }

    pub fn get(&self, lambda: &TypePartition) -> Count {
        self.entries.get(lambda).cloned().unwrap_or_default()
    }
}

pub fn count_by_type(spec: &FamilySpec) -> CountTable {
    let mut entries = BTreeMap::new();
    for p in enumerate(spec) {
        *entries.entry(p.path_type()).or_insert_with(Count::default) += 1u32;
    }
    CountTable { spec: *spec, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(spec: FamilySpec) -> Vec<String> {
        enumerate(&spec).map(|p| p.to_string()).collect()
    }

    fn spec(class: FamilyClass, n: usize, k: usize, r: usize) -> FamilySpec {
        FamilySpec::new(class, n, k, r).unwrap()
    }

    #[test]
    fn small_families() {
        assert_eq!(strings(spec(FamilyClass::FussCatalan, 2, 2, 1)), ["NNENNE", "NNNENE", "NNNNEE"]);
        assert_eq!(strings(spec(FamilyClass::LargeFuss, 1, 2, 1)), ["NNE", "DN"]);
        assert_eq!(strings(spec(FamilyClass::LargeFuss, 1, 2, 2)), ["NNE", "ND"]);
        assert_eq!(strings(spec(FamilyClass::SmallSchroder, 2, 1, 1)).len(), 3);
        assert_eq!(strings(spec(FamilyClass::Free, 1, 2, 2)), ["ENN", "NEN", "NNE"]);
    }

    #[test]
    fn tables() {
        let t = count_by_type(&spec(FamilyClass::Dyck, 3, 1, 1));
        let got: Vec<(String, u32)> = t
            .entries
            .iter()
            .map(|(l, c)| (l.to_string(), u32::try_from(c).unwrap()))
            .collect();
        assert_eq!(got, [("1,1,1".to_string(), 1), ("2,1".into(), 3), ("3".into(), 1)]);

        let t = count_by_type(&spec(FamilyClass::SmallFuss, 2, 2, 2));
        assert_eq!(t.get(&"2".parse().unwrap()), Count::from(1u32));
        assert_eq!(t.get(&"1,1".parse().unwrap()), Count::from(2u32));
        assert_eq!(t.get(&"1".parse().unwrap()), Count::from(1u32));

        let t = count_by_type(&spec(FamilyClass::LargeSchroder, 2, 1, 1));
        assert_eq!(t.get(&"1".parse().unwrap()), Count::from(3u32));
        assert_eq!(t.get(&"".parse().unwrap()), Count::from(1u32));
    }

    #[test]
    fn restartable() {
        let e = Dfs::new(spec(FamilyClass::Dyck, 3, 1, 1));
        let a: Vec<_> = e.clone().collect();
        let b: Vec<_> = e.collect();
        assert_eq!(a, b);
    }
}
