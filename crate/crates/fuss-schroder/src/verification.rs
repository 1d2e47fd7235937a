//! Oracle checks: formulas against enumeration, the r-shift, the flaw classes
//! and the two partition conjectures.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bijections::shift_r;
use crate::chung_feller::{flaw_count, AnnotatedPath, FlawEngine};
use crate::counting::{self, Count};
use crate::enumeration::{count_by_type, enumerate, free_paths_of_type};
use crate::partition::TypePartition;
use crate::path::{is_member, FamilyClass, FamilySpec};
use crate::schroder_nc::{small_partition, trace_to_partition, NCPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    #[serde(rename = "type")]
    pub lambda: TypePartition,
    #[serde(serialize_with = "as_decimal")]
    pub formula: Count,
    #[serde(serialize_with = "as_decimal")]
    pub enumerated: Count,
    pub pass: bool,
}

fn as_decimal<S: serde::Serializer>(c: &Count, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(c)
}

/// A failure with enough context to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub detail: String,
    pub replay: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    #[serde(rename = "type")]
    pub lambda: TypePartition,
    pub paths: usize,
    pub set_size: usize,
    pub images_in_set: usize,
    pub injective: bool,
    pub cardinalities_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub status: Status,
    pub checked_cells: Vec<Cell>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conjecture_rows: Vec<ConjectureRow>,
    pub counterexamples: Vec<Witness>,
}

impl VerifyReport {
    fn new(check: impl Into<String>) -> Self {
        VerifyReport {
            check: check.into(),
            status: Status::Pass,
            checked_cells: Vec::new(),
            conjecture_rows: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn finish(mut self) -> Self {
        let ok = self.counterexamples.is_empty() && self.checked_cells.iter().all(|c| c.pass);
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    fn witness(&mut self, check: &str, detail: String, replay: String) {
        self.counterexamples.push(Witness { check: check.into(), detail, replay });
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    Dyck,
    LargeSchroder,
    SmallSchroder,
    FussCatalan,
    SmallFuss,
    Free,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Dyck,
        TheoremId::LargeSchroder,
        TheoremId::SmallSchroder,
        TheoremId::FussCatalan,
        TheoremId::SmallFuss,
        TheoremId::Free,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::Dyck => "2.1",
            TheoremId::LargeSchroder => "2.2",
            TheoremId::SmallSchroder => "2.3",
            TheoremId::FussCatalan => "3.1",
            TheoremId::SmallFuss => "3.3",
            TheoremId::Free => "free",
        }
    }

    fn class(self) -> FamilyClass {
        match self {
            TheoremId::Dyck => FamilyClass::Dyck,
            TheoremId::LargeSchroder => FamilyClass::LargeSchroder,
            TheoremId::SmallSchroder => FamilyClass::SmallSchroder,
            TheoremId::FussCatalan => FamilyClass::FussCatalan,
            TheoremId::SmallFuss => FamilyClass::SmallFuss,
            TheoremId::Free => FamilyClass::Free,
        }
    }

    fn k_one_only(self) -> bool {
        matches!(self, TheoremId::Dyck | TheoremId::LargeSchroder | TheoremId::SmallSchroder)
    }

    fn depends_on_r(self) -> bool {
        self == TheoremId::SmallFuss
    }

    pub fn formula(self, n: usize, k: usize, lambda: &TypePartition) -> Count {
        match self {
            TheoremId::Dyck => counting::dyck_by_type(n, lambda),
            TheoremId::LargeSchroder => counting::large_schroder_by_type(n, lambda),
            TheoremId::SmallSchroder => counting::small_schroder_by_type(n, lambda),
            TheoremId::FussCatalan => counting::fuss_catalan_by_type(n, k, lambda),
            TheoremId::SmallFuss => counting::small_fuss_by_type(n, k, lambda),
            TheoremId::Free => counting::free_paths_by_type(n, k, lambda),
        }
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| format!("unknown theorem id {s:?} (expected 2.1, 2.2, 2.3, 3.1, 3.3 or free)"))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Formula against enumeration for every `n ≤ max_n`, `k ≤ max_k`, `r ≤ k`
/// and every type with `|λ| ≤ n`.
pub fn verify_theorem(id: TheoremId, max_n: usize, max_k: usize) -> VerifyReport {
    let mut rep = VerifyReport::new(format!("theorem {id}"));
    let ks: Vec<usize> = if id.k_one_only() { vec![1] } else { (1..=max_k).collect() };
    for n in 1..=max_n {
        for &k in &ks {
            let rs: Vec<usize> = if id.depends_on_r() { (1..=k).collect() } else { vec![k] };
            for r in rs {
                let spec = FamilySpec::new(id.class(), n, k, r).expect("grid specs are valid");
                let table = count_by_type(&spec);
                for lambda in TypePartition::with_bounds(n, n) {
                    let formula = id.formula(n, k, &lambda);
                    let enumerated = table.get(&lambda);
                    let pass = formula == enumerated;
                    if !pass {
                        rep.witness(
                            "formula",
                            format!("n={n} k={k} r={r} type ({lambda}): formula {formula}, enumerated {enumerated}"),
                            format!("count-table --class {} --n {n} --k {k} --r {r}", id.class()),
                        );
                    }
                    rep.checked_cells.push(Cell { n, k, r: spec.r, lambda, formula, enumerated, pass });
                }
                // every enumerated type must be one of the grid types
                for (lambda, c) in &table.entries {
                    if lambda.size() > n {
                        rep.witness("formula", format!("unexpected type ({lambda}) with {c} paths"), String::new());
                    }
                }
            }
        }
    }
    rep.finish()
}

/// Large and small tables agree across r; `shift_r` lands in the target
/// family, is injective and round-trips.
pub fn verify_r_independence(max_n: usize, max_k: usize) -> VerifyReport {
    let mut rep = VerifyReport::new("r-independence");
    for n in 1..=max_n {
        for k in 1..=max_k {
            for class in [FamilyClass::LargeFuss, FamilyClass::SmallFuss] {
                let base = count_by_type(&FamilySpec::new(class, n, k, k).unwrap());
                for r in 1..=k {
                    let table = count_by_type(&FamilySpec::new(class, n, k, r).unwrap());
                    for lambda in TypePartition::with_bounds(n, n) {
                        let (formula, enumerated) = (base.get(&lambda), table.get(&lambda));
                        let pass = formula == enumerated;
                        if !pass {
                            rep.witness(
                                "r-table",
                                format!("{class} n={n} k={k} type ({lambda}): r={k} gives {formula}, r={r} gives {enumerated}"),
                                format!("count-table --class {class} --n {n} --k {k} --r {r}"),
                            );
                        }
                        rep.checked_cells.push(Cell { n, k, r, lambda, formula, enumerated, pass });
                    }
                }
            }
            for i in 1..=k {
                for j in 1..=k {
                    if i == j {
                        continue;
                    }
                    let target = FamilySpec::new(FamilyClass::LargeFuss, n, k, j).unwrap();
                    let mut seen = HashSet::new();
                    for p in enumerate(&FamilySpec::new(FamilyClass::LargeFuss, n, k, i).unwrap()) {
                        let replay = format!("shift-r --n {n} --k {k} --from {i} --to {j} --path {p}");
                        let q = match shift_r(&p, i, j) {
                            Ok(q) => q,
                            Err(e) => {
                                rep.witness("shift-r", format!("{p}: {e}"), replay);
                                continue;
                            }
                        };
                        if !is_member(&q, &target) || q.path_type() != p.path_type() {
                            rep.witness("shift-r", format!("{p} -> {q} leaves the target family"), replay.clone());
                        }
                        if shift_r(&q, j, i).ok().as_ref() != Some(&p) {
                            rep.witness("shift-r", format!("{p} -> {q} does not return"), replay.clone());
                        }
                        if !seen.insert(q.clone()) {
                            rep.witness("shift-r", format!("{q} hit twice"), replay);
                        }
                    }
                }
            }
        }
    }
    rep.finish()
}

/// Known flaw counts for hand-checked paths (n = 4, k = 2).
pub const GOLDEN_FLAWS: [(&str, usize); 9] = [
    ("NNNNNNENDEE", 0),
    ("NNNNNNENEED", 1),
    ("NNNNNDNENEE", 0),
    ("NNNNNEDNEEN", 1),
    ("ENNNDEENNNN", 8),
    ("ENNNDNNNNEE", 4),
    ("ENNNDNNNEEN", 5),
    ("NNNEENENNND", 5),
    ("NNEENENNNND", 6),
];

/// Known flaw-raising steps (n = 4, k = 2).
pub const GOLDEN_STEPS: [(&str, &str); 4] = [
    ("NNNNNNENDEE", "NNNNNNENEED"),
    ("NNNNNDNENEE", "NNNNNEDNEEN"),
    ("ENNNDNNNNEE", "NNNEENENNND"),
    ("ENNNDNNNEEN", "NNEENENNNND"),
];

fn check_golden(rep: &mut VerifyReport) {
    let mut engine = FlawEngine::new(4, 2);
    for (s, want) in GOLDEN_FLAWS {
        let replay = format!("flaws --n 4 --k 2 --path {s}");
        let got = AnnotatedPath::parse(s, 4, 2).and_then(|p| flaw_count(&p)).map(|r| r.total);
        if got != Ok(want) {
            rep.witness("golden-flaws", format!("{s}: expected {want}, got {got:?}"), replay);
        }
    }
    for (from, to) in GOLDEN_STEPS {
        let a = AnnotatedPath::parse(from, 4, 2).unwrap();
        let b = AnnotatedPath::parse(to, 4, 2).unwrap();
        if engine.add_flaw(&a).as_ref() != Ok(&b) {
            rep.witness(
                "golden-step",
                format!("{from} should rise to {to}"),
                format!("flaw-step --direction add --n 4 --k 2 --path {from}"),
            );
        }
        if engine.remove_flaw(&b).as_ref() != Ok(&a) {
            rep.witness(
                "golden-step",
                format!("{to} should drop to {from}"),
                format!("flaw-step --direction remove --n 4 --k 2 --path {to}"),
            );
        }
    }
}

/// Classes of size `nk + 1` with one flawless member, partitioning the free
/// paths of every type; raising and lowering invert each other.
pub fn verify_chung_feller(max_n: usize, max_k: usize) -> VerifyReport {
    let mut rep = VerifyReport::new("chung-feller");
    check_golden(&mut rep);
    for n in 1..=max_n {
        for k in 1..=max_k {
            let mut engine = FlawEngine::new(n, k);
            for lambda in TypePartition::with_bounds(n, n) {
                let all: Vec<AnnotatedPath> =
                    free_paths_of_type(n, k, &lambda).iter().map(AnnotatedPath::from_path).collect();
                let formula = counting::free_paths_by_type(n, k, &lambda);
                let mut covered: HashSet<AnnotatedPath> = HashSet::new();
                let orbits = match engine.orbits_of_type(&lambda) {
                    Ok(o) => o,
                    Err(e) => {
                        rep.witness("orbit", format!("n={n} k={k} type ({lambda}): {e}"), String::new());
                        Vec::new()
                    }
                };
                for orbit in &orbits {
                    let flaws: Vec<usize> = orbit.iter().map(|p| flaw_count(p).map(|r| r.total).unwrap_or(usize::MAX)).collect();
                    let expected: Vec<usize> = (0..=n * k).collect();
                    if flaws != expected {
                        rep.witness(
                            "orbit",
                            format!("orbit of {} has flaw counts {flaws:?}", orbit[0]),
                            format!("orbit --n {n} --k {k} --path {}", orbit[0]),
                        );
                    }
                    for p in orbit {
                        if !covered.insert(p.clone()) {
                            rep.witness("orbit", format!("{p} lies in two orbits"), format!("orbit --n {n} --k {k} --path {p}"));
                        }
                    }
                }
                for p in &all {
                    if !covered.contains(p) {
                        rep.witness("orbit", format!("{p} lies in no orbit"), format!("orbit --n {n} --k {k} --path {p}"));
                    }
                    let f = flaw_count(p).map(|r| r.total).unwrap_or(0);
                    let small = FamilySpec::new(FamilyClass::SmallFuss, n, k, k).unwrap();
                    if (f == 0) != is_member(&p.to_path(), &small) {
                        rep.witness("flawless", format!("{p}: {f} flaws vs small membership"), String::new());
                    }
                    if f < n * k {
                        let up = engine.add_flaw(p);
                        let back = up.as_ref().ok().map(|q| engine.remove_flaw(q));
                        if !matches!(back, Some(Ok(ref b)) if b == p) {
                            rep.witness(
                                "inverse",
                                format!("{p} -> {up:?} does not come back"),
                                format!("flaw-step --direction add --n {n} --k {k} --path {p}"),
                            );
                        }
                    }
                }
                let enumerated = Count::from(covered.len());
                let pass = enumerated == formula && orbits.len() * (n * k + 1) == all.len();
                rep.checked_cells.push(Cell { n, k, r: k, lambda, formula, enumerated, pass });
            }
        }
    }
    rep.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConjectureId {
    /// Large paths and two-component partitions of `[2(k+1)n+2]`.
    Large,
    /// Small paths and connected partitions of `[2(k+1)n+1]`.
    Small,
}

impl FromStr for ConjectureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" => Ok(ConjectureId::Large),
            "2" => Ok(ConjectureId::Small),
            _ => Err(format!("unknown conjecture id {s:?} (expected 1 or 2)")),
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureId::Large => "1",
            ConjectureId::Small => "2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("(k+1)n = {0} exceeds 9")]
    TooLarge(usize),
}

/// The conditions shared by both conjectures, beyond size, sparsity and
/// component count: the arc type; the blocks numbered `i(k+1)+2`,
/// `0 ≤ i < n`, hold `n-|λ|` blocks with `k+1` arcs and `|λ|` singletons;
/// and the last `t(k+1)` blocks hold at least `t(k-1)+1` singletons whenever
/// there are that many blocks.
pub fn conjecture_conditions(p: &NCPartition, n: usize, k: usize, lambda: &TypePartition) -> bool {
    if p.arc_type() != conjecture_arc_type(n, k, lambda) {
        return false;
    }
    let blocks = p.blocks();
    let marked: Vec<&Vec<usize>> = (0..n).filter_map(|i| blocks.get(i * (k + 1) + 1)).collect();
    if marked.len() != n {
        return false;
    }
    let big = marked.iter().filter(|b| b.len() == k + 2).count();
    let single = marked.iter().filter(|b| b.len() == 1).count();
    if big != n - lambda.size() || single != lambda.size() {
        return false;
    }
    let mut t = 1;
    while t * (k + 1) <= blocks.len() {
        let tail = &blocks[blocks.len() - t * (k + 1)..];
        if tail.iter().filter(|b| b.len() == 1).count() < t * (k - 1) + 1 {
            return false;
        }
        t += 1;
    }
    true
}

pub fn conjecture_arc_type(n: usize, k: usize, lambda: &TypePartition) -> TypePartition {
    let mut parts: Vec<usize> = lambda.parts().iter().map(|&p| (k + 1) * p).collect();
    parts.extend(std::iter::repeat_n(k + 1, n - lambda.size()));
    TypePartition::new(parts).expect("positive parts")
}

/// Sparse noncrossing partitions of `[m]` whose non-singleton blocks have the
/// given sizes, by arc-diagram backtracking: each element either extends the
/// innermost open block or opens a block of a still unused size.
pub fn sparse_nc_with_block_sizes(m: usize, sizes: &[usize]) -> Vec<NCPartition> {
    let mut remaining: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in sizes {
        *remaining.entry(s).or_default() += 1;
    }
    let arc_elements: usize = sizes.iter().sum();
    if arc_elements > m {
        return Vec::new();
    }
    struct State {
        m: usize,
        label: Vec<usize>,
        // (block id, elements still needed, last element)
        open: Vec<(usize, usize, usize)>,
        remaining: BTreeMap<usize, usize>,
        singles: usize,
        blocks: usize,
        out: Vec<NCPartition>,
    }
    fn needed(st: &State) -> usize {
        st.open.iter().map(|o| o.1).sum::<usize>()
            + st.remaining.iter().map(|(s, c)| s * c).sum::<usize>()
            + st.singles
    }
    fn rec(st: &mut State, x: usize) {
        if x > st.m {
            if st.open.is_empty() && needed(st) == 0 {
                st.out.push(NCPartition::from_labels(&st.label));
            }
            return;
        }
        if needed(st) != st.m - x + 1 {
            return;
        }
        if let Some(&(id, need, last)) = st.open.last() {
            if last + 1 != x {
                st.label.push(id);
                if need == 1 {
                    st.open.pop();
                } else {
                    *st.open.last_mut().unwrap() = (id, need - 1, x);
                }
                rec(st, x + 1);
                if need == 1 {
                    st.open.push((id, need, last));
                } else {
                    *st.open.last_mut().unwrap() = (id, need, last);
                }
                st.label.pop();
            }
        }
        if st.singles > 0 {
            st.singles -= 1;
            st.label.push(st.blocks);
            st.blocks += 1;
            rec(st, x + 1);
            st.blocks -= 1;
            st.label.pop();
            st.singles += 1;
        }
        let sizes: Vec<usize> = st.remaining.iter().filter(|(_, c)| **c > 0).map(|(s, _)| *s).collect();
        for s in sizes {
            *st.remaining.get_mut(&s).unwrap() -= 1;
            st.label.push(st.blocks);
            st.open.push((st.blocks, s - 1, x));
            st.blocks += 1;
            rec(st, x + 1);
            st.blocks -= 1;
            st.open.pop();
            st.label.pop();
            *st.remaining.get_mut(&s).unwrap() += 1;
        }
    }
    let singles_elements = m - arc_elements;
    let mut st = State {
        m,
        label: Vec::with_capacity(m),
        open: Vec::new(),
        remaining,
        singles: singles_elements,
        blocks: 0,
        out: Vec::new(),
    };
    rec(&mut st, 1);
    let mut out = st.out;
    out.sort();
    out
}

/// Every sparse noncrossing partition of `[m]`, built without block sizes:
/// each element opens a block or joins one on the open stack, closing the
/// blocks above it. Independent of the sized generator; used to check it.
pub fn all_sparse_nc(m: usize) -> Vec<NCPartition> {
    fn rec(m: usize, x: usize, label: &mut Vec<usize>, stack: &mut Vec<usize>, blocks: usize, out: &mut Vec<NCPartition>) {
        if x > m {
            out.push(NCPartition::from_labels(label));
            return;
        }
        let prev = label.last().copied();
        for depth in 0..stack.len() {
            let b = stack[depth];
            if Some(b) == prev {
                continue;
            }
            let saved: Vec<usize> = stack[depth + 1..].to_vec();
            stack.truncate(depth + 1);
            label.push(b);
            rec(m, x + 1, label, stack, blocks, out);
            label.pop();
            stack.extend(saved);
        }
        stack.push(blocks);
        label.push(blocks);
        rec(m, x + 1, label, stack, blocks + 1, out);
        label.pop();
        stack.pop();
    }
    let mut out = Vec::new();
    rec(m, 1, &mut Vec::new(), &mut Vec::new(), 0, &mut out);
    out.sort();
    out
}

fn conjecture_set(id: ConjectureId, n: usize, k: usize, lambda: &TypePartition) -> Vec<NCPartition> {
    let (m, components) = match id {
        ConjectureId::Large => (2 * (k + 1) * n + 2, 2),
        ConjectureId::Small => (2 * (k + 1) * n + 1, 1),
    };
    let sizes: Vec<usize> = conjecture_arc_type(n, k, lambda).parts().iter().map(|a| a + 1).collect();
    sparse_nc_with_block_sizes(m, &sizes)
        .into_iter()
        .filter(|p| p.components().len() == components && conjecture_conditions(p, n, k, lambda))
        .collect()
}

/// The partition set a conjecture pairs with paths of type `λ`.
pub fn conjecture_partitions(id: ConjectureId, n: usize, k: usize, lambda: &TypePartition) -> Result<Vec<NCPartition>, VerifyError> {
    if (k + 1) * n > 9 {
        return Err(VerifyError::TooLarge((k + 1) * n));
    }
    Ok(conjecture_set(id, n, k, lambda))
}

/// Maps every path of each type into the conjectured set; reports landing,
/// injectivity and cardinality separately.
pub fn verify_conjecture(id: ConjectureId, n: usize, k: usize) -> Result<VerifyReport, VerifyError> {
    if (k + 1) * n > 9 {
        return Err(VerifyError::TooLarge((k + 1) * n));
    }
    let mut rep = VerifyReport::new(format!("conjecture {id}"));
    let class = match id {
        ConjectureId::Large => FamilyClass::LargeFuss,
        ConjectureId::Small => FamilyClass::SmallFuss,
    };
    let spec = FamilySpec::new(class, n, k, k).unwrap();
    let mut by_type: BTreeMap<TypePartition, Vec<_>> = BTreeMap::new();
    for p in enumerate(&spec) {
        by_type.entry(p.path_type()).or_default().push(p);
    }
    let m = match id {
        ConjectureId::Large => 2 * (k + 1) * n + 2,
        ConjectureId::Small => 2 * (k + 1) * n + 1,
    };
    // the unsized generator cross-checks the sized one on small ground sets
    let everything = (m <= 14).then(|| all_sparse_nc(m));
    for lambda in TypePartition::with_bounds(n, n) {
        let paths = by_type.remove(&lambda).unwrap_or_default();
        let generated = conjecture_set(id, n, k, &lambda);
        if let Some(all) = &everything {
            let components = if id == ConjectureId::Large { 2 } else { 1 };
            let filtered: Vec<NCPartition> = all
                .iter()
                .filter(|p| p.components().len() == components && conjecture_conditions(p, n, k, &lambda))
                .cloned()
                .collect();
            if filtered != generated {
                rep.witness(
                    "generator",
                    format!("type ({lambda}): generator gives {}, exhaustive filter {}", generated.len(), filtered.len()),
                    format!("verify conjecture --id {id} --n {n} --k {k}"),
                );
            }
        }
        let set: HashSet<NCPartition> = generated.into_iter().collect();
        let mut images: HashMap<NCPartition, String> = HashMap::new();
        let mut in_set = 0;
        let mut injective = true;
        for p in &paths {
            let replay = format!("to-partition --n {n} --k {k} --path {p}");
            let img = match id {
                ConjectureId::Large => trace_to_partition(p),
                ConjectureId::Small => small_partition(p),
            };
            let img = match img {
                Ok(img) => img,
                Err(e) => {
                    rep.witness("map", format!("{p}: {e}"), replay);
                    continue;
                }
            };
            if set.contains(&img) {
                in_set += 1;
            } else {
                rep.witness("lands-in-set", format!("{p} maps to {:?}, outside the set", img.blocks()), replay.clone());
            }
            if let Some(other) = images.insert(img, p.to_string()) {
                injective = false;
                rep.witness("injective", format!("{p} and {other} share an image"), replay);
            }
        }
        let cardinalities_equal = paths.len() == set.len();
        if !cardinalities_equal {
            let mut missing: Vec<&NCPartition> = set.iter().filter(|q| !images.contains_key(*q)).collect();
            missing.sort();
            let detail = match missing.first() {
                Some(q) => format!(
                    "type ({lambda}): {} paths vs {} partitions; unreached {:?}",
                    paths.len(),
                    set.len(),
                    q.blocks()
                ),
                None => format!("type ({lambda}): {} paths vs {} partitions", paths.len(), set.len()),
            };
            rep.witness("cardinality", detail, format!("verify conjecture --id {id} --n {n} --k {k}"));
        }
        rep.conjecture_rows.push(ConjectureRow {
            lambda: lambda.clone(),
            paths: paths.len(),
            set_size: set.len(),
            images_in_set: in_set,
            injective,
            cardinalities_equal,
        });
        rep.checked_cells.push(Cell {
            n,
            k,
            r: k,
            lambda,
            formula: Count::from(set.len()),
            enumerated: Count::from(paths.len()),
            pass: cardinalities_equal && injective && in_set == paths.len(),
        });
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    // every set partition via restricted growth strings, then filtered
    fn filtered_set_partitions(m: usize) -> Vec<NCPartition> {
        fn rec(m: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<NCPartition>) {
            if rgs.len() == m {
                let p = NCPartition::from_labels(rgs);
                if p.is_noncrossing() && p.is_sparse() {
                    out.push(p);
                }
                return;
            }
            for b in 0..=max + 1 {
                rgs.push(b);
                rec(m, rgs, max.max(b), out);
                rgs.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, &mut vec![0], 0, &mut out);
        out.sort();
        out
    }

    #[test]
    fn sparse_counts_are_motzkin() {
        let motzkin = [1usize, 1, 2, 4, 9, 21, 51, 127, 323];
        for m in 1..=9 {
            assert_eq!(all_sparse_nc(m).len(), motzkin[m - 1]);
        }
    }

    #[test]
    fn sized_generator_matches_filter() {
        for m in 1..=9 {
            let all = all_sparse_nc(m);
            if m <= 8 {
                assert_eq!(all, filtered_set_partitions(m), "m={m}");
            }
            let mut by_arcs: BTreeMap<TypePartition, Vec<NCPartition>> = BTreeMap::new();
            for p in all {
                by_arcs.entry(p.arc_type()).or_default().push(p);
            }
            for (arcs, expected) in by_arcs {
                let sizes: Vec<usize> = arcs.parts().iter().map(|a| a + 1).collect();
                assert_eq!(sparse_nc_with_block_sizes(m, &sizes), expected, "m={m} arcs ({arcs})");
            }
        }
    }

    #[test]
    fn smallest_conjecture_cases() {
        let lambda: TypePartition = "1".parse().unwrap();
        let set = conjecture_partitions(ConjectureId::Small, 1, 2, &lambda).unwrap();
        assert_eq!(set.len(), 1);
        let d = TypePartition::empty();
        let set = conjecture_partitions(ConjectureId::Large, 1, 1, &d).unwrap();
        let want = NCPartition::new(6, vec![vec![1], vec![2, 4, 6], vec![3], vec![5]]).unwrap();
        assert!(set.contains(&want));
    }

    #[test]
    fn too_large() {
        assert_eq!(verify_conjecture(ConjectureId::Large, 5, 1), Err(VerifyError::TooLarge(10)));
    }
}
