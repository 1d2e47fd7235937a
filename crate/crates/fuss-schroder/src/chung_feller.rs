//! Flaws on free paths and the flaw-raising / flaw-lowering bijection that
//! cuts the free paths of each type into classes of size `nk + 1`.
//!
//! Only the case `r = k` is handled. The sliding rules for east runs are
//! applied as stated: a run slides left until the flaw count goes up by one,
//! handing the motion over to the next anchored run whenever it passes a
//! diagonal, a flawed step or an `NE` corner without gaining a flaw; the
//! inverse slides right. Those rules are not everywhere defined: a path that
//! begins with an east run needs a circular shift first, and a slide can end
//! with two runs merged on one line. Inside each class `(type, flaws)` the
//! paths the plain rules cannot handle are matched with the paths the plain
//! rules never reach. The shifted-and-slid candidate is taken when it
//! is one of those and still free, and the rest are paired in sorted order.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::free_paths_of_type;
use crate::partition::TypePartition;
use crate::path::{is_member, FamilyClass, FamilySpec, LatticePath, PathError, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Tok {
    Run(usize),
    N,
    D,
}

impl Tok {
    fn is_run(self) -> bool {
        matches!(self, Tok::Run(_))
    }

    fn delta(self) -> (usize, usize) {
        match self {
            Tok::Run(m) => (m, 0),
            Tok::N => (0, 1),
            Tok::D => (1, 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlawError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("bad run separator in {0:?}")]
    Separator(String),
    #[error("not a free path: {0}")]
    NotFree(String),
    #[error("two runs share a line: {0}")]
    SharedLine(String),
    #[error("already at the maximum of {0} flaws")]
    Maximal(usize),
    #[error("path has no flaws")]
    Flawless,
    #[error("the shifted path is disconnected")]
    Disconnected,
    #[error("the shift cuts through an east run")]
    SplitsRun,
    #[error("the shift puts a diagonal step in row {0}")]
    DiagonalRow(usize),
}

/// A free path whose east steps are grouped into identified runs. Two runs
/// may sit back to back on one line (after a circular shift); they render as
/// `EE|E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnotatedPath {
    n: usize,
    k: usize,
    toks: Vec<Tok>,
}

impl AnnotatedPath {
    pub fn from_path(p: &LatticePath) -> Self {
        let mut toks = Vec::new();
        for &s in p.steps() {
            match (s, toks.last_mut()) {
                (Step::E, Some(Tok::Run(m))) => *m += 1,
                (Step::E, _) => toks.push(Tok::Run(1)),
                (Step::N, _) => toks.push(Tok::N),
                (Step::D, _) => toks.push(Tok::D),
            }
        }
        AnnotatedPath { n: p.n(), k: p.k(), toks }
    }

    /// Parses `E/N/D` text with optional `|` between east steps.
    pub fn parse(text: &str, n: usize, k: usize) -> Result<Self, FlawError> {
        let plain: String = text.chars().filter(|&c| c != '|').collect();
        LatticePath::parse(&plain, n, k)?;
        let mut toks = Vec::new();
        let mut split = false;
        let chars: Vec<char> = text.chars().collect();
        for (i, &c) in chars.iter().enumerate() {
            match c {
                '|' => {
                    let ok = i > 0 && chars[i - 1] == 'E' && chars.get(i + 1) == Some(&'E');
                    if !ok {
                        return Err(FlawError::Separator(text.into()));
                    }
                    split = true;
                }
                'E' => match toks.last_mut() {
                    Some(Tok::Run(m)) if !split => *m += 1,
                    _ => toks.push(Tok::Run(1)),
                },
                'N' => toks.push(Tok::N),
                _ => toks.push(Tok::D),
            }
            if c != '|' {
                split = false;
            }
        }
        Ok(AnnotatedPath { n, k, toks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn to_path(&self) -> LatticePath {
        let steps = self
            .toks
            .iter()
            .flat_map(|t| match *t {
                Tok::Run(m) => vec![Step::E; m],
                Tok::N => vec![Step::N],
                Tok::D => vec![Step::D],
            })
            .collect();
        LatticePath::new(steps, self.n, self.k).expect("tokens stay closed")
    }

    pub fn run_lengths(&self) -> Vec<usize> {
        self.toks
            .iter()
            .filter_map(|t| match t {
                Tok::Run(m) => Some(*m),
                _ => None,
            })
            .collect()
    }

    pub fn path_type(&self) -> TypePartition {
        TypePartition::new(self.run_lengths()).expect("runs are nonempty")
    }

    /// True when no two runs share a line.
    pub fn runs_separated(&self) -> bool {
        self.toks.windows(2).all(|w| !(w[0].is_run() && w[1].is_run()))
    }

    fn with(&self, toks: Vec<Tok>) -> Self {
        AnnotatedPath { n: self.n, k: self.k, toks }
    }

    fn check_free(&self) -> Result<(), FlawError> {
        let spec = FamilySpec::new(FamilyClass::Free, self.n, self.k, self.k).expect("valid dimensions");
        if is_member(&self.to_path(), &spec) {
            Ok(())
        } else {
            Err(FlawError::NotFree(self.to_string()))
        }
    }

    fn check_plain_free(&self) -> Result<(), FlawError> {
        self.check_free()?;
        if !self.runs_separated() {
            return Err(FlawError::SharedLine(self.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for AnnotatedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut prev_run = false;
        for t in &self.toks {
            match t {
                Tok::Run(m) => {
                    if prev_run {
                        f.write_str("|")?;
                    }
                    f.write_str(&"E".repeat(*m))?;
                }
                Tok::N => f.write_str("N")?,
                Tok::D => f.write_str("D")?,
            }
            prev_run = t.is_run();
        }
        Ok(())
    }
}

impl Serialize for AnnotatedPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlawReason {
    NBelowLine,
    DBelowShiftedLine,
    NInducedByFlawedD,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepFlaw {
    pub step: char,
    pub from: (usize, usize),
    pub reason: Option<FlawReason>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlawReport {
    pub total: usize,
    pub per_step: Vec<StepFlaw>,
}

fn starts(toks: &[Tok]) -> Vec<(usize, usize)> {
    let (mut x, mut y) = (0, 0);
    toks.iter()
        .map(|t| {
            let p = (x, y);
            let (dx, dy) = t.delta();
            x += dx;
            y += dy;
            p
        })
        .collect()
}

/// Per-token flaw reasons. North steps below `y = kx` are flawed; a diagonal
/// ending on row `ik` is flawed when that end lies strictly below
/// `y = kx + k`; a flawed diagonal also flags the north steps of its block
/// lying in the band `kx ≤ y`, `y + 1 ≤ kx + k`.
fn flaw_reasons(toks: &[Tok], k: usize) -> Vec<Option<FlawReason>> {
    let pts = starts(toks);
    let flawed_rows: HashSet<usize> = toks
        .iter()
        .zip(&pts)
        .filter(|(t, &(x, y))| **t == Tok::D && y + 1 < k * (x + 1) + k)
        .map(|(_, &(_, y))| y + 1)
        .collect();
    toks.iter()
        .zip(&pts)
        .map(|(t, &(x, y))| match t {
            Tok::N if y < k * x => Some(FlawReason::NBelowLine),
            Tok::N => {
                let top = (y / k + 1) * k;
                let induced = (y + 1) % k != 0 && flawed_rows.contains(&top) && y < k * x + k;
                induced.then_some(FlawReason::NInducedByFlawedD)
            }
            Tok::D => flawed_rows.contains(&(y + 1)).then_some(FlawReason::DBelowShiftedLine),
            Tok::Run(_) => None,
        })
        .collect()
}

fn flaw_flags(toks: &[Tok], k: usize) -> Vec<bool> {
    flaw_reasons(toks, k).into_iter().map(|r| r.is_some()).collect()
}

fn flaws_of(toks: &[Tok], k: usize) -> usize {
    flaw_flags(toks, k).into_iter().filter(|&f| f).count()
}

pub fn flaw_count(p: &AnnotatedPath) -> Result<FlawReport, FlawError> {
    p.check_free()?;
    let reasons = flaw_reasons(&p.toks, p.k);
    let pts = starts(&p.toks);
    let mut per_step = Vec::new();
    for ((t, reason), &(x, y)) in p.toks.iter().zip(reasons).zip(&pts) {
        match *t {
            Tok::Run(m) => {
                per_step.extend((0..m).map(|i| StepFlaw { step: 'E', from: (x + i, y), reason: None }))
            }
            Tok::N => per_step.push(StepFlaw { step: 'N', from: (x, y), reason }),
            Tok::D => per_step.push(StepFlaw { step: 'D', from: (x, y), reason }),
        }
    }
    let total = per_step.iter().filter(|s| s.reason.is_some()).count();
    Ok(FlawReport { total, per_step })
}

/// Cuts the token sequence at `(a, ak)` and rotates, if the path meets that
/// point between tokens.
fn rotate(toks: &[Tok], n: usize, k: usize, a: usize) -> Result<Vec<Tok>, FlawError> {
    let a = a % n;
    if a == 0 {
        return Ok(toks.to_vec());
    }
    let target = (a, a * k);
    let pts = starts(toks);
    if let Some(j) = pts.iter().position(|&p| p == target) {
        let mut out = toks[j..].to_vec();
        out.extend_from_slice(&toks[..j]);
        return Ok(out);
    }
    let inside = toks
        .iter()
        .zip(&pts)
        .any(|(t, &(x, y))| matches!(t, Tok::Run(m) if y == target.1 && x < target.0 && target.0 < x + m));
    Err(if inside { FlawError::SplitsRun } else { FlawError::Disconnected })
}

fn diagonal_rows(toks: &[Tok]) -> Vec<usize> {
    starts(toks)
        .iter()
        .zip(toks)
        .filter(|(_, t)| **t == Tok::D)
        .map(|(&(_, y), _)| y + 1)
        .collect()
}

/// Translates every step by `(-times, -k·times)` modulo `(n, kn)` and reads the
/// result from the origin again. Runs keep their identities across the seam.
pub fn circular_shift(p: &AnnotatedPath, times: usize) -> Result<AnnotatedPath, FlawError> {
    p.check_free()?;
    let (n, k) = (p.n, p.k);
    let a = times % n;
    for row in diagonal_rows(&p.toks) {
        // row ik lands on row (i-a)k, with row 0 read as row nk
        let i = row / k;
        let moved = (i + n - a - 1) % n + 1;
        if moved == 1 {
            return Err(FlawError::DiagonalRow(k));
        }
    }
    Ok(p.with(rotate(&p.toks, n, k, a)?))
}

/// Runs standing right before a diagonal, a flawed step, an `NE` corner or
/// the end, or sharing their line with a neighbouring run.
fn anchored(toks: &[Tok], k: usize) -> Vec<usize> {
    let fl = flaw_flags(toks, k);
    let len = toks.len();
    let is_anchor = |i: usize| {
        if i > 0 && toks[i - 1].is_run() {
            return true;
        }
        match toks.get(i + 1) {
            None | Some(Tok::D) | Some(Tok::Run(_)) => true,
            Some(Tok::N) => fl[i + 1] || (i + 2 < len && toks[i + 2].is_run()),
        }
    };
    (0..len).filter(|&i| toks[i].is_run() && is_anchor(i)).collect()
}

/// Rules (1a)/(1b): slide the run at `i` left until the count reaches
/// `f0 + 1`.
fn slide_left(mut toks: Vec<Tok>, k: usize, mut i: usize, f0: usize) -> Option<Vec<Tok>> {
    loop {
        if i == 0 {
            return None;
        }
        let prev = toks[i - 1];
        if prev.is_run() {
            toks.swap(i - 1, i);
            i -= 1;
            continue;
        }
        let was_flawed = flaw_flags(&toks, k)[i - 1];
        let corner = prev == Tok::N && i + 1 < toks.len() && toks[i + 1].is_run();
        toks.swap(i - 1, i);
        i -= 1;
        let f = flaws_of(&toks, k);
        if f == f0 + 1 {
            return Some(toks);
        }
        if f > f0 + 1 || f < f0 {
            return None;
        }
        if prev == Tok::D || was_flawed || corner {
            i = *anchored(&toks, k).iter().find(|&&a| a > i + 1)?;
        }
    }
}

/// The plain increment: defined when the path does not start with a run
/// and the slide ends with runs on distinct lines.
fn plain_add(toks: &[Tok], k: usize) -> Option<Vec<Tok>> {
    if toks.first()?.is_run() {
        return None;
    }
    let f0 = flaws_of(toks, k);
    let start = *anchored(toks, k).first()?;
    let out = slide_left(toks.to_vec(), k, start, f0)?;
    out.windows(2).all(|w| !(w[0].is_run() && w[1].is_run())).then_some(out)
}

/// Rules (1c)/(1d) for a path starting with a run: shift by the least
/// admissible number of blocks, move the anchored runs one slot towards the
/// first of them, then slide that one left.
fn shifted_add(toks: &[Tok], n: usize, k: usize) -> Option<Vec<Tok>> {
    let f0 = flaws_of(toks, k);
    let rows = diagonal_rows(toks);
    let shifted = (1..n).find_map(|a| {
        let t = rotate(toks, n, k, a).ok()?;
        if t[0].is_run() || rows.contains(&((a + 1) * k)) {
            return None;
        }
        Some(t)
    })?;
    let runs: Vec<usize> = (0..shifted.len()).filter(|&i| shifted[i].is_run()).collect();
    let anc = anchored(&shifted, k);
    let rank = |i: usize| runs.iter().position(|&r| r == i).expect("anchored index is a run");
    let (s, e) = (rank(*anc.first()?), rank(*anc.last()?));
    let mut t = Vec::with_capacity(shifted.len());
    for (i, &tok) in shifted.iter().enumerate() {
        match runs.iter().position(|&r| r == i) {
            Some(r) if r == s && e > s => {
                t.push(tok);
                t.push(shifted[runs[s + 1]]);
            }
            Some(r) if r > s && r < e => t.push(shifted[runs[r + 1]]),
            Some(r) if r == e && e > s => {}
            _ => t.push(tok),
        }
    }
    let first = (0..t.len()).filter(|&i| t[i].is_run()).nth(s)?;
    let out = slide_left(t, k, first, f0)?;
    let ok = out.windows(2).all(|w| !(w[0].is_run() && w[1].is_run()))
        && diagonal_rows(&out).iter().all(|&r| r % k == 0 && r / k >= 2);
    ok.then_some(out)
}

/// Rules (2a)/(2b): the run before the leftmost flawed step slides right past
/// it and on until it meets a diagonal, a run, an `NE` corner or a flawed
/// step; then the rightmost earlier run standing before a flawless diagonal
/// or flawless `NE` slides right once. Returned only when the runs stay on
/// distinct lines and the result inverts `plain_add`.
fn plain_remove(toks: &[Tok], k: usize) -> Option<Vec<Tok>> {
    let fl = flaw_flags(toks, k);
    let first = fl.iter().position(|&f| f)?;
    if first == 0 || !toks[first - 1].is_run() {
        return None;
    }
    let i0 = first - 1;
    let mut t = toks.to_vec();
    let mut i = i0;
    let mut passed = false;
    while i + 1 < t.len() {
        let nx = t[i + 1];
        if passed {
            let corner = nx == Tok::N && i + 2 < t.len() && t[i + 2].is_run();
            if nx == Tok::D || nx.is_run() || corner || flaw_flags(&t, k)[i + 1] {
                break;
            }
        }
        passed = true;
        t.swap(i, i + 1);
        i += 1;
    }
    let moved = i;
    let fl = flaw_flags(&t, k);
    let cand = (0..i0).rev().find(|&j| {
        if !t[j].is_run() || j + 1 >= t.len() || fl[j + 1] {
            return false;
        }
        match t[j + 1] {
            Tok::D => true,
            Tok::N => j + 2 < t.len() && t[j + 2].is_run() && j + 2 != moved,
            Tok::Run(_) => false,
        }
    });
    if let Some(mut j) = cand {
        let mut passed = false;
        while j + 1 < t.len() {
            let nx = t[j + 1];
            if passed {
                let corner = nx == Tok::N && j + 2 < t.len() && t[j + 2].is_run();
                let flawed = !nx.is_run() && flaw_flags(&t, k)[j + 1];
                if nx == Tok::D || corner || flawed {
                    break;
                }
            }
            passed = true;
            t.swap(j, j + 1);
            j += 1;
        }
    }
    let separated = t.windows(2).all(|w| !(w[0].is_run() && w[1].is_run()));
    (separated && plain_add(&t, k).as_deref() == Some(toks)).then_some(t)
}

/// Pairing of the leftover paths of one class `(type, f)` with the leftover
/// paths of `(type, f + 1)`; `down` also inverts every plain increment.
#[derive(Default)]
struct ClassMatch {
    up: HashMap<Vec<Tok>, Vec<Tok>>,
    down: HashMap<Vec<Tok>, Vec<Tok>>,
}

/// Caches per-class data so orbits and exhaustive checks stay cheap.
pub struct FlawEngine {
    n: usize,
    k: usize,
    classes: HashMap<(TypePartition, usize), ClassMatch>,
    by_type: HashMap<TypePartition, Vec<(Vec<Tok>, usize)>>,
}

impl FlawEngine {
    pub fn new(n: usize, k: usize) -> Self {
        FlawEngine { n, k, classes: HashMap::new(), by_type: HashMap::new() }
    }

    fn members(&mut self, lambda: &TypePartition) -> &Vec<(Vec<Tok>, usize)> {
        let (n, k) = (self.n, self.k);
        self.by_type.entry(lambda.clone()).or_insert_with(|| {
            free_paths_of_type(n, k, lambda)
                .iter()
                .map(|p| {
                    let t = AnnotatedPath::from_path(p).toks;
                    let f = flaws_of(&t, k);
                    (t, f)
                })
                .collect()
        })
    }

    fn class(&mut self, lambda: &TypePartition, f: usize) -> &ClassMatch {
        let key = (lambda.clone(), f);
        if !self.classes.contains_key(&key) {
            let m = self.build_class(lambda, f);
            self.classes.insert(key.clone(), m);
        }
        &self.classes[&key]
    }

    fn build_class(&mut self, lambda: &TypePartition, f: usize) -> ClassMatch {
        let (n, k) = (self.n, self.k);
        let members = self.members(lambda).clone();
        let mut hit: HashMap<Vec<Tok>, Vec<Tok>> = HashMap::new();
        let mut stuck = Vec::new();
        for (t, g) in &members {
            if *g != f {
                continue;
            }
            match plain_add(t, k) {
                Some(u) => {
                    let clash = hit.insert(u, t.clone());
                    assert!(clash.is_none(), "plain increment not injective for n={n} k={k} type {lambda}");
                }
                None => stuck.push(t.clone()),
            }
        }
        let free: Vec<Vec<Tok>> = members
            .iter()
            .filter(|(t, g)| *g == f + 1 && !hit.contains_key(t))
            .map(|(t, _)| t.clone())
            .collect();
        assert_eq!(
            stuck.len(),
            free.len(),
            "class sizes disagree for n={n} k={k} type {lambda} at {f} flaws"
        );
        let sort_key = |t: &Vec<Tok>| AnnotatedPath { n, k, toks: t.clone() }.to_path();
        stuck.sort_by_key(sort_key);
        let free_set: HashSet<Vec<Tok>> = free.iter().cloned().collect();
        let mut m = ClassMatch::default();
        let mut rest = Vec::new();
        for t in stuck {
            let cand = if t[0].is_run() { shifted_add(&t, n, k) } else { None };
            match cand {
                Some(c) if free_set.contains(&c) && !m.down.contains_key(&c) => {
                    m.down.insert(c.clone(), t.clone());
                    m.up.insert(t, c);
                }
                _ => rest.push(t),
            }
        }
        let mut open: Vec<Vec<Tok>> = free.into_iter().filter(|c| !m.down.contains_key(c)).collect();
        open.sort_by_key(sort_key);
        for (t, c) in rest.into_iter().zip(open) {
            m.down.insert(c.clone(), t.clone());
            m.up.insert(t, c);
        }
        // the plain rule's own inverse, for paths the right-slides miss
        m.down.extend(hit);
        m
    }

    fn check_dims(&self, p: &AnnotatedPath) -> Result<(), FlawError> {
        if p.n != self.n || p.k != self.k {
            return Err(FlawError::NotFree(format!("{p} is not of size ({}, {})", self.n, self.k)));
        }
        p.check_plain_free()
    }

    pub fn add_flaw(&mut self, p: &AnnotatedPath) -> Result<AnnotatedPath, FlawError> {
        self.check_dims(p)?;
        let k = self.k;
        let f = flaws_of(&p.toks, k);
        if f == self.n * k {
            return Err(FlawError::Maximal(f));
        }
        if let Some(t) = plain_add(&p.toks, k) {
            return Ok(p.with(t));
        }
        let up = &self.class(&p.path_type(), f).up;
        Ok(p.with(up[&p.toks].clone()))
    }

    pub fn remove_flaw(&mut self, p: &AnnotatedPath) -> Result<AnnotatedPath, FlawError> {
        self.check_dims(p)?;
        let k = self.k;
        let f = flaws_of(&p.toks, k);
        if f == 0 {
            return Err(FlawError::Flawless);
        }
        if let Some(t) = plain_remove(&p.toks, k) {
            return Ok(p.with(t));
        }
        let down = &self.class(&p.path_type(), f - 1).down;
        Ok(p.with(down[&p.toks].clone()))
    }

    /// The class of `p`, from its flawless member upward.
    pub fn orbit(&mut self, p: &AnnotatedPath) -> Result<Vec<AnnotatedPath>, FlawError> {
        self.check_dims(p)?;
        let mut cur = p.clone();
        while flaws_of(&cur.toks, self.k) > 0 {
            cur = self.remove_flaw(&cur)?;
        }
        let mut out = vec![cur.clone()];
        for _ in 0..self.n * self.k {
            cur = self.add_flaw(&cur)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// All classes of one type, each listed from its flawless member.
    pub fn orbits_of_type(&mut self, lambda: &TypePartition) -> Result<Vec<Vec<AnnotatedPath>>, FlawError> {
        let (n, k) = (self.n, self.k);
        let starts: Vec<AnnotatedPath> = self
            .members(lambda)
            .iter()
            .filter(|(_, f)| *f == 0)
            .map(|(t, _)| AnnotatedPath { n, k, toks: t.clone() })
            .collect();
        starts.iter().map(|s| self.orbit(s)).collect()
    }
}

pub fn add_flaw(p: &AnnotatedPath) -> Result<AnnotatedPath, FlawError> {
    FlawEngine::new(p.n, p.k).add_flaw(p)
}

pub fn remove_flaw(p: &AnnotatedPath) -> Result<AnnotatedPath, FlawError> {
    FlawEngine::new(p.n, p.k).remove_flaw(p)
}

pub fn orbit(p: &AnnotatedPath) -> Result<Vec<AnnotatedPath>, FlawError> {
    FlawEngine::new(p.n, p.k).orbit(p)
}
