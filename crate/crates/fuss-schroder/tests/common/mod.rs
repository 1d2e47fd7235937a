#![allow(dead_code)]

use fuss_schroder::{FamilyClass, LatticePath, Step};

/// Every step sequence from (0,0) to (n,kn), no constraints.
pub fn all_sequences(n: usize, k: usize) -> Vec<Vec<Step>> {
    fn rec(e: usize, nn: usize, d: usize, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if e == 0 && nn == 0 && d == 0 {
            out.push(cur.clone());
            return;
        }
        for (s, left) in [(Step::E, e), (Step::N, nn), (Step::D, d)] {
            if left == 0 {
                continue;
            }
            cur.push(s);
            match s {
                Step::E => rec(e - 1, nn, d, cur, out),
                Step::N => rec(e, nn - 1, d, cur, out),
                Step::D => rec(e, nn, d - 1, cur, out),
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=n {
        rec(n - d, k * n - d, d, &mut Vec::new(), &mut out);
    }
    out
}

pub fn render(steps: &[Step]) -> String {
    steps.iter().map(|s| s.as_char()).collect()
}

/// Membership straight from the definitions. For large families with r < k
/// a diagonal leaving level kt+r-1 counts as if it sat at the top of its
/// block, so until the walk reaches level kt+k it may stand one column
/// right of the line.
pub fn oracle_member(steps: &[Step], n: usize, k: usize, r: usize, class: FamilyClass) -> bool {
    let small = matches!(class, FamilyClass::SmallFuss | FamilyClass::SmallSchroder);
    let mut slack_below: Option<usize> = None;
    let (mut x, mut y) = (0usize, 0usize);
    for &s in steps {
        let (x0, y0) = (x, y);
        match s {
            Step::E => x += 1,
            Step::N => y += 1,
            Step::D => {
                x += 1;
                y += 1;
            }
        }
        if let Some(top) = slack_below {
            if y >= top {
                slack_below = None;
            }
        }
        if s == Step::D {
            match class {
                FamilyClass::Dyck | FamilyClass::FussCatalan => return false,
                FamilyClass::Free => {
                    if y % k != 0 || y < 2 * k {
                        return false;
                    }
                }
                _ => {
                    if y0 % k != r - 1 {
                        return false;
                    }
                    if small && (y0 == k * x0 || y == k * x) {
                        return false;
                    }
                    if !small && r < k {
                        slack_below = Some(y0 - (r - 1) + k);
                    }
                }
            }
        }
        if class != FamilyClass::Free {
            let bound = if slack_below.is_some() { y + k } else { y };
            if bound < k * x {
                return false;
            }
        }
    }
    (x, y) == (n, k * n)
}

pub fn oracle_family(n: usize, k: usize, r: usize, class: FamilyClass) -> Vec<LatticePath> {
    let mut out: Vec<LatticePath> = all_sequences(n, k)
        .into_iter()
        .filter(|s| oracle_member(s, n, k, r, class))
        .map(|s| LatticePath::new(s, n, k).unwrap())
        .collect();
    out.sort();
    out
}

pub fn runs(steps: &[Step]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = 0;
    for &s in steps {
        if s == Step::E {
            cur += 1;
        } else if cur > 0 {
            out.push(cur);
            cur = 0;
        }
    }
    if cur > 0 {
        out.push(cur);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Flaws straight from the definitions: an N leaving a point under y = kx;
/// a D ending under y = kx + k; and every N in the block of a flawed D that
/// starts under y = kx + k and is not the block's top step.
pub fn oracle_flaws(steps: &[Step], k: usize) -> usize {
    let mut pts = Vec::with_capacity(steps.len());
    let (mut x, mut y) = (0usize, 0usize);
    for &s in steps {
        pts.push((x, y));
        let (dx, dy) = match s {
            Step::E => (1, 0),
            Step::N => (0, 1),
            Step::D => (1, 1),
        };
        x += dx;
        y += dy;
    }
    let flawed_d_rows: Vec<usize> = steps
        .iter()
        .zip(&pts)
        .filter(|(s, &(x, y))| **s == Step::D && y + 1 < k * (x + 1) + k)
        .map(|(_, &(_, y))| y + 1)
        .collect();
    let mut total = 0;
    for (s, &(x, y)) in steps.iter().zip(&pts) {
        let flawed = match s {
            Step::E => false,
            Step::D => flawed_d_rows.contains(&(y + 1)),
            Step::N => {
                y < k * x
                    || ((y + 1) % k != 0 && flawed_d_rows.contains(&((y / k + 1) * k)) && y < k * x + k)
            }
        };
        total += flawed as usize;
    }
    total
}

pub fn falling(a: u128, b: u128) -> u128 {
    (0..b).map(|i| a - i).product()
}

pub fn binom(a: i64, b: i64) -> u128 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
}
