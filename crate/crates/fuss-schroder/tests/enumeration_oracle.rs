mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{all_sequences, oracle_family, oracle_member, render, runs};
use fuss_schroder::enumeration::{count_by_type, enumerate, free_paths_of_type};
use fuss_schroder::{is_member, FamilyClass, FamilySpec, LatticePath, Step, TypePartition};

fn specs(max_n: usize, max_k: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 1..=max_k {
            for class in FamilyClass::ALL {
                for r in 1..=k {
                    if let Ok(s) = FamilySpec::new(class, n, k, r) {
                        if s.r == r {
                            out.push(s);
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn dfs_matches_exhaustive_filter() {
    for spec in specs(4, 3) {
        let got: Vec<LatticePath> = enumerate(&spec).collect();
        let want = oracle_family(spec.n, spec.k, spec.r, spec.class);
        assert_eq!(got, want, "{spec:?}");
    }
}

#[test]
fn is_member_agrees_with_oracle_on_every_sequence() {
    for n in 1..=3 {
        for k in 1..=3 {
            for seq in all_sequences(n, k) {
                let p = LatticePath::new(seq.clone(), n, k).unwrap();
                for spec in specs(n, k).into_iter().filter(|s| s.n == n && s.k == k) {
                    assert_eq!(
                        is_member(&p, &spec),
                        oracle_member(&seq, n, k, spec.r, spec.class),
                        "{} in {spec:?}",
                        render(&seq)
                    );
                }
            }
        }
    }
}

#[test]
fn output_is_sorted_and_distinct() {
    for spec in specs(4, 2) {
        let v: Vec<String> = enumerate(&spec).map(|p| p.to_string()).collect();
        let rank = |s: &String| s.chars().map(|c| "END".find(c).unwrap()).collect::<Vec<_>>();
        assert!(v.windows(2).all(|w| rank(&w[0]) < rank(&w[1])), "{spec:?}");
    }
}

#[test]
fn small_inside_large() {
    for n in 1..=4 {
        for k in 1..=3 {
            for r in 1..=k {
                let large: BTreeSet<LatticePath> =
                    enumerate(&FamilySpec::new(FamilyClass::LargeFuss, n, k, r).unwrap()).collect();
                for p in enumerate(&FamilySpec::new(FamilyClass::SmallFuss, n, k, r).unwrap()) {
                    assert!(large.contains(&p), "{p} n={n} k={k} r={r}");
                }
            }
        }
    }
}

#[test]
fn type_matches_runs_and_render_round_trips() {
    for spec in specs(4, 2) {
        for p in enumerate(&spec) {
            let t = p.path_type();
            assert_eq!(t.size(), p.count(Step::E));
            assert_eq!(t.parts(), runs(p.steps()).as_slice());
            assert_eq!(LatticePath::parse(&p.to_string(), p.n(), p.k()).unwrap(), p);
        }
    }
}

// Holds for r = k only: with r < k a diagonal may leave a point one column
// right of the line, after which the next north step starts below it.
#[test]
fn no_north_step_starts_below_the_line() {
    for n in 1..=4 {
        for k in 1..=3 {
            for class in [FamilyClass::LargeFuss, FamilyClass::SmallFuss] {
                for p in enumerate(&FamilySpec::new(class, n, k, k).unwrap()) {
                    let pts = p.points();
                    for (i, s) in p.steps().iter().enumerate() {
                        if *s == Step::N {
                            let (x, y) = pts[i];
                            assert!(y >= k * x, "{p}");
                        }
                    }
                }
            }
        }
    }
    let dn = LatticePath::parse("DN", 1, 2).unwrap();
    assert!(is_member(&dn, &FamilySpec::new(FamilyClass::LargeFuss, 1, 2, 1).unwrap()));
    assert!(dn.points()[1].1 < 2 * dn.points()[1].0);
}

#[test]
fn large_counts_do_not_depend_on_r() {
    for n in 1..=4 {
        for k in 1..=3 {
            for class in [FamilyClass::LargeFuss, FamilyClass::SmallFuss] {
                let base = count_by_type(&FamilySpec::new(class, n, k, k).unwrap());
                for r in 1..k {
                    let t = count_by_type(&FamilySpec::new(class, n, k, r).unwrap());
                    assert_eq!(t.entries, base.entries, "{class} n={n} k={k} r={r}");
                }
            }
        }
    }
}

#[test]
fn free_encoding_matches_exhaustive_filter() {
    for n in 1..=4 {
        for k in 1..=3 {
            let mut by_type: BTreeMap<Vec<usize>, Vec<LatticePath>> = BTreeMap::new();
            for p in oracle_family(n, k, k, FamilyClass::Free) {
                by_type.entry(runs(p.steps())).or_default().push(p);
            }
            for lambda in TypePartition::with_bounds(n, n) {
                let want = by_type.remove(lambda.parts()).unwrap_or_default();
                assert_eq!(free_paths_of_type(n, k, &lambda), want, "n={n} k={k} type ({lambda})");
            }
            assert!(by_type.is_empty());
        }
    }
}

#[test]
fn small_examples() {
    let strings = |c, n, k, r| -> Vec<String> {
        enumerate(&FamilySpec::new(c, n, k, r).unwrap()).map(|p| p.to_string()).collect()
    };
    assert_eq!(strings(FamilyClass::FussCatalan, 2, 2, 1), ["NNENNE", "NNNENE", "NNNNEE"]);
    assert_eq!(strings(FamilyClass::LargeFuss, 1, 2, 1), ["NNE", "DN"]);
    assert_eq!(strings(FamilyClass::LargeFuss, 1, 2, 2), ["NNE", "ND"]);
    assert_eq!(strings(FamilyClass::SmallFuss, 1, 2, 2), ["NNE"]);
    assert_eq!(strings(FamilyClass::LargeSchroder, 1, 1, 1), ["NE", "D"]);
    let p = LatticePath::parse("NNNNNNENDEE", 4, 2).unwrap();
    assert!(is_member(&p, &FamilySpec::new(FamilyClass::SmallFuss, 4, 2, 2).unwrap()));
    let touching = LatticePath::parse("NNNNNNNEEED", 4, 2).unwrap();
    assert!(is_member(&touching, &FamilySpec::new(FamilyClass::LargeFuss, 4, 2, 2).unwrap()));
    assert!(!is_member(&touching, &FamilySpec::new(FamilyClass::SmallFuss, 4, 2, 2).unwrap()));
}
