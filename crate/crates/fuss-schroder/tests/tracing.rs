use std::collections::HashMap;

use fuss_schroder::schroder_nc::{path_to_labels, small_partition, trace_to_partition, NCPartition};
use fuss_schroder::verification::conjecture_arc_type;
use fuss_schroder::{enumerate, is_member, FamilyClass, FamilySpec, LatticePath, Step};

#[test]
fn traced_partitions_are_sparse_noncrossing() {
    for n in 1..=3 {
        for k in 1..=2 {
            let small = FamilySpec::new(FamilyClass::SmallFuss, n, k, k).unwrap();
            let mut seen: HashMap<NCPartition, LatticePath> = HashMap::new();
            for p in enumerate(&FamilySpec::new(FamilyClass::LargeFuss, n, k, k).unwrap()) {
                let t = trace_to_partition(&p).unwrap();
                let m = 2 * (k + 1) * n + 2;
                assert_eq!(t.m(), m);
                assert_eq!(t.blocks().len(), (k + 1) * n + 2, "{p}");
                assert!(t.is_noncrossing() && t.is_sparse(), "{p}");
                assert_eq!(t.arc_type(), conjecture_arc_type(n, k, &p.path_type()), "{p}");
                let comps = t.components();
                let tail_single = comps.len() >= 2 && comps[1] == (m, m);
                assert_eq!(tail_single, is_member(&p, &small), "{p}");
                // the top-row diagonal carries label 2 and isolates element 1
                let ends_d = p.steps().last() == Some(&Step::D);
                assert_eq!(comps[0] == (1, 1), ends_d, "{p}");
                if let Some(q) = seen.insert(t, p.clone()) {
                    panic!("{p} and {q} trace to the same partition");
                }
            }
        }
    }
}

// For k = 1, reversing a path swaps a leading and a trailing diagonal, so
// the singleton-first partitions also number the paths that start with one.
#[test]
fn singleton_first_component_count_when_k_is_one() {
    for n in 1..=4 {
        let paths: Vec<LatticePath> = enumerate(&FamilySpec::new(FamilyClass::LargeFuss, n, 1, 1).unwrap()).collect();
        let single = paths.iter().filter(|p| trace_to_partition(p).unwrap().components()[0] == (1, 1)).count();
        let leading = paths.iter().filter(|p| p.steps()[0] == Step::D).count();
        assert_eq!(single, leading, "n={n}");
    }
}

#[test]
fn small_partitions_are_connected() {
    for n in 1..=3 {
        for k in 1..=2 {
            for p in enumerate(&FamilySpec::new(FamilyClass::SmallFuss, n, k, k).unwrap()) {
                let s = small_partition(&p).unwrap();
                assert_eq!(s.m(), 2 * (k + 1) * n + 1);
                assert_eq!(s.components(), vec![(1, s.m())]);
                assert!(s.is_sparse() && s.is_noncrossing());
            }
        }
    }
}

#[test]
fn labels_and_golden_partition() {
    let p = LatticePath::parse("NNNNNNENDEE", 4, 2).unwrap();
    assert_eq!(path_to_labels(&p).unwrap(), vec![1, 1, 2, 4]);
    let t = trace_to_partition(&p).unwrap();
    assert_eq!(t.blocks().len(), 14);
    assert_eq!(t.blocks()[0], vec![1, 15, 17, 19, 21, 23, 25]);
    assert_eq!(t.blocks()[1], vec![2, 4, 12, 14]);
    assert_eq!(
        serde_json::to_string(&t).unwrap(),
        r#"{"m":26,"blocks":[[1,15,17,19,21,23,25],[2,4,12,14],[3],[5,7,9,11],[6],[8],[10],[13],[16],[18],[20],[22],[24],[26]]}"#
    );
    let p = LatticePath::parse("NNNDE", 2, 2).unwrap();
    assert_eq!(path_to_labels(&p).unwrap(), vec![1, 2]);
}

#[test]
fn rejects_other_families() {
    let p = LatticePath::parse("DN", 1, 2).unwrap();
    assert!(trace_to_partition(&p).is_err());
    let p = LatticePath::parse("ND", 1, 2).unwrap();
    assert!(trace_to_partition(&p).is_ok());
    assert!(small_partition(&p).is_err());
}
