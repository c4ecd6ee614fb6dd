use krkit::kr::{build_kr, KrSpec};
use krkit::{AffineFamily, AffineType};

fn spec(f: AffineFamily, n: usize, r: usize, s: usize) -> KrSpec {
    KrSpec::new(AffineType::new(f, n).unwrap(), r, s).unwrap()
}

fn small_specs() -> Vec<KrSpec> {
    use AffineFamily::*;
    let mut v = Vec::new();
    for (f, ns) in [
        (A1, vec![2, 3, 4]),
        (B1, vec![3]),
        (C1, vec![2, 3]),
        (D1, vec![4, 5]),
        (A2Even, vec![1, 2, 3]),
        (A2Odd, vec![2, 3]),
        (D2, vec![2, 3]),
    ] {
        for n in ns {
            let rank = AffineType::new(f, n).unwrap().classical().rank;
            for r in 1..=rank {
                for s in 1..=2 {
                    v.push(spec(f, n, r, s));
                }
            }
        }
    }
    v
}

#[test]
fn every_small_crystal_builds_with_expected_decomposition() {
    for sp in small_specs() {
        let kr = build_kr(&sp, 200_000).unwrap_or_else(|e| panic!("{sp}: {e}"));
        let dec = kr.graph.classical_decomposition(sp.classical()).unwrap();
        assert_eq!(dec, sp.classical_highest_weights().unwrap(), "{sp}");
        assert!(kr.graph.is_connected(), "{sp}");
    }
}

#[test]
fn known_sizes() {
    use AffineFamily::*;
    // dimensions of the underlying modules
    for (f, n, r, s, size) in [
        (A1, 3, 1, 1, 3),
        (A1, 4, 2, 1, 6),
        (A1, 3, 1, 2, 6),
        (B1, 3, 1, 1, 7),
        (B1, 3, 2, 1, 22),
        (B1, 3, 3, 1, 8),
        (C1, 2, 1, 1, 4),
        (C1, 2, 2, 1, 5),
        (C1, 3, 2, 1, 14),
        (D1, 4, 2, 1, 29),
        (D1, 4, 4, 1, 8),
        (A2Even, 2, 1, 1, 5),
        (A2Even, 1, 1, 1, 3),
        (A2Odd, 3, 2, 1, 15),
        (D2, 2, 1, 1, 6),
        (D2, 2, 2, 1, 4),
        (D2, 3, 3, 1, 8),
    ] {
        let sp = spec(f, n, r, s);
        assert_eq!(build_kr(&sp, 100_000).unwrap().graph.len(), size, "{sp}");
    }
}
