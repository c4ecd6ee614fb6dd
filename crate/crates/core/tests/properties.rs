use std::collections::VecDeque;

use proptest::prelude::*;

use krkit::artifact::GraphArtifact;
use krkit::crystal::tensor;
use krkit::kr::{build_kr, build_kr_via, desk_matrix, KrSpec};
use krkit::{AffineFamily, AffineType, CrystalGraph, Dir};

const BUDGET: usize = 50_000;

fn small(max: usize) -> Vec<KrSpec> {
    desk_matrix()
        .into_iter()
        .filter(|s| s.predicted_size().is_ok_and(|n| n <= max as u128))
        .collect()
}

fn spec_strategy(max: usize) -> impl Strategy<Value = KrSpec> {
    let specs = small(max);
    (0..specs.len()).prop_map(move |i| specs[i])
}

fn stats_equal(a: &CrystalGraph, x: u32, b: &CrystalGraph, y: u32) -> bool {
    a.weight(x) == b.weight(y)
        && a.colors()
            .iter()
            .all(|&c| a.eps(c, x) == b.eps(c, y) && a.phi(c, x) == b.phi(c, y))
}

/// Colored-graph isomorphism of connected crystals, grown from a seed.
fn isomorphic(a: &CrystalGraph, b: &CrystalGraph) -> bool {
    if a.len() != b.len() || a.colors() != b.colors() || a.is_empty() {
        return false;
    }
    'seed: for y0 in b.ids().filter(|&y| stats_equal(a, 0, b, y)) {
        let mut fwd = vec![u32::MAX; a.len()];
        let mut back = vec![u32::MAX; b.len()];
        fwd[0] = y0;
        back[y0 as usize] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let y = fwd[x as usize];
            for &c in a.colors() {
                for dir in [Dir::F, Dir::E] {
                    match (a.op(c, dir, x), b.op(c, dir, y)) {
                        (None, None) => {}
                        (Some(x2), Some(y2)) => {
                            let (fx, by) = (fwd[x2 as usize], back[y2 as usize]);
                            if fx == u32::MAX && by == u32::MAX {
                                if !stats_equal(a, x2, b, y2) {
                                    continue 'seed;
                                }
                                fwd[x2 as usize] = y2;
                                back[y2 as usize] = x2;
                                queue.push_back(x2);
                            } else if fx != y2 || by != x2 {
                                continue 'seed;
                            }
                        }
                        _ => continue 'seed,
                    }
                }
            }
        }
        if fwd.iter().all(|&y| y != u32::MAX) {
            return true;
        }
    }
    false
}

#[test]
fn a2_even_spin_node_constructions_agree() {
    for spec in desk_matrix() {
        let Some(alt) = spec.alternate_route() else {
            continue;
        };
        let one = build_kr(&spec, BUDGET);
        let two = build_kr_via(&spec, alt, BUDGET);
        match (one, two) {
            (Ok(one), Ok(two)) => assert!(isomorphic(&one.graph, &two.graph), "{spec}"),
            (Err(e), _) | (_, Err(e)) => assert!(e.is_resource(), "{spec}: {e}"),
        }
    }
}

#[test]
fn isomorphism_helper_rejects_different_crystals() {
    let ty = AffineType::new(AffineFamily::A1, 3).unwrap();
    let a = build_kr(&KrSpec::new(ty, 1, 1).unwrap(), BUDGET).unwrap();
    let b = build_kr(&KrSpec::new(ty, 2, 1).unwrap(), BUDGET).unwrap();
    assert!(isomorphic(&a.graph, &a.graph));
    assert!(!isomorphic(&a.graph, &b.graph));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn string_lengths_match_weights(spec in spec_strategy(5_000)) {
        let kr = build_kr(&spec, BUDGET).unwrap();
        let g = &kr.graph;
        for b in g.ids() {
            for &c in g.colors() {
                prop_assert_eq!(g.phi(c, b) as i32 - g.eps(c, b) as i32, g.pairing(c, b));
                if let Some(y) = g.f(c, b) {
                    prop_assert_eq!(g.e(c, y), Some(b));
                    prop_assert_eq!(g.eps(c, y), g.eps(c, b) + 1);
                }
            }
        }
    }

    #[test]
    fn artifact_round_trip(spec in spec_strategy(5_000)) {
        let kr = build_kr(&spec, BUDGET).unwrap();
        let art = GraphArtifact::from_graph(&kr.graph, Some(&spec));
        let back = GraphArtifact::from_json(&art.to_json()).unwrap();
        prop_assert_eq!(back.kr_spec().unwrap(), Some(spec));
        let g = back.to_graph().unwrap();
        prop_assert_eq!(g.labels(), kr.graph.labels());
        for b in g.ids() {
            prop_assert_eq!(g.weight(b), kr.graph.weight(b));
            for &c in g.colors() {
                prop_assert_eq!(g.f(c, b), kr.graph.f(c, b));
            }
        }
    }

    #[test]
    fn tensor_product_signature_rule(i in 0usize..1000) {
        let specs = small(60);
        let pairs: Vec<_> = specs
            .iter()
            .flat_map(|a| specs.iter().filter(move |b| b.ty == a.ty).map(move |b| (*a, *b)))
            .collect();
        let (s1, s2) = pairs[i % pairs.len()];
        let b1 = build_kr(&s1, BUDGET).unwrap().graph;
        let b2 = build_kr(&s2, BUDGET).unwrap().graph;
        let t = tensor(&b1, &b2, BUDGET).unwrap();
        prop_assert_eq!(t.len(), b1.len() * b2.len());
        for x in b1.ids() {
            for y in b2.ids() {
                let p = x * b2.len() as u32 + y;
                for &c in t.colors() {
                    let (phi1, eps2) = (b1.phi(c, x), b2.eps(c, y));
                    let want = if phi1 > eps2 {
                        b1.f(c, x).map(|x2| x2 * b2.len() as u32 + y)
                    } else {
                        b2.f(c, y).map(|y2| x * b2.len() as u32 + y2)
                    };
                    prop_assert_eq!(t.f(c, p), want);
                    let eps = b1.eps(c, x) + eps2.saturating_sub(phi1);
                    prop_assert_eq!(t.eps(c, p), eps);
                }
            }
        }
    }
}
