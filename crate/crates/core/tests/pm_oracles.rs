use std::collections::HashSet;

use krkit::pm::{branching_check, enumerate_pm, frak_s, phi, PhiTable};
use krkit::tableaux::build_classical;
use krkit::{ClassicalType, Family, Weight};

fn ct(f: Family, n: usize) -> ClassicalType {
    ClassicalType::new(f, n).unwrap()
}

/// Partitions with at most `rows` parts, each ≤ `max_part`, of size ≤ `max_size`.
fn partitions(rows: usize, max_part: i32, max_size: i32) -> Vec<Vec<i32>> {
    fn rec(rows: usize, cap: i32, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == rows {
            out.push(cur.clone());
            return;
        }
        for p in 0..=cap.min(left) {
            cur.push(p);
            rec(rows, p, left - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, max_part, max_size, &mut Vec::new(), &mut out);
    out
}

fn shapes(ty: ClassicalType, max_rows: usize, max_size: i32) -> Vec<Weight> {
    partitions(max_rows, max_size, max_size)
        .into_iter()
        .map(|mut p| {
            p.resize(ty.dim(), 0);
            Weight::from_ints(&p)
        })
        .collect()
}

#[test]
fn phi_is_a_bijection_onto_highest_elements() {
    for (ty, rows) in [
        (ct(Family::C, 2), 2),
        (ct(Family::C, 3), 3),
        (ct(Family::B, 3), 2),
        (ct(Family::B, 4), 3),
        (ct(Family::D, 4), 2),
        (ct(Family::D, 5), 3),
    ] {
        for lam in shapes(ty, rows, 4) {
            let g = build_classical(ty, &lam, 1 << 20).unwrap();
            let j: Vec<usize> = (2..=ty.rank).collect();
            let highest: HashSet<String> = g
                .graph
                .highest(&j)
                .into_iter()
                .map(|b| g.graph.label(b).to_string())
                .collect();
            let diagrams = enumerate_pm(ty, &lam).unwrap();
            let mut images = HashSet::new();
            for p in &diagrams {
                let t = phi(p).unwrap_or_else(|e| panic!("{ty} {lam}: {e}"));
                assert_eq!(t.weight(), p.full_weight(), "{ty} {lam} {p:?}");
                assert!(
                    highest.contains(&t.serialize()),
                    "{ty} {lam}: {}",
                    t.serialize()
                );
                images.insert(t.serialize());
            }
            assert_eq!(images.len(), diagrams.len(), "{ty} {lam}");
            assert_eq!(images, highest, "{ty} {lam}");
        }
    }
}

#[test]
fn phi_on_spin_shapes_of_b() {
    let ty = ct(Family::B, 3);
    for lam in [
        Weight::from_doubled(vec![1, 1, 1]),
        Weight::from_doubled(vec![3, 1, 1]),
        Weight::from_doubled(vec![3, 3, 1]),
        Weight::from_doubled(vec![3, 3, 3]),
        Weight::from_doubled(vec![5, 3, 1]),
    ] {
        let g = build_classical(ty, &lam, 1 << 20).unwrap();
        let highest = g.graph.highest(&[2, 3]).len();
        let table = PhiTable::new(ty, std::slice::from_ref(&lam)).unwrap();
        assert_eq!(table.by_tableau.len(), highest, "{lam}");
        for t in table.by_tableau.keys() {
            let b = g.graph.find(&t.serialize()).expect("image lies in B(Λ)");
            assert!(g.graph.is_highest(&[2, 3], b));
        }
    }
}

#[test]
fn branching_matches_for_small_shapes() {
    for (ty, rows) in [
        (ct(Family::B, 3), 3),
        (ct(Family::C, 3), 3),
        (ct(Family::D, 5), 3),
        (ct(Family::D, 6), 4),
    ] {
        for lam in shapes(ty, rows, 4) {
            let rep = branching_check(ty, &lam, 1 << 20).unwrap();
            assert!(
                rep.ok,
                "{ty} {lam}: {:?} vs {:?}",
                rep.from_diagrams, rep.from_crystal
            );
        }
    }
}

#[test]
fn frak_s_is_an_involution_on_rectangle_components() {
    let ty = ct(Family::D, 5);
    for (r, s) in [(1usize, 3usize), (2, 2), (3, 2), (2, 3)] {
        let mut lams = Vec::new();
        for cols in columns_with_parity(r, s) {
            let mut parts = vec![0i32; ty.dim()];
            for &h in &cols {
                for x in parts.iter_mut().take(h) {
                    *x += 1;
                }
            }
            lams.push(Weight::from_ints(&parts));
        }
        for lam in lams {
            for p in enumerate_pm(ty, &lam).unwrap() {
                let q = frak_s(&p, r, s).unwrap_or_else(|e| panic!("{r},{s} {p:?}: {e}"));
                let back = frak_s(&q, r, s).unwrap();
                assert_eq!(back, p);
                // ε_1 coordinate is negated
                assert_eq!(q.first_coordinate2(), -p.first_coordinate2());
            }
        }
    }
}

/// Column heights of the shapes obtained from an r×s rectangle by removing
/// vertical dominoes.
fn columns_with_parity(r: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(r: usize, s: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == s {
            return;
        }
        for h in (1..=cap).rev() {
            if (r - h).is_multiple_of(2) {
                cur.push(h);
                rec(r, s, h, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(r, s, r, &mut Vec::new(), &mut out);
    out.into_iter()
        .filter(|c| c.len() == s || r.is_multiple_of(2))
        .collect()
}
