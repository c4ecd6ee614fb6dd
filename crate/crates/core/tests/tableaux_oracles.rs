use krkit::cartan::{ClassicalType, Family, Weight};
use krkit::tableaux::build_classical;

fn ct(f: Family, n: usize) -> ClassicalType {
    ClassicalType::new(f, n).unwrap()
}

/// Dominant weights with at most `boxes` boxes (integral) plus spin shifts.
fn small_weights(t: ClassicalType, boxes: u32) -> Vec<Weight> {
    let n = t.rank;
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn go(n: usize, left: u32, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if cur.len() == n {
            return;
        }
        for p in (1..=bound.min(left)).rev() {
            cur.push(p);
            go(n, left - p, p, cur, out);
            cur.pop();
        }
    }
    go(n, boxes, boxes, &mut Vec::new(), &mut parts);
    for p in parts {
        let mut d: Vec<i32> = (0..t.dim())
            .map(|k| 2 * *p.get(k).unwrap_or(&0) as i32)
            .collect();
        out.push(Weight::from_doubled(d.clone()));
        if t.family == Family::D && d[n - 1] > 0 {
            d[n - 1] = -d[n - 1];
            out.push(Weight::from_doubled(d.clone()));
        }
        if matches!(t.family, Family::B | Family::D) {
            let mut h = d.clone();
            for x in h.iter_mut() {
                *x = x.abs() + 1;
            }
            if t.family == Family::D && d[n - 1] < 0 {
                h[n - 1] = -h[n - 1];
            }
            out.push(Weight::from_doubled(h.clone()));
            if t.family == Family::D && d[n - 1] == 0 {
                h[n - 1] = -1;
                out.push(Weight::from_doubled(h));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn dimensions_and_kn_validity() {
    let types = [
        ct(Family::A, 2),
        ct(Family::A, 3),
        ct(Family::B, 2),
        ct(Family::B, 3),
        ct(Family::C, 2),
        ct(Family::C, 3),
        ct(Family::D, 4),
    ];
    for t in types {
        for w in small_weights(t, 3) {
            let g = build_classical(t, &w, 1_000_000).unwrap();
            assert_eq!(g.graph.len() as u128, t.weyl_dimension(&w), "{t} {w}");
            assert_eq!(g.graph.highest(&t.index_set()).len(), 1, "{t} {w}");
            assert_eq!(g.graph.lowest(&t.index_set()).len(), 1, "{t} {w}");
            assert!(g.graph.validate().is_empty(), "{t} {w}");
            for el in &g.elements {
                if let Err(e) = el.check_kn() {
                    panic!("{t} {w}: {} fails: {e}", el.serialize());
                }
            }
        }
    }
}
