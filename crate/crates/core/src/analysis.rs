//! Checks of structural properties: extremal elements, simplicity, tensor
//! connectedness, the witnesses of non-extremality, and the σ / exceptional
//! node structure.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{AffineFamily, AffineType, ClassicalType, Family, Weight};
use crate::crystal::{tensor, CrystalError, CrystalGraph};
use crate::kr::{
    build_kr, involution_sigma, sign_counts, sign_counts_e0, spin_sigma, KrCrystal, KrError,
    KrSpec, Route,
};
use crate::pm::PhiTable;
use crate::tableaux::{promotion, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Kr(#[from] KrError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("{0}")]
    NotApplicable(String),
    #[error("unreadable element `{0}`")]
    Label(String),
}

impl AnalysisError {
    pub fn is_resource(&self) -> bool {
        match self {
            AnalysisError::Kr(e) => e.is_resource(),
            AnalysisError::Crystal(e) => matches!(e, CrystalError::BudgetExceeded { .. }),
            _ => false,
        }
    }
}

/// Classical type underlying the index set of a graph.
pub fn classical_type_of(g: &CrystalGraph) -> Result<ClassicalType, AnalysisError> {
    let name = &g.datum().name;
    let parsed = if name.contains(':') {
        name.parse::<AffineType>().map(|a| a.classical())
    } else {
        name.parse::<ClassicalType>()
    };
    parsed.map_err(|e| AnalysisError::NotApplicable(e.to_string()))
}

fn union_find_root(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[parent[x as usize] as usize];
        parent[x as usize] = p;
        x = p;
    }
    x
}

/// For every element, whether its whole orbit under the reflections 𝒮_i
/// sits at string ends: min(ε_i, φ_i) = 0 for every color.
pub fn extremal_elements(g: &CrystalGraph) -> Vec<bool> {
    let n = g.len();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    for &c in g.colors() {
        for b in g.ids() {
            let x = union_find_root(&mut parent, b);
            let y = union_find_root(&mut parent, g.weyl_reflection(c, b));
            if x != y {
                parent[x as usize] = y;
            }
        }
    }
    let mut bad = vec![false; n];
    for b in g.ids() {
        if g.colors().iter().any(|&c| g.eps(c, b).min(g.phi(c, b)) > 0) {
            let r = union_find_root(&mut parent, b);
            bad[r as usize] = true;
        }
    }
    (0..n as u32)
        .map(|b| !bad[union_find_root(&mut parent, b) as usize])
        .collect()
}

/// Orbit-local extremality test for one element, with the orbit.
pub fn is_extremal(g: &CrystalGraph, b: u32) -> (bool, Vec<u32>) {
    let mut seen = vec![false; g.len()];
    let mut orbit = vec![b];
    let mut queue = VecDeque::from([b]);
    seen[b as usize] = true;
    let mut ok = true;
    while let Some(x) = queue.pop_front() {
        for &c in g.colors() {
            if g.eps(c, x).min(g.phi(c, x)) > 0 {
                ok = false;
            }
            let y = g.weyl_reflection(c, x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
                queue.push_back(y);
            }
        }
    }
    orbit.sort_unstable();
    (ok, orbit)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Simplicity {
    Simple { weight: String, extremal: usize },
    NotSimple { reason: String },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple { .. })
    }
}

/// Simplicity tested on classical weights: the extremal weights form one
/// Weyl orbit, and the dominant one has a single element.
pub fn check_simple(g: &CrystalGraph) -> Result<Simplicity, AnalysisError> {
    let ct = classical_type_of(g)?;
    let ext = extremal_elements(g);
    let ext_ids: Vec<u32> = g.ids().filter(|&b| ext[b as usize]).collect();
    let Some(&first) = ext_ids.first() else {
        return Ok(Simplicity::NotSimple {
            reason: "no extremal elements".into(),
        });
    };
    let rep = ct.dominant_representative(g.weight(first));
    for &b in &ext_ids {
        let r = ct.dominant_representative(g.weight(b));
        if r != rep {
            return Ok(Simplicity::NotSimple {
                reason: format!(
                    "extremal weights {} and {} lie in different orbits",
                    g.weight(first),
                    g.weight(b)
                ),
            });
        }
    }
    let mut dominant: Vec<&Weight> = ext_ids
        .iter()
        .map(|&b| g.weight(b))
        .filter(|w| ct.is_dominant(w))
        .collect();
    dominant.sort();
    dominant.dedup();
    let lam = match dominant.as_slice() {
        [w] => (*w).clone(),
        _ => {
            return Ok(Simplicity::NotSimple {
                reason: format!("{} dominant extremal weights", dominant.len()),
            })
        }
    };
    let fiber = g.ids().filter(|&b| *g.weight(b) == lam).count();
    if fiber != 1 {
        return Ok(Simplicity::NotSimple {
            reason: format!("{fiber} elements of weight {lam}"),
        });
    }
    Ok(Simplicity::Simple {
        weight: lam.to_string(),
        extremal: ext_ids.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorReport {
    pub factors: Vec<String>,
    pub size: usize,
    pub connected: bool,
    pub simple: Option<Simplicity>,
}

/// Build B^{r_1,s_1} ⊗ ⋯ ⊗ B^{r_l,s_l} and test connectedness.
pub fn check_tensor_connected(
    specs: &[KrSpec],
    budget: usize,
    with_simple: bool,
) -> Result<TensorReport, AnalysisError> {
    let Some(first) = specs.first() else {
        return Err(AnalysisError::NotApplicable("empty tensor product".into()));
    };
    if specs.iter().any(|s| s.ty != first.ty) {
        return Err(AnalysisError::NotApplicable(
            "factors of different types".into(),
        ));
    }
    let mut g = build_kr(first, budget)?.graph;
    for sp in &specs[1..] {
        let h = build_kr(sp, budget)?.graph;
        g = tensor(&g, &h, budget)?;
    }
    let simple = if with_simple {
        Some(check_simple(&g)?)
    } else {
        None
    };
    Ok(TensorReport {
        factors: specs.iter().map(|s| s.to_string()).collect(),
        size: g.len(),
        connected: g.is_connected(),
        simple,
    })
}

/// Numbers s_0, s_1, … of columns of each height in the shape λ of width s.
fn column_counts(lam: &Weight, s: usize) -> Result<Vec<usize>, AnalysisError> {
    let rows = lam
        .to_ints()
        .ok_or_else(|| AnalysisError::NotApplicable(format!("half-integral weight {lam}")))?;
    let row = |h: usize| {
        if h == 0 {
            s as i32
        } else {
            rows.get(h - 1).copied().unwrap_or(0)
        }
    };
    Ok((0..=rows.len())
        .map(|h| (row(h) - row(h + 1)) as usize)
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub highest: String,
    pub weight: String,
    pub k: usize,
    pub s_k: usize,
    pub witness: String,
    pub eps0: u32,
    pub phi0: u32,
    pub expected: (u32, u32),
    pub h0_pairing: i32,
    pub expected_pairing: i32,
    pub ok: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum WitnessShape {
    /// 𝒮_2𝒮_1·𝒮_3𝒮_2⋯𝒮_{k+1}𝒮_k, values (2s − s_k, s_k).
    Vertical,
    /// 𝒮_1𝒮_2⋯𝒮_k, values (s − s_k/2, s_k/2).
    Horizontal,
}

fn witness_shape(spec: &KrSpec) -> Option<WitnessShape> {
    match (spec.ty.family, spec.route()) {
        (AffineFamily::B1 | AffineFamily::D1 | AffineFamily::A2Odd, Route::Involution) => {
            Some(WitnessShape::Vertical)
        }
        (AffineFamily::C1, Route::Ambient { .. }) => Some(WitnessShape::Horizontal),
        _ => None,
    }
}

pub fn witness_applies(spec: &KrSpec) -> bool {
    witness_shape(spec).is_some()
}

/// For every I_0-highest element b of non-rectangular weight, move b by
/// simple reflections to an element b′ with ε_0(b′), φ_0(b′) > 0, which
/// shows that b is not extremal, and compare with the closed forms.
pub fn witness_nonextremal(kr: &KrCrystal) -> Result<Vec<WitnessReport>, AnalysisError> {
    let spec = &kr.spec;
    let shape = witness_shape(spec)
        .ok_or_else(|| AnalysisError::NotApplicable(format!("no witness for {spec}")))?;
    let g = &kr.graph;
    let s = spec.s;
    let mut out = Vec::new();
    for b in g.highest(&kr.classical_colors()) {
        let counts = column_counts(g.weight(b), s)?;
        let k = counts.iter().position(|&c| c > 0).unwrap_or(spec.r);
        if k >= spec.r {
            continue;
        }
        let s_k = counts[k];
        let mut x = b;
        for j in (1..=k).rev() {
            x = g.weyl_reflection(j, x);
            if shape == WitnessShape::Vertical {
                x = g.weyl_reflection(j + 1, x);
            }
        }
        let (expected, expected_pairing) = match shape {
            WitnessShape::Vertical => (
                ((2 * s - s_k) as u32, s_k as u32),
                2 * (s_k as i32 - s as i32),
            ),
            WitnessShape::Horizontal => (
                ((s - s_k / 2) as u32, (s_k / 2) as u32),
                s_k as i32 - s as i32,
            ),
        };
        let (eps0, phi0) = (g.eps(0, x), g.phi(0, x));
        let h0_pairing = g.pairing(0, x);
        let parity_ok = shape == WitnessShape::Vertical || s_k % 2 == 0;
        out.push(WitnessReport {
            highest: g.label(b).to_string(),
            weight: g.weight(b).to_string(),
            k,
            s_k,
            witness: g.label(x).to_string(),
            eps0,
            phi0,
            expected,
            h0_pairing,
            expected_pairing,
            ok: parity_ok
                && (eps0, phi0) == expected
                && eps0 > 0
                && phi0 > 0
                && h0_pairing == expected_pairing,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SigmaReport {
    pub checked: usize,
    pub violations: Vec<String>,
    /// Sign counts of the {2..n}-highest elements and their image under e_0.
    pub triples: Vec<([usize; 3], Option<[usize; 3]>)>,
}

impl SigmaReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, v: String) {
        if self.violations.len() < 50 {
            self.violations.push(v);
        }
    }
}

pub fn sigma_applies(spec: &KrSpec) -> bool {
    matches!(
        spec.route(),
        Route::Involution | Route::SpinSwap | Route::SignCounts
    )
}

fn parse_elements(g: &CrystalGraph) -> Result<Vec<Tableau>, AnalysisError> {
    g.ids()
        .map(|b| {
            Tableau::parse(g.label(b)).map_err(|_| AnalysisError::Label(g.label(b).to_string()))
        })
        .collect()
}

/// Compare color 0 of `g` with color 1 transported by σ: src → tgt, back.
fn sigma_relations(
    g: &CrystalGraph,
    h: &CrystalGraph,
    to: &[u32],
    back: &[u32],
    rep: &mut SigmaReport,
) {
    for b in g.ids() {
        let x = to[b as usize];
        if back[x as usize] != b {
            rep.push(format!("σ² ≠ id at `{}`", g.label(b)));
        }
        if (g.eps(0, b), g.phi(0, b)) != (h.eps(1, x), h.phi(1, x)) {
            rep.push(format!("(ε_0, φ_0) ≠ (ε_1, φ_1)∘σ at `{}`", g.label(b)));
        }
        if g.f(0, b) != h.f(1, x).map(|y| back[y as usize]) {
            rep.push(format!("f_0 ≠ σ f_1 σ at `{}`", g.label(b)));
        }
        for c in 2..g.colors().len() {
            if g.f(c, b).map(|y| to[y as usize]) != h.f(c, x) {
                rep.push(format!("σ does not commute with f_{c} at `{}`", g.label(b)));
            }
        }
    }
    rep.checked = g.len();
}

/// Exhaustive check of σ, or of the sign-count action at exceptional nodes.
pub fn sigma_check(kr: &KrCrystal, budget: usize) -> Result<SigmaReport, AnalysisError> {
    let spec = &kr.spec;
    let g = &kr.graph;
    let mut rep = SigmaReport::default();
    match spec.route() {
        Route::Involution => {
            let sigma = involution_sigma(spec, g, &parse_elements(g)?)?;
            sigma_relations(g, g, &sigma, &sigma, &mut rep);
        }
        Route::SpinSwap => {
            let n = spec.classical().rank;
            let other = KrSpec {
                r: if spec.r == n { n - 1 } else { n },
                ..*spec
            };
            let h = build_kr(&other, budget)?.graph;
            let to = spin_sigma(n, g, &h).map_err(AnalysisError::NotApplicable)?;
            let back = spin_sigma(n, &h, g).map_err(AnalysisError::NotApplicable)?;
            sigma_relations(g, &h, &to, &back, &mut rep);
            for x in h.ids() {
                if to[back[x as usize] as usize] != x {
                    rep.push(format!("σ² ≠ id at `{}`", h.label(x)));
                }
            }
        }
        Route::SignCounts => sign_count_check(kr, &mut rep)?,
        _ => {
            return Err(AnalysisError::NotApplicable(format!(
                "{spec} has no σ or exceptional structure"
            )))
        }
    }
    Ok(rep)
}

fn sign_count_check(kr: &KrCrystal, rep: &mut SigmaReport) -> Result<(), AnalysisError> {
    let spec = &kr.spec;
    let g = &kr.graph;
    let ct = spec.classical();
    let family = spec.ty.family;
    let table = PhiTable::new(ct, &spec.classical_highest_weights()?).map_err(KrError::from)?;
    let j: Vec<usize> = (2..=ct.rank).collect();
    let mut counts = HashMap::new();
    for u in g.highest(&j) {
        let t =
            Tableau::parse(g.label(u)).map_err(|_| AnalysisError::Label(g.label(u).to_string()))?;
        let p = table.inverse(&t).map_err(KrError::from)?;
        let l = sign_counts(family, p);
        let sum: usize = l.iter().sum();
        let sums_ok = match family {
            AffineFamily::C1 => sum == spec.s,
            _ => (sum == spec.s || sum + 2 == spec.s) && l[2].is_multiple_of(2),
        };
        if !sums_ok {
            rep.push(format!(
                "sign counts {l:?} violate the invariant for s={}",
                spec.s
            ));
        }
        counts.insert(u, l);
    }
    for (&u, &l) in &counts {
        let want = sign_counts_e0(family, spec.s, l);
        let got = g.e(0, u).map(|v| counts.get(&v).copied());
        match (want, got) {
            (None, None) => {}
            (Some(w), Some(Some(x))) if w == x => {}
            (w, x) => rep.push(format!("e_0 on {l:?}: expected {w:?}, found {x:?}")),
        }
        if let Some(v) = g.f(0, u) {
            if g.e(0, v) != Some(u) {
                rep.push(format!("e_0 f_0 ≠ id on {l:?}"));
            }
        }
        rep.triples.push((l, want));
    }
    rep.triples.sort();
    rep.checked = counts.len();
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct PromotionReport {
    pub order: usize,
    pub order_ok: bool,
    pub violations: Vec<String>,
}

/// pr^n = id and pr∘f_i = f_{i+1}∘pr on a type A^{(1)} KR crystal.
pub fn promotion_check(kr: &KrCrystal) -> Result<PromotionReport, AnalysisError> {
    if kr.spec.ty.family != AffineFamily::A1 {
        return Err(AnalysisError::NotApplicable(
            "promotion needs type A^{(1)}".into(),
        ));
    }
    let g = &kr.graph;
    let n = kr.spec.ty.n;
    let elems = parse_elements(g)?;
    let mut pr = Vec::with_capacity(g.len());
    for t in &elems {
        let p = promotion(t).map_err(KrError::from)?;
        pr.push(
            g.find(&p.serialize())
                .ok_or_else(|| AnalysisError::Label(p.serialize()))?,
        );
    }
    let mut violations = Vec::new();
    let mut order_ok = true;
    for b in g.ids() {
        let mut x = b;
        for _ in 0..n {
            x = pr[x as usize];
        }
        if x != b {
            order_ok = false;
            violations.push(format!("pr^{n} ≠ id at `{}`", g.label(b)));
        }
        for &c in g.colors() {
            let next = (c + 1) % n;
            if g.f(c, b).map(|y| pr[y as usize]) != g.f(next, pr[b as usize]) {
                violations.push(format!("pr f_{c} ≠ f_{next} pr at `{}`", g.label(b)));
            }
        }
    }
    violations.truncate(50);
    Ok(PromotionReport {
        order: n,
        order_ok,
        violations,
    })
}

/// Machine-readable result of one check.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub spec: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub details: serde_json::Value,
    pub timings: Timings,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Timings {
    pub millis: f64,
}

impl Verdict {
    pub fn new(
        check: &str,
        spec: impl Into<String>,
        pass: bool,
        counterexample: Option<String>,
        details: impl Serialize,
        started: std::time::Instant,
    ) -> Self {
        Verdict {
            check: check.to_string(),
            spec: spec.into(),
            verdict: if pass { "pass" } else { "fail" }.to_string(),
            counterexample,
            details: serde_json::to_value(details).unwrap_or(serde_json::Value::Null),
            timings: Timings {
                millis: started.elapsed().as_secs_f64() * 1e3,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RegularityReport {
    pub pairs: usize,
    pub components: usize,
    /// Color pairs whose Cartan submatrix is not of finite type.
    pub skipped: Vec<(usize, usize)>,
    pub violations: Vec<String>,
}

impl RegularityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn cartan_entry(g: &CrystalGraph, i: usize, j: usize) -> i32 {
    let d = g.datum();
    let (pi, pj) = (d.pos(i).unwrap(), d.pos(j).unwrap());
    d.coroots[pi]
        .iter()
        .zip(&d.roots[pj])
        .map(|(h, a)| h * a)
        .sum()
}

/// Every restriction to two colors is a disjoint union of highest weight
/// crystals of the corresponding rank 2 type.
pub fn rank2_regularity(g: &CrystalGraph, budget: usize) -> RegularityReport {
    let mut rep = RegularityReport::default();
    let colors = g.colors().to_vec();
    let mut refs: HashMap<(Family, Vec<i32>), CrystalGraph> = HashMap::new();
    for (a, &i) in colors.iter().enumerate() {
        for &j in &colors[a + 1..] {
            rep.pairs += 1;
            let (aij, aji) = (cartan_entry(g, i, j), cartan_entry(g, j, i));
            // reference type and the colors playing the roles of 1 and 2
            let (family, first, second) = match (aij, aji) {
                (0, 0) => (None, i, j),
                (-1, -1) => (Some(Family::A), i, j),
                (-2, -1) => (Some(Family::C), i, j),
                (-1, -2) => (Some(Family::C), j, i),
                _ => {
                    rep.skipped.push((i, j));
                    continue;
                }
            };
            for comp in g.restrict(&[i, j]) {
                rep.components += 1;
                let tops: Vec<u32> = comp
                    .iter()
                    .copied()
                    .filter(|&b| g.is_highest(&[i, j], b))
                    .collect();
                let [u] = tops.as_slice() else {
                    rep.violations.push(format!(
                        "colors {i},{j}: {} highest elements near `{}`",
                        tops.len(),
                        g.label(comp[0])
                    ));
                    continue;
                };
                let lam = vec![g.phi(first, *u) as i32, g.phi(second, *u) as i32];
                let reference = match family {
                    None => None,
                    Some(f) => {
                        let key = (f, lam.clone());
                        if !refs.contains_key(&key) {
                            let ct = ClassicalType::new(f, 2).expect("rank 2");
                            let w = ct.weight_from_pairings(&lam);
                            match crate::tableaux::build_classical(ct, &w, budget) {
                                Ok(r) => {
                                    refs.insert(key.clone(), r.graph);
                                }
                                Err(e) => {
                                    rep.violations.push(format!("reference {f}2 {w}: {e}"));
                                    continue;
                                }
                            }
                        }
                        refs.get(&key)
                    }
                };
                if let Err(v) = match_component(g, *u, &comp, [first, second], reference) {
                    rep.violations.push(format!("colors {i},{j}: {v}"));
                }
                if rep.violations.len() >= 50 {
                    return rep;
                }
            }
        }
    }
    rep
}

/// Compare a two-colored component with its reference crystal, or with
/// the product of two strings when the colors commute.
fn match_component(
    g: &CrystalGraph,
    u: u32,
    comp: &[u32],
    colors: [usize; 2],
    reference: Option<&CrystalGraph>,
) -> Result<(), String> {
    let Some(r) = reference else {
        let expect = (g.phi(colors[0], u) as usize + 1) * (g.phi(colors[1], u) as usize + 1);
        if comp.len() != expect {
            return Err(format!(
                "commuting colors but component of `{}` has {} elements",
                g.label(u),
                comp.len()
            ));
        }
        let [c, d] = colors;
        for &y in comp {
            for (p, q) in [(c, d), (d, c)] {
                if let Some(z) = g.f(p, y) {
                    if (g.eps(q, z), g.phi(q, z)) != (g.eps(q, y), g.phi(q, y)) {
                        return Err(format!(
                            "f_{p} changes the color {q} string at `{}`",
                            g.label(y)
                        ));
                    }
                    if g.f(q, z) != g.f(q, y).and_then(|w| g.f(p, w)) {
                        return Err(format!(
                            "f_{c} and f_{d} do not commute at `{}`",
                            g.label(y)
                        ));
                    }
                }
            }
        }
        return Ok(());
    };
    if comp.len() != r.len() {
        return Err(format!(
            "component of `{}` has {} elements, reference has {}",
            g.label(u),
            comp.len(),
            r.len()
        ));
    }
    let top = r.highest(&[1, 2]);
    let mut img: HashMap<u32, u32> = HashMap::from([(u, top[0])]);
    let mut queue = VecDeque::from([u]);
    while let Some(b) = queue.pop_front() {
        let x = img[&b];
        for (k, &c) in colors.iter().enumerate() {
            let rc = k + 1;
            if (g.eps(c, b), g.phi(c, b)) != (r.eps(rc, x), r.phi(rc, x)) {
                return Err(format!("string lengths differ at `{}`", g.label(b)));
            }
            for (nb, nx) in [(g.f(c, b), r.f(rc, x)), (g.e(c, b), r.e(rc, x))] {
                match (nb, nx) {
                    (None, None) => {}
                    (Some(nb), Some(nx)) => match img.get(&nb) {
                        Some(&y) if y != nx => {
                            return Err(format!(
                                "not isomorphic to the reference near `{}`",
                                g.label(nb)
                            ))
                        }
                        Some(_) => {}
                        None => {
                            img.insert(nb, nx);
                            queue.push_back(nb);
                        }
                    },
                    _ => return Err(format!("arrow mismatch at `{}`", g.label(b))),
                }
            }
        }
    }
    Ok(())
}
