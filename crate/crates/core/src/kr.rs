//! Kirillov-Reshetikhin crystals B^{r,s} as finite graphs.
//!
//! Construction by family:
//! - A^{(1)}: e_0 = pr⁻¹ e_1 pr with pr the promotion of rectangular tableaux.
//! - B^{(1)} (r<n), D^{(1)} (r≤n−2), A_{2n−1}^{(2)}: e_0 = σ e_1 σ, with σ
//!   defined on {2..n}-highest elements through ±-diagrams.
//! - C^{(1)} (r<n): inside A_{2n+1}^{(2)} B^{r,s}, e_0 = ê_0 ê_1, e_i = ê_{i+1}.
//! - A_{2n}^{(2)}, D_{n+1}^{(2)} (r<n): virtual inside C_n^{(1)} B^{r,2s}.
//! - A_{2n}^{(2)} r=n: virtual inside D_{n+1}^{(2)} B^{n,s} ⊗ B^{n,s} with
//!   e_n = ê_n², other colors kept. [`KrSpec::alternate_route`] gives a second
//!   construction through A_{2n+1}^{(2)} B^{n,2s}, used as a cross-check.
//! - B^{(1)} r=n: virtual inside A_{2n−1}^{(2)} B^{n,s}.
//! - C^{(1)}, D_{n+1}^{(2)} at r=n: e_0 on {2..n}-highest elements as an
//!   action on sign counts.
//! - D^{(1)} at r=n−1,n: e_0 = σ⁻¹ e_1 σ with σ: B^{n,s} ↔ B^{n−1,s}.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{AffineFamily, AffineType, CartanError, ClassicalType, Weight};
use crate::crystal::{generate, tensor, CrystalError, CrystalGraph, Dir, RootDatum};
use crate::maps::{apply_rule, verify_map, ColorRule, CrystalMap, MapKind, Rules};
use crate::pm::{frak_s, phi, PhiTable, PmColumn, PmDiagram, PmError, Signs};
use crate::tableaux::{build_classical, build_classical_union, promotion, Tableau, TableauError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Pm(#[from] PmError),
    #[error("{spec} needs {needed} elements, budget is {budget}")]
    Budget {
        spec: String,
        needed: u128,
        budget: usize,
    },
    #[error("construction of {spec} failed: {detail}")]
    Construction { spec: String, detail: String },
}

impl KrError {
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            KrError::Budget { .. } | KrError::Crystal(CrystalError::BudgetExceeded { .. })
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KrSpec {
    pub ty: AffineType,
    pub r: usize,
    pub s: usize,
}

impl fmt::Display for KrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B^{{{},{}}} of {}", self.r, self.s, self.ty.pretty())
    }
}

/// How e_0 is obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    Promotion,
    Involution,
    SignCounts,
    SpinSwap,
    /// Inside an ambient crystal (a tensor product of the `factors`);
    /// `rules` sends each color to ambient colors.
    Ambient {
        factors: Vec<KrSpec>,
        rules: Rules,
        kind: MapKind,
        weight: WeightMap,
    },
}

/// Classical weight of an element from the weight of its ambient image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeightMap {
    /// Drop the first coordinate.
    Tail,
    /// Halve every coordinate.
    Half,
    /// Drop the first coordinate, then halve.
    TailHalf,
    /// Keep the weight.
    Same,
    /// λ_i = (λ̂_i − λ̂_{2n+1−i})/2 from type A_{2n−1}.
    Fold,
}

impl WeightMap {
    pub fn apply(self, w: &Weight, n: usize) -> Weight {
        let d = w.doubled();
        match self {
            WeightMap::Tail => w.tail(1),
            WeightMap::Half => Weight::from_doubled(d.iter().map(|v| v / 2).collect()),
            WeightMap::Same => w.clone(),
            WeightMap::TailHalf => {
                Weight::from_doubled(w.tail(1).doubled().iter().map(|v| v / 2).collect())
            }
            WeightMap::Fold => {
                Weight::from_doubled((0..n).map(|i| (d[i] - d[2 * n - 1 - i]) / 2).collect())
            }
        }
    }
}

fn uniform(colors: &[usize], mult: impl Fn(usize) -> u32) -> Rules {
    colors
        .iter()
        .map(|&c| {
            (
                c,
                ColorRule {
                    targets: vec![c],
                    power: mult(c),
                },
            )
        })
        .collect()
}

impl KrSpec {
    pub fn new(ty: AffineType, r: usize, s: usize) -> Result<Self, KrError> {
        ty.check_node(r)?;
        if s == 0 {
            return Err(CartanError::ZeroWidth.into());
        }
        Ok(KrSpec { ty, r, s })
    }

    pub fn classical(&self) -> ClassicalType {
        self.ty.classical()
    }

    /// File-name friendly tag, e.g. `C1-3_r2_s1`.
    pub fn tag(&self) -> String {
        format!(
            "{}_r{}_s{}",
            self.ty.to_string().replace(':', "-"),
            self.r,
            self.s
        )
    }

    /// Highest weights of the classical decomposition, sorted.
    pub fn classical_highest_weights(&self) -> Result<Vec<Weight>, KrError> {
        let ct = self.classical();
        let n = ct.rank;
        let s = self.s as i32;
        let mut out = if self.ty.is_exceptional(self.r) {
            let mut d = match self.ty.family {
                AffineFamily::C1 => vec![2 * s; n],
                _ => vec![s; n],
            };
            if self.ty.family == AffineFamily::D1 && self.r == n - 1 {
                d[n - 1] = -s;
            }
            vec![Weight::from_doubled(d)]
        } else {
            self.ty
                .decomposition_shapes(self.r, self.s)?
                .iter()
                .map(|p| p.to_weight(ct))
                .collect()
        };
        out.sort();
        Ok(out)
    }

    pub fn predicted_size(&self) -> Result<u128, KrError> {
        let ct = self.classical();
        Ok(self
            .classical_highest_weights()?
            .iter()
            .map(|w| ct.weyl_dimension(w))
            .sum())
    }

    pub fn route(&self) -> Route {
        let n = self.ty.n;
        let (r, s) = (self.r, self.s);
        let colors = self.ty.index_set();
        match self.ty.family {
            AffineFamily::A1 => Route::Promotion,
            AffineFamily::B1 if r == n => Route::Ambient {
                factors: vec![KrSpec {
                    ty: AffineType {
                        family: AffineFamily::A2Odd,
                        n,
                    },
                    r,
                    s,
                }],
                rules: uniform(&colors, |c| if c == n { 1 } else { 2 }),
                kind: MapKind::Virtual,
                weight: WeightMap::Half,
            },
            AffineFamily::B1 | AffineFamily::A2Odd => Route::Involution,
            AffineFamily::D1 if r + 2 <= n => Route::Involution,
            AffineFamily::D1 => Route::SpinSwap,
            AffineFamily::C1 | AffineFamily::D2 if r == n => Route::SignCounts,
            AffineFamily::C1 => {
                let mut rules: Rules = colors
                    .iter()
                    .map(|&c| {
                        (
                            c,
                            ColorRule {
                                targets: vec![c + 1],
                                power: 1,
                            },
                        )
                    })
                    .collect();
                rules.insert(
                    0,
                    ColorRule {
                        targets: vec![1, 0],
                        power: 1,
                    },
                );
                Route::Ambient {
                    factors: vec![KrSpec {
                        ty: AffineType {
                            family: AffineFamily::A2Odd,
                            n: n + 1,
                        },
                        r,
                        s,
                    }],
                    rules,
                    kind: MapKind::Folded,
                    weight: WeightMap::Tail,
                }
            }
            AffineFamily::A2Even if r == n => {
                // virtual inside D_{n+1}^{(2)} B^{n,s} ⊗ B^{n,s}
                let spin = KrSpec {
                    ty: AffineType {
                        family: AffineFamily::D2,
                        n,
                    },
                    r: n,
                    s,
                };
                Route::Ambient {
                    factors: vec![spin, spin],
                    rules: uniform(&colors, |c| if c == n { 2 } else { 1 }),
                    kind: MapKind::Virtual,
                    weight: WeightMap::Same,
                }
            }
            AffineFamily::A2Even | AffineFamily::D2 => {
                let d2 = self.ty.family == AffineFamily::D2;
                Route::Ambient {
                    factors: vec![KrSpec {
                        ty: AffineType {
                            family: AffineFamily::C1,
                            n,
                        },
                        r,
                        s: 2 * s,
                    }],
                    rules: uniform(&colors, |c| if c == 0 || (d2 && c == n) { 1 } else { 2 }),
                    kind: MapKind::Virtual,
                    weight: WeightMap::Half,
                }
            }
        }
    }

    /// A second construction, where one is implemented: A_{2n}^{(2)} at r=n
    /// also lives in the domino-removal C_n^{(1)} crystal of width 2s built
    /// inside A_{2n+1}^{(2)} B^{n,2s}, with multipliers (1,2,…,2).
    pub fn alternate_route(&self) -> Option<Route> {
        let n = self.ty.n;
        let (r, s) = (self.r, self.s);
        if self.ty.family != AffineFamily::A2Even || r != n {
            return None;
        }
        let colors = self.ty.index_set();
        let mut rules = uniform(&colors, |_| 2);
        for rule in rules.values_mut() {
            rule.targets[0] += 1;
        }
        rules.insert(
            0,
            ColorRule {
                targets: vec![1, 0],
                power: 1,
            },
        );
        Some(Route::Ambient {
            factors: vec![KrSpec {
                ty: AffineType {
                    family: AffineFamily::A2Odd,
                    n: n + 1,
                },
                r,
                s: 2 * s,
            }],
            rules,
            kind: MapKind::Virtual,
            weight: WeightMap::TailHalf,
        })
    }

    /// Sizes of every crystal the construction builds, ambient first.
    pub fn construction_sizes(&self) -> Result<Vec<(String, u128)>, KrError> {
        self.route_sizes(&self.route())
    }

    fn route_sizes(&self, route: &Route) -> Result<Vec<(String, u128)>, KrError> {
        let mut out = Vec::new();
        if let Route::Ambient { factors, .. } = route {
            let mut product = 1u128;
            for f in factors {
                let sizes = f.construction_sizes()?;
                product = product.saturating_mul(sizes.last().unwrap().1);
                out.extend(sizes);
            }
            if factors.len() > 1 {
                let names: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
                out.push((names.join(" ⊗ "), product));
            }
        }
        out.push((self.to_string(), self.predicted_size()?));
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct KrCrystal {
    pub spec: KrSpec,
    pub graph: CrystalGraph,
}

impl KrCrystal {
    pub fn classical_colors(&self) -> Vec<usize> {
        self.spec.ty.classical_nodes()
    }

    /// Unique I_0-highest element of the given classical weight.
    pub fn highest_of_weight(&self, w: &Weight) -> Option<u32> {
        let j = self.classical_colors();
        let hs: Vec<u32> = self
            .graph
            .highest(&j)
            .into_iter()
            .filter(|&b| self.graph.weight(b) == w)
            .collect();
        (hs.len() == 1).then(|| hs[0])
    }
}

fn fail(spec: &KrSpec, detail: impl Into<String>) -> KrError {
    KrError::Construction {
        spec: spec.to_string(),
        detail: detail.into(),
    }
}

/// Build B^{r,s}, refusing when any crystal on the way would exceed `budget`.
pub fn build_kr(spec: &KrSpec, budget: usize) -> Result<KrCrystal, KrError> {
    build_kr_via(spec, spec.route(), budget)
}

/// Build B^{r,s} along a given route (see [`KrSpec::alternate_route`]).
pub fn build_kr_via(spec: &KrSpec, route: Route, budget: usize) -> Result<KrCrystal, KrError> {
    for (sp, size) in spec.route_sizes(&route)? {
        if size > budget as u128 {
            return Err(KrError::Budget {
                spec: sp,
                needed: size,
                budget,
            });
        }
    }
    build_unchecked(spec, route, budget)
}

fn build_unchecked(spec: &KrSpec, route: Route, budget: usize) -> Result<KrCrystal, KrError> {
    let graph = match route {
        Route::Promotion => build_promotion(spec, budget)?,
        Route::Involution => build_involution(spec, budget)?,
        Route::SignCounts => build_sign_counts(spec, budget)?,
        Route::SpinSwap => build_spin_swap(spec, budget)?,
        Route::Ambient {
            factors,
            rules,
            kind,
            weight,
        } => {
            let mut amb = build_unchecked(&factors[0], factors[0].route(), budget)?;
            for f in &factors[1..] {
                let g = build_unchecked(f, f.route(), budget)?.graph;
                amb.graph = tensor(&amb.graph, &g, budget)?;
            }
            build_inside(spec, &amb, &rules, kind, weight, budget)?
        }
    };
    let expected = spec.predicted_size()?;
    if graph.len() as u128 != expected {
        return Err(fail(
            spec,
            format!("{} elements, expected {expected}", graph.len()),
        ));
    }
    let problems = graph.validate();
    if !problems.is_empty() {
        return Err(fail(spec, problems.join("; ")));
    }
    Ok(KrCrystal { spec: *spec, graph })
}

/// Transport a map given on J-highest elements to the whole crystal:
/// f_{c_1}⋯f_{c_k} u ↦ f_{τ(c_1)}⋯f_{τ(c_k)} m(u).
pub fn transport(
    src: &CrystalGraph,
    tgt: &CrystalGraph,
    j: &[usize],
    tau: impl Fn(usize) -> usize,
    on_highest: &HashMap<u32, Option<u32>>,
) -> Result<Vec<Option<u32>>, String> {
    let mut out = vec![None; src.len()];
    for b in src.ids() {
        let (u, path) = src.raise_to_highest(j, b);
        let Some(&img) = on_highest.get(&u) else {
            return Err(format!("no image for highest element `{}`", src.label(u)));
        };
        let Some(mut cur) = img else { continue };
        for &c in path.iter().rev() {
            cur = tgt
                .f(tau(c), cur)
                .ok_or_else(|| format!("path replay failed at `{}`", src.label(b)))?;
        }
        out[b as usize] = Some(cur);
    }
    Ok(out)
}

fn affine_with_zero(
    spec: &KrSpec,
    classical: &CrystalGraph,
    f0: Vec<Option<u32>>,
) -> Result<CrystalGraph, KrError> {
    Ok(classical.with_color_table(RootDatum::affine(spec.ty), 0, f0)?)
}

fn conjugate_f1(g: &CrystalGraph, to: &[u32], back: &[u32]) -> Vec<Option<u32>> {
    g.ids()
        .map(|b| g.f(1, to[b as usize]).map(|x| back[x as usize]))
        .collect()
}

fn build_promotion(spec: &KrSpec, budget: usize) -> Result<CrystalGraph, KrError> {
    let ct = spec.classical();
    let w = spec.classical_highest_weights()?;
    let g = build_classical(ct, &w[0], budget)?;
    let mut pr = Vec::with_capacity(g.graph.len());
    for t in &g.elements {
        let p = promotion(t)?;
        pr.push(
            g.graph
                .find(&p.serialize())
                .ok_or_else(|| fail(spec, "promotion left the crystal"))?,
        );
    }
    let mut inv = vec![u32::MAX; pr.len()];
    for (b, &x) in pr.iter().enumerate() {
        inv[x as usize] = b as u32;
    }
    if inv.contains(&u32::MAX) {
        return Err(fail(spec, "promotion is not a bijection"));
    }
    let f0 = conjugate_f1(&g.graph, &pr, &inv);
    affine_with_zero(spec, &g.graph, f0)
}

fn j_colors(n: usize) -> Vec<usize> {
    (2..=n).collect()
}

/// σ as a permutation of the classical union, via 𝔖 on ±-diagrams.
pub fn involution_sigma(
    spec: &KrSpec,
    graph: &CrystalGraph,
    elements: &[Tableau],
) -> Result<Vec<u32>, KrError> {
    let ct = spec.classical();
    let weights = spec.classical_highest_weights()?;
    let table = PhiTable::new(ct, &weights)?;
    let j = j_colors(ct.rank);
    let mut on_highest = HashMap::new();
    for u in graph.highest(&j) {
        let p = table.inverse(&elements[u as usize])?;
        let q = frak_s(p, spec.r, spec.s)?;
        let t = table
            .by_diagram
            .get(&q)
            .ok_or_else(|| fail(spec, format!("𝔖 left the diagrams: {q:?}")))?;
        let v = graph
            .find(&t.serialize())
            .ok_or_else(|| fail(spec, "Φ image not in the crystal"))?;
        on_highest.insert(u, Some(v));
    }
    let sigma = transport(graph, graph, &j, |c| c, &on_highest).map_err(|e| fail(spec, e))?;
    let sigma: Vec<u32> = sigma
        .into_iter()
        .map(|x| x.ok_or_else(|| fail(spec, "σ undefined")))
        .collect::<Result<_, _>>()?;
    for b in graph.ids() {
        if sigma[sigma[b as usize] as usize] != b {
            return Err(fail(
                spec,
                format!("σ is not an involution at `{}`", graph.label(b)),
            ));
        }
    }
    Ok(sigma)
}

fn build_involution(spec: &KrSpec, budget: usize) -> Result<CrystalGraph, KrError> {
    let ct = spec.classical();
    let weights = spec.classical_highest_weights()?;
    let g = build_classical_union(ct, &weights, budget)?;
    let sigma = involution_sigma(spec, &g.graph, &g.elements)?;
    let f0 = conjugate_f1(&g.graph, &sigma, &sigma);
    affine_with_zero(spec, &g.graph, f0)
}

/// Sign counts (ℓ1, ℓ2, ℓ3) of a diagram of rectangular spin or full shape.
pub fn sign_counts(ty: AffineFamily, p: &PmDiagram) -> [usize; 3] {
    let (pl, mi, pm) = (
        p.count(Signs::Plus),
        p.count(Signs::Minus),
        p.count(Signs::PlusMinus),
    );
    match ty {
        AffineFamily::C1 => [pl, mi, pm],
        _ => [
            2 * pl + usize::from(p.spin == Some(Signs::Plus)),
            2 * mi + usize::from(p.spin == Some(Signs::Minus)),
            2 * pm,
        ],
    }
}

/// e_0 on sign counts at the exceptional node.
pub fn sign_counts_e0(family: AffineFamily, s: usize, l: [usize; 3]) -> Option<[usize; 3]> {
    let [a, b, c] = l;
    match family {
        AffineFamily::C1 => (a > 0).then(|| [a - 1, b + 1, c]),
        _ => {
            if a + b + c < s {
                Some([a, b + 2, c])
            } else if a > 1 {
                Some([a - 2, b, c])
            } else if a == 1 {
                Some([0, b + 1, c])
            } else {
                None
            }
        }
    }
}

fn build_sign_counts(spec: &KrSpec, budget: usize) -> Result<CrystalGraph, KrError> {
    let ct = spec.classical();
    let weights = spec.classical_highest_weights()?;
    let g = build_classical(ct, &weights[0], budget)?;
    let table = PhiTable::new(ct, &weights)?;
    let j = j_colors(ct.rank);
    let mut by_counts = HashMap::new();
    for u in g.graph.highest(&j) {
        let p = table.inverse(&g.elements[u as usize])?;
        if by_counts
            .insert(sign_counts(spec.ty.family, p), u)
            .is_some()
        {
            return Err(fail(spec, "sign counts do not separate highest elements"));
        }
    }
    // f_0 is the inverse of e_0 on the highest elements
    let mut on_highest: HashMap<u32, Option<u32>> =
        by_counts.values().map(|&u| (u, None)).collect();
    for (&l, &u) in &by_counts {
        if let Some(l2) = sign_counts_e0(spec.ty.family, spec.s, l) {
            let v = *by_counts
                .get(&l2)
                .ok_or_else(|| fail(spec, format!("e_0 sends {l:?} outside to {l2:?}")))?;
            if on_highest.insert(v, Some(u)) != Some(None) {
                return Err(fail(spec, format!("e_0 is not injective at {l2:?}")));
            }
        }
    }
    let f0 = transport(&g.graph, &g.graph, &j, |c| c, &on_highest).map_err(|e| fail(spec, e))?;
    affine_with_zero(spec, &g.graph, f0)
}

/// σ: B^{r,s} → B^{r',s} for D^{(1)} spin nodes, induced by the diagram
/// automorphism exchanging 0 and 1; on weights it negates the first coordinate.
pub fn spin_sigma(n: usize, src: &CrystalGraph, tgt: &CrystalGraph) -> Result<Vec<u32>, String> {
    let j = j_colors(n);
    let mut by_weight: HashMap<Weight, Vec<u32>> = HashMap::new();
    for v in tgt.highest(&j) {
        by_weight.entry(tgt.weight(v).clone()).or_default().push(v);
    }
    let mut on_highest = HashMap::new();
    for u in src.highest(&j) {
        let mut d = src.weight(u).doubled().to_vec();
        d[0] = -d[0];
        let w = Weight::from_doubled(d);
        match by_weight.get(&w).map(|v| v.as_slice()) {
            Some([v]) => {
                on_highest.insert(u, Some(*v));
            }
            _ => return Err(format!("no unique partner of weight {w}")),
        }
    }
    transport(src, tgt, &j, |c| c, &on_highest)?
        .into_iter()
        .map(|x| x.ok_or_else(|| "σ undefined".to_string()))
        .collect()
}

fn build_spin_swap(spec: &KrSpec, budget: usize) -> Result<CrystalGraph, KrError> {
    let ct = spec.classical();
    let n = ct.rank;
    let other = KrSpec {
        r: if spec.r == n { n - 1 } else { n },
        ..*spec
    };
    let g = build_classical(ct, &spec.classical_highest_weights()?[0], budget)?;
    let h = build_classical(ct, &other.classical_highest_weights()?[0], budget)?;
    let to = spin_sigma(n, &g.graph, &h.graph).map_err(|e| fail(spec, e))?;
    let back = spin_sigma(n, &h.graph, &g.graph).map_err(|e| fail(spec, e))?;
    for b in g.graph.ids() {
        if back[to[b as usize] as usize] != b {
            return Err(fail(spec, "σ is not invertible"));
        }
    }
    let f0 = g
        .graph
        .ids()
        .map(|b| h.graph.f(1, to[b as usize]).map(|x| back[x as usize]))
        .collect();
    affine_with_zero(spec, &g.graph, f0)
}

/// Images in the ambient crystal of the I_0-highest elements.
fn ambient_seeds(
    spec: &KrSpec,
    amb: &KrCrystal,
    rules: &Rules,
    weight: WeightMap,
) -> Result<Vec<u32>, KrError> {
    let ct = spec.classical();
    let weights = spec.classical_highest_weights()?;
    let mut seeds = Vec::new();
    if matches!(weight, WeightMap::Tail | WeightMap::TailHalf) {
        // C_n inside C_{n+1}: prescribed ±-diagrams with inner shape λ
        // (or 2λ, at width 2s).
        let act = amb.spec.classical();
        let (r, s) = (spec.r, amb.spec.s);
        let scale = if weight == WeightMap::TailHalf { 2 } else { 1 };
        for w in weights.iter().map(|w| w.scale(scale)) {
            let rows: Vec<usize> = w
                .to_ints()
                .ok_or_else(|| fail(spec, "half-integral weight"))?
                .iter()
                .map(|&x| x as usize)
                .collect();
            let row = |h: usize| {
                if h == 0 {
                    s
                } else {
                    rows.get(h - 1).copied().unwrap_or(0)
                }
            };
            let mut cols = Vec::new();
            for h in 0..=r {
                let c = row(h) - if h < r { row(h + 1) } else { 0 };
                let push = |cols: &mut Vec<PmColumn>, outer: usize, signs: Signs, k: usize| {
                    if outer > 0 {
                        cols.extend(std::iter::repeat_n(PmColumn { outer, signs }, k));
                    }
                };
                if h == r {
                    push(&mut cols, h, Signs::Empty, c);
                } else if (r - h) % 2 == 0 {
                    push(&mut cols, h + 2, Signs::PlusMinus, c / 2);
                    push(&mut cols, h, Signs::Empty, c / 2);
                } else {
                    push(&mut cols, h + 1, Signs::Plus, c / 2);
                    push(&mut cols, h + 1, Signs::Minus, c / 2);
                }
            }
            let p = PmDiagram::new(act, None, cols)?;
            let t = phi(&p)?;
            seeds.push(
                amb.graph
                    .find(&t.serialize())
                    .ok_or_else(|| fail(spec, format!("seed {} missing", t.serialize())))?,
            );
        }
        return Ok(seeds);
    }
    let amb_j = amb.classical_colors();
    let hs = amb.graph.highest(&amb_j);
    for w in &weights {
        let want: Vec<i32> = ct
            .index_set()
            .iter()
            .map(|&i| ct.pairing(i, w).unwrap() * rules[&i].power as i32)
            .collect();
        let found: Vec<u32> = hs
            .iter()
            .copied()
            .filter(|&b| {
                ct.index_set().iter().zip(&want).all(|(&i, &a)| {
                    rules[&i]
                        .targets
                        .iter()
                        .all(|&t| amb.graph.pairing(t, b) == a)
                })
            })
            .collect();
        match found.as_slice() {
            [b] => seeds.push(*b),
            _ => {
                return Err(fail(
                    spec,
                    format!("{} ambient candidates for highest weight {w}", found.len()),
                ))
            }
        }
    }
    Ok(seeds)
}

fn build_inside(
    spec: &KrSpec,
    amb: &KrCrystal,
    rules: &Rules,
    kind: MapKind,
    wmap: WeightMap,
    budget: usize,
) -> Result<CrystalGraph, KrError> {
    let seeds = ambient_seeds(spec, amb, rules, wmap)?;
    let datum = RootDatum::affine(spec.ty);
    let ag = &amb.graph;
    let n = spec.classical().rank;
    let weight = |x: &u32| wmap.apply(ag.weight(*x), n);
    let gen = generate(
        &datum,
        seeds,
        |&x, c, dir: Dir| Ok(apply_rule(ag, &rules[&c], dir, x)),
        |&x| ag.label(x).to_string(),
        weight,
        budget,
    )?;
    let inclusion = CrystalMap {
        kind,
        rules: rules.clone(),
        assignment: gen.elements.clone(),
    };
    let rep = verify_map(&inclusion, &gen.graph, ag);
    if !rep.ok() {
        let first = rep.violations.first().cloned().unwrap_or_default();
        return Err(fail(
            spec,
            format!("not aligned with the ambient crystal: {first}"),
        ));
    }
    Ok(gen.graph)
}

/// The standard matrix of specs used by the acceptance checks.
pub fn desk_matrix() -> Vec<KrSpec> {
    use AffineFamily::*;
    let mut out = Vec::new();
    for (family, ns) in [
        (A1, &[3usize, 4][..]),
        (B1, &[2, 3]),
        (C1, &[2, 3]),
        (D1, &[4]),
        (A2Even, &[2, 3]),
        (A2Odd, &[2, 3]),
        (D2, &[2, 3]),
    ] {
        for &n in ns {
            let ty = AffineType::new(family, n).expect("desk rank");
            let rank = ty.classical().rank;
            let widths: &[usize] = if rank == 2 { &[1, 2, 3] } else { &[1, 2] };
            for r in 1..=rank {
                for &s in widths {
                    out.push(KrSpec { ty, r, s });
                }
            }
        }
    }
    out
}
