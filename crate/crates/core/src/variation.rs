//! Similarity maps S_m: B^{r,s} → B^{r,ms} and embeddings between KR
//! crystals of different affine types.
//!
//! A map is found by fixing the I_0-highest element u of weight sΛ̄_r, trying
//! every target element with the required string lengths as the image of u,
//! and propagating along the relations. The source is connected, so each
//! candidate either extends to a unique total map or fails; uniqueness means
//! exactly one candidate extends.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::AnalysisError;
use crate::cartan::{AffineFamily, AffineType};
use crate::crystal::{tensor, CrystalGraph};
use crate::kr::{build_kr, KrCrystal, KrSpec};
use crate::maps::{
    folding_rules, morphism_check, multiplier_rules, verify_map, CrystalMap, MapKind, MapReport,
    Rules,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VariationKind {
    OneI,
    OneII,
    OneIII,
    OneIV,
    OneV,
    OneVI,
    OneVII,
    OneVIII,
    TwoI,
    TwoII,
    TwoIII,
}

impl VariationKind {
    pub const ALL: [VariationKind; 11] = [
        VariationKind::OneI,
        VariationKind::OneII,
        VariationKind::OneIII,
        VariationKind::OneIV,
        VariationKind::OneV,
        VariationKind::OneVI,
        VariationKind::OneVII,
        VariationKind::OneVIII,
        VariationKind::TwoI,
        VariationKind::TwoII,
        VariationKind::TwoIII,
    ];

    pub fn id(self) -> &'static str {
        use VariationKind::*;
        match self {
            OneI => "1-i",
            OneII => "1-ii",
            OneIII => "1-iii",
            OneIV => "1-iv",
            OneV => "1-v",
            OneVI => "1-vi",
            OneVII => "1-vii",
            OneVIII => "1-viii",
            TwoI => "2-i",
            TwoII => "2-ii",
            TwoIII => "2-iii",
        }
    }

    /// Affine family of the source crystal.
    pub fn source_family(self) -> AffineFamily {
        use VariationKind::*;
        match self {
            OneI => AffineFamily::B1,
            OneII | OneIII | TwoI => AffineFamily::C1,
            OneIV | OneV => AffineFamily::A2Even,
            OneVI | TwoII => AffineFamily::A2Odd,
            OneVII | OneVIII | TwoIII => AffineFamily::D2,
        }
    }

    /// Source nodes r the embedding is stated for.
    pub fn allows(self, spec: &KrSpec) -> bool {
        use VariationKind::*;
        let n = spec.ty.n;
        spec.ty.family == self.source_family()
            && match self {
                OneIV | OneV | TwoI => spec.r != n,
                _ => true,
            }
    }

    /// Target factors and relations for the source `spec`.
    pub fn plan(self, spec: &KrSpec) -> Result<Plan, AnalysisError> {
        use VariationKind::*;
        if !self.allows(spec) {
            return Err(AnalysisError::NotApplicable(format!(
                "({}) does not apply to {spec}",
                self.id()
            )));
        }
        let n = spec.ty.n;
        let (r, s) = (spec.r, spec.s);
        let c_r = if r == n { 1 } else { 2 };
        let colors = spec.ty.index_set();
        let kr = |family, rank, r, s| -> Result<KrSpec, AnalysisError> {
            let ty = AffineType::new(family, rank)
                .map_err(|e| AnalysisError::NotApplicable(e.to_string()))?;
            Ok(KrSpec::new(ty, r, s)?)
        };
        let mult = |f: &dyn Fn(usize) -> u32| -> Rules {
            let m: Vec<u32> = colors.iter().map(|&c| f(c)).collect();
            multiplier_rules(&colors, &m)
        };
        let (targets, rules, kind) = match self {
            OneI => (
                vec![kr(AffineFamily::A2Odd, n, r, c_r * s)?],
                mult(&|c| if c == n { 1 } else { 2 }),
                MapKind::Virtual,
            ),
            OneII => (
                vec![kr(AffineFamily::A2Even, n, r, s)?],
                mult(&|c| if c == 0 { 2 } else { 1 }),
                MapKind::Virtual,
            ),
            OneIII => (
                vec![kr(AffineFamily::D2, n, r, s * if r == n { 2 } else { 1 })?],
                mult(&|c| if c == 0 || c == n { 2 } else { 1 }),
                MapKind::Virtual,
            ),
            OneIV => (
                vec![kr(AffineFamily::C1, n, r, 2 * s)?],
                mult(&|c| if c == 0 { 1 } else { 2 }),
                MapKind::Virtual,
            ),
            OneV => (
                vec![kr(AffineFamily::D2, n, r, s)?],
                mult(&|c| if c == n { 2 } else { 1 }),
                MapKind::Virtual,
            ),
            OneVI => (
                vec![kr(AffineFamily::B1, n, r, s)?],
                mult(&|c| if c == n { 2 } else { 1 }),
                MapKind::Virtual,
            ),
            OneVII => (
                vec![kr(AffineFamily::C1, n, r, c_r * s)?],
                mult(&|c| if c == 0 || c == n { 1 } else { 2 }),
                MapKind::Virtual,
            ),
            OneVIII => (
                vec![kr(AffineFamily::A2Even, n, r, c_r * s)?],
                mult(&|c| if c == n { 1 } else { 2 }),
                MapKind::Virtual,
            ),
            TwoI => {
                let xi: Vec<(usize, usize)> =
                    (0..=n + 1).map(|j| (j, j.saturating_sub(1))).collect();
                (
                    vec![kr(AffineFamily::A2Odd, n + 1, r, s)?],
                    folding_rules(&colors, &xi),
                    MapKind::Folded,
                )
            }
            TwoII => {
                let xi: Vec<(usize, usize)> = (0..=n + 1).map(|j| (j, j.min(n))).collect();
                let targets = if r == n {
                    vec![
                        kr(AffineFamily::D1, n + 1, n, s)?,
                        kr(AffineFamily::D1, n + 1, n + 1, s)?,
                    ]
                } else {
                    vec![kr(AffineFamily::D1, n + 1, r, s)?]
                };
                (targets, folding_rules(&colors, &xi), MapKind::Folded)
            }
            TwoIII => {
                let xi: Vec<(usize, usize)> = (0..2 * n)
                    .map(|j| (j, if j <= n { j } else { 2 * n - j }))
                    .collect();
                let targets = if r == n {
                    vec![kr(AffineFamily::A1, 2 * n, n, s)?]
                } else {
                    vec![
                        kr(AffineFamily::A1, 2 * n, r, s)?,
                        kr(AffineFamily::A1, 2 * n, 2 * n - r, s)?,
                    ]
                };
                (targets, folding_rules(&colors, &xi), MapKind::Folded)
            }
        };
        Ok(Plan {
            label: format!("({})", self.id()),
            source: *spec,
            targets,
            rules,
            kind,
        })
    }
}

impl fmt::Display for VariationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for VariationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim_start_matches('(').trim_end_matches(')');
        VariationKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| format!("unknown variation kind `{s}`"))
    }
}

/// Source, target factors (tensored left to right) and the relations.
#[derive(Clone, Debug, Serialize)]
pub struct Plan {
    pub label: String,
    pub source: KrSpec,
    pub targets: Vec<KrSpec>,
    pub rules: Rules,
    pub kind: MapKind,
}

impl Plan {
    pub fn similarity(spec: &KrSpec, m: usize) -> Result<Plan, AnalysisError> {
        let colors = spec.ty.index_set();
        let target = KrSpec::new(spec.ty, spec.r, spec.s * m)?;
        Ok(Plan {
            label: format!("S_{m}"),
            source: *spec,
            targets: vec![target],
            rules: multiplier_rules(&colors, &vec![m as u32; colors.len()]),
            kind: MapKind::Similarity,
        })
    }

    pub fn target_name(&self) -> String {
        let names: Vec<String> = self.targets.iter().map(|t| t.to_string()).collect();
        names.join(" ⊗ ")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub map: String,
    pub source: String,
    pub target: String,
    pub source_size: usize,
    pub target_size: usize,
    /// Target elements with matching string lengths at the anchor.
    pub candidates: usize,
    /// Candidates that extend to a map satisfying every relation.
    pub extending: usize,
    pub verification: Option<MapReport>,
    /// For similarity maps: I_0-highest of weight λ goes to I_0-highest of weight mλ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds_match: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn ok(&self) -> bool {
        self.extending == 1
            && self.verification.as_ref().is_some_and(|v| v.ok())
            && self.seeds_match != Some(false)
    }
}

/// The I_0-highest element of weight sΛ̄_r: the one whose weight is largest.
fn anchor(kr: &KrCrystal) -> Result<u32, AnalysisError> {
    let g = &kr.graph;
    let size = |b: &u32| g.weight(*b).doubled().iter().map(|x| x.abs()).sum::<i32>();
    let hs = g.highest(&kr.classical_colors());
    let best = hs.iter().map(size).max().unwrap_or(0);
    match hs
        .iter()
        .filter(|b| size(b) == best)
        .collect::<Vec<_>>()
        .as_slice()
    {
        [b] => Ok(**b),
        _ => Err(AnalysisError::NotApplicable(format!(
            "{}: no unique I_0-highest element of maximal weight",
            kr.spec
        ))),
    }
}

fn stats_match(src: &CrystalGraph, tgt: &CrystalGraph, rules: &Rules, b: u32, x: u32) -> bool {
    rules.iter().all(|(&c, rule)| {
        rule.targets.iter().all(|&t| {
            tgt.eps(t, x) == rule.power * src.eps(c, b)
                && tgt.phi(t, x) == rule.power * src.phi(c, b)
        })
    })
}

/// Search for the map described by `plan` between already built crystals.
pub fn find_embedding(
    plan: &Plan,
    src: &KrCrystal,
    tgt: &CrystalGraph,
) -> Result<(EmbeddingReport, Option<CrystalMap>), AnalysisError> {
    let u = anchor(src)?;
    let g = &src.graph;
    let candidates: Vec<u32> = tgt
        .ids()
        .filter(|&x| stats_match(g, tgt, &plan.rules, u, x))
        .collect();
    let mut maps = Vec::new();
    let mut failures = Vec::new();
    for &x in &candidates {
        match morphism_check(g, tgt, &[(u, x)], &plan.rules, plan.kind) {
            Ok(m) => maps.push(m),
            Err(e) => {
                if failures.len() < 5 {
                    failures.push(format!("`{}`: {e}", tgt.label(x)));
                }
            }
        }
    }
    let mut report = EmbeddingReport {
        map: plan.label.clone(),
        source: plan.source.to_string(),
        target: plan.target_name(),
        source_size: g.len(),
        target_size: tgt.len(),
        candidates: candidates.len(),
        extending: maps.len(),
        verification: None,
        seeds_match: None,
        failures,
    };
    let map = (maps.len() == 1).then(|| maps.pop().unwrap());
    if let Some(m) = &map {
        report.verification = Some(verify_map(m, g, tgt));
        if plan.kind == MapKind::Similarity {
            let j = src.classical_colors();
            let mult = plan.rules.values().next().map_or(1, |r| r.power) as i32;
            report.seeds_match = Some(g.highest(&j).into_iter().all(|b| {
                let x = m.assignment[b as usize];
                tgt.is_highest(&j, x) && *tgt.weight(x) == g.weight(b).scale(mult)
            }));
        }
    }
    Ok((report, map))
}

/// Sizes of everything `run_plan` would build.
pub fn plan_sizes(plan: &Plan) -> Result<Vec<(String, u128)>, AnalysisError> {
    let mut out = plan.source.construction_sizes()?;
    let mut product = 1u128;
    for t in &plan.targets {
        let sizes = t.construction_sizes()?;
        product = product.saturating_mul(sizes.last().unwrap().1);
        out.extend(sizes);
    }
    if plan.targets.len() > 1 {
        out.push((plan.target_name(), product));
    }
    Ok(out)
}

/// Build both sides within `budget` and search for the map.
pub fn run_plan(
    plan: &Plan,
    budget: usize,
) -> Result<(EmbeddingReport, Option<CrystalMap>), AnalysisError> {
    for (name, size) in plan_sizes(plan)? {
        if size > budget as u128 {
            return Err(crate::kr::KrError::Budget {
                spec: name,
                needed: size,
                budget,
            }
            .into());
        }
    }
    let src = build_kr(&plan.source, budget)?;
    let mut tgt = build_kr(&plan.targets[0], budget)?.graph;
    for t in &plan.targets[1..] {
        tgt = tensor(&tgt, &build_kr(t, budget)?.graph, budget)?;
    }
    find_embedding(plan, &src, &tgt)
}

pub fn similarity_map(
    spec: &KrSpec,
    m: usize,
    budget: usize,
) -> Result<(EmbeddingReport, Option<CrystalMap>), AnalysisError> {
    run_plan(&Plan::similarity(spec, m)?, budget)
}

pub fn variation_map(
    kind: VariationKind,
    spec: &KrSpec,
    budget: usize,
) -> Result<(EmbeddingReport, Option<CrystalMap>), AnalysisError> {
    run_plan(&kind.plan(spec)?, budget)
}
