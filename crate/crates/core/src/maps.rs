//! Maps between crystal graphs defined by operator relations.
//!
//! A source color `c` is related to a list of target colors and a power `m`:
//! S(f_c b) = ∏_t f̂_t^m S(b), likewise for e, and ε̂_t(S b) = m ε_c(b),
//! φ̂_t(S b) = m φ_c(b) for every target color t. Similarity and virtual maps
//! use one target color per source color; folded maps use a fiber ξ⁻¹(c).

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::crystal::{CrystalGraph, Dir};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorRule {
    pub targets: Vec<usize>,
    pub power: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapKind {
    Similarity,
    Virtual,
    Folded,
}

pub type Rules = BTreeMap<usize, ColorRule>;

/// Uniform rules c ↦ (c, m_c).
pub fn multiplier_rules(colors: &[usize], mult: &[u32]) -> Rules {
    colors
        .iter()
        .zip(mult)
        .map(|(&c, &m)| {
            (
                c,
                ColorRule {
                    targets: vec![c],
                    power: m,
                },
            )
        })
        .collect()
}

/// Folding rules from ξ given as (target color, source color) pairs.
pub fn folding_rules(source_colors: &[usize], xi: &[(usize, usize)]) -> Rules {
    source_colors
        .iter()
        .map(|&c| {
            let targets = xi
                .iter()
                .filter(|(_, s)| *s == c)
                .map(|(t, _)| *t)
                .collect();
            (c, ColorRule { targets, power: 1 })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum MapError {
    #[error("target string too short: color {color} at source `{source_label}`")]
    StringTooShort { color: usize, source_label: String },
    #[error("inconsistent image for `{source_label}`")]
    Inconsistent { source_label: String },
    #[error("two source elements map to `{target_label}`")]
    NotInjective { target_label: String },
    #[error("statistic mismatch at `{source_label}`, color {color}: {detail}")]
    StatMismatch {
        source_label: String,
        color: usize,
        detail: String,
    },
    #[error("{unreached} source elements not reached from the seeds")]
    NotTotal { unreached: usize },
    #[error("color {0} has no rule")]
    MissingRule(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct CrystalMap {
    pub kind: MapKind,
    pub rules: Rules,
    /// assignment[b] = image of source element b
    pub assignment: Vec<u32>,
}

pub(crate) fn apply_rule(tgt: &CrystalGraph, rule: &ColorRule, dir: Dir, x: u32) -> Option<u32> {
    let mut cur = x;
    for &t in &rule.targets {
        for _ in 0..rule.power {
            cur = tgt.op(t, dir, cur)?;
        }
    }
    Some(cur)
}

fn check_stats(
    src: &CrystalGraph,
    tgt: &CrystalGraph,
    rules: &Rules,
    b: u32,
    x: u32,
) -> Result<(), MapError> {
    for (&c, rule) in rules {
        for &t in &rule.targets {
            let (e0, p0) = (src.eps(c, b) * rule.power, src.phi(c, b) * rule.power);
            let (e1, p1) = (tgt.eps(t, x), tgt.phi(t, x));
            if e0 != e1 || p0 != p1 {
                return Err(MapError::StatMismatch {
                    source_label: src.label(b).to_string(),
                    color: c,
                    detail: format!(
                        "target color {t}: expected (ε,φ)=({e0},{p0}), found ({e1},{p1})"
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Extend a seed assignment by breadth-first propagation along the rules.
pub fn morphism_check(
    src: &CrystalGraph,
    tgt: &CrystalGraph,
    seeds: &[(u32, u32)],
    rules: &Rules,
    kind: MapKind,
) -> Result<CrystalMap, MapError> {
    for &c in src.colors() {
        if !rules.contains_key(&c) {
            return Err(MapError::MissingRule(c));
        }
    }
    let mut img = vec![u32::MAX; src.len()];
    let mut pre = vec![u32::MAX; tgt.len()];
    let mut queue = VecDeque::new();
    let assign = |b: u32, x: u32, img: &mut Vec<u32>, pre: &mut Vec<u32>, q: &mut VecDeque<u32>| {
        if img[b as usize] != u32::MAX {
            if img[b as usize] != x {
                return Err(MapError::Inconsistent {
                    source_label: src.label(b).to_string(),
                });
            }
            return Ok(());
        }
        if pre[x as usize] != u32::MAX {
            return Err(MapError::NotInjective {
                target_label: tgt.label(x).to_string(),
            });
        }
        img[b as usize] = x;
        pre[x as usize] = b;
        q.push_back(b);
        Ok(())
    };
    for &(b, x) in seeds {
        assign(b, x, &mut img, &mut pre, &mut queue)?;
    }
    while let Some(b) = queue.pop_front() {
        let x = img[b as usize];
        check_stats(src, tgt, rules, b, x)?;
        for (&c, rule) in rules {
            for dir in [Dir::F, Dir::E] {
                if let Some(b2) = src.op(c, dir, b) {
                    let x2 =
                        apply_rule(tgt, rule, dir, x).ok_or_else(|| MapError::StringTooShort {
                            color: c,
                            source_label: src.label(b).to_string(),
                        })?;
                    assign(b2, x2, &mut img, &mut pre, &mut queue)?;
                }
            }
        }
    }
    let unreached = img.iter().filter(|&&x| x == u32::MAX).count();
    if unreached > 0 {
        return Err(MapError::NotTotal { unreached });
    }
    Ok(CrystalMap {
        kind,
        rules: rules.clone(),
        assignment: img,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MapReport {
    pub checked_elements: usize,
    pub injective: bool,
    pub violations: Vec<String>,
}

impl MapReport {
    pub fn ok(&self) -> bool {
        self.injective && self.violations.is_empty()
    }
}

/// Exhaustive check of the defining relations of `map`, collecting every
/// violation.
pub fn verify_map(map: &CrystalMap, src: &CrystalGraph, tgt: &CrystalGraph) -> MapReport {
    let mut rep = MapReport {
        checked_elements: src.len(),
        injective: true,
        violations: Vec::new(),
    };
    let mut seen = vec![false; tgt.len()];
    for &x in &map.assignment {
        if seen[x as usize] {
            rep.injective = false;
        }
        seen[x as usize] = true;
    }
    for b in src.ids() {
        let x = map.assignment[b as usize];
        if let Err(e) = check_stats(src, tgt, &map.rules, b, x) {
            rep.violations.push(e.to_string());
        }
        for (&c, rule) in &map.rules {
            for dir in [Dir::F, Dir::E] {
                let lhs = src.op(c, dir, b).map(|b2| map.assignment[b2 as usize]);
                let rhs = apply_rule(tgt, rule, dir, x);
                if lhs != rhs {
                    rep.violations.push(format!(
                        "color {c} {:?}: S(op b) ≠ op^m S(b) at `{}`",
                        dir,
                        src.label(b)
                    ));
                }
            }
        }
    }
    rep
}
