//! One verdict per check, shared by the command line and the test suites.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::analysis::{
    check_simple, check_tensor_connected, promotion_check, rank2_regularity, sigma_applies,
    sigma_check, witness_applies, witness_nonextremal, AnalysisError, Timings, Verdict,
};
use crate::artifact::{to_json, ArtifactError, Cache};
use crate::cartan::{ClassicalType, Weight};
use crate::crystal::CrystalError;
use crate::kr::{build_kr, KrCrystal, KrSpec};
use crate::pm::{branching_check, PmError};
use crate::tableaux::TableauError;
use crate::variation::{similarity_map, variation_map, EmbeddingReport, VariationKind};

pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Element budget from `KRKIT_BUDGET`, else the default.
pub fn env_budget() -> Result<usize, CheckError> {
    match std::env::var("KRKIT_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CheckError::Usage(format!("KRKIT_BUDGET={v} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Pm(#[from] PmError),
    #[error(transparent)]
    Artifact(#[from] ArtifactError),
    #[error("{0}")]
    Usage(String),
}

impl CheckError {
    pub fn is_resource(&self) -> bool {
        match self {
            CheckError::Analysis(e) => e.is_resource(),
            CheckError::Artifact(e) => e.is_resource(),
            CheckError::Pm(PmError::Tableau(TableauError::Crystal(e))) => {
                matches!(e, CrystalError::BudgetExceeded { .. })
            }
            _ => false,
        }
    }

    pub fn is_io(&self) -> bool {
        matches!(self, CheckError::Artifact(ArtifactError::Io { .. }))
    }

    /// Process exit code: 2 resource, 3 I/O, 4 usage.
    pub fn exit_code(&self) -> i32 {
        if self.is_resource() {
            2
        } else if self.is_io() {
            3
        } else {
            4
        }
    }
}

impl From<crate::kr::KrError> for CheckError {
    fn from(e: crate::kr::KrError) -> Self {
        CheckError::Analysis(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Decomp,
    Simple,
    Connected,
    Tensor,
    Similarity,
    Variation,
    Branching,
    Witness,
    Sigma,
    Regular,
    Promotion,
    Determinism,
}

impl CheckKind {
    pub const ALL: [CheckKind; 12] = [
        CheckKind::Decomp,
        CheckKind::Simple,
        CheckKind::Connected,
        CheckKind::Tensor,
        CheckKind::Similarity,
        CheckKind::Variation,
        CheckKind::Branching,
        CheckKind::Witness,
        CheckKind::Sigma,
        CheckKind::Regular,
        CheckKind::Promotion,
        CheckKind::Determinism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Decomp => "decomp",
            CheckKind::Simple => "simple",
            CheckKind::Connected => "connected",
            CheckKind::Tensor => "tensor",
            CheckKind::Similarity => "similarity",
            CheckKind::Variation => "variation",
            CheckKind::Branching => "branching",
            CheckKind::Witness => "witness",
            CheckKind::Sigma => "sigma",
            CheckKind::Regular => "regular",
            CheckKind::Promotion => "promotion",
            CheckKind::Determinism => "determinism",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = CheckError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CheckError::Usage(format!("unknown check `{s}`")))
    }
}

/// Builds KR crystals under a budget, optionally through an on-disk cache.
#[derive(Clone, Debug)]
pub struct Builder {
    pub budget: usize,
    pub cache: Option<Cache>,
}

impl Builder {
    pub fn new(budget: usize) -> Self {
        Builder {
            budget,
            cache: None,
        }
    }

    pub fn build(&self, spec: &KrSpec) -> Result<KrCrystal, CheckError> {
        match &self.cache {
            Some(c) => Ok(c.get(spec, self.budget)?),
            None => Ok(build_kr(spec, self.budget)?),
        }
    }
}

/// Parse `A1:3`, `r`, `s` into a spec.
pub fn parse_spec(ty: &str, r: usize, s: usize) -> Result<KrSpec, CheckError> {
    let ty = ty
        .parse()
        .map_err(|e: crate::cartan::CartanError| CheckError::Usage(e.to_string()))?;
    KrSpec::new(ty, r, s).map_err(|e| CheckError::Usage(e.to_string()))
}

/// Parse `r,s`.
pub fn parse_pair(text: &str) -> Result<(usize, usize), CheckError> {
    let bad = || CheckError::Usage(format!("expected r,s but got `{text}`"));
    let (r, s) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        r.trim().parse().map_err(|_| bad())?,
        s.trim().parse().map_err(|_| bad())?,
    ))
}

/// Parse a classical type and a partition such as `B3` and `2,1`.
pub fn parse_highest(ty: &str, parts: &str) -> Result<(ClassicalType, Weight), CheckError> {
    let ct: ClassicalType = ty
        .parse()
        .map_err(|e: crate::cartan::CartanError| CheckError::Usage(e.to_string()))?;
    let mut rows = Vec::new();
    for p in parts.split(',').filter(|p| !p.trim().is_empty()) {
        rows.push(
            p.trim()
                .parse::<i32>()
                .map_err(|_| CheckError::Usage(format!("bad partition `{parts}`")))?,
        );
    }
    if rows.len() > ct.dim() || rows.windows(2).any(|w| w[0] < w[1]) || rows.iter().any(|&x| x < 0)
    {
        return Err(CheckError::Usage(format!(
            "`{parts}` is not a partition for {ct}"
        )));
    }
    rows.resize(ct.dim(), 0);
    Ok((ct, Weight::from_ints(&rows)))
}

/// Verdict for a check that could not run within the budget.
pub fn budget_verdict(check: CheckKind, spec: impl Into<String>, err: &CheckError) -> Verdict {
    Verdict {
        check: check.name().to_string(),
        spec: spec.into(),
        verdict: "budget".to_string(),
        counterexample: None,
        details: json!({ "reason": err.to_string() }),
        timings: Timings::default(),
    }
}

pub fn check_decomp(b: &Builder, spec: &KrSpec) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let kr = b.build(spec)?;
    let got = match kr.graph.classical_decomposition(spec.classical()) {
        Ok(g) => g,
        Err(e) => {
            let details = json!({ "size": kr.graph.len() });
            return Ok(Verdict::new(
                "decomp",
                spec.to_string(),
                false,
                Some(e),
                details,
                t,
            ));
        }
    };
    let want = spec.classical_highest_weights()?;
    let pass = got == want;
    let show = |v: &[Weight]| v.iter().map(|w| w.to_string()).collect::<Vec<_>>();
    let cex = (!pass).then(|| format!("got {:?}, expected {:?}", show(&got), show(&want)));
    Ok(Verdict::new(
        "decomp",
        spec.to_string(),
        pass,
        cex,
        json!({ "size": kr.graph.len(), "components": show(&got) }),
        t,
    ))
}

pub fn check_simple_kr(b: &Builder, spec: &KrSpec) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let kr = b.build(spec)?;
    let s = check_simple(&kr.graph)?;
    let cex = match &s {
        crate::analysis::Simplicity::NotSimple { reason } => Some(reason.clone()),
        _ => None,
    };
    Ok(Verdict::new(
        "simple",
        spec.to_string(),
        s.is_simple(),
        cex,
        s,
        t,
    ))
}

pub fn check_connected(b: &Builder, spec: &KrSpec) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let kr = b.build(spec)?;
    let pass = kr.graph.is_connected();
    Ok(Verdict::new(
        "connected",
        spec.to_string(),
        pass,
        (!pass).then(|| "more than one component".to_string()),
        json!({ "size": kr.graph.len() }),
        t,
    ))
}

pub fn check_tensor(b: &Builder, specs: &[KrSpec]) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let rep = check_tensor_connected(specs, b.budget, false)?;
    let name = rep.factors.join(" ⊗ ");
    let pass = rep.connected;
    Ok(Verdict::new(
        "tensor",
        name,
        pass,
        (!pass).then(|| "tensor product is disconnected".to_string()),
        rep,
        t,
    ))
}

fn embedding_verdict(check: &str, rep: EmbeddingReport, t: Instant) -> Verdict {
    let pass = rep.ok();
    let cex = if pass {
        None
    } else if let Some(v) = rep.verification.as_ref().and_then(|v| v.violations.first()) {
        Some(v.clone())
    } else if let Some(f) = rep.failures.first() {
        Some(f.clone())
    } else {
        Some(format!(
            "{} weight-matched candidates, {} extend",
            rep.candidates, rep.extending
        ))
    };
    let spec = rep.source.clone();
    Verdict::new(check, spec, pass, cex, rep, t)
}

pub fn check_similarity(b: &Builder, spec: &KrSpec, m: usize) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    if m == 0 {
        return Err(CheckError::Usage("--m must be positive".into()));
    }
    let (rep, _) = similarity_map(spec, m, b.budget)?;
    Ok(embedding_verdict("similarity", rep, t))
}

pub fn check_variation(
    b: &Builder,
    spec: &KrSpec,
    kind: VariationKind,
) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let (rep, _) = variation_map(kind, spec, b.budget)?;
    let mut v = embedding_verdict("variation", rep, t);
    v.check = format!("variation {kind}");
    Ok(v)
}

pub fn check_branching(
    b: &Builder,
    ct: ClassicalType,
    lam: &Weight,
) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let rep = branching_check(ct, lam, b.budget)?;
    let pass = rep.ok;
    Ok(Verdict::new(
        "branching",
        format!("B({lam}) of {ct}"),
        pass,
        (!pass).then(|| "diagram inner shapes differ from {2..n}-highest weights".to_string()),
        rep,
        t,
    ))
}

pub fn check_witness(b: &Builder, spec: &KrSpec) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    if !witness_applies(spec) {
        return Err(
            AnalysisError::NotApplicable(format!("no witness construction for {spec}")).into(),
        );
    }
    let kr = b.build(spec)?;
    let reps = witness_nonextremal(&kr)?;
    let bad = reps.iter().find(|r| !r.ok);
    let cex = bad.map(|r| {
        format!(
            "at `{}`: (ε0, φ0) = ({}, {}), expected {:?}; pairing {}, expected {}",
            r.highest, r.eps0, r.phi0, r.expected, r.h0_pairing, r.expected_pairing
        )
    });
    Ok(Verdict::new(
        "witness",
        spec.to_string(),
        bad.is_none(),
        cex,
        reps,
        t,
    ))
}

pub fn check_sigma(b: &Builder, spec: &KrSpec) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    if !sigma_applies(spec) {
        return Err(AnalysisError::NotApplicable(format!(
            "{spec} has no σ or sign-count 0-arrows"
        ))
        .into());
    }
    let kr = b.build(spec)?;
    let rep = sigma_check(&kr, b.budget)?;
    let cex = rep.violations.first().cloned();
    Ok(Verdict::new(
        "sigma",
        spec.to_string(),
        rep.ok(),
        cex,
        rep,
        t,
    ))
}

pub fn check_regular(b: &Builder, spec: &KrSpec) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let kr = b.build(spec)?;
    let rep = rank2_regularity(&kr.graph, b.budget);
    let cex = rep.violations.first().cloned();
    Ok(Verdict::new(
        "regular",
        spec.to_string(),
        rep.ok(),
        cex,
        rep,
        t,
    ))
}

pub fn check_promotion(b: &Builder, spec: &KrSpec) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let kr = b.build(spec)?;
    let rep = promotion_check(&kr)?;
    let pass = rep.order_ok && rep.violations.is_empty();
    let cex = rep.violations.first().cloned();
    Ok(Verdict::new(
        "promotion",
        spec.to_string(),
        pass,
        cex,
        rep,
        t,
    ))
}

/// Two independent builds serialize to the same bytes.
pub fn check_determinism(b: &Builder, spec: &KrSpec) -> Result<Verdict, CheckError> {
    let t = Instant::now();
    let one = to_json(&build_kr(spec, b.budget)?.graph, Some(spec));
    let two = to_json(&build_kr(spec, b.budget)?.graph, Some(spec));
    let pass = one == two;
    Ok(Verdict::new(
        "determinism",
        spec.to_string(),
        pass,
        (!pass).then(|| "two builds serialize differently".to_string()),
        json!({ "bytes": one.len() }),
        t,
    ))
}

/// Run a check that takes a single spec.
pub fn check_spec(
    b: &Builder,
    kind: CheckKind,
    spec: &KrSpec,
    m: usize,
    variation: Option<VariationKind>,
) -> Result<Verdict, CheckError> {
    match kind {
        CheckKind::Decomp => check_decomp(b, spec),
        CheckKind::Simple => check_simple_kr(b, spec),
        CheckKind::Connected => check_connected(b, spec),
        CheckKind::Similarity => check_similarity(b, spec, m),
        CheckKind::Variation => {
            let k =
                variation.ok_or_else(|| CheckError::Usage("variation needs --kind-id".into()))?;
            check_variation(b, spec, k)
        }
        CheckKind::Witness => check_witness(b, spec),
        CheckKind::Sigma => check_sigma(b, spec),
        CheckKind::Regular => check_regular(b, spec),
        CheckKind::Promotion => check_promotion(b, spec),
        CheckKind::Determinism => check_determinism(b, spec),
        CheckKind::Tensor | CheckKind::Branching => Err(CheckError::Usage(format!(
            "{kind} does not take a single spec"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsers() {
        assert_eq!(parse_pair("2, 1").unwrap(), (2, 1));
        assert!(parse_pair("2").is_err());
        let (ct, w) = parse_highest("B3", "2,1").unwrap();
        assert_eq!(ct.to_string(), "B3");
        assert_eq!(w, Weight::from_ints(&[2, 1, 0]));
        assert!(parse_highest("B3", "1,2").is_err());
        assert!(parse_spec("A1:3", 3, 1).is_err());
        assert!(parse_spec("Q1:3", 1, 1).is_err());
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
        }
    }

    #[test]
    fn verdicts_on_small_cases() {
        let b = Builder::new(10_000);
        let sp = parse_spec("C1:2", 1, 2).unwrap();
        for kind in [
            CheckKind::Decomp,
            CheckKind::Simple,
            CheckKind::Connected,
            CheckKind::Witness,
        ] {
            assert!(
                check_spec(&b, kind, &sp, 2, None).unwrap().passed(),
                "{kind}"
            );
        }
        let a = parse_spec("A1:3", 1, 1).unwrap();
        assert!(check_similarity(&b, &a, 2).unwrap().passed());
        assert!(check_promotion(&b, &a).unwrap().passed());
        let t = [a, parse_spec("A1:3", 2, 1).unwrap()];
        assert!(check_tensor(&b, &t).unwrap().passed());
        assert!(matches!(
            check_witness(&b, &a),
            Err(CheckError::Analysis(AnalysisError::NotApplicable(_)))
        ));
    }

    #[test]
    fn budget_errors_map_to_exit_code_2() {
        let b = Builder::new(3);
        let sp = parse_spec("B1:3", 2, 2).unwrap();
        let e = check_decomp(&b, &sp).unwrap_err();
        assert!(e.is_resource());
        assert_eq!(e.exit_code(), 2);
    }
}
