//! Batch runs over a flat configuration file.
//!
//! One entry per line, `#` starts a comment:
//!
//! ```text
//! budget 50000
//! A1:3 1 2 decomp simple similarity:2
//! A2o:3 2 1 variation:2-ii witness
//! tensor A1:3 1,1 2,1
//! branching B3 2,1
//! ```
//!
//! A spec line without checks runs `decomp` and `simple`.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::analysis::{Timings, Verdict};
use crate::artifact::{write_atomic, ArtifactError};
use crate::cartan::{ClassicalType, Weight};
use crate::checks::{
    budget_verdict, check_branching, check_spec, check_tensor, parse_highest, parse_pair,
    parse_spec, Builder, CheckError, CheckKind,
};
use crate::kr::KrSpec;
use crate::variation::VariationKind;

#[derive(Clone, Debug, PartialEq)]
pub enum Task {
    Spec {
        spec: KrSpec,
        check: CheckKind,
        m: usize,
        variation: Option<VariationKind>,
    },
    Tensor(Vec<KrSpec>),
    Branching(ClassicalType, Weight),
}

impl Task {
    fn kind(&self) -> CheckKind {
        match self {
            Task::Spec { check, .. } => *check,
            Task::Tensor(_) => CheckKind::Tensor,
            Task::Branching(..) => CheckKind::Branching,
        }
    }

    fn describe(&self) -> String {
        match self {
            Task::Spec { spec, .. } => spec.to_string(),
            Task::Tensor(specs) => specs
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ⊗ "),
            Task::Branching(ct, lam) => format!("B({lam}) of {ct}"),
        }
    }

    pub fn run(&self, b: &Builder) -> Verdict {
        let res = match self {
            Task::Spec {
                spec,
                check,
                m,
                variation,
            } => check_spec(b, *check, spec, *m, *variation),
            Task::Tensor(specs) => check_tensor(b, specs),
            Task::Branching(ct, lam) => check_branching(b, *ct, lam),
        };
        match res {
            Ok(v) => v,
            Err(e) if e.is_resource() => budget_verdict(self.kind(), self.describe(), &e),
            Err(e) => Verdict {
                check: self.kind().name().to_string(),
                spec: self.describe(),
                verdict: "error".to_string(),
                counterexample: None,
                details: json!({ "reason": e.to_string() }),
                timings: Timings::default(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub budget: Option<usize>,
    pub tasks: Vec<Task>,
}

fn parse_check(word: &str) -> Result<(CheckKind, usize, Option<VariationKind>), CheckError> {
    let (name, arg) = match word.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (word, None),
    };
    let kind: CheckKind = name.parse()?;
    match (kind, arg) {
        (CheckKind::Similarity, a) => {
            let m = match a {
                Some(a) => a
                    .parse()
                    .map_err(|_| CheckError::Usage(format!("bad multiplier in `{word}`")))?,
                None => 2,
            };
            Ok((kind, m, None))
        }
        (CheckKind::Variation, Some(a)) => {
            let v = a.parse().map_err(CheckError::Usage)?;
            Ok((kind, 0, Some(v)))
        }
        (CheckKind::Variation, None) => Err(CheckError::Usage(
            "variation needs a kind, as in variation:1-ii".into(),
        )),
        (CheckKind::Tensor | CheckKind::Branching, _) => {
            Err(CheckError::Usage(format!("{kind} goes on its own line")))
        }
        (_, None) => Ok((kind, 0, None)),
        (_, Some(_)) => Err(CheckError::Usage(format!("`{word}` takes no argument"))),
    }
}

pub fn parse_config(text: &str) -> Result<Config, CheckError> {
    let mut cfg = Config {
        budget: None,
        tasks: Vec::new(),
    };
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: CheckError| CheckError::Usage(format!("line {}: {e}", no + 1));
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "budget" => {
                let [_, n] = words[..] else {
                    return Err(at(CheckError::Usage("expected `budget N`".into())));
                };
                let n = n
                    .parse()
                    .map_err(|_| at(CheckError::Usage(format!("bad budget `{n}`"))))?;
                cfg.budget = Some(n);
            }
            "tensor" => {
                if words.len() < 4 {
                    return Err(at(CheckError::Usage(
                        "expected `tensor TYPE r,s r,s ...`".into(),
                    )));
                }
                let mut specs = Vec::new();
                for w in &words[2..] {
                    let (r, s) = parse_pair(w).map_err(at)?;
                    specs.push(parse_spec(words[1], r, s).map_err(at)?);
                }
                cfg.tasks.push(Task::Tensor(specs));
            }
            "branching" => {
                let [_, ty, parts] = words[..] else {
                    return Err(at(CheckError::Usage(
                        "expected `branching TYPE PARTITION`".into(),
                    )));
                };
                let (ct, lam) = parse_highest(ty, parts).map_err(at)?;
                cfg.tasks.push(Task::Branching(ct, lam));
            }
            ty => {
                if words.len() < 3 {
                    return Err(at(CheckError::Usage("expected `TYPE r s [checks]`".into())));
                }
                let num = |w: &str| {
                    w.parse::<usize>()
                        .map_err(|_| at(CheckError::Usage(format!("`{w}` is not a number"))))
                };
                let spec = parse_spec(ty, num(words[1])?, num(words[2])?).map_err(at)?;
                let checks: Vec<&str> = if words.len() > 3 {
                    words[3..].to_vec()
                } else {
                    vec!["decomp", "simple"]
                };
                for w in checks {
                    let (check, m, variation) = parse_check(w).map_err(at)?;
                    cfg.tasks.push(Task::Spec {
                        spec,
                        check,
                        m,
                        variation,
                    });
                }
            }
        }
    }
    Ok(cfg)
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixReport {
    pub budget: usize,
    pub verdicts: Vec<Verdict>,
}

impl MatrixReport {
    fn count(&self, what: &str) -> usize {
        self.verdicts.iter().filter(|v| v.verdict == what).count()
    }

    /// 1 if any check failed or errored, else 2 if any ran out of budget, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.count("fail") + self.count("error") > 0 {
            1
        } else if self.count("budget") > 0 {
            2
        } else {
            0
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let note = v
                .counterexample
                .clone()
                .or_else(|| {
                    v.details
                        .get("reason")
                        .and_then(|r| r.as_str())
                        .map(String::from)
                })
                .unwrap_or_default();
            writeln!(
                out,
                "{:<7} {:<16} {:<40} {:>10.1} ms  {}",
                v.verdict, v.check, v.spec, v.timings.millis, note
            )
            .unwrap();
        }
        writeln!(
            out,
            "{} checks: {} pass, {} fail, {} budget, {} error",
            self.verdicts.len(),
            self.count("pass"),
            self.count("fail"),
            self.count("budget"),
            self.count("error")
        )
        .unwrap();
        out
    }

    /// One JSON file per verdict plus `summary.json`, each written atomically.
    pub fn write_dir(&self, dir: &Path) -> Result<(), ArtifactError> {
        for (i, v) in self.verdicts.iter().enumerate() {
            let name = format!("{:04}-{}.json", i, v.check.replace(' ', "-"));
            let text = serde_json::to_string_pretty(v).expect("verdict serializes") + "\n";
            write_atomic(&dir.join(name), &text)?;
        }
        let text = serde_json::to_string_pretty(self).expect("report serializes") + "\n";
        write_atomic(&dir.join("summary.json"), &text)
    }
}

/// Run every task on the rayon pool; verdicts come back in config order.
pub fn run_config(cfg: &Config, builder: &Builder) -> MatrixReport {
    let b = Builder {
        budget: cfg.budget.unwrap_or(builder.budget),
        cache: builder.cache.clone(),
    };
    let verdicts = cfg.tasks.par_iter().map(|t| t.run(&b)).collect();
    MatrixReport {
        budget: b.budget,
        verdicts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_passes() {
        let cfg = parse_config("# nothing\n\n").unwrap();
        let rep = run_config(&cfg, &Builder::new(1000));
        assert!(rep.verdicts.is_empty());
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn parses_all_line_kinds() {
        let cfg = parse_config(
            "budget 500\nA1:3 1 1\nC1:2 1 2 witness similarity:3 variation:2-i\ntensor A1:3 1,1 2,1\nbranching B3 2,1\n",
        )
        .unwrap();
        assert_eq!(cfg.budget, Some(500));
        assert_eq!(cfg.tasks.len(), 7);
        assert!(matches!(
            cfg.tasks[3],
            Task::Spec {
                check: CheckKind::Similarity,
                m: 3,
                ..
            }
        ));
        assert!(matches!(
            cfg.tasks[4],
            Task::Spec {
                variation: Some(VariationKind::TwoI),
                ..
            }
        ));
    }

    #[test]
    fn bad_lines_are_usage_errors() {
        for bad in [
            "A1:3 1",
            "A1:3 5 1",
            "budget x",
            "A1:3 1 1 nonsense",
            "tensor A1:3 1,1",
            "A1:3 1 1 variation",
        ] {
            let e = parse_config(bad).unwrap_err();
            assert_eq!(e.exit_code(), 4, "{bad}");
        }
    }

    #[test]
    fn small_budget_marks_entries() {
        let cfg = parse_config("budget 10\nA1:3 1 1\nB1:3 2 2 decomp\n").unwrap();
        let rep = run_config(&cfg, &Builder::new(1000));
        assert_eq!(rep.verdicts[0].verdict, "pass");
        assert_eq!(rep.verdicts[2].verdict, "budget");
        assert_eq!(rep.exit_code(), 2);
    }
}
