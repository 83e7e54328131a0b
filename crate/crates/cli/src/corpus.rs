//! Running every applicable check over a corpus of groups and pairs.

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use weightsmith_core::arith::prime_divisors;
use weightsmith_core::clifford::Verdict;
use weightsmith_core::group::Caps;

use crate::spec::Parsed;
use crate::{run, CacheMode, Command};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: &'static str,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub p: u64,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub unverified: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    pub totals: Totals,
}

impl CorpusReport {
    pub fn failed(&self) -> bool {
        self.totals.fail > 0
    }
}

fn verdict(b: bool) -> Verdict {
    if b {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn flag(v: &Value, path: &[&str]) -> bool {
    let mut cur = v;
    for k in path {
        cur = &cur[*k];
    }
    cur.as_bool().unwrap_or(false)
}

fn push(checks: &mut Vec<Check>, check: &'static str, r: Result<Verdict>) {
    match r {
        Ok(verdict) => checks.push(Check {
            check,
            verdict,
            error: None,
            note: None,
        }),
        Err(e) => checks.push(Check {
            check,
            verdict: Verdict::Fail,
            error: Some(format!("{e:#}")),
            note: None,
        }),
    }
}

fn entry_checks(spec: &Parsed, p: u64, caps: &Caps, mode: &CacheMode) -> Vec<Check> {
    let mut checks = Vec::new();
    match run(Command::Weights, spec, p, caps, mode) {
        Ok(out) => {
            push(&mut checks, "alperin", Ok(verdict(flag(&out.value, &["alperin", "pass"]))));
            let blockwise = out.value["blockwise"]
                .as_array()
                .is_some_and(|rows| rows.iter().all(|r| r["pass"].as_bool() == Some(true)));
            push(&mut checks, "blockwise", Ok(verdict(blockwise)));
        }
        Err(e) => {
            let msg = format!("{e:#}");
            push(&mut checks, "alperin", Err(anyhow::anyhow!(msg.clone())));
            push(&mut checks, "blockwise", Err(anyhow::anyhow!(msg)));
        }
    }
    if spec.normal.is_none() {
        return checks;
    }
    match run(Command::Cover, spec, p, caps, mode) {
        Ok(out) => {
            let v = &out.value;
            let fibers = v["fibers"]
                .as_array()
                .is_some_and(|f| f.iter().all(|x| x.as_array().is_some_and(|a| !a.is_empty())));
            push(&mut checks, "partition", Ok(verdict(fibers && flag(v, &["blocks_consistent"]))));
            let hyp = flag(v, &["hypothesis", "weights_extend"]) && flag(v, &["hypothesis", "constituents_extend"]);
            push(&mut checks, "hypothesis", Ok(verdict(hyp)));
            let pi = if hyp {
                verdict(flag(v, &["pi", "bijective"]))
            } else {
                Verdict::Unverified
            };
            push(&mut checks, "pi", Ok(pi));
            let jg = v["jg"].as_array().is_some_and(|rows| {
                rows.iter()
                    .all(|r| r["fiber_is_orbit"].as_bool() == Some(true) && r["formula_holds"].as_bool() == Some(true))
            });
            push(&mut checks, "jg", Ok(verdict(jg)));
        }
        Err(e) => {
            let msg = format!("{e:#}");
            for c in ["partition", "hypothesis", "pi", "jg"] {
                push(&mut checks, c, Err(anyhow::anyhow!(msg.clone())));
            }
        }
    }
    push(
        &mut checks,
        "delta",
        run(Command::Dgn, spec, p, caps, mode).map(|o| verdict(!o.failed)),
    );
    match run(Command::Audit, spec, p, caps, mode) {
        Ok(out) => checks.push(audit_check(&out.value)),
        Err(e) => push(&mut checks, "audit", Err(e)),
    }
    checks
}

/// Structural premises of the criterion; a pair failing only these lies
/// outside its scope rather than contradicting it.
const SCOPE: [&str; 2] = ["i.derived", "i.centralizer"];

fn audit_check(v: &Value) -> Check {
    let failing: Vec<String> = v["conditions"]
        .as_array()
        .map(|cs| {
            cs.iter()
                .filter(|c| c["verdict"] == "FAIL")
                .filter_map(|c| c["condition"].as_str().map(String::from))
                .collect()
        })
        .unwrap_or_default();
    let (verdict, note) = if failing.is_empty() {
        let overall = serde_json::from_value(v["overall"].clone()).unwrap_or(Verdict::Fail);
        (overall, None)
    } else if failing.iter().all(|c| SCOPE.contains(&c.as_str())) {
        (Verdict::Unverified, Some(format!("outside the criterion's scope: {}", failing.join(", "))))
    } else {
        (Verdict::Fail, Some(format!("failed: {}", failing.join(", "))))
    };
    Check {
        check: "audit",
        verdict,
        error: None,
        note,
    }
}

/// `corpus_run`: all checks on every entry and every prime dividing its
/// order (restricted to `primes` when given), entries in parallel.
pub fn corpus_run(entries: &[Parsed], primes: Option<&[u64]>, caps: &Caps, mode: &CacheMode) -> CorpusReport {
    let tasks: Vec<(&Parsed, u64)> = entries
        .iter()
        .flat_map(|e| {
            prime_divisors(e.group.order())
                .into_iter()
                .filter(|p| primes.is_none_or(|ps| ps.contains(p)))
                .map(move |p| (e, p))
        })
        .collect();
    let reports: Vec<EntryReport> = tasks
        .par_iter()
        .map(|(e, p)| EntryReport {
            name: e.name().to_string(),
            p: *p,
            checks: entry_checks(e, *p, caps, mode),
        })
        .collect();
    let mut totals = Totals::default();
    for c in reports.iter().flat_map(|r| &r.checks) {
        match c.verdict {
            Verdict::Pass => totals.pass += 1,
            Verdict::Fail => totals.fail += 1,
            Verdict::Unverified => totals.unverified += 1,
        }
    }
    CorpusReport {
        entries: reports,
        totals,
    }
}
