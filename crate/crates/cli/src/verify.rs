//! Verification suites behind `halfhex verify`.

use halfhex::aztec::{bit_aligned_agreement, x_view_kernel};
use halfhex::bijections::round_trip;
use halfhex::enumeration::{
    compare_q_enumeration, count_closed, for_each_state, nilp_count_determinant,
    MAX_ENUMERATION_ORDER, MAX_QENUM_BRUTEFORCE_ORDER,
};
use halfhex::io::{Model, Sample};
use halfhex::shuffle::{
    sample_many, verify_adjointness, verify_uniform_preservation, TransitionMatrix, MAX_VERIFY_ORDER,
};
use halfhex::{BitStream, StaircaseTableau};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Bijections,
    Adjoint,
    Uniform,
    Counts,
    Qenum,
    AztecEquivalence,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Bijections => "bijections",
            Suite::Adjoint => "adjoint",
            Suite::Uniform => "uniform",
            Suite::Counts => "counts",
            Suite::Qenum => "qenum",
            Suite::AztecEquivalence => "aztec-equivalence",
        }
    }

    /// Largest order the suite accepts.
    pub fn max_order(self) -> usize {
        match self {
            Suite::Bijections => 1000,
            Suite::Adjoint | Suite::Uniform => MAX_VERIFY_ORDER,
            Suite::Counts => MAX_ENUMERATION_ORDER,
            Suite::Qenum => MAX_QENUM_BRUTEFORCE_ORDER,
            Suite::AztecEquivalence => 1000,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub max_order: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("{mark} {} {}\n", c.name, c.detail));
        }
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict} {} (max order {}, {} checks)\n",
            self.suite,
            self.max_order,
            self.checks.len()
        ));
        out
    }
}

fn check(name: String, passed: bool, detail: Value) -> Check {
    Check { name, passed, detail }
}

/// Bijections are checked on every state up to this order and on random
/// samples at the requested order beyond it.
const EXHAUSTIVE_BIJECTION_ORDER: usize = 4;

fn all_encodings_agree(t: &StaircaseTableau) -> bool {
    round_trip(t).as_ref() == Ok(t)
        && Model::ALL.iter().all(|&m| {
            Sample::encode(m, t)
                .and_then(|s| s.decode())
                .is_ok_and(|back| &back == t)
        })
}

pub fn run(suite: Suite, max_order: usize, seed: u64, seeds: usize) -> anyhow::Result<Report> {
    let mut checks = Vec::new();
    match suite {
        Suite::Bijections => {
            for n in 0..=max_order.min(EXHAUSTIVE_BIJECTION_ORDER) {
                let mut failures = 0u64;
                let states = for_each_state(n, |t| {
                    if !all_encodings_agree(t) {
                        failures += 1;
                    }
                });
                checks.push(check(
                    format!("round trip, all states of order {n}"),
                    failures == 0,
                    json!({ "states": states, "failures": failures }),
                ));
            }
            if max_order > EXHAUSTIVE_BIJECTION_ORDER {
                let failures = sample_many(max_order, seeds, seed)
                    .par_iter()
                    .filter(|t| !all_encodings_agree(t))
                    .count();
                checks.push(check(
                    format!("round trip, {seeds} samples of order {max_order}"),
                    failures == 0,
                    json!({ "samples": seeds, "seed": seed, "failures": failures }),
                ));
            }
        }
        Suite::Adjoint => {
            for n in 1..=max_order {
                let r = verify_adjointness(n)?;
                checks.push(check(format!("adjointness, order {n}"), r.passed(), serde_json::to_value(&r)?));
            }
        }
        Suite::Uniform => {
            for n in 1..=max_order {
                let r = verify_uniform_preservation(n)?;
                checks.push(check(
                    format!("uniform preservation, order {n}"),
                    r.passed(),
                    serde_json::to_value(&r)?,
                ));
            }
        }
        Suite::Counts => {
            let mut previous: Option<u64> = None;
            for n in 0..=max_order {
                let count = for_each_state(n, |_| {});
                let closed = count_closed(n);
                let xs: Vec<u64> = (1..=n as u64).map(|i| 2 * i).collect();
                let det = nilp_count_determinant(&xs)?;
                let recurrence = previous.is_none_or(|p| count == p << n);
                let passed = BigInt::from(count) == BigInt::from(closed.clone()) && det == BigInt::from(count) && recurrence;
                checks.push(check(
                    format!("|ST({n})| = 2^{}", n * (n + 1) / 2),
                    passed,
                    json!({
                        "enumerated": count,
                        "closed": closed.to_string(),
                        "determinant": det.to_string(),
                        "recurrence": recurrence,
                    }),
                ));
                previous = Some(count);
            }
        }
        Suite::Qenum => {
            for n in 0..=max_order {
                let c = compare_q_enumeration(n)?;
                checks.push(check(
                    format!("volume generating function, order {n}"),
                    c.matches(),
                    json!({
                        "shift": c.shift,
                        "bruteforce": c.bruteforce.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "closed": c.closed.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    }),
                ));
            }
        }
        Suite::AztecEquivalence => {
            for n in 1..=max_order.min(3) {
                let x = x_view_kernel(n)?;
                let a = TransitionMatrix::forward(n)?;
                checks.push(check(
                    format!("exact kernels agree, order {n}"),
                    x.rows == a.rows,
                    json!({ "sources": a.sources.len(), "targets": a.targets.len() }),
                ));
            }
            let mut failures = Vec::new();
            for k in 0..seeds as u64 {
                if !bit_aligned_agreement(max_order, BitStream::new(seed + k))? {
                    failures.push(seed + k);
                }
            }
            checks.push(check(
                format!("bit-aligned trajectories agree, order {max_order}, {seeds} seeds"),
                failures.is_empty(),
                json!({ "first_seed": seed, "seeds": seeds, "failing_seeds": failures }),
            ));
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report {
        suite: suite.name(),
        max_order,
        passed,
        checks,
    })
}
