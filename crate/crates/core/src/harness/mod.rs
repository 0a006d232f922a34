//! Seeded generators and exact property suites.
//!
//! A suite samples inputs from a [`TrialPlan`], evaluates the maps exactly
//! and compares results with `==`. Every failure carries a [`Witness`] that
//! [`replay`] re-runs in isolation.

mod coefficient;
mod dold_thom;
mod equivalence;
mod gen;
mod loop_suite;
mod plan;
mod property;
mod report;

pub use dold_thom::breakpoint_times;
pub use gen::{Draw, Generator, SampleBase, SampleLabels};
pub use plan::{BaseModel, Fault, LabelModel, TrialPlan, URegion};
pub use property::{Context, Property, Verdict};
pub use report::{AuditReport, PropertyResult, Witness, REPORT_NOTE};

pub(crate) use property::with_models;

use crate::error::{Error, Result};
use crate::spaces::{DiscreteLabels, FiniteSites, IntervalLabels, RationalLine, TaxicabPlane, WedgeOfArcs};

pub const SUITES: [&str; 4] = [
    equivalence::SUITE,
    coefficient::SUITE,
    loop_suite::SUITE,
    dold_thom::SUITE,
];

fn run_named(suite: &str, plan: &TrialPlan) -> Result<AuditReport> {
    plan.validate()?;
    let properties = with_models!(plan.base, plan.labels, |y, x| {
        let ctx = Context::new(y, x, plan.base, plan.labels, plan.fault);
        match suite {
            equivalence::SUITE => equivalence::run(&ctx, plan),
            coefficient::SUITE => coefficient::run(&ctx, plan),
            loop_suite::SUITE => loop_suite::run(&ctx, plan),
            dold_thom::SUITE => dold_thom::run(&ctx, plan),
            _ => Err(Error::input(format!("unknown suite '{suite}'"))),
        }
    })?;
    let mut report = AuditReport::new(suite, plan.seed, plan.trials, plan.fault);
    report.properties = properties;
    Ok(report)
}

/// Runs a suite by name; `all` runs every suite in turn.
pub fn run_suite(suite: &str, plan: &TrialPlan) -> Result<AuditReport> {
    if suite == "all" {
        let mut out: Option<AuditReport> = None;
        for s in SUITES {
            let r = run_named(s, plan)?;
            out = Some(match out {
                Some(acc) => acc.merge(r),
                None => r,
            });
        }
        let mut report = out.expect("at least one suite");
        report.suite = "all".into();
        return Ok(report);
    }
    run_named(suite, plan)
}

/// Runs a suite once per model combination and concatenates the reports.
pub fn run_suite_models(
    suite: &str,
    plan: &TrialPlan,
    bases: &[BaseModel],
    labels: &[LabelModel],
) -> Result<AuditReport> {
    let mut report = AuditReport::new(suite, plan.seed, plan.trials, plan.fault);
    for &base in bases {
        for &label in labels {
            let r = run_suite(suite, &TrialPlan { base, labels: label, ..plan.clone() })?;
            report.properties.extend(r.properties);
        }
    }
    Ok(report)
}

/// Kinds accepted by [`generate`].
pub const GENERATE_KINDS: [&str; 6] = ["point", "line", "segment", "path", "scan", "box"];

/// One generated configuration as JSON. `dim` applies to `line` and `box`.
pub fn generate(kind: &str, plan: &TrialPlan, dim: usize) -> Result<serde_json::Value> {
    plan.validate()?;
    if dim == 0 {
        return Err(Error::input("dimension must be at least 1"));
    }
    with_models!(plan.base, plan.labels, |y, x| {
        let mut g = Generator::new(plan, y, x);
        let v = match kind {
            "point" => serde_json::to_value(g.point_config()?),
            "line" => serde_json::to_value(g.product_config(dim)?),
            "segment" => serde_json::to_value(g.segment_config()?),
            "path" => serde_json::to_value(g.path_point()?),
            "scan" => serde_json::to_value(g.scan_config()?),
            "box" => serde_json::to_value(g.box_config(dim)?),
            _ => {
                return Err(Error::input(format!(
                    "unknown kind '{kind}' (expected one of {})",
                    GENERATE_KINDS.join(", ")
                )))
            }
        };
        Ok(v?)
    })
}

/// Retraction, deformation validity and equivariance of `C_1 ≃ C(R x -)`.
pub fn run_equivalence_suite(plan: &TrialPlan) -> Result<AuditReport> {
    run_named(equivalence::SUITE, plan)
}

/// Clauses (1), (2a), (2b), (2c) of the distinguished-map criterion for `q`.
pub fn run_quasifibration_audit(plan: &TrialPlan) -> Result<AuditReport> {
    run_named(dold_thom::SUITE, plan)
}

/// Loop, section, quotient and box properties of the scanning map.
pub fn run_loop_suite(plan: &TrialPlan) -> Result<AuditReport> {
    run_named(loop_suite::SUITE, plan)
}

/// Laws of the coefficient system and of the configuration operations.
pub fn run_coefficient_suite(plan: &TrialPlan) -> Result<AuditReport> {
    run_named(coefficient::SUITE, plan)
}

/// Re-runs the check recorded in a witness, under the witness's models and
/// fault. `Err(msg)` inside the result is a reproduced failure.
pub fn replay(w: &Witness) -> Result<Verdict> {
    with_models!(w.base, w.labels, |y, x| {
        let ctx = Context::new(y, x, w.base, w.labels, w.fault);
        let found = match w.suite.as_str() {
            equivalence::SUITE => equivalence::replay(&ctx, &w.property, &w.input),
            coefficient::SUITE => coefficient::replay(&ctx, &w.property, &w.input),
            loop_suite::SUITE => loop_suite::replay(&ctx, &w.property, &w.input),
            dold_thom::SUITE => dold_thom::replay(&ctx, &w.property, &w.input),
            _ => None,
        };
        found.unwrap_or_else(|| {
            Err(Error::input(format!("unknown property '{}/{}'", w.suite, w.property)))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> TrialPlan {
        TrialPlan::new(seed, 40)
    }

    #[test]
    fn default_suites_pass() {
        for suite in SUITES {
            let r = run_suite(suite, &small(1)).unwrap();
            assert!(r.passed(), "{}", r.to_text());
            assert!(r.properties.iter().all(|p| p.checked > 0), "{}", r.to_text());
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suite("loop", &small(9)).unwrap();
        let b = run_suite("loop", &small(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn faults_fail_and_replay() {
        for fault in Fault::ALL {
            let plan = TrialPlan { fault: Some(fault), ..small(2) };
            let r = run_suite(fault.target_suite(), &plan).unwrap();
            assert!(!r.passed(), "{fault} went unnoticed");
            let w = r.first_witness().unwrap();
            assert!(replay(w).unwrap().is_err());
            let clean = Witness { fault: None, ..w.clone() };
            assert_eq!(replay(&clean).unwrap(), Ok(true));
        }
    }

    #[test]
    fn outside_u_is_vacuous() {
        let plan = TrialPlan { u_region: URegion::Outside, ..small(3) };
        let r = run_quasifibration_audit(&plan).unwrap();
        let collapse = r.property("clause-2a-collapse").next().unwrap();
        assert!(collapse.is_vacuous() && collapse.is_pass());
    }

    #[test]
    fn generate_kinds() {
        let plan = TrialPlan { max_entries: 0, ..small(4) };
        assert_eq!(generate("segment", &plan, 1).unwrap(), serde_json::json!([]));
        let plan = small(4);
        for kind in GENERATE_KINDS {
            assert_eq!(generate(kind, &plan, 2).unwrap(), generate(kind, &plan, 2).unwrap());
        }
        assert!(generate("nope", &plan, 1).is_err());
    }

    #[test]
    fn unknown_suite_is_an_input_error() {
        assert!(run_suite("nope", &small(0)).unwrap_err().is_input());
    }
}
