//! The twelve acceptance criteria at full scale. Prints one line per
//! criterion and exits nonzero if any is red.

use std::time::{Duration, Instant};

use labconf::harness::{self, AuditReport, BaseModel, Fault, TrialPlan, Witness};

const SEED: u64 = 20_240_601;
const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Timed {
    report: AuditReport,
    took: Duration,
}

fn run(suite: &str, plan: &TrialPlan) -> Result<Timed, String> {
    let start = Instant::now();
    let report = harness::run_suite(suite, plan).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if took > TIME_LIMIT {
        return Err(format!("{suite} took {took:?} at {} trials", plan.trials));
    }
    Ok(Timed { report, took })
}

/// `property` ran at least `min` applicable trials with no failures.
fn clean(t: &Timed, property: &str, min: usize) -> Result<String, String> {
    let r = t
        .report
        .property(property)
        .next()
        .ok_or_else(|| format!("no property {property} in {}", t.report.suite))?;
    if r.failed > 0 {
        let msg = r.witness.as_ref().map_or("", |w| w.message.as_str());
        return Err(format!("{property}: {} of {} failed: {msg}", r.failed, r.checked));
    }
    if r.checked < min {
        return Err(format!("{property}: only {} applicable trials, need {min}", r.checked));
    }
    Ok(format!("{property} {}/{} [{} {:.2?}]", r.passed, r.checked, r.base, t.took))
}

fn all(parts: Vec<Result<String, String>>) -> Result<String, String> {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn plan(trials: usize) -> TrialPlan {
    TrialPlan::new(SEED, trials)
}

fn criterion_1() -> Result<String, String> {
    let mut parts = Vec::new();
    for base in BaseModel::ALL {
        let t = run("equivalence", &TrialPlan { base, ..plan(500) })?;
        parts.push(clean(&t, "retraction", 500));
    }
    all(parts)
}

fn fault_case(fault: Fault) -> Result<String, String> {
    let p = TrialPlan { fault: Some(fault), ..plan(500) };
    let t = run(fault.target_suite(), &p)?;
    if t.report.passed() {
        return Err(format!("{fault}: {} passed", fault.target_suite()));
    }
    let w = t.report.first_witness().ok_or("failure without witness")?;
    let round: Witness = serde_json::from_str(&serde_json::to_string(w).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    match harness::replay(&round) {
        Ok(Err(_)) => {}
        other => return Err(format!("{fault}: witness replayed to {other:?}")),
    }
    let clean = Witness { fault: None, ..round };
    match harness::replay(&clean) {
        Ok(Ok(true)) => {}
        other => return Err(format!("{fault}: witness without fault replayed to {other:?}")),
    }
    Ok(format!("{fault} caught by {}/{}", w.suite, w.property))
}

fn main() {
    let started = Instant::now();
    let eq = run("equivalence", &plan(500));
    let lp = run("loop", &plan(500));
    let dt = run("dold-thom", &plan(500));
    let lp200 = run("loop", &plan(200));
    let co200 = run("coefficient-system", &plan(200));

    let with = |r: &Result<Timed, String>, f: &dyn Fn(&Timed) -> Result<String, String>| match r {
        Ok(t) => f(t),
        Err(e) => Err(e.clone()),
    };

    let results: Vec<(&str, Result<String, String>)> = vec![
        ("exact retraction phi(phi_bar(k)) = k, every base model", criterion_1()),
        ("deformation validity on the time grid", with(&eq, &|t| clean(t, "deformation-validity", 500))),
        ("loop endpoints", with(&lp, &|t| clean(t, "loop-endpoints", 500))),
        ("lambda is a section at 1/2", with(&lp, &|t| clean(t, "lambda-section", 500))),
        ("q H_t = h_t q on breakpoint grids", with(&dt, &|t| clean(t, "clause-2b-commutation", 500))),
        ("h_1 lowers the level on U, h_t never raises it", with(&dt, &|t| {
            all(vec![clean(t, "clause-2a-collapse", 500), clean(t, "clause-2a-filtration", 500)])
        })),
        ("fiber triviality over strata", with(&dt, &|t| {
            all(vec![clean(t, "clause-1-psi", 500), clean(t, "clause-1-fiber-homotopy", 500)])
        })),
        ("q ignores segments starting at or after s", with(&lp, &|t| clean(t, "q-quotient-soundness", 500))),
        ("fiber diagram multiset identity", with(&dt, &|t| clean(t, "clause-2c-multiset", 500))),
        ("coefficient system composition laws", with(&co200, &|t| {
            all(vec![clean(t, "composition-exhaustive", 2165), clean(t, "composition-random", 200)])
        })),
        ("box coherence at n = 1 and n = 2 boundary", with(&lp200, &|t| {
            all(vec![clean(t, "box-n1-coherence", 200), clean(t, "box-n2-boundary", 200)])
        })),
        ("fault fixtures are caught and replay", all(Fault::ALL.into_iter().map(fault_case).collect())),
    ];

    let mut red = 0;
    for (k, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(e) => {
                red += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass in {:.1?}", results.len() - red, results.len(), started.elapsed());
    if red > 0 {
        std::process::exit(1);
    }
}
