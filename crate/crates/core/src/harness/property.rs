use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::gen::{Generator, SampleBase, SampleLabels};
use super::plan::{BaseModel, Fault, LabelModel, TrialPlan};
use super::report::{PropertyResult, Witness};
use crate::configs::{PointConfig, PointEntry, Segment, SegmentConfig};
use crate::error::{Error, Result};
use crate::scanning::{self, ScanConfig, SuspensionDeformation};
use crate::spaces::{Pointed, ProductPoint, Scalar};

/// `Ok(true)`: the check held. `Ok(false)`: the input is outside the
/// property's hypothesis. `Err(msg)`: a counterexample.
pub type Verdict = std::result::Result<bool, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}
pub(crate) use ensure;

/// Compact JSON for messages.
pub(crate) fn js<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_else(|e| format!("<{e}>"))
}

pub(crate) fn stage<T>(name: &str, r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{name}: {e}"))
}

/// The models together with the maps under test; fault fixtures swap in
/// broken versions of single maps here.
pub struct Context<'a, Y, X> {
    pub base: &'a Y,
    pub labels: &'a X,
    pub base_model: BaseModel,
    pub label_model: LabelModel,
    pub fault: Option<Fault>,
    deformation: SuspensionDeformation,
}

impl<'a, Y, X> Context<'a, Y, X> {
    pub fn new(
        base: &'a Y,
        labels: &'a X,
        base_model: BaseModel,
        label_model: LabelModel,
        fault: Option<Fault>,
    ) -> Self {
        let deformation = if fault == Some(Fault::L1Breakpoint) {
            SuspensionDeformation::new(Scalar::new(1, 3)).expect("1/3 is a valid margin")
        } else {
            SuspensionDeformation::default()
        };
        Context { base, labels, base_model, label_model, fault, deformation }
    }

    pub fn deformation(&self) -> &SuspensionDeformation {
        &self.deformation
    }

    /// `φ`, or its off-center fixture.
    pub fn phi<P, L>(&self, w: &SegmentConfig<P, L>) -> Result<PointConfig<ProductPoint<P>, L>>
    where
        P: Ord + Clone,
        L: Ord + Pointed + Clone,
    {
        if self.fault != Some(Fault::PhiOffCenter) {
            return Ok(scanning::phi(w));
        }
        let third = Scalar::new(1, 3);
        let raw = w
            .iter()
            .map(|s| {
                let c = &s.a + &third * s.length();
                PointEntry::new(ProductPoint::line(c, s.y.clone()), s.x.clone())
            })
            .collect();
        PointConfig::normalize(raw)
    }

    /// `λ`, or its skewed fixture.
    pub fn lambda<P, L>(&self, z: &ScanConfig<P, L>) -> Result<SegmentConfig<P, L>>
    where
        P: Ord + Clone,
        L: Ord + Pointed + Clone,
    {
        if self.fault != Some(Fault::LambdaSkew) {
            return scanning::lambda_section(z);
        }
        let third = Scalar::new(1, 3);
        let raw = z
            .iter()
            .map(|e| {
                let (x, s) = match (e.x.label(), e.x.coords()) {
                    (Some(x), Some([s])) => (x, s),
                    _ => return Err(Error::input("λ expects labels in ΣX")),
                };
                Ok(Segment::new(
                    Scalar::half() - Scalar::half() * s,
                    Scalar::one() - &third * s,
                    e.y.clone(),
                    x.clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        SegmentConfig::normalize(raw)
    }
}

/// One named, exactly checkable statement.
pub trait Property<Y: SampleBase, X: SampleLabels> {
    const SUITE: &'static str;
    const NAME: &'static str;
    const ANCHOR: &'static str;

    type Input: Serialize + DeserializeOwned;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input>;

    /// The inputs of one run; random samples unless overridden.
    fn cases(g: &mut Generator<'_, Y, X>, trials: usize) -> Result<Vec<Self::Input>> {
        (0..trials).map(|_| Self::sample(g)).collect()
    }

    fn check(ctx: &Context<'_, Y, X>, input: &Self::Input) -> Verdict;
}

fn stream_id(suite: &str, name: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes().chain([0]).chain(name.bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn guarded<Y, X, P>(ctx: &Context<'_, Y, X>, input: &P::Input) -> Verdict
where
    Y: SampleBase,
    X: SampleLabels,
    P: Property<Y, X>,
{
    match catch_unwind(AssertUnwindSafe(|| P::check(ctx, input))) {
        Ok(v) => v,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            Err(format!("panic: {msg}"))
        }
    }
}

pub fn run_property<Y, X, P>(ctx: &Context<'_, Y, X>, plan: &TrialPlan) -> Result<PropertyResult>
where
    Y: SampleBase,
    X: SampleLabels,
    P: Property<Y, X>,
{
    let mut g = Generator::with_stream(plan, ctx.base, ctx.labels, stream_id(P::SUITE, P::NAME));
    let cases = P::cases(&mut g, plan.trials)?;
    let mut res = PropertyResult {
        suite: P::SUITE.to_string(),
        property: P::NAME.to_string(),
        anchor: P::ANCHOR.to_string(),
        base: ctx.base_model,
        labels: ctx.label_model,
        checked: 0,
        passed: 0,
        failed: 0,
        skipped: 0,
        witness: None,
    };
    for input in &cases {
        match guarded::<Y, X, P>(ctx, input) {
            Ok(true) => {
                res.checked += 1;
                res.passed += 1;
            }
            Ok(false) => res.skipped += 1,
            Err(message) => {
                res.checked += 1;
                res.failed += 1;
                if res.witness.is_none() {
                    res.witness = Some(Witness {
                        suite: P::SUITE.to_string(),
                        property: P::NAME.to_string(),
                        base: ctx.base_model,
                        labels: ctx.label_model,
                        fault: ctx.fault,
                        input: serde_json::to_value(input)?,
                        message,
                    });
                }
            }
        }
    }
    Ok(res)
}

pub fn replay_property<Y, X, P>(ctx: &Context<'_, Y, X>, input: &serde_json::Value) -> Result<Verdict>
where
    Y: SampleBase,
    X: SampleLabels,
    P: Property<Y, X>,
{
    let input: P::Input = serde_json::from_value(input.clone())?;
    Ok(guarded::<Y, X, P>(ctx, &input))
}

/// Declares a suite's property list: generates `run` and `replay` over it.
macro_rules! suite {
    ($($prop:ident),+ $(,)?) => {
        pub(super) fn run<Y: SampleBase, X: SampleLabels>(
            ctx: &Context<'_, Y, X>,
            plan: &TrialPlan,
        ) -> Result<Vec<PropertyResult>> {
            Ok(vec![$(run_property::<Y, X, $prop>(ctx, plan)?),+])
        }

        pub(super) fn replay<Y: SampleBase, X: SampleLabels>(
            ctx: &Context<'_, Y, X>,
            property: &str,
            input: &serde_json::Value,
        ) -> Option<Result<Verdict>> {
            $(
                if property == <$prop as Property<Y, X>>::NAME {
                    return Some(replay_property::<Y, X, $prop>(ctx, input));
                }
            )+
            None
        }
    };
}
pub(crate) use suite;

/// Runs `$body` with `$y` and `$x` bound to references to the selected
/// model instances.
macro_rules! with_models {
    ($base:expr, $labels:expr, |$y:ident, $x:ident| $body:expr) => {
        match $base {
            BaseModel::Sites { size } => {
                let $y = &FiniteSites::new(size);
                with_models!(@labels $labels, $x, $body)
            }
            BaseModel::Line => {
                let $y = &RationalLine;
                with_models!(@labels $labels, $x, $body)
            }
            BaseModel::Plane => {
                let $y = &TaxicabPlane;
                with_models!(@labels $labels, $x, $body)
            }
        }
    };
    (@labels $labels:expr, $x:ident, $body:expr) => {
        match $labels {
            LabelModel::Interval => {
                let $x = &IntervalLabels;
                $body
            }
            LabelModel::Wedge { arcs } => {
                let $x = &WedgeOfArcs::new(arcs);
                $body
            }
            LabelModel::Discrete { labels } => {
                let $x = &DiscreteLabels::new(labels);
                $body
            }
        }
    };
}
pub(crate) use with_models;

/// `(y, x)` pairs of a segment configuration, sorted.
pub(crate) fn label_multiset<P: Clone + Ord, L: Clone + Ord>(w: &SegmentConfig<P, L>) -> Vec<(P, L)> {
    let mut v: Vec<(P, L)> = w.iter().map(|s| (s.y.clone(), s.x.clone())).collect();
    v.sort();
    v
}
