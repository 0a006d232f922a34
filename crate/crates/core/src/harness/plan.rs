use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::Scalar;

/// Which base space `Y` the generators sample from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum BaseModel {
    Sites { size: u32 },
    Line,
    Plane,
}

impl BaseModel {
    pub const ALL: [BaseModel; 3] = [BaseModel::Sites { size: 8 }, BaseModel::Line, BaseModel::Plane];
}

impl Default for BaseModel {
    fn default() -> Self {
        BaseModel::Sites { size: 8 }
    }
}

impl fmt::Display for BaseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseModel::Sites { size } => write!(f, "sites:{size}"),
            BaseModel::Line => f.write_str("line"),
            BaseModel::Plane => f.write_str("plane"),
        }
    }
}

impl FromStr for BaseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = split_arg(s);
        match (name, arg) {
            ("sites", None) => Ok(BaseModel::default()),
            ("sites", Some(n)) => Ok(BaseModel::Sites { size: positive(n)? }),
            ("line", None) => Ok(BaseModel::Line),
            ("plane", None) => Ok(BaseModel::Plane),
            _ => Err(Error::input(format!("unknown base model '{s}' (sites[:N], line, plane)"))),
        }
    }
}

/// Which label space `X` the generators sample from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum LabelModel {
    #[default]
    Interval,
    Wedge { arcs: u32 },
    Discrete { labels: u32 },
}

impl LabelModel {
    pub const ALL: [LabelModel; 3] = [
        LabelModel::Interval,
        LabelModel::Wedge { arcs: 3 },
        LabelModel::Discrete { labels: 3 },
    ];
}

impl fmt::Display for LabelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelModel::Interval => f.write_str("interval"),
            LabelModel::Wedge { arcs } => write!(f, "wedge:{arcs}"),
            LabelModel::Discrete { labels } => write!(f, "discrete:{labels}"),
        }
    }
}

impl FromStr for LabelModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = split_arg(s);
        match (name, arg) {
            ("interval", None) => Ok(LabelModel::Interval),
            ("wedge", None) => Ok(LabelModel::Wedge { arcs: 3 }),
            ("wedge", Some(n)) => Ok(LabelModel::Wedge { arcs: positive(n)? }),
            ("discrete", None) => Ok(LabelModel::Discrete { labels: 3 }),
            ("discrete", Some(n)) => Ok(LabelModel::Discrete { labels: positive(n)? }),
            _ => Err(Error::input(format!(
                "unknown label model '{s}' (interval, wedge[:N], discrete[:N])"
            ))),
        }
    }
}

fn split_arg(s: &str) -> (&str, Option<&str>) {
    match s.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    }
}

fn positive(n: &str) -> Result<u32> {
    match n.parse::<u32>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(Error::input(format!("expected a positive integer, got '{n}'"))),
    }
}

/// Deliberately broken variants of single maps, used to show that the suites
/// can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// `φ` sends a segment to `a + (b - a)/3` instead of its center.
    PhiOffCenter,
    /// `L_t` collapses with margin `1/3` instead of `1/4`.
    L1Breakpoint,
    /// `λ` uses right endpoints `1 - s/3` instead of `1 - s/2`.
    LambdaSkew,
}

impl Fault {
    pub const ALL: [Fault; 3] = [Fault::PhiOffCenter, Fault::L1Breakpoint, Fault::LambdaSkew];

    pub fn name(&self) -> &'static str {
        match self {
            Fault::PhiOffCenter => "phi-off-center",
            Fault::L1Breakpoint => "L1-breakpoint",
            Fault::LambdaSkew => "lambda-skew",
        }
    }

    /// The suite whose properties this fault breaks.
    pub fn target_suite(&self) -> &'static str {
        match self {
            Fault::PhiOffCenter => "equivalence",
            Fault::L1Breakpoint => "dold-thom",
            Fault::LambdaSkew => "loop",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown fault '{s}' (phi-off-center, L1-breakpoint, lambda-skew)"
                ))
            })
    }
}

/// Which part of `C(Y, ΣX)` the `(2a)` collapse sub-suite draws `z` from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum URegion {
    #[default]
    Inside,
    Outside,
    Any,
}

/// Parameters of a randomized audit run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialPlan {
    pub seed: u64,
    pub trials: usize,
    /// Upper bound on the number of entries of generated configurations.
    pub max_entries: usize,
    /// Upper bound on denominators of generated coordinates.
    pub max_denominator: u64,
    /// Fixed time grid; homotopies are also sampled at random times.
    pub times: Vec<Scalar>,
    pub random_times: usize,
    pub base: BaseModel,
    pub labels: LabelModel,
    /// Bias generated points towards near-coincidence.
    pub adversarial: bool,
    pub u_region: URegion,
    pub fault: Option<Fault>,
}

impl Default for TrialPlan {
    fn default() -> Self {
        TrialPlan {
            seed: 0,
            trials: 100,
            max_entries: 6,
            max_denominator: 64,
            times: [(0, 1), (1, 8), (1, 4), (1, 2), (3, 4), (1, 1)]
                .iter()
                .map(|&(n, d)| Scalar::new(n, d))
                .collect(),
            random_times: 10,
            base: BaseModel::default(),
            labels: LabelModel::default(),
            adversarial: false,
            u_region: URegion::default(),
            fault: None,
        }
    }
}

impl TrialPlan {
    pub fn new(seed: u64, trials: usize) -> Self {
        TrialPlan { seed, trials, ..TrialPlan::default() }
    }

    /// Denominators up to `2^16` and near-coincident points.
    pub fn adversarial(seed: u64, trials: usize) -> Self {
        TrialPlan { adversarial: true, max_denominator: 1 << 16, ..TrialPlan::new(seed, trials) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::input("a plan needs at least one trial"));
        }
        let empty = matches!(
            (self.base, self.labels),
            (BaseModel::Sites { size: 0 }, _)
                | (_, LabelModel::Wedge { arcs: 0 } | LabelModel::Discrete { labels: 0 })
        );
        if empty {
            return Err(Error::input("model sizes must be at least 1"));
        }
        if self.max_denominator < 2 {
            return Err(Error::input("max denominator must be at least 2"));
        }
        if let Some(t) = self.times.iter().find(|t| !t.in_unit_interval()) {
            return Err(Error::input(format!("sample time {t} outside [0, 1]")));
        }
        for (n, d) in [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)] {
            let t = Scalar::new(n, d);
            if !self.times.contains(&t) {
                return Err(Error::input(format!("time grid must contain {t}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_plan_is_valid() {
        TrialPlan::default().validate().unwrap();
        TrialPlan::adversarial(3, 10).validate().unwrap();
    }

    #[test]
    fn rejects_bad_plans() {
        assert!(TrialPlan::new(0, 0).validate().is_err());
        let mut p = TrialPlan { times: vec![Scalar::zero(), Scalar::one()], ..TrialPlan::default() };
        assert!(p.validate().is_err());
        p.times.push(Scalar::from_int(2));
        assert!(p.validate().is_err());
    }

    #[test]
    fn selectors_parse() {
        assert_eq!("sites:3".parse::<BaseModel>().unwrap(), BaseModel::Sites { size: 3 });
        assert_eq!("plane".parse::<BaseModel>().unwrap(), BaseModel::Plane);
        assert!("sites:0".parse::<BaseModel>().is_err());
        assert_eq!("wedge:2".parse::<LabelModel>().unwrap(), LabelModel::Wedge { arcs: 2 });
        assert_eq!("l1-breakpoint".parse::<Fault>().unwrap(), Fault::L1Breakpoint);
        assert!("nope".parse::<Fault>().is_err());
        for m in LabelModel::ALL {
            assert_eq!(m.to_string().parse::<LabelModel>().unwrap(), m);
        }
    }
}
