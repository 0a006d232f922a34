use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{tagged, LabelSpace, Pointed, Scalar};

fn quarter() -> Scalar {
    Scalar::new(1, 4)
}

/// `K_1` on `[0, 1]`: zero on `[0, 1/4]`, then `(4x - 1) / 3` up to `1`.
fn collapse_unit(x: &Scalar) -> Scalar {
    if *x <= quarter() {
        Scalar::zero()
    } else {
        (Scalar::from_int(4) * x - Scalar::one()) / Scalar::from_int(3)
    }
}

/// `K_t(x) = (1 - t) x + t K_1(x)`.
fn contract_unit(t: &Scalar, x: &Scalar) -> Scalar {
    x.lerp(&collapse_unit(x), t)
}

/// `X = [0, 1]` with basepoint `0`, `W = [0, 1/4)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntervalLabels;

pub fn interval_label_space() -> IntervalLabels {
    IntervalLabels
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalLabel(Scalar);

impl IntervalLabel {
    pub fn new(x: Scalar) -> Option<Self> {
        x.in_unit_interval().then_some(IntervalLabel(x))
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }
}

impl Pointed for IntervalLabel {
    fn is_basepoint(&self) -> bool {
        self.0.is_zero()
    }
}

impl LabelSpace for IntervalLabels {
    type Label = IntervalLabel;

    fn name(&self) -> &'static str {
        "interval"
    }

    fn basepoint(&self) -> IntervalLabel {
        IntervalLabel(Scalar::zero())
    }

    fn in_w(&self, x: &IntervalLabel) -> bool {
        x.0 < quarter()
    }

    fn contract(&self, t: &Scalar, x: &IntervalLabel) -> IntervalLabel {
        IntervalLabel(contract_unit(t, &x.0))
    }

    fn is_path_connected(&self) -> bool {
        true
    }
}

/// A wedge of `arcs` copies of `[0, 1]` joined at `0`. Each arc carries the
/// interval model's `W` and `K_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeOfArcs {
    arcs: u32,
}

impl WedgeOfArcs {
    pub fn new(arcs: u32) -> Self {
        assert!(arcs >= 1, "a wedge needs at least one arc");
        WedgeOfArcs { arcs }
    }

    pub fn arcs(&self) -> u32 {
        self.arcs
    }
}

/// A point of a wedge of arcs; the basepoint is stored as arc `0`, position `0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeLabel {
    arc: u32,
    pos: Scalar,
}

impl WedgeLabel {
    pub fn basepoint() -> Self {
        WedgeLabel { arc: 0, pos: Scalar::zero() }
    }

    /// Arcs are numbered from 1. Returns `None` outside `[0, 1]` or for arc 0
    /// with a nonzero position.
    pub fn new(arc: u32, pos: Scalar) -> Option<Self> {
        if !pos.in_unit_interval() {
            return None;
        }
        if pos.is_zero() {
            return Some(Self::basepoint());
        }
        (arc >= 1).then_some(WedgeLabel { arc, pos })
    }

    pub fn arc(&self) -> u32 {
        self.arc
    }

    pub fn pos(&self) -> &Scalar {
        &self.pos
    }
}

impl Pointed for WedgeLabel {
    fn is_basepoint(&self) -> bool {
        self.pos.is_zero()
    }
}

impl LabelSpace for WedgeOfArcs {
    type Label = WedgeLabel;

    fn name(&self) -> &'static str {
        "wedge"
    }

    fn basepoint(&self) -> WedgeLabel {
        WedgeLabel::basepoint()
    }

    fn in_w(&self, x: &WedgeLabel) -> bool {
        x.pos < quarter()
    }

    fn contract(&self, t: &Scalar, x: &WedgeLabel) -> WedgeLabel {
        WedgeLabel::new(x.arc, contract_unit(t, &x.pos)).expect("contraction stays in [0, 1]")
    }

    fn is_path_connected(&self) -> bool {
        true
    }
}

/// The discrete space `{0, 1, .., labels}` based at `0`. Here `W = {*}` and
/// `K_t` is the identity; the space is not path-connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteLabels {
    labels: u32,
}

impl DiscreteLabels {
    pub fn new(labels: u32) -> Self {
        assert!(labels >= 1, "need at least one non-basepoint label");
        DiscreteLabels { labels }
    }

    pub fn labels(&self) -> u32 {
        self.labels
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscreteLabel(pub u32);

impl Pointed for DiscreteLabel {
    fn is_basepoint(&self) -> bool {
        self.0 == 0
    }
}

impl LabelSpace for DiscreteLabels {
    type Label = DiscreteLabel;

    fn name(&self) -> &'static str {
        "discrete"
    }

    fn basepoint(&self) -> DiscreteLabel {
        DiscreteLabel(0)
    }

    fn in_w(&self, x: &DiscreteLabel) -> bool {
        x.is_basepoint()
    }

    fn contract(&self, _t: &Scalar, x: &DiscreteLabel) -> DiscreteLabel {
        *x
    }

    fn is_path_connected(&self) -> bool {
        false
    }
}

impl Serialize for IntervalLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        tagged::serialize(s, "interval", &self.0)
    }
}

impl<'de> Deserialize<'de> for IntervalLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let x: Scalar = tagged::deserialize(d, "interval")?;
        IntervalLabel::new(x).ok_or_else(|| D::Error::custom("interval label outside [0, 1]"))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WedgeRepr {
    arc: u32,
    t: Scalar,
}

impl Serialize for WedgeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = WedgeRepr { arc: self.arc, t: self.pos.clone() };
        tagged::serialize(s, "wedge", &repr)
    }
}

impl<'de> Deserialize<'de> for WedgeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r: WedgeRepr = tagged::deserialize(d, "wedge")?;
        WedgeLabel::new(r.arc, r.t).ok_or_else(|| D::Error::custom("invalid wedge label"))
    }
}

impl Serialize for DiscreteLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        tagged::serialize(s, "discrete", &self.0)
    }
}

impl<'de> Deserialize<'de> for DiscreteLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        tagged::deserialize(d, "discrete").map(DiscreteLabel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(n: i64, d: i64) -> IntervalLabel {
        IntervalLabel::new(Scalar::new(n, d)).unwrap()
    }

    #[test]
    fn interval_contraction_examples() {
        let x = interval_label_space();
        for t in [Scalar::zero(), Scalar::new(1, 3), Scalar::one()] {
            assert!(x.contract(&t, &x.basepoint()).is_basepoint());
        }
        assert!(x.contract(&Scalar::one(), &lab(1, 4)).is_basepoint());
        assert_eq!(x.contract(&Scalar::one(), &lab(1, 1)), lab(1, 1));
        assert_eq!(x.contract(&Scalar::one(), &lab(1, 2)), lab(1, 3));
        assert_eq!(x.contract(&Scalar::half(), &lab(1, 8)), lab(1, 16));
    }

    #[test]
    fn interval_contraction_axioms_on_grid() {
        let x = interval_label_space();
        for n in 0..=64 {
            let l = lab(n, 64);
            assert_eq!(x.contract(&Scalar::zero(), &l), l);
            if x.in_w(&l) {
                assert!(x.contract(&Scalar::one(), &l).is_basepoint());
            }
        }
    }

    #[test]
    fn wedge_normalizes_basepoint() {
        let a = WedgeLabel::new(3, Scalar::zero()).unwrap();
        assert_eq!(a, WedgeLabel::basepoint());
        assert!(WedgeLabel::new(0, Scalar::half()).is_none());
        let w = WedgeOfArcs::new(3);
        let x = WedgeLabel::new(2, Scalar::new(1, 5)).unwrap();
        assert!(w.in_w(&x));
        assert!(w.contract(&Scalar::one(), &x).is_basepoint());
        let y = WedgeLabel::new(2, Scalar::one()).unwrap();
        assert_eq!(w.contract(&Scalar::one(), &y), y);
    }

    #[test]
    fn discrete_contraction_is_identity() {
        let d = DiscreteLabels::new(2);
        assert!(!d.is_path_connected());
        assert_eq!(d.contract(&Scalar::one(), &DiscreteLabel(2)), DiscreteLabel(2));
        assert!(d.in_w(&DiscreteLabel(0)));
        assert!(!d.in_w(&DiscreteLabel(1)));
    }

    #[test]
    fn label_json() {
        let v = serde_json::to_value(lab(1, 2)).unwrap();
        assert_eq!(v["model"], "interval");
        let bad = serde_json::json!({"model": "interval", "value": 2});
        assert!(serde_json::from_value::<IntervalLabel>(bad).is_err());
        let w: WedgeLabel = serde_json::from_value(
            serde_json::json!({"model": "wedge", "value": {"arc": 2, "t": "1/2"}}),
        )
        .unwrap();
        assert_eq!(w.arc(), 2);
    }
}
