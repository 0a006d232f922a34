use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::spaces::{tagged, Pointed, Scalar};

/// A point `[x, s_1, .., s_n]` of the iterated suspension `Σ^n X`.
///
/// The classes with `x = *` or any `s_m ∈ {0, 1}` are all the basepoint; the
/// constructor applies that collapse, so two labels are equal exactly when
/// they denote the same point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuspensionLabel<L> {
    Basepoint,
    Point { x: L, s: Vec<Scalar> },
}

impl<L: Pointed> SuspensionLabel<L> {
    pub fn new(x: L, s: Vec<Scalar>) -> Self {
        assert!(!s.is_empty(), "suspension coordinate list is empty");
        if x.is_basepoint() || s.iter().any(|c| !c.in_open_unit_interval()) {
            SuspensionLabel::Basepoint
        } else {
            SuspensionLabel::Point { x, s }
        }
    }

    /// A point `[x, s]` of `ΣX`.
    pub fn single(x: L, s: Scalar) -> Self {
        Self::new(x, vec![s])
    }
}

impl<L> SuspensionLabel<L> {
    pub fn label(&self) -> Option<&L> {
        match self {
            SuspensionLabel::Basepoint => None,
            SuspensionLabel::Point { x, .. } => Some(x),
        }
    }

    pub fn coords(&self) -> Option<&[Scalar]> {
        match self {
            SuspensionLabel::Basepoint => None,
            SuspensionLabel::Point { s, .. } => Some(s),
        }
    }

    /// Number of suspension coordinates; `None` for the basepoint.
    pub fn dim(&self) -> Option<usize> {
        self.coords().map(<[Scalar]>::len)
    }
}

impl<L> Pointed for SuspensionLabel<L> {
    fn is_basepoint(&self) -> bool {
        matches!(self, SuspensionLabel::Basepoint)
    }
}

#[derive(Serialize)]
struct PointRef<'a, L> {
    x: &'a L,
    s: &'a [Scalar],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRepr<L> {
    x: L,
    s: Vec<Scalar>,
}

impl<L: Serialize> Serialize for SuspensionLabel<L> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            SuspensionLabel::Basepoint => tagged::serialize(ser, "suspension", &()),
            SuspensionLabel::Point { x, s } => {
                tagged::serialize(ser, "suspension", &PointRef { x, s })
            }
        }
    }
}

impl<'de, L> Deserialize<'de> for SuspensionLabel<L>
where
    L: Pointed + serde::de::DeserializeOwned,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Option<PointRepr<L>> = tagged::deserialize(d, "suspension")?;
        Ok(match raw {
            None => SuspensionLabel::Basepoint,
            Some(PointRepr { s, .. }) if s.is_empty() => {
                return Err(serde::de::Error::custom("suspension label needs coordinates"))
            }
            Some(PointRepr { x, s }) => SuspensionLabel::new(x, s),
        })
    }
}
