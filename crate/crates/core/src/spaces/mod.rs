//! Scalars, weak-metric base spaces and based label spaces.
//!
//! A [`BaseSpace`] supplies the points configurations live on together with a
//! weak metric `d` (nonnegative, zero exactly on the diagonal). A
//! [`LabelSpace`] supplies labels with a basepoint, an open neighborhood `W` of
//! the basepoint and a based contraction `K_t` with `K_0 = id` and
//! `K_1(W) = {*}`.

mod base;
mod labels;
mod scalar;

use std::fmt;

use serde::de::DeserializeOwned;
use serde::Serialize;

pub use base::{
    embed_line_in_plane, embed_sites_in_line, product_base_space, FiniteSites, LinePoint,
    PlanePoint, Product, ProductPoint, RationalLine, Site, TaxicabPlane,
};
pub use labels::{
    interval_label_space, DiscreteLabel, DiscreteLabels, IntervalLabel, IntervalLabels,
    WedgeLabel, WedgeOfArcs,
};
pub use scalar::Scalar;

/// Types with a distinguished basepoint value.
pub trait Pointed {
    fn is_basepoint(&self) -> bool;
}

/// Requirements shared by every carrier-point type.
pub trait Carrier:
    Clone + Ord + fmt::Debug + Serialize + DeserializeOwned + Send + Sync + 'static
{
}

impl<T> Carrier for T where
    T: Clone + Ord + fmt::Debug + Serialize + DeserializeOwned + Send + Sync + 'static
{
}

/// A space `Y` with a weak metric. The `Ord` on points is only used to put
/// configurations in canonical order.
pub trait BaseSpace: Clone + fmt::Debug + Send + Sync {
    type Point: Carrier;

    fn name(&self) -> &'static str;

    /// Weak metric: `d(y, y') >= 0`, and zero iff `y == y'`.
    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Scalar;
}

/// A nondegenerately based space `X` with its basepoint contraction data.
pub trait LabelSpace: Clone + fmt::Debug + Send + Sync {
    type Label: Carrier + Pointed;

    fn name(&self) -> &'static str;

    fn basepoint(&self) -> Self::Label;

    /// Membership in the chosen open neighborhood `W` of the basepoint.
    fn in_w(&self, x: &Self::Label) -> bool;

    /// The based homotopy `K(t, x)`, `t` in `[0, 1]`.
    fn contract(&self, t: &Scalar, x: &Self::Label) -> Self::Label;

    fn is_path_connected(&self) -> bool;
}

/// The function `g` on `R^n x Y` used to size the segments around
/// configuration points:
///
/// `g = 1/2 * (m^2 + d) / (m + d + 1)` with `m = |a - a'|_inf`, `d = d_Y(y, y')`.
///
/// For `n = 1` the sup norm is the absolute value. Whenever `y == y'` the
/// result is at most `m / 2`.
pub fn g_metric<Y: BaseSpace>(
    space: &Y,
    a: &[Scalar],
    y: &Y::Point,
    a2: &[Scalar],
    y2: &Y::Point,
) -> Scalar {
    let m = a
        .iter()
        .zip(a2)
        .map(|(u, v)| (u - v).abs())
        .fold(Scalar::zero(), |acc, x| acc.max(x));
    let d = space.distance(y, y2);
    let num = &(&m * &m) + &d;
    let den = &(&m + &d) + &Scalar::one();
    Scalar::half() * (num / den)
}

/// JSON helpers for `{"model": ..., "value": ...}` tagged carrier points.
pub(crate) mod tagged {
    use serde::de::{DeserializeOwned, Error as _};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize)]
    struct TaggedRef<'a, T> {
        model: &'a str,
        value: &'a T,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct TaggedOwned<T> {
        model: String,
        value: T,
    }

    pub fn serialize<S: Serializer, T: Serialize>(
        serializer: S,
        model: &str,
        value: &T,
    ) -> Result<S::Ok, S::Error> {
        TaggedRef { model, value }.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: DeserializeOwned>(
        deserializer: D,
        model: &str,
    ) -> Result<T, D::Error> {
        let raw = TaggedOwned::<T>::deserialize(deserializer)?;
        if raw.model != model {
            return Err(D::Error::custom(format!(
                "expected model {model:?}, found {:?}",
                raw.model
            )));
        }
        Ok(raw.value)
    }
}
