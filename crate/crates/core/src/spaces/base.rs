use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{tagged, BaseSpace, Scalar};
use crate::error::{Error, Result};

/// A finite set `{0, .., size - 1}` with the discrete metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSites {
    size: u32,
}

impl FiniteSites {
    pub fn new(size: u32) -> Self {
        assert!(size > 0, "empty site set");
        FiniteSites { size }
    }

    pub fn size(&self) -> u32 {
        self.size
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site(pub u32);

impl BaseSpace for FiniteSites {
    type Point = Site;

    fn name(&self) -> &'static str {
        "sites"
    }

    fn distance(&self, a: &Site, b: &Site) -> Scalar {
        if a == b {
            Scalar::zero()
        } else {
            Scalar::one()
        }
    }
}

/// The rationals with `d(y, y') = |y - y'|`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalLine;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinePoint(pub Scalar);

impl BaseSpace for RationalLine {
    type Point = LinePoint;

    fn name(&self) -> &'static str {
        "line"
    }

    fn distance(&self, a: &LinePoint, b: &LinePoint) -> Scalar {
        (&a.0 - &b.0).abs()
    }
}

/// The rational plane with the taxicab (L1) metric.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TaxicabPlane;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanePoint(pub Scalar, pub Scalar);

impl BaseSpace for TaxicabPlane {
    type Point = PlanePoint;

    fn name(&self) -> &'static str {
        "plane"
    }

    fn distance(&self, a: &PlanePoint, b: &PlanePoint) -> Scalar {
        (&a.0 - &b.0).abs() + (&a.1 - &b.1).abs()
    }
}

/// `R^n x Y` with metric `max(|a - a'|_inf, d_Y(y, y'))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product<Y> {
    dim: usize,
    base: Y,
}

/// A point `(a, y)` of `R^n x Y`; ordered lexicographically by coordinates,
/// then by base point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductPoint<P> {
    pub coords: Vec<Scalar>,
    pub base: P,
}

impl<P> ProductPoint<P> {
    pub fn new(coords: Vec<Scalar>, base: P) -> Self {
        ProductPoint { coords, base }
    }

    /// A point of `R x Y`.
    pub fn line(a: Scalar, base: P) -> Self {
        ProductPoint { coords: vec![a], base }
    }
}

pub fn product_base_space<Y: BaseSpace>(dim: usize, base: Y) -> Result<Product<Y>> {
    if dim == 0 {
        return Err(Error::input("product dimension must be at least 1"));
    }
    Ok(Product { dim, base })
}

impl<Y: BaseSpace> Product<Y> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &Y {
        &self.base
    }
}

impl<Y: BaseSpace> BaseSpace for Product<Y> {
    type Point = ProductPoint<Y::Point>;

    fn name(&self) -> &'static str {
        "product"
    }

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Scalar {
        debug_assert_eq!(a.coords.len(), self.dim);
        debug_assert_eq!(b.coords.len(), self.dim);
        a.coords
            .iter()
            .zip(&b.coords)
            .map(|(u, v)| (u - v).abs())
            .fold(self.base.distance(&a.base, &b.base), |acc, x| acc.max(x))
    }
}

/// `k -> k` as an injective map of sites into the line.
pub fn embed_sites_in_line(p: &Site) -> LinePoint {
    LinePoint(Scalar::from_int(i64::from(p.0)))
}

/// `y -> (y, 0)`.
pub fn embed_line_in_plane(p: &LinePoint) -> PlanePoint {
    PlanePoint(p.0.clone(), Scalar::zero())
}

impl Serialize for Site {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        tagged::serialize(s, "sites", &self.0)
    }
}

impl<'de> Deserialize<'de> for Site {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        tagged::deserialize(d, "sites").map(Site)
    }
}

impl Serialize for LinePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        tagged::serialize(s, "line", &self.0)
    }
}

impl<'de> Deserialize<'de> for LinePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        tagged::deserialize(d, "line").map(LinePoint)
    }
}

impl Serialize for PlanePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        tagged::serialize(s, "plane", &(&self.0, &self.1))
    }
}

impl<'de> Deserialize<'de> for PlanePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        tagged::deserialize::<_, (Scalar, Scalar)>(d, "plane").map(|(x, y)| PlanePoint(x, y))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductRepr<P> {
    coords: Vec<Scalar>,
    base: P,
}

impl<P: Serialize> Serialize for ProductPoint<P> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Ref<'a, P> {
            coords: &'a [Scalar],
            base: &'a P,
        }
        tagged::serialize(s, "product", &Ref { coords: &self.coords, base: &self.base })
    }
}

impl<'de, P: serde::de::DeserializeOwned> Deserialize<'de> for ProductPoint<P> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        tagged::deserialize::<_, ProductRepr<P>>(d, "product")
            .map(|r| ProductPoint { coords: r.coords, base: r.base })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn product_distance_examples() {
        let sites = FiniteSites::new(4);
        let r = product_base_space(1, sites).unwrap();
        let p = ProductPoint::line(s(0), Site(0));
        assert_eq!(r.distance(&p, &p), Scalar::zero());
        let q = ProductPoint::line(s(3), Site(0));
        assert_eq!(r.distance(&p, &q), s(3));

        // d_Y = 2 on the line between 0 and 2
        let r = product_base_space(1, RationalLine).unwrap();
        let p = ProductPoint::line(s(1), LinePoint(s(0)));
        let q = ProductPoint::line(s(1), LinePoint(s(2)));
        assert_eq!(r.distance(&p, &q), s(2));
    }

    #[test]
    fn product_rejects_zero_dimension() {
        assert!(product_base_space(0, RationalLine).is_err());
    }

    #[test]
    fn product_order_is_lexicographic() {
        let a = ProductPoint::new(vec![s(0), s(5)], Site(3));
        let b = ProductPoint::new(vec![s(1), s(0)], Site(0));
        let c = ProductPoint::new(vec![s(1), s(0)], Site(1));
        assert!(a < b && b < c);
    }

    #[test]
    fn tagged_json() {
        let v = serde_json::to_value(LinePoint(Scalar::new(1, 2))).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"model": "line", "value": {"num": "1", "den": "2"}})
        );
        let wrong = serde_json::json!({"model": "sites", "value": {"num": "1", "den": "2"}});
        assert!(serde_json::from_value::<LinePoint>(wrong).is_err());
        let site: Site = serde_json::from_value(serde_json::json!({"model": "sites", "value": 2})).unwrap();
        assert_eq!(site, Site(2));
    }

    #[test]
    fn embeddings_are_injective_on_samples() {
        let pts: Vec<Site> = (0..10).map(Site).collect();
        let mut imgs: Vec<LinePoint> = pts.iter().map(embed_sites_in_line).collect();
        imgs.dedup();
        assert_eq!(imgs.len(), pts.len());
        let a = embed_line_in_plane(&LinePoint(s(2)));
        assert_eq!(a, PlanePoint(s(2), s(0)));
    }
}
