//! The comparison `C_1(Y, X) <-> C(R x Y, X)` and the rescaling of `R`
//! onto `(0, 1)`.

use crate::configs::{BoxConfig, BoxEntry, PointConfig, PointEntry, Segment, SegmentConfig};
use crate::error::{Error, Result};
use crate::spaces::{g_metric, BaseSpace, Pointed, ProductPoint, Scalar};

/// `φ`: sends every segment to its center point in `R x Y`.
pub fn phi<P, L>(w: &SegmentConfig<P, L>) -> PointConfig<ProductPoint<P>, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    let raw = w
        .iter()
        .map(|s| PointEntry::new(ProductPoint::line(s.center(), s.y.clone()), s.x.clone()))
        .collect();
    PointConfig::normalize(raw).expect("disjoint segments have distinct centers")
}

/// `φ_n`: sends every box to its center point in `R^n x Y`.
pub fn phi_n<P, L>(w: &BoxConfig<P, L>) -> PointConfig<ProductPoint<P>, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    let raw = w
        .entries()
        .iter()
        .map(|e| PointEntry::new(ProductPoint::new(e.center(), e.y.clone()), e.x.clone()))
        .collect();
    PointConfig::normalize(raw).expect("disjoint boxes have distinct centers")
}

/// `v(κ)`: the least value of `g` over pairs of distinct entries.
///
/// Configurations with fewer than two points have no pairs; they get the
/// radius `1/2`.
pub fn separation<Y, L>(space: &Y, kappa: &PointConfig<ProductPoint<Y::Point>, L>) -> Scalar
where
    Y: BaseSpace,
{
    let e = kappa.entries();
    let mut best: Option<Scalar> = None;
    for (k, p) in e.iter().enumerate() {
        for q in &e[k + 1..] {
            let g = g_metric(space, &p.y.coords, &p.y.base, &q.y.coords, &q.y.base);
            best = Some(match best {
                Some(b) if b <= g => b,
                _ => g,
            });
        }
    }
    best.unwrap_or_else(Scalar::half)
}

/// `φ̄`: the segment of radius `v(κ)` around each point of `κ ∈ C(R x Y, X)`.
///
/// Fails only if `κ` has points outside `R x Y` (coordinate count != 1).
pub fn phi_bar<Y, L>(
    space: &Y,
    kappa: &PointConfig<ProductPoint<Y::Point>, L>,
) -> Result<SegmentConfig<Y::Point, L>>
where
    Y: BaseSpace,
    L: Ord + Pointed + Clone,
{
    if kappa.iter().any(|e| e.y.coords.len() != 1) {
        return Err(Error::input("φ̄ expects points of R x Y"));
    }
    let v = separation(space, kappa);
    let raw = kappa
        .iter()
        .map(|e| {
            let a = &e.y.coords[0];
            Segment::new(a - &v, a + &v, e.y.base.clone(), e.x.clone())
        })
        .collect();
    Ok(SegmentConfig::normalize(raw).expect("radius v(κ) keeps segments disjoint"))
}

/// `φ̄_n`: the cube of half-width `v(κ)` around each point of
/// `κ ∈ C(R^n x Y, X)`, with `g` measured in the sup norm on `R^n`.
pub fn phi_bar_n<Y, L>(
    space: &Y,
    kappa: &PointConfig<ProductPoint<Y::Point>, L>,
) -> Result<BoxConfig<Y::Point, L>>
where
    Y: BaseSpace,
    L: Ord + Pointed + Clone,
{
    let dim = kappa.entries().first().map(|e| e.y.coords.len());
    if dim == Some(0) || kappa.iter().any(|e| Some(e.y.coords.len()) != dim) {
        return Err(Error::input("φ̄_n expects points of R^n x Y with a common n >= 1"));
    }
    let v = separation(space, kappa);
    let raw = kappa
        .iter()
        .map(|e| {
            let sides = e.y.coords.iter().map(|c| (c - &v, c + &v)).collect();
            BoxEntry::new(sides, e.y.base.clone(), e.x.clone())
        })
        .collect();
    Ok(BoxConfig::normalize(raw).expect("half-width v(κ) keeps cubes disjoint"))
}

/// The deformation from the identity of `C_1(Y, X)` to `φ̄ ∘ φ`: every
/// segment keeps its center while its radius moves linearly from its own
/// value (`t = 0`) to `v(φ(w))` (`t = 1`).
pub fn retraction_homotopy<Y, L>(
    space: &Y,
    t: &Scalar,
    w: &SegmentConfig<Y::Point, L>,
) -> Result<SegmentConfig<Y::Point, L>>
where
    Y: BaseSpace,
    L: Ord + Pointed + Clone,
{
    if !t.in_unit_interval() {
        return Err(Error::input(format!("homotopy parameter {t} outside [0, 1]")));
    }
    let v = separation(space, &phi(w));
    let raw = w
        .iter()
        .map(|s| {
            let c = s.center();
            let r = (Scalar::half() * s.length()).lerp(&v, t);
            Segment::new(&c - &r, &c + &r, s.y.clone(), s.x.clone())
        })
        .collect();
    // Disjointness holds at both ends with the same order, hence throughout.
    SegmentConfig::normalize(raw)
}

/// The increasing bijection `r(t) = (1 + t / (1 + |t|)) / 2` from `Q` onto
/// `Q ∩ (0, 1)`.
pub fn to_unit(t: &Scalar) -> Scalar {
    let frac = t / (Scalar::one() + t.abs());
    Scalar::half() * (Scalar::one() + frac)
}

/// Inverse of [`to_unit`]: `v / (1 - |v|)` with `v = 2u - 1`.
pub fn from_unit(u: &Scalar) -> Result<Scalar> {
    if !u.in_open_unit_interval() {
        return Err(Error::input(format!("{u} is not in (0, 1)")));
    }
    let v = Scalar::from_int(2) * u - Scalar::one();
    Ok(&v / (Scalar::one() - v.abs()))
}

/// Moves a configuration in `R x Y` into `(0, 1) x Y`.
pub fn rescale_to_unit<P, L>(w: &SegmentConfig<P, L>) -> SegmentConfig<P, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    let raw = w
        .iter()
        .map(|s| Segment::new(to_unit(&s.a), to_unit(&s.b), s.y.clone(), s.x.clone()))
        .collect();
    SegmentConfig::normalize(raw).expect("an increasing map preserves disjointness")
}

pub fn rescale_from_unit<P, L>(w: &SegmentConfig<P, L>) -> Result<SegmentConfig<P, L>>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    let raw = w
        .iter()
        .map(|s| Ok(Segment::new(from_unit(&s.a)?, from_unit(&s.b)?, s.y.clone(), s.x.clone())))
        .collect::<Result<Vec<_>>>()?;
    SegmentConfig::normalize(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{DiscreteLabel, LinePoint, RationalLine, Site, FiniteSites};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn segs(v: &[(Scalar, Scalar, u32, u32)]) -> SegmentConfig<Site, DiscreteLabel> {
        SegmentConfig::from_tuples(
            v.iter().map(|(a, b, y, x)| (a.clone(), b.clone(), Site(*y), DiscreteLabel(*x))),
        )
        .unwrap()
    }

    fn pts(v: &[(Scalar, u32, u32)]) -> PointConfig<ProductPoint<Site>, DiscreteLabel> {
        PointConfig::from_pairs(
            v.iter().map(|(a, y, x)| (ProductPoint::line(a.clone(), Site(*y)), DiscreteLabel(*x))),
        )
        .unwrap()
    }

    #[test]
    fn phi_examples() {
        assert!(phi(&segs(&[])).is_empty());
        assert_eq!(phi(&segs(&[(q(0, 1), q(2, 1), 0, 1)])), pts(&[(q(1, 1), 0, 1)]));
        assert_eq!(
            phi(&segs(&[(q(-1, 4), q(1, 4), 0, 1), (q(3, 4), q(5, 4), 0, 2)])),
            pts(&[(q(0, 1), 0, 1), (q(1, 1), 0, 2)])
        );
    }

    #[test]
    fn separation_examples() {
        let y = FiniteSites::new(3);
        assert_eq!(separation(&y, &pts(&[(q(0, 1), 0, 1), (q(1, 1), 0, 2)])), q(1, 4));
        assert_eq!(separation(&y, &pts(&[(q(0, 1), 0, 1)])), q(1, 2));
        let line = RationalLine;
        let kappa = PointConfig::from_pairs([
            (ProductPoint::line(q(0, 1), LinePoint(q(0, 1))), DiscreteLabel(1)),
            (ProductPoint::line(q(2, 1), LinePoint(q(1, 1))), DiscreteLabel(2)),
        ])
        .unwrap();
        assert_eq!(separation(&line, &kappa), q(5, 8));
    }

    #[test]
    fn phi_bar_examples() {
        let y = FiniteSites::new(3);
        assert!(phi_bar(&y, &pts(&[])).unwrap().is_empty());
        let kappa = pts(&[(q(0, 1), 0, 1), (q(1, 1), 0, 2)]);
        let w = phi_bar(&y, &kappa).unwrap();
        assert_eq!(w, segs(&[(q(-1, 4), q(1, 4), 0, 1), (q(3, 4), q(5, 4), 0, 2)]));
        assert_eq!(phi(&w), kappa);
    }

    #[test]
    fn phi_bar_rejects_higher_dimension() {
        let y = FiniteSites::new(1);
        let kappa = PointConfig::from_pairs([(
            ProductPoint::new(vec![q(0, 1), q(0, 1)], Site(0)),
            DiscreteLabel(1),
        )])
        .unwrap();
        assert!(phi_bar(&y, &kappa).is_err());
        assert_eq!(phi_bar_n(&y, &kappa).unwrap().dim(), Some(2));
    }

    #[test]
    fn retraction_examples() {
        let y = FiniteSites::new(2);
        let w = segs(&[(q(-1, 1), q(1, 1), 0, 1), (q(2, 1), q(4, 1), 0, 2)]);
        assert_eq!(retraction_homotopy(&y, &q(0, 1), &w).unwrap(), w);
        let end = retraction_homotopy(&y, &q(1, 1), &w).unwrap();
        assert_eq!(end, phi_bar(&y, &phi(&w)).unwrap());
        // centers 0 and 3, v = g(0, 3) = 9/8
        assert_eq!(end, segs(&[(q(-9, 8), q(9, 8), 0, 1), (q(15, 8), q(33, 8), 0, 2)]));
        let mid = retraction_homotopy(&y, &q(1, 2), &w).unwrap();
        let r = (q(1, 1) + q(9, 8)) * q(1, 2);
        for s in mid.iter() {
            assert_eq!(s.length(), &r + &r);
        }
        assert!(retraction_homotopy(&y, &q(3, 2), &w).is_err());
    }

    #[test]
    fn rescale_examples() {
        assert_eq!(to_unit(&q(0, 1)), q(1, 2));
        assert_eq!(to_unit(&q(1, 1)), q(3, 4));
        assert_eq!(to_unit(&q(-1, 1)), q(1, 4));
        for (n, d) in [(-7, 3), (0, 1), (5, 2), (1, 65536), (-100, 1)] {
            let t = q(n, d);
            assert_eq!(from_unit(&to_unit(&t)).unwrap(), t);
        }
        assert!(from_unit(&q(1, 1)).is_err());
        assert!(from_unit(&q(0, 1)).is_err());
        let w = segs(&[(q(-1, 1), q(1, 1), 0, 1), (q(2, 1), q(4, 1), 0, 2)]);
        let u = rescale_to_unit(&w);
        assert!(u.in_unit_interval());
        assert_eq!(rescale_from_unit(&u).unwrap(), w);
    }
}
