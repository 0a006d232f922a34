//! The path-space model `E_1(Y, X)` and its projection `q` onto `C(Y, ΣX)`.

use serde::{Deserialize, Serialize};

use super::loops::{alpha_eval, lambda_section, ScanConfig};
use crate::configs::{Segment, SegmentConfig};
use crate::error::{Error, Result};
use crate::spaces::{Pointed, Scalar};

/// A point `(w, s)` of `E_1(Y, X)`.
///
/// `(w, s)` is identified with `(w ∪ w', s)` whenever every segment of `w'`
/// starts at or after `s`. The normal form drops all such segments, so in
/// particular every `(w, 0)` is the basepoint `(∅, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    try_from = "PathRepr<P, L>",
    bound(
        serialize = "P: Serialize + Clone, L: Serialize + Clone",
        deserialize = "P: Deserialize<'de> + Ord + Clone, L: Deserialize<'de> + Ord + Pointed + Clone"
    )
)]
pub struct PathPoint<P, L> {
    w: SegmentConfig<P, L>,
    s: Scalar,
}

#[derive(Deserialize)]
#[serde(
    deny_unknown_fields,
    bound(deserialize = "P: Deserialize<'de> + Ord, L: Deserialize<'de> + Ord + Pointed")
)]
struct PathRepr<P, L> {
    w: SegmentConfig<P, L>,
    s: Scalar,
}

impl<P, L> TryFrom<PathRepr<P, L>> for PathPoint<P, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    type Error = Error;

    fn try_from(r: PathRepr<P, L>) -> Result<Self> {
        PathPoint::new(r.w, r.s)
    }
}

impl<P, L> PathPoint<P, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    pub fn new(w: SegmentConfig<P, L>, s: Scalar) -> Result<Self> {
        if !s.in_unit_interval() {
            return Err(Error::input(format!("path parameter {s} outside [0, 1]")));
        }
        if !w.in_unit_interval() {
            return Err(Error::input("E_1 needs all segments inside (0, 1)"));
        }
        let w = w.filter(|seg| seg.a < s);
        Ok(PathPoint { w, s })
    }

    /// `ι(w) = (w, 1)`.
    pub fn iota(w: SegmentConfig<P, L>) -> Result<Self> {
        Self::new(w, Scalar::one())
    }

    pub fn config(&self) -> &SegmentConfig<P, L> {
        &self.w
    }

    pub fn param(&self) -> &Scalar {
        &self.s
    }

    pub fn into_parts(self) -> (SegmentConfig<P, L>, Scalar) {
        (self.w, self.s)
    }
}

/// `ᾱ(w, s)(t)`: follows `α(w)` up to time `s`, then stays at `α(w)(s)`.
pub fn alpha_bar_eval<P, L>(p: &PathPoint<P, L>, t: &Scalar) -> ScanConfig<P, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    let t = if *t <= p.s { t } else { &p.s };
    alpha_eval(&p.w, t)
}

/// `q(w, s) = ᾱ(w, s)(1) = α(w)(s)`.
pub fn q_eval<P, L>(p: &PathPoint<P, L>) -> ScanConfig<P, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    alpha_eval(&p.w, &p.s)
}

/// `ψ(w, z) = (shrink_{0,1/2}(w) ∪ shrink_{1/2,1}(λ(z)), 3/4)`, a point of the
/// fiber `q^{-1}(z)`.
pub fn psi<P, L>(w: &SegmentConfig<P, L>, z: &ScanConfig<P, L>) -> Result<PathPoint<P, L>>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    let glued = w.mu(&lambda_section(z)?)?;
    PathPoint::new(glued, Scalar::new(3, 4))
}

/// `ψ̄(w, s) = below_s(w)`.
pub fn psi_bar<P, L>(p: &PathPoint<P, L>) -> SegmentConfig<P, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    p.w.below(&p.s)
}

/// The homotopy over `z` from `ψ(ψ̄(p), q(p))` (`t = 0`) to `p` (`t = 1`).
///
/// Segments with `b <= s` start at their `shrink_{0,1/2}` images; segments
/// crossing the slice `s` start at their images under
/// `shrink_{1/2,1} ∘ λ`; the parameter starts at `3/4`. Everything moves
/// linearly to its position in `p`. Each crossing segment is met by the
/// moving slice at a constant fraction, so `q` is unchanged along the way.
pub fn fiber_retraction_homotopy<P, L>(
    t: &Scalar,
    p: &PathPoint<P, L>,
    z: &ScanConfig<P, L>,
) -> Result<PathPoint<P, L>>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    if !t.in_unit_interval() {
        return Err(Error::input(format!("homotopy parameter {t} outside [0, 1]")));
    }
    if q_eval(p) != *z {
        return Err(Error::input("the path point does not lie over the given configuration"));
    }
    let s = &p.s;
    let three_quarters = Scalar::new(3, 4);
    let quarter = Scalar::new(1, 4);
    let raw = p
        .w
        .iter()
        .map(|seg| {
            let (a0, b0) = if seg.b <= *s {
                (Scalar::half() * &seg.a, Scalar::half() * &seg.b)
            } else {
                // Normal form gives a < s < b here.
                let frac = (s - &seg.a) / seg.length();
                let q = &quarter * &frac;
                (&three_quarters - &q, Scalar::one() - &q)
            };
            Segment::new(a0.lerp(&seg.a, t), b0.lerp(&seg.b, t), seg.y.clone(), seg.x.clone())
        })
        .collect();
    let w = SegmentConfig::normalize(raw).expect("both ends are disjoint in the same order");
    PathPoint::new(w, three_quarters.lerp(s, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{PointConfig, PointEntry, SuspensionLabel};
    use crate::spaces::{DiscreteLabel, Site};

    type Seg = SegmentConfig<Site, DiscreteLabel>;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn segs(v: &[(i64, i64, i64, u32, u32)]) -> Seg {
        SegmentConfig::from_tuples(
            v.iter()
                .map(|&(a, b, d, y, x)| (q(a, d), q(b, d), Site(y), DiscreteLabel(x))),
        )
        .unwrap()
    }

    fn z1(s: Scalar) -> ScanConfig<Site, DiscreteLabel> {
        PointConfig::normalize(vec![PointEntry::new(
            Site(0),
            SuspensionLabel::single(DiscreteLabel(1), s),
        )])
        .unwrap()
    }

    #[test]
    fn normal_form_drops_late_segments() {
        let w = segs(&[(1, 3, 8, 0, 1), (5, 7, 8, 0, 2)]);
        let p = PathPoint::new(w.clone(), q(1, 2)).unwrap();
        assert_eq!(p.config().len(), 1);
        let p0 = PathPoint::new(w, q(0, 1)).unwrap();
        assert!(p0.config().is_empty());
        assert!(PathPoint::new(segs(&[(0, 1, 2, 0, 1)]), q(1, 2)).is_err());
        assert!(PathPoint::new(Seg::empty(), q(3, 2)).is_err());
    }

    #[test]
    fn alpha_bar_examples() {
        let w = segs(&[(1, 3, 4, 0, 1)]);
        let iota = PathPoint::iota(w.clone()).unwrap();
        for t in [q(0, 1), q(1, 3), q(1, 2), q(3, 4), q(1, 1)] {
            assert_eq!(alpha_bar_eval(&iota, &t), alpha_eval(&w, &t));
        }
        let p = PathPoint::new(w, q(1, 2)).unwrap();
        assert_eq!(alpha_bar_eval(&p, &q(1, 1)), z1(q(1, 2)));
        assert!(alpha_bar_eval(&p, &q(0, 1)).is_empty());
        let empty = PathPoint::new(Seg::empty(), q(1, 3)).unwrap();
        assert!(alpha_bar_eval(&empty, &q(1, 2)).is_empty());
    }

    #[test]
    fn q_examples() {
        assert!(q_eval(&PathPoint::new(Seg::empty(), q(1, 2)).unwrap()).is_empty());
        let w = segs(&[(1, 3, 4, 0, 1)]);
        let p = PathPoint::new(w.clone(), q(1, 2)).unwrap();
        assert_eq!(q_eval(&p), z1(q(1, 2)));
        let junk = w.union(&segs(&[(11, 19, 20, 1, 2)])).unwrap();
        assert_eq!(q_eval(&PathPoint::new(junk, q(1, 2)).unwrap()), q_eval(&p));
    }

    #[test]
    fn psi_examples() {
        let p = psi(&Seg::empty(), &PointConfig::empty()).unwrap();
        assert!(p.config().is_empty());
        assert_eq!(p.param(), &q(3, 4));
        let z = z1(q(1, 2));
        let p = psi(&Seg::empty(), &z).unwrap();
        assert_eq!(p.config(), &segs(&[(5, 7, 8, 0, 1)]));
        assert_eq!(q_eval(&p), z);
    }

    #[test]
    fn psi_bar_examples() {
        let w = segs(&[(1, 3, 4, 0, 1)]);
        assert_eq!(psi_bar(&PathPoint::iota(w.clone()).unwrap()), w);
        let w2 = segs(&[(1, 3, 8, 0, 1), (5, 7, 8, 0, 2)]);
        let p = PathPoint::new(w2, q(1, 2)).unwrap();
        assert_eq!(psi_bar(&p), segs(&[(1, 3, 8, 0, 1)]));
        let z = z1(q(1, 3));
        let back = psi_bar(&psi(&w, &z).unwrap());
        assert_eq!(back, w.shrink(&q(0, 1), &q(1, 2)).unwrap());
    }

    #[test]
    fn fiber_retraction_ends_and_fiber() {
        let w = SegmentConfig::from_tuples([
            (q(1, 8), q(1, 4), Site(0), DiscreteLabel(1)),
            (q(1, 4), q(3, 4), Site(0), DiscreteLabel(2)),
            (q(1, 3), q(2, 3), Site(1), DiscreteLabel(1)),
        ])
        .unwrap();
        let p = PathPoint::new(w, q(1, 2)).unwrap();
        let z = q_eval(&p);
        assert_eq!(z.len(), 2);
        let start = fiber_retraction_homotopy(&q(0, 1), &p, &z).unwrap();
        assert_eq!(start, psi(&psi_bar(&p), &z).unwrap());
        assert_eq!(fiber_retraction_homotopy(&q(1, 1), &p, &z).unwrap(), p);
        for k in 0..=8 {
            let h = fiber_retraction_homotopy(&q(k, 8), &p, &z).unwrap();
            assert_eq!(q_eval(&h), z);
        }
        assert!(fiber_retraction_homotopy(&q(1, 2), &p, &PointConfig::empty()).is_err());
    }
}
