//! Deformations near the filtration strata: `L_t`, `J_t = K_t ∧ L_t`, the
//! neighborhood `U`, `h_t` on `C(Y, ΣX)`, its lift `H_t` to `E_1(Y, X)`, and
//! the correction element used by `ξ`.

use super::loops::ScanConfig;
use super::path::PathPoint;
use crate::configs::{Segment, SegmentConfig, SuspensionLabel};
use crate::error::{Error, Result};
use crate::spaces::{LabelSpace, Pointed, Scalar};

/// The deformation `L_t` of `[0, 1]` together with the neighborhood `W'` it
/// collapses, parametrized by the collapse margin `m` (`1/4` in the standard
/// construction).
///
/// `L_1` is `0` on `[0, m]`, `1` on `[1 - m, 1]` and affine in between.
/// `L_t` is the map of the same shape whose breakpoints sit at `t m` and
/// `1 - t m`, so the breakpoints move linearly from `0, 1` to `m, 1 - m`.
/// With `m = 1/4` this is exactly the rescaling induced by contracting a
/// segment `[a, b]` linearly onto its middle half, which is what makes
/// `q H_t = h_t q` hold for every `t`, not just at the ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspensionDeformation {
    margin: Scalar,
}

impl Default for SuspensionDeformation {
    fn default() -> Self {
        SuspensionDeformation { margin: Scalar::new(1, 4) }
    }
}

impl SuspensionDeformation {
    pub fn new(margin: Scalar) -> Result<Self> {
        if !margin.is_positive() || margin >= Scalar::half() {
            return Err(Error::input(format!("collapse margin {margin} outside (0, 1/2)")));
        }
        Ok(SuspensionDeformation { margin })
    }

    pub fn margin(&self) -> &Scalar {
        &self.margin
    }

    /// `L_t(u)`.
    pub fn l_map(&self, t: &Scalar, u: &Scalar) -> Scalar {
        let lo = t * &self.margin;
        let hi = Scalar::one() - &lo;
        if *u <= lo {
            Scalar::zero()
        } else if *u >= hi {
            Scalar::one()
        } else {
            (u - &lo) / (&hi - &lo)
        }
    }

    /// `J_t = K_t ∧ L_t`, applied to every suspension coordinate.
    pub fn j_map<X: LabelSpace>(
        &self,
        space: &X,
        t: &Scalar,
        label: &SuspensionLabel<X::Label>,
    ) -> SuspensionLabel<X::Label> {
        match label {
            SuspensionLabel::Basepoint => SuspensionLabel::Basepoint,
            SuspensionLabel::Point { x, s } => SuspensionLabel::new(
                space.contract(t, x),
                s.iter().map(|u| self.l_map(t, u)).collect(),
            ),
        }
    }

    /// Membership of `[x, s]` in `W' = W ∧ ([0, m) ∪ (1 - m, 1])`.
    pub fn in_w_prime<X: LabelSpace>(&self, space: &X, label: &SuspensionLabel<X::Label>) -> bool {
        match label {
            SuspensionLabel::Basepoint => true,
            SuspensionLabel::Point { x, s } => {
                let hi = Scalar::one() - &self.margin;
                space.in_w(x) || s.iter().any(|u| *u < self.margin || *u > hi)
            }
        }
    }

    /// `z ∈ U`: some entry of `z` has its label in `W'`.
    pub fn in_u<P, X: LabelSpace>(&self, space: &X, z: &ScanConfig<P, X::Label>) -> bool {
        z.iter().any(|e| self.in_w_prime(space, &e.x))
    }

    /// `h_t = C(1_Y, J_t)`.
    pub fn h_map<P, X>(&self, space: &X, t: &Scalar, z: &ScanConfig<P, X::Label>) -> ScanConfig<P, X::Label>
    where
        P: Ord + Clone,
        X: LabelSpace,
    {
        z.map(P::clone, |l| self.j_map(space, t, l))
            .expect("identity on base points is injective")
    }
}

pub fn l_map(t: &Scalar, u: &Scalar) -> Scalar {
    SuspensionDeformation::default().l_map(t, u)
}

pub fn j_map<X: LabelSpace>(
    space: &X,
    t: &Scalar,
    label: &SuspensionLabel<X::Label>,
) -> SuspensionLabel<X::Label> {
    SuspensionDeformation::default().j_map(space, t, label)
}

pub fn in_u<P, X: LabelSpace>(space: &X, z: &ScanConfig<P, X::Label>) -> bool {
    SuspensionDeformation::default().in_u(space, z)
}

pub fn h_map<P: Ord + Clone, X: LabelSpace>(
    space: &X,
    t: &Scalar,
    z: &ScanConfig<P, X::Label>,
) -> ScanConfig<P, X::Label> {
    SuspensionDeformation::default().h_map(space, t, z)
}

/// The middle half `(a + (b - a)/4, b - (b - a)/4)` of a segment.
fn middle_half<P, L>(seg: &Segment<P, L>) -> (Scalar, Scalar) {
    let q = Scalar::new(1, 4) * seg.length();
    (&seg.a + &q, &seg.b - &q)
}

/// `H_t(w, s)`: every segment moves linearly onto its middle half while its
/// label follows `K_t`; `s` is unchanged. The result is put back in `E_1`
/// normal form, since contraction can push a segment start past `s`.
pub fn total_h_map<P, X>(
    space: &X,
    t: &Scalar,
    p: &PathPoint<P, X::Label>,
) -> PathPoint<P, X::Label>
where
    P: Ord + Clone,
    X: LabelSpace,
{
    let raw = p
        .config()
        .iter()
        .map(|seg| {
            let (a1, b1) = middle_half(seg);
            Segment::new(seg.a.lerp(&a1, t), seg.b.lerp(&b1, t), seg.y.clone(), space.contract(t, &seg.x))
        })
        .collect();
    let w = SegmentConfig::normalize(raw).expect("contracted segments stay disjoint");
    PathPoint::new(w, p.param().clone()).expect("contraction stays inside (0, 1)")
}

/// The element `[a'_i, b'_i, y_i, K_1(x_i)]` over the segments with
/// `b'_i <= s < b_i`, where `(a'_i, b'_i)` is the middle half of `(a_i, b_i)`.
pub fn xi_element<P, X>(space: &X, w: &SegmentConfig<P, X::Label>, s: &Scalar) -> SegmentConfig<P, X::Label>
where
    P: Ord + Clone,
    X: LabelSpace,
{
    let one = Scalar::one();
    let raw = w
        .iter()
        .filter_map(|seg| {
            let (a1, b1) = middle_half(seg);
            (b1 <= *s && *s < seg.b)
                .then(|| Segment::new(a1, b1, seg.y.clone(), space.contract(&one, &seg.x)))
        })
        .collect();
    SegmentConfig::normalize(raw).expect("middle halves of disjoint segments are disjoint")
}

/// `ξ(v) = μ(v, e)`: multiplication by the correction element `e`.
pub fn xi<P, L>(v: &SegmentConfig<P, L>, e: &SegmentConfig<P, L>) -> Result<SegmentConfig<P, L>>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    v.mu(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{PointConfig, PointEntry};
    use crate::scanning::q_eval;
    use crate::spaces::{interval_label_space, IntervalLabel, IntervalLabels, Site};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn lab(n: i64, d: i64) -> IntervalLabel {
        IntervalLabel::new(q(n, d)).unwrap()
    }

    fn sl(x: IntervalLabel, s: Scalar) -> SuspensionLabel<IntervalLabel> {
        SuspensionLabel::single(x, s)
    }

    #[test]
    fn l_examples() {
        let one = q(1, 1);
        assert_eq!(l_map(&one, &q(1, 4)), q(0, 1));
        assert_eq!(l_map(&one, &q(3, 4)), q(1, 1));
        assert_eq!(l_map(&one, &q(1, 2)), q(1, 2));
        assert_eq!(l_map(&one, &q(5, 8)), q(3, 4));
        for k in 0..=16 {
            let u = q(k, 16);
            assert_eq!(l_map(&q(0, 1), &u), u);
            for t in [q(1, 3), q(1, 2), q(1, 1)] {
                assert_eq!(l_map(&t, &q(0, 1)), q(0, 1));
                assert_eq!(l_map(&t, &q(1, 1)), q(1, 1));
            }
        }
    }

    #[test]
    fn margin_is_validated() {
        assert!(SuspensionDeformation::new(q(1, 2)).is_err());
        assert!(SuspensionDeformation::new(q(0, 1)).is_err());
        assert!(SuspensionDeformation::new(q(1, 3)).is_ok());
    }

    #[test]
    fn j_examples() {
        let x = interval_label_space();
        let one = q(1, 1);
        assert!(j_map(&x, &q(1, 2), &SuspensionLabel::Basepoint).is_basepoint());
        assert!(j_map(&x, &one, &sl(lab(1, 1), q(1, 8))).is_basepoint());
        assert!(j_map(&x, &one, &sl(lab(1, 8), q(1, 2))).is_basepoint());
        assert_eq!(j_map(&x, &one, &sl(lab(1, 1), q(1, 2))), sl(lab(1, 1), q(1, 2)));
    }

    fn scan(v: Vec<(u32, SuspensionLabel<IntervalLabel>)>) -> ScanConfig<Site, IntervalLabel> {
        PointConfig::normalize(v.into_iter().map(|(y, l)| PointEntry::new(Site(y), l)).collect()).unwrap()
    }

    #[test]
    fn u_examples() {
        let x = interval_label_space();
        assert!(!in_u(&x, &scan(vec![])));
        assert!(in_u(&x, &scan(vec![(0, sl(lab(1, 1), q(1, 8)))])));
        assert!(!in_u(&x, &scan(vec![(0, sl(lab(1, 1), q(1, 2)))])));
        assert!(in_u(&x, &scan(vec![(0, sl(lab(1, 8), q(1, 2)))])));
    }

    #[test]
    fn h_examples() {
        let x = interval_label_space();
        let z = scan(vec![(0, sl(lab(1, 1), q(1, 8))), (1, sl(lab(1, 2), q(1, 2)))]);
        assert_eq!(h_map(&x, &q(0, 1), &z), z);
        let k1 = x.contract(&q(1, 1), &lab(1, 2));
        assert_eq!(h_map(&x, &q(1, 1), &z), scan(vec![(1, sl(k1, q(1, 2)))]));
    }

    fn path(v: &[(i64, i64, i64, u32, IntervalLabel)], s: Scalar) -> PathPoint<Site, IntervalLabel> {
        let w = SegmentConfig::from_tuples(
            v.iter().map(|(a, b, d, y, x)| (q(*a, *d), q(*b, *d), Site(*y), x.clone())),
        )
        .unwrap();
        PathPoint::new(w, s).unwrap()
    }

    #[test]
    fn total_h_examples() {
        let x: IntervalLabels = interval_label_space();
        let p = path(&[(1, 7, 8, 0, lab(1, 1))], q(1, 1));
        assert_eq!(total_h_map(&x, &q(0, 1), &p), p);
        // middle half of (1/8, 7/8) is (5/16, 11/16)
        let h1 = total_h_map(&x, &q(1, 1), &p);
        assert_eq!(h1, path(&[(5, 11, 16, 0, lab(1, 1))], q(1, 1)));
    }

    #[test]
    fn total_h_commutes_with_q_between_breakpoints() {
        let x = interval_label_space();
        // s = 1/4 of the way along the segment: the case where the pointwise
        // convex combination of id and L_1 would disagree.
        let p = path(&[(1, 5, 8, 0, lab(1, 1)), (1, 3, 4, 1, lab(1, 2))], q(1, 4));
        for k in 0..=12 {
            let t = q(k, 12);
            assert_eq!(q_eval(&total_h_map(&x, &t, &p)), h_map(&x, &t, &q_eval(&p)));
        }
    }

    #[test]
    fn late_start_is_dropped_after_contraction() {
        let x = interval_label_space();
        // a = 1/8, b = 5/8, s = 1/4: the contracted start 1/4 reaches s.
        let p = path(&[(1, 5, 8, 0, lab(1, 1))], q(1, 4));
        assert!(total_h_map(&x, &q(1, 1), &p).config().is_empty());
    }

    #[test]
    fn xi_element_examples() {
        let x = interval_label_space();
        let empty: SegmentConfig<Site, IntervalLabel> = SegmentConfig::empty();
        assert!(xi_element(&x, &empty, &q(1, 2)).is_empty());
        let w = SegmentConfig::from_tuples([(q(0, 1), q(1, 1), Site(0), lab(1, 1))]).unwrap();
        // b' = 3/4 > 1/2: the filter b' <= s < b fails.
        assert!(xi_element(&x, &w, &q(1, 2)).is_empty());
        let e = xi_element(&x, &w, &q(7, 8));
        let k1 = x.contract(&q(1, 1), &lab(1, 1));
        assert_eq!(e, SegmentConfig::from_tuples([(q(1, 4), q(3, 4), Site(0), k1)]).unwrap());
        // s = b is outside b' <= s < b.
        assert!(xi_element(&x, &w, &q(1, 1)).is_empty());
    }

    #[test]
    fn xi_is_mu() {
        let v = SegmentConfig::from_tuples([(q(1, 4), q(3, 4), Site(0), lab(1, 1))]).unwrap();
        let e = SegmentConfig::from_tuples([(q(1, 4), q(3, 4), Site(0), lab(1, 2))]).unwrap();
        assert_eq!(xi(&v, &e).unwrap(), v.mu(&e).unwrap());
    }
}
