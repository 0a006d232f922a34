//! The scanning map `α: C̄_1(Y, X) -> ΩC(Y, ΣX)` and its box analogue.

use crate::configs::{BoxConfig, PointConfig, PointEntry, Segment, SegmentConfig, SuspensionLabel};
use crate::error::{Error, Result};
use crate::spaces::{Pointed, Scalar};

/// Points of `C(Y, Σ^n X)`.
pub type ScanConfig<P, L> = PointConfig<P, SuspensionLabel<L>>;

/// `α(w)(t)`: the segments of `w` met by the slice at height `t`, each
/// labeled `[x_i, (t - a_i) / (b_i - a_i)]`.
pub fn alpha_eval<P, L>(w: &SegmentConfig<P, L>, t: &Scalar) -> ScanConfig<P, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    let raw = w
        .iter()
        .filter(|s| s.a <= *t && *t <= s.b)
        .map(|s| {
            let frac = (t - &s.a) / s.length();
            PointEntry::new(s.y.clone(), SuspensionLabel::single(s.x.clone(), frac))
        })
        // Two segments over one base point can both meet the slice only at a
        // shared endpoint, where both labels collapse.
        .filter(|e| !e.x.is_basepoint())
        .collect();
    PointConfig::normalize(raw).expect("scanned base points are distinct")
}

/// `α_n(w)(t_1, .., t_n)`: the boxes containing `t`, labeled by the
/// coordinate-wise fractions `(t_m - a^m) / (b^m - a^m)`.
pub fn alpha_n_eval<P, L>(w: &BoxConfig<P, L>, t: &[Scalar]) -> Result<ScanConfig<P, L>>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    if t.is_empty() {
        return Err(Error::input("α_n needs at least one time coordinate"));
    }
    if let Some(d) = w.dim() {
        if d != t.len() {
            return Err(Error::input(format!(
                "dimension mismatch: boxes have {d} sides, time has {} coordinates",
                t.len()
            )));
        }
    }
    let raw = w
        .entries()
        .iter()
        .filter(|e| e.sides.iter().zip(t).all(|((a, b), tm)| a <= tm && tm <= b))
        .map(|e| {
            let s = e
                .sides
                .iter()
                .zip(t)
                .map(|((a, b), tm)| (tm - a) / (b - a))
                .collect();
            PointEntry::new(e.y.clone(), SuspensionLabel::new(e.x.clone(), s))
        })
        .filter(|e| !e.x.is_basepoint())
        .collect();
    Ok(PointConfig::normalize(raw).expect("scanned base points are distinct"))
}

/// `λ(z) = [1/2 - s_i/2, 1 - s_i/2, y_i, x_i]`, a configuration whose scan at
/// `t = 1/2` is `z`.
pub fn lambda_section<P, L>(z: &ScanConfig<P, L>) -> Result<SegmentConfig<P, L>>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    let raw = z
        .iter()
        .map(|e| match &e.x {
            SuspensionLabel::Point { x, s } if s.len() == 1 => {
                let half_s = Scalar::half() * &s[0];
                Ok(Segment::new(
                    Scalar::half() - &half_s,
                    Scalar::one() - &half_s,
                    e.y.clone(),
                    x.clone(),
                ))
            }
            _ => Err(Error::input("λ expects labels in ΣX")),
        })
        .collect::<Result<Vec<_>>>()?;
    SegmentConfig::normalize(raw)
}

/// A loop in `C(Y, ΣX)` given by a segment configuration in `(0, 1) x Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop<P, L> {
    w: SegmentConfig<P, L>,
}

impl<P, L> Loop<P, L>
where
    P: Ord + Clone,
    L: Ord + Pointed + Clone,
{
    pub fn new(w: SegmentConfig<P, L>) -> Result<Self> {
        if !w.in_unit_interval() {
            return Err(Error::input("a loop needs all segments inside (0, 1)"));
        }
        Ok(Loop { w })
    }

    pub fn config(&self) -> &SegmentConfig<P, L> {
        &self.w
    }

    pub fn eval(&self, t: &Scalar) -> ScanConfig<P, L> {
        alpha_eval(&self.w, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::BoxEntry;
    use crate::spaces::{DiscreteLabel, Site};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn one_seg(a: Scalar, b: Scalar) -> SegmentConfig<Site, DiscreteLabel> {
        SegmentConfig::from_tuples([(a, b, Site(0), DiscreteLabel(1))]).unwrap()
    }

    fn susp(y: u32, x: u32, s: Vec<Scalar>) -> PointEntry<Site, SuspensionLabel<DiscreteLabel>> {
        PointEntry::new(Site(y), SuspensionLabel::new(DiscreteLabel(x), s))
    }

    #[test]
    fn alpha_examples() {
        let w = one_seg(q(1, 4), q(3, 4));
        assert!(alpha_eval(&w, &q(0, 1)).is_empty());
        assert!(alpha_eval(&w, &q(1, 1)).is_empty());
        assert_eq!(alpha_eval(&w, &q(1, 2)).entries(), &[susp(0, 1, vec![q(1, 2)])]);
        assert!(alpha_eval(&w, &q(1, 4)).is_empty());
        assert!(alpha_eval(&w, &q(3, 4)).is_empty());
    }

    #[test]
    fn alpha_at_shared_endpoint() {
        let w = SegmentConfig::from_tuples([
            (q(1, 4), q(1, 2), Site(0), DiscreteLabel(1)),
            (q(1, 2), q(3, 4), Site(0), DiscreteLabel(2)),
        ])
        .unwrap();
        assert!(alpha_eval(&w, &q(1, 2)).is_empty());
        assert_eq!(alpha_eval(&w, &q(5, 8)).entries(), &[susp(0, 2, vec![q(1, 2)])]);
    }

    #[test]
    fn lambda_examples() {
        let z: ScanConfig<Site, DiscreteLabel> = PointConfig::empty();
        assert!(lambda_section(&z).unwrap().is_empty());
        let z = PointConfig::normalize(vec![susp(0, 1, vec![q(1, 2)])]).unwrap();
        let w = lambda_section(&z).unwrap();
        assert_eq!(w, one_seg(q(1, 4), q(3, 4)));
        assert_eq!(alpha_eval(&w, &q(1, 2)), z);
        let z2 = PointConfig::normalize(vec![susp(0, 1, vec![q(1, 2), q(1, 2)])]).unwrap();
        assert!(lambda_section(&z2).is_err());
    }

    #[test]
    fn loop_requires_unit_interval() {
        assert!(Loop::new(one_seg(q(0, 1), q(1, 2))).is_err());
        let l = Loop::new(one_seg(q(1, 4), q(3, 4))).unwrap();
        assert!(l.eval(&q(0, 1)).is_empty());
        assert_eq!(l.eval(&q(1, 2)).len(), 1);
    }

    #[test]
    fn alpha_n_examples() {
        let b = BoxConfig::normalize(vec![BoxEntry::new(
            vec![(q(1, 4), q(3, 4)), (q(1, 4), q(3, 4))],
            Site(0),
            DiscreteLabel(1),
        )])
        .unwrap();
        let z = alpha_n_eval(&b, &[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(z.entries(), &[susp(0, 1, vec![q(1, 2), q(1, 2)])]);
        assert!(alpha_n_eval(&b, &[q(1, 2), q(0, 1)]).unwrap().is_empty());
        assert!(alpha_n_eval(&b, &[q(1, 2)]).is_err());
        assert!(alpha_n_eval(&b, &[]).is_err());
    }
}
