use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::{Pointed, Scalar};

/// A labeled segment `(a, b) x {y}` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment<P, L> {
    pub a: Scalar,
    pub b: Scalar,
    pub y: P,
    pub x: L,
}

impl<P, L> Segment<P, L> {
    pub fn new(a: Scalar, b: Scalar, y: P, x: L) -> Self {
        Segment { a, b, y, x }
    }

    pub fn center(&self) -> Scalar {
        Scalar::half() * (&self.a + &self.b)
    }

    pub fn length(&self) -> Scalar {
        &self.b - &self.a
    }

    /// Open segments over the same base point intersect.
    pub fn overlaps(&self, other: &Self) -> bool
    where
        P: Eq,
    {
        self.y == other.y && !(self.b <= other.a || other.b <= self.a)
    }
}

impl<P: Ord, L: Ord> Ord for Segment<P, L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.y
            .cmp(&other.y)
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.x.cmp(&other.x))
    }
}

impl<P: Ord, L: Ord> PartialOrd for Segment<P, L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point `[a_i, b_i, y_i, x_i]` of the segment configuration space
/// `C_1(Y, L)` in normal form.
///
/// Invariants: `a_i < b_i`; segments over equal base points have disjoint
/// interiors; no basepoint labels; sorted by `(y, a, b, x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    into = "Vec<Segment<P, L>>",
    try_from = "Vec<Segment<P, L>>",
    bound(
        serialize = "P: Serialize + Clone, L: Serialize + Clone",
        deserialize = "P: Deserialize<'de> + Ord, L: Deserialize<'de> + Ord + Pointed"
    )
)]
pub struct SegmentConfig<P, L> {
    entries: Vec<Segment<P, L>>,
}

impl<P, L> Default for SegmentConfig<P, L> {
    fn default() -> Self {
        SegmentConfig { entries: Vec::new() }
    }
}

impl<P, L> SegmentConfig<P, L> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[Segment<P, L>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment<P, L>> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<Segment<P, L>> {
        self.entries
    }

    /// All endpoints lie in the open unit interval.
    pub fn in_unit_interval(&self) -> bool {
        self.entries
            .iter()
            .all(|s| s.a.in_open_unit_interval() && s.b.in_open_unit_interval())
    }
}

/// Index pair of the first overlapping segments in a sorted list, if any.
fn first_overlap<P: Eq, L>(sorted: &[Segment<P, L>]) -> Option<(usize, usize)> {
    // Sorted by (y, a): within a run of equal y, disjointness of open
    // intervals reduces to neighbouring pairs.
    sorted
        .windows(2)
        .position(|w| w[0].y == w[1].y && w[1].a < w[0].b)
        .map(|k| (k, k + 1))
}

impl<P: Ord, L: Ord + Pointed> SegmentConfig<P, L> {
    pub fn normalize(raw: Vec<Segment<P, L>>) -> Result<Self> {
        if let Some(s) = raw.iter().find(|s| s.a >= s.b) {
            return Err(Error::invalid(format!(
                "segment endpoints out of order: a = {}, b = {}",
                s.a, s.b
            )));
        }
        let mut entries: Vec<_> = raw.into_iter().filter(|s| !s.x.is_basepoint()).collect();
        entries.sort();
        if let Some((k, l)) = first_overlap(&entries) {
            return Err(Error::invalid(format!(
                "segments ({}, {}) and ({}, {}) over the same base point overlap",
                entries[k].a, entries[k].b, entries[l].a, entries[l].b
            )));
        }
        Ok(SegmentConfig { entries })
    }

    pub fn from_tuples(raw: impl IntoIterator<Item = (Scalar, Scalar, P, L)>) -> Result<Self> {
        Self::normalize(raw.into_iter().map(|(a, b, y, x)| Segment::new(a, b, y, x)).collect())
    }

    /// `C_1(f, g)`: applies an injective base map and a based label map.
    pub fn map<Q, M, F, G>(&self, f: F, g: G) -> Result<SegmentConfig<Q, M>>
    where
        Q: Ord,
        M: Ord + Pointed,
        F: Fn(&P) -> Q,
        G: Fn(&L) -> M,
    {
        let raw: Vec<_> = self
            .entries
            .iter()
            .map(|s| Segment::new(s.a.clone(), s.b.clone(), f(&s.y), g(&s.x)))
            .collect();
        SegmentConfig::normalize(raw)
            .map_err(|_| Error::input("base map is not injective on the support"))
    }

    /// Only the labels change; never fails.
    pub fn map_labels<M, G>(&self, g: G) -> SegmentConfig<P, M>
    where
        P: Clone,
        M: Ord + Pointed,
        G: Fn(&L) -> M,
    {
        self.map(P::clone, g).expect("identity on base points is injective")
    }

    /// `w ∪ w'`, defined when the open segments of the two configurations are
    /// pairwise disjoint.
    pub fn union(&self, other: &Self) -> Result<Self>
    where
        P: Clone,
        L: Clone,
    {
        let mut entries: Vec<_> = self.entries.iter().chain(&other.entries).cloned().collect();
        entries.sort();
        if let Some((k, l)) = first_overlap(&entries) {
            return Err(Error::Disjointness(format!(
                "segments ({}, {}) and ({}, {}) over the same base point overlap",
                entries[k].a, entries[k].b, entries[l].a, entries[l].b
            )));
        }
        Ok(SegmentConfig { entries })
    }

    /// Applies `u -> s + (t - s) u` to every endpoint.
    pub fn shrink(&self, s: &Scalar, t: &Scalar) -> Result<Self>
    where
        P: Clone,
        L: Clone,
    {
        if s >= t {
            return Err(Error::input(format!("shrink needs s < t, got s = {s}, t = {t}")));
        }
        let scale = t - s;
        let entries = self
            .entries
            .iter()
            .map(|seg| {
                Segment::new(
                    s + &(&scale * &seg.a),
                    s + &(&scale * &seg.b),
                    seg.y.clone(),
                    seg.x.clone(),
                )
            })
            .collect();
        // An increasing affine map preserves the sort order and disjointness.
        Ok(SegmentConfig { entries })
    }

    /// The H-space product `shrink_{0,1/2}(w) ∪ shrink_{1/2,1}(w')`.
    pub fn mu(&self, other: &Self) -> Result<Self>
    where
        P: Clone,
        L: Clone,
    {
        if !self.in_unit_interval() || !other.in_unit_interval() {
            return Err(Error::input("μ needs both configurations inside (0, 1)"));
        }
        let left = self.shrink(&Scalar::zero(), &Scalar::half())?;
        let right = other.shrink(&Scalar::half(), &Scalar::one())?;
        Ok(left.union(&right).expect("the two halves of μ never overlap"))
    }

    /// The segments contained in `[0, s] x Y`, i.e. those with `b <= s`.
    pub fn below(&self, s: &Scalar) -> Self
    where
        P: Clone,
        L: Clone,
    {
        SegmentConfig {
            entries: self.entries.iter().filter(|seg| seg.b <= *s).cloned().collect(),
        }
    }

    /// Keeps entries satisfying `keep`; the result stays in normal form.
    pub fn filter<F: Fn(&Segment<P, L>) -> bool>(&self, keep: F) -> Self
    where
        P: Clone,
        L: Clone,
    {
        SegmentConfig {
            entries: self.entries.iter().filter(|s| keep(s)).cloned().collect(),
        }
    }
}

pub fn normalize_segment_config<P: Ord, L: Ord + Pointed>(
    raw: Vec<Segment<P, L>>,
) -> Result<SegmentConfig<P, L>> {
    SegmentConfig::normalize(raw)
}

pub fn union<P: Ord + Clone, L: Ord + Pointed + Clone>(
    w: &SegmentConfig<P, L>,
    w2: &SegmentConfig<P, L>,
) -> Result<SegmentConfig<P, L>> {
    w.union(w2)
}

pub fn shrink<P: Ord + Clone, L: Ord + Pointed + Clone>(
    s: &Scalar,
    t: &Scalar,
    w: &SegmentConfig<P, L>,
) -> Result<SegmentConfig<P, L>> {
    w.shrink(s, t)
}

pub fn mu<P: Ord + Clone, L: Ord + Pointed + Clone>(
    w: &SegmentConfig<P, L>,
    w2: &SegmentConfig<P, L>,
) -> Result<SegmentConfig<P, L>> {
    w.mu(w2)
}

pub fn below<P: Ord + Clone, L: Ord + Pointed + Clone>(
    s: &Scalar,
    w: &SegmentConfig<P, L>,
) -> SegmentConfig<P, L> {
    w.below(s)
}

impl<P, L> From<SegmentConfig<P, L>> for Vec<Segment<P, L>> {
    fn from(c: SegmentConfig<P, L>) -> Self {
        c.entries
    }
}

impl<P: Ord, L: Ord + Pointed> TryFrom<Vec<Segment<P, L>>> for SegmentConfig<P, L> {
    type Error = Error;

    fn try_from(raw: Vec<Segment<P, L>>) -> Result<Self> {
        SegmentConfig::normalize(raw)
    }
}

impl<'a, P, L> IntoIterator for &'a SegmentConfig<P, L> {
    type Item = &'a Segment<P, L>;
    type IntoIter = std::slice::Iter<'a, Segment<P, L>>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{DiscreteLabel, Site};

    type Cfg = SegmentConfig<Site, DiscreteLabel>;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn seg(a: Scalar, b: Scalar, y: u32, x: u32) -> Segment<Site, DiscreteLabel> {
        Segment::new(a, b, Site(y), DiscreteLabel(x))
    }

    fn cfg(v: Vec<Segment<Site, DiscreteLabel>>) -> Cfg {
        Cfg::normalize(v).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert!(cfg(vec![seg(q(0, 1), q(1, 1), 0, 0)]).is_empty());
        let c = cfg(vec![seg(q(0, 1), q(1, 1), 2, 1), seg(q(0, 1), q(1, 1), 1, 2)]);
        assert_eq!(c.entries()[0].y, Site(1));
        let bad = Cfg::normalize(vec![seg(q(0, 1), q(1, 1), 0, 1), seg(q(1, 2), q(2, 1), 0, 2)]);
        assert!(matches!(bad, Err(Error::InvalidConfiguration(_))));
        let reversed = Cfg::normalize(vec![seg(q(1, 1), q(1, 1), 0, 1)]);
        assert!(matches!(reversed, Err(Error::InvalidConfiguration(_))));
    }

    #[test]
    fn overlap_hidden_by_basepoint_is_fine() {
        let c = cfg(vec![seg(q(0, 1), q(1, 1), 0, 1), seg(q(1, 2), q(2, 1), 0, 0)]);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn touching_segments_are_disjoint() {
        let c = cfg(vec![seg(q(0, 1), q(1, 2), 0, 1), seg(q(1, 2), q(1, 1), 0, 2)]);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn union_examples() {
        let w = cfg(vec![seg(q(0, 1), q(1, 3), 0, 1)]);
        assert_eq!(w.union(&Cfg::empty()).unwrap(), w);
        let w2 = cfg(vec![seg(q(2, 3), q(1, 1), 0, 2)]);
        assert_eq!(w.union(&w2).unwrap().len(), 2);
        let a = cfg(vec![seg(q(0, 1), q(2, 3), 0, 1)]);
        let b = cfg(vec![seg(q(1, 3), q(1, 1), 0, 2)]);
        assert!(matches!(a.union(&b), Err(Error::Disjointness(_))));
    }

    #[test]
    fn shrink_examples() {
        let w = cfg(vec![seg(q(1, 4), q(3, 4), 0, 1)]);
        assert_eq!(w.shrink(&q(0, 1), &q(1, 1)).unwrap(), w);
        let left = w.shrink(&q(0, 1), &q(1, 2)).unwrap();
        assert_eq!(left, cfg(vec![seg(q(1, 8), q(3, 8), 0, 1)]));
        let right = w.shrink(&q(1, 2), &q(1, 1)).unwrap();
        assert_eq!(right, cfg(vec![seg(q(5, 8), q(7, 8), 0, 1)]));
        assert!(matches!(w.shrink(&q(1, 2), &q(1, 4)), Err(Error::Input(_))));
    }

    #[test]
    fn mu_examples() {
        assert!(Cfg::empty().mu(&Cfg::empty()).unwrap().is_empty());
        let w = cfg(vec![seg(q(1, 4), q(3, 4), 0, 1)]);
        assert_eq!(w.mu(&Cfg::empty()).unwrap(), w.shrink(&q(0, 1), &q(1, 2)).unwrap());
        let w2 = cfg(vec![seg(q(1, 4), q(3, 4), 0, 2)]);
        assert_eq!(
            w.mu(&w2).unwrap(),
            cfg(vec![seg(q(1, 8), q(3, 8), 0, 1), seg(q(5, 8), q(7, 8), 0, 2)])
        );
        let outside = cfg(vec![seg(q(0, 1), q(1, 2), 0, 1)]);
        assert!(matches!(outside.mu(&w), Err(Error::Input(_))));
    }

    #[test]
    fn below_examples() {
        let w = cfg(vec![seg(q(1, 8), q(3, 8), 0, 1), seg(q(5, 8), q(7, 8), 0, 2)]);
        assert_eq!(w.below(&q(1, 1)), w);
        assert!(w.below(&q(0, 1)).is_empty());
        assert_eq!(w.below(&q(1, 2)), cfg(vec![seg(q(1, 8), q(3, 8), 0, 1)]));
    }
}
