use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::segment::{Segment, SegmentConfig};
use crate::error::{Error, Result};
use crate::spaces::{Pointed, Scalar};

/// A labeled open box `(a^1, b^1) x .. x (a^n, b^n) x {y}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxEntry<P, L> {
    #[serde(rename = "box")]
    pub sides: Vec<(Scalar, Scalar)>,
    pub y: P,
    pub x: L,
}

impl<P, L> BoxEntry<P, L> {
    pub fn new(sides: Vec<(Scalar, Scalar)>, y: P, x: L) -> Self {
        BoxEntry { sides, y, x }
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn center(&self) -> Vec<Scalar> {
        self.sides.iter().map(|(a, b)| Scalar::half() * (a + b)).collect()
    }

    /// Open boxes over the same base point intersect.
    pub fn overlaps(&self, other: &Self) -> bool
    where
        P: Eq,
    {
        self.y == other.y
            && self
                .sides
                .iter()
                .zip(&other.sides)
                .all(|((a, b), (c, d))| !(b <= c || d <= a))
    }
}

impl<P: Ord, L: Ord> Ord for BoxEntry<P, L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.y
            .cmp(&other.y)
            .then_with(|| self.sides.cmp(&other.sides))
            .then_with(|| self.x.cmp(&other.x))
    }
}

impl<P: Ord, L: Ord> PartialOrd for BoxEntry<P, L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of the box configuration space `C_n(Y, L)`: labeled open boxes in
/// `R^n x Y`, pairwise disjoint over equal base points.
///
/// The empty configuration belongs to every dimension, so the dimension is a
/// property of the entries rather than a stored field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    into = "Vec<BoxEntry<P, L>>",
    try_from = "Vec<BoxEntry<P, L>>",
    bound(
        serialize = "P: Serialize + Clone, L: Serialize + Clone",
        deserialize = "P: Deserialize<'de> + Ord, L: Deserialize<'de> + Ord + Pointed"
    )
)]
pub struct BoxConfig<P, L> {
    entries: Vec<BoxEntry<P, L>>,
}

impl<P, L> Default for BoxConfig<P, L> {
    fn default() -> Self {
        BoxConfig { entries: Vec::new() }
    }
}

impl<P, L> BoxConfig<P, L> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[BoxEntry<P, L>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `None` for the empty configuration.
    pub fn dim(&self) -> Option<usize> {
        self.entries.first().map(BoxEntry::dim)
    }

    pub fn in_unit_cube(&self) -> bool {
        self.entries.iter().all(|e| {
            e.sides
                .iter()
                .all(|(a, b)| a.in_open_unit_interval() && b.in_open_unit_interval())
        })
    }
}

impl<P: Ord, L: Ord + Pointed> BoxConfig<P, L> {
    pub fn normalize(raw: Vec<BoxEntry<P, L>>) -> Result<Self> {
        let dim = raw.first().map(BoxEntry::dim);
        for e in &raw {
            if e.dim() == 0 {
                return Err(Error::invalid("box of dimension 0"));
            }
            if Some(e.dim()) != dim {
                return Err(Error::invalid("boxes of different dimensions"));
            }
            if e.sides.iter().any(|(a, b)| a >= b) {
                return Err(Error::invalid("box side with a >= b"));
            }
        }
        let mut entries: Vec<_> = raw.into_iter().filter(|e| !e.x.is_basepoint()).collect();
        entries.sort();
        // Boxes need the quadratic check: sorting by the first side does not
        // reduce overlap to neighbours.
        for (k, e) in entries.iter().enumerate() {
            let run = entries[k + 1..].iter().take_while(|f| f.y == e.y);
            if run.into_iter().any(|f| e.overlaps(f)) {
                return Err(Error::invalid("boxes over the same base point overlap"));
            }
        }
        Ok(BoxConfig { entries })
    }

    pub fn map_labels<M, G>(&self, g: G) -> BoxConfig<P, M>
    where
        P: Clone,
        M: Ord + Pointed,
        G: Fn(&L) -> M,
    {
        let raw = self
            .entries
            .iter()
            .map(|e| BoxEntry::new(e.sides.clone(), e.y.clone(), g(&e.x)))
            .collect();
        BoxConfig::normalize(raw).expect("relabeling keeps boxes disjoint")
    }
}

pub fn normalize_box_config<P: Ord, L: Ord + Pointed>(
    raw: Vec<BoxEntry<P, L>>,
) -> Result<BoxConfig<P, L>> {
    BoxConfig::normalize(raw)
}

impl<P: Ord + Clone, L: Ord + Pointed + Clone> From<&SegmentConfig<P, L>> for BoxConfig<P, L> {
    fn from(w: &SegmentConfig<P, L>) -> Self {
        // Same order: the key (y, [(a, b)], x) sorts like (y, a, b, x).
        let entries = w
            .iter()
            .map(|s| BoxEntry::new(vec![(s.a.clone(), s.b.clone())], s.y.clone(), s.x.clone()))
            .collect();
        BoxConfig { entries }
    }
}

impl<P: Ord + Clone, L: Ord + Pointed + Clone> TryFrom<&BoxConfig<P, L>> for SegmentConfig<P, L> {
    type Error = Error;

    fn try_from(w: &BoxConfig<P, L>) -> Result<Self> {
        if w.dim().is_some_and(|d| d != 1) {
            return Err(Error::input("only 1-dimensional boxes are segments"));
        }
        let raw = w
            .entries
            .iter()
            .map(|e| {
                let (a, b) = e.sides[0].clone();
                Segment::new(a, b, e.y.clone(), e.x.clone())
            })
            .collect();
        SegmentConfig::normalize(raw)
    }
}

impl<P, L> From<BoxConfig<P, L>> for Vec<BoxEntry<P, L>> {
    fn from(c: BoxConfig<P, L>) -> Self {
        c.entries
    }
}

impl<P: Ord, L: Ord + Pointed> TryFrom<Vec<BoxEntry<P, L>>> for BoxConfig<P, L> {
    type Error = Error;

    fn try_from(raw: Vec<BoxEntry<P, L>>) -> Result<Self> {
        BoxConfig::normalize(raw)
    }
}
