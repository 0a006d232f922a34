use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::Pointed;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry<P, L> {
    pub y: P,
    pub x: L,
}

impl<P, L> PointEntry<P, L> {
    pub fn new(y: P, x: L) -> Self {
        PointEntry { y, x }
    }
}

/// A point `[y_i, x_i]` of `C(Y, L)` in normal form: distinct base points, no
/// basepoint labels, entries sorted by `(y, x)`.
///
/// The empty configuration is the basepoint of `C(Y, L)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    into = "Vec<PointEntry<P, L>>",
    try_from = "Vec<PointEntry<P, L>>",
    bound(
        serialize = "P: Serialize + Clone, L: Serialize + Clone",
        deserialize = "P: Deserialize<'de> + Ord, L: Deserialize<'de> + Ord + Pointed"
    )
)]
pub struct PointConfig<P, L> {
    entries: Vec<PointEntry<P, L>>,
}

impl<P, L> Default for PointConfig<P, L> {
    fn default() -> Self {
        PointConfig { entries: Vec::new() }
    }
}

impl<P, L> PointConfig<P, L> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[PointEntry<P, L>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PointEntry<P, L>> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<PointEntry<P, L>> {
        self.entries
    }
}

impl<P: Ord, L: Ord + Pointed> PointConfig<P, L> {
    /// Picks the normal form of the class of `raw` under the relation
    /// generated by `(ν^* y, x) ~ (y, ν_* x)`: basepoint-labeled points are
    /// deleted and the rest sorted.
    pub fn normalize(raw: Vec<PointEntry<P, L>>) -> Result<Self> {
        {
            let mut seen = BTreeSet::new();
            for e in &raw {
                if !seen.insert(&e.y) {
                    return Err(Error::invalid("configuration repeats a base point"));
                }
            }
        }
        let mut entries: Vec<_> = raw.into_iter().filter(|e| !e.x.is_basepoint()).collect();
        entries.sort();
        Ok(PointConfig { entries })
    }

    pub fn from_pairs(raw: impl IntoIterator<Item = (P, L)>) -> Result<Self> {
        Self::normalize(raw.into_iter().map(|(y, x)| PointEntry::new(y, x)).collect())
    }

    /// `C(f, g)`: applies an injective base map and a based label map, then
    /// renormalizes.
    pub fn map<Q, M, F, G>(&self, f: F, g: G) -> Result<PointConfig<Q, M>>
    where
        Q: Ord,
        M: Ord + Pointed,
        F: Fn(&P) -> Q,
        G: Fn(&L) -> M,
    {
        let raw: Vec<_> = self.entries.iter().map(|e| PointEntry::new(f(&e.y), g(&e.x))).collect();
        PointConfig::normalize(raw).map_err(|_| Error::input("base map is not injective on the support"))
    }

    /// Level in the filtration `F_0 ⊆ F_1 ⊆ ...` by number of points.
    pub fn filtration_level(&self) -> usize {
        self.entries.len()
    }
}

/// Free-function form of [`PointConfig::normalize`].
pub fn normalize_point_config<P: Ord, L: Ord + Pointed>(
    raw: Vec<PointEntry<P, L>>,
) -> Result<PointConfig<P, L>> {
    PointConfig::normalize(raw)
}

/// Free-function form of [`PointConfig::map`].
pub fn map_configuration<P, L, Q, M, F, G>(f: F, g: G, c: &PointConfig<P, L>) -> Result<PointConfig<Q, M>>
where
    P: Ord,
    L: Ord + Pointed,
    Q: Ord,
    M: Ord + Pointed,
    F: Fn(&P) -> Q,
    G: Fn(&L) -> M,
{
    c.map(f, g)
}

pub fn filtration_level<P, L>(z: &PointConfig<P, L>) -> usize {
    z.len()
}

impl<P, L> From<PointConfig<P, L>> for Vec<PointEntry<P, L>> {
    fn from(c: PointConfig<P, L>) -> Self {
        c.entries
    }
}

impl<P: Ord, L: Ord + Pointed> TryFrom<Vec<PointEntry<P, L>>> for PointConfig<P, L> {
    type Error = Error;

    fn try_from(raw: Vec<PointEntry<P, L>>) -> Result<Self> {
        PointConfig::normalize(raw)
    }
}

impl<'a, P, L> IntoIterator for &'a PointConfig<P, L> {
    type Item = &'a PointEntry<P, L>;
    type IntoIter = std::slice::Iter<'a, PointEntry<P, L>>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}
