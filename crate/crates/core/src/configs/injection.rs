use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An injective map `{0, .., i-1} -> {0, .., j-1}` stored as its image list.
///
/// Indices are zero-based; [`Injection::from_one_based`] accepts the usual
/// `{1, .., i} -> {1, .., j}` notation.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "InjectionRepr")]
pub struct Injection {
    images: Vec<usize>,
    codomain: usize,
}

impl Injection {
    pub fn new(images: Vec<usize>, codomain: usize) -> Result<Self> {
        let mut seen = vec![false; codomain];
        for &v in &images {
            if v >= codomain {
                return Err(Error::input(format!(
                    "injection value {v} out of range for codomain of size {codomain}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::input(format!("injection repeats value {v}")));
            }
        }
        Ok(Injection { images, codomain })
    }

    pub fn from_one_based(images: &[usize], codomain: usize) -> Result<Self> {
        let zero_based = images
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::input("one-based injection contains 0"))
            })
            .collect::<Result<Vec<_>>>()?;
        Injection::new(zero_based, codomain)
    }

    pub fn identity(n: usize) -> Self {
        Injection { images: (0..n).collect(), codomain: n }
    }

    pub fn domain(&self) -> usize {
        self.images.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    /// `self ∘ inner`; requires `inner.codomain() == self.domain()`.
    pub fn compose(&self, inner: &Injection) -> Result<Injection> {
        if inner.codomain != self.domain() {
            return Err(Error::input(format!(
                "cannot compose: inner codomain {} != outer domain {}",
                inner.codomain,
                self.domain()
            )));
        }
        Ok(Injection {
            images: inner.images.iter().map(|&k| self.images[k]).collect(),
            codomain: self.codomain,
        })
    }

    /// Every injection `{0..i} -> {0..j}`, in lexicographic order of images.
    pub fn all(i: usize, j: usize) -> Vec<Injection> {
        fn extend(prefix: &mut Vec<usize>, used: &mut [bool], i: usize, out: &mut Vec<Injection>) {
            if prefix.len() == i {
                out.push(Injection { images: prefix.clone(), codomain: used.len() });
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    extend(prefix, used, i, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        if i <= j {
            extend(&mut Vec::with_capacity(i), &mut vec![false; j], i, &mut out);
        }
        out
    }
}

#[derive(Deserialize)]
struct InjectionRepr {
    images: Vec<usize>,
    codomain: usize,
}

impl TryFrom<InjectionRepr> for Injection {
    type Error = Error;

    fn try_from(r: InjectionRepr) -> Result<Self> {
        Injection::new(r.images, r.codomain)
    }
}

impl fmt::Debug for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{}", self.images, self.codomain)
    }
}

/// `ν^*`: sends `(y_0, .., y_{j-1})` to `(y_{ν(0)}, .., y_{ν(i-1)})`.
pub fn pullback<T: Clone>(nu: &Injection, tuple: &[T]) -> Result<Vec<T>> {
    if tuple.len() != nu.codomain() {
        return Err(Error::input(format!(
            "pullback expects a {}-tuple, got {}",
            nu.codomain(),
            tuple.len()
        )));
    }
    Ok(nu.images.iter().map(|&k| tuple[k].clone()).collect())
}

/// `ν_*`: sends an `i`-tuple of labels to the `j`-tuple with `x_l` in slot
/// `ν(l)` and the basepoint in every slot outside the image.
pub fn pushforward<T: Clone>(nu: &Injection, tuple: &[T], basepoint: &T) -> Result<Vec<T>> {
    if tuple.len() != nu.domain() {
        return Err(Error::input(format!(
            "pushforward expects a {}-tuple, got {}",
            nu.domain(),
            tuple.len()
        )));
    }
    let mut out = vec![basepoint.clone(); nu.codomain()];
    for (x, &k) in tuple.iter().zip(&nu.images) {
        out[k] = x.clone();
    }
    Ok(out)
}
