//! The coefficient system `ν^*`, `ν_*` and the configuration-level
//! operations built on it.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gen::{Generator, SampleBase, SampleLabels};
use super::plan::TrialPlan;
use super::property::{
    ensure, js, label_multiset, run_property, replay_property, stage, suite, Context, Property, Verdict,
};
use super::report::PropertyResult;
use crate::configs::{pullback, pushforward, Injection, PointConfig, PointEntry, Segment, SegmentConfig};
use crate::error::Result;
use crate::spaces::{BaseSpace, LabelSpace, Scalar};

pub const SUITE: &str = "coefficient-system";

type Pts<Y, X> = PointConfig<<Y as BaseSpace>::Point, <X as LabelSpace>::Label>;
type Seg<Y, X> = SegmentConfig<<Y as BaseSpace>::Point, <X as LabelSpace>::Label>;

fn composition_laws<A, B>(mu: &Injection, nu: &Injection, ys: &[A], xs: &[B], basepoint: &B) -> Verdict
where
    A: Clone + PartialEq + Serialize,
    B: Clone + PartialEq + Serialize,
{
    let comp = stage("compose", nu.compose(mu))?;
    let direct = stage("pushforward", pushforward(&comp, xs, basepoint))?;
    let inner = stage("pushforward", pushforward(mu, xs, basepoint))?;
    let staged = stage("pushforward", pushforward(nu, &inner, basepoint))?;
    ensure!(
        direct == staged,
        "(nu mu)_* = {} but nu_* mu_* = {} for mu = {mu:?}, nu = {nu:?}",
        js(&direct),
        js(&staged)
    );
    let direct = stage("pullback", pullback(&comp, ys))?;
    let inner = stage("pullback", pullback(nu, ys))?;
    let staged = stage("pullback", pullback(mu, &inner))?;
    ensure!(
        direct == staged,
        "(nu mu)^* = {} but mu^* nu^* = {} for mu = {mu:?}, nu = {nu:?}",
        js(&direct),
        js(&staged)
    );
    Ok(true)
}

#[derive(Serialize, Deserialize)]
pub struct InjectionPair {
    pub mu: Injection,
    pub nu: Injection,
}

/// Every composable pair `h -> i -> j` with `j <= 4`.
pub struct CompositionExhaustive;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for CompositionExhaustive {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "composition-exhaustive";
    const ANCHOR: &'static str =
        "(nu mu)_* = nu_* mu_* and (nu mu)^* = mu^* nu^* for all injections with i, j <= 4";

    type Input = InjectionPair;

    fn sample(_g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        Ok(InjectionPair { mu: Injection::identity(0), nu: Injection::identity(0) })
    }

    fn cases(_g: &mut Generator<'_, Y, X>, _trials: usize) -> Result<Vec<Self::Input>> {
        let mut out = Vec::new();
        for j in 0..=4 {
            for i in 0..=j {
                for h in 0..=i {
                    for nu in Injection::all(i, j) {
                        for mu in Injection::all(h, i) {
                            out.push(InjectionPair { mu, nu: nu.clone() });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        // Distinct symbols make every slot traceable; 0 is the basepoint.
        let ys: Vec<usize> = (1..=p.nu.codomain()).collect();
        let xs: Vec<usize> = (1..=p.mu.domain()).collect();
        composition_laws(&p.mu, &p.nu, &ys, &xs, &0)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct RandomComposition<Y: BaseSpace, X: LabelSpace> {
    pub mu: Injection,
    pub nu: Injection,
    pub ys: Vec<Y::Point>,
    pub xs: Vec<X::Label>,
}

/// Random pairs with `5 <= j <= 8`, on model points and labels.
pub struct CompositionRandom;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for CompositionRandom {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "composition-random";
    const ANCHOR: &'static str = "(nu mu)_* = nu_* mu_* and (nu mu)^* = mu^* nu^* for 5 <= j <= 8";

    type Input = RandomComposition<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let j = g.draw().rng().random_range(5..=8usize);
        let i = g.draw().rng().random_range(0..=j);
        let h = g.draw().rng().random_range(0..=i);
        let nu = g.injection(i, j)?;
        let mu = g.injection(h, i)?;
        let ys = (0..j).map(|_| g.point()).collect();
        let xs = (0..h).map(|_| g.label()).collect();
        Ok(RandomComposition { mu, nu, ys, xs })
    }

    fn check(ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        composition_laws(&p.mu, &p.nu, &p.ys, &p.xs, &ctx.labels.basepoint())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct RelationInput<Y: BaseSpace, X: LabelSpace> {
    pub nu: Injection,
    pub ys: Vec<Y::Point>,
    pub xs: Vec<X::Label>,
}

pub struct RelationSoundness;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for RelationSoundness {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "relation-soundness";
    const ANCHOR: &'static str = "(nu^* y, x) ~ (y, nu_* x) have equal normal forms";

    type Input = RelationInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let max = g.plan().max_entries;
        let j = g.draw().rng().random_range(0..=max);
        let i = g.draw().rng().random_range(0..=j);
        let nu = g.injection(i, j)?;
        let ys = g.distinct_points(j)?;
        let xs = (0..i)
            .map(|_| if g.draw().chance(0.1) { g.labels().basepoint() } else { g.label() })
            .collect();
        Ok(RelationInput { nu, ys, xs })
    }

    fn check(ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let left_y = stage("pullback", pullback(&p.nu, &p.ys))?;
        let left = stage("normalize", PointConfig::from_pairs(left_y.into_iter().zip(p.xs.clone())))?;
        let right_x = stage("pushforward", pushforward(&p.nu, &p.xs, &ctx.labels.basepoint()))?;
        let right = stage("normalize", PointConfig::from_pairs(p.ys.clone().into_iter().zip(right_x)))?;
        ensure!(left == right, "normal forms differ: {} vs {}", js(&left), js(&right));
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PermutationInput<Y: BaseSpace, X: LabelSpace> {
    pub points: Vec<PointEntry<Y::Point, X::Label>>,
    pub points_permuted: Vec<PointEntry<Y::Point, X::Label>>,
    pub segments: Vec<Segment<Y::Point, X::Label>>,
    pub segments_permuted: Vec<Segment<Y::Point, X::Label>>,
}

pub struct PermutationInvariance;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for PermutationInvariance {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "permutation-invariance";
    const ANCHOR: &'static str = "normal forms do not depend on the order of the entries";

    type Input = PermutationInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let mut points = g.point_config()?.into_entries();
        // A raw basepoint-labelled entry at a fresh site, when there is one.
        let y = g.point();
        if !points.iter().any(|e| e.y == y) {
            points.push(PointEntry::new(y, g.labels().basepoint()));
        }
        let segments = g.segment_config()?.into_entries();
        let mut points_permuted = points.clone();
        points_permuted.shuffle(g.draw().rng());
        let mut segments_permuted = segments.clone();
        segments_permuted.shuffle(g.draw().rng());
        Ok(PermutationInput { points, points_permuted, segments, segments_permuted })
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let a = stage("normalize", PointConfig::normalize(p.points.clone()))?;
        let b = stage("normalize", PointConfig::normalize(p.points_permuted.clone()))?;
        ensure!(a == b, "point normal forms differ: {} vs {}", js(&a), js(&b));
        let a = stage("normalize", SegmentConfig::normalize(p.segments.clone()))?;
        let b = stage("normalize", SegmentConfig::normalize(p.segments_permuted.clone()))?;
        ensure!(a == b, "segment normal forms differ: {} vs {}", js(&a), js(&b));
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FunctorInput<Y: BaseSpace, X: LabelSpace> {
    pub c: Pts<Y, X>,
    pub w: Seg<Y, X>,
    pub s: Scalar,
    pub t: Scalar,
}

pub struct Functoriality;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for Functoriality {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "functoriality";
    const ANCHOR: &'static str = "C(f, g) preserves identities and composition (label maps K_t)";

    type Input = FunctorInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        Ok(FunctorInput { c: g.point_config()?, w: g.segment_config()?, s: g.time(), t: g.time() })
    }

    fn check(ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let k = |t: &Scalar| {
            let t = t.clone();
            move |x: &X::Label| ctx.labels.contract(&t, x)
        };
        let (ks, kt) = (k(&p.s), k(&p.t));
        let id = stage("map", p.c.map(Y::Point::clone, X::Label::clone))?;
        ensure!(id == p.c, "identity map changed {}", js(&p.c));
        let staged = stage("map", p.c.map(Y::Point::clone, &ks))?;
        let staged = stage("map", staged.map(Y::Point::clone, &kt))?;
        let direct = stage("map", p.c.map(Y::Point::clone, |x| kt(&ks(x))))?;
        ensure!(staged == direct, "C(1, K_t) C(1, K_s) = {} but C(1, K_t K_s) = {}", js(&staged), js(&direct));
        let staged = p.w.map_labels(&ks).map_labels(&kt);
        let direct = p.w.map_labels(|x| kt(&ks(x)));
        ensure!(staged == direct, "segment label maps do not compose: {} vs {}", js(&staged), js(&direct));
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Triple<Y: BaseSpace, X: LabelSpace> {
    pub w1: Seg<Y, X>,
    pub w2: Seg<Y, X>,
    pub w3: Seg<Y, X>,
}

pub struct MuMultiset;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for MuMultiset {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "mu-multiset";
    const ANCHOR: &'static str =
        "mu(mu(w, w'), w'') and mu(w, mu(w', w'')) carry the same (y, x) multiset; mu(w, 0) = shrink(0, 1/2, w)";

    type Input = Triple<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        Ok(Triple { w1: g.segment_config()?, w2: g.segment_config()?, w3: g.segment_config()? })
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let left = stage("mu", p.w1.mu(&p.w2).and_then(|v| v.mu(&p.w3)))?;
        let right = stage("mu", p.w2.mu(&p.w3).and_then(|v| p.w1.mu(&v)))?;
        ensure!(
            label_multiset(&left) == label_multiset(&right),
            "multisets differ: {} vs {}",
            js(&left),
            js(&right)
        );
        let unit = stage("mu", p.w1.mu(&SegmentConfig::empty()))?;
        let half = stage("shrink", p.w1.shrink(&Scalar::zero(), &Scalar::half()))?;
        ensure!(unit == half, "mu(w, 0) = {} but shrink(0, 1/2, w) = {}", js(&unit), js(&half));
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ShrinkInput<Y: BaseSpace, X: LabelSpace> {
    pub w: Seg<Y, X>,
    pub s: Scalar,
    pub t: Scalar,
    pub r: Scalar,
}

pub struct ShrinkBelow;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for ShrinkBelow {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "shrink-below-validity";
    const ANCHOR: &'static str = "shrink(s, t, w) and below(r, w) are valid segment configurations";

    type Input = ShrinkInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let w = g.segment_config()?;
        let (mut s, mut t) = (g.time(), g.time());
        while s == t {
            t = g.time();
        }
        if s > t {
            std::mem::swap(&mut s, &mut t);
        }
        Ok(ShrinkInput { w, s, t, r: g.time() })
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let v = stage("shrink", p.w.shrink(&p.s, &p.t))?;
        let again = stage("normalize", SegmentConfig::normalize(v.clone().into_entries()))?;
        ensure!(again == v, "shrink output is not a normal form");
        ensure!(v.len() == p.w.len(), "shrink lost segments");
        ensure!(
            v.iter().all(|seg| p.s <= seg.a && seg.b <= p.t),
            "shrink output leaves [{}, {}]: {}",
            p.s,
            p.t,
            js(&v)
        );
        let b = p.w.below(&p.r);
        let again = stage("normalize", SegmentConfig::normalize(b.clone().into_entries()))?;
        ensure!(again == b, "below output is not a normal form");
        ensure!(
            b.iter().all(|seg| seg.b <= p.r && p.w.entries().contains(seg)),
            "below({}) kept {}",
            p.r,
            js(&b)
        );
        Ok(true)
    }
}

suite!(
    CompositionExhaustive,
    CompositionRandom,
    RelationSoundness,
    PermutationInvariance,
    Functoriality,
    MuMultiset,
    ShrinkBelow,
);
