//! The scanning map: `α(w)` is a loop, `λ` is a section, `q` is well defined
//! on `E_1`, and the box versions agree at `n = 1`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gen::{Generator, SampleBase, SampleLabels};
use super::plan::TrialPlan;
use super::property::{ensure, js, run_property, replay_property, stage, suite, Context, Property, Verdict};
use super::report::PropertyResult;
use crate::configs::{BoxConfig, Segment, SegmentConfig};
use crate::error::Result;
use crate::scanning::{alpha_bar_eval, alpha_eval, alpha_n_eval, phi, phi_n, q_eval, PathPoint};
use crate::spaces::{BaseSpace, LabelSpace, Scalar};

pub const SUITE: &str = "loop";

type Seg<Y, X> = SegmentConfig<<Y as BaseSpace>::Point, <X as LabelSpace>::Label>;

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Timed<Y: BaseSpace, X: LabelSpace> {
    pub w: Seg<Y, X>,
    pub times: Vec<Scalar>,
}

fn timed<Y: SampleBase, X: SampleLabels>(g: &mut Generator<'_, Y, X>) -> Result<Timed<Y, X>> {
    Ok(Timed { w: g.segment_config()?, times: g.times() })
}

pub struct Endpoints;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for Endpoints {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "loop-endpoints";
    const ANCHOR: &'static str = "alpha(w)(0) = alpha(w)(1) = basepoint";

    type Input = Seg<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        g.segment_config()
    }

    fn check(_ctx: &Context<'_, Y, X>, w: &Self::Input) -> Verdict {
        for t in [Scalar::zero(), Scalar::one()] {
            let z = alpha_eval(w, &t);
            ensure!(z.is_empty(), "alpha(w)({t}) = {} is not the basepoint", js(&z));
        }
        Ok(true)
    }
}

pub struct Distinctness;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for Distinctness {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "scan-distinctness";
    const ANCHOR: &'static str =
        "the slice at t meets each base point at most once away from segment ends";

    type Input = Timed<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        timed(g)
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        for t in &p.times {
            let mut hit: Vec<&Y::Point> =
                p.w.iter().filter(|s| s.a < *t && *t < s.b).map(|s| &s.y).collect();
            let n = hit.len();
            hit.sort();
            hit.dedup();
            ensure!(hit.len() == n, "t = {t}: two open segments over one base point are scanned");
            let z = alpha_eval(&p.w, t);
            ensure!(z.len() == n, "t = {t}: expected {n} scanned points, got {}", js(&z));
        }
        Ok(true)
    }
}

pub struct LambdaSection;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for LambdaSection {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "lambda-section";
    const ANCHOR: &'static str = "alpha(lambda(z))(1/2) = z";

    type Input = crate::scanning::ScanConfig<Y::Point, X::Label>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        g.scan_config()
    }

    fn check(ctx: &Context<'_, Y, X>, z: &Self::Input) -> Verdict {
        let w = stage("lambda_section", ctx.lambda(z))?;
        ensure!(w.in_unit_interval(), "lambda(z) = {} leaves (0, 1)", js(&w));
        let back = alpha_eval(&w, &Scalar::half());
        ensure!(back == *z, "alpha(lambda(z))(1/2) = {} but z = {}", js(&back), js(z));
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct JunkInput<Y: BaseSpace, X: LabelSpace> {
    pub w: Seg<Y, X>,
    pub s: Scalar,
    pub junk: Seg<Y, X>,
}

pub struct QuotientSoundness;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for QuotientSoundness {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "q-quotient-soundness";
    const ANCHOR: &'static str = "q(w, s) is unchanged by adding segments that start at or after s";

    type Input = JunkInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let p = g.path_point()?;
        let (w, s) = p.into_parts();
        let count = g.draw().rng().random_range(0..=3usize);
        let mut raw: Vec<Segment<Y::Point, X::Label>> = Vec::new();
        for _ in 0..count {
            let y = match w.entries() {
                e if !e.is_empty() && g.draw().chance(0.7) => e[g.draw().index(e.len())].y.clone(),
                _ => g.point(),
            };
            let lo = w
                .iter()
                .chain(&raw)
                .filter(|seg| seg.y == y)
                .map(|seg| seg.b.clone())
                .fold(s.clone(), |acc, b| acc.max(b));
            if lo >= Scalar::one() {
                continue;
            }
            let room = Scalar::one() - &lo;
            let (mut u, mut v) = (g.draw().open_unit(), g.draw().open_unit());
            while u == v {
                v = g.draw().open_unit();
            }
            if u > v {
                std::mem::swap(&mut u, &mut v);
            }
            // Starting exactly at s is the boundary case of the identification.
            let a = if lo == s && s.is_positive() && g.draw().chance(0.2) { lo.clone() } else { &lo + &room * &u };
            let b = &lo + &room * &v;
            if a < b {
                raw.push(Segment::new(a, b, y, g.label()));
            }
        }
        let junk = SegmentConfig::normalize(raw)?;
        Ok(JunkInput { w: w.clone(), s, junk })
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        ensure!(p.junk.iter().all(|seg| seg.a >= p.s), "junk segment starts before s");
        let base = stage("path", PathPoint::new(p.w.clone(), p.s.clone()))?;
        let z = q_eval(&base);
        let padded = stage("union", p.w.union(&p.junk))?;
        let raw = alpha_eval(&padded, &p.s);
        ensure!(raw == z, "alpha(w u junk)(s) = {} but q(w, s) = {}", js(&raw), js(&z));
        let q2 = q_eval(&stage("path", PathPoint::new(padded, p.s.clone()))?);
        ensure!(q2 == z, "q(w u junk, s) = {} but q(w, s) = {}", js(&q2), js(&z));
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FreezeInput<Y: BaseSpace, X: LabelSpace> {
    pub w: Seg<Y, X>,
    pub s: Scalar,
    pub times: Vec<Scalar>,
}

pub struct AlphaBarFreeze;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for AlphaBarFreeze {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "alpha-bar-freeze";
    const ANCHOR: &'static str =
        "alpha_bar(w, s)(t) = alpha(w)(min(t, s)), and alpha_bar(w, 1) = alpha(w)";

    type Input = FreezeInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let w = g.segment_config()?;
        let s = g.time();
        Ok(FreezeInput { w, s, times: g.times() })
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let path = stage("path", PathPoint::new(p.w.clone(), p.s.clone()))?;
        let iota = stage("iota", PathPoint::iota(p.w.clone()))?;
        for t in &p.times {
            let frozen = if *t <= p.s { t } else { &p.s };
            let got = alpha_bar_eval(&path, t);
            let want = alpha_eval(&p.w, frozen);
            ensure!(got == want, "t = {t}: alpha_bar = {} but alpha(w)(min(t, s)) = {}", js(&got), js(&want));
            let got = alpha_bar_eval(&iota, t);
            let want = alpha_eval(&p.w, t);
            ensure!(got == want, "t = {t}: alpha_bar(w, 1) = {} but alpha(w) = {}", js(&got), js(&want));
        }
        Ok(true)
    }
}

pub struct BoxCoherence;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for BoxCoherence {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "box-n1-coherence";
    const ANCHOR: &'static str = "phi_1 = phi and alpha_1 = alpha on 1-boxes";

    type Input = Timed<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        timed(g)
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let boxes = BoxConfig::from(&p.w);
        let (a, b) = (phi_n(&boxes), phi(&p.w));
        ensure!(a == b, "phi_1 = {} but phi = {}", js(&a), js(&b));
        for t in &p.times {
            let a = stage("alpha_n", alpha_n_eval(&boxes, std::slice::from_ref(t)))?;
            let b = alpha_eval(&p.w, t);
            ensure!(a == b, "t = {t}: alpha_1 = {} but alpha = {}", js(&a), js(&b));
        }
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BoundaryInput<Y: BaseSpace, X: LabelSpace> {
    pub boxes: BoxConfig<Y::Point, X::Label>,
    pub t: Vec<Scalar>,
}

pub struct BoxBoundary;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for BoxBoundary {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "box-n2-boundary";
    const ANCHOR: &'static str = "alpha_2(w)(t) = basepoint whenever some t_m is 0 or 1";

    type Input = BoundaryInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let boxes = g.box_config(2)?;
        let mut t = vec![g.time(), g.time()];
        let k = g.draw().index(2);
        t[k] = if g.draw().chance(0.5) { Scalar::zero() } else { Scalar::one() };
        Ok(BoundaryInput { boxes, t })
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        if !p.t.iter().any(|t| t.is_zero() || t.is_one()) {
            return Ok(false);
        }
        let z = stage("alpha_n", alpha_n_eval(&p.boxes, &p.t))?;
        ensure!(z.is_empty(), "alpha_2 at boundary time {} is {}", js(&p.t), js(&z));
        Ok(true)
    }
}

suite!(
    Endpoints,
    Distinctness,
    LambdaSection,
    QuotientSoundness,
    AlphaBarFreeze,
    BoxCoherence,
    BoxBoundary,
);
