//! `C_1(Y, X) ≃ C(R x Y, X)`: retraction, deformation, equivariance.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::gen::{Generator, SampleBase, SampleLabels};
use super::plan::TrialPlan;
use super::property::{ensure, js, run_property, replay_property, stage, suite, Context, Property, Verdict};
use super::report::PropertyResult;
use crate::configs::{PointConfig, PointEntry, Segment, SegmentConfig};
use crate::error::Result;
use crate::scanning::{phi_bar, phi_bar_n, phi_n, rescale_from_unit, rescale_to_unit, retraction_homotopy};
use crate::spaces::{BaseSpace, LabelSpace, ProductPoint, Scalar};

pub const SUITE: &str = "equivalence";

type Kappa<Y, X> = PointConfig<ProductPoint<<Y as BaseSpace>::Point>, <X as LabelSpace>::Label>;
type Seg<Y, X> = SegmentConfig<<Y as BaseSpace>::Point, <X as LabelSpace>::Label>;

pub struct Retraction;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for Retraction {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "retraction";
    const ANCHOR: &'static str = "phi(phi_bar(k)) = k exactly on C(R x Y, X)";

    type Input = Kappa<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        g.product_config(1)
    }

    fn check(ctx: &Context<'_, Y, X>, kappa: &Self::Input) -> Verdict {
        let w = stage("phi_bar", phi_bar(ctx.base, kappa))?;
        let back = stage("phi", ctx.phi(&w))?;
        ensure!(back == *kappa, "phi(phi_bar(k)) = {} differs from k = {}", js(&back), js(kappa));
        Ok(true)
    }
}

pub struct RetractionBoxes;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for RetractionBoxes {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "retraction-n2";
    const ANCHOR: &'static str = "phi_n(phi_bar_n(k)) = k exactly on C(R^2 x Y, X)";

    type Input = Kappa<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        g.product_config(2)
    }

    fn check(ctx: &Context<'_, Y, X>, kappa: &Self::Input) -> Verdict {
        let w = stage("phi_bar_n", phi_bar_n(ctx.base, kappa))?;
        let back = phi_n(&w);
        ensure!(back == *kappa, "phi_n(phi_bar_n(k)) = {} differs from k", js(&back));
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DeformationInput<Y: BaseSpace, X: LabelSpace> {
    pub w: Seg<Y, X>,
    pub times: Vec<Scalar>,
}

pub struct DeformationValidity;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for DeformationValidity {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "deformation-validity";
    const ANCHOR: &'static str =
        "scaling segments about their centers stays in C_1(Y, X), from the identity to phi_bar(phi)";

    type Input = DeformationInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        Ok(DeformationInput { w: g.line_segment_config()?, times: g.times() })
    }

    fn check(ctx: &Context<'_, Y, X>, input: &Self::Input) -> Verdict {
        let w = &input.w;
        let centers = stage("phi", ctx.phi(w))?;
        let end = stage("phi_bar", phi_bar(ctx.base, &centers))?;
        for t in &input.times {
            let h = stage("retraction_homotopy", retraction_homotopy(ctx.base, t, w))?;
            let again = stage("normalize", SegmentConfig::normalize(h.clone().into_entries()))?;
            ensure!(again == h, "t = {t}: output is not in normal form");
            ensure!(h.len() == w.len(), "t = {t}: {} segments became {}", w.len(), h.len());
            let hc = stage("phi", ctx.phi(&h))?;
            ensure!(hc == centers, "t = {t}: centers moved to {}", js(&hc));
            if t.is_zero() {
                ensure!(h == *w, "t = 0 is not the identity: {}", js(&h));
            }
            if t.is_one() {
                ensure!(h == end, "t = 1 gives {} instead of phi_bar(phi(w)) = {}", js(&h), js(&end));
            }
        }
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PermutedInput<Y: BaseSpace, X: LabelSpace> {
    pub kappa: Kappa<Y, X>,
    pub kappa_permuted: Vec<PointEntry<ProductPoint<Y::Point>, X::Label>>,
    pub w: Seg<Y, X>,
    pub w_permuted: Vec<Segment<Y::Point, X::Label>>,
}

pub struct Equivariance;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for Equivariance {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "equivariance";
    const ANCHOR: &'static str = "phi and phi_bar commute with permutations of the entries";

    type Input = PermutedInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let kappa = g.product_config(1)?;
        let w = g.line_segment_config()?;
        let mut kappa_permuted = kappa.clone().into_entries();
        kappa_permuted.shuffle(g.draw().rng());
        let mut w_permuted = w.clone().into_entries();
        w_permuted.shuffle(g.draw().rng());
        Ok(PermutedInput { kappa, kappa_permuted, w, w_permuted })
    }

    fn check(ctx: &Context<'_, Y, X>, input: &Self::Input) -> Verdict {
        let k2 = stage("normalize", PointConfig::normalize(input.kappa_permuted.clone()))?;
        let a = stage("phi_bar", phi_bar(ctx.base, &k2))?;
        let b = stage("phi_bar", phi_bar(ctx.base, &input.kappa))?;
        ensure!(a == b, "phi_bar differs on a permuted input: {} vs {}", js(&a), js(&b));
        let w2 = stage("normalize", SegmentConfig::normalize(input.w_permuted.clone()))?;
        let a = stage("phi", ctx.phi(&w2))?;
        let b = stage("phi", ctx.phi(&input.w))?;
        ensure!(a == b, "phi differs on a permuted input: {} vs {}", js(&a), js(&b));
        Ok(true)
    }
}

pub struct RescaleRoundTrip;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for RescaleRoundTrip {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "rescale-roundtrip";
    const ANCHOR: &'static str = "the rescaling R -> (0, 1) is a bijection on configurations";

    type Input = Seg<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        g.line_segment_config()
    }

    fn check(_ctx: &Context<'_, Y, X>, w: &Self::Input) -> Verdict {
        let u = rescale_to_unit(w);
        ensure!(u.in_unit_interval(), "rescaled configuration leaves (0, 1): {}", js(&u));
        let back = stage("rescale_from_unit", rescale_from_unit(&u))?;
        ensure!(back == *w, "round trip gives {}", js(&back));
        Ok(true)
    }
}

suite!(Retraction, RetractionBoxes, DeformationValidity, Equivariance, RescaleRoundTrip);
