//! The audit of `q: E_1(Y, X) -> C(Y, ΣX)` against the distinguished-map
//! criterion, one sub-suite per clause:
//!
//! * `(1)` over each stratum, `ψ` and `ψ̄` are inverse up to the fiber
//!   retraction homotopy;
//! * `(2a)` `h_1` pushes `U` into `F_{j-1}` and no `h_t` raises the level;
//! * `(2b)` `q H_t = h_t q`;
//! * `(2c)` the fiber diagram commutes on `(y, x)` multisets.

use serde::{Deserialize, Serialize};

use super::gen::{Generator, SampleBase, SampleLabels};
use super::plan::TrialPlan;
use super::property::{
    ensure, js, label_multiset, run_property, replay_property, stage, suite, Context, Property, Verdict,
};
use super::report::PropertyResult;
use crate::configs::SegmentConfig;
use crate::error::Result;
use crate::scanning::{
    fiber_retraction_homotopy, psi, psi_bar, q_eval, total_h_map, xi, xi_element, PathPoint, ScanConfig,
};
use crate::spaces::{BaseSpace, LabelSpace, Scalar};

pub const SUITE: &str = "dold-thom";

type Seg<Y, X> = SegmentConfig<<Y as BaseSpace>::Point, <X as LabelSpace>::Label>;
type Path<Y, X> = PathPoint<<Y as BaseSpace>::Point, <X as LabelSpace>::Label>;
type Scan<Y, X> = ScanConfig<<Y as BaseSpace>::Point, <X as LabelSpace>::Label>;

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PsiInput<Y: BaseSpace, X: LabelSpace> {
    pub w: Seg<Y, X>,
    pub z: Scan<Y, X>,
}

pub struct PsiInverse;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for PsiInverse {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "clause-1-psi";
    const ANCHOR: &'static str = "(1) q(psi(w, z)) = z and psi_bar(psi(w, z)) = shrink(0, 1/2, w)";

    type Input = PsiInput<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        Ok(PsiInput { w: g.segment_config()?, z: g.scan_config()? })
    }

    fn check(_ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let e = stage("psi", psi(&p.w, &p.z))?;
        let z = q_eval(&e);
        ensure!(z == p.z, "q(psi(w, z)) = {} but z = {}", js(&z), js(&p.z));
        let back = psi_bar(&e);
        let half = stage("shrink", p.w.shrink(&Scalar::zero(), &Scalar::half()))?;
        ensure!(back == half, "psi_bar(psi(w, z)) = {} but shrink(0, 1/2, w) = {}", js(&back), js(&half));
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PathTimes<Y: BaseSpace, X: LabelSpace> {
    pub p: Path<Y, X>,
    pub times: Vec<Scalar>,
}

pub struct FiberHomotopy;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for FiberHomotopy {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "clause-1-fiber-homotopy";
    const ANCHOR: &'static str =
        "(1) the homotopy from psi(psi_bar(p), q(p)) to p stays in the fiber over q(p)";

    type Input = PathTimes<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        Ok(PathTimes { p: g.path_point()?, times: g.times() })
    }

    fn check(_ctx: &Context<'_, Y, X>, input: &Self::Input) -> Verdict {
        let p = &input.p;
        let z = q_eval(p);
        let start = stage("psi", psi(&psi_bar(p), &z))?;
        for t in &input.times {
            let h = stage("fiber_retraction_homotopy", fiber_retraction_homotopy(t, p, &z))?;
            let zt = q_eval(&h);
            ensure!(zt == z, "t = {t}: q moved from {} to {}", js(&z), js(&zt));
            if t.is_zero() {
                ensure!(h == start, "t = 0 gives {} instead of psi(psi_bar(p), q(p))", js(&h));
            }
            if t.is_one() {
                ensure!(h == *p, "t = 1 gives {} instead of p", js(&h));
            }
        }
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ScanTimes<Y: BaseSpace, X: LabelSpace> {
    pub z: Option<Scan<Y, X>>,
    pub times: Vec<Scalar>,
}

pub struct Collapse;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for Collapse {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "clause-2a-collapse";
    const ANCHOR: &'static str = "(2a) z in U implies level(h_1(z)) < level(z) and level(h_t(z)) <= level(z)";

    type Input = ScanTimes<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let region = g.plan().u_region;
        Ok(ScanTimes { z: g.scan_config_in(region)?, times: g.times() })
    }

    fn check(ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let Some(z) = &p.z else { return Ok(false) };
        let d = ctx.deformation();
        if !d.in_u(ctx.labels, z) {
            return Ok(false);
        }
        let level = z.filtration_level();
        let h1 = d.h_map(ctx.labels, &Scalar::one(), z);
        ensure!(
            h1.filtration_level() < level,
            "h_1(z) = {} keeps level {level} for z = {}",
            js(&h1),
            js(z)
        );
        for t in &p.times {
            let ht = d.h_map(ctx.labels, t, z);
            ensure!(ht.filtration_level() <= level, "t = {t}: h_t raises the level of {}", js(z));
        }
        Ok(true)
    }
}

pub struct Filtration;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for Filtration {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "clause-2a-filtration";
    const ANCHOR: &'static str = "(2a) h_t preserves every filtration level";

    type Input = ScanTimes<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        Ok(ScanTimes { z: Some(g.scan_config()?), times: g.times() })
    }

    fn check(ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let Some(z) = &p.z else { return Ok(false) };
        let level = z.filtration_level();
        for t in &p.times {
            let ht = ctx.deformation().h_map(ctx.labels, t, z);
            ensure!(ht.filtration_level() <= level, "t = {t}: h_t raises the level of {}", js(z));
        }
        Ok(true)
    }
}

/// The times at which some segment of `p`, contracted by `H_t`, has an end
/// crossing the slice `s`, together with the midpoints between them and the
/// given grid. Between consecutive breakpoints both sides of `q H_t = h_t q`
/// are affine in `t`.
pub fn breakpoint_times<P: Ord + Clone, L: Ord + Clone + crate::spaces::Pointed>(
    p: &PathPoint<P, L>,
    grid: &[Scalar],
) -> Vec<Scalar> {
    let s = p.param();
    let four = Scalar::from_int(4);
    let mut ts: Vec<Scalar> = grid.to_vec();
    for seg in p.config() {
        let f = (s - &seg.a) / seg.length();
        ts.push(&four * &f);
        ts.push(&four * (Scalar::one() - &f));
    }
    ts.retain(Scalar::in_unit_interval);
    ts.sort();
    ts.dedup();
    let mids: Vec<Scalar> = ts.windows(2).map(|w| Scalar::half() * (&w[0] + &w[1])).collect();
    ts.extend(mids);
    ts.sort();
    ts
}

pub struct Commutation;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for Commutation {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "clause-2b-commutation";
    const ANCHOR: &'static str = "(2b) q(H_t(p)) = h_t(q(p)) on the breakpoint-aware time grid";

    type Input = PathTimes<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        let p = g.path_point()?;
        let grid = g.times();
        let times = breakpoint_times(&p, &grid);
        Ok(PathTimes { p, times })
    }

    fn check(ctx: &Context<'_, Y, X>, input: &Self::Input) -> Verdict {
        let z = q_eval(&input.p);
        for t in &input.times {
            let left = q_eval(&total_h_map(ctx.labels, t, &input.p));
            let right = ctx.deformation().h_map(ctx.labels, t, &z);
            ensure!(
                left == right,
                "t = {t}: q(H_t(p)) = {} but h_t(q(p)) = {}",
                js(&left),
                js(&right)
            );
        }
        Ok(true)
    }
}

pub struct FiberDiagram;

impl<Y: SampleBase, X: SampleLabels> Property<Y, X> for FiberDiagram {
    const SUITE: &'static str = SUITE;
    const NAME: &'static str = "clause-2c-multiset";
    const ANCHOR: &'static str =
        "(2c) psi_bar(H_1(p)) and xi(C(1, K_1)(psi_bar(p)), xi_element(p)) carry the same (y, x) multiset";

    type Input = Path<Y, X>;

    fn sample(g: &mut Generator<'_, Y, X>) -> Result<Self::Input> {
        g.path_point()
    }

    fn check(ctx: &Context<'_, Y, X>, p: &Self::Input) -> Verdict {
        let one = Scalar::one();
        let left = psi_bar(&total_h_map(ctx.labels, &one, p));
        let v = psi_bar(p).map_labels(|x| ctx.labels.contract(&one, x));
        let e = xi_element(ctx.labels, p.config(), p.param());
        let right = stage("xi", xi(&v, &e))?;
        ensure!(
            label_multiset(&left) == label_multiset(&right),
            "psi_bar(H_1(p)) = {} but the xi composite is {}",
            js(&left),
            js(&right)
        );
        Ok(true)
    }
}

suite!(PsiInverse, FiberHomotopy, Collapse, Filtration, Commutation, FiberDiagram);
