//! Seeded generators for every configuration type.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::plan::{TrialPlan, URegion};
use crate::configs::{
    BoxConfig, BoxEntry, Injection, PointConfig, PointEntry, Segment, SegmentConfig, SuspensionLabel,
};
use crate::error::{Error, Result};
use crate::scanning::{PathPoint, ScanConfig};
use crate::spaces::{
    BaseSpace, DiscreteLabel, DiscreteLabels, FiniteSites, IntervalLabel, IntervalLabels, LabelSpace,
    LinePoint, PlanePoint, ProductPoint, RationalLine, Scalar, Site, TaxicabPlane, WedgeLabel,
    WedgeOfArcs,
};

const RETRIES: usize = 64;

/// Random exact rationals with bounded denominators.
pub struct Draw {
    rng: ChaCha8Rng,
    max_den: i64,
    adversarial: bool,
}

impl Draw {
    pub fn new(seed: u64, max_den: u64, adversarial: bool) -> Self {
        Draw {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_den: max_den.clamp(2, 1 << 40) as i64,
            adversarial,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn adversarial(&self) -> bool {
        self.adversarial
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Half the time a power of two, otherwise uniform in `2..=max_den`.
    fn denominator(&mut self) -> i64 {
        if self.rng.random_bool(0.5) {
            let k = 63 - self.max_den.leading_zeros();
            1 << self.rng.random_range(1..=k)
        } else {
            self.rng.random_range(2..=self.max_den)
        }
    }

    /// A rational in the closed interval `[lo, hi]`.
    pub fn rational(&mut self, lo: i64, hi: i64) -> Scalar {
        let d = self.denominator();
        Scalar::new(self.rng.random_range(lo * d..=hi * d), d)
    }

    /// A rational in `(0, 1)`.
    pub fn open_unit(&mut self) -> Scalar {
        let d = self.denominator();
        Scalar::new(self.rng.random_range(1..d), d)
    }

    /// A rational in `[0, 1]`, hitting the ends now and then.
    pub fn closed_unit(&mut self) -> Scalar {
        match self.rng.random_range(0..10) {
            0 => Scalar::zero(),
            1 => Scalar::one(),
            _ => self.open_unit(),
        }
    }

    /// The smallest step at the current denominator bound.
    pub fn epsilon(&self) -> Scalar {
        Scalar::new(1, self.max_den)
    }
}

/// A base space the generators can sample points from.
pub trait SampleBase: BaseSpace {
    fn sample_point(&self, d: &mut Draw) -> Self::Point;

    /// A point at small distance from `p`, for near-coincidence tests.
    fn nudge(&self, p: &Self::Point, d: &mut Draw) -> Self::Point;

    /// Number of points, if finite.
    fn capacity(&self) -> Option<usize> {
        None
    }
}

impl SampleBase for FiniteSites {
    fn sample_point(&self, d: &mut Draw) -> Site {
        Site(d.index(self.size() as usize) as u32)
    }

    fn nudge(&self, _p: &Site, d: &mut Draw) -> Site {
        self.sample_point(d)
    }

    fn capacity(&self) -> Option<usize> {
        Some(self.size() as usize)
    }
}

impl SampleBase for RationalLine {
    fn sample_point(&self, d: &mut Draw) -> LinePoint {
        LinePoint(d.rational(-2, 2))
    }

    fn nudge(&self, p: &LinePoint, d: &mut Draw) -> LinePoint {
        LinePoint(&p.0 + d.epsilon())
    }
}

impl SampleBase for TaxicabPlane {
    fn sample_point(&self, d: &mut Draw) -> PlanePoint {
        PlanePoint(d.rational(-2, 2), d.rational(-2, 2))
    }

    fn nudge(&self, p: &PlanePoint, d: &mut Draw) -> PlanePoint {
        PlanePoint(p.0.clone(), &p.1 - d.epsilon())
    }
}

/// A label space the generators can sample non-basepoint labels from.
pub trait SampleLabels: LabelSpace {
    fn sample_label(&self, d: &mut Draw) -> Self::Label;
}

fn unit_label_value(d: &mut Draw) -> Scalar {
    if d.chance(0.125) {
        Scalar::one()
    } else {
        d.open_unit()
    }
}

impl SampleLabels for IntervalLabels {
    fn sample_label(&self, d: &mut Draw) -> IntervalLabel {
        IntervalLabel::new(unit_label_value(d)).expect("value in (0, 1]")
    }
}

impl SampleLabels for WedgeOfArcs {
    fn sample_label(&self, d: &mut Draw) -> WedgeLabel {
        let arc = 1 + d.index(self.arcs() as usize) as u32;
        WedgeLabel::new(arc, unit_label_value(d)).expect("value in (0, 1]")
    }
}

impl SampleLabels for DiscreteLabels {
    fn sample_label(&self, d: &mut Draw) -> DiscreteLabel {
        DiscreteLabel(1 + d.index(self.labels() as usize) as u32)
    }
}

/// Configuration generators over a fixed pair of models.
pub struct Generator<'a, Y, X> {
    plan: &'a TrialPlan,
    base: &'a Y,
    labels: &'a X,
    draw: Draw,
}

impl<'a, Y: SampleBase, X: SampleLabels> Generator<'a, Y, X> {
    pub fn new(plan: &'a TrialPlan, base: &'a Y, labels: &'a X) -> Self {
        Self::with_stream(plan, base, labels, 0)
    }

    /// An independent generator for the named stream; different properties
    /// draw from different streams so they do not perturb each other.
    pub fn with_stream(plan: &'a TrialPlan, base: &'a Y, labels: &'a X, stream: u64) -> Self {
        let seed = plan.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        Generator {
            plan,
            base,
            labels,
            draw: Draw::new(seed, plan.max_denominator, plan.adversarial),
        }
    }

    pub fn plan(&self) -> &TrialPlan {
        self.plan
    }

    pub fn base(&self) -> &Y {
        self.base
    }

    pub fn labels(&self) -> &X {
        self.labels
    }

    pub fn draw(&mut self) -> &mut Draw {
        &mut self.draw
    }

    fn entry_count(&mut self) -> usize {
        self.draw.rng.random_range(0..=self.plan.max_entries)
    }

    pub fn label(&mut self) -> X::Label {
        self.labels.sample_label(&mut self.draw)
    }

    /// Mostly non-basepoint labels, occasionally the basepoint so that
    /// normalization has something to delete.
    fn raw_label(&mut self) -> X::Label {
        if self.draw.chance(0.05) {
            self.labels.basepoint()
        } else {
            self.label()
        }
    }

    pub fn point(&mut self) -> Y::Point {
        self.base.sample_point(&mut self.draw)
    }

    /// `k` distinct base points.
    pub fn distinct_points(&mut self, k: usize) -> Result<Vec<Y::Point>> {
        if self.base.capacity().is_some_and(|c| c < k) {
            return Err(Error::Generation(format!(
                "{} distinct points requested from a base space with fewer",
                k
            )));
        }
        let mut out: Vec<Y::Point> = Vec::with_capacity(k);
        let mut attempts = 0;
        while out.len() < k {
            attempts += 1;
            if attempts > RETRIES * (k + 1) {
                return Err(Error::Generation("could not draw distinct base points".into()));
            }
            let p = match out.last() {
                Some(last) if self.draw.adversarial && self.draw.chance(0.3) => {
                    self.base.nudge(last, &mut self.draw)
                }
                _ => self.point(),
            };
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// A small pool of base points, so that several entries share one.
    fn pool(&mut self) -> Result<Vec<Y::Point>> {
        let cap = self.base.capacity().unwrap_or(usize::MAX).min(3);
        let k = self.draw.rng.random_range(1..=cap);
        self.distinct_points(k)
    }

    fn check_bounds(&self) -> Result<()> {
        if let Some(c) = self.base.capacity() {
            if c < self.plan.max_entries {
                return Err(Error::Generation(format!(
                    "max entries {} exceeds the {} points of the base space",
                    self.plan.max_entries, c
                )));
            }
        }
        Ok(())
    }

    /// A point of `C(Y, X)`.
    pub fn point_config(&mut self) -> Result<PointConfig<Y::Point, X::Label>> {
        self.check_bounds()?;
        let j = self.entry_count();
        let ys = self.distinct_points(j)?;
        let raw = ys.into_iter().map(|y| PointEntry::new(y, self.raw_label())).collect();
        PointConfig::normalize(raw)
    }

    /// A point of `C(R^n x Y, X)`; coordinates lie in `[-4, 4]`.
    pub fn product_config(&mut self, n: usize) -> Result<PointConfig<ProductPoint<Y::Point>, X::Label>> {
        let j = self.entry_count();
        let pool = self.pool()?;
        let mut pts: Vec<ProductPoint<Y::Point>> = Vec::with_capacity(j);
        let mut attempts = 0;
        while pts.len() < j {
            attempts += 1;
            if attempts > RETRIES * (j + 1) {
                return Err(Error::Generation("could not draw distinct points of R^n x Y".into()));
            }
            let p = match pts.last() {
                Some(last) if self.draw.adversarial && self.draw.chance(0.4) => {
                    let mut coords = last.coords.clone();
                    let k = self.draw.index(n);
                    coords[k] = &coords[k] + self.draw.epsilon();
                    ProductPoint::new(coords, last.base.clone())
                }
                _ => {
                    let coords = (0..n).map(|_| self.draw.rational(-4, 4)).collect();
                    ProductPoint::new(coords, pool[self.draw.index(pool.len())].clone())
                }
            };
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let raw = pts.into_iter().map(|p| PointEntry::new(p, self.raw_label())).collect();
        PointConfig::normalize(raw)
    }

    /// `k` strictly increasing points of `(0, 1)`.
    fn cuts(&mut self, k: usize) -> Result<Vec<Scalar>> {
        for _ in 0..RETRIES {
            let mut c: Vec<Scalar> = (0..k).map(|_| self.draw.open_unit()).collect();
            c.sort();
            c.dedup();
            if c.len() == k {
                return Ok(c);
            }
        }
        Err(Error::Generation(format!("could not draw {k} distinct cut points")))
    }

    /// A point of `C̄_1(Y, X)`: disjoint segments inside `(0, 1)`, built by
    /// sorting random cut points per base point. Adjacent segments sometimes
    /// touch.
    pub fn segment_config(&mut self) -> Result<SegmentConfig<Y::Point, X::Label>> {
        let j = self.entry_count();
        let pool = self.pool()?;
        let mut counts = vec![0usize; pool.len()];
        for _ in 0..j {
            counts[self.draw.index(pool.len())] += 1;
        }
        let mut raw = Vec::with_capacity(j);
        for (y, &k) in pool.iter().zip(&counts) {
            if k == 0 {
                continue;
            }
            let mut c = self.cuts(2 * k)?;
            for i in 1..k {
                if self.draw.chance(0.25) {
                    c[2 * i] = c[2 * i - 1].clone();
                }
            }
            for pair in c.chunks(2) {
                raw.push(Segment::new(pair[0].clone(), pair[1].clone(), y.clone(), self.raw_label()));
            }
        }
        SegmentConfig::normalize(raw)
    }

    /// A point of `C_1(Y, X)` spread over `R`, obtained by undoing the
    /// rescaling of a generated configuration.
    pub fn line_segment_config(&mut self) -> Result<SegmentConfig<Y::Point, X::Label>> {
        let w = self.segment_config()?;
        crate::scanning::rescale_from_unit(&w)
    }

    /// A point of `E_1(Y, X)`; the parameter is often an endpoint of `w`.
    pub fn path_point(&mut self) -> Result<PathPoint<Y::Point, X::Label>> {
        let w = self.segment_config()?;
        let ends: Vec<Scalar> = w.iter().flat_map(|s| [s.a.clone(), s.b.clone()]).collect();
        let s = match self.draw.rng.random_range(0..6) {
            0 => Scalar::zero(),
            1 => Scalar::one(),
            2 | 3 if !ends.is_empty() => ends[self.draw.index(ends.len())].clone(),
            _ => self.draw.open_unit(),
        };
        PathPoint::new(w, s)
    }

    fn suspension_label(&mut self, x: X::Label) -> SuspensionLabel<X::Label> {
        SuspensionLabel::single(x, self.draw.open_unit())
    }

    /// A point of `C(Y, ΣX)` with every label a genuine suspension point.
    pub fn scan_config(&mut self) -> Result<ScanConfig<Y::Point, X::Label>> {
        self.check_bounds()?;
        let j = self.entry_count();
        let ys = self.distinct_points(j)?;
        let raw = ys
            .into_iter()
            .map(|y| {
                let x = self.label();
                PointEntry::new(y, self.suspension_label(x))
            })
            .collect();
        PointConfig::normalize(raw)
    }

    /// A point of `C(Y, ΣX)` placed relative to the neighborhood `U` (for
    /// the standard margin `1/4`). Returns `None` when the region is empty
    /// for this label model.
    pub fn scan_config_in(&mut self, region: URegion) -> Result<Option<ScanConfig<Y::Point, X::Label>>> {
        let z = self.scan_config()?;
        let quarter = Scalar::new(1, 4);
        let mut entries = z.into_entries();
        match region {
            URegion::Any => {}
            URegion::Inside => {
                if entries.is_empty() {
                    let y = self.point();
                    let x = self.label();
                    entries.push(PointEntry::new(y, self.suspension_label(x)));
                }
                let k = self.draw.index(entries.len());
                let x = entries[k].x.label().expect("generated labels are genuine").clone();
                let s = &quarter * self.draw.open_unit();
                let s = if self.draw.chance(0.5) { s } else { Scalar::one() - s };
                entries[k].x = SuspensionLabel::single(x, s);
            }
            URegion::Outside => {
                for e in &mut entries {
                    let mut x = e.x.label().expect("generated labels are genuine").clone();
                    let mut tries = 0;
                    while self.labels.in_w(&x) {
                        tries += 1;
                        if tries > RETRIES {
                            return Ok(None);
                        }
                        x = self.label();
                    }
                    let s = &quarter + Scalar::half() * self.draw.closed_unit();
                    e.x = SuspensionLabel::single(x, s);
                }
            }
        }
        PointConfig::normalize(entries).map(Some)
    }

    /// A configuration of disjoint `n`-boxes inside `(0, 1)^n`.
    pub fn box_config(&mut self, n: usize) -> Result<BoxConfig<Y::Point, X::Label>> {
        let j = self.entry_count();
        let pool = self.pool()?;
        let mut accepted: Vec<BoxEntry<Y::Point, X::Label>> = Vec::with_capacity(j);
        for _ in 0..j {
            for _ in 0..RETRIES {
                let sides = (0..n)
                    .map(|_| {
                        let c = self.cuts(2)?;
                        Ok((c[0].clone(), c[1].clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let y = pool[self.draw.index(pool.len())].clone();
                let cand = BoxEntry::new(sides, y, self.label());
                if !accepted.iter().any(|b| b.y == cand.y && b.overlaps(&cand)) {
                    accepted.push(cand);
                    break;
                }
            }
        }
        BoxConfig::normalize(accepted)
    }

    /// A random injection `{0..i} -> {0..j}`.
    pub fn injection(&mut self, i: usize, j: usize) -> Result<Injection> {
        let mut all: Vec<usize> = (0..j).collect();
        all.shuffle(&mut self.draw.rng);
        all.truncate(i);
        Injection::new(all, j)
    }

    pub fn time(&mut self) -> Scalar {
        self.draw.closed_unit()
    }

    /// The plan's grid followed by its random times.
    pub fn times(&mut self) -> Vec<Scalar> {
        let mut t = self.plan.times.clone();
        for _ in 0..self.plan.random_times {
            t.push(self.draw.open_unit());
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::interval_label_space;

    fn plan(seed: u64, max_entries: usize) -> TrialPlan {
        TrialPlan { max_entries, ..TrialPlan::new(seed, 1) }
    }

    #[test]
    fn zero_entries_give_empty_configs() {
        let p = plan(1, 0);
        let (y, x) = (FiniteSites::new(4), interval_label_space());
        let mut g = Generator::new(&p, &y, &x);
        assert!(g.point_config().unwrap().is_empty());
        assert!(g.segment_config().unwrap().is_empty());
        assert!(g.box_config(2).unwrap().is_empty());
    }

    #[test]
    fn same_seed_same_output() {
        let p = plan(7, 6);
        let (y, x) = (RationalLine, WedgeOfArcs::new(2));
        let run = || {
            let mut g = Generator::new(&p, &y, &x);
            (g.segment_config().unwrap(), g.path_point().unwrap(), g.product_config(1).unwrap())
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn generated_segments_are_normal_forms() {
        let p = plan(11, 8);
        let (y, x) = (FiniteSites::new(8), DiscreteLabels::new(3));
        let mut g = Generator::new(&p, &y, &x);
        for _ in 0..200 {
            let w = g.segment_config().unwrap();
            assert!(w.in_unit_interval());
            assert_eq!(SegmentConfig::normalize(w.clone().into_entries()).unwrap(), w);
            let b = g.box_config(2).unwrap();
            assert!(b.in_unit_cube());
        }
    }

    #[test]
    fn unsatisfiable_bounds_fail() {
        let p = plan(0, 5);
        let (y, x) = (FiniteSites::new(3), interval_label_space());
        let mut g = Generator::new(&p, &y, &x);
        assert!(matches!(g.point_config(), Err(Error::Generation(_))));
    }

    #[test]
    fn u_regions() {
        let p = plan(5, 4);
        let (y, x) = (TaxicabPlane, interval_label_space());
        let mut g = Generator::new(&p, &y, &x);
        for _ in 0..100 {
            let z = g.scan_config_in(URegion::Inside).unwrap().unwrap();
            assert!(crate::scanning::in_u(&x, &z));
            let z = g.scan_config_in(URegion::Outside).unwrap().unwrap();
            assert!(!crate::scanning::in_u(&x, &z));
        }
    }
}
