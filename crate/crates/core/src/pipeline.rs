//! Named operations chained into pipelines over JSON data, e.g.
//! `shrink 0 1/2 | alpha_eval 1/4`.
//!
//! The kind of the input is read off the JSON shape:
//!
//! * `{"w": [...], "s": ..}` is a path point;
//! * an array of segments (`a`, `b`), boxes (`box`), or points (`y`, `x`)
//!   is the corresponding configuration, where points of `R^n x Y` carry a
//!   `product` tag and scanned points a `suspension` label;
//! * a two-element array of configurations or path points is a pair, used by
//!   the binary operations (`union`, `mu`, `xi`, `psi`);
//! * `[]` is the empty configuration of whatever kind the next step needs.

use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::configs::{BoxConfig, PointConfig, SegmentConfig};
use crate::error::{Error, Result};
use crate::harness::{with_models, BaseModel, LabelModel};
use crate::render::{self, Panel};
use crate::scanning::{
    alpha_bar_eval, alpha_eval, alpha_n_eval, fiber_retraction_homotopy, lambda_section, phi,
    phi_bar, phi_bar_n, phi_n, psi, psi_bar, q_eval, rescale_from_unit, rescale_to_unit,
    retraction_homotopy, separation, total_h_map, xi, xi_element, PathPoint, ScanConfig,
    SuspensionDeformation,
};
use crate::spaces::{
    BaseSpace, DiscreteLabels, FiniteSites, IntervalLabels, LabelSpace, ProductPoint, RationalLine,
    Scalar, TaxicabPlane, WedgeOfArcs,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Phi,
    PhiBar,
    Separation,
    Retract,
    Rescale,
    Unrescale,
    Alpha,
    AlphaN,
    Lambda,
    Shrink,
    Below,
    Union,
    Mu,
    Xi,
    Path,
    Iota,
    AlphaBar,
    Q,
    Psi,
    PsiBar,
    Fiber,
    TotalH,
    H,
    Level,
    InU,
    XiElement,
    K,
    Boxes,
    Normalize,
}

/// `(op, names, min args, max args)`.
const TABLE: &[(Op, &[&str], usize, usize)] = &[
    (Op::Phi, &["phi", "phi_n"], 0, 0),
    (Op::PhiBar, &["phi_bar", "phi_bar_n"], 0, 0),
    (Op::Separation, &["separation"], 0, 0),
    (Op::Retract, &["retract", "retraction_homotopy"], 1, 1),
    (Op::Rescale, &["rescale", "rescale_to_unit"], 0, 0),
    (Op::Unrescale, &["unrescale", "rescale_from_unit"], 0, 0),
    (Op::Alpha, &["alpha_eval", "alpha"], 1, 1),
    (Op::AlphaN, &["alpha_n", "alpha_n_eval"], 1, usize::MAX),
    (Op::Lambda, &["lambda", "lambda_section"], 0, 0),
    (Op::Shrink, &["shrink"], 2, 2),
    (Op::Below, &["below"], 1, 1),
    (Op::Union, &["union"], 0, 0),
    (Op::Mu, &["mu"], 0, 0),
    (Op::Xi, &["xi"], 0, 0),
    (Op::Path, &["path"], 1, 1),
    (Op::Iota, &["iota"], 0, 0),
    (Op::AlphaBar, &["alpha_bar", "alpha_bar_eval"], 1, 1),
    (Op::Q, &["q", "q_eval"], 0, 0),
    (Op::Psi, &["psi"], 0, 0),
    (Op::PsiBar, &["psi_bar"], 0, 0),
    (Op::Fiber, &["fiber", "fiber_retraction_homotopy"], 1, 1),
    (Op::TotalH, &["H", "H_map", "total_h_map"], 1, 1),
    (Op::H, &["h", "h_map"], 1, 1),
    (Op::Level, &["level", "filtration_level"], 0, 0),
    (Op::InU, &["in_U", "in_u"], 0, 0),
    (Op::XiElement, &["xi_element"], 0, 1),
    (Op::K, &["K", "contract"], 1, 1),
    (Op::Boxes, &["boxes"], 0, 0),
    (Op::Normalize, &["normalize"], 0, 0),
];

impl Op {
    pub fn name(&self) -> &'static str {
        TABLE.iter().find(|e| e.0 == *self).map(|e| e.1[0]).expect("every op is listed")
    }

    pub fn names() -> impl Iterator<Item = &'static str> {
        TABLE.iter().map(|e| e.1[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub op: Op,
    pub args: Vec<Scalar>,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.op.name())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pipeline {
    pub stages: Vec<Stage>,
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut stages = Vec::new();
        for part in text.split('|') {
            let mut words = part.split_whitespace();
            let Some(name) = words.next() else {
                return Err(Error::input(format!("empty stage in pipeline '{text}'")));
            };
            let (op, lo, hi) = TABLE
                .iter()
                .find(|e| e.1.contains(&name))
                .map(|e| (e.0, e.2, e.3))
                .ok_or_else(|| Error::input(format!("unknown operation '{name}'")))?;
            let args = words
                .map(|w| w.parse::<Scalar>().map_err(|e| Error::input(format!("{name}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if args.len() < lo || args.len() > hi {
                let want = match (lo, hi) {
                    (l, h) if l == h => format!("{l}"),
                    (l, usize::MAX) => format!("at least {l}"),
                    (l, h) => format!("{l} to {h}"),
                };
                return Err(Error::input(format!(
                    "{name} takes {want} parameter(s), got {}",
                    args.len()
                )));
            }
            stages.push(Stage { op, args });
        }
        Ok(Pipeline { stages })
    }
}

/// A failure inside a pipeline, tagged with the stage that raised it.
/// Stage 0 is the input itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageError {
    pub index: usize,
    pub stage: String,
    pub error: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {} ({}): {}", self.index, self.stage, self.error)
    }
}

impl std::error::Error for StageError {}

enum Datum<P, L> {
    Empty,
    Points(PointConfig<P, L>),
    Product(PointConfig<ProductPoint<P>, L>),
    Segments(SegmentConfig<P, L>),
    Boxes(BoxConfig<P, L>),
    Scan(ScanConfig<P, L>),
    Path(PathPoint<P, L>),
    Pair(Box<Datum<P, L>>, Box<Datum<P, L>>),
    Number(Scalar),
    Count(usize),
    Flag(bool),
}

fn model_tag(v: Option<&Value>) -> Option<&str> {
    v?.get("model")?.as_str()
}

fn is_config_like(v: &Value) -> bool {
    v.is_array() || (v.get("w").is_some() && v.get("s").is_some())
}

impl<P, L> Datum<P, L>
where
    P: crate::spaces::Carrier,
    L: crate::spaces::Carrier + crate::spaces::Pointed,
{
    fn kind(&self) -> &'static str {
        match self {
            Datum::Empty => "empty configuration",
            Datum::Points(_) => "configuration in Y",
            Datum::Product(_) => "configuration in R^n x Y",
            Datum::Segments(_) => "segment configuration",
            Datum::Boxes(_) => "box configuration",
            Datum::Scan(_) => "configuration with suspension labels",
            Datum::Path(_) => "path point",
            Datum::Pair(..) => "pair",
            Datum::Number(_) => "scalar",
            Datum::Count(_) => "count",
            Datum::Flag(_) => "flag",
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.is_object() && v.get("w").is_some() {
            return Ok(Datum::Path(serde_json::from_value(v.clone())?));
        }
        let Some(items) = v.as_array() else {
            return Err(Error::input("input must be a configuration array or a path point object"));
        };
        let Some(first) = items.first() else {
            return Ok(Datum::Empty);
        };
        if items.len() == 2 && items.iter().all(is_config_like) {
            return Ok(Datum::Pair(
                Box::new(Self::from_json(&items[0])?),
                Box::new(Self::from_json(&items[1])?),
            ));
        }
        let d = if first.get("a").is_some() {
            Datum::Segments(serde_json::from_value(v.clone())?)
        } else if first.get("box").is_some() {
            Datum::Boxes(serde_json::from_value(v.clone())?)
        } else if model_tag(first.get("y")) == Some("product") {
            Datum::Product(serde_json::from_value(v.clone())?)
        } else if model_tag(first.get("x")) == Some("suspension") {
            Datum::Scan(serde_json::from_value(v.clone())?)
        } else if first.get("y").is_some() {
            Datum::Points(serde_json::from_value(v.clone())?)
        } else {
            return Err(Error::input("cannot tell which kind of configuration this is"));
        };
        Ok(d)
    }

    fn to_json(&self) -> Result<Value> {
        let v = match self {
            Datum::Empty => Value::Array(vec![]),
            Datum::Points(c) => serde_json::to_value(c)?,
            Datum::Product(c) => serde_json::to_value(c)?,
            Datum::Segments(c) => serde_json::to_value(c)?,
            Datum::Boxes(c) => serde_json::to_value(c)?,
            Datum::Scan(c) => serde_json::to_value(c)?,
            Datum::Path(p) => serde_json::to_value(p)?,
            Datum::Pair(a, b) => Value::Array(vec![a.to_json()?, b.to_json()?]),
            Datum::Number(s) => serde_json::to_value(s)?,
            Datum::Count(n) => Value::from(*n),
            Datum::Flag(b) => Value::from(*b),
        };
        Ok(v)
    }

    fn mismatch(&self, want: &str) -> Error {
        Error::input(format!("expected a {want}, got a {}", self.kind()))
    }

    fn segments(self) -> Result<SegmentConfig<P, L>> {
        match self {
            Datum::Segments(w) => Ok(w),
            Datum::Empty => Ok(SegmentConfig::empty()),
            d => Err(d.mismatch("segment configuration")),
        }
    }

    fn scan(self) -> Result<ScanConfig<P, L>> {
        match self {
            Datum::Scan(z) => Ok(z),
            Datum::Empty => Ok(PointConfig::empty()),
            d => Err(d.mismatch("configuration with suspension labels")),
        }
    }

    fn path(self) -> Result<PathPoint<P, L>> {
        match self {
            Datum::Path(p) => Ok(p),
            d => Err(d.mismatch("path point")),
        }
    }

    fn product(self) -> Result<PointConfig<ProductPoint<P>, L>> {
        match self {
            Datum::Product(k) => Ok(k),
            Datum::Empty => Ok(PointConfig::empty()),
            d => Err(d.mismatch("configuration in R^n x Y")),
        }
    }

    fn pair(self) -> Result<(Datum<P, L>, Datum<P, L>)> {
        match self {
            Datum::Pair(a, b) => Ok((*a, *b)),
            d => Err(d.mismatch("pair")),
        }
    }
}

fn apply<Y, X>(base: &Y, labels: &X, stage: &Stage, d: Datum<Y::Point, X::Label>) -> Result<Datum<Y::Point, X::Label>>
where
    Y: BaseSpace,
    X: LabelSpace,
{
    let arg = |k: usize| &stage.args[k];
    let out = match stage.op {
        Op::Phi => match d {
            Datum::Boxes(b) => Datum::Product(phi_n(&b)),
            d => Datum::Product(phi(&d.segments()?)),
        },
        Op::PhiBar => {
            let k = d.product()?;
            if k.iter().all(|e| e.y.coords.len() == 1) {
                Datum::Segments(phi_bar(base, &k)?)
            } else {
                Datum::Boxes(phi_bar_n(base, &k)?)
            }
        }
        Op::Separation => Datum::Number(separation(base, &d.product()?)),
        Op::Retract => Datum::Segments(retraction_homotopy(base, arg(0), &d.segments()?)?),
        Op::Rescale => Datum::Segments(rescale_to_unit(&d.segments()?)),
        Op::Unrescale => Datum::Segments(rescale_from_unit(&d.segments()?)?),
        Op::Alpha => match d {
            Datum::Boxes(b) => Datum::Scan(alpha_n_eval(&b, &stage.args)?),
            d => Datum::Scan(alpha_eval(&d.segments()?, arg(0))),
        },
        Op::AlphaN => match d {
            Datum::Boxes(b) => Datum::Scan(alpha_n_eval(&b, &stage.args)?),
            Datum::Empty => Datum::Scan(PointConfig::empty()),
            d => return Err(d.mismatch("box configuration")),
        },
        Op::Lambda => Datum::Segments(lambda_section(&d.scan()?)?),
        Op::Shrink => Datum::Segments(d.segments()?.shrink(arg(0), arg(1))?),
        Op::Below => Datum::Segments(d.segments()?.below(arg(0))),
        Op::Union | Op::Mu | Op::Xi => {
            let (a, b) = d.pair()?;
            let (a, b) = (a.segments()?, b.segments()?);
            Datum::Segments(match stage.op {
                Op::Union => a.union(&b)?,
                Op::Mu => a.mu(&b)?,
                _ => xi(&a, &b)?,
            })
        }
        Op::Path => Datum::Path(PathPoint::new(d.segments()?, arg(0).clone())?),
        Op::Iota => Datum::Path(PathPoint::iota(d.segments()?)?),
        Op::AlphaBar => Datum::Scan(alpha_bar_eval(&d.path()?, arg(0))),
        Op::Q => Datum::Scan(q_eval(&d.path()?)),
        Op::Psi => {
            let (a, b) = d.pair()?;
            Datum::Path(psi(&a.segments()?, &b.scan()?)?)
        }
        Op::PsiBar => Datum::Segments(psi_bar(&d.path()?)),
        Op::Fiber => {
            let p = d.path()?;
            let z = q_eval(&p);
            Datum::Path(fiber_retraction_homotopy(arg(0), &p, &z)?)
        }
        Op::TotalH => Datum::Path(total_h_map(labels, arg(0), &d.path()?)),
        Op::H => Datum::Scan(SuspensionDeformation::default().h_map(labels, arg(0), &d.scan()?)),
        Op::Level => Datum::Count(match d {
            Datum::Empty => 0,
            Datum::Points(c) => c.filtration_level(),
            Datum::Product(c) => c.filtration_level(),
            Datum::Scan(c) => c.filtration_level(),
            Datum::Segments(w) => w.len(),
            Datum::Boxes(b) => b.len(),
            d => return Err(d.mismatch("configuration")),
        }),
        Op::InU => Datum::Flag(SuspensionDeformation::default().in_u(labels, &d.scan()?)),
        Op::XiElement => match (d, stage.args.first()) {
            (Datum::Path(p), None) => Datum::Segments(xi_element(labels, p.config(), p.param())),
            (d, Some(s)) => Datum::Segments(xi_element(labels, &d.segments()?, s)),
            (d, None) => {
                return Err(Error::input(format!(
                    "xi_element needs a path point, or a segment configuration and s; got a {}",
                    d.kind()
                )))
            }
        },
        Op::K => {
            let t = arg(0);
            let k = |x: &X::Label| labels.contract(t, x);
            match d {
                Datum::Points(c) => Datum::Points(c.map(Clone::clone, k)?),
                Datum::Product(c) => Datum::Product(c.map(Clone::clone, k)?),
                Datum::Boxes(b) => Datum::Boxes(b.map_labels(k)),
                d => Datum::Segments(d.segments()?.map_labels(k)),
            }
        }
        Op::Boxes => Datum::Boxes(BoxConfig::from(&d.segments()?)),
        Op::Normalize => d,
    };
    Ok(out)
}

fn run_typed<Y: BaseSpace, X: LabelSpace>(
    base: &Y,
    labels: &X,
    pipeline: &Pipeline,
    input: &Value,
) -> std::result::Result<Value, StageError> {
    let wrap = |index: usize, stage: String| move |error: Error| StageError { index, stage, error };
    let mut d = Datum::<Y::Point, X::Label>::from_json(input).map_err(wrap(0, "input".into()))?;
    for (k, stage) in pipeline.stages.iter().enumerate() {
        d = apply(base, labels, stage, d).map_err(wrap(k + 1, stage.to_string()))?;
    }
    d.to_json().map_err(wrap(pipeline.stages.len(), "output".into()))
}

/// Parses `input` under the chosen models and runs every stage in order.
pub fn run_pipeline(
    pipeline: &Pipeline,
    input: &Value,
    base: BaseModel,
    labels: LabelModel,
) -> std::result::Result<Value, StageError> {
    with_models!(base, labels, |y, x| run_typed(y, x, pipeline, input))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    Config,
    Loop,
    Homotopy,
}

impl FromStr for RenderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "config" => Ok(RenderMode::Config),
            "loop" => Ok(RenderMode::Loop),
            "homotopy" => Ok(RenderMode::Homotopy),
            _ => Err(Error::input(format!("unknown render mode '{s}' (config, loop, homotopy)"))),
        }
    }
}

fn config_panels<P, L>(d: Datum<P, L>, caption: &str) -> Result<Vec<Panel>>
where
    P: crate::spaces::Carrier,
    L: crate::spaces::Carrier + crate::spaces::Pointed,
{
    Ok(match d {
        Datum::Empty => vec![render::segment_panel(&SegmentConfig::<P, L>::empty(), caption)],
        Datum::Segments(w) => vec![render::segment_panel(&w, caption)],
        Datum::Product(k) => vec![render::point_panel(&k, caption)],
        Datum::Scan(z) => vec![render::scan_panel(&z, caption)],
        Datum::Path(p) => vec![render::path_panel(&p, caption)],
        Datum::Points(c) => {
            let placed = c.map(|y| ProductPoint::line(Scalar::half(), y.clone()), Clone::clone)?;
            vec![render::point_panel(&placed, caption)]
        }
        Datum::Boxes(b) => {
            // First coordinate only.
            let w = SegmentConfig::normalize(
                b.entries()
                    .iter()
                    .map(|e| {
                        let (a, b) = e.sides[0].clone();
                        crate::configs::Segment::new(a, b, e.y.clone(), e.x.clone())
                    })
                    .collect(),
            )
            .unwrap_or_default();
            vec![render::segment_panel(&w, &format!("{caption} (first coordinate)"))]
        }
        Datum::Pair(a, b) => {
            let mut v = config_panels(*a, "first")?;
            v.extend(config_panels(*b, "second")?);
            v
        }
        d => return Err(Error::input(format!("cannot render a {}", d.kind()))),
    })
}

fn render_typed<Y: BaseSpace, X: LabelSpace>(
    base: &Y,
    labels: &X,
    mode: RenderMode,
    input: &Value,
    times: &[Scalar],
) -> Result<String> {
    let d = Datum::<Y::Point, X::Label>::from_json(input)?;
    let panels = match (mode, d) {
        (RenderMode::Config, d) => config_panels(d, "configuration")?,
        (RenderMode::Loop, d) => {
            let w = d.segments()?;
            if !w.in_unit_interval() {
                return Err(Error::input("loop mode needs segments inside (0, 1)"));
            }
            render::loop_frames(&w, times)
        }
        (RenderMode::Homotopy, Datum::Path(p)) => render::total_h_frames(labels, &p, times),
        (RenderMode::Homotopy, d) => render::retraction_frames(base, &d.segments()?, times)?,
    };
    Ok(render::to_svg(&panels))
}

/// Renders JSON input as SVG: `config` draws it, `loop` draws `α(w)` at each
/// time, `homotopy` draws the retraction deformation (segment input) or `H_t`
/// (path input) at each time.
pub fn render_input(
    mode: RenderMode,
    input: &Value,
    base: BaseModel,
    labels: LabelModel,
    times: &[Scalar],
) -> Result<String> {
    if let Some(t) = times.iter().find(|t| !t.in_unit_interval()) {
        return Err(Error::input(format!("time {t} outside [0, 1]")));
    }
    with_models!(base, labels, |y, x| render_typed(y, x, mode, input, times))
}
