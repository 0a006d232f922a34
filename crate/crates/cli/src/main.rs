use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use labconf::harness::{self, BaseModel, Fault, LabelModel, TrialPlan, URegion};
use labconf::pipeline::{self, Pipeline, RenderMode};
use labconf::{Error, Scalar};

#[derive(Parser)]
#[command(name = "labconf", version, about = "Labeled configuration spaces in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Subcommand)]
enum Command {
    /// Print one seeded random configuration (point, line, segment, path, scan, box).
    Generate { kind: String },
    /// Run a pipeline such as "shrink 0 1/2 | alpha_eval 1/4" on JSON input.
    Apply {
        pipeline: String,
        /// Input file, or - for standard input.
        #[arg(long, short, default_value = "-")]
        input: String,
    },
    /// Run a property suite (equivalence, coefficient-system, loop, dold-thom, all).
    Verify { suite: String },
    /// Render JSON input as SVG (config, loop, homotopy).
    Render {
        mode: String,
        #[arg(long, short, default_value = "-")]
        input: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Output format; text pretty-prints JSON and gives the summary form of reports.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// sites[:N], line, plane, or all (verify only).
    #[arg(long, global = true, default_value = "sites")]
    base: String,
    /// interval, wedge[:N], discrete[:N], or all (verify only).
    #[arg(long, global = true, default_value = "interval")]
    labels: String,
    /// Maximum number of entries in generated configurations.
    #[arg(long = "max-j", global = true)]
    max_j: Option<usize>,
    #[arg(long = "max-den", global = true)]
    max_den: Option<u64>,
    #[arg(long = "inject-fault", global = true)]
    inject_fault: Option<String>,
    /// Dimension for line and box generation.
    #[arg(long, global = true, default_value_t = 1)]
    dim: usize,
    /// Comma-separated times, e.g. 0,1/4,1/2,3/4,1.
    #[arg(long, global = true)]
    times: Option<String>,
    #[arg(long, global = true)]
    adversarial: bool,
    #[arg(long = "u-region", global = true, value_parser = ["inside", "outside", "any"])]
    u_region: Option<String>,
}

enum Failure {
    Property,
    Input(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input() {
            Failure::Input(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

fn io_err(path: &str) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{path}: {e}"))
}

fn read_json(path: &str) -> Result<serde_json::Value, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).map_err(io_err(path))?;
    } else {
        text = fs::read_to_string(path).map_err(io_err(path))?;
    }
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("input: {e}")))
}

fn parse_times(s: &str) -> Result<Vec<Scalar>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<Scalar>().map_err(|e| Failure::Input(format!("--times: {e}"))))
        .collect()
}

impl Global {
    fn models<T: std::str::FromStr<Err = Error> + Copy>(s: &str, all: &[T]) -> Result<Vec<T>, Failure> {
        if s == "all" {
            Ok(all.to_vec())
        } else {
            Ok(vec![s.parse()?])
        }
    }

    fn base(&self) -> Result<BaseModel, Failure> {
        Ok(self.base.parse()?)
    }

    fn labels(&self) -> Result<LabelModel, Failure> {
        Ok(self.labels.parse()?)
    }

    fn plan(&self) -> Result<TrialPlan, Failure> {
        let mut plan = if self.adversarial {
            TrialPlan::adversarial(self.seed, self.trials)
        } else {
            TrialPlan::new(self.seed, self.trials)
        };
        if let Some(n) = self.max_j {
            plan.max_entries = n;
        }
        if let Some(d) = self.max_den {
            plan.max_denominator = d;
        }
        if let Some(t) = &self.times {
            plan.times = parse_times(t)?;
        }
        if let Some(f) = &self.inject_fault {
            plan.fault = Some(f.parse::<Fault>()?);
        }
        plan.u_region = match self.u_region.as_deref() {
            Some("outside") => URegion::Outside,
            Some("any") => URegion::Any,
            _ => URegion::Inside,
        };
        Ok(plan)
    }

    fn emit_json(&self, v: &serde_json::Value) -> Result<(), Failure> {
        let text = match self.format {
            Some(Format::Text) => serde_json::to_string_pretty(v),
            _ => serde_json::to_string(v),
        }
        .map_err(|e| Failure::Domain(e.to_string()))?;
        self.emit(&text)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        let mut text = text.to_owned();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.out {
            Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
            None => io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Input(format!("stdout: {e}"))),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Generate { kind } => {
            let plan = TrialPlan { base: g.base()?, labels: g.labels()?, ..g.plan()? };
            g.emit_json(&harness::generate(kind, &plan, g.dim)?)
        }
        Command::Apply { pipeline: text, input } => {
            let p: Pipeline = text.parse()?;
            let v = read_json(input)?;
            let out = pipeline::run_pipeline(&p, &v, g.base()?, g.labels()?).map_err(|e| {
                if e.error.is_input() {
                    Failure::Input(e.to_string())
                } else {
                    Failure::Domain(e.to_string())
                }
            })?;
            g.emit_json(&out)
        }
        Command::Verify { suite } => {
            if suite != "all" && !harness::SUITES.contains(&suite.as_str()) {
                return Err(Failure::Input(format!(
                    "unknown suite '{suite}' (expected one of {}, all)",
                    harness::SUITES.join(", ")
                )));
            }
            let bases = Global::models(&g.base, &BaseModel::ALL)?;
            let labels = Global::models(&g.labels, &LabelModel::ALL)?;
            let report = harness::run_suite_models(suite, &g.plan()?, &bases, &labels)?;
            match g.format {
                Some(Format::Json) => g.emit_json(
                    &serde_json::to_value(&report).map_err(|e| Failure::Domain(e.to_string()))?,
                )?,
                _ => g.emit(&report.to_text())?,
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Property)
            }
        }
        Command::Render { mode, input } => {
            let mode: RenderMode = mode.parse()?;
            let times = match &g.times {
                Some(t) => parse_times(t)?,
                None => ["0", "1/4", "1/2", "3/4", "1"].iter().map(|t| t.parse().expect("literal")).collect(),
            };
            let v = read_json(input)?;
            g.emit(&pipeline::render_input(mode, &v, g.base()?, g.labels()?, &times)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
