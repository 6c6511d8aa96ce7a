//! Batch jobs: evaluate invariant fields on a grid, run the verification
//! suite, classify a normalization. The `ruled-polar` binary is a thin
//! wrapper around [`Job`].

mod config;
mod eval;

pub use config::{GridConfig, JobConfig, NormalizationConfig, OutputConfig, SurfaceConfig};
pub use eval::{EvalRow, CSV_HEADER};

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::grid::{Grid, GridPoint};
use crate::oracle::{residual_report, ReportOptions, ResidualReport, Tolerances};
use crate::polar::{classify, Classification, ClassifyOptions, PolarSupport};
use crate::relative::{SupportFamily, SupportFunction};
use crate::special::SpecialPolar;
use crate::surface::RuledSurfaceSpec;

/// Process exit codes of the command line front end.
pub mod exit {
    pub const OK: i32 = 0;
    /// `verify` found failing rows.
    pub const VERIFY_FAILED: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const EVALUATION: i32 = 3;
}

/// Exit code for an error: malformed input is a config error, anything
/// raised while evaluating is an evaluation error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AtPoint { source, .. } => exit_code(source),
        Error::Parse { .. } | Error::Config(_) | Error::InvalidSpec(_) | Error::Io { .. } => {
            exit::CONFIG
        }
        _ => exit::EVALUATION,
    }
}

/// A validated job ready to run.
#[derive(Debug, Clone)]
pub struct Job {
    pub config: JobConfig,
    pub spec: RuledSurfaceSpec,
    pub support: SupportFunction,
    pub grid: Grid,
    pub out_dir: PathBuf,
    pub tolerances: Tolerances,
}

impl Job {
    pub fn new(config: JobConfig, out_dir: impl Into<PathBuf>, tol_scale: f64) -> Result<Self> {
        if !(tol_scale.is_finite() && tol_scale > 0.0) {
            return Err(Error::Config(format!(
                "--tol-scale must be positive, got {tol_scale}"
            )));
        }
        let s = &config.surface;
        let (lo, hi) = s.domain;
        let spec = RuledSurfaceSpec::builder(
            ScalarExpr::parse(&s.delta)?,
            ScalarExpr::parse(&s.kappa)?,
            ScalarExpr::parse(&s.lambda)?,
        )
        .domain(lo, hi)
        .base(s.base.unwrap_or(lo))
        .build()?;
        let support = support_for(&config.normalization)?;
        let g = &config.grid;
        let u_range = g.u_range.unwrap_or_else(|| {
            let margin = (0.01 * (hi - lo)).max(0.02).min(0.25 * (hi - lo));
            (lo + margin, hi - margin)
        });
        let grid = Grid::new(u_range, g.u_count, g.v_range, g.v_count)?;
        if !(spec.contains(u_range.0) && spec.contains(u_range.1)) {
            return Err(Error::Config(format!(
                "grid u-range {u_range:?} leaves the domain [{lo}, {hi}]"
            )));
        }
        let tolerances = config.tolerances.scaled(tol_scale);
        Ok(Self {
            config,
            spec,
            support,
            grid,
            out_dir: out_dir.into(),
            tolerances,
        })
    }

    pub fn load(path: &Path, out_dir: impl Into<PathBuf>, tol_scale: f64) -> Result<Self> {
        Self::new(JobConfig::load(path)?, out_dir, tol_scale)
    }

    /// Grid points, moved off zeros of q.
    pub fn points(&self) -> Result<Vec<GridPoint>> {
        self.grid.points_avoiding_zeros(&self.spec, &self.support)
    }

    fn output(&self, name: &Option<PathBuf>) -> Option<PathBuf> {
        name.as_ref().map(|p| self.out_dir.join(p))
    }

    fn write(&self, path: &Path, contents: &str) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|source| Error::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
        std::fs::write(path, contents).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// The polar profile behind the normalization, if there is one.
    pub fn polar_profile(&self) -> Option<PolarSupport> {
        match self.support.family() {
            SupportFamily::Euclidean => Some(PolarSupport::new(ScalarExpr::constant(1.0))),
            SupportFamily::Polar(p) => Some(p.clone()),
            _ => None,
        }
    }

    /// Evaluates the invariant table and writes the CSV and OBJ outputs
    /// that are configured.
    pub fn run_eval(&self) -> Result<EvalOutcome> {
        let points = self.points()?;
        let rows = eval::evaluate(self, &points)?;
        let csv = eval::to_csv(&rows);
        let csv_path = self.output(&self.config.outputs.csv);
        if let Some(p) = &csv_path {
            self.write(p, &csv)?;
        }
        let obj_path = self.output(&self.config.outputs.obj);
        if let Some(p) = &obj_path {
            self.write(p, &eval::to_obj(self, &points)?)?;
        }
        Ok(EvalOutcome {
            rows,
            csv,
            csv_path,
            obj_path,
        })
    }

    /// Runs the residual report and, for polar profiles, the classifier.
    pub fn run_verify(&self) -> Result<VerifyOutcome> {
        let points = self.points()?;
        let opts = ReportOptions {
            tolerances: self.tolerances,
            corrupt_pick: self.config.negative_control,
        };
        let report = residual_report(&self.spec, &self.support, &points, &opts);
        let predicates = match self.polar_profile() {
            Some(f) => Some(classify(&self.spec, &f, &ClassifyOptions::default())?),
            None => None,
        };
        let outcome = VerifyOutcome {
            summary_line: format!("passed/failed/inconclusive: {}", report.summary),
            report,
            predicates,
        };
        if let Some(p) = self.output(&self.config.outputs.report) {
            self.write(&p, &outcome.to_json())?;
        }
        Ok(outcome)
    }

    pub fn run_classify(&self) -> Result<Classification> {
        let f = self.polar_profile().ok_or_else(|| {
            Error::Config(format!(
                "classify needs a polar normalization, got {}",
                self.support.family().tag()
            ))
        })?;
        let c = classify(&self.spec, &f, &ClassifyOptions::default())?;
        if let Some(p) = self.output(&self.config.outputs.classify) {
            self.write(&p, &classification_json(&c))?;
        }
        Ok(c)
    }
}

fn support_for(n: &NormalizationConfig) -> Result<SupportFunction> {
    Ok(match n {
        NormalizationConfig::Euclidean => SupportFunction::euclidean(),
        NormalizationConfig::Manhart { a } => {
            if !a.is_finite() {
                return Err(Error::Config(format!("Manhart exponent {a} is not finite")));
            }
            SupportFunction::manhart(*a)
        }
        NormalizationConfig::Polar { f } => SupportFunction::polar(PolarSupport::parse(f)?),
        NormalizationConfig::Special { c1, c2 } => {
            SupportFunction::polar(SpecialPolar::new(*c1, *c2)?.as_polar())
        }
    })
}

pub fn classification_json(c: &Classification) -> String {
    serde_json::to_string_pretty(c).expect("classification serializes") + "\n"
}

#[derive(Debug, Clone)]
pub struct EvalOutcome {
    pub rows: Vec<EvalRow>,
    pub csv: String,
    pub csv_path: Option<PathBuf>,
    pub obj_path: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutcome {
    pub summary_line: String,
    pub predicates: Option<Classification>,
    pub report: ResidualReport,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.report.all_passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            exit::OK
        } else {
            exit::VERIFY_FAILED
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
