//! JSON inputs: run configurations and boundary-coefficient files.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use thirdbvp::picard::{DEFAULT_MAX_ITER, DEFAULT_SPACING, DEFAULT_TOLERANCE};
use thirdbvp::{BoundaryConditions64, End, Grid64, QuadratureRule};

/// Settings for one `solve` run.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: Option<String>,
    pub h: Option<f64>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    #[serde(rename = "M")]
    pub bound: Option<f64>,
    pub rule: Option<String>,
    pub csv: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

/// A `RunConfig` with every default filled in and validated.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub problem: String,
    pub h: f64,
    pub intervals: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub bound: Option<f64>,
    pub rule: QuadratureRule,
    pub csv: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing run configuration {}", path.display()))
    }

    /// Fields of `over` win where present.
    pub fn merged(self, over: RunConfig) -> RunConfig {
        RunConfig {
            problem: over.problem.or(self.problem),
            h: over.h.or(self.h),
            tol: over.tol.or(self.tol),
            max_iter: over.max_iter.or(self.max_iter),
            bound: over.bound.or(self.bound),
            rule: over.rule.or(self.rule),
            csv: over.csv.or(self.csv),
            report: over.report.or(self.report),
        }
    }

    pub fn resolve(self) -> Result<Resolved> {
        let Some(problem) = self.problem else {
            bail!("no problem given; pass --problem or set `problem` in the config file");
        };
        let h = self.h.unwrap_or(DEFAULT_SPACING);
        let intervals = intervals_for(h)?;
        let tol = self.tol.unwrap_or(DEFAULT_TOLERANCE);
        if !(tol > 0.0 && tol.is_finite()) {
            bail!("tolerance must be positive, got {tol}");
        }
        let rule = match self.rule {
            Some(r) => r.parse().map_err(anyhow::Error::msg)?,
            None => QuadratureRule::default(),
        };
        Ok(Resolved {
            problem,
            h,
            intervals,
            tol,
            max_iter: self.max_iter.unwrap_or(DEFAULT_MAX_ITER),
            bound: self.bound,
            rule,
            csv: self.csv,
            report: self.report,
        })
    }
}

/// `1/h` when it is an integer of at least 2.
pub fn intervals_for(h: f64) -> Result<usize> {
    let grid = Grid64::from_spacing(h).with_context(|| format!("grid spacing h={h}"))?;
    Ok(grid.intervals())
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum EndName {
    Left,
    Right,
}

impl From<EndName> for End {
    fn from(e: EndName) -> Self {
        match e {
            EndName::Left => End::Left,
            EndName::Right => End::Right,
        }
    }
}

/// Boundary-coefficient file. `Bi[u] = ai u + bi u' + gi u''` evaluated at
/// `ends[i]`; the default layout is left, left, right.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BcFile {
    pub a1: f64,
    pub b1: f64,
    pub g1: f64,
    pub a2: f64,
    pub b2: f64,
    pub g2: f64,
    pub a3: f64,
    pub b3: f64,
    pub g3: f64,
    #[serde(default)]
    ends: Option<[EndName; 3]>,
}

impl BcFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing boundary coefficients {}", path.display()))
    }

    pub fn conditions(&self) -> BoundaryConditions64 {
        let rows = [
            [self.a1, self.b1, self.g1],
            [self.a2, self.b2, self.g2],
            [self.a3, self.b3, self.g3],
        ];
        let ends = self
            .ends
            .map(|e| e.map(End::from))
            .unwrap_or([End::Left, End::Left, End::Right]);
        BoundaryConditions64::with_ends(rows, ends)
    }
}
