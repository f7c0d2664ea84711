//! Verification runs and experimental scans with their reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::hexagon::{defect_scan, verify_chart, Chart, ChartReport, DefectReport, Execution, ScanOptions};
use crate::webs::{cubic_series_params, preset, WebConfig};

/// Hexagon sizes used by verification, as fractions of the domain radius.
pub const SIZE_FRACTIONS: [f64; 3] = [0.05, 0.1, 0.2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 100, seed: 1, tol: 1e-8, execution: Execution::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit, pass: value <= limit }
    }

    fn above(name: &str, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit, pass: value > limit }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub web: String,
    pub expected_hexagonal: bool,
    pub experimental: bool,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub scan: DefectReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartReport>,
    pub config: WebConfig,
}

impl VerifyReport {
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Closure scan plus, for webs that have one, the straightening chart.
/// Every web is held to the closure tolerance, so controls fail.
pub fn verify(cfg: &WebConfig, opts: &VerifyOptions) -> Result<VerifyReport> {
    let w = cfg.build()?;
    let scan_opts = ScanOptions::relative(&w, opts.samples, &SIZE_FRACTIONS, opts.seed).execution(opts.execution);
    let scan = defect_scan(&w, &scan_opts)?;
    let mut checks = vec![Check::at_most("closure max relative defect", scan.max_rel(), opts.tol)];
    let chart = match Chart::for_params(&cfg.params) {
        Some(c) => match verify_chart(&w, &c, opts.samples.clamp(10, 50), opts.seed) {
            Ok(r) => {
                checks.push(Check::at_most("chart max relative leaf deviation", r.max_relative, opts.tol));
                checks.push(Check::above("chart min jacobian", r.min_jacobian, 0.0));
                Some(r)
            }
            Err(Error::MisalignedChart) => {
                checks.push(Check { name: "chart evaluates on the domain".into(), value: 0.0, limit: 1.0, pass: false });
                None
            }
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(VerifyReport {
        web: w.name.clone(),
        expected_hexagonal: w.expected_hexagonal,
        experimental: w.experimental,
        samples: opts.samples,
        seed: opts.seed,
        tol: opts.tol,
        pass: checks.iter().all(|c| c.pass),
        checks,
        scan,
        chart,
        config: cfg.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Problem {
    /// Elliptic pencil in place of the hyperbolic one.
    #[serde(rename = "4.1")]
    EllipticReplacement,
    /// The cubic series counted three times.
    #[serde(rename = "4.2")]
    CubicSeries,
}

impl std::str::FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "4.1" => Ok(Problem::EllipticReplacement),
            "4.2" => Ok(Problem::CubicSeries),
            _ => Err(Error::InvalidConfig(format!("unknown problem '{s}', expected 4.1 or 4.2"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub web: String,
    /// `conjecture` or `control`.
    pub role: String,
    pub max_rel: f64,
    /// Threshold on the max relative defect: at most for a conjecture, above for a control.
    pub threshold: f64,
    pub supported: bool,
    pub scan: DefectReport,
}

/// Where the cubic series has three distinct real members.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRegionMap {
    pub x_min: f64,
    pub y_max: f64,
    pub step: f64,
    /// Top row first; `#` marks three real roots.
    pub rows: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentalReport {
    pub problem: Problem,
    pub label: String,
    pub seed: u64,
    pub samples: usize,
    pub rows: Vec<ExperimentRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<RootRegionMap>,
}

impl ExperimentalReport {
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn root_region_map(center: Point, half_width: f64, cells: usize) -> RootRegionMap {
    let step = 2.0 * half_width / cells as f64;
    let (x_min, y_max) = (center.x - half_width, center.y + half_width);
    let rows = (0..cells)
        .map(|i| {
            (0..cells)
                .map(|j| {
                    let p = Point::new(x_min + (j as f64 + 0.5) * step, y_max - (i as f64 + 0.5) * step);
                    if cubic_series_params(p).is_ok() { '#' } else { '.' }
                })
                .collect()
        })
        .collect();
    RootRegionMap { x_min, y_max, step, rows }
}

/// Defect statistics for an open problem and its control. Nothing is asserted.
pub fn scan_experimental(problem: Problem, samples: usize, seed: u64, execution: Execution) -> Result<ExperimentalReport> {
    let run = |key: &str, role: &str, threshold: f64| -> Result<ExperimentRow> {
        let w = preset(key)?.build()?;
        let scan = defect_scan(&w, &ScanOptions::relative(&w, samples, &SIZE_FRACTIONS, seed).execution(execution))?;
        let max_rel = scan.max_rel();
        let supported = if role == "conjecture" { max_rel <= threshold } else { max_rel > threshold };
        Ok(ExperimentRow { web: key.into(), role: role.into(), max_rel, threshold, supported, scan })
    };
    let (rows, region) = match problem {
        Problem::EllipticReplacement => {
            (vec![run("elliptic-swap", "conjecture", 1e-6)?, run("elliptic-swap-parabola", "control", 1e-4)?], None)
        }
        Problem::CubicSeries => {
            (vec![run("cubic-series", "conjecture", 1e-6)?], Some(root_region_map(Point::ORIGIN, 2.0, 40)))
        }
    };
    Ok(ExperimentalReport { problem, label: "experimental".into(), seed, samples, rows, region })
}
