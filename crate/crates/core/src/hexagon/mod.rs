//! Closure hexagons, defect statistics and straightening charts.

mod charts;

pub use charts::{chart_b, chart_c, chart_d, chart_e, major_auxiliaries, verify_chart, Chart, ChartReport, Functional, LeafDeviation, MajorAux};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{intersect, GenCircle, Point};
use crate::webs::{Color, Web3};

/// Leaf followed from the previous vertex and the leaf through `O` it meets.
const PLAN: [(Color, Color); 6] = [
    (Color::Green, Color::Blue),
    (Color::Red, Color::Green),
    (Color::Blue, Color::Red),
    (Color::Green, Color::Blue),
    (Color::Red, Color::Green),
    (Color::Blue, Color::Red),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Index of the vertex produced, 2..=7.
    pub k: usize,
    pub along: Color,
    pub meets: Color,
    pub chosen: Point,
    pub rejected: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexTrace {
    pub o: Point,
    /// `A1` to `A7`.
    pub a: [Point; 7],
    pub defect: f64,
    pub steps: Vec<TraceStep>,
}

/// Runs the six-step closure construction from `a1` on the red leaf through `o`.
pub fn trace_hexagon(w: &Web3, o: Point, a1: Point) -> Result<HexTrace> {
    if !w.domain.contains(o) || !w.domain.contains(a1) {
        return Err(Error::StepFailed(1));
    }
    let leaves_o: Vec<GenCircle> =
        Color::ALL.iter().map(|&c| w.curve(c, o)).collect::<Result<_>>().map_err(|_| Error::StepFailed(1))?;
    let through_o = |c: Color| &leaves_o[c as usize];
    let red_o = through_o(Color::Red);
    if red_o.residual(a1).abs() > 1e-9 * w.domain.scale().max(red_o.scale()) {
        return Err(Error::InvalidConfig("A1 is not on the red leaf through O".into()));
    }
    let mut a = [a1; 7];
    let mut steps = Vec::with_capacity(6);
    for (i, &(along, meets)) in PLAN.iter().enumerate() {
        let k = i + 2;
        let prev = a[i];
        let leaf = w.curve(along, prev).map_err(|_| Error::StepFailed(k))?;
        let mut cands = intersect(&leaf, through_o(meets)).map_err(|_| Error::StepFailed(k))?;
        cands.sort_by(|p, q| p.dist(prev).total_cmp(&q.dist(prev)));
        let chosen = *cands.first().ok_or(Error::StepFailed(k))?;
        let rejected = cands.get(1).copied();
        if let Some(r) = rejected {
            let (d1, d2) = (chosen.dist(prev), r.dist(prev));
            if d2 - d1 <= 0.1 * d2 {
                return Err(Error::BranchAmbiguous(k));
            }
        }
        if !w.domain.contains(chosen) {
            return Err(Error::StepFailed(k));
        }
        a[i + 1] = chosen;
        steps.push(TraceStep { k, along, meets, chosen, rejected });
    }
    Ok(HexTrace { o, a, defect: a[6].dist(a[0]), steps })
}

/// `A1` at arc length `h` from `o` along the red leaf.
pub fn first_vertex(w: &Web3, o: Point, h: f64) -> Result<Point> {
    Ok(w.curve(Color::Red, o)?.walk(o, h))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, else runs sequentially.
    #[default]
    Parallel,
}

fn run_indexed<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = exec;
    (0..n).map(f).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub n_centers: usize,
    /// Hexagon sizes as absolute lengths.
    pub radii: Vec<f64>,
    pub seed: u64,
    #[serde(skip)]
    pub execution: Execution,
}

impl ScanOptions {
    /// Sizes given as fractions of the domain radius.
    pub fn relative(w: &Web3, n_centers: usize, fractions: &[f64], seed: u64) -> Self {
        ScanOptions {
            n_centers,
            radii: fractions.iter().map(|f| f * w.domain.radius).collect(),
            seed,
            execution: Execution::default(),
        }
    }

    pub fn execution(mut self, e: Execution) -> Self {
        self.execution = e;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefectRow {
    pub h: f64,
    pub attempted: usize,
    pub succeeded: usize,
    pub max_abs: f64,
    pub median_abs: f64,
    pub max_rel: f64,
    pub median_rel: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub web: String,
    pub seed: u64,
    pub n_centers: usize,
    pub rows: Vec<DefectRow>,
    /// Least-squares slope of ln(median defect) against ln h.
    pub slope: Option<f64>,
}

impl DefectReport {
    pub fn max_rel(&self) -> f64 {
        self.rows.iter().map(|r| r.max_rel).fold(0.0, f64::max)
    }

    pub fn row_near(&self, h: f64) -> Option<&DefectRow> {
        self.rows.iter().min_by(|a, b| (a.h - h).abs().total_cmp(&(b.h - h).abs()))
    }
}

/// Centers drawn uniformly from the inner half of the domain disk.
pub fn scan_centers(w: &Web3, n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = &w.domain;
    let mut out = Vec::with_capacity(n);
    let mut tries = 0;
    while out.len() < n && tries < 1000 * n.max(1) {
        tries += 1;
        let p = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if p.norm2() >= 1.0 {
            continue;
        }
        let q = d.center + p * (0.5 * d.radius);
        if d.contains(q) {
            out.push(q);
        }
    }
    out
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) }
}

/// Traces one hexagon per center and size and summarizes the defects.
pub fn defect_scan(w: &Web3, opts: &ScanOptions) -> Result<DefectReport> {
    if opts.n_centers == 0 || opts.radii.is_empty() {
        return Err(Error::InvalidConfig("scan needs centers and sizes".into()));
    }
    if opts.radii.iter().any(|&h| !(h > 0.0) || h > 0.3 * w.domain.radius * (1.0 + 1e-12)) {
        return Err(Error::InvalidConfig("hexagon sizes must lie in (0, 0.3 * domain radius]".into()));
    }
    let centers = scan_centers(w, opts.n_centers, opts.seed);
    let jobs: Vec<(Point, f64)> = opts.radii.iter().flat_map(|&h| centers.iter().map(move |&o| (o, h))).collect();
    let defects = run_indexed(jobs.len(), opts.execution, |i| {
        let (o, h) = jobs[i];
        first_vertex(w, o, h).and_then(|a1| trace_hexagon(w, o, a1)).map(|t| t.defect).ok()
    });
    let mut rows = Vec::with_capacity(opts.radii.len());
    for (j, &h) in opts.radii.iter().enumerate() {
        let mut ok: Vec<f64> = defects[j * centers.len()..(j + 1) * centers.len()].iter().flatten().copied().collect();
        let attempted = opts.n_centers;
        if 2 * ok.len() < attempted {
            return Err(Error::InsufficientValidTraces { attempted, succeeded: ok.len() });
        }
        let max_abs = ok.iter().copied().fold(0.0, f64::max);
        let median_abs = median(&mut ok);
        rows.push(DefectRow {
            h,
            attempted,
            succeeded: ok.len(),
            max_abs,
            median_abs,
            max_rel: max_abs / h,
            median_rel: median_abs / h,
        });
    }
    Ok(DefectReport {
        web: w.name.clone(),
        seed: opts.seed,
        n_centers: opts.n_centers,
        slope: log_log_slope(&rows),
        rows,
    })
}

fn log_log_slope(rows: &[DefectRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.median_abs > 0.0).map(|r| (r.h.ln(), r.median_abs.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests;
