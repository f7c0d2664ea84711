use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conics::{focal::directrix_feet, Conic, ConicKind, ConicShape, Focus};
use crate::error::{Error, Result};
use crate::geom::{angle_diff, distance_point_line, oriented_angle, Point};
use crate::webs::{Color, Web3, WebParams};

/// Chart component constant along the leaves of one foliation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Functional {
    U,
    V,
    Sum,
}

impl Functional {
    fn apply(self, (u, v): (f64, f64)) -> f64 {
        match self {
            Functional::U => u,
            Functional::V => v,
            Functional::Sum => u + v,
        }
    }
}

/// Straightening charts for the conic webs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "chart", rename_all = "lowercase")]
pub enum Chart {
    B { conic: Conic },
    C { conic: Conic, focus: Focus },
    D { conic: Conic, l: Point },
    E { conic: Conic },
}

impl Chart {
    pub fn name(&self) -> &'static str {
        match self {
            Chart::B { .. } => "b",
            Chart::C { .. } => "c",
            Chart::D { .. } => "d",
            Chart::E { .. } => "e",
        }
    }

    pub fn eval(&self, a: Point) -> Result<(f64, f64)> {
        match *self {
            Chart::B { conic } => chart_b(&conic, a),
            Chart::C { conic, focus } => chart_c(&conic, focus, a),
            Chart::D { conic, l } => chart_d(&conic, l, a),
            Chart::E { conic } => chart_e(&conic, a),
        }
    }

    /// Values are angles modulo this period.
    pub fn period(&self) -> Option<f64> {
        matches!(self, Chart::C { .. }).then_some(PI)
    }

    /// Which functional is constant on the leaves of each color.
    pub fn alignment(&self) -> [(Color, Functional); 3] {
        match self {
            Chart::C { .. } => [(Color::Red, Functional::U), (Color::Green, Functional::V), (Color::Blue, Functional::Sum)],
            _ => [(Color::Red, Functional::Sum), (Color::Green, Functional::U), (Color::Blue, Functional::V)],
        }
    }

    /// The chart belonging to a web configuration, if there is one.
    pub fn for_params(p: &WebParams) -> Option<Chart> {
        match *p {
            WebParams::MainB { conic } => Some(Chart::B { conic }),
            WebParams::MainC { conic, focus } => Some(Chart::C { conic, focus }),
            WebParams::MainD { conic, l } => Some(Chart::D { conic, l }),
            WebParams::MainE { conic } => Some(Chart::E { conic }),
            _ => None,
        }
    }

    fn diff(&self, x: f64, y: f64) -> f64 {
        match self.period() {
            Some(p) => angle_diff(x, y, p),
            None => x - y,
        }
    }
}

/// `(ln d(F1, left), -ln d(F2, right))`.
pub fn chart_b(conic: &Conic, a: Point) -> Result<(f64, f64)> {
    let tp = conic.tangent_lines_from_point(a)?;
    let f = conic.foci();
    if f.len() != 2 {
        return Err(Error::NotCentralConic);
    }
    let d1 = distance_point_line(f[0], &tp.left)?;
    let d2 = distance_point_line(f[1], &tp.right)?;
    if !(d1 > 0.0 && d2 > 0.0) {
        return Err(Error::OutsideDomain);
    }
    Ok((d1.ln(), -d2.ln()))
}

/// Angles from the focal line to the major axis and from the major axis to the left tangent.
pub fn chart_c(conic: &Conic, focus: Focus, a: Point) -> Result<(f64, f64)> {
    let f = conic.focus(focus);
    let tp = conic.tangent_lines_from_point(a)?;
    let axis = conic.major_axis().tangent_at(conic.center);
    let u = oriented_angle(a - f, axis).map_err(|_| Error::OutsideDomain)?;
    let v = oriented_angle(axis, tp.left.tangent_at(a))?;
    Ok((u, v))
}

/// `(ln s, ln t)` built from the directrix feet of the focal perpendiculars to the tangents.
pub fn chart_d(conic: &Conic, l: Point, a: Point) -> Result<(f64, f64)> {
    if conic.kind() != ConicKind::Parabola {
        return Err(Error::InvalidConfig("chart d needs a parabola".into()));
    }
    let f = conic.foci()[0];
    let delta = conic.directrix().ok_or(Error::DegenerateFoot)?.tangent_at(l);
    let tp = conic.tangent_lines_from_point(a)?;
    let (p, q) = directrix_feet(conic, a)?;
    let ratio = |foot: Point, dir: Point| {
        let fp = f.dist(foot);
        let c = dir.dot(delta).abs();
        let v = foot.dist(l) * c / fp;
        if !(fp > 0.0) || !(v > 0.0) || !v.is_finite() {
            return Err(Error::DegenerateFoot);
        }
        Ok(v.ln())
    };
    Ok((ratio(p, tp.left.tangent_at(a))?, ratio(q, tp.right.tangent_at(a))?))
}

/// Distances of the major-axis circle centers from the ellipse center, in units of the semi-minor axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorAux {
    pub s: f64,
    pub t: f64,
    /// `|R O_left|`, `R` the foot of `A` on the major axis.
    pub r_left: f64,
    pub r_right: f64,
    pub ar: f64,
}

pub fn major_auxiliaries(conic: &Conic, a: Point) -> Result<MajorAux> {
    let ConicShape::Ellipse { b, .. } = conic.shape else {
        return Err(Error::InvalidConfig("needs an ellipse".into()));
    };
    let e = conic.eccentricity();
    if (e - FRAC_1_SQRT_2).abs() > 1e-9 {
        return Err(Error::WrongEccentricity(e));
    }
    let (ml, mr) = conic.major_family_roots(a)?;
    let p = conic.to_local(a) / b;
    let (ml, mr) = (ml / b, mr / b);
    Ok(MajorAux { s: ml.abs(), t: mr.abs(), r_left: (p.x - ml).abs(), r_right: (p.x - mr).abs(), ar: p.y.abs() })
}

/// `(ln((1-s²)/s²), ln((1-t²)/t²))`.
pub fn chart_e(conic: &Conic, a: Point) -> Result<(f64, f64)> {
    let m = major_auxiliaries(conic, a)?;
    let g = |s: f64| {
        let v = (1.0 - s * s) / (s * s);
        if v > 0.0 && v.is_finite() { Ok(v.ln()) } else { Err(Error::OutsideDomain) }
    };
    Ok((g(m.s)?, g(m.t)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeafDeviation {
    pub color: Color,
    pub functional: Functional,
    pub leaves: usize,
    pub max_deviation: f64,
    pub range: f64,
    pub relative: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartReport {
    pub chart: String,
    pub web: String,
    pub seed: u64,
    pub samples: usize,
    pub foliations: Vec<LeafDeviation>,
    pub max_relative: f64,
    pub min_jacobian: f64,
}

const POINTS_PER_LEAF: usize = 20;

/// Samples leaves of each foliation and measures how far the aligned chart
/// component drifts along them, relative to its range over the domain.
pub fn verify_chart(w: &Web3, chart: &Chart, samples: usize, seed: u64) -> Result<ChartReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = &w.domain;
    let mut base = Vec::with_capacity(samples);
    let mut tries = 0;
    while base.len() < samples && tries < 1000 * samples.max(1) {
        tries += 1;
        let p = d.center + Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * d.radius;
        if d.contains(p) {
            base.push(p);
        }
    }
    let values: Vec<Option<(f64, f64)>> = base.iter().map(|&p| chart.eval(p).ok()).collect();
    let good = values.iter().flatten().count();
    if base.is_empty() || 2 * good < base.len() {
        return Err(Error::MisalignedChart);
    }

    let mut foliations = Vec::with_capacity(3);
    for (color, functional) in chart.alignment() {
        let at_base: Vec<f64> = values.iter().flatten().map(|&v| functional.apply(v)).collect();
        let first = at_base[0];
        let offsets = at_base.iter().map(|&x| chart.diff(x, first));
        let (lo, hi) = offsets.fold((0.0f64, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
        let range = hi - lo;
        let mut worst = 0.0f64;
        let mut leaves = 0;
        for (&p, v) in base.iter().zip(&values) {
            let Some(v) = v else { continue };
            let Ok(leaf) = w.curve(color, p) else { continue };
            let f0 = functional.apply(*v);
            let mut used = 0;
            for j in 0..=POINTS_PER_LEAF {
                let s = (j as f64 / POINTS_PER_LEAF as f64 - 0.5) * d.radius;
                let q = leaf.walk(p, s);
                if !d.contains(q) {
                    continue;
                }
                if let Ok(vq) = chart.eval(q) {
                    worst = worst.max(chart.diff(functional.apply(vq), f0).abs());
                    used += 1;
                }
            }
            if used > 1 {
                leaves += 1;
            }
        }
        let relative = if range > 0.0 { worst / range } else { f64::INFINITY };
        foliations.push(LeafDeviation { color, functional, leaves, max_deviation: worst, range, relative });
    }

    let step = 1e-5 * d.radius;
    let mut min_jacobian = f64::INFINITY;
    for &p in &base {
        let e = |q: Point| chart.eval(q);
        let (Ok(xp), Ok(xm), Ok(yp), Ok(ym)) =
            (e(p + Point::new(step, 0.0)), e(p - Point::new(step, 0.0)), e(p + Point::new(0.0, step)), e(p - Point::new(0.0, step)))
        else {
            continue;
        };
        let du_dx = chart.diff(xp.0, xm.0) / (2.0 * step);
        let dv_dx = chart.diff(xp.1, xm.1) / (2.0 * step);
        let du_dy = chart.diff(yp.0, ym.0) / (2.0 * step);
        let dv_dy = chart.diff(yp.1, ym.1) / (2.0 * step);
        min_jacobian = min_jacobian.min((du_dx * dv_dy - du_dy * dv_dx).abs());
    }

    let max_relative = foliations.iter().map(|f| f.relative).fold(0.0, f64::max);
    Ok(ChartReport {
        chart: chart.name().to_string(),
        web: w.name.clone(),
        seed,
        samples: base.len(),
        foliations,
        max_relative,
        min_jacobian,
    })
}
