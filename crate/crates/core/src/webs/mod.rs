//! 3-webs of circles: three foliations on a common domain, the catalog of
//! known hexagonal webs and the experimental ones.

mod catalog;
mod config;
mod foliation;

pub use catalog::{catalog, preset, preset_keys, CatalogEntry};
pub use config::{ShelekhovCase, WebConfig, WebParams};
pub use foliation::{
    class_cubic_normals, class_cubic_restricted, cubic_series_member, cubic_series_params, Foliation, Side,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conics::{Conic, ConicKind, Focus};
use crate::error::{Error, Result};
use crate::geom::{eq_rank, CircleEq, Domain, GenCircle, Point};
use crate::pencils::{ApollonianFamily, ApollonianSet, DarbouxConfig, Pencil, PencilKind, PencilSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }
}

/// Three foliations on a domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Web3 {
    pub name: String,
    pub red: Foliation,
    pub green: Foliation,
    pub blue: Foliation,
    pub domain: Domain,
    /// The web is known to be hexagonal.
    pub expected_hexagonal: bool,
    /// Open-problem or control web: statistics are reported, not asserted.
    pub experimental: bool,
}

impl Web3 {
    fn new(name: &str, red: Foliation, green: Foliation, blue: Foliation, domain: Domain) -> Self {
        Web3 {
            name: name.to_string(),
            red,
            green,
            blue,
            domain,
            expected_hexagonal: true,
            experimental: false,
        }
    }

    fn experimental(mut self, hexagonal: bool) -> Self {
        self.experimental = true;
        self.expected_hexagonal = hexagonal;
        self
    }

    /// The same web with the green and blue foliations exchanged.
    pub fn swap_green_blue(&self) -> Web3 {
        Web3 { green: self.blue.clone(), blue: self.green.clone(), ..self.clone() }
    }

    pub fn foliation(&self, c: Color) -> &Foliation {
        match c {
            Color::Red => &self.red,
            Color::Green => &self.green,
            Color::Blue => &self.blue,
        }
    }

    pub fn curve(&self, c: Color, a: Point) -> Result<GenCircle> {
        self.foliation(c).curve_through(a)
    }

    /// Smallest pairwise crossing angle of the three leaves through `a`.
    pub fn min_crossing_angle(&self, a: Point) -> Result<f64> {
        let r = self.red.curve_through(a)?;
        let g = self.green.curve_through(a)?;
        let b = self.blue.curve_through(a)?;
        Ok(r.crossing_angle(&g, a).min(g.crossing_angle(&b, a)).min(b.crossing_angle(&r, a)))
    }

    /// Samples points of the domain, checks that leaves exist and cross
    /// transversally, and that each leaf is returned again from points on it.
    pub fn check_domain(&self, samples: usize, seed: u64) -> DomainCheck {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = DomainCheck {
            samples: 0,
            failures: 0,
            min_angle: f64::INFINITY,
            max_leaf_error: 0.0,
        };
        let d = &self.domain;
        let mut tries = 0;
        while out.samples < samples && tries < samples * 50 {
            tries += 1;
            let p = d.center + Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * d.radius;
            if !d.contains(p) {
                continue;
            }
            out.samples += 1;
            match self.min_crossing_angle(p) {
                Ok(ang) => out.min_angle = out.min_angle.min(ang),
                Err(_) => {
                    out.failures += 1;
                    continue;
                }
            }
            for c in Color::ALL {
                let leaf = self.curve(c, p).expect("checked above");
                for k in 1..=3 {
                    let q = leaf.walk(p, 0.05 * d.radius * k as f64 * if k % 2 == 0 { -1.0 } else { 1.0 });
                    if !d.contains(q) {
                        continue;
                    }
                    match self.curve(c, q) {
                        Ok(again) => out.max_leaf_error = out.max_leaf_error.max(leaf_distance(&leaf, &again)),
                        Err(_) => out.max_leaf_error = f64::INFINITY,
                    }
                }
            }
        }
        out
    }
}

/// Distance between two generalized circles as normalized equations.
pub fn leaf_distance(g: &GenCircle, h: &GenCircle) -> f64 {
    let (Some(e), Some(f)) = (g.equation().normalized(), h.equation().normalized()) else {
        return f64::INFINITY;
    };
    let (e, f) = (e.to_array(), f.to_array());
    let plus = e.iter().zip(&f).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let minus = e.iter().zip(&f).map(|(x, y)| (x + y).abs()).fold(0.0, f64::max);
    let scale = e.iter().chain(&f).fold(1.0f64, |m, v| m.max(v.abs()));
    plus.min(minus) / scale
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainCheck {
    pub samples: usize,
    pub failures: usize,
    pub min_angle: f64,
    pub max_leaf_error: f64,
}

fn collinear(a: Point, b: Point, c: Point) -> bool {
    let s = 1f64.max(a.max_abs()).max(b.max_abs()).max(c.max_abs());
    (b - a).cross(c - a).abs() <= 1e-12 * s * s
}

fn distinct(pts: &[Point]) -> bool {
    pts.iter().enumerate().all(|(i, p)| pts[i + 1..].iter().all(|q| p.dist(*q) > 1e-12 * 1f64.max(p.max_abs())))
}

pub fn pappus_web(r: Point, g: Point, b: Point, domain: Domain) -> Result<Web3> {
    if !distinct(&[r, g, b]) || collinear(r, g, b) {
        return Err(Error::InvalidConfig("pencil vertices must be three non-collinear points".into()));
    }
    Ok(Web3::new(
        "pappus",
        Foliation::Pencil(Pencil::lines_through(r)),
        Foliation::Pencil(Pencil::lines_through(g)),
        Foliation::Pencil(Pencil::lines_through(b)),
        domain,
    ))
}

pub fn brianchon_web(conic: Conic, vertex: Point, domain: Domain) -> Result<Web3> {
    Ok(Web3::new(
        "brianchon",
        Foliation::Pencil(Pencil::lines_through(vertex)),
        Foliation::Tangent { conic, side: Side::Left },
        Foliation::Tangent { conic, side: Side::Right },
        domain,
    ))
}

pub fn blaschke_web(a: Point, b: Point, c: Point, domain: Domain) -> Result<Web3> {
    if !distinct(&[a, b, c]) {
        return Err(Error::InvalidConfig("vertices must be distinct".into()));
    }
    Ok(Web3::new(
        "blaschke",
        Foliation::Pencil(Pencil::elliptic(a, b)?),
        Foliation::Pencil(Pencil::elliptic(b, c)?),
        Foliation::Pencil(Pencil::elliptic(c, a)?),
        domain,
    ))
}

/// Blaschke web whose third pencil has its vertex `c` moved by `shift`.
pub fn blaschke_perturbed_web(a: Point, b: Point, c: Point, shift: Point, domain: Domain) -> Result<Web3> {
    let mut w = blaschke_web(a, b, c, domain)?;
    w.blue = Foliation::Pencil(Pencil::elliptic(c + shift, a)?);
    w.name = "blaschke-perturbed".into();
    Ok(w.experimental(false))
}

pub fn graf_sauer_web(coeffs: [f64; 10], domain: Domain) -> Result<Web3> {
    if coeffs.iter().all(|c| *c == 0.0) || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidConfig("class-3 curve needs nonzero finite coefficients".into()));
    }
    let leaf = |index| Foliation::ClassCubic { coeffs, index };
    Ok(Web3::new("graf-sauer", leaf(0), leaf(1), leaf(2), domain))
}

pub fn volk_strubecker_web(r: Point, g: Point, b: Point, cfg: DarbouxConfig, domain: Domain) -> Result<Web3> {
    cfg.validate()?;
    let base = pappus_web(r, g, b, domain.clone())?;
    let lift = |f: Foliation| Foliation::Darboux { cfg, base: Box::new(f) };
    Ok(Web3::new("volk-strubecker", lift(base.red), lift(base.green), lift(base.blue), domain))
}

pub fn apollonian_web(pencil: &PencilSpec, set1: &ApollonianSet, set2: &ApollonianSet, domain: Domain) -> Result<Web3> {
    let p = pencil.build()?;
    Ok(Web3::new(
        "apollonian",
        Foliation::Apollonian(ApollonianFamily::new(&p, set1)?),
        Foliation::Apollonian(ApollonianFamily::new(&p, set2)?),
        Foliation::Pencil(p),
        domain,
    ))
}

fn unit(e: CircleEq) -> CircleEq {
    e.scaled(1.0 / e.max_abs())
}

fn pencils_orthogonal(p: &Pencil, q: &Pencil) -> bool {
    let (a1, a2) = p.basis();
    let (b1, b2) = q.basis();
    [a1, a2]
        .iter()
        .all(|x| [b1, b2].iter().all(|y| unit(*x).lorentz(&unit(*y)).abs() <= 1e-9))
}

fn share_circle(p: &Pencil, q: &Pencil) -> bool {
    let (a1, a2) = p.basis();
    let (b1, b2) = q.basis();
    eq_rank(&[unit(a1), unit(a2), unit(b1), unit(b2)], 1e-9) <= 3
}

fn same_point(a: Point, b: Point) -> bool {
    a.dist(b) <= 1e-9 * 1f64.max(a.max_abs())
}

fn same_pair(p: &[Point], a: Point, b: Point) -> bool {
    matches!(p, &[x, y] if (same_point(x, a) && same_point(y, b)) || (same_point(x, b) && same_point(y, a)))
}

/// Checks the incidence conditions of a pencil triple; returns a reason on failure.
fn shelekhov_check(case: ShelekhovCase, p: [&Pencil; 3]) -> std::result::Result<(), String> {
    use PencilKind::*;
    let kinds = p.map(|q| q.kind());
    match case {
        ShelekhovCase::A => {
            let eqs: Vec<CircleEq> = p.iter().flat_map(|q| [unit(q.basis().0), unit(q.basis().1)]).collect();
            (eq_rank(&eqs, 1e-9) == 3).then_some(()).ok_or("pencils do not lie in one bundle".into())
        }
        ShelekhovCase::D => {
            if !pencils_orthogonal(p[0], p[1]) {
                return Err("first two pencils are not orthogonal".into());
            }
            (share_circle(p[0], p[2]) && share_circle(p[1], p[2]))
                .then_some(())
                .ok_or("third pencil must share a circle with each of the others".into())
        }
        ShelekhovCase::E => {
            if kinds != [Parabolic, Parabolic, Hyperbolic] {
                return Err("expected two parabolic pencils and a hyperbolic one".into());
            }
            let (v1, v2) = (p[0].vertices(), p[1].vertices());
            if v1.len() != 1 || v2.len() != 1 || !same_point(v1[0], v2[0]) || !pencils_orthogonal(p[0], p[1]) {
                return Err("parabolic pencils must be orthogonal with a common vertex".into());
            }
            p[2].limiting_points()
                .iter()
                .any(|l| same_point(*l, v1[0]))
                .then_some(())
                .ok_or("a limiting point must sit at the common vertex".into())
        }
        ShelekhovCase::F | ShelekhovCase::G => {
            let want = if case == ShelekhovCase::F { [Elliptic; 3] } else { [Elliptic, Elliptic, Hyperbolic] };
            if kinds != want {
                return Err(format!("expected pencil kinds {want:?}"));
            }
            let (ab, bc) = (p[0].vertices(), p[1].vertices());
            let third = if case == ShelekhovCase::F { p[2].vertices() } else { p[2].limiting_points() };
            if ab.len() != 2 || bc.len() != 2 {
                return Err("elliptic pencils need two finite vertices".into());
            }
            let b = [ab[0], ab[1]].into_iter().find(|x| bc.iter().any(|y| same_point(*x, *y)));
            let Some(b) = b else { return Err("first two pencils must share a vertex".into()) };
            let a = if same_point(ab[0], b) { ab[1] } else { ab[0] };
            let c = if same_point(bc[0], b) { bc[1] } else { bc[0] };
            same_pair(third, c, a).then_some(()).ok_or("third pencil must use the points C and A".into())
        }
        ShelekhovCase::H => {
            if kinds != [Parabolic, Parabolic, Elliptic] {
                return Err("expected two parabolic pencils and an elliptic one".into());
            }
            let (v1, v2) = (p[0].vertices(), p[1].vertices());
            if v1.len() != 1 || v2.len() != 1 {
                return Err("parabolic pencils need finite vertices".into());
            }
            same_pair(p[2].vertices(), v1[0], v2[0])
                .then_some(())
                .ok_or("elliptic vertices must be the parabolic vertices".into())
        }
        ShelekhovCase::J => {
            if kinds != [Elliptic, Hyperbolic, Parabolic] {
                return Err("expected elliptic, hyperbolic and parabolic pencils".into());
            }
            let (ab, bc, av) = (p[0].vertices(), p[1].limiting_points(), p[2].vertices());
            if ab.len() != 2 || bc.len() != 2 || av.len() != 1 {
                return Err("pencils need finite vertices and limiting points".into());
            }
            let Some(b) = ab.iter().copied().find(|x| bc.iter().any(|y| same_point(*x, *y))) else {
                return Err("elliptic vertex must be a limiting point".into());
            };
            let a = if same_point(ab[0], b) { ab[1] } else { ab[0] };
            let c = if same_point(bc[0], b) { bc[1] } else { bc[0] };
            if !same_point(av[0], a) {
                return Err("parabolic vertex must be the other elliptic vertex".into());
            }
            // members of the parabolic pencil cross the circle ABC at right angles at A
            let abc = GenCircle::through_three(a, b, c).map_err(|e| e.to_string())?;
            let n = p[2].tangent_normal().ok_or("parabolic pencil lacks a tangent")?;
            (abc.normal_at(a).dot(n).abs() <= 1e-9)
                .then_some(())
                .ok_or("parabolic pencil must be orthogonal to the circle through A, B, C".into())
        }
    }
}

pub fn shelekhov_web(case: ShelekhovCase, pencils: &[PencilSpec; 3], domain: Domain, check: bool) -> Result<Web3> {
    let [r, g, b] = [pencils[0].build()?, pencils[1].build()?, pencils[2].build()?];
    if check {
        shelekhov_check(case, [&r, &g, &b]).map_err(Error::InvalidConfig)?;
    }
    let mut w = Web3::new(
        &format!("shelekhov-{}", case.letter()),
        Foliation::Pencil(r),
        Foliation::Pencil(g),
        Foliation::Pencil(b),
        domain,
    );
    w.expected_hexagonal = true;
    Ok(w)
}

pub fn main_a_web(center: Point, radius: f64, normal: Point, domain: Domain) -> Result<Web3> {
    let conic = Conic::circle(center, radius)?;
    Ok(Web3::new(
        "main-a",
        Foliation::Pencil(Pencil::parabolic(center, normal)?),
        Foliation::Tangent { conic, side: Side::Left },
        Foliation::Tangent { conic, side: Side::Right },
        domain,
    ))
}

fn require_general(conic: &Conic) -> Result<()> {
    if conic.is_general() {
        Ok(())
    } else {
        Err(Error::InvalidConfig("needs an ellipse distinct from a circle, or a hyperbola".into()))
    }
}

pub fn main_b_web(conic: Conic, domain: Domain) -> Result<Web3> {
    require_general(&conic)?;
    let f = conic.foci();
    Ok(Web3::new(
        "main-b",
        Foliation::Pencil(Pencil::hyperbolic(f[0], f[1])?),
        Foliation::Tangent { conic, side: Side::Left },
        Foliation::Tangent { conic, side: Side::Right },
        domain,
    ))
}

pub fn main_c_web(conic: Conic, focus: Focus, domain: Domain) -> Result<Web3> {
    require_general(&conic)?;
    let interval = conic.admissible_angle_interval(focus)?;
    let f = conic.focus(focus);
    Ok(Web3::new(
        "main-c",
        Foliation::Pencil(Pencil::lines_through(f)),
        Foliation::Tangent { conic, side: Side::Left },
        Foliation::MinorAxisCircles { conic, focus: f, interval },
        domain,
    ))
}

fn require_parabola(conic: &Conic, l: Point) -> Result<Point> {
    if conic.kind() != ConicKind::Parabola {
        return Err(Error::InvalidConfig("needs a parabola".into()));
    }
    let d = conic.directrix().expect("parabola");
    if d.residual(l).abs() > 1e-9 * 1f64.max(l.max_abs()) {
        return Err(Error::InvalidConfig("point must lie on the directrix".into()));
    }
    Ok(conic.foci()[0])
}

pub fn main_d_web(conic: Conic, l: Point, domain: Domain) -> Result<Web3> {
    let f = require_parabola(&conic, l)?;
    Ok(Web3::new(
        "main-d",
        Foliation::Pencil(Pencil::hyperbolic(f, l)?),
        Foliation::Tangent { conic, side: Side::Left },
        Foliation::Tangent { conic, side: Side::Right },
        domain,
    ))
}

/// With `check` off, any non-circular ellipse is accepted (control runs).
pub fn main_e_web(conic: Conic, domain: Domain, check: bool) -> Result<Web3> {
    if conic.kind() != ConicKind::Ellipse || !conic.is_general() {
        return Err(Error::InvalidConfig("needs a non-circular ellipse".into()));
    }
    if check {
        conic.normalize_ellipse_e707()?;
    }
    let f = conic.foci();
    let mut w = Web3::new(
        "main-e",
        Foliation::Pencil(Pencil::elliptic(f[0], f[1])?),
        Foliation::MajorAxisCircles { conic, side: Side::Left },
        Foliation::MajorAxisCircles { conic, side: Side::Right },
        domain,
    );
    if !check {
        w = w.experimental(false);
    }
    Ok(w)
}

/// Tangent lines counted twice with the elliptic pencil through the foci.
pub fn elliptic_swap_web(conic: Conic, domain: Domain) -> Result<Web3> {
    require_general(&conic)?;
    let f = conic.foci();
    let mut w = main_b_web(conic, domain)?;
    w.red = Foliation::Pencil(Pencil::elliptic(f[0], f[1])?);
    w.name = "elliptic-swap".into();
    Ok(w.experimental(true))
}

/// Parabola tangents counted twice with the elliptic pencil through the focus
/// and a directrix point.
pub fn elliptic_swap_parabola_web(conic: Conic, l: Point, domain: Domain) -> Result<Web3> {
    let f = require_parabola(&conic, l)?;
    let mut w = main_d_web(conic, l, domain)?;
    w.red = Foliation::Pencil(Pencil::elliptic(f, l)?);
    w.name = "elliptic-swap-parabola".into();
    Ok(w.experimental(false))
}

pub fn cubic_series_web(domain: Domain) -> Result<Web3> {
    let leaf = |index| Foliation::CubicSeries { index };
    Ok(Web3::new("cubic-series", leaf(0), leaf(1), leaf(2), domain).experimental(true))
}

#[cfg(test)]
mod tests;
