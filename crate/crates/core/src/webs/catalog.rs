use std::f64::consts::SQRT_2;

use super::*;
use crate::conics::ConicShape;
use crate::pencils::{tangency_class, TangencyClass};

/// One catalog listing line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub params: &'static str,
    pub experimental: bool,
}

const fn entry(key: &'static str, description: &'static str, params: &'static str, experimental: bool) -> CatalogEntry {
    CatalogEntry { key, description, params, experimental }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry("pappus", "three pencils of lines through three distinct points", "r, g, b: point", false),
        entry(
            "brianchon",
            "tangent lines to a conic counted twice, and lines through a fixed point",
            "conic, vertex: point",
            false,
        ),
        entry(
            "blaschke",
            "three elliptic pencils with vertices (A,B), (B,C), (C,A)",
            "a, b, c: point",
            false,
        ),
        entry(
            "graf-sauer",
            "tangent lines to a curve of class 3, counted three times",
            "coeffs: 10 coefficients of F(a,b,c) in order a3 a2b a2c ab2 abc ac2 b3 b2c bc2 c3",
            false,
        ),
        entry(
            "volk-strubecker",
            "Darboux image of a web of lines: three pencils of one bundle",
            "r, g, b: point; darboux: sphere_center, sphere_radius, e1, e2",
            false,
        ),
        entry(
            "apollonian",
            "a pencil of circles and two Apollonian sets of it",
            "pencil; set1, set2: tangent {fixed1, fixed2, class} | vertex-parabolic | vertex-hyperbolic",
            false,
        ),
        entry(
            "shelekhov",
            "triples of pencils of circles, cases a, d, e, f, g, h, j",
            "case; red, green, blue: pencil",
            false,
        ),
        entry(
            "main-a",
            "tangent lines to a circle counted twice, and a parabolic pencil with vertex at its center",
            "center: point, radius, normal: vector",
            false,
        ),
        entry(
            "main-b",
            "tangent lines to a general conic counted twice, and the hyperbolic pencil with limiting points at its foci",
            "conic",
            false,
        ),
        entry(
            "main-c",
            "tangent lines to a general conic, lines through a focus, and doubly tangent circles centered on the minor axis",
            "conic, focus: first | second",
            false,
        ),
        entry(
            "main-d",
            "tangent lines to a parabola counted twice, and the hyperbolic pencil with limiting points at the focus and a directrix point",
            "conic (parabola), l: point on the directrix",
            false,
        ),
        entry(
            "main-e",
            "doubly tangent circles centered on the major axis of an ellipse of eccentricity 1/sqrt(2), counted twice, and the elliptic pencil through its foci",
            "conic (ellipse)",
            false,
        ),
        entry(
            "elliptic-swap",
            "tangent lines to a general conic counted twice, and the elliptic pencil through its foci",
            "conic",
            true,
        ),
        entry(
            "elliptic-swap-parabola",
            "control: parabola tangents counted twice, and the elliptic pencil through the focus and a directrix point",
            "conic (parabola), l: point on the directrix",
            true,
        ),
        entry(
            "cubic-series",
            "the circles (1-t^3)(x^2+y^2)+2(1+t)x+2(t^2+t^3)y-1-t^3=0 counted three times",
            "none",
            true,
        ),
        entry(
            "blaschke-perturbed",
            "control: Blaschke web with one vertex of the third pencil moved",
            "a, b, c: point; shift: vector",
            true,
        ),
    ]
}

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn disk(x: f64, y: f64, r: f64) -> Domain {
    Domain::disk(p(x, y), r)
}

fn cfg(params: WebParams, domain: Domain) -> WebConfig {
    WebConfig { bypass_validation: false, params, domain }
}

/// Keys accepted by [`preset`].
pub fn preset_keys() -> Vec<&'static str> {
    vec![
        "pappus",
        "brianchon",
        "blaschke",
        "graf-sauer",
        "volk-strubecker",
        "apollonian",
        "shelekhov-a",
        "shelekhov-d",
        "shelekhov-e",
        "shelekhov-f",
        "shelekhov-g",
        "shelekhov-h",
        "shelekhov-j",
        "main-a",
        "main-b",
        "main-c",
        "main-d",
        "main-e",
        "main-e-ecc072",
        "elliptic-swap",
        "elliptic-swap-parabola",
        "cubic-series",
        "blaschke-perturbed",
    ]
}

fn main_b_conic() -> Conic {
    Conic::new(ConicShape::Ellipse { a: 2.0, b: 1.2 }, Point::ORIGIN, 0.0).expect("valid")
}

fn main_d_conic() -> Conic {
    Conic::new(ConicShape::Parabola { focal: 1.0 }, Point::ORIGIN, 0.0).expect("valid")
}

fn main_e_conic(e: f64) -> Conic {
    let a = 1.0 / (1.0 - e * e).sqrt();
    Conic::new(ConicShape::Ellipse { a, b: 1.0 }, Point::ORIGIN, 0.0).expect("valid")
}

/// Inverse of `q` in the unit circle.
fn unit_inverse(q: Point) -> Point {
    q / q.norm2()
}

/// Apollonian set generated by a circle: the two pencil members it touches
/// are those through the extremes of the pencil parameter along it.
fn apollonian_set_of(pencil: &Pencil, omega: &GenCircle, at: Point) -> Result<ApollonianSet> {
    let (l1, l2) = match pencil.limiting_points() {
        &[a, b] => (a, b),
        _ => return Err(Error::InvalidConfig("generator needs a hyperbolic pencil".into())),
    };
    let GenCircle::Circle { center, radius } = *omega else {
        return Err(Error::InvalidConfig("generator must be a circle".into()));
    };
    let ratio = |t: f64| {
        let x = center + Point::polar(t) * radius;
        (x.dist(l1) / x.dist(l2)).ln()
    };
    let n = 720;
    let ts: Vec<f64> = (0..n).map(|k| std::f64::consts::TAU * k as f64 / n as f64).collect();
    let refine = |sign: f64| {
        let k = (0..n).max_by(|&i, &j| (sign * ratio(ts[i])).total_cmp(&(sign * ratio(ts[j])))).expect("nonempty");
        let (mut lo, mut hi) = (ts[k] - 0.01, ts[k] + 0.01);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..100 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if sign * ratio(m1) > sign * ratio(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        center + Point::polar(0.5 * (lo + hi)) * radius
    };
    let fixed1 = pencil.member_through(refine(-1.0))?;
    let fixed2 = pencil.member_through(refine(1.0))?;
    let class: TangencyClass = tangency_class(omega, &fixed1, &fixed2, at).ok_or(Error::NoRealSolution)?;
    Ok(ApollonianSet::Tangent { fixed1, fixed2, class })
}

/// A preset configuration with a validated domain.
pub fn preset(key: &str) -> Result<WebConfig> {
    use PencilSpec as S;
    let c = match key {
        "pappus" => cfg(WebParams::Pappus { r: p(0.0, 0.0), g: p(4.0, 0.0), b: p(0.0, 4.0) }, disk(1.2, 1.0, 0.5)),
        "brianchon" => cfg(
            WebParams::Brianchon { conic: Conic::circle(Point::ORIGIN, 1.0)?, vertex: p(3.0, 0.0) },
            disk(0.0, 2.2, 0.5),
        ),
        "blaschke" => cfg(WebParams::Blaschke { a: p(0.0, 0.0), b: p(2.0, 0.0), c: p(1.0, 1.7) }, disk(1.0, 0.55, 0.3)),
        "blaschke-perturbed" => cfg(
            WebParams::BlaschkePerturbed { a: p(0.0, 0.0), b: p(2.0, 0.0), c: p(1.0, 1.7), shift: p(0.037, -0.021) },
            disk(1.0, 0.55, 0.3),
        ),
        "graf-sauer" => cfg(
            WebParams::GrafSauer { coeffs: [-1.0, 0.0, 1.0, 3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0] },
            disk(0.05, 0.03, 0.25),
        ),
        "volk-strubecker" => {
            let darboux = DarbouxConfig::default();
            let center = darboux.forward(p(0.05, 0.0))?;
            cfg(
                WebParams::VolkStrubecker { r: p(-0.6, -0.5), g: p(0.7, -0.4), b: p(0.0, 0.8), darboux },
                Domain::disk(center, 0.15),
            )
        }
        "apollonian" => {
            let pencil = S::Hyperbolic { l1: p(-1.0, 0.0), l2: p(1.0, 0.0) };
            let built = pencil.build()?;
            let o = p(0.1, 0.9);
            let w1 = GenCircle::circle(o + Point::polar(0.3) * 0.7, 0.7)?;
            let w2 = GenCircle::circle(o + Point::polar(2.2) * 0.5, 0.5)?;
            let set1 = apollonian_set_of(&built, &w1, o)?;
            let set2 = apollonian_set_of(&built, &w2, o)?;
            cfg(WebParams::Apollonian { pencil, set1, set2 }, disk(0.8, -2.9, 0.3))
        }
        "shelekhov-a" => {
            let q = [p(0.3, 0.1), p(-0.2, 0.35), p(0.05, -0.4)];
            let spec = |v: Point| S::Elliptic { v1: v, v2: unit_inverse(v) };
            shelekhov(ShelekhovCase::A, spec(q[0]), spec(q[1]), spec(q[2]), disk(-3.0, -2.4, 0.3))
        }
        "shelekhov-d" => {
            let (v1, v2) = (p(-1.0, 0.0), p(1.0, 0.0));
            let c1 = Pencil::elliptic(v1, v2)?.member_through(p(0.2, 1.3))?;
            let c2 = Pencil::hyperbolic(v1, v2)?.member_through(p(1.6, 0.4))?;
            shelekhov(
                ShelekhovCase::D,
                S::Elliptic { v1, v2 },
                S::Hyperbolic { l1: v1, l2: v2 },
                S::Span { c1, c2 },
                disk(0.5, 0.8, 0.15),
            )
        }
        "shelekhov-e" => {
            let v = p(0.0, 0.0);
            shelekhov(
                ShelekhovCase::E,
                S::Parabolic { vertex: v, normal: p(1.0, 0.0) },
                S::Parabolic { vertex: v, normal: p(0.0, 1.0) },
                S::Hyperbolic { l1: v, l2: p(1.5, 1.0) },
                disk(0.6, -0.5, 0.15),
            )
        }
        "shelekhov-f" => {
            let (a, b, c) = (p(0.0, 0.0), p(2.0, 0.0), p(1.0, 1.7));
            shelekhov(
                ShelekhovCase::F,
                S::Elliptic { v1: a, v2: b },
                S::Elliptic { v1: b, v2: c },
                S::Elliptic { v1: c, v2: a },
                disk(1.0, 0.55, 0.3),
            )
        }
        "shelekhov-g" => {
            let (a, b, c) = (p(0.0, 0.0), p(2.0, 0.0), p(0.8, 1.5));
            shelekhov(
                ShelekhovCase::G,
                S::Elliptic { v1: a, v2: b },
                S::Elliptic { v1: b, v2: c },
                S::Hyperbolic { l1: c, l2: a },
                disk(-0.7, 1.5, 0.3),
            )
        }
        "shelekhov-h" => {
            let (v1, v2) = (p(0.0, 0.0), p(2.0, 0.0));
            shelekhov(
                ShelekhovCase::H,
                S::Parabolic { vertex: v1, normal: p(1.0, 0.4) },
                S::Parabolic { vertex: v2, normal: p(-0.3, 1.0) },
                S::Elliptic { v1, v2 },
                disk(-1.2, -2.9, 0.3),
            )
        }
        "shelekhov-j" => {
            let (a, b, c) = (p(0.0, 0.0), p(2.0, 0.0), p(0.8, 1.5));
            let abc = GenCircle::through_three(a, b, c)?;
            shelekhov(
                ShelekhovCase::J,
                S::Elliptic { v1: a, v2: b },
                S::Hyperbolic { l1: b, l2: c },
                S::Parabolic { vertex: a, normal: abc.tangent_at(a) },
                disk(0.9, -1.3, 0.3),
            )
        }
        "main-a" => cfg(
            WebParams::MainA { center: Point::ORIGIN, radius: 1.0, normal: p(1.0, 0.0) },
            disk(0.3, 1.8, 0.4),
        ),
        "main-b" => cfg(WebParams::MainB { conic: main_b_conic() }, disk(0.8, 2.2, 0.4)),
        "main-c" => cfg(WebParams::MainC { conic: main_b_conic(), focus: Focus::First }, disk(-0.5, -3.0, 0.3)),
        "main-d" => cfg(WebParams::MainD { conic: main_d_conic(), l: p(-1.0, 0.5) }, disk(-3.0, 0.8, 0.3)),
        "main-e" => cfg(WebParams::MainE { conic: main_e_conic(1.0 / SQRT_2) }, disk(-0.1, 0.55, 0.1)),
        "main-e-ecc072" => WebConfig {
            bypass_validation: true,
            ..cfg(WebParams::MainE { conic: main_e_conic(0.72) }, disk(-0.1, 0.55, 0.1))
        },
        "elliptic-swap" => cfg(WebParams::EllipticSwap { conic: main_b_conic() }, disk(0.8, 2.2, 0.4)),
        "elliptic-swap-parabola" => cfg(
            WebParams::EllipticSwapParabola { conic: main_d_conic(), l: p(-1.0, 0.5) },
            disk(-3.0, 0.8, 0.3),
        ),
        "cubic-series" => cfg(WebParams::CubicSeries, disk(-0.5, 1.1, 0.15)),
        _ => return Err(Error::InvalidConfig(format!("unknown preset '{key}'"))),
    };
    Ok(c)
}

fn shelekhov(case: ShelekhovCase, red: PencilSpec, green: PencilSpec, blue: PencilSpec, domain: Domain) -> WebConfig {
    cfg(WebParams::Shelekhov { case, red, green, blue }, domain)
}
