use serde::{Deserialize, Serialize};

use crate::conics::Conic;
use crate::error::{Error, Result};
use crate::geom::{oriented_angle, solve_cubic, CircleEq, GenCircle, Point, Root};
use crate::pencils::{ApollonianFamily, DarbouxConfig, Pencil};

/// Which member of a double-counted family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A family of generalized circles with exactly one member through each
/// point of its domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Foliation {
    Pencil(Pencil),
    /// Left or right tangent lines to a conic.
    Tangent { conic: Conic, side: Side },
    Apollonian(ApollonianFamily),
    /// Circles centered on the minor axis, doubly tangent to a general conic,
    /// indexed by the angle from the focal line to the left tangent.
    MinorAxisCircles { conic: Conic, focus: Point, interval: (f64, f64) },
    /// Circles centered on the major axis of an ellipse, doubly tangent to it;
    /// `Left` takes the member centered on the negative half-axis.
    MajorAxisCircles { conic: Conic, side: Side },
    /// Lines `a x + b y + c = 0` with `F(a, b, c) = 0`, the `index`-th by
    /// normal angle in `[0, π)`. Coefficients in the order
    /// `a³, a²b, a²c, ab², abc, ac², b³, b²c, bc², c³`.
    ClassCubic { coeffs: [f64; 10], index: usize },
    /// Circles `(1-t³)(x²+y²) + 2(1+t)x + 2(t²+t³)y - 1 - t³ = 0`, the
    /// `index`-th by ascending `t`.
    CubicSeries { index: usize },
    /// Image of a line foliation under a Darboux transformation.
    Darboux { cfg: DarbouxConfig, base: Box<Foliation> },
}

impl Foliation {
    /// The leaf through `a`.
    pub fn curve_through(&self, a: Point) -> Result<GenCircle> {
        let g = self.raw_curve(a)?;
        let s = 1f64.max(a.max_abs()).max(g.scale());
        if g.residual(a).abs() > 1e-9 * s {
            return Err(Error::OutsideDomain);
        }
        Ok(g)
    }

    fn raw_curve(&self, a: Point) -> Result<GenCircle> {
        match self {
            Foliation::Pencil(p) => p.member_through(a),
            Foliation::Tangent { conic, side } => {
                let tp = conic.tangent_lines_from_point(a)?;
                Ok(match side {
                    Side::Left => tp.left,
                    Side::Right => tp.right,
                })
            }
            Foliation::Apollonian(f) => f.member_through(a),
            Foliation::MinorAxisCircles { conic, focus, interval } => {
                let tp = conic.tangent_lines_from_point(a)?;
                let phi = oriented_angle(a - *focus, tp.left.tangent_at(a))?;
                if !(phi > interval.0 && phi < interval.1) {
                    return Err(Error::AngleOutOfRange(phi));
                }
                conic.spiral_image_of_pedal(*focus, phi)
            }
            Foliation::MajorAxisCircles { conic, side } => {
                let (l, r) = conic.doubly_tangent_circles_major(a)?;
                Ok(match side {
                    Side::Left => l,
                    Side::Right => r,
                })
            }
            Foliation::ClassCubic { coeffs, index } => {
                let normals = class_cubic_normals(coeffs, a)?;
                let n = Point::polar(normals[*index]);
                GenCircle::line(n, n.dot(a))
            }
            Foliation::CubicSeries { index } => {
                let ts = cubic_series_params(a)?;
                cubic_series_member(ts[*index]).to_gen_circle(1f64.max(a.max_abs()))
            }
            Foliation::Darboux { cfg, base } => {
                let pre = cfg.inverse(a)?;
                let line = base.curve_through(pre)?;
                if !line.is_line() {
                    return Err(Error::InvalidConfig("Darboux base must be a line foliation".into()));
                }
                cfg.image_of_line(pre, line.tangent_at(pre))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Foliation::Pencil(p) => format!("{:?} pencil", p.kind()).to_lowercase(),
            Foliation::Tangent { side, .. } => format!("{side:?} tangent lines").to_lowercase(),
            Foliation::Apollonian(_) => "apollonian set".into(),
            Foliation::MinorAxisCircles { .. } => "doubly tangent circles, centers on minor axis".into(),
            Foliation::MajorAxisCircles { side, .. } => {
                format!("{side:?} doubly tangent circles, centers on major axis").to_lowercase()
            }
            Foliation::ClassCubic { index, .. } => format!("class-3 tangent lines, root {index}"),
            Foliation::CubicSeries { index } => format!("cubic series, root {index}"),
            Foliation::Darboux { base, .. } => format!("Darboux image of {}", base.describe()),
        }
    }
}

/// Coefficients of `F(a, b, -a x - b y)` as a cubic in `(a, b)`: `[a³, a²b, ab², b³]`.
pub fn class_cubic_restricted(f: &[f64; 10], a: Point) -> [f64; 4] {
    let (p, q) = (-a.x, -a.y);
    [
        f[0] + f[2] * p + f[5] * p * p + f[9] * p * p * p,
        f[1] + f[2] * q + f[4] * p + 2.0 * f[5] * p * q + f[8] * p * p + 3.0 * f[9] * p * p * q,
        f[3] + f[4] * q + f[5] * q * q + f[7] * p + 2.0 * f[8] * p * q + 3.0 * f[9] * p * q * q,
        f[6] + f[7] * q + f[8] * q * q + f[9] * q * q * q,
    ]
}

/// Normal angles in `[0, π)`, ascending, of the three lines of the class-3
/// family through `a`.
pub fn class_cubic_normals(f: &[f64; 10], a: Point) -> Result<[f64; 3]> {
    let g = class_cubic_restricted(f, a);
    let m = g.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    if m == 0.0 {
        return Err(Error::IdenticallyZero);
    }
    // roots t = b/a of g0 + g1 t + g2 t² + g3 t³; a vanishing t³ term means
    // the vertical normal (a = 0) is a root
    let mut angles: Vec<f64> = Vec::with_capacity(3);
    let lead = g[3];
    let roots: Vec<Root> = if lead.abs() <= 1e-14 * m {
        angles.push(std::f64::consts::FRAC_PI_2);
        solve_cubic(0.0, g[2], g[1], g[0])?
    } else {
        solve_cubic(g[3], g[2], g[1], g[0])?
    };
    if roots.iter().any(|r| r.multiplicity > 1) {
        return Err(Error::DegenerateRoots);
    }
    angles.extend(roots.iter().map(|r| r.value.atan().rem_euclid(std::f64::consts::PI)));
    if angles.len() != 3 {
        return Err(Error::OutsideDomain);
    }
    angles.sort_by(f64::total_cmp);
    Ok([angles[0], angles[1], angles[2]])
}

/// Equation of the cubic-series member with parameter `t`.
pub fn cubic_series_member(t: f64) -> CircleEq {
    let t2 = t * t;
    let t3 = t2 * t;
    CircleEq::new(1.0 - t3, 2.0 * (1.0 + t), 2.0 * (t2 + t3), -1.0 - t3)
}

/// Parameters of the three cubic-series members through `a`, ascending.
pub fn cubic_series_params(a: Point) -> Result<[f64; 3]> {
    let s = a.norm2();
    let roots = solve_cubic(-s + 2.0 * a.y - 1.0, 2.0 * a.y, 2.0 * a.x, s + 2.0 * a.x - 1.0)?;
    if roots.len() != 3 || roots.iter().any(|r| r.multiplicity > 1) {
        return Err(Error::OutsideDomain);
    }
    Ok([roots[0].value, roots[1].value, roots[2].value])
}
