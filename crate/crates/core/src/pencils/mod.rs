//! Pencils and bundles of circles, Apollonian sets and the Darboux
//! transformation.

mod apollonian;
mod darboux;

pub use apollonian::{tangency_class, ApollonianFamily, ApollonianSet, TangencyClass};
pub use darboux::DarbouxConfig;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{eq_rank, intersect, CircleEq, GenCircle, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PencilKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Relative band in which the pencil discriminant counts as zero.
const KIND_BAND: f64 = 1e-10;

/// A pencil of circles `α e₁ + β e₂ = 0`.
///
/// `points` holds the finite vertices (elliptic, parabolic) or limiting points
/// (hyperbolic). Pencils of lines through a point and of parallel lines have
/// a vertex at infinity and fewer finite points; concentric pencils have a
/// limiting point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    e1: CircleEq,
    e2: CircleEq,
    kind: PencilKind,
    points: Vec<Point>,
    tangent_normal: Option<Point>,
    scale: f64,
}

/// Serializable description of a pencil.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PencilSpec {
    /// Circles through two points.
    Elliptic { v1: Point, v2: Point },
    /// Circles tangent at `vertex` to the line with the given normal.
    Parabolic { vertex: Point, normal: Point },
    /// Circles with limiting points `l1`, `l2`.
    Hyperbolic { l1: Point, l2: Point },
    /// Lines through a point.
    LinesThrough { vertex: Point },
    /// Lines with a common normal.
    Parallel { normal: Point },
    /// Pencil spanned by two circles.
    Span { c1: GenCircle, c2: GenCircle },
}

impl PencilSpec {
    pub fn build(&self) -> Result<Pencil> {
        match *self {
            PencilSpec::Elliptic { v1, v2 } => Pencil::elliptic(v1, v2),
            PencilSpec::Parabolic { vertex, normal } => Pencil::parabolic(vertex, normal),
            PencilSpec::Hyperbolic { l1, l2 } => Pencil::hyperbolic(l1, l2),
            PencilSpec::LinesThrough { vertex } => Ok(Pencil::lines_through(vertex)),
            PencilSpec::Parallel { normal } => Pencil::parallel(normal),
            PencilSpec::Span { c1, c2 } => classify(&c1, &c2),
        }
    }
}

fn lorentz_disc(e1: &CircleEq, e2: &CircleEq) -> (f64, f64) {
    let (p11, p12, p22) = (e1.power(), e1.lorentz(e2), e2.power());
    (p12 * p12 - p11 * p22, p12 * p12 + (p11 * p22).abs())
}

fn kind_of(e1: &CircleEq, e2: &CircleEq) -> PencilKind {
    let (disc, scale) = lorentz_disc(e1, e2);
    if disc.abs() <= KIND_BAND * scale {
        PencilKind::Parabolic
    } else if disc > 0.0 {
        PencilKind::Hyperbolic
    } else {
        PencilKind::Elliptic
    }
}

fn unit_eq(e: CircleEq) -> CircleEq {
    let m = e.max_abs();
    if m > 0.0 {
        e.scaled(1.0 / m)
    } else {
        e
    }
}

/// Pencil spanned by two distinct generalized circles.
pub fn classify(c1: &GenCircle, c2: &GenCircle) -> Result<Pencil> {
    if c1.same_curve(c2, 1e-12) {
        return Err(Error::CoincidentCircles);
    }
    let scale = c1.scale().max(c2.scale());
    let e1 = c1.equation().normalized().expect("real circle");
    let e2 = c2.equation().normalized().expect("real circle");
    let kind = kind_of(&e1, &e2);
    let mut tangent_normal = None;
    let points = match kind {
        PencilKind::Elliptic => intersect(c1, c2)?,
        PencilKind::Parabolic => {
            let pts = intersect(c1, c2)?;
            if let Some(&v) = pts.first() {
                tangent_normal = Some(c1.normal_at(v));
            } else if let GenCircle::Line { normal, .. } = c1 {
                tangent_normal = Some(*normal);
            }
            pts.into_iter().take(1).collect()
        }
        PencilKind::Hyperbolic => limiting_points(&e1, &e2, scale),
    };
    Ok(Pencil { e1, e2, kind, points, tangent_normal, scale })
}

/// Centers of the point circles of a hyperbolic span; a point circle at
/// infinity (concentric case) is dropped.
fn limiting_points(e1: &CircleEq, e2: &CircleEq, scale: f64) -> Vec<Point> {
    let (p11, p12, p22) = (e1.power(), e1.lorentz(e2), e2.power());
    // α² p11 + 2αβ p12 + β² p22 = 0
    let disc = (p12 * p12 - p11 * p22).max(0.0).sqrt();
    let q = -(p12 + if p12 < 0.0 { -disc } else { disc });
    let mut out = Vec::new();
    for (alpha, beta) in [(q, p11), (p22, q)] {
        let e = e1.combine(alpha, e2, beta);
        let lin = e.b.hypot(e.c);
        if e.a.abs() * scale <= 1e-12 * lin.max(e.d.abs()) {
            continue;
        }
        out.push(Point::new(-e.b / (2.0 * e.a), -e.c / (2.0 * e.a)));
    }
    out
}

impl Pencil {
    /// Circles through `v1` and `v2`.
    pub fn elliptic(v1: Point, v2: Point) -> Result<Self> {
        if v1.dist(v2) <= 1e-12 * 1f64.max(v1.max_abs()).max(v2.max_abs()) {
            return Err(Error::CoincidentCircles);
        }
        let line = GenCircle::line_through(v1, v2)?;
        let circ = GenCircle::circle(v1.midpoint(v2), 0.5 * v1.dist(v2))?;
        Ok(Pencil {
            e1: line.equation(),
            e2: circ.equation().normalized().expect("real circle"),
            kind: PencilKind::Elliptic,
            points: vec![v1, v2],
            tangent_normal: None,
            scale: 1f64.max(v1.max_abs()).max(v2.max_abs()),
        })
    }

    /// Circles touching at `vertex` the line through it with normal `normal`.
    pub fn parabolic(vertex: Point, normal: Point) -> Result<Self> {
        let n = normal.normalized().ok_or(Error::ZeroDirection)?;
        Ok(Pencil {
            e1: CircleEq::point_circle(vertex),
            e2: CircleEq::new(0.0, n.x, n.y, -n.dot(vertex)),
            kind: PencilKind::Parabolic,
            points: vec![vertex],
            tangent_normal: Some(n),
            scale: 1f64.max(vertex.max_abs()),
        })
    }

    /// Circles with limiting points `l1` and `l2`.
    pub fn hyperbolic(l1: Point, l2: Point) -> Result<Self> {
        if l1.dist(l2) <= 1e-12 * 1f64.max(l1.max_abs()).max(l2.max_abs()) {
            return Err(Error::CoincidentCircles);
        }
        Ok(Pencil {
            e1: CircleEq::point_circle(l1),
            e2: CircleEq::point_circle(l2),
            kind: PencilKind::Hyperbolic,
            points: vec![l1, l2],
            tangent_normal: None,
            scale: 1f64.max(l1.max_abs()).max(l2.max_abs()),
        })
    }

    /// Lines through `vertex`; an elliptic pencil with a vertex at infinity.
    pub fn lines_through(vertex: Point) -> Self {
        Pencil {
            e1: CircleEq::new(0.0, 1.0, 0.0, -vertex.x),
            e2: CircleEq::new(0.0, 0.0, 1.0, -vertex.y),
            kind: PencilKind::Elliptic,
            points: vec![vertex],
            tangent_normal: None,
            scale: 1f64.max(vertex.max_abs()),
        }
    }

    /// Lines `normal · X = const`; a parabolic pencil with vertex at infinity.
    pub fn parallel(normal: Point) -> Result<Self> {
        let n = normal.normalized().ok_or(Error::ZeroDirection)?;
        Ok(Pencil {
            e1: CircleEq::new(0.0, n.x, n.y, 0.0),
            e2: CircleEq::new(0.0, 0.0, 0.0, 1.0),
            kind: PencilKind::Parabolic,
            points: Vec::new(),
            tangent_normal: Some(n),
            scale: 1.0,
        })
    }

    pub fn kind(&self) -> PencilKind {
        self.kind
    }

    /// Vertices of an elliptic or parabolic pencil.
    pub fn vertices(&self) -> &[Point] {
        match self.kind {
            PencilKind::Hyperbolic => &[],
            _ => &self.points,
        }
    }

    pub fn limiting_points(&self) -> &[Point] {
        match self.kind {
            PencilKind::Hyperbolic => &self.points,
            _ => &[],
        }
    }

    /// Unit normal of the common tangent line of a parabolic pencil.
    pub fn tangent_normal(&self) -> Option<Point> {
        self.tangent_normal
    }

    /// Hyperbolic pencil with only one finite limiting point.
    pub fn is_concentric(&self) -> bool {
        self.kind == PencilKind::Hyperbolic && self.points.len() < 2
    }

    pub fn basis(&self) -> (CircleEq, CircleEq) {
        (self.e1, self.e2)
    }

    /// The member through `a`.
    pub fn member_through(&self, a: Point) -> Result<GenCircle> {
        let s = self.scale.max(a.max_abs());
        if self.points.iter().any(|p| p.dist(a) <= 1e-10 * s) {
            return Err(match self.kind {
                PencilKind::Hyperbolic => Error::AtLimitingPoint,
                _ => Error::AtVertex,
            });
        }
        let (f1, f2) = (self.e1.eval(a), self.e2.eval(a));
        let e = unit_eq(self.e2.combine(f1, &self.e1, -f2));
        if e.max_abs() == 0.0 || !e.max_abs().is_finite() {
            return Err(Error::AtVertex);
        }
        e.to_gen_circle(s).map_err(|_| match self.kind {
            PencilKind::Hyperbolic => Error::AtLimitingPoint,
            _ => Error::AtVertex,
        })
    }

    /// Whether `c` lies in the span of the pencil.
    pub fn contains(&self, c: &GenCircle, tol: f64) -> bool {
        let e = unit_eq(c.equation());
        eq_rank(&[unit_eq(self.e1), unit_eq(self.e2), e], tol) == 2
    }

    /// Least-squares coefficients `(α, β)` of `c` in the basis, with the
    /// relative residual of the fit.
    pub fn coefficients(&self, c: &GenCircle) -> ((f64, f64), f64) {
        let e = unit_eq(c.equation()).to_array();
        let u = self.e1.to_array();
        let v = self.e2.to_array();
        let dot = |x: &[f64; 4], y: &[f64; 4]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
        let (uu, uv, vv) = (dot(&u, &u), dot(&u, &v), dot(&v, &v));
        let (ue, ve) = (dot(&u, &e), dot(&v, &e));
        let det = uu * vv - uv * uv;
        let alpha = (ue * vv - ve * uv) / det;
        let beta = (uu * ve - uv * ue) / det;
        let res = (0..4).map(|i| (alpha * u[i] + beta * v[i] - e[i]).powi(2)).sum::<f64>().sqrt();
        ((alpha, beta), res)
    }
}

/// A bundle (net) of circles `α e₁ + β e₂ + γ e₃ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bundle {
    eqs: [CircleEq; 3],
}

impl Bundle {
    pub fn new(c1: &GenCircle, c2: &GenCircle, c3: &GenCircle) -> Result<Self> {
        Bundle::from_equations([c1.equation(), c2.equation(), c3.equation()])
    }

    pub fn from_equations(eqs: [CircleEq; 3]) -> Result<Self> {
        let eqs = eqs.map(unit_eq);
        if eq_rank(&eqs, 1e-9) != 3 {
            return Err(Error::DegenerateConfiguration("bundle equations are dependent".into()));
        }
        Ok(Bundle { eqs })
    }

    pub fn contains(&self, c: &GenCircle, tol: f64) -> bool {
        let [a, b, d] = self.eqs;
        eq_rank(&[a, b, d, unit_eq(c.equation())], tol) == 3
    }

    /// The member through two points.
    pub fn member_through(&self, p: Point, q: Point, scale: f64) -> Result<GenCircle> {
        let u = self.eqs.map(|e| e.eval(p));
        let v = self.eqs.map(|e| e.eval(q));
        let w = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        let e = self.eqs[0]
            .combine(w[0], &self.eqs[1], w[1])
            .combine(1.0, &self.eqs[2], w[2]);
        unit_eq(e).to_gen_circle(scale)
    }
}
