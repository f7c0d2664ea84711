use serde::{Deserialize, Serialize};

use super::{Point, Similarity, REL_EPS};
use crate::error::{Error, Result};

/// A generalized circle: a proper circle or a straight line.
///
/// Lines are stored as `normal · X = offset` with a unit normal and the
/// canonical sign convention `offset > 0`, or `offset = 0` with the normal in
/// the upper half-plane. With that convention two lines are the same point set
/// iff their representations agree.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GenCircle {
    Circle { center: Point, radius: f64 },
    Line { normal: Point, offset: f64 },
}

/// Offsets below this magnitude count as "through the origin" when
/// canonicalizing line signs.
const ZERO_OFFSET: f64 = 1e-14;

impl GenCircle {
    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::DegenerateConfiguration(format!(
                "circle with center {center} and radius {radius}"
            )));
        }
        Ok(GenCircle::Circle { center, radius })
    }

    /// Line `normal · X = offset`; the normal need not be unit length.
    pub fn line(normal: Point, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0) || !n.is_finite() || !offset.is_finite() {
            return Err(Error::ZeroDirection);
        }
        let (mut normal, mut offset) = (normal / n, offset / n);
        let flip = if offset.abs() <= ZERO_OFFSET {
            normal.y < 0.0 || (normal.y == 0.0 && normal.x < 0.0)
        } else {
            offset < 0.0
        };
        if flip {
            normal = -normal;
            offset = -offset;
        }
        Ok(GenCircle::Line { normal, offset })
    }

    pub fn line_through(p: Point, q: Point) -> Result<Self> {
        Self::line_through_dir(p, q - p)
    }

    pub fn line_through_dir(p: Point, dir: Point) -> Result<Self> {
        let n = dir.perp();
        Self::line(n, n.dot(p))
    }

    /// The generalized circle through three points (a line when collinear).
    pub fn through_three(p: Point, q: Point, r: Point) -> Result<Self> {
        let u = q - p;
        let v = r - p;
        let d = 2.0 * u.cross(v);
        let scale = u.norm2().max(v.norm2());
        if scale == 0.0 {
            return Err(Error::DegenerateConfiguration("coincident points".into()));
        }
        if d.abs() <= 1e-14 * scale {
            if (q - p).norm2() >= (r - p).norm2() {
                return Self::line_through(p, q);
            }
            return Self::line_through(p, r);
        }
        let c = Point::new(
            (v.y * u.norm2() - u.y * v.norm2()) / d,
            (u.x * v.norm2() - v.x * u.norm2()) / d,
        );
        Self::circle(p + c, c.norm())
    }

    pub fn is_line(&self) -> bool {
        matches!(self, GenCircle::Line { .. })
    }

    /// Characteristic size used to scale tolerances.
    pub fn scale(&self) -> f64 {
        match *self {
            GenCircle::Circle { center, radius } => 1f64.max(center.max_abs()).max(radius),
            GenCircle::Line { offset, .. } => 1f64.max(offset.abs()),
        }
    }

    /// Signed distance-like residual: `|p - c| - r` for circles, `n·p - d` for lines.
    pub fn residual(&self, p: Point) -> f64 {
        match *self {
            GenCircle::Circle { center, radius } => p.dist(center) - radius,
            GenCircle::Line { normal, offset } => normal.dot(p) - offset,
        }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.residual(p).abs() <= tol * self.scale().max(p.max_abs())
    }

    /// Unit normal at (the projection of) `p`: outward for circles.
    pub fn normal_at(&self, p: Point) -> Point {
        match *self {
            GenCircle::Circle { center, .. } => (p - center).normalized().unwrap_or(Point::new(1.0, 0.0)),
            GenCircle::Line { normal, .. } => normal,
        }
    }

    /// Unit tangent at (the projection of) `p`: counterclockwise for circles.
    pub fn tangent_at(&self, p: Point) -> Point {
        self.normal_at(p).perp()
    }

    /// Closest point of the curve to `p`.
    pub fn project(&self, p: Point) -> Point {
        match *self {
            GenCircle::Circle { center, radius } => {
                center + self.normal_at(p) * radius
            }
            GenCircle::Line { normal, offset } => p - normal * (normal.dot(p) - offset),
        }
    }

    /// Point reached from the projection of `p` by travelling signed arc length `s`.
    pub fn walk(&self, p: Point, s: f64) -> Point {
        match *self {
            GenCircle::Circle { center, radius } => {
                let theta = (p - center).angle() + s / radius;
                center + Point::polar(theta) * radius
            }
            GenCircle::Line { normal, .. } => self.project(p) + normal.perp() * s,
        }
    }

    pub fn equation(&self) -> CircleEq {
        match *self {
            GenCircle::Circle { center, radius } => CircleEq::new(
                1.0,
                -2.0 * center.x,
                -2.0 * center.y,
                center.norm2() - radius * radius,
            ),
            GenCircle::Line { normal, offset } => CircleEq::new(0.0, normal.x, normal.y, -offset),
        }
    }

    /// Point-set equality within a relative tolerance.
    pub fn same_curve(&self, other: &GenCircle, tol: f64) -> bool {
        match (*self, *other) {
            (
                GenCircle::Circle { center: c1, radius: r1 },
                GenCircle::Circle { center: c2, radius: r2 },
            ) => {
                let s = 1f64.max(r1).max(r2);
                c1.dist(c2) <= tol * s && (r1 - r2).abs() <= tol * s
            }
            (
                GenCircle::Line { normal: n1, offset: d1 },
                GenCircle::Line { normal: n2, offset: d2 },
            ) => {
                let s = 1f64.max(d1.abs()).max(d2.abs());
                let same = (n1 - n2).norm() <= tol && (d1 - d2).abs() <= tol * s;
                let opposite = (n1 + n2).norm() <= tol && (d1 + d2).abs() <= tol * s;
                same || opposite
            }
            _ => false,
        }
    }

    pub fn transformed(&self, sim: &Similarity) -> GenCircle {
        match *self {
            GenCircle::Circle { center, radius } => GenCircle::Circle {
                center: sim.apply(center),
                radius: radius * sim.scale,
            },
            GenCircle::Line { normal, offset } => {
                let p = sim.apply(normal * offset);
                let n = normal.rotated(sim.angle);
                GenCircle::line(n, n.dot(p)).expect("unit normal")
            }
        }
    }

    /// Angle in `[0, π/2]` between the curves' tangents at a common point `p`.
    pub fn crossing_angle(&self, other: &GenCircle, p: Point) -> f64 {
        let t1 = self.tangent_at(p);
        let t2 = other.tangent_at(p);
        let s = t1.cross(t2).abs();
        let c = t1.dot(t2).abs();
        s.atan2(c)
    }
}

/// Homogeneous circle equation `a(x² + y²) + b x + c y + d = 0`.
///
/// Covers circles (`a ≠ 0`), lines (`a = 0`), point circles and imaginary
/// circles; the linear structure is what pencils and bundles are built on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct CircleEq {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl From<[f64; 4]> for CircleEq {
    fn from(v: [f64; 4]) -> Self {
        CircleEq::new(v[0], v[1], v[2], v[3])
    }
}

impl From<CircleEq> for [f64; 4] {
    fn from(e: CircleEq) -> Self {
        e.to_array()
    }
}

impl CircleEq {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        CircleEq { a, b, c, d }
    }

    /// The zero-radius circle `|X - p|² = 0`.
    pub fn point_circle(p: Point) -> Self {
        CircleEq::new(1.0, -2.0 * p.x, -2.0 * p.y, p.norm2())
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn eval(&self, p: Point) -> f64 {
        self.a * p.norm2() + self.b * p.x + self.c * p.y + self.d
    }

    pub fn scaled(&self, s: f64) -> Self {
        CircleEq::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn combine(&self, alpha: f64, other: &CircleEq, beta: f64) -> Self {
        CircleEq::new(
            alpha * self.a + beta * other.a,
            alpha * self.b + beta * other.b,
            alpha * self.c + beta * other.c,
            alpha * self.d + beta * other.d,
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// The inversive (Lorentzian) bilinear form; `lorentz(e, e) = a²·r²`.
    ///
    /// Two real circles are orthogonal iff their form value vanishes.
    pub fn lorentz(&self, o: &CircleEq) -> f64 {
        0.25 * (self.b * o.b + self.c * o.c) - 0.5 * (self.a * o.d + o.a * self.d)
    }

    /// `lorentz(self, self)`: positive for real circles and lines, zero for
    /// point circles, negative for imaginary circles.
    pub fn power(&self) -> f64 {
        self.lorentz(self)
    }

    /// Scale so that `b² + c² - 4ad = 1` (curvature normalization).
    pub fn normalized(&self) -> Option<Self> {
        let p = self.power();
        if p > 0.0 {
            Some(self.scaled(0.5 / p.sqrt()))
        } else {
            None
        }
    }

    /// Converts to a circle or line; point and imaginary circles are rejected.
    ///
    /// `scale` is the size of the region of interest: an equation whose
    /// circle would have radius beyond `1e14 · scale` is returned as a line.
    pub fn to_gen_circle(&self, scale: f64) -> Result<GenCircle> {
        let lin = self.b.hypot(self.c);
        if self.a.abs() * scale.max(1.0) <= 1e-14 * lin {
            if lin == 0.0 {
                return Err(Error::DegenerateConfiguration("line at infinity".into()));
            }
            return GenCircle::line(Point::new(self.b, self.c), -self.d);
        }
        let p = self.power();
        if !(p > REL_EPS * REL_EPS * self.max_abs().powi(2)) {
            return Err(Error::DegenerateConfiguration(
                "point or imaginary circle".into(),
            ));
        }
        let center = Point::new(-self.b / (2.0 * self.a), -self.c / (2.0 * self.a));
        GenCircle::circle(center, p.sqrt() / self.a.abs())
    }
}

/// Determinant of a 3×3 matrix.
#[cfg(test)]
pub(crate) fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Numerical rank of a set of circle equations (singular values via
/// Gram–Schmidt with relative threshold `tol`).
pub fn eq_rank(eqs: &[CircleEq], tol: f64) -> usize {
    let mut basis: Vec<[f64; 4]> = Vec::new();
    let scale = eqs.iter().map(|e| e.max_abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    for e in eqs {
        let mut v = e.scaled(1.0 / scale).to_array();
        for _ in 0..2 {
            for q in &basis {
                let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
                for i in 0..4 {
                    v[i] -= dot * q[i];
                }
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > tol {
            basis.push(v.map(|x| x / n));
        }
    }
    basis.len()
}
