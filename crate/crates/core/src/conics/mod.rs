//! Conics in general position: focal apparatus, left/right tangent lines from
//! a point, pedal circles and the two doubly tangent circle families.

pub mod focal;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{oriented_angle, GenCircle, Point, Similarity};

/// Canonical shape of a conic, in its own frame.
///
/// Ellipse and hyperbola: `x²/a² ± y²/b² = 1` centered at the origin with the
/// major (transverse) axis along x. Parabola: `y² = 4·focal·x` with vertex at
/// the origin, opening towards +x. Circle: `x² + y² = radius²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConicShape {
    Ellipse { a: f64, b: f64 },
    Hyperbola { a: f64, b: f64 },
    Parabola { focal: f64 },
    Circle { radius: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    Parabola,
    Circle,
}

/// A conic: canonical shape plus a rigid placement. `center` is the center of
/// a central conic or the vertex of a parabola.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conic {
    #[serde(flatten)]
    pub shape: ConicShape,
    pub center: Point,
    #[serde(default)]
    pub axis_angle: f64,
}

/// Which focus of a central conic: `First` lies at `-c` on the major axis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Focus {
    #[default]
    First,
    Second,
}

/// The two tangent lines from a point, ordered by the counterclockwise
/// rotation sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentPair {
    pub left: GenCircle,
    pub right: GenCircle,
    pub left_point: Point,
    pub right_point: Point,
}

type Mat3 = [[f64; 3]; 3];

fn quad3(m: &Mat3, u: [f64; 3], v: [f64; 3]) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += u[i] * m[i][j] * v[j];
        }
    }
    s
}

impl Conic {
    pub fn new(shape: ConicShape, center: Point, axis_angle: f64) -> Result<Self> {
        let ok = match shape {
            ConicShape::Ellipse { a, b } => a >= b && b > 0.0,
            ConicShape::Hyperbola { a, b } => a > 0.0 && b > 0.0,
            ConicShape::Parabola { focal } => focal > 0.0,
            ConicShape::Circle { radius } => radius > 0.0,
        };
        if !ok || !center.is_finite() || !axis_angle.is_finite() {
            return Err(Error::InvalidConfig(format!("invalid conic {shape:?}")));
        }
        Ok(Conic { shape, center, axis_angle })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Conic::new(ConicShape::Ellipse { a, b }, Point::ORIGIN, 0.0)
    }

    pub fn hyperbola(a: f64, b: f64) -> Result<Self> {
        Conic::new(ConicShape::Hyperbola { a, b }, Point::ORIGIN, 0.0)
    }

    pub fn parabola(focal: f64) -> Result<Self> {
        Conic::new(ConicShape::Parabola { focal }, Point::ORIGIN, 0.0)
    }

    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        Conic::new(ConicShape::Circle { radius }, center, 0.0)
    }

    /// Same shape with a different placement.
    pub fn placed(&self, center: Point, axis_angle: f64) -> Self {
        Conic { shape: self.shape, center, axis_angle }
    }

    pub fn kind(&self) -> ConicKind {
        match self.shape {
            ConicShape::Ellipse { .. } => ConicKind::Ellipse,
            ConicShape::Hyperbola { .. } => ConicKind::Hyperbola,
            ConicShape::Parabola { .. } => ConicKind::Parabola,
            ConicShape::Circle { .. } => ConicKind::Circle,
        }
    }

    /// An ellipse distinct from a circle, or a hyperbola.
    pub fn is_general(&self) -> bool {
        match self.shape {
            ConicShape::Ellipse { a, b } => a > b,
            ConicShape::Hyperbola { .. } => true,
            _ => false,
        }
    }

    pub fn to_local(&self, p: Point) -> Point {
        (p - self.center).rotated(-self.axis_angle)
    }

    pub fn to_world(&self, p: Point) -> Point {
        p.rotated(self.axis_angle) + self.center
    }

    pub fn dir_to_world(&self, v: Point) -> Point {
        v.rotated(self.axis_angle)
    }

    /// Local frame → world frame as a similarity.
    pub fn placement(&self) -> Similarity {
        Similarity {
            scale: 1.0,
            angle: self.axis_angle,
            shift: self.center,
        }
    }

    pub fn size(&self) -> f64 {
        let s = match self.shape {
            ConicShape::Ellipse { a, .. } | ConicShape::Hyperbola { a, .. } => a,
            ConicShape::Parabola { focal } => focal,
            ConicShape::Circle { radius } => radius,
        };
        1f64.max(s).max(self.center.max_abs())
    }

    /// Focal half-distance `c` (0 for circles, focal length for parabolas).
    pub fn focal_distance(&self) -> f64 {
        match self.shape {
            ConicShape::Ellipse { a, b } => ((a - b) * (a + b)).sqrt(),
            ConicShape::Hyperbola { a, b } => a.hypot(b),
            ConicShape::Parabola { focal } => focal,
            ConicShape::Circle { .. } => 0.0,
        }
    }

    pub fn eccentricity(&self) -> f64 {
        match self.shape {
            ConicShape::Ellipse { a, .. } | ConicShape::Hyperbola { a, .. } => self.focal_distance() / a,
            ConicShape::Parabola { .. } => 1.0,
            ConicShape::Circle { .. } => 0.0,
        }
    }

    /// Foci in world coordinates: two for ellipses and hyperbolas (first at
    /// `-c`), one for parabolas and circles.
    pub fn foci(&self) -> Vec<Point> {
        let c = self.focal_distance();
        match self.shape {
            ConicShape::Ellipse { .. } | ConicShape::Hyperbola { .. } => vec![
                self.to_world(Point::new(-c, 0.0)),
                self.to_world(Point::new(c, 0.0)),
            ],
            ConicShape::Parabola { .. } => vec![self.to_world(Point::new(c, 0.0))],
            ConicShape::Circle { .. } => vec![self.center],
        }
    }

    pub fn focus(&self, which: Focus) -> Point {
        let f = self.foci();
        match which {
            Focus::Second if f.len() > 1 => f[1],
            _ => f[0],
        }
    }

    /// Directrix of a parabola.
    pub fn directrix(&self) -> Option<GenCircle> {
        match self.shape {
            ConicShape::Parabola { focal } => {
                let p = self.to_world(Point::new(-focal, 0.0));
                GenCircle::line_through_dir(p, self.dir_to_world(Point::new(0.0, 1.0))).ok()
            }
            _ => None,
        }
    }

    /// Line of the major (focal) axis.
    pub fn major_axis(&self) -> GenCircle {
        GenCircle::line_through_dir(self.center, self.dir_to_world(Point::new(1.0, 0.0))).expect("unit direction")
    }

    pub fn minor_axis(&self) -> GenCircle {
        GenCircle::line_through_dir(self.center, self.dir_to_world(Point::new(0.0, 1.0))).expect("unit direction")
    }

    /// Symmetric matrix of the point equation in the local frame.
    fn point_matrix(&self) -> Mat3 {
        match self.shape {
            ConicShape::Ellipse { a, b } => [[1.0 / (a * a), 0.0, 0.0], [0.0, 1.0 / (b * b), 0.0], [0.0, 0.0, -1.0]],
            ConicShape::Hyperbola { a, b } => [[1.0 / (a * a), 0.0, 0.0], [0.0, -1.0 / (b * b), 0.0], [0.0, 0.0, -1.0]],
            ConicShape::Parabola { focal } => [[0.0, 0.0, -2.0 * focal], [0.0, 1.0, 0.0], [-2.0 * focal, 0.0, 0.0]],
            ConicShape::Circle { radius } => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -radius * radius]],
        }
    }

    /// Adjugate of the point matrix (up to scale): the tangential equation.
    fn dual_matrix(&self) -> Mat3 {
        match self.shape {
            ConicShape::Ellipse { a, b } => [[a * a, 0.0, 0.0], [0.0, b * b, 0.0], [0.0, 0.0, -1.0]],
            ConicShape::Hyperbola { a, b } => [[a * a, 0.0, 0.0], [0.0, -b * b, 0.0], [0.0, 0.0, -1.0]],
            ConicShape::Parabola { focal } => {
                [[0.0, 0.0, 2.0 * focal], [0.0, -4.0 * focal * focal, 0.0], [2.0 * focal, 0.0, 0.0]]
            }
            ConicShape::Circle { radius } => [[radius * radius, 0.0, 0.0], [0.0, radius * radius, 0.0], [0.0, 0.0, -1.0]],
        }
    }

    /// Value of the normalized implicit equation at a world point.
    pub fn implicit(&self, p: Point) -> f64 {
        let q = self.to_local(p);
        let h = [q.x, q.y, 1.0];
        quad3(&self.point_matrix(), h, h)
    }

    /// First-order distance from `p` to the conic, `|F| / |∇F|`.
    pub fn distance_estimate(&self, p: Point) -> f64 {
        let q = self.to_local(p);
        let m = self.point_matrix();
        let h = [q.x, q.y, 1.0];
        let f = quad3(&m, h, h);
        let gx = 2.0 * (m[0][0] * q.x + m[0][1] * q.y + m[0][2]);
        let gy = 2.0 * (m[1][0] * q.x + m[1][1] * q.y + m[1][2]);
        f.abs() / gx.hypot(gy)
    }

    pub fn on_conic(&self, p: Point, tol: f64) -> bool {
        self.distance_estimate(p) <= tol * self.size()
    }

    /// Point of the conic at parameter `t` (world coordinates).
    ///
    /// Ellipse/circle: angle; hyperbola: `t` in `(-∞, ∞)` sweeps the right
    /// branch, `branch = 1` selects the left one; parabola: `(f t², 2 f t)`.
    pub fn point_at(&self, t: f64, branch: usize) -> Point {
        let q = match self.shape {
            ConicShape::Ellipse { a, b } => Point::new(a * t.cos(), b * t.sin()),
            ConicShape::Hyperbola { a, b } => {
                let s = if branch == 0 { 1.0 } else { -1.0 };
                Point::new(s * a * t.cosh(), b * t.sinh())
            }
            ConicShape::Parabola { focal } => Point::new(focal * t * t, 2.0 * focal * t),
            ConicShape::Circle { radius } => Point::new(radius * t.cos(), radius * t.sin()),
        };
        self.to_world(q)
    }

    /// Tangent line at a point of the conic.
    pub fn tangent_at(&self, p: Point) -> Result<GenCircle> {
        let q = self.to_local(p);
        let m = self.point_matrix();
        let h = [q.x, q.y, 1.0];
        let l: Vec<f64> = (0..3).map(|i| (0..3).map(|j| m[i][j] * h[j]).sum()).collect();
        let n = self.dir_to_world(Point::new(l[0], l[1]));
        GenCircle::line_through_dir(p, n.perp())
    }

    /// Number of real intersections of the line through local point `p`
    /// with direction `d` (asymptotic directions count as meeting once).
    fn meets(&self, p: Point, d: Point) -> usize {
        let m = self.point_matrix();
        let ph = [p.x, p.y, 1.0];
        let dh = [d.x, d.y, 0.0];
        let a2 = quad3(&m, dh, dh);
        let b = quad3(&m, dh, ph);
        let c = quad3(&m, ph, ph);
        let s = quad3(&m.map(|r| r.map(f64::abs)), dh, dh).max(1e-300);
        if a2.abs() <= 1e-12 * s {
            return if b.abs() <= 1e-14 * s * (1.0 + p.norm()) { 0 } else { 1 };
        }
        let disc = b * b - a2 * c;
        if disc > 0.0 {
            2
        } else if disc < 0.0 {
            0
        } else {
            1
        }
    }

    /// Left and right tangent lines from `a`.
    ///
    /// Starting from a line through `a` that misses the conic and rotating it
    /// counterclockwise, the first tangent met is the left one and the second
    /// the right one. For a point on the conic both are the ordinary tangent.
    pub fn tangent_lines_from_point(&self, a: Point) -> Result<TangentPair> {
        if self.on_conic(a, 1e-12) {
            let t = self.tangent_at(a)?;
            return Ok(TangentPair { left: t, right: t, left_point: a, right_point: a });
        }
        let p = self.to_local(a);
        let dm = self.dual_matrix();
        // lines through p: l = (n1, n2, -n·p)
        let lcol = |i: usize| -> [f64; 3] {
            let mut v = [0.0; 3];
            v[i] = 1.0;
            v[2] = -[p.x, p.y][i];
            v
        };
        let (c0, c1) = (lcol(0), lcol(1));
        let k11 = quad3(&dm, c0, c0);
        let k12 = quad3(&dm, c0, c1);
        let k22 = quad3(&dm, c1, c1);
        let disc = k12 * k12 - k11 * k22;
        let scale = k12 * k12 + (k11 * k22).abs();
        if disc < -1e-13 * scale || disc <= 0.0 && scale == 0.0 {
            return Err(Error::NoRealTangent);
        }
        let root = disc.max(0.0).sqrt();
        let q = -(k12 + if k12 < 0.0 { -root } else { root });
        let normals = [Point::new(q, k11), Point::new(k22, q)];
        let mut lines = Vec::with_capacity(2);
        for n in normals {
            let Some(n) = n.normalized() else { continue };
            let l = [n.x, n.y, -n.dot(p)];
            let pole: Vec<f64> = (0..3).map(|i| (0..3).map(|j| dm[i][j] * l[j]).sum()).collect();
            if pole[2].abs() <= 1e-14 * pole[0].abs().max(pole[1].abs()) {
                // tangency at infinity: an asymptote direction, not a tangent
                continue;
            }
            let t = Point::new(pole[0] / pole[2], pole[1] / pole[2]);
            lines.push((n, t));
        }
        if lines.len() != 2 {
            return Err(Error::NoRealTangent);
        }
        let (na, ta) = lines[0];
        let (nb, tb) = lines[1];
        let tha = na.perp().angle().rem_euclid(PI);
        let thb = nb.perp().angle().rem_euclid(PI);
        if (tha - thb).abs() <= 1e-12 || (PI - (tha - thb).abs()) <= 1e-12 {
            return Err(Error::AmbiguousOrder);
        }
        let arc_misses = |from: f64, to: f64| -> bool {
            let len = (to - from).rem_euclid(PI);
            (1..32).any(|k| {
                let th = from + len * k as f64 / 32.0;
                self.meets(p, Point::polar(th)) == 0
            })
        };
        let ab = arc_misses(tha, thb);
        let ba = arc_misses(thb, tha);
        let (left, right) = match (ab, ba) {
            (true, false) => ((nb, tb), (na, ta)),
            (false, true) => ((na, ta), (nb, tb)),
            _ => return Err(Error::AmbiguousOrder),
        };
        let mk = |(n, t): (Point, Point)| -> Result<(GenCircle, Point)> {
            let line = GenCircle::line_through_dir(a, self.dir_to_world(n.perp()))?;
            Ok((line, self.to_world(t)))
        };
        let (left, left_point) = mk(left)?;
        let (right, right_point) = mk(right)?;
        Ok(TangentPair { left, right, left_point, right_point })
    }

    fn check_focus(&self, f: Point) -> Result<()> {
        if self.foci().iter().any(|g| g.dist(f) <= 1e-9 * self.size()) {
            Ok(())
        } else {
            Err(Error::NotAFocus)
        }
    }

    /// Locus of the feet of perpendiculars from the focus `f` onto the
    /// tangent lines: the circle on the major axis as diameter.
    pub fn pedal_circle(&self, f: Point) -> Result<GenCircle> {
        let r = match self.shape {
            ConicShape::Ellipse { a, .. } | ConicShape::Hyperbola { a, .. } => a,
            ConicShape::Circle { radius } => radius,
            ConicShape::Parabola { .. } => return Err(Error::NotCentralConic),
        };
        self.check_focus(f)?;
        GenCircle::circle(self.center, r)
    }

    /// Oriented angle from the focal line `F T` to the tangent at `T`.
    pub fn focal_tangent_angle(&self, f: Point, t: Point) -> Result<f64> {
        let tangent = self.tangent_at(t)?;
        oriented_angle(t - f, tangent.tangent_at(t))
    }

    /// Range `(φ₁, φ₂)` of angles attained by [`Self::focal_tangent_angle`]
    /// over the conic, found by scanning.
    pub fn admissible_angle_interval(&self, focus: Focus) -> Result<(f64, f64)> {
        if !self.is_general() {
            return Err(Error::InvalidConfig("admissible angles need a general conic".into()));
        }
        let f = self.focus(focus);
        let n = 4096;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut visit = |t: Point| -> Result<()> {
            let phi = self.focal_tangent_angle(f, t)?;
            lo = lo.min(phi);
            hi = hi.max(phi);
            Ok(())
        };
        match self.shape {
            ConicShape::Ellipse { .. } => {
                for k in 0..n {
                    visit(self.point_at(2.0 * PI * k as f64 / n as f64, 0))?;
                }
            }
            _ => {
                for branch in 0..2 {
                    for k in 0..=n {
                        let t = -6.0 + 12.0 * k as f64 / n as f64;
                        visit(self.point_at(t, branch))?;
                    }
                }
            }
        }
        Ok((lo, hi))
    }

    /// Circle with center on the minor axis tangent to the conic at the two
    /// points where the focal line from `focus` meets the tangent at angle `phi`.
    ///
    /// It is the image of the pedal circle under rotation about the focus by
    /// `π/2 - φ` followed by the homothety at the focus with ratio `1/|sin φ|`.
    pub fn doubly_tangent_circle_minor(&self, focus: Focus, phi: f64) -> Result<GenCircle> {
        let (lo, hi) = self.admissible_angle_interval(focus)?;
        if !(phi > lo && phi < hi) || phi.sin().abs() < 1e-12 {
            return Err(Error::AngleOutOfRange(phi));
        }
        let f = self.focus(focus);
        self.spiral_image_of_pedal(f, phi)
    }

    pub(crate) fn spiral_image_of_pedal(&self, f: Point, phi: f64) -> Result<GenCircle> {
        let pedal = self.pedal_circle(f)?;
        let GenCircle::Circle { center, radius } = pedal else { unreachable!() };
        let k = 1.0 / phi.sin().abs();
        let c = f + (center - f).rotated(FRAC_PI_2 - phi) * k;
        GenCircle::circle(c, radius * k)
    }

    /// The doubly tangent circles centered on the major axis of an ellipse
    /// that pass through `a`: left center `m < 0`, right center `m > 0` in
    /// the ellipse's frame.
    ///
    /// In the frame of `x²/a² + y²/b² = 1` these circles are
    /// `(x - m)² + y² = b²(1 - m²/c²)`, so the members through `(x, y)`
    /// solve `(1 + b²/c²) m² - 2 x m + (x² + y² - b²) = 0`.
    pub fn doubly_tangent_circles_major(&self, a: Point) -> Result<(GenCircle, GenCircle)> {
        let (m1, m2) = self.major_family_roots(a)?;
        let ConicShape::Ellipse { a: sa, b } = self.shape else { unreachable!() };
        let c = self.focal_distance();
        let mk = |m: f64| -> Result<GenCircle> {
            let r2 = b * b * (1.0 - (m / c) * (m / c));
            // the envelope touches the ellipse at x = m a²/c², which must be a real point
            if !(r2 > 0.0) || (m * sa / c).abs() >= c {
                return Err(Error::OutsideDomain);
            }
            GenCircle::circle(self.to_world(Point::new(m, 0.0)), r2.sqrt())
        };
        Ok((mk(m1)?, mk(m2)?))
    }

    /// Centers `(m_left, m_right)` (local x-coordinates) of the major-axis
    /// family members through `a`.
    pub fn major_family_roots(&self, a: Point) -> Result<(f64, f64)> {
        let ConicShape::Ellipse { a: sa, b } = self.shape else {
            return Err(Error::InvalidConfig("major-axis family needs an ellipse".into()));
        };
        if !(sa > b) {
            return Err(Error::InvalidConfig("major-axis family needs a non-circular ellipse".into()));
        }
        let c = self.focal_distance();
        let q = self.to_local(a);
        let k2 = 1.0 + (b / c) * (b / c);
        let k1 = -2.0 * q.x;
        let k0 = q.norm2() - b * b;
        let disc = k1 * k1 - 4.0 * k2 * k0;
        let scale = (k1 * k1).max((4.0 * k2 * k0).abs());
        if disc <= 1e-12 * scale {
            return Err(Error::DegenerateRoots);
        }
        if k0 >= 0.0 {
            // both centers on one side of the conic's center
            return Err(Error::OutsideDomain);
        }
        let s = disc.sqrt();
        let qq = -0.5 * (k1 + if k1 < 0.0 { -s } else { s });
        let (r1, r2) = (qq / k2, k0 / qq);
        Ok((r1.min(r2), r1.max(r2)))
    }

    /// Similarity taking an ellipse of eccentricity `1/√2` to `x²/2 + y² = 1`,
    /// together with that normalized ellipse. The foci land on `(±1, 0)`.
    pub fn normalize_ellipse_e707(&self) -> Result<(Similarity, Conic)> {
        let ConicShape::Ellipse { b, .. } = self.shape else {
            return Err(Error::WrongEccentricity(self.eccentricity()));
        };
        let e = self.eccentricity();
        if (e - FRAC_1_SQRT_2).abs() > 1e-9 {
            return Err(Error::WrongEccentricity(e));
        }
        Ok((self.normalizing_similarity(b), Conic::ellipse(2f64.sqrt(), 1.0)?))
    }

    /// World → canonical frame, scaled so that the semi-minor axis is 1.
    pub(crate) fn normalizing_similarity(&self, b: f64) -> Similarity {
        let s = 1.0 / b;
        Similarity {
            scale: s,
            angle: -self.axis_angle,
            shift: -(self.center.rotated(-self.axis_angle) * s),
        }
    }
}

/// Sweep oracle for the left/right rule: rotates a line about `a` from a
/// non-secant start in `samples` steps and refines each change of the
/// intersection count by bisection. Returns the tangent-line angles in the
/// order met.
pub fn sweep_tangent_moments(conic: &Conic, a: Point, samples: usize) -> Result<Vec<f64>> {
    let p = conic.to_local(a);
    let count = |th: f64| conic.meets(p, Point::polar(th));
    let mut start = None;
    for k in 0..samples {
        let th = PI * k as f64 / samples as f64;
        if count(th) == 0 && count(th + 1e-6) == 0 {
            start = Some(th);
            break;
        }
    }
    let Some(start) = start else { return Err(Error::AmbiguousOrder) };
    let mut moments = Vec::new();
    let step = PI / samples as f64;
    let mut prev = count(start);
    for k in 1..=samples {
        let th = start + step * k as f64;
        let cur = count(th);
        if cur != prev {
            let (mut lo, mut hi) = (th - step, th);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if count(mid) == prev {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let m = 0.5 * (lo + hi);
            // record only transitions out of / into the non-secant state
            if prev == 0 || cur == 0 {
                moments.push(conic.dir_to_world(Point::polar(m)).angle().rem_euclid(PI));
            }
            prev = cur;
        }
    }
    Ok(moments)
}
