//! Planar primitives: points, generalized circles, their intersections,
//! oriented line angles, inversions and similarities.
//!
//! Tolerances are relative to a per-call scale factor, the largest of 1 and
//! the coordinates/radii involved.

mod apollonius;
mod circle;
mod cubic;
mod domain;
mod point;

use serde::{Deserialize, Serialize};

pub use apollonius::{apollonius_pcc, tangency_kind, tangency_point, TangencyKind};
pub use circle::{eq_rank, CircleEq, GenCircle};
#[cfg(test)]
pub(crate) use circle::det3;
pub use cubic::{solve_cubic, solve_quadratic, Root};
pub use domain::{Domain, Predicate};
pub use point::Point;

use crate::error::{Error, Result};

/// Default relative epsilon.
pub const REL_EPS: f64 = 1e-12;
/// Default tangency band: a discriminant within `band · scale²` of zero is a
/// tangency and yields a single point.
pub const TANGENCY_BAND: f64 = 1e-10;

/// Tolerance settings for intersection predicates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel_eps: f64,
    pub tangency_band: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_eps: REL_EPS,
            tangency_band: TANGENCY_BAND,
        }
    }
}

/// Intersection points of two generalized circles (0, 1 or 2 points).
pub fn intersect(g1: &GenCircle, g2: &GenCircle) -> Result<Vec<Point>> {
    intersect_with(g1, g2, &Tolerance::default())
}

pub fn intersect_with(g1: &GenCircle, g2: &GenCircle, tol: &Tolerance) -> Result<Vec<Point>> {
    let scale = g1.scale().max(g2.scale());
    if g1.same_curve(g2, tol.rel_eps) {
        return Err(Error::CoincidentCurves);
    }
    let band = tol.tangency_band * scale * scale;
    match (*g1, *g2) {
        (GenCircle::Line { normal: n1, offset: d1 }, GenCircle::Line { normal: n2, offset: d2 }) => {
            let det = n1.cross(n2);
            if det.abs() <= tol.rel_eps {
                return Ok(Vec::new());
            }
            Ok(vec![Point::new(
                (d1 * n2.y - d2 * n1.y) / det,
                (n1.x * d2 - n2.x * d1) / det,
            )])
        }
        (GenCircle::Line { normal, offset }, GenCircle::Circle { center, radius })
        | (GenCircle::Circle { center, radius }, GenCircle::Line { normal, offset }) => {
            let dist = normal.dot(center) - offset;
            let foot = center - normal * dist;
            let h2 = (radius - dist) * (radius + dist);
            line_circle_points(foot, normal.perp(), h2, band)
        }
        (
            GenCircle::Circle { center: c1, radius: r1 },
            GenCircle::Circle { center: c2, radius: r2 },
        ) => {
            // Work from the smaller circle for conditioning.
            let (c1, r1, c2, r2) = if r1 <= r2 { (c1, r1, c2, r2) } else { (c2, r2, c1, r1) };
            let delta = c2 - c1;
            let d = delta.norm();
            if d <= tol.rel_eps * scale {
                return Ok(Vec::new());
            }
            let u = delta / d;
            let along = (d * d + (r1 - r2) * (r1 + r2)) / (2.0 * d);
            let foot = c1 + u * along;
            let h2 = (r1 - along) * (r1 + along);
            line_circle_points(foot, u.perp(), h2, band)
        }
    }
}

fn line_circle_points(foot: Point, dir: Point, h2: f64, band: f64) -> Result<Vec<Point>> {
    if h2 < -band {
        Ok(Vec::new())
    } else if h2 <= band {
        Ok(vec![foot])
    } else {
        let h = h2.sqrt();
        Ok(vec![foot - dir * h, foot + dir * h])
    }
}

/// Oriented angle in `[0, π)` from the line with direction `d1` to the line
/// with direction `d2`, measured counterclockwise.
pub fn oriented_angle(d1: Point, d2: Point) -> Result<f64> {
    if d1.norm2() == 0.0 || d2.norm2() == 0.0 || !d1.is_finite() || !d2.is_finite() {
        return Err(Error::ZeroDirection);
    }
    let t = d1.cross(d2).atan2(d1.dot(d2));
    Ok(reduce_mod_pi(t))
}

/// Reduces an angle to `[0, π)`.
pub fn reduce_mod_pi(t: f64) -> f64 {
    let r = t.rem_euclid(std::f64::consts::PI);
    if r >= std::f64::consts::PI {
        0.0
    } else {
        r
    }
}

/// Signed difference of two angles modulo `period`, in `[-period/2, period/2)`.
pub fn angle_diff(a: f64, b: f64, period: f64) -> f64 {
    (a - b + 0.5 * period).rem_euclid(period) - 0.5 * period
}

/// Distance from `x` to the line `line`; errors unless `line` is a line.
pub fn distance_point_line(x: Point, line: &GenCircle) -> Result<f64> {
    match *line {
        GenCircle::Line { normal, offset } => Ok((normal.dot(x) - offset).abs()),
        GenCircle::Circle { .. } => Err(Error::DegenerateConfiguration(
            "distance to a line requested for a circle".into(),
        )),
    }
}

/// Foot of the perpendicular from `x` onto the line through `p` with direction `dir`.
pub fn foot_on_line(x: Point, p: Point, dir: Point) -> Point {
    let u = dir / dir.norm();
    p + u * (x - p).dot(u)
}

/// Intersection of the lines `p + s·u` and `q + t·v`, if not parallel.
pub fn line_line(p: Point, u: Point, q: Point, v: Point) -> Option<Point> {
    let den = u.cross(v);
    if den.abs() <= 1e-15 * u.norm() * v.norm() {
        return None;
    }
    let s = (q - p).cross(v) / den;
    Some(p + u * s)
}

/// Inversion in the circle with the given center and squared radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inversion {
    pub center: Point,
    pub radius2: f64,
}

impl Inversion {
    pub fn new(center: Point, radius: f64) -> Self {
        Inversion { center, radius2: radius * radius }
    }

    pub fn apply(&self, p: Point) -> Result<Point> {
        let v = p - self.center;
        let n2 = v.norm2();
        if n2 == 0.0 {
            return Err(Error::ProjectsToInfinity);
        }
        Ok(self.center + v * (self.radius2 / n2))
    }

    /// Image of a generalized circle. `tol` decides incidence with the center.
    pub fn apply_gen(&self, g: &GenCircle, tol: f64) -> Result<GenCircle> {
        let a = self.center;
        let k = self.radius2;
        match *g {
            GenCircle::Line { normal, offset } => {
                let s = offset - normal.dot(a);
                if s.abs() <= tol * g.scale().max(a.max_abs()) {
                    Ok(*g)
                } else {
                    GenCircle::circle(a + normal * (k / (2.0 * s)), k / (2.0 * s.abs()))
                }
            }
            GenCircle::Circle { center, radius } => {
                let dc = center - a;
                let pw = (dc.norm() - radius) * (dc.norm() + radius);
                if pw.abs() <= tol * g.scale().max(a.max_abs()).powi(2) {
                    let n = dc / dc.norm();
                    GenCircle::line(n, n.dot(a) + k / (2.0 * radius))
                } else {
                    GenCircle::circle(a + dc * (k / pw), k * radius / pw.abs())
                }
            }
        }
    }
}

/// Orientation-preserving similarity `X ↦ scale · R(angle) · X + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    pub scale: f64,
    pub angle: f64,
    pub shift: Point,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        scale: 1.0,
        angle: 0.0,
        shift: Point::ORIGIN,
    };

    pub fn apply(&self, p: Point) -> Point {
        p.rotated(self.angle) * self.scale + self.shift
    }

    pub fn apply_vector(&self, v: Point) -> Point {
        v.rotated(self.angle) * self.scale
    }

    pub fn inverse(&self) -> Similarity {
        let s = 1.0 / self.scale;
        Similarity {
            scale: s,
            angle: -self.angle,
            shift: -(self.shift.rotated(-self.angle) * s),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        Similarity {
            scale: self.scale * other.scale,
            angle: self.angle + other.angle,
            shift: self.apply(other.shift),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn unit_at(x: f64, y: f64) -> GenCircle {
        GenCircle::circle(Point::new(x, y), 1.0).unwrap()
    }

    fn sorted(mut v: Vec<Point>) -> Vec<Point> {
        v.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        v
    }

    #[test]
    fn unit_circles_meet_at_equilateral_apexes() {
        let pts = sorted(intersect(&unit_at(0.0, 0.0), &unit_at(1.0, 0.0)).unwrap());
        let h = 3f64.sqrt() / 2.0;
        assert_eq!(pts.len(), 2);
        assert!(pts[0].dist(Point::new(0.5, -h)) < 1e-15);
        assert!(pts[1].dist(Point::new(0.5, h)) < 1e-15);
    }

    #[test]
    fn distant_circles_are_disjoint() {
        assert!(intersect(&unit_at(0.0, 0.0), &unit_at(3.0, 0.0)).unwrap().is_empty());
    }

    #[test]
    fn axis_cuts_unit_circle() {
        let axis = GenCircle::line(Point::new(0.0, 1.0), 0.0).unwrap();
        let pts = sorted(intersect(&axis, &unit_at(0.0, 0.0)).unwrap());
        assert_eq!(pts, vec![Point::new(-1.0, 0.0), Point::new(1.0, 0.0)]);
    }

    #[test]
    fn tangent_circles_give_one_point() {
        let pts = intersect(&unit_at(0.0, 0.0), &unit_at(2.0, 0.0)).unwrap();
        assert_eq!(pts, vec![Point::new(1.0, 0.0)]);
    }

    #[test]
    fn coincident_curves_are_rejected() {
        assert_eq!(
            intersect(&unit_at(0.5, 0.5), &unit_at(0.5, 0.5)),
            Err(Error::CoincidentCurves)
        );
        let l1 = GenCircle::line(Point::new(1.0, 1.0), 1.0).unwrap();
        let l2 = GenCircle::line(Point::new(-2.0, -2.0), -2.0).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(intersect(&l1, &l2), Err(Error::CoincidentCurves));
    }

    #[test]
    fn line_canonical_form() {
        let l = GenCircle::line(Point::new(0.0, -3.0), 0.0).unwrap();
        assert_eq!(l, GenCircle::Line { normal: Point::new(0.0, 1.0), offset: 0.0 });
        let l = GenCircle::line(Point::new(3.0, 4.0), -10.0).unwrap();
        assert_eq!(l, GenCircle::Line { normal: Point::new(-0.6, -0.8), offset: 2.0 });
    }

    #[test]
    fn oriented_angle_examples() {
        let a = oriented_angle(Point::new(1.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        assert!((a - FRAC_PI_2).abs() < 1e-15);
        let a = oriented_angle(Point::new(1.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        assert!((a - FRAC_PI_4).abs() < 1e-15);
        let a = oriented_angle(Point::new(1.0, 1.0), Point::new(1.0, 0.0)).unwrap();
        assert!((a - 3.0 * FRAC_PI_4).abs() < 1e-15);
        assert_eq!(oriented_angle(Point::new(2.0, 1.0), Point::new(-4.0, -2.0)).unwrap(), 0.0);
        assert_eq!(oriented_angle(Point::ORIGIN, Point::new(1.0, 0.0)), Err(Error::ZeroDirection));
        assert!(oriented_angle(Point::new(0.3, 0.1), Point::new(-1.0, 2.0)).unwrap() < PI);
    }

    #[test]
    fn point_line_distances() {
        let x_axis = GenCircle::line(Point::new(0.0, 1.0), 0.0).unwrap();
        let y_axis = GenCircle::line(Point::new(1.0, 0.0), 0.0).unwrap();
        let diag = GenCircle::line(Point::new(1.0, 1.0), 0.0).unwrap();
        assert_eq!(distance_point_line(Point::new(0.0, 1.0), &x_axis).unwrap(), 1.0);
        assert_eq!(distance_point_line(Point::new(3.0, 4.0), &y_axis).unwrap(), 3.0);
        assert!((distance_point_line(Point::new(1.0, 1.0), &diag).unwrap() - SQRT_2).abs() < 1e-15);
        assert!(distance_point_line(Point::new(-2.0, 2.0), &diag).unwrap() < 1e-15);
    }

    #[test]
    fn inversion_maps_circle_through_center_to_line() {
        let inv = Inversion::new(Point::ORIGIN, 1.0);
        let c = GenCircle::circle(Point::new(1.0, 0.0), 1.0).unwrap();
        let img = inv.apply_gen(&c, 1e-12).unwrap();
        assert!(img.same_curve(&GenCircle::line(Point::new(1.0, 0.0), 0.5).unwrap(), 1e-15));
        let back = inv.apply_gen(&img, 1e-12).unwrap();
        assert!(back.same_curve(&c, 1e-14));
    }

    #[test]
    fn inversion_image_agrees_pointwise() {
        let inv = Inversion::new(Point::new(0.3, -0.2), 1.7);
        let c = GenCircle::circle(Point::new(1.1, 0.4), 0.6).unwrap();
        let img = inv.apply_gen(&c, 1e-12).unwrap();
        for k in 0..12 {
            let p = c.walk(Point::new(1.7, 0.4), k as f64 * 0.5);
            let q = inv.apply(p).unwrap();
            assert!(img.residual(q).abs() < 1e-12);
        }
    }

    #[test]
    fn similarity_inverse_roundtrip() {
        let s = Similarity { scale: 2.5, angle: 0.7, shift: Point::new(1.0, -3.0) };
        let p = Point::new(0.25, 4.0);
        let q = s.inverse().apply(s.apply(p));
        assert!(p.dist(q) < 1e-14);
        let c = GenCircle::line(Point::new(1.0, 2.0), 3.0).unwrap();
        let img = c.transformed(&s);
        let x = c.project(Point::ORIGIN);
        assert!(img.residual(s.apply(x)).abs() < 1e-13);
    }

    #[test]
    fn circle_through_three_points() {
        let c = GenCircle::through_three(Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0)).unwrap();
        assert!(c.same_curve(&unit_at(0.0, 0.0), 1e-15));
        let l = GenCircle::through_three(Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 2.0)).unwrap();
        assert!(l.is_line());
    }
}
