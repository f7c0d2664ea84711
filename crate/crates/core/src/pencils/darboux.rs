use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{GenCircle, Point};

type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn along(a: V3, d: V3, s: f64) -> V3 {
    [a[0] + s * d[0], a[1] + s * d[1], a[2] + s * d[2]]
}

/// Central projection of the plane `z = 0` from `e1` onto a sphere, followed
/// by central projection from `e2` (a pole of the sphere) back to the plane.
///
/// With `e2` at the top or bottom of the sphere the second projection is
/// conformal, so lines of the plane go to generalized circles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DarbouxConfig {
    pub sphere_center: V3,
    pub sphere_radius: f64,
    pub e1: V3,
    pub e2: V3,
}

impl Default for DarbouxConfig {
    fn default() -> Self {
        DarbouxConfig {
            sphere_center: [0.0, 0.0, 1.0],
            sphere_radius: 1.0,
            e1: [0.2, 0.1, 1.3],
            e2: [0.0, 0.0, 2.0],
        }
    }
}

impl DarbouxConfig {
    pub fn validate(&self) -> Result<()> {
        let r = self.sphere_radius;
        let finite = self.sphere_center.iter().chain(&self.e1).chain(&self.e2).all(|v| v.is_finite());
        if !(r > 0.0) || !finite {
            return Err(Error::InvalidConfig("sphere must have positive radius".into()));
        }
        let d2 = sub(self.e2, self.sphere_center);
        if d2[0].hypot(d2[1]) > 1e-12 * r || (d2[2].abs() - r).abs() > 1e-12 * r {
            return Err(Error::InvalidConfig("second center must be a pole of the sphere".into()));
        }
        if self.e2[2].abs() <= 1e-12 * r {
            return Err(Error::InvalidConfig("second center lies in the plane".into()));
        }
        let d1 = sub(self.e1, self.sphere_center);
        if (dot(d1, d1).sqrt() - r).abs() <= 1e-9 * r || self.e1[2] == 0.0 {
            return Err(Error::InvalidConfig("first center lies on the sphere or in the plane".into()));
        }
        Ok(())
    }

    fn scale(&self) -> f64 {
        1f64.max(self.sphere_radius)
    }

    /// Image of a plane point.
    pub fn forward(&self, a: Point) -> Result<Point> {
        let p = [a.x, a.y, 0.0];
        let d = sub(p, self.e1);
        let w = sub(self.e1, self.sphere_center);
        let qa = dot(d, d);
        let qb = dot(d, w);
        let qc = dot(w, w) - self.sphere_radius * self.sphere_radius;
        let disc = qb * qb - qa * qc;
        if disc < 0.0 || qa == 0.0 {
            return Err(Error::MissesSphere);
        }
        let s = (-qb + disc.sqrt()) / qa;
        let q = along(self.e1, d, s);
        self.project_from_pole(q)
    }

    fn project_from_pole(&self, q: V3) -> Result<Point> {
        let dz = self.e2[2] - q[2];
        if dz.abs() <= 1e-12 * self.scale() {
            return Err(Error::ProjectsToInfinity);
        }
        let u = self.e2[2] / dz;
        let b = along(self.e2, sub(q, self.e2), u);
        Ok(Point::new(b[0], b[1]))
    }

    /// Preimage of a plane point; errors if it falls on the other sheet of
    /// the first projection.
    pub fn inverse(&self, b: Point) -> Result<Point> {
        let p = [b.x, b.y, 0.0];
        let d = sub(p, self.e2);
        let t = -2.0 * dot(d, sub(self.e2, self.sphere_center)) / dot(d, d);
        let q = along(self.e2, d, t);
        let dz = self.e1[2] - q[2];
        if dz.abs() <= 1e-12 * self.scale() {
            return Err(Error::ProjectsToInfinity);
        }
        let s = self.e1[2] / dz;
        let a3 = along(self.e1, sub(q, self.e1), s);
        let a = Point::new(a3[0], a3[1]);
        let back = self.forward(a)?;
        if back.dist(b) > 1e-8 * self.scale().max(b.max_abs()) {
            return Err(Error::MissesSphere);
        }
        Ok(a)
    }

    /// Image of the line through `p` with direction `dir`.
    pub fn image_of_line(&self, p: Point, dir: Point) -> Result<GenCircle> {
        let u = dir.normalized().ok_or(Error::ZeroDirection)?;
        let step = 0.25 * self.sphere_radius;
        let pts = [self.forward(p - u * step)?, self.forward(p)?, self.forward(p + u * step)?];
        GenCircle::through_three(pts[0], pts[1], pts[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Algebraic circle fit: least-squares `x² + y² + D x + E y + F = 0`,
    /// returning the largest geometric residual.
    fn circle_fit_residual(pts: &[Point]) -> f64 {
        let mut m = [[0.0f64; 3]; 3];
        let mut rhs = [0.0f64; 3];
        for p in pts {
            let row = [p.x, p.y, 1.0];
            let z = -(p.x * p.x + p.y * p.y);
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] += row[i] * row[j];
                }
                rhs[i] += row[i] * z;
            }
        }
        let det = crate::geom::det3(m);
        let solve = |k: usize| {
            let mut mk = m;
            for i in 0..3 {
                mk[i][k] = rhs[i];
            }
            crate::geom::det3(mk) / det
        };
        let (d, e, f) = (solve(0), solve(1), solve(2));
        let c = Point::new(-d / 2.0, -e / 2.0);
        let r = (c.norm2() - f).sqrt();
        pts.iter().map(|p| (p.dist(c) - r).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn inverse_undoes_forward() {
        let cfg = DarbouxConfig::default();
        cfg.validate().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let a = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let b = cfg.forward(a).unwrap();
            assert!(cfg.inverse(b).unwrap().dist(a) < 1e-10);
        }
    }

    #[test]
    fn lines_map_to_circles() {
        let cfg = DarbouxConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let p = Point::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
            let u = Point::polar(rng.random_range(0.0..std::f64::consts::PI));
            let pts: Vec<Point> = (0..20).map(|k| cfg.forward(p + u * (-0.5 + k as f64 / 19.0)).unwrap()).collect();
            let scale = pts.iter().map(|q| q.max_abs()).fold(1.0, f64::max);
            assert!(circle_fit_residual(&pts) < 1e-9 * scale);
            let img = cfg.image_of_line(p, u).unwrap();
            assert!(pts.iter().all(|q| img.residual(*q).abs() < 1e-9 * scale));
        }
    }

    #[test]
    fn image_of_x_axis_is_a_circle() {
        let cfg = DarbouxConfig::default();
        let pts: Vec<Point> = (0..20).map(|k| cfg.forward(Point::new(-1.0 + 0.1 * k as f64, 0.0)).unwrap()).collect();
        assert!(circle_fit_residual(&pts) < 1e-9);
    }

    #[test]
    fn touching_point_is_fixed_when_centers_are_above_it() {
        // sphere touches the plane at the origin; with both centers on the
        // vertical through it, the origin maps to itself
        let cfg = DarbouxConfig { e1: [0.0, 0.0, 1.5], ..DarbouxConfig::default() };
        assert!(cfg.forward(Point::ORIGIN).unwrap().norm() < 1e-15);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let bad = DarbouxConfig { e2: [0.5, 0.0, 1.8], ..DarbouxConfig::default() };
        assert!(bad.validate().is_err());
        let bad = DarbouxConfig { e1: [0.0, 0.0, 2.0], ..DarbouxConfig::default() };
        assert!(bad.validate().is_err());
    }
}
