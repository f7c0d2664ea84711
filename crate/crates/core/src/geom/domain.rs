use serde::{Deserialize, Serialize};

use super::Point;

/// A named inequality restricting a domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Predicate {
    /// `normal · p < offset`
    HalfPlane { normal: Point, offset: f64 },
    /// `|p - center| < radius`
    InsideCircle { center: Point, radius: f64 },
    /// `|p - center| > radius`
    OutsideCircle { center: Point, radius: f64 },
}

impl Predicate {
    pub fn holds(&self, p: Point) -> bool {
        match *self {
            Predicate::HalfPlane { normal, offset } => normal.dot(p) < offset,
            Predicate::InsideCircle { center, radius } => p.dist(center) < radius,
            Predicate::OutsideCircle { center, radius } => p.dist(center) > radius,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Predicate::HalfPlane { normal, offset } => format!("half-plane n={normal} c={offset}"),
            Predicate::InsideCircle { center, radius } => format!("inside circle {center} r={radius}"),
            Predicate::OutsideCircle { center, radius } => format!("outside circle {center} r={radius}"),
        }
    }
}

/// A bounding disk plus extra predicates; membership is pure and deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub center: Point,
    pub radius: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub predicates: Vec<Predicate>,
}

impl Domain {
    pub fn disk(center: Point, radius: f64) -> Self {
        Domain {
            center,
            radius,
            predicates: Vec::new(),
        }
    }

    pub fn with(mut self, p: Predicate) -> Self {
        self.predicates.push(p);
        self
    }

    pub fn contains(&self, p: Point) -> bool {
        p.is_finite() && p.dist(self.center) < self.radius && self.predicates.iter().all(|q| q.holds(p))
    }

    pub fn scale(&self) -> f64 {
        1f64.max(self.center.max_abs() + self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_uses_disk_and_predicates() {
        let d = Domain::disk(Point::ORIGIN, 1.0).with(Predicate::HalfPlane {
            normal: Point::new(1.0, 0.0),
            offset: 0.0,
        });
        assert!(d.contains(Point::new(-0.5, 0.2)));
        assert!(!d.contains(Point::new(0.5, 0.2)));
        assert!(!d.contains(Point::new(-1.5, 0.0)));
        assert!(!d.contains(Point::new(f64::NAN, 0.0)));
    }
}
