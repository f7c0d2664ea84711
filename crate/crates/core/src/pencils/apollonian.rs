use serde::{Deserialize, Serialize};

use super::{Pencil, PencilKind, PencilSpec};
use crate::error::{Error, Result};
use crate::geom::{apollonius_pcc, tangency_kind, tangency_point, GenCircle, Point, TangencyKind};

/// Label that singles out one circle among the solutions through a point:
/// how it touches each fixed circle, and on which side of the chord between
/// the two tangency points the point lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TangencyClass {
    pub first: TangencyKind,
    pub second: TangencyKind,
    /// Sign of `(T₁ - A) × (T₂ - A)`.
    pub orientation: i8,
}

/// Class of the circle `s` through `a` touching `f1` and `f2`.
pub fn tangency_class(s: &GenCircle, f1: &GenCircle, f2: &GenCircle, a: Point) -> Option<TangencyClass> {
    let t1 = tangency_point(s, f1)?;
    let t2 = tangency_point(s, f2)?;
    let cr = (t1 - a).cross(t2 - a);
    let scale = 1f64.max(s.scale()).powi(2);
    let orientation = if cr.abs() <= 1e-12 * scale {
        0
    } else if cr > 0.0 {
        1
    } else {
        -1
    };
    Some(TangencyClass {
        first: tangency_kind(s, f1).0,
        second: tangency_kind(s, f2).0,
        orientation,
    })
}

/// A set of circles attached to a pencil: the circles tangent to two fixed
/// members, or one of its degenerate forms, which are themselves pencils.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ApollonianSet {
    Tangent {
        fixed1: GenCircle,
        fixed2: GenCircle,
        class: TangencyClass,
    },
    /// Parabolic pencil with its vertex at a vertex of an elliptic pencil.
    VertexParabolic { vertex: Point, normal: Point },
    /// Hyperbolic pencil with limiting points at the vertices of an elliptic pencil.
    VertexHyperbolic,
}

#[derive(Clone, Debug, PartialEq)]
enum Resolved {
    Tangent {
        fixed1: GenCircle,
        fixed2: GenCircle,
        class: TangencyClass,
    },
    Pencil(Pencil),
}

/// An Apollonian set checked against its pencil, ready to produce members.
#[derive(Clone, Debug, PartialEq)]
pub struct ApollonianFamily {
    inner: Resolved,
}

impl ApollonianFamily {
    pub fn new(pencil: &Pencil, set: &ApollonianSet) -> Result<Self> {
        let inner = match set {
            ApollonianSet::Tangent { fixed1, fixed2, class } => {
                if fixed1.same_curve(fixed2, 1e-12) {
                    return Err(Error::InvalidConfig("fixed circles coincide".into()));
                }
                if !pencil.contains(fixed1, 1e-9) || !pencil.contains(fixed2, 1e-9) {
                    return Err(Error::InvalidConfig("fixed circle is not a pencil member".into()));
                }
                Resolved::Tangent { fixed1: *fixed1, fixed2: *fixed2, class: *class }
            }
            ApollonianSet::VertexParabolic { vertex, normal } => {
                if pencil.kind() != PencilKind::Elliptic
                    || !pencil.vertices().iter().any(|v| v.dist(*vertex) <= 1e-12 * 1f64.max(v.max_abs()))
                {
                    return Err(Error::InvalidConfig("parabolic set needs a vertex of an elliptic pencil".into()));
                }
                Resolved::Pencil(PencilSpec::Parabolic { vertex: *vertex, normal: *normal }.build()?)
            }
            ApollonianSet::VertexHyperbolic => match (pencil.kind(), pencil.vertices()) {
                (PencilKind::Elliptic, &[v1, v2]) => Resolved::Pencil(Pencil::hyperbolic(v1, v2)?),
                _ => return Err(Error::InvalidConfig("hyperbolic set needs an elliptic pencil with two vertices".into())),
            },
        };
        Ok(ApollonianFamily { inner })
    }

    /// The circle of the set through `a`.
    pub fn member_through(&self, a: Point) -> Result<GenCircle> {
        match &self.inner {
            Resolved::Pencil(p) => p.member_through(a),
            Resolved::Tangent { fixed1, fixed2, class } => {
                let sols = apollonius_pcc(a, fixed1, fixed2)?;
                let mut hit = sols
                    .into_iter()
                    .filter(|s| tangency_class(s, fixed1, fixed2, a).as_ref() == Some(class));
                match (hit.next(), hit.next()) {
                    (Some(s), None) => Ok(s),
                    (None, _) => Err(Error::NoRealSolution),
                    _ => Err(Error::BranchJump),
                }
            }
        }
    }
}
