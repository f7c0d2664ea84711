//! Focal angle facts about tangent lines.

use super::{Conic, ConicKind};
use crate::error::{Error, Result};
use crate::geom::{intersect, oriented_angle, GenCircle, Point};

/// Angles `(left tangent → A F₁, A F₂ → right tangent)` for a central conic.
/// The two agree for every point with two tangents.
pub fn isogonal_angles(conic: &Conic, a: Point) -> Result<(f64, f64)> {
    if !conic.is_general() {
        return Err(Error::NotCentralConic);
    }
    let f = conic.foci();
    let tp = conic.tangent_lines_from_point(a)?;
    let l = oriented_angle(tp.left.tangent_at(a), f[0] - a)?;
    let r = oriented_angle(f[1] - a, tp.right.tangent_at(a))?;
    Ok((l, r))
}

/// Angles `(T F₁ → tangent, tangent → T F₂)` at a point `t` of a central conic.
pub fn optical_angles(conic: &Conic, t: Point) -> Result<(f64, f64)> {
    if !conic.is_general() {
        return Err(Error::NotCentralConic);
    }
    let f = conic.foci();
    let d = conic.tangent_at(t)?.tangent_at(t);
    Ok((oriented_angle(f[0] - t, d)?, oriented_angle(d, f[1] - t)?))
}

/// Where the perpendicular from the focus of a parabola to `line` meets the directrix.
pub fn directrix_foot(conic: &Conic, line: &GenCircle) -> Result<Point> {
    let GenCircle::Line { normal, .. } = *line else {
        return Err(Error::DegenerateFoot);
    };
    let (Some(directrix), ConicKind::Parabola) = (conic.directrix(), conic.kind()) else {
        return Err(Error::InvalidConfig("directrix feet need a parabola".into()));
    };
    let f = conic.foci()[0];
    let perp = GenCircle::line_through_dir(f, normal)?;
    match intersect(&perp, &directrix) {
        Ok(v) if v.len() == 1 => Ok(v[0]),
        _ => Err(Error::DegenerateFoot),
    }
}

/// Directrix feet `(P, Q)` of the left and right tangents from `a`.
pub fn directrix_feet(conic: &Conic, a: Point) -> Result<(Point, Point)> {
    let tp = conic.tangent_lines_from_point(a)?;
    Ok((directrix_foot(conic, &tp.left)?, directrix_foot(conic, &tp.right)?))
}
