use serde::{Deserialize, Serialize};

use super::{GenCircle, Inversion, Point, REL_EPS};
use crate::error::{Error, Result};

/// How two tangent generalized circles touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TangencyKind {
    External,
    Internal,
}

/// Classifies the tangency of `s` with `c`, with the residual of the chosen kind.
///
/// Tangencies involving a line are reported as external.
pub fn tangency_kind(s: &GenCircle, c: &GenCircle) -> (TangencyKind, f64) {
    match (*s, *c) {
        (GenCircle::Circle { center: c1, radius: r1 }, GenCircle::Circle { center: c2, radius: r2 }) => {
            let d = c1.dist(c2);
            let ext = (d - (r1 + r2)).abs();
            let int = (d - (r1 - r2).abs()).abs();
            if ext <= int {
                (TangencyKind::External, ext)
            } else {
                (TangencyKind::Internal, int)
            }
        }
        (GenCircle::Circle { center, radius }, GenCircle::Line { normal, offset })
        | (GenCircle::Line { normal, offset }, GenCircle::Circle { center, radius }) => {
            (TangencyKind::External, ((normal.dot(center) - offset).abs() - radius).abs())
        }
        (GenCircle::Line { normal: n1, .. }, GenCircle::Line { normal: n2, .. }) => {
            (TangencyKind::External, n1.cross(n2).abs())
        }
    }
}

/// Point where the tangent curves `s` and `c` touch (`None` for parallel lines).
pub fn tangency_point(s: &GenCircle, c: &GenCircle) -> Option<Point> {
    match (*s, *c) {
        (GenCircle::Circle { center: cs, radius: rs }, GenCircle::Circle { center: cc, radius: rc }) => {
            let (kind, _) = tangency_kind(s, c);
            let u = (cs - cc).normalized()?;
            let w = match kind {
                TangencyKind::External => u,
                TangencyKind::Internal if rc > rs => u,
                TangencyKind::Internal => -u,
            };
            Some(cc + w * rc)
        }
        (GenCircle::Circle { center, .. }, line @ GenCircle::Line { .. })
        | (line @ GenCircle::Line { .. }, GenCircle::Circle { center, .. }) => Some(line.project(center)),
        _ => None,
    }
}

/// All generalized circles through `a` tangent to both `c1` and `c2`.
///
/// Inversion centered at `a` sends the sought circles to the common tangent
/// lines of the images of `c1` and `c2`; those are found in closed form and
/// mapped back.
pub fn apollonius_pcc(a: Point, c1: &GenCircle, c2: &GenCircle) -> Result<Vec<GenCircle>> {
    if c1.same_curve(c2, REL_EPS) {
        return Err(Error::CoincidentCurves);
    }
    let scale = c1.scale().max(c2.scale()).max(a.max_abs());
    let inv = Inversion::new(a, scale);
    let tol = 1e-12;
    let i1 = inv.apply_gen(c1, tol)?;
    let i2 = inv.apply_gen(c2, tol)?;
    let lines = match (i1, i2) {
        (GenCircle::Circle { center: p1, radius: r1 }, GenCircle::Circle { center: p2, radius: r2 }) => {
            common_tangents(p1, r1, p2, r2)
        }
        (GenCircle::Line { normal, offset }, GenCircle::Circle { center, radius })
        | (GenCircle::Circle { center, radius }, GenCircle::Line { normal, offset }) => {
            // a lies on one of the curves: tangent lines parallel to its image,
            // excluding the image itself
            let base = normal.dot(center);
            [base - radius, base + radius]
                .into_iter()
                .filter(|d| (d - offset).abs() > 1e-12 * scale)
                .map(|d| (normal, d))
                .collect()
        }
        (GenCircle::Line { .. }, GenCircle::Line { .. }) => {
            return Err(Error::DegenerateConfiguration(
                "point lies on both circles".into(),
            ));
        }
    };
    let mut out: Vec<GenCircle> = Vec::with_capacity(4);
    for (n, d) in lines {
        let l = GenCircle::line(n, d)?;
        let back = inv.apply_gen(&l, tol)?;
        if !out.iter().any(|g| g.same_curve(&back, 1e-10)) {
            out.push(back);
        }
    }
    if out.is_empty() {
        return Err(Error::NoRealSolution);
    }
    Ok(out)
}

/// Common tangent lines `n·X = d` of two circles (up to four).
fn common_tangents(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<(Point, f64)> {
    let dv = c1 - c2;
    let l2 = dv.norm2();
    let scale = 1f64.max(c1.max_abs()).max(c2.max_abs()).max(r1).max(r2);
    let mut out = Vec::new();
    if l2.sqrt() <= 1e-14 * scale {
        return out;
    }
    for sigma2 in [1.0, -1.0] {
        // n·c1 - d = r1, n·c2 - d = sigma2·r2
        let k = r1 - sigma2 * r2;
        let disc = l2 - k * k;
        if disc < -1e-12 * l2 {
            continue;
        }
        let root = disc.max(0.0).sqrt();
        let signs: &[f64] = if root <= 1e-9 * l2.sqrt() { &[0.0] } else { &[1.0, -1.0] };
        for &s in signs {
            let n = (dv * k + dv.perp() * (s * root)) / l2;
            out.push((n, n.dot(c1) - r1));
        }
    }
    out
}
