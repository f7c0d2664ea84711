use crate::error::{Error, Result};

/// A real root with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: f64,
    pub multiplicity: usize,
}

impl Root {
    fn simple(value: f64) -> Self {
        Root { value, multiplicity: 1 }
    }
}

/// Relative band inside which a discriminant counts as zero.
const DISC_BAND: f64 = 1e-10;

/// Real roots of `c1·t + c0` or `c2·t² + c1·t + c0`, ascending.
///
/// Leading zero coefficients lower the degree; an all-zero polynomial is an error.
pub fn solve_quadratic(c2: f64, c1: f64, c0: f64) -> Result<Vec<Root>> {
    if c2 == 0.0 {
        if c1 == 0.0 {
            return if c0 == 0.0 { Err(Error::IdenticallyZero) } else { Ok(Vec::new()) };
        }
        return Ok(vec![Root::simple(-c0 / c1)]);
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    let band = DISC_BAND * (c1 * c1).max((4.0 * c2 * c0).abs());
    if disc < -band {
        return Ok(Vec::new());
    }
    if disc <= band {
        return Ok(vec![Root { value: -c1 / (2.0 * c2), multiplicity: 2 }]);
    }
    let q = -0.5 * (c1 + c1.signum_or_one() * disc.sqrt());
    let (mut r1, mut r2) = (q / c2, c0 / q);
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    Ok(vec![Root::simple(r1), Root::simple(r2)])
}

trait SignumOrOne {
    fn signum_or_one(self) -> f64;
}

impl SignumOrOne for f64 {
    fn signum_or_one(self) -> f64 {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Real roots of `c3·t³ + c2·t² + c1·t + c0`, ascending, with multiplicities.
///
/// A trigonometric or Cardano closed form seeds the roots; each simple root
/// is then polished by two Newton steps.
pub fn solve_cubic(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Vec<Root>> {
    let m = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    if m == 0.0 {
        return Err(Error::IdenticallyZero);
    }
    if c3 == 0.0 {
        return solve_quadratic(c2, c1, c0);
    }
    let (a, b, c) = (c2 / c3, c1 / c3, c0 / c3);
    // t = x - a/3 gives x³ + p x + q = 0
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let sz = 1f64.max(a.abs()).max(b.abs().sqrt()).max(c.abs().cbrt());
    let mut roots = if p.abs() <= 1e-12 * sz * sz && q.abs() <= 1e-12 * sz * sz * sz {
        vec![Root { value: -shift, multiplicity: 3 }]
    } else {
        let h = 0.5 * q;
        let g = p / 3.0;
        let disc = h * h + g * g * g;
        let band = DISC_BAND * (h * h).max((g * g * g).abs());
        if disc > band {
            let s = disc.sqrt();
            let u = -(h.signum_or_one()) * (h.abs() + s).cbrt();
            let v = if u != 0.0 { -g / u } else { 0.0 };
            vec![Root::simple(u + v - shift)]
        } else if disc >= -band {
            // double root at -3q/(2p), simple root at 3q/p
            let x1 = 3.0 * q / p;
            let x2 = -1.5 * q / p;
            let mut r = vec![Root::simple(x1 - shift), Root { value: x2 - shift, multiplicity: 2 }];
            r.sort_by(|l, r| l.value.total_cmp(&r.value));
            r
        } else {
            let r = 2.0 * (-g).sqrt();
            let cos_arg = (h / (g * (-g).sqrt())).clamp(-1.0, 1.0);
            let theta = cos_arg.acos() / 3.0;
            let tau = 2.0 * std::f64::consts::PI / 3.0;
            let mut v: Vec<Root> = (0..3)
                .map(|k| Root::simple(r * (theta - tau * k as f64).cos() - shift))
                .collect();
            v.sort_by(|l, r| l.value.total_cmp(&r.value));
            v
        }
    };
    for root in roots.iter_mut().filter(|r| r.multiplicity == 1) {
        root.value = polish(c3, c2, c1, c0, root.value, 2);
    }
    roots.sort_by(|l, r| l.value.total_cmp(&r.value));
    Ok(roots)
}

fn polish(c3: f64, c2: f64, c1: f64, c0: f64, mut t: f64, steps: usize) -> f64 {
    let eval = |t: f64| ((c3 * t + c2) * t + c1) * t + c0;
    for _ in 0..steps {
        let f = eval(t);
        let df = (3.0 * c3 * t + 2.0 * c2) * t + c1;
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let next = t - f / df;
        if next.is_finite() && eval(next).abs() <= f.abs() {
            t = next;
        } else {
            break;
        }
    }
    t
}
