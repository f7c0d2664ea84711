//! SVG figures of webs: leaves clipped to the domain, optional closure hexagon.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{GenCircle, Point};
use crate::hexagon::trace_hexagon;
use crate::webs::{Color, Web3};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub center: Point,
    pub half_width: f64,
    /// Leaves per foliation, red, green, blue.
    pub leaves: [usize; 3],
    pub colors: [String; 3],
    /// `(O, A1)`; A1 is projected onto the red leaf through O.
    pub hexagon: Option<(Point, Point)>,
    pub pixels: u32,
}

impl RenderSpec {
    /// Viewport framing the web's domain with a margin.
    pub fn for_web(w: &Web3) -> Self {
        RenderSpec {
            center: w.domain.center,
            half_width: 1.25 * w.domain.radius,
            leaves: [9, 9, 9],
            colors: ["#d62728".into(), "#2ca02c".into(), "#1f77b4".into()],
            hexagon: None,
            pixels: 600,
        }
    }
}

fn f(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" { "0.000000".into() } else { s }
}

/// Seeds spread across the domain transversally to the leaves of `c`.
fn seeds(w: &Web3, c: Color, n: usize) -> Vec<Point> {
    let d = &w.domain;
    let other = match c {
        Color::Red => Color::Green,
        Color::Green => Color::Blue,
        Color::Blue => Color::Red,
    };
    let dir = w.curve(other, d.center).map(|g| g.tangent_at(d.center)).unwrap_or(Point::new(1.0, 0.0));
    (0..n)
        .map(|k| {
            let t = if n == 1 { 0.0 } else { -0.9 + 1.8 * k as f64 / (n - 1) as f64 };
            d.center + dir * (t * d.radius)
        })
        .collect()
}

fn curve_element(g: &GenCircle, span: f64, attrs: &str) -> String {
    match *g {
        GenCircle::Circle { center, radius } => {
            format!("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {attrs}/>", f(center.x), f(center.y), f(radius))
        }
        GenCircle::Line { normal, offset } => {
            let foot = normal * offset;
            let (p, q) = (foot + normal.perp() * span, foot - normal.perp() * span);
            format!("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {attrs}/>", f(p.x), f(p.y), f(q.x), f(q.y))
        }
    }
}

/// SVG 1.1 document; the y-up plane is flipped by a single group transform.
pub fn render_svg(w: &Web3, spec: &RenderSpec) -> Result<String> {
    let d = &w.domain;
    if !(spec.half_width > 0.0) || spec.center.dist(d.center) > d.radius + spec.half_width * std::f64::consts::SQRT_2 {
        return Err(Error::InvalidConfig("viewport misses the domain".into()));
    }
    let hw = spec.half_width;
    let (x0, y0) = (spec.center.x - hw, spec.center.y - hw);
    let stroke = hw / 300.0;
    let span = 4.0 * (hw + spec.center.max_abs() + d.center.max_abs() + d.radius);
    let mut s = String::new();
    let px = spec.pixels;
    writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{px}\" height=\"{px}\" viewBox=\"{} {} {} {}\">",
        f(x0),
        f(-(spec.center.y + hw)),
        f(2.0 * hw),
        f(2.0 * hw)
    )
    .unwrap();
    writeln!(s, "<title>{}</title>", w.name).unwrap();
    writeln!(
        s,
        "<defs><clipPath id=\"domain\"><circle cx=\"{}\" cy=\"{}\" r=\"{}\"/></clipPath></defs>",
        f(d.center.x),
        f(d.center.y),
        f(d.radius)
    )
    .unwrap();
    writeln!(s, "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"{}\">", f(stroke)).unwrap();
    let axis = format!("stroke=\"#999999\" stroke-width=\"{}\"", f(0.5 * stroke));
    writeln!(s, "<line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\" {axis}/>", f(x0), f(x0 + 2.0 * hw)).unwrap();
    writeln!(s, "<line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{}\" {axis}/>", f(y0), f(y0 + 2.0 * hw)).unwrap();
    writeln!(
        s,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" stroke=\"#555555\" stroke-dasharray=\"{} {}\"/>",
        f(d.center.x),
        f(d.center.y),
        f(d.radius),
        f(4.0 * stroke),
        f(3.0 * stroke)
    )
    .unwrap();
    writeln!(s, "<g clip-path=\"url(#domain)\">").unwrap();
    for (i, c) in Color::ALL.into_iter().enumerate() {
        writeln!(s, "<g stroke=\"{}\">", spec.colors[i]).unwrap();
        for p in seeds(w, c, spec.leaves[i]) {
            if let Ok(g) = w.curve(c, p) {
                writeln!(s, "{}", curve_element(&g, span, "")).unwrap();
            }
        }
        writeln!(s, "</g>").unwrap();
    }
    let mut labels = Vec::new();
    if let Some((o, a1)) = spec.hexagon {
        let red = w.curve(Color::Red, o)?;
        let t = trace_hexagon(w, o, red.project(a1))?;
        for (i, c) in Color::ALL.into_iter().enumerate() {
            let g = w.curve(c, o)?;
            let attrs = format!("stroke=\"{}\" stroke-width=\"{}\"", spec.colors[i], f(2.5 * stroke));
            writeln!(s, "{}", curve_element(&g, span, &attrs)).unwrap();
        }
        let mut pts = vec![("O".to_string(), o)];
        pts.extend(t.a.iter().enumerate().map(|(k, &p)| (format!("A{}", k + 1), p)));
        for (name, p) in pts {
            writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\" stroke=\"none\"/>", f(p.x), f(p.y), f(3.0 * stroke)).unwrap();
            labels.push((name, p));
        }
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</g>").unwrap();
    for (name, p) in labels {
        writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"serif\">{name}</text>",
            f(p.x + 4.0 * stroke),
            f(-p.y - 4.0 * stroke),
            f(18.0 * stroke)
        )
        .unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::webs::preset;

    fn web(key: &str) -> Web3 {
        preset(key).unwrap().build().unwrap()
    }

    #[test]
    fn blaschke_figure_draws_circles() {
        let w = web("blaschke");
        let svg = render_svg(&w, &RenderSpec::for_web(&w)).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 27 + 2);
        assert!(!svg.contains("polyline"));
    }

    #[test]
    fn empty_leaf_counts_draw_axes_and_domain() {
        let w = web("pappus");
        let spec = RenderSpec { leaves: [0, 0, 0], ..RenderSpec::for_web(&w) };
        let svg = render_svg(&w, &spec).unwrap();
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn hexagon_overlay_is_labelled() {
        let w = web("main-b");
        let o = w.domain.center;
        let spec = RenderSpec { hexagon: Some((o, o + Point::new(0.05, 0.0))), ..RenderSpec::for_web(&w) };
        let svg = render_svg(&w, &spec).unwrap();
        for k in 1..=7 {
            assert!(svg.contains(&format!(">A{k}</text>")));
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let w = web("main-c");
        let spec = RenderSpec::for_web(&w);
        assert_eq!(render_svg(&w, &spec).unwrap(), render_svg(&w, &spec).unwrap());
    }

    #[test]
    fn far_viewport_is_rejected() {
        let w = web("pappus");
        let spec = RenderSpec { center: Point::new(50.0, 50.0), ..RenderSpec::for_web(&w) };
        assert!(matches!(render_svg(&w, &spec), Err(Error::InvalidConfig(_))));
    }
}
