use std::f64::consts::SQRT_2;

use super::*;
use crate::conics::{Conic, ConicShape};
use crate::geom::{Domain, GenCircle};
use crate::webs::{pappus_web, preset, preset_keys, WebConfig};

fn web(key: &str) -> Web3 {
    preset(key).unwrap().build().unwrap()
}

fn hexagonal_keys() -> Vec<&'static str> {
    preset_keys().into_iter().filter(|k| web(k).expected_hexagonal && !web(k).experimental).collect()
}

fn median_at(w: &Web3, frac: f64) -> f64 {
    let opts = ScanOptions::relative(w, 100, &[frac], 17);
    defect_scan(w, &opts).unwrap().rows[0].median_abs
}

#[test]
fn degenerate_hexagon_stays_at_center() {
    let w = web("blaschke");
    let o = w.domain.center;
    let t = trace_hexagon(&w, o, o).unwrap();
    assert!(t.a.iter().all(|&p| p.dist(o) < 1e-14));
    assert!(t.defect < 1e-14);
}

#[test]
fn pappus_hexagon_closes() {
    let w = pappus_web(Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(0.0, 4.0), Domain::disk(Point::new(1.2, 1.0), 0.5)).unwrap();
    let o = Point::new(1.25, 0.9);
    let a1 = first_vertex(&w, o, 0.1).unwrap();
    let t = trace_hexagon(&w, o, a1).unwrap();
    assert!(t.defect <= 1e-10 * a1.dist(o), "{}", t.defect);
    assert_eq!(t.steps.len(), 6);
    assert_eq!(t.steps.iter().map(|s| s.k).collect::<Vec<_>>(), vec![2, 3, 4, 5, 6, 7]);
}

#[test]
fn trace_vertices_lie_on_their_leaves() {
    for key in ["main-b", "apollonian", "volk-strubecker", "graf-sauer"] {
        let w = web(key);
        let o = w.domain.center;
        let a1 = first_vertex(&w, o, 0.1 * w.domain.radius).unwrap();
        let t = trace_hexagon(&w, o, a1).unwrap();
        let leaf = |c| w.curve(c, o).unwrap();
        let (red, green, blue) = (leaf(Color::Red), leaf(Color::Green), leaf(Color::Blue));
        let on = [(&red, 0), (&blue, 1), (&green, 2), (&red, 3), (&blue, 4), (&green, 5), (&red, 6)];
        for (g, i) in on {
            assert!(g.residual(t.a[i]).abs() <= 1e-10 * w.domain.scale().max(g.scale()), "{key} A{}", i + 1);
        }
        assert_eq!(t.defect, t.a[6].dist(t.a[0]));
    }
}

#[test]
fn off_leaf_start_is_rejected() {
    let w = web("pappus");
    let o = w.domain.center;
    let r = trace_hexagon(&w, o, o + Point::new(0.01, 0.013));
    assert!(matches!(r, Err(Error::InvalidConfig(_))));
}

#[test]
fn leaving_the_domain_is_a_step_failure() {
    let w = web("pappus");
    let o = w.domain.center + Point::new(0.45, 0.0);
    let a1 = w.curve(Color::Red, o).unwrap().walk(o, -0.04);
    let r = trace_hexagon(&w, o, a1);
    assert!(matches!(r, Err(Error::StepFailed(_))), "{r:?}");
}

#[test]
fn reversed_colors_trace_the_same_hexagon() {
    for key in hexagonal_keys() {
        let w = web(key);
        let o = w.domain.center;
        let a1 = first_vertex(&w, o, 0.1 * w.domain.radius).unwrap();
        let t = trace_hexagon(&w, o, a1).unwrap();
        let r = trace_hexagon(&w.swap_green_blue(), o, a1).unwrap();
        // the swapped web walks the cycle backwards: A1, A6, A5, ..., A2
        for i in 1..6 {
            let d = r.a[i].dist(t.a[6 - i]);
            assert!(d <= 1e-9, "{key} vertex {i}: {d:e}");
        }
    }
}

#[test]
fn hexagonal_presets_close_at_all_sizes() {
    for key in hexagonal_keys() {
        let w = web(key);
        let r = defect_scan(&w, &ScanOptions::relative(&w, 100, &[0.05, 0.1, 0.2], 3)).unwrap();
        for row in &r.rows {
            assert_eq!(row.attempted, 100);
            assert!(row.max_abs <= 1e-8 * row.h, "{key} h={}: {:e}", row.h, row.max_abs);
        }
    }
}

#[test]
fn defect_shrinks_with_the_hexagon() {
    // below the rounding floor both sizes sit at machine precision; the floor
    // is 100 ulps of the domain scale
    for key in hexagonal_keys() {
        let w = web(key);
        let floor = 100.0 * f64::EPSILON * w.domain.scale();
        let (big, small) = (median_at(&w, 0.2), median_at(&w, 0.02));
        assert!(small <= big.max(floor), "{key}: {small:e} > {big:e}");
    }
    for key in ["main-e-ecc072", "elliptic-swap-parabola", "blaschke-perturbed", "cubic-series"] {
        let w = web(key);
        let (big, small) = (median_at(&w, 0.2), median_at(&w, 0.02));
        assert!(small < big, "{key}: {small:e} >= {big:e}");
    }
}

#[test]
fn controls_do_not_close() {
    for (control, reference) in [("main-e-ecc072", "main-e"), ("elliptic-swap-parabola", "main-d"), ("blaschke-perturbed", "blaschke")] {
        let c = median_at(&web(control), 0.1);
        let h = median_at(&web(reference), 0.1);
        assert!(c >= 100.0 * h, "{control}: {c:e} vs {h:e}");
    }
}

#[test]
fn control_defect_grows_with_positive_slope() {
    let w = web("blaschke-perturbed");
    let r = defect_scan(&w, &ScanOptions::relative(&w, 100, &[0.05, 0.1, 0.2], 5)).unwrap();
    assert!(r.slope.unwrap() > 1.0, "{:?}", r.slope);
}

#[test]
fn scans_are_reproducible_and_execution_independent() {
    let w = web("main-c");
    let opts = ScanOptions::relative(&w, 60, &[0.05, 0.1], 99);
    let a = defect_scan(&w, &opts.clone().execution(Execution::Sequential)).unwrap();
    let b = defect_scan(&w, &opts.clone().execution(Execution::Parallel)).unwrap();
    let c = defect_scan(&w, &opts).unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
    let other = defect_scan(&w, &ScanOptions { seed: 100, ..opts }).unwrap();
    assert_ne!(a, other);
}

#[test]
fn scan_rejects_oversized_hexagons_and_dead_domains() {
    let w = web("pappus");
    assert!(matches!(defect_scan(&w, &ScanOptions::relative(&w, 10, &[0.31], 1)), Err(Error::InvalidConfig(_))));
    assert!(matches!(defect_scan(&w, &ScanOptions::relative(&w, 0, &[0.1], 1)), Err(Error::InvalidConfig(_))));
    let mut cfg: WebConfig = preset("main-e").unwrap();
    cfg.domain = Domain::disk(Point::new(3.0, 3.0), 0.3);
    let dead = cfg.build().unwrap();
    let r = defect_scan(&dead, &ScanOptions::relative(&dead, 20, &[0.1], 1));
    assert!(matches!(r, Err(Error::InsufficientValidTraces { attempted: 20, succeeded: 0 })), "{r:?}");
}

fn chart_of(key: &str) -> (Web3, Chart) {
    let cfg = preset(key).unwrap();
    let chart = Chart::for_params(&cfg.params).unwrap();
    (cfg.build().unwrap(), chart)
}

#[test]
fn charts_straighten_their_webs() {
    for key in ["main-b", "main-c", "main-d", "main-e"] {
        let (w, chart) = chart_of(key);
        let r = verify_chart(&w, &chart, 50, 8).unwrap();
        assert!(r.max_relative <= 1e-8, "{key}: {:e}", r.max_relative);
        assert!(r.min_jacobian > 1e-4, "{key}: {:e}", r.min_jacobian);
        assert!(r.foliations.iter().all(|f| f.leaves >= 40));
    }
}

#[test]
fn charts_fail_on_mismatched_webs() {
    for (key, other) in [("main-b", "elliptic-swap"), ("main-c", "main-b"), ("main-d", "elliptic-swap-parabola"), ("main-e", "main-e-ecc072")] {
        let (w, chart) = chart_of(key);
        let mut cfg = preset(other).unwrap();
        cfg.domain = w.domain.clone();
        let r = verify_chart(&cfg.build().unwrap(), &chart, 50, 8).unwrap();
        assert!(r.max_relative >= 1e-3, "{key} on {other}: {:e}", r.max_relative);
    }
}

#[test]
fn chart_on_foreign_domain_is_misaligned() {
    let (_, chart) = chart_of("main-e");
    assert!(matches!(verify_chart(&web("pappus"), &chart, 20, 1), Err(Error::MisalignedChart)));
}

#[test]
fn chart_b_sum_is_log_ratio_on_apollonius_circle() {
    let conic = Conic::new(ConicShape::Ellipse { a: SQRT_2, b: 1.0 }, Point::ORIGIN, 0.0).unwrap();
    let (c, r) = (Point::new(5.0 / 3.0, 0.0), 4.0 / 3.0);
    for k in 0..20 {
        let th = -1.0 + 2.0 * k as f64 / 19.0;
        let a = c + Point::polar(th) * r;
        let (u, v) = chart_b(&conic, a).unwrap();
        assert!((u + v - 2f64.ln()).abs() < 1e-12, "theta {th}: {}", u + v);
    }
}

#[test]
fn chart_d_is_symmetric_and_matches_pencil_ratio() {
    let parabola = Conic::new(ConicShape::Parabola { focal: 1.0 }, Point::ORIGIN, 0.0).unwrap();
    let l = Point::new(-1.0, 0.0);
    let (u, v) = chart_d(&parabola, l, Point::new(-2.0, 0.0)).unwrap();
    assert!((u - v).abs() < 1e-12);
    let l = Point::new(-1.0, 0.5);
    let f = Point::new(1.0, 0.0);
    let w = web("main-d");
    for k in 0..20 {
        let a = w.domain.center + Point::polar(k as f64) * (0.2 * (k % 5) as f64 / 5.0);
        let (u, v) = chart_d(&parabola, l, a).unwrap();
        let rho = a.dist(l) / a.dist(f);
        assert!((u + v - (0.25 * (1.0 - rho * rho)).ln()).abs() < 1e-9);
    }
}

#[test]
fn chart_e_sum_and_auxiliaries() {
    let w = web("main-e");
    let conic = Conic::new(ConicShape::Ellipse { a: SQRT_2, b: 1.0 }, Point::ORIGIN, 0.0).unwrap();
    let (f1, f2) = (Point::new(-1.0, 0.0), Point::new(1.0, 0.0));
    for k in 0..20 {
        let a = w.domain.center + Point::polar(k as f64 * 0.7) * (0.09 * (k % 4) as f64 / 4.0);
        let (u, v) = chart_e(&conic, a).unwrap();
        let cos = (f1 - a).dot(f2 - a) / (a.dist(f1) * a.dist(f2));
        // (1-s²)(1-t²)/(s²t²) = 1/cos²(F1 A F2)
        assert!((u + v + (cos * cos).ln()).abs() < 1e-9, "{a}: {} vs {}", u + v, -(cos * cos).ln());
        let m = major_auxiliaries(&conic, a).unwrap();
        assert!((m.r_left - m.t).abs() < 1e-10 && (m.r_right - m.s).abs() < 1e-10);
        assert!((m.ar - (1.0 - m.s * m.s - m.t * m.t).sqrt()).abs() < 1e-10);
    }
}

#[test]
fn chart_e_rejects_other_eccentricities() {
    let conic = Conic::new(ConicShape::Ellipse { a: 2.0, b: 1.0 }, Point::ORIGIN, 0.0).unwrap();
    assert!(matches!(chart_e(&conic, Point::new(-0.1, 0.5)), Err(Error::WrongEccentricity(_))));
}

#[test]
fn chart_c_is_constant_on_a_focal_line() {
    let (w, chart) = chart_of("main-c");
    let o = w.domain.center;
    let line = w.curve(Color::Red, o).unwrap();
    assert!(matches!(line, GenCircle::Line { .. }));
    let u0 = chart.eval(o).unwrap().0;
    for k in 1..20 {
        let q = line.walk(o, 0.01 * k as f64);
        assert!(crate::geom::angle_diff(chart.eval(q).unwrap().0, u0, std::f64::consts::PI).abs() < 1e-12);
    }
}
