use super::*;
use crate::conics::ConicShape;
use crate::geom::Predicate;

fn sample_in(d: &Domain, rng: &mut ChaCha8Rng) -> Point {
    loop {
        let p = d.center + Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * d.radius;
        if d.contains(p) {
            return p;
        }
    }
}

fn web(key: &str) -> Web3 {
    preset(key).unwrap().build().unwrap()
}

#[test]
fn every_preset_has_the_leaf_property() {
    for key in preset_keys() {
        let w = web(key);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for c in Color::ALL {
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let p = sample_in(&w.domain, &mut rng);
                let leaf = w.curve(c, p).unwrap_or_else(|e| panic!("{key} {c:?} at {p}: {e}"));
                let mut checked = 0;
                for j in 0..40 {
                    let q = leaf.walk(p, (j as f64 / 40.0 - 0.5) * w.domain.radius);
                    if !w.domain.contains(q) {
                        continue;
                    }
                    worst = worst.max(leaf_distance(&leaf, &w.curve(c, q).unwrap()));
                    checked += 1;
                    if checked == 20 {
                        break;
                    }
                }
            }
            assert!(worst <= 1e-10, "{key} {c:?}: {worst:e}");
        }
    }
}

#[test]
fn every_preset_is_transversal() {
    for key in preset_keys() {
        let w = web(key);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let p = sample_in(&w.domain, &mut rng);
            let ang = w.min_crossing_angle(p).unwrap_or_else(|e| panic!("{key} at {p}: {e}"));
            assert!(ang >= 1e-3, "{key} at {p}: {ang}");
        }
    }
}

#[test]
fn configs_round_trip_bit_exactly() {
    for key in preset_keys() {
        let cfg = preset(key).unwrap();
        let text = cfg.to_toml().unwrap();
        let back = WebConfig::from_toml(&text).unwrap();
        assert_eq!(back, cfg, "{key}");
        assert_eq!(back.to_toml().unwrap(), text, "{key}");
    }
}

#[test]
fn config_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("hexweb-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("main-c.toml");
    let cfg = preset("main-c").unwrap();
    cfg.save(&path).unwrap();
    assert_eq!(WebConfig::load(&path).unwrap(), cfg);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_with_predicates_round_trips() {
    let mut cfg = preset("pappus").unwrap();
    cfg.domain = cfg.domain.clone().with(Predicate::HalfPlane { normal: Point::new(0.1, 0.7), offset: 1.0 / 3.0 });
    let back = WebConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn unknown_preset_and_bad_text_are_rejected() {
    assert!(matches!(preset("no-such-web"), Err(Error::InvalidConfig(_))));
    assert!(matches!(WebConfig::from_toml("web = 3"), Err(Error::Parse(_))));
}

#[test]
fn identical_configs_give_identical_webs() {
    for key in preset_keys() {
        assert_eq!(web(key), web(key));
    }
}

#[test]
fn pappus_red_leaf_is_line_to_vertex() {
    let w = pappus_web(Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0), Domain::disk(Point::new(0.4, 0.3), 0.1)).unwrap();
    let a = Point::new(0.45, 0.28);
    let expected = GenCircle::line_through(Point::ORIGIN, a).unwrap();
    assert!(leaf_distance(&w.curve(Color::Red, a).unwrap(), &expected) < 1e-14);
}

#[test]
fn collinear_pappus_is_invalid() {
    let d = Domain::disk(Point::new(0.5, 1.0), 0.2);
    let r = pappus_web(Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(3.0, 0.0), d);
    assert!(matches!(r, Err(Error::InvalidConfig(_))));
}

#[test]
fn shelekhov_f_equals_blaschke() {
    let f = web("shelekhov-f");
    let b = web("blaschke");
    assert_eq!((&f.red, &f.green, &f.blue), (&b.red, &b.green, &b.blue));
}

/// Coefficients of the product of linear forms `x_i a + y_i b + c`.
fn product_of_points(pts: [Point; 3]) -> [f64; 10] {
    // monomial exponents (i, j, k) of a^i b^j c^k in catalog order
    const ORDER: [(usize, usize, usize); 10] =
        [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1), (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3)];
    let mut poly = std::collections::HashMap::from([((0usize, 0usize, 0usize), 1.0)]);
    for p in pts {
        let mut next = std::collections::HashMap::new();
        for (&(i, j, k), &v) in &poly {
            *next.entry((i + 1, j, k)).or_insert(0.0) += v * p.x;
            *next.entry((i, j + 1, k)).or_insert(0.0) += v * p.y;
            *next.entry((i, j, k + 1)).or_insert(0.0) += v;
        }
        poly = next;
    }
    ORDER.map(|e| poly.get(&e).copied().unwrap_or(0.0))
}

#[test]
fn reducible_class_cubic_is_pappus() {
    let pts = [Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(0.0, 4.0)];
    let d = Domain::disk(Point::new(1.2, 1.0), 0.4);
    let gs = graf_sauer_web(product_of_points(pts), d.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let a = sample_in(&d, &mut rng);
        for c in Color::ALL {
            let leaf = gs.curve(c, a).unwrap();
            let hits = pts.iter().filter(|&&p| leaf.residual(p).abs() < 1e-10).count();
            assert_eq!(hits, 1, "{c:?} leaf at {a} passes through one vertex");
        }
    }
}

#[test]
fn deltoid_normals_at_origin() {
    let n = class_cubic_normals(&[-1.0, 0.0, 1.0, 3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0], Point::ORIGIN).unwrap();
    let expected = [std::f64::consts::PI / 6.0, std::f64::consts::FRAC_PI_2, 5.0 * std::f64::consts::PI / 6.0];
    for (x, y) in n.iter().zip(expected) {
        assert!((x - y).abs() < 1e-12, "{n:?}");
    }
}

#[test]
fn main_b_red_leaf_is_apollonius_circle() {
    let conic = Conic::new(ConicShape::Ellipse { a: SQRT2, b: 1.0 }, Point::ORIGIN, 0.0).unwrap();
    let w = main_b_web(conic, Domain::disk(Point::new(3.0, 0.5), 1.0)).unwrap();
    let leaf = w.curve(Color::Red, Point::new(3.0, 0.0)).unwrap();
    let GenCircle::Circle { center, radius } = leaf else { panic!("expected a circle") };
    assert!(center.dist(Point::new(5.0 / 3.0, 0.0)) < 1e-12);
    assert!((radius - 4.0 / 3.0).abs() < 1e-12);
}

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[test]
fn main_e_needs_the_right_eccentricity() {
    let cfg = preset("main-e-ecc072").unwrap();
    assert!(cfg.build().unwrap().experimental || cfg.bypass_validation);
    let checked = WebConfig { bypass_validation: false, ..cfg };
    assert!(matches!(checked.build(), Err(Error::WrongEccentricity(_))));
}

#[test]
fn main_e_excludes_the_covertex() {
    let w = web("main-e");
    assert!(w.curve(Color::Green, Point::new(0.0, 1.0)).is_err());
}

#[test]
fn main_c_excludes_angles_outside_the_interval() {
    let w = web("main-c");
    assert!(matches!(w.curve(Color::Blue, Point::new(0.5, 2.0)), Err(Error::AngleOutOfRange(_))));
}

#[test]
fn shelekhov_validation_rejects_mismatched_pencils() {
    use PencilSpec as S;
    let d = Domain::disk(Point::new(1.0, 0.5), 0.2);
    let (a, b, c) = (Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(0.8, 1.5));
    let wrong_g = [S::Elliptic { v1: a, v2: b }, S::Elliptic { v1: b, v2: c }, S::Hyperbolic { l1: c, l2: Point::new(0.1, 0.0) }];
    assert!(matches!(shelekhov_web(ShelekhovCase::G, &wrong_g, d.clone(), true), Err(Error::InvalidConfig(_))));
    let abc = GenCircle::through_three(a, b, c).unwrap();
    let tangent_j = [S::Elliptic { v1: a, v2: b }, S::Hyperbolic { l1: b, l2: c }, S::Parabolic { vertex: a, normal: abc.normal_at(a) }];
    assert!(matches!(shelekhov_web(ShelekhovCase::J, &tangent_j, d.clone(), true), Err(Error::InvalidConfig(_))));
    let not_bundle = [
        S::Elliptic { v1: Point::new(0.3, 0.1), v2: Point::new(3.0, 1.0) },
        S::Elliptic { v1: Point::new(-0.2, 0.35), v2: Point::new(-1.0, 1.5) },
        S::Elliptic { v1: Point::new(0.05, -0.4), v2: Point::new(0.2, -2.0) },
    ];
    assert!(matches!(shelekhov_web(ShelekhovCase::A, &not_bundle, d, true), Err(Error::InvalidConfig(_))));
}

#[test]
fn cubic_series_preset_has_three_real_roots() {
    let w = web("cubic-series");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let p = sample_in(&w.domain, &mut rng);
        let ts = cubic_series_params(p).unwrap();
        assert!(ts[0] < ts[1] && ts[1] < ts[2]);
    }
}

#[test]
fn catalog_lists_every_family() {
    let cat = catalog();
    assert_eq!(cat.iter().filter(|e| e.key.starts_with("main-")).count(), 5);
    for k in ["pappus", "brianchon", "blaschke"] {
        assert!(cat.iter().any(|e| e.key == k));
    }
    assert!(cat.iter().any(|e| e.key == "cubic-series" && e.experimental));
    for key in preset_keys() {
        let p = preset(key).unwrap();
        assert!(cat.iter().any(|e| e.key == p.params.key()), "{key}");
    }
}

#[test]
#[ignore]
fn search_domain() {
    let key = std::env::var("HEXWEB_KEY").unwrap_or("shelekhov-j".into());
    let base = preset(&key).unwrap();
    let mut best: Option<(f64, Point, f64)> = None;
    let left_only = key.starts_with("main-e");
    for r in [0.3, 0.15, 0.1] {
        for i in -60..=60 {
            for j in -60..=60 {
                let c = Point::new(i as f64 * 0.05, j as f64 * 0.05);
                if left_only && c.x + r > 0.0 {
                    continue;
                }
                let mut cfg = base.clone();
                cfg.domain = Domain::disk(c, r);
                let Ok(w) = cfg.build() else { continue };
                let d = w.check_domain(if left_only { 300 } else { 40 }, 3);
                if d.failures == 0 && d.max_leaf_error < 1e-9 && best.map_or(true, |b| d.min_angle * r.sqrt() > b.0 * b.2.sqrt()) {
                    best = Some((d.min_angle, c, r));
                }
            }
        }
    }
    println!("{key}: {best:?}");
}
