//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p kleinian-cli --test acceptance -- --nocapture`
//! to see the lines for passing criteria as well.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use kleinian_core::moebius::{MapClass, MoebiusMap};
use kleinian_core::pinch::GeneratorRep;
use kleinian_core::teich::{cusp_shape, short_slopes, teich_distance, FlatTorus, TorusShape};
use kleinian_core::{
    augmentation_meridian, belt_sum_chain, build_rep, dual_circle, enumerate_pinched,
    isometric_sphere, max_pinched_example, verify_structure, ExtendedCircle, RectCusp,
    SlopeLength,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gamma1() -> MoebiusMap {
    MoebiusMap::from_real(2.0, -1.0, 1.0, 0.0).unwrap()
}

/// Criterion 1: the isometric spheres of gamma_1 and its inverse sit at
/// centers 0 and 2 with radius 1, exact to 1e-12, in under a millisecond.
#[test]
fn criterion_01_isometric_sphere_values() {
    let start = Instant::now();
    let g = gamma1();
    let s = isometric_sphere(&g).unwrap();
    let s_inv = isometric_sphere(&g.inverse()).unwrap();
    let elapsed = start.elapsed();

    assert!(s.center().norm() <= 1e-12);
    assert!((s.radius() - 1.0).abs() <= 1e-12);
    assert!((s_inv.center() - c(2.0, 0.0)).norm() <= 1e-12);
    assert!((s_inv.radius() - 1.0).abs() <= 1e-12);
    assert!(elapsed.as_micros() < 1000, "took {elapsed:?}");
    println!("criterion 01 (isometric sphere values, < 1 ms): PASS");
}

/// Criterion 2: conjugating by the translation A shifts the sphere by 5,
/// and random translation covariance holds over 1000 trials at 1e-9.
#[test]
fn criterion_02_conjugation_covariance() {
    let a = MoebiusMap::translation(c(5.0, 0.0));
    let conj = a.compose(&gamma1()).compose(&a.inverse());
    let shifted = isometric_sphere(&conj).unwrap();
    let base = isometric_sphere(&gamma1()).unwrap();
    assert!((shifted.center() - (base.center() + c(5.0, 0.0))).norm() <= 1e-12);
    assert!((shifted.radius() - base.radius()).abs() <= 1e-12);

    let mut rng = StdRng::seed_from_u64(202);
    let mut trials = 0;
    while trials < 1000 {
        let entries: Vec<Complex64> = (0..4)
            .map(|_| c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
            .collect();
        let Ok(m) = MoebiusMap::new(entries[0], entries[1], entries[2], entries[3]) else {
            continue;
        };
        if m.c().norm() < 1e-3 {
            continue;
        }
        let t = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let at = MoebiusMap::translation(t);
        let moved = isometric_sphere(&at.compose(&m).compose(&at.inverse())).unwrap();
        let s = isometric_sphere(&m).unwrap();
        assert!((moved.center() - (s.center() + t)).norm() <= 1e-9 * (1.0 + t.norm()));
        assert!((moved.radius() - s.radius()).abs() <= 1e-9);
        trials += 1;
    }
    println!("criterion 02 (translation covariance, 1000 trials at 1e-9): PASS");
}

/// Criterion 3: the verifier accepts rectangular lattices just above the
/// |a| = 4 threshold and rejects below it, with reproducible margins, in
/// under a second.
#[test]
fn criterion_03_lemma_hypothesis_sweep() {
    let start = Instant::now();
    for a in [4.1, 5.0, 8.0, 20.0] {
        let rep = build_rep(1, c(a, 0.0), c(0.0, a)).unwrap();
        assert!(verify_structure(&rep, 1e-9).is_verified(), "a = {a}");
    }
    for a in [2.0, 3.0, 3.9] {
        let rep = build_rep(1, c(a, 0.0), c(0.0, a)).unwrap();
        assert!(!verify_structure(&rep, 1e-9).is_verified(), "a = {a}");
    }
    // Margins reproduce to 1e-9 across repeated runs.
    let rep = build_rep(1, c(4.1, 0.0), c(0.0, 4.1)).unwrap();
    let first = verify_structure(&rep, 1e-9);
    let second = verify_structure(&rep, 1e-9);
    assert_eq!(first.margins.len(), second.margins.len());
    for (x, y) in first.margins.iter().zip(second.margins.iter()) {
        assert_eq!(x.pair, y.pair);
        assert!((x.margin - y.margin).abs() <= 1e-9);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_millis() < 1000, "took {elapsed:?}");
    println!("criterion 03 (hypothesis sweep around |a| = 4, < 1 s): PASS");
}

/// Criterion 4: the built-in pinched example has cusp shape
/// -1/4 + i sqrt(3)/4 exactly, and parabolic generators.
#[test]
fn criterion_04_example_cusp_shape() {
    let shape = cusp_shape(c(4.0, 0.0), c(-1.0, 3.0f64.sqrt())).unwrap();
    assert!((shape.tau() - c(-0.25, 3.0f64.sqrt() / 4.0)).norm() <= 1e-12);

    let rep = max_pinched_example();
    assert_eq!(rep.alpha().classify(), MapClass::Parabolic);
    assert_eq!(rep.beta().classify(), MapClass::Parabolic);
    assert_eq!(rep.gamma(1).unwrap().classify(), MapClass::Parabolic);
    println!("criterion 04 (example cusp shape -1/4 + i sqrt(3)/4): PASS");
}

/// Independent 2x2 complex multiplication on raw pairs, no library types.
fn raw_mul(x: [[(f64, f64); 2]; 2], y: [[(f64, f64); 2]; 2]) -> [[(f64, f64); 2]; 2] {
    let mul = |p: (f64, f64), q: (f64, f64)| (p.0 * q.0 - p.1 * q.1, p.0 * q.1 + p.1 * q.0);
    let add = |p: (f64, f64), q: (f64, f64)| (p.0 + q.0, p.1 + q.1);
    let mut out = [[(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = add(mul(x[i][0], y[0][j]), mul(x[i][1], y[1][j]));
        }
    }
    out
}

/// Criterion 5: enumeration on the pinched example finds gamma_1 (trace 2)
/// and alpha gamma_1^{-1} (trace -2), the latter cross-checked against a
/// direct 2x2 multiplication oracle.
#[test]
fn criterion_05_pinched_word_detection() {
    let rep: GeneratorRep = (&max_pinched_example()).into();
    let found = enumerate_pinched(&rep, 2, 1e-9).unwrap();
    let get = |w: &str| found.iter().find(|r| r.word.to_string() == w);

    let g1 = get("g1").expect("gamma_1 detected");
    assert!((g1.trace - c(2.0, 0.0)).norm() <= 1e-12);

    let a_g1 = get("a G1").expect("alpha gamma_1^{-1} detected");
    assert!((a_g1.trace - c(-2.0, 0.0)).norm() <= 1e-12);

    // Oracle: alpha * gamma_1^{-1} multiplied out by hand.
    let alpha = [[(1.0, 0.0), (4.0, 0.0)], [(0.0, 0.0), (1.0, 0.0)]];
    let gamma_inv = [[(0.0, 0.0), (1.0, 0.0)], [(-1.0, 0.0), (2.0, 0.0)]];
    let product = raw_mul(alpha, gamma_inv);
    let trace = (product[0][0].0 + product[1][1].0, product[0][0].1 + product[1][1].1);
    assert_eq!(trace, (-2.0, 0.0));
    assert!((a_g1.trace - c(trace.0, trace.1)).norm() <= 1e-12);
    println!("criterion 05 (pinched words g1 and a G1 with oracle trace): PASS");
}

/// Criterion 6: d(i, 2i) = ln 2 to 1e-12 and the triangle inequality holds
/// on 10,000 random triples with 1e-9 slack.
#[test]
fn criterion_06_teichmueller_metric() {
    let i = TorusShape::new(c(0.0, 1.0)).unwrap();
    let two_i = TorusShape::new(c(0.0, 2.0)).unwrap();
    assert!((teich_distance(&i, &two_i) - 2.0f64.ln()).abs() <= 1e-12);

    let mut rng = StdRng::seed_from_u64(606);
    for _ in 0..10_000 {
        let mut sample = || {
            TorusShape::new(c(rng.gen_range(-8.0..8.0), rng.gen_range(0.02..8.0))).unwrap()
        };
        let x = sample();
        let y = sample();
        let z = sample();
        assert!(
            teich_distance(&x, &z) <= teich_distance(&x, &y) + teich_distance(&y, &z) + 1e-9
        );
    }
    println!("criterion 06 (d(i,2i) = ln 2; triangle inequality x 10000): PASS");
}

fn lagrange_reduce(mut u: Complex64, mut v: Complex64) -> (Complex64, Complex64) {
    loop {
        if u.norm() > v.norm() {
            std::mem::swap(&mut u, &mut v);
        }
        let mu = ((v * u.conj()).re / u.norm_sqr()).round();
        if mu == 0.0 {
            return (u, v);
        }
        v -= mu * u;
    }
}

fn oracle_census(t: &FlatTorus, max_len: f64) -> Vec<SlopeLength> {
    fn gcd(mut x: u64, mut y: u64) -> u64 {
        while y != 0 {
            let r = x % y;
            x = y;
            y = r;
        }
        x
    }
    let shortest = t.u().norm().min(t.v().norm());
    let window = (1.5 * max_len / shortest).ceil() as i64 + 1;
    let mut out = Vec::new();
    for p in -window..=window {
        for q in -window..=window {
            let keep = q > 0 || (q == 0 && p == 1);
            if !keep || gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
                continue;
            }
            let length = (p as f64 * t.u() + q as f64 * t.v()).norm();
            if length <= max_len {
                out.push(SlopeLength { p, q, length });
            }
        }
    }
    out.sort_by(|x, y| {
        x.length
            .total_cmp(&y.length)
            .then(x.q.cmp(&y.q))
            .then(x.p.cmp(&y.p))
    });
    out
}

/// Criterion 7: long rectangular tori have exactly one short slope, and the
/// census agrees exactly with a double-loop brute force on 100 random tori.
#[test]
fn criterion_07_slope_census() {
    for r in [7.5, 10.0, 100.0] {
        let torus = FlatTorus::new(c(1.0, 0.0), c(0.0, r)).unwrap();
        let census = short_slopes(&torus, 6.0);
        assert_eq!(census.len(), 1, "R = {r}");
        assert_eq!((census[0].p, census[0].q), (1, 0));
    }

    let mut rng = StdRng::seed_from_u64(707);
    let mut checked = 0;
    while checked < 100 {
        let raw_u = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let raw_v = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let (u, v) = lagrange_reduce(raw_u, raw_v);
        let Ok(torus) = FlatTorus::new(u, v) else { continue };
        if torus.area() < 0.05 || u.norm() < 0.1 {
            continue;
        }
        let max_len = rng.gen_range(0.5..6.0);
        let fast = short_slopes(&torus, max_len);
        let slow = oracle_census(&torus, max_len);
        assert_eq!(fast.len(), slow.len());
        for (x, y) in fast.iter().zip(slow.iter()) {
            assert_eq!((x.p, x.q), (y.p, y.q));
            assert_eq!(x.length.to_bits(), y.length.to_bits());
        }
        checked += 1;
    }
    println!("criterion 07 (one short slope on 1xR; census vs brute force x 100): PASS");
}

/// Criterion 8: the dual of three tangent unit circles on an equilateral
/// triangle of side 2 is centered at (1, sqrt(3)/3) with radius sqrt(3)/3,
/// against an independent circumcircle oracle, and touches all inputs at
/// the pairwise tangency points.
#[test]
fn criterion_08_dual_circle() {
    let centers = [(0.0, 0.0), (2.0, 0.0), (1.0, 3.0f64.sqrt())];
    let inputs: Vec<ExtendedCircle> = centers
        .iter()
        .map(|&(x, y)| ExtendedCircle::circle(c(x, y), 1.0))
        .collect();
    let dual = dual_circle(&inputs[0], &inputs[1], &inputs[2], 1e-9).unwrap();
    let ExtendedCircle::Circle { center, radius } = dual else {
        panic!("expected circle");
    };

    // Oracle: midpoints of the center segments are the tangency points;
    // circumcircle solved from scratch on raw coordinates.
    let midpoints = [
        ((centers[0].0 + centers[1].0) / 2.0, (centers[0].1 + centers[1].1) / 2.0),
        ((centers[0].0 + centers[2].0) / 2.0, (centers[0].1 + centers[2].1) / 2.0),
        ((centers[1].0 + centers[2].0) / 2.0, (centers[1].1 + centers[2].1) / 2.0),
    ];
    let (p1, p2, p3) = (midpoints[0], midpoints[1], midpoints[2]);
    let d = 2.0 * ((p2.0 - p1.0) * (p3.1 - p1.1) - (p2.1 - p1.1) * (p3.0 - p1.0));
    let n1 = p1.0 * p1.0 + p1.1 * p1.1;
    let n2 = p2.0 * p2.0 + p2.1 * p2.1;
    let n3 = p3.0 * p3.0 + p3.1 * p3.1;
    let ox = (n1 * (p2.1 - p3.1) + n2 * (p3.1 - p1.1) + n3 * (p1.1 - p2.1)) / d;
    let oy = (n1 * (p3.0 - p2.0) + n2 * (p1.0 - p3.0) + n3 * (p2.0 - p1.0)) / d;
    let or = ((p1.0 - ox).powi(2) + (p1.1 - oy).powi(2)).sqrt();

    assert!((center - c(ox, oy)).norm() <= 1e-9);
    assert!((radius - or).abs() <= 1e-9);
    assert!((center - c(1.0, 3.0f64.sqrt() / 3.0)).norm() <= 1e-9);
    assert!((radius - 3.0f64.sqrt() / 3.0).abs() <= 1e-9);

    // Contact with every input: each tangency point lies on the dual and on
    // the two circles of its pair.
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for (k, &(px, py)) in midpoints.iter().enumerate() {
        let p = c(px, py);
        assert!(((p - center).norm() - radius).abs() <= 1e-8, "midpoint {k}");
        let (i, j) = pairs[k];
        for idx in [i, j] {
            let dist = (p - c(centers[idx].0, centers[idx].1)).norm();
            assert!((dist - 1.0).abs() <= 1e-9, "midpoint {k} off circle {idx}");
        }
    }
    println!("criterion 08 (dual circle vs circumcircle oracle, contact): PASS");
}

/// Criterion 9: belted sums fix the 2:1 rectangle class exactly through 50
/// iterations, and the augmentation meridian grows by exactly m2 per stage.
#[test]
fn criterion_09_belted_sum_model() {
    let two_chain = RectCusp::chain_model();
    let mut cusp = RectCusp::chain_model();
    for step in 0..50 {
        cusp = belt_sum_chain(&cusp, &two_chain).unwrap();
        assert_eq!(cusp.width(), 4.0, "step {step}");
        assert_eq!(cusp.height(), 2.0, "step {step}");
        assert_eq!(cusp.width() / cusp.height(), 2.0, "step {step}");
    }

    let (m3, m2) = (1.5, 0.5);
    for n in 1..100 {
        let diff = augmentation_meridian(n + 1, m3, m2) - augmentation_meridian(n, m3, m2);
        assert_eq!(diff, m2, "n = {n}");
    }
    println!("criterion 09 (belted-sum 2:1 fixed point; affine meridian): PASS");
}

/// Criterion 10: rendering the pinched example is byte-identical across
/// runs and matches the committed golden files, with 4 circles at
/// max_len 1 and 8 with duals.
#[test]
fn criterion_10_render_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let render = |dual: bool, name: &str| {
        let path = dir.path().join(name);
        let mut args = vec![
            "render".to_string(),
            "--example".to_string(),
            "max-pinched".to_string(),
            "--max-len".to_string(),
            "1".to_string(),
        ];
        if dual {
            args.push("--dual".to_string());
        }
        args.push("-o".to_string());
        args.push(path.to_str().unwrap().to_string());
        let out = Command::new(env!("CARGO_BIN_EXE_kleinian"))
            .args(&args)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(&path).unwrap()
    };

    let plain_1 = render(false, "fig_a.svg");
    let plain_2 = render(false, "fig_b.svg");
    assert_eq!(plain_1, plain_2, "plain renders differ between runs");
    let golden_plain = std::fs::read(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/max_pinched_len1.svg"
    ))
    .unwrap();
    assert_eq!(plain_1, golden_plain, "plain render differs from golden file");
    let text = String::from_utf8(plain_1).unwrap();
    assert_eq!(text.matches("<circle").count(), 4);

    let dual_1 = render(true, "fig_c.svg");
    let dual_2 = render(true, "fig_d.svg");
    assert_eq!(dual_1, dual_2, "dual renders differ between runs");
    let golden_dual = std::fs::read(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/max_pinched_len1_dual.svg"
    ))
    .unwrap();
    assert_eq!(dual_1, golden_dual, "dual render differs from golden file");
    let text = String::from_utf8(dual_1).unwrap();
    assert_eq!(text.matches("<circle").count(), 8);

    println!("criterion 10 (byte-identical render, 4 and 8 circles): PASS");
}
