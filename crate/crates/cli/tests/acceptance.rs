//! End-to-end acceptance gate. Each test covers one criterion and
//! prints a single pass/fail line (visible with --nocapture).

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curvirank::rat::{binomial, rat_i64, Rat};
use curvirank::ternary::{
    claim_checks, condition_rows, conic_dichotomy, curve_through_scheme, h0_ideal,
    line_containment, span_bound_report, ConicVerdict, PlaneComponent, PlaneScheme,
};
use curvirank::{
    binary_rank, catalecticant_binary, decompose_via_curvilinear, fit_rational_curve,
    generate_instance, veronese_point, verify_decomposition, BinaryFormDivided, BinaryPoly,
    CurvilinearScheme, Error, Form, Mat, RationalCurveParam, SchemeComponent,
};

fn report(n: usize, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n} ({name}): {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn bp(degree: usize, coeffs: &[i64]) -> BinaryPoly {
    BinaryPoly::new(degree, coeffs.iter().map(|&c| rat_i64(c)).collect()).unwrap()
}

#[test]
fn criterion_1_bound_oracle() {
    let started = Instant::now();
    let trials = 200usize;
    let mut combos = Vec::new();
    for n in [2usize, 3] {
        for d in 3..=6usize {
            for k in 2..=4usize {
                combos.push((n, d, k));
            }
        }
    }
    let mut max_len = 0usize;
    let mut slowest_ms = 0u128;
    for i in 0..trials {
        let (n, d, k) = combos[i % combos.len()];
        let seed = 1000 + i as u64;
        let t0 = Instant::now();
        let (p, z) = generate_instance(n, d, k, seed).unwrap();
        let (dec, rep) = decompose_via_curvilinear(&p, &z, 256, -128, seed)
            .unwrap_or_else(|e| panic!("instance {i} (n={n} d={d} k={k} seed={seed}): {e}"));
        let bound = (rep.k - 1) * d + 2 - rep.k;
        assert!(
            rep.length <= bound,
            "instance {i}: length {} > bound {bound}",
            rep.length
        );
        let tol = if dec.exact { None } else { Some(-128) };
        let (ok, _) = verify_decomposition(&p, &dec, tol).unwrap();
        assert!(ok, "instance {i}: residual above tolerance");
        max_len = max_len.max(rep.length);
        let ms = t0.elapsed().as_millis();
        slowest_ms = slowest_ms.max(ms);
        assert!(ms < 2000, "instance {i} took {ms} ms");
    }
    let total = started.elapsed();
    report(
        1,
        "bound oracle",
        total.as_secs() < 300,
        &format!(
            "{trials}/{trials} instances within bound and tolerance; max length {max_len}, \
             slowest {slowest_ms} ms, total {:.1} s",
            total.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_sharpness() {
    let mut lens = Vec::new();
    for d in 3..=6usize {
        let mut e = vec![0u32; 3];
        e[0] = (d - 1) as u32;
        e[1] = 1;
        let p = Form::monomial(3, e);
        let line =
            RationalCurveParam::new(vec![bp(1, &[1, 0]), bp(1, &[0, 1]), bp(1, &[0, 0])]).unwrap();
        let z = CurvilinearScheme::new(vec![
            SchemeComponent::new(line, rat_i64(0), 2).unwrap(),
        ])
        .unwrap();
        let (dec, rep) = decompose_via_curvilinear(&p, &z, 256, -128, 5).unwrap();
        assert_eq!(rep.k, 2, "d = {d}");
        assert_eq!(dec.len(), d, "d = {d}: expected exactly d terms");
        let tol = if dec.exact { None } else { Some(-128) };
        let (ok, _) = verify_decomposition(&p, &dec, tol).unwrap();
        assert!(ok);
        lens.push(dec.len());
    }
    report(
        2,
        "sharpness at degree-2 schemes",
        lens == vec![3, 4, 5, 6],
        &format!("term counts {lens:?} for d = 3..6"),
    );
}

#[test]
fn criterion_3_dichotomy() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut count = 0usize;
    for d in 3..=10usize {
        for _ in 0..100 {
            let a: Vec<Rat> = (0..=d).map(|_| rat_i64(rng.gen_range(-6..=6))).collect();
            if a.iter().all(Rat::is_zero) {
                continue;
            }
            let f = BinaryFormDivided::new(a).unwrap();
            let cert = binary_rank(&f, 7).unwrap();
            assert!(
                cert.rank == cert.border_rank || cert.rank == d - cert.border_rank + 2,
                "degree {d}: rank {} outside the dichotomy (k0 = {})",
                cert.rank,
                cert.border_rank
            );
            // exact apolarity of the certificate
            let cat = catalecticant_binary(&f, cert.rank).unwrap();
            let image = cat.mul_vec(cert.apolar.coeffs()).unwrap();
            assert!(image.iter().all(Rat::is_zero), "degree {d}: apolar residual");
            count += 1;
        }
    }
    // anchors
    let pow = BinaryFormDivided::new(
        (0..=7).map(|i| rat_i64(if i == 0 { 1 } else { 0 })).collect(),
    )
    .unwrap();
    assert_eq!(binary_rank(&pow, 1).unwrap().rank, 1);
    let near = BinaryFormDivided::new(
        (0..=7).map(|i| rat_i64(if i == 1 { 1 } else { 0 })).collect(),
    )
    .unwrap();
    assert_eq!(binary_rank(&near, 1).unwrap().rank, 7);
    let mid = BinaryFormDivided::new(
        (0..=4).map(|i| rat_i64(if i == 2 { 1 } else { 0 })).collect(),
    )
    .unwrap();
    assert_eq!(binary_rank(&mid, 1).unwrap().rank, 3);
    report(
        3,
        "Sylvester dichotomy",
        true,
        &format!("{count} random forms over degrees 3..10 plus the three anchors"),
    );
}

#[test]
fn criterion_4_known_rank_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut pass = 0usize;
    for _ in 0..100 {
        let d = rng.gen_range(3..=9usize);
        let r = rng.gen_range(1..=(d + 1) / 2);
        let mut ts: Vec<i64> = Vec::new();
        while ts.len() < r {
            let t = rng.gen_range(-8..=8);
            if !ts.contains(&t) {
                ts.push(t);
            }
        }
        let mut a = vec![Rat::zero(); d + 1];
        for &t in &ts {
            let lam = rat_i64(rng.gen_range(1..=5));
            let pt = veronese_point(&[rat_i64(1), rat_i64(t)], d).unwrap();
            for (acc, x) in a.iter_mut().zip(&pt) {
                *acc += &lam * x;
            }
        }
        let f = BinaryFormDivided::new(a).unwrap();
        let cert = binary_rank(&f, 23).unwrap();
        assert_eq!(cert.rank, r, "degree {d}: expected rank {r}, got {}", cert.rank);
        pass += 1;
    }
    report(4, "known-rank roundtrip", pass == 100, &format!("{pass}/100 exact recoveries"));
}

fn random_curve(n: usize, rng: &mut ChaCha8Rng) -> RationalCurveParam {
    loop {
        let delta = rng.gen_range(1..=3usize);
        let coords: Vec<BinaryPoly> = (0..=n)
            .map(|_| {
                let cs: Vec<i64> = (0..=delta).map(|_| rng.gen_range(-4..=4)).collect();
                bp(delta, &cs)
            })
            .collect();
        if let Ok(c) = RationalCurveParam::new(coords) {
            return c;
        }
    }
}

fn random_scheme(n: usize, k: usize, rng: &mut ChaCha8Rng) -> CurvilinearScheme {
    'outer: loop {
        let mut comps = Vec::new();
        let mut total = 0usize;
        let mut guard = 0;
        while total < k {
            guard += 1;
            if guard > 50 {
                continue 'outer;
            }
            let e = rng.gen_range(1..=3usize).min(k - total);
            let curve = random_curve(n, rng);
            let t = rat_i64(rng.gen_range(-5..=5));
            if let Ok(c) = SchemeComponent::new(curve, t, e) {
                comps.push(c);
                total += e;
            }
        }
        if let Ok(z) = CurvilinearScheme::new(comps) {
            return z;
        }
    }
}

#[test]
fn criterion_5_fit_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut pass = 0usize;
    for _ in 0..100 {
        let n = rng.gen_range(2..=3usize);
        let k = rng.gen_range(2..=5usize);
        let z = random_scheme(n, k, &mut rng);
        let fit = fit_rational_curve(&z).unwrap();
        assert!(fit.jets_match, "jets differ for a degree-{k} scheme in P^{n}");
        assert!(fit.curve.degree() <= k - 1, "degree {} > k-1", fit.curve.degree());
        pass += 1;
    }
    report(5, "curve-fit exactness", pass == 100, &format!("{pass}/100 exact jet matches"));
}

fn random_plane_point(rng: &mut ChaCha8Rng) -> PlaneComponent {
    loop {
        let p: Vec<i64> = (0..3).map(|_| rng.gen_range(-6..=6)).collect();
        if p.iter().all(|&x| x == 0) {
            continue;
        }
        let dir: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
        let coords: Vec<BinaryPoly> = (0..3).map(|i| bp(1, &[p[i], dir[i]])).collect();
        let Ok(curve) = RationalCurveParam::new(coords) else { continue };
        if let Ok(c) = SchemeComponent::new(curve, rat_i64(0), 1) {
            return PlaneComponent::Jet(c);
        }
    }
}

fn random_plane_scheme(k: usize, rng: &mut ChaCha8Rng) -> PlaneScheme {
    'outer: loop {
        let mut comps: Vec<PlaneComponent> = Vec::new();
        let mut total = 0usize;
        // sometimes lead with a jet of order 2 or 3 on a random conic
        if rng.gen_bool(0.5) {
            let e = rng.gen_range(2..=3usize).min(k - 1);
            let curve = random_curve(2, rng);
            let t = rat_i64(rng.gen_range(-4..=4));
            if let Ok(c) = SchemeComponent::new(curve, t, e) {
                comps.push(PlaneComponent::Jet(c));
                total += e;
            }
        }
        while total < k {
            comps.push(random_plane_point(rng));
            total += 1;
        }
        let Ok(z) = PlaneScheme::new(comps) else { continue 'outer };
        if line_containment(&z).unwrap().is_some() {
            continue 'outer;
        }
        return z;
    }
}

#[test]
fn criterion_6_integral_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut claim1_total = 0usize;
    for i in 0..50usize {
        let k = 4 + (i % 2);
        let z = random_plane_scheme(k, &mut rng);
        let rep = curve_through_scheme(&z, 100 + i as u64, 128)
            .unwrap_or_else(|e| panic!("scheme {i} (degree {k}): {e}"));
        assert_eq!(rep.degree, k - 1);
        assert!(rep.rational_irreducible && rep.squarefree, "scheme {i}");
        // exact containment
        let rows = Mat::from_rows(condition_rows(&z, k - 1));
        let image = rows.mul_vec(&rep.curve.raw_vector()).unwrap();
        assert!(image.iter().all(Rat::is_zero), "scheme {i}: containment residual");
        // Claim 1 drop-by-one on 50 sampled points
        let claims = claim_checks(&z, 50, 200 + i as u64).unwrap();
        assert_eq!(claims.claim1_pass, 50, "scheme {i}: {:?}", claims.failures);
        claim1_total += claims.claim1_pass;
    }
    // collinear inputs of both degrees
    for k in [4usize, 5] {
        let line = RationalCurveParam::new(vec![
            bp(1, &[1, 1]),
            bp(1, &[2, -1]),
            bp(1, &[0, 3]),
        ])
        .unwrap();
        let comps: Vec<PlaneComponent> = (0..k)
            .map(|i| {
                PlaneComponent::Jet(
                    SchemeComponent::new(line.clone(), rat_i64(i as i64), 1).unwrap(),
                )
            })
            .collect();
        let z = PlaneScheme::new(comps).unwrap();
        assert!(matches!(
            curve_through_scheme(&z, 1, 32),
            Err(Error::ContainedInLine)
        ));
    }
    report(
        6,
        "integral curves through plane schemes",
        claim1_total == 2500,
        &format!("50 integral curves verified, {claim1_total}/2500 drop-by-one checks, collinear rejected"),
    );
}

#[test]
fn criterion_7_conic_dichotomy() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut smooth = 0usize;
    let mut double = 0usize;
    let mut samples = 0usize;
    for i in 0..30usize {
        let z = if i % 3 == 0 {
            // fat point 2P at a random rational point
            loop {
                let p: Vec<Rat> = (0..3).map(|_| rat_i64(rng.gen_range(-5..=5))).collect();
                if p.iter().all(Rat::is_zero) {
                    continue;
                }
                break PlaneScheme::new(vec![PlaneComponent::FatPoint { point: p }]).unwrap();
            }
        } else {
            random_plane_scheme(3, &mut rng)
        };
        let rep = h0_ideal(&z, 2).unwrap();
        assert_eq!(rep.h0, 3, "sample {i}: h0(I_Z(2)) = {}", rep.h0);
        samples += 1;
        let is_fat = matches!(z.components(), [PlaneComponent::FatPoint { .. }]);
        match conic_dichotomy(&z).unwrap() {
            ConicVerdict::Smooth(_) => {
                assert!(!is_fat, "sample {i}: double point admits no smooth conic");
                smooth += 1;
            }
            ConicVerdict::NoSmoothConic { .. } => {
                assert!(is_fat, "sample {i}: curvilinear scheme must give a smooth conic");
                double += 1;
            }
        }
    }
    report(
        7,
        "smooth conic dichotomy",
        smooth + double == samples && double == 10,
        &format!("{samples} samples with h0 = 3: {smooth} smooth conics, {double} double points"),
    );
}

#[test]
fn criterion_8_span_bound_table() {
    let mut rows = 0usize;
    for k in 4..=8usize {
        for d in k..=8usize {
            let rep = span_bound_report(d, k).unwrap();
            assert!(rep.ok, "(d, k) = ({d}, {k}): span_dim {} > bound {}", rep.span_dim, rep.bound);
            assert!(rep.crosscheck_ok, "(d, k) = ({d}, {k}): formula disagrees with the curve");
            rows += 1;
        }
    }
    report(8, "span-dimension bound table", rows == 15, &format!("{rows} (d, k) rows checked"));
}

#[test]
fn criterion_9_reference_values() {
    let run = |n: usize, d: usize| -> serde_json::Value {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_curvirank"))
            .args(["bounds", "--n", &n.to_string(), "--d", &d.to_string()])
            .output()
            .unwrap();
        assert!(out.status.success());
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let v = run(2, 3);
    assert_eq!(v["lt_bound"], 8);
    assert_eq!(v["known_max_rank"], 5);
    let v = run(2, 4);
    assert_eq!(v["lt_bound"], 13);
    assert_eq!(v["known_max_rank"], 7);
    let mut rows = 2usize;
    for n in 1..=4usize {
        for d in 2..=6usize {
            let v = run(n, d);
            let expected: u64 = binomial((n + d) as u64, d as u64)
                .to_string()
                .parse::<u64>()
                .unwrap()
                - n as u64;
            assert_eq!(v["lt_bound"], expected, "(n, d) = ({n}, {d})");
            rows += 1;
        }
    }
    report(9, "reference values", true, &format!("{rows} table rows match the closed formulas"));
}
