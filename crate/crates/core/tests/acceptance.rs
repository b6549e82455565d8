//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so the verdict lines always reach the terminal. The
//! process fails only on unexpected outcomes; a criterion known to be
//! unattainable is printed as FAIL together with the reason and does not abort
//! the run, while any change in that known outcome does.

mod oracle;

use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::Zero;

use oracle::{colored_partitions, from_lib, q, qr, to_big, to_lib, Model, St};
use string_ddf::cli::{cmd_observable, RunConfig};
use string_ddf::ddf::{
    calibrate_normalization, constraint_report, ddf_suite, default_kappa_set, mass_project, DdfOperators, Letter,
    LITERAL_COMMUTATOR,
};
use string_ddf::fiber::{central_term, mass_square_apply, virasoro_apply, virasoro_scan, Momentum};
use string_ddf::field::{
    commutator_kernel, field_equation_check, gupta_bleuler_check, normalized, one_particle_product, project_pi,
    propagator_pairing, translated_kernel, MultiParticleVector, OneParticlePool, QuadratureSpec,
};
use string_ddf::fock::{level_basis, level_dimensions, FockVector, ModelParams, Monomial, Osc};
use string_ddf::poly::Poly;
use string_ddf::profile::BumpProfile;
use string_ddf::scalar::Coefficient;
use string_ddf::spectrum::{
    ddf_span_check, find_onshell_momentum, level_shell, noghost_scan, transverse_words, LevelSpectrum,
};
use string_ddf::testfn::{make_testfunction, realify, verify_support, TestFunction};
use string_ddf::Rational;

struct Outcome {
    pass: bool,
    summary: String,
    /// Reason the criterion cannot hold as stated; the run accepts a FAIL here.
    known_red: Option<String>,
}

fn ok(pass: bool, summary: String) -> Outcome {
    Outcome { pass, summary, known_red: None }
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn momentum(d: usize, entries: &[(usize, Rational)]) -> Momentum<Rational> {
    let mut p = vec![Rational::zero(); d];
    for (i, v) in entries {
        p[*i] = v.clone();
    }
    Momentum(p)
}

fn oracle_model(params: &ModelParams, p: &Momentum<Rational>) -> Model {
    Model { d: params.d, b: to_big(&params.b), p: p.0.iter().map(to_big).collect() }
}

fn probe_momenta(d: usize) -> Vec<Momentum<Rational>> {
    let l = d - 1;
    vec![
        momentum(d, &[(0, r(3, 1)), (1, r(1, 2)), (2, r(-1, 1)), (d - 2, r(2, 3)), (l, r(1, 1))]),
        momentum(d, &[(0, r(5, 2)), (2, r(1, 3)), (d - 2, r(-1, 1)), (l, r(-1, 2))]),
        momentum(d, &[(0, r(1, 1)), (1, r(2, 1)), (2, r(1, 1)), (d - 2, r(1, 1)), (l, r(1, 1))]),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rows_checked = 0;
    let mut failures = Vec::new();
    let mut central_ok = true;
    let mut oracle_ok = true;
    for d in [4usize, 26] {
        for b in [0i64, 1] {
            let params = ModelParams::new(d, Rational::from_int(b)).unwrap();
            let momenta: Vec<Momentum<Rational>> = probe_momenta(d).into_iter().take(2).collect();
            let rows = virasoro_scan(&params, &momenta, 3, 3);
            rows_checked += rows.len();
            failures.extend(rows.iter().filter(|row| !row.pass).map(|row| (d, b, row.m, row.n, row.level)));
            // central coefficient: <Omega| [L_m, L_-m] |Omega> - 2m <L_0> against d m (m^2 - 1)/12 + 2 b m
            for p in &momenta {
                let model = oracle_model(&params, p);
                for m in 1..=3i64 {
                    let expected = q(d as i64) * q(m * (m * m - 1)) / q(12) + q(2 * b * m);
                    let vac = FockVector::<Rational>::vacuum();
                    let lib = virasoro_apply(m, p, &virasoro_apply(-m, p, &vac, &params), &params)
                        .sub(&virasoro_apply(-m, p, &virasoro_apply(m, p, &vac, &params), &params))
                        .sub(&virasoro_apply(0, p, &vac, &params).scale(&Rational::from_int(2 * m)));
                    let lib_c = from_lib(&lib).0.get(&Vec::new()).cloned().unwrap_or_else(Zero::zero);
                    let o = St::vacuum();
                    let mut w = model.virasoro(m, &model.virasoro(-m, &o));
                    w.axpy(&model.virasoro(-m, &model.virasoro(m, &o)), &q(-1));
                    w.axpy(&model.virasoro(0, &o), &q(-2 * m));
                    let orc_c = w.0.get(&Vec::new()).cloned().unwrap_or_else(Zero::zero);
                    central_ok &= lib_c == expected && orc_c == expected && to_big(&central_term(m, &params)) == expected;
                }
            }
            // generator-by-generator agreement with the normal-ordering oracle
            let p = &momenta[0];
            let model = oracle_model(&params, p);
            let top = if d == 4 { 3 } else { 2 };
            for level in 0..=top {
                for mono in level_basis(d, level) {
                    let v = FockVector::<Rational>::basis(mono);
                    let ov = from_lib(&v);
                    for m in -3..=3i64 {
                        oracle_ok &= from_lib(&virasoro_apply(m, p, &v, &params)) == model.virasoro(m, &ov);
                    }
                }
            }
            // hermiticity L_m^dagger = L_{-m} in the indefinite form, level 2 probes of d = 4
            if d == 4 {
                let basis: Vec<St> =
                    level_basis(d, 2).into_iter().map(|m| from_lib(&FockVector::<Rational>::basis(m))).collect();
                let lower: Vec<St> =
                    level_basis(d, 1).into_iter().map(|m| from_lib(&FockVector::<Rational>::basis(m))).collect();
                for u in &lower {
                    for v in &basis {
                        oracle_ok &= model.inner(&model.virasoro(-1, u), v) == model.inner(u, &model.virasoro(1, v));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && central_ok && oracle_ok && elapsed < Duration::from_secs(120);
    ok(
        pass,
        format!(
            "Virasoro algebra d in {{4,26}}, b in {{0,1}}, |m|,|n| <= 3, level <= 3: {} bracket rows, {} nonzero; \
             central term {}; oracle agreement {}; {:.1}s (target < 120s)",
            rows_checked,
            failures.len(),
            if central_ok { "exact" } else { "MISMATCH" },
            if oracle_ok { "exact" } else { "MISMATCH" },
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let params = ModelParams::new(26, Rational::one()).unwrap();
    let momenta = probe_momenta(26);
    let kappa = calibrate_normalization(&params, &momenta, &default_kappa_set(), 2).unwrap();
    let wrong_rejected = calibrate_normalization(&params, &momenta[..1], &[Rational::from_int(3)], 1).is_err();
    let suite = ddf_suite(&params, &momenta, &kappa, 2, 2, &[1, 2, 24], true).unwrap();
    let mut required_ok = true;
    let mut literal_nonzero = 0usize;
    let mut literal_total = 0usize;
    let mut lines = Vec::new();
    for probe in &suite.probes {
        if probe.relation == LITERAL_COMMUTATOR {
            literal_total += 1;
            literal_nonzero += usize::from(!probe.pass);
        } else {
            required_ok &= probe.pass;
        }
    }
    for rel in ["oscillator_commutator", "virasoro_intertwining", "grading", "vacuum_annihilation", "zero_mode", "adjoint"] {
        let all = suite.probes.iter().filter(|p| p.relation == rel).all(|p| p.pass);
        let n: usize = suite.probes.iter().filter(|p| p.relation == rel).map(|p| p.checked).sum();
        lines.push(format!("{} {} ({} checks)", rel, if all { "exact" } else { "NONZERO" }, n));
    }
    // the library operators agree with the literal composition-sum oracle
    let mut oracle_ok = true;
    let big_kappa = to_big(&kappa);
    for (t, p) in momenta.iter().enumerate() {
        let ops = DdfOperators::new(&params, p, &kappa).unwrap();
        let model = oracle_model(&params, p);
        let top = if t == 0 { 2 } else { 1 };
        for level in 0..=top {
            for mono in level_basis(26, level) {
                let v = FockVector::<Rational>::basis(mono);
                let ov = from_lib(&v);
                for i in [1usize, 2, 24] {
                    for n in -2..=2i64 {
                        oracle_ok &= from_lib(&ops.ddf_apply(i, n, &v)) == model.ddf(i, n, &big_kappa, &ov);
                    }
                }
            }
        }
        // worked example and transverse Gram on the vacuum
        let o = St::vacuum();
        let mut c = model.ddf(1, 1, &big_kappa, &model.ddf(1, -1, &big_kappa, &o));
        c.axpy(&model.ddf(1, -1, &big_kappa, &model.ddf(1, 1, &big_kappa, &o)), &q(-1));
        oracle_ok &= c == o;
        for i in [1usize, 2, 24] {
            for j in [1usize, 2, 24] {
                let g = model.inner(&model.ddf(i, -1, &big_kappa, &o), &model.ddf(j, -1, &big_kappa, &o));
                oracle_ok &= g == q(i64::from(i == j));
            }
        }
        let k0 = to_big(&kappa) / (to_big(&p.0[0]) + to_big(&p.0[25]));
        for n in 0..=3i64 {
            for s in [1i64, -1] {
                for dagger in [false, true] {
                    for mono in level_basis(26, 2).into_iter().take(40) {
                        let v = FockVector::<Rational>::basis(mono);
                        let lib = ops.u_op_apply(n as usize, s, dagger, &v);
                        let k0n = &k0 * q(1);
                        oracle_ok &= from_lib(&lib) == model.u_op(n, &k0n, s, dagger, &from_lib(&v));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = required_ok && oracle_ok && wrong_rejected && literal_nonzero == 0 && elapsed < Duration::from_secs(300);
    let summary = format!(
        "DDF relations d = 26, 3 momenta, i,j in {{1,2,24}}, |n|,|m| <= 2, level <= 2 probes, kappa = {}: {}; \
         wrong kappa rejected {}; oracle agreement {}; same-fiber [L_m, A_n] = 0 holds at {}/{} momenta; {:.1}s (target < 300s)",
        kappa,
        lines.join(", "),
        wrong_rejected,
        if oracle_ok { "exact" } else { "MISMATCH" },
        literal_total - literal_nonzero,
        literal_total,
        elapsed.as_secs_f64()
    );
    let known = (required_ok && oracle_ok && wrong_rejected && literal_nonzero == literal_total).then(|| {
        "[L_m, A_n] = 0 with both operators on one fiber contradicts [L_0, A_n] = -n A_n through the Jacobi \
         identity with [L_m, L_{-m}]; it holds in the momentum-shifting form L_m(p - n k) A_n = A_n L_m(p), \
         which is exact above"
            .to_string()
    });
    Outcome { pass, summary, known_red: known }
}

fn coefficient_momentum_as_rational(p: &Momentum<Coefficient>) -> Option<Momentum<Rational>> {
    p.0.iter().map(|c| c.as_rational()).collect::<Option<Vec<_>>>().map(Momentum)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let params = ModelParams::new(26, Rational::one()).unwrap();
    let mut words_checked = 0;
    let mut all_ok = true;
    let mut oracle_ok = true;
    for level in 0..=3usize {
        let r_shell = level_shell(level, &params);
        let p = coefficient_momentum_as_rational(&find_onshell_momentum(&r_shell, 26, 64).unwrap())
            .expect("rational on-shell momentum");
        let ops = DdfOperators::new(&params, &p, &Rational::one()).unwrap();
        let model = oracle_model(&params, &p);
        let ev = &(&(&p.square() * &r(1, 2)) - &params.b) + &Rational::from_int(level as i64);
        let m2 = &Rational::from_int(2) * &(&Rational::from_int(level as i64) - &params.b);
        for word in transverse_words(level, &params) {
            let rep = constraint_report(&ops, &word);
            let psi = ops.ddf_state(&word);
            let mass_ok = mass_square_apply(&psi, &params) == psi.scale(&m2);
            let proj_ok = mass_project(&psi, &r_shell, &params) == psi
                && mass_project(&psi, &(&r_shell + &Rational::from_int(2)), &params).is_zero()
                && mass_project(&psi, &(&r_shell - &Rational::from_int(2)), &params).is_zero();
            let l0_ok = virasoro_apply(0, &p, &psi, &params) == psi.scale(&ev);
            all_ok &= rep.pass && mass_ok && proj_ok && l0_ok && !psi.is_zero();
            if level <= 2 && words_checked % 7 == 0 {
                let o = from_lib(&psi);
                for m in 1..=3i64 {
                    oracle_ok &= model.virasoro(m, &o).is_zero();
                }
                oracle_ok &= model.virasoro(0, &o) == o.scaled(&to_big(&ev));
            }
            words_checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ok(
        all_ok && oracle_ok,
        format!(
            "constraints on all {} transverse DDF words of level <= 3 at d = 26, b = 1: L_m (m > 0) zero, L_0, M^2 \
             and shell projection exact {}; oracle spot checks {}; {:.1}s",
            words_checked,
            all_ok,
            if oracle_ok { "exact" } else { "MISMATCH" },
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let rows = noghost_scan(&[10, 26], &Rational::one(), 2).unwrap();
    println!("    {}", LevelSpectrum::CSV_HEADER);
    for row in &rows {
        println!("    {}", row.csv_row(false));
    }
    let transverse = colored_partitions(24, 2);
    let mut pass = true;
    for row in rows.iter().filter(|row| row.d == 26) {
        pass &= row.n_minus == 0 && row.n_zero == row.dim_spurious;
        pass &= num_bigint::BigInt::from(row.n_plus) == transverse[row.level];
    }
    let l0 = rows.iter().find(|row| row.d == 26 && row.level == 0).unwrap();
    let l1 = rows.iter().find(|row| row.d == 26 && row.level == 1).unwrap();
    pass &= (l0.n_plus, l0.n_minus, l0.n_zero) == (1, 0, 0);
    pass &= (l1.n_plus, l1.n_minus, l1.n_zero) == (24, 0, 1);
    let params = ModelParams::new(26, Rational::one()).unwrap();
    let p = coefficient_momentum_as_rational(&find_onshell_momentum(&level_shell(2, &params), 26, 64).unwrap()).unwrap();
    let span = ddf_span_check(2, &p, &params, &Rational::one()).unwrap();
    pass &= span.pass;
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(600);
    ok(
        pass,
        format!(
            "no-ghost d = 26, b = 1, levels 0-2: n_minus = 0 and n_zero = dim spurious; level 1 signature ({},{},{}); \
             n_plus matches transverse counts; DDF words span physical mod spurious at level 2 ({} + {} = {}); {:.1}s",
            l1.n_plus,
            l1.n_minus,
            l1.n_zero,
            span.ddf_rank,
            span.dim_spurious,
            span.dim_physical,
            elapsed.as_secs_f64()
        ),
    )
}

fn detail_f64(rep: &string_ddf::cli::RunReport, check: &str, key: &str) -> f64 {
    rep.checks.iter().find(|c| c.name == check).and_then(|c| c.detail.get(key)).and_then(|v| v.as_f64()).unwrap_or(f64::NAN)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for radius in [Rational::one(), r(1, 10)] {
        let cfg = RunConfig { d: 26, radius: radius.clone(), dq: 2, grid: 256, tol: 1e-6, ..RunConfig::default() };
        let rep = cmd_observable(&cfg).unwrap();
        let samples = rep
            .checks
            .iter()
            .find(|c| c.name == "gupta_bleuler")
            .and_then(|c| c.detail["samples"]["checks"].as_array().map(|a| a.len()))
            .unwrap_or(0);
        let outside = detail_f64(&rep, "support", "outside_fraction");
        let kre = detail_f64(&rep, "locality", "kernel_re");
        let kim = detail_f64(&rep, "locality", "kernel_im");
        let ctl = detail_f64(&rep, "timelike_control", "kernel_im").abs();
        let this = rep.pass && samples >= 3 && outside < 1e-3 && kre.hypot(kim) < 1e-6 && ctl > 1e-5;
        pass &= this;
        parts.push(format!(
            "R = {}: {} samples exact, outside mass {:.1e}, spacelike kernel {:.1e}, timelike control {:.1e}",
            radius,
            samples,
            outside,
            kre.hypot(kim),
            ctl
        ));
    }
    // controls: an unconstrained body fails the constraint check, a too-small radius claim fails support
    let params = ModelParams::new(26, Rational::one()).unwrap();
    let prof = BumpProfile::new(r(1, 10), 26).unwrap();
    let mut body = FockVector::<Poly>::zero();
    body.add_term(Monomial::from_factors(vec![Osc::new(1, 0)]), Poly::constant(Rational::one()));
    let bad = TestFunction::from_body(&params, body, prof.clone()).unwrap();
    let gb_control = !gupta_bleuler_check(&bad, 1, 3).unwrap().pass;
    let tf = realify(&make_testfunction(&params, &[Letter { dir: 1, mode: 1 }], prof, &Rational::one()).unwrap()).unwrap();
    let support_control = !verify_support(&tf, &r(1, 20), 1024, 1e-3).unwrap().pass;
    // refinement trend at a spacelike separation with a time offset
    let mut trend = Vec::new();
    for n in [32usize, 64, 128] {
        let spec = QuadratureSpec::polar(n);
        let f = normalized(&project_pi(&tf, 1, 2).unwrap(), &spec).unwrap();
        trend.push(translated_kernel(&f, &f, &[0.05, 0.26, 0.03], &spec).unwrap().norm());
    }
    let trend_ok = trend.windows(2).all(|w| w[1] * 4.0 <= w[0]);
    pass &= gb_control && support_control && trend_ok;
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    ok(
        pass,
        format!(
            "local observable demo d = 26, dq = 2, grid 256^2: {}; unconstrained control rejected {}; R/2 support claim \
             rejected {}; kernel under refinement {:.1e} > {:.1e} > {:.1e}; {:.1}s",
            parts.join("; "),
            gb_control,
            support_control,
            trend[0],
            trend[1],
            trend[2],
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let params = ModelParams::new(26, Rational::one()).unwrap();
    let mut eq_ok = true;
    let mut n_fns = 0;
    for level in 1..=2usize {
        for word in transverse_words(level, &params) {
            let tf = make_testfunction(&params, &word, BumpProfile::new(Rational::one(), 26).unwrap(), &Rational::one())
                .unwrap();
            eq_ok &= field_equation_check(&tf).pass && field_equation_check(&realify(&tf).unwrap()).pass;
            n_fns += 1;
        }
    }
    let prof = BumpProfile::new(Rational::one(), 26).unwrap();
    let mk = |w: Vec<Letter>| realify(&make_testfunction(&params, &w, prof.clone(), &Rational::one()).unwrap()).unwrap();
    let spec = QuadratureSpec::polar(128);
    let f = normalized(&project_pi(&mk(vec![Letter { dir: 1, mode: 1 }]), 2, 2).unwrap(), &spec).unwrap();
    let g = f.translated(&[0.6, 0.3, 0.1]).unwrap();
    let h = normalized(&project_pi(&mk(vec![Letter { dir: 2, mode: 1 }, Letter { dir: 1, mode: 1 }]), 2, 2).unwrap(), &spec)
        .unwrap()
        .translated(&[-0.2, 0.4, 0.0])
        .unwrap();
    let h1 = f.translated(&[0.1, -0.5, 0.2]).unwrap();
    let pool = OneParticlePool::new(vec![f.clone(), g.clone(), h, h1], &spec).unwrap();
    let vac = MultiParticleVector::vacuum();
    let one = pool.creation(3, &vac);
    let two = pool.creation(2, &pool.creation(3, &vac));
    let mut worst: f64 = 0.0;
    for psi in [&vac, &one, &two] {
        let (_, rel) = pool.commutator_residual(0, 1, psi);
        worst = worst.max(rel);
    }
    let kfg = commutator_kernel(&f, &g, &spec).unwrap();
    let kgf = commutator_kernel(&g, &f, &spec).unwrap();
    let antisym = (kfg + kgf).norm() <= 1e-15 * kfg.norm();
    let single = pool.field_matrix_element(0, &vac, &pool.creation(1, &vac));
    let expect = one_particle_product(&g, &f, &spec, false).unwrap() * std::f64::consts::FRAC_1_SQRT_2;
    let matrix_ok = (single - expect).norm() < 1e-12 * expect.norm().max(1e-300)
        && pool.field_matrix_element(0, &vac, &vac) == Complex64::new(0.0, 0.0);
    // propagator identity on a massive level through the energy contour
    let fm = project_pi(&mk(vec![Letter { dir: 1, mode: 2 }]), 2, 1).unwrap();
    let gm = fm.translated(&[0.3, 0.5]).unwrap();
    let ip = one_particle_product(&fm, &gm, &QuadratureSpec::line(400), false).unwrap();
    let contour = propagator_pairing(&fm, &gm, 400, 2000).unwrap();
    let contour_ok = (contour.re - ip.im).abs() < 1e-9 * ip.norm() && contour.im.abs() < 1e-12;
    let pass = eq_ok && worst < 1e-8 && antisym && matrix_ok && contour_ok && kfg.norm() > 1e-6;
    ok(
        pass,
        format!(
            "field layer: field equation exact on {} factory functions {}; assembled commutator residual {:.1e} (< 1e-8) \
             on 0/1/2-particle vectors; antisymmetry {} (|k| = {:.2e}); matrix elements {}; contour propagator vs \
             shell product {:.3e} vs {:.3e}; {:.1}s",
            n_fns,
            eq_ok,
            worst,
            antisym,
            kfg.norm(),
            matrix_ok,
            contour.re,
            ip.im,
            start.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut checked = 0;
    for d in 1..=26usize {
        let expected = colored_partitions(d, 6);
        let gf = level_dimensions(d, 6);
        for n in 0..=6usize {
            let enumerated = level_basis(d, n).len();
            pass &= num_bigint::BigInt::from(enumerated) == expected[n];
            pass &= num_bigint::BigInt::from(gf[n]) == expected[n];
            checked += 1;
        }
    }
    let known_levels = [1u64, 26, 377, 3978];
    for (n, &v) in known_levels.iter().enumerate() {
        pass &= colored_partitions(26, 3)[n] == num_bigint::BigInt::from(v);
    }
    ok(
        pass,
        format!(
            "level-basis dimensions vs prod (1 - q^n)^-d for d <= 26, N <= 6: {} cells exact {}; {:.1}s",
            checked,
            pass,
            start.elapsed().as_secs_f64()
        ),
    )
}

fn main() {
    // libtest flags such as --nocapture are accepted and ignored
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", criterion_7),
    ];
    let mut unexpected = 0;
    for (id, run) in criteria {
        if let Some(f) = &filter {
            if !format!("criterion_{}", id).contains(f.as_str()) {
                continue;
            }
        }
        let out = run();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("{} criterion {}: {}", verdict, id, out.summary);
        match (&out.known_red, out.pass) {
            (Some(reason), false) => println!("    known: {}", reason),
            (_, false) => unexpected += 1,
            _ => {}
        }
    }
    // silence unused-import lints for helpers only some criteria use
    let _ = (qr(1, 1), to_lib(&St::vacuum()));
    if unexpected > 0 {
        eprintln!("{} criteria failed unexpectedly", unexpected);
        std::process::exit(1);
    }
}
