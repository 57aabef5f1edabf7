//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with the measured values. Run with
//! `cargo test -p arraydir --test acceptance -- --nocapture`.

use arraydir::baselines::{dmin_sweep, sweep_argmax, uca_steered, ula_steered, GeometryKind};
use arraydir::directivity::{directivity_analytic, directivity_quadrature, ElementPattern};
use arraydir::ga::{ga_marginal, ga_optimize, ga_stall, planar_chart_of, GaConfig, GaProblem, GaVariant};
use arraydir::geometry::{
    pairwise_differences, rotation_matrix, ArrayLayout, DirectionSpec, Vec3,
};
use arraydir::omni::{f2_omni, objective_g, CoordBox, PlanarSolution};
use arraydir::oupa::{g_upa, oupa, quasi_square_factors, sev, upa_layout, upa_pair_distance, upa_z_mn, SevConfig, UpaSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_4, PI};

fn dir45() -> DirectionSpec {
    DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0)
}

/// Criterion 1: closed-form directivity matches the quadrature oracle to
/// 1e-6 relative over random layouts and the four low-order patterns.
#[test]
fn acceptance_01_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE01);
    let lambda = 2.0 * PI;
    let patterns = [
        ElementPattern { u: 0, v: 0 },
        ElementPattern { u: 0, v: 1 },
        ElementPattern { u: 1, v: 0 },
        ElementPattern { u: 1, v: 1 },
    ];
    let mut cases = Vec::new();
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let positions: Vec<Vec3> = (0..n)
            .map(|_| {
                Vec3::new(
                    rng.gen_range(-lambda..lambda),
                    rng.gen_range(-lambda..lambda),
                    rng.gen_range(-lambda..lambda),
                )
            })
            .collect();
        let amplitudes: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
        cases.push(ArrayLayout {
            positions,
            amplitudes,
            phases: vec![0.0; n],
        });
    }
    let dir = dir45();
    let worst = cases
        .par_iter()
        .map(|layout| {
            let mut worst: f64 = 0.0;
            for pattern in patterns {
                let ana = directivity_analytic(layout, pattern, &dir).unwrap();
                let qua = directivity_quadrature(layout, pattern, &dir).unwrap();
                worst = worst.max((ana.linear - qua.linear).abs() / qua.linear);
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    let pass = worst <= 1e-6;
    println!(
        "{} criterion 1 (oracle equivalence): worst relative error {worst:.3e} (tolerance 1e-6)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "worst relative error {worst:.3e} exceeds 1e-6");
}

/// Criterion 2: deterministic reference rows: grid designs at
/// (pi/4, pi/4), k = 1, plus steered linear and circular arrays.
#[test]
fn acceptance_02_reference_table_rows() {
    let dir = dir45();
    let cfg = SevConfig::for_direction(&dir);
    let mut failures = Vec::new();
    let mut check = |name: String, got: f64, want: f64| {
        let ok = (got - want).abs() <= 0.05;
        println!(
            "  {} {name}: {got:.3} dBi (expected {want} +- 0.05)",
            if ok { "ok  " } else { "FAIL" }
        );
        if !ok {
            failures.push(format!("{name}: {got:.3} vs {want}"));
        }
    };

    for (n1, n2, want) in [(2usize, 3usize, 11.70), (2, 4, 12.91), (3, 3, 14.12)] {
        let res = oupa(&dir, n1, n2, &cfg).unwrap();
        check(format!("grid {n1}x{n2}"), res.directivity.dbi, want);
    }
    for (n, want) in [(6usize, 9.17), (8, 10.38), (9, 10.88)] {
        let arr = ula_steered(n, dir.wavelength() / 2.0, &dir);
        let rep = directivity_analytic(&arr.layout, ElementPattern::OMNI, &dir).unwrap();
        check(format!("ula {n}"), rep.dbi, want);
    }
    for (n, want) in [(6usize, 7.96), (8, 8.73), (9, 9.17)] {
        let arr = uca_steered(n, &dir);
        let rep = directivity_analytic(&arr.layout, ElementPattern::OMNI, &dir).unwrap();
        check(format!("uca {n}"), rep.dbi, want);
    }

    let pass = failures.is_empty();
    println!(
        "{} criterion 2 (reference table rows): {} of 9 rows within 0.05 dB",
        if pass { "PASS" } else { "FAIL" },
        9 - failures.len()
    );
    assert!(pass, "rows out of tolerance: {failures:?}");
}

/// Criterion 3: the objective's lower bound -N/12 and the identity
/// f2 = sum(A^2)/6 + 2G over random planar solutions.
#[test]
fn acceptance_03_bound_and_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE03);
    let boxy = CoordBox {
        x_max: 1e9,
        y_max: 1e9,
    };
    let mut worst_gap_violation: f64 = 0.0;
    let mut worst_identity: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=12);
        let theta0 = rng.gen_range(0.05..1.45);
        let phi0 = rng.gen_range(0.0..2.0 * PI);
        let dir = DirectionSpec::new(theta0, phi0, 1.0);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-12.0..12.0)).collect();
        let ys: Vec<f64> = (0..n).map(|_| rng.gen_range(-12.0..12.0)).collect();
        let sol = PlanarSolution::uniform(xs, ys, dir);
        let val = objective_g(&sol, &boxy).unwrap();
        worst_gap_violation = worst_gap_violation.max(-(val.g + n as f64 / 12.0));
        let layout = sol.to_layout().unwrap();
        let f2 = f2_omni(&layout, dir.k).unwrap();
        worst_identity = worst_identity.max((f2 - (n as f64 / 6.0 + 2.0 * val.g)).abs());
    }
    let pass = worst_gap_violation <= 1e-9 && worst_identity <= 1e-10;
    println!(
        "{} criterion 3 (bound and identity): worst bound violation {worst_gap_violation:.2e} \
         (<= 1e-9), worst identity residual {worst_identity:.2e} (<= 1e-10)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

/// Criterion 4: the SEV line search matches a ten-times-finer brute grid
/// over (0, 2 lambda] and carries a local-minimum certificate.
#[test]
fn acceptance_04_sev_matches_brute_grid() {
    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 104.8);
    let c = 1e-3;
    let cfg = SevConfig {
        step_c: c,
        d_cap: 10.0 * dir.wavelength(),
        max_iters: usize::MAX,
    };
    let mut worst_diff: f64 = 0.0;
    let mut all_certified = true;
    for n1 in 2..=4usize {
        for n2 in 2..=4usize {
            let g = |d: f64| g_upa(d, n1, n2, &dir);
            let d_star = sev(g, &cfg).unwrap();
            // Brute search at step c/10 over (0, 2 lambda].
            let fine = c / 10.0;
            let mut best = (f64::INFINITY, 0.0);
            let mut m = 1usize;
            loop {
                let d = m as f64 * fine;
                if d > 2.0 * dir.wavelength() {
                    break;
                }
                let v = g(d);
                if v < best.0 {
                    best = (v, d);
                }
                m += 1;
            }
            worst_diff = worst_diff.max((d_star - best.1).abs());
            let certified = g(d_star - c) >= g(d_star) && g(d_star + c) > g(d_star);
            all_certified &= certified;
            println!(
                "  {n1}x{n2}: sev {d_star:.4}, brute {:.4}, certificate {certified}",
                best.1
            );
        }
    }
    let pass = worst_diff <= c && all_certified;
    println!(
        "{} criterion 4 (line search vs brute grid): worst |d* - brute| = {worst_diff:.2e} (<= {c})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

/// Criterion 5: grid-distance arithmetic, rotated-z arithmetic, and
/// rotation orthonormality.
#[test]
fn acceptance_05_geometry_identities() {
    // Index-difference distances equal layout distances exhaustively.
    let mut worst_d: f64 = 0.0;
    for n1 in 1..=8usize {
        for n2 in 1..=8usize {
            let spec = UpaSpec {
                n1,
                n2,
                d_min: 1.37,
            };
            let layout = upa_layout(&spec);
            for p in pairwise_differences(&layout, 1.0) {
                let f = upa_pair_distance(p.m + 1, p.n + 1, &spec);
                worst_d = worst_d.max((f - p.d_mn).abs());
            }
        }
    }

    // Rotated-layout z-differences match the index formula.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE05);
    let mut worst_z: f64 = 0.0;
    for _ in 0..200 {
        let n1 = rng.gen_range(1..=7usize);
        let n2 = rng.gen_range(1..=7usize);
        let dir = DirectionSpec::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI), 1.0);
        let spec = UpaSpec {
            n1,
            n2,
            d_min: rng.gen_range(0.2..3.0),
        };
        let rot = rotation_matrix(&dir);
        let flat = upa_layout(&spec);
        let rotated: Vec<Vec3> = flat.positions.iter().map(|&p| rot.mul_row(p)).collect();
        let n = spec.n_elements();
        for m in 1..=n {
            for nn in 1..=n {
                let got = upa_z_mn(m, nn, &spec, &dir);
                let want = rotated[m - 1].z - rotated[nn - 1].z;
                worst_z = worst_z.max((got - want).abs());
            }
        }
    }

    // Orthonormality across random directions.
    let mut worst_orth: f64 = 0.0;
    for _ in 0..1000 {
        let dir = DirectionSpec::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI), 1.0);
        let r = rotation_matrix(&dir);
        let rt = r.transpose();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for l in 0..3 {
                    acc += rt.0[i][l] * r.0[l][j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst_orth = worst_orth.max((acc - want).abs());
            }
        }
    }

    let pass = worst_d <= 1e-12 && worst_z <= 1e-10 && worst_orth <= 1e-12;
    println!(
        "{} criterion 5 (geometry identities): distances {worst_d:.2e} (<= 1e-12), \
         z-differences {worst_z:.2e} (<= 1e-10), orthonormality {worst_orth:.2e} (<= 1e-12)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

/// Criterion 6: stochastic runs with fixed seeds. The plain GA beats the
/// steered linear array within its generation budget; the stall runs land
/// inside the reported windows for at least two of three seeds per size;
/// the outperform-stopping run either beats the grid design or reports its
/// safety cap; all histories are non-increasing.
#[test]
fn acceptance_06_ga_properties() {
    let dir = dir45();
    let mut ok = true;

    // Plain GA, N = 6, one fixed seed, 40 generations, beats 9.17 dBi.
    let problem6 = GaProblem::uniform(dir, 6);
    let base_cfg = GaConfig::base(6, 1);
    let base = ga_optimize(&problem6, &base_cfg).unwrap();
    let beats_ula = base.history.iter().any(|h| h.best_dbi > 9.17);
    let base_monotone = base
        .history
        .windows(2)
        .all(|w| w[1].best_g <= w[0].best_g + 1e-15);
    println!(
        "  base GA N=6: best {:.3} dBi in {} generations (needs > 9.17): {}",
        base.best_directivity_dbi,
        base.generations_run,
        if beats_ula { "ok" } else { "FAIL" }
    );
    ok &= beats_ula && base_monotone;

    // Stall runs across sizes and seeds.
    let seeds = [1u64, 2, 3];
    for (n, center) in [(6usize, 12.35), (8, 13.49), (9, 14.5)] {
        let (n1, n2) = quasi_square_factors(n);
        let sev_cfg = SevConfig::for_direction(&dir);
        let reference = oupa(&dir, n1, n2, &sev_cfg).unwrap();
        let problem = GaProblem::uniform(dir, n);
        let mut hits = 0;
        for &seed in &seeds {
            let (_, _, p_max) = planar_chart_of(&reference);
            let cfg = GaConfig::refined(n, p_max, seed, GaVariant::Stall);
            let run = ga_stall(&reference, &problem, &cfg).unwrap();
            let in_window = (run.best_directivity_dbi - center).abs() <= 0.3;
            let monotone = run
                .history
                .windows(2)
                .all(|w| w[1].best_g <= w[0].best_g + 1e-15);
            ok &= monotone;
            if in_window {
                hits += 1;
            }
            println!(
                "  stall N={n} seed={seed}: {:.3} dBi ({} generations) window {center}±0.3: {}",
                run.best_directivity_dbi,
                run.generations_run,
                if in_window { "in" } else { "out" }
            );
        }
        let enough = hits >= 2;
        println!(
            "  stall N={n}: {hits}/3 seeds in window: {}",
            if enough { "ok" } else { "FAIL" }
        );
        ok &= enough;
    }

    // Outperform-stopping run.
    let (n1, n2) = quasi_square_factors(9);
    let sev_cfg = SevConfig::for_direction(&dir);
    let reference = oupa(&dir, n1, n2, &sev_cfg).unwrap();
    let problem9 = GaProblem::uniform(dir, 9);
    let (_, _, p_max) = planar_chart_of(&reference);
    let cfg = GaConfig::refined(9, p_max, 1, GaVariant::Marginal);
    let marginal = ga_marginal(&reference, &problem9, &cfg).unwrap();
    let marginal_ok = marginal.best_directivity_dbi > reference.directivity.dbi
        || marginal.safety_cap_reached;
    let marginal_monotone = marginal
        .history
        .windows(2)
        .all(|w| w[1].best_g <= w[0].best_g + 1e-15);
    println!(
        "  marginal N=9: {:.4} dBi vs reference {:.4} dBi (cap: {}): {}",
        marginal.best_directivity_dbi,
        reference.directivity.dbi,
        marginal.safety_cap_reached,
        if marginal_ok { "ok" } else { "FAIL" }
    );
    ok &= marginal_ok && marginal_monotone;

    println!(
        "{} criterion 6 (stochastic optimization properties)",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

/// Criterion 7: the massive 15x16 design completes and exceeds 30 dBi.
#[test]
fn acceptance_07_massive_array() {
    let dir = dir45();
    let cfg = SevConfig::for_direction(&dir);
    let res = oupa(&dir, 15, 16, &cfg).unwrap();
    let pass = res.directivity.dbi > 30.0;
    println!(
        "{} criterion 7 (massive array): 15x16 -> {:.3} dBi at d* = {:.3} (needs > 30)",
        if pass { "PASS" } else { "FAIL" },
        res.directivity.dbi,
        res.d_min_star
    );
    assert!(pass);
}

/// Criterion 8: for N = 16 on the (pi/4, pi/4) plane, the grid and
/// hexagonal layouts beat the circle, their peak directivities sit close
/// together, and their optimal spacings are smaller than the circle's.
#[test]
fn acceptance_08_geometry_comparison() {
    let dir = dir45();
    let range = (1.0, 7.3);
    let step = 0.01;
    let upa = sweep_argmax(&dmin_sweep(GeometryKind::Upa, 16, &dir, range, step).unwrap()).unwrap();
    let uhpa =
        sweep_argmax(&dmin_sweep(GeometryKind::Uhpa, 16, &dir, range, step).unwrap()).unwrap();
    let uca = sweep_argmax(&dmin_sweep(GeometryKind::Uca, 16, &dir, range, step).unwrap()).unwrap();
    println!(
        "  upa  {:.3} dBi at d = {:.3}\n  uhpa {:.3} dBi at d = {:.3}\n  uca  {:.3} dBi at d = {:.3}",
        upa.directivity_dbi, upa.d_min, uhpa.directivity_dbi, uhpa.d_min, uca.directivity_dbi, uca.d_min
    );
    let close = (upa.directivity_dbi - uhpa.directivity_dbi).abs() <= 0.5;
    let beat_circle = upa.directivity_dbi > uca.directivity_dbi
        && uhpa.directivity_dbi > uca.directivity_dbi;
    let tighter = upa.d_min < uca.d_min && uhpa.d_min < uca.d_min;
    let pass = close && beat_circle && tighter;
    println!(
        "{} criterion 8 (geometry comparison): grid~hex within 0.5 dB: {close}, both beat circle: {beat_circle}, smaller optimal spacing: {tighter}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

/// Criterion 9: among same-N factorizations, the most nearly square grid
/// attains the highest designed directivity.
#[test]
fn acceptance_09_quasi_square_wins() {
    let dir = dir45();
    let cfg = SevConfig::for_direction(&dir);
    let mut pass = true;
    for n in [36usize, 48] {
        let mut rows = Vec::new();
        for n1 in 1..=n {
            if n % n1 != 0 || n1 * n1 > n {
                continue;
            }
            let n2 = n / n1;
            let res = oupa(&dir, n1, n2, &cfg).unwrap();
            rows.push((n1, n2, res.directivity.dbi));
        }
        let best = rows
            .iter()
            .max_by(|a, b| a.2.total_cmp(&b.2))
            .copied()
            .unwrap();
        let most_square = rows
            .iter()
            .min_by_key(|(n1, n2, _)| n2 - n1)
            .copied()
            .unwrap();
        for (n1, n2, dbi) in &rows {
            println!("  {n1}x{n2}: {dbi:.3} dBi");
        }
        let ok = best.0 == most_square.0 && best.1 == most_square.1;
        println!(
            "  N={n}: best {}x{}, most square {}x{}: {}",
            best.0,
            best.1,
            most_square.0,
            most_square.1,
            if ok { "ok" } else { "FAIL" }
        );
        pass &= ok;
    }
    println!(
        "{} criterion 9 (quasi-square factorization wins)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}
