//! Acceptance gate: one line per criterion; the process fails if any criterion does.
//! Runs without the libtest harness so the lines are always printed.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use gma_core::kernel::selfcheck::{cone_property_suite, identity_suite, SuiteReport};
use gma_core::kernel::{compute_fm, min_eig_ei, CoefficientSet};
use gma_core::pde::*;
use gma_core::psh::*;
use gma_core::toric::{
    check_criterion, jequation_constant, minkowski_sum, mixed_volume, parse_rational, ClassPolytopePair,
    RationalPolytope, Q,
};
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(start: Instant, budget: f64) -> Result<f64, String> {
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < budget, || format!("took {secs:.2} s, budget {budget} s"))?;
    Ok(secs)
}

fn suite_summary(r: &SuiteReport) -> Result<String, String> {
    let failed: Vec<String> = r
        .checks
        .iter()
        .filter(|c| c.failures > 0 || c.samples == 0)
        .map(|c| format!("{} ({} failures, worst {:e})", c.name, c.failures, c.worst))
        .collect();
    ensure(r.passed && failed.is_empty(), || failed.join("; "))?;
    let samples: usize = r.checks.iter().map(|c| c.samples).sum();
    Ok(format!("{} checks, {} samples", r.checks.len(), samples))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = identity_suite(2024, 1000);
    ensure(r.checks.iter().all(|c| c.samples >= 1000), || "fewer than 1000 samples in a check".into())?;
    let summary = suite_summary(&r)?;
    let secs = within_budget(start, 10.0)?;
    Ok(format!("{summary}, {secs:.2} s"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let r = cone_property_suite(2024, 500);
    ensure(r.checks.len() >= 6, || format!("only {} property checks", r.checks.len()))?;
    ensure(r.checks.iter().all(|c| c.samples >= 500), || "fewer than 500 samples in a check".into())?;
    let summary = suite_summary(&r)?;
    let secs = within_budget(start, 30.0)?;
    Ok(format!("{summary}, {secs:.2} s"))
}

/// Every `zeta`-subset of `0..n`, listed recursively.
fn subsets(n: usize, zeta: usize) -> Vec<Vec<usize>> {
    if zeta == 0 {
        return vec![vec![]];
    }
    if n < zeta {
        return vec![];
    }
    let mut out = subsets(n - 1, zeta);
    for mut s in subsets(n - 1, zeta - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn brute_min_eig(n: usize, zeta: usize) -> f64 {
    let mut m = DMatrix::<f64>::zeros(n, n);
    for set in subsets(n, zeta) {
        let mut e = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if !set.contains(&i) && !set.contains(&j) {
                    e[(i, j)] = 1.0;
                }
            }
        }
        m += e;
    }
    SymmetricEigen::new(m).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

fn criterion_3() -> Outcome {
    let c = CoefficientSet::new(2, vec![1.0]).map_err(|e| e.to_string())?;
    let fm = compute_fm(&c, 1.0).map_err(|e| e.to_string())?.fm;
    ensure((fm + 1.0 / 512.0).abs() < 1e-15, || format!("fm = {fm}, expected -1/512"))?;
    let mut pairs = 0;
    for n in 2..=6 {
        for zeta in 1..n {
            let got = min_eig_ei(n, zeta).map_err(|e| e.to_string())?;
            let expected = brute_min_eig(n, zeta);
            ensure((got - expected).abs() < 1e-10, || format!("n={n} zeta={zeta}: {got} vs {expected}"))?;
            pairs += 1;
        }
    }
    let cn = compute_cn(&RadialMollifier::constant(1), 1).map_err(|e| e.to_string())?;
    ensure((cn - 4.0 / 13.0).abs() < 1e-10, || format!("c_n = {cn}, expected 4/13"))?;
    Ok(format!("fm = {fm}, {pairs} (n, zeta) pairs, c_1 = {cn}"))
}

fn wave_phi(geom: &TorusGeometry, amp: f64) -> PotentialField {
    PotentialField::from_fn(geom, |x| amp * x.iter().map(|xi| (2.0 * PI * xi).cos()).sum::<f64>())
}

fn stages_in_cone(state: &SolveState, label: &str) -> Result<(), String> {
    for s in &state.stages {
        ensure(s.min_cone_margin > 0.0, || format!("{label}: margin {} at t = {}", s.min_cone_margin, s.t))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let opts = NewtonOptions::default();
    let err = |e: PdeError| e.to_string();
    let mut stages = 0;

    // (a) n = 1: phi = -(0.3 / pi^2) cos(2 pi x) solves 1 + phi'' / 4 = f
    let geom = TorusGeometry::identity(1, 64).map_err(err)?;
    let coeffs = CoefficientSet::new(1, vec![]).map_err(|e| e.to_string())?;
    let f = TrigPolynomial::constant(1.0).with_term(0.3, vec![1], WaveKind::Cos).sample(&geom).map_err(err)?;
    let exact = PotentialField::from_fn(&geom, |x| -(0.3 / (PI * PI)) * (2.0 * PI * x[0]).cos());
    let state = continuity_solve(&geom, &coeffs, &f, &opts).map_err(err)?;
    let ea = state.phi.distance_mod_constants(&exact);
    ensure(ea <= 1e-9, || format!("(a) sup err {ea:e}"))?;
    stages_in_cone(&state, "(a)")?;
    stages += state.stages.len();

    // (b) manufactured case on the 64^2 spectral grid
    let start = Instant::now();
    let geom = TorusGeometry::identity(2, 64).map_err(err)?;
    let coeffs = CoefficientSet::new(2, vec![1.0]).map_err(|e| e.to_string())?;
    let phi_star = wave_phi(&geom, 0.05);
    let case = manufacture(&geom, &coeffs, &phi_star).map_err(err)?;
    let state = continuity_solve(&geom, &coeffs, &case.f_grid, &opts).map_err(err)?;
    let eb = state.phi.distance_mod_constants(&phi_star);
    ensure(eb <= 1e-8, || format!("(b) sup err {eb:e}"))?;
    ensure(state.slack.abs() <= 1e-8, || format!("(b) slack {:e}", state.slack))?;
    let secs = within_budget(start, 60.0)?;
    stages_in_cone(&state, "(b)")?;
    stages += state.stages.len();

    // (c) finite differences converge at second order
    let mut errors = Vec::new();
    for size in [16, 32, 64] {
        let spectral = TorusGeometry::identity(2, size).map_err(err)?;
        let phi_star = wave_phi(&spectral, 0.05);
        let case = manufacture(&spectral, &coeffs, &phi_star).map_err(err)?;
        let fd = spectral.clone().with_scheme(Scheme::FiniteDifference);
        let state = continuity_solve(&fd, &coeffs, &case.f_grid, &opts).map_err(err)?;
        stages_in_cone(&state, "(c)")?;
        stages += state.stages.len();
        errors.push(state.phi.distance_mod_constants(&phi_star));
    }
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    ensure(ratios.iter().all(|r| (3.5..=4.5).contains(r)), || format!("(c) error ratios {ratios:?}"))?;

    // (d) linearization against central differences of the residual
    let geom = TorusGeometry::new(
        vec![16, 16],
        DMatrix::from_row_slice(2, 2, &[1.2, 0.1, 0.1, 0.9]),
        DMatrix::from_row_slice(2, 2, &[1.5, -0.2, -0.2, 1.1]),
    )
    .map_err(err)?;
    let coeffs = CoefficientSet::new(2, vec![0.7]).map_err(|e| e.to_string())?.with_c0(1.3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let random_trig = |rng: &mut ChaCha8Rng, amp: f64| {
        let mut p = TrigPolynomial::default();
        for _ in 0..4 {
            let wave = vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
            let kind = if rng.gen_bool(0.5) { WaveKind::Cos } else { WaveKind::Sin };
            p = p.with_term(amp * rng.gen_range(-1.0..1.0), wave, kind);
        }
        p
    };
    let mut worst_rel = 0.0_f64;
    for _ in 0..5 {
        let phi = PotentialField::new(geom.shape().to_vec(), random_trig(&mut rng, 0.0004).sample(&geom).map_err(err)?)
            .map_err(err)?;
        let f = random_trig(&mut rng, 0.1).sample(&geom).map_err(err)?;
        let t = rng.gen_range(0.0..1.0);
        let op = linearize(&geom, &coeffs, &f, t, &phi).map_err(err)?;
        for _ in 0..20 {
            let psi = random_trig(&mut rng, 1.0).sample(&geom).map_err(err)?;
            let h = 1e-5;
            let shifted = |s: f64| {
                PotentialField::new(phi.shape.clone(), phi.values.iter().zip(&psi).map(|(a, b)| a + s * b).collect())
            };
            let rp = residual(&geom, &coeffs, &f, t, &shifted(h).map_err(err)?, 0.0).map_err(err)?;
            let rm = residual(&geom, &coeffs, &f, t, &shifted(-h).map_err(err)?, 0.0).map_err(err)?;
            let applied = op.apply(&psi);
            let scale = applied.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
            let diff = rp
                .iter()
                .zip(&rm)
                .zip(&applied)
                .fold(0.0_f64, |a, ((p, m), d)| a.max(((p - m) / (2.0 * h) - d).abs()));
            worst_rel = worst_rel.max(diff / scale);
        }
    }
    ensure(worst_rel <= 1e-6, || format!("(d) linearization rel err {worst_rel:e}"))?;

    Ok(format!(
        "(a) {ea:.1e}, (b) {eb:.1e} in {secs:.1} s, (c) ratios {:.2}/{:.2}, (d) {worst_rel:.1e}, (e) {stages} stages in cone",
        ratios[0], ratios[1]
    ))
}

fn criterion_5() -> Outcome {
    let err = |e: PdeError| e.to_string();
    let geom = TorusGeometry::identity(2, 16).map_err(err)?;
    let coeffs = CoefficientSet::new(2, vec![1.0]).map_err(|e| e.to_string())?;
    let f = vec![0.0; geom.len()];
    let integrals = cohomology_integrals(&geom, &coeffs, &f).map_err(err)?;
    ensure(integrals.c0 == 1.0, || format!("c0 from integrals = {}", integrals.c0))?;
    let state = continuity_solve(&geom, &coeffs, &f, &NewtonOptions::default()).map_err(err)?;
    ensure(state.c0 == 1.0, || format!("solver c0 = {}", state.c0))?;
    ensure(state.stages.len() >= 2, || "path has a single stage".into())?;
    let worst = state.stages.iter().map(|s| s.phi_sup).fold(state.phi.sup_norm(), f64::max);
    ensure(worst <= 1e-10, || format!("phi sup {worst:e}"))?;
    Ok(format!("{} stages, max phi sup {worst:e}, c0 = 1", state.stages.len()))
}

fn q(s: &str) -> Q {
    parse_rational(s).unwrap()
}

fn poly(v: &[&[&str]]) -> RationalPolytope {
    let pts: Vec<Vec<Q>> = v.iter().map(|p| p.iter().map(|x| q(x)).collect()).collect();
    RationalPolytope::from_points(&pts).unwrap()
}

fn blowup_plane(a: &str, b: &str) -> RationalPolytope {
    poly(&[&[b, "0"], &[a, "0"], &["0", a], &["0", b]])
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let e = |e: gma_core::toric::ToricError| e.to_string();

    let tri = poly(&[&["0", "0"], &["1", "0"], &["0", "1"]]);
    let sq = poly(&[&["0", "0"], &["1", "0"], &["1", "1"], &["0", "1"]]);
    let pair = ClassPolytopePair::new(tri.scaled(&q("2")).map_err(e)?, tri.clone()).map_err(e)?;
    let c = jequation_constant(&pair, 1).map_err(e)?;
    let report = check_criterion(&pair, &[c]).map_err(e)?;
    ensure(report.pass, || "P^2 J-equation should pass".into())?;
    ensure(report.epsilon_uniform == q("1/2"), || format!("P^2 epsilon = {}", report.epsilon_uniform))?;

    let names: BTreeMap<Vec<BigInt>, String> = [(vec![BigInt::from(-1), BigInt::from(-1)], "E".to_string())].into();
    let pair = ClassPolytopePair::new(blowup_plane("2", "1"), blowup_plane("1", "9/10"))
        .and_then(|p| p.with_facet_names(&names))
        .map_err(e)?;
    let c = jequation_constant(&pair, 1).map_err(e)?;
    let report = check_criterion(&pair, &[c]).map_err(e)?;
    ensure(!report.pass, || "blow-up instance should fail".into())?;
    ensure(report.worst_face == "E", || format!("worst face {}", report.worst_face))?;
    let failing: Vec<&str> =
        report.per_face.iter().filter(|f| f.lhs <= Q::from_integer(0.into())).map(|f| f.face_id.as_str()).collect();
    ensure(failing == ["E"], || format!("failing faces {failing:?}"))?;
    let lhs_e = &report.per_face.iter().find(|f| f.face_id == "E").unwrap().lhs;
    ensure(*lhs_e == q("-5/11"), || format!("lhs on E = {lhs_e}"))?;

    let mv = mixed_volume(&[&sq, &tri]).map_err(e)?;
    ensure(mv == q("1"), || format!("MV(square, triangle) = {mv}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut random_polygon = || loop {
        let pts: Vec<Vec<Q>> = (0..rng.gen_range(3..7))
            .map(|_| (0..2).map(|_| q(&rng.gen_range(-4..=4).to_string())).collect())
            .collect();
        if let Ok(p) = RationalPolytope::from_points(&pts) {
            return p;
        }
    };
    for _ in 0..30 {
        let (a, b, c) = (random_polygon(), random_polygon(), random_polygon());
        let bc = RationalPolytope::from_points(&minkowski_sum(b.vertices(), c.vertices())).map_err(e)?;
        let lhs = mixed_volume(&[&a, &bc]).map_err(e)?;
        let rhs = mixed_volume(&[&a, &b]).map_err(e)? + mixed_volume(&[&a, &c]).map_err(e)?;
        ensure(lhs == rhs, || format!("additivity: {lhs} vs {rhs}"))?;
        let three = a.scaled(&q("3")).map_err(e)?;
        ensure(mixed_volume(&[&three, &b]).map_err(e)? == mixed_volume(&[&a, &b]).map_err(e)? * q("3"), || {
            "homogeneity failed".into()
        })?;
        ensure(mixed_volume(&[&a, &b]).map_err(e)? == mixed_volume(&[&b, &a]).map_err(e)?, || "symmetry failed".into())?;
    }
    let secs = within_budget(start, 5.0)?;
    Ok(format!("P^2 eps = 1/2, Bl_p P^2 fails on E with lhs = -5/11, MV = 1, {secs:.2} s"))
}

fn wavy_bowl(a: f64, eps: f64, k: f64, half_width: f64) -> Result<FnPotential, PshError> {
    FnPotential::new(4, move |p: &[f64]| {
        a * p.iter().map(|v| v * v).sum::<f64>() + eps * p.iter().map(|v| (k * v).cos()).sum::<f64>()
    })?
    .with_hessian(move |p: &[f64]| {
        DMatrix::from_fn(4, 4, |i, j| if i == j { 2.0 * a - eps * k * k * (k * p[i]).cos() } else { 0.0 })
    })
    .with_domain(vec![-half_width; 4], vec![half_width; 4])
}

fn grid4(m: usize, half: f64) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (0..m).map(|i| -half + 2.0 * half * i as f64 / (m - 1) as f64).collect();
    let mut out = Vec::new();
    for &a in &axis {
        for &b in &axis {
            for &c in &axis {
                for &d in &axis {
                    out.push(vec![a, b, c, d]);
                }
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let e = |e: PshError| e.to_string();

    let mut worst_defect = 0.0_f64;
    for n in 1..=4 {
        for m in [RadialMollifier::constant(n), RadialMollifier::polynomial(n)] {
            worst_defect = worst_defect.max(m.normalization_defect());
        }
    }
    ensure(worst_defect <= 1e-8, || format!("normalization defect {worst_defect:e}"))?;

    let r = 1.0;
    let deltas = [r / 8.0, r / 16.0, r / 32.0];
    let mut worst_nu = 0.0_f64;
    for n in 1..=2 {
        for gamma in [1.0, 0.35, 2.5] {
            let center: Vec<f64> = (0..2 * n).map(|a| 0.1 * a as f64).collect();
            let pot = SingularPotential::pure(gamma, center.clone()).map_err(e)?;
            let res = lelong_level(&pot, &center, &deltas, r).map_err(e)?;
            for nu in &res.nu_at_delta {
                worst_nu = worst_nu.max((nu - 2.0 * gamma).abs());
            }
        }
    }
    ensure(worst_nu <= 1e-6, || format!("Lelong deviation {worst_nu:e}"))?;

    // complex Hessian eigenvalues lie in [0.75, 1.25], so the margin floor 0.3 holds
    let field = wavy_bowl(1.0, 0.125, 2.0, 1.0).map_err(e)?;
    let coeffs = CoefficientSet::new(2, vec![1.0]).map_err(|e| e.to_string())?;
    let chi = DMatrix::identity(2, 2);
    let check = UniformConeCheck {
        epsilon: 0.3,
        deltas: vec![0.05, 0.2, 0.4],
        chi: chi.clone(),
        chi0_scalings: vec![1.0, 0.75],
        points: grid4(4, 0.9),
        resolution: Resolution::coarse(),
    };
    let report = check_uniform_cone(&field, &coeffs, &RadialMollifier::polynomial(2), &check).map_err(e)?;
    ensure(report.verdict == ConeVerdict::NoViolationInCheckedRange, || format!("verdict {:?}", report.verdict))?;
    let checked: usize = report.per_delta.iter().map(|d| d.checked_points).sum();
    ensure(report.per_delta.iter().all(|d| d.checked_points > 0), || "a delta checked no points".into())?;

    let eta = 0.8;
    let b = 0.3;
    let mut prev = f64::NEG_INFINITY;
    for i in 0..=400 {
        let a = b - 1.5 * eta + 3.0 * eta * i as f64 / 400.0;
        let v = regularized_max(&[a, b], eta).map_err(e)?;
        if (a - b).abs() >= eta {
            ensure(v == a.max(b), || format!("regularized max does not switch exactly at a = {a}"))?;
        }
        ensure(v >= prev - 1e-15, || format!("regularized max not monotone at a = {a}"))?;
        ensure(regularized_max(&[a + 0.1, b], eta).map_err(e)? >= v, || format!("not monotone in a at {a}"))?;
        prev = v;
    }

    // n = 2, c_1 = 1: margin of w|z|^2 is 1 - 1/(2w), so the local piece has margin 0.3
    let local = QuadraticPotential::diagonal(&[1.0 / 1.4, 1.0 / 1.4]);
    let global = QuadraticPotential::diagonal(&[1.0 / 1.2, 1.0 / 1.2]);
    let points: Vec<Vec<f64>> = (0..41)
        .flat_map(|i| (0..41).map(move |j| vec![-1.0 + i as f64 / 20.0, -1.0 + j as f64 / 20.0, 0.1, 0.0]))
        .collect();
    let norm2 = |p: &[f64]| p.iter().map(|v| v * v).sum::<f64>();
    let in_region: Vec<bool> = points.iter().map(|p| norm2(p) < 0.81).collect();
    let edge: Vec<bool> = points.iter().map(|p| norm2(p) < 0.81 && norm2(p) >= 0.64).collect();
    let setup = GlueSetup { points: &points, in_region: &in_region, edge: &edge, coeffs: &coeffs, chi: &chi };
    let glued = glue_potentials(
        &GluePiece::sample(&local, &points),
        &GluePiece::sample(&global, &points),
        0.02,
        0.05,
        &setup,
    )
    .map_err(e)?;
    ensure(glued.accepted, || format!("glue rejected: {:?}", glued.conflicts))?;
    let worst_margin = glued.margins.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    ensure(worst_margin >= 0.3 - 1e-8, || format!("glued margin {worst_margin}"))?;

    Ok(format!(
        "defect {worst_defect:.1e}, Lelong dev {worst_nu:.1e}, {checked} Jensen points, glued margin {worst_margin:.6}"
    ))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run_report(args: &[&str], out: &Path) -> Result<(Vec<u8>, Vec<u8>), String> {
    let _ = std::fs::remove_dir_all(out);
    let output = Command::new(env!("CARGO_BIN_EXE_gma"))
        .args(["--seed", "7", "--out"])
        .arg(out)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(output.status.code() == Some(0) || output.status.code() == Some(3), || {
        format!("{args:?} exited with {:?}: {}", output.status.code(), String::from_utf8_lossy(&output.stderr))
    })?;
    let report = std::fs::read(out.join("report.json")).map_err(|e| e.to_string())?;
    ensure(out.join("timings.json").exists(), || "timings.json missing".into())?;
    Ok((report, output.stdout))
}

fn criterion_8() -> Outcome {
    let cfg = configs();
    let path = |name: &str| cfg.join(name).to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["kernel".into(), "identities".into()],
        vec!["kernel".into(), "cone".into(), "--config".into(), path("kernel_cone.json")],
        vec!["solve".into(), "manufacture".into(), "--config".into(), path("solve_manufacture.json")],
        vec!["solve".into(), "run".into(), "--config".into(), path("solve_classpath.json")],
        vec!["solve".into(), "classpath".into(), "--config".into(), path("solve_classpath.json")],
        vec!["toric".into(), "check".into(), "--config".into(), path("toric_blowup.json")],
        vec!["psh".into(), "lelong".into(), "--config".into(), path("psh_lelong.json")],
        vec!["psh".into(), "glue".into(), "--config".into(), path("psh_glue.json")],
    ];
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR")).join("determinism");
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (r1, s1) = run_report(&args, &tmp.join("first"))?;
        let (r2, s2) = run_report(&args, &tmp.join("second"))?;
        ensure(r1 == r2, || format!("{} {}: report.json differs", args[0], args[1]))?;
        ensure(s1 == s2, || format!("{} {}: stdout differs", args[0], args[1]))?;
        ensure(!r1.is_empty(), || "empty report".into())?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [(usize, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = Vec::new();
    for (id, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {id}: PASS {detail}"),
            Err(why) => {
                println!("criterion {id}: FAIL {why}");
                failed.push(id);
            }
        }
    }
    println!("acceptance wall clock: {:.1} s", start.elapsed().as_secs_f64());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
