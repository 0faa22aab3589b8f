use std::f64::consts::PI;

use gma_core::kernel::{strict_cone_epsilon, CoefficientSet};
use gma_core::psh::*;
use nalgebra::DMatrix;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// `int_0^1 (1 - t^2)^3 t^{2n-1} dt = (n-1)! 3! / (2 (n+3)!)`.
fn poly_mass(n: usize) -> f64 {
    factorial(n - 1) * 6.0 / (2.0 * factorial(n + 3))
}

fn binom3(j: usize) -> f64 {
    [1.0, 3.0, 3.0, 1.0][j]
}

/// `int_0^1 (1 - t^2)^3 t^m dt` by expanding the cube.
fn poly_moment(m: usize) -> f64 {
    (0..=3).map(|j| binom3(j) * (-1f64).powi(j as i32) / (m + 2 * j + 1) as f64).sum()
}

/// `int_0^1 log(1/t) (1 - t^2)^3 t^{2n-1} dt`, using `int t^m log(1/t) = 1/(m+1)^2`.
fn poly_log_moment(n: usize) -> f64 {
    (0..=3)
        .map(|j| binom3(j) * (-1f64).powi(j as i32) / ((2 * n + 2 * j) as f64).powi(2))
        .sum()
}

fn origin(n: usize) -> Vec<f64> {
    vec![0.0; 2 * n]
}

#[test]
fn shipped_kernels_are_normalized() {
    for n in 1..=4 {
        let c = RadialMollifier::constant(n);
        let p = RadialMollifier::polynomial(n);
        assert!(c.normalization_defect() <= 1e-8, "constant n = {n}");
        assert!(p.normalization_defect() <= 1e-8, "polynomial n = {n}");
        // closed-form scale of the bump
        let expected = 1.0 / (sphere_area(n) * poly_mass(n));
        assert!((p.scale() - expected).abs() / expected < 1e-12, "n = {n}");
        assert!((c.scale() * sphere_area(n) - 2.0 * n as f64).abs() < 1e-12);
    }
}

#[test]
fn cn_constant_kernel_in_dimension_one() {
    let cn = compute_cn(&RadialMollifier::constant(1), 1).unwrap();
    assert!((cn - 4.0 / 13.0).abs() < 1e-10, "{cn}");
}

#[test]
fn cn_polynomial_kernel_matches_symbolic_moment() {
    for n in 1..=5 {
        let m = RadialMollifier::polynomial(n);
        let log_moment = poly_log_moment(n) / poly_mass(n);
        let tail = 3f64.powi(2 * n as i32 - 1) / 2f64.powi(2 * n as i32 - 3);
        let exact = 2.0 / (log_moment + tail);
        let got = compute_cn(&m, n).unwrap();
        assert!(got > 0.0);
        assert!((got - exact).abs() / exact <= 1e-10, "n = {n}: {got} vs {exact}");
    }
}

#[test]
fn cn_rejects_unnormalized_kernel() {
    let off = RadialMollifier::with_scale(2, Profile::Constant, 1.0).unwrap();
    assert!(off.normalization_defect() > 1e-6);
    assert!(matches!(compute_cn(&off, 2), Err(PshError::State(_))));
    assert!(matches!(compute_cn(&RadialMollifier::polynomial(3), 2), Err(PshError::Domain(_))));
}

#[test]
fn mollifying_constants_and_linear_functions() {
    for n in 1..=2 {
        let m = RadialMollifier::polynomial(n);
        let seven = ConstantPotential { dim: 2 * n, value: 7.0 };
        let x: Vec<f64> = (0..2 * n).map(|a| 0.1 * a as f64 - 0.2).collect();
        for delta in [0.01, 0.3, 2.0] {
            assert!((mollify(&seven, &m, delta, &x).unwrap() - 7.0).abs() < 1e-12);
        }
        let slope: Vec<f64> = (0..2 * n).map(|a| 1.0 + a as f64).collect();
        let s2 = slope.clone();
        let linear = FnPotential::new(2 * n, move |p: &[f64]| 3.0 + p.iter().zip(&s2).map(|(a, b)| a * b).sum::<f64>()).unwrap();
        let exact = linear.value(&x);
        assert!((mollify(&linear, &m, 0.4, &x).unwrap() - exact).abs() < 1e-12);
    }
}

#[test]
fn mollifying_the_square_norm_at_the_origin() {
    // real dimension 2: phi_delta(0) = delta^2 |S^1| int rho t^3
    let delta = 0.3;
    let sq = FnPotential::new(2, |p: &[f64]| p[0] * p[0] + p[1] * p[1]).unwrap();
    let c = RadialMollifier::constant(1);
    let exact_c = delta * delta * 2.0 * PI * (1.0 / PI) * 0.25;
    assert!((mollify(&sq, &c, delta, &origin(1)).unwrap() - exact_c).abs() < 1e-14);
    let p = RadialMollifier::polynomial(1);
    let exact_p = delta * delta * 2.0 * PI * p.scale() * poly_moment(3);
    assert!((mollify(&sq, &p, delta, &origin(1)).unwrap() - exact_p).abs() < 1e-14);
    // and in C^2, |z|^2 with the bump
    let sq2 = QuadraticPotential::diagonal(&[1.0, 1.0]);
    let p2 = RadialMollifier::polynomial(2);
    let exact2 = delta * delta * sphere_area(2) * p2.scale() * poly_moment(5);
    assert!((mollify(&sq2, &p2, delta, &origin(2)).unwrap() - exact2).abs() < 1e-13);
}

#[test]
fn log_mollification_in_dimension_one() {
    let m = RadialMollifier::constant(1);
    let gamma = 1.5;
    let pot = SingularPotential::pure(gamma, vec![0.2, -0.1]).unwrap();
    let delta: f64 = 0.25;
    for a in [0.0f64, 0.05, 0.1, 0.2, 0.25, 0.4] {
        let x = [0.2 + a, -0.1];
        // constant kernel: 2 log(delta) - 1 + (a/delta)^2 inside, log a^2 outside
        let exact = if a >= delta {
            gamma * (a * a).ln()
        } else {
            let s = a / delta;
            gamma * (2.0 * delta.ln() - 1.0 + s * s)
        };
        let got = mollify(&pot, &m, delta, &x).unwrap();
        assert!((got - exact).abs() < 1e-11, "a = {a}: {got} vs {exact}");
    }
}

#[test]
fn log_mollification_agrees_with_tensor_quadrature_off_the_singularity() {
    let m = RadialMollifier::polynomial(2);
    let c = vec![0.0, 0.0, 0.1, 0.0];
    let pot = SingularPotential::pure(1.0, c.clone()).unwrap();
    let c2 = c.clone();
    let plain = FnPotential::new(4, move |p: &[f64]| {
        p.iter().zip(&c2).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().ln()
    })
    .unwrap();
    let delta = 0.2;
    let fine = Resolution { radial: 24, simplex: 16, angular: 24 };
    for x in [[0.5, 0.0, 0.1, 0.0], [0.0, 0.35, 0.1, 0.1]] {
        let semi = mollify(&pot, &m, delta, &x).unwrap();
        let tensor = mollify_with(&plain, &m, delta, &x, fine).unwrap();
        assert!((semi - tensor).abs() < 1e-8, "{semi} vs {tensor}");
        // sub-mean-value property of a plurisubharmonic function
        assert!(semi >= pot.value(&x) - 1e-12);
    }
}

#[test]
fn log_mollification_through_the_singularity_is_consistent() {
    // as delta shrinks to the distance, the inside branch meets the outside value
    let m = RadialMollifier::polynomial(2);
    let pot = SingularPotential::pure(1.0, origin(2)).unwrap();
    let x = [0.3, 0.0, 0.0, 0.0];
    let inside = mollify(&pot, &m, 0.3 + 1e-9, &x).unwrap();
    let outside = mollify(&pot, &m, 0.3 - 1e-9, &x).unwrap();
    assert!((inside - outside).abs() < 1e-7);
    // at the center the value is log delta^2 plus a kernel constant
    let d1 = mollify(&pot, &m, 0.1, &origin(2)).unwrap();
    let d2 = mollify(&pot, &m, 0.2, &origin(2)).unwrap();
    assert!((d2 - d1 - 2.0 * 2f64.ln()).abs() < 1e-11);
    let kernel_const = -2.0 * m.log_moment();
    assert!((d1 - (2.0 * 0.1f64.ln() + kernel_const)).abs() < 1e-11);
}

#[test]
fn ball_outside_sample_domain_is_rejected() {
    let s = SampledPotential::from_fn(vec![-1.0, -1.0], vec![1.0, 1.0], vec![9, 9], |p| p[0] + p[1]).unwrap();
    let m = RadialMollifier::polynomial(1);
    assert!(matches!(mollify(&s, &m, 0.5, &[0.8, 0.0]), Err(PshError::Domain(_))));
    assert!(mollify(&s, &m, 0.1, &[0.8, 0.0]).is_ok());
    assert!(mollify(&s, &m, 0.0, &[0.0, 0.0]).is_err());
}

#[test]
fn lelong_of_pure_log_is_twice_gamma() {
    let r = 1.0;
    let deltas = [r / 8.0, r / 16.0, r / 32.0];
    for n in 1..=2 {
        for gamma in [1.0, 0.35, 2.5] {
            let c: Vec<f64> = (0..2 * n).map(|a| 0.1 * a as f64).collect();
            let pot = SingularPotential::pure(gamma, c.clone()).unwrap();
            let res = lelong_level(&pot, &c, &deltas, r).unwrap();
            for nu in &res.nu_at_delta {
                assert!((nu - 2.0 * gamma).abs() <= 1e-6, "n = {n}, gamma = {gamma}: {nu}");
            }
            assert_eq!(res.extrapolated, res.nu_at_delta[2]);
        }
    }
}

#[test]
fn lelong_is_monotone_in_delta() {
    let deltas: Vec<f64> = (1..=12).map(|j| 0.25 * 0.6f64.powi(j)).collect();
    let smooth = QuadraticPotential::diagonal(&[1.0, 0.5]);
    let pot = SingularPotential::new(0.7, origin(2), Box::new(smooth)).unwrap();
    for x in [origin(2), vec![0.05, 0.0, 0.0, 0.02]] {
        let res = lelong_level(&pot, &x, &deltas, 1.0).unwrap();
        // deltas decrease along the list, so nu must not increase
        for w in res.nu_at_delta.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "{:?}", res.nu_at_delta);
        }
    }
}

#[test]
fn lelong_of_smooth_potential_vanishes() {
    let r = 0.004;
    let pot = FnPotential::new(2, |p: &[f64]| (p[0] * p[0] + p[1] * p[1]) + (3.0 * p[0]).sin()).unwrap();
    let res = lelong_level(&pot, &[0.0, 0.0], &[1e-3 * r], r).unwrap();
    assert!(res.extrapolated.abs() <= 1e-3, "{}", res.extrapolated);
}

#[test]
fn lelong_splits_exactly_with_sup_terms() {
    let r = 1.0;
    let deltas = [r / 8.0, r / 16.0, r / 32.0];
    let x = origin(1);
    let phi1 = SingularPotential::pure(1.0, origin(1)).unwrap();
    let phi2 = FnPotential::new(2, |p: &[f64]| 0.5 * p[0] + (p[0] * p[0] + p[1] * p[1])).unwrap();
    let sum = SingularPotential::new(
        1.0,
        origin(1),
        Box::new(FnPotential::new(2, |p: &[f64]| 0.5 * p[0] + (p[0] * p[0] + p[1] * p[1])).unwrap()),
    )
    .unwrap();
    let a = lelong_level(&phi1, &x, &deltas, r).unwrap();
    let b = lelong_level(&phi2, &x, &deltas, r).unwrap();
    let s = lelong_level(&sum, &x, &deltas, r).unwrap();
    let outer = 0.25 * r;
    for (i, d) in deltas.iter().enumerate() {
        let denom = outer.ln() - d.ln();
        let correction = ((s.sup_outer - a.sup_outer - b.sup_outer) - (s.sup_at_delta[i] - a.sup_at_delta[i] - b.sup_at_delta[i])) / denom;
        let rebuilt = a.nu_at_delta[i] + b.nu_at_delta[i] + correction;
        assert!((s.nu_at_delta[i] - rebuilt).abs() < 1e-12);
        // sup of a sum never exceeds the sum of sups
        assert!(s.sup_at_delta[i] <= a.sup_at_delta[i] + b.sup_at_delta[i] + 1e-12);
    }
}

#[test]
fn lelong_rejects_large_delta() {
    let pot = SingularPotential::pure(1.0, origin(1)).unwrap();
    assert!(matches!(lelong_level(&pot, &origin(1), &[0.25], 1.0), Err(PshError::Domain(_))));
    assert!(lelong_level(&pot, &origin(1), &[], 1.0).is_err());
}

/// `E[max(S, T)] = 2 int s theta(s) Theta(s) ds`, by composite Simpson.
fn kappa_oracle() -> f64 {
    let m = 20000;
    let h = 1.0 / m as f64;
    let f = |s: f64| 2.0 * s * theta(s) * theta_cdf(s);
    let mut acc = f(-0.5) + f(0.5);
    for i in 1..m {
        let s = -0.5 + i as f64 * h;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(s);
    }
    acc * h / 3.0
}

#[test]
fn regularized_max_examples() {
    assert_eq!(regularized_max(&[5.0, 1.0], 1.0).unwrap(), 5.0);
    assert_eq!(regularized_max(&[1.0, 5.0], 1.0).unwrap(), 5.0);
    let kappa = regularized_max_kappa();
    assert!(kappa > 0.0);
    assert!((kappa - kappa_oracle()).abs() < 1e-12, "{kappa} vs {}", kappa_oracle());
    for (a, eta) in [(0.0, 1.0), (3.5, 0.2), (-2.0, 4.0)] {
        let v = regularized_max(&[a, a], eta).unwrap();
        assert!((v - (a + kappa * eta)).abs() < 1e-12);
    }
    assert!(regularized_max(&[1.0, 2.0], 0.0).is_err());
    assert!(regularized_max(&[1.0, 2.0], -1.0).is_err());
}

#[test]
fn regularized_max_switch_symmetry_and_monotonicity() {
    let eta = 0.8;
    let b = 0.3;
    let mut prev = f64::NEG_INFINITY;
    for i in 0..=400 {
        let a = b - 1.5 * eta + 3.0 * eta * i as f64 / 400.0;
        let v = regularized_max(&[a, b], eta).unwrap();
        let w = regularized_max(&[b, a], eta).unwrap();
        assert_eq!(v.to_bits(), w.to_bits(), "swap at a = {a}");
        assert!(v >= a.max(b) - 1e-15);
        if (a - b).abs() >= eta {
            assert_eq!(v, a.max(b), "exact switch at a = {a}");
        }
        assert!(v >= prev - 1e-15, "monotone at a = {a}");
        prev = v;
        let up = regularized_max(&[a + 0.1, b], eta).unwrap();
        assert!(up >= v);
        // midpoint convexity along the sweep
        let lo = regularized_max(&[a - 0.05, b], eta).unwrap();
        let hi = regularized_max(&[a + 0.05, b], eta).unwrap();
        assert!(0.5 * (lo + hi) >= v - 1e-14);
    }
    let three = [0.1, 0.4, 0.25];
    let base = regularized_max(&three, 0.5).unwrap();
    for perm in [[0.4, 0.1, 0.25], [0.25, 0.4, 0.1]] {
        assert_eq!(regularized_max(&perm, 0.5).unwrap().to_bits(), base.to_bits());
    }
    assert!(base >= 0.4);
}

/// `sum_j a |z_j|^2 + eps sum_a cos(k x_a)` on `C^2` with its exact Hessian.
fn wavy_bowl(a: f64, eps: f64, k: f64, half_width: f64) -> FnPotential {
    FnPotential::new(4, move |p: &[f64]| {
        a * p.iter().map(|v| v * v).sum::<f64>() + eps * p.iter().map(|v| (k * v).cos()).sum::<f64>()
    })
    .unwrap()
    .with_hessian(move |p: &[f64]| {
        DMatrix::from_fn(4, 4, |i, j| if i == j { 2.0 * a - eps * k * k * (k * p[i]).cos() } else { 0.0 })
    })
    .with_domain(vec![-half_width; 4], vec![half_width; 4])
    .unwrap()
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

#[test]
fn jensen_stability_on_a_margin_point_three_example() {
    // complex Hessian diag(1 - (cos 2x + cos 2y)/8 ...) has eigenvalues in [0.75, 1.25];
    // with n = 2, c_1 = 1 the load is 1/(2 lambda_min) <= 2/3
    let field = wavy_bowl(1.0, 0.125, 2.0, 1.0);
    let coeffs = CoefficientSet::new(2, vec![1.0]).unwrap();
    let chi = DMatrix::identity(2, 2);
    let eps = 0.3;
    let points = grid4(4, 0.9);
    for p in &points {
        let m = pointwise_margin(&field, &coeffs, &chi, eps, p).unwrap().unwrap();
        assert!(m >= 0.0, "pointwise margin below the floor at {p:?}");
    }
    let check = UniformConeCheck {
        epsilon: eps,
        deltas: vec![0.05, 0.2, 0.4],
        chi: chi.clone(),
        chi0_scalings: vec![1.0, 0.75],
        points,
        resolution: Resolution::coarse(),
    };
    let mollifier = RadialMollifier::polynomial(2);
    let report = check_uniform_cone(&field, &coeffs, &mollifier, &check).unwrap();
    assert_eq!(report.verdict, ConeVerdict::NoViolationInCheckedRange);
    assert!(report.worst_margin.unwrap() >= 0.0);
    // the largest delta cannot reach the corners of the grid
    assert!(report.per_delta[2].skipped_points > 0);
    assert!(report.per_delta.iter().all(|d| d.checked_points > 0));
}

#[test]
fn zero_coefficients_pass_for_any_epsilon() {
    let field = QuadraticPotential::diagonal(&[0.2]);
    let coeffs = CoefficientSet::new(1, vec![]).unwrap();
    let check = UniformConeCheck {
        epsilon: 0.99,
        deltas: vec![0.1],
        chi: DMatrix::identity(1, 1),
        chi0_scalings: vec![1.0],
        points: vec![vec![0.0, 0.0], vec![0.5, -0.5]],
        resolution: Resolution::coarse(),
    };
    let report = check_uniform_cone(&field, &coeffs, &RadialMollifier::constant(1), &check).unwrap();
    assert_eq!(report.verdict, ConeVerdict::NoViolationInCheckedRange);
    let mut empty = check.clone();
    empty.deltas.clear();
    assert!(matches!(
        check_uniform_cone(&field, &coeffs, &RadialMollifier::constant(1), &empty),
        Err(PshError::Empty(_))
    ));
}

/// The `mu` with load exactly one for `Omega = mu I`, `n = 3`, `c = (c1, c2)`:
/// `c1/(3 mu^2) + 2 c2/(3 mu) = 1`.
fn boundary_mu(c1: f64, c2: f64) -> f64 {
    let b = 2.0 * c2 / 3.0;
    let c = c1 / 3.0;
    0.5 * (b + (b * b + 4.0 * c).sqrt())
}

fn cone_check_for(points: Vec<Vec<f64>>, eps: f64) -> UniformConeCheck {
    UniformConeCheck {
        epsilon: eps,
        deltas: geometric_deltas(0.2, 3),
        chi: DMatrix::identity(3, 3),
        chi0_scalings: standard_scalings(3).into_iter().chain([1.0]).collect(),
        points,
        resolution: Resolution { radial: 4, simplex: 3, angular: 4 },
    }
}

#[test]
fn shifted_degenerate_current_is_uniform_with_the_constructed_epsilon() {
    let (c1, c2) = (0.5, 1.0);
    let coeffs = CoefficientSet::new(3, vec![c1, c2]).unwrap();
    let mu = boundary_mu(c1, c2);
    let beta = 0.2;
    // alpha = chi, so chi <= 1 * alpha
    let eps = strict_cone_epsilon(&coeffs, beta, 1.0).unwrap();
    let shifted = QuadraticPotential::diagonal(&[mu + 2.0 * beta; 3]);
    let pts = vec![origin(3), vec![0.1; 6]];
    let report = check_uniform_cone(&shifted, &coeffs, &RadialMollifier::polynomial(3), &cone_check_for(pts.clone(), eps)).unwrap();
    assert_eq!(report.verdict, ConeVerdict::NoViolationInCheckedRange);
    // the unshifted current sits on the boundary: zero margin at eps = 0
    let flat = QuadraticPotential::diagonal(&[mu; 3]);
    let r0 = check_uniform_cone(&flat, &coeffs, &RadialMollifier::polynomial(3), &cone_check_for(pts, 0.0)).unwrap();
    assert!(r0.worst_margin.unwrap().abs() < 1e-12);
}

#[test]
fn degenerate_check_over_a_sequence() {
    let (c1, c2) = (0.5, 1.0);
    let coeffs = CoefficientSet::new(3, vec![c1, c2]).unwrap();
    let flat = QuadraticPotential::diagonal(&[boundary_mu(c1, c2); 3]);
    let steps: Vec<DegenerateStep> = [0.4, 0.2, 0.1]
        .iter()
        .map(|&mu| DegenerateStep {
            epsilon: strict_cone_epsilon(&coeffs, 0.5 * mu, 1.0).unwrap(),
            mu,
        })
        .collect();
    let check = cone_check_for(vec![origin(3)], 0.0);
    let m = RadialMollifier::polynomial(3);
    let ok = check_degenerate_cone(&flat, &coeffs, &m, &steps, &check).unwrap();
    assert_eq!(ok.verdict, ConeVerdict::NoViolationInCheckedRange);
    let bad = [DegenerateStep { epsilon: 0.1, mu: 0.0 }];
    let report = check_degenerate_cone(&flat, &coeffs, &m, &bad, &check).unwrap();
    assert_eq!(report.verdict, ConeVerdict::ViolationFound);
}

fn disk_points(m: usize) -> Vec<Vec<f64>> {
    let mut pts = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let x = -1.0 + 2.0 * i as f64 / (m - 1) as f64;
            let y = -1.0 + 2.0 * j as f64 / (m - 1) as f64;
            pts.push(vec![x, y, 0.1, 0.0]);
        }
    }
    pts
}

fn norm2(p: &[f64]) -> f64 {
    p.iter().map(|v| v * v).sum()
}

#[test]
fn glued_quadratics_keep_the_smaller_margin() {
    // n = 2, c_1 = 1: margin of w|z|^2 is 1 - 1/(2w)
    let coeffs = CoefficientSet::new(2, vec![1.0]).unwrap();
    let chi = DMatrix::identity(2, 2);
    let w_local = 1.0 / 1.4;
    let w_global = 1.0 / 1.2;
    let local = QuadraticPotential::diagonal(&[w_local, w_local]);
    let global = QuadraticPotential::diagonal(&[w_global, w_global]);
    let points = disk_points(41);
    let in_region: Vec<bool> = points.iter().map(|p| norm2(p) < 0.81).collect();
    let edge: Vec<bool> = points.iter().map(|p| norm2(p) < 0.81 && norm2(p) >= 0.64).collect();
    let setup = GlueSetup { points: &points, in_region: &in_region, edge: &edge, coeffs: &coeffs, chi: &chi };
    let lp = GluePiece::sample(&local, &points);
    let gp = GluePiece::sample(&global, &points);
    let report = glue_potentials(&lp, &gp, 0.02, 0.05, &setup).unwrap();
    assert!(report.accepted, "{:?}", report.conflicts);
    assert!(report.blend_points > 0);
    let ml = 1.0 - 0.5 / w_local;
    assert!((ml - 0.3).abs() < 1e-12);
    for (i, m) in report.margins.iter().enumerate() {
        assert!(m.unwrap() >= 0.3 - 1e-8, "point {i}: {m:?}");
    }
    for (i, k) in report.kinds.iter().enumerate() {
        match k {
            GlueKind::Global | GlueKind::GlobalWins => assert_eq!(report.values[i], gp.values[i]),
            GlueKind::Local => assert_eq!(report.values[i], lp.values[i] + 0.05),
            GlueKind::Blend => assert!(report.values[i] >= (lp.values[i] + 0.05).max(gp.values[i])),
        }
    }
}

#[test]
fn glue_with_overwhelming_offset_is_the_shifted_local() {
    let coeffs = CoefficientSet::new(2, vec![1.0]).unwrap();
    let chi = DMatrix::identity(2, 2);
    let points = disk_points(11);
    let in_region = vec![true; points.len()];
    let edge = vec![false; points.len()];
    let setup = GlueSetup { points: &points, in_region: &in_region, edge: &edge, coeffs: &coeffs, chi: &chi };
    let lp = GluePiece::sample(&QuadraticPotential::diagonal(&[0.8, 0.8]), &points);
    let gp = GluePiece::sample(&QuadraticPotential::diagonal(&[0.9, 0.9]), &points);
    let report = glue_potentials(&lp, &gp, 0.1, 1e6, &setup).unwrap();
    for i in 0..points.len() {
        assert_eq!(report.values[i], lp.values[i] + 1e6);
        assert_eq!(report.kinds[i], GlueKind::Local);
    }
    assert_eq!(report.blend_points, 0);
}

#[test]
fn glue_with_narrow_band_switches_exactly() {
    let coeffs = CoefficientSet::new(2, vec![1.0]).unwrap();
    let chi = DMatrix::identity(2, 2);
    let points = disk_points(11);
    let in_region = vec![true; points.len()];
    let edge = vec![false; points.len()];
    let setup = GlueSetup { points: &points, in_region: &in_region, edge: &edge, coeffs: &coeffs, chi: &chi };
    // local minus global is 0.5 - 2|x|^2 + ...; choose eta below every gap on the grid
    let local = QuadraticPotential::diagonal(&[0.8, 0.8]);
    let global = QuadraticPotential::diagonal(&[1.8, 1.8]);
    let lp = GluePiece::sample(&local, &points);
    let gp = GluePiece::sample(&global, &points);
    let gap = (0..points.len()).map(|i| (lp.values[i] + 0.5 - gp.values[i]).abs()).fold(f64::INFINITY, f64::min);
    let report = glue_potentials(&lp, &gp, 0.9 * gap, 0.5, &setup).unwrap();
    assert_eq!(report.blend_points, 0);
    assert!(report.kinds.contains(&GlueKind::Local) && report.kinds.contains(&GlueKind::GlobalWins));
}

#[test]
fn glue_reports_edge_conflicts() {
    let coeffs = CoefficientSet::new(2, vec![1.0]).unwrap();
    let chi = DMatrix::identity(2, 2);
    let points = disk_points(11);
    let in_region = vec![true; points.len()];
    let edge: Vec<bool> = points.iter().map(|p| norm2(p) > 0.8).collect();
    let setup = GlueSetup { points: &points, in_region: &in_region, edge: &edge, coeffs: &coeffs, chi: &chi };
    let lp = GluePiece::sample(&QuadraticPotential::diagonal(&[0.8, 0.8]), &points);
    let gp = GluePiece::sample(&QuadraticPotential::diagonal(&[0.9, 0.9]), &points);
    let report = glue_potentials(&lp, &gp, 0.1, 5.0, &setup).unwrap();
    assert!(!report.accepted);
    assert!(!report.conflicts.is_empty());
}
