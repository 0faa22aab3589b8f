//! Seeded randomized checks of the kernel identities and of the structural
//! properties of `F` on the cone region. Used by `gma kernel identities`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    compute_fm, cone_margin, elem_sym_all, elem_sym_deleted, euler_weighted_sum, eval_f, grad_f,
    maclaurin_chain, CoefficientSet,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckOutcome {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Largest observed violation measure (relative error, or negative slack).
    pub worst: f64,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            samples: 0,
            failures: 0,
            worst: 0.0,
        }
    }

    fn record(&mut self, ok: bool, measure: f64) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
        }
        if measure.is_nan() || measure > self.worst {
            self.worst = measure;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl SuiteReport {
    fn finish(seed: u64, checks: Vec<CheckOutcome>) -> Self {
        let passed = checks.iter().all(|c| c.failures == 0 && c.samples > 0);
        Self { seed, checks, passed }
    }
}

const REL_TOL: f64 = 1e-12;
const ABS_FLOOR: f64 = 1e-14;

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(ABS_FLOOR)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * b.abs() + ABS_FLOOR
}

/// Log-uniform sample in `[lo, hi]`.
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

/// `n` values, log-uniform in `[1e-2, 1e2]`.
pub fn random_profile<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| log_uniform(rng, 1e-2, 1e2)).collect()
}

/// Random coefficients with at least one positive entry (for `n >= 2`),
/// roughly a third of entries zeroed.
pub fn random_coefficients<R: Rng>(rng: &mut R, n: usize) -> CoefficientSet {
    let mut c: Vec<f64> = (1..n)
        .map(|_| if rng.gen_bool(0.35) { 0.0 } else { rng.gen_range(0.05..2.0) })
        .collect();
    if n >= 2 && c.iter().all(|&v| v == 0.0) {
        let k = rng.gen_range(0..n - 1);
        c[k] = rng.gen_range(0.05..2.0);
    }
    CoefficientSet::new(n, c)
        .expect("sampled coefficients are valid")
        .with_c0(rng.gen_range(0.1..3.0))
}

/// One point of the cone region: coefficients, `t`, and a sorted profile with
/// positive margin, found by rejection from the log-uniform box.
#[derive(Debug, Clone)]
pub struct ConeSample {
    pub coeffs: CoefficientSet,
    pub t: f64,
    pub lambda: Vec<f64>,
}

pub fn sample_cone_point<R: Rng>(rng: &mut R, n: usize) -> ConeSample {
    loop {
        let coeffs = random_coefficients(rng, n);
        let t = rng.gen_range(0.0..=1.0);
        for _ in 0..2000 {
            let mut lambda = random_profile(rng, n);
            lambda.sort_by(|a, b| a.total_cmp(b));
            let report = cone_margin(&coeffs, t, &lambda).expect("positive profile");
            if report.satisfied {
                return ConeSample { coeffs, t, lambda };
            }
        }
    }
}

/// Second point in the same cone region as `base` (same coefficients and `t`).
fn sample_partner<R: Rng>(rng: &mut R, base: &ConeSample) -> Vec<f64> {
    loop {
        let lambda = random_profile(rng, base.lambda.len());
        if cone_margin(&base.coeffs, base.t, &lambda).unwrap().satisfied {
            return lambda;
        }
    }
}

/// `f` value at or above `f_m + 1e-9`, or positive when `f_m` is undefined.
fn admissible_f<R: Rng>(rng: &mut R, coeffs: &CoefficientSet) -> f64 {
    match compute_fm(coeffs, 1.0) {
        Ok(b) => b.fm + 1e-9 + rng.gen_range(0.0..1.0) * (1.0 - b.fm),
        Err(_) => rng.gen_range(1e-3..2.0),
    }
}

/// Exact expansion of `prod (1 + t v_i)` over the rationals.
pub fn exact_elem_sym(values: &[f64]) -> Vec<BigRational> {
    let mut poly = vec![BigRational::from_integer(BigInt::from(1))];
    for &v in values {
        let v = BigRational::from_float(v).expect("finite value");
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (j, coef) in poly.iter().enumerate() {
            next[j] += coef.clone();
            next[j + 1] += coef * &v;
        }
        poly = next;
    }
    poly
}

/// Elementary symmetric polynomials against exact expansion, the deletion
/// recurrence, and the Maclaurin chain; `samples` random profiles each,
/// `n` drawn from `1..=8`.
pub fn identity_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut expansion = CheckOutcome::new("elem_sym matches exact expansion");
    let mut recurrence = CheckOutcome::new("S_k = S_{k;i} + lambda_i S_{k-1;i}");
    let mut maclaurin = CheckOutcome::new("Maclaurin chain non-increasing");

    for _ in 0..samples {
        let n = rng.gen_range(1..=8);
        let lambda = random_profile(&mut rng, n);
        let e = elem_sym_all(&lambda);
        let exact = exact_elem_sym(&lambda);
        let worst = e
            .iter()
            .zip(&exact)
            .map(|(a, b)| rel_err(*a, b.to_f64().unwrap()))
            .fold(0.0, f64::max);
        expansion.record(worst <= REL_TOL, worst);

        let mut worst = 0.0_f64;
        let mut ok = true;
        for i in 0..n {
            for k in 1..=n {
                let lhs = e[k];
                let drop = if k <= n - 1 {
                    elem_sym_deleted(&lambda, k, i, None).unwrap()
                } else {
                    0.0
                };
                let rhs = drop + lambda[i] * elem_sym_deleted(&lambda, k - 1, i, None).unwrap();
                worst = worst.max(rel_err(rhs, lhs));
                ok &= close(rhs, lhs);
            }
        }
        recurrence.record(ok, worst);

        let chain = maclaurin_chain(&lambda).unwrap();
        let worst = chain
            .windows(2)
            .map(|w| (w[1] - w[0]) / w[0])
            .fold(0.0, f64::max);
        maclaurin.record(worst <= REL_TOL, worst);
    }
    SuiteReport::finish(seed, vec![expansion, recurrence, maclaurin])
}

/// Structural properties of `F_{t,p}` on `samples` cone-region points each,
/// `n` drawn from `2..=8`.
pub fn cone_property_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut negative = CheckOutcome::new("grad F strictly negative");
    let mut dominance = CheckOutcome::new("sorted dominance of -lambda_i dF/dlambda_i");
    let mut positive = CheckOutcome::new("F positive for f >= f_m");
    let mut convex = CheckOutcome::new("F convex along segments");
    let mut euler = CheckOutcome::new("Euler identity");
    let mut closure = CheckOutcome::new("cone region closed under convex combination");

    for _ in 0..samples {
        let n = rng.gen_range(2..=8);
        let s = sample_cone_point(&mut rng, n);
        let f = admissible_f(&mut rng, &s.coeffs);

        let g = grad_f(&s.coeffs, s.t, f, &s.lambda).unwrap();
        let worst = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        negative.record(worst < 0.0, worst.max(0.0));

        let weighted: Vec<f64> = s.lambda.iter().zip(&g).map(|(l, d)| -l * d).collect();
        let scale = weighted.iter().map(|v| v.abs()).fold(ABS_FLOOR, f64::max);
        let worst = weighted[1..]
            .iter()
            .map(|w| (w - weighted[0]) / scale)
            .fold(0.0, f64::max);
        dominance.record(worst <= REL_TOL, worst);

        let value = eval_f(&s.coeffs, s.t, f, &s.lambda).unwrap();
        positive.record(value > 0.0, (-value).max(0.0));

        let closed = euler_weighted_sum(&s.coeffs, s.t, f, &s.lambda).unwrap();
        let assembled: f64 = weighted.iter().sum();
        let err = rel_err(closed, assembled);
        euler.record(close(closed, assembled), err);

        let other = sample_partner(&mut rng, &s);
        let mut ok = true;
        let mut worst = 0.0_f64;
        for j in 1..20 {
            let a = j as f64 / 20.0;
            let mix: Vec<f64> = s.lambda.iter().zip(&other).map(|(x, y)| (1.0 - a) * x + a * y).collect();
            let m = cone_margin(&s.coeffs, s.t, &mix).unwrap().margin;
            ok &= m > 0.0;
            worst = worst.max(-m);
        }
        closure.record(ok, worst);

        // second differences of F on a uniform subdivision of the segment
        let steps = 16;
        let values: Vec<f64> = (0..=steps)
            .map(|j| {
                let a = j as f64 / steps as f64;
                let mix: Vec<f64> =
                    s.lambda.iter().zip(&other).map(|(x, y)| (1.0 - a) * x + a * y).collect();
                eval_f(&s.coeffs, s.t, f, &mix).unwrap()
            })
            .collect();
        let worst = values
            .windows(3)
            .map(|w| -(w[0] - 2.0 * w[1] + w[2]))
            .fold(0.0, f64::max);
        convex.record(worst <= 1e-10, worst);
    }
    SuiteReport::finish(seed, vec![negative, dominance, positive, convex, euler, closure])
}
