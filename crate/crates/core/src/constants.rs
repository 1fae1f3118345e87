//! Scalar constants of the inequality chains: unit-ball volumes, the
//! Sobolev conjugate exponent, the sphere moment constant `I_p`, the sharp
//! constant `(1 - 1/q) n omega_n^{1/n}`, and the `alpha_{p,n}` constant of
//! the supremum bound for `p > n`.
//!
//! Conventions for extended reals follow IEEE f64 arithmetic throughout:
//! `1/inf = 0` and `t^(1/inf) = t^0 = 1`, so `p = n` (where `q = +inf`)
//! needs no special casing in downstream formulas.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::quad;

/// The exponent bookkeeping for a `(p, n)` pair.
///
/// `q` solves `1/q = 1/p - 1/n`; it is `+inf` at `p = n` and negative
/// (in fact `< -n`) for `p > n`. `p_prime` is the Hölder conjugate of `p`,
/// `+inf` at `p = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentSet {
    pub p: f64,
    pub n: u32,
    pub q: f64,
    pub p_prime: f64,
    /// `1/q` stored directly so `1 - 1/q` never round-trips through `q`.
    pub inv_q: f64,
}

impl ExponentSet {
    pub fn new(p: f64, n: u32) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!("p must be >= 1, got {p}")));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        let inv_q = 1.0 / p - 1.0 / f64::from(n);
        let q = if inv_q == 0.0 { f64::INFINITY } else { 1.0 / inv_q };
        let p_prime = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
        Ok(ExponentSet { p, n, q, p_prime, inv_q })
    }

    /// `1 - 1/q`, the factor in the sharp constant.
    pub fn one_minus_inv_q(&self) -> f64 {
        1.0 - self.inv_q
    }
}

/// Lebesgue measure of the Euclidean unit ball in dimension `n`.
///
/// Uses the two-step recursion `omega_n = omega_{n-2} * 2 pi / n` from
/// `omega_0 = 1`, `omega_1 = 2`, which is exact up to rounding.
pub fn unit_ball_volume(n: u32) -> f64 {
    assert!(n >= 1, "dimension must be >= 1");
    let mut even = 1.0; // omega_0
    let mut odd = 2.0; // omega_1
    for k in 2..=n {
        let next = 2.0 * PI / f64::from(k) * if k % 2 == 0 { even } else { odd };
        if k % 2 == 0 {
            even = next;
        } else {
            odd = next;
        }
    }
    if n % 2 == 0 {
        even
    } else {
        odd
    }
}

/// The Sobolev conjugate `q` with `1/q = 1/p - 1/n`.
///
/// Returns `+inf` at `p = n` and a negative value for `p > n`.
pub fn sobolev_conjugate(p: f64, n: u32) -> f64 {
    ExponentSet::new(p, n).expect("valid exponents").q
}

fn ip_cache() -> &'static Mutex<HashMap<(u64, u32), f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `I_p` with `I_p^p = integral of |u_1|^p` over the normalized sphere.
///
/// Computed from the one-dimensional marginal of the first coordinate:
/// with `u_1 = sin(theta)` the marginal density on `[-pi/2, pi/2]` is
/// proportional to `cos^{n-2}(theta)`, so
/// `I_p^p = int |sin|^p cos^{n-2} d theta / int cos^{n-2} d theta`.
/// No sphere rule is involved, so every downstream constant is free of
/// sphere-quadrature error. Results are cached per `(p, n)`.
pub fn ip_constant(p: f64, n: u32) -> f64 {
    assert!(p >= 1.0, "p must be >= 1");
    assert!(n >= 2, "n must be >= 2");
    let key = (p.to_bits(), n);
    if let Some(&v) = ip_cache().lock().unwrap().get(&key) {
        return v;
    }
    let m = f64::from(n) - 2.0;
    let half = PI / 2.0;
    let num = quad::integrate(|th| th.sin().powf(p) * th.cos().powf(m), 0.0, half, 1e-13, 1e-300);
    let den = quad::integrate(|th| th.cos().powf(m), 0.0, half, 1e-13, 1e-300);
    let v = (num.value / den.value).powf(1.0 / p);
    ip_cache().lock().unwrap().insert(key, v);
    v
}

/// The sharp constant `(1 - 1/q) n omega_n^{1/n}`.
///
/// Equals `n omega_n^{1/n}` at `p = n` since `1/q = 0` there.
pub fn sharp_constant(p: f64, n: u32) -> f64 {
    let e = ExponentSet::new(p, n).expect("valid exponents");
    let nf = f64::from(n);
    e.one_minus_inv_q() * nf * unit_ball_volume(n).powf(1.0 / nf)
}

/// `alpha_{p,n} = ((p(1 - 1/q))^{p'/p} + |q|/p')^{1/p'}`, defined for `p > n`.
pub fn alpha_constant(p: f64, n: u32) -> Result<f64> {
    let e = ExponentSet::new(p, n)?;
    if p <= f64::from(n) {
        return Err(Error::InvalidParameter(format!(
            "alpha_{{p,n}} requires p > n (q < 0); got p = {p}, n = {n}"
        )));
    }
    let pp = e.p_prime;
    let term1 = (p * e.one_minus_inv_q()).powf(pp / p);
    let term2 = e.q.abs() / pp;
    Ok((term1 + term2).powf(1.0 / pp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes_low_dim() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn conjugate_exponent_cases() {
        assert!((sobolev_conjugate(1.0, 2) - 2.0).abs() < 1e-15);
        assert!(sobolev_conjugate(2.0, 2).is_infinite());
        assert!((sobolev_conjugate(3.0, 2) - (-6.0)).abs() < 1e-12);
    }

    #[test]
    fn exponent_set_invariants() {
        for &(p, n) in &[(1.0, 2u32), (1.5, 3), (2.0, 2), (3.0, 2), (4.0, 3), (7.0, 4)] {
            let e = ExponentSet::new(p, n).unwrap();
            // 1/q + 1/n = 1/p with 1/inf = 0
            let inv_q = if e.q.is_infinite() { 0.0 } else { 1.0 / e.q };
            assert!((inv_q + 1.0 / f64::from(n) - 1.0 / p).abs() < 1e-14, "(p,n)=({p},{n})");
            let nf = f64::from(n);
            if p < nf {
                assert!(e.q >= nf / (nf - 1.0) - 1e-12);
            } else if p > nf {
                assert!(e.q < -nf + 1e-12, "p > n should give q < -n, got {}", e.q);
            } else {
                assert!(e.q.is_infinite() && e.q > 0.0);
            }
        }
    }

    #[test]
    fn ip_at_p2_is_inverse_sqrt_n() {
        // Symmetry: sum over coordinates of int u_i^2 = 1, so I_2 = n^{-1/2}.
        for n in 2..=6 {
            let v = ip_constant(2.0, n);
            assert!(
                (v * f64::from(n).sqrt() - 1.0).abs() < 1e-12,
                "n = {n}: I_2 sqrt(n) = {}",
                v * f64::from(n).sqrt()
            );
        }
    }

    #[test]
    fn ip_p1_n2_closed_form() {
        // (1/2pi) int |cos| d theta = 2/pi; independent oracle by quadrature.
        let oracle = quad::integrate(|th: f64| th.cos().abs(), 0.0, 2.0 * PI, 1e-13, 1e-300).value
            / (2.0 * PI);
        assert!((oracle - 2.0 / PI).abs() < 1e-12);
        assert!((ip_constant(1.0, 2) - 2.0 / PI).abs() < 1e-11);
    }

    #[test]
    fn ip_p1_n3_is_half() {
        // First coordinate is uniform on [-1, 1] on the 2-sphere.
        assert!((ip_constant(1.0, 3) - 0.5).abs() < 1e-11);
    }

    #[test]
    fn ip_p1_n3_monte_carlo_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let samples = 10_000_000usize;
        let mut sum = 0.0f64;
        let mut sum_sq = 0.0f64;
        for _ in 0..samples {
            // Gaussian direction on S^2 via Box-Muller.
            let mut v = [0.0f64; 3];
            for x in v.iter_mut() {
                let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                *x = (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos();
            }
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            let a = (v[0] / norm).abs();
            sum += a;
            sum_sq += a * a;
        }
        let mean = sum / samples as f64;
        let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
        let sigma = (var / samples as f64).sqrt();
        let ip = ip_constant(1.0, 3);
        assert!(
            (ip - mean).abs() < 3.0 * sigma + 1e-9,
            "MC mean {mean} +- {sigma}, computed {ip}"
        );
    }

    #[test]
    fn ip_nondecreasing_in_p() {
        // Power-mean inequality on a probability space.
        for n in [2u32, 3, 4] {
            let mut prev = 0.0;
            for k in 0..30 {
                let p = 1.0 + 0.5 * f64::from(k);
                let v = ip_constant(p, n);
                assert!(v >= prev - 1e-13, "I_p not monotone at p = {p}, n = {n}");
                assert!(v > 0.0 && v <= 1.0 + 1e-13);
                prev = v;
            }
        }
    }

    #[test]
    fn ip_ratio_sqrt_p_growth() {
        // Sanity bounds on I_p / I_1. Since I_p <= 1, the ratio saturates at
        // 1/I_1 once p >> n, so the sqrt(p) growth law only bites while
        // p <~ n: lower bound 0.5 sqrt(min(p, n)), upper bound 2 sqrt(p).
        for n in [2u32, 3, 4] {
            let i1 = ip_constant(1.0, n);
            for &p in &[1.0, 2.0, 5.0, 10.0, 25.0, 50.0, 100.0] {
                let ratio = ip_constant(p, n) / i1;
                let lower = 0.5 * p.min(f64::from(n)).sqrt();
                let upper = 2.0 * p.sqrt();
                assert!(
                    ratio >= lower && ratio <= upper,
                    "I_p/I_1 = {ratio} outside [{lower}, {upper}] at p = {p}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn sharp_constant_values() {
        // p = n = 2: constant is n omega_n^{1/n} = 2 sqrt(pi).
        assert!((sharp_constant(2.0, 2) - 2.0 * PI.sqrt()).abs() < 1e-13);
        // p = 1, n = 2: q = 2, factor 1/2.
        assert!((sharp_constant(1.0, 2) - PI.sqrt()).abs() < 1e-13);
        // p = 3, n = 2: q = -6, factor 7/6.
        assert!((sharp_constant(3.0, 2) - 7.0 / 6.0 * 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn sharp_constant_at_p_equals_n() {
        for n in 1..=4 {
            let nf = f64::from(n);
            let expect = nf * unit_ball_volume(n).powf(1.0 / nf);
            assert!((sharp_constant(nf, n) - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn alpha_p3_n2() {
        // q = -6, p' = 3/2: alpha = (sqrt(3.5) + 4)^{2/3}.
        let expect = (3.5f64.sqrt() + 4.0).powf(2.0 / 3.0);
        let got = alpha_constant(3.0, 2).unwrap();
        assert!((got - expect).abs() < 1e-13, "got {got}, expect {expect}");
        assert!((got - 3.2543).abs() < 1e-3);
        assert!(got > 1.0);
    }

    #[test]
    fn alpha_p4_n2() {
        // q = -4, p' = 4/3: alpha = ((4 * 5/4)^{1/3} + 3)^{3/4} = (5^{1/3} + 3)^{3/4}.
        let expect = (5.0f64.powf(1.0 / 3.0) + 3.0).powf(0.75);
        let got = alpha_constant(4.0, 2).unwrap();
        assert!((got - expect).abs() < 1e-13);
    }

    #[test]
    fn alpha_rejects_p_not_above_n() {
        assert!(alpha_constant(2.0, 2).is_err());
        assert!(alpha_constant(1.5, 3).is_err());
    }

    #[test]
    fn extended_real_conventions() {
        // f64 arithmetic implements the conventions directly.
        assert_eq!(1.0 / f64::INFINITY, 0.0);
        assert_eq!(5.0f64.powf(1.0 / f64::INFINITY), 1.0);
        assert_eq!(0.0f64.powf(0.0), 1.0);
    }
}
