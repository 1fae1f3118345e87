//! One-dimensional adaptive quadrature.
//!
//! The integrands produced by the profile machinery are piecewise analytic
//! with power-law behaviour at the endpoints, so the workhorse here is a
//! 15-point Gauss–Kronrod panel driven adaptively, together with helpers
//! that integrate in log space and attach analytic head/tail corrections
//! for improper endpoints.

/// Kronrod abscissae for the (7, 15) pair, positive half.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];

/// 7-point Gauss weights.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

/// 15-point Kronrod weights.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// Result of an adaptive integration: value plus an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
}

/// One Gauss–Kronrod panel on `[a, b]`; returns (kronrod value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut kronrod = fc * WGK[7];
    let mut gauss = 0.0;
    let mut resabs = fc.abs() * WGK[7];

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        let sum = f1 + f2;
        kronrod += WGK[j] * sum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }

    let value = kronrod * half;
    let mut err = ((kronrod - gauss) * half).abs();
    // Standard QUADPACK-style error sharpening.
    let scale = resabs * half.abs();
    if scale > 0.0 && err > 0.0 {
        let r = (200.0 * err / scale).powf(1.5);
        if r < 1.0 {
            err = scale * r;
        }
    }
    (value, err)
}

/// Adaptive Gauss–Kronrod integration of `f` over the finite interval `[a, b]`.
///
/// Stops when the summed panel error drops below
/// `max(abs_tol, rel_tol * |value|)` or the panel budget is exhausted.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> QuadResult {
    if a == b {
        return QuadResult { value: 0.0, abs_error: 0.0 };
    }
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(64);
    let (v, e) = gk15(&f, a, b);
    panels.push((a, b, v, e));

    const MAX_PANELS: usize = 4000;
    loop {
        let value: f64 = panels.iter().map(|p| p.2).sum();
        let error: f64 = panels.iter().map(|p| p.3).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) || panels.len() >= MAX_PANELS {
            return QuadResult { value, abs_error: error };
        }
        // Split the panel with the largest error estimate.
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (pa, pb, _, _) = panels.swap_remove(idx);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // Interval exhausted by floating point; give up on refining it.
            let (v, _) = gk15(&f, pa, pb);
            panels.push((pa, pb, v, 0.0));
            continue;
        }
        let (v1, e1) = gk15(&f, pa, mid);
        let (v2, e2) = gk15(&f, mid, pb);
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
}

/// Integrate `f` over `[a, b]` with `0 < a < b` after the substitution
/// `t = e^u`, which spreads power-law behaviour evenly over the panel tree.
pub fn integrate_log<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> QuadResult {
    debug_assert!(a > 0.0 && b > a);
    integrate(|u| {
        let t = u.exp();
        f(t) * t
    }, a.ln(), b.ln(), rel_tol, abs_tol)
}

/// How an integrand decays toward an improper endpoint.
#[derive(Debug, Clone, Copy)]
pub enum Decay {
    /// `g(t) ~ C t^gamma`.
    Power { gamma: f64 },
    /// `g(t) ~ C(t) e^{-lambda t^alpha}` with subpolynomial `C`.
    StretchedExp { lambda: f64, alpha: f64 },
}

/// Relative mass allowed in the analytically modelled head/tail.
const CUT: f64 = 1e-14;
/// Hard clamp on how many decades the log-space sweep may cover.
const MAX_DECADES: f64 = 38.0;

/// Integrate `g` over `(0, b]` where `g(t) ~ C t^gamma` as `t -> 0+`.
///
/// Returns `None` when `gamma <= -1` (divergent). The region `(0, t0)`
/// is accounted for with the local power model `g(t0) t0 / (gamma + 1)`,
/// which is exact for pure powers.
pub fn integrate_from_zero<F: Fn(f64) -> f64>(
    g: F,
    b: f64,
    gamma: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Option<QuadResult> {
    if gamma <= -1.0 + 1e-12 {
        return None;
    }
    debug_assert!(b > 0.0);
    // Pick t0 so the head carries at most ~CUT of the mass, clamped so the
    // log sweep stays within MAX_DECADES decades of b.
    let decades = (-CUT.log10() / (gamma + 1.0)).min(MAX_DECADES);
    let t0 = b * 10f64.powf(-decades.max(1.0));
    let head = g(t0) * t0 / (gamma + 1.0);
    let body = integrate_log(&g, t0, b, rel_tol, abs_tol);
    Some(QuadResult {
        value: head + body.value,
        abs_error: body.abs_error + head.abs() * 1e-12,
    })
}

/// Integrate `g` over `[a, inf)` given its decay model at infinity.
///
/// Returns `None` for non-integrable power decay (`gamma >= -1`).
pub fn integrate_to_inf<F: Fn(f64) -> f64>(
    g: F,
    a: f64,
    decay: Decay,
    rel_tol: f64,
    abs_tol: f64,
) -> Option<QuadResult> {
    debug_assert!(a > 0.0);
    match decay {
        Decay::Power { gamma } => {
            if gamma >= -1.0 - 1e-12 {
                return None;
            }
            let decades = (-CUT.log10() / (-gamma - 1.0)).min(MAX_DECADES);
            let t1 = a * 10f64.powf(decades.max(1.0));
            let tail = g(t1) * t1 / (-gamma - 1.0);
            let body = integrate_log(&g, a, t1, rel_tol, abs_tol);
            Some(QuadResult {
                value: body.value + tail,
                abs_error: body.abs_error + tail.abs() * 1e-12,
            })
        }
        Decay::StretchedExp { lambda, alpha } => {
            debug_assert!(lambda > 0.0 && alpha > 0.0);
            // Cut where the exponential factor alone is below CUT.
            let t1 = ((-CUT.ln()) / lambda).powf(1.0 / alpha).max(2.0 * a);
            // Laplace tail estimate: integral beyond t1 of C e^{-l t^a}
            // is ~ g(t1) * t1^{1-a} / (l a).
            let tail = g(t1) * t1.powf(1.0 - alpha) / (lambda * alpha);
            let body = integrate_log(&g, a, t1, rel_tol, abs_tol);
            Some(QuadResult {
                value: body.value + tail,
                abs_error: body.abs_error + tail.abs(),
            })
        }
    }
}

/// Golden-section maximisation of `f` on `[a, b]`.
///
/// Returns `(argmax, max)`. Deterministic; ties resolve toward `a`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (lo + hi);
    let fm = f(xm);
    if f1.max(f2) > fm {
        if f1 >= f2 { (x1, f1) } else { (x2, f2) }
    } else {
        (xm, fm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RT: f64 = 1e-12;
    const AT: f64 = 1e-14;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| 3.0 * x * x, 0.0, 2.0, RT, AT);
        assert!((r.value - 8.0).abs() < 1e-12);
    }

    #[test]
    fn oscillatory() {
        let r = integrate(|x| x.sin(), 0.0, std::f64::consts::PI, RT, AT);
        assert!((r.value - 2.0).abs() < 1e-11);
    }

    #[test]
    fn log_space_power() {
        // integral of t^{-1/2} over [1e-6, 1] = 2(1 - 1e-3)
        let r = integrate_log(|t| t.powf(-0.5), 1e-6, 1.0, RT, AT);
        assert!((r.value - 2.0 * (1.0 - 1e-3)).abs() < 1e-10);
    }

    #[test]
    fn head_model_pure_power() {
        // integral of t^{-3/4} over (0, 1] = 4, endpoint exponent -3/4
        let r = integrate_from_zero(|t| t.powf(-0.75), 1.0, -0.75, RT, AT).unwrap();
        assert!((r.value - 4.0).abs() < 1e-9, "value {}", r.value);
    }

    #[test]
    fn head_divergent_flagged() {
        assert!(integrate_from_zero(|t| 1.0 / t, 1.0, -1.0, RT, AT).is_none());
    }

    #[test]
    fn tail_model_pure_power() {
        // integral of t^{-3} over [2, inf) = 1/8
        let r = integrate_to_inf(|t| t.powi(-3), 2.0, Decay::Power { gamma: -3.0 }, RT, AT).unwrap();
        assert!((r.value - 0.125).abs() < 1e-12);
    }

    #[test]
    fn tail_exponential() {
        // integral of e^{-t} over [1, inf) = e^{-1}
        let r = integrate_to_inf(
            |t| (-t).exp(),
            1.0,
            Decay::StretchedExp { lambda: 1.0, alpha: 1.0 },
            RT,
            AT,
        )
        .unwrap();
        assert!((r.value - (-1.0f64).exp()).abs() < 1e-10, "value {}", r.value);
    }

    #[test]
    fn near_critical_power_head() {
        // integral of t^{-0.99} over (0,1] = 100; head model must carry the mass
        let r = integrate_from_zero(|t| t.powf(-0.99), 1.0, -0.99, RT, AT).unwrap();
        assert!((r.value - 100.0).abs() / 100.0 < 1e-9, "value {}", r.value);
    }

    #[test]
    fn golden_finds_quadratic_max() {
        // The argmax is only resolvable to ~sqrt(eps) by value comparisons;
        // the max value itself is second-order accurate.
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0, 80);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
