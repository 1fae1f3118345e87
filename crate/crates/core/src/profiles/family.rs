//! Named analytic profile families, their JSON form, and a seeded generator
//! of random monotone profiles for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Profile, Segment, SegmentKind};
use crate::constants::unit_ball_volume;
use crate::error::{Error, Result};

/// The built-in profile families.
///
/// JSON form is `{"family": "...", "params": {...}}`; a bare
/// `{"piecewise_linear": [[t, v], ...]}` object is accepted as well
/// (see [`ProfileSpec`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum ProfileFamily {
    /// `(min(eps^{-1/q}, t^{-1/q}) - t_max^{-1/q})_+` with `q > 0`:
    /// the capped-and-cut power tail used to approach the sharp constant
    /// when `p < n`.
    PowerTail { q: f64, eps: f64, t_max: f64 },
    /// `clamp(log(1/t), 0, log(1/eps))` on `(0, 1]`: the `p = n` family.
    LogCap { eps: f64 },
    /// `(1 - max(t, eps)^exponent)_+` on `(0, 1]`; `eps = 0` gives the
    /// pure shape, whose exponent `-p'/q` case is the equality profile of
    /// the support-dependent bound.
    OneMinusPower {
        exponent: f64,
        #[serde(default)]
        eps: f64,
    },
    /// `1 - (t / omega_n)^{1/n}`: rearrangement of the unit cone in R^n.
    Cone { n: u32 },
    /// `(exp(-rate (t/omega_n)^{2/n}) - exp(-rate radius^2))_+`:
    /// rearrangement of a truncated Gaussian bump.
    TruncatedGaussian { n: u32, rate: f64, radius: f64 },
    /// `exp(-t)`.
    Exponential,
    /// Indicator of `[0, 1)`.
    Step,
    /// Continuous piecewise-linear profile through the given `(t, value)`
    /// points (t ascending, values nonincreasing).
    PiecewiseLinear { points: Vec<[f64; 2]> },
}

impl ProfileFamily {
    pub fn instantiate(&self) -> Result<Profile> {
        match self {
            ProfileFamily::PowerTail { q, eps, t_max } => {
                let (q, eps, t_max) = (*q, *eps, *t_max);
                if q <= 0.0 {
                    return Err(Error::InvalidParameter("power tail needs q > 0".into()));
                }
                if !(eps > 0.0 && t_max > eps) {
                    return Err(Error::InvalidParameter(
                        "power tail needs 0 < eps < t_max".into(),
                    ));
                }
                let shift = t_max.powf(-1.0 / q);
                let cap = eps.powf(-1.0 / q) - shift;
                Profile::from_segments(vec![
                    Segment::new(0.0, eps, SegmentKind::constant(cap)),
                    Segment::new(
                        eps,
                        t_max,
                        SegmentKind::AffinePower { offset: -shift, coeff: 1.0, exponent: -1.0 / q },
                    ),
                ])
            }
            ProfileFamily::LogCap { eps } => {
                let eps = *eps;
                if !(eps > 0.0 && eps < 1.0) {
                    return Err(Error::InvalidParameter("log cap needs 0 < eps < 1".into()));
                }
                Profile::from_segments(vec![
                    Segment::new(0.0, eps, SegmentKind::constant(-eps.ln())),
                    Segment::new(eps, 1.0, SegmentKind::AffineLog { offset: 0.0, coeff: -1.0 }),
                ])
            }
            ProfileFamily::OneMinusPower { exponent, eps } => {
                let (a, eps) = (*exponent, *eps);
                if a <= 0.0 {
                    return Err(Error::InvalidParameter("exponent must be positive".into()));
                }
                if eps < 0.0 || eps >= 1.0 {
                    return Err(Error::InvalidParameter("eps must lie in [0, 1)".into()));
                }
                let body = SegmentKind::AffinePower { offset: 1.0, coeff: -1.0, exponent: a };
                if eps == 0.0 {
                    Profile::from_segments(vec![Segment::new(0.0, 1.0, body)])
                } else {
                    Profile::from_segments(vec![
                        Segment::new(0.0, eps, SegmentKind::constant(1.0 - eps.powf(a))),
                        Segment::new(eps, 1.0, body),
                    ])
                }
            }
            ProfileFamily::Cone { n } => {
                let n = *n;
                if n < 1 {
                    return Err(Error::InvalidParameter("cone needs n >= 1".into()));
                }
                let omega = unit_ball_volume(n);
                let nf = f64::from(n);
                Profile::from_segments(vec![Segment::new(
                    0.0,
                    omega,
                    SegmentKind::AffinePower {
                        offset: 1.0,
                        coeff: -omega.powf(-1.0 / nf),
                        exponent: 1.0 / nf,
                    },
                )])
            }
            ProfileFamily::TruncatedGaussian { n, rate, radius } => {
                let (n, rate, radius) = (*n, *rate, *radius);
                if n < 1 || rate <= 0.0 || radius <= 0.0 {
                    return Err(Error::InvalidParameter("bad truncated gaussian params".into()));
                }
                let omega = unit_ball_volume(n);
                let nf = f64::from(n);
                let support = omega * radius.powf(nf);
                let floor = (-rate * radius * radius).exp();
                Profile::from_segments(vec![Segment::new(
                    0.0,
                    support,
                    SegmentKind::ExpPower {
                        offset: -floor,
                        coeff: 1.0,
                        rate: rate / omega.powf(2.0 / nf),
                        exponent: 2.0 / nf,
                    },
                )])
            }
            ProfileFamily::Exponential => Profile::from_segments(vec![Segment::new(
                0.0,
                f64::INFINITY,
                SegmentKind::ExpPower { offset: 0.0, coeff: 1.0, rate: 1.0, exponent: 1.0 },
            )]),
            ProfileFamily::Step => Profile::from_segments(vec![Segment::new(
                0.0,
                1.0,
                SegmentKind::constant(1.0),
            )]),
            ProfileFamily::PiecewiseLinear { points } => piecewise_linear(points),
        }
    }
}

/// Build a continuous piecewise-linear profile through `(t, v)` points.
///
/// If the first point has `t > 0` the value is held constant before it.
/// A positive final value produces a jump to zero at the last breakpoint
/// (legal, but outside the Sobolev class).
pub fn piecewise_linear(points: &[[f64; 2]]) -> Result<Profile> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    let mut segs = Vec::with_capacity(points.len());
    if points[0][0] < 0.0 {
        return Err(Error::InvalidParameter("points must have t >= 0".into()));
    }
    if points[0][0] > 0.0 {
        segs.push(Segment::new(0.0, points[0][0], SegmentKind::constant(points[0][1])));
    }
    for w in points.windows(2) {
        let ([t0, v0], [t1, v1]) = (w[0], w[1]);
        if !(t1 > t0) {
            return Err(Error::InvalidParameter("points must have strictly ascending t".into()));
        }
        if v1 > v0 + 1e-12 {
            return Err(Error::NotMonotone(t1));
        }
        let slope = (v1 - v0) / (t1 - t0);
        segs.push(Segment::new(t0, t1, SegmentKind::linear(v0 - slope * t0, slope)));
    }
    Profile::from_segments(segs)
}

/// JSON wrapper accepting either the tagged family form or a bare
/// piecewise-linear object.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProfileSpec {
    Tagged(ProfileFamily),
    Bare { piecewise_linear: Vec<[f64; 2]> },
}

impl ProfileSpec {
    pub fn into_family(self) -> ProfileFamily {
        match self {
            ProfileSpec::Tagged(f) => f,
            ProfileSpec::Bare { piecewise_linear } => {
                ProfileFamily::PiecewiseLinear { points: piecewise_linear }
            }
        }
    }

    pub fn instantiate(&self) -> Result<Profile> {
        self.clone().into_family().instantiate()
    }
}

/// Seeded random continuous piecewise-linear profile with compact support,
/// finite sup and nonincreasing values; used by the property suites.
pub fn random_monotone_profile(seed: u64) -> Profile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let knots = rng.gen_range(3usize..=10);
    // Log-spread breakpoints over several decades.
    let mut ts: Vec<f64> = (0..knots)
        .map(|_| 10f64.powf(rng.gen_range(-3.0..3.0)))
        .collect();
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    // Strictly decreasing values ending at zero.
    let mut vs: Vec<f64> = Vec::with_capacity(ts.len() + 1);
    let mut v = rng.gen_range(0.2..5.0);
    vs.push(v);
    for _ in 0..ts.len() {
        v *= rng.gen_range(0.05..0.95);
        vs.push(v);
    }
    *vs.last_mut().unwrap() = 0.0;

    let mut points = Vec::with_capacity(ts.len() + 1);
    points.push([0.0, vs[0]]);
    for (i, &t) in ts.iter().enumerate() {
        points.push([t, vs[i + 1]]);
    }
    piecewise_linear(&points).expect("generated profile is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_instantiate() {
        let fams = [
            ProfileFamily::PowerTail { q: 2.0, eps: 1e-3, t_max: 1e3 },
            ProfileFamily::LogCap { eps: 1e-4 },
            ProfileFamily::OneMinusPower { exponent: 0.25, eps: 0.0 },
            ProfileFamily::OneMinusPower { exponent: 1.0 / 6.0, eps: 1e-6 },
            ProfileFamily::Cone { n: 3 },
            ProfileFamily::TruncatedGaussian { n: 2, rate: 2.0, radius: 2.5 },
            ProfileFamily::Exponential,
            ProfileFamily::Step,
        ];
        for fam in fams {
            let p = fam.instantiate().unwrap();
            assert!(p.sup_value() > 0.0);
        }
    }

    #[test]
    fn family_json_round_trip() {
        let fam = ProfileFamily::PowerTail { q: 2.0, eps: 1e-3, t_max: 1e3 };
        let s = serde_json::to_string(&fam).unwrap();
        assert!(s.contains("\"family\":\"power_tail\""), "{s}");
        let back: ProfileFamily = serde_json::from_str(&s).unwrap();
        assert_eq!(fam, back);
    }

    #[test]
    fn bare_piecewise_linear_json() {
        let s = r#"{"piecewise_linear": [[0.0, 1.0], [1.0, 0.5], [2.0, 0.0]]}"#;
        let spec: ProfileSpec = serde_json::from_str(s).unwrap();
        let p = spec.instantiate().unwrap();
        assert!((p.value(0.5) - 0.75).abs() < 1e-14);
        assert_eq!(p.value(3.0), 0.0);
        assert!((p.support_bound() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn random_profiles_are_valid() {
        for seed in 0..200 {
            let p = random_monotone_profile(seed);
            assert!(p.sup_value().is_finite());
            assert!(p.support_bound().is_finite());
            assert!(!p.has_jump(), "seed {seed} produced a jump");
            // nonincreasing spot check
            let mut prev = f64::INFINITY;
            for k in 0..50 {
                let t = 1e-4 * (1e8f64).powf(f64::from(k) / 49.0);
                let v = p.value(t);
                assert!(v <= prev + 1e-12);
                prev = v;
            }
        }
    }

    #[test]
    fn power_tail_continuity() {
        let p = ProfileFamily::PowerTail { q: 2.0, eps: 1e-2, t_max: 1e2 }.instantiate().unwrap();
        assert!(!p.has_jump());
        // capped at eps^{-1/2} - t_max^{-1/2}
        let cap = 1e-2f64.powf(-0.5) - 1e2f64.powf(-0.5);
        assert!((p.sup_value() - cap).abs() < 1e-12);
        assert!((p.value(1e2 - 1e-9)).abs() < 1e-7);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ProfileFamily::PowerTail { q: -2.0, eps: 1e-3, t_max: 1e3 }.instantiate().is_err());
        assert!(ProfileFamily::LogCap { eps: 2.0 }.instantiate().is_err());
        assert!(ProfileFamily::OneMinusPower { exponent: -1.0, eps: 0.0 }.instantiate().is_err());
    }
}
