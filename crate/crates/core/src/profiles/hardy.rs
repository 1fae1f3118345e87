//! The weighted Hardy inequality margin on sampled functions.
//!
//! For nonnegative `g` the inequality reads
//! `int ((1/t) int_0^t g)^p t^{-p/n} dt <= (p / (p + p/n - 1))^p int g^p s^{-p/n} ds`,
//! and the margin returned here is `RHS - LHS` (so nonnegative means it holds).

use super::power_integral;
use crate::error::{DivergenceSite, Error, Result};
use crate::quad;

/// A nonnegative compactly supported function on `(0, inf)` given as
/// piecewise-linear pieces (steps are pieces with equal endpoint values).
#[derive(Debug, Clone, PartialEq)]
struct Piece {
    a: f64,
    b: f64,
    va: f64,
    vb: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepFn {
    pieces: Vec<Piece>,
    /// Prefix integrals at piece starts, plus the total at the end.
    cum: Vec<f64>,
}

impl StepFn {
    /// Step function: `g = values[i]` on `[edges[i], edges[i+1])`.
    pub fn from_steps(edges: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if edges.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::InvalidParameter(
                "need edges.len() == values.len() + 1 and at least one piece".into(),
            ));
        }
        let pieces = edges
            .windows(2)
            .zip(values.iter())
            .map(|(w, &v)| Piece { a: w[0], b: w[1], va: v, vb: v })
            .collect();
        Self::build(pieces)
    }

    /// Continuous piecewise-linear function through `(t, v)` points,
    /// zero outside `[points[0].t, points.last().t]`.
    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter("need at least two points".into()));
        }
        let pieces = points
            .windows(2)
            .map(|w| Piece { a: w[0][0], b: w[1][0], va: w[0][1], vb: w[1][1] })
            .collect();
        Self::build(pieces)
    }

    fn build(pieces: Vec<Piece>) -> Result<Self> {
        if pieces[0].a < 0.0 {
            return Err(Error::InvalidParameter("support must lie in [0, inf)".into()));
        }
        for p in &pieces {
            if !(p.b > p.a) {
                return Err(Error::InvalidParameter("breakpoints must be strictly ascending".into()));
            }
            if p.va < 0.0 || p.vb < 0.0 || !p.va.is_finite() || !p.vb.is_finite() {
                return Err(Error::InvalidParameter("values must be finite and nonnegative".into()));
            }
        }
        for w in pieces.windows(2) {
            if w[0].b != w[1].a {
                return Err(Error::InvalidParameter("pieces must be contiguous".into()));
            }
        }
        let mut cum = Vec::with_capacity(pieces.len() + 1);
        let mut acc = 0.0;
        cum.push(acc);
        for p in &pieces {
            acc += 0.5 * (p.va + p.vb) * (p.b - p.a);
            cum.push(acc);
        }
        Ok(StepFn { pieces, cum })
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t < self.pieces[0].a || t >= self.pieces.last().unwrap().b {
            return 0.0;
        }
        let i = self.pieces.partition_point(|p| p.a <= t) - 1;
        let p = &self.pieces[i];
        p.va + (p.vb - p.va) * (t - p.a) / (p.b - p.a)
    }

    /// `int_0^t g`.
    pub fn cum(&self, t: f64) -> f64 {
        if t <= self.pieces[0].a {
            return 0.0;
        }
        if t >= self.pieces.last().unwrap().b {
            return *self.cum.last().unwrap();
        }
        let i = self.pieces.partition_point(|p| p.a <= t) - 1;
        let p = &self.pieces[i];
        let dt = t - p.a;
        let v_t = p.va + (p.vb - p.va) * dt / (p.b - p.a);
        self.cum[i] + 0.5 * (p.va + v_t) * dt
    }

    pub fn total_mass(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    pub fn support_start(&self) -> f64 {
        self.pieces[0].a
    }

    pub fn support_end(&self) -> f64 {
        self.pieces.last().unwrap().b
    }
}

/// Margin of the weighted Hardy inequality for `g`:
/// `(p/(p + p/n - 1))^p int g^p s^{-p/n} ds  -  int ((1/t) int_0^t g)^p t^{-p/n} dt`.
///
/// Errors with a divergence flag when `g(0+) > 0` and `p >= n`
/// (both sides infinite).
pub fn hardy_inequality_margin(g: &StepFn, p: f64, n: u32) -> Result<f64> {
    assert!(p >= 1.0 && n >= 1);
    let w = -p / f64::from(n);

    // Weighted p-norm side.
    let mut rhs = 0.0;
    for piece in &g.pieces {
        if piece.va == 0.0 && piece.vb == 0.0 {
            continue;
        }
        if piece.va == piece.vb {
            // Flat piece: exact power integral.
            match power_integral(piece.a, piece.b, w) {
                Some(v) => rhs += piece.va.powf(p) * v,
                None => return Err(Error::Divergent { site: DivergenceSite::Zero }),
            }
            continue;
        }
        let h = |s: f64| g.eval(s).powf(p) * s.powf(w);
        if piece.a == 0.0 {
            let gamma = if piece.va > 0.0 { w } else { p + w };
            match quad::integrate_from_zero(h, piece.b, gamma, 1e-11, 1e-300) {
                Some(r) => rhs += r.value,
                None => return Err(Error::Divergent { site: DivergenceSite::Zero }),
            }
        } else {
            rhs += quad::integrate_log(h, piece.a, piece.b, 1e-11, 1e-300).value;
        }
    }
    let c = p / (p + p / f64::from(n) - 1.0);
    rhs *= c.powf(p);

    // Averaged side: smooth per piece, closed-form power tail beyond support.
    let h = |t: f64| (g.cum(t) / t).powf(p) * t.powf(w);
    let mut lhs = 0.0;
    let first = &g.pieces[0];
    if first.a == 0.0 {
        let gamma = if first.va > 0.0 { w } else { p + w };
        match quad::integrate_from_zero(h, first.b, gamma, 1e-11, 1e-300) {
            Some(r) => lhs += r.value,
            None => return Err(Error::Divergent { site: DivergenceSite::Zero }),
        }
    } else {
        lhs += quad::integrate_log(h, first.a, first.b, 1e-11, 1e-300).value;
    }
    for piece in g.pieces.iter().skip(1) {
        lhs += quad::integrate_log(h, piece.a, piece.b, 1e-11, 1e-300).value;
    }
    let m = g.total_mass();
    if m > 0.0 {
        let tail = power_integral(g.support_end(), f64::INFINITY, w - p)
            .expect("w - p < -1 always holds for p >= 1, n >= 1");
        lhs += m.powf(p) * tail;
    }

    Ok(rhs - lhs)
}

/// Seeded random step function supported away from zero, for property suites.
pub fn random_step_fn(seed: u64) -> StepFn {
    use rand::{Rng, SeedableRng};
    let mut rng =
        rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(17));
    let pieces = rng.gen_range(1usize..=8);
    let mut edges: Vec<f64> = (0..=pieces)
        .map(|_| 10f64.powf(rng.gen_range(-2.0..2.0)))
        .collect();
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-10);
    while edges.len() < 2 {
        let last = *edges.last().unwrap();
        edges.push(last * 2.0);
    }
    let values: Vec<f64> = (0..edges.len() - 1).map(|_| rng.gen_range(0.0..4.0)).collect();
    StepFn::from_steps(edges, values).expect("generated step function is valid")
}
