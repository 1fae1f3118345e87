//! Decreasing-rearrangement profiles and their one-dimensional functionals.
//!
//! A [`Profile`] is a nonincreasing, nonnegative, right-continuous function
//! on `(0, inf)` stored as ordered piecewise-analytic segments. On top of it
//! this module provides the Hardy transform `f**`, the oscillation norm
//! `(int (f** - f*)^p t^{-p/n} dt)^{1/p}`, the radial energy
//! `n omega_n^{1/n} (int s^{(n-1)p/n} |f*'|^p ds)^{1/p}` (which is the polar
//! integration value of the gradient norm of the radial extension), the
//! supremum deficit `sup_t (||f||_inf - f*(t)) t^{1/q}`, and the weighted
//! Hardy inequality margin that drives the whole sharp-constant story.

mod family;
mod hardy;

pub use family::{random_monotone_profile, ProfileFamily, ProfileSpec};
pub use hardy::{hardy_inequality_margin, StepFn};

use crate::constants::unit_ball_volume;
use crate::error::{DivergenceSite, Error, Result};
use crate::quad::{self, Decay};

const REL_TOL: f64 = 1e-11;
const ABS_TOL: f64 = 1e-300;

/// Value of an improper integral-backed functional: finite, or divergent
/// with the offending endpoint identified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Improper {
    Finite(f64),
    Divergent(DivergenceSite),
}

impl Improper {
    /// The numeric value, `+inf` when divergent.
    pub fn value(&self) -> f64 {
        match self {
            Improper::Finite(v) => *v,
            Improper::Divergent(_) => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Improper::Finite(_))
    }
}

/// Analytic descriptor of one profile segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentKind {
    /// `offset + coeff * t^exponent`
    AffinePower { offset: f64, coeff: f64, exponent: f64 },
    /// `offset + coeff * ln(t)`
    AffineLog { offset: f64, coeff: f64 },
    /// `offset + coeff * exp(-rate * t^exponent)`
    ExpPower { offset: f64, coeff: f64, rate: f64, exponent: f64 },
}

impl SegmentKind {
    pub fn constant(v: f64) -> Self {
        SegmentKind::AffinePower { offset: v, coeff: 0.0, exponent: 1.0 }
    }

    /// `a + b t` on the segment.
    pub fn linear(a: f64, b: f64) -> Self {
        SegmentKind::AffinePower { offset: a, coeff: b, exponent: 1.0 }
    }

    pub fn value(&self, t: f64) -> f64 {
        match *self {
            SegmentKind::AffinePower { offset, coeff, exponent } => {
                if coeff == 0.0 {
                    offset
                } else {
                    offset + coeff * t.powf(exponent)
                }
            }
            SegmentKind::AffineLog { offset, coeff } => offset + coeff * t.ln(),
            SegmentKind::ExpPower { offset, coeff, rate, exponent } => {
                offset + coeff * (-rate * t.powf(exponent)).exp()
            }
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            SegmentKind::AffinePower { coeff, exponent, .. } => {
                if coeff == 0.0 || exponent == 0.0 {
                    0.0
                } else {
                    coeff * exponent * t.powf(exponent - 1.0)
                }
            }
            SegmentKind::AffineLog { coeff, .. } => coeff / t,
            SegmentKind::ExpPower { coeff, rate, exponent, .. } => {
                -coeff * rate * exponent * t.powf(exponent - 1.0) * (-rate * t.powf(exponent)).exp()
            }
        }
    }

    /// Closed-form antiderivative where available.
    fn antiderivative(&self, t: f64) -> Option<f64> {
        match *self {
            SegmentKind::AffinePower { offset, coeff, exponent } => {
                if coeff == 0.0 {
                    Some(offset * t)
                } else if exponent == -1.0 {
                    Some(offset * t + coeff * t.ln())
                } else {
                    Some(offset * t + coeff * t.powf(exponent + 1.0) / (exponent + 1.0))
                }
            }
            SegmentKind::AffineLog { offset, coeff } => Some(offset * t + coeff * (t * t.ln() - t)),
            SegmentKind::ExpPower { offset, coeff, rate, exponent } => {
                if exponent == 1.0 {
                    Some(offset * t - coeff / rate * (-rate * t).exp())
                } else {
                    None
                }
            }
        }
    }

    fn limit_at_zero(&self) -> f64 {
        match *self {
            SegmentKind::AffinePower { offset, coeff, exponent } => {
                if coeff == 0.0 || exponent > 0.0 {
                    offset
                } else if exponent == 0.0 {
                    offset + coeff
                } else if coeff > 0.0 {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                }
            }
            SegmentKind::AffineLog { offset, coeff } => {
                if coeff == 0.0 {
                    offset
                } else if coeff < 0.0 {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                }
            }
            SegmentKind::ExpPower { offset, coeff, .. } => offset + coeff,
        }
    }

    /// Whether the value is integrable on `(0, b]` when this is the
    /// first segment.
    fn integrable_from_zero(&self) -> bool {
        match *self {
            SegmentKind::AffinePower { coeff, exponent, .. } => coeff == 0.0 || exponent > -1.0,
            SegmentKind::AffineLog { .. } => true,
            SegmentKind::ExpPower { .. } => true,
        }
    }

    /// Power exponent of `f** - f*` as `t -> 0+` on a first segment.
    /// `None` means the deviation vanishes identically (constant segment).
    fn dev_exponent_zero(&self) -> Option<f64> {
        match *self {
            SegmentKind::AffinePower { coeff, exponent, .. } => {
                if coeff == 0.0 || exponent == 0.0 {
                    None
                } else {
                    Some(exponent)
                }
            }
            SegmentKind::AffineLog { coeff, .. } => {
                if coeff == 0.0 {
                    None
                } else {
                    Some(0.0)
                }
            }
            SegmentKind::ExpPower { coeff, rate, exponent, .. } => {
                if coeff == 0.0 || rate == 0.0 {
                    None
                } else {
                    Some(exponent)
                }
            }
        }
    }

    /// Power exponent of `|f*'|` as `t -> 0+`; `None` if the derivative
    /// vanishes identically.
    fn deriv_exponent_zero(&self) -> Option<f64> {
        match *self {
            SegmentKind::AffinePower { coeff, exponent, .. } => {
                if coeff == 0.0 || exponent == 0.0 {
                    None
                } else {
                    Some(exponent - 1.0)
                }
            }
            SegmentKind::AffineLog { coeff, .. } => {
                if coeff == 0.0 {
                    None
                } else {
                    Some(-1.0)
                }
            }
            SegmentKind::ExpPower { coeff, rate, exponent, .. } => {
                if coeff == 0.0 || rate == 0.0 {
                    None
                } else {
                    Some(exponent - 1.0)
                }
            }
        }
    }

    fn is_constant(&self) -> bool {
        match *self {
            SegmentKind::AffinePower { coeff, exponent, .. } => coeff == 0.0 || exponent == 0.0,
            SegmentKind::AffineLog { coeff, .. } => coeff == 0.0,
            SegmentKind::ExpPower { coeff, rate, .. } => coeff == 0.0 || rate == 0.0,
        }
    }

    /// Characteristic scale where the segment's shape lives, used to split
    /// a single unbounded segment into head + tail regions.
    fn scale(&self) -> f64 {
        match *self {
            SegmentKind::ExpPower { rate, exponent, .. } if rate > 0.0 => {
                (1.0 / rate).powf(1.0 / exponent)
            }
            _ => 1.0,
        }
    }
}

/// One piece of a profile on `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub kind: SegmentKind,
}

impl Segment {
    pub fn new(start: f64, end: f64, kind: SegmentKind) -> Self {
        Segment { start, end, kind }
    }
}

/// A nonincreasing right-continuous profile on `(0, inf)`, zero beyond
/// its last segment.
#[derive(Debug, Clone)]
pub struct Profile {
    segments: Vec<Segment>,
    /// Prefix integrals: `cum[i] = int_0^{segments[i].start} f*`.
    cum: Vec<f64>,
    total_mass: f64,
    support_bound: f64,
    sup_value: f64,
    integrable_at_zero: bool,
    max_jump: f64,
}

impl Profile {
    pub fn from_segments(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidParameter("profile needs at least one segment".into()));
        }
        if segments[0].start != 0.0 {
            return Err(Error::InvalidParameter("first segment must start at t = 0".into()));
        }
        for w in segments.windows(2) {
            if w[0].end != w[1].start {
                return Err(Error::InvalidParameter(format!(
                    "segments must be contiguous: gap between {} and {}",
                    w[0].end, w[1].start
                )));
            }
        }
        for s in &segments {
            if !(s.end > s.start) {
                return Err(Error::InvalidParameter("segment must have positive length".into()));
            }
        }

        // Trim trailing identically-zero segments; support ends where they begin.
        let mut segments = segments;
        while segments.len() > 1 {
            let last = segments.last().unwrap();
            if last.kind.is_constant() && last.kind.value(last.start.max(1.0)) == 0.0 {
                segments.pop();
            } else {
                break;
            }
        }

        let sup_value = segments[0].kind.limit_at_zero();
        if sup_value < 0.0 {
            return Err(Error::NotMonotone(0.0));
        }
        let integrable_at_zero = segments[0].kind.integrable_from_zero();

        // Monotonicity / nonnegativity spot checks across all segments.
        let mut last_v = sup_value;
        let slack = 1e-9 * (1.0 + if sup_value.is_finite() { sup_value } else { 0.0 });
        for seg in &segments {
            let hi = if seg.end.is_finite() { seg.end } else { seg.start.max(seg.kind.scale()) * 1e6 };
            let lo = if seg.start > 0.0 { seg.start } else { hi * 1e-9 };
            for k in 0..=8 {
                let t = lo * (hi / lo).powf(f64::from(k) / 8.0);
                let v = seg.kind.value(t);
                if v < -slack {
                    return Err(Error::NotMonotone(t));
                }
                if v > last_v + slack {
                    return Err(Error::NotMonotone(t));
                }
                last_v = v;
            }
        }

        // Jumps at internal boundaries and at a finite support end.
        let mut max_jump = 0.0f64;
        for w in segments.windows(2) {
            let t = w[0].end;
            let left = w[0].kind.value(t);
            let right = w[1].kind.value(t);
            max_jump = max_jump.max((left - right).abs());
        }
        let support_bound = segments.last().unwrap().end;
        if support_bound.is_finite() {
            let left = segments.last().unwrap().kind.value(support_bound);
            max_jump = max_jump.max(left.abs());
        }

        // Prefix integrals of f*.
        let mut cum = Vec::with_capacity(segments.len());
        let mut acc = 0.0f64;
        for seg in &segments {
            cum.push(acc);
            if !seg.end.is_finite() {
                break;
            }
            acc += segment_mass(seg, integrable_at_zero);
        }
        let total_mass = if !integrable_at_zero {
            f64::INFINITY
        } else if segments.last().unwrap().end.is_finite() {
            acc
        } else {
            let last = segments.last().unwrap();
            acc + unbounded_mass(last)
        };

        Ok(Profile {
            segments,
            cum,
            total_mass,
            support_bound,
            sup_value,
            integrable_at_zero,
            max_jump,
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Measure of the support (may be `+inf`).
    pub fn support_bound(&self) -> f64 {
        self.support_bound
    }

    /// `f*(0+)`, i.e. the essential supremum (may be `+inf`).
    pub fn sup_value(&self) -> f64 {
        self.sup_value
    }

    /// Total mass `int_0^inf f*` (may be `+inf`).
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Largest jump across segment boundaries (including the support end).
    pub fn max_jump(&self) -> f64 {
        self.max_jump
    }

    pub fn has_jump(&self) -> bool {
        self.max_jump > 1e-9 * (1.0 + if self.sup_value.is_finite() { self.sup_value } else { 1.0 })
    }

    fn segment_index(&self, t: f64) -> Option<usize> {
        if t >= self.support_bound {
            return None;
        }
        let idx = self.segments.partition_point(|s| s.start <= t);
        if idx == 0 {
            None
        } else {
            Some(idx - 1)
        }
    }

    /// `f*(t)`; zero beyond the support, right-continuous at boundaries.
    pub fn value(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return if self.sup_value.is_finite() { self.sup_value } else { f64::INFINITY };
        }
        match self.segment_index(t) {
            Some(i) => self.segments[i].kind.value(t).max(0.0),
            None => 0.0,
        }
    }

    /// `f*'(t)` where defined (zero beyond the support; one-sided limits at
    /// boundaries are taken from the right).
    pub fn derivative(&self, t: f64) -> f64 {
        match self.segment_index(t) {
            Some(i) => self.segments[i].kind.derivative(t),
            None => 0.0,
        }
    }

    /// `int_0^t f*`; requires the profile to be integrable at zero.
    fn cum_to(&self, t: f64) -> f64 {
        match self.segment_index(t) {
            Some(i) => {
                let seg = &self.segments[i];
                self.cum[i] + partial_mass(seg, t)
            }
            None => self.total_mass,
        }
    }

    /// The Hardy transform `f**(t) = (1/t) int_0^t f*(s) ds`.
    ///
    /// Errors when `f*` is non-integrable at 0 (exponent below -1), in which
    /// case `f**` is identically `+inf`.
    pub fn hardy_transform(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter("hardy transform needs t > 0".into()));
        }
        if !self.integrable_at_zero {
            return Err(Error::Divergent { site: DivergenceSite::Zero });
        }
        Ok(self.cum_to(t) / t)
    }

    /// `f**(t) - f*(t)`, clamped to be nonnegative.
    fn deviation(&self, t: f64) -> f64 {
        (self.cum_to(t) / t - self.value(t)).max(0.0)
    }

    /// The oscillation norm `(int_0^inf (f** - f*)^p t^{-p/n} dt)^{1/p}`.
    ///
    /// Divergence is reported with the offending endpoint.
    pub fn ainfp_norm(&self, p: f64, n: u32) -> Improper {
        assert!(p >= 1.0 && n >= 1);
        if !self.integrable_at_zero {
            return Improper::Divergent(DivergenceSite::Zero);
        }
        let w = -p / f64::from(n);
        let mut total = 0.0f64;

        for (i, seg) in self.segments.iter().enumerate() {
            // Constant head: f** == f* exactly until the first drop, and on
            // any later constant piece the deviation is excess-mass / t.
            if seg.kind.is_constant() {
                let v = seg.kind.value(seg.start.max(seg.kind.scale()));
                let excess = self.cum[i] - v * seg.start;
                if excess.abs() < 1e-300 {
                    continue; // leading plateau: deviation identically zero
                }
                // (excess / t)^p t^{w} integrated in closed form
                let hi = if seg.end.is_finite() { seg.end } else { f64::INFINITY };
                match power_integral(seg.start, hi, w - p) {
                    Some(v2) => {
                        total += excess.powf(p) * v2;
                        continue;
                    }
                    None => return Improper::Divergent(DivergenceSite::Infinity),
                }
            }

            let h = |t: f64| self.deviation(t).powf(p) * t.powf(w);

            if seg.start == 0.0 {
                let dev_exp = match seg.kind.dev_exponent_zero() {
                    Some(e) => e,
                    None => unreachable!("constant segments handled above"),
                };
                let gamma = p * dev_exp + w;
                let split = if seg.end.is_finite() { seg.end } else { seg.kind.scale() };
                match quad::integrate_from_zero(h, split, gamma, REL_TOL, ABS_TOL) {
                    Some(r) => total += r.value,
                    None => return Improper::Divergent(DivergenceSite::Zero),
                }
                if seg.end.is_finite() {
                    continue;
                }
                // Single unbounded segment: fall through to the tail below
                // starting from the split point.
                match self.ainfp_tail(seg, split, p, w, h) {
                    Some(v) => {
                        total += v;
                        continue;
                    }
                    None => return Improper::Divergent(DivergenceSite::Infinity),
                }
            }

            if seg.end.is_finite() {
                total += quad::integrate_log(h, seg.start, seg.end, REL_TOL, ABS_TOL).value;
            } else {
                match self.ainfp_tail(seg, seg.start, p, w, h) {
                    Some(v) => total += v,
                    None => return Improper::Divergent(DivergenceSite::Infinity),
                }
            }
        }

        // Beyond a finite support the deviation is exactly M / t.
        if self.support_bound.is_finite() && self.total_mass > 0.0 {
            let b = p + p / f64::from(n) - 1.0;
            total += self.total_mass.powf(p) * self.support_bound.powf(-b) / b;
        }

        Improper::Finite(total.powf(1.0 / p))
    }

    fn ainfp_tail<F: Fn(f64) -> f64>(
        &self,
        seg: &Segment,
        from: f64,
        p: f64,
        w: f64,
        h: F,
    ) -> Option<f64> {
        // Deviation decay at infinity on an unbounded terminal segment:
        // power kinds with exponent in (-1, 0) keep their exponent, faster
        // decay (or finite excess mass) behaves like 1/t.
        let dev_exp = match seg.kind {
            SegmentKind::AffinePower { coeff, exponent, .. } if coeff != 0.0 && exponent > -1.0 && exponent < 0.0 => exponent,
            _ => -1.0,
        };
        let gamma = p * dev_exp + w;
        quad::integrate_to_inf(h, from, Decay::Power { gamma }, REL_TOL, ABS_TOL).map(|r| r.value)
    }

    /// The radial one-dimensional energy
    /// `n omega_n^{1/n} (int_0^inf s^{(n-1)p/n} |f*'(s)|^p ds)^{1/p}`,
    /// equal to the gradient p-norm of the radial extension `f°`.
    ///
    /// Profiles with jump discontinuities are outside the Sobolev class and
    /// report divergence at the jump.
    pub fn radial_energy(&self, p: f64, n: u32) -> Improper {
        assert!(p >= 1.0 && n >= 1);
        if self.has_jump() {
            return Improper::Divergent(DivergenceSite::Jump);
        }
        let nf = f64::from(n);
        let w = (nf - 1.0) * p / nf;
        let mut total = 0.0f64;

        for seg in &self.segments {
            match seg.kind {
                SegmentKind::AffinePower { coeff, exponent, .. } => {
                    if coeff == 0.0 || exponent == 0.0 {
                        continue;
                    }
                    // |c e|^p s^{(e-1)p + w} in closed form
                    let beta = (exponent - 1.0) * p + w;
                    match power_integral(seg.start, seg.end, beta) {
                        Some(v) => total += (coeff * exponent).abs().powf(p) * v,
                        None => {
                            let site = if seg.start == 0.0 && beta <= -1.0 {
                                DivergenceSite::Zero
                            } else {
                                DivergenceSite::Infinity
                            };
                            return Improper::Divergent(site);
                        }
                    }
                }
                SegmentKind::AffineLog { coeff, .. } => {
                    if coeff == 0.0 {
                        continue;
                    }
                    let beta = w - p;
                    match power_integral(seg.start, seg.end, beta) {
                        Some(v) => total += coeff.abs().powf(p) * v,
                        None => {
                            let site = if seg.start == 0.0 {
                                DivergenceSite::Zero
                            } else {
                                DivergenceSite::Infinity
                            };
                            return Improper::Divergent(site);
                        }
                    }
                }
                SegmentKind::ExpPower { coeff, rate, exponent, .. } => {
                    if coeff == 0.0 || rate == 0.0 {
                        continue;
                    }
                    let h = |s: f64| s.powf(w) * seg.kind.derivative(s).abs().powf(p);
                    let gamma0 = w + (exponent - 1.0) * p;
                    if seg.start == 0.0 {
                        if gamma0 <= -1.0 + 1e-12 {
                            return Improper::Divergent(DivergenceSite::Zero);
                        }
                        let split = if seg.end.is_finite() { seg.end } else { seg.kind.scale() };
                        total += quad::integrate_from_zero(h, split, gamma0, REL_TOL, ABS_TOL)
                            .expect("checked exponent")
                            .value;
                        if !seg.end.is_finite() {
                            let decay = Decay::StretchedExp { lambda: p * rate, alpha: exponent };
                            total += quad::integrate_to_inf(h, split, decay, REL_TOL, ABS_TOL)
                                .expect("stretched-exp tail")
                                .value;
                        }
                    } else if seg.end.is_finite() {
                        total += quad::integrate_log(h, seg.start, seg.end, REL_TOL, ABS_TOL).value;
                    } else {
                        let decay = Decay::StretchedExp { lambda: p * rate, alpha: exponent };
                        total += quad::integrate_to_inf(h, seg.start, decay, REL_TOL, ABS_TOL)
                            .expect("stretched-exp tail")
                            .value;
                    }
                }
            }
        }

        let scale = nf * unit_ball_volume(n).powf(1.0 / nf);
        Improper::Finite(scale * total.powf(1.0 / p))
    }

    /// `sup_{t>0} (||f||_inf - f*(t)) t^{1/q}`.
    ///
    /// Probes 400 log-spaced points over `[1e-8 s0, 1e8 s0]` (`s0` = support
    /// scale) and refines the best bracket by golden section; ties resolve
    /// to the smallest `t`.
    pub fn sup_deficit(&self, q: f64) -> Improper {
        assert!(q != 0.0, "sup deficit needs q != 0");
        if !self.sup_value.is_finite() {
            return Improper::Divergent(DivergenceSite::Zero);
        }
        if self.sup_value == 0.0 {
            return Improper::Finite(0.0);
        }
        let constant_profile =
            self.segments.len() == 1 && self.segments[0].kind.is_constant() && !self.support_bound.is_finite();
        if constant_profile {
            return Improper::Finite(0.0);
        }
        if q.is_finite() && q > 0.0 {
            // (sup - f*(t)) -> sup > 0 while t^{1/q} -> inf.
            return Improper::Divergent(DivergenceSite::Infinity);
        }
        let inv_q = 1.0 / q;
        let d = |t: f64| (self.sup_value - self.value(t)).max(0.0) * t.powf(inv_q);

        let s0 = if self.support_bound.is_finite() { self.support_bound } else { 1.0 };
        let (lo, hi) = (1e-8 * s0, 1e8 * s0);
        let m = 400usize;
        let mut best_k = 0usize;
        let mut best = f64::NEG_INFINITY;
        for k in 0..m {
            let t = lo * (hi / lo).powf(k as f64 / (m - 1) as f64);
            let v = d(t);
            if v > best {
                best = v;
                best_k = k;
            }
        }
        let step = (hi / lo).powf(1.0 / (m - 1) as f64);
        let t_best = lo * step.powi(best_k as i32);
        let bra_lo = (t_best / step).max(lo);
        let bra_hi = (t_best * step).min(hi);
        let (_, refined) = quad::golden_max(d, bra_lo, bra_hi, 80);
        Improper::Finite(best.max(refined))
    }
}

/// Mass of one segment, `int_{start}^{end} f*` (finite end).
fn segment_mass(seg: &Segment, integrable_at_zero: bool) -> f64 {
    if seg.start == 0.0 && !integrable_at_zero {
        return f64::INFINITY;
    }
    match (seg.kind.antiderivative(seg.end), seg.kind.antiderivative(seg.start)) {
        (Some(hi), Some(lo)) => {
            if seg.start == 0.0 {
                // Antiderivative limits at zero: t ln t -> 0 and powers with
                // exponent > -1 vanish, so evaluating at 0 is safe except for
                // the ln term of exponent = -1 (excluded by integrability).
                hi - seg.kind.antiderivative_at_zero()
            } else {
                hi - lo
            }
        }
        _ => {
            if seg.start == 0.0 {
                quad::integrate(|t| seg.kind.value(t), 0.0, seg.end, REL_TOL, ABS_TOL).value
            } else {
                quad::integrate_log(|t| seg.kind.value(t), seg.start, seg.end, REL_TOL, ABS_TOL).value
            }
        }
    }
}

impl SegmentKind {
    /// Limit of the closed-form antiderivative at `t -> 0+` (on integrable kinds).
    fn antiderivative_at_zero(&self) -> f64 {
        match *self {
            SegmentKind::AffinePower { .. } => 0.0,
            SegmentKind::AffineLog { .. } => 0.0,
            SegmentKind::ExpPower { coeff, rate, exponent, .. } => {
                if exponent == 1.0 {
                    -coeff / rate
                } else {
                    0.0
                }
            }
        }
    }
}

/// Partial mass `int_{start}^{t} f*` within one segment.
fn partial_mass(seg: &Segment, t: f64) -> f64 {
    match (seg.kind.antiderivative(t), seg.kind.antiderivative(seg.start)) {
        (Some(hi), Some(lo)) => {
            if seg.start == 0.0 {
                hi - seg.kind.antiderivative_at_zero()
            } else {
                hi - lo
            }
        }
        _ => {
            if seg.start == 0.0 {
                quad::integrate(|s| seg.kind.value(s), 0.0, t, REL_TOL, ABS_TOL).value
            } else if t > seg.start {
                quad::integrate_log(|s| seg.kind.value(s), seg.start, t, REL_TOL, ABS_TOL).value
            } else {
                0.0
            }
        }
    }
}

/// Mass of an unbounded terminal segment beyond its start (may be `+inf`).
fn unbounded_mass(seg: &Segment) -> f64 {
    match seg.kind {
        SegmentKind::AffinePower { offset, coeff, exponent } => {
            if offset != 0.0 {
                return f64::INFINITY;
            }
            if coeff == 0.0 {
                return 0.0;
            }
            if exponent >= -1.0 {
                return f64::INFINITY;
            }
            -coeff * seg.start.powf(exponent + 1.0) / (exponent + 1.0)
        }
        SegmentKind::AffineLog { offset, coeff } => {
            if offset == 0.0 && coeff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        }
        SegmentKind::ExpPower { offset, coeff, rate, exponent } => {
            if offset != 0.0 {
                return f64::INFINITY;
            }
            if coeff == 0.0 || rate == 0.0 {
                return 0.0;
            }
            let from = if seg.start > 0.0 { seg.start } else { seg.kind.scale() * 1e-6 };
            let tail = quad::integrate_to_inf(
                |t| seg.kind.value(t),
                from,
                Decay::StretchedExp { lambda: rate, alpha: exponent },
                REL_TOL,
                ABS_TOL,
            )
            .map(|r| r.value)
            .unwrap_or(f64::INFINITY);
            let head = if seg.start == 0.0 {
                quad::integrate(|t| seg.kind.value(t), 0.0, from, REL_TOL, ABS_TOL).value
            } else {
                0.0
            };
            head + tail
        }
    }
}

/// Integral of `s^beta` over `[a, b]`, stable near `beta = -1`;
/// `None` when divergent. Accepts `a = 0` and `b = +inf`.
pub(crate) fn power_integral(a: f64, b: f64, beta: f64) -> Option<f64> {
    debug_assert!(a >= 0.0 && b > a);
    if a == 0.0 {
        if beta <= -1.0 + 1e-14 {
            return None;
        }
        if b.is_infinite() {
            return None;
        }
        return Some(b.powf(beta + 1.0) / (beta + 1.0));
    }
    if b.is_infinite() {
        if beta >= -1.0 - 1e-14 {
            return None;
        }
        return Some(-a.powf(beta + 1.0) / (beta + 1.0));
    }
    let bp1 = beta + 1.0;
    let l = (b / a).ln();
    if bp1 == 0.0 {
        return Some(l);
    }
    Some(a.powf(bp1) * (bp1 * l).exp_m1() / bp1)
}
