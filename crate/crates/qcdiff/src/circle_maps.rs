//! Circle diffeomorphisms represented by lifts, quasisymmetric quotients and
//! the one-dimensional constants attached to them.
//!
//! A lift is an increasing function h with h(x+1) = h(x) + 1. The explicit
//! family is a finite trigonometric series on top of the identity,
//!
//!   h(x) = x + shift + sum_k [a_k sin(2 pi k x) + b_k cos(2 pi k x)] / (2 pi k),
//!
//! so the derivative amplitudes are the stored coefficients:
//!
//!   h'(x) = 1 + sum_k [a_k cos(2 pi k x) - b_k sin(2 pi k x)].
//!
//! Composition and inversion leave this family, so composed/inverted lifts are
//! lazy evaluator wrappers carrying exact chain-rule derivatives.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::ScanGrid;

const TAU: f64 = 2.0 * PI;
const VALIDATION_SAMPLES: usize = 4096;
const ROOT_TOL: f64 = 1e-12;
const ROOT_ITER_CAP: usize = 200;

/// One harmonic of the explicit family. `sin_amp`/`cos_amp` are derivative
/// amplitudes: the contribution to h' is a cos(2 pi k x) - b sin(2 pi k x).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrigCoeff {
    pub freq: u32,
    pub sin_amp: f64,
    pub cos_amp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftKind {
    Explicit,
    Composed,
    Inverted,
}

#[derive(Debug, Clone)]
enum LiftRepr {
    Trig { shift: f64, coeffs: Vec<TrigCoeff> },
    Composed { outer: Arc<LiftFunction>, inner: Arc<LiftFunction> },
    Inverted { inner: Arc<LiftFunction> },
}

/// Lift of a circle diffeomorphism with an exact derivative evaluator.
#[derive(Debug, Clone)]
pub struct LiftFunction {
    repr: LiftRepr,
}

/// Builds the explicit trigonometric lift, validating monotonicity on a dense
/// grid with Lipschitz slack.
pub fn make_trig_diffeo(coeffs: Vec<TrigCoeff>, mean_shift: f64) -> Result<LiftFunction> {
    for c in &coeffs {
        if c.freq == 0 {
            return Err(Error::ConfigError("trig frequency must be >= 1".into()));
        }
    }
    let h = LiftFunction {
        repr: LiftRepr::Trig { shift: mean_shift, coeffs },
    };
    // h'' is bounded by L, so the true minimum of h' is at least the grid
    // minimum minus L * (half the grid step).
    let lip = h.second_deriv_bound();
    let step = 1.0 / VALIDATION_SAMPLES as f64;
    let mut min_d = f64::INFINITY;
    for i in 0..VALIDATION_SAMPLES {
        min_d = min_d.min(h.deriv(i as f64 * step));
    }
    let certified_min = min_d - lip * 0.5 * step;
    if certified_min <= 0.0 {
        return Err(Error::NotMonotone { min_deriv: certified_min });
    }
    Ok(h)
}

/// Identity lift h(x) = x.
pub fn identity_lift() -> LiftFunction {
    make_trig_diffeo(Vec::new(), 0.0).expect("identity is monotone")
}

/// Rotation lift h(x) = x + theta.
pub fn rotation_lift(theta: f64) -> LiftFunction {
    make_trig_diffeo(Vec::new(), theta).expect("rotation is monotone")
}

/// The one-harmonic family g_a with derivative 1 + a cos(2 pi x).
pub fn trig_family(a: f64) -> Result<LiftFunction> {
    make_trig_diffeo(
        vec![TrigCoeff { freq: 1, sin_amp: a, cos_amp: 0.0 }],
        0.0,
    )
}

/// g(h(x)) with the chain-rule derivative.
pub fn compose(g: &LiftFunction, h: &LiftFunction) -> LiftFunction {
    LiftFunction {
        repr: LiftRepr::Composed {
            outer: Arc::new(g.clone()),
            inner: Arc::new(h.clone()),
        },
    }
}

/// Inverse lift evaluated by bracketed monotone root finding.
pub fn invert(h: &LiftFunction) -> LiftFunction {
    LiftFunction {
        repr: LiftRepr::Inverted { inner: Arc::new(h.clone()) },
    }
}

impl LiftFunction {
    pub fn kind(&self) -> LiftKind {
        match self.repr {
            LiftRepr::Trig { .. } => LiftKind::Explicit,
            LiftRepr::Composed { .. } => LiftKind::Composed,
            LiftRepr::Inverted { .. } => LiftKind::Inverted,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.repr {
            LiftRepr::Trig { shift, coeffs } => {
                let mut v = x + shift;
                for c in coeffs {
                    let w = TAU * c.freq as f64;
                    v += (c.sin_amp * (w * x).sin() + c.cos_amp * (w * x).cos()) / w;
                }
                v
            }
            LiftRepr::Composed { outer, inner } => outer.eval(inner.eval(x)),
            LiftRepr::Inverted { inner } => {
                invert_eval(inner, x).expect("inverse lift evaluation failed")
            }
        }
    }

    pub fn deriv(&self, x: f64) -> f64 {
        match &self.repr {
            LiftRepr::Trig { coeffs, .. } => {
                let mut v = 1.0;
                for c in coeffs {
                    let w = TAU * c.freq as f64;
                    v += c.sin_amp * (w * x).cos() - c.cos_amp * (w * x).sin();
                }
                v
            }
            LiftRepr::Composed { outer, inner } => {
                outer.deriv(inner.eval(x)) * inner.deriv(x)
            }
            LiftRepr::Inverted { inner } => {
                let y = invert_eval(inner, x).expect("inverse lift evaluation failed");
                1.0 / inner.deriv(y)
            }
        }
    }

    /// h(x+t) - h(x) without cancellation for the explicit family: the
    /// identity part contributes t exactly and the harmonics use the
    /// difference identities. Falls back to a plain difference otherwise.
    pub fn eval_diff(&self, x: f64, t: f64) -> f64 {
        match &self.repr {
            LiftRepr::Trig { coeffs, .. } => {
                let mut v = t;
                for c in coeffs {
                    let w = TAU * c.freq as f64;
                    let half = 0.5 * w * t;
                    let mid = w * x + half;
                    v += 2.0 * half.sin() * (c.sin_amp * mid.cos() - c.cos_amp * mid.sin())
                        / w;
                }
                v
            }
            _ => self.eval(x + t) - self.eval(x),
        }
    }

    /// Displacement h(x) - x. For the explicit family the identity part is
    /// removed symbolically, so the result carries no cancellation error.
    pub fn disp(&self, x: f64) -> f64 {
        match &self.repr {
            LiftRepr::Trig { shift, coeffs } => {
                let mut v = *shift;
                for c in coeffs {
                    let w = TAU * c.freq as f64;
                    v += (c.sin_amp * (w * x).sin() + c.cos_amp * (w * x).cos()) / w;
                }
                v
            }
            _ => self.eval(x) - x,
        }
    }

    /// Integral of the displacement over [lo, hi] through per-harmonic
    /// difference identities (no endpoint cancellation); None for
    /// non-explicit lifts.
    pub fn disp_integral(&self, lo: f64, hi: f64) -> Option<f64> {
        match &self.repr {
            LiftRepr::Trig { shift, coeffs } => {
                let mut v = shift * (hi - lo);
                let m = 0.5 * (hi + lo);
                let d = 0.5 * (hi - lo);
                for c in coeffs {
                    let w = TAU * c.freq as f64;
                    v += 2.0
                        * (w * d).sin()
                        * (c.sin_amp * (w * m).sin() + c.cos_amp * (w * m).cos())
                        / (w * w);
                }
                Some(v)
            }
            _ => None,
        }
    }

    /// Antiderivative of h for the explicit family; None otherwise.
    pub fn antideriv(&self, x: f64) -> Option<f64> {
        match &self.repr {
            LiftRepr::Trig { shift, coeffs } => {
                let mut v = 0.5 * x * x + shift * x;
                for c in coeffs {
                    let w = TAU * c.freq as f64;
                    v += (-c.sin_amp * (w * x).cos() + c.cos_amp * (w * x).sin()) / (w * w);
                }
                Some(v)
            }
            _ => None,
        }
    }

    /// Upper bound on |h''| for the explicit family; crude fallback otherwise.
    fn second_deriv_bound(&self) -> f64 {
        match &self.repr {
            LiftRepr::Trig { coeffs, .. } => coeffs
                .iter()
                .map(|c| TAU * c.freq as f64 * (c.sin_amp.abs() + c.cos_amp.abs()))
                .sum(),
            _ => 0.0,
        }
    }

    /// Exact extrema of h' for the explicit family, refined by ternary search
    /// around the grid arg-extrema. Falls back to the grid values otherwise.
    pub fn deriv_range(&self) -> (f64, f64) {
        let n = VALIDATION_SAMPLES;
        let step = 1.0 / n as f64;
        let mut min_v = f64::INFINITY;
        let mut max_v = f64::NEG_INFINITY;
        let mut arg_min = 0.0;
        let mut arg_max = 0.0;
        for i in 0..n {
            let x = i as f64 * step;
            let d = self.deriv(x);
            if d < min_v {
                min_v = d;
                arg_min = x;
            }
            if d > max_v {
                max_v = d;
                arg_max = x;
            }
        }
        if self.kind() == LiftKind::Explicit {
            min_v = ternary_extremum(|x| self.deriv(x), arg_min - step, arg_min + step, false);
            max_v = ternary_extremum(|x| self.deriv(x), arg_max - step, arg_max + step, true);
        }
        (min_v, max_v)
    }
}

/// Solve inner(y) = target on a bracket, bisection then secant polish.
fn invert_eval(inner: &LiftFunction, target: f64) -> Result<f64> {
    let mut lo = target - 1.0;
    let mut hi = target + 1.0;
    let mut expand = 0;
    while inner.eval(lo) > target {
        lo -= 1.0;
        expand += 1;
        if expand > 64 {
            return Err(Error::ConvergenceFailure { iterations: expand, target });
        }
    }
    while inner.eval(hi) < target {
        hi += 1.0;
        expand += 1;
        if expand > 64 {
            return Err(Error::ConvergenceFailure { iterations: expand, target });
        }
    }
    let mut iterations = 0;
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if inner.eval(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    // Newton with bisection safeguard; the derivative is exact and positive.
    let mut x = 0.5 * (lo + hi);
    loop {
        let fx = inner.eval(x) - target;
        if fx.abs() < ROOT_TOL {
            return Ok(x);
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = fx / inner.deriv(x);
        let mut next = x - step;
        if !(lo..=hi).contains(&next) {
            next = 0.5 * (lo + hi);
        }
        x = next;
        iterations += 1;
        if iterations > ROOT_ITER_CAP {
            return Err(Error::ConvergenceFailure { iterations, target });
        }
    }
}

fn ternary_extremum(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, maximize: bool) -> f64 {
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        let (f1, f2) = (f(m1), f(m2));
        let keep_left = if maximize { f1 > f2 } else { f1 < f2 };
        if keep_left {
            hi = m2;
        } else {
            lo = m1;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    f(0.5 * (lo + hi))
}

/// Quasisymmetric quotient m_h(x, t) = (h(x+t) - h(x)) / (h(x) - h(x-t)).
pub fn qsq(h: &LiftFunction, x: f64, t: f64) -> f64 {
    -h.eval_diff(x, t) / h.eval_diff(x, -t)
}

/// Quasisymmetry constant and the Hoelder-weighted quotient deviation,
/// estimated over the grid.
#[derive(Debug, Clone, Serialize)]
pub struct QsConstants {
    pub m: f64,
    pub b_alpha: f64,
    pub alpha: f64,
    pub grid: ScanGrid,
}

/// M(g) and b_alpha(g) as grid maxima over x in [0,1), t in (0,1/2).
pub fn qs_constants(h: &LiftFunction, alpha: f64, grid: &ScanGrid) -> QsConstants {
    let mut m_sup = 1.0f64;
    let mut b_sup = 0.0f64;
    for &t in &grid.t_samples() {
        let ta = t.powf(alpha);
        for &x in &grid.x_samples() {
            let m = qsq(h, x, t);
            m_sup = m_sup.max(m).max(1.0 / m);
            b_sup = b_sup.max((m - 1.0).max(1.0 / m - 1.0) / ta);
        }
    }
    QsConstants { m: m_sup, b_alpha: b_sup, alpha, grid: grid.clone() }
}

/// sup_x max(m_h(x,t) - 1, m_h(x,t)^{-1} - 1) at a single scale t.
pub fn qs_gauge_at(h: &LiftFunction, t: f64, x_points: usize) -> f64 {
    let mut sup = 0.0f64;
    for i in 0..x_points {
        let x = i as f64 / x_points as f64;
        let m = qsq(h, x, t);
        sup = sup.max(m - 1.0).max(1.0 / m - 1.0);
    }
    sup
}

/// Measured symmetry gauge: the increasing envelope of the per-scale
/// quotient deviation. Evaluation rounds up to the next tabulated scale, so
/// the result is a valid increasing gauge dominating every scale below it.
#[derive(Debug, Clone)]
pub struct GaugeTable {
    ts: Vec<f64>,
    eps: Vec<f64>,
}

/// Tabulate the gauge over log-spaced scales in (0, 1/2].
pub fn measure_gauge(h: &LiftFunction, grid: &ScanGrid) -> GaugeTable {
    let ts = grid.t_samples();
    let mut eps = Vec::with_capacity(ts.len());
    let mut running = 0.0f64;
    for &t in &ts {
        running = running.max(qs_gauge_at(h, t, grid.x_points));
        eps.push(running);
    }
    GaugeTable { ts, eps }
}

impl GaugeTable {
    /// Envelope value at the smallest tabulated scale >= y.
    pub fn eval(&self, y: f64) -> f64 {
        match self.ts.iter().position(|&t| t >= y) {
            Some(i) => self.eps[i],
            None => *self.eps.last().expect("non-empty gauge table"),
        }
    }
}

/// Hoelder constants of the derivative and the C^{1+alpha} distance from the
/// identity.
#[derive(Debug, Clone, Serialize)]
pub struct HolderConstants {
    pub c_alpha: f64,
    pub p_one_plus_alpha: f64,
    pub alpha: f64,
    pub sup_deriv: f64,
    pub inf_deriv: f64,
    /// (t, I(t; h')) on dyadic t, nondecreasing in t.
    pub modulus_table: Vec<(f64, f64)>,
}

/// Grid estimates of c_alpha(g), p_{1+alpha}(g) and the modulus of
/// continuity of the derivative. Derivative extrema get analytic refinement
/// for the explicit family.
pub fn holder_constants(h: &LiftFunction, alpha: f64, grid: &ScanGrid) -> HolderConstants {
    let n = grid.x_points;
    let xs = grid.x_samples();
    let derivs: Vec<f64> = xs.iter().map(|&x| h.deriv(x)).collect();
    let h0 = h.eval(0.0);

    let mut sup_disp = 0.0f64;
    let mut sup_dd = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        sup_disp = sup_disp.max((h.eval(x) - h0 - x).abs());
        sup_dd = sup_dd.max((derivs[i] - 1.0).abs());
    }

    // Max derivative gap per periodic offset k/n; feeds both c_alpha and the
    // modulus table in one pass.
    let half = n / 2;
    let mut gap_by_offset = vec![0.0f64; half + 1];
    for k in 1..=half {
        let mut g = 0.0f64;
        for i in 0..n {
            g = g.max((derivs[i] - derivs[(i + k) % n]).abs());
        }
        gap_by_offset[k] = g;
    }
    let mut c_alpha = 0.0f64;
    for k in 1..=half {
        let d = k as f64 / n as f64;
        c_alpha = c_alpha.max(gap_by_offset[k] / d.powf(alpha));
    }

    let mut modulus_table: Vec<(f64, f64)> = Vec::new();
    let mut dyadic = grid.dyadic_t();
    dyadic.reverse(); // ascending t
    for t in dyadic {
        let k_max = ((t * n as f64).floor() as usize).min(half);
        let mut sup = 0.0f64;
        for k in 1..=k_max {
            sup = sup.max(gap_by_offset[k]);
        }
        modulus_table.push((t, sup));
    }

    let (inf_deriv, sup_deriv) = h.deriv_range();
    HolderConstants {
        c_alpha,
        p_one_plus_alpha: sup_disp + sup_dd + c_alpha,
        alpha,
        sup_deriv,
        inf_deriv,
        modulus_table,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g01() -> LiftFunction {
        trig_family(0.1).unwrap()
    }

    #[test]
    fn identity_lift_is_identity() {
        let id = identity_lift();
        for x in [-1.3, 0.0, 0.25, 0.9, 7.1] {
            assert!((id.eval(x) - x).abs() < 1e-15);
            assert!((id.deriv(x) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn trig_family_derivative_amplitude() {
        // a = 0.1 means h' = 1 + 0.1 cos(2 pi x), min 0.9
        let h = g01();
        assert!((h.deriv(0.0) - 1.1).abs() < 1e-15);
        assert!((h.deriv(0.5) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn non_monotone_family_is_rejected() {
        let err = trig_family(1.2).unwrap_err();
        assert!(matches!(err, Error::NotMonotone { .. }));
    }

    #[test]
    fn periodicity_invariant() {
        let h = g01();
        for x in [0.0, 0.123, 0.77, -2.4] {
            assert!((h.eval(x + 1.0) - h.eval(x) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn compose_with_identity_is_pointwise_equal() {
        let h = g01();
        let c = compose(&identity_lift(), &h);
        for i in 0..256 {
            let x = i as f64 / 256.0;
            assert!((c.eval(x) - h.eval(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn compose_fixed_point_at_zero() {
        let g = g01();
        let c = compose(&g, &g);
        // sin(0) = 0 so g(0) = 0 and g(g(0)) = 0
        assert!((c.eval(0.0)).abs() < 1e-15);
    }

    #[test]
    fn invert_rotation() {
        let r = rotation_lift(0.25);
        let inv = invert(&r);
        for x in [0.0, 0.3, 0.77] {
            assert!((inv.eval(x) - (x - 0.25)).abs() < 1e-12);
        }
    }

    #[test]
    fn invert_round_trip() {
        let g = g01();
        let inv = invert(&g);
        let y = g.eval(0.3);
        assert!((inv.eval(y) - 0.3).abs() < 1e-10);
        // sup-norm round trip over many samples
        let comp = compose(&g, &inv);
        let mut worst = 0.0f64;
        for i in 0..4096 {
            let x = i as f64 / 4096.0;
            worst = worst.max((comp.eval(x) - x).abs());
        }
        assert!(worst < 1e-10, "round-trip sup deviation {worst}");
    }

    #[test]
    fn qsq_identity_and_rotation_are_one() {
        let id = identity_lift();
        let r = rotation_lift(0.25);
        for (x, t) in [(0.1, 0.2), (0.7, 0.05), (0.0, 0.49)] {
            assert!((qsq(&id, x, t) - 1.0).abs() < 1e-14);
            assert!((qsq(&r, x, t) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn qsq_direct_formula() {
        let g = g01();
        let (x, t) = (0.1, 0.2);
        let expected =
            (g.eval(x + t) - g.eval(x)) / (g.eval(x) - g.eval(x - t));
        assert!((qsq(&g, x, t) - expected).abs() < 1e-15);
        assert!(expected > 0.0);
    }

    #[test]
    fn qs_constants_identity() {
        let grid = ScanGrid { x_points: 64, t_points: 16, ..Default::default() };
        let qc = qs_constants(&identity_lift(), 0.5, &grid);
        assert!((qc.m - 1.0).abs() < 1e-13);
        assert!(qc.b_alpha < 1e-12);
    }

    #[test]
    fn m_bounded_by_one_plus_b_alpha() {
        let grid = ScanGrid { x_points: 128, t_points: 32, ..Default::default() };
        for a in [0.05, 0.1, 0.2] {
            let g = trig_family(a).unwrap();
            let qc = qs_constants(&g, 0.5, &grid);
            // t < 1/2 so t^alpha < 1 and the bound holds on the shared grid
            assert!(qc.m <= 1.0 + qc.b_alpha + 1e-12);
        }
    }

    #[test]
    fn holder_constants_identity() {
        let grid = ScanGrid { x_points: 128, t_points: 16, ..Default::default() };
        let hc = holder_constants(&identity_lift(), 0.5, &grid);
        assert!(hc.c_alpha < 1e-14);
        assert!(hc.p_one_plus_alpha < 1e-13);
        assert!((hc.sup_deriv - 1.0).abs() < 1e-13);
        assert!((hc.inf_deriv - 1.0).abs() < 1e-13);
    }

    #[test]
    fn deriv_extrema_exact_for_trig_family() {
        let hc = holder_constants(&g01(), 0.5, &ScanGrid::default());
        assert!((hc.sup_deriv - 1.1).abs() < 1e-12, "sup {}", hc.sup_deriv);
        assert!((hc.inf_deriv - 0.9).abs() < 1e-12, "inf {}", hc.inf_deriv);
    }

    #[test]
    fn derivative_bound_inequality() {
        // 1 - c_a (1/2)^a <= h' <= 1 + c_a (1/2)^a on the same grid
        let alpha = 0.5;
        let hc = holder_constants(&g01(), alpha, &ScanGrid::default());
        let half_pow = 0.5f64.powf(alpha);
        assert!(1.0 - hc.c_alpha * half_pow <= hc.inf_deriv + 1e-9);
        assert!(hc.sup_deriv <= 1.0 + hc.c_alpha * half_pow + 1e-9);
    }

    #[test]
    fn b_alpha_vs_c_alpha_inequality() {
        let alpha = 0.5;
        let grid = ScanGrid::default();
        let g = g01();
        let qc = qs_constants(&g, alpha, &grid);
        let hc = holder_constants(&g, alpha, &grid);
        let denom = (1.0 - hc.c_alpha * 0.5f64.powf(alpha)).max(hc.inf_deriv);
        let bound = 2f64.powf(alpha) * hc.c_alpha / denom;
        assert!(
            qc.b_alpha <= bound + 1e-9,
            "b_alpha {} exceeds bound {}",
            qc.b_alpha,
            bound
        );
    }

    #[test]
    fn modulus_table_is_nondecreasing() {
        let hc = holder_constants(&g01(), 0.5, &ScanGrid::default());
        for w in hc.modulus_table.windows(2) {
            assert!(w[0].1 <= w[1].1 + 1e-15);
        }
    }

    #[test]
    fn sequence_continuity_of_p_constant() {
        // p(g_n o h_n) -> 0 and p(g_n^{-1}) -> 0 for a_n = 0.1 / 2^n
        let grid = ScanGrid { x_points: 256, t_points: 16, ..Default::default() };
        let mut prev_comp = f64::INFINITY;
        let mut prev_inv = f64::INFINITY;
        for n in 0..=10 {
            let a = 0.1 / 2f64.powi(n);
            let g = trig_family(a).unwrap();
            let comp = compose(&g, &g);
            let p_comp = holder_constants(&comp, 0.5, &grid).p_one_plus_alpha;
            let p_inv = holder_constants(&invert(&g), 0.5, &grid).p_one_plus_alpha;
            if n >= 1 {
                assert!(p_comp <= prev_comp + 1e-12);
                assert!(p_inv <= prev_inv + 1e-12);
            }
            prev_comp = p_comp;
            prev_inv = p_inv;
        }
        assert!(prev_comp < 1e-3);
        assert!(prev_inv < 1e-3);
    }

    #[test]
    fn gauge_table_is_increasing_envelope() {
        let g = g01();
        let tab = measure_gauge(&g, &ScanGrid { x_points: 128, t_points: 32, ..Default::default() });
        let mut prev = 0.0;
        for &t in &tab.ts {
            let e = tab.eval(t);
            assert!(e >= prev - 1e-15);
            prev = e;
        }
    }
}
