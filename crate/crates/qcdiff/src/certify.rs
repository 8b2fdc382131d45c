//! Explicit constants and certified inequalities as checkable predicates:
//! the divergent recurrence behind the decay theorem, the annular
//! decomposition bound for the pre-Schwarzian, Koebe/Mori distortion bounds,
//! the cross-ratio distortion predicate and the integral representation bound
//! for the Schwarzian.

use num_complex::Complex64 as C;
use rayon::prelude::*;
use serde::Serialize;

use crate::beltrami::{rho_exterior, BeltramiField, ExactQcMap, RadialMap};
use crate::error::{Error, Result};

/// One certified inequality with its margin. `margin >= -tolerance` is the
/// pass condition regardless of the direction of the inequality.
#[derive(Debug, Clone, Serialize)]
pub struct CertBound {
    pub name: String,
    pub inputs: String,
    pub bound_value: f64,
    pub measured_value: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CertBound {
    /// measured <= bound.
    pub fn upper(name: &str, inputs: String, bound: f64, measured: f64, tol: f64) -> Self {
        let margin = bound - measured;
        CertBound {
            name: name.into(),
            inputs,
            bound_value: bound,
            measured_value: measured,
            margin,
            tolerance: tol,
            pass: margin >= -tol,
        }
    }

    /// measured >= bound.
    pub fn lower(name: &str, inputs: String, bound: f64, measured: f64, tol: f64) -> Self {
        let margin = measured - bound;
        CertBound {
            name: name.into(),
            inputs,
            bound_value: bound,
            measured_value: measured,
            margin,
            tolerance: tol,
            pass: margin >= -tol,
        }
    }
}

/// lambda threshold (1/2)^{(1-a)^2 / (1+a+a^2)} and the midpoint choice.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LambdaChoice {
    pub alpha: f64,
    pub threshold: f64,
    pub lambda: f64,
}

pub fn choose_lambda(alpha: f64) -> LambdaChoice {
    assert!(alpha > 0.0 && alpha < 1.0);
    let threshold = 0.5f64.powf((1.0 - alpha).powi(2) / (1.0 + alpha + alpha * alpha));
    LambdaChoice { alpha, threshold, lambda: 0.5 * (threshold + 1.0) }
}

/// Trace of s_n = lambda^{n/alpha} (1 + s_{n-1})^{1/alpha}, s_0 = 1, kept in
/// log space so divergence past f64 range is still observable.
#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceTrace {
    pub alpha: f64,
    pub lambda: f64,
    /// ln s_n for n = 0..=n_max.
    pub log_s: Vec<f64>,
    pub strictly_increasing: bool,
    /// increasing and s_{n_max} > 1e6.
    pub diverged: bool,
}

pub fn recurrence(alpha: f64, lambda: f64, n_max: usize) -> RecurrenceTrace {
    // In the divergent regime ln s_n grows geometrically; saturate well past
    // any threshold of interest so the trace stays finite (and serializable)
    // for arbitrary n_max.
    const SATURATION: f64 = 1e15;
    let ln_lambda = lambda.ln();
    let mut log_s = Vec::with_capacity(n_max + 1);
    log_s.push(0.0f64); // s_0 = 1
    let mut increasing = true;
    for n in 1..=n_max {
        let prev = log_s[n - 1];
        if prev >= SATURATION {
            log_s.push(SATURATION);
            continue;
        }
        // ln(1 + s_{n-1}) without overflow
        let ln1p = if prev > 30.0 {
            prev + (-prev).exp()
        } else {
            prev.exp().ln_1p()
        };
        let cur = ((n as f64 * ln_lambda + ln1p) / alpha).min(SATURATION);
        if cur <= prev {
            increasing = false;
        }
        log_s.push(cur);
    }
    let diverged = increasing && *log_s.last().unwrap() > 1e6f64.ln();
    RecurrenceTrace {
        alpha,
        lambda,
        log_s,
        strictly_increasing: increasing,
        diverged,
    }
}

impl RecurrenceTrace {
    pub fn s(&self, n: usize) -> f64 {
        self.log_s[n].exp()
    }

    /// First n with tau * s_{n+1} >= 1, if any.
    pub fn threshold_index(&self, tau: f64) -> Option<usize> {
        let target = -tau.ln();
        (0..self.log_s.len() - 1).find(|&n| self.log_s[n + 1] >= target)
    }
}

/// Certified upper bound 12 sum k_n r_n / (|z|^2 - r_n^2) for the
/// pre-Schwarzian of the exterior conformal restriction, given an annular
/// partition 1 = r_{-1} > r_0 > ... > r_{N+1} = 0 and the per-annulus sup
/// k_n of |mu| on {r_{n+1} <= |w| < r_n}.
pub fn decomposition_bound(radii: &[f64], k_list: &[f64], z: C) -> Result<f64> {
    if radii.len() < 2 || radii[0] != 1.0 || *radii.last().unwrap() != 0.0 {
        return Err(Error::BadPartition(
            "radii must run from 1 down to 0".into(),
        ));
    }
    for w in radii.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::BadPartition(format!("{} !> {}", w[0], w[1])));
        }
    }
    if k_list.len() != radii.len() - 1 {
        return Err(Error::BadPartition(format!(
            "need one k per annulus: {} radii, {} k",
            radii.len(),
            k_list.len()
        )));
    }
    let r2 = z.norm_sqr();
    if r2 <= 1.0 {
        return Err(Error::DomainError {
            point: format!("{z}"),
            reason: "bound applies on the exterior disk".into(),
        });
    }
    for &k in k_list {
        if !(0.0..1.0).contains(&k) {
            return Err(Error::BadPartition(format!("k = {k} outside [0, 1)")));
        }
    }
    Ok(12.0
        * radii[..radii.len() - 1]
            .iter()
            .zip(k_list)
            .map(|(&r, &k)| k * r / (r2 - r * r))
            .sum::<f64>())
}

/// C(alpha) ell 2 t^alpha / (t + 2) with C = 6 / (1 - lambda(alpha)).
pub fn theorem_decay_bound(ell: f64, alpha: f64, t: f64) -> f64 {
    let c = 6.0 / (1.0 - choose_lambda(alpha).lambda);
    c * ell * 2.0 * t.powf(alpha) / (t + 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistortionKind {
    Koebe,
    Mori,
    MoriAlpha,
    CrossRatio,
    AzIntegral,
}

impl DistortionKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "koebe" => Ok(DistortionKind::Koebe),
            "mori" => Ok(DistortionKind::Mori),
            "mori_alpha" => Ok(DistortionKind::MoriAlpha),
            "crossratio" => Ok(DistortionKind::CrossRatio),
            "az_integral" => Ok(DistortionKind::AzIntegral),
            other => Err(Error::UnsupportedKind(other.into())),
        }
    }
}

/// Koebe distortion: growth and derivative bounds for a conformal map of
/// the disk, four CertBounds per sample point.
pub fn koebe_checks(
    f: &dyn Fn(C) -> C,
    df: &dyn Fn(C) -> C,
    points: &[C],
    tol: f64,
) -> Vec<CertBound> {
    let f0 = f(C::new(0.0, 0.0));
    let d0 = df(C::new(0.0, 0.0)).norm();
    let mut out = Vec::new();
    for &z in points {
        let r = z.norm();
        let growth = (f(z) - f0).norm();
        let deriv = df(z).norm();
        let inputs = format!("z={z}");
        out.push(CertBound::upper(
            "koebe_growth_upper",
            inputs.clone(),
            d0 * r / (1.0 - r).powi(2),
            growth,
            tol,
        ));
        out.push(CertBound::lower(
            "koebe_growth_lower",
            inputs.clone(),
            d0 * r / (1.0 + r).powi(2),
            growth,
            tol,
        ));
        out.push(CertBound::upper(
            "koebe_deriv_upper",
            inputs.clone(),
            d0 * (1.0 + r) / (1.0 - r).powi(3),
            deriv,
            tol,
        ));
        out.push(CertBound::lower(
            "koebe_deriv_lower",
            inputs,
            d0 * (1.0 - r) / (1.0 + r).powi(3),
            deriv,
            tol,
        ));
    }
    out
}

/// Mori power bounds (1/16)(1-r)^K <= 1 - |f(z)| <= 16 (1-r)^{1/K} for a
/// radial stretch, two CertBounds per radius.
pub fn mori_checks(map: &RadialMap, radii: &[f64], tol: f64) -> Result<Vec<CertBound>> {
    let k = map.profile().sup_abs();
    let big_k = (1.0 + k) / (1.0 - k);
    let mut out = Vec::new();
    for &r in radii {
        let fr = map.radius_map(r)?;
        let gap = 1.0 - r;
        let inputs = format!("r={r}");
        out.push(CertBound::upper(
            "mori_upper",
            inputs.clone(),
            16.0 * gap.powf(1.0 / big_k),
            1.0 - fr,
            tol,
        ));
        out.push(CertBound::lower(
            "mori_lower",
            inputs,
            gap.powf(big_k) / 16.0,
            1.0 - fr,
            tol,
        ));
    }
    Ok(out)
}

/// Band of the boundary distortion ratio (1 - |f(z)|) / (1 - |z|) over the
/// given collar widths; A_est = max(sup ratio, sup 1/ratio).
pub fn mori_alpha_band(map: &RadialMap, gaps: &[f64]) -> Result<(f64, f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &g in gaps {
        let r = 1.0 - g;
        if r <= 0.0 || r >= 1.0 {
            continue;
        }
        let ratio = (1.0 - map.radius_map(r)?) / g;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    Ok((lo, hi, hi.max(1.0 / lo)))
}

/// Coarse lower estimate of the hyperbolic density of C - {0, 1}: the
/// standard near-puncture asymptotic 1 / (2 d (c + |ln d|)) glued to a
/// constant floor in the thick part and an |w| ln |w| tail at infinity.
fn punctured_density(w: C) -> f64 {
    let d0 = w.norm();
    let d1 = (w - C::new(1.0, 0.0)).norm();
    let d = d0.min(d1);
    if d < 0.5 {
        1.0 / (2.0 * d * (4.0 + (1.0 / d).ln()))
    } else if d0 > 2.0 {
        1.0 / (2.0 * d0 * (4.0 + d0.ln()))
    } else {
        1.0 / 9.0
    }
}

/// Approximate hyperbolic distance in C - {0, 1} along the straight segment.
fn punctured_distance(a: C, b: C) -> f64 {
    let n = 512;
    let mut acc = 0.0;
    let step = (b - a) / n as f64;
    for i in 0..n {
        let w = a + step * (i as f64 + 0.5);
        acc += punctured_density(w) * step.norm();
    }
    acc
}

/// Cross-ratio distortion predicate: for the K-quasiconformal extension of a
/// radial stretch (identity outside the disk) and the quadruple
/// (0, infinity, 1, z), the approximate hyperbolic distance between the
/// cross-ratios 1/z and 1/f(z) must not exceed log K + 0.1. Documented as a
/// weak check: the density is a coarse approximation.
pub fn crossratio_check(map: &RadialMap, z: C) -> Result<CertBound> {
    if z.norm() >= 1.0 || z.norm() == 0.0 {
        return Err(Error::DomainError {
            point: format!("{z}"),
            reason: "sample point must be in the punctured disk".into(),
        });
    }
    let k = map.profile().sup_abs();
    let big_k = (1.0 + k) / (1.0 - k);
    let fz = map.apply(z);
    let dist = punctured_distance(z.inv(), fz.inv());
    Ok(CertBound::upper(
        "crossratio_distortion",
        format!("z={z}"),
        big_k.ln() + 0.1,
        dist,
        0.0,
    ))
}

/// Integral representation bound: |S(zeta)| <= (6 rho_{D*}(zeta) / sqrt(pi))
/// (int_D |mu|^2 / ((1-|mu|^2) |w - zeta|^4) dA)^{1/2}, quadrature on a
/// 512 x 512 polar grid (the kernel is bounded for |zeta| > 1.2).
pub fn az_integral_checks(
    mu: &BeltramiField,
    schwarzian_abs: &(dyn Fn(C) -> f64 + Sync),
    zetas: &[C],
    tol: f64,
) -> Vec<CertBound> {
    let nr = 512;
    let na = 512;
    zetas
        .par_iter()
        .map(|&zeta| {
            let mut integral = 0.0f64;
            for ir in 0..nr {
                let r = (ir as f64 + 0.5) / nr as f64;
                let dr = 1.0 / nr as f64;
                for ia in 0..na {
                    let th = 2.0 * std::f64::consts::PI * ia as f64 / na as f64;
                    let w = C::from_polar(r, th);
                    let m2 = mu.eval(w).norm_sqr();
                    integral += m2 / ((1.0 - m2) * (w - zeta).norm_sqr().powi(2))
                        * r
                        * dr
                        * (2.0 * std::f64::consts::PI / na as f64);
                }
            }
            let rhs =
                6.0 * rho_exterior(zeta) / std::f64::consts::PI.sqrt() * integral.sqrt();
            CertBound::upper(
                "az_integral",
                format!("zeta={zeta}"),
                rhs,
                schwarzian_abs(zeta),
                tol,
            )
        })
        .collect()
}
