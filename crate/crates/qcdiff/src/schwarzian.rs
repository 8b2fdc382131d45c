//! Pre-Schwarzian and Schwarzian derivatives of conformal maps of the
//! exterior disk, boundary decay scans, and the harmonic section that turns a
//! small quadratic differential back into a Beltrami coefficient.

use std::sync::Arc;

use num_complex::Complex64 as C;
use serde::Serialize;

use crate::beltrami::{rho_exterior, BeltramiField, Provenance};
use crate::error::{Error, Result};

/// Value and first three derivatives of a holomorphic map at a point.
#[derive(Debug, Clone, Copy)]
pub struct Jet {
    pub f: C,
    pub d1: C,
    pub d2: C,
    pub d3: C,
}

/// Where a map's jets come from: symbolic closed forms are trusted to
/// round-off, solver-backed jets only to the solver tolerance budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MapSource {
    ClosedForm,
    Solver,
}

/// A holomorphic map of the exterior disk |z| > 1 given by an exact jet
/// evaluator. `clip` is the inner radius below which jets are not trusted
/// (solver-backed maps exclude a band near the support boundary).
#[derive(Clone)]
pub struct HoloMap {
    jet: Arc<dyn Fn(C) -> Jet + Send + Sync>,
    pub clip: f64,
    pub source: MapSource,
}

impl HoloMap {
    pub fn from_jet(
        jet: Arc<dyn Fn(C) -> Jet + Send + Sync>,
        clip: f64,
        source: MapSource,
    ) -> Self {
        HoloMap { jet, clip, source }
    }

    pub fn identity() -> Self {
        HoloMap {
            jet: Arc::new(|z| Jet {
                f: z,
                d1: C::new(1.0, 0.0),
                d2: C::new(0.0, 0.0),
                d3: C::new(0.0, 0.0),
            }),
            clip: 1.0,
            source: MapSource::ClosedForm,
        }
    }

    /// z + k / z^m for m >= 1: the closed-form image of small radial
    /// coefficients (m = 1) and a convenient decay family.
    pub fn pole(k: C, m: u32) -> Self {
        let mf = m as f64;
        HoloMap {
            jet: Arc::new(move |z: C| {
                let zm = z.powi(-(m as i32));
                Jet {
                    f: z + k * zm,
                    d1: C::new(1.0, 0.0) - k * mf * zm / z,
                    d2: k * mf * (mf + 1.0) * zm / (z * z),
                    d3: -k * mf * (mf + 1.0) * (mf + 2.0) * zm / (z * z * z),
                }
            }),
            clip: 1.0,
            source: MapSource::ClosedForm,
        }
    }

    /// (a z + b) / (c z + d).
    pub fn mobius(a: C, b: C, c: C, d: C) -> Self {
        let det = a * d - b * c;
        HoloMap {
            jet: Arc::new(move |z: C| {
                let den = c * z + d;
                Jet {
                    f: (a * z + b) / den,
                    d1: det / (den * den),
                    d2: -2.0 * det * c / (den * den * den),
                    d3: 6.0 * det * c * c / (den * den * den * den),
                }
            }),
            clip: 1.0,
            source: MapSource::ClosedForm,
        }
    }

    /// Post-compose with a Moebius map; the Schwarzian is unchanged.
    pub fn post_mobius(&self, a: C, b: C, c: C, d: C) -> Self {
        let inner = self.jet.clone();
        let det = a * d - b * c;
        HoloMap {
            jet: Arc::new(move |z: C| {
                let j = inner(z);
                let den = c * j.f + d;
                let h1 = det / (den * den);
                let h2 = -2.0 * det * c / (den * den * den);
                let h3 = 6.0 * det * c * c / (den * den * den * den);
                Jet {
                    f: (a * j.f + b) / den,
                    d1: h1 * j.d1,
                    d2: h2 * j.d1 * j.d1 + h1 * j.d2,
                    d3: h3 * j.d1 * j.d1 * j.d1 + 3.0 * h2 * j.d1 * j.d2 + h1 * j.d3,
                }
            }),
            clip: self.clip,
            source: self.source,
        }
    }

    pub fn jet(&self, z: C) -> Result<Jet> {
        let r = z.norm();
        if r <= self.clip {
            return Err(Error::TooCloseToBoundary { abs_z: r, band: self.clip });
        }
        Ok((self.jet)(z))
    }
}

/// T_f = f'' / f'.
pub fn pre_schwarzian(f: &HoloMap, z: C) -> Result<C> {
    let j = f.jet(z)?;
    if j.d1.norm() < 1e-300 {
        return Err(Error::DegenerateDerivative { abs_deriv: j.d1.norm() });
    }
    Ok(j.d2 / j.d1)
}

/// S_f = f''' / f' - (3/2) (f'' / f')^2.
pub fn schwarzian(f: &HoloMap, z: C) -> Result<C> {
    let j = f.jet(z)?;
    if j.d1.norm() < 1e-300 {
        return Err(Error::DegenerateDerivative { abs_deriv: j.d1.norm() });
    }
    let t = j.d2 / j.d1;
    Ok(j.d3 / j.d1 - 1.5 * t * t)
}

/// Sampling layout for the exterior decay scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecayGrid {
    /// Number of log-spaced collar widths |z| - 1.
    pub gaps: usize,
    /// Number of angular samples per circle.
    pub angles: usize,
    /// Largest |z| - 1 sampled; hyperbolic norms also use these samples.
    pub max_gap: f64,
}

impl Default for DecayGrid {
    fn default() -> Self {
        DecayGrid { gaps: 96, angles: 128, max_gap: 9.0 }
    }
}

/// Boundary decay of the pre-Schwarzian and Schwarzian:
///   beta(t)  = sup_{1 < |z| <= 1+t} (|z| - 1) |T_f(z)|
///   sigma(t) = sup_{1 < |z| <= 1+t} (|z| - 1)^2 |S_f(z)|
/// plus the hyperbolic sup norms of S_f over the whole sampled range.
#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    pub alpha: f64,
    /// (t, beta(t), sigma(t)) on increasing t; both columns nondecreasing.
    pub table: Vec<(f64, f64, f64)>,
    /// sup rho_{D*}^{-2} |S_f|.
    pub norm_inf: f64,
    /// sup rho_{D*}^{-2+alpha} |S_f|.
    pub norm_inf_alpha: f64,
    pub clip: f64,
}

impl DecayReport {
    /// Log-log slope of sigma(t) over [t_lo, t_hi]; None when sigma vanishes.
    pub fn sigma_slope(&self, t_lo: f64, t_hi: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .table
            .iter()
            .filter(|(t, _, _)| *t >= t_lo * 0.999 && *t <= t_hi * 1.001)
            .map(|&(t, _, s)| (t, s))
            .collect();
        crate::beltrami::loglog_slope(&pts)
    }

    pub fn beta_slope(&self, t_lo: f64, t_hi: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .table
            .iter()
            .filter(|(t, _, _)| *t >= t_lo * 0.999 && *t <= t_hi * 1.001)
            .map(|&(t, b, _)| (t, b))
            .collect();
        crate::beltrami::loglog_slope(&pts)
    }
}

/// Scan the exterior collar. `t_values` must be ascending; gaps below the
/// clip band are skipped automatically.
pub fn decay_scan(
    f: &HoloMap,
    alpha: f64,
    t_values: &[f64],
    grid: &DecayGrid,
) -> Result<DecayReport> {
    let t_max = t_values.last().copied().unwrap_or(0.5);
    let gap_lo = (f.clip - 1.0).max(1e-9) * 1.0001;
    let gap_hi = grid.max_gap.max(t_max);
    let gaps = crate::grid::log_spaced(gap_lo, gap_hi, grid.gaps);

    // per-gap circle maxima
    let mut per_gap: Vec<(f64, f64, f64)> = Vec::with_capacity(gaps.len());
    let mut norm_inf = 0.0f64;
    let mut norm_inf_alpha = 0.0f64;
    for &g in &gaps {
        let r = 1.0 + g;
        let mut bmax = 0.0f64;
        let mut smax = 0.0f64;
        for ia in 0..grid.angles {
            let th = 2.0 * std::f64::consts::PI * ia as f64 / grid.angles as f64;
            let z = C::from_polar(r, th);
            let j = f.jet(z)?;
            if j.d1.norm() < 1e-300 {
                return Err(Error::DegenerateDerivative { abs_deriv: j.d1.norm() });
            }
            let t = j.d2 / j.d1;
            let s = (j.d3 / j.d1 - 1.5 * t * t).norm();
            bmax = bmax.max(t.norm());
            smax = smax.max(s);
            let rho = rho_exterior(z);
            norm_inf = norm_inf.max(s / (rho * rho));
            norm_inf_alpha = norm_inf_alpha.max(s * rho.powf(alpha - 2.0));
        }
        per_gap.push((g, g * bmax, g * g * smax));
    }

    // cumulative maxima give the collar suprema
    let mut table = Vec::with_capacity(t_values.len());
    for &t in t_values {
        let mut b = 0.0f64;
        let mut s = 0.0f64;
        for &(g, bg, sg) in &per_gap {
            if g <= t {
                b = b.max(bg);
                s = s.max(sg);
            }
        }
        table.push((t, b, s));
    }

    Ok(DecayReport { alpha, table, norm_inf, norm_inf_alpha, clip: f.clip })
}

/// A candidate quadratic differential phi on the exterior disk.
#[derive(Clone)]
pub enum SchwarzianCandidate {
    /// phi(z) = c / z^m with m >= 4 so the section stays bounded at 0.
    InversePower { c: C, m: u32 },
    /// Arbitrary evaluator; the section formula is used verbatim, so the
    /// caller is responsible for decay at infinity.
    Custom(Arc<dyn Fn(C) -> C + Send + Sync>),
}

impl SchwarzianCandidate {
    pub fn eval(&self, z: C) -> C {
        match self {
            SchwarzianCandidate::InversePower { c, m } => *c * z.powi(-(*m as i32)),
            SchwarzianCandidate::Custom(f) => f(z),
        }
    }

    /// sup rho_{D*}^{-2} |phi| over a log-spaced exterior sample.
    pub fn hyperbolic_sup(&self, weight_alpha: f64) -> f64 {
        let mut sup = 0.0f64;
        for &g in &crate::grid::log_spaced(1e-6, 1e6, 512) {
            let r = 1.0 + g;
            for ia in 0..32 {
                let th = 2.0 * std::f64::consts::PI * ia as f64 / 32.0;
                let z = C::from_polar(r, th);
                let rho = rho_exterior(z);
                sup = sup.max(self.eval(z).norm() * rho.powf(weight_alpha - 2.0));
            }
        }
        sup
    }
}

/// Harmonic section: mu(z) = -2 rho_{D*}^{-2}(z*) (z z*)^2 phi(z*) on the
/// disk, with z* = 1 / conj(z). Admissibility (sup |mu| < 1) is checked a
/// posteriori on the sampling grid.
pub fn aw_section(phi: &SchwarzianCandidate) -> Result<BeltramiField> {
    let phi = phi.clone();
    let eval: Arc<dyn Fn(C) -> C + Send + Sync> = match phi {
        SchwarzianCandidate::InversePower { c, m } => {
            if m < 4 {
                return Err(Error::ConfigError(
                    "inverse-power candidate needs m >= 4 for a bounded section".into(),
                ));
            }
            // stable closed form: mu(z) = -(1/2) (1 - |z|^2)^2 c conj(z)^{m-4}
            Arc::new(move |z: C| {
                let w = 1.0 - z.norm_sqr();
                -0.5 * w * w * c * z.conj().powi(m as i32 - 4)
            })
        }
        SchwarzianCandidate::Custom(f) => Arc::new(move |z: C| {
            let zs = z.conj().inv();
            let rho = rho_exterior(zs);
            -2.0 / (rho * rho) * (z * zs).powi(2) * f(zs)
        }),
    };
    let field = BeltramiField::from_fn(eval, Provenance::AwSection);
    if field.sup_bound() >= 1.0 {
        return Err(Error::NotAdmissible { sup: field.sup_bound() });
    }
    Ok(field)
}
