//! Beltrami coefficients on the unit disk: weighted norms, boundary decay
//! scans, reflection to the exterior disk, composition, and the exact radial
//! stretch family used as oracle.

use std::sync::Arc;

use num_complex::Complex64 as C;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::ScanGrid;
use crate::quad::adaptive_simpson;

/// Hyperbolic density of the disk, rho_D = 2 / (1 - |z|^2).
pub fn rho_disk(z: C) -> f64 {
    2.0 / (1.0 - z.norm_sqr())
}

/// Hyperbolic density of the exterior disk, rho_D* = 2 / (|z|^2 - 1).
pub fn rho_exterior(z: C) -> f64 {
    2.0 / (z.norm_sqr() - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Zero,
    Analytic,
    Radial,
    BaDerived,
    SolverDerived,
    Composed,
    AwSection,
}

/// A measurable coefficient on the unit disk with |mu| < 1.
#[derive(Clone)]
pub struct BeltramiField {
    eval: Arc<dyn Fn(C) -> C + Send + Sync>,
    sup_bound: f64,
    provenance: Provenance,
}

impl BeltramiField {
    pub fn new(
        eval: Arc<dyn Fn(C) -> C + Send + Sync>,
        sup_bound: f64,
        provenance: Provenance,
    ) -> Self {
        BeltramiField { eval, sup_bound, provenance }
    }

    pub fn zero() -> Self {
        BeltramiField {
            eval: Arc::new(|_| C::new(0.0, 0.0)),
            sup_bound: 0.0,
            provenance: Provenance::Zero,
        }
    }

    /// Constant coefficient k * 1_D.
    pub fn constant(k: f64) -> Self {
        assert!(k.abs() < 1.0);
        BeltramiField {
            eval: Arc::new(move |_| C::new(k, 0.0)),
            sup_bound: k.abs(),
            provenance: Provenance::Analytic,
        }
    }

    /// Coefficient from a pointwise closure, with the sup bound measured on a
    /// polar sampling grid.
    pub fn from_fn(
        eval: Arc<dyn Fn(C) -> C + Send + Sync>,
        provenance: Provenance,
    ) -> Self {
        let mut sup: f64 = 0.0;
        for ir in 0..96 {
            let gap = 2f64.powf(-12.0 + 12.0 * (95 - ir) as f64 / 95.0);
            let r = 1.0 - gap;
            for ia in 0..128 {
                let th = 2.0 * std::f64::consts::PI * ia as f64 / 128.0;
                sup = sup.max(eval(C::from_polar(r, th)).norm());
            }
        }
        BeltramiField { eval, sup_bound: sup, provenance }
    }

    pub fn eval(&self, z: C) -> C {
        (self.eval)(z)
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Grid estimates of the sup norm, the Hoelder-weighted norm
    /// rho_D^alpha |mu|, and the boundary decay table kappa(t).
    pub fn norms(&self, alpha: f64, grid: &ScanGrid) -> NormReport {
        let mut radii = grid.radial_samples();
        // include the exact collar edges so kappa(t) sees r = 1 - t
        for t in grid.dyadic_t() {
            radii.push(1.0 - t);
        }
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let angles = grid.angle_samples();

        // per-radius max of |mu|
        let per_radius: Vec<(f64, f64)> = radii
            .iter()
            .map(|&r| {
                let mut m: f64 = 0.0;
                for &th in &angles {
                    m = m.max(self.eval(C::from_polar(r, th)).norm());
                }
                (r, m)
            })
            .collect();

        let mut sup: f64 = 0.0;
        let mut weighted: f64 = 0.0;
        for &(r, m) in &per_radius {
            sup = sup.max(m);
            weighted = weighted.max((2.0 / (1.0 - r * r)).powf(alpha) * m);
        }

        let mut kappa_table = Vec::new();
        let mut dyadic = grid.dyadic_t();
        dyadic.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for t in dyadic {
            let mut k: f64 = 0.0;
            for &(r, m) in &per_radius {
                if r >= 1.0 - t {
                    k = k.max(m);
                }
            }
            kappa_table.push((t, k));
        }

        NormReport {
            sup_norm_est: sup,
            weighted_norm_est: weighted,
            alpha,
            kappa_table,
            k_est: (1.0 + sup) / (1.0 - sup),
        }
    }

    /// Reflection mu*(z) = conj(mu(z*)) (z z*)^2 with z* = 1 / conj(z),
    /// defined on the exterior disk.
    pub fn reflect(&self) -> ExteriorField {
        ExteriorField { inner: self.clone() }
    }
}

/// Reflected coefficient on |z| > 1.
#[derive(Clone)]
pub struct ExteriorField {
    inner: BeltramiField,
}

impl ExteriorField {
    pub fn eval(&self, z: C) -> Result<C> {
        if z.norm() <= 1.0 {
            return Err(Error::DomainError {
                point: format!("{z}"),
                reason: "reflected field lives on |z| > 1".into(),
            });
        }
        let zs = z.conj().inv();
        Ok(self.inner.eval(zs).conj() * (z * zs).powi(2))
    }
}

/// Norm and decay summary for a Beltrami field.
#[derive(Debug, Clone, Serialize)]
pub struct NormReport {
    pub sup_norm_est: f64,
    pub weighted_norm_est: f64,
    pub alpha: f64,
    /// (t, kappa(t)) on dyadic t, nondecreasing.
    pub kappa_table: Vec<(f64, f64)>,
    pub k_est: f64,
}

impl NormReport {
    /// Least-squares slope of log kappa against log t over t in [t_lo, t_hi].
    /// None if any kappa in range vanishes (decay faster than any power).
    pub fn kappa_slope(&self, t_lo: f64, t_hi: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .kappa_table
            .iter()
            .filter(|(t, _)| *t >= t_lo * 0.999 && *t <= t_hi * 1.001)
            .map(|&(t, k)| (t, k))
            .collect();
        loglog_slope(&pts)
    }
}

/// Least-squares slope in log-log coordinates; None on degenerate input.
pub fn loglog_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = pts
        .iter()
        .filter(|(t, v)| *t > 0.0 && *v > 1e-300)
        .map(|&(t, v)| (t.ln(), v.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Radial profile k(r) in (-1, 1): either a constant or ell (1-r)^alpha.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum RadialProfile {
    Constant { k: f64 },
    PowerDecay { ell: f64, alpha: f64 },
}

impl RadialProfile {
    pub fn k(&self, r: f64) -> f64 {
        match *self {
            RadialProfile::Constant { k } => k,
            RadialProfile::PowerDecay { ell, alpha } => ell * (1.0 - r).powf(alpha),
        }
    }

    pub fn sup_abs(&self) -> f64 {
        match *self {
            RadialProfile::Constant { k } => k.abs(),
            RadialProfile::PowerDecay { ell, .. } => ell.abs(),
        }
    }
}

/// An exact quasiconformal map with closed-form partial derivatives.
pub trait ExactQcMap: Send + Sync {
    fn apply(&self, z: C) -> C;
    fn invert(&self, w: C) -> Result<C>;
    fn d_z(&self, z: C) -> C;
    fn d_zbar(&self, z: C) -> C;
    fn dilatation(&self, z: C) -> C {
        self.d_zbar(z) / self.d_z(z)
    }
}

/// Radial stretch f(r e^{i theta}) = R(r) e^{i theta} with
/// r R'(r) / R(r) = (1 + k(r)) / (1 - k(r)) and R(1) = 1. Its complex
/// dilatation is k(|z|) z / conj(z) exactly.
#[derive(Debug, Clone)]
pub struct RadialMap {
    profile: RadialProfile,
    quad_tol: f64,
}

impl RadialMap {
    pub fn new(profile: RadialProfile) -> Result<Self> {
        if profile.sup_abs() >= 1.0 {
            return Err(Error::ConfigError(format!(
                "radial profile must satisfy sup |k| < 1, got {}",
                profile.sup_abs()
            )));
        }
        Ok(RadialMap { profile, quad_tol: 1e-12 })
    }

    pub fn profile(&self) -> RadialProfile {
        self.profile
    }

    /// R(r) = r exp(-int_r^1 2 k(s) / ((1 - k(s)) s) ds), computed in the
    /// log variable so the integrand is bounded.
    pub fn radius_map(&self, r: f64) -> Result<f64> {
        if r <= 0.0 {
            return Ok(0.0);
        }
        if r >= 1.0 {
            return Ok(r);
        }
        match self.profile {
            RadialProfile::Constant { k } => {
                let big_k = (1.0 + k) / (1.0 - k);
                Ok(r.powf(big_k))
            }
            RadialProfile::PowerDecay { .. } => {
                let p = self.profile;
                let integrand = move |u: f64| {
                    let k = p.k(u.exp());
                    2.0 * k / (1.0 - k)
                };
                let i = adaptive_simpson(&integrand, r.ln(), 0.0, self.quad_tol)?;
                Ok(r * (-i).exp())
            }
        }
    }

    /// R'(r) from the defining ODE.
    pub fn radius_deriv(&self, r: f64) -> Result<f64> {
        let big_r = self.radius_map(r)?;
        let k = self.profile.k(r);
        Ok(big_r * (1.0 + k) / ((1.0 - k) * r))
    }

    fn invert_radius(&self, target: f64) -> Result<f64> {
        if target <= 0.0 {
            return Ok(0.0);
        }
        if target >= 1.0 {
            return Err(Error::InversionFailure { point: format!("radius {target}") });
        }
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.radius_map(mid)? < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The induced Beltrami field k(|z|) z / conj(z).
    pub fn field(&self) -> BeltramiField {
        let p = self.profile;
        BeltramiField {
            eval: Arc::new(move |z: C| {
                let r = z.norm();
                if r == 0.0 {
                    C::new(p.k(0.0), 0.0)
                } else {
                    z / z.conj() * p.k(r)
                }
            }),
            sup_bound: p.sup_abs(),
            provenance: Provenance::Radial,
        }
    }
}

impl ExactQcMap for RadialMap {
    fn apply(&self, z: C) -> C {
        let r = z.norm();
        if r == 0.0 {
            return z;
        }
        let big_r = self.radius_map(r).expect("radial quadrature failed");
        z / r * big_r
    }

    fn invert(&self, w: C) -> Result<C> {
        let rw = w.norm();
        if rw == 0.0 {
            return Ok(w);
        }
        let r = self.invert_radius(rw)?;
        Ok(w / rw * r)
    }

    // d_z f = (R' + R/r) / 2 for a radial stretch (theta independent)
    fn d_z(&self, z: C) -> C {
        let r = z.norm();
        let big_r = self.radius_map(r).expect("radial quadrature failed");
        let dr = self.radius_deriv(r).expect("radial quadrature failed");
        C::new(0.5 * (dr + big_r / r), 0.0)
    }

    // d_zbar f = (z / conj(z)) (R' - R/r) / 2
    fn d_zbar(&self, z: C) -> C {
        let r = z.norm();
        let big_r = self.radius_map(r).expect("radial quadrature failed");
        let dr = self.radius_deriv(r).expect("radial quadrature failed");
        z / z.conj() * (0.5 * (dr - big_r / r))
    }
}

/// Dilatation of f^{mu1} o (f^nu)^{-1} evaluated through the exact map f^nu:
/// at zeta = f^nu(z),
/// [(mu1(z) - nu(z)) / (1 - conj(nu(z)) mu1(z))] * d_z f^nu(z) / conj(d_z f^nu(z)).
pub fn compose_dilatation(
    mu1: &BeltramiField,
    f_nu: Arc<dyn ExactQcMap>,
) -> BeltramiField {
    let mu1 = mu1.clone();
    let sup = {
        // sup bound from the chain rule: |mu * nu^{-1}| <= (|mu| + |nu|) / (1 + |mu||nu|)
        let a = mu1.sup_bound();
        let mut b: f64 = 0.0;
        for i in 0..64 {
            let r = (i as f64 + 0.5) / 64.0;
            b = b.max(f_nu.dilatation(C::new(r, 0.0)).norm());
        }
        ((a + b) / (1.0 + a * b)).min(0.999_999)
    };
    BeltramiField {
        eval: Arc::new(move |zeta: C| {
            let z = f_nu.invert(zeta).expect("exact map inversion failed");
            let nu = f_nu.dilatation(z);
            let m = mu1.eval(z);
            let ratio = (m - nu) / (C::new(1.0, 0.0) - nu.conj() * m);
            let dz = f_nu.d_z(z);
            ratio * (dz / dz.conj())
        }),
        sup_bound: sup,
        provenance: Provenance::Composed,
    }
}
