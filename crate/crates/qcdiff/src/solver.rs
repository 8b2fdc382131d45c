//! Desk-scale measurable Riemann mapping: solve h = mu + mu B h for
//! h = dbar f by Neumann iteration, with the Beurling transform B applied as
//! a Fourier multiplier on a periodized square grid, then evaluate f and its
//! derivatives off the support through the Cauchy kernel.
//!
//! The normalization is f(z) = z + O(1/z) at infinity:
//!
//!   f(z)    = z - (1/pi) int h(w) / (w - z) dA(w)
//!   f'(z)   = 1 - (1/pi) int h(w) / (w - z)^2 dA(w)
//!   f''(z)  =   - (2/pi) int h(w) / (w - z)^3 dA(w)
//!   f'''(z) =   - (6/pi) int h(w) / (w - z)^4 dA(w)
//!
//! integrals as midpoint sums over the support cells. Periodization of B and
//! the midpoint rule limit the accuracy; evaluation is only allowed outside
//! an exclusion band of a few cells around the closed unit disk.

use std::sync::Arc;

use num_complex::Complex64 as C;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::beltrami::BeltramiField;
use crate::error::{Error, Result};
use crate::schwarzian::{HoloMap, Jet, MapSource};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SolverParams {
    /// Half-width of the computational square [-extent, extent]^2.
    pub extent: f64,
    /// Grid points per axis (power of two).
    pub n: usize,
    /// Relative l2 tolerance for the Neumann iteration.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams { extent: 2.0, n: 1024, tol: 1e-10, max_iter: 400 }
    }
}

/// Converged solution h = dbar f on the grid, reduced to its support cells.
pub struct SolvedMap {
    pub params: SolverParams,
    pub residual: f64,
    pub iterations: usize,
    /// Constant term of the Laurent expansion of f at infinity. The Cauchy
    /// sum decays at infinity, so this is exactly zero; it is reported so
    /// oracle comparisons can subtract it regardless of convention.
    pub b0: C,
    /// (1/pi) int h dA: the 1/z coefficient of f at infinity.
    pub b1: C,
    /// Inner radius below which jets are not evaluated.
    pub exclusion: f64,
    /// (cell center, h * cell_area / pi) over cells where h != 0.
    support: Vec<(C, C)>,
}

/// 2D FFT over a row-major n x n array, in place. `inverse` includes the
/// 1/n^2 normalization.
fn fft2(data: &mut [C], n: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    let scratch_len = fft.get_inplace_scratch_len();
    data.par_chunks_mut(n).for_each_init(
        || vec![C::new(0.0, 0.0); scratch_len],
        |scratch, row| fft.process_with_scratch(row, scratch),
    );
    transpose(data, n);
    data.par_chunks_mut(n).for_each_init(
        || vec![C::new(0.0, 0.0); scratch_len],
        |scratch, row| fft.process_with_scratch(row, scratch),
    );
    transpose(data, n);
    if inverse {
        let scale = 1.0 / (n * n) as f64;
        data.par_iter_mut().for_each(|v| *v *= scale);
    }
}

fn transpose(data: &mut [C], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// Beurling transform as the multiplier conj(xi) / xi on the periodized
/// square; the zero mode is annihilated.
fn beurling_multiplier(spectrum: &mut [C], n: usize) {
    spectrum.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
        let fy = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
        for (i, v) in row.iter_mut().enumerate() {
            let fx = if i < n / 2 { i as f64 } else { i as f64 - n as f64 };
            if fx == 0.0 && fy == 0.0 {
                *v = C::new(0.0, 0.0);
            } else {
                let xi = C::new(fx, fy);
                *v *= xi.conj() / xi;
            }
        }
    });
}

fn apply_beurling(h: &[C], n: usize) -> Vec<C> {
    let mut buf = h.to_vec();
    fft2(&mut buf, n, false);
    beurling_multiplier(&mut buf, n);
    fft2(&mut buf, n, true);
    buf
}

fn l2(v: &[C]) -> f64 {
    v.par_iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Solve h = mu + mu B h by Neumann iteration.
pub fn solve(mu: &BeltramiField, params: &SolverParams) -> Result<SolvedMap> {
    let n = params.n;
    if !n.is_power_of_two() || n < 16 {
        return Err(Error::ConfigError(format!(
            "grid size must be a power of two >= 16, got {n}"
        )));
    }
    if mu.sup_bound() >= 1.0 {
        return Err(Error::NotAdmissible { sup: mu.sup_bound() });
    }
    let l = params.extent;
    let cell = 2.0 * l / n as f64;
    let center = |i: usize, j: usize| {
        C::new(-l + (i as f64 + 0.5) * cell, -l + (j as f64 + 0.5) * cell)
    };

    // mu sampled at cell centers, zero outside the open unit disk
    let mu_grid: Vec<C> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let w = center(idx % n, idx / n);
            if w.norm() < 1.0 { mu.eval(w) } else { C::new(0.0, 0.0) }
        })
        .collect();
    let mu_norm = l2(&mu_grid);
    let exclusion = 1.0 + 4.0 * cell;

    let mut h = mu_grid.clone();
    let mut iterations = 0;
    let mut residual = 0.0;
    if mu_norm > 0.0 {
        loop {
            let bh = apply_beurling(&h, n);
            let next: Vec<C> = mu_grid
                .par_iter()
                .zip(&bh)
                .map(|(&m, &b)| m + m * b)
                .collect();
            let diff = next
                .par_iter()
                .zip(&h)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            residual = diff / mu_norm;
            h = next;
            iterations += 1;
            if residual < params.tol {
                break;
            }
            if iterations >= params.max_iter {
                return Err(Error::NoConvergence {
                    residual,
                    tol: params.tol,
                    iterations,
                });
            }
        }
    }

    let weight = cell * cell / std::f64::consts::PI;
    let mut support = Vec::new();
    let mut b1 = C::new(0.0, 0.0);
    for j in 0..n {
        for i in 0..n {
            let v = h[j * n + i];
            if v.norm_sqr() > 0.0 {
                let coeff = v * weight;
                support.push((center(i, j), coeff));
                b1 += coeff;
            }
        }
    }

    Ok(SolvedMap {
        params: *params,
        residual,
        iterations,
        b0: C::new(0.0, 0.0),
        b1,
        exclusion,
        support,
    })
}

impl SolvedMap {
    /// f(z) and its first three derivatives outside the exclusion band.
    pub fn jet(&self, z: C) -> Result<Jet> {
        let r = z.norm();
        if r <= self.exclusion {
            return Err(Error::TooCloseToBoundary { abs_z: r, band: self.exclusion });
        }
        let (s0, s1, s2, s3) = self
            .support
            .par_chunks(16384)
            .map(|chunk| {
                let mut a0 = C::new(0.0, 0.0);
                let mut a1 = C::new(0.0, 0.0);
                let mut a2 = C::new(0.0, 0.0);
                let mut a3 = C::new(0.0, 0.0);
                for &(w, c) in chunk {
                    let d = (w - z).inv();
                    let cd = c * d;
                    a0 += cd;
                    let cd2 = cd * d;
                    a1 += cd2;
                    let cd3 = cd2 * d;
                    a2 += cd3;
                    a3 += cd3 * d;
                }
                (a0, a1, a2, a3)
            })
            .reduce(
                || (C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)),
                |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2, x.3 + y.3),
            );
        Ok(Jet {
            f: z - s0,
            d1: C::new(1.0, 0.0) - s1,
            d2: -2.0 * s2,
            d3: -6.0 * s3,
        })
    }

    pub fn support_cells(&self) -> usize {
        self.support.len()
    }

    /// Wrap into a jet-evaluated holomorphic map on the exterior disk.
    pub fn holo_map(self: &Arc<Self>) -> HoloMap {
        let me = Arc::clone(self);
        let clip = self.exclusion;
        HoloMap::from_jet(
            Arc::new(move |z| me.jet(z).expect("clip band already enforced")),
            clip,
            MapSource::Solver,
        )
    }
}

/// Solve for mu and return the exterior conformal restriction as a jet map.
pub fn bers_projection(mu: &BeltramiField, params: &SolverParams) -> Result<HoloMap> {
    Ok(Arc::new(solve(mu, params)?).holo_map())
}
