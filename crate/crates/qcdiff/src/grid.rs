//! Scan grids for sup-type estimates.
//!
//! All reported constants are grid maxima, i.e. lower bounds of the true
//! suprema. The grids are fixed by the configuration so that every report
//! carries enough provenance to re-run a single check.

use serde::{Deserialize, Serialize};

/// Sample layout for sup-type scans: circle parameters, quotient scales,
/// polar samples of the disk and dyadic collar widths.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScanGrid {
    /// Number of x samples in [0, 1).
    pub x_points: usize,
    /// Number of log-spaced t samples in (0, 1/2).
    pub t_points: usize,
    /// Number of radial samples for disk scans.
    pub radii: usize,
    /// Number of angular samples for disk scans.
    pub angles: usize,
    /// Dyadic t values run over 2^-1 .. 2^-dyadic_depth.
    pub dyadic_depth: u32,
}

impl Default for ScanGrid {
    fn default() -> Self {
        ScanGrid {
            x_points: 512,
            t_points: 64,
            radii: 256,
            angles: 256,
            dyadic_depth: 10,
        }
    }
}

impl ScanGrid {
    /// Grid with every linear resolution doubled, for stability checks.
    pub fn refined(&self) -> Self {
        ScanGrid {
            x_points: self.x_points * 2,
            t_points: self.t_points * 2,
            radii: self.radii * 2,
            angles: self.angles * 2,
            dyadic_depth: self.dyadic_depth,
        }
    }

    /// Uniform x samples over one period.
    pub fn x_samples(&self) -> Vec<f64> {
        (0..self.x_points)
            .map(|i| i as f64 / self.x_points as f64)
            .collect()
    }

    /// Log-spaced t samples in (0, 1/2), largest first.
    pub fn t_samples(&self) -> Vec<f64> {
        let t_max = 0.5 * (1.0 - 1e-9);
        let t_min = 2f64.powi(-(self.dyadic_depth as i32 + 1));
        log_spaced(t_min, t_max, self.t_points)
    }

    /// Dyadic t values 2^-1, 2^-2, ..., 2^-dyadic_depth.
    pub fn dyadic_t(&self) -> Vec<f64> {
        (1..=self.dyadic_depth).map(|j| 2f64.powi(-(j as i32))).collect()
    }

    /// Radial samples clustered at the boundary: 1 - r log-spaced down to
    /// 2^-(dyadic_depth + 1).
    pub fn radial_samples(&self) -> Vec<f64> {
        let gap_min = 2f64.powi(-(self.dyadic_depth as i32 + 1));
        log_spaced(gap_min, 1.0, self.radii)
            .into_iter()
            .map(|gap| 1.0 - gap)
            .collect()
    }

    /// Uniform angle samples in [0, 2 pi).
    pub fn angle_samples(&self) -> Vec<f64> {
        (0..self.angles)
            .map(|i| 2.0 * std::f64::consts::PI * i as f64 / self.angles as f64)
            .collect()
    }
}

/// n log-spaced values from lo to hi inclusive, ascending.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_values_are_powers_of_two() {
        let g = ScanGrid::default();
        let t = g.dyadic_t();
        assert_eq!(t.len(), 10);
        assert_eq!(t[0], 0.5);
        assert_eq!(t[9], 2f64.powi(-10));
    }

    #[test]
    fn radial_samples_stay_in_disk() {
        let g = ScanGrid::default();
        for r in g.radial_samples() {
            assert!((0.0..1.0).contains(&r));
        }
    }
}
