//! SU(2) coherent states of a rotational channel and their analytic time
//! evolution through fractional revivals.

use num_complex::Complex64;

use crate::eigensystem::{level, wavefunction_at, EigenLevel};
use crate::error::Error;
use crate::grid::RadialGrid;
use crate::molecule::RotationalChannel;
use crate::special::{ln_factorial, ln_gamma};
use crate::Result;

/// Coefficients below this weight are skipped during evolution; for the I₂
/// packet this keeps ~45 of the 117 levels.
pub(crate) const WEIGHT_CUTOFF: f64 = 1e-14;

/// An SU(2) coherent state over bound levels n = 0..=n_prime of one channel.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub channel: RotationalChannel,
    pub alpha: f64,
    pub n_prime: u32,
    /// Real weighting coefficients d_n, sign pattern (-alpha)^(n'-n),
    /// renormalized to Σ d_n² = 1.
    pub coeffs: Vec<f64>,
    levels: Vec<EigenLevel>,
}

/// Builds the coherent state from the displacement-operator weights
///
///   d_n = (-alpha)^(n'-n) / (n'-n)! · [n'! Γ(2λ̄-n) / (n! Γ(2λ̄-n'))]^(1/2),
///
/// computed in log domain and renormalized to unit probability.
pub fn build_cs(channel: &RotationalChannel, alpha: f64, n_prime: u32) -> Result<CoherentState> {
    if alpha == 0.0 {
        return Err(Error::ZeroAlpha);
    }
    if n_prime > channel.n_max {
        return Err(Error::LadderTooHigh {
            n_prime,
            n_max: channel.n_max,
        });
    }
    let two_lb = 2.0 * channel.lambda_bar_j;
    let mut log_w = Vec::with_capacity(n_prime as usize + 1);
    for n in 0..=n_prime {
        let k = n_prime - n;
        let lw = 2.0 * (k as f64 * alpha.abs().ln() - ln_factorial(k))
            + ln_factorial(n_prime)
            + ln_gamma(two_lb - n as f64)
            - ln_factorial(n)
            - ln_gamma(two_lb - n_prime as f64);
        log_w.push(lw);
    }
    let max_lw = log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_w.iter().map(|lw| (lw - max_lw).exp()).collect();
    let total: f64 = weights.iter().sum();
    let coeffs: Vec<f64> = weights
        .iter()
        .enumerate()
        .map(|(n, w)| {
            let k = n_prime - n as u32;
            // (-alpha)^k is negative only for odd k with positive alpha
            let sign = if k % 2 == 1 && alpha > 0.0 { -1.0 } else { 1.0 };
            sign * (w / total).sqrt()
        })
        .collect();
    let levels = (0..=n_prime)
        .map(|n| level(channel, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoherentState {
        channel: *channel,
        alpha,
        n_prime,
        coeffs,
        levels,
    })
}

/// Classical and revival time scales of a packet, in a.u.
#[derive(Debug, Clone, Copy)]
pub struct Periods {
    /// T_cl at the bottom of the ladder (n = 0).
    pub t_cl_ground: f64,
    /// T_cl evaluated at the packet-center level argmax |d_n|².
    pub t_cl_center: f64,
    /// Full revival time 2π λ_j² / c2.
    pub t_rev: f64,
}

impl CoherentState {
    /// Index of the dominant weight, argmax_n |d_n|².
    pub fn peak_index(&self) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .max_by(|a, b| (a.1 * a.1).total_cmp(&(b.1 * b.1)))
            .map(|(i, _)| i as u32)
            .unwrap()
    }

    pub fn level_energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    /// T_cl(n) = 2π / |dE/dn| = π λ² / (c1 λ - c2 (n+1/2)), plus T_rev.
    pub fn periods(&self) -> Periods {
        let ch = &self.channel;
        let lam2 = ch.lambda_j * ch.lambda_j;
        let t_cl = |n: f64| std::f64::consts::PI * lam2 / (ch.c1 * ch.lambda_j - ch.c2 * (n + 0.5));
        Periods {
            t_cl_ground: t_cl(0.0),
            t_cl_center: t_cl(self.peak_index() as f64),
            t_rev: 2.0 * std::f64::consts::PI * lam2 / ch.c2,
        }
    }

    /// Φ(r, t) = Σ_n d_n ψ_n(r) e^{-i E_n t} at arbitrary radii.
    pub fn evaluate_at(&self, t: f64, radii: &[f64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; radii.len()];
        for (n, &d) in self.coeffs.iter().enumerate() {
            if d * d < WEIGHT_CUTOFF {
                continue;
            }
            let lvl = &self.levels[n];
            let phase = Complex64::from_polar(d, -lvl.energy * t);
            for (o, &r) in out.iter_mut().zip(radii) {
                *o += phase * wavefunction_at(&self.channel, lvl, r);
            }
        }
        out
    }

    /// Evolves onto a grid, reporting the quadrature-norm defect.
    pub fn evolve(&self, t: f64, grid: &RadialGrid) -> EvolvedState {
        let amplitudes = self.evaluate_at(t, &grid.points());
        let sq: Vec<f64> = amplitudes.iter().map(|a| a.norm_sqr()).collect();
        let norm_defect = (1.0 - grid.quadrature(&sq)).abs();
        EvolvedState {
            base: self.clone(),
            t,
            grid: *grid,
            amplitudes,
            norm_defect,
        }
    }

    /// Analytic autocorrelation A(t) = Σ_n |d_n|² e^{-i E_n t}.
    pub fn autocorrelation(&self, times: &[f64]) -> Vec<Complex64> {
        times
            .iter()
            .map(|&t| {
                self.coeffs
                    .iter()
                    .zip(&self.levels)
                    .map(|(d, lvl)| Complex64::from_polar(d * d, -lvl.energy * t))
                    .sum()
            })
            .collect()
    }
}

/// A coherent state evolved to time t on a radial grid.
#[derive(Debug, Clone)]
pub struct EvolvedState {
    pub base: CoherentState,
    pub t: f64,
    pub grid: RadialGrid,
    pub amplitudes: Vec<Complex64>,
    /// |1 - ∫|Φ|² dr| on the grid.
    pub norm_defect: f64,
}

/// |Φ(r, t)|² per grid point.
pub fn density(state: &EvolvedState) -> Vec<f64> {
    state.amplitudes.iter().map(|a| a.norm_sqr()).collect()
}

/// One fractional-revival landmark t = (numer/denom) T_rev.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RevivalEntry {
    pub numer: u32,
    pub denom: u32,
    /// Expected number of packet fragments: s/2 for even s, s for odd s.
    pub fragments: u32,
}

impl RevivalEntry {
    pub fn time(&self, t_rev: f64) -> f64 {
        self.numer as f64 / self.denom as f64 * t_rev
    }
}

/// All reduced fractions r/s with 0 < r < s <= s_max.
pub fn revival_catalog(s_max: u32) -> Vec<RevivalEntry> {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut out = Vec::new();
    for s in 2..=s_max {
        for r in 1..s {
            if gcd(r, s) == 1 {
                out.push(RevivalEntry {
                    numer: r,
                    denom: s,
                    fragments: if s % 2 == 0 { s / 2 } else { s },
                });
            }
        }
    }
    out
}

/// Local maxima of `values` above 5% of the global maximum, after 3-point
/// smoothing. Returns the positions of the detected peaks.
pub fn detect_peaks(positions: &[f64], values: &[f64]) -> Vec<f64> {
    assert_eq!(positions.len(), values.len());
    if values.len() < 3 {
        return Vec::new();
    }
    let mut smooth = vec![0.0; values.len()];
    smooth[0] = values[0];
    smooth[values.len() - 1] = values[values.len() - 1];
    for i in 1..values.len() - 1 {
        smooth[i] = (values[i - 1] + values[i] + values[i + 1]) / 3.0;
    }
    let peak = smooth.iter().fold(0.0f64, |m, &v| m.max(v));
    let mut out = Vec::new();
    for i in 1..smooth.len() - 1 {
        if smooth[i] > smooth[i - 1] && smooth[i] > smooth[i + 1] && smooth[i] > 0.05 * peak {
            out.push(positions[i]);
        }
    }
    out
}
