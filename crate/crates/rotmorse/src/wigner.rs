//! Phase-space Wigner distribution of an evolved state.
//!
//! W(r, p, t) = (1/π) ∫ Φ*(r - r') Φ(r + r') e^{-2 i p r'} dr'  (ħ = 1).
//!
//! The r' integral is evaluated as a correlation product sampled with step
//! Δ = π / (2 p_max) and transformed over r' by FFT, giving all n_p momentum
//! values of one r row at once. The momenta are the transform's native
//! frequencies p_k = 2 p_max k / n_p, k = -n_p/2 .. n_p/2 - 1; no
//! interpolation is applied anywhere.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::Error;
use crate::wavepacket::{detect_peaks, EvolvedState};
use crate::Result;

/// Requested phase-space window and resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    /// Momentum half-window; the native frequencies span [-p_max, p_max).
    pub p_max: f64,
    pub n_p: usize,
}

/// Rectangular (r, p) lattice carrying real Wigner values, row-major in r.
#[derive(Debug, Clone)]
pub struct PhaseSpaceGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub n_p: usize,
    pub values: Vec<f64>,
}

impl PhaseSpaceGrid {
    pub fn r_spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_r - 1) as f64
    }

    pub fn p_spacing(&self) -> f64 {
        (self.p_max - self.p_min) / self.n_p as f64
    }

    pub fn r_at(&self, i: usize) -> f64 {
        self.r_min + self.r_spacing() * i as f64
    }

    pub fn p_at(&self, k: usize) -> f64 {
        self.p_min + self.p_spacing() * k as f64
    }

    pub fn value(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.n_p + k]
    }

    /// ∬ W dr dp.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.r_spacing() * self.p_spacing()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Wigner grid plus the diagnostics demanded of the transform.
#[derive(Debug, Clone)]
pub struct WignerTransform {
    pub grid: PhaseSpaceGrid,
    /// |1 - ∬ W dr dp|.
    pub norm_defect: f64,
    /// Largest imaginary residue discarded, relative to max |W|.
    pub max_imag_residue: f64,
}

/// Computes the Wigner distribution of `state` on the requested window.
///
/// The state's radial grid must cover [r_min - w, r_max + w] with
/// w = (n_p/2) Δ; otherwise a coverage error names the required widening.
/// Amplitudes along the correlation lattice are evaluated analytically from
/// the state's level expansion.
pub fn wigner_transform(state: &EvolvedState, spec: &WignerSpec) -> Result<WignerTransform> {
    if spec.n_r < 2 || spec.n_p < 2 || !spec.n_p.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!(
            "need n_r >= 2 and even n_p >= 2, got {} x {}",
            spec.n_r, spec.n_p
        )));
    }
    if !(spec.p_max > 0.0 && spec.r_min > 0.0 && spec.r_max > spec.r_min) {
        return Err(Error::InvalidGrid(format!(
            "invalid window r in [{}, {}], p_max {}",
            spec.r_min, spec.r_max, spec.p_max
        )));
    }
    let delta = std::f64::consts::PI / (2.0 * spec.p_max);
    let half = spec.n_p / 2;
    let w = half as f64 * delta;
    let need_lo = spec.r_min - w;
    let need_hi = spec.r_max + w;
    if need_lo <= 0.0 || need_lo < state.grid.r_min || need_hi > state.grid.r_max {
        return Err(Error::Coverage {
            have_lo: state.grid.r_min,
            have_hi: state.grid.r_max,
            need_lo,
            need_hi,
        });
    }

    let h_r = (spec.r_max - spec.r_min) / (spec.n_r - 1) as f64;
    let n_p = spec.n_p;

    // one batched analytic evaluation of Φ along every correlation lattice
    let mut points = Vec::with_capacity(spec.n_r * (n_p + 1));
    for i in 0..spec.n_r {
        let r_c = spec.r_min + h_r * i as f64;
        for k in -(half as i64)..=(half as i64) {
            points.push(r_c + k as f64 * delta);
        }
    }
    let amps = state.base.evaluate_at(state.t, &points);

    let fft = FftPlanner::new().plan_fft_forward(n_p);
    let mut values = vec![0.0f64; spec.n_r * n_p];
    let mut max_imag = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut buf = vec![Complex64::ZERO; n_p];
    let scale = delta / std::f64::consts::PI;
    for i in 0..spec.n_r {
        let row = &amps[i * (n_p + 1)..(i + 1) * (n_p + 1)];
        // row[half + k] = Φ(r_c + k Δ); c_m = Φ*(r_c - mΔ) Φ(r_c + mΔ)
        for m in -(half as i64)..(half as i64) {
            let c = row[(half as i64 - m) as usize].conj() * row[(half as i64 + m) as usize];
            let idx = m.rem_euclid(n_p as i64) as usize;
            buf[idx] = c;
        }
        fft.process(&mut buf);
        for k in 0..n_p {
            // fftshift: output index k holds frequency (k - n_p/2)
            let src = (k + half) % n_p;
            let v = buf[src] * scale;
            values[i * n_p + k] = v.re;
            max_imag = max_imag.max(v.im.abs());
            max_abs = max_abs.max(v.re.abs());
        }
    }

    let dp = 2.0 * spec.p_max / n_p as f64;
    let grid = PhaseSpaceGrid {
        r_min: spec.r_min,
        r_max: spec.r_max,
        n_r: spec.n_r,
        p_min: -spec.p_max,
        p_max: -spec.p_max + dp * (n_p as f64),
        n_p,
        values,
    };
    let norm_defect = (1.0 - grid.integral()).abs();
    Ok(WignerTransform {
        grid,
        norm_defect,
        max_imag_residue: if max_abs > 0.0 {
            max_imag / max_abs
        } else {
            0.0
        },
    })
}

/// Position marginal ∫ W dp per r column.
pub fn marginal_position(grid: &PhaseSpaceGrid) -> Vec<f64> {
    let dp = grid.p_spacing();
    (0..grid.n_r)
        .map(|i| (0..grid.n_p).map(|k| grid.value(i, k)).sum::<f64>() * dp)
        .collect()
}

/// Momentum marginal ∫ W dr per p row.
pub fn marginal_momentum(grid: &PhaseSpaceGrid) -> Vec<f64> {
    let h = grid.r_spacing();
    (0..grid.n_p)
        .map(|k| (0..grid.n_r).map(|i| grid.value(i, k)).sum::<f64>() * h)
        .collect()
}

/// Interference diagnostics of a Wigner grid.
#[derive(Debug, Clone, Copy)]
pub struct InterferenceMetrics {
    /// ∬ max(-W, 0) dr dp.
    pub negativity_volume: f64,
    pub min_w: f64,
    pub max_w: f64,
    /// Mean peak-to-peak distance of W along the requested p slice, when at
    /// least two peaks exist.
    pub fringe_spacing: Option<f64>,
}

/// Computes negativity volume and the fringe spacing along the r slice at
/// the grid row nearest `slice_p`.
pub fn interference_metrics(grid: &PhaseSpaceGrid, slice_p: f64) -> Result<InterferenceMetrics> {
    if slice_p < grid.p_min || slice_p > grid.p_max {
        return Err(Error::SliceOutsideGrid {
            p: slice_p,
            p_min: grid.p_min,
            p_max: grid.p_max,
        });
    }
    let negativity_volume = grid.values.iter().map(|&v| (-v).max(0.0)).sum::<f64>()
        * grid.r_spacing()
        * grid.p_spacing();
    let k = ((slice_p - grid.p_min) / grid.p_spacing()).round() as usize;
    let k = k.min(grid.n_p - 1);
    let slice: Vec<f64> = (0..grid.n_r).map(|i| grid.value(i, k)).collect();
    let radii: Vec<f64> = (0..grid.n_r).map(|i| grid.r_at(i)).collect();
    let peaks = detect_peaks(&radii, &slice);
    let fringe_spacing = if peaks.len() >= 2 {
        Some((peaks[peaks.len() - 1] - peaks[0]) / (peaks.len() - 1) as f64)
    } else {
        None
    };
    Ok(InterferenceMetrics {
        negativity_volume,
        min_w: grid.min_value(),
        max_w: grid.max_value(),
        fringe_spacing,
    })
}
