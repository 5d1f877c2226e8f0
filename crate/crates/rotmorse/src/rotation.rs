//! Phase-space rotation-angle estimation.
//!
//! A phase-rotated j = 0 reference χ(φ) = Σ d_n^0 e^{i m(n) φ} ψ_{n,0} e^{-iE t}
//! is compared against the channel-j state; the angle maximizing
//! |⟨χ(φ)|Φ_j⟩|² is the rotation imprinted by rotational coupling. The phase
//! generator eigenvalue is m = n - lambda_bar + 1/2; the constant offset is a
//! global phase, so the overlap modulus is generator-convention invariant.

use num_complex::Complex64;

use crate::eigensystem::{level, wavefunction_at};
use crate::error::Error;
use crate::grid::RadialGrid;
use crate::wavepacket::CoherentState;
use crate::Result;

/// Which constant offset enters the rotation phase e^{i m φ}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseGenerator {
    /// m = n - lambda_bar_0 + 1/2 (the projection eigenvalue).
    Centered,
    /// m = n; differs from `Centered` by a global phase only.
    Plain,
}

/// Outcome of one overlap-maximization scan.
#[derive(Debug, Clone)]
pub struct RotationScan {
    pub j: u32,
    pub t: f64,
    pub phi_grid: Vec<f64>,
    pub overlaps: Vec<f64>,
    /// Refined argmax angle in [0, 2π).
    pub phi_star: f64,
    pub overlap_star: f64,
    /// Set when the best overlap is below 0.5: the states are too
    /// dissimilar for a single-angle model.
    pub degenerate: bool,
}

/// χ(r, t) for a given rotation angle, on a radial grid. Unit norm by
/// construction (the rotation only rephases orthonormal components).
pub fn rotated_reference(
    cs0: &CoherentState,
    phi: f64,
    t: f64,
    grid: &RadialGrid,
) -> Result<Vec<Complex64>> {
    let ch = &cs0.channel;
    let offset = -ch.lambda_bar_j + 0.5;
    let mut out = vec![Complex64::ZERO; grid.count];
    let pts = grid.points();
    for (n, &d) in cs0.coeffs.iter().enumerate() {
        if d * d < crate::wavepacket::WEIGHT_CUTOFF {
            continue;
        }
        let lvl = level(ch, n as u32)?;
        let coeff = Complex64::from_polar(d, (n as f64 + offset) * phi - lvl.energy * t);
        for (o, &r) in out.iter_mut().zip(&pts) {
            *o += coeff * wavefunction_at(ch, &lvl, r);
        }
    }
    Ok(out)
}

/// Indices of coefficients that carry non-negligible weight.
fn significant(cs: &CoherentState) -> Vec<usize> {
    cs.coeffs
        .iter()
        .enumerate()
        .filter(|(_, d)| *d * *d >= crate::wavepacket::WEIGHT_CUTOFF)
        .map(|(i, _)| i)
        .collect()
}

struct OverlapModel {
    /// χ coefficients at φ = 0, indexed like `rows`.
    a0: Vec<Complex64>,
    /// Σ_m d_m^j e^{-i E_{m,j} t} ⟨ψ_{n,0}|ψ_{m,j}⟩ per row n.
    b: Vec<Complex64>,
    rows: Vec<usize>,
}

impl OverlapModel {
    /// Precomputes the cross-Gram contraction so each angle costs O(n').
    fn build(cs_j: &CoherentState, cs0: &CoherentState, t: f64, grid: &RadialGrid) -> Result<Self> {
        let rows = significant(cs0);
        let cols = significant(cs_j);
        let pts = grid.points();
        let h = grid.spacing();
        let eval = |cs: &CoherentState, idx: &[usize]| -> Result<Vec<Vec<f64>>> {
            idx.iter()
                .map(|&n| {
                    let lvl = level(&cs.channel, n as u32)?;
                    Ok(pts
                        .iter()
                        .map(|&r| wavefunction_at(&cs.channel, &lvl, r))
                        .collect())
                })
                .collect()
        };
        let psi0 = eval(cs0, &rows)?;
        let psij = eval(cs_j, &cols)?;
        let col_phase: Vec<Complex64> = cols
            .iter()
            .map(|&m| {
                let e = level(&cs_j.channel, m as u32).map(|l| l.energy)?;
                Ok(Complex64::from_polar(cs_j.coeffs[m], -e * t))
            })
            .collect::<Result<Vec<_>>>()?;
        let b = psi0
            .iter()
            .map(|row0| {
                let mut acc = Complex64::ZERO;
                for (rowj, phase) in psij.iter().zip(&col_phase) {
                    // trapezoid inner product ⟨ψ_{n,0}|ψ_{m,j}⟩
                    let mut g = 0.0;
                    for (a, b) in row0.iter().zip(rowj) {
                        g += a * b;
                    }
                    g -= 0.5 * (row0[0] * rowj[0] + row0[row0.len() - 1] * rowj[rowj.len() - 1]);
                    acc += phase * (g * h);
                }
                acc
            })
            .collect();
        let a0 = rows
            .iter()
            .map(|&n| {
                let e = level(&cs0.channel, n as u32).map(|l| l.energy)?;
                Ok(Complex64::from_polar(cs0.coeffs[n], -e * t))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { a0, b, rows })
    }

    fn overlap(&self, phi: f64, generator: PhaseGenerator, lambda_bar0: f64) -> f64 {
        let offset = match generator {
            PhaseGenerator::Centered => -lambda_bar0 + 0.5,
            PhaseGenerator::Plain => 0.0,
        };
        let mut acc = Complex64::ZERO;
        for ((&n, a), b) in self.rows.iter().zip(&self.a0).zip(&self.b) {
            let chi_n = a * Complex64::from_polar(1.0, (n as f64 + offset) * phi);
            acc += chi_n.conj() * b;
        }
        acc.norm_sqr()
    }
}

/// Coarse scan over [0, 2π) followed by golden-section refinement of the
/// best angle to better than 1e-4 rad.
pub fn estimate_angle_with(
    cs_j: &CoherentState,
    cs0: &CoherentState,
    t: f64,
    grid: &RadialGrid,
    coarse_steps: usize,
    generator: PhaseGenerator,
) -> Result<RotationScan> {
    if coarse_steps < 4 {
        return Err(Error::Domain(format!(
            "need at least 4 coarse steps, got {coarse_steps}"
        )));
    }
    let model = OverlapModel::build(cs_j, cs0, t, grid)?;
    let lb0 = cs0.channel.lambda_bar_j;
    let tau = 2.0 * std::f64::consts::PI;
    let phi_grid: Vec<f64> = (0..coarse_steps)
        .map(|i| tau * i as f64 / coarse_steps as f64)
        .collect();
    let overlaps: Vec<f64> = phi_grid
        .iter()
        .map(|&phi| model.overlap(phi, generator, lb0))
        .collect();
    let best = overlaps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    let step = tau / coarse_steps as f64;
    // golden-section maximization on the bracketing interval
    let (mut a, mut b) = (phi_grid[best] - step, phi_grid[best] + step);
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = model.overlap(x1, generator, lb0);
    let mut f2 = model.overlap(x2, generator, lb0);
    while (b - a) > 1e-5 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = model.overlap(x2, generator, lb0);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = model.overlap(x1, generator, lb0);
        }
    }
    let phi_star = (0.5 * (a + b)).rem_euclid(tau);
    let overlap_star = model.overlap(phi_star, generator, lb0);
    Ok(RotationScan {
        j: cs_j.channel.j,
        t,
        phi_grid,
        overlaps,
        phi_star,
        overlap_star,
        degenerate: overlap_star < 0.5,
    })
}

/// `estimate_angle_with` using the projection-eigenvalue generator.
pub fn estimate_angle(
    cs_j: &CoherentState,
    cs0: &CoherentState,
    t: f64,
    grid: &RadialGrid,
    coarse_steps: usize,
) -> Result<RotationScan> {
    estimate_angle_with(cs_j, cs0, t, grid, coarse_steps, PhaseGenerator::Centered)
}

/// One row of an angle sweep.
#[derive(Debug, Clone)]
pub struct AngleSweepEntry {
    pub j: u32,
    pub phi_star: f64,
    /// Wrapped angle continued past 2π for monotone presentation.
    pub phi_unwrapped: f64,
    pub overlap_star: f64,
    pub degenerate: bool,
}

/// Runs `estimate_angle` for each j against the shared j = 0 reference and
/// unwraps the angles modulo 2π.
pub fn angle_sweep(
    cs0: &CoherentState,
    j_list: &[u32],
    t: f64,
    alpha: f64,
    n_prime: Option<u32>,
    grid: &RadialGrid,
    coarse_steps: usize,
) -> Result<Vec<AngleSweepEntry>> {
    let tau = 2.0 * std::f64::consts::PI;
    let mut prev = 0.0f64;
    let mut turns = 0.0f64;
    let mut out = Vec::with_capacity(j_list.len());
    for &j in j_list {
        let ch = crate::molecule::approx_channel(&cs0.channel.params, j)?;
        let cs_j = crate::wavepacket::build_cs(&ch, alpha, n_prime.unwrap_or(ch.n_max))?;
        let scan = estimate_angle(&cs_j, cs0, t, grid, coarse_steps)?;
        if scan.phi_star + 1e-9 < prev {
            turns += tau;
        }
        prev = scan.phi_star;
        out.push(AngleSweepEntry {
            j,
            phi_star: scan.phi_star,
            phi_unwrapped: scan.phi_star + turns,
            overlap_star: scan.overlap_star,
            degenerate: scan.degenerate,
        });
    }
    Ok(out)
}
