//! Analytic bound states of the quadratic-in-y rotating-Morse channel, plus an
//! independent finite-difference spectral oracle for the exact potential.
//!
//! The exponent parameter obeys s = lambda_bar_j - n - 1/2 (equivalently
//! 2s + 2n = 2 lambda_bar_j - 1), and the energy is
//!
//!   E_{n,j} = 2 (c1/lambda) (n + 1/2) - (c2/lambda^2) (n + 1/2)^2
//!             + c0 - c1^2/c2,
//!
//! which reduces to the Morse spectrum -D (1 - (n+1/2)/lambda0)^2 at j = 0.
//! Normalizations are kept in log domain: Γ(2 lambda_bar - n) overflows f64
//! for the I₂ well (2 lambda_bar ≈ 233).

use crate::error::Error;
use crate::grid::RadialGrid;
use crate::molecule::{effective_potential, MoleculeParams, RotationalChannel};
use crate::special::ln_gamma;
use crate::Result;

/// One bound ro-vibrational level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenLevel {
    pub n: u32,
    pub j: u32,
    /// Exponent parameter s = lambda_bar_j - n - 1/2 (> 0 for bound states).
    pub s: f64,
    /// Energy E_{n,j} in a.u.
    pub energy: f64,
    /// ln N_{n,j}.
    pub log_norm: f64,
}

/// Computes level n of a channel.
pub fn level(channel: &RotationalChannel, n: u32) -> Result<EigenLevel> {
    if n > channel.n_max {
        return Err(Error::LevelOutOfRange {
            n,
            n_max: channel.n_max,
        });
    }
    let lb = channel.lambda_bar_j;
    let lam = channel.lambda_j;
    let nf = n as f64;
    let s = lb - nf - 0.5;
    let energy = 2.0 * channel.c1 / lam * (nf + 0.5)
        - channel.c2 / (lam * lam) * (nf + 0.5) * (nf + 0.5)
        + channel.c0
        - channel.c1 * channel.c1 / channel.c2;
    let log_norm = 0.5
        * (channel.params.beta.ln() + (2.0 * lb - 2.0 * nf - 1.0).ln() + ln_gamma(nf + 1.0)
            - ln_gamma(2.0 * lb - nf));
    Ok(EigenLevel {
        n,
        j: channel.j,
        s,
        energy,
        log_norm,
    })
}

/// Energy ladder for n = 0..=n_top.
pub fn energies(channel: &RotationalChannel, n_top: u32) -> Result<Vec<f64>> {
    (0..=n_top)
        .map(|n| level(channel, n).map(|l| l.energy))
        .collect()
}

/// Associated Laguerre polynomial L_n^a(y) by the three-term recurrence
/// (k+1) L_{k+1} = (2k + a + 1 - y) L_k - (k + a) L_{k-1}.
pub fn laguerre(n: u32, a: f64, y: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - y;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - y) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// ψ_{n,j}(r), assembled in log domain:
/// sign(L) · exp(log_norm + s ln y - y/2 + ln|L_n^{2s}(y)|).
pub fn wavefunction_at(channel: &RotationalChannel, lvl: &EigenLevel, r: f64) -> f64 {
    let ln_y = channel.ln_y(r);
    let y = ln_y.exp();
    let l = laguerre(lvl.n, 2.0 * lvl.s, y);
    if l == 0.0 {
        return 0.0;
    }
    let ln_amp = lvl.log_norm + lvl.s * ln_y - 0.5 * y + l.abs().ln();
    l.signum() * ln_amp.exp()
}

/// Grid evaluation of ψ_{n,j} together with its quadrature-norm defect.
#[derive(Debug, Clone)]
pub struct GridWavefunction {
    pub values: Vec<f64>,
    /// |1 - ∫ψ² dr| on this grid; large values flag a grid that is too
    /// coarse or too narrow.
    pub norm_defect: f64,
}

pub fn wavefunction_on_grid(
    channel: &RotationalChannel,
    n: u32,
    grid: &RadialGrid,
) -> Result<GridWavefunction> {
    let lvl = level(channel, n)?;
    let values: Vec<f64> = grid
        .points()
        .iter()
        .map(|&r| wavefunction_at(channel, &lvl, r))
        .collect();
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    let norm_defect = (1.0 - grid.quadrature(&sq)).abs();
    Ok(GridWavefunction {
        values,
        norm_defect,
    })
}

/// Widens `grid` symmetrically until the boundary amplitude of level n is
/// below 1e-10 of its peak, preserving the point density.
pub fn widen_for_level(
    channel: &RotationalChannel,
    n: u32,
    grid: &RadialGrid,
) -> Result<RadialGrid> {
    level(channel, n)?; // validate n before iterating
    let mut g = *grid;
    for _ in 0..32 {
        let wf = wavefunction_on_grid(channel, n, &g)?;
        let peak = wf.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let edge = wf.values[0].abs().max(wf.values[wf.values.len() - 1].abs());
        if edge < 1e-10 * peak {
            return Ok(g);
        }
        let span = g.r_max - g.r_min;
        let density = g.count as f64 / span;
        let r_min = (g.r_min - 0.25 * span).max(0.05 * channel.params.r0);
        let r_max = g.r_max + 0.25 * span;
        let count = ((r_max - r_min) * density).ceil() as usize;
        g = RadialGrid::new(r_min, r_max, count)?;
    }
    Ok(g)
}

/// Lowest k+1 eigenvalues of the symmetric tridiagonal finite-difference
/// Hamiltonian -(1/2mu) d²/dr² + V_eff(r) with Dirichlet ends, via Sturm
/// sequence bisection. This is the independent validation path for the
/// analytic spectrum.
pub fn fd_spectrum_oracle(
    params: &MoleculeParams,
    j: u32,
    grid: &RadialGrid,
    k: u32,
) -> Result<Vec<f64>> {
    if k > 30 {
        return Err(Error::Domain(format!(
            "fd oracle supports k <= 30, got {k}"
        )));
    }
    let n = grid.count;
    let h = grid.spacing();
    let kinetic = 1.0 / (params.mu * h * h);
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        diag.push(kinetic + effective_potential(params, j, grid.point(i))?);
    }
    let off = -0.5 * kinetic; // constant off-diagonal
    let off2 = off * off;

    // Sturm count: number of eigenvalues strictly below x.
    let count_below = |x: f64| -> usize {
        let mut cnt = 0usize;
        let mut q = diag[0] - x;
        if q < 0.0 {
            cnt += 1;
        }
        for d in diag.iter().skip(1) {
            if q == 0.0 {
                q = 1e-300;
            }
            q = d - x - off2 / q;
            if q < 0.0 {
                cnt += 1;
            }
        }
        cnt
    };

    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, d) in diag.iter().enumerate() {
        let radius = if i == 0 || i == n - 1 {
            off.abs()
        } else {
            2.0 * off.abs()
        };
        lo = lo.min(d - radius);
        hi = hi.max(d + radius);
    }

    let mut out = Vec::with_capacity(k as usize + 1);
    for idx in 0..=k as usize {
        let (mut a, mut b) = (lo, hi);
        let mut converged = false;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if count_below(mid) > idx {
                b = mid;
            } else {
                a = mid;
            }
            if (b - a) < 1e-13 * (1.0 + mid.abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::EigensolverFailure(format!(
                "bisection for eigenvalue {idx} did not converge"
            )));
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::approx_channel;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn i2_channel(j: u32) -> RotationalChannel {
        approx_channel(&MoleculeParams::i2(), j).unwrap()
    }

    #[test]
    fn tenth_level_energies() {
        // reference values for the 10th level at j = 0, 60, 81
        for (j, e) in [(0, -0.04719), (60, -0.046595), (81, -0.046108)] {
            let lvl = level(&i2_channel(j), 10).unwrap();
            assert_abs_diff_eq!(lvl.energy, e, epsilon = 1e-5);
        }
    }

    #[test]
    fn level_rejects_out_of_range() {
        let ch = i2_channel(0);
        assert!(level(&ch, ch.n_max + 1).is_err());
    }

    #[test]
    fn bound_count_i2() {
        assert_eq!(i2_channel(0).n_max + 1, 117);
    }

    #[test]
    fn constraint_identity() {
        let ch = i2_channel(60);
        for n in 0..=ch.n_max {
            let lvl = level(&ch, n).unwrap();
            assert_relative_eq!(
                2.0 * lvl.s + 2.0 * n as f64,
                2.0 * ch.lambda_bar_j - 1.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn s_energy_consistency() {
        // s² c2/lambda² = c0 - E for all bound n
        for j in [0, 60, 81] {
            let ch = i2_channel(j);
            for n in (0..=ch.n_max).step_by(13) {
                let lvl = level(&ch, n).unwrap();
                let lhs = lvl.s * lvl.s * ch.c2 / (ch.lambda_j * ch.lambda_j);
                assert_relative_eq!(lhs, ch.c0 - lvl.energy, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn morse_limit_energies() {
        let ch = i2_channel(0);
        let lam = ch.params.lambda0();
        for n in 0..=ch.n_max {
            let lvl = level(&ch, n).unwrap();
            let morse = -ch.params.d * (1.0 - (n as f64 + 0.5) / lam).powi(2);
            assert_relative_eq!(lvl.energy, morse, max_relative = 1e-12);
        }
    }

    #[test]
    fn energies_increase_and_gaps_shrink() {
        let ch = i2_channel(60);
        let es = energies(&ch, ch.n_max).unwrap();
        for w in es.windows(2) {
            assert!(w[1] > w[0]);
        }
        for w in es.windows(3) {
            assert!(w[2] - w[1] < w[1] - w[0]);
        }
    }

    #[test]
    fn laguerre_base_cases() {
        assert_eq!(laguerre(0, 3.7, 10.0), 1.0);
        assert_eq!(laguerre(1, 2.0, 3.0), 0.0); // 1 + a - y
    }

    #[test]
    fn laguerre_against_series_oracle() {
        // explicit polynomial L_n^a(y) = Σ_k (-1)^k C(n+a, n-k) y^k / k!
        // with the binomial formed as a plain product, an independent route
        // from the recurrence.
        fn series(n: u32, a: f64, y: f64) -> f64 {
            let mut total = 0.0;
            for k in 0..=n {
                let mut binom = 1.0;
                for i in (k + 1)..=n {
                    binom *= a + i as f64;
                }
                for i in 1..=(n - k) {
                    binom /= i as f64;
                }
                let mut term = binom;
                for i in 1..=k {
                    term *= -y / i as f64;
                }
                total += term;
            }
            total
        }
        let cases = [
            (5u32, 212.1, 100.0),
            (3, 0.5, 2.0),
            (8, 10.0, 25.0),
            (12, 230.0, 40.0),
        ];
        for (n, a, y) in cases {
            // the alternating series loses a few digits to cancellation at
            // moderate n, so compare a little looser than machine precision
            assert_relative_eq!(laguerre(n, a, y), series(n, a, y), max_relative = 1e-9);
        }
    }

    #[test]
    fn ground_state_nodeless_and_normalized() {
        let ch = i2_channel(0);
        let grid = RadialGrid::new(4.2, 7.0, 4096).unwrap();
        let wf = wavefunction_on_grid(&ch, 0, &grid).unwrap();
        assert!(wf.values.iter().all(|&v| v >= 0.0));
        assert!(wf.norm_defect < 1e-6, "defect {}", wf.norm_defect);
    }

    #[test]
    fn oscillation_theorem_n10() {
        let ch = i2_channel(0);
        let grid = RadialGrid::new(4.2, 7.0, 4096).unwrap();
        let wf = wavefunction_on_grid(&ch, 10, &grid).unwrap();
        let changes = wf
            .values
            .windows(2)
            .filter(|w| w[0] != 0.0 && w[1] != 0.0 && w[0].signum() != w[1].signum())
            .count();
        assert_eq!(changes, 10);
    }

    #[test]
    fn orthogonality_3_7() {
        let ch = i2_channel(0);
        let grid = RadialGrid::new(4.2, 7.0, 4096).unwrap();
        let a = wavefunction_on_grid(&ch, 3, &grid).unwrap().values;
        let b = wavefunction_on_grid(&ch, 7, &grid).unwrap().values;
        let prod: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        assert!(grid.quadrature(&prod).abs() < 1e-8);
    }

    #[test]
    fn coarse_grid_flags_defect() {
        let ch = i2_channel(0);
        let grid = RadialGrid::new(4.9, 5.2, 32).unwrap();
        // not an error, but the defect must report the inadequate grid
        let wf = wavefunction_on_grid(&ch, 10, &grid).unwrap();
        assert!(wf.norm_defect > 1e-3);
    }

    #[test]
    fn widen_reaches_negligible_boundary() {
        let ch = i2_channel(0);
        let grid = RadialGrid::new(4.9, 5.2, 128).unwrap();
        let wide = widen_for_level(&ch, 20, &grid).unwrap();
        let wf = wavefunction_on_grid(&ch, 20, &wide).unwrap();
        let peak = wf.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let edge = wf.values[0].abs().max(wf.values.last().unwrap().abs());
        assert!(edge < 1e-10 * peak);
    }

    #[test]
    fn fd_oracle_matches_analytic_j0() {
        let p = MoleculeParams::i2();
        let ch = i2_channel(0);
        let grid = RadialGrid::new(3.8, 8.5, 4096).unwrap();
        let fd = fd_spectrum_oracle(&p, 0, &grid, 10).unwrap();
        let e10 = level(&ch, 10).unwrap().energy;
        assert_abs_diff_eq!(fd[10], e10, epsilon = 1e-5);
    }

    #[test]
    fn fd_oracle_harmonic_bottom() {
        let p = MoleculeParams::i2();
        let grid = RadialGrid::new(3.8, 8.5, 4096).unwrap();
        let fd = fd_spectrum_oracle(&p, 0, &grid, 0).unwrap();
        let omega = p.beta * (2.0 * p.d / p.mu).sqrt();
        let harmonic = -p.d + 0.5 * omega;
        assert_relative_eq!(fd[0], harmonic, max_relative = 0.01);
    }

    #[test]
    fn fd_oracle_rejects_large_k() {
        let p = MoleculeParams::i2();
        let grid = RadialGrid::new(3.8, 8.5, 512).unwrap();
        assert!(fd_spectrum_oracle(&p, 0, &grid, 31).is_err());
    }
}
