//! Subcommand implementations. Every run is fully determined by the config:
//! numeric CSV cells use fixed 12-significant-digit scientific notation so
//! identical configs produce byte-identical artifacts.

use crate::config::{OutputFormat, RunConfig};
use crate::{wgr, CliError};
use rotmorse::eigensystem::{fd_spectrum_oracle, wavefunction_on_grid};
use rotmorse::molecule::{approx_channel, channel_sweep};
use rotmorse::rotation::angle_sweep;
use rotmorse::units::au_to_ps;
use rotmorse::wavepacket::{build_cs, density, detect_peaks, CoherentState};
use rotmorse::wigner::{marginal_position, wigner_transform, WignerSpec};
use rotmorse::{Error, MoleculeParams, RadialGrid};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// 12 significant digits, locale-free.
fn sig(x: f64) -> String {
    format!("{x:.11e}")
}

fn lib_err(e: Error) -> CliError {
    match e {
        Error::Coverage { .. } => CliError::Coverage(e.to_string()),
        other => CliError::Solver(other.to_string()),
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

fn ensure_out(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(&cfg.out_dir)
        .map_err(|e| CliError::Io(format!("creating {}: {e}", cfg.out_dir.display())))?;
    Ok(cfg.out_dir.clone())
}

fn coherent_state(
    cfg: &RunConfig,
    params: &MoleculeParams,
    j: u32,
) -> Result<CoherentState, CliError> {
    let ch = approx_channel(params, j).map_err(lib_err)?;
    build_cs(&ch, cfg.alpha, cfg.n_prime_for(ch.n_max)).map_err(lib_err)
}

pub fn run_channel(cfg: &RunConfig) -> Result<(), CliError> {
    let out = ensure_out(cfg)?;
    let params = cfg.params()?;
    let rows = channel_sweep(&params, &cfg.j_list).map_err(lib_err)?;
    let mut csv = String::from("j,rj_approx,rj_solved,Dj,c0,c1,c2,lambda,lambda_bar,n_max\n");
    for row in &rows {
        let solved = row
            .rj_solved
            .as_ref()
            .map_err(|e| CliError::Solver(format!("j = {}: {e}", row.j)))?;
        let ch = &row.channel;
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            row.j,
            sig(row.rj_approx),
            sig(*solved),
            sig(row.dj),
            sig(ch.c0),
            sig(ch.c1),
            sig(ch.c2),
            sig(ch.lambda_j),
            sig(ch.lambda_bar_j),
            ch.n_max
        )
        .unwrap();
    }
    let path = out.join("channel.csv");
    write_text(&path, &csv)?;
    println!("wrote {}", path.display());
    Ok(())
}

#[derive(Serialize)]
struct EvolveSidecar {
    j: u32,
    alpha: f64,
    n_prime: u32,
    t_au: f64,
    t_ps: f64,
    t_cl_au: f64,
    t_cl_ps: f64,
    t_rev_au: f64,
    t_rev_ps: f64,
    norm_defect: f64,
    peak_positions: Vec<f64>,
    energies: Vec<f64>,
}

pub fn run_evolve(cfg: &RunConfig) -> Result<(), CliError> {
    let out = ensure_out(cfg)?;
    let params = cfg.params()?;
    let grid = cfg.grid()?;
    for &j in &cfg.j_list {
        let cs = coherent_state(cfg, &params, j)?;
        let periods = cs.periods();
        for spec in &cfg.times {
            let t = spec.resolve(periods.t_rev)?;
            let st = cs.evolve(t, &grid);
            let dens = density(&st);
            let mut csv = String::from("r,density\n");
            for (r, d) in grid.points().iter().zip(&dens) {
                writeln!(csv, "{},{}", sig(*r), sig(*d)).unwrap();
            }
            let stem = format!("evolve_j{j}_t{}", spec.label());
            write_text(&out.join(format!("{stem}.csv")), &csv)?;

            let sidecar = EvolveSidecar {
                j,
                alpha: cs.alpha,
                n_prime: cs.n_prime,
                t_au: t,
                t_ps: au_to_ps(t),
                t_cl_au: periods.t_cl_ground,
                t_cl_ps: au_to_ps(periods.t_cl_ground),
                t_rev_au: periods.t_rev,
                t_rev_ps: au_to_ps(periods.t_rev),
                norm_defect: st.norm_defect,
                peak_positions: detect_peaks(&grid.points(), &dens),
                energies: cs.level_energies(),
            };
            let json = serde_json::to_string_pretty(&sidecar).unwrap();
            write_text(&out.join(format!("{stem}.json")), &json)?;
            println!("wrote {}/{stem}.{{csv,json}}", out.display());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WignerSidecar {
    j: u32,
    t_au: f64,
    norm_defect: f64,
    max_imag_residue: f64,
    min_w: f64,
    max_w: f64,
    negativity_volume: f64,
}

pub fn run_wigner(cfg: &RunConfig) -> Result<(), CliError> {
    let out = ensure_out(cfg)?;
    let params = cfg.params()?;
    let grid = cfg.grid()?;
    let ps = &cfg.phase_space;
    let spec = WignerSpec {
        r_min: ps.r_min,
        r_max: ps.r_max,
        n_r: ps.n_r,
        p_max: ps.p_max,
        n_p: ps.n_p,
    };
    for &j in &cfg.j_list {
        let cs = coherent_state(cfg, &params, j)?;
        let t_rev = cs.periods().t_rev;
        for tspec in &cfg.times {
            let t = tspec.resolve(t_rev)?;
            let st = cs.evolve(t, &grid);
            let wt = wigner_transform(&st, &spec).map_err(lib_err)?;
            let stem = format!("wigner_j{j}_t{}", tspec.label());
            match cfg.format {
                OutputFormat::Csv => {
                    let mut csv = String::from("r,p,W\n");
                    for i in 0..wt.grid.n_r {
                        for k in 0..wt.grid.n_p {
                            writeln!(
                                csv,
                                "{},{},{}",
                                sig(wt.grid.r_at(i)),
                                sig(wt.grid.p_at(k)),
                                sig(wt.grid.value(i, k))
                            )
                            .unwrap();
                        }
                    }
                    write_text(&out.join(format!("{stem}.csv")), &csv)?;
                }
                OutputFormat::Bin => {
                    let path = out.join(format!("{stem}.wgr"));
                    wgr::write_wgr(&wt.grid, &path)
                        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
                }
            }
            let negativity: f64 = {
                let cell = wt.grid.r_spacing() * wt.grid.p_spacing();
                wt.grid
                    .values
                    .iter()
                    .filter(|v| **v < 0.0)
                    .map(|v| -v * cell)
                    .sum()
            };
            let sidecar = WignerSidecar {
                j,
                t_au: t,
                norm_defect: wt.norm_defect,
                max_imag_residue: wt.max_imag_residue,
                min_w: wt.grid.min_value(),
                max_w: wt.grid.max_value(),
                negativity_volume: negativity,
            };
            let json = serde_json::to_string_pretty(&sidecar).unwrap();
            write_text(&out.join(format!("{stem}.json")), &json)?;
            println!("wrote {}/{stem}.*", out.display());
        }
    }
    Ok(())
}

pub fn run_rotate(cfg: &RunConfig) -> Result<(), CliError> {
    let out = ensure_out(cfg)?;
    let params = cfg.params()?;
    let grid = cfg.grid()?;
    let ch0 = approx_channel(&params, 0).map_err(lib_err)?;
    let cs0 = build_cs(&ch0, cfg.alpha, cfg.n_prime_for(ch0.n_max)).map_err(lib_err)?;
    let t = cfg.times[0].resolve(cs0.periods().t_rev)?;
    let n_prime = match cfg.n_prime {
        crate::config::NPrimePolicy::Fixed(n) => Some(n),
        crate::config::NPrimePolicy::Auto(_) => None,
    };
    let entries =
        angle_sweep(&cs0, &cfg.j_list, t, cfg.alpha, n_prime, &grid, 720).map_err(lib_err)?;
    let mut csv = String::from("j,phi_rad,phi_over_pi,phi_unwrapped_rad,overlap,degenerate\n");
    for e in &entries {
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            e.j,
            sig(e.phi_star),
            sig(e.phi_star / std::f64::consts::PI),
            sig(e.phi_unwrapped),
            sig(e.overlap_star),
            e.degenerate
        )
        .unwrap();
    }
    let path = out.join("rotate.csv");
    write_text(&path, &csv)?;
    println!("wrote {}", path.display());
    Ok(())
}

#[derive(Serialize)]
struct Check {
    name: String,
    status: &'static str,
    detail: String,
}

impl Check {
    fn pass(name: &str, detail: String) -> Self {
        Check {
            name: name.into(),
            status: "pass",
            detail,
        }
    }
    fn degraded(name: &str, detail: String) -> Self {
        Check {
            name: name.into(),
            status: "degraded",
            detail,
        }
    }
    fn fail(name: &str, detail: String) -> Self {
        Check {
            name: name.into(),
            status: "fail",
            detail,
        }
    }
}

/// Oracle/property suite. `perturb_energy` shifts each analytic level by
/// `perturb_energy · (n + 1/2)` before the spectrum comparison — a negative
/// control proving the check can fail.
pub fn run_validate(cfg: &RunConfig, perturb_energy: f64) -> Result<(), CliError> {
    let out = ensure_out(cfg)?;
    let params = cfg.params()?;
    let grid = cfg.grid()?;
    let mut checks = Vec::new();

    // analytic spectrum against the finite-difference oracle
    let oracle_grid = RadialGrid::new(3.8, 8.5, 4096).map_err(lib_err)?;
    for (j, tol) in [(0u32, 1e-5), (60, 2e-5), (81, 2e-5)] {
        let name = format!("fd_spectrum_j{j}");
        let ch = approx_channel(&params, j).map_err(lib_err)?;
        let fd = fd_spectrum_oracle(&params, j, &oracle_grid, 20).map_err(lib_err)?;
        let mut max_err = 0.0f64;
        for n in 0..=20u32 {
            let e = rotmorse::eigensystem::level(&ch, n)
                .map_err(lib_err)?
                .energy
                + perturb_energy * (n as f64 + 0.5);
            max_err = max_err.max((e - fd[n as usize]).abs());
        }
        let detail = format!("max |analytic - FD| = {max_err:.3e} (tolerance {tol:.0e})");
        checks.push(if max_err < tol {
            Check::pass(&name, detail)
        } else {
            Check::fail(&name, detail)
        });
    }

    // orthonormality on the configured grid, with a fine-grid retry that
    // distinguishes "grid too coarse" from a genuine defect
    let ch0 = approx_channel(&params, 0).map_err(lib_err)?;
    let gram_dev = |g: &RadialGrid| -> Result<f64, CliError> {
        let waves: Result<Vec<Vec<f64>>, CliError> = (0..=20)
            .map(|n| Ok(wavefunction_on_grid(&ch0, n, g).map_err(lib_err)?.values))
            .collect();
        let waves = waves?;
        let mut worst = 0.0f64;
        for (n, a) in waves.iter().enumerate() {
            for (m, b) in waves.iter().enumerate() {
                let prod: Vec<f64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
                let target = if n == m { 1.0 } else { 0.0 };
                worst = worst.max((g.quadrature(&prod) - target).abs());
            }
        }
        Ok(worst)
    };
    let dev = gram_dev(&grid)?;
    if dev < 1e-6 {
        checks.push(Check::pass(
            "orthonormality",
            format!("max Gram deviation {dev:.3e} on the configured grid"),
        ));
    } else {
        let fine_dev = gram_dev(&oracle_grid)?;
        let detail = format!(
            "deviation {dev:.3e} on the configured grid, {fine_dev:.3e} on a fine reference grid"
        );
        checks.push(if fine_dev < 1e-6 {
            Check::degraded("orthonormality", detail)
        } else {
            Check::fail("orthonormality", detail)
        });
    }

    // revival unitarity and the Wigner position marginal on the first j
    let cs = coherent_state(cfg, &params, cfg.j_list[0])?;
    let t_rev = cs.periods().t_rev;
    let unitarity = |g: &RadialGrid| {
        let mut worst = 0.0f64;
        for i in 0..50 {
            worst = worst.max(cs.evolve(t_rev * i as f64 / 49.0, g).norm_defect);
        }
        worst
    };
    let fine_wide = RadialGrid::new(0.6, 10.6, 4096).map_err(lib_err)?;
    let worst_defect = unitarity(&grid);
    if worst_defect < 1e-6 {
        checks.push(Check::pass(
            "revival_unitarity",
            format!("worst norm defect {worst_defect:.3e} over 50 times"),
        ));
    } else {
        let fine = unitarity(&fine_wide);
        let detail = format!(
            "worst norm defect {worst_defect:.3e} on the configured grid, {fine:.3e} on a fine reference grid"
        );
        checks.push(if fine < 1e-6 {
            Check::degraded("revival_unitarity", detail)
        } else {
            Check::fail("revival_unitarity", detail)
        });
    }

    let t = cfg.times[0].resolve(t_rev)?;
    let wigner_errs = |spec: &WignerSpec, g: &RadialGrid| -> Result<(f64, f64), CliError> {
        let st = cs.evolve(t, g);
        let wt = wigner_transform(&st, spec).map_err(lib_err)?;
        let marg = marginal_position(&wt.grid);
        let mut l_inf = 0.0f64;
        for (i, m) in marg.iter().enumerate() {
            let amp = st.base.evaluate_at(st.t, &[wt.grid.r_at(i)])[0];
            l_inf = l_inf.max((m - amp.norm_sqr()).abs());
        }
        Ok((l_inf, wt.norm_defect))
    };
    let ps = &cfg.phase_space;
    let spec = WignerSpec {
        r_min: ps.r_min,
        r_max: ps.r_max,
        n_r: ps.n_r,
        p_max: ps.p_max,
        n_p: ps.n_p,
    };
    let (l_inf, defect) = wigner_errs(&spec, &grid)?;
    if l_inf < 1e-3 && defect < 1e-3 {
        checks.push(Check::pass(
            "wigner_marginal",
            format!("position marginal L_inf {l_inf:.3e}, normalization defect {defect:.3e}"),
        ));
    } else {
        let reference = WignerSpec {
            r_min: 4.2,
            r_max: 7.0,
            n_r: 256,
            p_max: 60.0,
            n_p: 256,
        };
        let (ref_l_inf, ref_defect) = wigner_errs(&reference, &fine_wide)?;
        let detail = format!(
            "L_inf {l_inf:.3e} / defect {defect:.3e} on the configured window, \
             {ref_l_inf:.3e} / {ref_defect:.3e} on the reference window"
        );
        checks.push(if ref_l_inf < 1e-3 && ref_defect < 1e-3 {
            Check::degraded("wigner_marginal", detail)
        } else {
            Check::fail("wigner_marginal", detail)
        });
    }

    for c in &checks {
        println!("check {}: {} — {}", c.name, c.status, c.detail);
    }
    let json = serde_json::to_string_pretty(&checks).unwrap();
    write_text(&out.join("validate.json"), &json)?;

    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.status == "fail")
        .map(|c| c.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "{} check(s) failed: {}",
            failed.len(),
            failed.join(", ")
        )))
    }
}
