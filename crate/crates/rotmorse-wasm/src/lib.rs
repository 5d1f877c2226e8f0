//! Thin wasm-bindgen layer for the browser demo: three operations returning
//! flat arrays or JSON strings, nothing stateful. Build with
//! `wasm-pack build crates/rotmorse-wasm --target web`.

use rotmorse::molecule::approx_channel;
use rotmorse::rotation::estimate_angle;
use rotmorse::wavepacket::{build_cs, density, CoherentState};
use rotmorse::wigner::{wigner_transform, WignerSpec};
use rotmorse::{MoleculeParams, RadialGrid};
use wasm_bindgen::prelude::*;

fn state(j: u32, alpha: f64) -> Result<CoherentState, JsError> {
    let ch = approx_channel(&MoleculeParams::i2(), j).map_err(|e| JsError::new(&e.to_string()))?;
    build_cs(&ch, alpha, ch.n_max).map_err(|e| JsError::new(&e.to_string()))
}

/// |Φ(r, t)|² for I₂ on n points over [r_min, r_max]; t is a fraction of
/// the revival period.
#[wasm_bindgen]
pub fn density_snapshot(
    j: u32,
    alpha: f64,
    t_frac: f64,
    r_min: f64,
    r_max: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    let cs = state(j, alpha)?;
    let grid = RadialGrid::new(r_min, r_max, n).map_err(|e| JsError::new(&e.to_string()))?;
    let st = cs.evolve(t_frac * cs.periods().t_rev, &grid);
    Ok(density(&st))
}

/// Wigner values, row-major in r, on an n×n window r ∈ [4.2, 7.0],
/// p ∈ [-60, 60); n must be even.
#[wasm_bindgen]
pub fn wigner_snapshot(j: u32, alpha: f64, t_frac: f64, n: usize) -> Result<Vec<f64>, JsError> {
    let cs = state(j, alpha)?;
    let support = RadialGrid::new(0.6, 10.6, 2048).map_err(|e| JsError::new(&e.to_string()))?;
    let st = cs.evolve(t_frac * cs.periods().t_rev, &support);
    let spec = WignerSpec {
        r_min: 4.2,
        r_max: 7.0,
        n_r: n,
        p_max: 60.0,
        n_p: n,
    };
    let wt = wigner_transform(&st, &spec).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(wt.grid.values)
}

/// Overlap-vs-angle scan against the j = 0 reference at t_frac·T_rev;
/// returns JSON {"phi": [...], "overlap": [...], "phi_star", "overlap_star"}.
#[wasm_bindgen]
pub fn rotation_scan(j: u32, alpha: f64, t_frac: f64, steps: usize) -> Result<String, JsError> {
    let cs0 = state(0, alpha)?;
    let cs_j = state(j, alpha)?;
    let t = t_frac * cs0.periods().t_rev;
    let grid = RadialGrid::new(3.8, 8.5, 2048).map_err(|e| JsError::new(&e.to_string()))?;
    let scan =
        estimate_angle(&cs_j, &cs0, t, &grid, steps).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(serde_json::json!({
        "phi": scan.phi_grid,
        "overlap": scan.overlaps,
        "phi_star": scan.phi_star,
        "overlap_star": scan.overlap_star,
        "degenerate": scan.degenerate,
    })
    .to_string())
}
