//! "WGR1" binary grid format: magic bytes, two u32 LE dims (n_r, n_p), four
//! f64 LE bounds (r_min, r_max, p_min, p_max), then n_r·n_p f64 LE values
//! row-major in r.

use rotmorse::PhaseSpaceGrid;
use std::io::{Read, Write};
use std::path::Path;

pub const MAGIC: &[u8; 4] = b"WGR1";

pub fn write_wgr(grid: &PhaseSpaceGrid, path: &Path) -> std::io::Result<()> {
    let mut buf = Vec::with_capacity(4 + 8 + 32 + 8 * grid.values.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(grid.n_r as u32).to_le_bytes());
    buf.extend_from_slice(&(grid.n_p as u32).to_le_bytes());
    for b in [grid.r_min, grid.r_max, grid.p_min, grid.p_max] {
        buf.extend_from_slice(&b.to_le_bytes());
    }
    for v in &grid.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(&buf)
}

fn bad(msg: &str) -> std::io::Error {
    std::io::Error::new(std::io::ErrorKind::InvalidData, msg)
}

pub fn read_wgr(path: &Path) -> std::io::Result<PhaseSpaceGrid> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() < 44 || &bytes[..4] != MAGIC {
        return Err(bad("not a WGR1 file"));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let n_r = u32_at(4) as usize;
    let n_p = u32_at(8) as usize;
    let expected = 44 + 8 * n_r * n_p;
    if bytes.len() != expected {
        return Err(bad(&format!(
            "expected {expected} bytes for {n_r} x {n_p}, got {}",
            bytes.len()
        )));
    }
    let values = (0..n_r * n_p).map(|i| f64_at(44 + 8 * i)).collect();
    Ok(PhaseSpaceGrid {
        r_min: f64_at(12),
        r_max: f64_at(20),
        p_min: f64_at(28),
        p_max: f64_at(36),
        n_r,
        n_p,
        values,
    })
}
