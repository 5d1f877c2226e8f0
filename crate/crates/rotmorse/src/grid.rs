//! Uniform radial evaluation grids.

use crate::error::Error;
use crate::Result;

/// A uniform grid of `count` points on [r_min, r_max].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, count: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!("need count >= 2, got {count}")));
        }
        Ok(Self {
            r_min,
            r_max,
            count,
        })
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.r_min + self.spacing() * i as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    /// Trapezoid quadrature of sampled values over this grid.
    pub fn quadrature(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.count);
        let h = self.spacing();
        let interior: f64 = values[1..values.len() - 1].iter().sum();
        h * (interior + 0.5 * (values[0] + values[values.len() - 1]))
    }
}
