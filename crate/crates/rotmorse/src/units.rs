//! Unit conversions. The computational contract is atomic units throughout;
//! conversions exist for display only.

/// One atomic unit of time in seconds.
pub const AU_TIME_SECONDS: f64 = 2.418884326e-17;

/// Converts a time in atomic units to picoseconds.
pub fn au_to_ps(t_au: f64) -> f64 {
    t_au * AU_TIME_SECONDS * 1e12
}

/// Converts a time in picoseconds to atomic units.
pub fn ps_to_au(t_ps: f64) -> f64 {
    t_ps / (AU_TIME_SECONDS * 1e12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = 1.49756e6;
        assert!((ps_to_au(au_to_ps(t)) - t).abs() < 1e-6);
    }
}
