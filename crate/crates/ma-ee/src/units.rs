//! Decibel and dBm conversions.
//!
//! All internal quantities are SI (watts, meters, seconds, radians). These
//! helpers are used only when crossing the configuration boundary, where
//! powers are written in dBm and gains in dB.

/// Converts a power in dBm to watts: `P[W] = 10^((dBm - 30)/10)`.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Converts a power in watts to dBm.
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Converts a power ratio in dB to a linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to dB.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dbm_round_trip() {
        for dbm in [-80.0, -30.0, 0.0, 25.0, 30.0, 46.0] {
            assert_relative_eq!(watts_to_dbm(dbm_to_watts(dbm)), dbm, max_relative = 1e-12);
        }
    }

    #[test]
    fn known_conversions() {
        assert_relative_eq!(dbm_to_watts(30.0), 1.0, max_relative = 1e-15);
        assert_relative_eq!(dbm_to_watts(46.0), 39.810717055349725, max_relative = 1e-12);
        assert_relative_eq!(dbm_to_watts(-80.0), 1e-11, max_relative = 1e-12);
        assert_relative_eq!(db_to_linear(-40.0), 1e-4, max_relative = 1e-12);
        assert_relative_eq!(linear_to_db(100.0), 20.0, max_relative = 1e-12);
    }
}
