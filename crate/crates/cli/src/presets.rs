//! Fixed parameter grids for the two bundled figure presets.

/// Clone-number range common to both presets.
pub const PRESET_M: std::ops::RangeInclusive<usize> = 1..=20;

/// Absorption-probability curve family at fixed frequency ratio.
pub const FIGURE2_OMEGA_OVER_T: f64 = 4.0;
pub const FIGURE2_GAMMA0: [f64; 5] = [0.1, 0.5, 0.9, 0.99, 1.0];

/// Frequency-ratio curve family at fixed absorption probability.
pub const FIGURE3_GAMMA0: f64 = 0.95;
pub const FIGURE3_OMEGA_OVER_T: [f64; 5] = [1.0, 2.0, 4.0, 10.0, 20.0];
