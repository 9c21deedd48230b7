//! CODATA 2018 constants used throughout the device models.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Elementary charge (C).
    pub q: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Vacuum permeability (T m / A).
    pub mu0: f64,
    /// Boltzmann constant (J / K).
    pub kb: f64,
    /// Electron gyromagnetic ratio magnitude (rad / (s T)).
    pub gamma: f64,
    /// Bohr magneton (J / T).
    pub mu_b: f64,
}

pub const PHYS: PhysicalConstants = PhysicalConstants {
    q: 1.602_176_634e-19,
    hbar: 1.054_571_817e-34,
    mu0: 1.256_637_062_12e-6,
    kb: 1.380_649e-23,
    gamma: 1.760_859_630_23e11,
    mu_b: 9.274_010_078_3e-24,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_positive() {
        for v in [PHYS.q, PHYS.hbar, PHYS.mu0, PHYS.kb, PHYS.gamma, PHYS.mu_b] {
            assert!(v > 0.0);
        }
        // g-factor consistency: gamma = g muB / hbar with g ~ 2.0023
        let g = PHYS.gamma * PHYS.hbar / PHYS.mu_b;
        assert!((g - 2.002_319).abs() < 1e-5, "{g}");
    }
}
