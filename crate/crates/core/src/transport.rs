//! Spin injection, 1-D drift-diffusion in the copper channel, and the
//! superposition of weighted synapse currents into one torque current.

use crate::error::{ensure, Error, Result};
use crate::magnet::SpinCurrent;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Input-to-output magnet spacing (m).
    pub length: f64,
    /// Spin relaxation length (m).
    pub l_sf: f64,
    /// Channel conductivity (S/m).
    pub sigma: f64,
    /// Channel cross-section (m²).
    pub cross_section: f64,
    /// Spin injection coefficient.
    pub beta: f64,
    /// Ground path resistance (Ω).
    pub r_ground: f64,
    /// Fraction of injected spin lost into the ground branch.
    pub ground_spin_sink: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            length: 100e-9,
            l_sf: 420e-9,
            sigma: 5.0e7,
            cross_section: 30e-9 * 10e-9,
            beta: 0.5,
            r_ground: 50.0,
            ground_spin_sink: 0.0,
        }
    }
}

impl ChannelParams {
    pub fn validate(&self) -> Result<()> {
        ensure(self.length > 0.0, "channel.length", self.length, "must be > 0")?;
        ensure(self.l_sf > 0.0, "channel.l_sf", self.l_sf, "must be > 0")?;
        ensure(self.sigma > 0.0, "channel.sigma", self.sigma, "must be > 0")?;
        ensure(self.cross_section > 0.0, "channel.cross_section", self.cross_section, "must be > 0")?;
        ensure(self.beta > 0.0 && self.beta <= 1.0, "channel.beta", self.beta, "must lie in (0, 1]")?;
        ensure(self.r_ground > 0.0, "channel.r_ground", self.r_ground, "must be > 0")?;
        ensure(
            (0.0..1.0).contains(&self.ground_spin_sink),
            "channel.ground_spin_sink",
            self.ground_spin_sink,
            "must lie in [0, 1)",
        )
    }

    /// Fraction of injected spin current that reaches the output magnet.
    pub fn delivered_fraction(&self) -> f64 {
        (1.0 - self.ground_spin_sink) * spin_transmission(self.length, self.l_sf).unwrap_or(0.0)
    }
}

/// `Is(L)/Is(0) = 1/cosh(L/l_sf)` for an ideal sink at the output.
pub fn spin_transmission(length: f64, l_sf: f64) -> Result<f64> {
    if !(l_sf > 0.0) {
        return Err(Error::OutOfRange {
            name: "l_sf",
            value: l_sf,
            rule: "must be > 0",
        });
    }
    ensure(length >= 0.0, "length", length, "must be >= 0")?;
    Ok(1.0 / (length / l_sf).cosh())
}

/// Spin accumulation (V) and spin current (A) on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftDiffusionProfile {
    pub x: Vec<f64>,
    pub mu: Vec<f64>,
    pub js: Vec<f64>,
}

impl DriftDiffusionProfile {
    pub fn transmission(&self) -> f64 {
        self.js[self.js.len() - 1] / self.js[0]
    }
}

/// Solves `μ'' = μ/l_sf²` on `[0, L]` with injected spin current at `x = 0`
/// (`-σA μ'(0) = I_inj`) and an ideal sink `μ(L) = 0`, using second-order
/// finite differences on `n` nodes.
pub fn solve_drift_diffusion(n: usize, channel: &ChannelParams, injected: f64) -> Result<DriftDiffusionProfile> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 grid points, got {n}")));
    }
    if !(channel.l_sf > 0.0 && channel.length > 0.0 && channel.sigma > 0.0 && channel.cross_section > 0.0) {
        return Err(Error::Singular("channel length, l_sf, sigma and cross-section must be positive".into()));
    }
    let h = channel.length / (n - 1) as f64;
    let g = channel.sigma * channel.cross_section;
    let k2 = (h / channel.l_sf).powi(2);
    // Unknowns μ_0..μ_{n-2}; μ_{n-1} = 0.
    let m = n - 1;
    let mut lower = vec![1.0; m];
    let diag = vec![-(2.0 + k2); m];
    let mut upper = vec![1.0; m];
    let mut rhs = vec![0.0; m];
    // Ghost node from the Neumann condition: μ_{-1} = μ_1 + 2h I/(σA).
    let slope = -injected / g;
    upper[0] = 2.0;
    rhs[0] = 2.0 * h * slope;
    lower[0] = 0.0;
    upper[m - 1] = 0.0;
    let mut mu = thomas(&lower, &diag, &upper, &rhs)?;
    mu.push(0.0);

    let x: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
    let mut js = vec![0.0; n];
    js[0] = injected;
    for i in 1..n - 1 {
        js[i] = -g * (mu[i + 1] - mu[i - 1]) / (2.0 * h);
    }
    // μ''(L) = μ(L)/l² = 0, so the backward difference is second order.
    js[n - 1] = g * mu[n - 2] / h;
    Ok(DriftDiffusionProfile { x, mu, js })
}

fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut denom = diag[0];
    if denom.abs() < 1e-300 {
        return Err(Error::Singular("zero pivot".into()));
    }
    c[0] = upper[0] / denom;
    d[0] = rhs[0] / denom;
    for i in 1..n {
        denom = diag[i] - lower[i] * c[i - 1];
        if denom.abs() < 1e-300 {
            return Err(Error::Singular("zero pivot".into()));
        }
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    Ok(x)
}

/// Spin current injected under an input magnet: `β I_c`. The sign of
/// `charge_current` carries magnet orientation and current direction.
pub fn injected_spin_current(charge_current: f64, beta: f64) -> f64 {
    beta * charge_current
}

/// One synapse's share of a neuron's drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynapseContribution {
    /// Template weight (units of the unit-weight current i0).
    pub weight: f64,
    /// Selected input polarity: -1, +1, or 0 when the driver is off.
    pub input_level: f64,
    /// Charge current drawn by the driver (A), for energy accounting.
    pub charge_current: f64,
}

/// `i0 Σ w·x (1-g) / cosh(L/l_sf)`; exact superposition.
pub fn net_spin_current(contributions: &[SynapseContribution], i0: f64, channel: &ChannelParams) -> SpinCurrent {
    let sum: f64 = contributions.iter().map(|c| c.weight * c.input_level).sum();
    torque_current(sum, i0, channel)
}

/// Torque current for an already-summed template drive.
#[inline]
pub fn torque_current(weighted_sum: f64, i0: f64, channel: &ChannelParams) -> SpinCurrent {
    SpinCurrent(i0 * weighted_sum * channel.delivered_fraction())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch() -> ChannelParams {
        ChannelParams::default()
    }

    #[test]
    fn transmission_closed_form() {
        assert_eq!(spin_transmission(0.0, 420e-9).unwrap(), 1.0);
        let t = spin_transmission(100e-9, 420e-9).unwrap();
        assert!((t - 0.972_310).abs() < 1e-6, "{t}");
        let t1 = spin_transmission(1.0, 1.0).unwrap();
        assert!((t1 - 0.648_054_27).abs() < 1e-8);
        assert!(spin_transmission(1.0, 0.0).is_err());
    }

    #[test]
    fn transmission_monotone() {
        let mut prev = 1.0;
        for k in 1..20 {
            let t = spin_transmission(k as f64 * 50e-9, 420e-9).unwrap();
            assert!(t < prev);
            prev = t;
        }
        let mut prev = 0.0;
        for k in 1..20 {
            let t = spin_transmission(100e-9, k as f64 * 100e-9).unwrap();
            assert!(t > prev);
            prev = t;
        }
    }

    #[test]
    fn bvp_matches_closed_form() {
        let p = solve_drift_diffusion(1024, &ch(), 1e-6).unwrap();
        let exact = spin_transmission(100e-9, 420e-9).unwrap();
        assert!((p.transmission() - exact).abs() < 1e-6);
        assert_eq!(*p.mu.last().unwrap(), 0.0);
    }

    #[test]
    fn bvp_homogeneous_and_linear() {
        let z = solve_drift_diffusion(64, &ch(), 0.0).unwrap();
        assert!(z.mu.iter().all(|&m| m == 0.0));
        let a = solve_drift_diffusion(128, &ch(), 3e-6).unwrap();
        let b = solve_drift_diffusion(128, &ch(), 6e-6).unwrap();
        for (x, y) in a.mu.iter().zip(&b.mu) {
            assert!((2.0 * x - y).abs() <= 1e-12 * y.abs().max(1e-30));
        }
    }

    #[test]
    fn bvp_rejects_bad_input() {
        assert!(solve_drift_diffusion(8, &ch(), 1e-6).is_err());
        let bad = ChannelParams { sigma: 0.0, ..ch() };
        assert!(matches!(solve_drift_diffusion(64, &bad, 1e-6), Err(Error::Singular(_))));
    }

    #[test]
    fn injection_examples() {
        assert!((injected_spin_current(75e-6, 0.5) - 37.5e-6).abs() < 1e-18);
        assert_eq!(injected_spin_current(0.0, 0.5), 0.0);
        assert!((injected_spin_current(-10e-6, 0.5) + 5e-6).abs() < 1e-18);
    }

    fn c(w: f64, x: f64) -> SynapseContribution {
        SynapseContribution { weight: w, input_level: x, charge_current: 0.0 }
    }

    #[test]
    fn cross_template_sums() {
        let i0 = 1e-5;
        let t = spin_transmission(100e-9, 420e-9).unwrap();
        let all_up: Vec<_> = (0..5).map(|_| c(1.0, 1.0)).collect();
        assert!((net_spin_current(&all_up, i0, &ch()).0 - 5.0 * i0 * t).abs() < 1e-18);
        let minority = [c(1.0, -1.0), c(1.0, 1.0), c(1.0, 1.0), c(1.0, 1.0), c(1.0, 1.0)];
        assert!((net_spin_current(&minority, i0, &ch()).0 - 3.0 * i0 * t).abs() < 1e-18);
        let off: Vec<_> = (0..5).map(|_| c(1.0, 0.0)).collect();
        assert_eq!(net_spin_current(&off, i0, &ch()).0, 0.0);
    }

    #[test]
    fn validation() {
        assert!(ch().validate().is_ok());
        assert!(ChannelParams { beta: 0.0, ..ch() }.validate().is_err());
        assert!(ChannelParams { ground_spin_sink: 1.0, ..ch() }.validate().is_err());
    }
}
