//! Macrospin dynamics: stochastic Landau-Lifshitz-Gilbert with a
//! perpendicular spin-transfer torque term.
//!
//! The implicit Gilbert form
//! `dm/dt = -γμ0 m×H + α m×dm/dt + I_s⊥/(q Ns)` is resolved into the explicit
//! Landau-Lifshitz form `dm/dt = Ω×m` with
//! `Ω = (ω + α m×ω)/(1+α²)`, `ω = γμ0 H + (I_s/(q Ns)) m×ẑ`.
//! Writing the right side as a rotation lets the Heun predictor/corrector
//! advance `m` by exact rotations, so `|m| = 1` and, for pure precession,
//! `m_z` are preserved to rounding.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::config::SimConfig;
use crate::constants::PHYS;
use crate::error::{ensure, Error, Result};
use crate::streams;
use crate::vec3::Vec3;

/// Largest accepted integrator step.
pub const MAX_DT: f64 = 10e-12;

/// Geometry and material of one perpendicular macrospin.
///
/// Derived quantities are computed in the constructor; the struct is
/// immutable afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetParams {
    length: f64,
    width: f64,
    thickness: f64,
    ms: f64,
    ku: f64,
    alpha: f64,
    volume: f64,
    ns: f64,
    hk: f64,
}

impl MagnetParams {
    pub fn new(length: f64, width: f64, thickness: f64, ms: f64, ku: f64, alpha: f64) -> Result<Self> {
        ensure(length > 0.0, "magnet.length", length, "must be > 0")?;
        ensure(width > 0.0, "magnet.width", width, "must be > 0")?;
        ensure(thickness > 0.0, "magnet.thickness", thickness, "must be > 0")?;
        ensure(ms > 0.0, "magnet.ms", ms, "must be > 0")?;
        ensure(ku > 0.0, "magnet.ku", ku, "must be > 0")?;
        ensure(alpha > 0.0 && alpha < 1.0, "magnet.alpha", alpha, "must lie in (0, 1)")?;
        Ok(Self::derive(length, width, thickness, ms, ku, alpha))
    }

    /// Same as [`MagnetParams::new`] but allows `alpha = 0`, which the
    /// conservative-dynamics checks need.
    pub fn undamped(self) -> Self {
        Self::derive(self.length, self.width, self.thickness, self.ms, self.ku, 0.0)
    }

    fn derive(length: f64, width: f64, thickness: f64, ms: f64, ku: f64, alpha: f64) -> Self {
        let volume = length * width * thickness;
        Self {
            length,
            width,
            thickness,
            ms,
            ku,
            alpha,
            volume,
            ns: ms * volume / PHYS.mu_b,
            hk: 2.0 * ku / (PHYS.mu0 * ms),
        }
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.length, self.width, self.thickness, self.ms, self.ku, alpha)
    }

    pub fn with_ku(&self, ku: f64) -> Result<Self> {
        Self::new(self.length, self.width, self.thickness, self.ms, ku, self.alpha)
    }

    pub fn length(&self) -> f64 {
        self.length
    }
    pub fn width(&self) -> f64 {
        self.width
    }
    pub fn thickness(&self) -> f64 {
        self.thickness
    }
    pub fn ms(&self) -> f64 {
        self.ms
    }
    pub fn ku(&self) -> f64 {
        self.ku
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    /// m³
    pub fn volume(&self) -> f64 {
        self.volume
    }
    /// Number of Bohr magnetons, `Ms V / μB`.
    pub fn ns(&self) -> f64 {
        self.ns
    }
    /// Anisotropy field `2 Ku / (μ0 Ms)` in A/m.
    pub fn hk(&self) -> f64 {
        self.hk
    }
    /// Energy barrier `Ku V` in J.
    pub fn barrier(&self) -> f64 {
        self.ku * self.volume
    }
    /// Footprint in m².
    pub fn footprint(&self) -> f64 {
        self.length * self.width
    }
}

impl Default for MagnetParams {
    /// 30 nm × 30 nm × 2 nm, Ms = 5e5 A/m, Ku = 6e4 J/m³, α = 0.01.
    fn default() -> Self {
        Self::new(30e-9, 30e-9, 2e-9, 5e5, 6e4, 0.01).expect("default magnet is valid")
    }
}

/// Unit magnetization vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magnetization(Vec3);

impl Magnetization {
    pub const UP: Magnetization = Magnetization(Vec3::Z);

    /// Normalizes `v`.
    pub fn new(v: Vec3) -> Self {
        Self(v.normalized())
    }

    /// `(sin θ, 0, s cos θ)`: polarity `s = ±1` tilted by `tilt` rad toward +x.
    pub fn tilted(polarity: f64, tilt: f64) -> Self {
        Self(Vec3::new(tilt.sin(), 0.0, polarity.signum() * tilt.cos()))
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn mz(self) -> f64 {
        self.0.z
    }

    /// Rotation by π about x: `(mx, -my, -mz)`. Maps the dynamics under a
    /// current `I` onto the dynamics under `-I`.
    pub fn flipped(self) -> Self {
        Self(Vec3::new(self.0.x, -self.0.y, -self.0.z))
    }
}

/// Signed perpendicular spin current in A; positive drives `m_z` toward +1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct SpinCurrent(pub f64);

/// Anisotropy field plus a thermal sample: `(0, 0, Hk m_z) + thermal`.
pub fn effective_field(m: Magnetization, p: &MagnetParams, thermal: Vec3) -> Vec3 {
    Vec3::new(0.0, 0.0, p.hk * m.mz()) + thermal
}

/// Standard deviation of each thermal field component (A/m) from the
/// fluctuation-dissipation relation `σ² = 2 α kB T / (μ0² γ Ms V dt)`.
pub fn thermal_sigma(p: &MagnetParams, temperature: f64, dt: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    (2.0 * p.alpha * PHYS.kb * temperature
        / (PHYS.mu0 * PHYS.mu0 * PHYS.gamma * p.ms * p.volume * dt))
        .sqrt()
}

pub fn thermal_field_sample<R: Rng + ?Sized>(p: &MagnetParams, temperature: f64, dt: f64, rng: &mut R) -> Vec3 {
    let sigma = thermal_sigma(p, temperature, dt);
    if sigma == 0.0 {
        return Vec3::ZERO;
    }
    gaussian3(rng) * sigma
}

#[inline]
fn gaussian3<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    Vec3::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

/// Anisotropy energy `Ku V (1 - m_z²)` in J.
pub fn anisotropy_energy(m: Magnetization, p: &MagnetParams) -> f64 {
    p.barrier() * (1.0 - m.mz() * m.mz())
}

/// Small-angle balance of damping and torque: `α γ μ0 Hk q Ns`.
pub fn critical_current_estimate(p: &MagnetParams) -> f64 {
    p.alpha * PHYS.gamma * PHYS.mu0 * p.hk * PHYS.q * p.ns
}

/// Precomputed per-magnet integrator for fixed temperature and step.
#[derive(Debug, Clone, Copy)]
pub struct Stepper {
    gmu0: f64,
    hk: f64,
    stt: f64,
    alpha: f64,
    inv: f64,
    sigma: f64,
    dt: f64,
}

impl Stepper {
    pub fn new(p: &MagnetParams, temperature: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt <= MAX_DT) {
            return Err(Error::StepSize { dt, limit: MAX_DT });
        }
        ensure(temperature >= 0.0, "temperature", temperature, "must be >= 0")?;
        Ok(Self {
            gmu0: PHYS.gamma * PHYS.mu0,
            hk: p.hk,
            stt: 1.0 / (PHYS.q * p.ns),
            alpha: p.alpha,
            inv: 1.0 / (1.0 + p.alpha * p.alpha),
            sigma: thermal_sigma(p, temperature, dt),
            dt,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    #[inline]
    fn omega(&self, m: Vec3, thermal: Vec3, is: f64) -> Vec3 {
        let h = Vec3::new(thermal.x, thermal.y, thermal.z + self.hk * m.z);
        let w = h * self.gmu0 + m.cross(Vec3::Z) * (is * self.stt);
        (w + m.cross(w) * self.alpha) * self.inv
    }

    /// One Heun step: both stages see the same thermal sample.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&self, m: Magnetization, is: SpinCurrent, rng: &mut R) -> Magnetization {
        let thermal = if self.sigma > 0.0 {
            gaussian3(rng) * self.sigma
        } else {
            Vec3::ZERO
        };
        self.step_with_field(m, is, thermal)
    }

    #[inline]
    pub fn step_with_field(&self, m: Magnetization, is: SpinCurrent, thermal: Vec3) -> Magnetization {
        let m0 = m.0;
        let w1 = self.omega(m0, thermal, is.0);
        let predicted = m0.rotated(w1 * self.dt);
        let w2 = self.omega(predicted, thermal, is.0);
        Magnetization(m0.rotated((w1 + w2) * (0.5 * self.dt)).normalized())
    }
}

/// Advances `m` by one step of `dt`.
pub fn llg_step<R: Rng + ?Sized>(
    m: Magnetization,
    p: &MagnetParams,
    is: SpinCurrent,
    temperature: f64,
    dt: f64,
    rng: &mut R,
) -> Result<Magnetization> {
    Ok(Stepper::new(p, temperature, dt)?.step(m, is, rng))
}

/// Settings for the zero-temperature critical-current bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalSearch {
    pub tilt_deg: f64,
    pub horizon: f64,
    pub dt: f64,
    pub rel_tol: f64,
    /// Switching is declared once `m_z` drops below this value.
    pub target_mz: f64,
}

impl Default for CriticalSearch {
    fn default() -> Self {
        Self {
            tilt_deg: 1.0,
            horizon: 1e-6,
            dt: 1e-12,
            rel_tol: 0.01,
            target_mz: -0.5,
        }
    }
}

fn switches_at_zero_temperature(stepper: &Stepper, search: &CriticalSearch, current: f64) -> bool {
    let mut m = Magnetization::tilted(1.0, search.tilt_deg.to_radians());
    let steps = (search.horizon / search.dt).ceil() as u64;
    let is = SpinCurrent(-current);
    for _ in 0..steps {
        m = stepper.step_with_field(m, is, Vec3::ZERO);
        if m.mz() < search.target_mz {
            return true;
        }
    }
    false
}

/// Smallest anti-parallel spin current magnitude (A) that switches the
/// magnet from a small tilt off +z within the horizon at zero temperature.
pub fn critical_spin_current(p: &MagnetParams, search: &CriticalSearch) -> Result<f64> {
    let stepper = Stepper::new(p, 0.0, search.dt)?;
    let estimate = critical_current_estimate(p);
    let ceiling = 1e3 * estimate;
    let mut lo = 0.0;
    let mut hi = estimate;
    while !switches_at_zero_temperature(&stepper, search, hi) {
        lo = hi;
        hi *= 2.0;
        if hi > ceiling {
            return Err(Error::Bracket { upper: ceiling });
        }
    }
    while hi - lo > search.rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if switches_at_zero_temperature(&stepper, search, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchOutcome {
    Switched(f64),
    Timeout,
}

impl SwitchOutcome {
    pub fn time(self) -> Option<f64> {
        match self {
            SwitchOutcome::Switched(t) => Some(t),
            SwitchOutcome::Timeout => None,
        }
    }
}

/// First-passage time of `m_z` through `-mz_threshold`, starting from the
/// configured tilt off +z. `is` must be negative (opposing the start).
pub fn switch_time(p: &MagnetParams, is: SpinCurrent, sim: &SimConfig, seed: u64) -> Result<SwitchOutcome> {
    if is.0 >= 0.0 {
        return Err(Error::InvalidArgument(
            "switching current must oppose the +z start (negative)".into(),
        ));
    }
    let stepper = Stepper::new(p, sim.temperature, sim.dt)?;
    let mut rng = streams::stream(seed, "switch", 0);
    let mut m = Magnetization::tilted(1.0, sim.init_tilt_deg.to_radians());
    let steps = (sim.t_max / sim.dt).round() as u64;
    for k in 1..=steps {
        m = stepper.step(m, is, &mut rng);
        if m.mz() < -sim.mz_threshold {
            return Ok(SwitchOutcome::Switched(k as f64 * sim.dt));
        }
    }
    Ok(SwitchOutcome::Timeout)
}

/// Zero-temperature time for `m_z` to go from `cos(tilt)` to
/// `-mz_threshold` under a uniaxial field and an opposing collinear torque.
///
/// The polar angle obeys `dθ/dt = k sinθ (i - cosθ)` with
/// `k = αγμ0Hk/(1+α²)` and `i = |Is|/Ic`, which integrates in closed form.
/// `None` at or below critical (`i <= 1`).
pub fn switch_time_analytic(p: &MagnetParams, is: SpinCurrent, tilt: f64, mz_threshold: f64) -> Option<f64> {
    let i = is.0.abs() / critical_current_estimate(p);
    if i <= 1.0 || !(tilt > 0.0) {
        return None;
    }
    let k = p.alpha * PHYS.gamma * PHYS.mu0 * p.hk / (1.0 + p.alpha * p.alpha);
    let (a, b, c) = (0.5 / (i - 1.0), 0.5 / (i + 1.0), 1.0 / (1.0 - i * i));
    let f = |u: f64| -a * (1.0 - u).ln() + b * (1.0 + u).ln() - c * (i - u).ln();
    Some((f(tilt.cos()) - f(-mz_threshold)) / k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn derived_values() {
        let p = MagnetParams::default();
        let v = 30e-9 * 30e-9 * 2e-9;
        assert_eq!(p.volume(), v);
        assert_eq!(p.ns(), 5e5 * v / PHYS.mu_b);
        assert_eq!(p.hk(), 2.0 * 6e4 / (PHYS.mu0 * 5e5));
        assert!((p.hk() - 1.90986e5).abs() < 1.0);
    }

    #[test]
    fn invalid_params() {
        assert!(MagnetParams::default().with_alpha(-1.0).is_err());
        assert!(MagnetParams::default().with_alpha(1.0).is_err());
        assert!(MagnetParams::new(0.0, 1e-9, 1e-9, 1.0, 1.0, 0.01).is_err());
    }

    #[test]
    fn field_examples() {
        let p = MagnetParams::default();
        let up = effective_field(Magnetization::UP, &p, Vec3::ZERO);
        assert_eq!(up, Vec3::new(0.0, 0.0, p.hk()));
        let down = effective_field(Magnetization::new(Vec3::new(0.0, 0.0, -1.0)), &p, Vec3::ZERO);
        assert_eq!(down.z, -p.hk());
        let side = effective_field(Magnetization::new(Vec3::new(1.0, 0.0, 0.0)), &p, Vec3::ZERO);
        assert_eq!(side, Vec3::ZERO);
    }

    #[test]
    fn zero_temperature_sample_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(thermal_field_sample(&MagnetParams::default(), 0.0, 1e-12, &mut rng), Vec3::ZERO);
    }

    #[test]
    fn up_is_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = llg_step(Magnetization::UP, &MagnetParams::default(), SpinCurrent(0.0), 0.0, 1e-12, &mut rng).unwrap();
        assert_eq!(m, Magnetization::UP);
    }

    #[test]
    fn step_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = llg_step(Magnetization::UP, &MagnetParams::default(), SpinCurrent(0.0), 0.0, 20e-12, &mut rng);
        assert!(matches!(r, Err(Error::StepSize { .. })));
    }

    #[test]
    fn estimate_near_six_point_six_microamps() {
        let ic = critical_current_estimate(&MagnetParams::default());
        assert!((ic - 6.6e-6).abs() < 0.1e-6, "{ic}");
    }

    #[test]
    fn flip_symmetry_of_dynamics() {
        // R_x(π) maps the trajectory under +I onto the trajectory under -I.
        let p = MagnetParams::default();
        let s = Stepper::new(&p, 0.0, 1e-12).unwrap();
        let mut a = Magnetization::new(Vec3::new(0.2, 0.1, 0.97));
        let mut b = a.flipped();
        for _ in 0..500 {
            a = s.step_with_field(a, SpinCurrent(30e-6), Vec3::ZERO);
            b = s.step_with_field(b, SpinCurrent(-30e-6), Vec3::ZERO);
        }
        let fa = a.flipped().vec();
        assert!((fa - b.vec()).norm() < 1e-12);
    }

    #[test]
    fn supercritical_switches_down() {
        let p = MagnetParams::default();
        let s = Stepper::new(&p, 0.0, 1e-12).unwrap();
        let mut m = Magnetization::tilted(1.0, 1f64.to_radians());
        let is = SpinCurrent(-20.0 * critical_current_estimate(&p));
        let mut crossed = false;
        for _ in 0..5000 {
            m = s.step_with_field(m, is, Vec3::ZERO);
            crossed |= m.mz() < 0.0;
        }
        assert!(crossed && m.mz() < -0.99, "{}", m.mz());
    }

    #[test]
    fn switch_time_requires_opposing_current() {
        let sim = SimConfig::default();
        assert!(switch_time(&MagnetParams::default(), SpinCurrent(1e-6), &sim, 1).is_err());
    }

    #[test]
    fn analytic_switch_time_matches_integrator() {
        let p = MagnetParams::default();
        let ic = critical_current_estimate(&p);
        let sim = SimConfig { temperature: 0.0, t_max: 50e-9, ..SimConfig::default() };
        for f in [2.0, 5.0, 10.0] {
            let is = SpinCurrent(-f * ic);
            let exact = switch_time_analytic(&p, is, sim.init_tilt(), sim.mz_threshold).unwrap();
            let t = switch_time(&p, is, &sim, 0).unwrap().time().unwrap();
            // first passage is detected on the step grid
            assert!((t - exact).abs() <= sim.dt + 1e-3 * exact, "{f}: {t} vs {exact}");
        }
        assert_eq!(switch_time_analytic(&p, SpinCurrent(-ic), 0.1, 0.9), None);
    }

    #[test]
    fn subcritical_times_out_at_zero_temperature() {
        let p = MagnetParams::default();
        let sim = SimConfig { temperature: 0.0, t_max: 5e-9, ..SimConfig::default() };
        let is = SpinCurrent(-0.5 * critical_current_estimate(&p));
        assert_eq!(switch_time(&p, is, &sim, 1).unwrap(), SwitchOutcome::Timeout);
    }
}
