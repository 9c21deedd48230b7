//! Configuration: simulation settings plus every model parameter block,
//! parsed from sectioned `key = value` text.
//!
//! ```text
//! # comment
//! [magnet]
//! alpha = 0.02
//! [drive]
//! iv = (0.01, 2.8e-6); (1.0, 75e-6)
//! ```
//!
//! Every key is optional; absent keys keep their defaults. Unknown sections
//! and keys are rejected with their line number.

use crate::analysis::EnergyModel;
use crate::cmos::{AmplifierModel, AreaModel, ChuaParams, OutputFn};
use crate::error::{ensure, Error, Result};
use crate::exec::Schedule;
use crate::magnet::{critical_spin_current, CriticalSearch, MagnetParams};
use crate::network::{Boundary, RunContext};
use crate::readout::{InverterModel, MtjParams, ReadPath};
use crate::synapse::DriveModel;
use crate::transport::ChannelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub t_max: f64,
    pub temperature: f64,
    pub seed: u64,
    /// Stability window for convergence (s).
    pub hold_time: f64,
    pub mz_threshold: f64,
    /// Initial tilt of every magnet off its easy axis (degrees).
    pub init_tilt_deg: f64,
    pub sample_interval: f64,
    pub frame_interval: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-12,
            t_max: 20e-9,
            temperature: 300.0,
            seed: 1,
            hold_time: 0.5e-9,
            mz_threshold: 0.9,
            init_tilt_deg: 1.0,
            sample_interval: 50e-12,
            frame_interval: 0.5e-9,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        ensure(self.dt > 0.0, "sim.dt", self.dt, "must be > 0")?;
        ensure(self.t_max >= self.dt, "sim.t_max", self.t_max, "must be >= dt")?;
        ensure(self.temperature >= 0.0, "sim.temperature", self.temperature, "must be >= 0")?;
        ensure(self.hold_time >= 0.0, "sim.hold_time", self.hold_time, "must be >= 0")?;
        ensure(
            self.mz_threshold > 0.0 && self.mz_threshold < 1.0,
            "sim.mz_threshold",
            self.mz_threshold,
            "must lie in (0, 1)",
        )?;
        ensure(
            (0.0..90.0).contains(&self.init_tilt_deg),
            "sim.init_tilt_deg",
            self.init_tilt_deg,
            "must lie in [0, 90)",
        )?;
        ensure(self.sample_interval > 0.0, "sim.sample_interval", self.sample_interval, "must be > 0")?;
        ensure(self.frame_interval > 0.0, "sim.frame_interval", self.frame_interval, "must be > 0")
    }

    pub fn init_tilt(&self) -> f64 {
        self.init_tilt_deg.to_radians()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConfig {
    /// Unit-weight injected spin current of the noise filter, in multiples
    /// of the critical current.
    pub i0_factor: f64,
    /// Same for associative recall.
    pub assoc_i0_factor: f64,
    pub boundary: Boundary,
    pub noise_fraction: f64,
    /// Noise draw used for the demo noisy glyph. Under the cross template
    /// most random draws leave a marginal pixel pair whose outcome is a
    /// thermal coin toss; this one is filterable regardless of switching
    /// order.
    pub noise_seed: u64,
    /// Horizon for associative recall (s).
    pub assoc_t_max: f64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            i0_factor: 10.0,
            assoc_i0_factor: 1.7,
            boundary: Boundary::default(),
            noise_fraction: 0.1,
            noise_seed: 4000,
            assoc_t_max: 40e-9,
        }
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<()> {
        ensure(self.i0_factor > 0.0, "network.i0_factor", self.i0_factor, "must be > 0")?;
        ensure(self.assoc_i0_factor > 0.0, "network.assoc_i0_factor", self.assoc_i0_factor, "must be > 0")?;
        ensure(
            (0.0..=1.0).contains(&self.noise_fraction),
            "network.noise_fraction",
            self.noise_fraction,
            "must lie in [0, 1]",
        )?;
        ensure(self.assoc_t_max > 0.0, "network.assoc_t_max", self.assoc_t_max, "must be > 0")?;
        if let Boundary::Fixed(v) = self.boundary {
            ensure((-1.0..=1.0).contains(&v), "network.boundary_value", v, "must lie in [-1, 1]")?;
        }
        Ok(())
    }
}

/// CMOS baseline settings. Integration times are in units of `R C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmosConfig {
    pub chua: ChuaParams,
    /// Center weight of the CMOS noise-filter template.
    pub center: f64,
    pub dt: f64,
    pub t_max: f64,
    pub hold_time: f64,
    pub amplifier: AmplifierModel,
}

impl Default for CmosConfig {
    fn default() -> Self {
        Self {
            chua: ChuaParams::default(),
            center: 2.0,
            dt: 0.01,
            t_max: 50.0,
            hold_time: 0.5,
            amplifier: AmplifierModel::default(),
        }
    }
}

impl CmosConfig {
    pub fn validate(&self) -> Result<()> {
        self.chua.validate()?;
        ensure(self.dt > 0.0, "cmos.dt", self.dt, "must be > 0")?;
        ensure(self.t_max >= self.dt, "cmos.t_max", self.t_max, "must be >= dt")?;
        ensure(self.hold_time >= 0.0, "cmos.hold_time", self.hold_time, "must be >= 0")?;
        self.amplifier.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub voltages: Vec<f64>,
    pub sizes: Vec<u32>,
    pub seeds: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            voltages: log_space(0.01, 1.0, 8),
            sizes: vec![1, 2, 4, 8],
            seeds: 3,
        }
    }
}

/// `n` points from `lo` to `hi` evenly spaced in log; endpoints exact.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| match k {
            0 => lo,
            k if k == n - 1 => hi,
            k => lo * (hi / lo).powf(k as f64 / (n - 1) as f64),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub sim: SimConfig,
    pub magnet: MagnetParams,
    pub critical: CriticalSearch,
    pub channel: ChannelParams,
    pub mtj: MtjParams,
    pub inverter: InverterModel,
    pub drive: DriveModel,
    pub network: NetworkConfig,
    pub cmos: CmosConfig,
    pub energy: EnergyModel,
    pub area: AreaModel,
    pub sweep: SweepConfig,
}

impl Default for Config {
    fn default() -> Self {
        parse_config("").expect("defaults are valid")
    }
}

impl Config {
    pub fn read_path(&self) -> ReadPath {
        ReadPath::new(self.mtj, self.inverter).expect("validated on construction")
    }

    /// Zero-temperature bisection for the critical spin current (A).
    pub fn critical_current(&self) -> Result<f64> {
        critical_spin_current(&self.magnet, &self.critical)
    }

    /// Run settings for a grid driven with unit current `i0`.
    pub fn run_context(&self, i0: f64, t_max: f64, record: bool, schedule: Schedule) -> RunContext {
        RunContext {
            magnet: self.magnet,
            channel: self.channel,
            read: self.read_path(),
            i0,
            dt: self.sim.dt,
            t_max,
            temperature: self.sim.temperature,
            seed: self.sim.seed,
            hold_time: self.sim.hold_time,
            mz_threshold: self.sim.mz_threshold,
            sample_interval: record.then_some(self.sim.sample_interval),
            schedule,
        }
    }
}

struct Entry<'a> {
    line: usize,
    section: &'a str,
    key: &'a str,
    value: &'a str,
}

fn tokenize(text: &str) -> Result<Vec<Entry<'_>>> {
    const SECTIONS: [&str; 12] = [
        "sim", "magnet", "critical", "channel", "mtj", "inverter", "drive", "network", "cmos", "energy", "area",
        "sweep",
    ];
    let mut section = "";
    let mut out: Vec<Entry> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::Syntax { line, msg: "unterminated section header".into() })?
                .trim();
            if !SECTIONS.contains(&name) {
                return Err(Error::Syntax { line, msg: format!("unknown section [{name}]") });
            }
            section = SECTIONS.iter().find(|s| **s == name).unwrap();
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| Error::Syntax { line, msg: "expected `key = value`".into() })?;
        let (key, value) = (key.trim(), value.trim());
        if section.is_empty() {
            return Err(Error::Syntax { line, msg: "key outside of any section".into() });
        }
        if key.is_empty() || value.is_empty() {
            return Err(Error::Syntax { line, msg: "empty key or value".into() });
        }
        if out.iter().any(|e| e.section == section && e.key == key) {
            return Err(Error::Syntax { line, msg: format!("duplicate key `{key}`") });
        }
        out.push(Entry { line, section, key, value });
    }
    Ok(out)
}

fn num(e: &Entry) -> Result<f64> {
    let v: f64 = e
        .value
        .parse()
        .map_err(|_| Error::Syntax { line: e.line, msg: format!("`{}` is not a number", e.value) })?;
    if !v.is_finite() {
        return Err(Error::Syntax { line: e.line, msg: format!("`{}` is not finite", e.value) });
    }
    Ok(v)
}

fn integer(e: &Entry) -> Result<u64> {
    e.value
        .parse()
        .map_err(|_| Error::Syntax { line: e.line, msg: format!("`{}` is not a non-negative integer", e.value) })
}

fn list<T: std::str::FromStr>(e: &Entry) -> Result<Vec<T>> {
    e.value
        .split(',')
        .map(|t| t.trim().parse::<T>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Syntax { line: e.line, msg: format!("`{}` is not a comma-separated list", e.value) })
}

fn iv_table(e: &Entry) -> Result<Vec<(f64, f64)>> {
    let bad = || Error::Syntax { line: e.line, msg: "expected `(v, i); (v, i); ...`".into() };
    e.value
        .split(';')
        .map(|pair| {
            let inner = pair.trim().strip_prefix('(').and_then(|p| p.strip_suffix(')')).ok_or_else(bad)?;
            let (v, i) = inner.split_once(',').ok_or_else(bad)?;
            Ok((v.trim().parse().map_err(|_| bad())?, i.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Parses configuration text; every absent key takes its default.
pub fn parse_config(text: &str) -> Result<Config> {
    let entries = tokenize(text)?;
    let mut sim = SimConfig::default();
    let (mut m_len, mut m_wid, mut m_thk, mut m_ms, mut m_ku, mut m_alpha) = (30e-9, 30e-9, 2e-9, 5e5, 6e4, 0.01);
    let mut critical = CriticalSearch::default();
    let mut channel = ChannelParams::default();
    let mut mtj = MtjParams::default();
    let (mut v_dd, mut gain, mut v_th) = (0.7, 50.0, None);
    let mut drive = DriveModel::default();
    let mut network = NetworkConfig::default();
    let mut boundary_kind: Option<&str> = None;
    let mut boundary_value = -1.0;
    let mut cmos = CmosConfig::default();
    let mut energy = EnergyModel::default();
    let mut area = AreaModel::default();
    let mut sweep = SweepConfig::default();

    for e in &entries {
        let unknown = || Error::UnknownKey { line: e.line, section: e.section.to_string(), key: e.key.to_string() };
        match (e.section, e.key) {
            ("sim", "dt") => sim.dt = num(e)?,
            ("sim", "t_max") => sim.t_max = num(e)?,
            ("sim", "temperature") => sim.temperature = num(e)?,
            ("sim", "seed") => sim.seed = integer(e)?,
            ("sim", "hold_time") => sim.hold_time = num(e)?,
            ("sim", "mz_threshold") => sim.mz_threshold = num(e)?,
            ("sim", "init_tilt_deg") => sim.init_tilt_deg = num(e)?,
            ("sim", "sample_interval") => sim.sample_interval = num(e)?,
            ("sim", "frame_interval") => sim.frame_interval = num(e)?,

            ("magnet", "length") => m_len = num(e)?,
            ("magnet", "width") => m_wid = num(e)?,
            ("magnet", "thickness") => m_thk = num(e)?,
            ("magnet", "ms") => m_ms = num(e)?,
            ("magnet", "ku") => m_ku = num(e)?,
            ("magnet", "alpha") => m_alpha = num(e)?,

            ("critical", "tilt_deg") => critical.tilt_deg = num(e)?,
            ("critical", "horizon") => critical.horizon = num(e)?,
            ("critical", "dt") => critical.dt = num(e)?,
            ("critical", "rel_tol") => critical.rel_tol = num(e)?,

            ("channel", "length") => channel.length = num(e)?,
            ("channel", "l_sf") => channel.l_sf = num(e)?,
            ("channel", "sigma") => channel.sigma = num(e)?,
            ("channel", "cross_section") => channel.cross_section = num(e)?,
            ("channel", "beta") => channel.beta = num(e)?,
            ("channel", "r_ground") => channel.r_ground = num(e)?,
            ("channel", "ground_spin_sink") => channel.ground_spin_sink = num(e)?,

            ("mtj", "t_ox_ref") => mtj.t_ox_ref = num(e)?,
            ("mtj", "t_ox_read") => mtj.t_ox_read = num(e)?,
            ("mtj", "r_p_at_2nm") => mtj.r_p_at_2nm = num(e)?,
            ("mtj", "lambda_ox") => mtj.lambda_ox = num(e)?,
            ("mtj", "tmr") => mtj.tmr = num(e)?,
            ("mtj", "v_read") => mtj.v_read = num(e)?,
            ("mtj", "footprint") => mtj.footprint = num(e)?,

            ("inverter", "v_dd") => v_dd = num(e)?,
            ("inverter", "gain") => gain = num(e)?,
            ("inverter", "v_th") => v_th = Some(num(e)?),

            ("drive", "v_drive") => drive.v_drive = num(e)?,
            ("drive", "size") => {
                drive.size_multiplier = u32::try_from(integer(e)?)
                    .map_err(|_| Error::Syntax { line: e.line, msg: "size too large".into() })?
            }
            ("drive", "iv") => drive.iv_table = iv_table(e)?,

            ("network", "i0_factor") => network.i0_factor = num(e)?,
            ("network", "assoc_i0_factor") => network.assoc_i0_factor = num(e)?,
            ("network", "boundary") => boundary_kind = Some(e.value),
            ("network", "boundary_value") => boundary_value = num(e)?,
            ("network", "noise_fraction") => network.noise_fraction = num(e)?,
            ("network", "noise_seed") => network.noise_seed = integer(e)?,
            ("network", "assoc_t_max") => network.assoc_t_max = num(e)?,

            ("cmos", "r") => cmos.chua.r = num(e)?,
            ("cmos", "c") => cmos.chua.c = num(e)?,
            ("cmos", "output") => {
                cmos.chua.output = match e.value {
                    "pwl" => OutputFn::Pwl,
                    "sigmoid" => OutputFn::Sigmoid,
                    _ => return Err(Error::Syntax { line: e.line, msg: "output must be `pwl` or `sigmoid`".into() }),
                }
            }
            ("cmos", "center") => cmos.center = num(e)?,
            ("cmos", "dt") => cmos.dt = num(e)?,
            ("cmos", "t_max") => cmos.t_max = num(e)?,
            ("cmos", "hold_time") => cmos.hold_time = num(e)?,
            ("cmos", "v_dd") => cmos.amplifier.v_dd = num(e)?,
            ("cmos", "i_bias_neuron") => cmos.amplifier.i_bias_neuron = num(e)?,
            ("cmos", "i_bias_syn_level") => cmos.amplifier.i_bias_syn_level = num(e)?,
            ("cmos", "tau0") => cmos.amplifier.tau0 = num(e)?,
            ("cmos", "delay_floor") => cmos.amplifier.delay_floor = num(e)?,
            ("cmos", "sram_bit_power") => cmos.amplifier.sram_bit_power = num(e)?,

            ("energy", "c_gate_per_width") => energy.c_gate_per_width = num(e)?,
            ("energy", "inverter_leak") => energy.inverter_leak = num(e)?,

            ("area", "feature") => area.feature = num(e)?,
            ("area", "w_min") => area.w_min = num(e)?,
            ("area", "amp_width") => area.amp_width = num(e)?,
            ("area", "ota_core_width") => area.ota_core_width = num(e)?,
            ("area", "tail_unit_width") => area.tail_unit_width = num(e)?,
            ("area", "sign_overhead_width") => area.sign_overhead_width = num(e)?,
            ("area", "inverter_width") => area.inverter_width = num(e)?,

            ("sweep", "voltages") => sweep.voltages = list(e)?,
            ("sweep", "sizes") => sweep.sizes = list(e)?,
            ("sweep", "seeds") => {
                sweep.seeds = u32::try_from(integer(e)?)
                    .map_err(|_| Error::Syntax { line: e.line, msg: "seed count too large".into() })?
            }
            _ => return Err(unknown()),
        }
    }

    network.boundary = match boundary_kind {
        None | Some("fixed") => Boundary::Fixed(boundary_value),
        Some("zero-flux") => Boundary::ZeroFlux,
        Some(other) => {
            let line = entries.iter().find(|e| e.key == "boundary").map_or(0, |e| e.line);
            return Err(Error::Syntax { line, msg: format!("boundary `{other}` is not `fixed` or `zero-flux`") });
        }
    };

    sim.validate()?;
    let magnet = MagnetParams::new(m_len, m_wid, m_thk, m_ms, m_ku, m_alpha)?;
    ensure(critical.tilt_deg > 0.0 && critical.tilt_deg < 90.0, "critical.tilt_deg", critical.tilt_deg, "must lie in (0, 90)")?;
    ensure(critical.horizon > critical.dt, "critical.horizon", critical.horizon, "must exceed critical.dt")?;
    ensure(critical.rel_tol > 0.0 && critical.rel_tol < 1.0, "critical.rel_tol", critical.rel_tol, "must lie in (0, 1)")?;
    channel.validate()?;
    mtj.validate()?;
    let inverter = match v_th {
        Some(v_th) => InverterModel { v_dd, gain, v_th },
        None => InverterModel::matched_to(&mtj, v_dd, gain)?,
    };
    inverter.validate()?;
    drive.validate()?;
    network.validate()?;
    cmos.validate()?;
    energy.validate()?;
    area.validate()?;
    if sweep.voltages.is_empty() || sweep.sizes.is_empty() {
        return Err(Error::Empty("sweep voltages/sizes"));
    }
    for &v in &sweep.voltages {
        ensure(v > 0.0, "sweep.voltages", v, "must be > 0")?;
    }
    for &s in &sweep.sizes {
        ensure(s >= 1, "sweep.sizes", s as f64, "must be >= 1")?;
    }
    ensure(sweep.seeds >= 1, "sweep.seeds", sweep.seeds as f64, "must be >= 1")?;

    Ok(Config {
        sim,
        magnet,
        critical,
        channel,
        mtj,
        inverter,
        drive,
        network,
        cmos,
        energy,
        area,
        sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_defaults() {
        let c = parse_config("").unwrap();
        assert_eq!(c.magnet.ms(), 5e5);
        assert_eq!(c.magnet.alpha(), 0.01);
        assert_eq!(c.sim.temperature, 300.0);
        assert_eq!(c.sim.dt, 1e-12);
        assert_eq!(c.sim.hold_time, 0.5e-9);
        assert_eq!(c.sim.mz_threshold, 0.9);
        assert_eq!(c.channel.beta, 0.5);
        assert_eq!(c.channel.r_ground, 50.0);
        assert_eq!(c.mtj.v_read, 0.7);
        assert_eq!(c.network.boundary, Boundary::Fixed(-1.0));
        assert_eq!(c.cmos.amplifier.delay_floor, 10e-9);
        assert_eq!(c.sweep.voltages.len(), 8);
        assert_eq!(c.sweep.voltages[0], 0.01);
        assert_eq!(c.sweep.voltages[7], 1.0);
    }

    #[test]
    fn single_override() {
        let c = parse_config("[magnet]\nalpha = 0.02\n").unwrap();
        assert_eq!(c.magnet.alpha(), 0.02);
        let d = Config::default();
        assert_eq!(c.magnet.ku(), d.magnet.ku());
        assert_eq!(c.sim, d.sim);
    }

    #[test]
    fn out_of_range() {
        let e = parse_config("[magnet]\nalpha = -1\n").unwrap_err();
        assert!(matches!(e, Error::OutOfRange { name: "magnet.alpha", .. }), "{e}");
        assert!(parse_config("[sim]\nmz_threshold = 1.5").is_err());
        assert!(parse_config("[channel]\nbeta = 0").is_err());
    }

    #[test]
    fn syntax_and_unknown() {
        assert_eq!(
            parse_config("# hi\n[magnet]\nspin = 3\n").unwrap_err(),
            Error::UnknownKey { line: 3, section: "magnet".into(), key: "spin".into() }
        );
        assert!(matches!(parse_config("[sim]\ndt 3\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_config("dt = 3\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_config("[nope]\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_config("[sim]\ndt = abc\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_config("[sim]\ndt = 1e-12\ndt = 2e-12\n"), Err(Error::Syntax { line: 3, .. })));
    }

    #[test]
    fn lists_and_tables() {
        let c = parse_config(
            "[drive]\niv = (0.01, 1e-6); (0.1, 1e-5) ; (1, 5e-5)\n[sweep]\nvoltages = 0.1, 0.2,0.3\nsizes = 1,2\n\
             [network]\nboundary = zero-flux\n[cmos]\noutput = sigmoid\n",
        )
        .unwrap();
        assert_eq!(c.drive.iv_table, vec![(0.01, 1e-6), (0.1, 1e-5), (1.0, 5e-5)]);
        assert_eq!(c.sweep.voltages, vec![0.1, 0.2, 0.3]);
        assert_eq!(c.sweep.sizes, vec![1, 2]);
        assert_eq!(c.network.boundary, Boundary::ZeroFlux);
        assert_eq!(c.cmos.chua.output, OutputFn::Sigmoid);
        assert!(parse_config("[drive]\niv = (1, 2), (3, 4)\n").is_err());
        assert!(parse_config("[drive]\niv = (0.1, 5e-5); (1, 1e-5)\n").is_err());
    }

    #[test]
    fn inverter_threshold_defaults_to_matched() {
        let c = Config::default();
        let expected = crate::readout::divider_voltage(&c.mtj, 0.0).unwrap();
        assert_eq!(c.inverter.v_th, expected);
        let c = parse_config("[inverter]\nv_th = 0.45\n").unwrap();
        assert_eq!(c.inverter.v_th, 0.45);
    }

    #[test]
    fn log_space_endpoints() {
        let v = log_space(0.01, 1.0, 5);
        assert_eq!(v, vec![0.01, 0.01 * 100f64.powf(0.25), 0.01 * 100f64.powf(0.5), 0.01 * 100f64.powf(0.75), 1.0]);
    }
}
