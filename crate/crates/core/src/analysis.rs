//! Energy, delay and area accounting; drive-voltage sweeps; Pareto
//! extraction; spin vs CMOS comparison; CSV/report writers.

use std::fmt::Write as _;

use crate::cmos::{self, cmos_area, cmos_power_delay, CmosArea, CmosGrid, CmosWorkload, IntegrateOptions, PowerDelay};
use crate::config::{log_space, Config};
use crate::error::{ensure, Error, Result};
use crate::exec::{self, Schedule};
use crate::glyphs;
use crate::network::{self, CnnGrid, Trajectory};
use crate::pattern::Pattern;
use crate::readout::ReadPath;
use crate::synapse::{DriveModel, BRANCH_WIDTH_SUM, LEVELS_PER_UNIT};
use crate::templates::{Template, TemplateSet};

/// Per-operation energy components (J).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnergyBreakdown {
    pub joule: f64,
    pub leakage: f64,
    pub dynamic: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn new(joule: f64, leakage: f64, dynamic: f64) -> Self {
        Self { joule, leakage, dynamic, total: joule + leakage + dynamic }
    }

    fn mean(items: &[EnergyBreakdown]) -> EnergyBreakdown {
        if items.is_empty() {
            return EnergyBreakdown::default();
        }
        let n = items.len() as f64;
        EnergyBreakdown::new(
            items.iter().map(|e| e.joule).sum::<f64>() / n,
            items.iter().map(|e| e.leakage).sum::<f64>() / n,
            items.iter().map(|e| e.dynamic).sum::<f64>() / n,
        )
    }
}

/// Peripheral constants of the spin energy model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyModel {
    /// Gate capacitance per meter of driver width (F/m).
    pub c_gate_per_width: f64,
    /// Static inverter current per minimum-width driver gate it switches
    /// (A). The inverter input sits on the junction divider, never at a
    /// rail, so it conducts crowbar current, and it is sized to its load.
    pub inverter_leak: f64,
}

impl Default for EnergyModel {
    fn default() -> Self {
        Self { c_gate_per_width: 1e-9, inverter_leak: 0.5e-6 }
    }
}

impl EnergyModel {
    pub fn validate(&self) -> Result<()> {
        ensure(self.c_gate_per_width >= 0.0, "energy.c_gate_per_width", self.c_gate_per_width, "must be >= 0")?;
        ensure(self.inverter_leak >= 0.0, "energy.inverter_leak", self.inverter_leak, "must be >= 0")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynapseKind {
    /// One driver sized to the weight's level.
    Fixed,
    /// The 4-branch programmable synapse; every branch always conducts.
    Programmable,
}

/// Driver and magnet inventory of a spin CNN, in minimum-width units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinHardware {
    pub kind: SynapseKind,
    pub cells: usize,
    /// `Σ` driver width over all synapses, in minimum widths at size 1.
    pub driver_levels: f64,
    /// Driver gate width switched by one output transition, in minimum
    /// widths at size 1 (averaged over cells).
    pub fanout_levels: f64,
    pub input_magnets: f64,
}

impl SpinHardware {
    /// Space-invariant templates are built from fixed synapses; space-varying
    /// ones need a programmable synapse in every one of the 19 slots.
    pub fn for_templates(templates: &TemplateSet, rows: usize, cols: usize) -> Self {
        let cells = rows * cols;
        match templates {
            TemplateSet::SpaceInvariant(t) => {
                let levels = |w: f64| (w * LEVELS_PER_UNIT as f64).abs();
                let per_cell: f64 = t.weights().map(levels).sum();
                let fanout: f64 = t.a.iter().flatten().copied().map(levels).sum();
                let synapses = t.weights().filter(|w| *w != 0.0).count();
                SpinHardware {
                    kind: SynapseKind::Fixed,
                    cells,
                    driver_levels: per_cell * cells as f64,
                    fanout_levels: fanout,
                    input_magnets: (synapses * cells) as f64,
                }
            }
            TemplateSet::SpaceVarying { .. } => SpinHardware {
                kind: SynapseKind::Programmable,
                cells,
                driver_levels: (19 * BRANCH_WIDTH_SUM) as f64 * cells as f64,
                fanout_levels: (9 * BRANCH_WIDTH_SUM) as f64,
                input_magnets: (19 * 4 * cells) as f64,
            },
        }
    }
}

/// Spin-side area terms (m²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinArea {
    pub driver: f64,
    pub inverter: f64,
    pub mtj: f64,
    pub magnet: f64,
    pub total: f64,
}

/// Drivers come in complementary pairs, so each synapse level costs two
/// transistors of `size × w_min`.
pub fn spin_area(hw: &SpinHardware, size: u32, cfg: &Config) -> SpinArea {
    let a = &cfg.area;
    let driver = a.width_area(2.0 * hw.driver_levels * size as f64 * a.w_min);
    let inverter = a.width_area(hw.cells as f64 * a.inverter_width);
    let mtj = hw.cells as f64 * 2.0 * cfg.mtj.footprint;
    let magnet = (hw.cells as f64 + hw.input_magnets) * cfg.magnet.footprint();
    SpinArea { driver, inverter, mtj, magnet, total: driver + inverter + mtj + magnet }
}

/// What a spin operation costs besides its duration.
#[derive(Debug, Clone, Copy)]
pub struct SpinEnergyContext<'a> {
    pub hw: &'a SpinHardware,
    pub drive: &'a DriveModel,
    pub read: &'a ReadPath,
    pub model: &'a EnergyModel,
    pub w_min: f64,
}

/// Energy of an operation lasting `duration` s.
///
/// - joule: every driver conducts `level × size × I_unit(V)` at `V_drive`;
/// - leakage: junction stacks at their final states plus inverter crowbar
///   current proportional to the driver gate width each inverter switches;
/// - dynamic: each output transition charges its fan-out driver gates.
pub fn spin_energy(duration: f64, final_mz: &[f64], activity: u64, ctx: &SpinEnergyContext) -> Result<EnergyBreakdown> {
    let d = ctx.drive;
    let i_unit = d.unit_current(d.v_drive)?;
    let size = d.size_multiplier as f64;
    let joule = d.v_drive * ctx.hw.driver_levels * size * i_unit * duration;
    let v_dd = ctx.read.inverter.v_dd;
    let static_power: f64 = final_mz.iter().map(|&mz| ctx.read.stack_power(mz)).sum::<f64>()
        + ctx.hw.cells as f64 * ctx.hw.fanout_levels * size * v_dd * ctx.model.inverter_leak;
    let leakage = static_power * duration;
    let gate_width = 2.0 * ctx.hw.fanout_levels * size * ctx.w_min;
    let dynamic = activity as f64 * gate_width * ctx.model.c_gate_per_width * v_dd * v_dd;
    Ok(EnergyBreakdown::new(joule, leakage, dynamic))
}

/// Flipped pixels in the demo associative cue.
pub const ASSOC_CUE_FLIPS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum App {
    NoiseFilter,
    Associative,
}

impl App {
    pub fn name(self) -> &'static str {
        match self {
            App::NoiseFilter => "noise-filter",
            App::Associative => "assoc",
        }
    }
}

impl std::str::FromStr for App {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noise-filter" => Ok(App::NoiseFilter),
            "assoc" => Ok(App::Associative),
            _ => Err(Error::InvalidArgument(format!("unknown app {s:?} (expected noise-filter or assoc)"))),
        }
    }
}

/// One application instance: initial state, inputs, templates and the
/// expected answer.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub app: App,
    pub initial: Pattern,
    pub inputs: Pattern,
    pub templates: TemplateSet,
    pub expected: Option<Pattern>,
    pub t_max: f64,
}

impl Scenario {
    pub fn noise_filter(noisy: &Pattern, clean: &Pattern, cfg: &Config) -> Result<Self> {
        noisy.check_shape(clean.rows(), clean.cols())?;
        Ok(Self {
            app: App::NoiseFilter,
            initial: noisy.clone(),
            inputs: noisy.clone(),
            templates: network::noise_filter_templates(),
            expected: Some(clean.clone()),
            t_max: cfg.sim.t_max,
        })
    }

    pub fn associative(cue: &Pattern, templates: &TemplateSet, target: &Pattern, cfg: &Config) -> Result<Self> {
        target.check_shape(cue.rows(), cue.cols())?;
        templates.check_shape(cue.rows(), cue.cols())?;
        Ok(Self {
            app: App::Associative,
            initial: cue.clone(),
            inputs: cue.clone(),
            templates: templates.clone(),
            expected: Some(target.clone()),
            t_max: cfg.network.assoc_t_max,
        })
    }

    /// Bundled instance of `app`: the `0` glyph with the configured noise
    /// draw for the filter; the `1` cue with [`ASSOC_CUE_FLIPS`] flipped
    /// pixels, expected to recall `2`, for the memory.
    pub fn demo(app: App, cfg: &Config) -> Result<Self> {
        let seed = cfg.network.noise_seed;
        match app {
            App::NoiseFilter => {
                let clean = glyphs::glyph("0")?;
                let noisy = clean.with_noise(cfg.network.noise_fraction, seed)?;
                Self::noise_filter(&noisy, &clean, cfg)
            }
            App::Associative => {
                let pairs = glyphs::associative_pairs();
                let templates = network::hebbian_train_with(&pairs, cfg.network.boundary)?;
                let (cue, target) = &pairs[0];
                let noisy = cue.with_noise(ASSOC_CUE_FLIPS as f64 / cue.len() as f64, seed)?;
                Self::associative(&noisy, &templates, target, cfg)
            }
        }
    }

    pub fn grid(&self, cfg: &Config) -> Result<CnnGrid> {
        CnnGrid::new(&self.initial, &self.inputs, self.templates.clone(), cfg.network.boundary, cfg.sim.init_tilt())
    }

    pub fn hardware(&self) -> SpinHardware {
        SpinHardware::for_templates(&self.templates, self.initial.rows(), self.initial.cols())
    }

    /// Run succeeded: converged, and onto the expected pattern if one is set.
    pub fn success(&self, tr: &Trajectory) -> bool {
        tr.converged() && self.expected.as_ref().is_none_or(|e| *e == tr.final_output)
    }
}

/// Injected unit-weight spin current for drive voltage `v` and driver size:
/// a unit weight is a 4-level driver, `β · 4 · size · I_unit(v)`.
pub fn sweep_i0(cfg: &Config, v: f64, size: u32) -> Result<f64> {
    Ok(cfg.channel.beta * LEVELS_PER_UNIT as f64 * size as f64 * cfg.drive.unit_current(v)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub v_drive: f64,
    pub size: u32,
    pub seed: u64,
    pub converged: bool,
    /// Settle time for converged runs, `t_max` otherwise (s).
    pub delay: f64,
    pub energy: EnergyBreakdown,
    pub area: f64,
    pub transitions: u64,
}

/// Runs `sc` at every voltage and seed for one driver size. Records come
/// back sorted by voltage, then seed.
pub fn sweep_voltage(cfg: &Config, sc: &Scenario, voltages: &[f64], size: u32, seeds: &[u64], schedule: Schedule) -> Result<Vec<SweepRecord>> {
    if voltages.len() < 3 {
        return Err(Error::InvalidArgument("a sweep needs at least 3 voltages".into()));
    }
    if seeds.is_empty() {
        return Err(Error::Empty("sweep seeds"));
    }
    let (lo, hi) = cfg.drive.span();
    for &v in voltages {
        if !(lo..=hi).contains(&v) {
            return Err(Error::VoltageOutOfSpan { v, lo, hi });
        }
    }
    let mut volts = voltages.to_vec();
    volts.sort_by(f64::total_cmp);
    let hw = sc.hardware();
    let area = spin_area(&hw, size, cfg).total;
    let read = cfg.read_path();
    let jobs: Vec<(f64, u64)> = volts.iter().flat_map(|&v| seeds.iter().map(move |&s| (v, s))).collect();
    let results = exec::map_range(schedule, jobs.len(), |j| -> Result<SweepRecord> {
        let (v, seed) = jobs[j];
        let i0 = sweep_i0(cfg, v, size)?;
        let mut ctx = cfg.run_context(i0, sc.t_max, false, Schedule::Sequential);
        ctx.seed = seed;
        let mut grid = sc.grid(cfg)?;
        let tr = network::run(&mut grid, &ctx)?;
        let converged = sc.success(&tr);
        let delay = if converged { tr.settle_time().unwrap_or(sc.t_max) } else { sc.t_max };
        let drive = cfg.drive.at(v, size);
        let ectx = SpinEnergyContext { hw: &hw, drive: &drive, read: &read, model: &cfg.energy, w_min: cfg.area.w_min };
        let energy = spin_energy(delay, &grid.mz(), tr.output_transitions, &ectx)?;
        Ok(SweepRecord { v_drive: v, size, seed, converged, delay, energy, area, transitions: tr.output_transitions })
    });
    results.into_iter().collect()
}

/// Seed-aggregated design point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignPoint {
    pub v_drive: f64,
    pub size: u32,
    pub runs: usize,
    pub converged_runs: usize,
    /// Every seed converged.
    pub converged: bool,
    /// Median delay over converged seeds (s).
    pub delay: f64,
    /// Mean energy over converged seeds.
    pub energy: EnergyBreakdown,
    pub area: f64,
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Groups records by `(size, voltage)`; output sorted by size, then voltage.
pub fn aggregate(records: &[SweepRecord]) -> Vec<DesignPoint> {
    let mut keys: Vec<(u32, f64)> = records.iter().map(|r| (r.size, r.v_drive)).collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    keys.dedup();
    keys.into_iter()
        .map(|(size, v)| {
            let group: Vec<&SweepRecord> = records.iter().filter(|r| r.size == size && r.v_drive == v).collect();
            let ok: Vec<&SweepRecord> = group.iter().copied().filter(|r| r.converged).collect();
            let mut delays: Vec<f64> = ok.iter().map(|r| r.delay).collect();
            let energies: Vec<EnergyBreakdown> = ok.iter().map(|r| r.energy).collect();
            DesignPoint {
                v_drive: v,
                size,
                runs: group.len(),
                converged_runs: ok.len(),
                converged: !ok.is_empty() && ok.len() == group.len(),
                delay: if delays.is_empty() { group[0].delay } else { median(&mut delays) },
                energy: EnergyBreakdown::mean(&energies),
                area: group[0].area,
            }
        })
        .collect()
}

/// Index of the minimum-energy converged point, if any.
pub fn argmin_energy(points: &[DesignPoint]) -> Option<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.converged)
        .min_by(|a, b| a.1.energy.total.total_cmp(&b.1.energy.total))
        .map(|(i, _)| i)
}

/// Minimum-energy converged point of every size, sorted by area.
pub fn pareto(points: &[DesignPoint]) -> Result<Vec<DesignPoint>> {
    let mut sizes: Vec<u32> = points.iter().map(|p| p.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut front: Vec<DesignPoint> = sizes
        .into_iter()
        .filter_map(|s| {
            let group: Vec<DesignPoint> = points.iter().copied().filter(|p| p.size == s).collect();
            argmin_energy(&group).map(|i| group[i])
        })
        .collect();
    if front.is_empty() {
        return Err(Error::Empty("converged design points"));
    }
    front.sort_by(|a, b| a.area.total_cmp(&b.area));
    Ok(front)
}

/// Frontier energy falls and then rises again at the largest size.
pub fn frontier_turns_up(front: &[DesignPoint]) -> bool {
    let n = front.len();
    n >= 3 && front[1].energy.total < front[0].energy.total && front[n - 1].energy.total > front[n - 2].energy.total
}

/// Chua-cell counterpart of a spin template: the CMOS cell must overcome its
/// `-x/R` leak, so the self-feedback weight grows by `extra`.
pub fn cmos_counterpart(templates: &TemplateSet, extra: f64) -> TemplateSet {
    let bump = |t: &Template| {
        let mut t = *t;
        t.a[1][1] += extra;
        t
    };
    match templates {
        TemplateSet::SpaceInvariant(t) => TemplateSet::SpaceInvariant(bump(t)),
        TemplateSet::SpaceVarying { rows, cols, cells } => TemplateSet::SpaceVarying {
            rows: *rows,
            cols: *cols,
            cells: cells.iter().map(bump).collect(),
        },
    }
}

/// CMOS baseline for one scenario: convergence of the cell equation, then the
/// bias-scaled power/delay curve.
#[derive(Debug, Clone)]
pub struct CmosReference {
    pub converged: bool,
    pub correct: bool,
    pub settle_rc: f64,
    pub workload: CmosWorkload,
    pub area: CmosArea,
    pub curve: Vec<PowerDelay>,
}

pub fn default_cmos_scales() -> Vec<f64> {
    log_space(1e-3, 1e3, 61)
}

pub fn cmos_reference(cfg: &Config, sc: &Scenario, scales: &[f64], schedule: Schedule) -> Result<CmosReference> {
    let templates = cmos_counterpart(&sc.templates, cfg.cmos.center - 1.0);
    let mut grid = CmosGrid::new(&sc.initial, &sc.inputs, templates.clone(), cfg.network.boundary)?;
    let opts = IntegrateOptions {
        dt: cfg.cmos.dt,
        t_max: cfg.cmos.t_max,
        hold_time: cfg.cmos.hold_time,
        sample_interval: None,
        schedule,
    };
    let tr = cmos::integrate(&mut grid, &cfg.cmos.chua, &opts)?;
    let (rows, cols) = (sc.initial.rows(), sc.initial.cols());
    let settle_rc = tr.settle_time().unwrap_or(cfg.cmos.t_max) / cfg.cmos.chua.tau();
    let workload = CmosWorkload::from_templates(&templates, rows, cols, settle_rc);
    let (synapses, bits, programmable) = match &templates {
        TemplateSet::SpaceInvariant(t) => (t.weights().filter(|w| *w != 0.0).count() * rows * cols, 2, false),
        TemplateSet::SpaceVarying { .. } => (19 * rows * cols, 3, true),
    };
    let area = cmos_area(rows * cols, synapses, bits, programmable, &cfg.area);
    let curve = scales
        .iter()
        .map(|&s| cmos_power_delay(&cfg.cmos.amplifier, &workload, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(CmosReference {
        converged: tr.convergence_time.is_some(),
        correct: sc.expected.as_ref().is_none_or(|e| *e == tr.final_output),
        settle_rc,
        workload,
        area,
        curve,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub spin_delay: f64,
    pub spin_energy: f64,
    pub spin_area: f64,
    pub cmos_delay: f64,
    pub cmos_energy: f64,
    pub cmos_area: f64,
    pub energy_ratio: f64,
    pub area_ratio: f64,
}

impl Comparison {
    pub fn meets_tenfold(&self) -> bool {
        self.energy_ratio >= 10.0
    }
}

/// Pairs the spin point with the CMOS point of nearest delay (within 2×).
pub fn compare(spin: &DesignPoint, cmos_curve: &[PowerDelay], cmos_area: f64) -> Result<Comparison> {
    let nearest = cmos_curve
        .iter()
        .min_by(|a, b| (a.delay / spin.delay).ln().abs().total_cmp(&(b.delay / spin.delay).ln().abs()))
        .ok_or(Error::Empty("cmos records"))?;
    let ratio = nearest.delay / spin.delay;
    if !(0.5..=2.0).contains(&ratio) {
        return Err(Error::NoDelayOverlap { spin: spin.delay, cmos: nearest.delay });
    }
    Ok(Comparison {
        spin_delay: spin.delay,
        spin_energy: spin.energy.total,
        spin_area: spin.area,
        cmos_delay: nearest.delay,
        cmos_energy: nearest.energy,
        cmos_area,
        energy_ratio: nearest.energy / spin.energy.total,
        area_ratio: cmos_area / spin.area,
    })
}

pub const SWEEP_CSV_HEADER: &str =
    "v_drive_V,size_mult,seed,converged,delay_ns,e_joule_fJ,e_leak_fJ,e_dyn_fJ,e_total_fJ,area_um2";

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut s = String::from(SWEEP_CSV_HEADER);
    s.push('\n');
    for r in records {
        writeln!(
            s,
            "{:.6},{},{},{},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}",
            r.v_drive,
            r.size,
            r.seed,
            r.converged,
            r.delay * 1e9,
            r.energy.joule * 1e15,
            r.energy.leakage * 1e15,
            r.energy.dynamic * 1e15,
            r.energy.total * 1e15,
            r.area * 1e12
        )
        .unwrap();
    }
    s
}

pub fn pareto_csv(front: &[DesignPoint]) -> String {
    let mut s = String::from("size_mult,v_drive_V,delay_ns,e_joule_fJ,e_leak_fJ,e_dyn_fJ,e_total_fJ,area_um2\n");
    for p in front {
        writeln!(
            s,
            "{},{:.6},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}",
            p.size,
            p.v_drive,
            p.delay * 1e9,
            p.energy.joule * 1e15,
            p.energy.leakage * 1e15,
            p.energy.dynamic * 1e15,
            p.energy.total * 1e15,
            p.area * 1e12
        )
        .unwrap();
    }
    s
}

pub fn cmos_csv(curve: &[PowerDelay]) -> String {
    let mut s = String::from("scale,delay_ns,power_uW,e_total_fJ\n");
    for p in curve {
        writeln!(s, "{:.6e},{:.4},{:.4},{:.4}", p.scale, p.delay * 1e9, p.power * 1e6, p.energy * 1e15).unwrap();
    }
    s
}

/// Plain-text comparison report followed by a `key: value` block.
pub fn report(app: App, front: &[DesignPoint], cmp: &Comparison, cmos: &CmosReference, cfg: &Config) -> String {
    let mut s = String::new();
    writeln!(s, "spin vs CMOS comparison: {}", app.name()).unwrap();
    writeln!(s, "CMOS side: calibrated to a target energy ratio (amplifier power/delay model, not independently derived)").unwrap();
    writeln!(s).unwrap();
    writeln!(s, "spin minimum-energy frontier (per driver size):").unwrap();
    for p in front {
        writeln!(
            s,
            "  size {:>2}x  V={:.4} V  delay={:.3} ns  E={:.2} fJ  area={:.3} um2",
            p.size,
            p.v_drive,
            p.delay * 1e9,
            p.energy.total * 1e15,
            p.area * 1e12
        )
        .unwrap();
    }
    writeln!(s, "CMOS cell-equation settle time: {:.3} RC (converged: {}, correct: {})", cmos.settle_rc, cmos.converged, cmos.correct).unwrap();
    writeln!(s, "CMOS idle power (SRAM weight retention): {:.3e} W; spin idle power: 0 W", idle_power(cmos, cfg)).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "[result]").unwrap();
    writeln!(s, "app: {}", app.name()).unwrap();
    writeln!(s, "cmos_calibration: calibrated-to-target").unwrap();
    writeln!(s, "spin_delay_ns: {:.4}", cmp.spin_delay * 1e9).unwrap();
    writeln!(s, "spin_energy_fJ: {:.4}", cmp.spin_energy * 1e15).unwrap();
    writeln!(s, "spin_area_um2: {:.4}", cmp.spin_area * 1e12).unwrap();
    writeln!(s, "cmos_delay_ns: {:.4}", cmp.cmos_delay * 1e9).unwrap();
    writeln!(s, "cmos_energy_fJ: {:.4}", cmp.cmos_energy * 1e15).unwrap();
    writeln!(s, "cmos_area_um2: {:.4}", cmp.cmos_area * 1e12).unwrap();
    writeln!(s, "energy_ratio: {:.3}", cmp.energy_ratio).unwrap();
    writeln!(s, "area_ratio: {:.3}", cmp.area_ratio).unwrap();
    writeln!(s, "tenfold: {}", cmp.meets_tenfold()).unwrap();
    writeln!(s, "frontier_turns_up: {}", frontier_turns_up(front)).unwrap();
    s
}

/// SRAM retention power of the CMOS weights; the spin synapses are
/// non-volatile.
pub fn idle_power(cmos: &CmosReference, cfg: &Config) -> f64 {
    let bits = (cmos.workload.synapse_levels / LEVELS_PER_UNIT as f64).ceil().max(0.0);
    bits * cfg.cmos.amplifier.sram_bit_power
}
