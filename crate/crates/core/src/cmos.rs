//! Analog CMOS CNN baseline: Chua's cell equation integrated with RK4, plus
//! a calibrated amplifier power/delay model and a transistor-width area
//! model.
//!
//! `C dx/dt = -x/R + Σ A y + Σ B u + I`, `y = f(x)`.

use crate::error::{ensure, Error, Result};
use crate::exec::{self, Schedule};
use crate::network::{kernel_sum, neighborhoods, Boundary};
use crate::pattern::Pattern;
use crate::templates::{Template, TemplateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFn {
    /// `0.5 (|x+1| - |x-1|)`
    #[default]
    Pwl,
    /// `tanh x`, for sensitivity checks.
    Sigmoid,
}

#[inline]
pub fn f_output(x: f64) -> f64 {
    0.5 * ((x + 1.0).abs() - (x - 1.0).abs())
}

impl OutputFn {
    #[inline]
    pub fn eval(self, x: f64) -> f64 {
        match self {
            OutputFn::Pwl => f_output(x),
            OutputFn::Sigmoid => x.tanh(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChuaParams {
    pub r: f64,
    pub c: f64,
    pub output: OutputFn,
}

impl Default for ChuaParams {
    fn default() -> Self {
        Self { r: 1.0, c: 1.0, output: OutputFn::Pwl }
    }
}

impl ChuaParams {
    pub fn validate(&self) -> Result<()> {
        ensure(self.r > 0.0, "cmos.r", self.r, "must be > 0")?;
        ensure(self.c > 0.0, "cmos.c", self.c, "must be > 0")
    }

    pub fn tau(&self) -> f64 {
        self.r * self.c
    }
}

/// The CMOS counterpart of the spin noise filter: cross template with the
/// given center weight (2 compensates the `-x/R` leak).
pub fn cmos_noise_filter_templates(center: f64) -> TemplateSet {
    TemplateSet::SpaceInvariant(Template {
        a: [[0.0, 1.0, 0.0], [1.0, center, 1.0], [0.0, 1.0, 0.0]],
        ..Template::default()
    })
}

#[derive(Debug, Clone)]
pub struct CmosGrid {
    rows: usize,
    cols: usize,
    x: Vec<f64>,
    inputs: Vec<f64>,
    templates: TemplateSet,
    boundary: Boundary,
    nbr: Vec<[u32; 9]>,
}

impl CmosGrid {
    /// State voltages start at the pixel values.
    pub fn new(state: &Pattern, inputs: &Pattern, templates: TemplateSet, boundary: Boundary) -> Result<Self> {
        let x = state.pixels().iter().map(|&p| p as f64).collect();
        Self::with_state(state.rows(), state.cols(), x, inputs, templates, boundary)
    }

    pub fn with_state(
        rows: usize,
        cols: usize,
        x: Vec<f64>,
        inputs: &Pattern,
        templates: TemplateSet,
        boundary: Boundary,
    ) -> Result<Self> {
        inputs.check_shape(rows, cols)?;
        templates.check_shape(rows, cols)?;
        if x.len() != rows * cols {
            return Err(Error::InvalidArgument(format!("{} states for a {rows}x{cols} grid", x.len())));
        }
        Ok(Self {
            rows,
            cols,
            x,
            inputs: inputs.pixels().iter().map(|&p| p as f64).collect(),
            templates,
            boundary,
            nbr: neighborhoods(rows, cols, boundary),
        })
    }

    pub fn state(&self) -> &[f64] {
        &self.x
    }

    pub fn output(&self) -> Pattern {
        let px = self.x.iter().map(|&x| if x >= 0.0 { 1 } else { -1 }).collect();
        Pattern::new(self.rows, self.cols, px).expect("grid shape is valid")
    }

    fn virtual_value(&self) -> f64 {
        match self.boundary {
            Boundary::Fixed(v) => v,
            Boundary::ZeroFlux => 0.0,
        }
    }

    /// Largest steady-state magnitude `R (Σ|A| + Σ|B| + |I|)` over cells.
    pub fn state_bound(&self, p: &ChuaParams) -> f64 {
        self.templates.templates().iter().map(|t| p.r * t.gross_weight()).fold(0.0, f64::max)
    }
}

/// `dx/dt` of cell `idx` given the state vector `x`.
pub fn cell_derivative(grid: &CmosGrid, x: &[f64], idx: usize, p: &ChuaParams) -> f64 {
    let y: Vec<f64> = x.iter().map(|&v| p.output.eval(v)).collect();
    derivative_with_outputs(grid, x, &y, idx, p)
}

#[inline]
fn derivative_with_outputs(grid: &CmosGrid, x: &[f64], y: &[f64], idx: usize, p: &ChuaParams) -> f64 {
    let t = grid.templates.cell(idx);
    let b = grid.virtual_value();
    let s = kernel_sum(&t.a, &grid.nbr[idx], y, p.output.eval(b))
        + kernel_sum(&t.b, &grid.nbr[idx], &grid.inputs, b)
        + t.i;
    (-x[idx] / p.r + s) / p.c
}

fn derivatives(grid: &CmosGrid, x: &[f64], p: &ChuaParams, schedule: Schedule, out: &mut [f64]) {
    let y: Vec<f64> = x.iter().map(|&v| p.output.eval(v)).collect();
    exec::fill(schedule, out, |k| derivative_with_outputs(grid, x, &y, k, p));
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub dt: f64,
    pub t_max: f64,
    pub hold_time: f64,
    /// Sample interval; `None` keeps only the first and last state.
    pub sample_interval: Option<f64>,
    pub schedule: Schedule,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CmosTrajectory {
    pub times: Vec<f64>,
    pub x: Vec<Vec<f64>>,
    /// End of the first `hold_time` window in which every `|x| ≥ 1` and no
    /// cell moves back toward the linear region.
    pub convergence_time: Option<f64>,
    pub hold_time: f64,
    pub final_output: Pattern,
}

impl CmosTrajectory {
    pub fn settle_time(&self) -> Option<f64> {
        self.convergence_time.map(|t| (t - self.hold_time).max(0.0))
    }
}

/// Classical RK4 until convergence or `t_max`. Times are in the units of
/// `R C`.
pub fn integrate(grid: &mut CmosGrid, p: &ChuaParams, opts: &IntegrateOptions) -> Result<CmosTrajectory> {
    p.validate()?;
    let limit = p.tau() / 10.0;
    if !(opts.dt > 0.0 && opts.dt <= limit * (1.0 + 1e-12)) {
        return Err(Error::StepSize { dt: opts.dt, limit });
    }
    let n = grid.x.len();
    let steps = (opts.t_max / opts.dt).round() as u64;
    let hold_steps = (opts.hold_time / opts.dt).round() as u64;
    let sample_every = opts.sample_interval.map(|s| ((s / opts.dt).round() as u64).max(1));
    let h = opts.dt;
    let tau = p.tau();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut tmp = vec![0.0; n];
    let mut x = grid.x.clone();
    let mut times = vec![0.0];
    let mut samples = vec![x.clone()];
    let mut settled_since = None;
    let mut convergence = None;
    let mut step = 0u64;
    loop {
        derivatives(grid, &x, p, opts.schedule, &mut k1);
        // Saturated cells relax toward x + tau * dx; settled once that target
        // is saturated on the same side.
        let settled = x.iter().zip(&k1).all(|(&xi, &di)| xi.abs() >= 1.0 && (xi + tau * di) * xi.signum() >= 1.0);
        if settled {
            let start = *settled_since.get_or_insert(step);
            if step - start >= hold_steps {
                convergence = Some(step as f64 * h);
            }
        } else {
            settled_since = None;
        }
        if convergence.is_some() || step >= steps {
            break;
        }
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * h * k1[i];
        }
        derivatives(grid, &tmp, p, opts.schedule, &mut k2);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * h * k2[i];
        }
        derivatives(grid, &tmp, p, opts.schedule, &mut k3);
        for i in 0..n {
            tmp[i] = x[i] + h * k3[i];
        }
        derivatives(grid, &tmp, p, opts.schedule, &mut k4);
        for i in 0..n {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        step += 1;
        if sample_every.is_some_and(|e| step.is_multiple_of(e)) {
            times.push(step as f64 * h);
            samples.push(x.clone());
        }
    }
    if *times.last().unwrap() != step as f64 * h {
        times.push(step as f64 * h);
        samples.push(x.clone());
    }
    grid.x = x;
    Ok(CmosTrajectory {
        times,
        x: samples,
        convergence_time: convergence,
        hold_time: opts.hold_time,
        final_output: grid.output(),
    })
}

/// Bias-scaled amplifier model. The defaults are calibrated so that, at
/// matched delay, the CMOS noise filter costs a few tens of times the spin
/// optimum; they are not derived from transistor-level simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifierModel {
    pub v_dd: f64,
    /// Op-amp bias per neuron at scale 1 (A).
    pub i_bias_neuron: f64,
    /// OTA tail bias per synapse level at scale 1 (A).
    pub i_bias_syn_level: f64,
    /// `R C` at scale 1 (s).
    pub tau0: f64,
    /// Delay beyond which the amplifiers sit in weak inversion and energy
    /// per operation stops falling (s).
    pub delay_floor: f64,
    /// Retention power per weight bit held in SRAM (W).
    pub sram_bit_power: f64,
}

impl Default for AmplifierModel {
    fn default() -> Self {
        Self {
            v_dd: 0.7,
            i_bias_neuron: 40e-6,
            i_bias_syn_level: 5e-6,
            tau0: 5e-9,
            delay_floor: 10e-9,
            sram_bit_power: 1e-9,
        }
    }
}

impl AmplifierModel {
    pub fn validate(&self) -> Result<()> {
        ensure(self.v_dd > 0.0, "cmos.v_dd", self.v_dd, "must be > 0")?;
        ensure(self.i_bias_neuron > 0.0, "cmos.i_bias_neuron", self.i_bias_neuron, "must be > 0")?;
        ensure(self.i_bias_syn_level >= 0.0, "cmos.i_bias_syn_level", self.i_bias_syn_level, "must be >= 0")?;
        ensure(self.tau0 > 0.0, "cmos.tau0", self.tau0, "must be > 0")?;
        ensure(self.delay_floor > 0.0, "cmos.delay_floor", self.delay_floor, "must be > 0")?;
        ensure(self.sram_bit_power >= 0.0, "cmos.sram_bit_power", self.sram_bit_power, "must be >= 0")
    }
}

/// What the amplifiers have to drive for one task.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmosWorkload {
    pub cells: usize,
    /// `Σ |level|` over every synapse of every cell.
    pub synapse_levels: f64,
    /// Convergence time of the task in units of `R C`.
    pub settle_rc: f64,
}

impl CmosWorkload {
    pub fn from_templates(templates: &TemplateSet, rows: usize, cols: usize, settle_rc: f64) -> Self {
        let cells = rows * cols;
        let per_cell = |t: &Template| t.gross_weight() * crate::synapse::LEVELS_PER_UNIT as f64;
        let synapse_levels = match templates {
            TemplateSet::SpaceInvariant(t) => per_cell(t) * cells as f64,
            TemplateSet::SpaceVarying { cells: ts, .. } => ts.iter().map(per_cell).sum(),
        };
        Self { cells, synapse_levels, settle_rc }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDelay {
    pub scale: f64,
    pub power: f64,
    pub delay: f64,
    pub energy: f64,
}

/// Power and delay at bias multiplier `scale`.
///
/// Power is linear in bias. Above the knee the amplifiers are in strong
/// inversion, `gm ∝ √I`, so delay falls as `1/√scale`; below it they are in
/// weak inversion, `gm ∝ I`, and energy per operation stops falling.
pub fn cmos_power_delay(a: &AmplifierModel, w: &CmosWorkload, scale: f64) -> Result<PowerDelay> {
    ensure(scale > 0.0, "scale", scale, "must be > 0")?;
    let p0 = a.v_dd * (w.cells as f64 * a.i_bias_neuron + w.synapse_levels * a.i_bias_syn_level);
    let d0 = w.settle_rc * a.tau0;
    let knee = (d0 / a.delay_floor).powi(2);
    let delay = if scale >= knee { d0 / scale.sqrt() } else { d0 * knee.sqrt() / scale };
    let power = p0 * scale;
    Ok(PowerDelay { scale, power, delay, energy: power * delay })
}

/// Transistor-width area bookkeeping, all widths in meters; area is
/// `Σ width × 8F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaModel {
    pub feature: f64,
    pub w_min: f64,
    /// Width of each of the 7 op-amp transistors.
    pub amp_width: f64,
    /// OTA transistors excluding the quantized tail (diff pair + mirror).
    pub ota_core_width: f64,
    /// Width of one tail unit.
    pub tail_unit_width: f64,
    /// Sign inverter + multiplexer + memory cell per programmable synapse.
    pub sign_overhead_width: f64,
    /// Read inverter of a spin neuron.
    pub inverter_width: f64,
}

impl Default for AreaModel {
    fn default() -> Self {
        let f = 16e-9;
        Self {
            feature: f,
            w_min: 2.0 * f,
            amp_width: 20.0 * f,
            ota_core_width: 4.0 * 4.0 * f,
            tail_unit_width: 4.0 * f,
            sign_overhead_width: 14.0 * 2.0 * f,
            inverter_width: 3.0 * 2.0 * f,
        }
    }
}

impl AreaModel {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("area.feature", self.feature),
            ("area.w_min", self.w_min),
            ("area.amp_width", self.amp_width),
            ("area.ota_core_width", self.ota_core_width),
            ("area.tail_unit_width", self.tail_unit_width),
            ("area.inverter_width", self.inverter_width),
        ] {
            ensure(v > 0.0, name, v, "must be > 0")?;
        }
        ensure(self.sign_overhead_width >= 0.0, "area.sign_overhead_width", self.sign_overhead_width, "must be >= 0")
    }

    pub fn width_area(&self, width: f64) -> f64 {
        width * 8.0 * self.feature
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmosArea {
    pub neuron: f64,
    pub synapse: f64,
    pub overhead: f64,
    pub total: f64,
}

/// Area of `neurons` op-amps and `synapses` OTAs whose tails are quantized
/// to `resolution_bits`; programmable synapses also carry the sign/memory
/// overhead.
pub fn cmos_area(neurons: usize, synapses: usize, resolution_bits: u32, programmable: bool, a: &AreaModel) -> CmosArea {
    let tail_units = ((1u64 << resolution_bits) - 1) as f64;
    let neuron = neurons as f64 * a.width_area(7.0 * a.amp_width);
    let synapse = synapses as f64 * a.width_area(tail_units * a.tail_unit_width);
    let core = synapses as f64 * a.width_area(a.ota_core_width);
    let sign = if programmable { synapses as f64 * a.width_area(a.sign_overhead_width) } else { 0.0 };
    CmosArea { neuron, synapse, overhead: core + sign, total: neuron + synapse + core + sign }
}
