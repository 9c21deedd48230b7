//! The spintronic CNN: a grid of macrospin neurons, each driven by the
//! superposed spin currents of its 3×3 neighborhood synapses.
//!
//! A step is synchronous: every neuron's logic output is read from the
//! current magnetization, each neuron's net spin current is assembled from
//! those outputs, and then every magnet advances one LLG step. Each cell owns
//! a private random stream, so trajectories do not depend on the schedule.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{self, Schedule};
use crate::magnet::{MagnetParams, Magnetization, SpinCurrent, Stepper};
use crate::pattern::Pattern;
use crate::readout::ReadPath;
use crate::streams;
use crate::templates::{Template, TemplateSet};
use crate::transport::{torque_current, ChannelParams};

/// Values seen by cells on the grid edge for neighbors outside the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// Virtual neighbors with a constant output and input (default -1, white).
    Fixed(f64),
    /// Virtual neighbors mirror the nearest edge cell.
    ZeroFlux,
}

impl Default for Boundary {
    fn default() -> Self {
        Boundary::Fixed(-1.0)
    }
}

impl Boundary {
    pub fn negated(self) -> Self {
        match self {
            Boundary::Fixed(v) => Boundary::Fixed(-v),
            Boundary::ZeroFlux => Boundary::ZeroFlux,
        }
    }
}

const VIRTUAL: u32 = u32::MAX;

/// Indices of the 3×3 neighborhood of every cell, row-major over offsets;
/// `VIRTUAL` marks a fixed-value neighbor outside the grid.
pub(crate) fn neighborhoods(rows: usize, cols: usize, boundary: Boundary) -> Vec<[u32; 9]> {
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows as isize {
        for c in 0..cols as isize {
            let mut n = [VIRTUAL; 9];
            for (k, slot) in n.iter_mut().enumerate() {
                let (rr, cc) = (r + k as isize / 3 - 1, c + k as isize % 3 - 1);
                let inside = (0..rows as isize).contains(&rr) && (0..cols as isize).contains(&cc);
                *slot = match (inside, boundary) {
                    (true, _) => (rr as usize * cols + cc as usize) as u32,
                    (false, Boundary::ZeroFlux) => {
                        let rr = rr.clamp(0, rows as isize - 1) as usize;
                        let cc = cc.clamp(0, cols as isize - 1) as usize;
                        (rr * cols + cc) as u32
                    }
                    (false, Boundary::Fixed(_)) => VIRTUAL,
                };
            }
            out.push(n);
        }
    }
    out
}

#[inline]
pub(crate) fn kernel_sum(k: &[[f64; 3]; 3], nbr: &[u32; 9], values: &[f64], virtual_value: f64) -> f64 {
    let mut s = 0.0;
    for (j, &n) in nbr.iter().enumerate() {
        let w = k[j / 3][j % 3];
        if w != 0.0 {
            let v = if n == VIRTUAL { virtual_value } else { values[n as usize] };
            s += w * v;
        }
    }
    s
}

fn boundary_value(b: Boundary) -> f64 {
    match b {
        Boundary::Fixed(v) => v,
        Boundary::ZeroFlux => 0.0,
    }
}

/// Neuron grid with its inputs and templates.
#[derive(Debug, Clone)]
pub struct CnnGrid {
    rows: usize,
    cols: usize,
    m: Vec<Magnetization>,
    inputs: Vec<f64>,
    templates: TemplateSet,
    boundary: Boundary,
}

impl CnnGrid {
    /// Magnets start along the pixel values, tilted by `tilt` rad off the
    /// axis (an exactly collinear start is a torque-free fixed point).
    pub fn new(state: &Pattern, inputs: &Pattern, templates: TemplateSet, boundary: Boundary, tilt: f64) -> Result<Self> {
        inputs.check_shape(state.rows(), state.cols())?;
        templates.check_shape(state.rows(), state.cols())?;
        Ok(Self {
            rows: state.rows(),
            cols: state.cols(),
            m: state.pixels().iter().map(|&p| Magnetization::tilted(p as f64, tilt)).collect(),
            inputs: inputs.pixels().iter().map(|&p| p as f64).collect(),
            templates,
            boundary,
        })
    }

    /// Grid with an explicit magnetization per cell.
    pub fn from_magnetizations(
        rows: usize,
        cols: usize,
        m: Vec<Magnetization>,
        inputs: &Pattern,
        templates: TemplateSet,
        boundary: Boundary,
    ) -> Result<Self> {
        inputs.check_shape(rows, cols)?;
        templates.check_shape(rows, cols)?;
        if m.len() != rows * cols {
            return Err(Error::InvalidArgument(format!("{} magnetizations for a {rows}x{cols} grid", m.len())));
        }
        Ok(Self {
            rows,
            cols,
            m,
            inputs: inputs.pixels().iter().map(|&p| p as f64).collect(),
            templates,
            boundary,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn magnetizations(&self) -> &[Magnetization] {
        &self.m
    }
    pub fn templates(&self) -> &TemplateSet {
        &self.templates
    }
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn mz(&self) -> Vec<f64> {
        self.m.iter().map(|m| m.mz()).collect()
    }

    /// Logic outputs as a pattern.
    pub fn output(&self, read: &ReadPath) -> Pattern {
        let px = self.m.iter().map(|m| read.logic(m.mz())).collect();
        Pattern::new(self.rows, self.cols, px).expect("grid shape is valid")
    }

    /// The mirror-image grid: magnetizations flipped, inputs and fixed
    /// boundary negated, biases negated. Its trajectory is the negation of
    /// this grid's at zero temperature.
    pub fn mirrored(&self) -> CnnGrid {
        let neg_bias = |t: &Template| Template { i: -t.i, ..*t };
        let templates = match &self.templates {
            TemplateSet::SpaceInvariant(t) => TemplateSet::SpaceInvariant(neg_bias(t)),
            TemplateSet::SpaceVarying { rows, cols, cells } => TemplateSet::SpaceVarying {
                rows: *rows,
                cols: *cols,
                cells: cells.iter().map(neg_bias).collect(),
            },
        };
        CnnGrid {
            rows: self.rows,
            cols: self.cols,
            m: self.m.iter().map(|m| m.flipped()).collect(),
            inputs: self.inputs.iter().map(|u| -u).collect(),
            templates,
            boundary: self.boundary.negated(),
        }
    }

    /// Template-unit drive `Σ A y + Σ B u + I` of every cell for the given
    /// outputs.
    pub fn drives(&self, outputs: &[f64]) -> Vec<f64> {
        let nbr = neighborhoods(self.rows, self.cols, self.boundary);
        let b = boundary_value(self.boundary);
        (0..self.m.len())
            .map(|k| {
                let t = self.templates.cell(k);
                kernel_sum(&t.a, &nbr[k], outputs, b) + kernel_sum(&t.b, &nbr[k], &self.inputs, b) + t.i
            })
            .collect()
    }
}

/// Everything a run needs besides the grid.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub magnet: MagnetParams,
    pub channel: ChannelParams,
    pub read: ReadPath,
    /// Injected spin current of one template unit (A).
    pub i0: f64,
    pub dt: f64,
    pub t_max: f64,
    pub temperature: f64,
    pub seed: u64,
    pub hold_time: f64,
    pub mz_threshold: f64,
    /// Trajectory sample interval (s); `None` records only the first and
    /// last state.
    pub sample_interval: Option<f64>,
    pub schedule: Schedule,
}

/// Sampled run history.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub rows: usize,
    pub cols: usize,
    pub times: Vec<f64>,
    /// `mz[s][cell]` at `times[s]`.
    pub mz: Vec<Vec<f64>>,
    /// End of the first window of `hold_time` over which every cell stayed
    /// settled.
    pub convergence_time: Option<f64>,
    pub final_output: Pattern,
    pub initial_output: Pattern,
    /// Logic-output transitions summed over all cells and steps.
    pub output_transitions: u64,
    pub hold_time: f64,
    pub t_max: f64,
}

impl Trajectory {
    pub fn converged(&self) -> bool {
        self.convergence_time.is_some()
    }

    /// Time at which the last cell settled (convergence minus the hold
    /// window). This is the per-operation delay.
    pub fn settle_time(&self) -> Option<f64> {
        self.convergence_time.map(|t| (t - self.hold_time).max(0.0))
    }

    /// Pixels whose output differs between start and end.
    pub fn flipped_pixels(&self) -> usize {
        self.initial_output.hamming(&self.final_output)
    }
}

struct Cell {
    m: Magnetization,
    rng: ChaCha8Rng,
    current: f64,
}

/// Steps `grid` in place until convergence or `t_max`.
pub fn run(grid: &mut CnnGrid, ctx: &RunContext) -> Result<Trajectory> {
    let stepper = Stepper::new(&ctx.magnet, ctx.temperature, ctx.dt)?;
    if !(ctx.t_max >= ctx.dt) {
        return Err(Error::InvalidArgument("t_max must be at least one step".into()));
    }
    let n = grid.m.len();
    let nbr = neighborhoods(grid.rows, grid.cols, grid.boundary);
    let bval = boundary_value(grid.boundary);
    let unit = torque_current(1.0, ctx.i0, &ctx.channel).0;
    // B u + I never changes during a run.
    let fixed: Vec<f64> = (0..n)
        .map(|k| {
            let t = grid.templates.cell(k);
            kernel_sum(&t.b, &nbr[k], &grid.inputs, bval) + t.i
        })
        .collect();
    let mut cells: Vec<Cell> = grid
        .m
        .iter()
        .enumerate()
        .map(|(k, &m)| Cell { m, rng: streams::stream(ctx.seed, "thermal", k as u64), current: 0.0 })
        .collect();

    let total_steps = (ctx.t_max / ctx.dt).round() as u64;
    let hold_steps = (ctx.hold_time / ctx.dt).round() as u64;
    let sample_every = ctx.sample_interval.map(|s| ((s / ctx.dt).round() as u64).max(1));
    let read = &ctx.read;

    let mut outputs: Vec<f64> = cells.iter().map(|c| read.logic(c.m.mz()) as f64).collect();
    let initial_output = to_pattern(grid, &outputs);
    let mut times = vec![0.0];
    let mut samples = vec![cells.iter().map(|c| c.m.mz()).collect::<Vec<_>>()];
    let mut settled_since: Option<u64> = None;
    let mut convergence = None;
    let mut transitions = 0u64;
    let mut step = 0u64;
    let templates = &grid.templates;

    loop {
        // Drive from step-n outputs, then the settled test on step-n state.
        exec::for_each_mut(ctx.schedule, &mut cells, |k, c| {
            let s = kernel_sum(&templates.cell(k).a, &nbr[k], &outputs, bval) + fixed[k];
            c.current = unit * s;
        });
        let all_settled = cells
            .iter()
            .all(|c| c.m.mz().abs() >= ctx.mz_threshold && c.current * c.m.mz() >= 0.0);
        if all_settled {
            let start = *settled_since.get_or_insert(step);
            if step - start >= hold_steps {
                convergence = Some(step as f64 * ctx.dt);
            }
        } else {
            settled_since = None;
        }
        if convergence.is_some() || step >= total_steps {
            break;
        }
        exec::for_each_mut(ctx.schedule, &mut cells, |_, c| {
            c.m = stepper.step(c.m, SpinCurrent(c.current), &mut c.rng);
        });
        step += 1;
        for (o, c) in outputs.iter_mut().zip(&cells) {
            let y = read.logic(c.m.mz()) as f64;
            if y != *o {
                transitions += 1;
                *o = y;
            }
        }
        if sample_every.is_some_and(|e| step.is_multiple_of(e)) {
            times.push(step as f64 * ctx.dt);
            samples.push(cells.iter().map(|c| c.m.mz()).collect());
        }
    }
    if *times.last().unwrap() != step as f64 * ctx.dt {
        times.push(step as f64 * ctx.dt);
        samples.push(cells.iter().map(|c| c.m.mz()).collect());
    }
    for (dst, c) in grid.m.iter_mut().zip(&cells) {
        *dst = c.m;
    }
    Ok(Trajectory {
        rows: grid.rows,
        cols: grid.cols,
        times,
        mz: samples,
        convergence_time: convergence,
        final_output: to_pattern(grid, &outputs),
        initial_output,
        output_transitions: transitions,
        hold_time: ctx.hold_time,
        t_max: ctx.t_max,
    })
}

fn to_pattern(grid: &CnnGrid, outputs: &[f64]) -> Pattern {
    Pattern::new(grid.rows, grid.cols, outputs.iter().map(|&y| y as i8).collect()).expect("grid shape is valid")
}

/// The noise-removal template: `A` = cross with center 1, `B = 0`, `I = 0`.
pub fn noise_filter_templates() -> TemplateSet {
    TemplateSet::SpaceInvariant(Template {
        a: [[0.0, 1.0, 0.0], [1.0, 1.0, 1.0], [0.0, 1.0, 0.0]],
        ..Template::default()
    })
}

/// Hebbian outer-product rule with the default white boundary.
pub fn hebbian_train(pairs: &[(Pattern, Pattern)]) -> Result<TemplateSet> {
    hebbian_train_with(pairs, Boundary::default())
}

/// `A_ij,kl = <t_ij t_kl>`, `B_ij,kl = <t_ij c_kl>`, `I = 0`, averaged over
/// pairs `(c, t)` and quantized to synapse levels. Neighbors outside the
/// grid take the boundary value, matching what the cell sees at run time.
pub fn hebbian_train_with(pairs: &[(Pattern, Pattern)], boundary: Boundary) -> Result<TemplateSet> {
    let (first_cue, _) = pairs.first().ok_or(Error::Empty("training pairs"))?;
    let (rows, cols) = (first_cue.rows(), first_cue.cols());
    for (c, t) in pairs {
        c.check_shape(rows, cols)?;
        t.check_shape(rows, cols)?;
    }
    let nbr = neighborhoods(rows, cols, boundary);
    let bval = boundary_value(boundary);
    let inv_p = 1.0 / pairs.len() as f64;
    let value = |p: &Pattern, n: u32| if n == VIRTUAL { bval } else { p.pixels()[n as usize] as f64 };
    let cells = (0..rows * cols)
        .map(|k| {
            let mut t = Template::default();
            for (cue, target) in pairs {
                let tk = target.pixels()[k] as f64;
                for (j, &n) in nbr[k].iter().enumerate() {
                    t.a[j / 3][j % 3] += inv_p * tk * value(target, n);
                    t.b[j / 3][j % 3] += inv_p * tk * value(cue, n);
                }
            }
            t.quantized()
        })
        .collect();
    TemplateSet::space_varying(rows, cols, cells)
}

/// Grid for a recall run: the cue is both initial state and input.
pub fn associative_grid(cue: &Pattern, templates: &TemplateSet, boundary: Boundary, tilt: f64) -> Result<CnnGrid> {
    if !templates.is_space_varying() {
        return Err(Error::Templates("associative recall needs space-varying templates".into()));
    }
    CnnGrid::new(cue, cue, templates.clone(), boundary, tilt)
}

pub fn run_associative(cue: &Pattern, templates: &TemplateSet, boundary: Boundary, tilt: f64, ctx: &RunContext) -> Result<Trajectory> {
    let mut grid = associative_grid(cue, templates, boundary, tilt)?;
    run(&mut grid, ctx)
}
