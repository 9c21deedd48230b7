use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};

use spincnn::analysis::{self, App, Scenario, SweepRecord};
use spincnn::glyphs;
use spincnn::network::{self, Trajectory};
use spincnn::pattern::frame_p2;
use spincnn::{parse_config, Config, Pattern, Schedule, TemplateSet};

use crate::manifest::Manifest;
use crate::{ConfigArg, SimulateArgs, SweepArgs, TrainArgs};

/// Parsed configuration and the text it came from (empty for defaults).
pub fn load_config(arg: &ConfigArg) -> Result<(Config, String)> {
    match &arg.config {
        None => Ok((Config::default(), String::new())),
        Some(path) => {
            let text = read(path)?;
            let cfg = parse_config(&text).with_context(|| format!("config {}", path.display()))?;
            Ok((cfg, text))
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_pattern(path: &Path) -> Result<Pattern> {
    Pattern::parse(&read(path)?).with_context(|| format!("pattern {}", path.display()))
}

fn read_templates(path: &Path) -> Result<TemplateSet> {
    TemplateSet::parse(&read(path)?).with_context(|| format!("templates {}", path.display()))
}

fn create_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).with_context(|| format!("creating {}", path.display()))
}

/// Unit-weight spin current of an application: its configured multiple of
/// the critical current.
fn app_i0(cfg: &Config, app: App) -> Result<f64> {
    let factor = match app {
        App::NoiseFilter => cfg.network.i0_factor,
        App::Associative => cfg.network.assoc_i0_factor,
    };
    Ok(factor * cfg.critical_current()?)
}

fn simulate_scenario(a: &SimulateArgs, cfg: &Config) -> Result<Scenario> {
    let demo = || Scenario::demo(a.app, cfg);
    let mut sc = match (a.app, &a.templates) {
        (App::Associative, None) => bail!("--app assoc needs --templates (write one with `spincnn train`)"),
        (App::Associative, Some(t)) => {
            let templates = read_templates(t)?;
            ensure!(templates.is_space_varying(), "templates {}: assoc needs space-varying templates", t.display());
            Scenario { templates, ..demo()? }
        }
        (App::NoiseFilter, Some(t)) => Scenario { templates: read_templates(t)?, ..demo()? },
        (App::NoiseFilter, None) => demo()?,
    };
    if let Some(p) = &a.pattern {
        let pattern = read_pattern(p)?;
        sc.initial = pattern.clone();
        sc.inputs = pattern;
        sc.expected = None;
    }
    if let Some(e) = &a.expected {
        sc.expected = Some(read_pattern(e)?);
    }
    let (rows, cols) = (sc.initial.rows(), sc.initial.cols());
    sc.templates
        .check_shape(rows, cols)
        .context("templates do not fit the pattern")?;
    if let Some(e) = &sc.expected {
        e.check_shape(rows, cols).context("expected pattern does not fit")?;
    }
    Ok(sc)
}

pub fn trajectory_csv(tr: &Trajectory) -> String {
    let mut s = String::from("time_ns,cell_row,cell_col,mz\n");
    for (t, mz) in tr.times.iter().zip(&tr.mz) {
        for (k, m) in mz.iter().enumerate() {
            writeln!(s, "{:.4},{},{},{:.6}", t * 1e9, k / tr.cols, k % tr.cols, m).unwrap();
        }
    }
    s
}

/// Indices of the samples that fall on the frame grid, plus the last one.
fn frame_samples(times: &[f64], interval: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = times
        .iter()
        .enumerate()
        .filter(|(_, &t)| {
            let k = t / interval;
            (k - k.round()).abs() < 1e-6
        })
        .map(|(i, _)| i)
        .collect();
    if idx.last() != Some(&(times.len() - 1)) {
        idx.push(times.len() - 1);
    }
    idx
}

pub fn simulate(a: &SimulateArgs) -> Result<bool> {
    let (cfg, text) = load_config(&a.config)?;
    let seed = a.seed.unwrap_or(cfg.sim.seed);
    let sc = simulate_scenario(a, &cfg)?;
    let mut manifest = Manifest::start(&text, seed);

    let mut ctx = cfg.run_context(app_i0(&cfg, a.app)?, sc.t_max, true, Schedule::Parallel);
    ctx.seed = seed;
    let mut grid = sc.grid(&cfg)?;
    let tr = network::run(&mut grid, &ctx)?;

    create_dir(&a.out)?;
    let frames = a.out.join("frames");
    create_dir(&frames)?;
    manifest.write(a.out.join("trajectory.csv"), trajectory_csv(&tr))?;
    for (n, i) in frame_samples(&tr.times, cfg.sim.frame_interval).into_iter().enumerate() {
        manifest.write(frames.join(format!("frame_{n:04}.pgm")), frame_p2(tr.rows, tr.cols, &tr.mz[i]))?;
    }
    manifest.write(a.out.join("initial.pat"), sc.initial.to_text())?;
    manifest.write(a.out.join("final.pat"), tr.final_output.to_text())?;

    let converged = tr.converged();
    manifest.field("app", a.app.name());
    manifest.field("converged", converged);
    match tr.settle_time() {
        Some(t) => manifest.field("settle_time_ns", format!("{:.4}", t * 1e9)),
        None => manifest.field("settle_time_ns", "none"),
    }
    manifest.field("flipped_pixels", tr.flipped_pixels());
    if let Some(e) = &sc.expected {
        manifest.field("correct", *e == tr.final_output);
    }
    manifest.finish(a.out.join("manifest.txt"))?;

    match tr.settle_time() {
        Some(t) => println!("converged: settle time {:.3} ns, {} pixels flipped", t * 1e9, tr.flipped_pixels()),
        None => println!("not converged within {:.3} ns", sc.t_max * 1e9),
    }
    if let Some(e) = &sc.expected {
        println!("matches expected: {}", *e == tr.final_output);
    }
    Ok(converged)
}

fn parse_pair(pair: &str) -> Result<(Pattern, Pattern)> {
    let (cue, target) = pair
        .split_once(':')
        .with_context(|| format!("pair {pair:?}: expected cue.pat:target.pat"))?;
    Ok((read_pattern(Path::new(cue))?, read_pattern(Path::new(target))?))
}

pub fn train(a: &TrainArgs) -> Result<bool> {
    let (cfg, text) = load_config(&a.config)?;
    let pairs = a.pairs.iter().map(|p| parse_pair(p)).collect::<Result<Vec<_>>>()?;
    let templates = network::hebbian_train_with(&pairs, cfg.network.boundary)?;
    let mut manifest = Manifest::start(&text, cfg.sim.seed);
    manifest.write(&a.out, templates.to_text()?)?;
    manifest.field("pairs", pairs.len());
    let mut path = a.out.clone().into_os_string();
    path.push(".manifest");
    manifest.finish(PathBuf::from(path))?;
    println!("wrote {} ({} pairs)", a.out.display(), pairs.len());
    Ok(true)
}

/// Sweep records in output order: voltage, then size, then seed.
fn sort_records(records: &mut [SweepRecord]) {
    records.sort_by(|a, b| {
        a.v_drive
            .total_cmp(&b.v_drive)
            .then(a.size.cmp(&b.size))
            .then(a.seed.cmp(&b.seed))
    });
}

pub fn sweep(a: &SweepArgs) -> Result<bool> {
    let (cfg, text) = load_config(&a.config)?;
    ensure!(a.jobs >= 1, "--jobs must be at least 1");
    let voltages = a.voltages.clone().unwrap_or_else(|| cfg.sweep.voltages.clone());
    let sizes = a.sizes.clone().unwrap_or_else(|| cfg.sweep.sizes.clone());
    ensure!(!sizes.is_empty() && sizes.iter().all(|&s| s >= 1), "--sizes must list positive multipliers");
    let base = a.seed.unwrap_or(cfg.sim.seed);
    let seeds: Vec<u64> = (0..a.seeds.unwrap_or(cfg.sweep.seeds) as u64).map(|k| base + k).collect();
    let sc = Scenario::demo(a.app, &cfg)?;
    let mut manifest = Manifest::start(&text, base);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .context("building the worker pool")?;
    let schedule = if a.jobs > 1 { Schedule::Parallel } else { Schedule::Sequential };

    create_dir(&a.out)?;
    let mut records = Vec::new();
    for &size in &sizes {
        records.extend(pool.install(|| analysis::sweep_voltage(&cfg, &sc, &voltages, size, &seeds, schedule))?);
    }
    sort_records(&mut records);
    manifest.write(a.out.join("sweep.csv"), analysis::sweep_csv(&records))?;

    let points = analysis::aggregate(&records);
    let cmos = pool.install(|| analysis::cmos_reference(&cfg, &sc, &analysis::default_cmos_scales(), schedule))?;
    manifest.write(a.out.join("cmos.csv"), analysis::cmos_csv(&cmos.curve))?;
    manifest.field("app", a.app.name());

    let Some(best) = analysis::argmin_energy(&points) else {
        manifest.field("converged", false);
        manifest.finish(a.out.join("manifest.txt"))?;
        println!("no design point converged on every seed");
        return Ok(false);
    };
    let front = analysis::pareto(&points)?;
    manifest.write(a.out.join("pareto.csv"), analysis::pareto_csv(&front))?;
    let cmp = analysis::compare(&points[best], &cmos.curve, cmos.area.total)?;
    let report = analysis::report(a.app, &front, &cmp, &cmos, &cfg);
    manifest.write(a.out.join("report.txt"), &report)?;
    manifest.field("converged", true);
    manifest.finish(a.out.join("manifest.txt"))?;
    print!("{report}");
    Ok(true)
}

pub fn glyph(name: &str) -> Result<bool> {
    print!("{}", glyphs::glyph(name)?.to_text());
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frames_on_grid_and_last() {
        let times = [0.0, 0.25e-9, 0.5e-9, 0.75e-9, 1.0e-9, 1.1e-9];
        assert_eq!(frame_samples(&times, 0.5e-9), vec![0, 2, 4, 5]);
        assert_eq!(frame_samples(&times[..5], 0.5e-9), vec![0, 2, 4]);
    }

    #[test]
    fn record_order() {
        let r = |v, size, seed| SweepRecord {
            v_drive: v,
            size,
            seed,
            converged: true,
            delay: 1e-9,
            energy: Default::default(),
            area: 1.0,
            transitions: 0,
        };
        let mut recs = vec![r(0.2, 1, 0), r(0.1, 2, 1), r(0.1, 2, 0), r(0.1, 1, 5)];
        sort_records(&mut recs);
        let keys: Vec<_> = recs.iter().map(|r| (r.v_drive, r.size, r.seed)).collect();
        assert_eq!(keys, vec![(0.1, 1, 5), (0.1, 2, 0), (0.1, 2, 1), (0.2, 1, 0)]);
    }
}
