//! Numerical models side by side with their closed forms.

use std::fmt::Write as _;

use anyhow::{Context, Result};

use spincnn::config::SimConfig;
use spincnn::magnet::{critical_current_estimate, switch_time, switch_time_analytic, SpinCurrent};
use spincnn::readout::{read_cell, read_current, InverterModel};
use spincnn::transport::{solve_drift_diffusion, spin_transmission};

use crate::commands::load_config;
use crate::OracleCommand;

const TRANSMISSION_TOL: f64 = 1e-6;
pub const READ_THICKNESSES: [f64; 3] = [1.9e-9, 2.0e-9, 2.1e-9];
const SWITCH_FACTORS: [f64; 4] = [2.0, 5.0, 10.0, 20.0];

pub fn run(cmd: &OracleCommand) -> Result<bool> {
    match cmd {
        OracleCommand::CriticalCurrent(c) => {
            let (cfg, _) = load_config(c)?;
            let analytic = critical_current_estimate(&cfg.magnet);
            let numeric = cfg.critical_current()?;
            let ratio = numeric / analytic;
            println!("critical current: analytic {analytic:.6e} A  numeric {numeric:.6e} A  rel_err {:.3e}", ratio - 1.0);
            let ok = (0.5..=2.0).contains(&ratio);
            println!("within factor 2: {ok}");
            Ok(ok)
        }
        OracleCommand::Transmission { config, n, profile } => {
            let (cfg, _) = load_config(config)?;
            let ch = cfg.channel;
            let analytic = spin_transmission(ch.length, ch.l_sf)?;
            let p = solve_drift_diffusion(*n, &ch, 1e-6)?;
            let numeric = p.transmission();
            let err = (numeric - analytic).abs();
            println!("transmission: analytic {analytic:.6}  numeric {numeric:.6}  abs_err {err:.3e}  rel_err {:.3e}", err / analytic);
            if let Some(path) = profile {
                let mut s = String::from("x_m,mu_s,j_s\n");
                for ((x, mu), js) in p.x.iter().zip(&p.mu).zip(&p.js) {
                    writeln!(s, "{x:.6e},{mu:.6e},{js:.6e}")?;
                }
                std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))?;
            }
            let ok = err <= TRANSMISSION_TOL;
            println!("within {TRANSMISSION_TOL:e}: {ok}");
            Ok(ok)
        }
        OracleCommand::ReadCurve { config, out } => {
            let (cfg, _) = load_config(config)?;
            let mut csv = String::from("mz");
            for t in READ_THICKNESSES {
                write!(csv, ",v_out_{:.1}nm", t * 1e9)?;
            }
            csv.push('\n');
            let mut curves = vec![Vec::new(); READ_THICKNESSES.len()];
            let mut levels_ok = true;
            for k in -20i32..=20 {
                let mz = k as f64 / 20.0;
                write!(csv, "{mz:.2}")?;
                for (curve, &t) in curves.iter_mut().zip(&READ_THICKNESSES) {
                    let mtj = cfg.mtj.matched(t);
                    let inv = InverterModel::matched_to(&mtj, cfg.inverter.v_dd, cfg.inverter.gain)?;
                    let r = read_cell(&mtj, &inv, mz, t)?;
                    if k.abs() == 20 {
                        levels_ok &= r.logic as f64 == mz;
                    }
                    curve.push(r.analog);
                    write!(csv, ",{:.6}", r.analog)?;
                }
                csv.push('\n');
            }
            let monotone = curves.iter().all(|c| c.windows(2).all(|w| w[1] >= w[0]));
            let i_read = read_current(&cfg.mtj, 1.0)?;
            let bound = cfg.critical_current()? / cfg.channel.beta;
            let mut summary = format!("logic levels at mz = +-1 invariant: {levels_ok}\nmonotone in mz: {monotone}\n");
            writeln!(summary, "read current {i_read:.4e} A  bound Ic/beta {bound:.4e} A  non-disturbing: {}", i_read <= bound)?;
            match out {
                Some(path) => {
                    std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
                    print!("{summary}");
                }
                None => {
                    print!("{csv}");
                    eprint!("{summary}");
                }
            }
            Ok(levels_ok && monotone && i_read <= bound)
        }
        OracleCommand::SwitchStats { config, seeds } => {
            let (cfg, _) = load_config(config)?;
            let est = critical_current_estimate(&cfg.magnet);
            let sim = cfg.sim;
            let cold = SimConfig { temperature: 0.0, t_max: sim.t_max.max(50e-9), ..sim };
            let warm = SimConfig { t_max: sim.t_max.max(50e-9), ..sim };
            println!("factor,analytic_ns,numeric_T0_ns,rel_err,thermal_median_ns");
            let mut ok = true;
            for f in SWITCH_FACTORS {
                let is = SpinCurrent(-f * est);
                let analytic = switch_time_analytic(&cfg.magnet, is, cold.init_tilt(), cold.mz_threshold)
                    .context("closed form undefined at or below critical")?;
                let numeric = switch_time(&cfg.magnet, is, &cold, 0)?.time();
                let mut times: Vec<f64> = (0..*seeds)
                    .map(|s| switch_time(&cfg.magnet, is, &warm, s).map(|o| o.time().unwrap_or(f64::INFINITY)))
                    .collect::<spincnn::Result<_>>()?;
                times.sort_by(f64::total_cmp);
                let median = times.get(times.len() / 2).copied().unwrap_or(f64::NAN);
                let (num_ns, rel) = match numeric {
                    Some(t) => {
                        ok &= (t - analytic).abs() <= cold.dt + 1e-3 * analytic;
                        (format!("{:.4}", t * 1e9), format!("{:.3e}", (t - analytic) / analytic))
                    }
                    None => {
                        ok = false;
                        ("timeout".into(), "nan".into())
                    }
                };
                println!("{f},{:.4},{num_ns},{rel},{:.4}", analytic * 1e9, median * 1e9);
            }
            Ok(ok)
        }
    }
}
