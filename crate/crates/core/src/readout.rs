//! MTJ read path: reference/read junction divider followed by an inverter.

use crate::error::{ensure, Error, Result};

/// Lower and upper oxide thickness (m) the exponential resistance law is
/// trusted for.
pub const T_OX_WINDOW: (f64, f64) = (1e-9, 3e-9);
const T_OX_NOMINAL: f64 = 2e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtjParams {
    pub t_ox_ref: f64,
    pub t_ox_read: f64,
    /// Parallel resistance at 2 nm MgO (Ω).
    pub r_p_at_2nm: f64,
    /// Exponential thickness scale of the resistance (m).
    pub lambda_ox: f64,
    /// TMR at 2 nm, `(R_AP - R_P)/R_P`.
    pub tmr: f64,
    pub v_read: f64,
    /// Junction footprint (m²).
    pub footprint: f64,
}

impl Default for MtjParams {
    fn default() -> Self {
        Self {
            t_ox_ref: 2e-9,
            t_ox_read: 2e-9,
            r_p_at_2nm: 100e3,
            lambda_ox: 0.2e-9,
            tmr: 1.6,
            v_read: 0.7,
            footprint: 30e-9 * 30e-9,
        }
    }
}

impl MtjParams {
    pub fn validate(&self) -> Result<()> {
        ensure(self.r_p_at_2nm > 0.0, "mtj.r_p", self.r_p_at_2nm, "must be > 0")?;
        ensure(self.lambda_ox > 0.0, "mtj.lambda_ox", self.lambda_ox, "must be > 0")?;
        ensure(self.tmr > 0.0, "mtj.tmr", self.tmr, "must be > 0")?;
        ensure(self.v_read > 0.0, "mtj.v_read", self.v_read, "must be > 0")?;
        ensure(self.footprint > 0.0, "mtj.footprint", self.footprint, "must be > 0")?;
        check_window(self.t_ox_ref)?;
        check_window(self.t_ox_read)
    }

    /// Copy with both junctions at thickness `t_ox`.
    pub fn matched(&self, t_ox: f64) -> Self {
        Self { t_ox_ref: t_ox, t_ox_read: t_ox, ..*self }
    }

    fn r_parallel(&self, t_ox: f64) -> f64 {
        self.r_p_at_2nm * ((t_ox - T_OX_NOMINAL) / self.lambda_ox).exp()
    }
}

fn check_window(t_ox: f64) -> Result<()> {
    if (T_OX_WINDOW.0..=T_OX_WINDOW.1).contains(&t_ox) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "t_ox",
            value: t_ox,
            rule: "oxide thickness must lie in [1 nm, 3 nm]",
        })
    }
}

/// Junction resistance with conductance linear in `mz` between the
/// parallel (`mz = +1`) and antiparallel (`mz = -1`) endpoints.
pub fn mtj_resistance(p: &MtjParams, t_ox: f64, mz: f64) -> Result<f64> {
    check_window(t_ox)?;
    let r_p = p.r_parallel(t_ox);
    let g_p = 1.0 / r_p;
    let g_ap = 1.0 / (r_p * (1.0 + p.tmr));
    let mz = mz.clamp(-1.0, 1.0);
    if mz == 1.0 {
        return Ok(r_p);
    }
    Ok(1.0 / (0.5 * (g_p + g_ap) + 0.5 * mz * (g_p - g_ap)))
}

/// Node voltage between the parallel reference junction (top) and the read
/// junction (bottom).
pub fn divider_voltage(p: &MtjParams, mz: f64) -> Result<f64> {
    let r_ref = mtj_resistance(p, p.t_ox_ref, 1.0)?;
    let r_read = mtj_resistance(p, p.t_ox_read, mz)?;
    Ok(p.v_read * r_read / (r_ref + r_read))
}

/// Static current through the junction stack (A).
pub fn read_current(p: &MtjParams, mz: f64) -> Result<f64> {
    let r_ref = mtj_resistance(p, p.t_ox_ref, 1.0)?;
    let r_read = mtj_resistance(p, p.t_ox_read, mz)?;
    Ok(p.v_read / (r_ref + r_read))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverterModel {
    pub v_dd: f64,
    pub gain: f64,
    /// Switching threshold (V).
    pub v_th: f64,
}

impl InverterModel {
    /// Inverter whose threshold sits at the divider voltage for `mz = 0`,
    /// so the logic boundary is the magnet's equator.
    pub fn matched_to(mtj: &MtjParams, v_dd: f64, gain: f64) -> Result<Self> {
        let v_th = divider_voltage(mtj, 0.0)?;
        Ok(Self { v_dd, gain, v_th })
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.v_dd > 0.0, "inverter.v_dd", self.v_dd, "must be > 0")?;
        ensure(self.gain >= 10.0, "inverter.gain", self.gain, "must be >= 10")?;
        ensure(self.v_th > 0.0 && self.v_th < self.v_dd, "inverter.v_th", self.v_th, "must lie in (0, v_dd)")
    }
}

/// Logistic inverter transfer `V_dd / (1 + exp(gain (v - V_th)/V_dd))`.
pub fn inverter_out(inv: &InverterModel, v_in: f64) -> Result<f64> {
    if !(0.0..=inv.v_dd).contains(&v_in) {
        return Err(Error::OutOfRange {
            name: "inverter input",
            value: v_in,
            rule: "must lie between the rails",
        });
    }
    if v_in == inv.v_th {
        return Ok(0.5 * inv.v_dd);
    }
    let v = inv.v_dd / (1.0 + (inv.gain * (v_in - inv.v_th) / inv.v_dd).exp());
    Ok(v.clamp(0.0, inv.v_dd))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadOut {
    pub analog: f64,
    /// +1 when the magnet reads up.
    pub logic: i8,
}

/// Reads one neuron through the divider and inverter, with the read junction
/// at `t_ox_read`.
pub fn read_cell(p: &MtjParams, inv: &InverterModel, mz: f64, t_ox_read: f64) -> Result<ReadOut> {
    let p = MtjParams { t_ox_read, ..*p };
    let analog = inverter_out(inv, divider_voltage(&p, mz)?)?;
    let logic = if analog > 0.5 * inv.v_dd { 1 } else { -1 };
    Ok(ReadOut { analog, logic })
}

/// Precomputed read path for the network hot loop.
///
/// `logic(mz)` equals `read_cell(..).logic` for the configured read
/// thickness; it avoids the transcendental calls by solving the threshold
/// once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadPath {
    pub mtj: MtjParams,
    pub inverter: InverterModel,
    mz_switch: f64,
}

impl ReadPath {
    pub fn new(mtj: MtjParams, inverter: InverterModel) -> Result<Self> {
        mtj.validate()?;
        inverter.validate()?;
        // analog > V_dd/2  <=>  v_div < V_th  <=>  G_read(mz) > G*.
        let r_ref = mtj_resistance(&mtj, mtj.t_ox_ref, 1.0)?;
        let r_p = mtj_resistance(&mtj, mtj.t_ox_read, 1.0)?;
        let g_p = 1.0 / r_p;
        let g_ap = 1.0 / (r_p * (1.0 + mtj.tmr));
        let frac = inverter.v_th / mtj.v_read;
        let g_star = (1.0 - frac) / (frac * r_ref);
        let mz_switch = (2.0 * g_star - g_p - g_ap) / (g_p - g_ap);
        Ok(Self { mtj, inverter, mz_switch })
    }

    /// `m_z` above which the cell reads +1.
    pub fn mz_switch(&self) -> f64 {
        self.mz_switch
    }

    #[inline]
    pub fn logic(&self, mz: f64) -> i8 {
        if mz > self.mz_switch {
            1
        } else {
            -1
        }
    }

    pub fn read(&self, mz: f64) -> Result<ReadOut> {
        read_cell(&self.mtj, &self.inverter, mz, self.mtj.t_ox_read)
    }

    /// Static power of one cell's sensing stack (W).
    pub fn stack_power(&self, mz: f64) -> f64 {
        read_current(&self.mtj, mz).map(|i| i * self.mtj.v_read).unwrap_or(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inv() -> InverterModel {
        InverterModel::matched_to(&MtjParams::default(), 0.7, 50.0).unwrap()
    }

    #[test]
    fn resistance_endpoints() {
        let p = MtjParams::default();
        assert_eq!(mtj_resistance(&p, 2e-9, 1.0).unwrap(), 100e3);
        let ap = mtj_resistance(&p, 2e-9, -1.0).unwrap();
        assert!((ap / 100e3 - 2.6).abs() < 1e-12);
        let mid = mtj_resistance(&p, 2e-9, 0.0).unwrap();
        let expected = 2.0 * 100e3 * 2.6 / 3.6;
        assert!((mid - expected).abs() < 1e-6);
        assert!((mid / 100e3 - 1.444).abs() < 1e-3);
        assert!(mtj_resistance(&p, 3.5e-9, 1.0).is_err());
    }

    #[test]
    fn divider_examples() {
        let p = MtjParams::default();
        assert!((divider_voltage(&p, 1.0).unwrap() - 0.35).abs() < 1e-12);
        assert!((divider_voltage(&p, -1.0).unwrap() - 0.7 * 2.6 / 3.6).abs() < 1e-12);
    }

    #[test]
    fn inverter_rails_and_midpoint() {
        let inv = inv();
        assert!(inverter_out(&inv, 0.0).unwrap() > 0.99 * 0.7);
        assert!(inverter_out(&inv, 0.7).unwrap() < 0.01 * 0.7);
        assert_eq!(inverter_out(&inv, inv.v_th).unwrap(), 0.35);
        assert!(inverter_out(&inv, 0.8).is_err());
        let gentle = InverterModel { v_dd: 0.7, gain: 10.0, v_th: 0.35 };
        assert!(inverter_out(&gentle, 0.0).unwrap() > 0.99 * 0.7);
    }

    #[test]
    fn logic_levels_across_matched_thickness() {
        for t in [1.9e-9, 2.0e-9, 2.1e-9] {
            let p = MtjParams::default().matched(t);
            assert_eq!(read_cell(&p, &inv(), 1.0, t).unwrap().logic, 1);
            assert_eq!(read_cell(&p, &inv(), -1.0, t).unwrap().logic, -1);
        }
    }

    #[test]
    fn read_current_is_non_disturbing() {
        let i = read_current(&MtjParams::default(), 1.0).unwrap();
        assert!(i <= 3.5e-6 + 1e-15, "{i}");
    }

    #[test]
    fn fast_logic_matches_full_read() {
        let rp = ReadPath::new(MtjParams::default(), inv()).unwrap();
        assert!(rp.mz_switch().abs() < 1e-9);
        for k in -100..=100 {
            let mz = k as f64 / 100.0 + 0.003;
            assert_eq!(rp.logic(mz), rp.read(mz).unwrap().logic, "mz {mz}");
        }
    }

    proptest! {
        #[test]
        fn transfer_monotone_and_bounded(
            r_p in 1e3f64..1e6, tmr in 0.1f64..3.0, lam in 0.05e-9f64..1e-9,
            t in 1.5e-9f64..2.5e-9, v in 0.2f64..1.2,
        ) {
            let p = MtjParams { r_p_at_2nm: r_p, tmr, lambda_ox: lam, v_read: v, ..MtjParams::default() }.matched(t);
            let inv = InverterModel::matched_to(&p, v, 50.0).unwrap();
            let mut prev_div = f64::INFINITY;
            let mut prev_out = -1.0;
            for k in -20..=20 {
                let mz = k as f64 / 20.0;
                let d = divider_voltage(&p, mz).unwrap();
                prop_assert!(d > 0.0 && d < v);
                prop_assert!(d <= prev_div);
                let o = inverter_out(&inv, d).unwrap();
                prop_assert!(o >= prev_out);
                prev_div = d;
                prev_out = o;
            }
        }
    }
}
