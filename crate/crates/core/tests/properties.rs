use proptest::prelude::*;

use spincnn::analysis::{spin_energy, EnergyModel, SpinEnergyContext, SpinHardware};
use spincnn::cmos::{self, ChuaParams, CmosGrid, IntegrateOptions, OutputFn};
use spincnn::config::Config;
use spincnn::magnet::{MagnetParams, Magnetization, SpinCurrent, Stepper};
use spincnn::network::{self, Boundary, CnnGrid, RunContext};
use spincnn::synapse::{decode_config, encode_weight, quantize_weight, representable_weights, SynapseConfig};
use spincnn::templates::{Template, TemplateSet};
use spincnn::transport::{net_spin_current, solve_drift_diffusion, ChannelParams, SynapseContribution};
use spincnn::vec3::Vec3;
use spincnn::{Pattern, Schedule};

fn unit_vec() -> impl Strategy<Value = Vec3> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("non-zero", |(x, y, z)| x * x + y * y + z * z > 1e-3)
        .prop_map(|(x, y, z)| Vec3::new(x, y, z).normalized())
}

fn bipolar_grid(rows: usize, cols: usize) -> impl Strategy<Value = Pattern> {
    prop::collection::vec(prop::bool::ANY, rows * cols)
        .prop_map(move |v| Pattern::new(rows, cols, v.into_iter().map(|b| if b { 1 } else { -1 }).collect()).unwrap())
}

fn level_template() -> impl Strategy<Value = Template> {
    prop::collection::vec(prop::sample::select(representable_weights()), 19).prop_map(|l| {
        let mut levels = [0i32; 19];
        levels.copy_from_slice(&l);
        Template::from_levels(&levels).unwrap()
    })
}

fn contribution() -> impl Strategy<Value = SynapseContribution> {
    (-2.0f64..2.0, prop::sample::select(vec![-1.0, 0.0, 1.0]))
        .prop_map(|(weight, input_level)| SynapseContribution { weight, input_level, charge_current: 0.0 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn llg_step_keeps_unit_norm(
        m in unit_vec(),
        is in -200e-6f64..200e-6,
        field in unit_vec(),
        strength in 0.0f64..5e5,
    ) {
        let s = Stepper::new(&MagnetParams::default(), 300.0, 1e-12).unwrap();
        let mut m = Magnetization::new(m);
        for _ in 0..100 {
            m = s.step_with_field(m, SpinCurrent(is), field * strength);
            prop_assert!((m.vec().norm() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn llg_mirror_covariance(m in unit_vec(), is in -100e-6f64..100e-6, h in unit_vec()) {
        // Rotation by π about x maps the step under (I, h) onto the step under (-I, R h).
        let s = Stepper::new(&MagnetParams::default(), 0.0, 1e-12).unwrap();
        let m = Magnetization::new(m);
        let h = h * 1e4;
        let a = s.step_with_field(m, SpinCurrent(is), h);
        let b = s.step_with_field(m.flipped(), SpinCurrent(-is), Vec3::new(h.x, -h.y, -h.z));
        prop_assert!((a.flipped().vec() - b.vec()).norm() < 1e-12);
    }

    #[test]
    fn spin_current_superposes(
        a in prop::collection::vec(contribution(), 0..12),
        b in prop::collection::vec(contribution(), 0..12),
        i0 in 1e-6f64..1e-4,
    ) {
        let ch = ChannelParams::default();
        let joint: Vec<_> = a.iter().chain(&b).copied().collect();
        let sum = net_spin_current(&a, i0, &ch).0 + net_spin_current(&b, i0, &ch).0;
        let all = net_spin_current(&joint, i0, &ch).0;
        prop_assert!((all - sum).abs() <= 1e-12 * (1e-6 + all.abs()));
    }

    #[test]
    fn drift_diffusion_is_linear(i in -1e-4f64..1e-4, k in -10.0f64..10.0) {
        let ch = ChannelParams::default();
        let one = solve_drift_diffusion(64, &ch, i).unwrap();
        let scaled = solve_drift_diffusion(64, &ch, k * i).unwrap();
        for (x, y) in one.mu.iter().zip(&scaled.mu) {
            prop_assert!((k * x - y).abs() <= 1e-12 * (k * x).abs().max(1e-30));
        }
    }

    #[test]
    fn quantizer_is_idempotent_and_close(w in -8.0f64..=8.0) {
        let q = quantize_weight(w, 8);
        prop_assert_eq!(quantize_weight(q as f64, 8), q);
        prop_assert!((q as f64 - w).abs() <= 1.0);
        prop_assert_eq!(quantize_weight(-w, 8), -q);
    }

    #[test]
    fn synapse_codec_round_trip(level in prop::sample::select(representable_weights())) {
        let c = encode_weight(level).unwrap();
        prop_assert_eq!(decode_config(c), level);
        prop_assert_eq!(decode_config(c.negated()), -level);
    }

    #[test]
    fn template_file_round_trip(cells in prop::collection::vec(level_template(), 6)) {
        let set = TemplateSet::space_varying(2, 3, cells).unwrap();
        let text = set.to_text().unwrap();
        prop_assert_eq!(TemplateSet::parse(&text).unwrap(), set);
    }

    #[test]
    fn cmos_state_stays_bounded(
        state in bipolar_grid(4, 5),
        inputs in bipolar_grid(4, 5),
        t in level_template(),
        sigmoid in prop::bool::ANY,
    ) {
        let p = ChuaParams { output: if sigmoid { OutputFn::Sigmoid } else { OutputFn::Pwl }, ..ChuaParams::default() };
        let mut g = CmosGrid::new(&state, &inputs, TemplateSet::SpaceInvariant(t), Boundary::default()).unwrap();
        let bound = g.state_bound(&p).max(1.0);
        let opts = IntegrateOptions { dt: 0.05, t_max: 10.0, hold_time: 0.5, sample_interval: Some(0.5), schedule: Schedule::Sequential };
        let tr = cmos::integrate(&mut g, &p, &opts).unwrap();
        for x in tr.x.iter().flatten() {
            prop_assert!(x.abs() <= bound + 1e-9, "{} > {}", x, bound);
        }
    }

    #[test]
    fn energy_components_add_up(
        duration in 0.0f64..50e-9,
        mz in prop::collection::vec(-1.0f64..=1.0, 30),
        activity in 0u64..200,
    ) {
        let cfg = Config::default();
        let hw = SpinHardware::for_templates(&network::noise_filter_templates(), 5, 6);
        let read = cfg.read_path();
        let model = EnergyModel::default();
        let ctx = SpinEnergyContext { hw: &hw, drive: &cfg.drive, read: &read, model: &model, w_min: cfg.area.w_min };
        let e = spin_energy(duration, &mz, activity, &ctx).unwrap();
        prop_assert!(e.joule >= 0.0 && e.leakage >= 0.0 && e.dynamic >= 0.0);
        prop_assert_eq!(e.total, e.joule + e.leakage + e.dynamic);
        let twice = spin_energy(2.0 * duration, &mz, activity, &ctx).unwrap();
        prop_assert!((twice.joule - 2.0 * e.joule).abs() <= 1e-12 * twice.joule.max(1e-30));
        prop_assert!((twice.leakage - 2.0 * e.leakage).abs() <= 1e-12 * twice.leakage.max(1e-30));
        prop_assert_eq!(twice.dynamic, e.dynamic);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn grid_mirror_symmetry(state in bipolar_grid(4, 4), bias in -1.0f64..1.0) {
        // Flipping every magnet and negating inputs, bias and the boundary
        // mirrors the whole zero-temperature run.
        let t = Template { i: bias, ..match network::noise_filter_templates() {
            TemplateSet::SpaceInvariant(t) => t,
            _ => unreachable!(),
        }};
        let g = CnnGrid::new(&state, &state, TemplateSet::SpaceInvariant(t), Boundary::Fixed(-1.0), 1f64.to_radians()).unwrap();
        let cfg = Config::default();
        let ctx = RunContext { temperature: 0.0, ..cfg.run_context(10.0 * 6.6e-6, 1e-9, true, Schedule::Sequential) };
        let a = network::run(&mut g.clone(), &ctx).unwrap();
        let b = network::run(&mut g.mirrored(), &ctx).unwrap();
        prop_assert_eq!(a.final_output.negated(), b.final_output);
        prop_assert_eq!(a.convergence_time, b.convergence_time);
        for (x, y) in a.mz.iter().flatten().zip(b.mz.iter().flatten()) {
            prop_assert_eq!(*x, -*y);
        }
    }

    #[test]
    fn codec_covers_every_config(signs in prop::array::uniform4(prop::sample::select(vec![-1i8, 1]))) {
        let c = SynapseConfig::new(signs).unwrap();
        let level = decode_config(c);
        prop_assert!(representable_weights().contains(&level));
        prop_assert_eq!(decode_config(encode_weight(level).unwrap()), level);
    }
}
