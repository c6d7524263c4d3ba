mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;
use volconj::geometry::{dh_closed, h_closed, in_torus_region, v_of_u, GeometryPoint, PointFlag};
use volconj::jones::{colored_jones, colored_jones_direct};
use volconj::knots::{alexander, UnivariatePolynomial};
use volconj::numerics::{central_derivative, dilog, log_branch_neg, log_sum_exp};
use volconj::sweep::{run_sweep, Grid, NSchedule, SweepJob, SweepMode, SweepResult};
use volconj::{KnotSpec, LogComplex};

fn knot() -> impl Strategy<Value = KnotSpec> {
    prop_oneof![
        Just(KnotSpec::Unknot),
        Just(KnotSpec::FigureEight),
        Just(KnotSpec::torus(2, 3).unwrap()),
        Just(KnotSpec::torus(2, 5).unwrap()),
        Just(KnotSpec::torus(3, 4).unwrap()),
    ]
}

fn complex(lo: f64, hi: f64) -> impl Strategy<Value = Complex64> {
    (lo..hi, lo..hi).prop_map(|(re, im)| Complex64::new(re, im))
}

fn polar(r_lo: f64, r_hi: f64) -> impl Strategy<Value = Complex64> {
    (r_lo..r_hi, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn coprime_pair() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=12, 2u32..=12).prop_filter("coprime, a < b", |(a, b)| a < b && a.gcd(b) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn branch_log_range_and_round_trip(z in polar(1e-3, 1e3)) {
        let w = log_branch_neg(z).unwrap();
        prop_assert!(w.im >= -PI && w.im < PI);
        prop_assert!((w.exp() - z).norm() <= 1e-13 * z.norm());
    }

    #[test]
    fn dilog_inversion(z in polar(0.05, 20.0)) {
        prop_assume!(!(z.im.abs() < 1e-9 && z.re > 0.0));
        let lhs = dilog(z).unwrap() + dilog(z.inv()).unwrap();
        let l = (-z).ln();
        let rhs = -PI * PI / 6.0 - 0.5 * l * l;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()), "{lhs} vs {rhs}");
    }

    #[test]
    fn log_sum_exp_matches_direct(zs in prop::collection::vec(complex(-50.0, 50.0), 1..20)) {
        let logs: Vec<LogComplex> = zs.iter().map(|&z| LogComplex::from_complex(z)).collect();
        let direct: Complex64 = zs.iter().sum();
        let got = log_sum_exp(&logs).unwrap().to_complex();
        let scale: f64 = zs.iter().map(|z| z.norm()).sum();
        prop_assert!((got - direct).norm() <= 1e-12 * scale.max(direct.norm()));
    }

    #[test]
    fn torus_alexander_division_is_exact((a, b) in coprime_pair()) {
        let k = KnotSpec::torus(a, b).unwrap();
        let delta = alexander(k);
        let t_pow = |n: u32| UnivariatePolynomial::from_terms([(n as i32, 1), (0, -1)]);
        let num = t_pow(a * b).mul(&t_pow(1));
        let den = t_pow(a).mul(&t_pow(b));
        let (quot, rem) = num.div_rem(&den).unwrap();
        prop_assert!(rem.is_zero());
        prop_assert_eq!(&quot, &delta);
        prop_assert!(delta.is_symmetric_up_to_unit());
        prop_assert_eq!(delta.eval_int(1).unwrap().abs(), 1);
        prop_assert_eq!(delta.max_exponent().unwrap() as u32, (a - 1) * (b - 1));
    }

    #[test]
    fn registry_alexander_is_symmetric(k in knot()) {
        let delta = alexander(k);
        prop_assert!(delta.is_symmetric_up_to_unit());
        prop_assert_eq!(delta.eval_int(1).unwrap().abs(), 1);
    }

    #[test]
    fn conjugation_symmetry(k in knot(), n in 1u32..60, q in polar(0.6, 1.6)) {
        let a = colored_jones(k, n, q.conj()).unwrap();
        let b = colored_jones(k, n, q).unwrap();
        // compared in log form: values overflow f64 away from |q| = 1
        prop_assert!((a.log_mag - b.log_mag).abs() <= 1e-10 * (1.0 + b.log_mag.abs()));
        let dphase = Complex64::from_polar(1.0, a.phase + b.phase);
        prop_assert!((dphase - 1.0).norm() <= 1e-9, "{a:?} vs {b:?}");
    }

    #[test]
    fn log_space_matches_direct(k in knot(), n in 1u32..=100, q in polar(0.5, 2.0)) {
        let direct = colored_jones_direct(k, n, q).unwrap();
        prop_assume!(direct.norm().is_finite() && direct.norm() < 1e300 && direct.norm() > 1e-300);
        let log_space = colored_jones(k, n, q).unwrap().to_complex();
        prop_assert!((log_space - direct).norm() <= 1e-10 * log_space.norm(), "{log_space} vs {direct}");
    }

    #[test]
    fn torus_region_gate_is_flagged(u in complex(-8.0, 8.0)) {
        let k = KnotSpec::torus(2, 3).unwrap();
        let inside = (u + Complex64::new(0.0, 2.0 * PI)).norm() > PI / 3.0 && u.re < 0.0 && u.im > -2.0 * PI;
        prop_assert_eq!(in_torus_region(k, u), inside);
        if let Ok(p) = GeometryPoint::closed_form(k, u) {
            prop_assert_eq!(p.flags.contains(&PointFlag::OutOfRegion), !inside);
        }
    }

    #[test]
    fn torus_longitude_is_derivative(u in complex(-2.0, -0.1)) {
        for k in [KnotSpec::torus(2, 3).unwrap(), KnotSpec::torus(3, 4).unwrap()] {
            let d = central_derivative(|z| h_closed(k, z), u, 1e-4).unwrap();
            let v = v_of_u(k, u).unwrap();
            prop_assert!((2.0 * d - Complex64::new(0.0, 2.0 * PI) - v).norm() <= 1e-7);
        }
    }

    #[test]
    fn fig8_longitude_is_derivative(u in complex(-0.5, 0.5)) {
        let k = KnotSpec::FigureEight;
        let d = central_derivative(|z| h_closed(k, z), u, 1e-4).unwrap();
        prop_assert!((d - dh_closed(k, u).unwrap()).norm() <= 1e-4);
        let v = v_of_u(k, u).unwrap();
        prop_assert!((2.0 * d - Complex64::new(0.0, 2.0 * PI) - v).norm() <= 1e-4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sweep_json_round_trips(k in knot(), re in -3.0..-0.2f64, im in -1.0..3.0f64,
                              sr in 1u32..4, si in 1u32..4) {
        let job = SweepJob {
            knot: k,
            grid: Grid { re_min: re, re_max: re + 0.15, im_min: im, im_max: im + 0.3, steps_re: sr, steps_im: si },
            n_schedule: NSchedule { n_min: 2, n_max: 10, n_step: 2 },
            mode: SweepMode::ClosedForm,
            tolerances: Default::default(),
        };
        let result = run_sweep(&job, 2).unwrap();
        prop_assert_eq!(result.rows.len() + result.failures.len(), (sr * si) as usize);
        let back = SweepResult::from_json(&result.to_json().unwrap()).unwrap();
        prop_assert_eq!(&back, &result);
        prop_assert_eq!(back.to_csv(), result.to_csv());
    }
}
