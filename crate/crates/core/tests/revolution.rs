use std::f64::consts::PI;

use extcat::catenary::{integrate, CatenaryType, InitialCondition};
use extcat::charts::{kappa_extrinsic, psi, ChartId};
use extcat::lorentz::{inner1, on_hyperboloid, LorentzVec3, LorentzVec4};
use extcat::revolution::*;
use extcat::testcurves::{random_curves, TrigCurve};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn trig_curve(seed: u64) -> TrigCurve {
    TrigCurve::random(&mut ChaCha8Rng::seed_from_u64(seed), ChartId::SemiGeodesic, 1.0)
}

fn h3_point(a: [f64; 3]) -> LorentzVec4 {
    let s = a.iter().map(|x| x * x).sum::<f64>();
    LorentzVec4::new([(1.0 + s).sqrt(), a[0], a[1], a[2]])
}

#[test]
fn rotations_fix_their_planes() {
    for ctype in CatenaryType::ALL {
        for g in ctype.plane().generators() {
            let moved = rotate(ctype, &g, 0.7);
            assert!((moved - g).max_abs() < 1e-15, "{ctype}");
        }
    }
}

#[test]
fn catenaries_generate_minimal_surfaces() {
    for ctype in CatenaryType::ALL {
        let c = integrate(ctype, InitialCondition::new(1.0, 0.0, PI / 6.0), 1.0, 0.0, 4.0, 1e-3).unwrap();
        for i in (0..c.len()).step_by(25) {
            let jet = GeneratingJet::from_chart_jet(&c.jet(i));
            let k = kappa_extrinsic(&jet.p, &jet.dp, &jet.ddp, 1.0).unwrap();
            assert!((k - minimal_kappa_target(ctype, &jet).unwrap()).abs() < 1e-10);
            assert!(mean_curvature_closed(ctype, &jet).unwrap().abs() < 1e-10);
        }
        let t = 0.5 * c.samples.last().unwrap().s;
        let h = mean_curvature_numeric(ctype, &c, t, 0.4, DEFAULT_H_FD).unwrap();
        assert!(h.abs() < 1e-6, "{ctype}: {h}");
    }
}

#[test]
fn mesh_layout() {
    let c = integrate(CatenaryType::Elliptic, InitialCondition::new(1.0, 0.0, PI / 6.0), 1.0, 0.0, 2.0, 1e-2).unwrap();
    let m = build_mesh(CatenaryType::Elliptic, &c, 0.0, 2.0 * PI, 9).unwrap();
    assert_eq!((m.rows, m.cols), (c.len(), 9));
    assert_eq!(m.vertices.len(), m.rows * m.cols);
    assert_eq!(m.thetas[0], 0.0);
    assert!((m.thetas[8] - 2.0 * PI).abs() < 1e-15);
    assert!(m.vertices.iter().all(|p| on_hyperboloid(p, 1.0, 1e-10)));
    assert!(m.max_abs_h() < 1e-8);
    assert!(m.mean_abs_h() <= m.max_abs_h());
    assert!(build_mesh(CatenaryType::Elliptic, &c, 1.0, 1.0, 9).is_err());
    assert!(build_mesh(CatenaryType::Elliptic, &c, 0.0, 1.0, 1).is_err());
}

#[test]
fn hermite_interpolant_follows_the_flow() {
    let ic = InitialCondition::new(1.0, 0.0, PI / 3.0);
    let coarse = integrate(CatenaryType::Hyperbolic, ic, 1.0, 0.0, 2.0, 1e-2).unwrap();
    let fine = integrate(CatenaryType::Hyperbolic, ic, 1.0, 0.0, 2.0, 1e-3).unwrap();
    for k in (5..fine.len()).step_by(10) {
        let p = coarse.point(fine.samples[k].s).unwrap();
        let gap = (p - fine.embedded[k]).max_abs();
        assert!(gap < 1e-8, "{gap:e}");
    }
    assert!(coarse.point(2.5).is_err());
}

#[test]
fn closed_and_numeric_mean_curvature_agree_on_trig_curves() {
    for ctype in CatenaryType::ALL {
        for tc in random_curves(7, 10, ChartId::SemiGeodesic, 1.0) {
            for t in [0.6, 1.4, 2.2] {
                let a = mean_curvature_closed(ctype, &tc.generating_jet(t)).unwrap();
                let b = mean_curvature_numeric(ctype, &tc, t, 1.1, DEFAULT_H_FD).unwrap();
                assert!((a - b).abs() < 1e-5, "{ctype}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn axis_contact_is_a_domain_error() {
    let jet = GeneratingJet::new(psi(0.0, 0.0, 1.0), LorentzVec3::new([0.0, 0.0, 1.0]), LorentzVec3::zero(), 1.0);
    assert!(mean_curvature_closed(CatenaryType::Elliptic, &jet).is_err());
    assert!(mean_curvature_closed(CatenaryType::Hyperbolic, &jet).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rotations_are_isometries_and_a_group(a in -1.5..1.5f64, b in -1.5..1.5f64, p in prop::array::uniform3(-2.0..2.0f64), q in prop::array::uniform3(-2.0..2.0f64)) {
        let (p, q) = (h3_point(p), h3_point(q));
        for ctype in CatenaryType::ALL {
            let (rp, rq) = (rotate(ctype, &p, a), rotate(ctype, &q, a));
            let scale = 1.0 + p.max_abs() * q.max_abs() * (2.0 * a.abs()).exp() * (1.0 + a * a);
            prop_assert!((inner1(&rp, &rq) - inner1(&p, &q)).abs() < 1e-12 * scale);
            let two = rotate(ctype, &rotate(ctype, &p, b), a);
            let one = rotate(ctype, &p, a + b);
            prop_assert!((two - one).max_abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn first_fundamental_form_of_rotation(seed in 0u64..1000, t in 0.3..2.7f64, theta in -1.0..1.0f64) {
        let tc = trig_curve(seed);
        let jet = tc.generating_jet(t);
        let [x, y, z] = jet.p.0;
        for (ctype, g22) in [
            (CatenaryType::Elliptic, z * z),
            (CatenaryType::Hyperbolic, x * x),
            (CatenaryType::Parabolic, (x - y) * (x - y)),
        ] {
            let s = surface_sample(ctype, &tc, t, theta, DEFAULT_H_FD).unwrap();
            prop_assert!(s.g12.abs() < 1e-6 * (s.g11 * s.g22).sqrt());
            prop_assert!((s.g22 - g22).abs() < 1e-6 * (1.0 + g22));
            prop_assert!((s.g11 - jet.dp.norm_sq()).abs() < 1e-6 * (1.0 + s.g11));
        }
    }

    #[test]
    fn mean_curvature_does_not_depend_on_angle(seed in 0u64..1000, t in 0.3..2.7f64, a in -1.0..1.0f64, b in -1.0..1.0f64) {
        let tc = trig_curve(seed);
        for ctype in CatenaryType::ALL {
            let ha = mean_curvature_numeric(ctype, &tc, t, a, DEFAULT_H_FD).unwrap();
            let hb = mean_curvature_numeric(ctype, &tc, t, b, DEFAULT_H_FD).unwrap();
            prop_assert!((ha - hb).abs() < 1e-5 * (1.0 + ha.abs()), "{ctype}: {ha} vs {hb}");
        }
    }

    #[test]
    fn generating_curve_stays_in_the_slice(seed in 0u64..1000, t in 0.0..3.0f64) {
        let tc = trig_curve(seed);
        let p = tc.point(t).unwrap();
        prop_assert!(on_hyperboloid(&p, 1.0, 1e-9 * p.max_abs().powi(2)));
    }
}
