use std::f64::consts::PI;

use bogo_core::decompose::{chi, curve_v_phi, delta_metric, factor_u, orbit_witness, Delta};
use bogo_core::random;
use bogo_core::selfdual::BogoliubovOp;

#[test]
fn orbit_witness_maps_between_equal_index_operators() {
    let mut rng = random::rng(21);
    let pairs: Vec<(BogoliubovOp, BogoliubovOp)> = vec![
        (curve_v_phi(PI / 8.0), curve_v_phi(PI / 3.0)),
        (curve_v_phi(3.0 * PI / 4.0), random::random_bogoliubov(&mut rng, 2, 6)),
        (
            random::random_bogoliubov(&mut rng, 4, 6),
            random::random_bogoliubov(&mut rng, 4, 6),
        ),
    ];
    for (v, vp) in pairs {
        let x = orbit_witness(&v, &vp).unwrap();
        assert!(x.is_unitary());
        let back = x.compose(&vp).unwrap();
        assert!(back.op().max_abs_diff(v.op()) < 1e-10);
        let d = factor_u(&v).unwrap();
        assert_eq!(d.w.index(), v.index());
    }
}

#[test]
fn delta_metric_cases() {
    let a = curve_v_phi(PI / 8.0);
    let b = curve_v_phi(PI / 8.0 + 1e-3);
    match delta_metric(&a, &a).unwrap() {
        Delta::Exact(d) => assert!(d < 1e-14),
        other => panic!("{other:?}"),
    }
    match delta_metric(&a, &b).unwrap() {
        Delta::Exact(d) => assert!(d > 0.0 && d < 1e-2),
        other => panic!("{other:?}"),
    }
    let id = BogoliubovOp::identity();
    assert!(matches!(delta_metric(&a, &id).unwrap(), Delta::AtLeast(_)));
}

#[test]
fn character_along_the_curve() {
    let mut seen = Vec::new();
    for i in 0..16 {
        let phi = i as f64 * PI / 8.0;
        seen.push(chi(&curve_v_phi(phi)).unwrap());
    }
    assert!(seen.iter().all(|&x| x == 1 || x == -1));
    assert_eq!(chi(&curve_v_phi(3.0 * PI / 4.0)).unwrap(), -1);
}
