use proptest::prelude::*;

use bogo_core::decompose::factor_u;
use bogo_core::quasifree::s_v;
use bogo_core::random;
use bogo_core::selfdual::spec_file::{LoadedOperator, OperatorSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn index_is_additive(seed in 0u64..10_000, i in 0usize..3, j in 0usize..3) {
        let mut rng = random::rng(seed);
        let a = random::random_bogoliubov(&mut rng, 2 * i, 4);
        let b = random::random_bogoliubov(&mut rng, 2 * j, 4);
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.index(), a.index() + b.index());
        prop_assert_eq!(ab.statistical_dimension(), a.statistical_dimension() * b.statistical_dimension());
    }

    #[test]
    fn spectrum_of_s_v_is_symmetric(seed in 0u64..10_000, i in 0usize..3) {
        let mut rng = random::rng(seed);
        let v = random::random_bogoliubov(&mut rng, 2 * i, 4);
        let ev = s_v(&v).spectral_pairs().unwrap().eigenvalues();
        let n = ev.len();
        for k in 0..n {
            prop_assert!((ev[k] + ev[n - 1 - k] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn spec_round_trip(seed in 0u64..10_000, i in 0usize..3) {
        let mut rng = random::rng(seed);
        let v = random::random_bogoliubov(&mut rng, 2 * i, 4);
        let text = OperatorSpec::from_op(v.op(), true).unwrap().to_json();
        match OperatorSpec::parse(&text).unwrap().load().unwrap() {
            LoadedOperator::Bogoliubov(w) => prop_assert!(w.op().max_abs_diff(v.op()) < 1e-14),
            LoadedOperator::General(_) => prop_assert!(false),
        }
    }

    #[test]
    fn factorization_reconstructs(seed in 0u64..10_000, i in 0usize..3) {
        let mut rng = random::rng(seed);
        let v = random::random_bogoliubov(&mut rng, 2 * i, 4);
        let d = factor_u(&v).unwrap();
        prop_assert!(d.u.compose(&d.w).unwrap().op().max_abs_diff(v.op()) < 1e-12);
        prop_assert!(d.u.is_unitary());
    }
}
