//! Closed-form values and identities stated in the text.

use std::f64::consts::PI;

use bogo_core::clifford::{generator_norm_sqr, Clifford, Split};
use bogo_core::decompose::{curve_v_phi, factor_u, polar_w};
use bogo_core::fock::{create, transformed_annihilate, FockVector};
use bogo_core::implementer::ImplementerSet;
use bogo_core::linalg::{c, max_abs, resized_vec, CMatrix, ONE};
use bogo_core::quasifree::{n_v, purity_test, s_v};
use bogo_core::random;
use bogo_core::selfdual::{conj_vec, embed_k1, gamma_vec, FiniteTypeOp};

#[test]
fn kernel_of_v11_at_three_quarter_pi_is_f0() {
    let v = curve_v_phi(3.0 * PI / 4.0);
    let ker = v.components().v11.kernel_basis().unwrap();
    assert_eq!(ker.len(), 1);
    assert!((ker[0][0].norm() - 1.0).abs() < 1e-12);
}

#[test]
fn generator_norm_formula() {
    let alg = Clifford::new(3).unwrap();
    let mut rng = random::rng(31);
    for _ in 0..20 {
        let k = random::k_vector(&mut rng, 3);
        let m = alg.generator(&k).unwrap();
        let smax = m.singular_values().max();
        assert!((smax * smax - generator_norm_sqr(&k)).abs() < 1e-12);
    }
}

#[test]
fn central_state_is_orthonormal_on_monomials() {
    let s = Split::standard(3, 3).unwrap();
    let bs = s.quasi_basis();
    // B_j = sqrt 2 B(b_j) squares to one for real unit b_j
    let alg = s.algebra();
    for (i, a) in bs.iter().enumerate() {
        if i > 0 {
            assert!(alg.central_state(a).norm() < 1e-14);
        }
        for (j, b) in bs.iter().enumerate() {
            let g = alg.central_state(&(a.adjoint() * b));
            let expect = if i == j { ONE } else { c(0.0, 0.0) };
            assert!((g - expect).norm() < 1e-14, "β = {i}, δ = {j}");
        }
    }
}

#[test]
fn minimality_sum_vanishes_for_even_monomial() {
    let s = Split::standard(2, 2).unwrap();
    let even = s.even_k2_monomials();
    let delta = &even[1];
    let mut sum = CMatrix::zeros(delta.nrows(), delta.ncols());
    for b in s.quasi_basis() {
        sum += &b * delta * b.adjoint();
    }
    assert!(max_abs(&sum) < 1e-13);
}

#[test]
fn rank_one_bilinear() {
    let alg = Clifford::new(2).unwrap();
    let mut rng = random::rng(32);
    let k = random::k_vector(&mut rng, 2);
    let kp = random::k_vector(&mut rng, 2);
    let h = &k * kp.adjoint();
    let lhs = alg.bilinear(&h).unwrap();
    let rhs = alg.generator(&k).unwrap() * alg.generator(&kp).unwrap().adjoint();
    assert!(max_abs(&(lhs - rhs)) < 1e-13);
}

#[test]
fn fock_state_vanishes_on_conjugate_space() {
    let alg = Clifford::new(3).unwrap();
    let mut rng = random::rng(33);
    for _ in 0..5 {
        let mut k = random::k_vector(&mut rng, 3);
        for j in 0..3 {
            k[2 * j] = c(0.0, 0.0);
        }
        let b = alg.generator(&k).unwrap();
        assert!(alg.fock_state(&(b.adjoint() * &b)).norm() < 1e-14);
    }
}

#[test]
fn transformed_annihilator_on_kernel_creates() {
    let v = curve_v_phi(3.0 * PI / 4.0);
    let g = v.components().v11.kernel_basis().unwrap().remove(0);
    let mut rng = random::rng(34);
    let x = random::fock_vector(&mut rng, 4, 2, 3);
    let lhs = transformed_annihilate(&v, &g, &x);
    let rhs = create(&v.components().v12.apply(&conj_vec(&g)), &x);
    assert!(lhs.distance(&rhs) < 1e-13);
}

#[test]
fn polar_part_gives_a_pure_gauge_invariant_state() {
    for phi in [PI / 8.0, 3.0 * PI / 4.0] {
        let v = curve_v_phi(phi);
        let w = polar_w(&v).unwrap();
        assert!(purity_test(&w));
        let s = s_v(&w);
        let p1 = FiniteTypeOp::p1();
        let comm = p1.compose(s.op()).unwrap().sub(&s.op().compose(&p1).unwrap()).unwrap();
        assert!(comm.finite_norm().unwrap() < 1e-12);
        // S_W projects onto (ker V11)^⊥ ⊕ ker V22
        let sq = s.op().compose(s.op()).unwrap();
        assert!(sq.max_abs_diff(s.op()) < 1e-12);
        for f in v.components().v11.kernel_basis().unwrap() {
            let k = embed_k1(&f);
            assert!(s.op().apply(&k).norm() < 1e-12);
            let gk = gamma_vec(&k);
            let sgk = s.op().apply(&gk);
            let n = sgk.len().max(gk.len());
            assert!((resized_vec(&sgk, n) - resized_vec(&gk, n)).norm() < 1e-12);
        }
    }
}

#[test]
fn implementer_norms_on_the_curve() {
    for phi in [PI / 8.0, PI / 3.0, 3.0 * PI / 4.0] {
        let v = curve_v_phi(phi);
        let set = ImplementerSet::new(&v).unwrap();
        assert_eq!(set.m(), 1);
        assert_eq!(set.len(), 2);
        assert_eq!(v.statistical_dimension(), 2);
        assert!(n_v(&v).unwrap() <= 1);
        let om = FockVector::vacuum();
        assert!((set.psi0_apply(&om).norm() - 1.0).abs() < 1e-12);
        if phi == PI / 8.0 {
            assert!((set.psi_hat_apply(&om).norm() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn pv_commutes_with_range_projection() {
    let mut rng = random::rng(35);
    for i in 0..20 {
        let v = random::random_bogoliubov(&mut rng, 2 * (i % 3), 6);
        let d = factor_u(&v).unwrap();
        let r = bogo_core::decompose::commutator_pv_range(&v, &d.p_v).unwrap();
        assert!(r < 1e-12, "{r:e}");
    }
}
