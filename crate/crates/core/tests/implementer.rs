use std::f64::consts::PI;

use bogo_core::decompose::curve_v_phi;
use bogo_core::fock::{field, wick_exp, wick_exp_adjoint, FockVector, ModeSet};
use bogo_core::implementer::{associate, solution_family, solution_member, ImplementerSet};
use bogo_core::linalg::{c, CMatrix, ONE};
use bogo_core::random::{self, TestRng};
use bogo_core::selfdual::BogoliubovOp;
use bogo_core::verify::family_operators;

/// All occupation states with at most `n` particles among `modes` modes.
fn window_basis(modes: usize, n: usize) -> Vec<FockVector> {
    (0u32..1 << modes)
        .filter(|m| m.count_ones() as usize <= n)
        .map(|m| {
            let s: Vec<usize> = (0..modes).filter(|i| m >> i & 1 == 1).collect();
            FockVector::basis(&s)
        })
        .collect()
}

/// `max |<e, A x> - <B e, x>|` over a window basis `e`.
fn adjoint_gap(
    a: impl Fn(&FockVector) -> FockVector,
    b: impl Fn(&FockVector) -> FockVector,
    xs: &[FockVector],
    basis: &[FockVector],
) -> f64 {
    let mut worst: f64 = 0.0;
    for x in xs {
        let ax = a(x);
        for e in basis {
            worst = worst.max((e.inner(&ax) - b(e).inner(x)).norm());
        }
    }
    worst
}

fn operators(rng: &mut TestRng) -> Vec<BogoliubovOp> {
    vec![
        curve_v_phi(PI / 8.0),
        curve_v_phi(3.0 * PI / 4.0),
        random::random_bogoliubov(rng, 2, 4),
        random::random_bogoliubov(rng, 4, 4),
    ]
}

#[test]
fn algebraic_adjoints_match_enumeration() {
    let mut rng = random::rng(11);
    let basis = window_basis(7, 4);
    for v in operators(&mut rng) {
        let set = ImplementerSet::new(&v).unwrap();
        let xs: Vec<FockVector> = (0..3).map(|_| random::fock_vector(&mut rng, 4, 2, 3)).collect();
        for b in set.multi_indices() {
            // Ψ_β raises the particle number by at most ind + 2 on these inputs
            let gap = adjoint_gap(
                |x| set.psi_beta_apply(&b, x),
                |e| set.psi_beta_adjoint_apply(&b, e),
                &xs,
                &basis,
            );
            assert!(gap < 1e-12, "β = {b:?}: {gap:e}");
        }
    }
}

#[test]
fn wick_exp_adjoint_matches_enumeration() {
    let mut rng = random::rng(12);
    let basis = window_basis(5, 5);
    for _ in 0..5 {
        let h = random::wick_hamiltonian(&mut rng, 5, 4);
        let xs: Vec<FockVector> = (0..3).map(|_| random::fock_vector(&mut rng, 5, 3, 3)).collect();
        let gap = adjoint_gap(|x| wick_exp(&h, x), |e| wick_exp_adjoint(&h, e), &xs, &basis);
        assert!(gap < 1e-12, "{gap:e}");
    }
}

#[test]
fn psi_operators_satisfy_car_and_kill_the_vacuum_range() {
    let mut rng = random::rng(13);
    for v in operators(&mut rng) {
        let set = ImplementerSet::new(&v).unwrap();
        let m = set.m();
        let psi = |j: usize, x: &FockVector| set.psi_beta_only(&[j], x);
        let psi_star = |j: usize, x: &FockVector| set.psi_beta_only_adjoint(&[j], x);
        for _ in 0..3 {
            let x = random::fock_vector(&mut rng, 6, 3, 4);
            for j in 0..m {
                // ψ_j* Ψ_0 = 0
                assert!(psi_star(j, &set.psi0_apply(&x)).norm() < 1e-12);
                for l in 0..m {
                    let ac = psi(j, &psi_star(l, &x)).add(&psi_star(l, &psi(j, &x)));
                    let expect = if j == l { x.clone() } else { FockVector::zero() };
                    assert!(ac.distance(&expect) < 1e-12, "{{ψ_{j}, ψ_{l}*}}");
                    let aa = psi(j, &psi(l, &x)).add(&psi(l, &psi(j, &x)));
                    assert!(aa.norm() < 1e-12, "{{ψ_{j}, ψ_{l}}}");
                }
            }
        }
    }
}

#[test]
fn every_solution_family_member_gives_implementers() {
    let mut rng = random::rng(14);
    for (m, v) in family_operators(&mut rng) {
        if m < 2 {
            continue;
        }
        let assoc = associate(&v).unwrap();
        let fam = solution_family(&v, &assoc).unwrap();
        let mut h = CMatrix::zeros(fam.basis[0].nrows(), fam.basis[0].ncols());
        for b in &fam.basis {
            h += b * random::complex(&mut rng);
        }
        let member = solution_member(&v, &assoc, &h).unwrap();
        assert!(member.antisymmetry_residual() < 1e-10);
        let set = ImplementerSet::with_hamiltonian(&v, &assoc, member).unwrap();
        assert_eq!(set.len(), 1 << m);
        let betas = set.multi_indices();
        let x = random::fock_vector(&mut rng, 8, 3, 4);
        let mut total = FockVector::zero();
        for b in &betas {
            let y = set.psi_beta_apply(b, &x);
            assert!((y.norm() - x.norm()).abs() < 1e-10, "isometry");
            total.add_assign_scaled(ONE, &set.psi_beta_apply(b, &set.psi_beta_adjoint_apply(b, &x)));
            let k = random::k_vector(&mut rng, 8);
            let lhs = set.psi_beta_apply(b, &field(&k, &x));
            let rhs = field(&v.op().apply(&k), &y);
            assert!(lhs.distance(&rhs) < 1e-10, "intertwining");
        }
        assert!(total.distance(&x) < 1e-9, "completeness");
    }
}

#[test]
fn vacuum_amplitude_is_the_normalization() {
    // Ψ_0 Ω = c :e^{b(H)/2}: Ω has vacuum component c
    let mut rng = random::rng(15);
    for v in operators(&mut rng) {
        let set = ImplementerSet::new(&v).unwrap();
        if set.l_v() > 0 {
            continue;
        }
        let w = set.psi0_apply(&FockVector::vacuum());
        let amp = w.amp(&ModeSet::empty());
        assert!((amp - c(set.normalization(), 0.0)).norm() < 1e-12);
        assert!((w.norm() - 1.0).abs() < 1e-12);
    }
}
