//! Seeded generators for test operators, vectors and Hamiltonians.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fock::{FockVector, ModeSet, WickHamiltonian};
use crate::linalg::{c, CMatrix, CVector, C64};
use crate::selfdual::{BogoliubovOp, FiniteTypeOp, Space};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit(rng: &mut TestRng) -> f64 {
    rng.gen_range(-1.0..1.0)
}

pub fn complex(rng: &mut TestRng) -> C64 {
    c(unit(rng), unit(rng))
}

pub fn complex_matrix(rng: &mut TestRng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn complex_vector(rng: &mut TestRng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| complex(rng))
}

/// Orthonormalized columns of a random matrix (QR with positive diagonal).
fn q_factor(m: CMatrix) -> CMatrix {
    let n = m.ncols();
    let qr = m.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let ph = d / d.norm();
            let col = q.column(j) * ph;
            q.set_column(j, &col);
        }
    }
    q
}

pub fn random_orthogonal(rng: &mut TestRng, n: usize) -> CMatrix {
    q_factor(CMatrix::from_fn(n, n, |_, _| c(unit(rng), 0.0)))
}

pub fn random_unitary(rng: &mut TestRng, n: usize) -> CMatrix {
    q_factor(complex_matrix(rng, n, n))
}

/// `O1 · shift(index) · O2` with random real orthogonal windows of width
/// `window` (rounded up to even).
pub fn random_bogoliubov(rng: &mut TestRng, index: usize, window: usize) -> BogoliubovOp {
    assert!(index % 2 == 0, "index must be even");
    let n = window.div_ceil(2) * 2;
    let o1 = random_orthogonal(rng, n + index);
    let o2 = random_orthogonal(rng, n);
    let mut s = CMatrix::zeros(n + index, n);
    for j in 0..n {
        s[(j + index, j)] = c(1.0, 0.0);
    }
    let block = o1 * s * o2;
    BogoliubovOp::new_with_tol(
        FiniteTypeOp::from_real_basis(&block, index as isize, &CMatrix::identity(2, 2))
            .expect("valid window"),
        1e-10,
    )
    .expect("random isometry")
}

/// Unitary commuting with `P1`: `u` on the first `modes` f-modes, identity
/// beyond.
pub fn random_gauge(rng: &mut TestRng, modes: usize) -> BogoliubovOp {
    let u = random_unitary(rng, modes);
    let mut block = CMatrix::zeros(2 * modes, 2 * modes);
    for p in 0..modes {
        for q in 0..modes {
            block[(2 * p, 2 * q)] = u[(p, q)];
            block[(2 * p + 1, 2 * q + 1)] = u[(p, q)].conj();
        }
    }
    let op = FiniteTypeOp::new(Space::K, Space::K, block, 0, CMatrix::identity(2, 2))
        .expect("valid window");
    BogoliubovOp::new_with_tol(op, 1e-10).expect("gauge unitary")
}

/// A vector in `K1` supported on the first `modes` modes.
pub fn k1_vector(rng: &mut TestRng, modes: usize) -> CVector {
    complex_vector(rng, modes)
}

/// A mode-basis vector of `K` supported on the first `modes` mode pairs.
pub fn k_vector(rng: &mut TestRng, modes: usize) -> CVector {
    complex_vector(rng, 2 * modes)
}

/// Random superposition of `terms` occupation states with at most
/// `max_particles` particles among the first `modes` modes.
pub fn fock_vector(
    rng: &mut TestRng,
    modes: usize,
    max_particles: usize,
    terms: usize,
) -> FockVector {
    let mut entries = Vec::new();
    for _ in 0..terms {
        let k = rng.gen_range(0..=max_particles.min(modes));
        let mut s = ModeSet::empty();
        while s.len() < k {
            s.insert(rng.gen_range(0..modes));
        }
        entries.push((s, complex(rng)));
    }
    FockVector::from_entries(entries)
}

/// Antisymmetric matrix of rank `2 * pairs` on `n` modes.
pub fn antisymmetric(rng: &mut TestRng, n: usize, pairs: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for _ in 0..pairs {
        let a = complex_vector(rng, n);
        let b = complex_vector(rng, n);
        m += &a * b.transpose() - &b * a.transpose();
    }
    m * c(0.5, 0.0)
}

/// Random antisymmetric Hamiltonian on `modes` modes with `rank H12 = rank12`.
pub fn wick_hamiltonian(rng: &mut TestRng, modes: usize, rank12: usize) -> WickHamiltonian {
    let h12 = antisymmetric(rng, modes, rank12 / 2);
    let h21 = antisymmetric(rng, modes, 1);
    let h11 = FiniteTypeOp::finite(
        Space::K1,
        Space::K1,
        &(complex_matrix(rng, modes, modes) * c(0.5, 0.0)),
    );
    WickHamiltonian::from_h11(&h11, h12, h21).expect("antisymmetric by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_bogoliubov_has_requested_index() {
        let mut r = rng(1);
        for ind in [0, 2, 4] {
            let v = random_bogoliubov(&mut r, ind, 6);
            assert_eq!(v.index(), ind);
            assert_eq!(v.cokernel().unwrap().dim(), ind);
        }
    }

    #[test]
    fn antisymmetric_rank() {
        let mut r = rng(2);
        let m = antisymmetric(&mut r, 6, 2);
        assert_eq!(crate::linalg::rank(&m), 4);
    }
}
