//! Exact calculus of finite-type operators on the selfdual space `(K, Γ)`.
//!
//! Conventions (fixed once, used everywhere):
//!
//! * `e_0, e_1, ...` is the real basis of `K`; `Γ` is complex conjugation of
//!   coordinates in that basis.
//! * `f_n = (e_{2n} - i e_{2n+1}) / sqrt 2` spans `K1 = P1 K`, and
//!   `Γ f_n = (e_{2n} + i e_{2n+1}) / sqrt 2` spans `K2 = P2 K`.
//! * Vectors and operators on `K` are stored in the mode basis where index
//!   `2n` is `f_n` and index `2n + 1` is `Γ f_n`. `K1` and `K2` use the mode
//!   index `n` of `f_n` resp. `Γ f_n`.
//!
//! In particular `f_n^+ = e_{2n}` and `f_n^- = e_{2n+1}`.

mod bogoliubov;
mod op;
pub mod spec_file;
mod subspace;

pub use bogoliubov::{BogoliubovOp, Components};
pub use op::FiniteTypeOp;
pub use subspace::Subspace;

use serde::{Deserialize, Serialize};

use crate::linalg::{CVector, C64, ZERO};

/// The spaces operators act between.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    K,
    K1,
    K2,
}

impl Space {
    /// Length of the aligned index blocks the tail pattern acts on.
    pub fn period(self) -> usize {
        match self {
            Space::K => 2,
            Space::K1 | Space::K2 => 1,
        }
    }

    /// Image of the space under the conjugation.
    pub fn conjugate(self) -> Space {
        match self {
            Space::K => Space::K,
            Space::K1 => Space::K2,
            Space::K2 => Space::K1,
        }
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Real-basis coordinates to mode-basis coordinates (length rounded up to even).
pub fn real_to_mode(v: &CVector) -> CVector {
    let n = v.len().div_ceil(2);
    let get = |i: usize| if i < v.len() { v[i] } else { ZERO };
    let mut out = CVector::zeros(2 * n);
    for p in 0..n {
        let (x0, x1) = (get(2 * p), get(2 * p + 1));
        let ix1 = C64::new(-x1.im, x1.re);
        out[2 * p] = (x0 + ix1) * FRAC_1_SQRT_2;
        out[2 * p + 1] = (x0 - ix1) * FRAC_1_SQRT_2;
    }
    out
}

/// Mode-basis coordinates to real-basis coordinates.
pub fn mode_to_real(v: &CVector) -> CVector {
    let n = v.len().div_ceil(2);
    let get = |i: usize| if i < v.len() { v[i] } else { ZERO };
    let mut out = CVector::zeros(2 * n);
    for p in 0..n {
        let (cf, cg) = (get(2 * p), get(2 * p + 1));
        out[2 * p] = (cf + cg) * FRAC_1_SQRT_2;
        let d = cg - cf;
        out[2 * p + 1] = C64::new(-d.im, d.re) * FRAC_1_SQRT_2;
    }
    out
}

/// `Γ k` for a mode-basis vector `k`.
pub fn gamma_vec(v: &CVector) -> CVector {
    let n = v.len().div_ceil(2);
    let get = |i: usize| if i < v.len() { v[i] } else { ZERO };
    let mut out = CVector::zeros(2 * n);
    for p in 0..n {
        out[2 * p] = get(2 * p + 1).conj();
        out[2 * p + 1] = get(2 * p).conj();
    }
    out
}

/// Embeds a `K1` vector (coefficients of `f_n`) into `K`.
pub fn embed_k1(v: &CVector) -> CVector {
    let mut out = CVector::zeros(2 * v.len());
    for (n, z) in v.iter().enumerate() {
        out[2 * n] = *z;
    }
    out
}

/// Embeds a `K2` vector (coefficients of `Γ f_n`) into `K`.
pub fn embed_k2(v: &CVector) -> CVector {
    let mut out = CVector::zeros(2 * v.len());
    for (n, z) in v.iter().enumerate() {
        out[2 * n + 1] = *z;
    }
    out
}

/// `P1 k` as a `K1` vector.
pub fn project_k1(v: &CVector) -> CVector {
    CVector::from_iterator(v.len().div_ceil(2), (0..v.len()).step_by(2).map(|i| v[i]))
}

/// `P2 k` as a `K2` vector.
pub fn project_k2(v: &CVector) -> CVector {
    let n = v.len().div_ceil(2);
    CVector::from_iterator(
        n,
        (0..n).map(|p| if 2 * p + 1 < v.len() { v[2 * p + 1] } else { ZERO }),
    )
}

/// Coordinates of `Γ f` in `K2` for `f` in `K1`; both are coordinate-wise
/// conjugates of each other.
pub fn conj_vec(v: &CVector) -> CVector {
    v.map(|z| z.conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn mode_basis_round_trip() {
        let v = CVector::from_vec(vec![c(1.0, 0.5), c(-0.25, 2.0), c(0.0, 1.0)]);
        let back = mode_to_real(&real_to_mode(&v));
        for i in 0..3 {
            assert!((back[i] - v[i]).norm() < 1e-15);
        }
        assert!(back[3].norm() < 1e-15);
    }

    #[test]
    fn f_plus_and_minus_are_real_basis_vectors() {
        // f_0 = (e0 - i e1)/sqrt2 has mode coordinates (1, 0).
        let e0 = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let e1 = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let m0 = real_to_mode(&e0);
        let m1 = real_to_mode(&e1);
        // f^+ = (f + Γf)/sqrt2, f^- = i (f - Γf)/sqrt2
        let s = FRAC_1_SQRT_2;
        assert!((m0[0] - c(s, 0.0)).norm() < 1e-15 && (m0[1] - c(s, 0.0)).norm() < 1e-15);
        assert!((m1[0] - c(0.0, s)).norm() < 1e-15 && (m1[1] - c(0.0, -s)).norm() < 1e-15);
    }

    #[test]
    fn gamma_is_conjugation_in_real_basis() {
        let v = CVector::from_vec(vec![c(1.0, 0.5), c(-0.25, 2.0)]);
        let lhs = mode_to_real(&gamma_vec(&real_to_mode(&v)));
        for i in 0..2 {
            assert!((lhs[i] - v[i].conj()).norm() < 1e-15);
        }
    }
}
