//! Antisymmetric bilinear Hamiltonians and their Wick-ordered exponentials.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{max_abs, resized, CMatrix, CVector, C64, ONE};
use crate::selfdual::{FiniteTypeOp, Space};

use super::{annihilate_mode, create, create_mode, FockVector};

/// Antisymmetric `H` stored through `M = 1 + H11` (finite type on `K1`,
/// which keeps a single tail even when `H11` itself would need two) and the
/// finite matrices `H12(p, q) = <f_p, H Γ f_q>`, `H21(p, q) = <Γ f_p, H f_q>`,
/// both antisymmetric. `H22 = -Γ H11* Γ` is implied.
#[derive(Clone, Debug)]
pub struct WickHamiltonian {
    m11: FiniteTypeOp,
    h12: CMatrix,
    h21: CMatrix,
}

fn square(m: &CMatrix) -> CMatrix {
    let n = m.nrows().max(m.ncols());
    resized(m, n, n)
}

/// Guard against gross violations; callers check the tight tolerance.
const ANTISYMMETRY_GUARD: f64 = 1e-9;

fn check_antisymmetric(m: &CMatrix, name: &str) -> Result<()> {
    let r = max_abs(&(m + m.transpose()));
    if r > ANTISYMMETRY_GUARD {
        return Err(Error::Relation {
            relation: format!("antisymmetry of {name}"),
            residual: r,
            tolerance: ANTISYMMETRY_GUARD,
        });
    }
    Ok(())
}

impl WickHamiltonian {
    /// From `M = 1 + H11`, `H12` and `H21`.
    pub fn new(m11: FiniteTypeOp, h12: CMatrix, h21: CMatrix) -> Result<Self> {
        if m11.domain() != Space::K1 || m11.codomain() != Space::K1 {
            return Err(Error::SpaceMismatch {
                op: "WickHamiltonian",
                expected: Space::K1,
                found: m11.domain(),
            });
        }
        let (h12, h21) = (square(&h12), square(&h21));
        check_antisymmetric(&h12, "H12")?;
        check_antisymmetric(&h21, "H21")?;
        Ok(WickHamiltonian { m11, h12, h21 })
    }

    /// From a finite-type `H11` whose tail is compatible with the identity.
    pub fn from_h11(h11: &FiniteTypeOp, h12: CMatrix, h21: CMatrix) -> Result<Self> {
        Self::new(FiniteTypeOp::identity(Space::K1).add(h11)?, h12, h21)
    }

    pub fn zero() -> Self {
        WickHamiltonian {
            m11: FiniteTypeOp::identity(Space::K1),
            h12: CMatrix::zeros(0, 0),
            h21: CMatrix::zeros(0, 0),
        }
    }

    /// Reads the components of an antisymmetric operator `H` on `K`.
    pub fn from_op(h: &FiniteTypeOp) -> Result<Self> {
        let [h11, h12, h21, h22] = h.components()?;
        if !h12.tail_is_zero() || !h21.tail_is_zero() {
            return Err(Error::NotFiniteRank { op: "WickHamiltonian::from_op" });
        }
        let implied = h11.adjoint().gamma_conj().scale(-ONE);
        let r = implied.max_abs_diff(&h22);
        if r > 1e-12 {
            return Err(Error::Relation {
                relation: "H11 = -Γ H22* Γ".into(),
                residual: r,
                tolerance: 1e-12,
            });
        }
        Self::from_h11(&h11, h12.block().clone(), h21.block().clone())
    }

    /// `1 + H11`.
    pub fn m11(&self) -> &FiniteTypeOp {
        &self.m11
    }
    pub fn h12(&self) -> &CMatrix {
        &self.h12
    }
    pub fn h21(&self) -> &CMatrix {
        &self.h21
    }

    /// `H11`, when representable with a single tail.
    pub fn h11(&self) -> Result<FiniteTypeOp> {
        self.m11.sub(&FiniteTypeOp::identity(Space::K1))
    }

    /// `H11 f = M f - f`.
    pub fn h11_apply(&self, f: &CVector) -> CVector {
        let mf = self.m11.apply(f);
        let n = mf.len().max(f.len());
        crate::linalg::resized_vec(&mf, n) - crate::linalg::resized_vec(f, n)
    }

    /// `H11* f = M* f - f`.
    pub fn h11_adjoint_apply(&self, f: &CVector) -> CVector {
        let mf = self.m11.adjoint().apply(f);
        let n = mf.len().max(f.len());
        crate::linalg::resized_vec(&mf, n) - crate::linalg::resized_vec(f, n)
    }

    /// Largest antisymmetry residual of `H12` and `H21`.
    pub fn antisymmetry_residual(&self) -> f64 {
        max_abs(&(&self.h12 + self.h12.transpose()))
            .max(max_abs(&(&self.h21 + self.h21.transpose())))
    }

    /// `H12` as an operator `K2 -> K1`.
    pub fn h12_op(&self) -> FiniteTypeOp {
        FiniteTypeOp::finite(Space::K2, Space::K1, &self.h12)
    }

    /// `H21` as an operator `K1 -> K2`.
    pub fn h21_op(&self) -> FiniteTypeOp {
        FiniteTypeOp::finite(Space::K1, Space::K2, &self.h21)
    }

    /// The full operator on `K` (requires an `H11` with a single tail).
    pub fn to_op(&self) -> Result<FiniteTypeOp> {
        let h11 = self.h11()?;
        let h22 = h11.adjoint().gamma_conj().scale(-ONE);
        FiniteTypeOp::from_components(&h11, &self.h12_op(), &self.h21_op(), &h22)
    }

    /// `det(P1 + H12 H12*)`.
    pub fn vacuum_det(&self) -> f64 {
        let n = self.h12.nrows();
        let m = CMatrix::identity(n, n) + &self.h12 * self.h12.adjoint();
        m.determinant().re
    }
}

/// `exp(Z/2) v` with `Z = Σ m[p,q] a_p* a_q*` (create) or `Σ m[p,q] a_p a_q`.
fn pair_exp(m: &CMatrix, creating: bool, v: &FockVector) -> FockVector {
    let step = |w: &FockVector| -> FockVector {
        let mut out = FockVector::zero();
        for q in 0..m.ncols() {
            let col = m.column(q);
            if col.iter().all(|z| *z == C64::default()) {
                continue;
            }
            let inner = if creating {
                create_mode(q, w)
            } else {
                annihilate_mode(q, w)
            };
            if inner.is_empty() {
                continue;
            }
            for p in 0..m.nrows() {
                let c = m[(p, q)];
                if c == C64::default() {
                    continue;
                }
                let t = if creating {
                    create_mode(p, &inner)
                } else {
                    annihilate_mode(p, &inner)
                };
                out.add_assign_scaled(c, &t);
            }
        }
        out.pruned()
    };
    let mut total = v.clone();
    let mut term = v.clone();
    let mut l = 0usize;
    loop {
        l += 1;
        term = step(&term).scale(C64::new(0.5 / l as f64, 0.0));
        if term.is_empty() {
            break;
        }
        total.add_assign_scaled(ONE, &term);
    }
    total.pruned()
}

/// Exterior lift: `a(g_1)* ... a(g_k)* Ω -> a(M g_1)* ... a(M g_k)* Ω`.
pub fn lift(m: &FiniteTypeOp, v: &FockVector) -> FockVector {
    let mut cols: HashMap<usize, CVector> = HashMap::new();
    let mut out = FockVector::zero();
    for (s, a) in v.iter() {
        let mut w = FockVector::vacuum();
        for i in s.modes().into_iter().rev() {
            let col = cols.entry(i).or_insert_with(|| {
                let mut e = CVector::zeros(i + 1);
                e[i] = ONE;
                m.apply(&e)
            });
            w = create(col, &w);
            if w.is_empty() {
                break;
            }
        }
        out.add_assign_scaled(*a, &w);
    }
    out.pruned()
}

/// `:e^{b(H)/2}: v`, computed as `exp(X/2) Lift(1 + H11) exp(Y/2) v` with
/// `X = Σ H12(p,q) a_p* a_q*` and `Y = Σ H21(p,q) a_p a_q`.
pub fn wick_exp(h: &WickHamiltonian, v: &FockVector) -> FockVector {
    let w = pair_exp(&h.h21, false, v);
    let w = lift(&h.m11, &w);
    pair_exp(&h.h12, true, &w)
}

/// Adjoint of [`wick_exp`]: `exp(Y*/2) Lift((1 + H11)*) exp(X*/2)`.
pub fn wick_exp_adjoint(h: &WickHamiltonian, v: &FockVector) -> FockVector {
    let one_plus = h.m11.adjoint();
    // (Σ A_pq a_p* a_q*)* = Σ conj(A_pq) a_q a_p = Σ (A^H)_qp a_q a_p
    let w = pair_exp(&h.h12.adjoint(), false, v);
    let w = lift(&one_plus, &w);
    pair_exp(&h.h21.adjoint(), true, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn sample() -> WickHamiltonian {
        let mut a = CMatrix::zeros(3, 3);
        a[(0, 1)] = c(0.7, 0.2);
        a[(1, 0)] = -a[(0, 1)];
        a[(1, 2)] = c(-0.3, 0.0);
        a[(2, 1)] = -a[(1, 2)];
        let mut b = CMatrix::zeros(3, 3);
        b[(0, 2)] = c(0.1, -0.4);
        b[(2, 0)] = -b[(0, 2)];
        let h11 = FiniteTypeOp::finite(
            Space::K1,
            Space::K1,
            &CMatrix::from_fn(3, 3, |i, j| c(0.1 * (i as f64) - 0.2 * j as f64, 0.05)),
        );
        WickHamiltonian::from_h11(&h11, a, b).unwrap()
    }

    #[test]
    fn zero_hamiltonian_is_identity() {
        let v = FockVector::basis(&[0, 2]).add(&FockVector::vacuum());
        assert_eq!(wick_exp(&WickHamiltonian::zero(), &v), v);
    }

    #[test]
    fn vacuum_norm_formula() {
        let h = sample();
        let n = wick_exp(&h, &FockVector::vacuum()).norm();
        assert!((n - h.vacuum_det().powf(0.25)).abs() < 1e-12);
    }

    #[test]
    fn adjoint_is_adjoint() {
        let h = sample();
        let u = FockVector::basis(&[1]).add(&FockVector::basis(&[0, 2]).scale(c(0.0, 1.0)));
        let w = FockVector::basis(&[0, 1, 2]).add(&FockVector::basis(&[2]).scale(c(0.5, 0.0)));
        let lhs = w.inner(&wick_exp(&h, &u));
        let rhs = wick_exp_adjoint(&h, &w).inner(&u);
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn op_round_trip() {
        let h = sample();
        let back = WickHamiltonian::from_op(&h.to_op().unwrap()).unwrap();
        assert!(max_abs(&(back.h12() - h.h12())) < 1e-15);
        assert!(back.m11().approx_eq(h.m11(), 1e-15));
    }
}
