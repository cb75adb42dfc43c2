use crate::error::{Error, Result};
use crate::linalg::{max_abs, CMatrix, IDENTITY_TOL};

use super::{FiniteTypeOp, Space, Subspace};

/// The four components `V_mn = P_m V P_n`.
#[derive(Clone, Debug)]
pub struct Components {
    pub v11: FiniteTypeOp,
    pub v12: FiniteTypeOp,
    pub v21: FiniteTypeOp,
    pub v22: FiniteTypeOp,
}

/// A finite-type isometry of `K` commuting with the conjugation, with even
/// tail shift.
#[derive(Clone, Debug)]
pub struct BogoliubovOp {
    op: FiniteTypeOp,
    comps: Components,
}

fn residual(a: &FiniteTypeOp, b: &FiniteTypeOp) -> f64 {
    a.max_abs_diff(b)
}

impl BogoliubovOp {
    /// Validates with the default absolute tolerance `1e-12`.
    pub fn new(op: FiniteTypeOp) -> Result<Self> {
        Self::new_with_tol(op, IDENTITY_TOL)
    }

    /// Validates the relations `(REL1)-(REL4)`, reality and the tail.
    pub fn new_with_tol(op: FiniteTypeOp, tol: f64) -> Result<Self> {
        if op.domain() != Space::K || op.codomain() != Space::K {
            return Err(Error::SpaceMismatch {
                op: "BogoliubovOp",
                expected: Space::K,
                found: op.domain(),
            });
        }
        if op.shift() < 0 {
            return Err(Error::Invalid(format!(
                "negative tail shift {} cannot be isometric",
                op.shift()
            )));
        }
        let [v11, v12, v21, v22] = op.components()?;
        let comps = Components { v11, v12, v21, v22 };
        let rels = comps.relation_residuals()?;
        for (name, r) in rels {
            if r > tol {
                return Err(Error::Relation {
                    relation: name.to_string(),
                    residual: r,
                    tolerance: tol,
                });
            }
        }
        let real = residual(&op.gamma_conj(), &op);
        if real > tol {
            return Err(Error::Relation {
                relation: "reality (V commutes with the conjugation)".into(),
                residual: real,
                tolerance: tol,
            });
        }
        Ok(BogoliubovOp { op, comps })
    }

    /// Builds from real-basis data `(block, shift, pattern)`.
    pub fn from_real_basis(block: &CMatrix, shift: isize, pattern: &CMatrix) -> Result<Self> {
        Self::new(FiniteTypeOp::from_real_basis(block, shift, pattern)?)
    }

    pub fn identity() -> Self {
        Self::new(FiniteTypeOp::identity(Space::K)).unwrap()
    }

    /// Shift `e_j -> e_{j + t}` for even `t`.
    pub fn shift(t: usize) -> Result<Self> {
        if t % 2 != 0 {
            return Err(Error::OddShift(t as isize));
        }
        Self::new(FiniteTypeOp::shift_op(Space::K, t)?)
    }

    pub fn op(&self) -> &FiniteTypeOp {
        &self.op
    }

    pub fn components(&self) -> &Components {
        &self.comps
    }

    /// `ind V* = dim ker V*`, equal to the tail shift.
    pub fn index(&self) -> usize {
        self.op.shift() as usize
    }

    /// `d_V = 2^{ind V* / 2}`.
    pub fn statistical_dimension(&self) -> u64 {
        1u64 << (self.index() / 2)
    }

    /// `ker V*` computed from the block.
    pub fn cokernel(&self) -> Result<Subspace> {
        let vecs = self.op.cokernel_basis()?;
        Ok(Subspace::new(Space::K, vecs).unwrap_or_else(|_| {
            // numerically near-orthonormal; re-orthonormalize
            Subspace::span(Space::K, &self.op.cokernel_basis().unwrap())
        }))
    }

    pub fn compose(&self, other: &BogoliubovOp) -> Result<Self> {
        Self::new_with_tol(self.op.compose(&other.op)?, 1e-10)
    }

    pub fn adjoint_op(&self) -> FiniteTypeOp {
        self.op.adjoint()
    }

    /// `V V*`.
    pub fn range_projection(&self) -> FiniteTypeOp {
        self.op.compose(&self.op.adjoint()).unwrap()
    }

    /// True when `V` is unitary (`ind V* = 0`).
    pub fn is_unitary(&self) -> bool {
        self.index() == 0
    }
}

impl Components {
    /// Max entry residuals of the four component relations.
    pub fn relation_residuals(&self) -> Result<[(&'static str, f64); 4]> {
        let (v11, v12, v21, v22) = (&self.v11, &self.v12, &self.v21, &self.v22);
        let id1 = FiniteTypeOp::identity(Space::K1);
        let id2 = FiniteTypeOp::identity(Space::K2);
        let rel1 = v11.adjoint().compose(v11)?.add(&v21.adjoint().compose(v21)?)?;
        let rel2 = v22.adjoint().compose(v22)?.add(&v12.adjoint().compose(v12)?)?;
        let rel3 = v11.adjoint().compose(v12)?.add(&v21.adjoint().compose(v22)?)?;
        let rel4 = v22.adjoint().compose(v21)?.add(&v12.adjoint().compose(v11)?)?;
        let zero = |op: &FiniteTypeOp| max_abs(op.block()).max(max_abs(op.pattern()));
        Ok([
            ("REL1", residual(&rel1, &id1)),
            ("REL2", residual(&rel2, &id2)),
            ("REL3", zero(&rel3)),
            ("REL4", zero(&rel4)),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_index_and_dimension() {
        let s = BogoliubovOp::shift(4).unwrap();
        assert_eq!(s.index(), 4);
        assert_eq!(s.statistical_dimension(), 4);
        assert_eq!(s.cokernel().unwrap().dim(), 4);
        assert!(BogoliubovOp::shift(3).is_err());
    }

    #[test]
    fn non_isometry_is_rejected_with_relation_name() {
        let b = CMatrix::from_element(2, 2, crate::linalg::c(0.5, 0.0));
        let op = FiniteTypeOp::from_real_basis(&b, 0, &CMatrix::identity(2, 2)).unwrap();
        match BogoliubovOp::new(op) {
            Err(Error::Relation { relation, .. }) => assert_eq!(relation, "REL1"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
