use crate::error::{Error, Result};
use crate::linalg::{self, resized_vec, CMatrix, CVector, IDENTITY_TOL};

use super::{FiniteTypeOp, Space};

/// Finite-dimensional subspace given by an orthonormal set of finitely
/// supported vectors.
#[derive(Clone, Debug)]
pub struct Subspace {
    space: Space,
    vectors: Vec<CVector>,
}

impl Subspace {
    /// Wraps vectors that must already be orthonormal.
    pub fn new(space: Space, vectors: Vec<CVector>) -> Result<Self> {
        let s = Subspace { space, vectors };
        let len = s.max_len();
        let m = s.matrix(len);
        let g = m.adjoint() * &m - CMatrix::identity(s.dim(), s.dim());
        let r = linalg::max_abs(&g);
        if r > IDENTITY_TOL {
            return Err(Error::Consistency(format!(
                "subspace vectors are not orthonormal (residual {r:.2e})"
            )));
        }
        Ok(s)
    }

    pub fn empty(space: Space) -> Self {
        Subspace {
            space,
            vectors: Vec::new(),
        }
    }

    /// Orthonormal basis of the span of arbitrary vectors.
    pub fn span(space: Space, vectors: &[CVector]) -> Self {
        let len = vectors.iter().map(|v| v.len()).max().unwrap_or(0);
        if vectors.is_empty() || len == 0 {
            return Self::empty(space);
        }
        let cols: Vec<CVector> = vectors.iter().map(|v| resized_vec(v, len)).collect();
        let m = CMatrix::from_columns(&cols);
        Subspace {
            space,
            vectors: linalg::range_basis(&m),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn max_len(&self) -> usize {
        self.vectors.iter().map(|v| v.len()).max().unwrap_or(0)
    }

    /// Basis vectors as the columns of a `len x dim` matrix.
    pub fn matrix(&self, len: usize) -> CMatrix {
        let mut m = CMatrix::zeros(len, self.dim());
        for (j, v) in self.vectors.iter().enumerate() {
            m.set_column(j, &resized_vec(v, len));
        }
        m
    }

    /// Orthogonal projection onto the subspace.
    pub fn projector(&self) -> FiniteTypeOp {
        FiniteTypeOp::projector(self.space, &self.vectors)
    }

    /// `P_X v` as a vector of length at least `v.len()`.
    pub fn project(&self, v: &CVector) -> CVector {
        let len = v.len().max(self.max_len());
        let v = resized_vec(v, len);
        let mut out = CVector::zeros(len);
        for b in &self.vectors {
            let b = resized_vec(b, len);
            out += &b * b.dotc(&v);
        }
        out
    }

    pub fn contains(&self, v: &CVector, tol: f64) -> bool {
        let p = self.project(v);
        (resized_vec(v, p.len()) - p).norm() <= tol
    }

    /// `self ⊖ other`: the orthogonal complement of `other` inside `self`
    /// (`other` is expected to be a subspace of `self`).
    pub fn minus(&self, other: &Subspace) -> Subspace {
        let rest: Vec<CVector> = self
            .vectors
            .iter()
            .map(|v| {
                let p = other.project(v);
                resized_vec(v, p.len()) - p
            })
            .collect();
        Subspace::span(self.space, &rest)
    }

    /// Image of the subspace under an operator (orthonormalized span).
    pub fn image(&self, op: &FiniteTypeOp) -> Subspace {
        let imgs: Vec<CVector> = self.vectors.iter().map(|v| op.apply(v)).collect();
        Subspace::span(op.codomain(), &imgs)
    }

    /// Intersection with another subspace of the same space.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Self::empty(self.space);
        }
        let len = self.max_len().max(other.max_len());
        let a = self.matrix(len);
        let b = other.matrix(len);
        // x in both iff x = A s and (1 - P_B) A s = 0
        let pb = &b * b.adjoint();
        let m = (CMatrix::identity(len, len) - pb) * &a;
        let coeffs = linalg::null_space(&m);
        let vecs: Vec<CVector> = coeffs.iter().map(|s| &a * s).collect();
        Subspace::span(self.space, &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, ONE, ZERO};

    fn e(i: usize, n: usize) -> CVector {
        let mut v = CVector::from_element(n, ZERO);
        v[i] = ONE;
        v
    }

    #[test]
    fn span_minus_intersect() {
        let x = Subspace::span(Space::K1, &[e(0, 3), e(1, 3)]);
        let y = Subspace::span(Space::K1, &[e(0, 3) + e(1, 3)]);
        let z = x.minus(&y);
        assert_eq!(z.dim(), 1);
        let w = e(0, 3) - e(1, 3);
        assert!(z.contains(&w, 1e-12));
        let t = Subspace::span(Space::K1, &[e(1, 3), e(2, 3) * c(2.0, 0.0)]);
        let i = x.intersect(&t);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&e(1, 3), 1e-12));
    }
}
