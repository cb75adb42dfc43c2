//! The selfdual CAR algebra over a finite-dimensional `(K, Γ)`, realized in
//! the Fock representation of `P1` on `2^n` dimensional space.

use crate::error::{Error, Result};
use crate::linalg::{self, c, max_abs, CMatrix, CVector, C64, ONE, ZERO};
use crate::selfdual::{gamma_vec, real_to_mode};

pub type CliffordElement = CMatrix;

/// Largest supported number of modes (`2^10` rows).
pub const MAX_MODES: usize = 10;

/// `C(K, Γ)` with `dim K = 2 n`.
#[derive(Clone, Debug)]
pub struct Clifford {
    n: usize,
    create: Vec<CMatrix>,
}

impl Clifford {
    pub fn new(modes: usize) -> Result<Self> {
        if modes > MAX_MODES {
            return Err(Error::Invalid(format!(
                "{modes} modes exceed the cap of {MAX_MODES}"
            )));
        }
        let dim = 1usize << modes;
        let create = (0..modes)
            .map(|i| {
                let mut m = CMatrix::zeros(dim, dim);
                for s in 0..dim {
                    if s >> i & 1 == 0 {
                        let below = (s & ((1 << i) - 1)).count_ones();
                        let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
                        m[(s | 1 << i, s)] = c(sign, 0.0);
                    }
                }
                m
            })
            .collect();
        Ok(Clifford { n: modes, create })
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn dim_k(&self) -> usize {
        2 * self.n
    }

    pub fn matrix_dim(&self) -> usize {
        1 << self.n
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.matrix_dim(), self.matrix_dim())
    }

    /// `a_i*` as a matrix.
    pub fn creation(&self, i: usize) -> &CMatrix {
        &self.create[i]
    }

    /// `π_{P1}(B(k)) = a(P1 k)* + a(P1 Γ k)` for a mode-basis `k`.
    pub fn generator(&self, k: &CVector) -> Result<CliffordElement> {
        if k.len() != self.dim_k() {
            return Err(Error::Dimension(format!(
                "vector of length {} in a space of dimension {}",
                k.len(),
                self.dim_k()
            )));
        }
        let d = self.matrix_dim();
        let mut m = CMatrix::zeros(d, d);
        for j in 0..self.n {
            if k[2 * j] != ZERO {
                m += &self.create[j] * k[2 * j];
            }
            if k[2 * j + 1] != ZERO {
                m += self.create[j].adjoint() * k[2 * j + 1];
            }
        }
        Ok(m)
    }

    /// `B(k)` for a real-basis coordinate vector.
    pub fn generator_real(&self, k: &CVector) -> Result<CliffordElement> {
        self.generator(&real_to_mode(k))
    }

    /// Normalized trace, the unique tracial state.
    pub fn central_state(&self, a: &CMatrix) -> C64 {
        a.trace() / c(self.matrix_dim() as f64, 0.0)
    }

    /// `<Ω, a Ω>`.
    pub fn fock_state(&self, a: &CMatrix) -> C64 {
        a[(0, 0)]
    }

    /// `b(H) = Σ_ij H_ij B(u_i) B(u_j)*` over the mode basis `u`.
    pub fn bilinear(&self, h: &CMatrix) -> Result<CliffordElement> {
        let n = self.dim_k();
        if h.shape() != (n, n) {
            return Err(Error::Dimension(format!("H must be {n}x{n}")));
        }
        let gens: Vec<CMatrix> = (0..n)
            .map(|i| {
                let mut u = CVector::zeros(n);
                u[i] = ONE;
                self.generator(&u).unwrap()
            })
            .collect();
        let d = self.matrix_dim();
        let mut out = CMatrix::zeros(d, d);
        for i in 0..n {
            for j in 0..n {
                if h[(i, j)] != ZERO {
                    out += &gens[i] * gens[j].adjoint() * h[(i, j)];
                }
            }
        }
        Ok(out)
    }

    /// Max residual of `exp(t b(H)/2) B(k) exp(-t b(H)/2) = B(e^{tH} k)` over
    /// basis vectors `k` and the given times.
    pub fn flow_check(&self, h: &CMatrix, times: &[f64]) -> Result<f64> {
        let n = self.dim_k();
        let anti = max_abs(&(h + h.adjoint()));
        let gh = CMatrix::from_fn(n, n, |i, j| h[(i ^ 1, j ^ 1)].conj());
        let real = max_abs(&(&gh - h));
        if anti > 1e-12 || real > 1e-12 {
            return Err(Error::Relation {
                relation: "H* = -H and Γ H Γ = H".into(),
                residual: anti.max(real),
                tolerance: 1e-12,
            });
        }
        let b = self.bilinear(h)?;
        let mut worst: f64 = 0.0;
        for &t in times {
            let g = (&b * c(t / 2.0, 0.0)).exp();
            let ginv = (&b * c(-t / 2.0, 0.0)).exp();
            let eth = (h * c(t, 0.0)).exp();
            for i in 0..n {
                let mut k = CVector::zeros(n);
                k[i] = ONE;
                let lhs = &g * self.generator(&k)? * &ginv;
                let rhs = self.generator(&(&eth * &k))?;
                worst = worst.max(max_abs(&(lhs - rhs)));
            }
        }
        Ok(worst)
    }
}

/// `K = K1 ⊕ K2` with `K2` spanned by real orthonormal vectors.
#[derive(Clone, Debug)]
pub struct Split {
    alg: Clifford,
    k1_gens: Vec<CMatrix>,
    k2_gens: Vec<CMatrix>,
}

impl Split {
    /// `k2_basis` are real-basis coordinate vectors, real and orthonormal.
    pub fn new(alg: Clifford, k2_basis: &[CVector]) -> Result<Self> {
        let n = alg.dim_k();
        for b in k2_basis {
            if b.len() != n {
                return Err(Error::Dimension("split vector length".into()));
            }
            if b.iter().any(|z| z.im.abs() > 1e-12) {
                return Err(Error::Invalid(
                    "K2 basis vectors must be invariant under the conjugation".into(),
                ));
            }
        }
        let m = if k2_basis.is_empty() {
            CMatrix::zeros(n, 0)
        } else {
            CMatrix::from_columns(k2_basis)
        };
        let gram = m.adjoint() * &m - CMatrix::identity(m.ncols(), m.ncols());
        if max_abs(&gram) > 1e-12 {
            return Err(Error::Invalid("K2 basis is not orthonormal".into()));
        }
        // real orthonormal completion
        let full = linalg::complete_basis(&m.map(|z| c(z.re, 0.0)));
        let k1: Vec<CVector> = (m.ncols()..n)
            .map(|j| full.column(j).map(|z| c(z.re, 0.0)))
            .collect();
        let s2 = c(std::f64::consts::SQRT_2, 0.0);
        let k1_gens = k1
            .iter()
            .map(|v| alg.generator_real(v).map(|g| g * s2))
            .collect::<Result<_>>()?;
        let k2_gens = k2_basis
            .iter()
            .map(|v| alg.generator_real(v).map(|g| g * s2))
            .collect::<Result<_>>()?;
        Ok(Split {
            alg,
            k1_gens,
            k2_gens,
        })
    }

    /// `K2` spanned by the last `n2` real basis vectors.
    pub fn standard(modes: usize, n2: usize) -> Result<Self> {
        let alg = Clifford::new(modes)?;
        let n = alg.dim_k();
        if n2 > n {
            return Err(Error::Invalid(format!("dim K2 = {n2} exceeds dim K = {n}")));
        }
        let basis: Vec<CVector> = (n - n2..n)
            .map(|i| {
                let mut e = CVector::zeros(n);
                e[i] = ONE;
                e
            })
            .collect();
        Self::new(alg, &basis)
    }

    pub fn algebra(&self) -> &Clifford {
        &self.alg
    }

    pub fn n2(&self) -> usize {
        self.k2_gens.len()
    }

    fn monomial(&self, gens: &[CMatrix], mask: usize) -> CMatrix {
        let mut m = self.alg.identity();
        for (j, g) in gens.iter().enumerate() {
            if mask >> j & 1 == 1 {
                m = m * g;
            }
        }
        m
    }

    /// Quasi-basis `B_β = B_{β_1} ... B_{β_l}`, `B_j = sqrt 2 B(b_j)`,
    /// ordered by the bitmask of `β`.
    pub fn quasi_basis(&self) -> Vec<CMatrix> {
        (0..1usize << self.n2())
            .map(|mask| self.monomial(&self.k2_gens, mask))
            .collect()
    }

    /// Conditional expectation onto `C(K1)`.
    pub fn conditional_expectation(&self, a: &CMatrix) -> CMatrix {
        let d = self.alg.matrix_dim();
        let mut out = CMatrix::zeros(d, d);
        for mask in 0..1usize << self.k1_gens.len() {
            let m = self.monomial(&self.k1_gens, mask);
            let coeff = self.alg.central_state(&(m.adjoint() * a));
            if coeff.norm() > 0.0 {
                out += m * coeff;
            }
        }
        out
    }

    /// `Σ_β B_β B_β*`, which must be a scalar matrix.
    pub fn watatani_index(&self) -> Result<f64> {
        let d = self.alg.matrix_dim();
        let mut s = CMatrix::zeros(d, d);
        for b in self.quasi_basis() {
            s += &b * b.adjoint();
        }
        let lambda = s[(0, 0)];
        let r = max_abs(&(&s - self.alg.identity() * lambda));
        if r > 1e-9 || lambda.im.abs() > 1e-9 {
            return Err(Error::Consistency(format!(
                "Σ B_β B_β* is not scalar (residual {r:.2e})"
            )));
        }
        Ok(lambda.re)
    }

    /// Residual of `Σ_β E(A B_β) B_β* = A`.
    pub fn quasi_basis_residual(&self, a: &CMatrix) -> f64 {
        let d = self.alg.matrix_dim();
        let mut s = CMatrix::zeros(d, d);
        for b in self.quasi_basis() {
            s += self.conditional_expectation(&(a * &b)) * b.adjoint();
        }
        max_abs(&(s - a))
    }

    /// Even monomials `B_δ` of `C(K2)`, a basis of the relative commutant.
    pub fn even_k2_monomials(&self) -> Vec<CMatrix> {
        (0..1usize << self.n2())
            .filter(|m| m.count_ones() % 2 == 0)
            .map(|mask| self.monomial(&self.k2_gens, mask))
            .collect()
    }

    /// Residual of `Ind E · E(A) = Σ_β B_β A B_β*`.
    pub fn minimality_residual(&self, a: &CMatrix) -> Result<f64> {
        let idx = self.watatani_index()?;
        let d = self.alg.matrix_dim();
        let mut s = CMatrix::zeros(d, d);
        for b in self.quasi_basis() {
            s += &b * a * b.adjoint();
        }
        let lhs = self.conditional_expectation(a) * c(idx, 0.0);
        Ok(max_abs(&(lhs - s)))
    }
}

/// `‖B(k)‖² = (‖k‖² + (‖k‖⁴ - |<k, Γk>|²)^{1/2}) / 2`.
pub fn generator_norm_sqr(k: &CVector) -> f64 {
    let n2 = k.norm_squared();
    let kg = k.dotc(&gamma_vec(k)).norm_sqr();
    0.5 * (n2 + (n2 * n2 - kg).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sdcar_on_basis() {
        let alg = Clifford::new(3).unwrap();
        let n = alg.dim_k();
        for i in 0..n {
            for j in 0..n {
                let mut u = CVector::zeros(n);
                u[i] = ONE;
                let mut w = CVector::zeros(n);
                w[j] = ONE;
                let bu = alg.generator(&u).unwrap();
                let bw = alg.generator(&w).unwrap();
                let ac = bu.adjoint() * &bw + &bw * bu.adjoint();
                let expect = alg.identity() * u.dotc(&w);
                assert!(max_abs(&(ac - expect)) < 1e-15);
            }
        }
    }

    #[test]
    fn index_values() {
        for (n2, idx) in [(0, 1.0), (2, 4.0), (3, 8.0)] {
            let s = Split::standard(3, n2).unwrap();
            assert!((s.watatani_index().unwrap() - idx).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_of_unit_and_quasi_basis() {
        let s = Split::standard(2, 2).unwrap();
        let id = s.algebra().identity();
        assert!(max_abs(&(s.conditional_expectation(&id) - &id)) < 1e-14);
        for b in s.quasi_basis().iter().skip(1) {
            assert!(max_abs(&s.conditional_expectation(b)) < 1e-14);
        }
    }
}
