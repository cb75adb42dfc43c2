//! Quasi-free states `ω_S` and the induced states `S_V = V* P1 V`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, max_abs, resized_vec, CVector, C64, ONE, ZERO};
use crate::selfdual::{gamma_vec, BogoliubovOp, FiniteTypeOp, Space, Subspace};

/// Two-point operator `S` with `0 <= S <= 1` and `Γ S Γ = 1 - S`.
#[derive(Clone, Debug)]
pub struct TwoPointOperator {
    s: FiniteTypeOp,
}

impl TwoPointOperator {
    pub fn new(s: FiniteTypeOp) -> Result<Self> {
        let one = FiniteTypeOp::identity(Space::K);
        let r = s.gamma_conj().max_abs_diff(&one.sub(&s)?);
        if r > 1e-12 {
            return Err(Error::Relation {
                relation: "Γ S Γ = 1 - S".into(),
                residual: r,
                tolerance: 1e-12,
            });
        }
        let w = window(&s);
        let (vals, _) = linalg::hermitian_eigen(&s.dense(w, w));
        let herm = max_abs(&(s.dense(w, w) - s.dense(w, w).adjoint()));
        let lo = vals.first().copied().unwrap_or(0.0);
        let hi = vals.last().copied().unwrap_or(1.0);
        if herm > 1e-12 || lo < -1e-12 || hi > 1.0 + 1e-12 {
            return Err(Error::Relation {
                relation: "0 <= S <= 1".into(),
                residual: herm.max(-lo).max(hi - 1.0),
                tolerance: 1e-12,
            });
        }
        Ok(TwoPointOperator { s })
    }

    /// The Fock state `ω_{P1}`.
    pub fn fock() -> Self {
        TwoPointOperator {
            s: FiniteTypeOp::p1(),
        }
    }

    pub fn op(&self) -> &FiniteTypeOp {
        &self.s
    }

    /// `ω_S(B(k) B(k')) = <Γk, S k'>`.
    pub fn two_point(&self, k: &CVector, kp: &CVector) -> C64 {
        let sk = self.s.apply(kp);
        let gk = gamma_vec(k);
        let n = sk.len().max(gk.len());
        resized_vec(&gk, n).dotc(&resized_vec(&sk, n))
    }

    /// `ω_S(B(k_1) ... B(k_n))` by Pfaffian expansion along the first factor.
    pub fn npoint(&self, ks: &[CVector]) -> C64 {
        let n = ks.len();
        if n % 2 == 1 {
            return ZERO;
        }
        assert!(n <= 24, "npoint supports at most 24 factors");
        let mut pair = vec![vec![ZERO; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                pair[i][j] = self.two_point(&ks[i], &ks[j]);
            }
        }
        let mut memo = HashMap::new();
        pfaffian(&pair, (1u32 << n) - 1, &mut memo)
    }

    /// Spectral decomposition of an `S` that differs from a projection
    /// pattern by finite rank.
    pub fn spectral_pairs(&self) -> Result<SpectralPairs> {
        let w = window(&self.s);
        let dense = self.s.dense(w, w);
        let (vals, vecs) = linalg::hermitian_eigen(&dense);
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let mut half = Vec::new();
        for (i, &x) in vals.iter().enumerate() {
            if x * (1.0 - x) <= 1e-10 {
                continue;
            }
            let v = vecs.column(i).into_owned();
            if (x - 0.5).abs() <= 1e-9 {
                half.push(v);
            } else if x > 0.5 {
                upper.push((x, v));
            } else {
                lower.push(x);
            }
        }
        let mut lo_sorted: Vec<f64> = lower.iter().map(|x| 1.0 - x).collect();
        lo_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut up_sorted: Vec<f64> = upper.iter().map(|(x, _)| *x).collect();
        up_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mismatch = lo_sorted.len() != up_sorted.len()
            || lo_sorted
                .iter()
                .zip(&up_sorted)
                .any(|(a, b)| (a - b).abs() > 1e-9);
        if mismatch {
            return Err(Error::Consistency(format!(
                "spectral pairing θ <-> 1-θ violated: {up_sorted:?} vs {lo_sorted:?}"
            )));
        }
        let pairs = upper
            .into_iter()
            .map(|(theta, mut v)| {
                linalg::fix_phase(&mut v);
                SpectralPair { theta, vector: v }
            })
            .collect();
        Ok(SpectralPairs {
            pairs,
            half: Subspace::span(Space::K, &half),
        })
    }
}

fn window(s: &FiniteTypeOp) -> usize {
    (s.rows().max(s.cols()) + 1) / 2 * 2 + 8
}

fn pfaffian(pair: &[Vec<C64>], mask: u32, memo: &mut HashMap<u32, C64>) -> C64 {
    if mask == 0 {
        return ONE;
    }
    if let Some(v) = memo.get(&mask) {
        return *v;
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut sum = ZERO;
    let mut sign = 1.0;
    let mut m = rest;
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        m &= m - 1;
        let p = pair[first][j];
        if p != ZERO {
            sum += p * sign * pfaffian(pair, rest & !(1 << j), memo);
        }
        sign = -sign;
    }
    memo.insert(mask, sum);
    sum
}

/// Eigenvalue `θ` in `(1/2, 1)` with eigenvector `e`; `Γ e` has eigenvalue
/// `1 - θ`.
#[derive(Clone, Debug)]
pub struct SpectralPair {
    pub theta: f64,
    pub vector: CVector,
}

#[derive(Clone, Debug)]
pub struct SpectralPairs {
    pub pairs: Vec<SpectralPair>,
    /// Eigenspace `E_{1/2}`.
    pub half: Subspace,
}

impl SpectralPairs {
    /// All nontrivial eigenvalues (in `(0, 1)`), ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .pairs
            .iter()
            .flat_map(|p| [p.theta, 1.0 - p.theta])
            .chain(std::iter::repeat_n(0.5, self.half.dim()))
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    /// Γ-codimension of the partial basis projection `S_V E_V`.
    pub fn codimension(&self) -> usize {
        2 * self.pairs.len() + self.half.dim()
    }
}

/// `V* S V`.
pub fn induced_state(v: &BogoliubovOp, s: &TwoPointOperator) -> Result<TwoPointOperator> {
    let op = v.op().adjoint().compose(s.op())?.compose(v.op())?;
    TwoPointOperator::new(op)
}

/// `S_V = V* P1 V`.
pub fn s_v(v: &BogoliubovOp) -> TwoPointOperator {
    induced_state(v, &TwoPointOperator::fock()).expect("induced state of a Bogoliubov operator")
}

/// `N_V = dim (K1 ∩ ker V*)`.
pub fn n_v(v: &BogoliubovOp) -> Result<usize> {
    let q = v.cokernel()?;
    if q.dim() == 0 {
        return Ok(0);
    }
    let len = q.max_len().div_ceil(2) * 2;
    let m = q.matrix(len);
    let p2 = crate::linalg::CMatrix::from_fn(len / 2, q.dim(), |a, j| m[(2 * a + 1, j)]);
    Ok(linalg::null_space(&p2).len())
}

/// `‖[P1, V V*]‖` on the finite window, infinity if not finite rank.
pub fn commutator_p1_range(v: &BogoliubovOp) -> f64 {
    let vv = v.range_projection();
    let p1 = FiniteTypeOp::p1();
    match p1.compose(&vv).and_then(|a| a.sub(&vv.compose(&p1)?)) {
        Ok(c) => c.finite_norm().unwrap_or(f64::INFINITY),
        Err(_) => f64::INFINITY,
    }
}

/// `ω_{P1} ∘ ρ_V` is pure iff `[P1, V V*] = 0`.
pub fn purity_test(v: &BogoliubovOp) -> bool {
    commutator_p1_range(v) <= 1e-10
}

/// For finite-type operators the Hilbert-Schmidt condition holds
/// automatically, so equivalence reduces to equal indices.
pub fn equivalence_test(v: &BogoliubovOp, w: &BogoliubovOp) -> bool {
    v.index() == w.index()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::selfdual::embed_k2;

    #[test]
    fn fock_two_point_vanishes_on_conjugate_space() {
        let s = TwoPointOperator::fock();
        // B(k)* B(k) = B(Γk) B(k)
        let k = embed_k2(&CVector::from_vec(vec![c(0.3, 1.0), c(-2.0, 0.5)]));
        assert!(s.two_point(&gamma_vec(&k), &k).norm() < 1e-15);
        assert_eq!(s.npoint(&[k.clone()]), ZERO);
    }

    #[test]
    fn identity_is_pure() {
        let v = BogoliubovOp::identity();
        assert!(purity_test(&v));
        assert_eq!(n_v(&v).unwrap(), 0);
        assert!(s_v(&v).spectral_pairs().unwrap().pairs.is_empty());
    }
}
