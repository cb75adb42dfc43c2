//! The associate `Λ_V`, the operators `Ψ̂(V)`, `Ψ_0(V)`, the partial
//! isometries `ψ_β` and the implementing isometries `Ψ_β(V) = ψ_β Ψ_0(V)`.

use crate::error::{Error, Result};
use crate::fock::{
    annihilate, create, parity, psi, psi_adjoint, wick_exp, wick_exp_adjoint, FockVector,
    WickHamiltonian,
};
use crate::linalg::{self, c, max_abs, resized, CMatrix, CVector, C64};
use crate::selfdual::{
    conj_vec, embed_k1, embed_k2, project_k1, project_k2, BogoliubovOp, FiniteTypeOp, Space,
    Subspace,
};

/// `Λ_V` together with the pieces it is built from.
#[derive(Clone, Debug)]
pub struct Associate {
    lambda: WickHamiltonian,
    lambda12: FiniteTypeOp,
    lambda21: FiniteTypeOp,
    v11_inv: FiniteTypeOp,
    v22_inv: FiniteTypeOp,
    ker_v11: Subspace,
    ker_v11_star: Subspace,
    ker_v22: Subspace,
    ker_v22_star: Subspace,
}

fn finite_matrix(op: &FiniteTypeOp) -> Result<CMatrix> {
    if !op.tail_is_zero() {
        return Err(Error::NotFiniteRank { op: "finite_matrix" });
    }
    let n = op.rows().max(op.cols());
    Ok(resized(op.block(), n, n))
}

/// `Λ_V` by the componentwise formulas, using the pseudo-inverses of `V11`
/// and `V22`.
pub fn associate(v: &BogoliubovOp) -> Result<Associate> {
    let cp = v.components();
    let (v11, v12, v21, v22) = (&cp.v11, &cp.v12, &cp.v21, &cp.v22);
    let v11_inv = v11.pseudo_inverse()?;
    let v22_inv = v22.pseudo_inverse()?;
    let v11_inv_star = v11_inv.adjoint();
    let ker_v11 = Subspace::span(Space::K1, &v11.kernel_basis()?);
    let ker_v11_star = Subspace::span(Space::K1, &v11.cokernel_basis()?);
    let ker_v22 = Subspace::span(Space::K2, &v22.kernel_basis()?);
    let ker_v22_star = Subspace::span(Space::K2, &v22.cokernel_basis()?);
    let p_k22s = ker_v22_star.projector();
    let p_k11s = ker_v11_star.projector();

    // Λ12 = V12 V22^-1 - V11^-1* V21* P_{ker V22*}
    let lambda12 = v12
        .compose(&v22_inv)?
        .sub(&v11_inv_star.compose(&v21.adjoint())?.compose(&p_k22s)?)?;
    // 1 + Λ11 = V11^-1* - P_{ker V11*} V12 V22^-1 V21
    let m11 = v11_inv_star.sub(&p_k11s.compose(v12)?.compose(&v22_inv)?.compose(v21)?)?;
    // Λ21 = (V22^-1 - V12* V11^-1* V21* P_{ker V22*}) V21
    let lambda21 = v22_inv.compose(v21)?.sub(
        &v12.adjoint()
            .compose(&v11_inv_star)?
            .compose(&v21.adjoint())?
            .compose(&p_k22s)?
            .compose(v21)?,
    )?;
    let h12 = finite_matrix(&lambda12)?;
    let h21 = finite_matrix(&lambda21)?;
    let n = h12.nrows().max(h21.nrows());
    let lambda = WickHamiltonian::new(m11, resized(&h12, n, n), resized(&h21, n, n))?;
    Ok(Associate {
        lambda,
        lambda12,
        lambda21,
        v11_inv,
        v22_inv,
        ker_v11,
        ker_v11_star,
        ker_v22,
        ker_v22_star,
    })
}

impl Associate {
    pub fn hamiltonian(&self) -> &WickHamiltonian {
        &self.lambda
    }
    /// `Λ12 : K2 -> K1`.
    pub fn lambda12(&self) -> &FiniteTypeOp {
        &self.lambda12
    }
    /// `Λ21 : K1 -> K2`.
    pub fn lambda21(&self) -> &FiniteTypeOp {
        &self.lambda21
    }
    pub fn v11_inv(&self) -> &FiniteTypeOp {
        &self.v11_inv
    }
    pub fn v22_inv(&self) -> &FiniteTypeOp {
        &self.v22_inv
    }
    pub fn ker_v11(&self) -> &Subspace {
        &self.ker_v11
    }
    pub fn ker_v11_star(&self) -> &Subspace {
        &self.ker_v11_star
    }
    pub fn ker_v22(&self) -> &Subspace {
        &self.ker_v22
    }
    pub fn ker_v22_star(&self) -> &Subspace {
        &self.ker_v22_star
    }

    /// Residuals of `Λ12 V22 = V12 P_{ran V22*}` and `Λ12 V21 (ker V11) = 0`.
    pub fn liii_residuals(&self, v: &BogoliubovOp) -> Result<(f64, f64)> {
        let cp = v.components();
        let p_ran = FiniteTypeOp::identity(Space::K2).sub(&self.ker_v22.projector())?;
        let lhs = self.lambda12.compose(&cp.v22)?;
        let rhs = cp.v12.compose(&p_ran)?;
        let r1 = lhs.max_abs_diff(&rhs);
        let mut r2: f64 = 0.0;
        for e in self.ker_v11.vectors() {
            let w = self.lambda12.apply(&cp.v21.apply(e));
            r2 = r2.max(linalg::vec_max_abs(&w));
        }
        Ok((r1, r2))
    }

    /// `‖Λ12‖_2`.
    pub fn hs_norm12(&self) -> f64 {
        self.lambda.h12().norm()
    }
}

/// The space of antisymmetric `h12` allowed by the solution-family lemma:
/// `ker(h12)^⊥ ⊂ ker V22* ⊖ V21 ker V11`, `ran h12 ⊂ ker V11* ⊖ V12 ker V22`.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    /// Basis of the allowed `h12` as matrices `K2 -> K1` in mode coordinates.
    pub basis: Vec<CMatrix>,
    /// `m = dim (ker V11* ⊖ V12 ker V22)`.
    pub m: usize,
}

impl SolutionFamily {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn solution_family(v: &BogoliubovOp, assoc: &Associate) -> Result<SolutionFamily> {
    let cp = v.components();
    let x1 = assoc.ker_v11_star.minus(&assoc.ker_v22.image(&cp.v12));
    let z2 = assoc.ker_v22_star.minus(&assoc.ker_v11.image(&cp.v21));
    let (m1, m2) = (x1.dim(), z2.dim());
    let n = x1.max_len().max(z2.max_len()).max(1);
    let y = x1.matrix(n);
    let z = z2.matrix(n);
    // L(C) = Y C Z^H + (Y C Z^H)^T
    let mut cols = Vec::with_capacity(m1 * m2);
    let mut images = Vec::with_capacity(m1 * m2);
    for i in 0..m1 {
        for j in 0..m2 {
            let h = y.column(i) * z.column(j).adjoint();
            let l = &h + h.transpose();
            cols.push(CVector::from_iterator(n * n, l.iter().copied()));
            images.push(h);
        }
    }
    let basis = if cols.is_empty() {
        Vec::new()
    } else {
        let l = CMatrix::from_columns(&cols);
        linalg::null_space(&l)
            .into_iter()
            .map(|coef| {
                let mut h = CMatrix::zeros(n, n);
                for (k, img) in images.iter().enumerate() {
                    h += img * coef[k];
                }
                h
            })
            .collect()
    };
    Ok(SolutionFamily { basis, m: m1 })
}

/// `H = Λ + [[-h12 V21, h12], [V12* h12 V21, -V12* h12]]`.
pub fn solution_member(
    v: &BogoliubovOp,
    assoc: &Associate,
    h12: &CMatrix,
) -> Result<WickHamiltonian> {
    let cp = v.components();
    let h = FiniteTypeOp::finite(Space::K2, Space::K1, h12);
    let m11 = assoc.lambda.m11().sub(&h.compose(&cp.v21)?)?;
    let h12_total = assoc.lambda12.add(&h)?;
    let h21_total = assoc
        .lambda21
        .add(&cp.v12.adjoint().compose(&h)?.compose(&cp.v21)?)?;
    let a = finite_matrix(&h12_total)?;
    let b = finite_matrix(&h21_total)?;
    let n = a.nrows().max(b.nrows());
    WickHamiltonian::new(m11, resized(&a, n, n), resized(&b, n, n))
}

/// All multi-indices `β ⊂ {0, ..., m-1}` (ascending), ordered by bitmask.
pub fn multi_indices(m: usize) -> Vec<Vec<usize>> {
    (0..1usize << m)
        .map(|mask| (0..m).filter(|j| mask >> j & 1 == 1).collect())
        .collect()
}

/// The implementing family `{Ψ_β(V)}` with its vacuum data.
#[derive(Clone, Debug)]
pub struct ImplementerSet {
    v: BogoliubovOp,
    hamiltonian: WickHamiltonian,
    norm_const: f64,
    kernel: Vec<CVector>,
    kernel_images: Vec<CVector>,
    k_basis: Vec<CVector>,
}

impl ImplementerSet {
    /// Built from the associate `Λ_V`.
    pub fn new(v: &BogoliubovOp) -> Result<Self> {
        let assoc = associate(v)?;
        Self::with_hamiltonian(v, &assoc, assoc.lambda.clone())
    }

    /// Built from any member `H` of the solution family.
    pub fn with_hamiltonian(
        v: &BogoliubovOp,
        assoc: &Associate,
        h: WickHamiltonian,
    ) -> Result<Self> {
        Self::with_bases(v, assoc, h, None, None)
    }

    /// As [`with_hamiltonian`](Self::with_hamiltonian), optionally with a
    /// prescribed orthonormal basis of `ker V11` and of
    /// `ker V* ∩ ran(P1 - H12*)`.
    pub fn with_bases(
        v: &BogoliubovOp,
        assoc: &Associate,
        h: WickHamiltonian,
        kernel: Option<Vec<CVector>>,
        k_basis: Option<Vec<CVector>>,
    ) -> Result<Self> {
        let cp = v.components();
        let h12 = FiniteTypeOp::finite(Space::K2, Space::K1, h.h12());
        let det = FiniteTypeOp::identity(Space::K1)
            .add(&h12.compose(&h12.adjoint())?)?
            .det_one_plus()?;
        if det.re <= 0.0 || det.im.abs() > 1e-9 * det.re {
            return Err(Error::Consistency(format!(
                "det(P1 + H12 H12*) = {det} is not positive"
            )));
        }
        let norm_const = det.re.powf(-0.25);
        let kernel: Vec<CVector> = match kernel {
            Some(k) => {
                let given = Subspace::new(Space::K1, k.clone())?;
                if given.dim() != assoc.ker_v11.dim()
                    || k.iter().any(|e| !assoc.ker_v11.contains(e, 1e-10))
                {
                    return Err(Error::Invalid(
                        "prescribed vectors are not a basis of ker V11".into(),
                    ));
                }
                k
            }
            None => assoc.ker_v11.vectors().to_vec(),
        };
        let kernel_images = kernel
            .iter()
            .map(|e| cp.v12.apply(&conj_vec(e)))
            .collect();
        let computed = vacuum_kernel(v, &h12)?;
        let k_basis = match k_basis {
            Some(k) => {
                let given = Subspace::new(Space::K, k.clone())?;
                if given.dim() != computed.dim()
                    || k.iter().any(|x| !computed.contains(x, 1e-10))
                {
                    return Err(Error::Invalid(
                        "prescribed vectors are not a basis of ker V* ∩ ran(P1 - H12*)".into(),
                    ));
                }
                k
            }
            None => computed.vectors().to_vec(),
        };
        if 2 * k_basis.len() != v.index() {
            return Err(Error::Consistency(format!(
                "dim(ker V* ∩ ran(P1 - H12*)) = {} but ind V*/2 = {}",
                k_basis.len(),
                v.index() / 2
            )));
        }
        Ok(ImplementerSet {
            v: v.clone(),
            hamiltonian: h,
            norm_const,
            kernel,
            kernel_images,
            k_basis,
        })
    }

    pub fn bogoliubov(&self) -> &BogoliubovOp {
        &self.v
    }
    pub fn hamiltonian(&self) -> &WickHamiltonian {
        &self.hamiltonian
    }
    /// `det(P1 + H12 H12*)^{-1/4}`.
    pub fn normalization(&self) -> f64 {
        self.norm_const
    }
    /// `m = ind V* / 2`.
    pub fn m(&self) -> usize {
        self.k_basis.len()
    }
    /// `L_V = dim ker V11`.
    pub fn l_v(&self) -> usize {
        self.kernel.len()
    }
    /// Orthonormal basis `e_r` of `ker V11`.
    pub fn kernel(&self) -> &[CVector] {
        &self.kernel
    }
    /// Orthonormal basis `k_j` of `ker V* ∩ ran(P1 - H12*)`.
    pub fn k_basis(&self) -> &[CVector] {
        &self.k_basis
    }
    /// Number of implementers, `2^m`.
    pub fn len(&self) -> usize {
        1 << self.m()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn multi_indices(&self) -> Vec<Vec<usize>> {
        multi_indices(self.m())
    }

    /// `Ψ̂(V) v = det(...)^{-1/4} :e^{b(H)/2}: v`.
    pub fn psi_hat_apply(&self, v: &FockVector) -> FockVector {
        wick_exp(&self.hamiltonian, v).scale(c(self.norm_const, 0.0))
    }

    fn subset_terms(&self) -> Vec<(f64, Vec<usize>, Vec<usize>)> {
        let l = self.l_v();
        (0..1usize << l)
            .map(|mask| {
                let sub: Vec<usize> = (0..l).filter(|r| mask >> r & 1 == 1).collect();
                let comp: Vec<usize> = (0..l).filter(|r| mask >> r & 1 == 0).collect();
                // sign of the shuffle (sub ascending, then comp ascending)
                let inv: usize = sub
                    .iter()
                    .map(|&i| comp.iter().filter(|&&j| j < i).count())
                    .sum();
                let sign = if (sub.len() + inv) % 2 == 0 { 1.0 } else { -1.0 };
                (sign, sub, comp)
            })
            .collect()
    }

    /// `A_r = a(e_r) Θ`.
    fn a_r(&self, r: usize, w: &FockVector) -> FockVector {
        annihilate(&self.kernel[r], &parity(w))
    }
    /// `A_{V,r} = a(V12 Γ e_r)* Θ`.
    fn a_vr(&self, r: usize, w: &FockVector) -> FockVector {
        create(&self.kernel_images[r], &parity(w))
    }

    /// `Ψ_0(V) v`.
    pub fn psi0_apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (sign, sub, comp) in self.subset_terms() {
            let mut w = v.clone();
            for &r in comp.iter().rev() {
                w = self.a_r(r, &w);
            }
            if w.is_empty() {
                continue;
            }
            w = wick_exp(&self.hamiltonian, &w);
            for &r in sub.iter().rev() {
                w = self.a_vr(r, &w);
            }
            out.add_assign_scaled(c(sign, 0.0), &w);
        }
        out.pruned().scale(c(self.norm_const, 0.0))
    }

    /// `Ψ_0(V)* v`, assembled from the adjoints of the factors.
    pub fn psi0_adjoint_apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (sign, sub, comp) in self.subset_terms() {
            let mut w = v.clone();
            for &r in &sub {
                // A_{V,r}* = Θ a(V12 Γ e_r)
                w = parity(&annihilate(&self.kernel_images[r], &w));
            }
            if w.is_empty() {
                continue;
            }
            w = wick_exp_adjoint(&self.hamiltonian, &w);
            for &r in &comp {
                // A_r* = Θ a(e_r)*
                w = parity(&create(&self.kernel[r], &w));
            }
            out.add_assign_scaled(c(sign, 0.0), &w);
        }
        out.pruned().scale(c(self.norm_const, 0.0))
    }

    /// `ψ_β v = ψ(k_{β_1}) ... ψ(k_{β_r}) v`.
    pub fn psi_beta_only(&self, beta: &[usize], v: &FockVector) -> FockVector {
        let mut w = v.clone();
        for &j in beta.iter().rev() {
            w = psi(&self.k_basis[j], &w);
        }
        w
    }

    /// `ψ_β* v`.
    pub fn psi_beta_only_adjoint(&self, beta: &[usize], v: &FockVector) -> FockVector {
        let mut w = v.clone();
        for &j in beta {
            w = psi_adjoint(&self.k_basis[j], &w);
        }
        w
    }

    /// `Ψ_β(V) v = ψ_β Ψ_0(V) v`.
    pub fn psi_beta_apply(&self, beta: &[usize], v: &FockVector) -> FockVector {
        self.psi_beta_only(beta, &self.psi0_apply(v))
    }

    /// `Ψ_β(V)* v = Ψ_0(V)* ψ_β* v`.
    pub fn psi_beta_adjoint_apply(&self, beta: &[usize], v: &FockVector) -> FockVector {
        self.psi0_adjoint_apply(&self.psi_beta_only_adjoint(beta, v))
    }
}

/// `ker V* ∩ ran(P1 - H12*)`, i.e. the `k` in `ker V*` with
/// `(P2 + H12* P1) k = 0`.
pub fn vacuum_kernel(v: &BogoliubovOp, h12: &FiniteTypeOp) -> Result<Subspace> {
    let q = v.cokernel()?;
    let h12_star = h12.adjoint();
    let len = q.max_len().div_ceil(2) * 2;
    let qm = q.matrix(len);
    let cols: Vec<CVector> = (0..q.dim())
        .map(|j| {
            let col = qm.column(j).into_owned();
            let a = project_k2(&col);
            let b = h12_star.apply(&project_k1(&col));
            let n = a.len().max(b.len());
            linalg::resized_vec(&a, n) + linalg::resized_vec(&b, n)
        })
        .collect();
    if cols.is_empty() {
        return Ok(Subspace::empty(Space::K));
    }
    let n = cols.iter().map(|c| c.len()).max().unwrap();
    let g = CMatrix::from_columns(
        &cols
            .iter()
            .map(|c| linalg::resized_vec(c, n))
            .collect::<Vec<_>>(),
    );
    let vecs: Vec<CVector> = linalg::null_space(&g)
        .into_iter()
        .map(|coef| {
            let mut k = &qm * coef;
            linalg::fix_phase(&mut k);
            k
        })
        .collect();
    Subspace::new(Space::K, vecs)
}

/// Cyclic vectors `φ_β = A_β* Ω` of the decomposition of `π ∘ ρ_V`, built
/// from an orthonormal basis of `ker(P1 V V* P1)`.
pub fn cyclic_vectors(v: &BogoliubovOp) -> Result<Vec<FockVector>> {
    let q = v.cokernel()?;
    let len = q.max_len().div_ceil(2) * 2;
    let qm = q.matrix(len);
    let p2 = CMatrix::from_fn(len / 2, q.dim(), |a, j| qm[(2 * a + 1, j)]);
    let basis: Vec<CVector> = linalg::null_space(&p2)
        .into_iter()
        .map(|coef| project_k1(&(&qm * coef)))
        .collect();
    let basis = Subspace::span(Space::K1, &basis);
    Ok(multi_indices(basis.dim())
        .into_iter()
        .map(|beta| {
            // A_β* = A(f_{β_l})* ... A(f_{β_1})*, A(f)* = Θ a(f)*
            let mut w = FockVector::vacuum();
            for &j in &beta {
                w = parity(&create(&basis.vectors()[j], &w));
            }
            w
        })
        .collect())
}

/// Maximal entry of `Λ12 + Λ12^T`, `Λ21 + Λ21^T` and of
/// `Λ22 + Γ Λ11* Γ` restricted to its finite part.
pub fn antisymmetry_residual(v: &BogoliubovOp, assoc: &Associate) -> Result<f64> {
    let cp = v.components();
    let h = &assoc.lambda;
    // Λ22 = P2 - V22^-1 + X with X = V12* V11^-1* V21* P_{ker V22*};
    // antisymmetry of the diagonal reads Γ X Γ = Y* with
    // Y = P_{ker V11*} V12 V22^-1 V21.
    let x = cp
        .v12
        .adjoint()
        .compose(&assoc.v11_inv.adjoint())?
        .compose(&cp.v21.adjoint())?
        .compose(&assoc.ker_v22_star.projector())?;
    let y = assoc
        .ker_v11_star
        .projector()
        .compose(&cp.v12)?
        .compose(&assoc.v22_inv)?
        .compose(&cp.v21)?;
    let diag = x.gamma_conj().max_abs_diff(&y.adjoint());
    // V22^-1 = Γ V11^-1 Γ
    let inv = assoc.v22_inv.max_abs_diff(&assoc.v11_inv.gamma_conj());
    Ok(h.antisymmetry_residual().max(diag).max(inv))
}

/// `ker V11*` as a subspace, for callers that only need the count.
pub fn dim_ker_v11(v: &BogoliubovOp) -> Result<usize> {
    Ok(v.components().v11.kernel_basis()?.len())
}

/// `<f, g>` for vectors of possibly different lengths.
pub fn inner(f: &CVector, g: &CVector) -> C64 {
    let n = f.len().max(g.len());
    linalg::resized_vec(f, n).dotc(&linalg::resized_vec(g, n))
}

/// `k` as a `K` vector from `K1` and `K2` parts.
pub fn k_from_parts(k1: &CVector, k2: &CVector) -> CVector {
    let a = embed_k1(k1);
    let b = embed_k2(k2);
    let n = a.len().max(b.len());
    linalg::resized_vec(&a, n) + linalg::resized_vec(&b, n)
}

/// Max entry of `m - 1` for a matrix expected to be the identity.
pub fn identity_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - CMatrix::identity(m.nrows(), m.ncols())))
}
