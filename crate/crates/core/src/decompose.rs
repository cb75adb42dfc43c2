//! Product decomposition `V = U W`, the basis projection `P_V`, the
//! character `χ` and the explicit example operators.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::implementer::{associate, Associate};
use crate::linalg::{self, c, CMatrix, CVector, ONE};
use crate::selfdual::{
    embed_k1, gamma_vec, project_k1, project_k2, BogoliubovOp, FiniteTypeOp, Space, Subspace,
};

/// `V(φ)`: `e0 -> cos φ e0 + sin φ e3`, `e1 -> sin φ e1 - cos φ e2`,
/// `e_j -> e_{j+2}` for `j >= 2`.
pub fn curve_v_phi(phi: f64) -> BogoliubovOp {
    let (s, co) = phi.sin_cos();
    let mut block = CMatrix::zeros(4, 2);
    block[(0, 0)] = c(co, 0.0);
    block[(3, 0)] = c(s, 0.0);
    block[(1, 1)] = c(s, 0.0);
    block[(2, 1)] = c(-co, 0.0);
    BogoliubovOp::from_real_basis(&block, 2, &CMatrix::identity(2, 2))
        .expect("V(φ) is a Bogoliubov operator")
}

/// The unitary `U` with `U V(3π/4) = V(π/2)`.
pub fn example_u() -> BogoliubovOp {
    let s = FRAC_1_SQRT_2;
    let mut block = CMatrix::zeros(4, 4);
    // e0 -> (e0 - e3)/√2, e1 -> (e1 - e2)/√2, e2 -> (e1 + e2)/√2,
    // e3 -> (e0 + e3)/√2
    block[(0, 0)] = c(s, 0.0);
    block[(3, 0)] = c(-s, 0.0);
    block[(1, 1)] = c(s, 0.0);
    block[(2, 1)] = c(-s, 0.0);
    block[(1, 2)] = c(s, 0.0);
    block[(2, 2)] = c(s, 0.0);
    block[(0, 3)] = c(s, 0.0);
    block[(3, 3)] = c(s, 0.0);
    BogoliubovOp::from_real_basis(&block, 0, &CMatrix::identity(2, 2))
        .expect("example U is unitary")
}

/// `(P, U_T)` for an antisymmetric finite-rank `T : K1 -> K2`.
pub fn basis_projection_from_t(t: &FiniteTypeOp) -> Result<(FiniteTypeOp, BogoliubovOp)> {
    if t.domain() != Space::K1 || t.codomain() != Space::K2 || !t.tail_is_zero() {
        return Err(Error::Invalid(
            "T must be a finite-rank operator K1 -> K2".into(),
        ));
    }
    // antisymmetry: Γ T* Γ = -T
    let r = t.adjoint().gamma_conj().max_abs_diff(&t.scale(-ONE));
    if r > 1e-12 {
        return Err(Error::Relation {
            relation: "antisymmetry of T".into(),
            residual: r,
            tolerance: 1e-12,
        });
    }
    let id1 = FiniteTypeOp::identity(Space::K1);
    let id2 = FiniteTypeOp::identity(Space::K2);
    let z12 = FiniteTypeOp::zero(Space::K2, Space::K1);
    let z21 = FiniteTypeOp::zero(Space::K1, Space::K2);
    let z22 = FiniteTypeOp::zero(Space::K2, Space::K2);
    let tt = id1.add(&t.adjoint().compose(t)?)?;
    let t_t = id2.add(&t.compose(&t.adjoint())?)?;
    let inv = tt.hermitian_fn_one_plus(|x| 1.0 / x)?;
    let isq1 = tt.hermitian_fn_one_plus(|x| 1.0 / x.sqrt())?;
    let isq2 = t_t.hermitian_fn_one_plus(|x| 1.0 / x.sqrt())?;
    // P = (P1 + T)(P1 + T*T)^-1 (P1 + T*)
    let col = FiniteTypeOp::from_components(&id1, &z12, t, &z22)?;
    let mid = FiniteTypeOp::from_components(&inv, &z12, &z21, &z22)?;
    let p = col.compose(&mid)?.compose(&col.adjoint())?;
    // U_T = (P1 + T)(P1 + T*T)^-1/2 + (P2 + ΓTΓ)(P2 + TT*)^-1/2
    let t_bar = t.gamma_conj();
    let u = FiniteTypeOp::from_components(
        &isq1,
        &t_bar.compose(&isq2)?,
        &t.compose(&isq1)?,
        &isq2,
    )?;
    Ok((p, BogoliubovOp::new_with_tol(u, 1e-10)?))
}

/// `P_V`, the basis projection onto `ran(P1 - Λ12*)`.
pub fn basis_projection(assoc: &Associate) -> Result<FiniteTypeOp> {
    let t = assoc.lambda12().adjoint().scale(-ONE);
    Ok(basis_projection_from_t(&t)?.0)
}

/// `W` with `W11 = polar part of V11` and `W21 = V21 P_{ker V11}`.
pub fn polar_w(v: &BogoliubovOp) -> Result<BogoliubovOp> {
    let cp = v.components();
    let w11 = cp.v11.polar_isometry()?;
    let ker = Subspace::span(Space::K1, &cp.v11.kernel_basis()?);
    let w21 = cp.v21.compose(&ker.projector())?;
    let op = FiniteTypeOp::from_components(&w11, &w21.gamma_conj(), &w21, &w11.gamma_conj())?;
    BogoliubovOp::new_with_tol(op, 1e-10)
}

/// `V = U W` with its ingredients.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub w: BogoliubovOp,
    pub u: BogoliubovOp,
    /// Partial isometry from `ker W*` onto `ker V*`.
    pub partial: FiniteTypeOp,
    pub p_v: FiniteTypeOp,
    /// Orthonormal basis of `P1 ker W*` (in `K1` coordinates).
    pub kernel_w: Vec<CVector>,
}

/// `R_V f = (P1 - Λ12*)(P1 + V11 V21* Λ12*) f` for `f ∈ K1`, as a `K`
/// vector.
pub fn r_v(v: &BogoliubovOp, assoc: &Associate, f: &CVector) -> CVector {
    let cp = v.components();
    let l12s = assoc.lambda12().adjoint();
    let corr = cp.v11.apply(&cp.v21.adjoint().apply(&l12s.apply(f)));
    let n = f.len().max(corr.len());
    let g = linalg::resized_vec(f, n) + linalg::resized_vec(&corr, n);
    let lower = l12s.apply(&g) * c(-1.0, 0.0);
    crate::implementer::k_from_parts(&g, &lower)
}

/// `Σ_i x_i <y_i, .> + Γ x_i <Γ y_i, .>` as an operator on `K`.
fn real_partial_isometry(targets: &[CVector], sources: &[CVector]) -> FiniteTypeOp {
    let n = targets
        .iter()
        .chain(sources)
        .map(|x| x.len())
        .max()
        .unwrap_or(0)
        .div_ceil(2)
        * 2;
    let mut block = CMatrix::zeros(n, n);
    for (x, y) in targets.iter().zip(sources) {
        let (x, y) = (linalg::resized_vec(x, n), linalg::resized_vec(y, n));
        block += &x * y.adjoint();
        block += gamma_vec(&x) * gamma_vec(&y).adjoint();
    }
    FiniteTypeOp::finite(Space::K, Space::K, &block)
}

/// `V = U W` with `U = V W* + u` and `u P1 = P_V u`.
pub fn factor_u(v: &BogoliubovOp) -> Result<Decomposition> {
    let assoc = associate(v)?;
    let cp = v.components();
    let w = polar_w(v)?;
    let x1 = assoc
        .ker_v11_star()
        .minus(&assoc.ker_v22().image(&cp.v12));
    let sources: Vec<CVector> = x1.vectors().iter().map(embed_k1).collect();
    let images: Vec<CVector> = x1.vectors().iter().map(|f| r_v(v, &assoc, f)).collect();
    let targets: Vec<CVector> = if images.is_empty() {
        Vec::new()
    } else {
        let n = images.iter().map(|x| x.len()).max().unwrap();
        let r = CMatrix::from_columns(
            &images
                .iter()
                .map(|x| linalg::resized_vec(x, n))
                .collect::<Vec<_>>(),
        );
        if linalg::rank(&r) < images.len() {
            return Err(Error::Consistency("R_V is not injective".into()));
        }
        let q = linalg::polar_isometry(&r);
        (0..q.ncols()).map(|j| q.column(j).into_owned()).collect()
    };
    let partial = real_partial_isometry(&targets, &sources);
    let u_op = v.op().compose(&w.adjoint_op())?.add(&partial)?;
    let u = BogoliubovOp::new_with_tol(u_op, 1e-10)?;
    let p_v = basis_projection(&assoc)?;
    Ok(Decomposition {
        w,
        u,
        partial,
        p_v,
        kernel_w: x1.vectors().to_vec(),
    })
}

/// `χ(V) = (-1)^{dim ker V11}`.
pub fn chi(v: &BogoliubovOp) -> Result<i32> {
    let d = v.components().v11.kernel_basis()?.len();
    Ok(if d % 2 == 0 { 1 } else { -1 })
}

/// Value of `δ_{P1}(V, V') = ‖V - V'‖ + ‖V12 - V'12‖_2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Delta {
    Exact(f64),
    /// Tails differ; the distance is at least this value.
    AtLeast(f64),
}

pub fn delta_metric(v: &BogoliubovOp, w: &BogoliubovOp) -> Result<Delta> {
    if v.index() != w.index() {
        return Ok(Delta::AtLeast(1.0));
    }
    let d = v.op().sub(w.op())?;
    let d12 = v.components().v12.sub(&w.components().v12)?;
    let norm = if d.tail_is_zero() {
        d.finite_norm()?
    } else {
        d.finite_rank_part().finite_norm()?
    };
    Ok(Delta::Exact(norm + d12.hs_norm()?))
}

/// `U U'' U'*` mapping `V'` to `V` (equal indices).
pub fn orbit_witness(v: &BogoliubovOp, vp: &BogoliubovOp) -> Result<BogoliubovOp> {
    if v.index() != vp.index() {
        return Err(Error::Invalid(format!(
            "orbit witness needs equal indices, got {} and {}",
            v.index(),
            vp.index()
        )));
    }
    let d = factor_u(v)?;
    let dp = factor_u(vp)?;
    let targets: Vec<CVector> = d.kernel_w.iter().map(embed_k1).collect();
    let sources: Vec<CVector> = dp.kernel_w.iter().map(embed_k1).collect();
    let upp = d
        .w
        .op()
        .compose(&dp.w.adjoint_op())?
        .add(&real_partial_isometry(&targets, &sources))?;
    let op = d.u.op().compose(&upp)?.compose(&dp.u.adjoint_op())?;
    BogoliubovOp::new_with_tol(op, 1e-10)
}

/// `‖[P_V, V V*]‖` on the finite part.
pub fn commutator_pv_range(v: &BogoliubovOp, p_v: &FiniteTypeOp) -> Result<f64> {
    let vv = v.range_projection();
    let c = p_v.compose(&vv)?.sub(&vv.compose(p_v)?)?;
    c.finite_rank_part().finite_norm()
}

/// Residuals of `P² = P`, `P* = P`, `Γ P Γ = 1 - P`.
pub fn projection_residuals(p: &FiniteTypeOp) -> Result<f64> {
    let r1 = p.compose(p)?.max_abs_diff(p);
    let r2 = p.adjoint().max_abs_diff(p);
    let r3 = p
        .gamma_conj()
        .max_abs_diff(&FiniteTypeOp::identity(Space::K).sub(p)?);
    Ok(r1.max(r2).max(r3))
}

/// Largest residual of `u P1 = P_V u`.
pub fn partial_intertwining_residual(d: &Decomposition) -> Result<f64> {
    let lhs = d.partial.compose(&FiniteTypeOp::p1())?;
    let rhs = d.p_v.compose(&d.partial)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// Whether `k` lies in `ran(P1 - Λ12*)`: `P2 k = -Λ12* P1 k`.
pub fn in_pv_range(assoc: &Associate, k: &CVector, tol: f64) -> bool {
    let a = project_k2(k);
    let b = assoc.lambda12().adjoint().apply(&project_k1(k));
    let n = a.len().max(b.len());
    linalg::vec_max_abs(&(linalg::resized_vec(&a, n) + linalg::resized_vec(&b, n))) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn example_relation() {
        let u = example_u();
        assert!(u.is_unitary());
        let lhs = u.compose(&curve_v_phi(3.0 * PI / 4.0)).unwrap();
        assert!(lhs.op().approx_eq(curve_v_phi(PI / 2.0).op(), 1e-12));
        assert_eq!(chi(&curve_v_phi(3.0 * PI / 4.0)).unwrap(), -1);
        assert_eq!(chi(&curve_v_phi(PI / 2.0)).unwrap(), 1);
        assert_eq!(chi(&u).unwrap(), 1);
    }

    #[test]
    fn trivial_projection() {
        let t = FiniteTypeOp::zero(Space::K1, Space::K2);
        let (p, u) = basis_projection_from_t(&t).unwrap();
        assert!(p.approx_eq(&FiniteTypeOp::p1(), 1e-15));
        assert!(u.op().approx_eq(&FiniteTypeOp::identity(Space::K), 1e-15));
    }

    #[test]
    fn curve_factorizes() {
        let v = curve_v_phi(PI / 8.0);
        let d = factor_u(&v).unwrap();
        let back = d.u.compose(&d.w).unwrap();
        assert!(back.op().approx_eq(v.op(), 1e-12));
        assert!(d.u.is_unitary());
        assert_eq!(d.w.index(), v.index());
    }
}
