//! Brute-force reference computations. Nothing here calls the factorized
//! algorithms it is used to check.

use crate::fock::{annihilate_mode, create, create_mode, FockVector};
use crate::linalg::{c, CMatrix, CVector, C64, ONE, ZERO};
use crate::selfdual::FiniteTypeOp;

/// `:e^{b(H)/2}: v` as the series `Σ_l (1/(l! 2^l)) :b(H)^l: v` with
/// `:b(H)^l:` expanded into its Wick monomials. `H` is the full operator on
/// `K` (finite `H11`).
pub fn wick_exp_direct(h: &FiniteTypeOp, v: &FockVector) -> FockVector {
    let modes = (h.rows().max(h.cols()) + 1) / 2 + v.max_mode().map_or(0, |m| m + 1);
    let h12 = CMatrix::from_fn(modes, modes, |p, q| h.entry(2 * p, 2 * q + 1));
    let h21 = CMatrix::from_fn(modes, modes, |p, q| h.entry(2 * p + 1, 2 * q));
    // H11(p, q) - H22(q, p)
    let mid = CMatrix::from_fn(modes, modes, |p, q| {
        h.entry(2 * p, 2 * q) - h.entry(2 * q + 1, 2 * p + 1)
    });
    let x = |w: &FockVector| -> FockVector {
        let mut out = FockVector::zero();
        for p in 0..modes {
            for q in 0..modes {
                if h12[(p, q)] != ZERO {
                    out.add_assign_scaled(h12[(p, q)], &create_mode(p, &create_mode(q, w)));
                }
            }
        }
        out
    };
    let y = |w: &FockVector| -> FockVector {
        let mut out = FockVector::zero();
        for p in 0..modes {
            for q in 0..modes {
                if h21[(p, q)] != ZERO {
                    out.add_assign_scaled(
                        h21[(p, q)],
                        &annihilate_mode(p, &annihilate_mode(q, w)),
                    );
                }
            }
        }
        out
    };
    let cols: Vec<CVector> = (0..modes).map(|q| mid.column(q).into_owned()).collect();
    // Σ_{q_1..q_l} a(M e_{q_1})* ... a(M e_{q_l})* a_{q_l} ... a_{q_1} w
    fn middle(cols: &[CVector], l: usize, w: &FockVector) -> FockVector {
        if l == 0 {
            return w.clone();
        }
        let mut out = FockVector::zero();
        for (q, col) in cols.iter().enumerate() {
            let inner = annihilate_mode(q, w);
            if inner.is_empty() {
                continue;
            }
            out.add_assign_scaled(ONE, &create(col, &middle(cols, l - 1, &inner)));
        }
        out
    }
    let fact = |n: usize| -> f64 { (1..=n).map(|k| k as f64).product() };
    let mut total = FockVector::zero();
    // Y^{l3} terminates after the particle number; X^{l1} after the modes.
    let mut yl = v.clone();
    let mut l3 = 0;
    while !yl.is_empty() {
        let np = yl.max_particles();
        for l2 in 0..=np {
            let mut xl = middle(&cols, l2, &yl);
            let mut l1 = 0;
            while !xl.is_empty() {
                let coeff = 1.0
                    / (fact(l1) * fact(l2) * fact(l3) * 2f64.powi((l1 + l2 + l3) as i32));
                total.add_assign_scaled(c(coeff, 0.0), &xl);
                xl = x(&xl).pruned();
                l1 += 1;
            }
        }
        yl = y(&yl).pruned();
        l3 += 1;
    }
    total.pruned()
}

/// `rows x cols` window of `A B`, multiplied densely with an inner window
/// `inner` wide enough to hold the range of the first `cols` columns of `B`.
pub fn dense_compose(a: &FiniteTypeOp, b: &FiniteTypeOp, rows: usize, cols: usize, inner: usize) -> CMatrix {
    a.dense(rows, inner) * b.dense(inner, cols)
}

/// Unitary whose column pairs are `f_n`, `Γ f_n` in the real basis.
pub fn mode_columns(n: usize) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut u = CMatrix::zeros(n, n);
    for p in 0..n / 2 {
        u[(2 * p, 2 * p)] = c(s, 0.0);
        u[(2 * p + 1, 2 * p)] = c(0.0, -s);
        u[(2 * p, 2 * p + 1)] = c(s, 0.0);
        u[(2 * p + 1, 2 * p + 1)] = c(0.0, s);
    }
    u
}

/// Window of `Γ A Γ` by conjugating entrywise in the real basis.
pub fn dense_gamma_conj(a: &FiniteTypeOp, n: usize) -> CMatrix {
    let u = mode_columns(n);
    let real = &u * a.dense(n, n) * u.adjoint();
    let conj = real.map(|z| z.conj());
    u.adjoint() * conj * u
}

/// Component `P_s A P_t` of a mode-basis window, as a `K_t -> K_s` matrix.
pub fn dense_component(a: &CMatrix, s: usize, t: usize) -> CMatrix {
    CMatrix::from_fn(a.nrows() / 2, a.ncols() / 2, |p, q| a[(2 * p + s, 2 * q + t)])
}

/// Pfaffian-free reference for `ω(B(k_1) ... B(k_n))` in a Fock state:
/// the vacuum entry of the product of generator matrices.
pub fn fock_moment(gens: &[CMatrix]) -> C64 {
    let mut m = CMatrix::identity(gens[0].nrows(), gens[0].ncols());
    for g in gens {
        m *= g;
    }
    m[(0, 0)]
}
