//! Dense complex linear algebra helpers shared by the operator calculus.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Absolute tolerance for orthonormality and identity checks.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Relative singular-value threshold for rank decisions.
pub const RANK_REL_TOL: f64 = 1e-9;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn vec_max_abs(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Copy of `m` padded with zeros (or truncated) to `rows x cols`.
pub fn resized(m: &CMatrix, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |i, j| {
        if i < m.nrows() && j < m.ncols() {
            m[(i, j)]
        } else {
            ZERO
        }
    })
}

pub fn resized_vec(v: &CVector, len: usize) -> CVector {
    CVector::from_fn(len, |i, _| if i < v.len() { v[i] } else { ZERO })
}

/// Fixes the phase of a vector so that its largest-magnitude entry is real
/// positive. Among entries within a relative `1e-9` of the maximum the first
/// index wins, so the choice is reproducible.
pub fn fix_phase(v: &mut CVector) {
    let max = vec_max_abs(v);
    if max == 0.0 {
        return;
    }
    let idx = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-9))
        .unwrap_or(0);
    let phase = v[idx] / v[idx].norm();
    let rot = phase.conj();
    for z in v.iter_mut() {
        *z *= rot;
    }
}

/// Singular value decomposition sorted by descending singular value.
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

/// Full SVD, `u` is `m x m`, `v` is `n x n`; singular values sorted descending.
///
/// nalgebra only returns the thin factors, so the missing columns are obtained
/// from the orthogonal complement of the thin ones.
pub fn full_svd(a: &CMatrix) -> Svd {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Svd {
            u: CMatrix::identity(m, m),
            sigma: Vec::new(),
            v: CMatrix::identity(n, n),
        };
    }
    let svd = a.clone().svd(true, true);
    let u_thin = svd.u.expect("svd u");
    let vt_thin = svd.v_t.expect("svd v_t");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| {
        svd.singular_values[y]
            .partial_cmp(&svd.singular_values[x])
            .unwrap()
    });
    let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u_sorted = CMatrix::from_fn(m, k, |i, j| u_thin[(i, order[j])]);
    let v_sorted = CMatrix::from_fn(n, k, |i, j| vt_thin[(order[j], i)].conj());
    Svd {
        u: complete_basis(&u_sorted),
        sigma,
        v: complete_basis(&v_sorted),
    }
}

/// Extends the orthonormal columns of `q` to an orthonormal basis of the
/// ambient space by Gram-Schmidt against the standard basis.
pub fn complete_basis(q: &CMatrix) -> CMatrix {
    let n = q.nrows();
    let mut cols: Vec<CVector> = q.column_iter().map(|c| c.into_owned()).collect();
    for e in 0..n {
        if cols.len() >= n {
            break;
        }
        let mut v = CVector::zeros(n);
        v[e] = ONE;
        for _ in 0..2 {
            for c in &cols {
                let proj = c.dotc(&v);
                v -= c * proj;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            cols.push(v / C64::new(norm, 0.0));
        }
    }
    CMatrix::from_columns(&cols)
}

/// Numerical rank with the threshold `RANK_REL_TOL * max(sigma_max, 1)`.
/// The floor keeps rounding noise in windows of a norm-one operator from
/// counting as rank.
pub fn rank_of(sigma: &[f64]) -> usize {
    let smax = sigma.first().copied().unwrap_or(0.0);
    sigma
        .iter()
        .filter(|&&s| s > RANK_REL_TOL * smax.max(1.0))
        .count()
}

pub fn rank(a: &CMatrix) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let s = a.clone().singular_values();
    let mut v: Vec<f64> = s.iter().copied().collect();
    v.sort_by(|x, y| y.partial_cmp(x).unwrap());
    rank_of(&v)
}

/// Orthonormal basis of `ker a` as columns, phases fixed.
pub fn null_space(a: &CMatrix) -> Vec<CVector> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return (0..n)
            .map(|i| {
                let mut v = CVector::zeros(n);
                v[i] = ONE;
                v
            })
            .collect();
    }
    let svd = full_svd(a);
    let r = rank_of(&svd.sigma);
    (r..n)
        .map(|j| {
            let mut v = svd.v.column(j).into_owned();
            fix_phase(&mut v);
            v
        })
        .collect()
}

/// Orthonormal basis of the range of `a`, phases fixed.
pub fn range_basis(a: &CMatrix) -> Vec<CVector> {
    if a.ncols() == 0 || a.nrows() == 0 {
        return Vec::new();
    }
    let svd = full_svd(a);
    let r = rank_of(&svd.sigma);
    (0..r)
        .map(|j| {
            let mut v = svd.u.column(j).into_owned();
            fix_phase(&mut v);
            v
        })
        .collect()
}

/// Moore-Penrose pseudo-inverse with the global rank threshold.
pub fn pinv(a: &CMatrix) -> CMatrix {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return CMatrix::zeros(n, m);
    }
    let svd = full_svd(a);
    let r = rank_of(&svd.sigma);
    let mut out = CMatrix::zeros(n, m);
    for k in 0..r {
        let vk = svd.v.column(k);
        let uk = svd.u.column(k);
        out += (vk * uk.adjoint()) * C64::new(1.0 / svd.sigma[k], 0.0);
    }
    out
}

/// Partial isometry of the polar decomposition `a = w |a|`.
pub fn polar_isometry(a: &CMatrix) -> CMatrix {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return CMatrix::zeros(m, n);
    }
    let svd = full_svd(a);
    let r = rank_of(&svd.sigma);
    let mut out = CMatrix::zeros(m, n);
    for k in 0..r {
        out += svd.u.column(k) * svd.v.column(k).adjoint();
    }
    out
}

/// Applies a real function to a Hermitian matrix through its eigenbasis.
pub fn hermitian_fn(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let n = a.nrows();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let h = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let d = CMatrix::from_diagonal(&CVector::from_iterator(
        n,
        eig.eigenvalues.iter().map(|&x| C64::new(f(x), 0.0)),
    ));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Sorted eigenvalues and matching eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let h = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].partial_cmp(&eig.eigenvalues[y]).unwrap());
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (vals, vecs)
}

/// Largest singular value.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    a.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CMatrix {
        CMatrix::from_fn(4, 3, |i, j| c((i * 3 + j) as f64 * 0.3 - 1.0, (i as f64) - 0.5 * j as f64))
    }

    #[test]
    fn full_svd_reconstructs() {
        let a = sample();
        let s = full_svd(&a);
        let mut sig = CMatrix::zeros(4, 3);
        for (k, &x) in s.sigma.iter().enumerate() {
            sig[(k, k)] = c(x, 0.0);
        }
        let back = &s.u * sig * s.v.adjoint();
        assert!(max_abs(&(back - &a)) < 1e-12);
        assert!(max_abs(&(s.u.adjoint() * &s.u - CMatrix::identity(4, 4))) < 1e-12);
        assert!(max_abs(&(s.v.adjoint() * &s.v - CMatrix::identity(3, 3))) < 1e-12);
    }

    #[test]
    fn pinv_satisfies_penrose() {
        let mut a = sample();
        // make it rank deficient
        let col = a.column(0).into_owned();
        a.set_column(2, &(col * c(2.0, 1.0)));
        let p = pinv(&a);
        assert!(max_abs(&(&a * &p * &a - &a)) < 1e-10);
        assert!(max_abs(&(&p * &a * &p - &p)) < 1e-10);
        assert_eq!(rank(&a), 2);
        assert_eq!(null_space(&a).len(), 1);
    }

    #[test]
    fn phase_is_fixed_on_largest_entry() {
        let mut v = CVector::from_vec(vec![c(0.1, 0.0), c(0.0, -2.0), c(1.0, 1.0)]);
        fix_phase(&mut v);
        assert!((v[1] - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hermitian_fn_inverse_sqrt() {
        let b = sample();
        let a = b.adjoint() * &b + CMatrix::identity(3, 3);
        let r = hermitian_fn(&a, |x| x.powf(-0.5));
        let back = &r * &a * &r;
        assert!(max_abs(&(back - CMatrix::identity(3, 3))) < 1e-12);
    }
}
