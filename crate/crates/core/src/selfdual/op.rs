use crate::error::{Error, Result};
use crate::linalg::{
    self, max_abs, resized, CMatrix, CVector, C64, IDENTITY_TOL, ONE, ZERO,
};

use super::Space;

/// A bounded operator `A = block + tail` between two of the spaces `K`, `K1`,
/// `K2`.
///
/// Columns `j < cols` are given explicitly by `block` (which may have any
/// number of rows). A column `j >= cols` with `j = a p + r` (`p` the period)
/// is mapped to `sum_s pattern[s, r] e_{a p + shift + s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTypeOp {
    domain: Space,
    codomain: Space,
    cols: usize,
    shift: isize,
    pattern: CMatrix,
    block: CMatrix,
}

fn round_up(n: usize, p: usize) -> usize {
    n.div_ceil(p) * p
}

impl FiniteTypeOp {
    pub fn new(
        domain: Space,
        codomain: Space,
        block: CMatrix,
        shift: isize,
        pattern: CMatrix,
    ) -> Result<Self> {
        let p = domain.period();
        if codomain.period() != p {
            return Err(Error::SpaceMismatch {
                op: "new",
                expected: domain,
                found: codomain,
            });
        }
        let cols = block.ncols();
        if cols % p != 0 {
            return Err(Error::Dimension(format!(
                "window width {cols} is not a multiple of the period {p}"
            )));
        }
        if shift.rem_euclid(p as isize) != 0 {
            return Err(Error::OddShift(shift));
        }
        if pattern.shape() != (p, p) {
            return Err(Error::Dimension(format!(
                "tail pattern must be {p}x{p}, got {:?}",
                pattern.shape()
            )));
        }
        if (cols as isize) + shift < 0 {
            return Err(Error::Dimension(format!(
                "window width {cols} too small for tail shift {shift}"
            )));
        }
        let mut op = FiniteTypeOp {
            domain,
            codomain,
            cols,
            shift,
            pattern,
            block,
        };
        if op.tail_is_zero() {
            op.shift = 0;
        }
        Ok(op)
    }

    pub fn identity(space: Space) -> Self {
        let p = space.period();
        FiniteTypeOp {
            domain: space,
            codomain: space,
            cols: 0,
            shift: 0,
            pattern: CMatrix::identity(p, p),
            block: CMatrix::zeros(0, 0),
        }
    }

    pub fn zero(domain: Space, codomain: Space) -> Self {
        let p = domain.period();
        FiniteTypeOp {
            domain,
            codomain,
            cols: 0,
            shift: 0,
            pattern: CMatrix::zeros(p, p),
            block: CMatrix::zeros(0, 0),
        }
    }

    /// The unilateral shift `e_j -> e_{j + shift}` (pattern identity).
    pub fn shift_op(space: Space, shift: usize) -> Result<Self> {
        let p = space.period();
        Self::new(
            space,
            space,
            CMatrix::zeros(0, 0),
            shift as isize,
            CMatrix::identity(p, p),
        )
    }

    /// A finite-rank operator given by a matrix (columns padded to the period).
    pub fn finite(domain: Space, codomain: Space, block: &CMatrix) -> Self {
        let p = domain.period();
        let b = resized(block, block.nrows(), round_up(block.ncols(), p));
        Self::new(domain, codomain, b, 0, CMatrix::zeros(p, p)).expect("finite operator")
    }

    /// `P1` on `K`.
    pub fn p1() -> Self {
        let mut pat = CMatrix::zeros(2, 2);
        pat[(0, 0)] = ONE;
        Self::new(Space::K, Space::K, CMatrix::zeros(0, 0), 0, pat).unwrap()
    }

    /// `P2` on `K`.
    pub fn p2() -> Self {
        let mut pat = CMatrix::zeros(2, 2);
        pat[(1, 1)] = ONE;
        Self::new(Space::K, Space::K, CMatrix::zeros(0, 0), 0, pat).unwrap()
    }

    /// Orthogonal projection onto the span of orthonormal vectors.
    pub fn projector(space: Space, vectors: &[CVector]) -> Self {
        let len = vectors.iter().map(|v| v.len()).max().unwrap_or(0);
        let len = round_up(len, space.period());
        let mut m = CMatrix::zeros(len, len);
        for v in vectors {
            let v = linalg::resized_vec(v, len);
            m += &v * v.adjoint();
        }
        Self::finite(space, space, &m)
    }

    /// An operator on `K` given in real-basis coordinates.
    pub fn from_real_basis(block: &CMatrix, shift: isize, pattern: &CMatrix) -> Result<Self> {
        if block.ncols() % 2 != 0 {
            return Err(Error::Invalid(format!(
                "window_cols {} must be even",
                block.ncols()
            )));
        }
        if shift.rem_euclid(2) != 0 {
            return Err(Error::OddShift(shift));
        }
        if pattern.shape() != (2, 2) {
            return Err(Error::Dimension(format!(
                "tail pattern must be 2x2, got {:?}",
                pattern.shape()
            )));
        }
        let rows = round_up(block.nrows(), 2);
        let b = resized(block, rows, block.ncols());
        let wr = pair_unitary(rows);
        let wc = pair_unitary(block.ncols());
        let u = pair_unitary(2);
        let bf = wr.adjoint() * b * wc;
        let pf = u.adjoint() * pattern * &u;
        Self::new(Space::K, Space::K, bf, shift, pf)
    }

    /// `(block, shift, pattern)` in real-basis coordinates (operators on `K`).
    pub fn to_real_basis(&self) -> Result<(CMatrix, isize, CMatrix)> {
        self.expect_k("to_real_basis")?;
        let rows = round_up(self.block.nrows(), 2);
        let b = resized(&self.block, rows, self.cols);
        let wr = pair_unitary(rows);
        let wc = pair_unitary(self.cols);
        let u = pair_unitary(2);
        Ok((
            &wr * b * wc.adjoint(),
            self.shift,
            &u * &self.pattern * u.adjoint(),
        ))
    }

    fn expect_k(&self, op: &'static str) -> Result<()> {
        for s in [self.domain, self.codomain] {
            if s != Space::K {
                return Err(Error::SpaceMismatch {
                    op,
                    expected: Space::K,
                    found: s,
                });
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> Space {
        self.domain
    }
    pub fn codomain(&self) -> Space {
        self.codomain
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn rows(&self) -> usize {
        self.block.nrows()
    }
    pub fn shift(&self) -> isize {
        self.shift
    }
    pub fn pattern(&self) -> &CMatrix {
        &self.pattern
    }
    pub fn block(&self) -> &CMatrix {
        &self.block
    }
    pub fn period(&self) -> usize {
        self.domain.period()
    }

    pub fn tail_is_zero(&self) -> bool {
        self.pattern.iter().all(|z| *z == ZERO)
    }

    /// Matrix entry `<e_i, A e_j>`.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        if j < self.cols {
            if i < self.block.nrows() {
                self.block[(i, j)]
            } else {
                ZERO
            }
        } else {
            self.tail_entry(i, j)
        }
    }

    /// Entry of the tail formula applied to column `j`, whether or not `j`
    /// lies in the window. Zero where the formula would leave the space.
    fn tail_entry(&self, i: usize, j: usize) -> C64 {
        let p = self.period();
        let (a, r) = (j / p, j % p);
        let base = (a * p) as isize + self.shift;
        if base < 0 {
            return ZERO;
        }
        let d = i as isize - base;
        if d < 0 || d >= p as isize {
            return ZERO;
        }
        self.pattern[(d as usize, r)]
    }

    /// Dense `rows x cols` corner of the matrix.
    pub fn dense(&self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |i, j| self.entry(i, j))
    }

    /// Number of rows touched by columns `0..ncols`.
    fn support_rows(&self, ncols: usize) -> usize {
        let mut r = self.block.nrows();
        if ncols > self.cols && !self.tail_is_zero() {
            let top = round_up(ncols, self.period()) as isize + self.shift;
            r = r.max(top.max(0) as usize);
        }
        r
    }

    /// `A v` for a finitely supported vector.
    pub fn apply(&self, v: &CVector) -> CVector {
        let n = round_up(v.len(), self.period());
        let rows = self.support_rows(n);
        let mut out = CVector::zeros(rows);
        for j in 0..v.len() {
            let x = v[j];
            if x == ZERO {
                continue;
            }
            if j < self.cols {
                for i in 0..self.block.nrows() {
                    out[i] += self.block[(i, j)] * x;
                }
            } else if !self.tail_is_zero() {
                let p = self.period();
                let (a, r) = (j / p, j % p);
                let base = (a * p) as isize + self.shift;
                if base < 0 {
                    continue;
                }
                for s in 0..p {
                    out[base as usize + s] += self.pattern[(s, r)] * x;
                }
            }
        }
        out
    }

    /// Same operator with the window widened to at least `cols` columns.
    pub fn extended(&self, cols: usize) -> Self {
        let cols = round_up(cols, self.period());
        if cols <= self.cols {
            return self.clone();
        }
        let rows = self.support_rows(cols);
        FiniteTypeOp {
            block: self.dense(rows, cols),
            cols,
            ..self.clone()
        }
    }

    /// Drops trailing zero rows of the block.
    fn trimmed(mut self) -> Self {
        let mut r = self.block.nrows();
        while r > 0 && self.block.row(r - 1).iter().all(|z| *z == ZERO) {
            r -= 1;
        }
        if r < self.block.nrows() {
            self.block = resized(&self.block, r, self.cols);
        }
        self
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FiniteTypeOp) -> Result<Self> {
        if other.codomain != self.domain {
            return Err(Error::SpaceMismatch {
                op: "compose",
                expected: self.domain,
                found: other.codomain,
            });
        }
        let need = (self.cols as isize - other.shift).max(0) as usize;
        let b = other.extended(need.max(other.cols));
        let cols = b.cols;
        let images: Vec<CVector> = (0..cols)
            .map(|j| self.apply(&b.block.column(j).into_owned()))
            .collect();
        let rows = images.iter().map(|v| v.len()).max().unwrap_or(0);
        let block = CMatrix::from_fn(rows, cols, |i, j| {
            if i < images[j].len() {
                images[j][i]
            } else {
                ZERO
            }
        });
        let pattern = &self.pattern * &other.pattern;
        let op = Self::new(
            other.domain,
            self.codomain,
            block,
            self.shift + other.shift,
            pattern,
        )?;
        Ok(op.trimmed())
    }

    pub fn adjoint(&self) -> Self {
        let p = self.period();
        let t = self.shift;
        let reach = (self.cols as isize + t).max(0) as usize;
        let new_cols = round_up(self.block.nrows().max(reach), p);
        let new_rows = self.cols.max((new_cols as isize - t).max(0) as usize);
        let block = CMatrix::from_fn(new_rows, new_cols, |i, j| self.entry(j, i).conj());
        Self::new(
            self.codomain,
            self.domain,
            block,
            -t,
            self.pattern.adjoint(),
        )
        .expect("adjoint of a valid operator")
        .trimmed()
    }

    /// `Γ A Γ`, with the spaces `K1` and `K2` exchanged.
    pub fn gamma_conj(&self) -> Self {
        match self.domain {
            Space::K => {
                let rows = round_up(self.block.nrows(), 2);
                let block = CMatrix::from_fn(rows, self.cols, |i, j| {
                    let (ii, jj) = (i ^ 1, j ^ 1);
                    if ii < self.block.nrows() {
                        self.block[(ii, jj)].conj()
                    } else {
                        ZERO
                    }
                });
                let pattern = CMatrix::from_fn(2, 2, |s, r| self.pattern[(1 - s, 1 - r)].conj());
                FiniteTypeOp {
                    block,
                    pattern,
                    ..self.clone()
                }
                .trimmed()
            }
            _ => FiniteTypeOp {
                domain: self.domain.conjugate(),
                codomain: self.codomain.conjugate(),
                block: self.block.map(|z| z.conj()),
                pattern: self.pattern.map(|z| z.conj()),
                ..self.clone()
            },
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        let op = FiniteTypeOp {
            block: &self.block * s,
            pattern: &self.pattern * s,
            ..self.clone()
        };
        if op.tail_is_zero() {
            FiniteTypeOp { shift: 0, ..op }
        } else {
            op
        }
    }

    fn combine(&self, other: &FiniteTypeOp, sign: f64) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::SpaceMismatch {
                op: "add",
                expected: self.domain,
                found: other.domain,
            });
        }
        let shift = if self.tail_is_zero() {
            other.shift
        } else if other.tail_is_zero() || self.shift == other.shift {
            self.shift
        } else {
            return Err(Error::TailMismatch {
                op: "add",
                left: self.shift,
                right: other.shift,
            });
        };
        let cols = self.cols.max(other.cols);
        let a = self.extended(cols);
        let b = other.extended(cols);
        let rows = a.block.nrows().max(b.block.nrows());
        let block = resized(&a.block, rows, cols)
            + resized(&b.block, rows, cols) * C64::new(sign, 0.0);
        let pattern = &self.pattern + &other.pattern * C64::new(sign, 0.0);
        Ok(Self::new(self.domain, self.codomain, block, shift, pattern)?.trimmed())
    }

    pub fn add(&self, other: &FiniteTypeOp) -> Result<Self> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &FiniteTypeOp) -> Result<Self> {
        self.combine(other, -1.0)
    }

    /// `(P1 A P1, P1 A P2, P2 A P1, P2 A P2)` as operators between `K1`, `K2`.
    pub fn components(&self) -> Result<[FiniteTypeOp; 4]> {
        self.expect_k("components")?;
        let rows = self.block.nrows().div_ceil(2);
        let cols = self.cols / 2;
        let mk = |s: usize, r: usize, dom: Space, cod: Space| {
            let block =
                CMatrix::from_fn(rows, cols, |a, b| self.block_entry(2 * a + s, 2 * b + r));
            let pat = CMatrix::from_element(1, 1, self.pattern[(s, r)]);
            Self::new(dom, cod, block, self.shift / 2, pat)
                .expect("component of a valid operator")
                .trimmed()
        };
        Ok([
            mk(0, 0, Space::K1, Space::K1),
            mk(0, 1, Space::K2, Space::K1),
            mk(1, 0, Space::K1, Space::K2),
            mk(1, 1, Space::K2, Space::K2),
        ])
    }

    fn block_entry(&self, i: usize, j: usize) -> C64 {
        if i < self.block.nrows() && j < self.cols {
            self.block[(i, j)]
        } else {
            ZERO
        }
    }

    /// Reassembles an operator on `K` from its four components.
    pub fn from_components(
        a11: &FiniteTypeOp,
        a12: &FiniteTypeOp,
        a21: &FiniteTypeOp,
        a22: &FiniteTypeOp,
    ) -> Result<Self> {
        let expect = [
            (a11, Space::K1, Space::K1),
            (a12, Space::K2, Space::K1),
            (a21, Space::K1, Space::K2),
            (a22, Space::K2, Space::K2),
        ];
        for (op, d, c) in expect {
            if op.domain != d {
                return Err(Error::SpaceMismatch {
                    op: "from_components",
                    expected: d,
                    found: op.domain,
                });
            }
            if op.codomain != c {
                return Err(Error::SpaceMismatch {
                    op: "from_components",
                    expected: c,
                    found: op.codomain,
                });
            }
        }
        let parts = [a11, a12, a21, a22];
        let mut shift: Option<isize> = None;
        for op in parts {
            if !op.tail_is_zero() {
                match shift {
                    None => shift = Some(op.shift),
                    Some(s) if s != op.shift => {
                        return Err(Error::TailMismatch {
                            op: "from_components",
                            left: s,
                            right: op.shift,
                        })
                    }
                    _ => {}
                }
            }
        }
        let shift = shift.unwrap_or(0);
        let c = parts.iter().map(|o| o.cols).max().unwrap();
        let ext: Vec<FiniteTypeOp> = parts.iter().map(|o| o.extended(c)).collect();
        let r = ext.iter().map(|o| o.block.nrows()).max().unwrap();
        let mut block = CMatrix::zeros(2 * r, 2 * c);
        let mut pattern = CMatrix::zeros(2, 2);
        for (k, op) in ext.iter().enumerate() {
            let (s, t) = (k / 2, k % 2);
            for a in 0..op.block.nrows() {
                for b in 0..c {
                    block[(2 * a + s, 2 * b + t)] = op.block[(a, b)];
                }
            }
            pattern[(s, t)] = op.pattern[(0, 0)];
        }
        Ok(Self::new(Space::K, Space::K, block, 2 * shift, pattern)?.trimmed())
    }

    /// Embeds an operator between `K1`/`K2` into `K`, zero elsewhere.
    pub fn embed(&self) -> Result<Self> {
        let z = |d, c| FiniteTypeOp::zero(d, c);
        let (k1, k2) = (Space::K1, Space::K2);
        match (self.domain, self.codomain) {
            (Space::K1, Space::K1) => Self::from_components(self, &z(k2, k1), &z(k1, k2), &z(k2, k2)),
            (Space::K2, Space::K1) => Self::from_components(&z(k1, k1), self, &z(k1, k2), &z(k2, k2)),
            (Space::K1, Space::K2) => Self::from_components(&z(k1, k1), &z(k2, k1), self, &z(k2, k2)),
            (Space::K2, Space::K2) => Self::from_components(&z(k1, k1), &z(k2, k1), &z(k1, k2), self),
            _ => Ok(self.clone()),
        }
    }

    /// `A - T` where `T` is the pure tail formula applied to every column.
    pub fn finite_rank_part(&self) -> Self {
        let rows = self.support_rows(self.cols);
        let reach = (self.cols as isize + self.shift).max(0) as usize;
        let rows = rows.max(reach);
        let block =
            CMatrix::from_fn(rows, self.cols, |i, j| self.block_entry(i, j) - self.tail_entry(i, j));
        Self::new(
            self.domain,
            self.codomain,
            block,
            0,
            CMatrix::zeros(self.period(), self.period()),
        )
        .unwrap()
        .trimmed()
    }

    /// Frobenius norm; only defined for finite-rank operators.
    pub fn hs_norm(&self) -> Result<f64> {
        if !self.tail_is_zero() {
            return Err(Error::NotFiniteRank { op: "hs_norm" });
        }
        Ok(self.block.norm())
    }

    /// Trace; only defined for finite-rank operators between equal spaces.
    pub fn trace(&self) -> Result<C64> {
        if !self.tail_is_zero() {
            return Err(Error::NotFiniteRank { op: "trace" });
        }
        let n = self.block.nrows().min(self.cols);
        Ok((0..n).map(|i| self.block[(i, i)]).sum())
    }

    /// Rank; only defined for finite-rank operators.
    pub fn rank(&self) -> Result<usize> {
        if !self.tail_is_zero() {
            return Err(Error::NotFiniteRank { op: "rank" });
        }
        Ok(linalg::rank(&self.block))
    }

    fn identity_tail(&self) -> bool {
        self.shift == 0
            && max_abs(&(&self.pattern - CMatrix::identity(self.period(), self.period())))
                <= IDENTITY_TOL
    }

    /// Square window outside of which `1 + F` acts as the identity.
    fn identity_window(&self) -> usize {
        round_up(self.block.nrows().max(self.cols), self.period())
    }

    /// Fredholm determinant of an operator of the form `1 + finite rank`.
    pub fn det_one_plus(&self) -> Result<C64> {
        if !self.identity_tail() || self.domain != self.codomain {
            return Err(Error::NotFiniteRank { op: "det_one_plus" });
        }
        let w = self.identity_window();
        if w == 0 {
            return Ok(ONE);
        }
        Ok(self.dense(w, w).determinant())
    }

    /// `f(A)` for a selfadjoint `A = 1 + finite rank`; `f(1)` must be `1`.
    pub fn hermitian_fn_one_plus(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !self.identity_tail() || self.domain != self.codomain {
            return Err(Error::NotFiniteRank {
                op: "hermitian_fn_one_plus",
            });
        }
        if (f(1.0) - 1.0).abs() > 1e-14 {
            return Err(Error::Invalid("function must fix 1".into()));
        }
        let w = self.identity_window();
        let m = linalg::hermitian_fn(&self.dense(w, w), f);
        Ok(Self::new(
            self.domain,
            self.codomain,
            m,
            0,
            CMatrix::identity(self.period(), self.period()),
        )?
        .trimmed())
    }

    /// Window width `C'` and the dense block `A'` of size `(C' + t) x C'` such
    /// that `A = A' ⊕ (invertible tail)` with disjoint ranges.
    fn split(&self, min_cols: usize) -> Result<(usize, CMatrix)> {
        let det = self.pattern.determinant();
        if self.tail_is_zero() || det.norm() < 1e-12 {
            return Err(Error::NotBlockShift(
                "tail pattern is not invertible".into(),
            ));
        }
        let bound = (self.block.nrows() as isize - self.shift).max(0) as usize;
        let c = round_up(self.cols.max(bound).max(min_cols), self.period());
        let r = (c as isize + self.shift) as usize;
        Ok((c, self.dense(r, c)))
    }

    /// Moore-Penrose pseudo-inverse (requires an invertible tail pattern).
    pub fn pseudo_inverse(&self) -> Result<Self> {
        let (_, a) = self.split(0)?;
        let inv = self
            .pattern
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::NotBlockShift("tail pattern is singular".into()))?;
        Ok(Self::new(self.codomain, self.domain, linalg::pinv(&a), -self.shift, inv)?.trimmed())
    }

    fn kernel_window(&self) -> usize {
        self.cols + self.shift.unsigned_abs() + 4
    }

    /// Orthonormal basis of `ker A`.
    pub fn kernel_basis(&self) -> Result<Vec<CVector>> {
        let (_, a) = self.split(self.kernel_window())?;
        Ok(linalg::null_space(&a))
    }

    /// Orthonormal basis of `ker A*`.
    pub fn cokernel_basis(&self) -> Result<Vec<CVector>> {
        let (_, a) = self.split(self.kernel_window())?;
        Ok(linalg::null_space(&a.adjoint()))
    }

    /// `dim ker A - dim ker A*`.
    pub fn fredholm_index(&self) -> Result<isize> {
        Ok(self.kernel_basis()?.len() as isize - self.cokernel_basis()?.len() as isize)
    }

    /// Partial isometry of the polar decomposition (requires an invertible
    /// tail pattern, which is then replaced by its unitary part).
    pub fn polar_isometry(&self) -> Result<Self> {
        let (_, a) = self.split(0)?;
        let w = linalg::polar_isometry(&a);
        let tau = linalg::polar_isometry(&self.pattern);
        Ok(Self::new(self.domain, self.codomain, w, self.shift, tau)?.trimmed())
    }

    /// Largest entry of `A - B` over a window covering both; infinite when the
    /// tails disagree.
    pub fn max_abs_diff(&self, other: &FiniteTypeOp) -> f64 {
        if self.domain != other.domain || self.codomain != other.codomain {
            return f64::INFINITY;
        }
        match self.sub(other) {
            Ok(d) => max_abs(&d.block).max(max_abs(&d.pattern)),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn approx_eq(&self, other: &FiniteTypeOp, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Operator norm of a finite-rank operator.
    pub fn finite_norm(&self) -> Result<f64> {
        if !self.tail_is_zero() {
            return Err(Error::NotFiniteRank { op: "finite_norm" });
        }
        Ok(linalg::spectral_norm(&self.block))
    }
}

/// Block-diagonal unitary whose pair columns are `f_n`, `Γ f_n` in real
/// coordinates.
fn pair_unitary(n: usize) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMatrix::zeros(n, n);
    for p in 0..n / 2 {
        m[(2 * p, 2 * p)] = C64::new(s, 0.0);
        m[(2 * p, 2 * p + 1)] = C64::new(s, 0.0);
        m[(2 * p + 1, 2 * p)] = C64::new(0.0, -s);
        m[(2 * p + 1, 2 * p + 1)] = C64::new(0.0, s);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn sample() -> FiniteTypeOp {
        let block = CMatrix::from_fn(5, 3, |i, j| c(i as f64 - j as f64, 0.3 * (i + j) as f64));
        FiniteTypeOp::new(Space::K1, Space::K1, block, 2, CMatrix::from_element(1, 1, c(0.0, 1.0)))
            .unwrap()
    }

    #[test]
    fn compose_matches_dense_window() {
        let a = sample();
        let b = a.adjoint();
        let ab = a.compose(&b).unwrap();
        let n = 12;
        let big = 20;
        let lhs = ab.dense(n, n);
        let rhs = (a.dense(n, big) * b.dense(big, n)).resize(n, n, ZERO);
        assert!(max_abs(&(lhs - rhs)) < 1e-13);
    }

    #[test]
    fn adjoint_is_conjugate_transpose() {
        let a = sample();
        let d = a.adjoint().dense(15, 15);
        assert!(max_abs(&(d - a.dense(15, 15).adjoint())) < 1e-15);
    }

    #[test]
    fn pinv_and_kernels() {
        let a = sample();
        let p = a.pseudo_inverse().unwrap();
        let apa = a.compose(&p).unwrap().compose(&a).unwrap();
        assert!(apa.approx_eq(&a, 1e-10));
        // index of a shift by 2 plus block is -2 up to kernel
        let ind = a.fredholm_index().unwrap();
        assert_eq!(ind, -2);
    }

    #[test]
    fn real_basis_round_trip() {
        let block = CMatrix::from_fn(4, 2, |i, j| c((i + 2 * j) as f64, 0.0));
        let pat = CMatrix::from_fn(2, 2, |i, j| c(if i == j { 1.0 } else { 0.0 }, 0.0));
        let op = FiniteTypeOp::from_real_basis(&block, 2, &pat).unwrap();
        let (b2, t, p2) = op.to_real_basis().unwrap();
        assert_eq!(t, 2);
        assert!(max_abs(&(resized(&b2, 4, 2) - block)) < 1e-14);
        assert!(max_abs(&(p2 - pat)) < 1e-14);
        // real operator commutes with Γ
        assert!(op.gamma_conj().approx_eq(&op, 1e-14));
    }

    #[test]
    fn components_round_trip() {
        let block = CMatrix::from_fn(6, 4, |i, j| c((i * j) as f64 * 0.1, (i as f64) - 1.0));
        let pat = CMatrix::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 1.0));
        let op = FiniteTypeOp::new(Space::K, Space::K, block, 2, pat).unwrap();
        let [a, b, cc, d] = op.components().unwrap();
        let back = FiniteTypeOp::from_components(&a, &b, &cc, &d).unwrap();
        assert!(back.approx_eq(&op, 1e-15));
    }

    #[test]
    fn finite_rank_part_and_det() {
        let id = FiniteTypeOp::identity(Space::K);
        let f = FiniteTypeOp::finite(Space::K, Space::K, &CMatrix::from_element(2, 2, c(0.5, 0.0)));
        let op = id.add(&f).unwrap();
        assert!((op.det_one_plus().unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        assert!(op.finite_rank_part().approx_eq(&f, 1e-15));
    }
}
