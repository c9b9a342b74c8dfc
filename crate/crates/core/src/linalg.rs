//! Right quaternionic vector spaces, their complex representations, and the
//! orthonormalization toolkit.
//!
//! Vectors in `ℍⁿ` form a **right** ℍ-module: scalars act on the right,
//! `x ↦ x·q`. The inner product used throughout is
//!
//! ```text
//! ⟨x, y⟩ = Σ conj(yₙ) · xₙ
//! ```
//!
//! which is right-linear in the first argument (`⟨x·p, y⟩ = ⟨x, y⟩·p`) and
//! conjugate-right-linear in the second (`⟨x, y·p⟩ = conj(p)·⟨x, y⟩`).
//!
//! Writing every entry through the symplectic split `a = z1 + j·z2` sends a
//! vector `x = x1 + j·x2` to the stacked complex column `x_ℂ = (x1; x2)` and
//! an operator `A = A1 + j·A2` to the block matrix
//!
//! ```text
//! A_ℂ = [ A1   -conj(A2) ]
//!       [ A2    conj(A1) ]
//! ```
//!
//! This is a *-homomorphism — `(AB)_ℂ = A_ℂ·B_ℂ`, `(A*)_ℂ = (A_ℂ)ᴴ`,
//! `(Ax)_ℂ = A_ℂ·x_ℂ` — and it maps right multiplication by a complex scalar
//! to ordinary scalar multiplication. It is the bridge every spectral
//! computation in this crate crosses to reach classical complex linear
//! algebra.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numeric;
use crate::quaternion::Quaternion;

// ── Complex dense matrices ──────────────────────────────────────────────────

/// Dense complex matrix, row-major.
///
/// This is the workhorse type on the complex side of the representation;
/// products are hand-rolled, factorizations are delegated to the numeric
/// kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        CMatrix {
            nrows,
            ncols,
            data: vec![Complex64::new(0.0, 0.0); nrows * ncols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    pub fn from_fn(
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in 0..nrows {
            for c in 0..ncols {
                data.push(f(r, c));
            }
        }
        CMatrix { nrows, ncols, data }
    }

    /// Builds a matrix from explicit rows (all rows must share a length).
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "row {i} has inconsistent length");
        }
        CMatrix {
            nrows,
            ncols,
            data: rows.concat(),
        }
    }

    /// Number of rows.
    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Number of columns.
    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Entry at `(r, c)`.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.ncols + c]
    }

    /// Sets the entry at `(r, c)`.
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.ncols + c] = v;
    }

    /// Iterator over all entries (row-major).
    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.data.iter()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.ncols, self.nrows, |r, c| self.get(c, r).conj())
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.nrows).map(|r| self.get(r, c)).collect()
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.ncols, x.len(), "matrix-vector dimension mismatch");
        let mut y = Vec::with_capacity(self.nrows);
        for row in self.data.chunks_exact(self.ncols) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            y.push(acc);
        }
        y
    }

    /// Entrywise difference `self - other`.
    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        }
    }

    /// Entrywise sum `self + other`.
    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        }
    }

    /// Scales every entry by a complex factor.
    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Operator 2-norm (largest singular value).
    pub fn op_norm(&self) -> Result<f64> {
        Ok(numeric::singular_values(self)?
            .first()
            .copied()
            .unwrap_or(0.0))
    }
}

impl std::ops::Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(
            self.ncols, rhs.nrows,
            "matrix product dimension mismatch ({}×{} · {}×{})",
            self.nrows, self.ncols, rhs.nrows, rhs.ncols
        );
        let mut out = CMatrix::zeros(self.nrows, rhs.ncols);
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.ncols..(k + 1) * rhs.ncols];
                let out_row = &mut out.data[r * rhs.ncols..(r + 1) * rhs.ncols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

/// Complex inner product `⟨u, v⟩ = Σ conj(vᵢ)·uᵢ` (conjugation on the second
/// argument, matching the quaternionic convention).
pub fn c_inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    assert_eq!(u.len(), v.len(), "inner product dimension mismatch");
    u.iter().zip(v).map(|(a, b)| b.conj() * a).sum()
}

/// Euclidean norm of a complex vector.
pub fn c_norm(u: &[Complex64]) -> f64 {
    u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

// ── Quaternionic vectors ────────────────────────────────────────────────────

/// Column vector over ℍ (an element of the right module `ℍⁿ`).
#[derive(Debug, Clone, PartialEq)]
pub struct QVector {
    /// The entries, index 0 first.
    pub entries: Vec<Quaternion>,
}

impl QVector {
    /// Wraps a list of entries.
    pub fn new(entries: Vec<Quaternion>) -> Self {
        QVector { entries }
    }

    /// Zero vector of length `n`.
    pub fn zeros(n: usize) -> Self {
        QVector {
            entries: vec![Quaternion::ZERO; n],
        }
    }

    /// Standard basis vector `e_i` (0-based) of length `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i < n, "basis index {i} out of range for length {n}");
        let mut v = QVector::zeros(n);
        v.entries[i] = Quaternion::ONE;
        v
    }

    /// Number of entries.
    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when the vector has no entries.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Right scalar action `x·q`, entrywise `xₙ·q`.
    pub fn scale_right(&self, q: Quaternion) -> QVector {
        QVector {
            entries: self.entries.iter().map(|&e| e * q).collect(),
        }
    }

    /// Real scaling.
    pub fn scale(&self, s: f64) -> QVector {
        QVector {
            entries: self.entries.iter().map(|&e| e * s).collect(),
        }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.len(), other.len(), "vector sum dimension mismatch");
        QVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(
            self.len(),
            other.len(),
            "vector difference dimension mismatch"
        );
        QVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// Inner product `⟨self, other⟩ = Σ conj(otherₙ)·selfₙ`.
    pub fn inner(&self, other: &QVector) -> Quaternion {
        assert_eq!(self.len(), other.len(), "inner product dimension mismatch");
        let mut acc = Quaternion::ZERO;
        for (&a, &b) in self.entries.iter().zip(&other.entries) {
            acc += b.conj() * a;
        }
        acc
    }

    /// Squared norm `⟨x, x⟩` (exactly real).
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    /// Norm `|x|`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest componentwise deviation from `other`.
    pub fn max_abs_diff(&self, other: &QVector) -> f64 {
        assert_eq!(self.len(), other.len(), "comparison dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }

    /// Stacked complex representation `x_ℂ = (x1; x2)` of length `2n`.
    pub fn complexify(&self) -> Vec<Complex64> {
        let n = self.len();
        let mut out = Vec::with_capacity(2 * n);
        for e in &self.entries {
            out.push(e.complex_parts().0);
        }
        for e in &self.entries {
            out.push(e.complex_parts().1);
        }
        out
    }

    /// Inverse of [`QVector::complexify`]; the input length must be even.
    pub fn from_complexified(v: &[Complex64]) -> Result<QVector> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "complexified vector length {} is odd",
                v.len()
            )));
        }
        let n = v.len() / 2;
        Ok(QVector {
            entries: (0..n)
                .map(|i| Quaternion::from_complex_parts(v[i], v[n + i]))
                .collect(),
        })
    }
}

// ── Quaternionic matrices ───────────────────────────────────────────────────

/// Dense matrix over ℍ acting on column vectors from the left,
/// `(Ax)ᵣ = Σ_c A[r][c]·x_c` (entries multiply from the left so the action
/// commutes with the right scalar structure).
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    /// Zero matrix.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix {
            nrows,
            ncols,
            data: vec![Quaternion::ZERO; nrows * ncols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quaternion::ONE);
        }
        m
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    pub fn from_fn(
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in 0..nrows {
            for c in 0..ncols {
                data.push(f(r, c));
            }
        }
        QMatrix { nrows, ncols, data }
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(diag: &[Quaternion]) -> Self {
        let n = diag.len();
        let mut m = QMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Number of rows.
    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Number of columns.
    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Entry at `(r, c)`.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        self.data[r * self.ncols + c]
    }

    /// Sets the entry at `(r, c)`.
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Quaternion) {
        self.data[r * self.ncols + c] = v;
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.ncols, self.nrows, |r, c| self.get(c, r).conj())
    }

    /// Matrix–vector product `Ax`.
    pub fn mul_vec(&self, x: &QVector) -> QVector {
        assert_eq!(self.ncols, x.len(), "matrix-vector dimension mismatch");
        let mut out = QVector::zeros(self.nrows);
        for r in 0..self.nrows {
            let mut acc = Quaternion::ZERO;
            for c in 0..self.ncols {
                acc += self.get(r, c) * x.entries[c];
            }
            out.entries[r] = acc;
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "shape mismatch"
        );
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "shape mismatch"
        );
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// Real scaling.
    pub fn scale(&self, s: f64) -> QMatrix {
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    /// Right scalar action `A·(I·q)`: every entry is multiplied by `q` on
    /// the right.
    pub fn scale_right(&self, q: Quaternion) -> QMatrix {
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|&a| a * q).collect(),
        }
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Complex representation (block matrix over ℂ).
    pub fn complex_rep(&self) -> ComplexRep {
        let (nr, nc) = (self.nrows, self.ncols);
        let mut m = CMatrix::zeros(2 * nr, 2 * nc);
        for r in 0..nr {
            for c in 0..nc {
                let (z1, z2) = self.get(r, c).complex_parts();
                m.set(r, c, z1);
                m.set(r, nc + c, -z2.conj());
                m.set(nr + r, c, z2);
                m.set(nr + r, nc + c, z1.conj());
            }
        }
        ComplexRep {
            qrows: nr,
            qcols: nc,
            mat: m,
        }
    }

    /// Operator 2-norm via the complex representation.
    pub fn op_norm(&self) -> Result<f64> {
        self.complex_rep().mat.op_norm()
    }
}

impl std::ops::Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(
            self.ncols, rhs.nrows,
            "matrix product dimension mismatch ({}×{} · {}×{})",
            self.nrows, self.ncols, rhs.nrows, rhs.ncols
        );
        let mut out = QMatrix::zeros(self.nrows, rhs.ncols);
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(r, k);
                if a == Quaternion::ZERO {
                    continue;
                }
                for c in 0..rhs.ncols {
                    let t = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, t);
                }
            }
        }
        out
    }
}

// ── Complex representation ──────────────────────────────────────────────────

/// The complex representation of a quaternionic matrix: a `2m × 2n` complex
/// block matrix `[[A1, -conj(A2)], [A2, conj(A1)]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRep {
    /// Quaternionic row count (`mat` has `2·qrows` rows).
    pub qrows: usize,
    /// Quaternionic column count (`mat` has `2·qcols` columns).
    pub qcols: usize,
    /// The underlying complex matrix.
    pub mat: CMatrix,
}

impl ComplexRep {
    /// Reconstructs the quaternionic matrix, verifying the block structure.
    ///
    /// The top-left/bottom-left blocks define the entries (this direction is
    /// exact, bit for bit, on representations produced by
    /// [`QMatrix::complex_rep`]); the remaining blocks are checked for
    /// consistency within `tol` (absolute, per entry) and
    /// [`Error::NotQuaternionic`] is returned on violation.
    pub fn to_qmatrix(&self, tol: f64) -> Result<QMatrix> {
        let (nr, nc) = (self.qrows, self.qcols);
        if self.mat.nrows() != 2 * nr || self.mat.ncols() != 2 * nc {
            return Err(Error::DimensionMismatch(format!(
                "complex representation of a {nr}×{nc} matrix must be {}×{}, got {}×{}",
                2 * nr,
                2 * nc,
                self.mat.nrows(),
                self.mat.ncols()
            )));
        }
        let mut out = QMatrix::zeros(nr, nc);
        for r in 0..nr {
            for c in 0..nc {
                let z1 = self.mat.get(r, c);
                let z2 = self.mat.get(nr + r, c);
                let tr = self.mat.get(r, nc + c);
                let br = self.mat.get(nr + r, nc + c);
                if (tr + z2.conj()).norm() > tol || (br - z1.conj()).norm() > tol {
                    return Err(Error::NotQuaternionic(format!(
                        "block consistency fails at quaternionic entry ({r}, {c})"
                    )));
                }
                out.set(r, c, Quaternion::from_complex_parts(z1, z2));
            }
        }
        Ok(out)
    }
}

/// Complexification of the right action by `j`: for `x_ℂ = (α; β)` the
/// vector `(x·j)_ℂ` is `(-conj(β); conj(α))`.
pub fn complexified_j_action(xc: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(xc.len() % 2, 0, "complexified vector length must be even");
    let (alpha, beta) = xc.split_at(xc.len() / 2);
    let mut out = Vec::with_capacity(xc.len());
    out.extend(beta.iter().map(|b| -b.conj()));
    out.extend(alpha.iter().map(|a| a.conj()));
    out
}

// ── Orthonormalization ──────────────────────────────────────────────────────

/// Result of quaternionic Gram–Schmidt: the orthonormal basis together with
/// the elimination data needed to replay the exact same transformation on a
/// second family of vectors.
#[derive(Debug, Clone)]
pub struct GramSchmidtQ {
    /// Orthonormal vectors, one per input.
    pub basis: Vec<QVector>,
    /// `coeffs[i][k] = ⟨wᵢ, e_k⟩` subtracted during the modified
    /// Gram–Schmidt sweep for input `i` (so `vᵢ = Σ e_k·coeffs[i][k] + eᵢ·rᵢ`).
    pub coeffs: Vec<Vec<Quaternion>>,
    /// Normalization constants `rᵢ` (norm of the orthogonal remainder).
    pub norms: Vec<f64>,
}

impl GramSchmidtQ {
    /// Replays the recorded elimination on another family of the same size,
    /// *reusing* the stored coefficients and normalizers. When the second
    /// family has the same Gram matrix as the first, the result is the
    /// corresponding orthonormal basis; otherwise the output is not
    /// orthonormal, which callers can detect.
    pub fn replay(&self, vs: &[QVector]) -> Result<Vec<QVector>> {
        if vs.len() != self.basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "replay needs {} vectors, got {}",
                self.basis.len(),
                vs.len()
            )));
        }
        let mut out: Vec<QVector> = Vec::with_capacity(vs.len());
        for (i, v) in vs.iter().enumerate() {
            let mut w = v.clone();
            for (k, e) in out.iter().enumerate() {
                w = w.sub(&e.scale_right(self.coeffs[i][k]));
            }
            out.push(w.scale(1.0 / self.norms[i]));
        }
        Ok(out)
    }
}

/// Modified Gram–Schmidt over ℍ with right-acting coefficients.
///
/// Each step subtracts `e_k·⟨w, e_k⟩` (coefficient on the right, so the
/// projection respects the right module structure) and normalizes. A vector
/// whose orthogonal remainder drops below `tol` relative to its own norm is
/// reported as [`Error::DependentInput`].
pub fn gram_schmidt_q(vs: &[QVector], tol: f64) -> Result<GramSchmidtQ> {
    let mut basis: Vec<QVector> = Vec::with_capacity(vs.len());
    let mut coeffs = Vec::with_capacity(vs.len());
    let mut norms = Vec::with_capacity(vs.len());
    for (i, v) in vs.iter().enumerate() {
        let vnorm = v.norm();
        let mut w = v.clone();
        let mut cs = Vec::with_capacity(basis.len());
        for e in &basis {
            let c = w.inner(e);
            w = w.sub(&e.scale_right(c));
            cs.push(c);
        }
        let r = w.norm();
        if r <= tol * vnorm.max(f64::MIN_POSITIVE) {
            return Err(Error::DependentInput {
                index: i,
                residual: if vnorm > 0.0 { r / vnorm } else { 0.0 },
            });
        }
        basis.push(w.scale(1.0 / r));
        coeffs.push(cs);
        norms.push(r);
    }
    Ok(GramSchmidtQ {
        basis,
        coeffs,
        norms,
    })
}

/// Greedy orthonormal spanning subset: runs the same sweep as
/// [`gram_schmidt_q`] but *skips* dependent vectors instead of failing.
/// Returns the orthonormal vectors together with the indices they came from.
pub fn span_filter(vs: &[QVector], tol: f64) -> (Vec<QVector>, Vec<usize>) {
    let mut basis: Vec<QVector> = Vec::new();
    let mut picked = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let vnorm = v.norm();
        if vnorm == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for e in &basis {
            let c = w.inner(e);
            w = w.sub(&e.scale_right(c));
        }
        let r = w.norm();
        if r > tol * vnorm {
            basis.push(w.scale(1.0 / r));
            picked.push(i);
        }
    }
    (basis, picked)
}

/// Quaternionic rank of a family of vectors, decided on the complex side.
///
/// Each vector contributes the two complex columns `v_ℂ` and `(v·j)_ℂ`; the
/// ℍ-rank is half the complex rank of the assembled matrix (singular values
/// above `tol·σ_max` are counted, and the count must be even).
pub fn h_rank(vs: &[QVector], tol: f64) -> Result<usize> {
    if vs.is_empty() {
        return Ok(0);
    }
    let n = vs[0].len();
    for v in vs {
        assert_eq!(v.len(), n, "h_rank inputs must share a length");
    }
    let mut m = CMatrix::zeros(2 * n, 2 * vs.len());
    for (c, v) in vs.iter().enumerate() {
        let vc = v.complexify();
        let vj = complexified_j_action(&vc);
        for r in 0..2 * n {
            m.set(r, 2 * c, vc[r]);
            m.set(r, 2 * c + 1, vj[r]);
        }
    }
    let sigma = numeric::singular_values(&m)?;
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return Ok(0);
    }
    let count = sigma.iter().filter(|&&s| s > tol * sigma_max).count();
    if count % 2 != 0 {
        return Err(Error::OddKernelCount { count, tol });
    }
    Ok(count / 2)
}

/// Minimum-norm right inverse of a complex matrix: the Moore–Penrose
/// pseudo-inverse with singular values below `rel_cutoff·σ_max` discarded.
pub fn min_norm_right_inverse(m: &CMatrix, rel_cutoff: f64) -> Result<CMatrix> {
    Ok(numeric::pinv(m, rel_cutoff)?.mat)
}

// ── Random unitaries ────────────────────────────────────────────────────────

/// Deterministic pseudo-random quaternionic unitary built from three
/// Householder reflections `I - 2·u·u*/|u|²` and a diagonal of random unit
/// quaternions. The same `(n, seed)` pair always yields the same matrix.
pub fn householder_random_unitary(n: usize, seed: u64) -> QMatrix {
    assert!(n > 0, "unitary size must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut normal = || -> f64 { rng.sample(StandardNormal) };
    let random_vector = |m: &mut dyn FnMut() -> f64| {
        QVector::new(
            (0..n)
                .map(|_| Quaternion::new(m(), m(), m(), m()))
                .collect(),
        )
    };

    let mut u_mat = QMatrix::identity(n);
    for _ in 0..3 {
        let u = random_vector(&mut normal);
        let n2 = u.norm_sqr();
        // H = I - (2/|u|²)·u·u*, with (u u*)[a][b] = u_a·conj(u_b).
        let h = QMatrix::from_fn(n, n, |r, c| {
            let outer = u.entries[r] * u.entries[c].conj() * (2.0 / n2);
            if r == c {
                Quaternion::ONE - outer
            } else {
                -outer
            }
        });
        u_mat = &h * &u_mat;
    }
    let phases: Vec<Quaternion> = (0..n)
        .map(|_| {
            let q = Quaternion::new(normal(), normal(), normal(), normal());
            if q.norm() > 1e-6 {
                q / q.norm()
            } else {
                Quaternion::ONE
            }
        })
        .collect();
    &u_mat * &QMatrix::diagonal(&phases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    fn sample_vec() -> QVector {
        QVector::new(vec![
            q(1.0, -0.5, 0.25, 2.0),
            q(0.0, 1.0, -1.0, 0.5),
            q(2.0, 0.0, 0.0, -1.0),
        ])
    }

    #[test]
    fn inner_product_linearity_sides() {
        let x = sample_vec();
        let y = QVector::new(vec![
            q(0.5, 1.0, 0.0, 0.0),
            q(1.0, 0.0, -2.0, 1.0),
            q(0.0, 0.0, 1.0, 1.0),
        ]);
        let p = q(0.3, -0.7, 1.1, 0.2);
        // Right-linearity in the first slot.
        assert_abs_diff_eq!(x.scale_right(p).inner(&y), x.inner(&y) * p, epsilon = 1e-12);
        // Conjugate-linearity in the second slot.
        assert_abs_diff_eq!(
            x.inner(&y.scale_right(p)),
            p.conj() * x.inner(&y),
            epsilon = 1e-12
        );
        // Hermitian symmetry.
        assert_abs_diff_eq!(x.inner(&y), y.inner(&x).conj(), epsilon = 1e-12);
    }

    #[test]
    fn complexified_vectors_preserve_inner_products() {
        let x = sample_vec();
        let y = QVector::new(vec![
            q(0.1, 0.2, 0.3, 0.4),
            q(-1.0, 0.5, 0.0, 2.0),
            q(0.0, 1.0, 1.0, 0.0),
        ]);
        let (z1, _z2) = {
            let ip = x.inner(&y);
            ip.complex_parts()
        };
        let xc = x.complexify();
        let yc = y.complexify();
        let cip = c_inner(&xc, &yc);
        assert!((cip - z1).norm() < 1e-12, "complex part of ⟨x,y⟩ survives");
        assert_abs_diff_eq!(c_norm(&xc), x.norm(), epsilon = 1e-12);
    }

    #[test]
    fn complex_rep_is_a_homomorphism_small() {
        let a = QMatrix::from_fn(2, 2, |r, c| q(r as f64, c as f64 + 0.5, 1.0, -0.25));
        let b = QMatrix::from_fn(2, 2, |r, c| q(1.0 - r as f64, 0.5, c as f64, 0.75));
        let ab = &a * &b;
        let prod = &a.complex_rep().mat * &b.complex_rep().mat;
        assert!(ab.complex_rep().mat.sub(&prod).max_abs() < 1e-12);
        // Adjoints map to adjoints.
        assert!(
            a.adjoint()
                .complex_rep()
                .mat
                .sub(&a.complex_rep().mat.adjoint())
                .max_abs()
                < 1e-15
        );
    }

    #[test]
    fn complex_rep_round_trip_is_exact() {
        let a = QMatrix::from_fn(3, 2, |r, c| q(0.1 * r as f64, -1.7, 0.3 * c as f64, 2.2));
        let back = a.complex_rep().to_qmatrix(0.0).unwrap();
        assert_eq!(a, back, "round trip must be bitwise exact");
    }

    #[test]
    fn broken_block_structure_is_rejected() {
        let a = QMatrix::identity(2);
        let mut rep = a.complex_rep();
        let v = rep.mat.get(0, 2);
        rep.mat.set(0, 2, v + Complex64::new(0.5, 0.0));
        assert!(matches!(
            rep.to_qmatrix(1e-9),
            Err(Error::NotQuaternionic(_))
        ));
    }

    #[test]
    fn matrix_action_commutes_with_complexification() {
        let a = QMatrix::from_fn(3, 3, |r, c| {
            q(0.2 * (r + c) as f64, 0.3, -0.1 * r as f64, 0.4 * c as f64)
        });
        let x = sample_vec();
        let lhs = a.mul_vec(&x).complexify();
        let rhs = a.complex_rep().mat.mul_vec(&x.complexify());
        let dev = lhs
            .iter()
            .zip(&rhs)
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-12);
    }

    #[test]
    fn right_complex_scalar_action_is_scalar_multiplication() {
        let x = sample_vec();
        let c = Complex64::new(0.7, -1.3);
        let lhs = x.scale_right(Quaternion::from_complex(c)).complexify();
        let rhs: Vec<Complex64> = x.complexify().iter().map(|v| v * c).collect();
        let dev = lhs
            .iter()
            .zip(&rhs)
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-13);
    }

    #[test]
    fn j_action_swaps_and_conjugates_blocks() {
        let x = sample_vec();
        let direct = x.scale_right(Quaternion::J).complexify();
        let via_map = complexified_j_action(&x.complexify());
        let dev = direct
            .iter()
            .zip(&via_map)
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-15);
    }

    #[test]
    fn gram_schmidt_orthonormalizes_and_replays() {
        let vs = vec![
            sample_vec(),
            QVector::new(vec![
                q(0.0, 1.0, 0.0, 0.0),
                q(1.0, 0.0, 1.0, 0.0),
                q(0.0, 0.0, 0.0, 1.0),
            ]),
            QVector::new(vec![
                q(1.0, 1.0, 1.0, 1.0),
                q(0.5, -0.5, 0.0, 0.0),
                q(0.0, 2.0, 0.0, 0.0),
            ]),
        ];
        let gs = gram_schmidt_q(&vs, 1e-12).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                let ip = gs.basis[i].inner(&gs.basis[k]);
                let expect = if i == k {
                    Quaternion::ONE
                } else {
                    Quaternion::ZERO
                };
                assert_abs_diff_eq!(ip, expect, epsilon = 1e-12);
            }
        }
        // Replaying on the same family reproduces the basis.
        let replayed = gs.replay(&vs).unwrap();
        for (e, r) in gs.basis.iter().zip(&replayed) {
            assert!(e.max_abs_diff(r) < 1e-12);
        }
        // Reconstruction: v_i = Σ e_k·c[i][k] + e_i·r_i.
        for (i, v) in vs.iter().enumerate() {
            let mut rec = gs.basis[i].scale(gs.norms[i]);
            for k in 0..i {
                rec = rec.add(&gs.basis[k].scale_right(gs.coeffs[i][k]));
            }
            assert!(rec.max_abs_diff(v) < 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_flags_dependent_vectors() {
        let v = sample_vec();
        let w = v.scale_right(q(0.5, 0.5, -1.0, 0.0));
        match gram_schmidt_q(&[v, w], 1e-10) {
            Err(Error::DependentInput { index: 1, .. }) => {}
            other => panic!("expected DependentInput at index 1, got {other:?}"),
        }
    }

    #[test]
    fn span_filter_skips_dependent_vectors() {
        let v = sample_vec();
        let w = v.scale_right(Quaternion::J);
        let u = QVector::new(vec![
            q(1.0, 0.0, 0.0, 0.0),
            Quaternion::ZERO,
            Quaternion::ZERO,
        ]);
        let (basis, picked) = span_filter(&[v, w, u], 1e-10);
        assert_eq!(basis.len(), 2);
        assert_eq!(picked, vec![0, 2]);
    }

    #[test]
    fn h_rank_counts_right_dependence() {
        let v = sample_vec();
        // v and v·j are ℂ-independent but ℍ-dependent.
        let fam = vec![v.clone(), v.scale_right(Quaternion::J)];
        assert_eq!(h_rank(&fam, 1e-10).unwrap(), 1);
        let fam2 = vec![v, QVector::basis(3, 1)];
        assert_eq!(h_rank(&fam2, 1e-10).unwrap(), 2);
    }

    #[test]
    fn householder_unitary_is_unitary_and_deterministic() {
        let u = householder_random_unitary(6, 42);
        let gram = &u.adjoint() * &u;
        assert!(gram.sub(&QMatrix::identity(6)).max_abs() < 1e-12);
        let u2 = householder_random_unitary(6, 42);
        assert_eq!(u, u2, "same seed must reproduce the same unitary");
        let u3 = householder_random_unitary(6, 43);
        assert!(u.sub(&u3).max_abs() > 1e-3, "different seeds must differ");
    }

    #[test]
    fn unitary_preserves_inner_products() {
        let u = householder_random_unitary(3, 7);
        let x = sample_vec();
        let y = QVector::new(vec![
            q(0.0, 0.2, 0.4, -0.6),
            q(1.0, 1.0, 0.0, 0.0),
            q(0.5, 0.0, -0.5, 0.0),
        ]);
        assert_abs_diff_eq!(
            u.mul_vec(&x).inner(&u.mul_vec(&y)),
            x.inner(&y),
            epsilon = 1e-12
        );
    }

    #[test]
    fn min_norm_right_inverse_solves_consistent_systems() {
        let a = QMatrix::from_fn(2, 2, |r, c| q((r + 1) as f64, c as f64, 0.0, 1.0));
        let rep = a.complex_rep();
        let x = min_norm_right_inverse(&rep.mat, 1e-12).unwrap();
        let id = CMatrix::identity(4);
        assert!((&rep.mat * &x).sub(&id).max_abs() < 1e-10);
    }
}
