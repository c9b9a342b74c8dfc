//! Dense complex SVD / eigendecomposition kernels.
//!
//! Thin wrappers that move data between the crate's row-major [`CMatrix`]
//! and `faer`, which provides the pure-Rust factorizations. Everything else
//! in the crate (products, pencils, pseudo-inverses applied to vectors) is
//! built on top of these two primitives plus hand-written arithmetic.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Full singular value decomposition `A = U · diag(σ) · Vᴴ`.
#[derive(Debug, Clone)]
pub struct SvdParts {
    /// Singular values in descending order.
    pub sigma: Vec<f64>,
    /// Left singular vectors (columns), `nrows × nrows`.
    pub u: CMatrix,
    /// Right singular vectors (columns, not conjugated), `ncols × ncols`.
    pub v: CMatrix,
}

fn to_faer(m: &CMatrix) -> Mat<Complex64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m.get(i, j))
}

fn from_faer(m: faer::MatRef<'_, Complex64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn check_finite(m: &CMatrix, what: &str) -> Result<()> {
    if m.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::IllConditioned(format!(
            "{what} received a non-finite matrix entry"
        )));
    }
    Ok(())
}

/// Singular values of `m` in descending order.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(svd(m)?.sigma)
}

/// Full SVD of `m`.
pub fn svd(m: &CMatrix) -> Result<SvdParts> {
    check_finite(m, "singular value decomposition")?;
    let svd = to_faer(m)
        .svd()
        .map_err(|e| Error::IllConditioned(format!("SVD failed: {e:?}")))?;
    let k = m.nrows().min(m.ncols());
    let s = svd.S();
    let sigma: Vec<f64> = (0..k).map(|i| s[i].re).collect();
    Ok(SvdParts {
        sigma,
        u: from_faer(svd.U()),
        v: from_faer(svd.V()),
    })
}

/// Eigenvalues of a square `m` (unordered).
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    assert_eq!(m.nrows(), m.ncols(), "eigenvalues need a square matrix");
    check_finite(m, "eigendecomposition")?;
    let evd = to_faer(m)
        .eigen()
        .map_err(|e| Error::IllConditioned(format!("eigendecomposition failed: {e:?}")))?;
    let s = evd.S();
    Ok((0..m.nrows()).map(|i| s[i]).collect())
}

/// Minimum-norm pseudo-inverse with a relative singular-value cutoff.
#[derive(Debug, Clone)]
pub struct Pinv {
    /// The pseudo-inverse matrix `V · diag(1/σ kept) · Uᴴ`.
    pub mat: CMatrix,
    /// Number of singular values kept (the numerical rank).
    pub kept: usize,
    /// Largest singular value of the input.
    pub sigma_max: f64,
    /// Smallest singular value that was kept (`0` if none).
    pub sigma_min_kept: f64,
    /// Largest singular value that was dropped (`0` if none).
    pub sigma_max_dropped: f64,
}

/// Computes the minimum-norm pseudo-inverse of `m`, zeroing every singular
/// value below `rel_cutoff · σ_max`.
pub fn pinv(m: &CMatrix, rel_cutoff: f64) -> Result<Pinv> {
    let parts = svd(m)?;
    Ok(pinv_from_parts(&parts, rel_cutoff))
}

/// Builds the pseudo-inverse from an already computed SVD, so callers that
/// need both the kernel and a right inverse factor the matrix only once.
pub fn pinv_from_parts(parts: &SvdParts, rel_cutoff: f64) -> Pinv {
    let sigma_max = parts.sigma.first().copied().unwrap_or(0.0);
    let cut = rel_cutoff * sigma_max;
    let kept = parts.sigma.iter().take_while(|&&s| s > cut).count();
    let sigma_min_kept = if kept > 0 { parts.sigma[kept - 1] } else { 0.0 };
    let sigma_max_dropped = parts.sigma.get(kept).copied().unwrap_or(0.0);

    // X = V · diag(1/σ) · Uᴴ restricted to the kept directions.
    let (nr, nc) = (parts.u.nrows(), parts.v.nrows());
    let mut x = CMatrix::zeros(nc, nr);
    for t in 0..kept {
        let inv_s = 1.0 / parts.sigma[t];
        for r in 0..nc {
            let vrt = parts.v.get(r, t);
            if vrt == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..nr {
                let add = vrt * parts.u.get(c, t).conj() * inv_s;
                x.set(r, c, x.get(r, c) + add);
            }
        }
    }
    Pinv {
        mat: x,
        kept,
        sigma_max,
        sigma_min_kept,
        sigma_max_dropped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn svd_reconstructs_the_input() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0)],
            vec![c(0.5, 0.0), c(2.0, 2.0), c(-1.0, 1.0)],
        ]);
        let parts = svd(&m).unwrap();
        assert!(parts.sigma.windows(2).all(|w| w[0] >= w[1]), "descending");
        // U · diag(σ) · Vᴴ = A.
        let k = parts.sigma.len();
        let mut us = CMatrix::zeros(m.nrows(), k);
        for t in 0..k {
            for r in 0..m.nrows() {
                us.set(r, t, parts.u.get(r, t) * parts.sigma[t]);
            }
        }
        let vh = CMatrix::from_fn(k, m.ncols(), |t, col| parts.v.get(col, t).conj());
        let rec = &us * &vh;
        assert!(
            rec.sub(&m).max_abs() < 1e-12,
            "reconstruction residual too large"
        );
    }

    #[test]
    fn eigenvalues_of_rotation_block() {
        // [[0, -1], [1, 0]] has eigenvalues ±i.
        let m = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn pinv_is_a_right_inverse_on_the_range() {
        let m = CMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)],
        ]);
        let p = pinv(&m, 1e-10).unwrap();
        assert_eq!(p.kept, 2);
        let mx = &m * &p.mat; // 2×2 identity expected
        let id = CMatrix::identity(2);
        assert!(mx.sub(&id).max_abs() < 1e-12);
    }

    #[test]
    fn pinv_cutoff_drops_tiny_directions() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1e-14, 0.0)],
        ]);
        let p = pinv(&m, 1e-10).unwrap();
        assert_eq!(p.kept, 1);
        assert!(p.sigma_max_dropped > 0.0);
        assert!(p.mat.get(1, 1).norm() == 0.0);
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        let m = CMatrix::from_rows(&[vec![c(f64::NAN, 0.0)]]);
        assert!(singular_values(&m).is_err());
    }
}
