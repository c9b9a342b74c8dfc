//! The spherical spectral pencil and S-spectrum point diagnostics.
//!
//! Right eigenvalues of a quaternionic operator are not slice-wise isolated
//! points: if `Tx = x·s` then `T(x·q) = (x·q)·(q⁻¹ s q)`, so eigenvalues come
//! in axial 2-spheres `[s]`. The correct pointwise object is the
//! **spherical pencil**
//!
//! ```text
//! Q_s(T) = T² - 2·Re(s)·T + |s|²·I
//! ```
//!
//! which depends on `[s]` only and factors as
//! `Q_s(T)x = (T - I·s)((T - I·conj(s))x)` where `(T - I·s)x := Tx - x·s`
//! (the two factors commute). Its kernel is the right-ℍ span of the
//! eigenspaces over the sphere; on the complex side the kernel directions of
//! the represented pencil appear as exactly degenerate singular-value pairs,
//! so quaternionic kernel dimensions are *half* of complex threshold counts.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{span_filter, CMatrix, QMatrix, QVector};
use crate::numeric;
use crate::quaternion::Quaternion;

/// The spherical pencil `T² - 2·Re(s)·T + |s|²·I` over ℍ.
pub fn s_pencil(t: &QMatrix, s: Quaternion) -> QMatrix {
    assert_eq!(t.nrows(), t.ncols(), "pencil needs a square operator");
    let n = t.nrows();
    let t2 = t * t;
    let mut out = t2.sub(&t.scale(2.0 * s.re()));
    let m2 = s.norm_sqr();
    for i in 0..n {
        out.set(i, i, out.get(i, i) + Quaternion::from_real(m2));
    }
    out
}

/// The spherical pencil evaluated on the complex representation
/// `T_ℂ² - 2·Re(s)·T_ℂ + |s|²·I`.
pub fn s_pencil_complex(tc: &CMatrix, s: Quaternion) -> CMatrix {
    assert_eq!(tc.nrows(), tc.ncols(), "pencil needs a square operator");
    let n = tc.nrows();
    let t2 = tc * tc;
    let mut out = t2.sub(&tc.scale(Complex64::new(2.0 * s.re(), 0.0)));
    let m2 = s.norm_sqr();
    for i in 0..n {
        out.set(i, i, out.get(i, i) + Complex64::new(m2, 0.0));
    }
    out
}

/// The shifted action `(T - I·s)x = Tx - x·s` (right multiplication by `s`,
/// which is *not* a linear operator over ℍ unless `s` is real — hence a free
/// function rather than a matrix).
pub fn s_shift_apply(t: &QMatrix, s: Quaternion, x: &QVector) -> QVector {
    t.mul_vec(x).sub(&x.scale_right(s))
}

/// Counts singular values below `tol·σ_max` in a descending σ-list, and
/// verifies the count is even (quaternionic degeneracy).
pub(crate) fn count_kernel_pairs(sigma_desc: &[f64], tol: f64) -> Result<usize> {
    let sigma_max = sigma_desc.first().copied().unwrap_or(0.0);
    if sigma_max <= 0.0 {
        // Zero matrix: everything is kernel.
        let count = sigma_desc.len();
        if !count.is_multiple_of(2) {
            return Err(Error::OddKernelCount { count, tol });
        }
        return Ok(count / 2);
    }
    let count = sigma_desc.iter().filter(|&&s| s < tol * sigma_max).count();
    if count % 2 != 0 {
        return Err(Error::OddKernelCount { count, tol });
    }
    Ok(count / 2)
}

/// Outcome of a point S-spectrum membership test.
#[derive(Debug, Clone)]
pub struct PencilResult {
    /// The queried spectral parameter.
    pub s: Quaternion,
    /// Truncation size (quaternionic dimension of the ambient space).
    pub n: usize,
    /// Relative tolerance used for the kernel count.
    pub tol: f64,
    /// All singular values of the complexified pencil, descending.
    pub singular_values: Vec<f64>,
    /// Largest singular value.
    pub sigma_max: f64,
    /// Smallest singular value.
    pub sigma_min: f64,
    /// Quaternionic kernel dimension (half the complex threshold count).
    pub kernel_dim: usize,
    /// A right-orthonormal ℍ-basis of the pencil kernel (length
    /// `kernel_dim`).
    pub kernel_basis: Vec<QVector>,
}

impl PencilResult {
    /// True when the sphere `[s]` meets the point S-spectrum at this
    /// truncation and tolerance.
    pub fn in_point_spectrum(&self) -> bool {
        self.kernel_dim > 0
    }
}

/// Point S-spectrum membership of the sphere `[s]` for a (truncated)
/// operator, decided by the singular values of the complexified pencil.
///
/// Singular values below `tol·σ_max` are counted as kernel directions; the
/// count must be even ([`Error::OddKernelCount`] otherwise) and the
/// quaternionic kernel dimension is half of it. The returned basis is
/// ℍ-orthonormal and annihilated by the pencil to working precision.
pub fn s_point_membership(t: &QMatrix, s: Quaternion, tol: f64) -> Result<PencilResult> {
    assert_eq!(t.nrows(), t.ncols(), "membership needs a square operator");
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::InvalidConfig(format!(
            "membership tolerance must be positive, got {tol}"
        )));
    }
    let n = t.nrows();
    let tc = t.complex_rep().mat;
    let pc = s_pencil_complex(&tc, s);
    let parts = numeric::svd(&pc)?;
    let sigma = parts.sigma.clone();
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let sigma_min = sigma.last().copied().unwrap_or(0.0);

    // Magnitude of the pencil's summands before cancellation; if σ_max is
    // this small relative to it, the pencil vanished identically and the
    // whole space is kernel (a σ_max-relative threshold would be vacuous).
    let t_fro = tc.fro_norm();
    let pencil_scale =
        t_fro * t_fro + 2.0 * s.re().abs() * t_fro + s.norm_sqr() * (2.0 * n as f64).sqrt();
    if sigma_max <= tol * pencil_scale.max(f64::MIN_POSITIVE) {
        return Ok(PencilResult {
            s,
            n,
            tol,
            singular_values: sigma,
            sigma_max,
            sigma_min,
            kernel_dim: n,
            kernel_basis: (0..n).map(|i| QVector::basis(n, i)).collect(),
        });
    }

    let kernel_dim = count_kernel_pairs(&sigma, tol)?;
    let kernel_basis = if kernel_dim == 0 {
        Vec::new()
    } else {
        // Right singular vectors of the smallest pairs, reassembled over ℍ
        // and filtered down to an ℍ-independent set.
        let total = sigma.len();
        let mut candidates = Vec::with_capacity(2 * kernel_dim);
        for idx in (total - 2 * kernel_dim)..total {
            let col = parts.v.column(idx);
            candidates.push(QVector::from_complexified(&col)?);
        }
        let (basis, _picked) = span_filter(&candidates, 1e-6);
        if basis.len() != kernel_dim {
            return Err(Error::IllConditioned(format!(
                "kernel basis extraction found {} ℍ-independent directions, expected {}",
                basis.len(),
                kernel_dim
            )));
        }
        basis
    };

    log::debug!(
        "membership at s = {s}: n = {n}, sigma_min = {sigma_min:.3e}, sigma_max = {sigma_max:.3e}, dim = {kernel_dim}"
    );
    Ok(PencilResult {
        s,
        n,
        tol,
        singular_values: sigma,
        sigma_max,
        sigma_min,
        kernel_dim,
        kernel_basis,
    })
}

/// Distinct axially-symmetric right-eigenvalue classes of a quaternionic
/// matrix.
#[derive(Debug, Clone)]
pub struct EigenClasses {
    /// Upper-half-plane representatives `Re + i·|Im|`, sorted by
    /// `(Re, Im)`, duplicates (within tolerance) merged.
    pub classes: Vec<Complex64>,
    /// Complex eigenvalues that could not be matched into a conjugate pair
    /// at the given tolerance (empty in healthy computations).
    pub unpaired: Vec<Complex64>,
}

/// Computes the right-eigenvalue classes of `a` from the eigenvalues of its
/// complex representation.
///
/// The representation's spectrum is closed under conjugation (eigenvalues
/// pair as `λ, conj(λ)`; real ones have even multiplicity), and each pair
/// projects to the class representative `Re λ + i·|Im λ|`. Pairing failures
/// at tolerance `tol` are reported in `unpaired` rather than silently
/// dropped.
pub fn right_eigen_classes(a: &QMatrix, tol: f64) -> Result<EigenClasses> {
    assert_eq!(
        a.nrows(),
        a.ncols(),
        "eigenvalue classes need a square matrix"
    );
    let ev = numeric::eigenvalues(&a.complex_rep().mat)?;
    let scale = 1.0 + ev.iter().map(|l| l.norm()).fold(0.0, f64::max);
    let ptol = tol * scale;

    // Sort by class key so conjugate partners become adjacent.
    let mut sorted = ev;
    sorted.sort_by(|p, q| {
        (p.re, p.im.abs(), p.im)
            .partial_cmp(&(q.re, q.im.abs(), q.im))
            .unwrap()
    });
    let mut used = vec![false; sorted.len()];
    let mut reps: Vec<Complex64> = Vec::new();
    let mut unpaired = Vec::new();
    for i in 0..sorted.len() {
        if used[i] {
            continue;
        }
        let li = sorted[i];
        // Find the nearest unused conjugate partner among neighbours.
        let mut best: Option<(usize, f64)> = None;
        for (j, &lj) in sorted.iter().enumerate().skip(i + 1) {
            if used[j] {
                continue;
            }
            if (lj.re - li.re).abs() > ptol {
                break; // sorted by re: no partner further out
            }
            let d = (lj - li.conj())
                .norm()
                .min((lj.im.abs() - li.im.abs()).abs() + (lj.re - li.re).abs());
            if d <= ptol && best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, _)) => {
                used[i] = true;
                used[j] = true;
                let lj = sorted[j];
                reps.push(Complex64::new(
                    0.5 * (li.re + lj.re),
                    0.5 * (li.im.abs() + lj.im.abs()),
                ));
            }
            None => {
                used[i] = true;
                unpaired.push(li);
            }
        }
    }

    // Merge duplicate classes.
    reps.sort_by(|p, q| (p.re, p.im).partial_cmp(&(q.re, q.im)).unwrap());
    let mut classes: Vec<Complex64> = Vec::new();
    for r in reps {
        match classes.last() {
            Some(last) if (r - last).norm() <= ptol => {}
            _ => classes.push(r),
        }
    }
    Ok(EigenClasses { classes, unpaired })
}

/// Sequence of norm-root estimates `‖Tᵐ‖^(1/m)` for the S-spectral radius.
#[derive(Debug, Clone)]
pub struct RadiusEstimate {
    /// `estimates[m-1] = ‖Tᵐ‖^(1/m)` for `m = 1..=m_max`.
    pub estimates: Vec<f64>,
    /// The final estimate (`m = m_max`).
    pub value: f64,
}

/// Estimates the S-spectral radius `lim ‖Tᵐ‖^(1/m)` on a truncation.
///
/// Powers are accumulated on the complex representation with periodic
/// rescaling so that no intermediate over- or underflows; the reported
/// sequence lets callers judge convergence. Note that truncations of
/// infinite-dimensional operators are spectrally biased (a truncated shift
/// is nilpotent), so this is a diagnostic, not a certified limit.
pub fn s_radius_estimate(t: &QMatrix, m_max: usize) -> Result<RadiusEstimate> {
    assert!(m_max >= 1, "need at least one power");
    let tc = t.complex_rep().mat;
    let mut power = tc.clone();
    let mut log_scale = 0.0_f64;
    let mut estimates = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        if m > 1 {
            power = &power * &tc;
            let f = power.max_abs();
            if f == 0.0 {
                // Nilpotent from here on: every further estimate is 0.
                estimates.extend(std::iter::repeat_n(0.0, m_max - m + 1));
                break;
            }
            if !(1e-100..=1e100).contains(&f) {
                power = power.scale(Complex64::new(1.0 / f, 0.0));
                log_scale += f.ln();
            }
        }
        let sigma_max = power.op_norm()?;
        let est = if sigma_max == 0.0 {
            0.0
        } else {
            ((sigma_max.ln() + log_scale) / m as f64).exp()
        };
        estimates.push(est);
    }
    let value = estimates.last().copied().unwrap_or(0.0);
    Ok(RadiusEstimate { estimates, value })
}
