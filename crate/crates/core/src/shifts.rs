//! Banded one-sided shift models and their S-spectrum diagnostics.
//!
//! The central model is the **backward weighted shift** on `ℓ²(ℍ)`:
//! `T e₁ = 0`, `T e_{n+1} = eₙ·wₙ`, optionally with a constant diagonal and a
//! finite patch of overridden entries in theupper-left corner. Truncations
//! to `N×N` sections feed every numeric routine in the crate.
//!
//! For positive real weights the kernel of the spherical pencil at a
//! non-real `s` admits a closed form: with `σ = Re(s) + i·|Im(s)|`,
//!
//! ```text
//! Aₙ(s) = Im(σⁿ)/Im(σ)          (real),
//! Bₙ(s) = |s|²·A_{n-1}(s)        (real),
//! x_{n+1} = (Aₙ·w₁·x₂ - Bₙ·x₁) / (w₁⋯wₙ),
//! ```
//!
//! a two-quaternion-parameter family in `(x₁, x₂)` — which is exactly why
//! such spheres carry quaternionic kernel dimension 2. The seed
//! `x₁ = 1, x₂ = s/w₁` collapses the family to the geometric eigenvector
//! `x_{n+1} = sⁿ/(w₁⋯wₙ)`.
//!
//! Shifts with non-real weights are unitarily equivalent to their
//! absolute-value counterparts via a diagonal change of phase
//! ([`positivize`]), and the radius of convergence of the eigenvector family
//! is governed by the weight-product root [`rsp`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::linalg::QVector;
use crate::numeric;
use crate::quaternion::Quaternion;
use crate::spectra::{count_kernel_pairs, s_pencil_complex};

// ── Weight rules ────────────────────────────────────────────────────────────

/// How the shift weights `w₁, w₂, …` are generated.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRule {
    /// Constant weight `wₙ = q`.
    Const(Quaternion),
    /// The ratio rule `wₙ = (n+1)/n` (real).
    Ratio,
    /// Explicit finite table `wₙ = table[n-1]`; indices beyond the table are
    /// an error.
    Table(Vec<Quaternion>),
}

impl WeightRule {
    /// The weight `wₙ` (1-based `n`).
    ///
    /// Returns [`Error::ZeroWeight`] for vanishing weights and
    /// [`Error::WeightOutOfRange`] past the end of a table.
    pub fn weight(&self, n: usize) -> Result<Quaternion> {
        assert!(n >= 1, "weights are 1-based");
        let w = match self {
            WeightRule::Const(q) => *q,
            WeightRule::Ratio => Quaternion::from_real((n + 1) as f64 / n as f64),
            WeightRule::Table(t) => *t.get(n - 1).ok_or(Error::WeightOutOfRange {
                index: n,
                len: t.len(),
            })?,
        };
        if w.norm() == 0.0 {
            return Err(Error::ZeroWeight(n));
        }
        Ok(w)
    }

    /// Checks that `w₁ … w_{count}` are all real and strictly positive
    /// (the precondition of the closed-form eigenvector formulas).
    pub fn positive_real_up_to(&self, count: usize) -> Result<()> {
        for n in 1..=count {
            let w = self.weight(n)?;
            if !w.is_real(0.0) || w.re() <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "weight w_{n} = {w} is not a positive real; positivize the shift first"
                )));
            }
        }
        Ok(())
    }
}

// ── Banded operators ────────────────────────────────────────────────────────

/// A backward weighted shift with constant diagonal and a finite patch of
/// explicitly overridden entries.
///
/// `truncate(N)` lays down `diag` on the diagonal and `wₙ` at `(n-1, n)`
/// (0-based), then applies the patch: each `(row, col) → q` entry *replaces*
/// whatever the band put there, so patches can both deform the band and add
/// entries outside it.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedOperator {
    /// Constant diagonal entry.
    pub diag: Quaternion,
    /// Superdiagonal weight rule.
    pub weights: WeightRule,
    /// Overridden entries, keyed by `(row, col)` (0-based).
    pub patch: BTreeMap<(usize, usize), Quaternion>,
}

impl BandedOperator {
    /// Pure backward shift with the given weights (zero diagonal, no patch).
    pub fn backward_shift(weights: WeightRule) -> Self {
        BandedOperator {
            diag: Quaternion::ZERO,
            weights,
            patch: BTreeMap::new(),
        }
    }

    /// Shift with a constant diagonal.
    pub fn with_diag(diag: Quaternion, weights: WeightRule) -> Self {
        BandedOperator {
            diag,
            weights,
            patch: BTreeMap::new(),
        }
    }

    /// Adds (or replaces) patch entries; builder style.
    pub fn patched(mut self, entries: &[((usize, usize), Quaternion)]) -> Self {
        for &(pos, q) in entries {
            self.patch.insert(pos, q);
        }
        self
    }

    /// The `N×N` upper-left section.
    pub fn truncate(&self, n: usize) -> Result<QMatrix> {
        if n == 0 {
            return Err(Error::InvalidConfig(
                "truncation size must be positive".into(),
            ));
        }
        let mut m = QMatrix::zeros(n, n);
        for r in 0..n {
            m.set(r, r, self.diag);
            if r + 1 < n {
                m.set(r, r + 1, self.weights.weight(r + 1)?);
            }
        }
        for (&(r, c), &q) in &self.patch {
            if r >= n || c >= n {
                return Err(Error::PatchOutOfRange((r, c), n));
            }
            m.set(r, c, q);
        }
        Ok(m)
    }
}

// ── Closed-form eigenvectors ────────────────────────────────────────────────

fn require_non_real(s: Quaternion) -> Result<()> {
    let im = s.im_norm();
    if im <= 1e-14 * (1.0 + s.norm()) {
        return Err(Error::RealParameter(im));
    }
    Ok(())
}

/// Closed-form pencil-kernel vector of a positive-weight backward shift.
///
/// Returns `(x₁, x₂, x₃, …)` of length `len` with
/// `x_{n+1} = (Aₙ·w₁·x₂ - Bₙ·x₁)/(w₁⋯wₙ)`; the coefficients `Aₙ`, `Bₙ` are
/// real, so the quaternion parameters `x₁, x₂` ride along unharmed. The
/// spectral parameter must be non-real ([`Error::RealParameter`]) and the
/// weights real positive ([`Error::InvalidConfig`] otherwise — see
/// [`positivize`]).
pub fn s_eigvec_closed_form(
    weights: &WeightRule,
    s: Quaternion,
    x1: Quaternion,
    x2: Quaternion,
    len: usize,
) -> Result<QVector> {
    if len < 2 {
        return Err(Error::InvalidConfig(format!(
            "closed form needs at least two entries, got len = {len}"
        )));
    }
    require_non_real(s)?;
    weights.positive_real_up_to(len - 1)?;

    let sigma = s.reduced_complex();
    let im_sigma = sigma.im;
    let modulus_sq = s.norm_sqr();
    let w1 = weights.weight(1)?.re();

    let mut out = Vec::with_capacity(len);
    out.push(x1);
    out.push(x2);

    // σⁿ and the running weight product, advanced together. Entering the
    // loop body for index n: sigma_pow = σⁿ, a_prev = A_{n-1},
    // prod = w₁⋯w_{n-1}.
    let mut sigma_pow = sigma * sigma; // σ²
    let mut a_prev = 1.0; // A₁ = 1
    let mut prod = w1;
    for n in 2..=len - 1 {
        let a_n = sigma_pow.im / im_sigma;
        let b_n = modulus_sq * a_prev;
        prod *= weights.weight(n)?.re();
        let entry = x2 * (a_n * w1 / prod) - x1 * (b_n / prod);
        if !entry.is_finite() {
            return Err(Error::IllConditioned(format!(
                "closed-form entry x_{} overflowed (product = {prod:.3e})",
                n + 1
            )));
        }
        out.push(entry);
        a_prev = a_n;
        sigma_pow *= sigma;
    }
    Ok(QVector::new(out))
}

/// The geometric eigenvector `x_{n+1} = wₙ⁻¹·xₙ·s` with seed `x₁`.
///
/// Satisfies `(Tx)ₙ = xₙ·s` for every row the truncation keeps intact; for
/// positive real weights it coincides with the closed form at
/// `x₁ = seed, x₂ = seed·s/w₁`. Works for arbitrary invertible weights.
pub fn geometric_eigvec(
    weights: &WeightRule,
    s: Quaternion,
    seed: Quaternion,
    len: usize,
) -> Result<QVector> {
    if len == 0 {
        return Err(Error::InvalidConfig(
            "geometric vector needs positive length".into(),
        ));
    }
    let mut out = Vec::with_capacity(len);
    out.push(seed);
    let mut cur = seed;
    for n in 1..len {
        let w = weights.weight(n)?;
        cur = w.inverse()? * cur * s;
        if !cur.is_finite() {
            return Err(Error::IllConditioned(format!(
                "geometric entry x_{} overflowed",
                n + 1
            )));
        }
        out.push(cur);
    }
    Ok(QVector::new(out))
}

// ── Positivization ──────────────────────────────────────────────────────────

/// A diagonal unitary `X` with `T·X = X·T̃`, where `T̃` is the same shift
/// with weights `|wₙ|`.
#[derive(Debug, Clone)]
pub struct Positivization {
    /// Diagonal unitary change of phase (size `n`).
    pub x: QMatrix,
    /// The positivized truncation `T̃` (real non-negative weights).
    pub t_abs: QMatrix,
    /// The diagonal entries of `x`.
    pub phases: Vec<Quaternion>,
}

/// Positivizes a weighted backward shift on an `n`-truncation.
///
/// The diagonal entries are `d₁ = 1`,
/// `d_{m+1} = conj(w_m)·d_m / |w_m|` — unit quaternions turning every weight
/// into its modulus. Requires a real diagonal (a non-real constant diagonal
/// does not commute with the phase change) and an empty patch.
pub fn positivize(op: &BandedOperator, n: usize) -> Result<Positivization> {
    if !op.patch.is_empty() {
        return Err(Error::InvalidConfig(
            "positivization is defined for unpatched shifts".into(),
        ));
    }
    if !op.diag.is_real(0.0) {
        return Err(Error::InvalidConfig(format!(
            "positivization needs a real diagonal, got {}",
            op.diag
        )));
    }
    let mut phases = Vec::with_capacity(n);
    phases.push(Quaternion::ONE);
    for m in 1..n {
        let w = op.weights.weight(m)?;
        let prev = phases[m - 1];
        phases.push(w.conj() * prev / w.norm());
    }
    let x = QMatrix::diagonal(&phases);

    let mut t_abs = QMatrix::zeros(n, n);
    for r in 0..n {
        t_abs.set(r, r, op.diag);
        if r + 1 < n {
            t_abs.set(
                r,
                r + 1,
                Quaternion::from_real(op.weights.weight(r + 1)?.norm()),
            );
        }
    }
    Ok(Positivization { x, t_abs, phases })
}

// ── Weight-product radius ───────────────────────────────────────────────────

/// Estimate of `liminf (w₁⋯wₙ)^{1/n}` (the radius of the eigenvector disk).
#[derive(Debug, Clone)]
pub struct RspEstimate {
    /// Minimum of the root sequence over the tail window.
    pub value: f64,
    /// The estimate at `n = n_max` alone.
    pub final_estimate: f64,
    /// The tail window `[lo, hi]` the minimum was taken over.
    pub window: (usize, usize),
}

/// Computes the weight-product root `liminf |w₁⋯wₙ|^{1/n}` up to `n_max`,
/// reporting the minimum over the tail window `[n_max/2, n_max]`.
///
/// Products are accumulated in log₂ space, so constant power-of-two weights
/// come out exactly (`rsp ≡ 2` for `wₙ = 2`, `≡ 1` for `wₙ = 1`).
pub fn rsp(weights: &WeightRule, n_max: usize) -> Result<RspEstimate> {
    if n_max < 2 {
        return Err(Error::InvalidConfig(format!(
            "rsp needs n_max >= 2, got {n_max}"
        )));
    }
    let seq = rsp_sequence(weights, n_max)?;
    let lo = n_max / 2;
    let mut min_tail = f64::INFINITY;
    for &est in &seq[lo - 1..] {
        min_tail = min_tail.min(est);
    }
    Ok(RspEstimate {
        value: min_tail,
        final_estimate: *seq.last().unwrap(),
        window: (lo, n_max),
    })
}

/// The full root sequence `n ↦ |w₁⋯wₙ|^{1/n}` for `n = 1..=n_max`, in the
/// same log₂-space arithmetic as [`rsp`] (so the two agree bit for bit).
pub fn rsp_sequence(weights: &WeightRule, n_max: usize) -> Result<Vec<f64>> {
    if n_max < 1 {
        return Err(Error::InvalidConfig(format!(
            "a root sequence needs n_max >= 1, got {n_max}"
        )));
    }
    let mut log2_prod = 0.0_f64;
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let w = weights.weight(n)?;
        log2_prod += w.norm().log2();
        out.push((log2_prod / n as f64).exp2());
    }
    Ok(out)
}

// ── Truncation studies ──────────────────────────────────────────────────────

/// How far a σ-pair may sink per truncation doubling and still count as
/// "flat" (non-kernel); kernel pairs shrink orders of magnitude faster.
const DECAY_RATIO: f64 = 0.5;
/// A decay-certified kernel pair must also end below this relative size.
const DECAY_CEILING: f64 = 1e-2;
/// Pairs ending above `PROMOTE_FLOOR·tol` (and not decaying) are decisively
/// non-kernel; anything in between is ambiguous and marks the study
/// unstable.
const PROMOTE_FLOOR: f64 = 100.0;
/// Number of smallest σ-pairs whose trajectories are tracked.
const TRACKED_PAIRS: usize = 8;

/// Trajectory of one σ-pair of the complexified pencil across truncations.
#[derive(Debug, Clone)]
pub struct PairTrajectory {
    /// `σ_pair/σ_max` per truncation (ascending pair index — this is one of
    /// the smallest pairs).
    pub relative: Vec<f64>,
    /// Classified as a kernel direction (below threshold at the largest
    /// truncation, or decaying consistently towards zero).
    pub kernel: bool,
    /// Decisively classified (kernel, or clearly above the threshold zone).
    pub decisive: bool,
}

/// Kernel-dimension study of a sphere `[s]` across several truncations.
#[derive(Debug, Clone)]
pub struct KernelDimStudy {
    /// The probed spectral parameter.
    pub s: Quaternion,
    /// Truncation sizes, ascending.
    pub truncations: Vec<usize>,
    /// Quaternionic kernel counts by the bare `σ < tol·σ_max` rule, one per
    /// truncation.
    pub threshold_counts: Vec<usize>,
    /// Trajectories of the smallest σ-pairs.
    pub pairs: Vec<PairTrajectory>,
    /// The study's verdict for the quaternionic kernel dimension.
    pub kernel_dim: usize,
    /// True when every tracked pair was classified decisively and the
    /// verdict is consistent across truncations.
    pub stable: bool,
}

/// Runs the pencil SVD of `op` at `s` over the given (ascending) truncation
/// sizes and classifies the smallest singular-value pairs.
///
/// A pair counts as kernel when it is below `tol·σ_max` at the largest
/// truncation, **or** when it decays by at least a factor 2 at every
/// truncation step and ends small; flat pairs are non-kernel. This is the
/// "stable across truncations" reading of threshold counting: spheres whose
/// eigenvectors decay geometrically show up with tiny but nonzero residuals
/// at small truncations, and the decay signature separates them from
/// genuinely non-kernel directions long before the residual crosses any
/// fixed threshold.
pub fn kernel_dim_study(
    op: &BandedOperator,
    s: Quaternion,
    truncations: &[usize],
    tol: f64,
) -> Result<KernelDimStudy> {
    if truncations.len() < 2 {
        return Err(Error::InvalidConfig(
            "a truncation study needs at least two sizes".into(),
        ));
    }
    if truncations.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig(
            "truncation sizes must be strictly ascending".into(),
        ));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::InvalidConfig(format!(
            "study tolerance must be positive, got {tol}"
        )));
    }

    let mut threshold_counts = Vec::with_capacity(truncations.len());
    let mut tables: Vec<Vec<f64>> = Vec::with_capacity(truncations.len());
    for &n in truncations {
        let t = op.truncate(n)?;
        let pc = s_pencil_complex(&t.complex_rep().mat, s);
        let sigma = numeric::singular_values(&pc)?;
        threshold_counts.push(count_kernel_pairs(&sigma, tol)?);
        let sigma_max = sigma.first().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
        let mut asc = sigma;
        asc.reverse();
        let pairs: Vec<f64> = (0..(asc.len() / 2).min(TRACKED_PAIRS))
            .map(|p| (asc[2 * p] * asc[2 * p + 1]).sqrt() / sigma_max)
            .collect();
        tables.push(pairs);
        log::debug!(
            "study at s = {s}, N = {n}: smallest pairs {:?}",
            tables.last().unwrap()
        );
    }

    let tracked = tables.iter().map(Vec::len).min().unwrap_or(0);
    let mut pairs = Vec::with_capacity(tracked);
    for p in 0..tracked {
        let relative: Vec<f64> = tables.iter().map(|t| t[p]).collect();
        let last = *relative.last().unwrap();
        let below = last < tol;
        let decaying =
            relative.windows(2).all(|w| w[1] <= DECAY_RATIO * w[0]) && last <= DECAY_CEILING;
        let kernel = below || decaying;
        let decisive = kernel || last >= PROMOTE_FLOOR * tol;
        pairs.push(PairTrajectory {
            relative,
            kernel,
            decisive,
        });
    }

    // Kernel pairs must form a prefix of the ascending pair list.
    let kernel_dim = pairs.iter().take_while(|p| p.kernel).count();
    let prefix_ok = pairs.iter().skip(kernel_dim).all(|p| !p.kernel);
    let all_decisive = pairs.iter().all(|p| p.decisive);
    let counts_consistent = threshold_counts.iter().all(|&c| c <= kernel_dim);
    let stable = prefix_ok && all_decisive && counts_consistent;

    Ok(KernelDimStudy {
        s,
        truncations: truncations.to_vec(),
        threshold_counts,
        pairs,
        kernel_dim,
        stable,
    })
}

/// One probed sphere inside a [`BnProbeReport`].
#[derive(Debug, Clone)]
pub struct ProbeSample {
    /// The probed parameter.
    pub s: Quaternion,
    /// Its truncation study.
    pub study: KernelDimStudy,
}

/// Result of probing several spheres for a common kernel dimension.
#[derive(Debug, Clone)]
pub struct BnProbeReport {
    /// Base truncation; the study runs at `n`, `2n`, `4n`.
    pub n_base: usize,
    /// Individual studies.
    pub samples: Vec<ProbeSample>,
    /// The common kernel dimension, when every study is stable and they all
    /// agree.
    pub candidate_rank: Option<usize>,
    /// True when every study was stable.
    pub stable: bool,
}

/// Probes each sample point at truncations `n`, `2n`, `4n` and reports the
/// common stable kernel dimension, if any.
pub fn bn_probe(
    op: &BandedOperator,
    samples: &[Quaternion],
    n_base: usize,
    tol: f64,
) -> Result<BnProbeReport> {
    if samples.is_empty() {
        return Err(Error::InvalidConfig(
            "bn_probe needs at least one sample".into(),
        ));
    }
    let truncations = [n_base, 2 * n_base, 4 * n_base];
    let mut out = Vec::with_capacity(samples.len());
    for &s in samples {
        require_non_real(s)?;
        out.push(ProbeSample {
            s,
            study: kernel_dim_study(op, s, &truncations, tol)?,
        });
    }
    let stable = out.iter().all(|p| p.study.stable);
    let first = out[0].study.kernel_dim;
    let agree = out.iter().all(|p| p.study.kernel_dim == first);
    Ok(BnProbeReport {
        n_base,
        samples: out,
        candidate_rank: if stable && agree { Some(first) } else { None },
        stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{s_pencil, s_shift_apply};
    use approx::assert_abs_diff_eq;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    /// Independent oracle: solve the pencil kernel recurrence row by row,
    /// `x_{n+2} = (2·Re(s)·wₙ·x_{n+1} - |s|²·xₙ)/(wₙ·w_{n+1})`.
    fn recurrence_oracle(
        weights: &WeightRule,
        s: Quaternion,
        x1: Quaternion,
        x2: Quaternion,
        len: usize,
    ) -> QVector {
        let mut out = vec![x1, x2];
        let two_re = 2.0 * s.re();
        let m2 = s.norm_sqr();
        for n in 1..=len - 2 {
            let wn = weights.weight(n).unwrap().re();
            let wn1 = weights.weight(n + 1).unwrap().re();
            let next = (out[n] * (two_re * wn) - out[n - 1] * m2) * (1.0 / (wn * wn1));
            out.push(next);
        }
        QVector::new(out)
    }

    #[test]
    fn truncation_lays_band_and_patch() {
        let op = BandedOperator::with_diag(Quaternion::I, WeightRule::Ratio)
            .patched(&[((0, 1), q(1.0, 0.0, 1.0, 0.0)), ((2, 0), Quaternion::K)]);
        let t = op.truncate(4).unwrap();
        assert_eq!(t.get(0, 0), Quaternion::I);
        assert_eq!(
            t.get(0, 1),
            q(1.0, 0.0, 1.0, 0.0),
            "patch overrides the band"
        );
        assert_eq!(t.get(1, 2), Quaternion::from_real(1.5));
        assert_eq!(t.get(2, 3), Quaternion::from_real(4.0 / 3.0));
        assert_eq!(t.get(2, 0), Quaternion::K, "patch adds outside the band");
        assert!(matches!(
            op.truncate(2),
            Err(Error::PatchOutOfRange((2, 0), 2))
        ));
    }

    #[test]
    fn weight_rules_validate() {
        assert!(matches!(
            WeightRule::Const(Quaternion::ZERO).weight(3),
            Err(Error::ZeroWeight(3))
        ));
        assert!(matches!(
            WeightRule::Table(vec![Quaternion::ONE]).weight(2),
            Err(Error::WeightOutOfRange { index: 2, len: 1 })
        ));
        assert!(WeightRule::Const(Quaternion::J)
            .positive_real_up_to(1)
            .is_err());
        assert!(WeightRule::Ratio.positive_real_up_to(100).is_ok());
    }

    #[test]
    fn closed_form_matches_recurrence_oracle() {
        let weights = WeightRule::Table(
            [1.5, 0.8, 1.2, 0.9, 1.1, 0.7, 1.3, 1.0, 0.6, 1.4, 0.95]
                .iter()
                .map(|&w| Quaternion::from_real(w))
                .collect(),
        );
        let s = q(0.3, 0.4, 0.2, -0.1);
        let x1 = q(1.0, -0.5, 0.25, 0.75);
        let x2 = q(0.2, 0.9, -0.4, 0.1);
        let closed = s_eigvec_closed_form(&weights, s, x1, x2, 12).unwrap();
        let oracle = recurrence_oracle(&weights, s, x1, x2, 12);
        let scale = oracle.norm();
        assert!(
            closed.max_abs_diff(&oracle) < 1e-12 * scale,
            "closed form deviates from the recurrence"
        );
    }

    #[test]
    fn closed_form_annihilates_interior_pencil_rows() {
        let weights = WeightRule::Ratio;
        let s = q(0.2, 0.6, 0.3, 0.0);
        let x = s_eigvec_closed_form(&weights, s, Quaternion::ONE, Quaternion::J, 16).unwrap();
        let op = BandedOperator::backward_shift(weights);
        let t = op.truncate(16).unwrap();
        let res = s_pencil(&t, s).mul_vec(&x);
        for m in 0..14 {
            assert!(
                res.entries[m].norm() < 1e-12 * x.norm(),
                "row {m} not annihilated: {}",
                res.entries[m]
            );
        }
    }

    #[test]
    fn closed_form_rejects_bad_parameters() {
        let w = WeightRule::Const(Quaternion::ONE);
        assert!(matches!(
            s_eigvec_closed_form(
                &w,
                Quaternion::from_real(0.5),
                Quaternion::ONE,
                Quaternion::ONE,
                8
            ),
            Err(Error::RealParameter(_))
        ));
        let wq = WeightRule::Const(Quaternion::I);
        assert!(matches!(
            s_eigvec_closed_form(&wq, Quaternion::I, Quaternion::ONE, Quaternion::ONE, 8),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn geometric_seed_collapses_the_closed_form() {
        let weights = WeightRule::Table(
            [2.0, 0.5, 1.0, 4.0, 0.25, 2.0, 1.0]
                .iter()
                .map(|&w| Quaternion::from_real(w))
                .collect(),
        );
        let s = q(0.25, 0.5, 0.0, 0.0);
        let w1 = 2.0;
        let closed = s_eigvec_closed_form(&weights, s, Quaternion::ONE, s / w1, 8).unwrap();
        let geo = geometric_eigvec(&weights, s, Quaternion::ONE, 8).unwrap();
        assert!(
            closed.max_abs_diff(&geo) <= 64.0 * f64::EPSILON * geo.norm(),
            "geometric seed must reproduce the geometric vector to machine precision"
        );
    }

    #[test]
    fn geometric_vector_is_an_interior_eigenvector() {
        let weights = WeightRule::Const(Quaternion::from_real(1.0));
        let s = q(0.1, 0.3, -0.5, 0.2);
        let x = geometric_eigvec(&weights, s, q(0.5, 0.5, 0.5, -0.5), 10).unwrap();
        let t = BandedOperator::backward_shift(weights)
            .truncate(10)
            .unwrap();
        let res = s_shift_apply(&t, s, &x);
        for m in 0..9 {
            assert!(res.entries[m].norm() < 1e-13 * x.norm());
        }
        // The last row is the truncation artefact.
        assert!(res.entries[9].norm() > 1e-6 * x.norm());
    }

    #[test]
    fn positivization_matches_the_phase_recursion() {
        let op = BandedOperator::backward_shift(WeightRule::Const(Quaternion::I));
        let p = positivize(&op, 4).unwrap();
        let expect = [
            Quaternion::ONE,
            -Quaternion::I,
            -Quaternion::ONE,
            Quaternion::I,
        ];
        for (d, e) in p.phases.iter().zip(expect) {
            assert_abs_diff_eq!(*d, e, epsilon = 1e-15);
        }
        // TX = XT̃ and X unitary.
        let t = op.truncate(4).unwrap();
        let lhs = &t * &p.x;
        let rhs = &p.x * &p.t_abs;
        assert!(lhs.sub(&rhs).max_abs() < 1e-15);
        let gram = &p.x.adjoint() * &p.x;
        assert!(gram.sub(&QMatrix::identity(4)).max_abs() < 1e-15);
    }

    #[test]
    fn positivization_for_generic_weights() {
        let weights = WeightRule::Table(vec![
            q(0.0, 1.0, 1.0, 0.0),
            q(1.0, -1.0, 0.5, 2.0),
            q(0.0, 0.0, 0.0, -2.0),
            q(3.0, 0.0, 0.0, 0.0),
        ]);
        let op = BandedOperator::backward_shift(weights);
        let p = positivize(&op, 5).unwrap();
        let t = op.truncate(5).unwrap();
        assert!((&t * &p.x).sub(&(&p.x * &p.t_abs)).max_abs() < 1e-14);
        for r in 0..4 {
            let w = p.t_abs.get(r, r + 1);
            assert!(w.is_real(0.0) && w.re() > 0.0, "positivized weight {w}");
        }
    }

    #[test]
    fn positivization_rejects_unsupported_shapes() {
        let op = BandedOperator::with_diag(Quaternion::J, WeightRule::Ratio);
        assert!(positivize(&op, 4).is_err());
        let patched =
            BandedOperator::backward_shift(WeightRule::Ratio).patched(&[((0, 0), Quaternion::ONE)]);
        assert!(positivize(&patched, 4).is_err());
    }

    #[test]
    fn rsp_is_exact_for_power_of_two_weights() {
        let two = rsp(&WeightRule::Const(Quaternion::from_real(2.0)), 512).unwrap();
        assert_eq!(two.value, 2.0, "must be exactly 2");
        let one = rsp(&WeightRule::Const(Quaternion::ONE), 512).unwrap();
        assert_eq!(one.value, 1.0, "must be exactly 1");
    }

    #[test]
    fn rsp_of_the_ratio_rule_tends_to_one() {
        // w₁⋯wₙ = n+1, so the root is (n+1)^{1/n} → 1 from above.
        let r = rsp(&WeightRule::Ratio, 1000).unwrap();
        assert!(r.value > 1.0 && r.value < 1.01, "got {}", r.value);
        assert_abs_diff_eq!(
            r.final_estimate,
            1001f64.powf(1.0 / 1000.0),
            epsilon = 1e-12
        );
    }

    #[test]
    fn rsp_uses_the_modulus_of_quaternion_weights() {
        let r = rsp(&WeightRule::Const(2.0 * Quaternion::K), 64).unwrap();
        assert_eq!(r.value, 2.0);
    }

    #[test]
    fn study_certifies_the_two_dimensional_kernel_of_the_plain_shift() {
        // Pure backward shift, weights 1: every non-real |s| < 1 carries a
        // two-parameter closed-form kernel family.
        let op = BandedOperator::backward_shift(WeightRule::Const(Quaternion::ONE));
        let s = q(0.0, 0.5, 0.0, 0.0);
        let study = kernel_dim_study(&op, s, &[16, 32, 64], 1e-8).unwrap();
        assert_eq!(study.kernel_dim, 2, "trajectories: {:?}", study.pairs);
        assert!(study.stable);
        // At the largest truncation the bare threshold count agrees.
        assert_eq!(*study.threshold_counts.last().unwrap(), 2);
    }

    #[test]
    fn study_rejects_degenerate_configs() {
        let op = BandedOperator::backward_shift(WeightRule::Const(Quaternion::ONE));
        assert!(kernel_dim_study(&op, Quaternion::I, &[16], 1e-8).is_err());
        assert!(kernel_dim_study(&op, Quaternion::I, &[32, 16], 1e-8).is_err());
    }

    #[test]
    fn probe_reports_a_common_rank() {
        let op = BandedOperator::backward_shift(WeightRule::Const(Quaternion::ONE));
        let samples = [q(0.0, 0.5, 0.0, 0.0), q(0.2, 0.0, 0.4, 0.0)];
        let probe = bn_probe(&op, &samples, 8, 1e-8).unwrap();
        assert_eq!(probe.candidate_rank, Some(2));
        assert!(probe.stable);
        assert!(bn_probe(&op, &[Quaternion::from_real(0.5)], 8, 1e-8).is_err());
    }
}
