//! Jet frames of pencil kernels and the rigidity machinery built on them.
//!
//! Over a reduced non-real point `ω₀ = a + bi` (with `b > 0`), the right
//! eigenvectors of a quaternionic operator `T` form the fiber of a bundle.
//! This module extracts an orthonormal seed basis of that fiber from the
//! complexified resolvent `A = T_ℂ - ω₀I`, then builds *minimal-norm jets*
//!
//! ```text
//! γ⁽ᵏ⁾ = k! · (A⁺)ᵏ γ,          A⁺ = pseudo-inverse of A,
//! ```
//!
//! which satisfy the derivative identities of an analytic kernel section:
//!
//! ```text
//! (T - ·ω₀) γ⁽ᵏ⁾          = k γ⁽ᵏ⁻¹⁾
//! Q_{ω₀}(T) γ⁽ᵏ⁾          = k(k-1) γ⁽ᵏ⁻²⁾ + k γ⁽ᵏ⁻¹⁾(ω₀ - ω̄₀)
//! Q_{ω₀}(T)ᵐ γ⁽ᵐ⁾         = m! γ (ω₀ - ω̄₀)ᵐ
//! ```
//!
//! The inner products of the jets ([`gram_data`]) are a complete unitary
//! invariant of the restriction of `T` to the span: two operators whose jet
//! Gram tables agree are intertwined by a unitary, and [`rigidity_check`]
//! *constructs* that unitary by replaying one side's Gram–Schmidt
//! elimination on the other side's jets. [`operator_equivalence`] adds the
//! one gauge degree of freedom a rank-one frame has — a right complex phase
//! `γ ↦ γ·e^{iθ}`, which conjugates every Gram entry (`z₁ + jz₂ ↦
//! z₁ + jz₂e^{2iθ}`) — and decides equivalence up to it. Frames of rank ≥ 2
//! additionally admit constant complex-linear mixings of the seeds; those
//! are not searched, so for higher ranks a `false` verdict means "not
//! equivalent with aligned seeds".

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt_q, h_rank, QMatrix, QVector};
use crate::numeric::{pinv_from_parts, svd};
use crate::quaternion::Quaternion;
use crate::spectra::s_pencil;

/// Tunables for [`frame_from_right_inverse`].
#[derive(Debug, Clone, Copy)]
pub struct FrameOptions {
    /// Relative singular-value threshold below which a direction counts as
    /// kernel (`σ ≤ kernel_tol · σ_max`).
    pub kernel_tol: f64,
    /// Relative cutoff for the pseudo-inverse used to climb jet orders.
    pub pinv_cutoff: f64,
    /// Radius of the disk on which the jets are meant to be trusted as a
    /// Taylor expansion; only used by the growth guard.
    pub guard_radius: f64,
    /// Maximum allowed value of `‖γ⁽ᵏ⁾‖·rᵏ/k!` relative to `‖γ‖` before the
    /// frame is rejected as ill-conditioned.
    pub guard_factor: f64,
}

impl Default for FrameOptions {
    fn default() -> Self {
        FrameOptions {
            kernel_tol: 1e-8,
            pinv_cutoff: 1e-10,
            guard_radius: 0.25,
            guard_factor: 1e6,
        }
    }
}

/// The jets of the kernel fiber of `T - ·ω₀` at a reduced base point.
#[derive(Debug, Clone)]
pub struct JetFrame {
    /// Reduced base point (complex, strictly upper half-plane).
    pub base: Quaternion,
    /// Highest jet order `K` (jets `0..=K` are stored).
    pub order: usize,
    /// Quaternionic dimension of the kernel fiber.
    pub rank: usize,
    /// `jets[i][k]` is the `k`-th minimal-norm jet grown from seed `i`.
    pub jets: Vec<Vec<QVector>>,
    /// Smallest retained (non-kernel) singular value over `σ_max`; the
    /// margin separating kernel from range directions.
    pub kernel_gap: f64,
}

impl JetFrame {
    /// Ambient space dimension.
    pub fn ambient_dim(&self) -> usize {
        self.jets
            .first()
            .and_then(|js| js.first())
            .map_or(0, QVector::len)
    }

    /// The `k`-th jet grown from seed `i`.
    pub fn jet(&self, i: usize, k: usize) -> &QVector {
        &self.jets[i][k]
    }

    /// All jets in order-major order: first every seed's 0-jet, then every
    /// seed's 1-jet, and so on. This is the pooling order the rigidity
    /// machinery uses for Gram–Schmidt.
    pub fn flat_jets(&self) -> Vec<QVector> {
        let mut out = Vec::with_capacity(self.rank * (self.order + 1));
        for k in 0..=self.order {
            for js in &self.jets {
                out.push(js[k].clone());
            }
        }
        out
    }

    /// The frame with every jet multiplied by a complex scalar on the right
    /// (the gauge action; `|c| = 1` keeps the seeds normalized).
    pub fn scale_right_complex(&self, c: Complex64) -> JetFrame {
        let q = Quaternion::from_complex(c);
        JetFrame {
            base: self.base,
            order: self.order,
            rank: self.rank,
            jets: self
                .jets
                .iter()
                .map(|js| js.iter().map(|v| v.scale_right(q)).collect())
                .collect(),
            kernel_gap: self.kernel_gap,
        }
    }

    /// The frame pushed forward through an operator (`jet ↦ U·jet`). When
    /// `U` is unitary this is the jet frame of `U T U*` with seeds aligned
    /// to this frame's seeds.
    pub fn transform(&self, u: &QMatrix) -> Result<JetFrame> {
        if u.ncols() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "transform: operator has {} columns, frame lives in dimension {}",
                u.ncols(),
                self.ambient_dim()
            )));
        }
        Ok(JetFrame {
            base: self.base,
            order: self.order,
            rank: self.rank,
            jets: self
                .jets
                .iter()
                .map(|js| js.iter().map(|v| u.mul_vec(v)).collect())
                .collect(),
            kernel_gap: self.kernel_gap,
        })
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|t| t as f64).product()
}

fn validate_base(omega0: Quaternion) -> Result<()> {
    let scale = 1.0 + omega0.norm();
    if !omega0.is_complex(1e-12 * scale) || omega0.x <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "base point {omega0} is not reduced: expected a + bi with b > 0 \
             (call Quaternion::reduced first)"
        )));
    }
    if omega0.im_norm() <= 1e-14 * scale {
        return Err(Error::RealParameter(omega0.re()));
    }
    Ok(())
}

/// Pins the gauge of a complexified kernel vector: rotates it by a unit
/// complex scalar so its largest-modulus component becomes real positive.
/// This makes the seed deterministic instead of inheriting the SVD's
/// arbitrary phase.
fn pin_phase(v: &mut [Complex64]) {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (idx, c) in v.iter().enumerate() {
        let n = c.norm_sqr();
        if n > best_norm {
            best_norm = n;
            best = idx;
        }
    }
    if best_norm == 0.0 {
        return;
    }
    let phase = v[best] / v[best].norm();
    let rot = phase.conj();
    for c in v.iter_mut() {
        *c *= rot;
    }
}

/// Builds the jet frame of `T` at the reduced point `ω₀`.
///
/// One SVD of `A = T_ℂ - ω₀I` yields both the kernel seeds (right singular
/// vectors of the near-zero singular values, phase-pinned) and the
/// pseudo-inverse used to climb the jet orders. Fails with
/// [`Error::EmptyKernel`] when `ω₀` is not in the point S-spectrum at the
/// given tolerance and with [`Error::IllConditioned`] when the jets grow
/// faster than any Taylor expansion valid on `guard_radius` could.
pub fn frame_from_right_inverse(
    t: &QMatrix,
    omega0: Quaternion,
    order: usize,
    opts: &FrameOptions,
) -> Result<JetFrame> {
    validate_base(omega0)?;
    let n = t.nrows();
    if n != t.ncols() {
        return Err(Error::DimensionMismatch(
            "jet frames need a square operator".into(),
        ));
    }
    let omega_c = omega0.reduced_complex();
    let tc = t.complex_rep();
    let mut a = tc.mat.clone();
    for d in 0..2 * n {
        a.set(d, d, a.get(d, d) - omega_c);
    }

    let parts = svd(&a)?;
    let sigma_max = parts.sigma.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return Err(Error::IllConditioned(
            "operator pencil is identically zero".into(),
        ));
    }
    let kernel_count = parts
        .sigma
        .iter()
        .filter(|&&s| s <= opts.kernel_tol * sigma_max)
        .count();
    if kernel_count == 0 {
        let rel_min = parts.sigma.last().copied().unwrap_or(0.0) / sigma_max;
        return Err(Error::EmptyKernel(rel_min));
    }
    let kept = 2 * n - kernel_count;
    let kernel_gap = if kept > 0 {
        parts.sigma[kept - 1] / sigma_max
    } else {
        f64::INFINITY
    };

    // The pseudo-inverse must drop at least every direction counted as
    // kernel: truncation puts the kernel singular values slightly above
    // zero, and letting the pinv keep them would amplify the jets by the
    // inverse of those near-zero values.
    let x = pinv_from_parts(&parts, opts.pinv_cutoff.max(opts.kernel_tol)).mat;

    let mut jets = Vec::with_capacity(kernel_count);
    for s in 0..kernel_count {
        let mut seed = parts.v.column(2 * n - 1 - s);
        pin_phase(&mut seed);
        let mut tower = Vec::with_capacity(order + 1);
        tower.push(QVector::from_complexified(&seed)?);
        let mut y = seed;
        for k in 1..=order {
            y = x.mul_vec(&y);
            let jet = QVector::from_complexified(&y)?.scale(factorial(k));
            let coeff = jet.norm() / factorial(k) * opts.guard_radius.powi(k as i32);
            if coeff > opts.guard_factor {
                return Err(Error::IllConditioned(format!(
                    "jet of order {k} grows too fast for a radius-{} expansion \
                     (coefficient {coeff:.3e})",
                    opts.guard_radius
                )));
            }
            tower.push(jet);
        }
        jets.push(tower);
    }

    Ok(JetFrame {
        base: omega0,
        order,
        rank: kernel_count,
        jets,
        kernel_gap,
    })
}

// ── Derivative identities ───────────────────────────────────────────────────

/// Relative residuals of the analytic-section identities on a jet frame.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    /// `‖(T-·ω₀)γ⁽ᵏ⁾ - kγ⁽ᵏ⁻¹⁾‖` (relative), indexed by `k = 0..=K`.
    pub first: Vec<f64>,
    /// `‖Q(T)γ⁽ᵏ⁾ - k(k-1)γ⁽ᵏ⁻²⁾ - kγ⁽ᵏ⁻¹⁾(ω₀-ω̄₀)‖` (relative), by `k`.
    pub second: Vec<f64>,
    /// Pencil-power residuals `Q(T)ᵐγ⁽ᵐ⁾ = m!γ(ω₀-ω̄₀)ᵐ` together with the
    /// annihilation of lower jets, indexed by `m = 1..`.
    pub power: Vec<f64>,
}

impl IdentityReport {
    /// Largest residual across every identity.
    pub fn max_residual(&self) -> f64 {
        self.first
            .iter()
            .chain(&self.second)
            .chain(&self.power)
            .fold(0.0f64, |acc, &r| acc.max(r))
    }
}

/// Verifies that the jets of `frame` behave like the Taylor jets of an
/// analytic kernel section of `t` (see the module docs for the identities).
/// Residuals are relative to the scale of the terms involved.
pub fn derivative_identity_check(t: &QMatrix, frame: &JetFrame) -> IdentityReport {
    let omega0 = frame.base;
    let spread = Quaternion::new(0.0, 2.0 * omega0.x, 0.0, 0.0); // ω₀ - ω̄₀
    let pencil = s_pencil(t, omega0);
    let pencil_fro = pencil.fro_norm();
    let t_fro = t.fro_norm();

    let mut first = vec![0.0f64; frame.order + 1];
    let mut second = vec![0.0f64; frame.order + 1];
    for js in &frame.jets {
        for k in 0..=frame.order {
            let jet = &js[k];
            let scale1 = (t_fro * jet.norm()).max(f64::MIN_POSITIVE);
            let mut r1 = t.mul_vec(jet).sub(&jet.scale_right(omega0));
            if k > 0 {
                r1 = r1.sub(&js[k - 1].scale(k as f64));
            }
            first[k] = first[k].max(r1.norm() / scale1);

            let scale2 = (pencil_fro * jet.norm()).max(f64::MIN_POSITIVE);
            let mut r2 = pencil.mul_vec(jet);
            if k > 0 {
                r2 = r2.sub(&js[k - 1].scale_right(spread).scale(k as f64));
            }
            if k > 1 {
                r2 = r2.sub(&js[k - 2].scale((k * (k - 1)) as f64));
            }
            second[k] = second[k].max(r2.norm() / scale2);
        }
    }

    let mut power = Vec::new();
    let mut pm = pencil.clone();
    for m in 1..=frame.order.min(3) {
        if m > 1 {
            pm = &pm * &pencil;
        }
        let pm_fro = pm.fro_norm();
        let mut worst = 0.0f64;
        for js in &frame.jets {
            // Q(T)ᵐ annihilates jets of order < m ...
            for jet in js.iter().take(m) {
                let scale = (pm_fro * jet.norm()).max(f64::MIN_POSITIVE);
                worst = worst.max(pm.mul_vec(jet).norm() / scale);
            }
            // ... and collapses the m-th jet back onto the seed.
            let mut spread_pow = Quaternion::ONE;
            for _ in 0..m {
                spread_pow = spread_pow * spread;
            }
            let rhs = js[0].scale_right(spread_pow).scale(factorial(m));
            let scale = (pm_fro * js[m].norm()).max(f64::MIN_POSITIVE);
            worst = worst.max(pm.mul_vec(&js[m]).sub(&rhs).norm() / scale);
        }
        power.push(worst);
    }

    IdentityReport {
        first,
        second,
        power,
    }
}

// ── Gram data ───────────────────────────────────────────────────────────────

/// The full table of jet inner products of a frame.
#[derive(Debug, Clone)]
pub struct GramData {
    /// Highest jet order.
    pub order: usize,
    /// Fiber rank (block size).
    pub rank: usize,
    /// `table[m][k]` is the `rank × rank` block with entries
    /// `⟨γᵢ⁽ᵐ⁾, γⱼ⁽ᵏ⁾⟩`.
    pub table: Vec<Vec<QMatrix>>,
}

/// Position of a Gram entry: block row `m`, block column `k`, seeds `(i,j)`.
pub type GramIndex = (usize, usize, usize, usize);

/// Outcome of comparing two Gram tables.
#[derive(Debug, Clone)]
pub struct GramComparison {
    /// Whether the decision blocks (`(m, 0)` for every `m`) agree within
    /// tolerance.
    pub congruent: bool,
    /// Largest absolute deviation over the decision blocks.
    pub max_decision_dev: f64,
    /// Largest absolute deviation over the whole table.
    pub max_full_dev: f64,
    /// First decision entry exceeding tolerance, if any.
    pub first_mismatch: Option<GramIndex>,
}

/// Computes every jet inner product of a frame.
pub fn gram_data(frame: &JetFrame) -> GramData {
    let r = frame.rank;
    let table = (0..=frame.order)
        .map(|m| {
            (0..=frame.order)
                .map(|k| QMatrix::from_fn(r, r, |i, j| frame.jets[i][m].inner(&frame.jets[j][k])))
                .collect()
        })
        .collect();
    GramData {
        order: frame.order,
        rank: r,
        table,
    }
}

impl GramData {
    /// Largest entry modulus in the table.
    pub fn max_abs(&self) -> f64 {
        self.table
            .iter()
            .flatten()
            .map(QMatrix::max_abs)
            .fold(0.0, f64::max)
    }

    /// Compares two tables entrywise. The verdict is decided on the
    /// `(m, 0)` blocks — the pairings of every jet against the seeds, which
    /// are exactly the data the rigidity theorem consumes — while the
    /// deviation over the full table is also reported. Each entry is held
    /// to a tolerance relative to its own magnitude: jet norms grow like
    /// `k!`, so a single table-wide scale would let the largest block
    /// drown out genuine disagreements among the low-order pairings.
    pub fn congruent_to(&self, other: &GramData, tol: f64) -> Result<GramComparison> {
        if self.order != other.order || self.rank != other.rank {
            return Err(Error::RankMismatch(format!(
                "gram tables have shapes (order {}, rank {}) vs (order {}, rank {})",
                self.order, other.order, self.rank, other.rank
            )));
        }
        let mut congruent = true;
        let mut max_decision = 0.0f64;
        let mut max_full = 0.0f64;
        let mut first_mismatch = None;
        for m in 0..=self.order {
            for k in 0..=self.order {
                let dev = self.table[m][k].sub(&other.table[m][k]).max_abs();
                max_full = max_full.max(dev);
                if k == 0 {
                    max_decision = max_decision.max(dev);
                    for i in 0..self.rank {
                        for j in 0..self.rank {
                            let a = self.table[m][k].get(i, j);
                            let b = other.table[m][k].get(i, j);
                            let limit = tol * (1.0 + a.norm() + b.norm());
                            if a.max_abs_diff(b) > limit {
                                congruent = false;
                                if first_mismatch.is_none() {
                                    first_mismatch = Some((m, k, i, j));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(GramComparison {
            congruent,
            max_decision_dev: max_decision,
            max_full_dev: max_full,
            first_mismatch,
        })
    }
}

// ── Rigidity ────────────────────────────────────────────────────────────────

/// Outcome of a rigidity comparison between two frames.
#[derive(Debug, Clone)]
pub struct RigidityReport {
    /// Whether the Gram tables agree on the decision blocks.
    pub congruent: bool,
    /// The underlying table comparison.
    pub gram: GramComparison,
    /// ℍ-dimension of the jet span (equals `rank · (order+1)` when the jets
    /// are independent).
    pub span_dim: usize,
    /// When congruent: worst deviation of the replayed second basis from
    /// orthonormality (small iff the full tables, not just the decision
    /// blocks, agree).
    pub replay_orthonormality: Option<f64>,
    /// When congruent: the partial isometry sending the first frame's jets
    /// to the second frame's (zero on the orthocomplement of the span).
    pub intertwiner: Option<QMatrix>,
    /// When congruent and operators were supplied: worst relative residual
    /// of `U T₁ v = T₂ U v` over the orthonormal span basis.
    pub intertwiner_residual: Option<f64>,
}

/// Decides whether two jet frames are unitarily congruent and, if so,
/// constructs the intertwining isometry.
///
/// Both frames must share the base point, order, rank and ambient
/// dimension. The verdict compares Gram tables; on success, the first
/// frame's Gram–Schmidt elimination is replayed on the second frame's jets
/// (identical Gram data makes the replayed family orthonormal), and the
/// unitary is assembled as `U = Σ ẽ_l ⟨e_l, ·⟩`. When `ops = (T₁, T₂)` is
/// given, the residual of the intertwining relation on the span is
/// reported as well.
pub fn rigidity_check(
    f1: &JetFrame,
    f2: &JetFrame,
    ops: Option<(&QMatrix, &QMatrix)>,
    tol: f64,
) -> Result<RigidityReport> {
    if f1.base.max_abs_diff(f2.base) > 1e-10 * (1.0 + f1.base.norm()) {
        return Err(Error::RankMismatch(format!(
            "frames sit at different base points {} vs {}",
            f1.base, f2.base
        )));
    }
    if f1.ambient_dim() != f2.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "frames live in different ambient dimensions {} vs {}",
            f1.ambient_dim(),
            f2.ambient_dim()
        )));
    }
    let g1 = gram_data(f1);
    let g2 = gram_data(f2);
    let gram = g1.congruent_to(&g2, tol)?;

    let pool1 = f1.flat_jets();
    let gs1 = gram_schmidt_q(&pool1, 1e-10)?;
    let span_dim = gs1.basis.len();

    if !gram.congruent {
        return Ok(RigidityReport {
            congruent: false,
            gram,
            span_dim,
            replay_orthonormality: None,
            intertwiner: None,
            intertwiner_residual: None,
        });
    }

    let pool2 = f2.flat_jets();
    let basis2 = gs1.replay(&pool2)?;
    let mut ortho_dev = 0.0f64;
    for a in 0..basis2.len() {
        for b in a..basis2.len() {
            let mut ip = basis2[a].inner(&basis2[b]);
            if a == b {
                ip -= Quaternion::ONE;
            }
            ortho_dev = ortho_dev.max(ip.norm());
        }
    }

    let n = f1.ambient_dim();
    let mut u = QMatrix::zeros(n, n);
    for (e1, e2) in gs1.basis.iter().zip(&basis2) {
        for a in 0..n {
            let lift = e2.entries[a];
            if lift == Quaternion::ZERO {
                continue;
            }
            for b in 0..n {
                u.set(a, b, u.get(a, b) + lift * e1.entries[b].conj());
            }
        }
    }

    let residual = ops.map(|(t1, t2)| intertwining_residual(&u, t1, t2, &gs1.basis));

    Ok(RigidityReport {
        congruent: true,
        gram,
        span_dim,
        replay_orthonormality: Some(ortho_dev),
        intertwiner: Some(u),
        intertwiner_residual: residual,
    })
}

/// Worst relative residual of `U T₁ v = T₂ U v` over a family of vectors.
pub fn intertwining_residual(u: &QMatrix, t1: &QMatrix, t2: &QMatrix, span: &[QVector]) -> f64 {
    let scale = (1.0 + t1.fro_norm().max(t2.fro_norm())).max(f64::MIN_POSITIVE);
    span.iter()
        .map(|v| {
            let lhs = u.mul_vec(&t1.mul_vec(v));
            let rhs = t2.mul_vec(&u.mul_vec(v));
            lhs.sub(&rhs).norm() / (scale * v.norm().max(f64::MIN_POSITIVE))
        })
        .fold(0.0, f64::max)
}

// ── Gauge-aware equivalence ─────────────────────────────────────────────────

/// Outcome of a gauge-aware local equivalence test.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    /// Whether the frames are congruent up to a right complex phase.
    pub equivalent: bool,
    /// Common fiber rank (0 when the ranks already disagree).
    pub rank: usize,
    /// The aligning phase `θ ∈ [0, π)` when one was needed (0 when the
    /// frames match as-is).
    pub phase: Option<f64>,
    /// Intertwining isometry on the jet span, when equivalent.
    pub intertwiner: Option<QMatrix>,
    /// Residual of the intertwining relation, when equivalent.
    pub intertwiner_residual: Option<f64>,
    /// Human-readable explanation of the verdict.
    pub detail: String,
}

/// Decides local unitary equivalence of `t1` and `t2` at `ω₀` from their
/// jet frames of the given order, searching the right-phase gauge orbit.
///
/// The phase is not scanned: since a gauge change multiplies the `j`-part
/// of every Gram entry by `e^{2iθ}` and fixes the complex part, the complex
/// parts and `j`-part moduli must already match entrywise — and when they
/// do, the phase is read off in closed form from the aligned `j`-parts and
/// then verified by a full rigidity check.
pub fn operator_equivalence(
    t1: &QMatrix,
    t2: &QMatrix,
    omega0: Quaternion,
    order: usize,
    opts: &FrameOptions,
    tol: f64,
) -> Result<EquivalenceReport> {
    let f1 = frame_from_right_inverse(t1, omega0, order, opts)?;
    let f2 = frame_from_right_inverse(t2, omega0, order, opts)?;
    if f1.rank != f2.rank {
        return Ok(EquivalenceReport {
            equivalent: false,
            rank: 0,
            phase: None,
            intertwiner: None,
            intertwiner_residual: None,
            detail: format!("fiber ranks differ: {} vs {}", f1.rank, f2.rank),
        });
    }
    let rank = f1.rank;

    let as_is = rigidity_check(&f1, &f2, Some((t1, t2)), tol)?;
    if as_is.congruent {
        return Ok(EquivalenceReport {
            equivalent: true,
            rank,
            phase: Some(0.0),
            intertwiner: as_is.intertwiner,
            intertwiner_residual: as_is.intertwiner_residual,
            detail: "gram tables agree without gauge adjustment".into(),
        });
    }

    // Read the candidate phase off the j-parts of the two Gram tables.
    let g1 = gram_data(&f1);
    let g2 = gram_data(&f2);
    let scale = 1.0 + g1.max_abs().max(g2.max_abs());
    let mut phase_acc = Complex64::new(0.0, 0.0);
    for m in 0..=order {
        for k in 0..=order {
            for i in 0..rank {
                for j in 0..rank {
                    let qa = g1.table[m][k].get(i, j);
                    let qb = g2.table[m][k].get(i, j);
                    // Entries span many orders of magnitude (jet norms grow
                    // like k!), so each is held to its own relative limit.
                    let limit = tol * (1.0 + qa.norm() + qb.norm());
                    let (a1, a2) = qa.complex_parts();
                    let (b1, b2) = qb.complex_parts();
                    if (a1 - b1).norm() > limit {
                        return Ok(EquivalenceReport {
                            equivalent: false,
                            rank,
                            phase: None,
                            intertwiner: None,
                            intertwiner_residual: None,
                            detail: format!(
                                "gauge-invariant complex parts differ at block \
                                 ({m},{k}) entry ({i},{j}): {a1} vs {b1}"
                            ),
                        });
                    }
                    if (a2.norm() - b2.norm()).abs() > limit {
                        return Ok(EquivalenceReport {
                            equivalent: false,
                            rank,
                            phase: None,
                            intertwiner: None,
                            intertwiner_residual: None,
                            detail: format!(
                                "gauge-invariant j-part moduli differ at block \
                                 ({m},{k}) entry ({i},{j}): {} vs {}",
                                a2.norm(),
                                b2.norm()
                            ),
                        });
                    }
                    phase_acc += a2.conj() * b2;
                }
            }
        }
    }

    if phase_acc.norm() <= (tol * scale).powi(2) {
        return Ok(EquivalenceReport {
            equivalent: false,
            rank,
            phase: None,
            intertwiner: None,
            intertwiner_residual: None,
            detail: "gram tables differ but expose no j-part to align a phase with".into(),
        });
    }

    let mut theta = 0.5 * phase_acc.arg();
    if theta < 0.0 {
        theta += std::f64::consts::PI;
    }
    let rotated = f1.scale_right_complex(Complex64::from_polar(1.0, theta));
    let after = rigidity_check(&rotated, &f2, Some((t1, t2)), tol)?;
    if after.congruent {
        Ok(EquivalenceReport {
            equivalent: true,
            rank,
            phase: Some(theta),
            intertwiner: after.intertwiner,
            intertwiner_residual: after.intertwiner_residual,
            detail: format!("gram tables agree after right phase θ = {theta:.6}"),
        })
    } else {
        Ok(EquivalenceReport {
            equivalent: false,
            rank,
            phase: Some(theta),
            intertwiner: None,
            intertwiner_residual: None,
            detail: format!(
                "best-fit phase θ = {theta:.6} still leaves a gram deviation of {:.3e}",
                after.gram.max_decision_dev
            ),
        })
    }
}

// ── Jet independence ────────────────────────────────────────────────────────

/// Outcome of [`jet_basis_check`].
#[derive(Debug, Clone)]
pub struct BasisReport {
    /// `rank · m`, the dimension the jets of orders `< m` should span.
    pub expected: usize,
    /// ℍ-rank the jets actually span.
    pub found: usize,
    /// Worst relative norm of `Q(T)ᵐ` applied to those jets (they all lie
    /// in the pencil-power kernel).
    pub annihilation: f64,
    /// Whether `found == expected`.
    pub independent: bool,
}

/// Checks that the jets of orders `0..m` form an ℍ-basis of the kernel of
/// the `m`-th pencil power.
pub fn jet_basis_check(t: &QMatrix, frame: &JetFrame, m: usize) -> Result<BasisReport> {
    if m == 0 || m > frame.order + 1 {
        return Err(Error::InvalidConfig(format!(
            "jet basis order m = {m} must be in 1..={}",
            frame.order + 1
        )));
    }
    let mut family = Vec::with_capacity(frame.rank * m);
    for js in &frame.jets {
        for jet in js.iter().take(m) {
            family.push(jet.clone());
        }
    }
    let found = h_rank(&family, 1e-8)?;

    let pencil = s_pencil(t, frame.base);
    let mut pm = pencil.clone();
    for _ in 1..m {
        pm = &pm * &pencil;
    }
    let pm_fro = pm.fro_norm().max(f64::MIN_POSITIVE);
    let annihilation = family
        .iter()
        .map(|v| pm.mul_vec(v).norm() / (pm_fro * v.norm().max(f64::MIN_POSITIVE)))
        .fold(0.0, f64::max);

    let expected = frame.rank * m;
    Ok(BasisReport {
        expected,
        found,
        annihilation,
        independent: found == expected,
    })
}

// ── Scalar rescaling ────────────────────────────────────────────────────────

/// The frame of the rescaled sections `γᵢ(ω)·f(ω)` for a complex scalar
/// function with Taylor coefficients `taylor[d]` at the base point
/// (`f(ω) = Σ c_d (ω-ω₀)^d`, so `taylor[0]` must be nonzero for the result
/// to stay a frame). Jets transform through the Leibniz convolution
/// `γ̂⁽ᵐ⁾ = Σ_l (m!/l!) γ⁽ˡ⁾ · c_{m-l}`.
pub fn rescale_frame(frame: &JetFrame, taylor: &[Complex64]) -> Result<JetFrame> {
    if taylor.len() < frame.order + 1 {
        return Err(Error::InvalidConfig(format!(
            "rescaling a frame of order {} needs {} Taylor coefficients, got {}",
            frame.order,
            frame.order + 1,
            taylor.len()
        )));
    }
    if taylor[0].norm() == 0.0 {
        return Err(Error::InvalidConfig(
            "rescaling function vanishes at the base point".into(),
        ));
    }
    let n = frame.ambient_dim();
    let jets = frame
        .jets
        .iter()
        .map(|js| {
            (0..=frame.order)
                .map(|m| {
                    let mut out = QVector::zeros(n);
                    for (l, jet) in js.iter().enumerate().take(m + 1) {
                        let w = factorial(m) / factorial(l);
                        let c = Quaternion::from_complex(taylor[m - l]);
                        out = out.add(&jet.scale_right(c).scale(w));
                    }
                    out
                })
                .collect()
        })
        .collect();
    Ok(JetFrame {
        base: frame.base,
        order: frame.order,
        rank: frame.rank,
        jets,
        kernel_gap: frame.kernel_gap,
    })
}
