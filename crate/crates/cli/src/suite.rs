//! The verification suite: twelve timed checks, each backed by library
//! calls, exercising the toolkit's headline guarantees end to end — from
//! the complexification homomorphism through rigidity, canonical forms and
//! curvature on the built-in model operators.
//!
//! Each criterion states its own sizes and tolerances; the run
//! configuration contributes the random seed (and the usual validation
//! guard). A criterion fails either on its mathematical verdict or by
//! exceeding its wall-time budget.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::Instant;

use num_complex::Complex64;
use qcd_core::bundles::{
    derivative_identity_check, frame_from_right_inverse, gram_data, operator_equivalence,
    rigidity_check, FrameOptions, JetFrame,
};
use qcd_core::canonical::{
    ad_theta_apply, ad_theta_equivalent, canonical_matrix, complex_rep_equivalence, curvature_grid,
};
use qcd_core::linalg::householder_random_unitary;
use qcd_core::models::{
    curvature_twins, half_i_expected_dim, half_i_model, half_i_sample_points, twin_sections,
};
use qcd_core::shifts::{
    geometric_eigvec, kernel_dim_study, rsp, s_eigvec_closed_form, BandedOperator, WeightRule,
};
use qcd_core::spectra::{s_pencil, s_shift_apply};
use qcd_core::{QMatrix, QVector, Quaternion, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::report::{OutcomeDto, SuiteReport, SCHEMA};

/// One suite criterion: a named, time-budgeted check.
pub struct Criterion {
    /// Stable identifier (`C01`…`C11`).
    pub id: &'static str,
    /// What the check verifies.
    pub title: &'static str,
    /// Wall-time budget in milliseconds, when the check carries one.
    pub limit_millis: Option<u128>,
    run: fn(&RunConfig) -> Result<(bool, String)>,
}

/// The eleven directly runnable criteria; the twelfth (total wall time) is
/// synthesized by [`run_suite`].
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: "C01",
            title: "complexification is a *-homomorphism",
            limit_millis: Some(5_000),
            run: c01_representation_homomorphism,
        },
        Criterion {
            id: "C02",
            title: "spherical pencil factors through the shifted operators",
            limit_millis: None,
            run: c02_pencil_factorization,
        },
        Criterion {
            id: "C03",
            title: "translated-shift kernel dimensions across truncations",
            limit_millis: Some(10_000),
            run: c03_kernel_dimensions,
        },
        Criterion {
            id: "C04",
            title: "closed-form eigenvectors match the row recurrence",
            limit_millis: None,
            run: c04_closed_form_eigenvectors,
        },
        Criterion {
            id: "C05",
            title: "root-product radius estimates",
            limit_millis: None,
            run: c05_radius_estimates,
        },
        Criterion {
            id: "C06",
            title: "jet derivative identities on the twisted pair",
            limit_millis: None,
            run: c06_jet_identities,
        },
        Criterion {
            id: "C07",
            title: "rigidity round-trip and Gram sensitivity",
            limit_millis: None,
            run: c07_rigidity_round_trip,
        },
        Criterion {
            id: "C08",
            title: "canonical matrices separate the twisted pair",
            limit_millis: None,
            run: c08_canonical_entries,
        },
        Criterion {
            id: "C09",
            title: "curvature agreement of the twisted pair",
            limit_millis: Some(20_000),
            run: c09_curvature_agreement,
        },
        Criterion {
            id: "C10",
            title: "equivalence transfers to the complexified side",
            limit_millis: None,
            run: c10_complexified_equivalence,
        },
        Criterion {
            id: "C11",
            title: "scalar phase-conjugation identity",
            limit_millis: None,
            run: c11_phase_conjugation,
        },
    ]
}

/// Runs one criterion, mapping library errors to a failed outcome.
pub fn run_criterion(c: &Criterion, cfg: &RunConfig) -> OutcomeDto {
    let start = Instant::now();
    let (passed, detail) = match (c.run)(cfg) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let millis = start.elapsed().as_millis();
    let in_budget = c.limit_millis.is_none_or(|limit| millis < limit);
    let detail = if in_budget {
        detail
    } else {
        format!(
            "{detail}; exceeded the {} ms budget",
            c.limit_millis.unwrap()
        )
    };
    OutcomeDto {
        id: c.id.to_string(),
        title: c.title.to_string(),
        passed: passed && in_budget,
        millis,
        detail,
    }
}

/// Runs the whole suite and appends the synthesized wall-time criterion.
pub fn run_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut outcomes: Vec<OutcomeDto> = criteria().iter().map(|c| run_criterion(c, cfg)).collect();
    let total_millis = start.elapsed().as_millis();
    let prior_ok = outcomes.iter().all(|o| o.passed);
    outcomes.push(OutcomeDto {
        id: "C12".to_string(),
        title: "full suite within the wall-time budget".to_string(),
        passed: prior_ok && total_millis < 60_000,
        millis: total_millis,
        detail: format!(
            "{} of {} criteria passed in {} ms (budget 60000 ms)",
            outcomes.iter().filter(|o| o.passed).count(),
            outcomes.len(),
            total_millis
        ),
    });
    let all_passed = outcomes.iter().all(|o| o.passed);
    Ok(SuiteReport {
        schema: SCHEMA,
        n: cfg.n,
        k: cfg.k,
        tol: cfg.tol,
        seed: cfg.seed,
        outcomes,
        all_passed,
        total_millis,
    })
}

// ── Random fixtures ─────────────────────────────────────────────────────────

fn rand_quat(rng: &mut ChaCha8Rng, scale: f64) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

fn rand_qmatrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> QMatrix {
    QMatrix::from_fn(n, n, |_, _| rand_quat(rng, scale))
}

fn rand_qvector(rng: &mut ChaCha8Rng, n: usize) -> QVector {
    QVector::new((0..n).map(|_| rand_quat(rng, 1.0)).collect())
}

/// Random parameter bounded away from the real axis, with `|s| ≤ bound`.
fn rand_nonreal(rng: &mut ChaCha8Rng, bound: f64) -> Quaternion {
    loop {
        let q = rand_quat(rng, 1.0);
        let norm = q.norm();
        if norm > 0.3 && q.im_norm() > 0.2 * norm {
            let mag = rng.gen_range(0.1..bound);
            return q * (mag / norm);
        }
    }
}

fn twin_frames_options() -> FrameOptions {
    FrameOptions::default()
}

// ── C01 ─────────────────────────────────────────────────────────────────────

fn c01_representation_homomorphism(cfg: &RunConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x01);
    let mut worst = 0.0_f64;
    let mut round_trips_exact = true;
    for _ in 0..1_000 {
        let a = rand_qmatrix(&mut rng, 8, 1.0);
        let b = rand_qmatrix(&mut rng, 8, 1.0);
        let product_rep = (&a * &b).complex_rep().mat;
        let rep_product = &a.complex_rep().mat * &b.complex_rep().mat;
        worst = worst.max(product_rep.sub(&rep_product).max_abs());
        let back = a.complex_rep().to_qmatrix(1e-12)?;
        round_trips_exact &= back.sub(&a).max_abs() == 0.0;
    }
    Ok((
        worst < 1e-12 && round_trips_exact,
        format!("max homomorphism defect {worst:.3e} over 1000 pairs; exact round trips: {round_trips_exact}"),
    ))
}

// ── C02 ─────────────────────────────────────────────────────────────────────

fn c02_pencil_factorization(cfg: &RunConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x02);
    let mut worst = 0.0_f64;
    for _ in 0..1_000 {
        let t = rand_qmatrix(&mut rng, 16, 0.5);
        let s = rand_nonreal(&mut rng, 1.5);
        let x = rand_qvector(&mut rng, 16);
        let direct = s_pencil(&t, s).mul_vec(&x);
        let factored = s_shift_apply(&t, s.conj(), &s_shift_apply(&t, s, &x));
        worst = worst.max(direct.sub(&factored).norm() / x.norm());
    }
    Ok((
        worst < 1e-12,
        format!("max relative factorization defect {worst:.3e} over 1000 draws"),
    ))
}

// ── C03 ─────────────────────────────────────────────────────────────────────

fn c03_kernel_dimensions(_cfg: &RunConfig) -> Result<(bool, String)> {
    let op = half_i_model();
    let truncations = [32, 64, 128];
    let mut ok = true;
    let mut parts = Vec::new();
    for lambda in half_i_sample_points() {
        let expected = half_i_expected_dim(lambda).expect("sample points lie in known regions");
        let study = kernel_dim_study(&op, Quaternion::from_complex(lambda), &truncations, 1e-8)?;
        ok &= study.kernel_dim == expected && study.stable;
        parts.push(format!(
            "dim({:.2}+{:.2}i) = {} (want {}, stable {})",
            lambda.re, lambda.im, study.kernel_dim, expected, study.stable
        ));
    }
    Ok((ok, parts.join("; ")))
}

// ── C04 ─────────────────────────────────────────────────────────────────────

/// Independent oracle: unrolls the three-term recurrence the pencil rows
/// impose on the coordinates, for positive real weights.
fn recurrence_oracle(
    ws: &[f64],
    s: Quaternion,
    x1: Quaternion,
    x2: Quaternion,
    len: usize,
) -> Vec<Quaternion> {
    let two_re = 2.0 * s.re();
    let norm_sq = s.norm_sqr();
    let mut xs = Vec::with_capacity(len);
    xs.push(x1);
    xs.push(x2);
    for r in 0..len - 2 {
        let (w1, w2) = (ws[r], ws[r + 1]);
        let next = (xs[r + 1] * (two_re * w1) - xs[r] * norm_sq) / (w1 * w2);
        xs.push(next);
    }
    xs
}

fn c04_closed_form_eigenvectors(cfg: &RunConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x04);
    let n = 64;
    let ws: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
    let rule = WeightRule::Table(ws.iter().map(|&w| Quaternion::from_real(w)).collect());
    let radius = rsp(&rule, n)?.value;

    let mut worst_oracle = 0.0_f64;
    let mut worst_seeded = 0.0_f64;
    for _ in 0..100 {
        let s = rand_nonreal(&mut rng, 0.8 * radius);
        let x1 = rand_quat(&mut rng, 1.0);
        let x2 = rand_quat(&mut rng, 1.0);

        let closed = s_eigvec_closed_form(&rule, s, x1, x2, n)?;
        let oracle = QVector::new(recurrence_oracle(&ws, s, x1, x2, n));
        let scale = 1.0 + closed.entries.iter().map(|q| q.norm()).fold(0.0, f64::max);
        worst_oracle = worst_oracle.max(closed.max_abs_diff(&oracle) / scale);

        // Seeding the second coordinate consistently must reproduce the
        // geometric eigenvector to machine precision.
        let geo = geometric_eigvec(&rule, s, x1, n)?;
        let seeded = s_eigvec_closed_form(&rule, s, x1, x1 * s / ws[0], n)?;
        let geo_scale = 1.0 + geo.entries.iter().map(|q| q.norm()).fold(0.0, f64::max);
        worst_seeded = worst_seeded.max(geo.max_abs_diff(&seeded) / geo_scale);
    }
    Ok((
        worst_oracle < 1e-10 && worst_seeded < 1e-12,
        format!("max oracle deviation {worst_oracle:.3e}; max seeded deviation {worst_seeded:.3e} over 100 draws"),
    ))
}

// ── C05 ─────────────────────────────────────────────────────────────────────

fn c05_radius_estimates(_cfg: &RunConfig) -> Result<(bool, String)> {
    let unit = rsp(&WeightRule::Const(Quaternion::ONE), 1_000)?.value;
    let ratio = rsp(&WeightRule::Ratio, 10_000)?.value;
    let two = rsp(&WeightRule::Const(Quaternion::from_real(2.0)), 1_000)?.value;
    let ok = (unit - 1.0).abs() <= 1e-12 && (ratio - 1.0).abs() < 1e-2 && two == 2.0;
    Ok((
        ok,
        format!("const-1 -> {unit}; ratio -> {ratio}; const-2 -> {two} (must be exact)"),
    ))
}

// ── C06 ─────────────────────────────────────────────────────────────────────

fn c06_jet_identities(_cfg: &RunConfig) -> Result<(bool, String)> {
    let (first, second) = curvature_twins();
    let opts = twin_frames_options();
    let mut worst = 0.0_f64;
    for op in [first, second] {
        let t = op.truncate(64)?;
        let frame = frame_from_right_inverse(&t, Quaternion::I, 8, &opts)?;
        worst = worst.max(derivative_identity_check(&t, &frame).max_residual());
    }
    Ok((
        worst < 1e-9,
        format!("max identity residual {worst:.3e} for orders up to 8"),
    ))
}

// ── C07 ─────────────────────────────────────────────────────────────────────

fn transported_match(f1: &JetFrame, u: &QMatrix, u0: &QMatrix) -> f64 {
    f1.flat_jets()
        .iter()
        .map(|v| u.mul_vec(v).max_abs_diff(&u0.mul_vec(v)) / v.norm())
        .fold(0.0, f64::max)
}

fn c07_rigidity_round_trip(cfg: &RunConfig) -> Result<(bool, String)> {
    let t = curvature_twins().0.truncate(32)?;
    let f1 = frame_from_right_inverse(&t, Quaternion::I, 6, &twin_frames_options())?;

    let mut worst_residual = 0.0_f64;
    let mut worst_match = 0.0_f64;
    let mut all_congruent = true;
    for i in 0..20u64 {
        let u0 = householder_random_unitary(32, cfg.seed.wrapping_add(i));
        let f2 = f1.transform(&u0)?;
        let t2 = &(&u0 * &t) * &u0.adjoint();
        let rep = rigidity_check(&f1, &f2, Some((&t, &t2)), 1e-8)?;
        all_congruent &= rep.congruent;
        worst_residual = worst_residual.max(rep.intertwiner_residual.unwrap_or(f64::INFINITY));
        match rep.intertwiner.as_ref() {
            Some(u) => worst_match = worst_match.max(transported_match(&f1, u, &u0)),
            None => all_congruent = false,
        }
    }

    // Bumping a single decision Gram entry by 1e-4 must flip the verdict.
    let u0 = householder_random_unitary(32, cfg.seed);
    let g1 = gram_data(&f1);
    let mut g2 = gram_data(&f1.transform(&u0)?);
    let bumped = g2.table[1][0].get(0, 0) + Quaternion::from_real(1e-4);
    g2.table[1][0].set(0, 0, bumped);
    let flipped = !g1.congruent_to(&g2, 1e-8)?.congruent;

    let ok = all_congruent && worst_residual < 1e-8 && worst_match < 1e-8 && flipped;
    Ok((
        ok,
        format!(
            "20 round-trips congruent: {all_congruent}; max intertwining residual {worst_residual:.3e}; max transport deviation {worst_match:.3e}; perturbation flips verdict: {flipped}"
        ),
    ))
}

// ── C08 ─────────────────────────────────────────────────────────────────────

fn c08_canonical_entries(_cfg: &RunConfig) -> Result<(bool, String)> {
    let (first, second) = curvature_twins();
    let t = first.truncate(64)?;
    let tt = second.truncate(64)?;
    let opts = twin_frames_options();

    let c1 = canonical_matrix(&t, Quaternion::I, 8, &opts)?;
    let c2 = canonical_matrix(&tt, Quaternion::I, 8, &opts)?;
    let dev1 = c1
        .matrix
        .get(0, 1)
        .max_abs_diff(Quaternion::new(1.0, 0.0, 0.0, -2.0));
    let dev2 = c2
        .matrix
        .get(0, 1)
        .max_abs_diff(Quaternion::from_real(FRAC_1_SQRT_2));

    let ad = ad_theta_equivalent(&c1.matrix, &c2.matrix, 1e-8)?;
    let op_eq = operator_equivalence(&t, &tt, Quaternion::I, 8, &opts, 1e-8)?;

    let ok = dev1 < 1e-10 && dev2 < 1e-10 && !ad.equivalent && !op_eq.equivalent;
    Ok((
        ok,
        format!(
            "entry deviations {dev1:.3e} / {dev2:.3e}; phase-conjugation equivalent: {}; unitarily equivalent: {}",
            ad.equivalent, op_eq.equivalent
        ),
    ))
}

// ── C09 ─────────────────────────────────────────────────────────────────────

fn c09_curvature_agreement(_cfg: &RunConfig) -> Result<(bool, String)> {
    // h = 2e-4 keeps the finite-difference truncation error (~h², largest
    // near the rim of the half-disk) and the log-norm roundoff (~ε/h²)
    // both near 1e-7, inside the 1e-6 gap budget.
    let center = Complex64::new(0.0, 1.0);
    let (s1, s2) = twin_sections(64);
    let g1 = curvature_grid(&s1, center, 0.5, 21, 0.5, 2e-4);
    let g2 = curvature_grid(&s2, center, 0.5, 21, 0.5, 2e-4);
    let mut max_diff = 0.0_f64;
    let mut max_gap = 0.0_f64;
    for (a, b) in g1.iter().zip(g2.iter()) {
        max_diff = max_diff.max((a.gram - b.gram).abs());
        max_gap = max_gap.max(a.gap).max(b.gap);
    }
    Ok((
        max_diff < 1e-8 && max_gap < 1e-6 && !g1.is_empty(),
        format!(
            "max curvature difference {max_diff:.3e}, max estimator gap {max_gap:.3e} over {} grid points",
            g1.len()
        ),
    ))
}

// ── C10 ─────────────────────────────────────────────────────────────────────

fn c10_complexified_equivalence(cfg: &RunConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x10);
    let base = Quaternion::new(0.0, 1.3, 0.0, 0.0);
    let opts = twin_frames_options();

    let mut ok = true;
    let mut worst_residual = 0.0_f64;
    for i in 0..10u64 {
        let ws: Vec<Quaternion> = (0..64)
            .map(|_| Quaternion::from_real(rng.gen_range(0.9..1.1)))
            .collect();
        let t1 = BandedOperator::with_diag(Quaternion::I, WeightRule::Table(ws)).truncate(64)?;
        let u0 = householder_random_unitary(64, cfg.seed.wrapping_add(100 + i));
        let t2 = &(&u0 * &t1) * &u0.adjoint();

        let op = operator_equivalence(&t1, &t2, base, 8, &opts, 1e-8)?;
        let rep = complex_rep_equivalence(&t1, &t2, base, 8, &opts, 1e-8)?;
        ok &= op.equivalent && rep.equivalent == op.equivalent;
        worst_residual = worst_residual.max(rep.intertwiner_residual.unwrap_or(f64::INFINITY));
    }
    ok &= worst_residual < 1e-8;

    // The twisted pair must come out inequivalent on both sides.
    let (first, second) = curvature_twins();
    let t = first.truncate(64)?;
    let tt = second.truncate(64)?;
    let op_tw = operator_equivalence(&t, &tt, Quaternion::I, 8, &opts, 1e-8)?;
    let rep_tw = complex_rep_equivalence(&t, &tt, Quaternion::I, 8, &opts, 1e-8)?;
    ok &= !op_tw.equivalent && !rep_tw.equivalent;

    Ok((
        ok,
        format!(
            "10 transported fixtures agree with max intertwining residual {worst_residual:.3e}; twisted pair inequivalent on both sides: {}",
            !op_tw.equivalent && !rep_tw.equivalent
        ),
    ))
}

// ── C11 ─────────────────────────────────────────────────────────────────────

fn c11_phase_conjugation(cfg: &RunConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x11);
    let quats: Vec<Quaternion> = (0..1_000).map(|_| rand_quat(&mut rng, 2.0)).collect();
    let mut worst = 0.0_f64;
    for k in 0..360 {
        let theta = k as f64 * PI / 180.0;
        let phase = Quaternion::from_complex(Complex64::from_polar(1.0, theta));
        for &q in &quats {
            let direct = phase.conj() * q * phase;
            let formula = ad_theta_apply(&QMatrix::from_fn(1, 1, |_, _| q), theta).get(0, 0);
            worst = worst.max(direct.max_abs_diff(formula));
        }
    }
    Ok((
        worst < 1e-13,
        format!("max conjugation defect {worst:.3e} over 360 angles x 1000 quaternions"),
    ))
}
