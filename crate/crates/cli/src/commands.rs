//! One function per subcommand. Each builds its operators, calls into the
//! library, and packs the result into a report; no mathematics happens here.

use num_complex::Complex64;
use qcd_core::bundles::{
    derivative_identity_check, frame_from_right_inverse, gram_data, operator_equivalence,
    rigidity_check, FrameOptions,
};
use qcd_core::canonical::{
    ad_theta_equivalent, canonical_matrix, complex_rep_equivalence, curvature_grid, JetSection,
    RepEquivalence,
};
use qcd_core::linalg::householder_random_unitary;
use qcd_core::models::{
    curvature_twins, half_i_expected_dim, half_i_model, half_i_sample_points, twin_sections,
};
use qcd_core::shifts::{bn_probe, kernel_dim_study, rsp, rsp_sequence, BandedOperator, WeightRule};
use qcd_core::spectra::s_point_membership;
use qcd_core::{Error, QMatrix, Quaternion, Result};

use crate::config::RunConfig;
use crate::report::*;

/// The operator selected by the `--weights`/`--diag` flag pair.
#[derive(Debug, Clone)]
pub struct OperatorSpec {
    pub weights: WeightRule,
    pub diag: Quaternion,
}

impl OperatorSpec {
    fn operator(&self) -> BandedOperator {
        BandedOperator::with_diag(self.diag, self.weights.clone())
    }

    fn truncate(&self, n: usize) -> Result<QMatrix> {
        self.operator().truncate(n)
    }
}

fn frame_options(cfg: &RunConfig) -> FrameOptions {
    FrameOptions {
        kernel_tol: cfg.tol,
        ..FrameOptions::default()
    }
}

fn rep_dto(rep: &RepEquivalence) -> RepDto {
    RepDto {
        equivalent: rep.equivalent,
        phase: rep.phase,
        unit_factor: rep.unit_factor.map(cpx),
        conjugation_residual: rep.conjugation_residual,
        intertwiner_residual: rep.intertwiner_residual,
        detail: rep.detail.clone(),
    }
}

/// Point-spectrum membership of each probed sphere at one truncation.
pub fn spectrum(
    cfg: &RunConfig,
    spec: &OperatorSpec,
    points: &[Quaternion],
) -> Result<SpectrumReport> {
    if points.is_empty() {
        return Err(Error::InvalidConfig(
            "spectrum needs at least one --point".into(),
        ));
    }
    let t = spec.truncate(cfg.n)?;
    let mut rows = Vec::with_capacity(points.len());
    for &s in points {
        let r = s_point_membership(&t, s, cfg.tol)?;
        rows.push(SpectrumRow {
            s,
            sigma_min: r.sigma_min,
            sigma_max: r.sigma_max,
            kernel_dim: r.kernel_dim,
            in_point_spectrum: r.in_point_spectrum(),
        });
    }
    Ok(SpectrumReport {
        schema: SCHEMA,
        n: cfg.n,
        tol: cfg.tol,
        rows,
    })
}

/// Root-product radius sequence plus a kernel-dimension probe of the shift.
pub fn shift(
    cfg: &RunConfig,
    rule: WeightRule,
    rule_text: &str,
    n_max: usize,
    probes: &[Quaternion],
) -> Result<ShiftReport> {
    let sequence = rsp_sequence(&rule, n_max)?;
    let est = rsp(&rule, n_max)?;

    // Default probe: the sphere at half the estimated radius on the
    // imaginary axis, well inside the eigenvector disk.
    let probe_points: Vec<Quaternion> = if probes.is_empty() {
        vec![Quaternion::new(0.0, 0.5 * est.value, 0.0, 0.0)]
    } else {
        probes.to_vec()
    };
    let n_base = (cfg.n / 4).max(4);
    let op = BandedOperator::backward_shift(rule);
    let probe = bn_probe(&op, &probe_points, n_base, cfg.tol)?;

    Ok(ShiftReport {
        schema: SCHEMA,
        rule: rule_text.to_string(),
        n_max,
        rsp: RspDto {
            value: est.value,
            final_estimate: est.final_estimate,
            window: [est.window.0, est.window.1],
        },
        sequence,
        probe: ProbeDto {
            n_base,
            stable: probe.stable,
            candidate_rank: probe.candidate_rank,
            samples: probe
                .samples
                .iter()
                .map(|p| ProbeSampleDto {
                    s: p.s,
                    kernel_dim: p.study.kernel_dim,
                    stable: p.study.stable,
                    threshold_counts: p.study.threshold_counts.clone(),
                })
                .collect(),
        },
    })
}

/// Jet frame at a base point: rank, conditioning, derivative-identity
/// residuals and the full Gram tensor.
pub fn frame(cfg: &RunConfig, spec: &OperatorSpec, base: Complex64) -> Result<FrameReport> {
    let t = spec.truncate(cfg.n)?;
    let f = frame_from_right_inverse(
        &t,
        Quaternion::from_complex(base),
        cfg.k,
        &frame_options(cfg),
    )?;
    let ident = derivative_identity_check(&t, &f);
    let gram = gram_data(&f);
    Ok(FrameReport {
        schema: SCHEMA,
        n: cfg.n,
        base: [base.re, base.im],
        order: f.order,
        rank: f.rank,
        kernel_gap: f.kernel_gap,
        identities: IdentityDto {
            first: ident.first.clone(),
            second: ident.second.clone(),
            power: ident.power.clone(),
            max: ident.max_residual(),
        },
        gram: gram
            .table
            .iter()
            .map(|by_k| by_k.iter().map(matrix_rows).collect())
            .collect(),
    })
}

/// Transport round-trip: the frame is pushed through a seeded random
/// unitary and the congruence machinery must recover that unitary.
pub fn rigidity(
    cfg: &RunConfig,
    spec: &OperatorSpec,
    base: Complex64,
) -> Result<RigidityRunReport> {
    let t = spec.truncate(cfg.n)?;
    let f1 = frame_from_right_inverse(
        &t,
        Quaternion::from_complex(base),
        cfg.k,
        &frame_options(cfg),
    )?;
    let u0 = householder_random_unitary(cfg.n, cfg.seed);
    let f2 = f1.transform(&u0)?;
    let t2 = &(&u0 * &t) * &u0.adjoint();
    let rep = rigidity_check(&f1, &f2, Some((&t, &t2)), cfg.tol)?;

    let unitary_match = rep.intertwiner.as_ref().map(|u| {
        f1.flat_jets()
            .iter()
            .map(|v| u.mul_vec(v).max_abs_diff(&u0.mul_vec(v)) / v.norm())
            .fold(0.0, f64::max)
    });

    Ok(RigidityRunReport {
        schema: SCHEMA,
        n: cfg.n,
        base: [base.re, base.im],
        order: cfg.k,
        seed: cfg.seed,
        congruent: rep.congruent,
        span_dim: rep.span_dim,
        decision_deviation: rep.gram.max_decision_dev,
        full_deviation: rep.gram.max_full_dev,
        replay_orthonormality: rep.replay_orthonormality,
        intertwiner_residual: rep.intertwiner_residual,
        unitary_match,
    })
}

/// Canonical local matrix in the orthonormalized jet basis.
pub fn canonical(cfg: &RunConfig, spec: &OperatorSpec, base: Complex64) -> Result<CanonicalReport> {
    let t = spec.truncate(cfg.n)?;
    let rep = canonical_matrix(
        &t,
        Quaternion::from_complex(base),
        cfg.k,
        &frame_options(cfg),
    )?;
    Ok(CanonicalReport {
        schema: SCHEMA,
        n: cfg.n,
        base: [base.re, base.im],
        order: rep.order,
        matrix: matrix_rows(&rep.matrix),
    })
}

/// Curvature of the jet-frame line bundle on a disk grid around the base.
pub fn curvature(
    cfg: &RunConfig,
    spec: &OperatorSpec,
    base: Complex64,
    radius: f64,
    steps: usize,
    h: f64,
) -> Result<CurvatureReport> {
    if radius <= 0.0 || radius.is_nan() || steps < 2 || h <= 0.0 || h.is_nan() {
        return Err(Error::InvalidConfig(format!(
            "curvature grid needs radius > 0, steps >= 2 and h > 0; got {radius}, {steps}, {h}"
        )));
    }
    let t = spec.truncate(cfg.n)?;
    let f = frame_from_right_inverse(
        &t,
        Quaternion::from_complex(base),
        cfg.k,
        &frame_options(cfg),
    )?;
    let section = JetSection { frame: &f, seed: 0 };
    let samples = curvature_grid(&section, base, radius, steps, 0.0, h);
    Ok(CurvatureReport {
        schema: SCHEMA,
        n: cfg.n,
        center: [base.re, base.im],
        radius,
        steps,
        h,
        samples: samples
            .iter()
            .map(|s| CurvatureRow {
                omega: [s.omega.re, s.omega.im],
                curvature: s.gram,
                fd: s.log_fd,
                fd_refined: s.log_fd_refined,
                richardson: s.richardson,
                gap: s.gap,
            })
            .collect(),
    })
}

/// Local unitary equivalence of two operators, decided on the quaternionic
/// side and transferred to the complexified one.
pub fn equiv(
    cfg: &RunConfig,
    left: &OperatorSpec,
    right: &OperatorSpec,
    base: Complex64,
) -> Result<EquivReport> {
    let t1 = left.truncate(cfg.n)?;
    let t2 = right.truncate(cfg.n)?;
    let base_q = Quaternion::from_complex(base);
    let opts = frame_options(cfg);
    let op = operator_equivalence(&t1, &t2, base_q, cfg.k, &opts, cfg.tol)?;
    let rep = complex_rep_equivalence(&t1, &t2, base_q, cfg.k, &opts, cfg.tol)?;
    Ok(EquivReport {
        schema: SCHEMA,
        n: cfg.n,
        base: [base.re, base.im],
        order: cfg.k,
        equivalent: op.equivalent,
        rank: op.rank,
        phase: op.phase,
        intertwiner_residual: op.intertwiner_residual,
        detail: op.detail,
        rep: rep_dto(&rep),
    })
}

/// Kernel-dimension table of the translated-shift model across its two
/// spectral regions, studied over three truncations.
pub fn example_tci(cfg: &RunConfig) -> Result<TciReport> {
    if cfg.n < 16 {
        return Err(Error::InvalidConfig(format!(
            "the kernel-dimension example needs n >= 16, got {}",
            cfg.n
        )));
    }
    let op = half_i_model();
    let truncations = vec![cfg.n / 2, cfg.n, 2 * cfg.n];
    let mut rows = Vec::new();
    for lambda in half_i_sample_points() {
        let expected = half_i_expected_dim(lambda).ok_or_else(|| {
            Error::InvalidConfig(format!("sample point {lambda} is not in a known region"))
        })?;
        let study = kernel_dim_study(&op, Quaternion::from_complex(lambda), &truncations, cfg.tol)?;
        rows.push(TciRow {
            lambda: cpx(lambda),
            region: if expected == 1 { 1 } else { 2 },
            expected_dim: expected,
            kernel_dim: study.kernel_dim,
            stable: study.stable,
            threshold_counts: study.threshold_counts,
        });
    }
    let all_match = rows
        .iter()
        .all(|r| r.kernel_dim == r.expected_dim && r.stable);
    Ok(TciReport {
        schema: SCHEMA,
        truncations,
        tol: cfg.tol,
        rows,
        all_match,
    })
}

/// The twisted pair: equal curvature, inequivalent canonical matrices.
pub fn example_cndu(cfg: &RunConfig) -> Result<CnduReport> {
    let (first_op, second_op) = curvature_twins();
    let t = first_op.truncate(cfg.n)?;
    let tt = second_op.truncate(cfg.n)?;
    let base = Quaternion::I;
    let opts = frame_options(cfg);

    let c1 = canonical_matrix(&t, base, cfg.k, &opts)?;
    let c2 = canonical_matrix(&tt, base, cfg.k, &opts)?;
    let ad = ad_theta_equivalent(&c1.matrix, &c2.matrix, cfg.tol)?;
    let op_eq = operator_equivalence(&t, &tt, base, cfg.k, &opts, cfg.tol)?;
    let rep = complex_rep_equivalence(&t, &tt, base, cfg.k, &opts, cfg.tol)?;

    // Closed-form sections carry the curvature comparison: a 21×21 grid on
    // the half-disk |ω−i| ≤ 1/2, Im ω > 1/2.
    let center = Complex64::new(0.0, 1.0);
    let (s1, s2) = twin_sections(cfg.n);
    let g1 = curvature_grid(&s1, center, 0.5, 21, 0.5, 2e-4);
    let g2 = curvature_grid(&s2, center, 0.5, 21, 0.5, 2e-4);
    let mut samples = Vec::with_capacity(g1.len());
    let mut max_difference = 0.0_f64;
    let mut max_gap = 0.0_f64;
    for (a, b) in g1.iter().zip(g2.iter()) {
        let diff = (a.gram - b.gram).abs();
        max_difference = max_difference.max(diff);
        max_gap = max_gap.max(a.gap).max(b.gap);
        samples.push(CurvatureCompareRow {
            omega: cpx(a.omega),
            k_first: a.gram,
            k_second: b.gram,
            abs_difference: diff,
        });
    }

    let same_curvature = max_difference < cfg.tol;
    let verdict = format!(
        "same curvature: {same_curvature}; quaternion unitarily equivalent: {}",
        op_eq.equivalent
    );

    Ok(CnduReport {
        schema: SCHEMA,
        n: cfg.n,
        k: cfg.k,
        base: [0.0, 1.0],
        canonical_first: matrix_rows(&c1.matrix),
        canonical_second: matrix_rows(&c2.matrix),
        ad_theta: AdThetaDto {
            equivalent: ad.equivalent,
            theta: ad.theta,
            max_complex_dev: ad.max_complex_dev,
            max_modulus_dev: ad.max_modulus_dev,
            residual: ad.residual,
        },
        operator_equivalence: OperatorEquivalenceDto {
            equivalent: op_eq.equivalent,
            rank: op_eq.rank,
            phase: op_eq.phase,
            intertwiner_residual: op_eq.intertwiner_residual,
            detail: op_eq.detail,
        },
        complex_rep: rep_dto(&rep),
        curvature: CurvatureCompareDto {
            grid_points: samples.len(),
            max_difference,
            max_estimator_gap: max_gap,
            samples,
        },
        verdict,
    })
}
