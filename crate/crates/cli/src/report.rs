//! Serializable reports and their CSV projections.
//!
//! Every JSON document carries `"schema": 1`; quaternions serialize as flat
//! `[w, x, y, z]` arrays and complex numbers as `[re, im]`. CSV output uses
//! `.` as the decimal mark, `,` as the separator and LF line endings, with a
//! frozen header row per report type.

use num_complex::Complex64;
use qcd_core::{QMatrix, Quaternion};
use serde::Serialize;

/// Current JSON schema version.
pub const SCHEMA: u32 = 1;

/// A report that can render itself as a CSV table.
pub trait CsvReport {
    /// The (frozen) header row, without trailing newline.
    fn csv_header(&self) -> &'static str;
    /// Data rows, one string per line, without trailing newlines.
    fn csv_rows(&self) -> Vec<String>;
    /// Full CSV document.
    fn to_csv(&self) -> String {
        let mut out = String::from(self.csv_header());
        out.push('\n');
        for row in self.csv_rows() {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

/// `[re, im]` pair for JSON.
pub fn cpx(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

/// Row-major nested quaternion arrays for JSON.
pub fn matrix_rows(m: &QMatrix) -> Vec<Vec<Quaternion>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m.get(r, c)).collect())
        .collect()
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

// ── spectrum ────────────────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct SpectrumReport {
    pub schema: u32,
    pub n: usize,
    pub tol: f64,
    pub rows: Vec<SpectrumRow>,
}

#[derive(Debug, Serialize)]
pub struct SpectrumRow {
    pub s: Quaternion,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub kernel_dim: usize,
    pub in_point_spectrum: bool,
}

impl CsvReport for SpectrumReport {
    fn csv_header(&self) -> &'static str {
        "s_w,s_x,s_y,s_z,sigma_min,kernel_dim"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{},{}",
                    r.s.w, r.s.x, r.s.y, r.s.z, r.sigma_min, r.kernel_dim
                )
            })
            .collect()
    }
}

// ── shift ───────────────────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct ShiftReport {
    pub schema: u32,
    pub rule: String,
    pub n_max: usize,
    pub rsp: RspDto,
    pub sequence: Vec<f64>,
    pub probe: ProbeDto,
}

#[derive(Debug, Serialize)]
pub struct RspDto {
    pub value: f64,
    pub final_estimate: f64,
    pub window: [usize; 2],
}

#[derive(Debug, Serialize)]
pub struct ProbeDto {
    pub n_base: usize,
    pub stable: bool,
    pub candidate_rank: Option<usize>,
    pub samples: Vec<ProbeSampleDto>,
}

#[derive(Debug, Serialize)]
pub struct ProbeSampleDto {
    pub s: Quaternion,
    pub kernel_dim: usize,
    pub stable: bool,
    pub threshold_counts: Vec<usize>,
}

impl CsvReport for ShiftReport {
    fn csv_header(&self) -> &'static str {
        "n,root_product"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.sequence
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{},{}", i + 1, v))
            .collect()
    }
}

// ── frame ───────────────────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct FrameReport {
    pub schema: u32,
    pub n: usize,
    pub base: [f64; 2],
    pub order: usize,
    pub rank: usize,
    pub kernel_gap: f64,
    pub identities: IdentityDto,
    /// Gram tensor: `gram[m][k]` is the rank×rank block of inner products
    /// between the `m`-th and `k`-th jets, row-major, quaternion entries.
    pub gram: Vec<Vec<Vec<Vec<Quaternion>>>>,
}

#[derive(Debug, Serialize)]
pub struct IdentityDto {
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    pub power: Vec<f64>,
    pub max: f64,
}

impl CsvReport for FrameReport {
    fn csv_header(&self) -> &'static str {
        "m,k,row,col,w,x,y,z"
    }
    fn csv_rows(&self) -> Vec<String> {
        let mut rows = Vec::new();
        for (m, by_k) in self.gram.iter().enumerate() {
            for (k, block) in by_k.iter().enumerate() {
                for (i, row) in block.iter().enumerate() {
                    for (j, q) in row.iter().enumerate() {
                        rows.push(format!("{m},{k},{i},{j},{},{},{},{}", q.w, q.x, q.y, q.z));
                    }
                }
            }
        }
        rows
    }
}

// ── rigidity ────────────────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct RigidityRunReport {
    pub schema: u32,
    pub n: usize,
    pub base: [f64; 2],
    pub order: usize,
    pub seed: u64,
    pub congruent: bool,
    pub span_dim: usize,
    pub decision_deviation: f64,
    pub full_deviation: f64,
    pub replay_orthonormality: Option<f64>,
    pub intertwiner_residual: Option<f64>,
    /// Worst relative deviation of the reconstructed unitary from the
    /// transporting one over the jet span.
    pub unitary_match: Option<f64>,
}

impl CsvReport for RigidityRunReport {
    fn csv_header(&self) -> &'static str {
        "congruent,span_dim,decision_dev,full_dev,replay_orthonormality,intertwiner_residual"
    }
    fn csv_rows(&self) -> Vec<String> {
        vec![format!(
            "{},{},{},{},{},{}",
            self.congruent,
            self.span_dim,
            self.decision_deviation,
            self.full_deviation,
            opt(self.replay_orthonormality),
            opt(self.intertwiner_residual)
        )]
    }
}

// ── canonical ───────────────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct CanonicalReport {
    pub schema: u32,
    pub n: usize,
    pub base: [f64; 2],
    pub order: usize,
    pub matrix: Vec<Vec<Quaternion>>,
}

impl CsvReport for CanonicalReport {
    fn csv_header(&self) -> &'static str {
        "row,col,w,x,y,z"
    }
    fn csv_rows(&self) -> Vec<String> {
        let mut rows = Vec::new();
        for (r, row) in self.matrix.iter().enumerate() {
            for (c, q) in row.iter().enumerate() {
                rows.push(format!("{r},{c},{},{},{},{}", q.w, q.x, q.y, q.z));
            }
        }
        rows
    }
}

// ── curvature ───────────────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct CurvatureReport {
    pub schema: u32,
    pub n: usize,
    pub center: [f64; 2],
    pub radius: f64,
    pub steps: usize,
    pub h: f64,
    pub samples: Vec<CurvatureRow>,
}

#[derive(Debug, Serialize)]
pub struct CurvatureRow {
    pub omega: [f64; 2],
    pub curvature: f64,
    pub fd: f64,
    pub fd_refined: f64,
    pub richardson: f64,
    pub gap: f64,
}

impl CsvReport for CurvatureReport {
    fn csv_header(&self) -> &'static str {
        "re_omega,im_omega,curvature,estimator_gap"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.samples
            .iter()
            .map(|s| format!("{},{},{},{}", s.omega[0], s.omega[1], s.curvature, s.gap))
            .collect()
    }
}

// ── equiv ───────────────────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct EquivReport {
    pub schema: u32,
    pub n: usize,
    pub base: [f64; 2],
    pub order: usize,
    pub equivalent: bool,
    pub rank: usize,
    pub phase: Option<f64>,
    pub intertwiner_residual: Option<f64>,
    pub detail: String,
    pub rep: RepDto,
}

#[derive(Debug, Serialize)]
pub struct RepDto {
    pub equivalent: bool,
    pub phase: Option<f64>,
    pub unit_factor: Option<[f64; 2]>,
    pub conjugation_residual: Option<f64>,
    pub intertwiner_residual: Option<f64>,
    pub detail: String,
}

impl CsvReport for EquivReport {
    fn csv_header(&self) -> &'static str {
        "equivalent,rank,phase,rep_equivalent,conjugation_residual,intertwiner_residual"
    }
    fn csv_rows(&self) -> Vec<String> {
        vec![format!(
            "{},{},{},{},{},{}",
            self.equivalent,
            self.rank,
            opt(self.phase),
            self.rep.equivalent,
            opt(self.rep.conjugation_residual),
            opt(self.rep.intertwiner_residual)
        )]
    }
}

// ── example: spectral-picture table ─────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct TciReport {
    pub schema: u32,
    pub truncations: Vec<usize>,
    pub tol: f64,
    pub rows: Vec<TciRow>,
    pub all_match: bool,
}

#[derive(Debug, Serialize)]
pub struct TciRow {
    pub lambda: [f64; 2],
    pub region: u8,
    pub expected_dim: usize,
    pub kernel_dim: usize,
    pub stable: bool,
    pub threshold_counts: Vec<usize>,
}

impl CsvReport for TciReport {
    fn csv_header(&self) -> &'static str {
        "re_lambda,im_lambda,region,expected_dim,kernel_dim,stable"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{},{}",
                    r.lambda[0], r.lambda[1], r.region, r.expected_dim, r.kernel_dim, r.stable
                )
            })
            .collect()
    }
}

// ── example: twisted-pair comparison ────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct CnduReport {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub base: [f64; 2],
    pub canonical_first: Vec<Vec<Quaternion>>,
    pub canonical_second: Vec<Vec<Quaternion>>,
    pub ad_theta: AdThetaDto,
    pub operator_equivalence: OperatorEquivalenceDto,
    pub complex_rep: RepDto,
    pub curvature: CurvatureCompareDto,
    pub verdict: String,
}

#[derive(Debug, Serialize)]
pub struct AdThetaDto {
    pub equivalent: bool,
    pub theta: Option<f64>,
    pub max_complex_dev: f64,
    pub max_modulus_dev: f64,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct OperatorEquivalenceDto {
    pub equivalent: bool,
    pub rank: usize,
    pub phase: Option<f64>,
    pub intertwiner_residual: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CurvatureCompareDto {
    pub grid_points: usize,
    pub max_difference: f64,
    pub max_estimator_gap: f64,
    pub samples: Vec<CurvatureCompareRow>,
}

#[derive(Debug, Serialize)]
pub struct CurvatureCompareRow {
    pub omega: [f64; 2],
    pub k_first: f64,
    pub k_second: f64,
    pub abs_difference: f64,
}

impl CsvReport for CnduReport {
    fn csv_header(&self) -> &'static str {
        "re_omega,im_omega,k_first,k_second,abs_difference"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.curvature
            .samples
            .iter()
            .map(|s| {
                format!(
                    "{},{},{},{},{}",
                    s.omega[0], s.omega[1], s.k_first, s.k_second, s.abs_difference
                )
            })
            .collect()
    }
}

// ── suite ───────────────────────────────────────────────────────────────────

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub tol: f64,
    pub seed: u64,
    pub outcomes: Vec<OutcomeDto>,
    pub all_passed: bool,
    pub total_millis: u128,
}

#[derive(Debug, Serialize)]
pub struct OutcomeDto {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub millis: u128,
    pub detail: String,
}

impl CsvReport for SuiteReport {
    fn csv_header(&self) -> &'static str {
        "criterion,passed,millis"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.outcomes
            .iter()
            .map(|o| format!("{},{},{}", o.id, o.passed, o.millis))
            .collect()
    }
}
