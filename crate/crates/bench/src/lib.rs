//! Deterministic fixtures shared by the benchmark targets.
//!
//! Everything here is seed-free: matrices are filled from closed-form
//! index mixes so a benchmark run never depends on an RNG crate and two
//! runs always measure the same inputs.

use qcd_core::models::{curvature_twins, twin_sections, TwinSection};
use qcd_core::{QMatrix, Quaternion};

/// Truncation used across the benchmark fixtures.
pub const N: usize = 64;

/// A dense quaternionic matrix with entries spread over `[-1, 1]⁴`.
pub fn dense_matrix(n: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |i, j| {
        let t = (1 + i * n + j) as f64;
        Quaternion::new(
            (1.3 * t).sin(),
            (0.7 * t).cos(),
            (2.1 * t).sin(),
            (0.4 * t).cos(),
        )
    })
}

/// The first operator of the twisted pair, truncated to [`N`] rows.
pub fn twin_operator() -> QMatrix {
    curvature_twins()
        .0
        .truncate(N)
        .expect("twin truncates at any length")
}

/// The closed-form section of the first twin on [`N`] coordinates.
pub fn twin_section() -> TwinSection {
    twin_sections(N).0
}
