//! Reference operator models with known spectral pictures.
//!
//! Two families are provided:
//!
//! - **The half-`i` shift** [`half_i_model`]: the unweighted backward shift
//!   plus the constant diagonal `i/2`. Its point S-spectrum over the open
//!   upper half-plane splits into two annular regions — kernel dimension 1
//!   where only one of the two eigenvector families is square-summable
//!   (`|λ - i/2| < 1 < |λ + i/2|`) and dimension 2 where both are
//!   (`|λ ± i/2| < 1`). It is the standard example of an operator whose
//!   kernel rank jumps between components of the domain.
//! - **The curvature twins** [`curvature_twins`]: two patched shifts with
//!   diagonal `i` whose kernel bundles over a disk around `i` have identical
//!   norms (hence identical curvature) without the operators being
//!   unitarily equivalent — curvature alone does not classify in the
//!   quaternionic setting. Their kernel sections and norms are available in
//!   closed form ([`twin_sections`], [`twin_norm_sq`]), which the curvature
//!   estimators use as ground truth.
//!
//! [`SzegoSection`] (the section `(1, ω, ω², …)` of the unweighted shift,
//! with curvature `-(1-|ω|²)⁻²`) rounds out the fixtures.

use num_complex::Complex64;

use crate::canonical::HolomorphicSection;
use crate::linalg::QVector;
use crate::quaternion::Quaternion;
use crate::shifts::{BandedOperator, WeightRule};

/// The unweighted backward shift plus `i/2` on the diagonal.
pub fn half_i_model() -> BandedOperator {
    BandedOperator::with_diag(
        Quaternion::new(0.0, 0.5, 0.0, 0.0),
        WeightRule::Const(Quaternion::ONE),
    )
}

/// Expected pencil-kernel dimension of [`half_i_model`] at a reduced
/// upper-half-plane point, `None` outside the two open regions (or on their
/// boundaries, where truncation studies cannot settle).
pub fn half_i_expected_dim(lambda: Complex64) -> Option<usize> {
    if lambda.im <= 0.0 {
        return None;
    }
    let half_i = Complex64::new(0.0, 0.5);
    let d_minus = (lambda - half_i).norm();
    let d_plus = (lambda + half_i).norm();
    if d_minus < 1.0 && d_plus > 1.0 {
        Some(1)
    } else if d_minus < 1.0 && d_plus < 1.0 {
        Some(2)
    } else {
        None
    }
}

/// Well-separated probe points for [`half_i_model`]: two with kernel
/// dimension 1, then two with dimension 2.
pub fn half_i_sample_points() -> [Complex64; 4] {
    [
        Complex64::new(0.0, 0.9),
        Complex64::new(0.2, 0.7),
        Complex64::new(0.0, 0.4),
        Complex64::new(0.1, 0.3),
    ]
}

/// The two curvature-twin operators `(T, T̃)`.
///
/// Both are the diagonal-`i` shift with unit weights, deformed by a finite
/// patch in the top-left corner:
///
/// ```text
/// T:  (0,1) ↦ 1 + 2ji,   (0,2) ↦ 1 + j
/// T̃:  (0,1) ↦ (1-j)/2,   (0,2) ↦ 1,   (1,1) ↦ ji,   (1,2) ↦ 1 + j
/// ```
pub fn curvature_twins() -> (BandedOperator, BandedOperator) {
    let one_plus_j = Quaternion::ONE + Quaternion::J;
    let t =
        BandedOperator::with_diag(Quaternion::I, WeightRule::Const(Quaternion::ONE)).patched(&[
            (
                (0, 1),
                Quaternion::ONE + 2.0 * (Quaternion::J * Quaternion::I),
            ),
            ((0, 2), one_plus_j),
        ]);
    let t_tilde = BandedOperator::with_diag(Quaternion::I, WeightRule::Const(Quaternion::ONE))
        .patched(&[
            ((0, 1), Quaternion::new(0.5, 0.0, -0.5, 0.0)),
            ((0, 2), Quaternion::ONE),
            ((1, 1), Quaternion::J * Quaternion::I),
            ((1, 2), one_plus_j),
        ]);
    (t, t_tilde)
}

/// Which twin a [`TwinSection`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinSide {
    /// The first twin `T`.
    First,
    /// The second twin `T̃`.
    Second,
}

/// Closed-form kernel section of a curvature twin over the disk
/// `|ω - i| < 1` (evaluated at reduced points `ω` and truncated to `len`
/// entries). With `μ = ω - i`:
///
/// ```text
/// first:   γ(ω)  = (1 + (1+j)·μ,  μ,       μ², μ³, …)
/// second:  γ̃(ω) = (1 + μ,        (1+j)·μ, μ², μ³, …)
/// ```
///
/// Both satisfy `T γ(ω) = γ(ω)·ω` on every row the truncation keeps, and
/// they share the norm [`twin_norm_sq`].
#[derive(Debug, Clone, Copy)]
pub struct TwinSection {
    /// Which twin operator the section belongs to.
    pub side: TwinSide,
    /// Truncation length of the produced vectors.
    pub len: usize,
}

impl HolomorphicSection for TwinSection {
    fn eval(&self, omega: Complex64) -> QVector {
        assert!(self.len >= 3, "twin sections need at least 3 entries");
        let mu = omega - Complex64::new(0.0, 1.0);
        let mut entries = Vec::with_capacity(self.len);
        match self.side {
            TwinSide::First => {
                // 1 + (1+j)μ = (1+μ) + j·μ.
                entries.push(Quaternion::from_complex_parts(
                    Complex64::new(1.0, 0.0) + mu,
                    mu,
                ));
                entries.push(Quaternion::from_complex(mu));
            }
            TwinSide::Second => {
                entries.push(Quaternion::from_complex(Complex64::new(1.0, 0.0) + mu));
                entries.push(Quaternion::from_complex_parts(mu, mu));
            }
        }
        let mut pow = mu * mu;
        for _ in 2..self.len {
            entries.push(Quaternion::from_complex(pow));
            pow *= mu;
        }
        QVector::new(entries)
    }

    fn deriv(&self, omega: Complex64) -> QVector {
        assert!(self.len >= 3, "twin sections need at least 3 entries");
        let mu = omega - Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let mut entries = Vec::with_capacity(self.len);
        match self.side {
            TwinSide::First => {
                entries.push(Quaternion::from_complex_parts(one, one)); // 1 + j
                entries.push(Quaternion::from_complex(one));
            }
            TwinSide::Second => {
                entries.push(Quaternion::from_complex(one));
                entries.push(Quaternion::from_complex_parts(one, one));
            }
        }
        // Tail entries are μ^k, so their derivatives are k·μ^(k-1).
        let mut pow = mu;
        for k in 2..self.len {
            entries.push(Quaternion::from_complex(pow * k as f64));
            pow *= mu;
        }
        QVector::new(entries)
    }
}

/// The twin sections at truncation `len`, first and second.
pub fn twin_sections(len: usize) -> (TwinSection, TwinSection) {
    (
        TwinSection {
            side: TwinSide::First,
            len,
        },
        TwinSection {
            side: TwinSide::Second,
            len,
        },
    )
}

/// Shared closed-form squared norm of both twin sections (untruncated):
/// `|1+μ|² + 2|μ|² + |μ|⁴/(1-|μ|²)` with `μ = ω - i`; requires `|μ| < 1`.
pub fn twin_norm_sq(omega: Complex64) -> f64 {
    let mu = omega - Complex64::new(0.0, 1.0);
    let m2 = mu.norm_sqr();
    assert!(m2 < 1.0, "twin sections converge only for |ω - i| < 1");
    (Complex64::new(1.0, 0.0) + mu).norm_sqr() + 2.0 * m2 + m2 * m2 / (1.0 - m2)
}

/// The geometric section `(1, ω, ω², …)` of the unweighted backward shift,
/// truncated to `len` entries. Its line bundle over the unit disk has
/// curvature `-(1-|ω|²)⁻²`.
#[derive(Debug, Clone, Copy)]
pub struct SzegoSection {
    /// Truncation length.
    pub len: usize,
}

impl HolomorphicSection for SzegoSection {
    fn eval(&self, omega: Complex64) -> QVector {
        let mut entries = Vec::with_capacity(self.len);
        let mut pow = Complex64::new(1.0, 0.0);
        for _ in 0..self.len {
            entries.push(Quaternion::from_complex(pow));
            pow *= omega;
        }
        QVector::new(entries)
    }

    fn deriv(&self, omega: Complex64) -> QVector {
        let mut entries = Vec::with_capacity(self.len);
        entries.push(Quaternion::ZERO);
        let mut pow = Complex64::new(1.0, 0.0);
        for k in 1..self.len {
            entries.push(Quaternion::from_complex(pow * k as f64));
            pow *= omega;
        }
        QVector::new(entries)
    }
}

/// Closed-form curvature of the [`SzegoSection`] line bundle.
pub fn szego_curvature(omega: Complex64) -> f64 {
    let d = 1.0 - omega.norm_sqr();
    -1.0 / (d * d)
}
