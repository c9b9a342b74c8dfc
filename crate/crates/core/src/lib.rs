//! Operators on quaternionic Hilbert spaces.
//!
//! The crate implements the computational side of S-spectrum operator
//! theory on the right quaternionic Hilbert space `ℓ²(ℍ)` (truncated to
//! finite sections):
//!
//! - **Scalars and symmetry** ([`quaternion`]): Hamilton arithmetic, the
//!   symplectic split `a = z1 + j·z2`, axial 2-spheres and their reduced
//!   representatives, and explicit conjugation witnesses.
//! - **Linear algebra** ([`linalg`]): right ℍ-modules, the block complex
//!   representation (a *-homomorphism onto structured complex matrices),
//!   quaternionic Gram–Schmidt with replayable elimination data, and
//!   pseudo-random Householder unitaries.
//! - **Spectra** ([`spectra`]): the second-order spherical pencil
//!   `T² - 2·Re(s)·T + |s|²·I`, point S-spectrum membership by singular
//!   value counts, axially-symmetric eigenvalue classes, and spectral-radius
//!   estimates.
//! - **Shift models** ([`shifts`]): banded one-sided weighted shifts with
//!   finite patches, closed-form eigenvectors of the pencil, positivization
//!   of weights, weight-product radii, and truncation-stability probes for
//!   kernel dimensions.
//! - **Jet frames and rigidity** ([`bundles`]): holomorphic jets of kernel
//!   sections via minimum-norm right inverses, derivative identities, Gram
//!   tables, the rigidity test, and unitary-equivalence decisions.
//! - **Canonical forms and curvature** ([`canonical`]): upper-triangular
//!   canonical matrices at a base point, the complex-phase (`ad_θ`)
//!   equivalence on them, and curvature of the associated line bundles.
//! - **Reference models** ([`models`]): the concrete banded operators and
//!   closed-form sections used as fixtures by the test suites and the CLI.
//!
//! The numerical backbone (complex SVD / eigendecomposition) is provided by
//! [`faer`] behind the thin wrappers in [`numeric`].

pub mod bundles;
pub mod canonical;
pub mod error;
pub mod linalg;
pub mod models;
pub mod numeric;
pub mod quaternion;
pub mod shifts;
pub mod spectra;

pub use error::{Error, Result};
pub use linalg::{CMatrix, ComplexRep, GramSchmidtQ, QMatrix, QVector};
pub use quaternion::{axially_symmetric, symmetry_witness, Quaternion};
