//! Eigenvalues of the dissipative Maxwell generator on the unit ball.
//!
//! For a constant impedance `gamma > 0` the boundary problem decouples, per
//! spherical mode `n >= 1`, into two scalar equations for the outgoing
//! spherical Hankel function `h_n`. Substituting `h_n(x) = (-i)^{n+1} e^{ix}/x
//! R_n(i/(2x))` turns each equation into a polynomial in `w = i/(2 mu)`,
//!
//! ```text
//! q_n(w) = (1 - kappa)/2 * R_n(w) + w^2 R_n'(w),    kappa in {gamma, 1/gamma},
//! ```
//!
//! and every root with `Re w > 0` yields an eigenvalue `lambda = -1/(2w)`.
//!
//! Modules:
//! * [`exactpoly`]: `R_n` with exact integer coefficients.
//! * [`rootfind`]: certified polynomial roots and a planar convex hull.
//! * [`hankel`]: `h_n` by recurrence, an oracle independent of `R_n`.
//! * [`spectrum`]: boundary polynomials, eigenvalues, and the checks on them.
//! * [`regions`]: eigenvalue regions, the `lambda <-> (z, h)` map, and contours.
//! * [`symbols`]: the boundary symbols `rho`, `c`, `d` and grid scans.
//!
//! All numerical code is generic over [`Real`]; the aliases below fix the
//! common instantiations.

// `!(x > 0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exactpoly;
pub mod hankel;
pub mod regions;
pub mod report;
pub mod rootfind;
pub mod scalar;
pub mod spectrum;
pub mod symbols;

pub use error::{Error, Result};
pub use exactpoly::{rn_coefficients, Evaluation, Poly, RnPolynomial};
pub use rootfind::{convex_hull_2d, find_all_roots, point_in_hull, CertifiedRoot, RootOptions};
pub use scalar::{MpFloat, Real};
pub use spectrum::{Eigenvalue, ModeFamily, SpectrumOptions};

/// Complex value at a configurable working precision.
pub type ComplexHP = num_complex::Complex<MpFloat>;
pub type Complex64 = num_complex::Complex<f64>;

pub type PolyHP = Poly<MpFloat>;
pub type Poly64 = Poly<f64>;
pub type EigenvalueHP = Eigenvalue<MpFloat>;
pub type Eigenvalue64 = Eigenvalue<f64>;
pub type CertifiedRootHP = CertifiedRoot<MpFloat>;
