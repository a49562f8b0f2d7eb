//! Exact, desk-scale machinery for commutativity on conjugacy classes of
//! finite-rank self-adjoint operators on ℂⁿ.
//!
//! * [`linalg`]: Gaussian-rational matrices and subspaces as projections.
//! * [`spectral`]: conjugacy classes `(α, d)` and operators in spectral form.
//! * [`compat`]: compatibility of subspaces and refinement to a common frame.
//! * [`apartment`]: orthogonal apartments, inexact subsets and the
//!   orthocomplementary-subset counts.
//! * [`rigidity`]: swap counterexamples, preservation checks, trace-pairing
//!   obstructions and the commuting witness operator.
//! * [`experiments`]: report-producing drivers used by the CLI.

pub mod apartment;
pub mod compat;
pub mod experiments;
pub mod io;
pub mod linalg;
pub mod random;
pub mod rigidity;
pub mod spectral;

pub use apartment::{Apartment, ApartmentError, Labeling, PairIndex};
pub use compat::{is_compatible, refine_to_frame, CompatError, Frame};
pub use linalg::{LinalgError, Matrix, Rational, Scalar, Subspace, Vector};
pub use spectral::{ClassDescriptor, ClassError, SpectralOperator};
