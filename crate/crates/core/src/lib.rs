//! Affine quermassintegrals and mixed affine quermassintegrals of convex
//! bodies, estimated by Monte Carlo integration over the Grassmannian.
//!
//! The pipeline is:
//!
//! * [`geometry`]: exact V-polytope kernel (hulls, volumes, Minkowski sums,
//!   linear images) plus analytic balls.
//! * [`grassmann`]: replayable Haar sampling of `j`-subspaces and orthogonal
//!   projection onto them.
//! * [`mixedvol`]: `j`-dimensional mixed volumes by polarization, with an
//!   independent polynomial-fit oracle.
//! * [`querm`]: the functionals themselves, with delta-method error bars and
//!   common-random-number batches.
//! * [`verify`]: numerical checks of the Minkowski, Aleksandrov-Fenchel,
//!   product and Brunn-Minkowski inequalities and of SL(n) invariance.
//! * [`bodyspec`] and [`cli`]: the JSON body format and the command-line front end.

// NaN-rejecting guards are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bodyspec;
pub mod cli;
mod error;
mod format;
pub mod geometry;
pub mod grassmann;
mod linalg;
pub mod mixedvol;
pub mod querm;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{Body, LinearMap};
pub use grassmann::Subspace;
pub use querm::Estimate;
pub use rng::SampleStream;
pub use verify::{InequalityKind, InequalityReport, SuiteConfig, SuiteReport};
