//! Exterior calculus on low-dimensional Lie algebras.
//!
//! The crate computes with G2-structures on seven-dimensional Lie algebras
//! and SU(3)-structures on six-dimensional ones: induced metrics and volume
//! forms, Lee forms, torsion-class predicates (calibrated, locally conformal
//! calibrated, locally conformal parallel; coupled, nearly Kahler,
//! half-flat), twisted differentials and their exactness solver, rank-one
//! extensions by derivations, cylinder and cone constructions in a warped
//! calculus, pointwise reduction from dimension 7 to 6, matrix exponentials
//! and integer-lattice scans.
//!
//! Entry points:
//!
//! - [`forms`]: dense alternating forms, wedge/interior/pullback, metrics,
//!   Hodge star.
//! - [`lie`]: Lie algebras from structure constants, the Chevalley-Eilenberg
//!   differential, tuple-notation parsing and printing, extensions.
//! - [`su3`], [`g2`]: structure construction and classification.
//! - [`extensions`]: building G2-structures out of SU(3)-structures.
//! - [`files`]: the line-oriented structure-file format.
//! - [`catalog`]: executable regression registry over the shipped data
//!   files.
//! - [`cli`]: the command-line front end (see the `g2forms` binary).
//!
//! The `examples/` directory contains one runnable walk-through per major
//! capability; `cargo run --example rank_one_extension` is a good start.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod extensions;
pub mod files;
pub mod forms;
pub mod g2;
pub mod lie;
pub(crate) mod linalg;
pub mod su3;

pub use error::{FormError, ParseError, StructureError};
pub use extensions::{
    cone, cylinder, g2_from_coupled, infinitesimal_action, nk_mapping_torus, ExtensionResult,
    WarpedForm,
};
pub use files::StructureFile;
pub use forms::{
    dual_interior, flat, form_inner, hodge_star, multi_indices, norm2, sharp, tensor_norm2, KForm,
    LinearMap, Metric, MultiIndex, Vector, EPS,
};
pub use g2::{d_theta, lie_derivative, metric_from_phi, G2Class, G2Structure, G2Tag};
pub use lie::{extend, lattice_scan, matrix_exp, realify, Complex, Derivation, LieAlgebra};
pub use su3::{classify as classify_su3, hitchin_endomorphism, rescale_coupled, Su3Class,
    Su3Structure, Su3Tag};
