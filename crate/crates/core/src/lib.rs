//! Norms, seminorms and decompositions of measures and functions on finite
//! metric spaces.
//!
//! The crate computes Kantorovich–Rubinstein norms of signed measures with
//! Lipschitz dual certificates, Hölder seminorms and little-Lipschitz
//! distance profiles, a constructive atomic decomposition into dipole and
//! Dirac atoms, and discrete Besov / Hajłasz seminorms with embedding
//! checks. Everything is exact desk-scale numerics: dense matrices, a
//! built-in dense simplex solver, and closed balls at realized radii.
//!
//! Modules follow the data: [`metric`] holds spaces and covers, [`measure`]
//! signed measures, [`transport`] the norms and the LP solver, [`lipschitz`]
//! function-side seminorms and the operator family, [`atomic`] the
//! decomposition, [`besov`] the smoothness seminorms, and [`json`] the file
//! formats shared with the CLI.

// parameter guards use negated range checks so NaN fails them too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atomic;
pub mod besov;
pub mod error;
pub mod json;
pub mod lipschitz;
pub mod measure;
pub mod metric;
pub mod rng;
pub mod transport;

pub use error::{Error, Result};
pub use lipschitz::ScalarField;
pub use measure::SignedMeasure;
pub use metric::{FiniteMetricSpace, MetricMeasureSpace, NetHierarchy};
pub use transport::{KRResult, TransportPlan};
