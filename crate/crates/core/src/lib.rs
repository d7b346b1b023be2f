//! Refinements of the Schwarz inequality in complex inner product spaces,
//! the projective metrics they induce, and a randomized checker.
//!
//! Vectors are finite tuples of [`Complex64`] with `<x, y> = sum x_k conj(y_k)`.
//! Every bound returns a [`BoundReport`] carrying both sides and the gap.

pub mod cli;
pub mod error;
pub mod harness;
pub mod index;
pub mod io;
pub mod kernel;
pub mod linalg;
pub mod metrics;
pub mod ntuple;
pub mod numfmt;
pub mod projections;
pub mod refinements;
pub mod report;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use harness::{gen_vector, run_suite, Field, SuiteReport, TrialConfig};
pub use index::{Neighbor, ProjectivePoint, QueryStats, VpIndex};
pub use io::{parse_vectors, Format, VectorFile};
pub use kernel::Mode;
pub use linalg::{inner, norm, normalize, CVector, Tolerance};
pub use metrics::{angle, d_p, delta_p, triangle_check, AngleKind, AngleValue, TriangleKind};
pub use ntuple::{basis_max_bound, general_e_bound, mean_bound, Family, NTupleReport, Order};
pub use projections::{apply, make_projector, projection_bound, ProjectionReports, Projector};
pub use refinements::{
    det2_bound, detp_bound, quad_refinement, rs_chain, schwarz_bound, MetricParams, RsChain,
};
pub use report::BoundReport;
