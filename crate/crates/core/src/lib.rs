//! Monochromatic components and loose cycles in edge-colored k-uniform
//! hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypergraph`]: the hypergraph and coloring types, components, 1-cores,
//!   link graphs and degrees;
//! * [`generators`]: seeded complete / random / nearly complete / k-partite
//!   hypergraphs and the extremal colorings;
//! * [`monochromatic`]: largest monochromatic components, exact and heuristic
//!   `mc_r`, high-degree subgraphs and 1-core checks;
//! * [`loose`]: loose paths and cycles, Berge paths, the depth-first
//!   path-or-witness search, the cluster connector and cycle assembly;
//! * [`regularity`]: p-scaled densities, regularity falsification, upper
//!   uniformity, partition refinement and cluster graphs;
//! * [`bounds`]: closed-form thresholds, exact over rationals where possible;
//! * [`harness`]: file formats, experiments and verification suites.
//!
//! Density and threshold code is generic over [`Scalar`]; the aliases below
//! fix the two instantiations used in practice.

pub mod bounds;
mod dsu;
pub mod error;
pub mod generators;
pub mod harness;
pub mod hypergraph;
pub mod loose;
pub mod monochromatic;
pub mod regularity;
pub mod scalar;

pub use error::{Error, Result, Stage};
pub use generators::{Partition, Seed};
pub use hypergraph::{Color, Coloring, ComponentDecomposition, Hypergraph, Vertex};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Threshold evaluated exactly.
pub type ExactThreshold = bounds::Threshold<Rational>;
/// Threshold evaluated in double precision.
pub type RealThreshold = bounds::Threshold<f64>;
/// Density record with double-precision `d_p`.
pub type DensityRecord = regularity::DensityRecord<f64>;
/// Density record with exact `d_p`.
pub type ExactDensityRecord = regularity::DensityRecord<Rational>;

/// Version string written into experiment outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
