//! Exact normal surface theory for triangulated compact 3-manifolds.
//!
//! The crate builds the standard (7t) and quadrilateral (3t) matching
//! systems of a triangulation, enumerates the admissible vertex solutions of
//! the projective solution cone by the double description method (with an
//! optional quad-condition filter and an independent brute-force oracle),
//! realizes admissible coordinate vectors as embedded normal surface cell
//! complexes, and searches the quad vertex surfaces of a one-torus-boundary
//! manifold for an essential disc — a solid torus / unknottedness
//! certificate.
//!
//! All arithmetic is exact. Core types are generic over any signed integer
//! scalar implementing [`num::Scalar`]; the [`Coord`] alias is the default
//! used by the command line tool.

pub mod boundary;
pub mod coordinates;
pub mod enumeration;
pub mod linalg;
pub mod num;
pub mod perm;
pub mod report;
pub mod surface;
pub mod tet;
pub mod triangulation;
pub mod unknot;

pub use num::Scalar;
pub use perm::Perm4;
pub use triangulation::{parse_triangulation, Triangulation, TriangulationError};

/// Default exact coordinate scalar: arbitrary precision, never overflows.
/// `i64` also implements [`Scalar`] and is adequate for small experiments.
pub type Coord = num_bigint::BigInt;
