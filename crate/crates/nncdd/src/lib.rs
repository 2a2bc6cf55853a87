//! Exact double description conversion for NNC (not necessarily closed)
//! convex polyhedra.
//!
//! A polyhedron is described by a geometric skeleton (lines, rays, closure
//! points and skeleton points, or equalities, non-strict and skeleton strict
//! inequalities) together with a combinatorial non-skeleton: a family of
//! supports, each a set of skeleton elements naming a face whose relative
//! interior is filled (generator side) or cut away (constraint side).

pub mod arith;
pub mod bench;
pub mod conversion;
pub mod error;
pub mod eps;
pub mod geom;
pub mod io;
pub mod polyhedron;
pub mod satlat;
pub mod stats;

pub use arith::HomVec;
pub use error::{Error, Result};
pub use geom::{ConKind, Constraint, GenKind, Generator, SkelConSys, SkelGenSys};
pub use polyhedron::NncPolyhedron;
pub use stats::StatsRecord;
