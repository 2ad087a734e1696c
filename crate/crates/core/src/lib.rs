//! Exact-arithmetic toolkit for finite families of convex polyhedra.
//!
//! The crate verifies `(p,q)`-intersection properties, computes exact
//! piercing and transversal numbers, generates the classical extremal
//! families (simplex families, Grünbaum's rays on the line, the unbounded
//! counterexample family and free flat families) and runs the piercing
//! arguments for families with bounded members as certified pipelines.
//!
//! All arithmetic is exact: every intersection question is answered by a
//! rational simplex feasibility solve, and every reported point comes with
//! a membership check that uses no tolerance.

pub mod constructions;
pub mod convex;
pub mod error;
pub mod exact;
pub mod io;
pub mod pipelines;
pub mod pq;

pub use convex::{ConvexSet, Family, Halfspace, Rep};
pub use error::{Error, Result};
pub use exact::{Matrix, Point, Rational};
pub use pipelines::PipelineReport;
pub use pq::{BoundCatalog, Hypergraph, PiercingSolution, PqReport};
