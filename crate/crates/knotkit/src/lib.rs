//! knotkit: a desk-scale computational knot theory toolkit.
//!
//! The crate covers the constructive path from a knot diagram to an unknot
//! certificate: diagram codes and Reidemeister moves, triangulated
//! 3-manifolds and truncated knot complements, an embedding of any diagram
//! into the 1-skeleton of a small lattice polytope, normal surface theory
//! with exact vertex-ray enumeration over the integers, elementary-move
//! calculi on disks, tori and general surfaces, and exact vertical
//! projection back to diagrams.
//!
//! All geometric and algebraic computations are exact (big integers and
//! rationals); nothing in the core path uses floating point.

pub mod complex;
pub mod fixtures;
pub mod diagram;
pub mod linalg;
pub mod normalsurf;
pub mod par;
pub mod surface;

pub use par::ExecMode;
