//! Simplicial models of the house with two rooms and its three-dimensional
//! analogue, together with the machinery needed to verify their properties:
//! exact homology, fundamental group certification, collapsibility search,
//! mapping cylinders, and analysis of sphere-to-spine quotient maps.

pub mod collapse;
pub mod complex;
pub mod constructions;
pub mod cylinder;
pub mod double;
pub mod grid;
pub mod group;
pub mod homology;
pub mod immersion;
pub mod io;
pub mod ops;

pub use complex::{ComplexError, SimplicialComplex, SimplicialMap, VertexId};
