//! Exact computational topology on finite simple graphs: Whitney complexes,
//! rational Hodge cohomology, homotopy recursion, Morse theory via
//! Poincare-Hopf indices, Lusternik-Schnirelmann invariants and open-closed
//! decompositions of the simplex poset.

pub mod category;
pub mod complex;
pub mod corpus;
pub mod delta;
pub mod error;
pub mod graph;
pub mod hodge;
pub mod homotopy;
pub mod linalg;
pub mod morse;
pub mod suite;

pub use error::{Result, TopoError};
