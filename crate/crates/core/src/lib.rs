//! Path homology of directed graphs: chain modules of allowed and
//! ∂-invariant paths, integer homology, minimal paths, digraph homotopy and
//! the cup product on path cohomology.

pub mod chain;
pub mod cochains;
pub mod cup;
pub mod digraph;
pub mod fixtures;
pub mod fuzz;
pub mod homology;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod mayer_vietoris;
pub mod minimal;
pub mod omega;
pub mod product;
pub mod structure;
pub mod support;

pub use chain::{boundary, Chain, ElemPath, Form, QChain};
pub use digraph::{Digraph, Vertex, VertexMap};
pub use homology::{path_homology, Coefficients, HomologyResult};
pub use omega::{build_complex, OmegaComplex, OmegaSpace};
