//! Certifying digraph algorithms around oriented paths in digraphs of large
//! chromatic number.
//!
//! Every search in this crate returns a witness that can be checked on its
//! own, such as a [`PathEmbedding`] for a found oriented path or a
//! [`VertexColoring`] when the path is ruled out. The
//! [`verify`] module runs exhaustive and seeded campaigns over small digraphs
//! and re-checks every returned witness.
//!
//! ```
//! use chromapath::{Digraph, paths::{find_two_block_certified, CertifiedOutcome}};
//!
//! let tt5 = Digraph::transitive_tournament(5);
//! match find_two_block_certified(&tt5, 2, 2).unwrap() {
//!     CertifiedOutcome::Embedding(p) => assert_eq!(p.vertices.len(), 5),
//!     CertifiedOutcome::Coloring(_) => unreachable!("chi(TT5) = 5"),
//! }
//! ```

pub mod circuits;
pub mod coloring;
mod error;
pub mod forest;
pub mod graph;
pub mod paths;
pub mod random;
pub mod verify;

pub use circuits::{Circuit, HandleDecomposition};
pub use coloring::VertexColoring;
pub use error::{Error, Result};
pub use forest::OutForest;
pub use graph::{CanonicalForm, Digraph, ParseError};
pub use paths::{BlockPattern, CertifiedOutcome, Direction, PathEmbedding};
