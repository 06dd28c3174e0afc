//! Orthogonal graphs over `Z/2^n`: construction, closed-form parameters and
//! brute-force verification.
//!
//! ```
//! use orthograph::{formulas, FormSpec, OrthoGraph};
//!
//! // n = 2, nu = 1, delta = 1 gives the octahedron.
//! let spec = FormSpec::new(2, 1, 1)?;
//! let g = OrthoGraph::build(&spec, 1000)?;
//! assert_eq!(g.order(), 6);
//! assert_eq!(g.adjacency().degree(0), 4);
//! assert_eq!(formulas::vertex_count(&spec), 6u32.into());
//! # Ok::<(), orthograph::Error>(())
//! ```

pub mod analysis;
pub mod bitmatrix;
pub mod error;
pub mod export;
pub mod form;
pub mod formulas;
pub mod graph;
pub mod projective;
pub mod report;
pub mod ring;
mod serde_dec;
pub mod subconstituent;

pub use bitmatrix::BitMatrix;
pub use error::{Error, Result};
pub use form::{Delta, FormSpec, GramMatrix, TupleVec};
pub use graph::{Fiber, OrthoGraph};
pub use projective::{canonicalize, enumerate_vertices, ProjPoint, DEFAULT_VERTEX_CAP};
pub use ring::{RingElem, RingParams};
