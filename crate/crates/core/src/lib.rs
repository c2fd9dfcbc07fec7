//! Exact cycle spaces, defect invariants, observation filtrations and Gram
//! operators for directed tensor-labeled hypergraphs.

pub mod error;
pub mod exactla;
pub mod field;
pub mod generate;
pub mod gram;
pub mod hypergraph;
pub mod multigraph;
pub mod observe;
pub mod ohg;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use hypergraph::{AnalysisReport, Construction, EdgeSpec, TensorHypergraph};
pub use tensor::{TensorElem, Word};
