//! Exact linear algebra over ℚ and 𝔽_p.
//!
//! Every subspace is kept in reduced row-echelon form so that equality of
//! subspaces is structural equality.

mod mat;
mod scalar;
mod sparse;
mod subspace;

pub use mat::{Mat, Rref, SPARSE_THRESHOLD};
pub use scalar::{Field, FieldDoc, Scalar};
pub use sparse::SparseMat;
pub use subspace::{quotient_basis, QuotientBasis, Subspace};
