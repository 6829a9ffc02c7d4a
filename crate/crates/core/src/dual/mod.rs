//! Quadratic duals and the Ext-algebra of the simples.
//!
//! The dual of `T(E)/⟨I₂⟩` lives on the opposite quiver, arrow `a` becoming
//! `a*`, with relations the annihilator of `I₂` under the pairing that makes
//! the path `a₁ ⋯ aₙ` dual to `aₙ* ⋯ a₁*`. With this convention
//! `Ext^i(S_C, S_D)` has the dimension of `Hom_{A!}(C, D)_i`.

mod compare;
mod ext;
mod quadratic;

pub use compare::{koszul_dual_compare, DimMismatch, DualComparison};
pub use ext::{ext_algebra, ExtAlgebra, ExtBasis, ExtDim, ExtProduct, ExtTable, ExtVector};
pub use quadratic::{dual_arrow_name, dual_quiver, orthogonal_relations, quadratic_dual};
