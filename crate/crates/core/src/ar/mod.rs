//! Mesh categories from user-supplied translation quivers.
//!
//! The Auslander–Reiten quiver is input, not computed. Vertices are
//! indecomposables, arrows irreducible maps, and each non-projective vertex
//! contributes its mesh as a degree-2 relation. The check resolves every
//! simple and compares with the shape of the almost split sequence.

mod mesh;
mod translation;

pub use mesh::{arrow_name, mesh_presentation, verify_ar_resolutions, ArReport, VertexCheck};
pub use translation::{EdgeDoc, TranslationQuiver, TranslationQuiverDoc, VertexDoc};
