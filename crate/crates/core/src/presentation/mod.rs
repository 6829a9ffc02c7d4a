//! Graded categories presented by a quiver with homogeneous relations.
//!
//! Paths are words of arrow ids with the leftmost arrow applied last, so the
//! word `[c, a]` is the composite `c ∘ a`. Hom-spaces are computed degree by
//! degree as the quotient of the path space by the degree piece of the ideal,
//! using the RREF non-pivot section as basis.

mod category;
mod doc;
mod generation;
mod quiver;

pub use category::{CatPresentation, HomElem, HomPiece, Relation};
pub use doc::{ArrowDoc, CoeffDoc, PresentationDoc, TermDoc};
pub use generation::{check_generated_01, GeneratedReport, GradedCategory, GradedTable};
pub use quiver::{Arrow, GradedQuiver, Path};
