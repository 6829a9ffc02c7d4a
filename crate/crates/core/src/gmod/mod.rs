//! Graded contravariant modules over a presentation.
//!
//! Modules are stored on a degree window and carry flags saying whether
//! they are known to vanish outside it. Operations never invent data beyond
//! the window; anything certified is certified only where it is known.

mod doc;
mod hom;
mod module;
mod sub;
mod tensor;

pub use doc::{CokernelDoc, ModuleDoc, ModuleKind, SummandDoc};
pub use hom::{hom_degree0, ModuleMap, NatSpace};
pub use module::{GradedModule, ModuleData};
pub use sub::{ideal_product, radical, top, Submodule};
pub use tensor::{tensor, transfer_to_opposite, Cokernel, TensorDims};
