//! Ungraded finite-dimensional algebras `kQ / (I + J^N)` and their
//! radical filtrations.
//!
//! Relations may be inhomogeneous. The ideal is saturated under arrow
//! multiplication among paths shorter than `N`, which is exact because
//! `J^N` is part of the ideal. The associated graded presentation, the
//! functor `G`, and weakly-Koszul certificates are built on top.

mod algebra;
mod fmodule;
mod graded;
mod weakly;

pub use algebra::{FDAlgebra, FiltrationReport, LayerDims};
pub use fmodule::{radical_module, FModule, FModuleDoc, FModuleKind, FSub};
pub use graded::{assoc_graded, assoc_graded_table, g_functor, g_functor_on};
pub use weakly::{
    f_cover_of, f_minimal_resolution, f_top_generators, radical_sequence, ses_check, weak_to_koszul_check, weakly_koszul,
    weakly_koszul_algebra, weakly_koszul_mode, AlgebraWeakCertificate, FFree, FResolution, FStage, SesReport, WeakFailure,
    WeakMode, WeakToKoszulReport, WeaklyKoszulCertificate,
};
