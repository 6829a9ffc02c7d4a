//! Minimal graded projective resolutions and the certificates read off them.
//!
//! Covers come from the canonical complement of `rad K` in each syzygy `K`,
//! so generator order and bases are deterministic. Everything is computed on
//! the window of the resolved module; nothing is lost per stage because the
//! top of a syzygy in degree `n` only needs degrees `n − 1` and `n`.

mod certify;
mod resolution;

pub use certify::{
    butler_check, global_dim_probe, is_koszul, is_linear, linearity_of, projective_dimension, with_room_for,
    ButlerReport, GlobalDimReport, KoszulCertificate, LinearFailure, LinearityCertificate, PdBound,
    SimpleCertificate,
};
pub use resolution::{
    cover_of, minimal_resolution, projective_cover, top_generators, working_window, FreeModule, Resolution, Stage, StageSummary,
};
