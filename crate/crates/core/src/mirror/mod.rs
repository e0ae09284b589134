//! The `1/hbar` expansion, the mirror transformation and its generators,
//! instanton numbers, and class membership checks at fixed points.

pub mod classp;
mod expansion;
mod gw;
mod transform;

pub use classp::{
    double_construction, integration_weights, recursion_residual, verify_class_p, Check, CheckKind,
    ClassPReport, DoubleConstruction,
};
pub use expansion::{expand_hbar, HbarExpansion};
pub use gw::{extract_gw, gw_pipeline, yukawa_series, GwRow, GwTable};
pub use transform::{
    apply_coordinate_change, apply_coordinate_change_localized, apply_exp_over_hbar,
    apply_exp_over_hbar_localized, apply_scalar_mult, apply_scalar_mult_localized,
    extract_mirror_map, mirror_transform, q_degrees_of, MirrorMap,
};
