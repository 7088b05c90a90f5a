//! Authoritative encodings of the model: symbol registry, Lax connections,
//! defect matrices, defect conditions, Lagrangian densities and the
//! auxiliary-field reparametrization.

pub mod registry;
pub mod lax;
pub mod defect_matrix;

pub use defect_matrix::{build_k1, build_k2_closed_form, build_k2_printed, build_k2_product};
pub use lax::{build_lax, Chirality};
pub use registry::{ctx, DefectData, ModelCtx, RegionLabel, TypeIDefect, TypeIIDefect};

pub mod conditions;
pub use conditions::{
    build_type_i_conditions, build_type_ii_conditions, orient_rewrite_system, orient_type_i,
    Condition, ConditionKind, ConditionSet, OrientedSystem,
};

pub mod lagrangian;
pub mod reparam;
pub use lagrangian::{
    build_bulk_lagrangian, build_type_i_lagrangian, build_type_ii_lagrangian, LagrangianDensity,
    LagrangianKind,
};
pub use reparam::{build_reparametrization, forward_rep};
