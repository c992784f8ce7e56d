//! Construction and enumeration of the finite groups under study:
//! `SL_k(Z/p^n)`, `Sp_2k(Z/p^n)`, alternating and symmetric groups, the
//! tree quotients `F_1`, `F_2`, plus small abelian groups and `Q8` used as
//! test subjects.

mod classes;
mod code;
pub mod matrix;
mod perm;
mod stabilizer;
mod table;

pub use classes::ClassData;
pub use code::{
    alt_invariant_subgroup_scan, build_even_weight_code, is_invariant, EvenWeightCode,
    InvariantScan, Subspace,
};
pub use matrix::Matrix;
pub use perm::{parity_of, Perm};
pub use stabilizer::{is_subgroup, stabilizer_subgroup, StabilizerAction};
pub use table::{
    abelian_invariant_factor_lists, build_abelian, build_alt, build_matrix_group, build_quaternion, build_sl, build_sp, build_sym,
    build_tree_level, sl_order, sp_order, tree_level_order, tree_top_permutation, ElementKind,
    Family, GroupDescriptor, GroupTable, CAYLEY_CACHE_LIMIT, DEFAULT_ELEMENT_BUDGET,
};

/// Conjugacy classes of `g`; see [`ClassData`].
pub fn conjugacy_classes(g: &GroupTable) -> ClassData {
    ClassData::compute(g)
}
