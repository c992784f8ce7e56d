//! Character tables and representation-theoretic quantities: exact tables,
//! minimal degrees `m(G)` and `m_f(G)`, kernels, and root decompositions of
//! commuting unitary families.

mod degrees;
mod dixon;
pub mod fp;
mod lemmas;
mod roots;

pub use degrees::{
    kernel_elements, min_faithful_degree, min_nontrivial_degree, regular_representation_degrees,
    FaithfulDegree, FLOAT_ORACLE_LIMIT,
};
pub use dixon::{
    character_table, character_table_with, irreducible_degrees, is_primitive_prime_power_index,
    working_prime, CharValue, CharacterTable, TableSummary, MAX_CLASSES, MAX_ORDER,
};
pub use lemmas::{
    class_of_matrix, e1_outside_nontrivial_kernels, set_sees_primitive_root, sl_e1_class,
    sp_conjugation_identities, IdentityCheck,
};
pub use roots::{
    conjugated_root, nonzero_vectors, permutation_representation, root_decomposition,
    root_decomposition_seeded, CMatrix, ConjugatedRoot, Root, RootDecomposition, RootSummary,
};
