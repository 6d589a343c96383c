//! Finite groups given by generating permutations or invertible matrices
//! over `Z/m`: enumeration, commutator subgroups and abelianization.

mod group;
mod matrix_group;
mod perm;

pub use group::{
    abelianization, element_image_nontrivial, Abelianization, FiniteGroupSpec, Group, QuotientSpec, Subgroup,
    DEFAULT_CAP,
};
pub use matrix_group::{
    determinant_mod, identity as identity_matrix, is_invertible, matrix_to_perm, vector_from_index, vector_index,
    MatrixGroupSpec, ModMatrix,
};
pub use perm::Perm;
