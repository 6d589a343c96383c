//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups in invariant-factor form, cokernels, and colimits of
//! finite diagrams of abelian groups.

mod colimit;
mod group;
mod matrix;
mod snf;

pub use colimit::{ab_colimit, AbArrow, AbDiagram, Colimit};
pub use group::{
    check_hom, cokernel, cokernel_with_map, hom_compare, AbPresentation, FinAbGroup, HomProperties, Lattice, Quotient,
};
pub use matrix::IntMatrix;
pub use snf::{kernel_basis, smith_diagonal, smith_normal_form, SmithForm};
