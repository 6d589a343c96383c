//! Finite categories built from monoid actions and from symmetric monoidal
//! groupoids, with connected components and first homology of nerves.

mod action;
mod category;
mod quillen;

pub use action::{
    action_cat, classifying_cat, double_action_cat, fin_coeff_cat_discrete, gk_cat, pair_index, relative_e, relative_g,
};
pub use category::{Components, FiniteCategory, Morphism};
pub use quillen::{
    bin_cat, bin_cat_enumerated, fin_coeff_cat, fin_coeff_cat_enumerated, he_cat, he_cat_enumerated, s1s_cat,
    s1s_cat_enumerated,
};
