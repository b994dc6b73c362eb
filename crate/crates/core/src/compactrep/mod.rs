//! Compact groups SO(n), O(n), U(n), SU(2): Weyl groups, irreducible labels,
//! exact characters, branching to block subgroups and Haar integration.

mod group;
pub mod haar;
mod label;
mod orthogonal;
mod weyl;

pub use group::{CompactGroup, Family, WeylElement};
pub use label::{labels_up_to, parse_label, IrrepLabel, OSign};
pub use orthogonal::{
    o_character_on_element, orthogonal_weyl_det, so_character_on_element, so_torus_point, EigenData, MAX_ELEMENT_N,
};
pub use weyl::{
    block_torus_embedding, decompose, dimension, epsilon_twist, haar_connected, inner_product, o_irreps_from_so,
    restrict_torus_character, so_constituents, weight_multiplicity, weyl_character, weyl_density,
    weyl_dimension_formula,
};
