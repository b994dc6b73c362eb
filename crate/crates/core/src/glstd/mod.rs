//! Standard modules of `GL_n(ℝ)` built from `GL_1`/`GL_2` blocks, and their
//! germ data `Φ` at the support elements of the geometric formula.

mod germ;
mod module;

pub use germ::{
    gl_weyl_det_half, integrand_term, integrand_virtual, phi, phi_block, so_weyl_det, x_m_classes, Assigned, PhiTerm,
    SupportElement, Variant,
};
pub use module::{Block, GL1Char, GL2Block, StandardModule, VirtualRep, VirtualTerm};
