//! Decorated tetrahedra, matrix dilogarithms and the QH R-matrices built
//! from them.

pub mod braiding;
pub mod convert;
pub mod decoration;
pub mod dilog;
pub mod walls;
pub mod ybo;

pub use braiding::{braiding, braiding_closed_form, braiding_inverse_closed_form, k_o, k_o_bar};
pub use convert::{complete_crossing, convert, unconvert, ConvertKind};
pub use decoration::{
    c0, crossing_decorations, nth_root_moduli, yb_charge, Decoration, NthRootModuli, WallSpec, YangBaxterCharge,
};
pub use dilog::{matrix_dilog_l, matrix_dilog_r, tilde_r, tilde_r_numeric};
pub use walls::{m_n, shift, wall_closed_form, wall_restricted, wall_tensor, WallKind};
pub use ybo::{mixed_crossing, qh_r_matrix, restricted_braiding, restricted_braiding_display, EnhancedYBO};
