//! Conversion of local QH tensors into endomorphisms directed along the link.

use super::braiding::{braiding, braiding_to_state, state_to_braiding};
use super::decoration::crossing_decorations;
use super::walls::{converted_wall, xw_convert, xw_unconvert, WallKind};
use crate::error::{Error, Result};
use crate::specfun::RootSystem;
use crate::tensor::{embed_right, DenseTensor};

/// What a local tensor describes; crossings and braidings carry their sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertKind {
    Crossing(i8),
    Braiding(i8),
    Wall,
}

impl ConvertKind {
    fn arity(self) -> usize {
        match self {
            ConvertKind::Wall => 2,
            _ => 4,
        }
    }
}

fn check_arity(t: &DenseTensor, kind: ConvertKind) -> Result<()> {
    if t.up() != kind.arity() || t.down() != kind.arity() {
        return Err(Error::Shape(format!(
            "{kind:?} needs arity ({0},{0}), got ({1},{2})",
            kind.arity(),
            t.up(),
            t.down()
        )));
    }
    Ok(())
}

/// Index rearrangement from a local QH tensor to its converted form.
/// Crossings and braidings share the octahedron labelling.
pub fn convert(t: &DenseTensor, kind: ConvertKind) -> Result<DenseTensor> {
    check_arity(t, kind)?;
    match kind {
        ConvertKind::Crossing(s) | ConvertKind::Braiding(s) => state_to_braiding(t, s),
        ConvertKind::Wall => xw_convert(t),
    }
}

/// Inverse of [`convert`].
pub fn unconvert(t: &DenseTensor, kind: ConvertKind) -> Result<DenseTensor> {
    check_arity(t, kind)?;
    match kind {
        ConvertKind::Crossing(s) | ConvertKind::Braiding(s) => braiding_to_state(t, s),
        ConvertKind::Wall => xw_unconvert(t),
    }
}

/// `Cr_N(sign) = (CW_N ⊗ CW_N) ∘ Br_N(sign)`, i.e. `Br·(CW⊗CW)` as matrices.
pub fn complete_crossing(sign: i8, rs: &RootSystem) -> Result<DenseTensor> {
    let br = braiding(sign, &crossing_decorations(sign), rs)?;
    let cw = converted_wall(WallKind::C, rs)?;
    embed_right(&embed_right(&br, &cw, 0, 1)?, &cw, 2, 3)
}

/// Largest entry of a `(4,4)` or `(2,2)` tensor with some index pair off
/// the diagonal subspace.
pub fn off_diagonal_max(t: &DenseTensor) -> f64 {
    let n = t.extent();
    let rank = t.rank();
    let mut idx = vec![0usize; rank];
    let mut worst: f64 = 0.0;
    for (flat, v) in t.data().iter().enumerate() {
        crate::tensor::decode(flat, n, &mut idx);
        if idx.chunks(2).any(|p| p[0] != p[1]) {
            worst = worst.max(v.norm());
        }
    }
    worst
}

/// Restriction of a tensor supported by diagonal pairs, `e_i⊗e_i ↦ e_i`.
pub fn restrict_to_diagonal(t: &DenseTensor) -> DenseTensor {
    let k = t.rank() / 2;
    DenseTensor::from_fn(t.extent(), t.up() / 2, t.down() / 2, |x| {
        let full: Vec<usize> = x.iter().flat_map(|&i| [i, i]).collect();
        debug_assert_eq!(full.len(), 2 * k);
        t.get(&full)
    })
}
