//! The QH R-matrices and the enhanced Yang-Baxter operator `(R_N, M_N, 1, 1)`.

use super::braiding::diagonal_state;
use super::decoration::crossing_decorations;
use super::walls::{shift, wall_restricted, WallKind};
use crate::error::Result;
use crate::specfun::{omega, RootSystem, C64};
use crate::tensor::{
    compose, embed_right, flip, global_eq_mod_n, partial_trace, relabel, single_left, single_right, DenseTensor,
};

const ONE: C64 = C64::new(1.0, 0.0);

/// `B_N(sign)`: the braiding restricted to `V⊗V`, from a diagonal-only
/// contraction of the octahedron.
pub fn restricted_braiding(sign: i8, rs: &RootSystem) -> Result<DenseTensor> {
    let hd = diagonal_state(&crossing_decorations(sign), rs)?;
    if sign < 0 {
        relabel(&hd, "b a c d", "a b c d", 2)
    } else {
        relabel(&hd, "a c d b", "a b c d", 2)
    }
}

/// The explicit `ω`-quotient formulas for `B_N(±)`.
pub fn restricted_braiding_display(sign: i8, rs: &RootSystem) -> Result<DenseTensor> {
    let n = rs.n();
    let m1 = rs.mi() + 1;
    let zi = ONE / rs.zeta(1);
    let neg = -ONE;
    let om = |u: C64, k: i64| omega(u, k, rs);
    let mut t = DenseTensor::zeros(n, 2, 2);
    for i in 0..n as i64 {
        for j in 0..n as i64 {
            for k in 0..n as i64 {
                for l in 0..n as i64 {
                    let e = (l - j) * (k - i);
                    let (idx, v) = if sign < 0 {
                        let v = rs.zeta(e + m1 * (j - i - l + k)) * om(-zi, j - i)? * om(neg, l - k)?
                            / (om(neg, l - i)? * om(neg, j - k)?);
                        ([j, i, k, l], v)
                    } else {
                        let v = rs.zeta(e + m1 * (l - i - j + k)) * om(-zi, j - i)? * om(-zi, l - k)?
                            / (om(neg, l - i)? * om(-zi, j - k)?);
                        ([i, l, j, k], v)
                    };
                    t.set(&idx.map(|x| x as usize), v / n as f64);
                }
            }
        }
    }
    Ok(t)
}

/// `M·(A⊗B)` for single-factor `A`, `B`.
fn right_pair(m: &DenseTensor, a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    single_right(&single_right(m, a, 0)?, b, 1)
}

/// `(A⊗B)·M`.
fn left_pair(a: &DenseTensor, b: &DenseTensor, m: &DenseTensor) -> Result<DenseTensor> {
    single_left(a, 0, &single_left(b, 1, m)?)
}

/// `R_N(sign) = (W_C⊗W_C) ∘ B_N(sign)`, i.e. `B·(W_C⊗W_C)` as matrices.
pub fn qh_r_matrix(sign: i8, rs: &RootSystem) -> Result<DenseTensor> {
    let w = wall_restricted(WallKind::C, rs)?;
    right_pair(&restricted_braiding(sign, rs)?, &w, &w)
}

/// `R_N(ε₀, ε₁)`: the crossing of sign `ε₀` with over/under choice `ε₁`.
pub fn mixed_crossing(eps0: i8, eps1: i8, rs: &RootSystem) -> Result<DenseTensor> {
    let w = wall_restricted(WallKind::C, rs)?;
    let id = DenseTensor::identity(rs.n(), 1);
    let bm = restricted_braiding(-1, rs)?;
    let core = if eps0 > 0 { bm.inverse()? } else { bm };
    if (eps0 > 0) == (eps1 > 0) {
        // (W⊗I)·core·(I⊗W)
        left_pair(&w, &id, &right_pair(&core, &id, &w)?)
    } else {
        // (I⊗W)·core·(W⊗I)
        left_pair(&id, &w, &right_pair(&core, &w, &id)?)
    }
}

/// Relative residual of the braid relation modulo one global unit.
pub fn ybe_residual(r: &DenseTensor, rs: &RootSystem) -> Result<f64> {
    let id = DenseTensor::identity(rs.n(), 3);
    let lhs = embed_right(&embed_right(&embed_right(&id, r, 0, 1)?, r, 1, 2)?, r, 0, 1)?;
    let rhs = embed_right(&embed_right(&embed_right(&id, r, 1, 2)?, r, 0, 1)?, r, 1, 2)?;
    Ok(global_eq_mod_n(&lhs, &rhs, rs, 1e-8)?.residual)
}

/// Residual of `(M⊗M)R =_N R(M⊗M)`.
pub fn commutation_residual(r: &DenseTensor, m: &DenseTensor, rs: &RootSystem) -> Result<f64> {
    Ok(global_eq_mod_n(&left_pair(m, m, r)?, &right_pair(r, m, m)?, rs, 1e-8)?.residual)
}

/// `Tr₂(R(Id⊗M))`.
pub fn trace_twist(r: &DenseTensor, m: &DenseTensor) -> Result<DenseTensor> {
    partial_trace(&single_right(r, m, 1)?, 2)
}

/// `P·T·P` for an endomorphism of `V⊗V`.
pub fn flip_conjugate(t: &DenseTensor) -> Result<DenseTensor> {
    let p = flip(t.extent());
    compose(&compose(&p, t)?, &p)
}

/// An enhanced Yang-Baxter operator `(R, M, a, b)` with the inverse of `R`.
#[derive(Debug, Clone)]
pub struct EnhancedYBO {
    pub r: DenseTensor,
    pub r_inv: DenseTensor,
    pub m: DenseTensor,
    pub a: C64,
    pub b: C64,
}

/// Residuals of the enhanced Yang-Baxter conditions, each modulo a unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YboResiduals {
    pub ybe: f64,
    pub inverse: f64,
    pub commutation: f64,
    pub twist_pos: f64,
    pub twist_neg: f64,
}

impl YboResiduals {
    pub fn max(&self) -> f64 {
        [self.ybe, self.inverse, self.commutation, self.twist_pos, self.twist_neg].into_iter().fold(0.0, f64::max)
    }
}

impl EnhancedYBO {
    /// `(R_N, M_N, 1, 1)` read on the flipped tensor factors, which is the
    /// orientation in which the twist condition holds on the second factor.
    /// `M_N` equals the cyclic shift up to a unit and is replaced by it.
    pub fn qh(rs: &RootSystem) -> Result<Self> {
        Ok(Self {
            r: flip_conjugate(&qh_r_matrix(1, rs)?)?,
            r_inv: flip_conjugate(&qh_r_matrix(-1, rs)?)?,
            m: shift(rs.n()),
            a: ONE,
            b: ONE,
        })
    }

    pub fn residuals(&self, rs: &RootSystem) -> Result<YboResiduals> {
        let n = rs.n();
        let id1 = DenseTensor::identity(n, 1);
        let id2 = DenseTensor::identity(n, 2);
        let inverse = global_eq_mod_n(&compose(&self.r, &self.r_inv)?, &id2, rs, 1e-8)?.residual;
        let twist = |r: &DenseTensor, a: C64| -> Result<f64> {
            Ok(global_eq_mod_n(&trace_twist(r, &self.m)?, &id1.scale(a * self.b), rs, 1e-8)?.residual)
        };
        Ok(YboResiduals {
            ybe: ybe_residual(&self.r, rs)?,
            inverse,
            commutation: commutation_residual(&self.r, &self.m, rs)?,
            twist_pos: twist(&self.r, self.a)?,
            twist_neg: twist(&self.r_inv, ONE / self.a)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restricted_matches_display() {
        for n in [3usize, 5] {
            let rs = RootSystem::new(n).unwrap();
            for s in [-1i8, 1] {
                let c = global_eq_mod_n(
                    &restricted_braiding(s, &rs).unwrap(),
                    &restricted_braiding_display(s, &rs).unwrap(),
                    &rs,
                    1e-9,
                )
                .unwrap();
                assert!(c.equal, "N={n} sign {s}: {}", c.residual);
            }
        }
    }

    #[test]
    fn eybo_small() {
        let rs = RootSystem::new(3).unwrap();
        let y = EnhancedYBO::qh(&rs).unwrap();
        let r = y.residuals(&rs).unwrap();
        assert!(r.max() < 1e-8, "{r:?}");
    }
}
