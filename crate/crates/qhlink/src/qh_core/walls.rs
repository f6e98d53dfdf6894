//! Wall tensors and their restrictions to the diagonal subspace.

use super::decoration::{nth_root_moduli, WallSpec};
use super::dilog::{matrix_dilog_r, tilde_r_numeric};
use crate::error::Result;
use crate::specfun::{RootSystem, C64};
use crate::tensor::{compose, relabel, DenseTensor};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// The two walls singled out by the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallKind {
    C,
    M,
}

impl WallKind {
    pub fn spec(self) -> WallSpec {
        match self {
            WallKind::C => WallSpec::C,
            WallKind::M => WallSpec::M,
        }
    }
}

/// `𝓗_N(𝒲)^{j,k}_{i,l} = N^{-1} Σ 𝓡(+,d⁺)^{j,α}_{β,l} 𝓡(-,d⁻)^{β,k}_{i,α}`,
/// stored `[j,k,i,l]`. With `fourier` both dilogarithms are Fourier transformed.
pub fn wall_tensor(spec: &WallSpec, rs: &RootSystem, fourier: bool) -> Result<DenseTensor> {
    let (dp, dm) = spec.decorations();
    let (rp, rm) = if fourier {
        (tilde_r_numeric(&dp, rs)?, tilde_r_numeric(&dm, rs)?)
    } else {
        (matrix_dilog_r(&dp, rs)?, matrix_dilog_r(&dm, rs)?)
    };
    let n = rs.n();
    let inv_n = 1.0 / n as f64;
    Ok(DenseTensor::from_fn(n, 2, 2, |x| {
        let (j, k, i, l) = (x[0], x[1], x[2], x[3]);
        let mut s = ZERO;
        for a in 0..n {
            for b in 0..n {
                s += rp.get(&[j, a, b, l]) * rm.get(&[b, k, i, a]);
            }
        }
        s * inv_n
    }))
}

/// Closed forms of the wall tensors, stored `[j,k,i,l]`.
pub fn wall_closed_form(spec: &WallSpec, rs: &RootSystem, fourier: bool) -> Result<DenseTensor> {
    let (dp, _) = spec.decorations();
    let w1 = nth_root_moduli(&dp, rs)?.w1p;
    let n = rs.n();
    let ni = n as i64;
    let m = rs.mi();
    let inv_n = 1.0 / n as f64;
    if fourier {
        let pre = w1.powi(m as i32) * 2.0 * inv_n;
        let denom: Vec<C64> = (0..n).map(|d| ONE - rs.zeta(d as i64) / w1).collect();
        debug_assert!(denom.iter().all(|d| d.norm() > 1e-12));
        Ok(DenseTensor::from_fn(n, 2, 2, |x| {
            let (j, k, i, l) = (x[0], x[1], x[2], x[3]);
            if i != j || k != l {
                return ZERO;
            }
            let d = k as i64 - i as i64;
            pre * rs.zeta((m + 1) * d) / denom[d.rem_euclid(ni) as usize]
        }))
    } else {
        Ok(DenseTensor::from_fn(n, 2, 2, |x| {
            let (j, k, i, l) = (x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
            if (l - k - (j - i)).rem_euclid(ni) != 0 {
                return ZERO;
            }
            let e = m - (j - i - (m + 1)).rem_euclid(ni);
            w1.powi(e as i32) * inv_n
        }))
    }
}

/// The converted wall `XW^{k,l}_{i,j} = 𝓗̃^{j,k}_{i,l}`.
pub fn xw_convert(tilde_h: &DenseTensor) -> Result<DenseTensor> {
    relabel(tilde_h, "j k i l", "k l i j", 2)
}

/// Inverse of [`xw_convert`].
pub fn xw_unconvert(xw: &DenseTensor) -> Result<DenseTensor> {
    relabel(xw, "k l i j", "j k i l", 2)
}

/// The converted wall tensor `CW_N` or `MW_N`.
pub fn converted_wall(kind: WallKind, rs: &RootSystem) -> Result<DenseTensor> {
    xw_convert(&wall_tensor(&kind.spec(), rs, true)?)
}

/// `W_{X,N}^k_i = XW^{k,k}_{i,i}`.
pub fn wall_restricted(kind: WallKind, rs: &RootSystem) -> Result<DenseTensor> {
    let h = wall_tensor(&kind.spec(), rs, true)?;
    Ok(DenseTensor::from_fn(rs.n(), 1, 1, |x| h.get(&[x[1], x[0], x[1], x[0]])))
}

/// The cyclic shift `S^k_i = δ(k - i - 1)`.
pub fn shift(n: usize) -> DenseTensor {
    DenseTensor::from_fn(n, 1, 1, |x| if x[0] == (x[1] + 1) % n { ONE } else { ZERO })
}

/// `M_N = W_{M,N}²`.
pub fn m_n(rs: &RootSystem) -> Result<DenseTensor> {
    let w = wall_restricted(WallKind::M, rs)?;
    compose(&w, &w)
}
