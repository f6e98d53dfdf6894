//! Kashaev's R-matrix and its comparison with the QH R-matrices.

use crate::error::Result;
use crate::qh_core::walls::{shift, wall_restricted, WallKind};
use crate::qh_core::ybo::{mixed_crossing, restricted_braiding, EnhancedYBO};
use crate::specfun::{bracket, omega, omega_star, residue, theta, RootSystem, C64};
use crate::tensor::{compose, global_eq_mod_n, relabel, DenseTensor, TensorComparison};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Kashaev's R-matrix of one sign. `tensor` is stored upper indices first.
#[derive(Debug, Clone)]
pub struct KashaevRMatrix {
    pub sign: i8,
    pub n: usize,
    pub tensor: DenseTensor,
}

fn res(k: i64, n: usize) -> i64 {
    residue(k, n) as i64
}

/// `R_{K,N}(−)^{l,k}_{i,j}` stored `[l,k,i,j]` and `R_{K,N}(+)^{i,j}_{l,k}`
/// stored `[i,j,l,k]`, straight from the entry formulas.
pub fn kashaev_r(sign: i8, rs: &RootSystem) -> KashaevRMatrix {
    let n = rs.n();
    let ni = n as i64;
    let nf = n as f64;
    let om = |k: i64| omega(ONE, k, rs).expect("ω(1|n) has no poles for n ≥ 0");
    let oms = |k: i64| omega_star(ONE, k as usize, rs);
    let tensor = DenseTensor::from_fn(n, 2, 2, |x| {
        if sign < 0 {
            let (l, k, i, j) = (x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
            let (a, b, c, d) = (res(j - i - 1, n), res(l - k, n), res(k - j, n), res(i - l, n));
            if theta(a + b, ni) * theta(d + c, ni) == 0 {
                return ZERO;
            }
            rs.zeta(1 + (l - j) * (1 + i - k)) * nf / (om(a) * om(b) * oms(c) * oms(d))
        } else {
            let (i, j, l, k) = (x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
            let (a, b, c, d) = (res(j - k, n), res(l - i, n), res(k - l - 1, n), res(i - j, n));
            if theta(b + a, ni) * theta(d + c, ni) == 0 {
                return ZERO;
            }
            rs.zeta((j - l) * (1 + i - k)) * nf / (om(a) * om(b) * oms(c) * oms(d))
        }
    });
    KashaevRMatrix { sign, n, tensor }
}

/// `R_{K,N}(−)^{-1}`: the positive display carries an extra `ζ`, removed here.
pub fn kashaev_r_inverse(rs: &RootSystem) -> DenseTensor {
    kashaev_r(1, rs).tensor.scale(rs.zeta(-1))
}

/// `μ_{K,N} = ζ^{m+1}` times the cyclic shift.
pub fn mu_kashaev(rs: &RootSystem) -> DenseTensor {
    shift(rs.n()).scale(rs.zeta(rs.mi() + 1))
}

/// `s = −ζ^{m+1} = e^{iπ/N}`.
pub fn kashaev_s(rs: &RootSystem) -> C64 {
    -rs.zeta(rs.mi() + 1)
}

/// `(R_{K,N}, μ_{K,N}, −s, 1)`.
pub fn kashaev_ybo(rs: &RootSystem) -> EnhancedYBO {
    EnhancedYBO {
        r: kashaev_r(-1, rs).tensor,
        r_inv: kashaev_r_inverse(rs),
        m: mu_kashaev(rs),
        a: -kashaev_s(rs),
        b: ONE,
    }
}

/// `r(x)^{l,k}_{i,j} = N[x]² ζ^{(l−j)(i−k)} ω(x/ζ|j−k)ω(x/ζ|l−i) / (ω(x|j−i−1)ω(x|l−k))`.
pub fn r_fun(x: C64, i: i64, j: i64, k: i64, l: i64, rs: &RootSystem) -> Result<C64> {
    let xz = x / rs.zeta(1);
    let b = bracket(x, rs);
    Ok(rs.n() as f64 * b * b * rs.zeta((l - j) * (i - k)) * omega(xz, j - k, rs)? * omega(xz, l - i, rs)?
        / (omega(x, j - i - 1, rs)? * omega(x, l - k, rs)?))
}

/// `r(x)` stored `[l,k,i,j]`.
pub fn r_tensor(x: C64, rs: &RootSystem) -> Result<DenseTensor> {
    let n = rs.n();
    let mut t = DenseTensor::zeros(n, 2, 2);
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let v = r_fun(x, i as i64, j as i64, k as i64, l as i64, rs)?;
                    t.set(&[l, k, i, j], v);
                }
            }
        }
    }
    Ok(t)
}

/// `r(x)/(1−x^N)`; the removable point `x^N = 1` near `x = 1` uses the
/// θ-supported closed form.
pub fn r_hat(x: C64, rs: &RootSystem) -> Result<DenseTensor> {
    if (x - ONE).norm() < 1e-9 {
        return Ok(r_hat_one(rs));
    }
    let d = ONE - x.powi(rs.n() as i32);
    Ok(r_tensor(x, rs)?.scale(ONE / d))
}

/// `(r(x)/(1−x^N))|_{x=1}`, stored `[l,k,i,j]`.
pub fn r_hat_one(rs: &RootSystem) -> DenseTensor {
    let n = rs.n();
    let ni = n as i64;
    let om = |k: i64| omega(ONE, k, rs).expect("no poles");
    DenseTensor::from_fn(n, 2, 2, |x| {
        let (l, k, i, j) = (x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
        let (a, b, c, d) = (res(j - i - 1, n), res(l - k, n), res(k - j, n), res(i - l, n));
        if theta(a + b, ni) * theta(d + c, ni) == 0 {
            return ZERO;
        }
        rs.zeta((l - j) * (i - k)) * n as f64
            / (om(a) * om(b) * omega_star(ONE, c as usize, rs) * omega_star(ONE, d as usize, rs))
    })
}

/// `h(x,α)^k_i = ζ^{α(k−i)} [xζ^{k−i}]`.
pub fn h_mat(x: C64, alpha: i64, rs: &RootSystem) -> DenseTensor {
    DenseTensor::from_fn(rs.n(), 1, 1, |idx| {
        let d = idx[0] as i64 - idx[1] as i64;
        rs.zeta(alpha * d) * bracket(x * rs.zeta(d), rs)
    })
}

fn kron1(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    crate::tensor::kron(a, b)
}

fn rel_diff(a: &DenseTensor, b: &DenseTensor) -> Result<f64> {
    Ok(a.max_abs_diff(b)? / b.max_abs().max(1e-300))
}

/// Residuals of the two conjugation identities for `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjmatReport {
    /// `(Id⊗h(1/y,1))·r̂(x)·(h(y,1)⊗Id)` against `r̂(xy)`.
    pub first: f64,
    /// `(h(1/y,0)⊗Id)·r̂(x)·(Id⊗h(y,0))` against `r̂(x/y)`.
    pub second: f64,
}

pub fn verify_conjmat(x: C64, y: C64, rs: &RootSystem) -> Result<ConjmatReport> {
    let id = DenseTensor::identity(rs.n(), 1);
    let rx = r_hat(x, rs)?;
    let lhs1 = compose(&compose(&kron1(&id, &h_mat(ONE / y, 1, rs))?, &rx)?, &kron1(&h_mat(y, 1, rs), &id)?)?;
    let lhs2 = compose(&compose(&kron1(&h_mat(ONE / y, 0, rs), &id)?, &rx)?, &kron1(&id, &h_mat(y, 0, rs))?)?;
    Ok(ConjmatReport { first: rel_diff(&lhs1, &r_hat(x * y, rs)?)?, second: rel_diff(&lhs2, &r_hat(x / y, rs)?)? })
}

/// `R1^{l,K}_{I,j} = ζ^{(m+1)(I−j+l−K)} Σ_{i,k} r̂(−1)^{l,k}_{i,j} h₁^i_I h₁^K_k`
/// with `h₁ = h(−1,1)`, stored `[l,K,I,j]`.
pub fn reduced_plus_minus(rs: &RootSystem) -> Result<DenseTensor> {
    let n = rs.n();
    let m1 = rs.mi() + 1;
    let r = r_hat(-ONE, rs)?;
    let h = h_mat(-ONE, 1, rs);
    Ok(DenseTensor::from_fn(n, 2, 2, |x| {
        let (l, kk, ii, j) = (x[0], x[1], x[2], x[3]);
        let mut s = ZERO;
        for i in 0..n {
            for k in 0..n {
                s += r.get(&[l, k, i, j]) * h.get(&[i, ii]) * h.get(&[kk, k]);
            }
        }
        s * rs.zeta(m1 * (ii as i64 - j as i64 + l as i64 - kk as i64))
    }))
}

/// `R2^{L,k}_{i,J} = ζ^{(m+1)(i−J+L−k)} Σ_{j,l} h₀^j_J r̂(−1)^{l,k}_{i,j} h₀^L_l`
/// with `h₀ = h(−1,0)`, stored `[L,k,i,J]`.
pub fn reduced_plus_plus(rs: &RootSystem) -> Result<DenseTensor> {
    let n = rs.n();
    let m1 = rs.mi() + 1;
    let r = r_hat(-ONE, rs)?;
    let h = h_mat(-ONE, 0, rs);
    Ok(DenseTensor::from_fn(n, 2, 2, |x| {
        let (ll, k, i, jj) = (x[0], x[1], x[2], x[3]);
        let mut s = ZERO;
        for j in 0..n {
            for l in 0..n {
                s += h.get(&[j, jj]) * r.get(&[l, k, i, j]) * h.get(&[ll, l]);
            }
        }
        s * rs.zeta(m1 * (i as i64 - jj as i64 + ll as i64 - k as i64))
    }))
}

/// The explicit form of `B_N(−)^{-1}`, stored `[l,k,i,j]`.
pub fn inverse_braiding_explicit(rs: &RootSystem) -> Result<DenseTensor> {
    let n = rs.n();
    let m1 = rs.mi() + 1;
    let zi = ONE / rs.zeta(1);
    let mut t = DenseTensor::zeros(n, 2, 2);
    for l in 0..n as i64 {
        for k in 0..n as i64 {
            for i in 0..n as i64 {
                for j in 0..n as i64 {
                    let v = rs.zeta(m1 * (i + l - k - j) + (l - j) * (i - k))
                        * omega(-zi, j - k, rs)?
                        * omega(-zi, l - i, rs)?
                        / (omega(-ONE, j - i - 1, rs)? * omega(-ONE, l - k, rs)?);
                    t.set(&[l as usize, k as usize, i as usize, j as usize], v / n as f64);
                }
            }
        }
    }
    Ok(t)
}

/// `P·T·P` on a `(2,2)` tensor, as an index swap.
pub fn flip_pairs(t: &DenseTensor) -> Result<DenseTensor> {
    relabel(t, "a b c d", "b a d c", 2)
}

/// Comparison of `R_{K,N}(−)` with the phase-twisted `P·R_N(+,±)·P`.
#[derive(Debug, Clone, Copy)]
pub struct BridgeReport {
    pub plus_plus: TensorComparison,
    pub plus_minus: TensorComparison,
    /// Both tensors vanish at the same entries.
    pub supports_match: bool,
}

/// `ζ^{1+(m+1)(l+k−i−j)}` stored `[l,k,i,j]`.
pub fn bridge_phase(rs: &RootSystem) -> DenseTensor {
    let m1 = rs.mi() + 1;
    DenseTensor::from_fn(rs.n(), 2, 2, |x| {
        let (l, k, i, j) = (x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
        rs.zeta(1 + m1 * (l + k - i - j))
    })
}

fn hadamard(a: &DenseTensor, b: &DenseTensor) -> DenseTensor {
    a.map(|idx, v| v * b.get(idx))
}

pub fn qh_kashaev_bridge(rs: &RootSystem, tol: f64) -> Result<BridgeReport> {
    let k = kashaev_r(-1, rs).tensor;
    let ph = bridge_phase(rs);
    let pp = hadamard(&ph, &flip_pairs(&mixed_crossing(1, 1, rs)?)?);
    let pm = hadamard(&ph, &flip_pairs(&mixed_crossing(1, -1, rs)?)?);
    let scale = k.max_abs();
    let supports_match =
        k.data().iter().zip(pp.data()).all(|(a, b)| (a.norm() > 1e-9 * scale) == (b.norm() > 1e-9 * pp.max_abs()));
    Ok(BridgeReport {
        plus_plus: global_eq_mod_n(&k, &pp, rs, tol)?,
        plus_minus: global_eq_mod_n(&k, &pm, rs, tol)?,
        supports_match,
    })
}

/// `R_{K,N}(−) = ζ^{1+l−j} · r̂(1)` entrywise; returns the residual.
pub fn r_hat_entry_residual(rs: &RootSystem) -> f64 {
    let k = kashaev_r(-1, rs).tensor;
    let r1 = r_hat_one(rs);
    let want = r1.map(|x, v| v * rs.zeta(1 + x[0] as i64 - x[3] as i64));
    k.max_abs_diff(&want).unwrap_or(f64::INFINITY)
}

/// `B_N(−)^{-1}` against the explicit form, after the flip that puts it in
/// `[l,k,i,j]` order. The explicit form is twice the regularized one.
pub fn inverse_braiding_comparison(rs: &RootSystem, tol: f64) -> Result<TensorComparison> {
    let bi = flip_pairs(&restricted_braiding(-1, rs)?.inverse()?)?;
    global_eq_mod_n(&bi, &inverse_braiding_explicit(rs)?.scale(C64::new(0.5, 0.0)), rs, tol)
}

/// `W_{C,N} =_N (−1)^m h(−1, m+1)`.
pub fn wall_vs_h(rs: &RootSystem, tol: f64) -> Result<TensorComparison> {
    let w = wall_restricted(WallKind::C, rs)?;
    let sign = if rs.m().is_multiple_of(2) { ONE } else { -ONE };
    global_eq_mod_n(&w, &h_mat(-ONE, rs.mi() + 1, rs).scale(sign), rs, tol)
}

/// The four characterisations of the non-zero entries `(i,j) → (l,k)` of
/// `R_{K,N}(−)`.
pub mod convstates {
    use crate::specfun::residue;

    fn r(k: i64, n: usize) -> i64 {
        residue(k, n) as i64
    }

    /// Sum of the four residues equals `N − 1`.
    pub fn by_residue_sum(i: i64, j: i64, k: i64, l: i64, n: usize) -> bool {
        r(j - i - 1, n) + r(l - k, n) + r(i - l, n) + r(k - j, n) == n as i64 - 1
    }

    /// Both pair sums stay below `N`.
    pub fn by_pair_bounds(i: i64, j: i64, k: i64, l: i64, n: usize) -> bool {
        let bound = n as i64;
        r(j - i - 1, n) + r(l - k, n) < bound && r(i - l, n) + r(k - j, n) < bound
    }

    /// One of the four chains of inequalities.
    pub fn by_order(i: i64, j: i64, k: i64, l: i64) -> bool {
        (l <= i && i < j && j <= k)
            || (i < j && j <= k && k <= l)
            || (j <= k && k <= l && l <= i)
            || (k <= l && l <= i && i < j)
    }

    /// `ζ^i, ζ^j, ζ^k, ζ^l` go once around the circle in the positive sense
    /// with `i ≠ j`, or all four coincide.
    pub fn by_cyclic_order(i: i64, j: i64, k: i64, l: i64, n: usize) -> bool {
        if i == j {
            return j == k && k == l;
        }
        r(j - i, n) + r(k - j, n) + r(l - k, n) + r(i - l, n) == n as i64
    }
}

/// `Σ_k g₁(k)g₂(k)` and `N^{-1} Σ_n ĝ₁(n)ĝ₂(−n)` with `ĝ(n) = Σ_k ζ^{nk} g(k)`.
pub fn poisson_sides(g1: &[C64], g2: &[C64], rs: &RootSystem) -> (C64, C64) {
    let n = rs.n();
    let hat = |g: &[C64], p: i64| -> C64 { (0..n).map(|k| rs.zeta(p * k as i64) * g[k]).sum() };
    let lhs = g1.iter().zip(g2).map(|(a, b)| a * b).sum();
    let rhs: C64 = (0..n as i64).map(|p| hat(g1, p) * hat(g2, -p)).sum();
    (lhs, rhs / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_entry() {
        let rs = RootSystem::new(3).unwrap();
        let k = kashaev_r(-1, &rs).tensor;
        assert!((k.get(&[0, 0, 0, 1]) - ONE).norm() < 1e-14);
    }

    #[test]
    fn inverse_pair() {
        for n in [3usize, 5, 7] {
            let rs = RootSystem::new(n).unwrap();
            let p = compose(&kashaev_r(-1, &rs).tensor, &kashaev_r_inverse(&rs)).unwrap();
            assert!(p.max_abs_diff(&DenseTensor::identity(n, 2)).unwrap() < 1e-10);
        }
    }

    #[test]
    fn r_hat_entries_exact() {
        for n in [3usize, 5, 7] {
            assert!(r_hat_entry_residual(&RootSystem::new(n).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn h_trivial_diagonal() {
        let rs = RootSystem::new(5).unwrap();
        let h = h_mat(ONE, 2, &rs);
        for k in 0..5 {
            assert!((h.get(&[k, k]) - ONE).norm() < 1e-14);
        }
    }
}
