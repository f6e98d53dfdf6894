use super::decoration::{nth_root_moduli, Decoration};
use crate::error::Result;
use crate::specfun::{bracket, g_fun, h_fun, omega2, RootSystem, C64};
use crate::tensor::{dft_conjugate, DenseTensor};

const ZERO: C64 = C64::new(0.0, 0.0);

/// `ω(u,v|n)` tabulated for `|n| ≤ span`.
pub(crate) struct Omega2Table {
    span: i64,
    vals: Vec<C64>,
}

impl Omega2Table {
    pub(crate) fn new(u: C64, v: C64, span: i64, rs: &RootSystem) -> Result<Self> {
        let vals = (-span..=span).map(|n| omega2(u, v, n, rs)).collect::<Result<_>>()?;
        Ok(Self { span, vals })
    }

    pub(crate) fn at(&self, n: i64) -> C64 {
        self.vals[(n + self.span) as usize]
    }
}

fn sq(k: usize) -> i64 {
    (k * k) as i64
}

/// `𝓛_N(u,v)` or its inverse, stored upper indices first.
///
/// `𝓛^{i,j}_{k,l} = h(u) ζ^{kj+(m+1)k²} ω(u,v|i-k) δ(i+j-l)` and
/// `(𝓛^{-1})^{k,l}_{i,j} = [u]/h(u) ζ^{-kj-(m+1)k²} δ(i+j-l) / ω(u/ζ,v|i-k)`.
pub fn matrix_dilog_l(u: C64, v: C64, rs: &RootSystem, inverse: bool) -> Result<DenseTensor> {
    let n = rs.n();
    let m1 = rs.mi() + 1;
    let span = n as i64;
    let hu = h_fun(u, rs)?;
    if !inverse {
        let om = Omega2Table::new(u, v, span, rs)?;
        Ok(DenseTensor::from_fn(n, 2, 2, |x| {
            let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
            if (i + j) % n != l {
                return ZERO;
            }
            hu * rs.zeta((k * j) as i64 + m1 * sq(k)) * om.at(i as i64 - k as i64)
        }))
    } else {
        let om = Omega2Table::new(u / rs.zeta(1), v, span, rs)?;
        let pre = bracket(u, rs) / hu;
        Ok(DenseTensor::from_fn(n, 2, 2, |x| {
            let (k, l, i, j) = (x[0], x[1], x[2], x[3]);
            if (i + j) % n != l {
                return ZERO;
            }
            pre * rs.zeta(-((k * j) as i64) - m1 * sq(k)) / om.at(i as i64 - k as i64)
        }))
    }
}

/// `((w'_0)^{-c_1}(w'_1)^{c_0})^m`.
fn charge_prefactor(w0: C64, w1: C64, e0: i64, e1: i64, rs: &RootSystem) -> C64 {
    (w0.powi(e0 as i32) * w1.powi(e1 as i32)).powi(rs.mi() as i32)
}

/// `𝓡_N(*_b, d) = ((w'_0)^{-c_1}(w'_1)^{c_0})^m · 𝓛_N^{*_b}(w'_0, 1/w'_1)`.
pub fn matrix_dilog_r(d: &Decoration, rs: &RootSystem) -> Result<DenseTensor> {
    let w = nth_root_moduli(d, rs)?;
    let pre = charge_prefactor(w.w0p, w.w1p, -d.c[1], d.c[0], rs);
    let l = matrix_dilog_l(w.w0p, C64::new(1.0, 0.0) / w.w1p, rs, d.b_sign < 0)?;
    Ok(l.scale(pre))
}

/// The Fourier transform of [`matrix_dilog_r`] computed by conjugation.
pub fn tilde_r_numeric(d: &Decoration, rs: &RootSystem) -> Result<DenseTensor> {
    dft_conjugate(&matrix_dilog_r(d, rs)?, rs, true)
}

/// Closed form of the Fourier-transformed matrix dilogarithm.
pub fn tilde_r(d: &Decoration, rs: &RootSystem) -> Result<DenseTensor> {
    let n = rs.n();
    let m1 = rs.mi() + 1;
    let w = nth_root_moduli(d, rs)?;
    let (w0, w1) = (w.w0p, w.w1p);
    let inv_w1 = C64::new(1.0, 0.0) / w1;
    let span = n as i64;
    if d.b_sign > 0 {
        let pre = charge_prefactor(w0, w1, -d.c[1] + 2, d.c[0], rs) / (n as f64 * g_fun(inv_w1 / rs.zeta(1), rs)?);
        let om = Omega2Table::new(inv_w1 / rs.zeta(1), w0, span, rs)?;
        Ok(DenseTensor::from_fn(n, 2, 2, |x| {
            let (i, j, k, l) = (x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
            pre * rs.zeta((k - i) * (j - l) + m1 * (j * j - l * l)) / om.at(l - i)
        }))
    } else {
        let pre =
            g_fun(inv_w1 / rs.zeta(1), rs)? * bracket(inv_w1, rs) * charge_prefactor(w0, w1, -d.c[1] - 2, d.c[0], rs);
        let om = Omega2Table::new(inv_w1, w0, span, rs)?;
        Ok(DenseTensor::from_fn(n, 2, 2, |x| {
            let (k, l, i, j) = (x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
            pre * rs.zeta((i - k) * (j - l) + m1 * (l * l - j * j)) * om.at(l - i)
        }))
    }
}

/// Closed form of the Fourier transform of `𝓛_N^{-1}(w'_0, 1/w'_1)`.
pub fn tilde_l_inverse(w0: C64, w1: C64, rs: &RootSystem) -> Result<DenseTensor> {
    let n = rs.n();
    let m1 = rs.mi() + 1;
    let inv_w1 = C64::new(1.0, 0.0) / w1;
    let pre = g_fun(inv_w1 / rs.zeta(1), rs)? * bracket(inv_w1, rs) / w0.powi(n as i32 - 1);
    let om = Omega2Table::new(inv_w1, w0, n as i64, rs)?;
    Ok(DenseTensor::from_fn(n, 2, 2, |x| {
        let (i, j, k, l) = (x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
        pre * rs.zeta((k - i) * (l - j) + m1 * (j * j - l * l)) * om.at(j - k)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qh_core::decoration::crossing_decorations;
    use crate::tensor::{compose, global_eq_mod_n};

    #[test]
    fn origin_entry_and_support() {
        let rs = RootSystem::new(5).unwrap();
        let (u, v) = (C64::new(0.3, 0.4), C64::new(0.8, -0.1));
        let l = matrix_dilog_l(u, v, &rs, false).unwrap();
        assert!((l.get(&[0, 0, 0, 0]) - h_fun(u, &rs).unwrap()).norm() < 1e-14);
        assert_eq!(l.get(&[1, 2, 0, 4]), ZERO);
        assert_eq!(l.get(&[4, 3, 2, 1]), ZERO);
    }

    #[test]
    fn l_times_inverse() {
        for n in [3usize, 5, 7] {
            let rs = RootSystem::new(n).unwrap();
            for d in crossing_decorations(-1) {
                let w = nth_root_moduli(&d, &rs).unwrap();
                let v = C64::new(1.0, 0.0) / w.w1p;
                let l = matrix_dilog_l(w.w0p, v, &rs, false).unwrap();
                let li = matrix_dilog_l(w.w0p, v, &rs, true).unwrap();
                let e = compose(&l, &li).unwrap().max_abs_diff(&DenseTensor::identity(n, 2)).unwrap();
                assert!(e < 1e-10, "N={n}: {e}");
            }
        }
    }

    #[test]
    fn sign_flip_inverts() {
        let rs = RootSystem::new(5).unwrap();
        let d = Decoration::universal([0, 0, 1], 1);
        let dm = Decoration { b_sign: -1, ..d };
        // with c = (0,0,1) the prefactor is 1 for both signs
        let r = matrix_dilog_r(&d, &rs).unwrap();
        let w = nth_root_moduli(&d, &rs).unwrap();
        let l = matrix_dilog_l(w.w0p, C64::new(1.0, 0.0) / w.w1p, &rs, false).unwrap();
        assert!(r.max_abs_diff(&l).unwrap() < 1e-15);
        let wm = nth_root_moduli(&dm, &rs).unwrap();
        let rm = matrix_dilog_r(&dm, &rs).unwrap();
        let lm = matrix_dilog_l(wm.w0p, C64::new(1.0, 0.0) / wm.w1p, &rs, false).unwrap();
        assert!(compose(&rm, &lm).unwrap().max_abs_diff(&DenseTensor::identity(5, 2)).unwrap() < 1e-10);
    }

    #[test]
    fn fourier_closed_forms() {
        for n in [3usize, 5] {
            let rs = RootSystem::new(n).unwrap();
            for s in [1i8, -1] {
                for d in crossing_decorations(s) {
                    let c = global_eq_mod_n(&tilde_r_numeric(&d, &rs).unwrap(), &tilde_r(&d, &rs).unwrap(), &rs, 1e-9)
                        .unwrap();
                    assert!(c.equal, "N={n} {:?}: {}", d.c, c.residual);
                }
            }
        }
    }
}
