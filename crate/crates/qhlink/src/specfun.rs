//! Cyclotomic special functions at a fixed odd root of unity.
//!
//! Everything here is evaluated in double precision. Powers of the root of
//! unity are read from a table built from exact angles, so `zeta(k)` never
//! accumulates phase drift.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub type C64 = Complex64;

/// The odd integer `N = 2m + 1` together with `ζ = exp(2πi/N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    n: usize,
    m: usize,
    powers: Vec<C64>,
}

impl RootSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::Invalid(format!("N must be odd and at least 3, got {n}")));
        }
        let powers = (0..n).map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect();
        Ok(Self { n, m: (n - 1) / 2, powers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn zeta_powers(&self) -> &[C64] {
        &self.powers
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta(&self, k: i64) -> C64 {
        self.powers[residue(k, self.n)]
    }

    pub fn residue(&self, k: i64) -> usize {
        residue(k, self.n)
    }

    pub fn ni(&self) -> i64 {
        self.n as i64
    }

    pub fn mi(&self) -> i64 {
        self.m as i64
    }
}

/// `[n]_N`, the representative of `n` in `0..N`.
pub fn residue(n: i64, modulus: usize) -> usize {
    n.rem_euclid(modulus as i64) as usize
}

/// Principal logarithm with imaginary part in `(-π, π]`.
pub fn std_log(x: C64) -> Result<C64> {
    if x == C64::new(0.0, 0.0) {
        return Err(Error::Singular("log of zero".into()));
    }
    let mut l = x.ln();
    // ln() can return -π for inputs just below the negative real axis with a
    // negative-zero imaginary part; the branch here is (-π, π].
    if l.im <= -PI {
        l.im += 2.0 * PI;
    }
    Ok(l)
}

/// `x^{1/N} = exp(log(x)/N)`, with `0^{1/N} = 0`.
pub fn nth_root(x: C64, n: usize) -> C64 {
    match std_log(x) {
        Ok(l) => (l / n as f64).exp(),
        Err(_) => C64::new(0.0, 0.0),
    }
}

/// `ω(u|n)`: the recurrence `ω(u|n+1) = ω(u|n)(1 - uζ^{n+1})` from `ω(u|0) = 1`,
/// run backwards for negative `n`.
pub fn omega(u: C64, n: i64, rs: &RootSystem) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut v = one;
    if n >= 0 {
        for j in 1..=n {
            v *= one - u * rs.zeta(j);
        }
    } else {
        for j in (n + 1..=0).rev() {
            let d = one - u * rs.zeta(j);
            if d.norm() < 1e-12 {
                return Err(Error::Singular(format!("omega({u}, {n}) hits a zero factor")));
            }
            v /= d;
        }
    }
    Ok(v)
}

/// `ω(u,v|n) = v^n / ω(u|n)`.
pub fn omega2(u: C64, v: C64, n: i64, rs: &RootSystem) -> Result<C64> {
    let w = omega(u, n, rs)?;
    if w.norm() < 1e-300 {
        return Err(Error::Singular(format!("omega({u}, {n}) vanishes")));
    }
    Ok(v.powi(n as i32) / w)
}

/// `ω*(u|n) = ∏_{j=1}^{n} (1 - uζ^{-j})` for `0 ≤ n < N`.
pub fn omega_star(u: C64, n: usize, rs: &RootSystem) -> C64 {
    let one = C64::new(1.0, 0.0);
    (1..=n as i64).fold(one, |acc, j| acc * (one - u * rs.zeta(-j)))
}

/// `[x] = N^{-1}(1 - x^N)/(1 - x)`, continuous at `x = 1`.
pub fn bracket(x: C64, rs: &RootSystem) -> C64 {
    let n = rs.n();
    let one = C64::new(1.0, 0.0);
    if (x - one).norm() < 1e-7 {
        // geometric sum avoids the cancellation near the removable point
        let s: C64 = (0..n).map(|k| x.powi(k as i32)).sum();
        return s / n as f64;
    }
    (one - x.powi(n as i32)) / (one - x) / n as f64
}

/// `g(x) = ∏_{j=1}^{N-1} (1 - xζ^{-j})^{j/N}`, each factor rooted with [`nth_root`].
pub fn g_fun(x: C64, rs: &RootSystem) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut v = one;
    for j in 1..rs.n() as i64 {
        let f = one - x * rs.zeta(-j);
        if f.norm() < 1e-12 {
            return Err(Error::Singular(format!("g({x}) has a zero factor at j = {j}")));
        }
        v *= nth_root(f, rs.n()).powi(j as i32);
    }
    Ok(v)
}

pub fn h_fun(x: C64, rs: &RootSystem) -> Result<C64> {
    Ok(g_fun(x, rs)? / g_fun(C64::new(1.0, 0.0), rs)?)
}

/// `f(x,y|z) = Σ_{n=1}^{N} ∏_{j=1}^{n} (1 - yζ^j)/(1 - xζ^j) z^n`.
pub fn f_fun(x: C64, y: C64, z: C64, rs: &RootSystem) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut p = one;
    let mut zn = one;
    let mut s = C64::new(0.0, 0.0);
    for n in 1..=rs.n() as i64 {
        let d = one - x * rs.zeta(n);
        if d.norm() < 1e-12 {
            return Err(Error::Singular(format!("f: zero denominator at n = {n}")));
        }
        p *= (one - y * rs.zeta(n)) / d;
        zn *= z;
        s += p * zn;
    }
    Ok(s)
}

/// `(x)_n = (1 - x)(1 - xζ)...(1 - xζ^{[n]_N})`.
pub fn pochhammer(x: C64, n: i64, rs: &RootSystem) -> C64 {
    let one = C64::new(1.0, 0.0);
    (0..=rs.residue(n) as i64).fold(one, |acc, j| acc * (one - x * rs.zeta(j)))
}

/// The conjugate-root version `(x)*_n = (1 - x)(1 - xζ^{-1})...(1 - xζ^{-[n]_N})`.
pub fn pochhammer_star(x: C64, n: i64, rs: &RootSystem) -> C64 {
    let one = C64::new(1.0, 0.0);
    (0..=rs.residue(n) as i64).fold(one, |acc, j| acc * (one - x * rs.zeta(-j)))
}

/// 1 iff `0 ≤ n < N`.
pub fn theta(n: i64, modulus: i64) -> u8 {
    u8::from((0..modulus).contains(&n))
}

/// Outcome of comparing two scalars up to sign and `N`-th roots of unity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqModNWitness {
    pub sign: i8,
    pub power: usize,
    pub residual: f64,
    pub equal: bool,
}

impl EqModNWitness {
    /// The unit `sign·ζ^power` relating the two sides.
    pub fn unit(&self, rs: &RootSystem) -> C64 {
        rs.zeta(self.power as i64) * f64::from(self.sign)
    }
}

/// Searches the 2N candidates `sign·ζ^k` minimising `|a - sign·ζ^k·b|`.
pub fn eq_mod_n(a: C64, b: C64, rs: &RootSystem, tol: f64) -> EqModNWitness {
    let mut best = EqModNWitness { sign: 1, power: 0, residual: f64::INFINITY, equal: false };
    for sign in [1i8, -1] {
        for k in 0..rs.n() {
            let r = (a - rs.zeta(k as i64) * f64::from(sign) * b).norm();
            if r < best.residual {
                best = EqModNWitness { sign, power: k, residual: r, equal: false };
            }
        }
    }
    let scale = a.norm().max(b.norm()).max(1.0);
    best.equal = best.residual <= tol * scale;
    best
}
