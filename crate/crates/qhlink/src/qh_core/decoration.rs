use crate::error::{Error, Result};
use crate::specfun::{std_log, RootSystem, C64};
use std::f64::consts::PI;

/// One decorated tetrahedron: cross-ratio moduli, flattening, charge and
/// branching sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decoration {
    pub w: [C64; 3],
    pub f: [i64; 3],
    pub c: [i64; 3],
    pub b_sign: i8,
}

/// The `N`-th root moduli `w'_j` of a decoration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NthRootModuli {
    pub w0p: C64,
    pub w1p: C64,
    pub w2p: C64,
}

/// The universal constant system `w = (2, -1, 1/2)`, `f = (0, -1, 0)`.
pub const UNIVERSAL_W: [f64; 3] = [2.0, -1.0, 0.5];
pub const UNIVERSAL_F: [i64; 3] = [0, -1, 0];

impl Decoration {
    pub fn universal(c: [i64; 3], b_sign: i8) -> Self {
        Self { w: UNIVERSAL_W.map(|x| C64::new(x, 0.0)), f: UNIVERSAL_F, c, b_sign }
    }

    /// Conditions (C1)-(C3): moduli relations, log-branch sum and charge sum.
    pub fn validate(&self) -> Result<()> {
        self.validate_moduli()?;
        if self.c.iter().sum::<i64>() != 1 {
            return Err(Error::Invalid(format!("charge {:?} does not sum to 1", self.c)));
        }
        Ok(())
    }

    /// Everything except the charge sum.
    pub fn validate_moduli(&self) -> Result<()> {
        let one = C64::new(1.0, 0.0);
        for j in 0..3 {
            let next = one / (one - self.w[j]);
            if (next - self.w[(j + 1) % 3]).norm() > 1e-12 * next.norm().max(1.0) {
                return Err(Error::Invalid(format!("moduli break w_(j+1) = 1/(1 - w_j) at j = {j}")));
            }
        }
        if (self.w[0] * self.w[1] * self.w[2] + one).norm() > 1e-12 {
            return Err(Error::Invalid("moduli product is not -1".into()));
        }
        let mut l = C64::new(0.0, 0.0);
        for j in 0..3 {
            l += std_log(self.w[j])? + C64::new(0.0, PI * self.f[j] as f64);
        }
        if l.norm() > 1e-12 {
            return Err(Error::Invalid(format!("log-branches do not sum to zero ({l})")));
        }
        if self.b_sign != 1 && self.b_sign != -1 {
            return Err(Error::Invalid("branching sign must be ±1".into()));
        }
        Ok(())
    }
}

/// `w'_j = exp((log w_j + πi(N+1)(f_j - *_b c_j))/N)`.
///
/// The charge sum is not checked here: the third charge only enters `w'_2`,
/// which no tensor uses.
pub fn nth_root_moduli(d: &Decoration, rs: &RootSystem) -> Result<NthRootModuli> {
    d.validate_moduli()?;
    let n = rs.n() as f64;
    let mut w = [C64::new(0.0, 0.0); 3];
    for (j, wj) in w.iter_mut().enumerate() {
        let shift = PI * (n + 1.0) * (d.f[j] - i64::from(d.b_sign) * d.c[j]) as f64;
        *wj = ((std_log(d.w[j])? + C64::new(0.0, shift)) / n).exp();
    }
    Ok(NthRootModuli { w0p: w[0], w1p: w[1], w2p: w[2] })
}

/// Decorations of the four tetrahedra of the crossing octahedron under the
/// favourite Yang-Baxter charge, negative crossing. Tetrahedra 1 and 3 carry
/// negative branching, 2 and 4 positive.
pub fn crossing_decorations(sign: i8) -> [Decoration; 4] {
    if sign < 0 {
        [
            Decoration::universal([1, 0, 0], -1),
            Decoration::universal([0, 0, 1], 1),
            Decoration::universal([1, 0, 0], -1),
            Decoration::universal([-2, 2, 1], 1),
        ]
    } else {
        [
            Decoration::universal([1, 0, 0], -1),
            Decoration::universal([0, 0, 1], 1),
            Decoration::universal([-1, 2, 0], -1),
            Decoration::universal([0, 0, 1], 1),
        ]
    }
}

/// Charges of the two wall tetrahedra, `c⁺ = (P, F, ·)` and `c⁻ = (M, G, ·)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WallSpec {
    pub p: i64,
    pub f: i64,
    pub m: i64,
    pub g: i64,
}

impl WallSpec {
    pub const C: WallSpec = WallSpec { p: 0, f: 0, m: 1, g: 0 };
    pub const M: WallSpec = WallSpec { p: 0, f: -1, m: 1, g: 1 };

    /// The two decorations, completing each charge so it sums to 1.
    pub fn decorations(&self) -> (Decoration, Decoration) {
        self.decorations_with(1 - self.p - self.f, 1 - self.m - self.g)
    }

    /// Same with explicit third charge components; only the first two enter
    /// the dilogarithms.
    pub fn decorations_with(&self, h: i64, k: i64) -> (Decoration, Decoration) {
        (
            Decoration { c: [self.p, self.f, h], ..Decoration::universal([0, 0, 1], 1) },
            Decoration { c: [self.m, self.g, k], ..Decoration::universal([0, 0, 1], -1) },
        )
    }
}

/// A solution of the Yang-Baxter charge relations, from its six free
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YangBaxterCharge {
    pub u1: i64,
    pub u2: i64,
    pub b1: i64,
    pub p: i64,
    pub p1: i64,
    pub p2: i64,
    pub r1: i64,
    pub s1: i64,
    pub v1: i64,
    pub a1: i64,
    pub c1: i64,
    pub e1: i64,
    pub r2: i64,
    pub s2: i64,
    pub v2: i64,
    pub a2: i64,
    pub b2: i64,
    pub c2: i64,
    pub e2: i64,
    pub f: i64,
    pub m: i64,
    pub g: i64,
    pub f1: i64,
    pub m1: i64,
    pub g1: i64,
    pub f2: i64,
    pub m2: i64,
    pub g2: i64,
}

pub fn yb_charge(u1: i64, u2: i64, b1: i64, p: i64, p1: i64, p2: i64) -> YangBaxterCharge {
    let e1 = 2 - b1;
    let s2 = -1 - u2 + b1;
    YangBaxterCharge {
        u1,
        u2,
        b1,
        p,
        p1,
        p2,
        r1: u1,
        s1: 1 - b1 - u1,
        v1: b1 - u1 - 1,
        a1: 0,
        c1: 0,
        e1,
        r2: 2 + u2 - 2 * b1,
        s2,
        v2: s2,
        a2: b1,
        b2: 0,
        c2: e1,
        e2: 0,
        f: 0,
        m: 1 - p,
        g: 0,
        f1: -1,
        m1: 1 - p1,
        g1: 1,
        f2: -1,
        m2: 1 - p2,
        g2: 1,
    }
}

/// The favourite charge `c₀`.
pub fn c0() -> YangBaxterCharge {
    yb_charge(0, 0, 2, 0, 0, 0)
}
