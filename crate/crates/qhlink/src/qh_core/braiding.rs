//! Braiding tensors of the crossing octahedron.

use super::decoration::{nth_root_moduli, Decoration, NthRootModuli};
use super::dilog::{tilde_r_numeric, Omega2Table};
use crate::error::{Error, Result};
use crate::specfun::{bracket, g_fun, RootSystem, C64};
use crate::tensor::{embed_right, flip, partial_transpose, relabel, DenseTensor};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Axis labels of the octahedron state tensor.
pub const STATE_LABELS: &str = "i1 i2 j1 j2 k1 k2 l1 l2";
/// Storage order of `Br_N(-)`.
pub const NEG_LABELS: &str = "j1 j2 i1 i2 k1 k2 l1 l2";
/// Storage order of `Br_N(+)`.
pub const POS_LABELS: &str = "i1 i2 l2 l1 j2 j1 k1 k2";
/// Storage order of `Br_N(-)^{-1}`.
const NEG_INV_LABELS: &str = "k1 k2 l1 l2 j1 j2 i1 i2";

fn layout(sign: i8) -> &'static str {
    if sign < 0 {
        NEG_LABELS
    } else {
        POS_LABELS
    }
}

/// Checks the decorations of a crossing: each valid and `Σ c_1 = 2`.
pub fn check_crossing_charge(decs: &[Decoration; 4]) -> Result<()> {
    for d in decs {
        d.validate()?;
    }
    let s: i64 = decs.iter().map(|d| d.c[1]).sum();
    if s != 2 {
        return Err(Error::Invalid(format!("second charges sum to {s}, expected 2")));
    }
    Ok(())
}

/// The four factors of the braiding as `(tensor, p, q)` acting on 0-based
/// factors `p, q`, in the order they multiply from the left.
pub fn braiding_factors(decs: &[Decoration; 4], rs: &RootSystem) -> Result<Vec<(DenseTensor, usize, usize)>> {
    check_crossing_charge(decs)?;
    let t = decs.iter().map(|d| tilde_r_numeric(d, rs)).collect::<Result<Vec<_>>>()?;
    // (tetrahedron, factor pair, transposed slots)
    let specs: [(usize, (usize, usize), &[usize]); 4] =
        [(1, (1, 2), &[1]), (2, (0, 1), &[]), (0, (2, 3), &[0, 1]), (3, (1, 2), &[0])];
    let p = flip(rs.n());
    let mut out = Vec::with_capacity(8);
    for (tet, (a, b), slots) in specs {
        let mut x = t[tet].clone();
        for &s in slots {
            x = partial_transpose(&x, s + 1)?;
        }
        out.push((p.clone(), a, b));
        out.push((x, a, b));
    }
    Ok(out)
}

/// `M` times the braiding, without forming the braiding itself.
pub fn apply_braiding_right(m: &DenseTensor, factors: &[(DenseTensor, usize, usize)]) -> Result<DenseTensor> {
    factors.iter().try_fold(m.clone(), |acc, (t, p, q)| embed_right(&acc, t, *p, *q))
}

/// `Br_N(sign)` built from partially transposed Fourier-transformed matrix
/// dilogarithms. The positive braiding is the rearranged state tensor of
/// the positive octahedron.
pub fn braiding(sign: i8, decs: &[Decoration; 4], rs: &RootSystem) -> Result<DenseTensor> {
    let f = braiding_factors(decs, rs)?;
    let neg = apply_braiding_right(&DenseTensor::identity(rs.n(), 4), &f)?;
    if sign < 0 {
        Ok(neg)
    } else {
        relabel(&neg, NEG_LABELS, POS_LABELS, 4)
    }
}

/// The octahedron state tensor, axes in [`STATE_LABELS`] order.
pub fn octahedron_state(decs: &[Decoration; 4], rs: &RootSystem) -> Result<DenseTensor> {
    let neg = braiding(-1, decs, rs)?;
    relabel(&neg, NEG_LABELS, STATE_LABELS, 4)
}

/// Converts an octahedron state into the braiding of the given sign.
pub fn state_to_braiding(state: &DenseTensor, sign: i8) -> Result<DenseTensor> {
    relabel(state, STATE_LABELS, layout(sign), 4)
}

/// Inverse of [`state_to_braiding`].
pub fn braiding_to_state(br: &DenseTensor, sign: i8) -> Result<DenseTensor> {
    relabel(br, layout(sign), STATE_LABELS, 4)
}

struct Moduli {
    w: [NthRootModuli; 4],
    c: [[i64; 3]; 4],
}

impl Moduli {
    fn new(decs: &[Decoration; 4], rs: &RootSystem) -> Result<Self> {
        check_crossing_charge(decs)?;
        let mut w = [NthRootModuli { w0p: ONE, w1p: ONE, w2p: ONE }; 4];
        for (t, d) in decs.iter().enumerate() {
            w[t] = nth_root_moduli(d, rs)?;
        }
        Ok(Self { w, c: decs.map(|d| d.c) })
    }

    fn w0(&self, t: usize) -> C64 {
        self.w[t].w0p
    }

    fn inv_w1(&self, t: usize) -> C64 {
        ONE / self.w[t].w1p
    }
}

/// `K_𝒪`: the scalar in front of the braiding entries.
pub fn k_o(decs: &[Decoration; 4], rs: &RootSystem) -> Result<C64> {
    let md = Moduli::new(decs, rs)?;
    k_o_of(&md, rs)
}

fn k_o_of(md: &Moduli, rs: &RootSystem) -> Result<C64> {
    let z = rs.zeta(1);
    let mut pref = ONE;
    for (t, e) in [(0usize, -2i64), (2, -2), (1, 2), (3, 2)] {
        pref *= md.w0(t).powi((-md.c[t][1] + e) as i32) * md.w[t].w1p.powi(md.c[t][0] as i32);
    }
    let g = |t: usize| g_fun(md.inv_w1(t) / z, rs);
    Ok(rs.n() as f64 * bracket(md.inv_w1(0), rs) * bracket(md.inv_w1(2), rs) * g(0)? * g(2)? / (g(1)? * g(3)?)
        * pref.powi(rs.mi() as i32))
}

/// `K̄_𝒪`: the scalar in front of the inverse braiding entries.
pub fn k_o_bar(decs: &[Decoration; 4], rs: &RootSystem) -> Result<C64> {
    let md = Moduli::new(decs, rs)?;
    k_o_bar_of(&md, rs)
}

fn k_o_bar_of(md: &Moduli, rs: &RootSystem) -> Result<C64> {
    let n = rs.n();
    Ok(n as f64 / k_o_of(md, rs)?
        * bracket(md.inv_w1(0), rs)
        * bracket(md.inv_w1(1), rs)
        * bracket(md.inv_w1(2), rs)
        * md.w0(1).powi(1 - n as i32))
}

fn label_slots(labels: &str) -> [usize; 8] {
    let mut slots = [0; 8];
    for (axis, l) in labels.split_whitespace().enumerate() {
        let pos = STATE_LABELS.split_whitespace().position(|s| s == l).expect("known label");
        slots[pos] = axis;
    }
    slots
}

/// Closed-form entries of `Br_N(sign)`.
pub fn braiding_closed_form(sign: i8, decs: &[Decoration; 4], rs: &RootSystem) -> Result<DenseTensor> {
    let md = Moduli::new(decs, rs)?;
    let n = rs.n();
    let span = n as i64 + 1;
    let z = rs.zeta(1);
    let ko = k_o_of(&md, rs)?;
    let a = Omega2Table::new(md.inv_w1(0), md.w0(0), span, rs)?;
    let b = Omega2Table::new(md.inv_w1(2), md.w0(2), span, rs)?;
    let c = Omega2Table::new(md.inv_w1(1) / z, md.w0(1), span, rs)?;
    let d = Omega2Table::new(md.inv_w1(3) / z, md.w0(3), span, rs)?;
    let s = label_slots(layout(sign));
    Ok(DenseTensor::from_fn(n, 4, 4, |x| {
        let v = |k: usize| x[s[k]] as i64;
        let (i1, i2, j1, j2, k1, k2, l1, l2) = (v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7));
        if (i1 - i2 - k1 + k2).rem_euclid(n as i64) != 0 || (l1 - l2 - j1 + j2).rem_euclid(n as i64) != 0 {
            return ZERO;
        }
        let l12 = l1 - l2;
        ko * rs.zeta((l1 - j1) * (k1 - i1 - l12)) * a.at(l2 - i2) * b.at(j1 - k1) / (c.at(j2 - i1) * d.at(l1 - k2))
    }))
}

/// Closed-form entries of `Br_N(-)^{-1}`.
pub fn braiding_inverse_closed_form(decs: &[Decoration; 4], rs: &RootSystem) -> Result<DenseTensor> {
    let md = Moduli::new(decs, rs)?;
    let n = rs.n();
    let span = n as i64 + 1;
    let z = rs.zeta(1);
    let kb = k_o_bar_of(&md, rs)?;
    let a = Omega2Table::new(md.inv_w1(1), md.w0(1), span, rs)?;
    let b = Omega2Table::new(md.inv_w1(3) / z, md.w0(3), span, rs)?;
    let c = Omega2Table::new(md.inv_w1(0) / z, md.w0(0), span, rs)?;
    let d = Omega2Table::new(md.inv_w1(2) / z, md.w0(2), span, rs)?;
    let s = label_slots(NEG_INV_LABELS);
    Ok(DenseTensor::from_fn(n, 4, 4, |x| {
        let v = |k: usize| x[s[k]] as i64;
        let (i1, i2, j1, j2, k1, k2, l1, l2) = (v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7));
        if (i1 - i2 - k1 + k2).rem_euclid(n as i64) != 0 || (l1 - l2 - j1 + j2).rem_euclid(n as i64) != 0 {
            return ZERO;
        }
        kb * rs.zeta((l1 - j1) * (i1 - k1 + l1 - l2)) * a.at(j2 - i1 - 1) * b.at(l1 - k2)
            / (c.at(l2 - i2) * d.at(j1 - k1))
    }))
}

/// The octahedron state restricted to `i1=i2=I, …, l1=l2=L`, axes `[I,J,K,L]`.
///
/// Contracted directly so that only `N^7` work is needed.
pub fn diagonal_state(decs: &[Decoration; 4], rs: &RootSystem) -> Result<DenseTensor> {
    check_crossing_charge(decs)?;
    let n = rs.n();
    let t = decs.iter().map(|d| tilde_r_numeric(d, rs)).collect::<Result<Vec<_>>>()?;
    // A[d,L,I,b,J] = Σ_a t1[d,L,I,a] t2[I,a,b,J]
    let a = DenseTensor::from_fn(n, 5, 0, |x| {
        let (d, l, i, b, j) = (x[0], x[1], x[2], x[3], x[4]);
        (0..n).map(|al| t[0].get(&[d, l, i, al]) * t[1].get(&[i, al, b, j])).sum()
    });
    // B[b,J,K,d,L] = Σ_g t3[b,J,K,g] t4[K,g,d,L]
    let b = DenseTensor::from_fn(n, 5, 0, |x| {
        let (bb, j, k, d, l) = (x[0], x[1], x[2], x[3], x[4]);
        (0..n).map(|g| t[2].get(&[bb, j, k, g]) * t[3].get(&[k, g, d, l])).sum()
    });
    Ok(DenseTensor::from_fn(n, 2, 2, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let mut s = ZERO;
        for bb in 0..n {
            for d in 0..n {
                s += a.get(&[d, l, i, bb, j]) * b.get(&[bb, j, k, d, l]);
            }
        }
        s
    }))
}
