//! Dense complex tensors whose indices all have the same extent `N`.
//!
//! Storage is row-major with the upper (output) indices first, so a tensor
//! with `up` upper and `down` lower indices is also an `N^up × N^down`
//! matrix. `compose(a, b)` is the matrix product `a·b`.

use crate::error::{Error, Result};
use crate::specfun::{eq_mod_n, EqModNWitness, RootSystem, C64};
use nalgebra::DMatrix;
use rayon::prelude::*;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    n: usize,
    up: usize,
    down: usize,
    data: Vec<C64>,
}

fn pow(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

impl DenseTensor {
    pub fn zeros(n: usize, up: usize, down: usize) -> Self {
        Self { n, up, down, data: vec![ZERO; pow(n, up + down)] }
    }

    pub fn from_vec(n: usize, up: usize, down: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != pow(n, up + down) {
            return Err(Error::Shape(format!("{} entries for extent {n} and arity ({up},{down})", data.len())));
        }
        Ok(Self { n, up, down, data })
    }

    /// Fills every entry from its multi-index (upper indices first).
    pub fn from_fn<F>(n: usize, up: usize, down: usize, f: F) -> Self
    where
        F: Fn(&[usize]) -> C64 + Sync,
    {
        let rank = up + down;
        let data = (0..pow(n, rank))
            .into_par_iter()
            .map_init(
                || vec![0usize; rank],
                |idx, flat| {
                    decode(flat, n, idx);
                    f(idx)
                },
            )
            .collect();
        Self { n, up, down, data }
    }

    pub fn identity(n: usize, k: usize) -> Self {
        let d = pow(n, k);
        let mut t = Self::zeros(n, k, k);
        for i in 0..d {
            t.data[i * d + i] = ONE;
        }
        t
    }

    /// A single-factor matrix `m[row][col]` as a (1,1) tensor.
    pub fn from_matrix(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("matrix must be square".into()));
        }
        Ok(Self { n, up: 1, down: 1, data: rows.concat() })
    }

    pub fn extent(&self) -> usize {
        self.n
    }
    pub fn up(&self) -> usize {
        self.up
    }
    pub fn down(&self) -> usize {
        self.down
    }
    pub fn rank(&self) -> usize {
        self.up + self.down
    }
    pub fn rows(&self) -> usize {
        pow(self.n, self.up)
    }
    pub fn cols(&self) -> usize {
        pow(self.n, self.down)
    }
    pub fn data(&self) -> &[C64] {
        &self.data
    }
    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: C64) {
        let k = self.flat_index(idx);
        self.data[k] = v;
    }

    pub fn is_endomorphism(&self) -> bool {
        self.up == self.down
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut t = self.clone();
        t.data.iter_mut().for_each(|x| *x *= s);
        t
    }

    pub fn map<F: Fn(&[usize], C64) -> C64 + Sync>(&self, f: F) -> Self {
        let rank = self.rank();
        let n = self.n;
        let data = self
            .data
            .par_iter()
            .enumerate()
            .map_init(
                || vec![0usize; rank],
                |idx, (flat, &v)| {
                    decode(flat, n, idx);
                    f(idx, v)
                },
            )
            .collect();
        Self { n, up: self.up, down: self.down, data }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { data, ..self.clone() })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.up != other.up || self.down != other.down {
            return Err(Error::Shape(format!(
                "({},{},{}) vs ({},{},{})",
                self.n, self.up, self.down, other.n, other.up, other.down
            )));
        }
        Ok(())
    }

    /// Reorders axes: axis `i` of the result is axis `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize], up: usize) -> Result<Self> {
        let rank = self.rank();
        let mut seen = vec![false; rank];
        if perm.len() != rank || up > rank || perm.iter().any(|&p| p >= rank || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Shape(format!("{perm:?} is not a permutation of {rank} axes")));
        }
        let strides: Vec<usize> = (0..rank).map(|a| pow(self.n, rank - 1 - a)).collect();
        let src = &self.data;
        Ok(Self::from_fn(self.n, up, rank - up, |idx| {
            let k: usize = idx.iter().zip(perm).map(|(&i, &p)| i * strides[p]).sum();
            src[k]
        }))
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows(), self.cols(), &self.data)
    }

    fn from_dmatrix(n: usize, up: usize, down: usize, m: &DMatrix<C64>) -> Self {
        let mut data = Vec::with_capacity(m.len());
        for r in 0..m.nrows() {
            data.extend(m.row(r).iter().copied());
        }
        Self { n, up, down, data }
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_endomorphism() {
            return Err(Error::Shape("only endomorphisms can be inverted".into()));
        }
        let inv = self.to_matrix().try_inverse().ok_or_else(|| Error::Singular("tensor is not invertible".into()))?;
        Ok(Self::from_dmatrix(self.n, self.up, self.down, &inv))
    }
}

/// Renames axes: `from` lists the labels of `t`'s axes in storage order and
/// `to` the desired order, both whitespace separated.
pub fn relabel(t: &DenseTensor, from: &str, to: &str, up: usize) -> Result<DenseTensor> {
    let src: Vec<&str> = from.split_whitespace().collect();
    let perm = to
        .split_whitespace()
        .map(|l| src.iter().position(|s| *s == l).ok_or_else(|| Error::Shape(format!("unknown axis label {l}"))))
        .collect::<Result<Vec<_>>>()?;
    if src.len() != t.rank() {
        return Err(Error::Shape(format!("{} labels for a rank {} tensor", src.len(), t.rank())));
    }
    t.permute(&perm, up)
}

/// Writes the base-`n` digits of `flat` into `idx`, most significant first.
pub fn decode(mut flat: usize, n: usize, idx: &mut [usize]) {
    for d in idx.iter_mut().rev() {
        *d = flat % n;
        flat /= n;
    }
}

/// Matrix product `a·b` of the lower block of `a` against the upper block of `b`.
pub fn compose(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    if a.n != b.n || a.down != b.up {
        return Err(Error::Shape(format!("cannot compose arity ({},{}) with ({},{})", a.up, a.down, b.up, b.down)));
    }
    let (rows, inner, cols) = (a.rows(), a.cols(), b.cols());
    let mut data = vec![ZERO; rows * cols];
    data.par_chunks_mut(cols).enumerate().for_each(|(r, out)| {
        let arow = &a.data[r * inner..(r + 1) * inner];
        for (k, &x) in arow.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            let brow = &b.data[k * cols..(k + 1) * cols];
            for (o, &y) in out.iter_mut().zip(brow) {
                *o += x * y;
            }
        }
    });
    Ok(DenseTensor { n: a.n, up: a.up, down: b.down, data })
}

/// Left-to-right product of a list of tensors.
pub fn compose_all(ts: &[&DenseTensor]) -> Result<DenseTensor> {
    let (first, rest) = ts.split_first().ok_or_else(|| Error::Shape("empty product".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, t| compose(&acc, t))
}

/// `A ⊗ B` with indices `[a_up, b_up, a_down, b_down]`.
pub fn kron(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    if a.n != b.n {
        return Err(Error::Shape("kron of tensors with different extents".into()));
    }
    let (au, ad, bu) = (a.up, a.down, b.up);
    Ok(DenseTensor::from_fn(a.n, a.up + b.up, a.down + b.down, |idx| {
        let (aup, rest) = idx.split_at(au);
        let (bup, rest) = rest.split_at(bu);
        let (adn, bdn) = rest.split_at(ad);
        let ai: Vec<usize> = aup.iter().chain(adn).copied().collect();
        let bi: Vec<usize> = bup.iter().chain(bdn).copied().collect();
        a.get(&ai) * b.get(&bi)
    }))
}

fn check_pair(t: &DenseTensor, p: usize, q: usize, total: usize) -> Result<()> {
    if t.up != 2 || t.down != 2 {
        return Err(Error::Shape("expected an endomorphism of V⊗V".into()));
    }
    if p == q || p >= total || q >= total {
        return Err(Error::Invalid(format!("factor pair ({}, {}) out of range for {total} factors", p + 1, q + 1)));
    }
    Ok(())
}

/// `T` acting on factors `p` and `q` (1-based, `p < q`) of `V^{⊗total}`.
pub fn apply_on_factors(t: &DenseTensor, positions: (usize, usize), total: usize) -> Result<DenseTensor> {
    let (p, q) = positions;
    if p == 0 || p >= q {
        return Err(Error::Invalid(format!("positions ({p}, {q}) must satisfy 1 ≤ p < q")));
    }
    embed_left(t, p - 1, q - 1, &DenseTensor::identity(t.n, total))
}

/// `T_{pq}·M` without materialising `T_{pq}`; `p` and `q` are 0-based and
/// may come in either order (the first tensor slot acts on factor `p`).
pub fn embed_left(t: &DenseTensor, p: usize, q: usize, m: &DenseTensor) -> Result<DenseTensor> {
    check_pair(t, p, q, m.up)?;
    let n = t.n;
    let k = m.up;
    let cols = m.cols();
    let sp = pow(n, k - 1 - p);
    let sq = pow(n, k - 1 - q);
    let nz = buckets(t, true);
    let mut data = vec![ZERO; m.data.len()];
    data.par_chunks_mut(cols).enumerate().for_each(|(r, out)| {
        let x = (r / sp) % n;
        let y = (r / sq) % n;
        let base = r - x * sp - y * sq;
        for &(a, b, v) in &nz[x * n + y] {
            let src = base + a * sp + b * sq;
            let row = &m.data[src * cols..(src + 1) * cols];
            for (o, &z) in out.iter_mut().zip(row) {
                *o += v * z;
            }
        }
    });
    Ok(DenseTensor { n, up: m.up, down: m.down, data })
}

/// `M·T_{pq}` without materialising `T_{pq}`.
pub fn embed_right(m: &DenseTensor, t: &DenseTensor, p: usize, q: usize) -> Result<DenseTensor> {
    check_pair(t, p, q, m.down)?;
    let n = t.n;
    let k = m.down;
    let cols = m.cols();
    let sp = pow(n, k - 1 - p);
    let sq = pow(n, k - 1 - q);
    let nz = buckets(t, false);
    let mut data = vec![ZERO; m.data.len()];
    data.par_chunks_mut(cols).enumerate().for_each(|(r, out)| {
        let row = &m.data[r * cols..(r + 1) * cols];
        for (c, o) in out.iter_mut().enumerate() {
            let x = (c / sp) % n;
            let y = (c / sq) % n;
            let base = c - x * sp - y * sq;
            *o = nz[x * n + y].iter().map(|&(a, b, v)| row[base + a * sp + b * sq] * v).sum();
        }
    });
    Ok(DenseTensor { n, up: m.up, down: m.down, data })
}

/// Nonzero entries of a (2,2) tensor grouped by the upper pair (`by_upper`)
/// or the lower pair; each entry carries the other pair and the value.
fn buckets(t: &DenseTensor, by_upper: bool) -> Vec<Vec<(usize, usize, C64)>> {
    let n = t.n;
    let mut v = vec![Vec::new(); n * n];
    for (flat, &x) in t.data.iter().enumerate() {
        if x == ZERO {
            continue;
        }
        let (hi, lo) = (flat / (n * n), flat % (n * n));
        let (key, other) = if by_upper { (hi, lo) } else { (lo, hi) };
        v[key].push((other / n, other % n, x));
    }
    v
}

/// A single-factor operator applied on factor `p` (0-based) from the left.
pub fn single_left(s: &DenseTensor, p: usize, m: &DenseTensor) -> Result<DenseTensor> {
    if s.up != 1 || s.down != 1 || p >= m.up {
        return Err(Error::Shape("single-factor operator out of range".into()));
    }
    let n = s.n;
    let cols = m.cols();
    let sp = pow(n, m.up - 1 - p);
    let mut data = vec![ZERO; m.data.len()];
    data.par_chunks_mut(cols).enumerate().for_each(|(r, out)| {
        let x = (r / sp) % n;
        let base = r - x * sp;
        for a in 0..n {
            let v = s.data[x * n + a];
            if v == ZERO {
                continue;
            }
            let src = base + a * sp;
            for (o, &z) in out.iter_mut().zip(&m.data[src * cols..(src + 1) * cols]) {
                *o += v * z;
            }
        }
    });
    Ok(DenseTensor { n, up: m.up, down: m.down, data })
}

/// `M·(s on factor p)`.
pub fn single_right(m: &DenseTensor, s: &DenseTensor, p: usize) -> Result<DenseTensor> {
    if s.up != 1 || s.down != 1 || p >= m.down {
        return Err(Error::Shape("single-factor operator out of range".into()));
    }
    let n = s.n;
    let cols = m.cols();
    let sp = pow(n, m.down - 1 - p);
    let mut data = vec![ZERO; m.data.len()];
    data.par_chunks_mut(cols).enumerate().for_each(|(r, out)| {
        let row = &m.data[r * cols..(r + 1) * cols];
        for (c, o) in out.iter_mut().enumerate() {
            let x = (c / sp) % n;
            let base = c - x * sp;
            *o = (0..n).map(|a| row[base + a * sp] * s.data[a * n + x]).sum();
        }
    });
    Ok(DenseTensor { n, up: m.up, down: m.down, data })
}

/// Swaps the upper and lower index of factor `p` (1-based).
pub fn partial_transpose(t: &DenseTensor, p: usize) -> Result<DenseTensor> {
    if !t.is_endomorphism() || p == 0 || p > t.up {
        return Err(Error::Invalid(format!("factor {p} out of range")));
    }
    let mut perm: Vec<usize> = (0..t.rank()).collect();
    perm.swap(p - 1, t.up + p - 1);
    t.permute(&perm, t.up)
}

/// The flip `P(e_a ⊗ e_b) = e_b ⊗ e_a`.
pub fn flip(n: usize) -> DenseTensor {
    DenseTensor::from_fn(n, 2, 2, |i| if i[0] == i[3] && i[1] == i[2] { ONE } else { ZERO })
}

/// `Tr_p`: contracts the upper and lower index of factor `p` (1-based).
pub fn partial_trace(t: &DenseTensor, p: usize) -> Result<DenseTensor> {
    if !t.is_endomorphism() || p == 0 || p > t.up {
        return Err(Error::Invalid(format!("factor {p} out of range")));
    }
    let k = t.up;
    let n = t.n;
    let out = DenseTensor::from_fn(n, k - 1, k - 1, |idx| {
        let mut full = Vec::with_capacity(2 * k);
        (0..n)
            .map(|j| {
                full.clear();
                full.extend_from_slice(&idx[..p - 1]);
                full.push(j);
                full.extend_from_slice(&idx[p - 1..k - 1 + p - 1]);
                full.push(j);
                full.extend_from_slice(&idx[k - 1 + p - 1..]);
                t.get(&full)
            })
            .sum()
    });
    Ok(out)
}

pub fn trace(t: &DenseTensor) -> Result<C64> {
    if !t.is_endomorphism() {
        return Err(Error::Shape("trace of a non-endomorphism".into()));
    }
    let d = t.rows();
    Ok((0..d).map(|i| t.data[i * d + i]).sum())
}

/// `F^i_j = ζ^{ij}/√N`.
pub fn dft_matrix(rs: &RootSystem) -> DenseTensor {
    let n = rs.n();
    let s = 1.0 / (n as f64).sqrt();
    DenseTensor::from_fn(n, 1, 1, |i| rs.zeta((i[0] * i[1]) as i64) * s)
}

fn dft_inverse_matrix(rs: &RootSystem) -> DenseTensor {
    let n = rs.n();
    let s = 1.0 / (n as f64).sqrt();
    DenseTensor::from_fn(n, 1, 1, |i| rs.zeta(-((i[0] * i[1]) as i64)) * s)
}

/// `F^{⊗k} T (F^{-1})^{⊗k}`, or `(F^{-1})^{⊗k} T F^{⊗k}` when `inverse`.
pub fn dft_conjugate(t: &DenseTensor, rs: &RootSystem, inverse: bool) -> Result<DenseTensor> {
    if !t.is_endomorphism() || t.n != rs.n() {
        return Err(Error::Shape("dft_conjugate needs an endomorphism of V^{⊗k}".into()));
    }
    let (f, fi) = (dft_matrix(rs), dft_inverse_matrix(rs));
    let (l, r) = if inverse { (fi, f) } else { (f, fi) };
    let mut out = t.clone();
    for p in 0..t.up {
        out = single_left(&l, p, &out)?;
        out = single_right(&out, &r, p)?;
    }
    Ok(out)
}

/// Result of comparing two tensors up to one global scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorComparison {
    /// `a[idx]/b[idx]` at the largest entry of `b`.
    pub ratio: C64,
    /// Witness of `ratio` against 1; its unit is the scalar used below.
    pub witness: EqModNWitness,
    /// `max |a - u·b| / max |a|` with `u` the witness unit.
    pub residual: f64,
    pub equal: bool,
}

/// `a =_N b` with a single sign and root of unity for every entry.
pub fn global_eq_mod_n(a: &DenseTensor, b: &DenseTensor, rs: &RootSystem, tol: f64) -> Result<TensorComparison> {
    let (ratio, _) = ratio_at_peak(a, b)?;
    let witness = eq_mod_n(ratio, ONE, rs, tol);
    let u = witness.unit(rs);
    let residual = scaled_residual(a, b, u);
    Ok(TensorComparison { ratio, witness, residual, equal: residual <= tol })
}

/// `a ∝ b` for an arbitrary scalar; returns the scalar and the residual.
pub fn proportional(a: &DenseTensor, b: &DenseTensor) -> Result<(C64, f64)> {
    let (ratio, _) = ratio_at_peak(a, b)?;
    Ok((ratio, scaled_residual(a, b, ratio)))
}

fn ratio_at_peak(a: &DenseTensor, b: &DenseTensor) -> Result<(C64, usize)> {
    a.same_shape(b)?;
    let (k, bmax) =
        b.data
            .iter()
            .enumerate()
            .map(|(k, x)| (k, x.norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    if bmax <= 0.0 {
        return Ok((if a.max_abs() == 0.0 { ONE } else { ZERO }, k));
    }
    Ok((a.data[k] / b.data[k], k))
}

fn scaled_residual(a: &DenseTensor, b: &DenseTensor, u: C64) -> f64 {
    let scale = a.max_abs().max(b.max_abs() * u.norm()).max(1e-300);
    a.data.iter().zip(&b.data).map(|(x, y)| (x - u * y).norm()).fold(0.0, f64::max) / scale
}
