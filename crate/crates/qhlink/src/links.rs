//! Braid closures: tangle operators, opened-strand scalars, closed traces
//! and the three explicit puzzle contractions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kashaev::{kashaev_r, kashaev_r_inverse, kashaev_s, mu_kashaev};
use crate::qh_core::walls::shift;
use crate::qh_core::ybo::{flip_conjugate, mixed_crossing, qh_r_matrix};
use crate::specfun::{eq_mod_n, EqModNWitness, RootSystem, C64};
use crate::tensor::{embed_right, partial_trace, single_right, trace, DenseTensor};

const ONE: C64 = C64::new(1.0, 0.0);

/// Default memory budget for a tangle operator (two live copies).
pub const DEFAULT_BUDGET: u128 = 2 << 30;

/// A braid on `strands` strands; `g > 0` is `σ_g` and `g < 0` is `σ_{|g|}^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Invalid("a braid needs at least one strand".into()));
        }
        if let Some(g) = word.iter().find(|g| **g == 0 || g.unsigned_abs() as usize >= strands) {
            return Err(Error::Invalid(format!("generator {g} out of range for {strands} strands")));
        }
        Ok(Self { strands, word })
    }

    /// Parses whitespace-separated integers; the first is the strand count.
    pub fn parse(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace().enumerate();
        let (_, first) = tokens.next().ok_or(Error::Parse { pos: 0, msg: "empty braid word".into() })?;
        let strands: usize = first
            .parse()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("strand count {first:?} is not a positive integer") })?;
        if strands == 0 {
            return Err(Error::Parse { pos: 0, msg: "strand count must be at least 1".into() });
        }
        let mut word = Vec::new();
        for (pos, tok) in tokens {
            let g: i32 = tok.parse().map_err(|_| Error::Parse { pos, msg: format!("{tok:?} is not an integer") })?;
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::Parse { pos, msg: format!("generator {g} out of range for {strands} strands") });
            }
            word.push(g);
        }
        Ok(Self { strands, word })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    /// All crossings switched.
    pub fn mirror(&self) -> Self {
        Self { strands: self.strands, word: self.word.iter().map(|g| -g).collect() }
    }

    pub fn writhe(&self) -> i64 {
        self.word.iter().map(|g| i64::from(g.signum())).sum()
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for s in 0..self.strands {
            if !seen[s] {
                count += 1;
                let mut t = s;
                while !seen[t] {
                    seen[t] = true;
                    t = perm[t];
                }
            }
        }
        count
    }

    /// `g·B·g^{-1}` for a generator `g`.
    pub fn conjugate(&self, g: i32) -> Result<Self> {
        let mut word = vec![g];
        word.extend_from_slice(&self.word);
        word.push(-g);
        Self::new(self.strands, word)
    }

    /// `B·σ_p^{±1}` on one more strand.
    pub fn stabilize(&self, positive: bool) -> Self {
        let p = self.strands as i32;
        let mut word = self.word.clone();
        word.push(if positive { p } else { -p });
        Self { strands: self.strands + 1, word }
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.strands)?;
        for g in &self.word {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

/// Built-in braid presentations.
pub const CATALOG: &[(&str, &str)] = &[
    ("unknot", "1"),
    ("hopf", "2 1 1"),
    ("trefoil", "2 1 1 1"),
    ("figure-eight", "3 1 -2 1 -2"),
    ("whitehead", "3 1 1 -2 1 -2"),
    ("4_2_1", "2 1 1 1 1"),
];

/// Looks up a catalogue name, or parses the text as a braid word.
pub fn resolve_link(spec: &str) -> Result<BraidWord> {
    let key = spec.trim();
    match CATALOG.iter().find(|(name, _)| name.eq_ignore_ascii_case(key) || alias(key) == Some(*name)) {
        Some((_, w)) => BraidWord::parse(w),
        None => BraidWord::parse(key),
    }
}

fn alias(key: &str) -> Option<&'static str> {
    match key.to_ascii_lowercase().as_str() {
        "fig8" | "figure8" | "4_1" => Some("figure-eight"),
        "3_1" => Some("trefoil"),
        "421" | "4^2_1" => Some("4_2_1"),
        _ => None,
    }
}

/// Which R-matrix builds the tangle operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Kashaev,
    Qh,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Kashaev => "kashaev",
            Family::Qh => "qh",
        }
    }
}

/// The local data of a family: crossings, enhancement and twist.
#[derive(Debug, Clone)]
pub struct FamilyData {
    pub family: Family,
    pub positive: DenseTensor,
    pub negative: DenseTensor,
    pub mu: DenseTensor,
    /// `μ^{-1}`.
    pub mu_inv: DenseTensor,
    /// Twist scalar `a` of the enhanced operator.
    pub twist: C64,
}

impl FamilyData {
    pub fn new(family: Family, rs: &RootSystem) -> Result<Self> {
        let n = rs.n();
        Ok(match family {
            Family::Kashaev => {
                let mu = mu_kashaev(rs);
                Self {
                    family,
                    positive: kashaev_r(-1, rs).tensor,
                    negative: kashaev_r_inverse(rs),
                    mu_inv: mu.inverse()?,
                    mu,
                    twist: -kashaev_s(rs),
                }
            }
            Family::Qh => {
                let mu = shift(n);
                Self {
                    family,
                    positive: flip_conjugate(&qh_r_matrix(1, rs)?)?,
                    negative: flip_conjugate(&qh_r_matrix(-1, rs)?)?,
                    mu_inv: mu.inverse()?,
                    mu,
                    twist: ONE,
                }
            }
        })
    }
}

/// `T_N(B)`, an endomorphism of `V^{⊗p}`.
#[derive(Debug, Clone)]
pub struct TangleOperator {
    pub tensor: DenseTensor,
    pub family: Family,
}

/// Bytes needed to evaluate a `p`-strand operator (two `N^p × N^p` copies).
pub fn operator_bytes(n: usize, strands: usize) -> u128 {
    let d = (n as u128).pow(strands as u32);
    2 * d * d * 16
}

fn check_budget(n: usize, strands: usize, budget: u128) -> Result<()> {
    let bytes = operator_bytes(n, strands);
    if bytes > budget {
        return Err(Error::Infeasible { what: format!("{strands}-strand operator at N={n}"), bytes, limit: budget });
    }
    Ok(())
}

pub fn braid_operator(b: &BraidWord, data: &FamilyData, rs: &RootSystem) -> Result<TangleOperator> {
    braid_operator_with_budget(b, data, rs, DEFAULT_BUDGET)
}

/// Composes the crossing tensors along the word, bottom to top.
pub fn braid_operator_with_budget(
    b: &BraidWord,
    data: &FamilyData,
    rs: &RootSystem,
    budget: u128,
) -> Result<TangleOperator> {
    check_budget(rs.n(), b.strands, budget)?;
    let mut x = DenseTensor::identity(rs.n(), b.strands);
    for &g in &b.word {
        let i = g.unsigned_abs() as usize - 1;
        let r = if g > 0 { &data.positive } else { &data.negative };
        x = embed_right(&x, r, i, i + 1)?;
    }
    Ok(TangleOperator { tensor: x, family: data.family })
}

/// How a value may be compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambiguity {
    Exact,
    ModN,
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Kashaev,
    QhYbo,
    Puzzle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantValue {
    pub value: C64,
    pub ambiguity: Ambiguity,
    pub method: Method,
    /// Relative distance of the opened operator from a multiple of the identity.
    pub residual: f64,
}

impl InvariantValue {
    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }
}

fn method_of(f: Family) -> (Ambiguity, Method) {
    match f {
        Family::Kashaev => (Ambiguity::Exact, Method::Kashaev),
        Family::Qh => (Ambiguity::ModN, Method::QhYbo),
    }
}

fn framing(b: &BraidWord, data: &FamilyData) -> C64 {
    data.twist.powi(-(b.writhe() as i32))
}

/// The opened operator on strand `k`: the enhancement acts as `μ` on the
/// strands to its right and `μ^{-1}` on those to its left, then every other
/// strand is traced out.
pub fn open_strand(x: &DenseTensor, k: usize, data: &FamilyData) -> Result<DenseTensor> {
    let p = x.up();
    if k >= p {
        return Err(Error::Invalid(format!("strand {k} out of range for {p} strands")));
    }
    let mut y = x.clone();
    for s in 0..p {
        if s > k {
            y = single_right(&y, &data.mu, s)?;
        } else if s < k {
            y = single_right(&y, &data.mu_inv, s)?;
        }
    }
    for s in (0..p).rev().filter(|&s| s != k) {
        y = partial_trace(&y, s + 1)?;
    }
    Ok(y)
}

/// The scalar of the (1,1)-tangle obtained by opening strand `open`,
/// framing-normalised.
pub fn tangle_scalar(b: &BraidWord, open: usize, data: &FamilyData, rs: &RootSystem) -> Result<InvariantValue> {
    let x = braid_operator(b, data, rs)?;
    scalar_of(&x.tensor, b, open, data, rs)
}

fn scalar_of(
    x: &DenseTensor,
    b: &BraidWord,
    open: usize,
    data: &FamilyData,
    rs: &RootSystem,
) -> Result<InvariantValue> {
    let t = open_strand(x, open, data)?;
    let lambda = trace(&t)? / rs.n() as f64;
    let dev = t.sub(&DenseTensor::identity(rs.n(), 1).scale(lambda))?.frobenius();
    let residual = dev / t.frobenius().max(1e-300);
    if residual > 1e-7 {
        return Err(Error::NotScalar { residual });
    }
    let (ambiguity, method) = method_of(data.family);
    Ok(InvariantValue { value: lambda * framing(b, data), ambiguity, method, residual })
}

/// Scalars for every choice of opened strand.
pub fn tangle_scalars_all(b: &BraidWord, data: &FamilyData, rs: &RootSystem) -> Result<Vec<InvariantValue>> {
    let x = braid_operator(b, data, rs)?;
    (0..b.strands).map(|k| scalar_of(&x.tensor, b, k, data, rs)).collect()
}

/// `Tr(μ^{⊗p} T_N(B))`, framing-normalised.
pub fn closed_trace(b: &BraidWord, data: &FamilyData, rs: &RootSystem) -> Result<InvariantValue> {
    let mut x = braid_operator(b, data, rs)?.tensor;
    for s in 0..b.strands {
        x = single_right(&x, &data.mu, s)?;
    }
    let (_, method) = method_of(data.family);
    Ok(InvariantValue { value: trace(&x)? * framing(b, data), ambiguity: Ambiguity::ModN, method, residual: 0.0 })
}

/// `⟨L⟩_N` of the closure. The Kashaev family computes the invariant of
/// the mirror image, so the word is mirrored first.
pub fn kashaev_invariant(b: &BraidWord, rs: &RootSystem) -> Result<InvariantValue> {
    tangle_scalar(&b.mirror(), 0, &FamilyData::new(Family::Kashaev, rs)?, rs)
}

/// `𝓗_N(L)` of the closure, defined up to sign and `N`-th roots of unity.
pub fn qh_invariant(b: &BraidWord, rs: &RootSystem) -> Result<InvariantValue> {
    tangle_scalar(b, 0, &FamilyData::new(Family::Qh, rs)?, rs)
}

/// Invariant of `L₁ ⊔ L₂` via `[L₁]_N · 𝓗_N(L₂)`, with both orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitValue {
    pub value: C64,
    pub swapped: C64,
}

pub fn split_compose(l1: &BraidWord, l2: &BraidWord, family: Family, rs: &RootSystem) -> Result<SplitValue> {
    let data = FamilyData::new(family, rs)?;
    let (c1, c2) = (closed_trace(l1, &data, rs)?.value, closed_trace(l2, &data, rs)?.value);
    let (h1, h2) = (tangle_scalar(l1, 0, &data, rs)?.value, tangle_scalar(l2, 0, &data, rs)?.value);
    Ok(SplitValue { value: c1 * h2, swapped: h1 * c2 })
}

/// The explicit contractions of mixed crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Puzzle {
    Whitehead,
    Hopf,
    HopfOneCrossing,
    FourTwoOne,
}

impl Puzzle {
    pub const ALL: [Puzzle; 4] = [Puzzle::Whitehead, Puzzle::Hopf, Puzzle::HopfOneCrossing, Puzzle::FourTwoOne];

    pub fn name(self) -> &'static str {
        match self {
            Puzzle::Whitehead => "whitehead",
            Puzzle::Hopf => "hopf",
            Puzzle::HopfOneCrossing => "hopf_one_crossing",
            Puzzle::FourTwoOne => "four_two_one",
        }
    }

    /// The braid whose QH invariant the contraction reproduces.
    pub fn braid(self) -> BraidWord {
        let w = match self {
            Puzzle::Whitehead => "3 -1 -1 2 -1 2",
            Puzzle::Hopf | Puzzle::HopfOneCrossing => "2 1 1",
            Puzzle::FourTwoOne => "2 1 1 1 1",
        };
        BraidWord::parse(w).expect("valid braid")
    }
}

impl FromStr for Puzzle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Puzzle::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::Invalid(format!("unknown puzzle {s:?}")))
    }
}

pub fn puzzle(which: Puzzle, rs: &RootSystem) -> Result<InvariantValue> {
    let n = rs.n();
    let pp = mixed_crossing(1, 1, rs)?;
    let mut v = C64::new(0.0, 0.0);
    match which {
        Puzzle::Whitehead => {
            let mp = mixed_crossing(-1, 1, rs)?;
            for r in 0..n {
                for i in 0..n {
                    for k in 0..n {
                        let a = mp.get(&[r, i, k, i]);
                        for p in 0..n {
                            v += a * pp.get(&[p, p, k, r]);
                        }
                    }
                }
            }
        }
        Puzzle::Hopf => {
            for k in 0..n {
                for r in 0..n {
                    let a: C64 = (0..n).map(|i| pp.get(&[k, r, i, i])).sum();
                    let b: C64 = (0..n).map(|p| pp.get(&[p, p, k, r])).sum();
                    v += a * b;
                }
            }
        }
        Puzzle::HopfOneCrossing => {
            let mp = mixed_crossing(-1, 1, rs)?;
            for j in 0..n {
                for i in 0..n {
                    v += mp.get(&[j, j, i, i]);
                }
            }
        }
        Puzzle::FourTwoOne => {
            for j in 0..n {
                for i in 0..n {
                    v += pp.get(&[j, i, j, i]);
                }
            }
        }
    }
    Ok(InvariantValue { value: v, ambiguity: Ambiguity::ModN, method: Method::Puzzle, residual: 0.0 })
}

/// `⟨L⟩_N` against `𝓗_N` of the mirrored word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HkReport {
    pub kashaev: InvariantValue,
    pub qh: InvariantValue,
    pub witness: EqModNWitness,
    /// `| |⟨L⟩| − |𝓗| | / max(|⟨L⟩|, 1)`.
    pub modulus_gap: f64,
}

pub fn hk_equivalence(b: &BraidWord, rs: &RootSystem, tol: f64) -> Result<HkReport> {
    let kashaev = kashaev_invariant(b, rs)?;
    let qh = qh_invariant(&b.mirror(), rs)?;
    let witness = eq_mod_n(kashaev.value, qh.value, rs, tol);
    let modulus_gap = (kashaev.modulus() - qh.modulus()).abs() / kashaev.modulus().max(1.0);
    Ok(HkReport { kashaev, qh, witness, modulus_gap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let b = BraidWord::parse("3 1 -2 1 -2").unwrap();
        assert_eq!(b.strands(), 3);
        assert_eq!(b.word(), &[1, -2, 1, -2]);
        assert_eq!(b.to_string(), "3 1 -2 1 -2");
        assert_eq!(b.writhe(), 0);
        assert_eq!(b.components(), 1);
        assert!(matches!(BraidWord::parse("3 1 x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(BraidWord::parse("2 2"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(BraidWord::parse(""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(BraidWord::parse("0"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn components() {
        assert_eq!(resolve_link("hopf").unwrap().components(), 2);
        assert_eq!(resolve_link("whitehead").unwrap().components(), 2);
        assert_eq!(resolve_link("trefoil").unwrap().components(), 1);
        assert_eq!(resolve_link("4_2_1").unwrap().components(), 2);
        assert_eq!(resolve_link("fig8").unwrap(), resolve_link("figure-eight").unwrap());
    }

    #[test]
    fn budget_refusal() {
        let rs = RootSystem::new(31).unwrap();
        let b = resolve_link("figure-eight").unwrap();
        let data = FamilyData::new(Family::Kashaev, &rs).unwrap();
        assert!(matches!(braid_operator(&b, &data, &rs), Err(Error::Infeasible { .. })));
    }
}
