//! Numerical identity suites, shared by the command line and the tests.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kashaev::{
    convstates, flip_pairs, inverse_braiding_comparison, kashaev_s, kashaev_ybo, qh_kashaev_bridge,
    r_hat_entry_residual, reduced_plus_minus, reduced_plus_plus, verify_conjmat, wall_vs_h,
};
use crate::qh_core::braiding::{apply_braiding_right, braiding_factors};
use crate::qh_core::dilog::tilde_l_inverse;
use crate::qh_core::ybo::trace_twist;
use crate::qh_core::{
    braiding, braiding_closed_form, braiding_inverse_closed_form, crossing_decorations, m_n, matrix_dilog_l,
    mixed_crossing, nth_root_moduli, shift, tilde_r, tilde_r_numeric, wall_closed_form, wall_restricted, wall_tensor,
    EnhancedYBO, WallKind,
};
use crate::specfun::{
    bracket, eq_mod_n, f_fun, g_fun, nth_root, omega, omega2, omega_star, pochhammer, RootSystem, C64,
};
use crate::tensor::{compose, dft_conjugate, global_eq_mod_n, DenseTensor, TensorComparison};

const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Algres,
    Ffourier,
    Braiding,
    Walls,
    Ybe,
    Conjmat,
    Bridge,
    Convstates,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Algres,
        Suite::Ffourier,
        Suite::Braiding,
        Suite::Walls,
        Suite::Ybe,
        Suite::Conjmat,
        Suite::Bridge,
        Suite::Convstates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algres => "algres",
            Suite::Ffourier => "ffourier",
            Suite::Braiding => "braiding",
            Suite::Walls => "walls",
            Suite::Ybe => "ybe",
            Suite::Conjmat => "conjmat",
            Suite::Bridge => "bridge",
            Suite::Convstates => "convstates",
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Ybe | Suite::Conjmat | Suite::Bridge => 1e-8,
            Suite::Convstates => 0.0,
            _ => 1e-9,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// One identity checked at one `N`; `residual` is the worst case seen.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub suite: Suite,
    pub name: String,
    pub n: usize,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

struct Recorder {
    suite: Suite,
    n: usize,
    tol: f64,
    out: Vec<CheckRecord>,
}

impl Recorder {
    fn push(&mut self, name: &str, residual: f64) {
        // NaN never passes
        let pass = residual <= self.tol;
        if let Some(r) = self.out.iter_mut().find(|r| r.name == name) {
            r.residual = if residual.is_nan() { f64::NAN } else { r.residual.max(residual) };
            r.pass &= pass;
            return;
        }
        self.out.push(CheckRecord {
            suite: self.suite,
            name: name.to_string(),
            n: self.n,
            residual,
            tol: self.tol,
            pass,
        });
    }

    fn cmp(&mut self, name: &str, c: &TensorComparison) {
        self.push(name, c.residual);
    }
}

/// Runs one suite at one `N`. `tol` defaults to the suite's tolerance.
pub fn run_suite(suite: Suite, n: usize, tol: Option<f64>, seed: u64) -> Result<Vec<CheckRecord>> {
    let rs = RootSystem::new(n)?;
    let mut rec = Recorder { suite, n, tol: tol.unwrap_or(suite.default_tol()), out: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    match suite {
        Suite::Algres => algres(&rs, &mut rng, &mut rec)?,
        Suite::Ffourier => ffourier(&rs, &mut rec)?,
        Suite::Braiding => braiding_suite(&rs, &mut rec)?,
        Suite::Walls => walls(&rs, &mut rec)?,
        Suite::Ybe => ybe(&rs, &mut rec)?,
        Suite::Conjmat => conjmat(&rs, &mut rng, &mut rec)?,
        Suite::Bridge => bridge(&rs, &mut rec)?,
        Suite::Convstates => convstates_suite(&rs, &mut rec),
    }
    Ok(rec.out)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn rel_mod_n(a: C64, b: C64, rs: &RootSystem) -> f64 {
    eq_mod_n(a, b, rs, 1.0).residual / a.norm().max(b.norm()).max(1.0)
}

/// A random point of the box `|re|, |im| ≤ 1.5` away from the `N`-th roots of unity.
fn generic_point(rng: &mut ChaCha8Rng, rs: &RootSystem) -> C64 {
    loop {
        let x = C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let far = (0..rs.ni()).all(|k| (x - rs.zeta(k)).norm() > 0.05);
        if far && x.norm() > 0.05 && (ONE - x.powi(rs.n() as i32)).norm() > 0.05 {
            return x;
        }
    }
}

fn unit_point(rng: &mut ChaCha8Rng, rs: &RootSystem) -> C64 {
    loop {
        let x = C64::from_polar(1.0, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
        if (0..rs.ni()).all(|k| (x - rs.zeta(k)).norm() > 0.05) {
            return x;
        }
    }
}

const SAMPLES: usize = 100;

fn algres(rs: &RootSystem, rng: &mut ChaCha8Rng, rec: &mut Recorder) -> Result<()> {
    let n = rs.n();
    let ni = rs.ni();
    let z = |k: i64| rs.zeta(k);
    let zero = C64::new(0.0, 0.0);
    for _ in 0..SAMPLES {
        let x = generic_point(rng, rs);
        let root = nth_root(ONE - x.powi(n as i32), n);
        let w = root * z(rng.gen_range(0..ni));

        // x f(x,0|wζ) = (1-w) f(x,0|w)
        let f0 = f_fun(x, zero, w, rs)?;
        rec.push("f_shift", rel(x * f_fun(x, zero, w * z(1), rs)?, (ONE - w) * f0));

        // g(x) g(w/ζ) f(x,0|w) =_N x^{N-1} g(1)
        let lhs = g_fun(x, rs)? * g_fun(w / z(1), rs)? * f0;
        rec.push("g_product", rel_mod_n(lhs, x.powi(ni as i32 - 1) * g_fun(ONE, rs)?, rs));

        // f(xζ^a, x/ζ|ζ^b) by residues of a and b-1
        let a = rng.gen_range(-2 * ni..2 * ni);
        let b = rng.gen_range(-2 * ni..2 * ni);
        let v = f_fun(x * z(a), x / z(1), z(b), rs)?;
        let (ar, b1) = (rs.residue(a) as i64, rs.residue(b - 1) as i64);
        let lead = x.powi((ni - 1 - b1) as i32) / bracket(x, rs);
        if ar == 0 {
            rec.push("f_residue_zero", rel(v, lead));
        } else if b1 < ar {
            rec.push("f_vanishing", v.norm());
        } else {
            // the constant multiplying x^{N-1-[b-1]}[x]^{-1}(xζ)_{a-1} does not depend on x
            let y = generic_point(rng, rs);
            let vy = f_fun(y * z(a), y / z(1), z(b), rs)?;
            let cx = v / (lead * pochhammer(x * z(1), a - 1, rs));
            let cy = vy / (y.powi((ni - 1 - b1) as i32) / bracket(y, rs) * pochhammer(y * z(1), a - 1, rs));
            rec.push("f_x_independent", rel(cx, cy));
        }
        if ar != 0 {
            let v1 = f_fun(x * z(a), x / z(1), ONE, rs)?;
            rec.push("f_at_one", rel(v1, pochhammer(x * z(1), a - 1, rs) / bracket(x, rs)));
        }
        rec.push("f_normalisation", rel(f_fun(x, x / z(1), z(1), rs)?, x.powi(ni as i32 - 1) / bracket(x, rs)));

        // g(xζ^a) = g(x) ω(x, (1-x^N)^{1/N} | a)
        let gx = g_fun(x, rs)?;
        let lhs = g_fun(x * z(a), rs)?;
        rec.push("g_shift", (lhs - gx * omega2(x, root, a, rs)?).norm() / gx.norm().max(lhs.norm()).max(1e-300));

        // periodicity and cocycle of ω(u,v|·) on u^N + v^N = 1
        let l = rng.gen_range(-2 * ni..2 * ni);
        let k = rng.gen_range(-2 * ni..2 * ni);
        let p = omega2(x, w, k, rs)?;
        rec.push("omega2_periodic", rel(p, omega2(x, w, rs.residue(k) as i64, rs)?));
        let lhs = omega2(x, w, l, rs)? * omega2(x * z(l), w, k, rs)?;
        rec.push("omega2_cocycle", rel(lhs, omega2(x, w, l + k, rs)?));

        // ω(x|-k) ω(1/(xζ)|k) = (-x)^{-k} ζ^{k(k-1)/2}
        let k = rng.gen_range(-ni..=ni);
        let lhs = omega(x, -k, rs)? * omega(ONE / (x * z(1)), k, rs)?;
        let rhs = (-x).powi(-k as i32) * z(k * (k - 1) / 2);
        rec.push("omega_inversion", rel(lhs, rhs));

        // ω(x/ζ|k) ω*(x|N-k) = 1 - x^N on 1..N-1, and ω(x/ζ|-k) ω*(x|k) = 1 on 0..N-1
        let k = rng.gen_range(1..ni);
        rec.push(
            "inverse_units_pos",
            rel(omega(x / z(1), k, rs)? * omega_star(x, n - k as usize, rs), ONE - x.powi(ni as i32)),
        );
        let k = rng.gen_range(0..ni);
        rec.push("inverse_units_neg", rel(omega(x / z(1), -k, rs)? * omega_star(x, k as usize, rs), ONE));
    }
    Ok(())
}

fn ffourier(rs: &RootSystem, rec: &mut Recorder) -> Result<()> {
    for sign in [1i8, -1] {
        for d in crossing_decorations(sign) {
            let c = global_eq_mod_n(&tilde_r_numeric(&d, rs)?, &tilde_r(&d, rs)?, rs, rec.tol)?;
            rec.cmp(if d.b_sign > 0 { "tilde_r_pos" } else { "tilde_r_neg" }, &c);
            if d.b_sign > 0 {
                let w = nth_root_moduli(&d, rs)?;
                let li = matrix_dilog_l(w.w0p, ONE / w.w1p, rs, true)?;
                let c =
                    global_eq_mod_n(&dft_conjugate(&li, rs, true)?, &tilde_l_inverse(w.w0p, w.w1p, rs)?, rs, rec.tol)?;
                rec.cmp("tilde_l_inverse", &c);
            }
        }
    }
    Ok(())
}

fn braiding_suite(rs: &RootSystem, rec: &mut Recorder) -> Result<()> {
    for sign in [-1i8, 1] {
        let decs = crossing_decorations(sign);
        let b = braiding(sign, &decs, rs)?;
        let c = global_eq_mod_n(&b, &braiding_closed_form(sign, &decs, rs)?, rs, rec.tol)?;
        rec.cmp(if sign < 0 { "closed_form_neg" } else { "closed_form_pos" }, &c);
    }
    let decs = crossing_decorations(-1);
    let inv = braiding_inverse_closed_form(&decs, rs)?;
    let prod = apply_braiding_right(&inv, &braiding_factors(&decs, rs)?)?;
    let c = global_eq_mod_n(&prod, &DenseTensor::identity(rs.n(), 4), rs, rec.tol)?;
    rec.cmp("inverse_closed_form", &c);
    Ok(())
}

fn walls(rs: &RootSystem, rec: &mut Recorder) -> Result<()> {
    for kind in [WallKind::C, WallKind::M] {
        for fourier in [false, true] {
            let a = wall_tensor(&kind.spec(), rs, fourier)?;
            let b = wall_closed_form(&kind.spec(), rs, fourier)?;
            let name = format!(
                "{}_wall{}",
                if kind == WallKind::C { "c" } else { "m" },
                if fourier { "_fourier" } else { "" }
            );
            rec.cmp(&name, &global_eq_mod_n(&a, &b, rs, rec.tol)?);
        }
    }
    let w = wall_restricted(WallKind::C, rs)?;
    rec.cmp("c_wall_involution", &global_eq_mod_n(&compose(&w, &w)?, &DenseTensor::identity(rs.n(), 1), rs, rec.tol)?);
    rec.cmp("m_is_shift", &global_eq_mod_n(&m_n(rs)?, &shift(rs.n()), rs, rec.tol)?);
    Ok(())
}

fn ybe(rs: &RootSystem, rec: &mut Recorder) -> Result<()> {
    let q = EnhancedYBO::qh(rs)?.residuals(rs)?;
    rec.push("qh_ybe", q.ybe);
    rec.push("qh_inverse", q.inverse);
    rec.push("qh_commutation", q.commutation);
    rec.push("qh_twist_pos", q.twist_pos);
    rec.push("qh_twist_neg", q.twist_neg);
    let y = kashaev_ybo(rs);
    let k = y.residuals(rs)?;
    rec.push("kashaev_ybe", k.ybe);
    rec.push("kashaev_inverse", k.inverse);
    rec.push("kashaev_commutation", k.commutation);
    // twist scalars −s and −1/s hold exactly, not only under =_N
    let s = kashaev_s(rs);
    let id = DenseTensor::identity(rs.n(), 1);
    rec.push("kashaev_twist_pos", trace_twist(&y.r, &y.m)?.max_abs_diff(&id.scale(-s))?);
    rec.push("kashaev_twist_neg", trace_twist(&y.r_inv, &y.m)?.max_abs_diff(&id.scale(-ONE / s))?);
    Ok(())
}

fn conjmat(rs: &RootSystem, rng: &mut ChaCha8Rng, rec: &mut Recorder) -> Result<()> {
    for _ in 0..12 {
        let x = unit_point(rng, rs);
        let y = unit_point(rng, rs);
        let far = |u: C64| (0..rs.ni()).all(|k| (u - rs.zeta(k)).norm() > 0.05);
        if !(far(x * y) && far(x / y)) {
            continue;
        }
        let r = verify_conjmat(x, y, rs)?;
        rec.push("conjmat_first", r.first);
        rec.push("conjmat_second", r.second);
    }
    Ok(())
}

fn bridge(rs: &RootSystem, rec: &mut Recorder) -> Result<()> {
    let b = qh_kashaev_bridge(rs, rec.tol)?;
    rec.cmp("bridge_plus_plus", &b.plus_plus);
    rec.cmp("bridge_plus_minus", &b.plus_minus);
    rec.push("bridge_supports", if b.supports_match { 0.0 } else { 1.0 });
    rec.push("r_hat_entries", r_hat_entry_residual(rs));
    rec.cmp("inverse_braiding_explicit", &inverse_braiding_comparison(rs, rec.tol)?);
    rec.cmp("wall_as_h", &wall_vs_h(rs, rec.tol)?);
    let pm = flip_pairs(&mixed_crossing(1, -1, rs)?)?;
    let pp = flip_pairs(&mixed_crossing(1, 1, rs)?)?;
    rec.cmp("reduced_first", &global_eq_mod_n(&reduced_plus_minus(rs)?, &pm, rs, rec.tol)?);
    rec.cmp("reduced_second", &global_eq_mod_n(&reduced_plus_plus(rs)?, &pp, rs, rec.tol)?);
    Ok(())
}

/// Counts index quadruples on which the four characterisations disagree.
fn convstates_suite(rs: &RootSystem, rec: &mut Recorder) {
    let (n, ni) = (rs.n(), rs.ni());
    let mut bad = [0usize; 3];
    for i in 0..ni {
        for j in 0..ni {
            for k in 0..ni {
                for l in 0..ni {
                    let a = convstates::by_residue_sum(i, j, k, l, n);
                    bad[0] += usize::from(a != convstates::by_pair_bounds(i, j, k, l, n));
                    bad[1] += usize::from(a != convstates::by_order(i, j, k, l));
                    bad[2] += usize::from(a != convstates::by_cyclic_order(i, j, k, l, n));
                }
            }
        }
    }
    rec.push("pair_bounds", bad[0] as f64);
    rec.push("order", bad[1] as f64);
    rec.push("cyclic_order", bad[2] as f64);
}
