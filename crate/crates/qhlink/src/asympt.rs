//! Figure-eight closed formulas and growth-rate fits at large `N`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::{g_fun, RootSystem, C64};

/// Above this `N` the sums are accumulated in log space.
pub const DIRECT_LIMIT: usize = 101;

fn check_odd(n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Invalid(format!("N must be odd and at least 3, got {n}")));
    }
    Ok(())
}

/// `log Σ exp(x_k)` without overflow.
fn log_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let top = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    top + xs.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

/// `log|1-ζ^i|² = 2 log(2 sin(π i / N))`.
fn log_chord_sq(i: usize, n: usize) -> f64 {
    2.0 * (2.0 * (PI * i as f64 / n as f64).sin()).ln()
}

/// `⟨4₁⟩_N = 1 + Σ_{β=1}^{N-1} ∏_{i≤β} |1-ζ^i|²`.
pub fn fig8_kashaev(n: usize) -> Result<f64> {
    if n > DIRECT_LIMIT {
        return Ok(fig8_kashaev_log(n)?.exp());
    }
    fig8_kashaev_direct(n)
}

pub fn fig8_kashaev_direct(n: usize) -> Result<f64> {
    check_odd(n)?;
    let rs = RootSystem::new(n)?;
    let one = C64::new(1.0, 0.0);
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 1..n as i64 {
        term *= (one - rs.zeta(i)).norm_sqr();
        sum += term;
    }
    Ok(sum)
}

/// `log⟨4₁⟩_N`, accumulated in log space; usable far past `f64` overflow.
pub fn fig8_kashaev_log(n: usize) -> Result<f64> {
    check_odd(n)?;
    let mut acc = 0.0;
    let logs = std::iter::once(0.0).chain((1..n).map(|i| {
        acc += log_chord_sq(i, n);
        acc
    }));
    Ok(log_sum_exp(logs))
}

/// The second closed expression `N²(1 + Σ_β ∏_{k≤β} 1/|1-ζ^k|²)`.
pub fn fig8_kashaev_dual(n: usize) -> Result<f64> {
    check_odd(n)?;
    let mut acc = 0.0;
    let logs = std::iter::once(0.0).chain((1..n).map(|k| {
        acc -= log_chord_sq(k, n);
        acc
    }));
    Ok((2.0 * (n as f64).ln() + log_sum_exp(logs)).exp())
}

fn check_unit(w: C64, name: &str) -> Result<()> {
    if (w.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Invalid(format!("{name} must have modulus 1, got {}", w.norm())));
    }
    Ok(())
}

fn denominators(w0: C64, rs: &RootSystem) -> Result<Vec<C64>> {
    (1..rs.n() as i64)
        .map(|k| {
            let d = C64::new(1.0, 0.0) - w0 * rs.zeta(k);
            if d.norm() < 1e-12 {
                Err(Error::Singular(format!("1 - w0·ζ^{k} vanishes")))
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// `N²|g(w0)|²/|g(1)|²`, which is `N²` at `w0 = 1`.
fn g_prefactor(w0: C64, rs: &RootSystem) -> Result<f64> {
    let n2 = (rs.n() * rs.n()) as f64;
    if (w0 - 1.0).norm() < 1e-15 {
        return Ok(n2);
    }
    Ok(n2 * g_fun(w0, rs)?.norm_sqr() / g_fun(C64::new(1.0, 0.0), rs)?.norm_sqr())
}

/// The figure-eight state sum as a function of the moduli `w0`, `w1`:
/// `N²|g(w0)|²/|g(1)|² · |1 + Σ_β ζ^{β²} ∏_{k≤β} w1^{-1}/(1-w0ζ^k)|²`.
pub fn fig8_qh_statesum(w0: C64, w1: C64, n: usize) -> Result<f64> {
    check_odd(n)?;
    check_unit(w0, "w0")?;
    check_unit(w1, "w1")?;
    let rs = RootSystem::new(n)?;
    let den = denominators(w0, &rs)?;
    let w1inv = C64::new(1.0, 0.0) / w1;
    let mut prod = C64::new(1.0, 0.0);
    let mut sum = prod;
    for (b, d) in den.iter().enumerate() {
        let beta = b as i64 + 1;
        prod *= w1inv / d;
        sum += rs.zeta(beta * beta) * prod;
    }
    Ok(g_prefactor(w0, &rs)? * sum.norm_sqr())
}

/// The diagonal part `N²|g(w0)|²/|g(1)|² · (1 + Σ_β ∏_{k≤β} 1/|1-w0ζ^k|²)`.
pub fn diagonal_subsum(w0: C64, n: usize) -> Result<f64> {
    check_odd(n)?;
    check_unit(w0, "w0")?;
    let rs = RootSystem::new(n)?;
    let den = denominators(w0, &rs)?;
    let mut prod = 1.0;
    let mut sum = 1.0;
    for d in &den {
        prod /= d.norm_sqr();
        sum += prod;
    }
    Ok(g_prefactor(w0, &rs)? * sum)
}

#[allow(clippy::too_many_arguments)]
fn simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 || !delta.is_finite() {
        return Err(Error::Invalid(format!("quadrature did not converge on [{a}, {b}]")));
    }
    Ok(simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

/// Adaptive Simpson quadrature of a smooth integrand.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `log(sin t / t)`, smooth at 0.
fn log_sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        -t * t / 6.0 - t.powi(4) / 180.0
    } else {
        (t.sin() / t).ln()
    }
}

/// The Lobachevsky function `Λ(θ) = -∫₀^θ log|2 sin t| dt` to quadrature
/// tolerance `tol`. The `log t` singularity is integrated in closed form.
pub fn lobachevsky_with_tol(theta: f64, tol: f64) -> Result<f64> {
    // Λ is odd and π-periodic
    let mut t = theta.rem_euclid(PI);
    if t > 0.5 * PI {
        t -= PI;
    }
    let (sign, t) = if t < 0.0 { (-1.0, -t) } else { (1.0, t) };
    if t == 0.0 {
        return Ok(0.0);
    }
    let singular = t * (2.0 * t).ln() - t;
    let smooth = integrate(log_sinc, 0.0, t, tol)?;
    Ok(-sign * (singular + smooth))
}

pub fn lobachevsky(theta: f64) -> Result<f64> {
    lobachevsky_with_tol(theta, 1e-13)
}

/// `6Λ(π/3)`, the volume of the figure-eight knot complement.
pub fn volume_oracle() -> Result<f64> {
    Ok(6.0 * lobachevsky(PI / 3.0)?)
}

/// `Λ(3θ) - 3(Λ(θ) + Λ(θ+π/3) + Λ(θ-π/3))`, which vanishes identically.
pub fn triplication_defect(theta: f64) -> Result<f64> {
    let l = lobachevsky;
    Ok(l(3.0 * theta)? - 3.0 * (l(theta)? + l(theta + PI / 3.0)? + l(theta - PI / 3.0)?))
}

/// A least-squares fit of `log⟨4₁⟩_N` against `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFit {
    pub samples: Vec<(usize, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl GrowthFit {
    /// Relative distance of the slope from `Vol/(2π)`.
    pub fn relative_error(&self, volume: f64) -> f64 {
        let target = volume / (2.0 * PI);
        (self.slope - target).abs() / target
    }

    /// `2π log⟨4₁⟩_N / N` per sample.
    pub fn pointwise(&self) -> Vec<(usize, f64)> {
        self.samples.iter().map(|&(n, v)| (n, 2.0 * PI * v / n as f64)).collect()
    }

    /// Whether the pointwise estimates decrease along the sweep.
    pub fn pointwise_decreasing(&self) -> bool {
        self.pointwise().windows(2).all(|w| w[1].1 < w[0].1)
    }

    /// Slope of the fit `log⟨4₁⟩_N ≈ aN + b log N + c`, which removes the
    /// leading correction to the linear growth.
    pub fn log_corrected_slope(&self) -> f64 {
        let rows: Vec<[f64; 3]> = self.samples.iter().map(|&(n, _)| [n as f64, (n as f64).ln(), 1.0]).collect();
        let ys: Vec<f64> = self.samples.iter().map(|s| s.1).collect();
        let a = nalgebra::DMatrix::from_fn(rows.len(), 3, |i, j| rows[i][j]);
        let y = nalgebra::DVector::from_vec(ys);
        let sol = a.svd(true, true).solve(&y, 1e-14).expect("svd with both factors");
        sol[0]
    }

    /// CSV with columns `N,value_log,two_pi_log_over_N`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,value_log,two_pi_log_over_N\n");
        for &(n, v) in &self.samples {
            out.push_str(&format!("{n},{v:.12},{:.12}\n", 2.0 * PI * v / n as f64));
        }
        out
    }
}

/// Odd `N` from `min` to `max` in steps of `step`.
pub fn odd_range(min: usize, max: usize, step: usize) -> Result<Vec<usize>> {
    if step == 0 || step % 2 == 1 || min.is_multiple_of(2) || min < 3 || max < min {
        return Err(Error::Invalid(format!(
            "need odd min ≥ 3, max ≥ min and an even positive step (got {min}..{max} by {step})"
        )));
    }
    Ok((min..=max).step_by(step).collect())
}

/// Evaluates the sweep in parallel and fits the log growth.
pub fn vc_sweep(ns: &[usize]) -> Result<GrowthFit> {
    if ns.len() < 5 {
        return Err(Error::Invalid(format!("a sweep needs at least 5 points, got {}", ns.len())));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Invalid("sweep points must be strictly increasing".into()));
    }
    let samples: Vec<(usize, f64)> =
        ns.par_iter().map(|&n| fig8_kashaev_log(n).map(|v| (n, v))).collect::<Result<_>>()?;
    let k = samples.len() as f64;
    let mx = samples.iter().map(|s| s.0 as f64).sum::<f64>() / k;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / k;
    let sxx: f64 = samples.iter().map(|s| (s.0 as f64 - mx).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|s| (s.0 as f64 - mx) * (s.1 - my)).sum();
    let syy: f64 = samples.iter().map(|s| (s.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(GrowthFit { samples, slope, intercept, r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!((fig8_kashaev(3).unwrap() - 13.0).abs() < 1e-12);
        assert!(fig8_kashaev(4).is_err());
        assert!((lobachevsky(0.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn log_sum_exp_is_stable() {
        assert!((log_sum_exp([1000.0, 1000.0]) - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }
}
