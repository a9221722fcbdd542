//! Special-function kernel: generalized Laguerre polynomials, the confluent
//! hypergeometric limit function ₀F₁, modified Bessel functions of the first
//! kind, log-Gamma and Gauss-Laguerre quadrature.
//!
//! Everything here works on real arguments. The star-product code only ever
//! feeds these functions squared moduli `|z|²`, which are non-negative.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};

/// Truncation controls for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { rel_tol: 1e-14, max_terms: 500 }
    }
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::Domain { what: "SeriesConfig::rel_tol", value: rel_tol });
        }
        if max_terms == 0 {
            return Err(Error::Domain { what: "SeriesConfig::max_terms", value: 0.0 });
        }
        Ok(SeriesConfig { rel_tol, max_terms })
    }
}

/// Arguments of a generalized Laguerre polynomial `L_n^α(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreSpec {
    pub n: usize,
    pub alpha: f64,
    pub x: f64,
}

/// `L_n^α(x)` by the three-term recurrence, starting from `L_0 = 1` and
/// `L_1 = 1 + α − x`.
pub fn laguerre(spec: LaguerreSpec) -> f64 {
    laguerre_l(spec.n, spec.alpha, spec.x)
}

/// Shorthand for [`laguerre`].
pub fn laguerre_l(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `₀F₁(; b; x) = Σ xᵐ / ((b)ₘ m!)`.
pub fn hyp0f1(b: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Domain { what: "hyp0f1 parameter b", value: b });
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 0..cfg.max_terms {
        let mf = m as f64;
        let ratio = x / ((b + mf) * (mf + 1.0));
        term *= ratio;
        sum += term;
        // Terms can grow before they shrink; only stop once they are decaying.
        if term.abs() <= cfg.rel_tol * sum.abs() && ratio.abs() < 1.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { what: "hyp0f1", terms: cfg.max_terms })
}

/// Modified Bessel function `I_ν(y) = (y/2)^ν / Γ(ν+1) · ₀F₁(ν+1; y²/4)`.
pub fn bessel_i(nu: f64, y: f64) -> Result<f64> {
    if y < 0.0 {
        return Err(Error::Domain { what: "bessel_i argument", value: y });
    }
    if nu <= -1.0 {
        return Err(Error::Domain { what: "bessel_i order", value: nu });
    }
    let series = hyp0f1(nu + 1.0, 0.25 * y * y, &SeriesConfig::default())?;
    if y == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let log_prefactor = nu * (0.5 * y).ln() - log_gamma(nu + 1.0)?;
    Ok(log_prefactor.exp() * series)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7, with reflection below 1/2).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain { what: "log_gamma", value: x });
    }
    Ok(log_gamma_positive(x))
}

fn log_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx), with sin(πx) > 0 on (0, 1/2).
        let pi = core::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - log_gamma_positive(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * core::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x).map(Float::exp)
}

/// `n!` as a float; exact up to `n = 22`.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `ln n!`.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        log_gamma_positive(n as f64 + 1.0)
    }
}

/// Nodes and weights of the generalized Gauss-Laguerre rule with weight
/// `t^α e^{−t}` on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLaguerre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLaguerre {
    /// Newton iteration on `L_n^α` from asymptotic starting guesses.
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain { what: "gauss_laguerre node count", value: 0.0 });
        }
        if alpha <= -1.0 {
            return Err(Error::Domain { what: "gauss_laguerre alpha", value: alpha });
        }
        let nf = n as f64;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let log_norm = log_gamma_positive(alpha + nf) - log_gamma_positive(nf);
        let mut z: f64 = 0.0;
        for i in 0..n {
            if i == 0 {
                z = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha);
            } else if i == 1 {
                z += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf);
            } else {
                let ai = (i - 1) as f64;
                z += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                    * (z - nodes[i - 2])
                    / (1.0 + 0.3 * alpha);
            }
            let mut converged = false;
            let (mut p2, mut pp) = (0.0, 0.0);
            for _ in 0..200 {
                let mut p1 = 1.0;
                p2 = 0.0;
                for j in 0..n {
                    let jf = j as f64;
                    let p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * jf + 1.0 + alpha - z) * p2 - (jf + alpha) * p3) / (jf + 1.0);
                }
                pp = (nf * p1 - (nf + alpha) * p2) / z;
                let z_old = z;
                z = z_old - p1 / pp;
                if (z - z_old).abs() <= 1e-15 * z.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NonConvergence { what: "gauss_laguerre root", terms: 200 });
            }
            nodes[i] = z;
            weights[i] = -log_norm.exp() / (pp * nf * p2);
        }
        Ok(GaussLaguerre { nodes, weights })
    }

    /// `∫₀^∞ t^α e^{−t} f(t) dt`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> f64 {
        factorial(n) / (factorial(k) * factorial(n - k))
    }

    // Explicit sum L_n^α(x) = Σ_j (−1)^j C(n+α, n−j) x^j / j!, integer α only.
    fn laguerre_explicit(n: usize, alpha: usize, x: f64) -> f64 {
        (0..=n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom(n + alpha, n - j) * x.powi(j as i32) / factorial(j)
            })
            .sum()
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(LaguerreSpec { n: 0, alpha: 3.0, x: 7.2 }), 1.0);
        assert_eq!(laguerre_l(1, 0.0, 1.0), 0.0);
        assert!((laguerre_l(2, 0.0, 1.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn laguerre_matches_explicit_sum() {
        for n in 0..12 {
            for alpha in 0..4 {
                for &x in &[0.0, 0.3, 1.7, 4.0] {
                    let a = laguerre_l(n, alpha as f64, x);
                    let b = laguerre_explicit(n, alpha, x);
                    assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "n={n} α={alpha} x={x}");
                }
            }
        }
    }

    #[test]
    fn laguerre_recurrence_residual() {
        for &alpha in &[-0.5, 0.0, 1.0, 2.5] {
            for &x in &[-20.0, -3.0, 0.0, 0.7, 5.0, 20.0] {
                for n in 1..30 {
                    let lm = laguerre_l(n - 1, alpha, x);
                    let l0 = laguerre_l(n, alpha, x);
                    let lp = laguerre_l(n + 1, alpha, x);
                    let nf = n as f64;
                    let terms = [(nf + 1.0) * lp, (2.0 * nf + 1.0 + alpha - x) * l0, (nf + alpha) * lm];
                    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs())).max(1e-300);
                    let residual = terms[0] - terms[1] + terms[2];
                    assert!(residual.abs() <= 1e-12 * scale, "n={n} α={alpha} x={x}");
                }
            }
        }
    }

    #[test]
    fn hyp0f1_examples() {
        let cfg = SeriesConfig::default();
        assert_eq!(hyp0f1(4.0, 0.0, &cfg).unwrap(), 1.0);
        // Oracle: 30 partial sums of Σ 1/(m!)².
        let oracle: f64 = (0..30).map(|m| 1.0 / (factorial(m) * factorial(m))).sum();
        let value = hyp0f1(1.0, 1.0, &cfg).unwrap();
        assert!((value - oracle).abs() < 1e-14);
        assert!((value - 2.279_585_302_336_067).abs() < 1e-14);
        // I_2(4) = (4/Γ(3))·₀F₁(3; 4) since (y/2)^ν = 2² and y²/4 = 4.
        let f = hyp0f1(3.0, 4.0, &cfg).unwrap();
        let i2 = bessel_i(2.0, 4.0).unwrap();
        assert!((i2 - 4.0 / 2.0 * f).abs() < 1e-12 * i2);
    }

    #[test]
    fn hyp0f1_rejects_poles_and_reports_budget() {
        assert!(matches!(
            hyp0f1(-2.0, 1.0, &SeriesConfig::default()),
            Err(Error::Domain { .. })
        ));
        let tight = SeriesConfig::new(1e-14, 3).unwrap();
        assert!(matches!(hyp0f1(1.0, 50.0, &tight), Err(Error::NonConvergence { .. })));
        assert!(SeriesConfig::new(0.0, 10).is_err());
        assert!(SeriesConfig::new(1e-3, 0).is_err());
    }

    #[test]
    fn hyp0f1_contiguous_relation() {
        let cfg = SeriesConfig::default();
        for &b in &[1.5, 2.0, 3.7, 6.0] {
            for &x in &[0.1, 1.0, 4.0, 12.0] {
                let lhs = hyp0f1(b - 1.0, x, &cfg).unwrap() - hyp0f1(b, x, &cfg).unwrap();
                let rhs = x / (b * (b - 1.0)) * hyp0f1(b + 1.0, x, &cfg).unwrap();
                assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs(), "b={b} x={x}");
            }
        }
    }

    #[test]
    fn bessel_examples() {
        assert_eq!(bessel_i(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1.0, 0.0).unwrap(), 0.0);
        assert!((bessel_i(1.0, 2.0).unwrap() - 1.590_636_854_637_329).abs() < 1e-13);
        assert!(bessel_i(1.0, -1.0).is_err());
    }

    #[test]
    fn bessel_matches_integral_representation() {
        // I_n(y) = (1/π) ∫₀^π e^{y cos θ} cos(nθ) dθ, trapezoid on a periodic integrand.
        let steps = 400;
        for nu in 0..5 {
            for &y in &[0.5, 1.0, 2.0, 3.5, 6.0] {
                let h = core::f64::consts::PI / steps as f64;
                let mut sum = 0.0;
                for j in 0..=steps {
                    let theta = j as f64 * h;
                    let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
                    sum += w * (y * theta.cos()).exp() * (nu as f64 * theta).cos();
                }
                let oracle = sum * h / core::f64::consts::PI;
                let value = bessel_i(nu as f64, y).unwrap();
                assert!((value - oracle).abs() < 1e-8, "ν={nu} y={y}");
            }
        }
    }

    #[test]
    fn log_gamma_examples() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-13);
        let sqrt_pi_ln = 0.5 * core::f64::consts::PI.ln();
        assert!((log_gamma(0.5).unwrap() - sqrt_pi_ln).abs() < 1e-14);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
    }

    #[test]
    fn log_gamma_matches_libm() {
        let mut x = 0.01;
        while x < 180.0 {
            let ours = log_gamma(x).unwrap();
            let reference = libm::lgamma(x);
            assert!((ours - reference).abs() <= 1e-12 * reference.abs().max(1.0), "x={x}");
            x *= 1.37;
        }
    }

    #[test]
    fn gauss_laguerre_integrates_moments() {
        for &alpha in &[0.0, 0.5, 2.0] {
            let rule = GaussLaguerre::new(12, alpha).unwrap();
            for p in 0..20 {
                let exact = gamma(p as f64 + alpha + 1.0).unwrap();
                let value = rule.integrate(|t| t.powi(p));
                assert!((value - exact).abs() <= 1e-11 * exact, "α={alpha} p={p}");
            }
        }
    }
}
