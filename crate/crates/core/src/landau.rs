//! Landau-level wavefunctions and their identification with the matrix
//! elements `⟨k+l|z,k⟩` of displaced number states.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

use crate::fock;
use crate::report::{Entry, VerificationReport};
use crate::specfun::{self, GaussLaguerre};
use crate::symbol::{ExactComplex, Monomial, PhaseSymbol};
use crate::{Error, Result};

/// `Φ_{k,l}` of level `k`: analytic for `l ≥ 0`, anti-analytic for
/// `−k ≤ l < 0` (where it is the function printed as `Φ_{k,k+l}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LandauFunction {
    k: usize,
    l: i64,
}

impl LandauFunction {
    pub fn new(k: usize, l: i64) -> Result<Self> {
        if l < -(k as i64) {
            return Err(Error::Domain { what: "orbital index l < -k", value: l as f64 });
        }
        Ok(LandauFunction { k, l })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    /// Row `k + l` of the matrix element `⟨k+l|z,k⟩`.
    pub fn row(&self) -> usize {
        (self.k as i64 + self.l) as usize
    }

    /// `(p, α)` with `Φ = e^{−|z|²/2} w^{|l|} L_p^α(|z|²)`, `w` = `z` or `z̄`.
    fn laguerre_indices(&self) -> (usize, usize) {
        let a = self.l.unsigned_abs() as usize;
        if self.l >= 0 {
            (self.k, a)
        } else {
            (self.row(), a)
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let s = z.norm_sqr();
        let (p, a) = self.laguerre_indices();
        let w = if self.l >= 0 { z } else { z.conj() };
        w.powu(a as u32) * (specfun::laguerre_l(p, a as f64, s) * (-0.5 * s).exp())
    }

    /// Prefactor of `⟨k+l|z,k⟩` as printed: `(−)^l √((k+l)!/k!)` for
    /// `l ≥ 0`, `√(k!/(k+l)!)` for `l < 0`.
    pub fn printed_prefactor(&self) -> f64 {
        let (k, n) = (self.k, self.row());
        if self.l >= 0 {
            let sign = if self.l % 2 == 0 { 1.0 } else { -1.0 };
            sign * (0.5 * (specfun::ln_factorial(n) - specfun::ln_factorial(k))).exp()
        } else {
            (0.5 * (specfun::ln_factorial(k) - specfun::ln_factorial(n))).exp()
        }
    }

    /// `∫|Φ|² d²z/π`: `(k+l)!/k!` for `l ≥ 0`, `k!/(k+l)!` otherwise.
    pub fn norm_sqr(&self) -> f64 {
        (specfun::ln_factorial(self.row()) - specfun::ln_factorial(self.k)).abs().exp()
    }

    /// The polynomial part `w^{|l|} L_p^α(z̄z)` as an exact symbol.
    pub fn polynomial_part(&self) -> Result<PhaseSymbol<ExactComplex>> {
        let (p, a) = self.laguerre_indices();
        let mut terms = Vec::with_capacity(p + 1);
        // L_p^α(x) = Σ_j (−1)^j C(p+α, p−j) x^j / j!
        for j in 0..=p {
            let mut c = BigRational::new(binomial(p + a, p - j), factorial(j));
            if j % 2 == 1 {
                c = -c;
            }
            let (m, n) = if self.l >= 0 { (j, j + a) } else { (j + a, j) };
            terms.push((Monomial::new(vec![m as u32], vec![n as u32])?, ExactComplex::new(c, BigRational::zero())));
        }
        PhaseSymbol::from_terms(1, terms)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `Φ_{k,l}(z)` by direct evaluation.
pub fn landau_phi(k: usize, l: i64, z: Complex64) -> Result<Complex64> {
    Ok(LandauFunction::new(k, l)?.eval(z))
}

/// The best `c`, `|c| = 1`, minimising `max |a_i − c b_i|`, taken as the
/// phase of `Σ b̄_i a_i`, and the resulting deviation.
pub fn align_phase(a: &[Complex64], b: &[Complex64]) -> (Complex64, f64) {
    let overlap: Complex64 = a.iter().zip(b).map(|(x, y)| y.conj() * x).sum();
    let c = if overlap.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { overlap / overlap.norm() };
    let dev = a.iter().zip(b).map(|(x, y)| (x - c * y).norm()).fold(0.0, f64::max);
    (c, dev)
}

fn phase_label(c: Complex64) -> alloc::string::String {
    format!("phase = {:.6}π", c.arg() / core::f64::consts::PI)
}

/// Eqs. (29)–(30) at one `(k, l)` on `grid`. The matrix element is taken
/// both from the closed-form displaced number vector and from the matrix
/// exponential of `z a⁺ − z̄ a`.
pub fn identification_check(k: usize, l: i64, grid: &[Complex64], cutoff: usize) -> Result<VerificationReport> {
    let f = LandauFunction::new(k, l)?;
    let row = f.row();
    let pre = f.printed_prefactor();
    let mut phi = Vec::with_capacity(grid.len());
    let mut closed = Vec::with_capacity(grid.len());
    let mut expm = Vec::with_capacity(grid.len());
    for &z in grid {
        phi.push(f.eval(z));
        let v = fock::displaced_number_vector(&[z], &[k], cutoff)?;
        closed.push(v.amplitudes()[row] * pre);
        let w = fock::displaced_number_vector_by_expm(&[z], &[k], cutoff)?;
        expm.push(w.amplitudes()[row] * pre);
    }
    let (c, dev) = align_phase(&phi, &closed);
    let (c2, dev2) = align_phase(&phi, &expm);
    let printed = phi.iter().zip(&closed).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };

    let eq = if l >= 0 { 29 } else { 30 };
    let tag = format!("k={k},l={l}");
    let mut report = VerificationReport::new("landau");
    report.push(Entry::check(format!("Eq.{eq}.modulo_phase[{tag}]"), dev, 1e-10).with_notes(phase_label(c)));
    report.push(Entry::check(format!("Eq.{eq}.expm_oracle[{tag}]"), dev2, 1e-10).with_notes(phase_label(c2)));
    report.push(
        Entry::check(format!("Eq.{eq}.phase_is_(-1)^l[{tag}]"), (c - sign).norm(), 1e-10).with_notes(phase_label(c)),
    );
    report.push(Entry::claim(format!("Eq.{eq}.as_printed[{tag}]"), printed, 1e-10));
    Ok(report)
}

/// `∫ Φ̄_{k,l} Φ_{k,l′} d²z/π` by Gauss-Laguerre in `|z|²` and uniform
/// angular nodes.
pub fn overlap(a: &LandauFunction, b: &LandauFunction, radial_nodes: usize, angular_nodes: usize) -> Result<Complex64> {
    let rule = GaussLaguerre::new(radial_nodes, 0.0)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let r = s.sqrt();
        let mut ang = Complex64::new(0.0, 0.0);
        for j in 0..angular_nodes {
            let z = Complex64::from_polar(r, 2.0 * core::f64::consts::PI * j as f64 / angular_nodes as f64);
            ang += a.eval(z).conj() * b.eval(z);
        }
        // d²z/π = ½ ds dθ/π, and the rule carries e^{−s}
        acc += ang / angular_nodes as f64 * w * s.exp();
    }
    Ok(acc)
}

/// Orthogonality within level `k` and the norms `∫|Φ_{k,l}|² d²z/π`.
pub fn degeneracy_check(k: usize, l_max: i64) -> Result<VerificationReport> {
    let fs: Vec<LandauFunction> =
        (-(k as i64)..=l_max).map(|l| LandauFunction::new(k, l)).collect::<Result<_>>()?;
    let nodes = 2 * (k + l_max as usize) + 8;
    let angular = 4 * (k + l_max as usize) + 8;
    let (mut off, mut norm) = (0.0f64, 0.0f64);
    for a in &fs {
        for b in &fs {
            let v = overlap(a, b, nodes, angular)?;
            if a.l == b.l {
                norm = norm.max((v.re - a.norm_sqr()).abs() / a.norm_sqr());
            } else {
                off = off.max(v.norm());
            }
        }
    }
    let mut report = VerificationReport::new("landau");
    report.push(Entry::check(format!("landau.orthogonality[k={k}]"), off, 1e-8));
    report.push(
        Entry::check(format!("landau.norm[k={k}]"), norm, 1e-8)
            .with_notes("relative to (k+l)!/k! for l >= 0 and k!/(k+l)! for l < 0"),
    );
    Ok(report)
}

/// Every identification and degeneracy check for `k ≤ k_max`, `−k ≤ l ≤ l_max`.
pub fn verify(k_max: usize, l_max: i64, grid: &[Complex64], cutoff: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("landau");
    report.record_cutoff("landau.fock", cutoff);
    for k in 0..=k_max {
        for l in -(k as i64)..=l_max {
            report.extend(identification_check(k, l, grid, cutoff)?);
        }
        report.extend(degeneracy_check(k, l_max)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{ExtendedStarContext, StarProduct};
    use crate::report::Status;
    use crate::symbol::SamplePoint;

    fn grid() -> Vec<Complex64> {
        (0..12).map(|i| Complex64::from_polar(0.15 + 0.1 * i as f64, 1.3 * i as f64)).collect()
    }

    #[test]
    fn phi_examples() {
        let z = Complex64::new(0.3, -0.7);
        let v = landau_phi(0, 0, z).unwrap();
        assert!((v.re - (-0.5 * z.norm_sqr()).exp()).abs() < 1e-15 && v.im == 0.0);
        assert!(landau_phi(1, 0, Complex64::new(1.0, 0.0)).unwrap().norm() < 1e-15);
        // e^{-1/8} · 0.5 · L_2^1(1/4)
        let v = landau_phi(2, 1, Complex64::new(0.5, 0.0)).unwrap();
        assert!((v.re - 1.006598029510554).abs() < 1e-14, "{v}");
        assert!(landau_phi(1, -2, z).is_err());
    }

    #[test]
    fn identification_examples() {
        for (k, l) in [(1, 2), (2, -1), (3, 0), (0, 3), (3, -3)] {
            let rep = identification_check(k, l, &grid(), 48).unwrap();
            assert_eq!(rep.entries[0].status, Status::Pass, "{rep:?}");
            assert_eq!(rep.entries[1].status, Status::Pass, "{rep:?}");
            assert_eq!(rep.entries[2].status, Status::Pass, "{rep:?}");
            let printed = if l % 2 == 0 { Status::Pass } else { Status::PaperDiscrepancy };
            assert_eq!(rep.entries[3].status, printed);
        }
        let z = Complex64::new(0.4, 0.2);
        let v = fock::displaced_number_vector(&[z], &[2], 40).unwrap();
        assert!((landau_phi(2, 0, z).unwrap() - v.amplitudes()[2]).norm() < 1e-15);
    }

    #[test]
    fn degeneracy() {
        for k in 0..=3 {
            let rep = degeneracy_check(k, 3).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn polynomial_part_matches_eval() {
        let z = Complex64::new(-0.35, 0.6);
        for (k, l) in [(2, 1), (3, -2), (1, 0)] {
            let f = LandauFunction::new(k, l).unwrap();
            let poly = f.polynomial_part().unwrap().to_complex().eval(&SamplePoint::single(z)).unwrap();
            let want = f.eval(z) / (-0.5 * z.norm_sqr()).exp();
            assert!((poly - want).norm() < 1e-13);
        }
        // exploratory ⋆_k product of two level-1 polynomial parts
        let ctx = ExtendedStarContext::new(vec![1], 4);
        let a = LandauFunction::new(1, 1).unwrap().polynomial_part().unwrap();
        let b = LandauFunction::new(1, -1).unwrap().polynomial_part().unwrap();
        assert!(!ctx.star(&a, &b).unwrap().is_zero());
    }
}
