//! The su(1,1) star product from Barut-Girardello coherent states.
//!
//! In the positive discrete series with Bargmann index `k`,
//!
//! ```text
//! K₊|n⟩ = √((n+1)(n+2k)) |n+1⟩,  K₋|n⟩ = √(n(n+2k−1)) |n−1⟩,  K₃|n⟩ = (n+k)|n⟩
//! ```
//!
//! and `|z⟩` is the normalized eigenstate `K₋|z⟩ = z|z⟩`. Symbols are
//! `𝒜(z, z̄) = ⟨z|A|z⟩`: `K₋ ↦ z`, `K₊ ↦ z̄`, `2K₃ ↦ Θ_k`. The star product
//! `𝒜 ⋆ ℬ = ⟨z|AB|z⟩` has no closed kernel here and is evaluated on the
//! truncated number basis.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

use crate::fock::{FockOperator, FockSpace};
use crate::linalg::{self, CMatrix};
use crate::report::{Entry, VerificationReport};
use crate::specfun::{self, SeriesConfig};
use crate::{Error, Result};

/// Largest cutoff the escalation will reach.
pub const MAX_CUTOFF: usize = 512;

/// Starting cutoff for escalation.
pub const START_CUTOFF: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteSeriesRep {
    k: f64,
    cutoff: usize,
}

impl DiscreteSeriesRep {
    pub fn new(k: f64, cutoff: usize) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Domain { what: "Bargmann index", value: k });
        }
        if cutoff < 2 {
            return Err(Error::Cutoff { needed: 2, cutoff });
        }
        Ok(DiscreteSeriesRep { k, cutoff })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Result<Self> {
        Self::new(self.k, cutoff)
    }

    fn raise_elem(&self, n: usize) -> f64 {
        let n = n as f64;
        ((n + 1.0) * (n + 2.0 * self.k)).sqrt()
    }

    fn lower_elem(&self, n: usize) -> f64 {
        let n = n as f64;
        (n * (n + 2.0 * self.k - 1.0)).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrices {
    pub k_plus: FockOperator,
    pub k_minus: FockOperator,
    pub k3: FockOperator,
}

impl RepMatrices {
    /// Largest residual of `[K₃,K±] = ±K±` and `[K₋,K₊] = 2K₃` on the block
    /// below the cutoff edge.
    pub fn algebra_residual(&self) -> Result<f64> {
        let d = self.k3.space().cutoff() - 1;
        let kp = self.k_plus.matrix();
        let km = self.k_minus.matrix();
        let k3 = self.k3.matrix();
        let r1 = k3.commutator(kp)?.sub(kp)?.leading_block(d).max_abs();
        let r2 = k3.commutator(km)?.add(km)?.leading_block(d).max_abs();
        let r3 = km.commutator(kp)?.sub(&k3.scale(Complex64::new(2.0, 0.0)))?.leading_block(d).max_abs();
        Ok(r1.max(r2).max(r3))
    }
}

pub fn rep_matrices(rep: &DiscreteSeriesRep) -> Result<RepMatrices> {
    let d = rep.cutoff;
    let space = FockSpace::single(d)?;
    let mut kp = CMatrix::zeros(d, d);
    let mut km = CMatrix::zeros(d, d);
    let mut k3 = CMatrix::zeros(d, d);
    for n in 0..d {
        if n + 1 < d {
            kp[(n + 1, n)] = Complex64::new(rep.raise_elem(n), 0.0);
        }
        if n > 0 {
            km[(n - 1, n)] = Complex64::new(rep.lower_elem(n), 0.0);
        }
        k3[(n, n)] = Complex64::new(n as f64 + rep.k, 0.0);
    }
    Ok(RepMatrices {
        k_plus: FockOperator::new(space, kp)?,
        k_minus: FockOperator::new(space, km)?,
        k3: FockOperator::new(space, k3)?,
    })
}

/// `N(k, s)` with `N² = Γ(2k)/₀F₁(2k; s)`, `s = |z|²`.
pub fn bg_normalization(k: f64, s: f64) -> Result<f64> {
    let f = specfun::hyp0f1(2.0 * k, s, &SeriesConfig::default())?;
    Ok((0.5 * (specfun::log_gamma(2.0 * k)? - f.ln())).exp())
}

/// The Bessel form `|z|^{k−1/2}/√I_{2k−1}(2|z|)`.
pub fn bg_normalization_bessel(k: f64, r: f64) -> Result<f64> {
    if r == 0.0 {
        return Ok((0.5 * specfun::log_gamma(2.0 * k)?).exp());
    }
    let i = specfun::bessel_i(2.0 * k - 1.0, 2.0 * r)?;
    Ok(r.powf(k - 0.5) / i.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BGState {
    z: Complex64,
    rep: DiscreteSeriesRep,
    amplitudes: Vec<Complex64>,
    truncation_loss: f64,
}

impl BGState {
    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn rep(&self) -> DiscreteSeriesRep {
        self.rep
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    /// `‖(K₋ − z)|z⟩‖` on the truncated basis.
    pub fn eigen_residual(&self) -> f64 {
        let d = self.amplitudes.len();
        let mut sum = 0.0;
        for n in 0..d {
            let lowered = if n + 1 < d {
                self.amplitudes[n + 1] * self.rep.lower_elem(n + 1)
            } else {
                Complex64::new(0.0, 0.0)
            };
            sum += (lowered - self.z * self.amplitudes[n]).norm_sqr();
        }
        sum.sqrt()
    }
}

/// Barut-Girardello state with amplitudes `N z^n/√(n! Γ(n+2k))`, built in
/// log space. Fails when the norm lost to truncation exceeds `tol`.
pub fn bg_vector_with_tol(z: Complex64, rep: &DiscreteSeriesRep, tol: f64) -> Result<BGState> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain { what: "Barut-Girardello label", value: z.norm() });
    }
    let k = rep.k;
    let r = z.norm();
    let theta = z.arg();
    let ln_norm = bg_normalization(k, r * r)?.ln();
    let mut amps = Vec::with_capacity(rep.cutoff);
    for n in 0..rep.cutoff {
        if r == 0.0 {
            let v = if n == 0 { ln_norm.exp() / specfun::gamma(2.0 * k)?.sqrt() } else { 0.0 };
            amps.push(Complex64::new(v, 0.0));
            continue;
        }
        let nf = n as f64;
        let ln_mag = ln_norm + nf * r.ln() - 0.5 * (specfun::ln_factorial(n) + specfun::log_gamma(nf + 2.0 * k)?);
        amps.push(Complex64::from_polar(ln_mag.exp(), nf * theta));
    }
    let loss = (1.0 - linalg::norm_sqr(&amps)).max(0.0);
    if loss > tol {
        return Err(Error::Truncation { loss, tolerance: tol });
    }
    Ok(BGState { z, rep: *rep, amplitudes: amps, truncation_loss: loss })
}

pub fn bg_vector(z: Complex64, rep: &DiscreteSeriesRep) -> Result<BGState> {
    bg_vector_with_tol(z, rep, crate::fock::DEFAULT_LOSS_TOLERANCE)
}

/// `Θ_k(s) = 2k + (s/k) ₀F₁(2k+1; s)/₀F₁(2k; s)`.
pub fn theta(k: f64, s: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::Domain { what: "theta index", value: k });
    }
    if !(s >= 0.0) {
        return Err(Error::Domain { what: "theta argument", value: s });
    }
    let cfg = SeriesConfig::default();
    let num = specfun::hyp0f1(2.0 * k + 1.0, s, &cfg)?;
    let den = specfun::hyp0f1(2.0 * k, s, &cfg)?;
    Ok(2.0 * k + (s / k) * num / den)
}

/// Generators of the su(1,1) word algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    Plus,
    Minus,
    Three,
}

/// A polynomial in `K₊, K₋, K₃`: a sum of coefficient-weighted words, each
/// applied right to left like an operator product.
#[derive(Debug, Clone, PartialEq)]
pub struct Su11Expr {
    terms: Vec<(Complex64, Vec<Gen>)>,
}

impl Su11Expr {
    pub fn one() -> Self {
        Su11Expr { terms: vec![(Complex64::new(1.0, 0.0), Vec::new())] }
    }

    pub fn word(coeff: Complex64, word: Vec<Gen>) -> Self {
        Su11Expr { terms: vec![(coeff, word)] }
    }

    /// `K₋`, the operator with symbol `z`.
    pub fn z() -> Self {
        Self::word(Complex64::new(1.0, 0.0), vec![Gen::Minus])
    }

    /// `K₊`, the operator with symbol `z̄`.
    pub fn zbar() -> Self {
        Self::word(Complex64::new(1.0, 0.0), vec![Gen::Plus])
    }

    /// `2K₃`, the operator with symbol `Θ_k`.
    pub fn theta() -> Self {
        Self::word(Complex64::new(2.0, 0.0), vec![Gen::Three])
    }

    pub fn mul(&self, other: &Su11Expr) -> Su11Expr {
        let mut terms = Vec::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                terms.push((a * b, w));
            }
        }
        Su11Expr { terms }
    }

    pub fn add(&self, other: &Su11Expr) -> Su11Expr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Su11Expr { terms }
    }

    pub fn scale(&self, c: Complex64) -> Su11Expr {
        Su11Expr { terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Su11Expr {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Hermitian adjoint.
    pub fn adjoint(&self) -> Su11Expr {
        let terms = self
            .terms
            .iter()
            .map(|(c, w)| {
                let word = w
                    .iter()
                    .rev()
                    .map(|g| match g {
                        Gen::Plus => Gen::Minus,
                        Gen::Minus => Gen::Plus,
                        Gen::Three => Gen::Three,
                    })
                    .collect();
                (c.conj(), word)
            })
            .collect();
        Su11Expr { terms }
    }

    fn max_word(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    /// Applies the expression to `v` (padded so no intermediate step is cut).
    fn apply(&self, rep: &DiscreteSeriesRep, v: &[Complex64]) -> Vec<Complex64> {
        let len = v.len();
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (c, word) in &self.terms {
            let mut cur = v.to_vec();
            for g in word.iter().rev() {
                let mut next = vec![Complex64::new(0.0, 0.0); len];
                match g {
                    Gen::Plus => {
                        for n in 0..len - 1 {
                            next[n + 1] = cur[n] * rep.raise_elem(n);
                        }
                    }
                    Gen::Minus => {
                        for n in 1..len {
                            next[n - 1] = cur[n] * rep.lower_elem(n);
                        }
                    }
                    Gen::Three => {
                        for n in 0..len {
                            next[n] = cur[n] * (n as f64 + rep.k);
                        }
                    }
                }
                cur = next;
            }
            for (o, x) in out.iter_mut().zip(cur) {
                *o += c * x;
            }
        }
        out
    }
}

/// `⟨z|AB|z⟩` for the truncated Barut-Girardello state, as `(A⁺ψ)⁺(Bψ)`.
pub fn su11_star(a: &Su11Expr, b: &Su11Expr, state: &BGState) -> Complex64 {
    let pad = a.max_word().max(b.max_word());
    let mut v = state.amplitudes.clone();
    v.resize(v.len() + pad, Complex64::new(0.0, 0.0));
    let left = a.adjoint().apply(&state.rep, &v);
    let right = b.apply(&state.rep, &v);
    linalg::inner(&left, &right)
}

/// `⟨z|A|z⟩`.
pub fn su11_symbol(a: &Su11Expr, state: &BGState) -> Complex64 {
    su11_star(&Su11Expr::one(), a, state)
}

/// Doubles the cutoff from [`START_CUTOFF`] until `f` changes by at most
/// `tol` (relative to `max(1, |f|)`), up to `cap`. Returns the cutoff and value.
pub fn escalate(cap: usize, tol: f64, mut f: impl FnMut(usize) -> Result<f64>) -> Result<(usize, f64)> {
    let mut d = START_CUTOFF.min(cap);
    let mut prev = f(d)?;
    while 2 * d <= cap {
        let next = f(2 * d)?;
        if (next - prev).abs() <= tol * next.abs().max(1.0) {
            return Ok((2 * d, next));
        }
        prev = next;
        d *= 2;
    }
    Err(Error::Cutoff { needed: 2 * d, cutoff: cap })
}

/// Cutoff at which the Barut-Girardello states on `grid` are stable: the
/// eigenstate residual and `Σ⟨2K₃⟩` both settle to `1e-9`.
pub fn stable_cutoff(k: f64, grid: &[Complex64], cap: usize) -> Result<usize> {
    let (d, _) = escalate(cap, 1e-9, |d| {
        let rep = DiscreteSeriesRep::new(k, d)?;
        let mut total = 0.0;
        for &z in grid {
            let st = bg_vector_with_tol(z, &rep, 1.0)?;
            total += su11_symbol(&Su11Expr::theta(), &st).re;
            total += st.eigen_residual();
        }
        Ok(total)
    })?;
    Ok(d)
}

fn fmt_k(k: f64) -> String {
    format!("{k}")
}

/// `Θ_k(|z|²) = 2⟨z|K₃|z⟩` across `ks × grid`.
pub fn theta_oracle_check(ks: &[f64], grid: &[Complex64], cap: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("su11");
    for &k in ks {
        let d = stable_cutoff(k, grid, cap)?;
        let rep = DiscreteSeriesRep::new(k, d)?;
        let (mut err, mut resid, mut norm_err) = (0.0f64, 0.0f64, 0.0f64);
        for &z in grid {
            let st = bg_vector(z, &rep)?;
            let oracle = su11_symbol(&Su11Expr::theta(), &st);
            err = err.max((oracle - theta(k, z.norm_sqr())?).norm());
            resid = resid.max(st.eigen_residual());
            let a = bg_normalization(k, z.norm_sqr())?;
            let b = bg_normalization_bessel(k, z.norm())?;
            norm_err = norm_err.max((a - b).abs() / a);
        }
        report.record_cutoff(format!("su11.k={}", fmt_k(k)), d);
        report.push(Entry::check(format!("Eq.63.theta_vs_2K3[k={}]", fmt_k(k)), err, 1e-9));
        report.push(Entry::check(format!("Eq.58.eigen_residual[k={}]", fmt_k(k)), resid, 1e-8));
        report.push(Entry::claim(format!("Eq.58.normalization[k={}]", fmt_k(k)), norm_err, 1e-10));
    }
    Ok(report)
}

/// Eq. (62) both ways, the three brackets of Eq. (68), and commutativity of
/// analytic (resp. anti-analytic) products.
pub fn su11_moyal_check(k: f64, grid: &[Complex64], cap: usize) -> Result<VerificationReport> {
    let d = stable_cutoff(k, grid, cap)?;
    let rep = DiscreteSeriesRep::new(k, d)?;
    let (z, zb, th) = (Su11Expr::z(), Su11Expr::zbar(), Su11Expr::theta());
    let mut e = [0.0f64; 8];
    for &p in grid {
        let st = bg_vector(p, &rep)?;
        let s = p.norm_sqr();
        let t = theta(k, s)?;
        let zz = Complex64::new(s, 0.0);
        e[0] = e[0].max((su11_star(&zb, &z, &st) - zz).norm());
        e[1] = e[1].max((su11_star(&z, &zb, &st) - (zz + t)).norm());
        e[2] = e[2].max((su11_star(&z, &zb, &st) - (zz - t)).norm());
        let br = |a: &Su11Expr, b: &Su11Expr| su11_star(a, b, &st) - su11_star(b, a, &st);
        e[3] = e[3].max((br(&z, &zb) - t).norm());
        e[4] = e[4].max((br(&z, &th) - 2.0 * p).norm());
        e[5] = e[5].max((br(&zb, &th) + 2.0 * p.conj()).norm());
        for (pa, pb) in [(1u32, 2u32), (2, 3), (1, 4)] {
            let (za, zb_) = (z.pow(pa), z.pow(pb));
            let direct = p.powu(pa + pb);
            e[6] = e[6].max((su11_star(&za, &zb_, &st) - direct).norm());
            e[6] = e[6].max((su11_star(&zb_, &za, &st) - direct).norm());
            let (wa, wb) = (zb.pow(pa), zb.pow(pb));
            let direct = p.conj().powu(pa + pb);
            e[7] = e[7].max((su11_star(&wa, &wb, &st) - direct).norm());
            e[7] = e[7].max((su11_star(&wb, &wa, &st) - direct).norm());
        }
    }
    let kk = fmt_k(k);
    let mut report = VerificationReport::new("su11");
    report.record_cutoff(format!("su11.k={kk}"), d);
    report.push(Entry::claim(format!("Eq.62.zbar_star_z[k={kk}]"), e[0], 1e-8));
    report.push(
        Entry::check(format!("Eq.62.z_star_zbar.oracle[k={kk}]"), e[1], 1e-8)
            .with_notes("z⋆z̄ = z̄z + Θ_k"),
    );
    report.push(
        Entry::claim(format!("Eq.62.z_star_zbar.printed[k={kk}]"), e[2], 1e-8)
            .with_notes("printed z⋆z̄ = zz̄ − Θ_k"),
    );
    report.push(Entry::check(format!("Eq.68.z_zbar[k={kk}]"), e[3], 1e-8));
    report.push(Entry::check(format!("Eq.68.z_theta[k={kk}]"), e[4], 1e-8));
    report.push(Entry::check(format!("Eq.68.zbar_theta[k={kk}]"), e[5], 1e-8));
    report.push(Entry::check(format!("analytic_commutative[k={kk}]"), e[6], 1e-8));
    report.push(Entry::check(format!("antianalytic_commutative[k={kk}]"), e[7], 1e-8));
    Ok(report)
}

/// The printed relations (64)–(67) against the oracle, with the oracle's
/// closed forms `z̄⋆Θ = z̄Θ`, `Θ⋆z̄ = z̄Θ + 2z̄`, `Θ⋆z = zΘ`, `z⋆Θ = zΘ + 2z`.
pub fn theta_star_relations_check(k: f64, grid: &[Complex64], cap: usize) -> Result<VerificationReport> {
    let d = stable_cutoff(k, grid, cap)?;
    let rep = DiscreteSeriesRep::new(k, d)?;
    let (z, zb, th) = (Su11Expr::z(), Su11Expr::zbar(), Su11Expr::theta());
    let two_k = 2.0 * k;
    let mut printed = [0.0f64; 4];
    let mut closed = [0.0f64; 4];
    let (mut diff_6465, mut diff_6667, mut diff_6667_oracle) = (0.0f64, 0.0f64, 0.0f64);
    for &p in grid {
        let st = bg_vector(p, &rep)?;
        let t = theta(k, p.norm_sqr())?;
        let (pz, pzb) = (p, p.conj());
        let zb_th = su11_star(&zb, &th, &st);
        let th_zb = su11_star(&th, &zb, &st);
        let th_z = su11_star(&th, &z, &st);
        let z_th = su11_star(&z, &th, &st);
        printed[0] = printed[0].max((zb_th - (t + two_k * pzb - two_k)).norm());
        printed[1] = printed[1].max((th_zb - (t + (two_k + 2.0) * pzb - two_k)).norm());
        printed[2] = printed[2].max((th_z - (t + two_k * pz - two_k)).norm());
        printed[3] = printed[3].max((z_th - (t + (two_k + 2.0) * pzb - two_k)).norm());
        closed[0] = closed[0].max((zb_th - pzb * t).norm());
        closed[1] = closed[1].max((th_zb - (pzb * t + 2.0 * pzb)).norm());
        closed[2] = closed[2].max((th_z - pz * t).norm());
        closed[3] = closed[3].max((z_th - (pz * t + 2.0 * pz)).norm());
        // printed (64)−(65) gives −2z̄; printed (66)−(67) gives 2kz − (2k+2)z̄
        diff_6465 = diff_6465.max(((zb_th - th_zb) - (-2.0 * pzb)).norm());
        diff_6667 = diff_6667.max(((th_z - z_th) - (two_k * pz - (two_k + 2.0) * pzb)).norm());
        diff_6667_oracle = diff_6667_oracle.max(((th_z - z_th) + 2.0 * pz).norm());
    }
    let kk = fmt_k(k);
    let mut report = VerificationReport::new("su11");
    report.record_cutoff(format!("su11.k={kk}"), d);
    for (i, eq) in [64, 65, 66, 67].iter().enumerate() {
        report.push(Entry::claim(format!("Eq.{eq}.printed[k={kk}]"), printed[i], 1e-8));
    }
    let names = ["zbar_star_theta", "theta_star_zbar", "theta_star_z", "z_star_theta"];
    for (i, name) in names.iter().enumerate() {
        report.push(Entry::check(format!("{name}.oracle[k={kk}]"), closed[i], 1e-8));
    }
    report.push(Entry::claim(format!("Eq.64-65.difference[k={kk}]"), diff_6465, 1e-8));
    report.push(Entry::claim(format!("Eq.66-67.difference[k={kk}]"), diff_6667, 1e-8));
    report.push(
        Entry::check(format!("theta_z_commutator.oracle[k={kk}]"), diff_6667_oracle, 1e-8)
            .with_notes("Θ⋆z − z⋆Θ = −2z"),
    );
    Ok(report)
}

/// `Θ′ = 1 + (s′/k) ₀F₁(2k+1; 2ks′)/₀F₁(2k; 2ks′)`, i.e. `qΘ_k(|z′|²/q)` with
/// `q = 1/(2k)`.
pub fn contracted_theta(k: f64, s_prime: f64) -> Result<f64> {
    let q = 1.0 / (2.0 * k);
    Ok(q * theta(k, s_prime / q)?)
}

/// Largest `|Θ′ − 1|` over `radii` (values of `|z′|`).
pub fn contraction_check(k: f64, radii: &[f64], tol: f64) -> Result<VerificationReport> {
    if !(k > 0.0) {
        return Err(Error::Domain { what: "contraction index", value: k });
    }
    let mut dev: f64 = 0.0;
    for &r in radii {
        dev = dev.max((contracted_theta(k, r * r)? - 1.0).abs());
    }
    let at_zero = (contracted_theta(k, 0.0)? - 1.0).abs();
    let mut report = VerificationReport::new("su11");
    report.push(Entry::check(format!("Eq.71.contraction[k={}]", fmt_k(k)), dev, tol));
    report.push(Entry::check(format!("Eq.71.origin[k={}]", fmt_k(k)), at_zero, 1e-15));
    Ok(report)
}
