//! Star products on the Weyl-Heisenberg algebra.
//!
//! Both products here are bidifferential operators of the form
//!
//! ```text
//! f ⋆ g = Σ_{p⃗} Π_i w_i(p_i) (∂_{z_i}^{p_i} f)(∂_{z̄_i}^{p_i} g)
//! ```
//!
//! with `w(p) = 1/p!` for the Voros product and `w_i(p) = I_{k_i,p}` for the
//! product built from the displaced number states `D(z)|k⟩`. On polynomial
//! symbols the sum is finite, so both products are computed exactly.
//!
//! The extended coefficients are the radial moments
//! `I_{k,p} = (1/p!²) ∫₀^∞ t^p e^{−t} L_k(t)² dt` of the squared overlap of two
//! displaced number states. [`icoeff`] evaluates them exactly from the
//! Laguerre expansion and [`icoeff_quadrature`] independently by Gauss-Laguerre
//! quadrature. [`icoeff_as_printed`] keeps the closed form without the `1/j!`
//! Laguerre weights, which only matches for `k ≤ 1`.
//!
//! The extended product is not associative for `k > 0`, and it is not the
//! operator-product symbol `⟨z,k|O₁O₂|z,k⟩` either; see
//! [`crate::fock::star_oracle`].

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::specfun::{laguerre_l, GaussLaguerre};
use crate::symbol::{Coeff, Monomial, PhaseSymbol, SamplePoint};

fn big_factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn big_binomial(n: u64, k: u64) -> BigInt {
    big_factorial(n) / (big_factorial(k) * big_factorial(n - k))
}

/// `I_{k,p} = Σ_{j,j'=0}^{k} (p+j+j')!/(p!)² (−1)^{j+j'} C(k,j) C(k,j') / (j! j'!)`,
/// in exact arithmetic.
///
/// `I_{0,p} = 1/p!`, `I_{k,0} = 1` and `I_{k,1} = 2k + 1`.
pub fn icoeff(k: u32, p: u32) -> BigRational {
    let (k, p) = (u64::from(k), u64::from(p));
    let pf = big_factorial(p);
    let mut acc = BigRational::zero();
    for j in 0..=k {
        for jp in 0..=k {
            let num = big_factorial(p + j + jp) * big_binomial(k, j) * big_binomial(k, jp);
            let den = &pf * &pf * big_factorial(j) * big_factorial(jp);
            let term = BigRational::new(num, den);
            if (j + jp) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc
}

/// The double sum with binomial weights `C(k,k−j) C(k,k−j')` only (no `1/j!`
/// factors). Equal to [`icoeff`] for `k ≤ 1` and larger for `k ≥ 2`.
pub fn icoeff_as_printed(k: u32, p: u32) -> BigRational {
    let (k, p) = (u64::from(k), u64::from(p));
    let pf = big_factorial(p);
    let mut acc = BigRational::zero();
    for j in 0..=k {
        for jp in 0..=k {
            let num = big_factorial(p + j + jp) * big_binomial(k, k - j) * big_binomial(k, k - jp);
            let term = BigRational::new(num, &pf * &pf);
            if (j + jp) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc
}

/// `(1/p!²) ∫₀^∞ t^p e^{−t} L_k(t)² dt` by `quad_nodes`-point Gauss-Laguerre.
pub fn icoeff_quadrature(k: u32, p: u32, quad_nodes: usize) -> Result<f64> {
    if quad_nodes < (k + p + 1) as usize {
        return Err(Error::Domain { what: "icoeff_quadrature node count", value: quad_nodes as f64 });
    }
    let rule = GaussLaguerre::new(quad_nodes, 0.0)?;
    let pf = crate::specfun::factorial(p as usize);
    let value = rule.integrate(|t| {
        let l = laguerre_l(k as usize, 0.0, t);
        t.powi(p as i32) * l * l
    });
    Ok(value / (pf * pf))
}

/// `I_{k,p}` for `p = 0..=p_max`, exact and as floats.
#[derive(Debug, Clone, PartialEq)]
pub struct StarCoeffTable {
    k: u32,
    exact: Vec<BigRational>,
    float: Vec<f64>,
}

impl StarCoeffTable {
    pub fn new(k: u32, p_max: u32) -> Self {
        let exact: Vec<BigRational> = (0..=p_max).map(|p| icoeff(k, p)).collect();
        let float = exact.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        StarCoeffTable { k, exact, float }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p_max(&self) -> u32 {
        (self.exact.len() - 1) as u32
    }

    pub fn exact(&self, p: u32) -> Option<&BigRational> {
        self.exact.get(p as usize)
    }

    pub fn float(&self, p: u32) -> Option<f64> {
        self.float.get(p as usize).copied()
    }

    pub fn exact_values(&self) -> &[BigRational] {
        &self.exact
    }

    pub fn float_values(&self) -> &[f64] {
        &self.float
    }
}

/// A bidifferential star product `Σ_p w_i(p) ←∂^p_{z_i} →∂^p_{z̄_i}`.
pub trait StarProduct {
    /// Weight `w_mode(p)` of the `p`-th order contraction on `mode`.
    fn weight(&self, mode: usize, p: u32) -> BigRational;

    /// Mode count this product is tied to, if any.
    fn modes(&self) -> Option<usize> {
        None
    }

    fn star<C: Coeff>(&self, f: &PhaseSymbol<C>, g: &PhaseSymbol<C>) -> Result<PhaseSymbol<C>> {
        if f.modes() != g.modes() {
            return Err(Error::ModeMismatch { left: f.modes(), right: g.modes() });
        }
        if let Some(n) = self.modes() {
            if n != f.modes() {
                return Err(Error::ModeMismatch { left: n, right: f.modes() });
            }
        }
        let modes = f.modes();
        let p_limits: Vec<u32> = (0..modes).map(|i| f.z_degree(i).min(g.zbar_degree(i))).collect();
        let weights: Vec<Vec<C>> = (0..modes)
            .map(|i| (0..=p_limits[i]).map(|p| C::from_ratio(&self.weight(i, p))).collect())
            .collect();
        let mut out = PhaseSymbol::zero(modes);
        let mut p = vec![0u32; modes];
        for (mf, cf) in f.terms() {
            for (mg, cg) in g.terms() {
                let limits: Vec<u32> = (0..modes)
                    .map(|i| mf.z_exponents()[i].min(mg.zbar_exponents()[i]))
                    .collect();
                let base = cf.clone() * cg.clone();
                p.iter_mut().for_each(|x| *x = 0);
                loop {
                    let mut c = base.clone();
                    let mut m = Vec::with_capacity(modes);
                    let mut n = Vec::with_capacity(modes);
                    for i in 0..modes {
                        let (nf, mgi) = (mf.z_exponents()[i], mg.zbar_exponents()[i]);
                        c = c * weights[i][p[i] as usize].clone();
                        if p[i] > 0 {
                            c = c * C::falling(nf, p[i]) * C::falling(mgi, p[i]);
                        }
                        m.push(mf.zbar_exponents()[i] + mgi - p[i]);
                        n.push(nf - p[i] + mg.z_exponents()[i]);
                    }
                    out.accumulate(Monomial::new(m, n)?, c);
                    // Odometer over 0 ≤ p_i ≤ limits_i.
                    let mut i = 0;
                    loop {
                        if i == modes {
                            break;
                        }
                        if p[i] < limits[i] {
                            p[i] += 1;
                            break;
                        }
                        p[i] = 0;
                        i += 1;
                    }
                    if i == modes {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The Voros product `exp(Σ_i ←∂_{z_i} →∂_{z̄_i})`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Voros;

impl StarProduct for Voros {
    fn weight(&self, _mode: usize, p: u32) -> BigRational {
        BigRational::new(BigInt::one(), big_factorial(u64::from(p)))
    }
}

/// Product `⋆_k⃗ = Π_i ⋆_{k_i}` built from displaced number states `|z⃗, k⃗⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedStarContext {
    kvec: Vec<u32>,
    tables: Vec<StarCoeffTable>,
}

impl ExtendedStarContext {
    /// Precomputes `I_{k_i,p}` up to `p_max`; larger orders are computed on
    /// demand.
    pub fn new(kvec: Vec<u32>, p_max: u32) -> Self {
        let tables = kvec.iter().map(|&k| StarCoeffTable::new(k, p_max)).collect();
        ExtendedStarContext { kvec, tables }
    }

    pub fn kvec(&self) -> &[u32] {
        &self.kvec
    }

    pub fn table(&self, mode: usize) -> &StarCoeffTable {
        &self.tables[mode]
    }

    /// `I_{k⃗,N} = Π_i I_{k_i,0}`.
    pub fn i_kn(&self) -> BigRational {
        self.kvec.iter().fold(BigRational::one(), |acc, &k| acc * icoeff(k, 0))
    }
}

impl StarProduct for ExtendedStarContext {
    fn weight(&self, mode: usize, p: u32) -> BigRational {
        match self.tables[mode].exact(p) {
            Some(v) => v.clone(),
            None => icoeff(self.kvec[mode], p),
        }
    }

    fn modes(&self) -> Option<usize> {
        Some(self.kvec.len())
    }
}

pub fn voros_star<C: Coeff>(f: &PhaseSymbol<C>, g: &PhaseSymbol<C>) -> Result<PhaseSymbol<C>> {
    Voros.star(f, g)
}

pub fn extended_star<C: Coeff>(
    f: &PhaseSymbol<C>,
    g: &PhaseSymbol<C>,
    ctx: &ExtendedStarContext,
) -> Result<PhaseSymbol<C>> {
    ctx.star(f, g)
}

/// Star commutator `f ⋆ g − g ⋆ f`.
pub fn moyal_bracket<C: Coeff, P: StarProduct>(
    f: &PhaseSymbol<C>,
    g: &PhaseSymbol<C>,
    product: &P,
) -> Result<PhaseSymbol<C>> {
    product.star(f, g)?.checked_sub(&product.star(g, f)?)
}

/// `(f ⋆ g) ⋆ h − f ⋆ (g ⋆ h)`; zero exactly when the product is associative
/// on these operands.
pub fn associativity_defect<C: Coeff, P: StarProduct>(
    f: &PhaseSymbol<C>,
    g: &PhaseSymbol<C>,
    h: &PhaseSymbol<C>,
    product: &P,
) -> Result<PhaseSymbol<C>> {
    let left = product.star(&product.star(f, g)?, h)?;
    let right = product.star(f, &product.star(g, h)?)?;
    left.checked_sub(&right)
}

/// Truncated star exponential `Σ_{j<terms} f^{⋆j}/j!`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSeries {
    pub symbol: PhaseSymbol<Complex64>,
    pub terms: usize,
}

impl StarSeries {
    pub fn eval(&self, at: &SamplePoint) -> Result<Complex64> {
        self.symbol.eval(at)
    }
}

/// `e_⋆^f = Σ f^{⋆j}/j!`, summed until the increment evaluated at every
/// sample point stays below `tol·max(1, |partial sum|)` for two consecutive
/// terms. Without sample points the increment's largest coefficient is used.
pub fn star_exp<P: StarProduct>(
    f: &PhaseSymbol<Complex64>,
    product: &P,
    samples: &[SamplePoint],
    tol: f64,
    max_terms: usize,
) -> Result<StarSeries> {
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "star_exp tolerance", value: tol });
    }
    let modes = f.modes();
    let mut sum = PhaseSymbol::one(modes);
    let mut term = PhaseSymbol::one(modes);
    let mut quiet = 0;
    for j in 1..=max_terms {
        term = product.star(&term, f)?.scale(&Complex64::new(1.0 / j as f64, 0.0));
        sum = &sum + &term;
        if term.is_zero() {
            return Ok(StarSeries { symbol: sum, terms: j + 1 });
        }
        let small = if samples.is_empty() {
            term.max_abs_coeff() <= tol * sum.max_abs_coeff().max(1.0)
        } else {
            let mut ok = true;
            for at in samples {
                let inc = term.eval(at)?.norm();
                let total = sum.eval(at)?.norm();
                if inc > tol * total.max(1.0) {
                    ok = false;
                    break;
                }
            }
            ok
        };
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 2 {
            return Ok(StarSeries { symbol: sum, terms: j + 1 });
        }
    }
    Err(Error::NonConvergence { what: "star_exp", terms: max_terms })
}
