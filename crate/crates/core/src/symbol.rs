//! Normal-ordered phase-space symbols.
//!
//! A [`PhaseSymbol`] is a finite polynomial `Σ O_{m,n} z̄^m z^n` in `N` modes,
//! the image of the normally ordered operator `Σ O_{m,n} (a⁺)^m a^n` under the
//! coherent-state map. The product implemented here is the ordinary commutative
//! one; star products live in [`crate::heisenberg`].
//!
//! Coefficients are generic over [`Coeff`]: `Complex64` for numerics and
//! [`ExactComplex`] (Gaussian rationals) for identities that must hold exactly.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Gaussian rational, used for exact symbol arithmetic.
pub type ExactComplex = Complex<BigRational>;

/// Coefficient ring of a [`PhaseSymbol`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(r: &BigRational) -> Self;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;

    fn from_u64(n: u64) -> Self {
        Self::from_ratio(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Falling factorial `n (n−1) ⋯ (n−k+1)`.
    fn falling(n: u32, k: u32) -> Self {
        let v = (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j));
        Self::from_ratio(&BigRational::from_integer(v))
    }
}

impl Coeff for Complex64 {
    fn from_ratio(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn from_u64(n: u64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn falling(n: u32, k: u32) -> Self {
        Complex64::new((0..k).fold(1.0, |acc, j| acc * f64::from(n - j)), 0.0)
    }
}

impl Coeff for ExactComplex {
    fn from_ratio(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Builds an exact Gaussian rational `(re_num/re_den) + i (im_num/im_den)`.
pub fn exact(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> ExactComplex {
    Complex::new(
        BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
        BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
    )
}

/// Exponent pair `(m⃗, n⃗)` of the monomial `z̄^m⃗ z^n⃗`.
///
/// Ordered graded-lexicographically: total degree first, then `m⃗`, then `n⃗`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) m: Vec<u32>,
    pub(crate) n: Vec<u32>,
}

impl Monomial {
    pub fn new(m: Vec<u32>, n: Vec<u32>) -> Result<Self> {
        if m.len() != n.len() {
            return Err(Error::ModeMismatch { left: m.len(), right: n.len() });
        }
        Ok(Monomial { m, n })
    }

    pub fn one(modes: usize) -> Self {
        Monomial { m: vec![0; modes], n: vec![0; modes] }
    }

    pub fn modes(&self) -> usize {
        self.m.len()
    }

    /// Exponents of the conjugated variables `z̄`.
    pub fn zbar_exponents(&self) -> &[u32] {
        &self.m
    }

    /// Exponents of the variables `z`.
    pub fn z_exponents(&self) -> &[u32] {
        &self.n
    }

    pub fn degree(&self) -> u32 {
        self.m.iter().chain(&self.n).sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
            n: self.n.iter().zip(&other.n).map(|(a, b)| a + b).collect(),
        }
    }

    /// The monomial of the adjoint operator: exponents of `z` and `z̄` swapped.
    fn swapped(&self) -> Monomial {
        Monomial { m: self.n.clone(), n: self.m.clone() }
    }

    fn eval(&self, z: &[Complex64], zbar: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for i in 0..self.m.len() {
            acc *= zbar[i].powu(self.m[i]) * z[i].powu(self.n[i]);
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.m.cmp(&other.m))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of `ℂ^N` at which symbols are evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    z: Vec<Complex64>,
}

impl SamplePoint {
    pub fn new(z: Vec<Complex64>) -> Result<Self> {
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain { what: "SamplePoint entry", value: f64::NAN });
        }
        Ok(SamplePoint { z })
    }

    pub fn single(z: Complex64) -> Self {
        SamplePoint { z: vec![z] }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.z
    }

    pub fn modes(&self) -> usize {
        self.z.len()
    }
}

/// Finite normal-ordered polynomial `Σ O_{m⃗,n⃗} z̄^m⃗ z^n⃗` over `N` modes.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality (exactly so for [`ExactComplex`]).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSymbol<C = Complex64> {
    modes: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> PhaseSymbol<C> {
    pub fn zero(modes: usize) -> Self {
        PhaseSymbol { modes, terms: BTreeMap::new() }
    }

    pub fn constant(modes: usize, c: C) -> Self {
        let mut s = Self::zero(modes);
        s.accumulate(Monomial::one(modes), c);
        s
    }

    pub fn one(modes: usize) -> Self {
        Self::constant(modes, C::one())
    }

    /// `z_mode` (or `z̄_mode` when `conjugated`) with unit coefficient.
    pub fn generator(modes: usize, mode: usize, conjugated: bool) -> Result<Self> {
        if mode >= modes {
            return Err(Error::Index { index: mode, modes });
        }
        let mut mono = Monomial::one(modes);
        if conjugated {
            mono.m[mode] = 1;
        } else {
            mono.n[mode] = 1;
        }
        Ok(Self::monomial(mono, C::one()))
    }

    pub fn monomial(mono: Monomial, c: C) -> Self {
        let mut s = Self::zero(mono.modes());
        s.accumulate(mono, c);
        s
    }

    pub fn from_terms(modes: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Result<Self> {
        let mut s = Self::zero(modes);
        for (mono, c) in terms {
            if mono.modes() != modes {
                return Err(Error::ModeMismatch { left: modes, right: mono.modes() });
            }
            s.accumulate(mono, c);
        }
        Ok(s)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded-lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    /// Highest total degree; 0 for constants and for the zero symbol.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest power of `z_mode` appearing in any term.
    pub fn z_degree(&self, mode: usize) -> u32 {
        self.terms.keys().map(|k| k.n[mode]).max().unwrap_or(0)
    }

    /// Highest power of `z̄_mode` appearing in any term.
    pub fn zbar_degree(&self, mode: usize) -> u32 {
        self.terms.keys().map(|k| k.m[mode]).max().unwrap_or(0)
    }

    pub(crate) fn accumulate(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_modes(&self, other: &Self) -> Result<()> {
        if self.modes != other.modes {
            return Err(Error::ModeMismatch { left: self.modes, right: other.modes });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_modes(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_modes(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Commutative pointwise product (not a star product).
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        self.check_modes(other)?;
        let mut out = Self::zero(self.modes);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.accumulate(ka.times(kb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.modes);
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Pointwise power `f^e`.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.modes);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative of order `order` in `z_mode`, or in `z̄_mode`
    /// when `conjugated`.
    pub fn derive(&self, mode: usize, conjugated: bool, order: u32) -> Result<Self> {
        if mode >= self.modes {
            return Err(Error::Index { index: mode, modes: self.modes });
        }
        let mut out = Self::zero(self.modes);
        for (k, c) in &self.terms {
            let exp = if conjugated { k.m[mode] } else { k.n[mode] };
            if exp < order {
                continue;
            }
            let factor = C::falling(exp, order);
            let mut mono = k.clone();
            if conjugated {
                mono.m[mode] -= order;
            } else {
                mono.n[mode] -= order;
            }
            out.accumulate(mono, c.clone() * factor);
        }
        Ok(out)
    }

    /// Symbol of the adjoint operator: `conj(f(z̄, z))` as a polynomial.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.modes);
        for (k, c) in &self.terms {
            out.accumulate(k.swapped(), c.conj());
        }
        out
    }

    /// Evaluates with `z = at` and `z̄ = conj(at)`.
    pub fn eval(&self, at: &SamplePoint) -> Result<Complex64> {
        self.eval_coords(at.coords())
    }

    pub fn eval_coords(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.modes {
            return Err(Error::ModeMismatch { left: self.modes, right: z.len() });
        }
        let zbar: Vec<Complex64> = z.iter().map(|c| c.conj()).collect();
        Ok(self.terms.iter().map(|(k, c)| c.to_c64() * k.eval(z, &zbar)).sum())
    }

    /// Converts the coefficients to `Complex64`.
    pub fn to_complex(&self) -> PhaseSymbol<Complex64> {
        let mut out = PhaseSymbol::zero(self.modes);
        for (k, c) in &self.terms {
            out.accumulate(k.clone(), c.to_c64());
        }
        out
    }

    /// Substitutes polynomials for each `z_i` and `z̄_i` (commutatively).
    ///
    /// `z_images[i]` replaces `z_i`, `zbar_images[i]` replaces `z̄_i`; all
    /// images must share a mode count, which becomes the result's.
    pub fn substitute(&self, z_images: &[Self], zbar_images: &[Self]) -> Result<Self> {
        if z_images.len() != self.modes || zbar_images.len() != self.modes {
            return Err(Error::ModeMismatch { left: self.modes, right: z_images.len() });
        }
        let target = z_images.first().map(|s| s.modes).unwrap_or(self.modes);
        if z_images.iter().chain(zbar_images).any(|s| s.modes != target) {
            return Err(Error::ModeMismatch { left: target, right: self.modes });
        }
        let mut out = Self::zero(target);
        for (k, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for i in 0..self.modes {
                term = &term * &zbar_images[i].pow(k.m[i]);
                term = &term * &z_images[i].pow(k.n[i]);
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-labels this symbol's modes as modes `offset..offset+N` of a
    /// `total`-mode space.
    pub fn embed(&self, offset: usize, total: usize) -> Result<Self> {
        if offset + self.modes > total {
            return Err(Error::Index { index: offset + self.modes, modes: total });
        }
        let mut out = Self::zero(total);
        for (k, c) in &self.terms {
            let mut mono = Monomial::one(total);
            mono.m[offset..offset + self.modes].copy_from_slice(&k.m);
            mono.n[offset..offset + self.modes].copy_from_slice(&k.n);
            out.accumulate(mono, c.clone());
        }
        Ok(out)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).fold(0.0, f64::max)
    }
}

impl PhaseSymbol<Complex64> {
    /// Drops coefficients with modulus at or below `tol`.
    pub fn chop(&self, tol: f64) -> Self {
        PhaseSymbol {
            modes: self.modes,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
        }
    }
}

macro_rules! symbol_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Coeff> $trait for &PhaseSymbol<C> {
            type Output = PhaseSymbol<C>;
            /// Panics when the operands have different mode counts.
            fn $method(self, rhs: Self) -> PhaseSymbol<C> {
                match self.$checked(rhs) {
                    Ok(s) => s,
                    Err(e) => panic!("{}", e),
                }
            }
        }
    };
}

symbol_binop!(Add, add, checked_add);
symbol_binop!(Sub, sub, checked_sub);
symbol_binop!(Mul, mul, pointwise_mul);

impl<C: Coeff> Neg for &PhaseSymbol<C> {
    type Output = PhaseSymbol<C>;
    fn neg(self) -> PhaseSymbol<C> {
        self.scale(&-C::one())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(modes: usize, i: usize) -> PhaseSymbol<ExactComplex> {
        PhaseSymbol::generator(modes, i, false).unwrap()
    }
    fn zb(modes: usize, i: usize) -> PhaseSymbol<ExactComplex> {
        PhaseSymbol::generator(modes, i, true).unwrap()
    }
    fn c(re: i64) -> ExactComplex {
        exact(re, 1, 0, 1)
    }

    #[test]
    fn generators() {
        let g = z(1, 0);
        let (mono, coeff) = g.terms().next().unwrap();
        assert_eq!(mono.z_exponents(), &[1]);
        assert_eq!(mono.zbar_exponents(), &[0]);
        assert_eq!(*coeff, c(1));
        let g = zb(1, 0);
        assert_eq!(g.terms().next().unwrap().0.zbar_exponents(), &[1]);
        let g = z(2, 1);
        assert_eq!(g.terms().next().unwrap().0.z_exponents(), &[0, 1]);
        assert!(matches!(
            PhaseSymbol::<Complex64>::generator(2, 2, false),
            Err(Error::Index { index: 2, modes: 2 })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let zz = &z(1, 0) * &zb(1, 0);
        let mono = Monomial::new(vec![1], vec![1]).unwrap();
        assert_eq!(zz, PhaseSymbol::monomial(mono, c(1)));
        let f = &z(1, 0) + &zb(1, 0);
        assert_eq!(&f + &PhaseSymbol::zero(1), f);
        let lhs = &(&z(1, 0) + &zb(1, 0)) * &(&z(1, 0) - &zb(1, 0));
        let rhs = &z(1, 0).pow(2) - &zb(1, 0).pow(2);
        assert_eq!(lhs, rhs);
        assert!(z(1, 0).checked_add(&z(2, 0)).is_err());
        assert!(matches!(z(1, 0).pointwise_mul(&z(2, 0)), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn derivative_examples() {
        let z2 = z(1, 0).pow(2);
        assert_eq!(z2.derive(0, false, 1).unwrap(), z(1, 0).scale(&c(2)));
        assert!(z(1, 0).derive(0, true, 1).unwrap().is_zero());
        let f = &z2 * &zb(1, 0);
        assert_eq!(f.derive(0, false, 2).unwrap(), zb(1, 0).scale(&c(2)));
        assert_eq!(f.derive(0, false, 0).unwrap(), f);
    }

    #[test]
    fn eval_examples() {
        let f = (&zb(1, 0) * &z(1, 0)).to_complex();
        let v = f.eval(&SamplePoint::single(Complex64::new(1.0, 1.0))).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        let one = PhaseSymbol::<Complex64>::one(1);
        assert_eq!(one.eval(&SamplePoint::single(Complex64::new(0.3, -2.0))).unwrap(), Complex64::new(1.0, 0.0));
        let z2 = z(1, 0).pow(2).to_complex();
        let v = z2.eval(&SamplePoint::single(Complex64::new(0.0, 1.0))).unwrap();
        assert!((v + Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(z2.eval_coords(&[Complex64::new(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn canonical_order_is_graded() {
        let f = &(&z(1, 0).pow(3) + &zb(1, 0)) + &PhaseSymbol::one(1);
        let degrees: Vec<u32> = f.terms().map(|(m, _)| m.degree()).collect();
        assert_eq!(degrees, vec![0, 1, 3]);
    }

    #[test]
    fn adjoint_swaps_and_conjugates() {
        let f = z(1, 0).pow(2).scale(&exact(1, 1, 2, 1));
        let a = f.adjoint();
        assert_eq!(a, zb(1, 0).pow(2).scale(&exact(1, 1, -2, 1)));
        assert_eq!(a.adjoint(), f);
    }

    #[test]
    fn substitution_reproduces_linear_change() {
        // f = z̄z with z ↦ 2z + z̄, z̄ ↦ 2z̄ + z.
        let f = &zb(1, 0) * &z(1, 0);
        let zi = &z(1, 0).scale(&c(2)) + &zb(1, 0);
        let zbi = &zb(1, 0).scale(&c(2)) + &z(1, 0);
        let s = f.substitute(core::slice::from_ref(&zi), core::slice::from_ref(&zbi)).unwrap();
        assert_eq!(s, &zbi * &zi);
    }

    fn small_rational() -> impl Strategy<Value = ExactComplex> {
        (-4i64..5, 1i64..4, -3i64..4, 1i64..3).prop_map(|(a, b, c, d)| exact(a, b, c, d))
    }

    pub(crate) fn arb_exact_symbol(modes: usize, max_deg: u32) -> impl Strategy<Value = PhaseSymbol<ExactComplex>> {
        let exps = proptest::collection::vec(0..=max_deg, 2 * modes);
        proptest::collection::vec((exps, small_rational()), 0..5).prop_map(move |terms| {
            let terms = terms.into_iter().filter_map(|(e, c)| {
                let (m, n) = e.split_at(modes);
                let total: u32 = e.iter().sum();
                (total <= max_deg).then(|| (Monomial::new(m.to_vec(), n.to_vec()).unwrap(), c))
            });
            PhaseSymbol::from_terms(modes, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_exact(
            f in arb_exact_symbol(2, 3),
            g in arb_exact_symbol(2, 3),
            h in arb_exact_symbol(2, 3),
        ) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn eval_is_ring_homomorphism(
            f in arb_exact_symbol(2, 3),
            g in arb_exact_symbol(2, 3),
            re in -1.5f64..1.5, im in -1.5f64..1.5, re2 in -1.5f64..1.5,
        ) {
            let at = SamplePoint::new(vec![Complex64::new(re, im), Complex64::new(re2, -im)]).unwrap();
            let fg = (&f * &g).eval(&at).unwrap();
            let prod = f.eval(&at).unwrap() * g.eval(&at).unwrap();
            prop_assert!((fg - prod).norm() <= 1e-12 * prod.norm().max(1.0));
        }

        #[test]
        fn derivatives_commute(f in arb_exact_symbol(2, 4), p in 0u32..3, q in 0u32..3) {
            let a = f.derive(0, false, p).unwrap().derive(1, true, q).unwrap();
            let b = f.derive(1, true, q).unwrap().derive(0, false, p).unwrap();
            prop_assert_eq!(a, b);
            let a = f.derive(0, false, p).unwrap().derive(0, true, q).unwrap();
            let b = f.derive(0, true, q).unwrap().derive(0, false, p).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
