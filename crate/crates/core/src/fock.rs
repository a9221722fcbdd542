//! Truncated Fock-space oracle.
//!
//! Basis states of `N` modes with per-mode cutoff `D` are ordered row-major:
//! the multi-index `(n_0, …, n_{N-1})` sits at `Σ n_i D^{N-1-i}`, so mode 0 is
//! the most significant digit.
//!
//! Symbols map to operators by normal ordering, `z̄_i → a_i⁺` on the left and
//! `z_i → a_i` on the right.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods when std is absent
use num_traits::Float;

use crate::linalg::{self, CMatrix};
use crate::specfun::{self, GaussLaguerre};
use crate::symbol::{PhaseSymbol, SamplePoint};
use crate::{Error, Result};

/// Default bound on the norm lost to truncation.
pub const DEFAULT_LOSS_TOLERANCE: f64 = 1e-10;

/// Largest dense operator dimension the oracle will build.
pub const MAX_DENSE_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    modes: usize,
    cutoff: usize,
}

impl FockSpace {
    pub fn new(modes: usize, cutoff: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Shape { what: "Fock space needs at least one mode" });
        }
        if cutoff < 2 {
            return Err(Error::Cutoff { needed: 2, cutoff });
        }
        if cutoff.checked_pow(modes as u32).is_none() {
            return Err(Error::Shape { what: "Fock space dimension overflows" });
        }
        Ok(FockSpace { modes, cutoff })
    }

    pub fn single(cutoff: usize) -> Result<Self> {
        Self::new(1, cutoff)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.cutoff.pow(self.modes as u32)
    }

    /// Flat index of a multi-index; `None` when any occupation is `≥ D`.
    pub fn index(&self, occupation: &[usize]) -> Option<usize> {
        if occupation.len() != self.modes {
            return None;
        }
        let mut idx = 0;
        for &n in occupation {
            if n >= self.cutoff {
                return None;
            }
            idx = idx * self.cutoff + n;
        }
        Some(idx)
    }

    pub fn occupation(&self, mut index: usize) -> Vec<usize> {
        let mut occ = vec![0; self.modes];
        for slot in occ.iter_mut().rev() {
            *slot = index % self.cutoff;
            index /= self.cutoff;
        }
        occ
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: FockSpace,
    amplitudes: Vec<Complex64>,
    truncation_loss: f64,
}

impl StateVector {
    /// Wraps raw amplitudes. `truncation_loss` is the norm the full state has
    /// outside the truncated basis.
    pub fn new(space: FockSpace, amplitudes: Vec<Complex64>, truncation_loss: f64) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::Shape { what: "amplitude count does not match Fock dimension" });
        }
        Ok(StateVector { space, amplitudes, truncation_loss })
    }

    pub fn basis(space: FockSpace, occupation: &[usize]) -> Result<Self> {
        let idx = space.index(occupation).ok_or(Error::Cutoff {
            needed: occupation.iter().copied().max().unwrap_or(0) + 1,
            cutoff: space.cutoff,
        })?;
        let mut amps = vec![Complex64::new(0.0, 0.0); space.dim()];
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(StateVector { space, amplitudes: amps, truncation_loss: 0.0 })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    pub fn norm_sqr(&self) -> f64 {
        linalg::norm_sqr(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.space != other.space {
            return Err(Error::Shape { what: "states live in different Fock spaces" });
        }
        Ok(linalg::inner(&self.amplitudes, &other.amplitudes))
    }

    /// Tensor product, `self` occupying the leading modes.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        if self.space.cutoff != other.space.cutoff {
            return Err(Error::Shape { what: "tensor factors need equal cutoffs" });
        }
        let space = FockSpace::new(self.space.modes + other.space.modes, self.space.cutoff)?;
        let mut amps = Vec::with_capacity(space.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        let loss = 1.0 - (1.0 - self.truncation_loss) * (1.0 - other.truncation_loss);
        Ok(StateVector { space, amplitudes: amps, truncation_loss: loss.max(0.0) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Raise,
    Lower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    space: FockSpace,
    matrix: CMatrix,
}

impl FockOperator {
    pub fn new(space: FockSpace, matrix: CMatrix) -> Result<Self> {
        if matrix.rows() != space.dim() || matrix.cols() != space.dim() {
            return Err(Error::Shape { what: "operator matrix does not match Fock dimension" });
        }
        Ok(FockOperator { space, matrix })
    }

    pub fn identity(space: FockSpace) -> Self {
        FockOperator { space, matrix: CMatrix::identity(space.dim()) }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    fn same_space(&self, other: &FockOperator) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Shape { what: "operators live in different Fock spaces" });
        }
        Ok(())
    }

    pub fn compose(&self, other: &FockOperator) -> Result<FockOperator> {
        self.same_space(other)?;
        Ok(FockOperator { space: self.space, matrix: self.matrix.matmul(&other.matrix)? })
    }

    pub fn add(&self, other: &FockOperator) -> Result<FockOperator> {
        self.same_space(other)?;
        Ok(FockOperator { space: self.space, matrix: self.matrix.add(&other.matrix)? })
    }

    pub fn sub(&self, other: &FockOperator) -> Result<FockOperator> {
        self.same_space(other)?;
        Ok(FockOperator { space: self.space, matrix: self.matrix.sub(&other.matrix)? })
    }

    pub fn scale(&self, c: Complex64) -> FockOperator {
        FockOperator { space: self.space, matrix: self.matrix.scale(c) }
    }

    pub fn commutator(&self, other: &FockOperator) -> Result<FockOperator> {
        self.same_space(other)?;
        Ok(FockOperator { space: self.space, matrix: self.matrix.commutator(&other.matrix)? })
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator { space: self.space, matrix: self.matrix.adjoint() }
    }

    pub fn exp(&self) -> Result<FockOperator> {
        Ok(FockOperator { space: self.space, matrix: self.matrix.expm()? })
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.space != self.space {
            return Err(Error::Shape { what: "state and operator live in different Fock spaces" });
        }
        let amps = self.matrix.matvec(&state.amplitudes)?;
        Ok(StateVector { space: self.space, amplitudes: amps, truncation_loss: state.truncation_loss })
    }

    /// `⟨ψ|O|ψ⟩`.
    pub fn expectation(&self, state: &StateVector) -> Result<Complex64> {
        let applied = self.apply(state)?;
        state.inner(&applied)
    }
}

/// `a_mode⁺` or `a_mode` on `space`.
pub fn ladder(mode: usize, kind: LadderKind, space: FockSpace) -> Result<FockOperator> {
    if mode >= space.modes {
        return Err(Error::Index { index: mode, modes: space.modes });
    }
    let stride = space.cutoff.pow((space.modes - 1 - mode) as u32);
    let dim = space.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let n = (col / stride) % space.cutoff;
        match kind {
            LadderKind::Raise if n + 1 < space.cutoff => {
                m[(col + stride, col)] = Complex64::new(((n + 1) as f64).sqrt(), 0.0);
            }
            LadderKind::Lower if n > 0 => {
                m[(col - stride, col)] = Complex64::new((n as f64).sqrt(), 0.0);
            }
            _ => {}
        }
    }
    Ok(FockOperator { space, matrix: m })
}

/// `√(a!/b!)` for `a ≥ b`.
fn sqrt_factorial_ratio(a: usize, b: usize) -> f64 {
    let mut r = 1.0;
    for j in (b + 1)..=a {
        r *= j as f64;
    }
    if r.is_finite() {
        r.sqrt()
    } else {
        (0.5 * (specfun::ln_factorial(a) - specfun::ln_factorial(b))).exp()
    }
}

/// `z^p` with `0^0 = 1`, computed in log space for large `p`.
fn cpow(z: Complex64, p: usize) -> Complex64 {
    if p == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if z.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    z.powu(p as u32)
}

/// `⟨l|D(z)|k⟩` in closed form:
/// `√(k!/l!) z^{l−k} L_k^{l−k}(|z|²) e^{−|z|²/2}` for `l ≥ k`, and
/// `√(l!/k!) (−z̄)^{k−l} L_l^{k−l}(|z|²) e^{−|z|²/2}` otherwise.
pub fn displaced_amplitude(z: Complex64, k: usize, l: usize) -> Complex64 {
    let s = z.norm_sqr();
    let gauss = (-0.5 * s).exp();
    if l >= k {
        let p = l - k;
        let lag = specfun::laguerre_l(k, p as f64, s);
        cpow(z, p) * (lag * gauss / sqrt_factorial_ratio(l, k))
    } else {
        let p = k - l;
        let lag = specfun::laguerre_l(l, p as f64, s);
        cpow(-z.conj(), p) * (lag * gauss / sqrt_factorial_ratio(k, l))
    }
}

fn single_mode_displaced(z: Complex64, k: usize, cutoff: usize, tol: f64) -> Result<StateVector> {
    if k >= cutoff {
        return Err(Error::Cutoff { needed: k + 1, cutoff });
    }
    let space = FockSpace::single(cutoff)?;
    let amps: Vec<Complex64> = (0..cutoff).map(|l| displaced_amplitude(z, k, l)).collect();
    let loss = (1.0 - linalg::norm_sqr(&amps)).max(0.0);
    if loss > tol {
        return Err(Error::Truncation { loss, tolerance: tol });
    }
    Ok(StateVector { space, amplitudes: amps, truncation_loss: loss })
}

fn tensor_all(factors: Vec<StateVector>) -> Result<StateVector> {
    let mut iter = factors.into_iter();
    let mut acc = iter.next().ok_or(Error::Shape { what: "no modes given" })?;
    for f in iter {
        acc = acc.tensor(&f)?;
    }
    Ok(acc)
}

/// Displaced number state `|z⃗,k⃗⟩ = ⊗ D(z_i)|k_i⟩` built from the closed-form
/// amplitudes. Fails when the truncated norm loss exceeds `tol`.
pub fn displaced_number_vector_with_tol(
    z: &[Complex64],
    k: &[usize],
    cutoff: usize,
    tol: f64,
) -> Result<StateVector> {
    if z.len() != k.len() {
        return Err(Error::ModeMismatch { left: z.len(), right: k.len() });
    }
    let factors =
        z.iter().zip(k).map(|(&zi, &ki)| single_mode_displaced(zi, ki, cutoff, tol)).collect::<Result<Vec<_>>>()?;
    let state = tensor_all(factors)?;
    if state.truncation_loss > tol {
        return Err(Error::Truncation { loss: state.truncation_loss, tolerance: tol });
    }
    Ok(state)
}

pub fn displaced_number_vector(z: &[Complex64], k: &[usize], cutoff: usize) -> Result<StateVector> {
    displaced_number_vector_with_tol(z, k, cutoff, DEFAULT_LOSS_TOLERANCE)
}

/// Normalized coherent state `e^{−|z|²/2} Σ z^n/√n! |n⟩` per mode.
pub fn coherent_vector(z: &[Complex64], cutoff: usize) -> Result<StateVector> {
    displaced_number_vector(z, &vec![0; z.len()], cutoff)
}

/// `D(z⃗) = exp(Σ z_i a_i⁺ − z̄_i a_i)` on `space` by matrix exponential.
pub fn displacement_operator(z: &[Complex64], space: FockSpace) -> Result<FockOperator> {
    if z.len() != space.modes {
        return Err(Error::ModeMismatch { left: z.len(), right: space.modes });
    }
    let mut gen = FockOperator { space, matrix: CMatrix::zeros(space.dim(), space.dim()) };
    for (i, &zi) in z.iter().enumerate() {
        let up = ladder(i, LadderKind::Raise, space)?;
        let down = ladder(i, LadderKind::Lower, space)?;
        gen = gen.add(&up.scale(zi))?.sub(&down.scale(zi.conj()))?;
    }
    gen.exp()
}

/// `D(z⃗)|k⃗⟩` by matrix exponential on a padded single-mode space, cropped
/// to `cutoff`. Independent of the Laguerre closed form.
pub fn displaced_number_vector_by_expm(z: &[Complex64], k: &[usize], cutoff: usize) -> Result<StateVector> {
    if z.len() != k.len() {
        return Err(Error::ModeMismatch { left: z.len(), right: k.len() });
    }
    let mut factors = Vec::with_capacity(z.len());
    for (&zi, &ki) in z.iter().zip(k) {
        if ki >= cutoff {
            return Err(Error::Cutoff { needed: ki + 1, cutoff });
        }
        let padded = 2 * cutoff + 20 + (8.0 * zi.norm_sqr()) as usize;
        let big = FockSpace::single(padded)?;
        let d = displacement_operator(&[zi], big)?;
        let amps: Vec<Complex64> = (0..cutoff).map(|l| d.matrix[(l, ki)]).collect();
        let loss = (1.0 - linalg::norm_sqr(&amps)).max(0.0);
        factors.push(StateVector { space: FockSpace::single(cutoff)?, amplitudes: amps, truncation_loss: loss });
    }
    tensor_all(factors)
}

/// Calls `visit(row, col, value)` for every nonzero matrix element of the
/// normal-ordered operator of `f` on `space`.
fn for_each_element(
    f: &PhaseSymbol,
    space: FockSpace,
    mut visit: impl FnMut(usize, usize, Complex64),
) -> Result<()> {
    if f.modes() != space.modes {
        return Err(Error::ModeMismatch { left: f.modes(), right: space.modes });
    }
    let d = space.cutoff;
    let dim = space.dim();
    for (mono, c) in f.terms() {
        let m = mono.zbar_exponents();
        let n = mono.z_exponents();
        if m.iter().chain(n).any(|&e| e as usize >= d) {
            let needed = m.iter().chain(n).copied().max().unwrap_or(0) as usize + 1;
            return Err(Error::Cutoff { needed, cutoff: d });
        }
        'cols: for col in 0..dim {
            let occ = space.occupation(col);
            let mut row = 0;
            let mut amp = *c;
            for i in 0..space.modes {
                let (mi, ni) = (m[i] as usize, n[i] as usize);
                if occ[i] < ni {
                    continue 'cols;
                }
                let mid = occ[i] - ni;
                let out = mid + mi;
                if out >= d {
                    continue 'cols;
                }
                amp *= sqrt_factorial_ratio(occ[i], mid) * sqrt_factorial_ratio(out, mid);
                row = row * d + out;
            }
            visit(row, col, amp);
        }
    }
    Ok(())
}

/// Matrix of `Σ f_{m⃗n⃗} (a⁺)^{m⃗} a^{n⃗}` in the truncated basis.
pub fn normal_ordered_operator(f: &PhaseSymbol, space: FockSpace) -> Result<FockOperator> {
    if space.dim() > MAX_DENSE_DIM {
        return Err(Error::Shape { what: "dense operator too large; use the sparse action" });
    }
    let mut m = CMatrix::zeros(space.dim(), space.dim());
    for_each_element(f, space, |r, c, v| m[(r, c)] += v)?;
    Ok(FockOperator { space, matrix: m })
}

/// `O_f ψ` without forming the matrix.
pub fn apply_normal_ordered(f: &PhaseSymbol, state: &StateVector) -> Result<StateVector> {
    let space = state.space;
    let mut out = vec![Complex64::new(0.0, 0.0); space.dim()];
    for_each_element(f, space, |r, c, v| out[r] += v * state.amplitudes[c])?;
    Ok(StateVector { space, amplitudes: out, truncation_loss: state.truncation_loss })
}

/// `⟨z⃗,k⃗|O|z⃗,k⃗⟩`.
pub fn symbol_of(op: &FockOperator, at: &SamplePoint, k: &[usize]) -> Result<Complex64> {
    let psi = displaced_number_vector(at.coords(), k, op.space.cutoff)?;
    if psi.space != op.space {
        return Err(Error::ModeMismatch { left: at.modes(), right: op.space.modes });
    }
    op.expectation(&psi)
}

/// `⟨z⃗,k⃗|O_f O_g|z⃗,k⃗⟩`, evaluated as `(O_f⁺ψ)⁺(O_g ψ)` with sparse actions.
pub fn star_oracle(
    f: &PhaseSymbol,
    g: &PhaseSymbol,
    at: &SamplePoint,
    k: &[usize],
    cutoff: usize,
) -> Result<Complex64> {
    let psi = displaced_number_vector(at.coords(), k, cutoff)?;
    let left = apply_normal_ordered(&f.adjoint(), &psi)?;
    let right = apply_normal_ordered(g, &psi)?;
    left.inner(&right)
}

/// Smallest cutoff at which every displaced state `|z,k⟩` with `|z| ≤ radius`
/// and `k ≤ k_max` loses less than `tol` of its norm, plus `margin` levels
/// for operator degree. Errors if it exceeds `cap`.
pub fn cutoff_for(radius: f64, k_max: usize, margin: usize, tol: f64, cap: usize) -> Result<usize> {
    if !(radius.is_finite() && radius >= 0.0) {
        return Err(Error::Domain { what: "cutoff_for radius", value: radius });
    }
    let z = Complex64::new(radius, 0.0);
    let mut d = (k_max + 2).max(2);
    loop {
        if d + margin > cap {
            return Err(Error::Cutoff { needed: d + margin, cutoff: cap });
        }
        let ok = (0..=k_max).all(|k| {
            let kept: f64 = (0..d).map(|l| displaced_amplitude(z, k, l).norm_sqr()).sum();
            1.0 - kept < tol
        });
        if ok {
            return Ok(d + margin);
        }
        d += 1;
    }
}

/// Quadrature estimate of `(1/π)∫ d²z |z,k⟩⟨z,k|` restricted to the first
/// `basis` number states (single mode). Radial Gauss-Laguerre in `t = |z|²`
/// times an angular trapezoid rule.
pub fn resolution_of_unity(k: usize, basis: usize, radial_nodes: usize, angular_nodes: usize) -> Result<CMatrix> {
    if angular_nodes == 0 {
        return Err(Error::Shape { what: "need at least one angular node" });
    }
    let gl = GaussLaguerre::new(radial_nodes, 0.0)?;
    let mut m = CMatrix::zeros(basis, basis);
    let mut amps = vec![Complex64::new(0.0, 0.0); basis];
    for (&t, &w) in gl.nodes.iter().zip(&gl.weights) {
        let r = t.sqrt();
        for j in 0..angular_nodes {
            let theta = 2.0 * PI * j as f64 / angular_nodes as f64;
            let z = Complex64::from_polar(r, theta);
            for (l, a) in amps.iter_mut().enumerate() {
                // strip e^{−t/2} from each amplitude; the weight supplies e^{−t}
                *a = displaced_amplitude(z, k, l) * (0.5 * t).exp();
            }
            // (1/π)·(1/2)dt·dθ with dθ = 2π/M
            let scale = w / angular_nodes as f64;
            for a in 0..basis {
                for b in 0..basis {
                    m[(a, b)] += amps[a] * amps[b].conj() * scale;
                }
            }
        }
    }
    Ok(m)
}
