//! Verification suites: each runs one module's checks on seeded sample
//! points and collects the results in a [`VerificationReport`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use starlab_core::covariance::{self, FlowConfig, XiMatrix};
use starlab_core::fock::{self, FockSpace};
use starlab_core::heisenberg::{
    self, associativity_defect, extended_star, moyal_bracket, star_exp, voros_star, ExtendedStarContext,
    StarProduct, Voros,
};
use starlab_core::linalg::CMatrix;
use starlab_core::report::{Entry, Expectation, Status, VerificationReport};
use starlab_core::symbol::{exact, ExactComplex, Monomial, PhaseSymbol, SamplePoint};
use starlab_core::{calogero, landau, su11, Complex64, Result};

use crate::error::{CliError, CliResult};

pub const SUITES: [&str; 6] = ["heisenberg", "extended", "canonical", "su11", "calogero", "landau"];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Number of sample points; each suite has its own default.
    pub grid: Option<usize>,
    /// Replaces the tolerance of every nonzero-tolerance agreement entry.
    pub tol: Option<f64>,
    /// Largest single-mode cutoff the oracles may escalate to.
    pub max_cutoff: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 7, grid: None, tol: None, max_cutoff: su11::MAX_CUTOFF }
    }
}

impl RunConfig {
    /// Reads `STARLAB_MAX_CUTOFF` when set.
    pub fn with_env(mut self) -> CliResult<Self> {
        if let Ok(v) = std::env::var("STARLAB_MAX_CUTOFF") {
            let cap: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("STARLAB_MAX_CUTOFF={v:?} is not a positive integer")))?;
            if cap < 8 {
                return Err(CliError::Config(format!("STARLAB_MAX_CUTOFF={cap} is below the minimum of 8")));
            }
            self.max_cutoff = cap;
        }
        Ok(self)
    }

    fn points(&self, default: usize) -> usize {
        self.grid.unwrap_or(default).max(1)
    }

    fn rng(&self, suite: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(SUITES.iter().position(|s| *s == suite).unwrap_or(SUITES.len()) as u64);
        rng
    }
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> CliResult<VerificationReport> {
    let mut rng = cfg.rng(name);
    let mut report = match name {
        "heisenberg" => heisenberg_suite(cfg, &mut rng),
        "extended" => extended_suite(cfg, &mut rng),
        "canonical" => canonical_suite(cfg, &mut rng),
        "su11" => su11_suite(cfg, &mut rng, &[0.5, 1.0, 1.5, 2.0]),
        "calogero" => calogero_suite(cfg, &mut rng, &[0.0, 0.5, 1.0]),
        "landau" => landau_suite(cfg, &mut rng, 3),
        other => {
            return Err(CliError::Config(format!(
                "unknown suite {other:?}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    finish(&mut report, cfg);
    Ok(report)
}

/// Every suite in order.
pub fn run_all(cfg: &RunConfig) -> Vec<VerificationReport> {
    SUITES.iter().map(|s| run_suite(s, cfg).expect("known suite")).collect()
}

/// Suites named on the command line, `all` expanding to every suite.
pub fn run_named(name: &str, cfg: &RunConfig) -> CliResult<Vec<VerificationReport>> {
    if name == "all" {
        Ok(run_all(cfg))
    } else {
        Ok(vec![run_suite(name, cfg)?])
    }
}

fn finish(report: &mut VerificationReport, cfg: &RunConfig) {
    report.environment.seed = Some(cfg.seed);
    report.record_cutoff("max_cutoff", cfg.max_cutoff);
    if let Some(t) = cfg.tol {
        report.record_tolerance("override", t);
        for e in &mut report.entries {
            if e.expect != Expectation::Agree || e.tolerance == 0.0 {
                continue;
            }
            e.tolerance = t;
            e.status = if e.max_abs_error <= t {
                Status::Pass
            } else if e.status == Status::PaperDiscrepancy {
                Status::PaperDiscrepancy
            } else {
                Status::Fail
            };
        }
    }
}

/// Turns evaluation errors into failing entries.
struct Collector {
    report: VerificationReport,
}

impl Collector {
    fn new(suite: &str) -> Self {
        Collector { report: VerificationReport::new(suite) }
    }

    fn report(&mut self, id: &str, tol: f64, r: Result<VerificationReport>) {
        match r {
            Ok(r) => self.report.extend(r),
            Err(e) => self.report.push(Entry::error(id, tol, &e)),
        }
    }

    fn entry(&mut self, id: &str, tol: f64, r: Result<Entry>) {
        match r {
            Ok(e) => self.report.push(e),
            Err(e) => self.report.push(Entry::error(id, tol, &e)),
        }
    }

    fn check(&mut self, id: &str, tol: f64, err: Result<f64>) {
        self.entry(id, tol, err.map(|v| Entry::check(id, v, tol)));
    }

    fn claim(&mut self, id: &str, tol: f64, err: Result<f64>) {
        self.entry(id, tol, err.map(|v| Entry::claim(id, v, tol)));
    }

    fn finish(self) -> VerificationReport {
        self.report
    }
}

/// Uniform points in the disk `|z| ≤ radius`.
pub fn disk_points(rng: &mut ChaCha8Rng, count: usize, radius: f64) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let t = std::f64::consts::TAU * rng.gen::<f64>();
            Complex64::from_polar(r, t)
        })
        .collect()
}

fn sample_points(rng: &mut ChaCha8Rng, count: usize, modes: usize, radius: f64) -> Vec<SamplePoint> {
    (0..count)
        .map(|_| SamplePoint::new(disk_points(rng, modes, radius)).expect("finite coordinates"))
        .collect()
}

fn rational(rng: &mut ChaCha8Rng) -> (i64, i64) {
    (rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// A random symbol with Gaussian-rational coefficients and total degree at
/// most `degree`.
pub fn random_exact_symbol(rng: &mut ChaCha8Rng, modes: usize, degree: u32) -> PhaseSymbol<ExactComplex> {
    let count = rng.gen_range(1..=4);
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        let total = rng.gen_range(0..=degree);
        let mut m = vec![0u32; modes];
        let mut n = vec![0u32; modes];
        for _ in 0..total {
            let slot = rng.gen_range(0..2 * modes);
            if slot < modes {
                m[slot] += 1;
            } else {
                n[slot - modes] += 1;
            }
        }
        let (a, b) = rational(rng);
        let (c, d) = rational(rng);
        terms.push((Monomial::new(m, n).expect("equal lengths"), exact(a, b, c, d)));
    }
    PhaseSymbol::from_terms(modes, terms).expect("consistent modes")
}

fn max_gap(a: &PhaseSymbol, b: &PhaseSymbol, pts: &[SamplePoint]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in pts {
        worst = worst.max((a.eval(p)? - b.eval(p)?).norm());
    }
    Ok(worst)
}

fn gen<C: starlab_core::symbol::Coeff>(modes: usize, i: usize, conj: bool) -> PhaseSymbol<C> {
    PhaseSymbol::generator(modes, i, conj).expect("mode in range")
}

// ---------------------------------------------------------------- heisenberg

fn heisenberg_suite(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> VerificationReport {
    let mut c = Collector::new("heisenberg");
    let n = 2;
    let z = |i| gen::<ExactComplex>(n, i, false);
    let zb = |i| gen::<ExactComplex>(n, i, true);
    let gap = |a: &PhaseSymbol<ExactComplex>, b: &PhaseSymbol<ExactComplex>| -> Result<f64> {
        Ok(a.checked_sub(b)?.max_abs_coeff())
    };
    let mut e = [0.0f64; 5];
    let mut run = || -> Result<()> {
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { PhaseSymbol::one(n) } else { PhaseSymbol::zero(n) };
                e[0] = e[0].max(gap(&voros_star(&zb(i), &z(j))?, &zb(i).pointwise_mul(&z(j))?)?);
                e[1] = e[1].max(gap(&voros_star(&zb(i), &zb(j))?, &zb(i).pointwise_mul(&zb(j))?)?);
                e[1] = e[1].max(gap(&voros_star(&zb(i), &zb(j))?, &voros_star(&zb(j), &zb(i))?)?);
                e[2] = e[2].max(gap(&voros_star(&z(i), &z(j))?, &z(i).pointwise_mul(&z(j))?)?);
                e[2] = e[2].max(gap(&voros_star(&z(i), &z(j))?, &voros_star(&z(j), &z(i))?)?);
                let want = delta.checked_add(&z(j).pointwise_mul(&zb(i))?)?;
                e[3] = e[3].max(gap(&voros_star(&z(j), &zb(i))?, &want)?);
                e[4] = e[4].max(gap(&moyal_bracket(&z(j), &zb(i), &Voros)?, &delta)?);
            }
        }
        Ok(())
    };
    match run() {
        Ok(()) => {
            for (k, eq) in [5, 6, 7, 8, 9].iter().enumerate() {
                c.report.push(Entry::check(format!("Eq.{eq}[N=2]"), e[k], 0.0));
            }
        }
        Err(err) => c.report.push(Entry::error("Eq.5-9[N=2]", 0.0, &err)),
    }

    // z² ⋆ z̄² = z²z̄² + 4z̄z + 2
    let example = (|| -> Result<f64> {
        let z1 = gen::<ExactComplex>(1, 0, false).pow(2);
        let zb1 = gen::<ExactComplex>(1, 0, true).pow(2);
        let n1 = gen::<ExactComplex>(1, 0, true).pointwise_mul(&gen(1, 0, false))?;
        let want = z1
            .pointwise_mul(&zb1)?
            .checked_add(&n1.scale(&exact(4, 1, 0, 1)))?
            .checked_add(&PhaseSymbol::constant(1, exact(2, 1, 0, 1)))?;
        Ok(voros_star(&z1, &zb1)?.checked_sub(&want)?.max_abs_coeff())
    })();
    c.check("Eq.8.example_z2_zbar2", 0.0, example);

    // Random symbols: Voros product against ⟨z|O_f O_g|z⟩ at D = 48.
    let cutoff = 48.min(cfg.max_cutoff);
    let pts_per_pair = cfg.points(20);
    let mut oracle_gap: f64 = 0.0;
    let mut assoc: f64 = 0.0;
    let mut round_trip: f64 = 0.0;
    let mut failed = None;
    for pair in 0..25 {
        let modes = 1 + pair % 2;
        let f = random_exact_symbol(rng, modes, 3);
        let g = random_exact_symbol(rng, modes, 3);
        let h = random_exact_symbol(rng, modes, 3);
        let pts = sample_points(rng, pts_per_pair, modes, 1.5);
        let step = (|| -> Result<(f64, f64, f64)> {
            let prod = voros_star(&f, &g)?.to_complex();
            let (fc, gc) = (f.to_complex(), g.to_complex());
            let mut worst: f64 = 0.0;
            for p in &pts {
                let k = vec![0; modes];
                worst = worst.max((fock::star_oracle(&fc, &gc, p, &k, cutoff)? - prod.eval(p)?).norm());
            }
            let defect = associativity_defect(&f, &g, &h, &Voros)?.max_abs_coeff();
            let d = if modes == 1 { 40 } else { 20 };
            let op = fock::normal_ordered_operator(&fc, FockSpace::new(modes, d)?)?;
            let mut rt: f64 = 0.0;
            for p in pts.iter().take(10) {
                let small = SamplePoint::new(p.coords().iter().map(|z| z * (0.5 / 1.5)).collect())?;
                rt = rt.max((fock::symbol_of(&op, &small, &vec![0; modes])? - fc.eval(&small)?).norm());
            }
            Ok((worst, defect, rt))
        })();
        match step {
            Ok((w, d, rt)) => {
                oracle_gap = oracle_gap.max(w);
                assoc = assoc.max(d);
                round_trip = round_trip.max(rt);
            }
            Err(e) => failed = Some(e),
        }
    }
    match failed {
        Some(e) => c.report.push(Entry::error("Eq.4.voros_vs_oracle", 1e-9, &e)),
        None => {
            c.report.push(
                Entry::check("Eq.4.voros_vs_oracle", oracle_gap, 1e-9)
                    .with_notes(format!("25 random pairs, degree <= 3, N <= 2, {pts_per_pair} points |z| <= 1.5")),
            );
            c.report.push(Entry::check("Eq.4.associativity", assoc, 0.0).with_notes("exact rational coefficients"));
            c.report.push(Entry::check("Eq.3.round_trip", round_trip, 1e-10));
        }
    }
    c.report.record_cutoff("heisenberg.oracle", cutoff);

    // Coherent states.
    let pts = disk_points(rng, cfg.points(12), 1.5);
    let coherent = (|| -> Result<(f64, f64)> {
        let (mut overlap, mut printed): (f64, f64) = (0.0, 0.0);
        for w in pts.windows(2) {
            let a = fock::coherent_vector(&[w[0]], 40)?;
            let b = fock::coherent_vector(&[w[1]], 40)?;
            let want = (-(w[0].norm_sqr() + w[1].norm_sqr()) / 2.0 + w[0].conj() * w[1]).exp();
            overlap = overlap.max((a.inner(&b)? - want).norm());
        }
        for z in &pts {
            // the printed prefactor e^{−|z|²} gives ⟨z|z⟩ = e^{−|z|²}
            let norm = (-2.0 * z.norm_sqr()).exp() * z.norm_sqr().exp();
            printed = printed.max((norm - 1.0).abs());
        }
        Ok((overlap, printed))
    })();
    match coherent {
        Ok((o, p)) => {
            c.report.push(Entry::check("Eq.1.overlap", o, 1e-10));
            c.report.push(Entry::claim("Eq.1.printed_prefactor", p, 1e-10).with_notes("norm of the state as printed"));
        }
        Err(e) => c.report.push(Entry::error("Eq.1.overlap", 1e-10, &e)),
    }

    // Displaced number states.
    let unitarity = (|| -> Result<f64> {
        let d = 40;
        let mut worst: f64 = 0.0;
        for z in pts.iter().take(4) {
            let op = fock::displacement_operator(&[*z], FockSpace::single(d)?)?;
            let m = op.matrix().matmul(&op.matrix().adjoint())?.leading_block(d / 2);
            worst = worst.max(m.sub(&CMatrix::identity(d / 2))?.max_abs());
        }
        Ok(worst)
    })();
    c.check("Eq.10.unitarity", 1e-9, unitarity);
    let expm = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for z in pts.iter().take(6) {
            for k in 0..=4 {
                let a = fock::displaced_number_vector(&[*z], &[k], 40)?;
                let b = fock::displaced_number_vector_by_expm(&[*z], &[k], 40)?;
                for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                    worst = worst.max((x - y).norm());
                }
            }
        }
        Ok(worst)
    })();
    c.check("Eq.12.vs_expm", 1e-10, expm);
    for k in 0..=2 {
        let id = format!("Eq.11.resolution_of_unity[k={k}]");
        let r = fock::resolution_of_unity(k, 6, 40, 32)
            .and_then(|m| Ok(m.sub(&CMatrix::identity(6))?.max_abs()));
        c.check(&id, 1e-3, r);
    }
    c.finish()
}

// ------------------------------------------------------------------ extended

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

fn ratio_gap(a: &BigRational, b: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    (a - b).to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
}

fn extended_suite(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> VerificationReport {
    let mut c = Collector::new("extended");

    let mut i0: f64 = 0.0;
    for p in 0..=10 {
        i0 = i0.max(ratio_gap(&heisenberg::icoeff(0, p), &BigRational::new(1.into(), factorial(p))));
    }
    c.report.push(Entry::check("Eq.20.I_0p", i0, 0.0).with_notes("I_{0,p} = 1/p! for p <= 10"));
    for k in 0..=5u32 {
        let r = (|| -> Result<(f64, f64)> {
            let (mut quad, mut printed): (f64, f64) = (0.0, 0.0);
            for p in 0..=8u32 {
                let exact_v = heisenberg::icoeff(k, p);
                let q = heisenberg::icoeff_quadrature(k, p, (k + p + 8) as usize)?;
                use num_traits::ToPrimitive;
                quad = quad.max((exact_v.to_f64().unwrap_or(f64::NAN) - q).abs());
                printed = printed.max(ratio_gap(&heisenberg::icoeff_as_printed(k, p), &exact_v));
            }
            Ok((quad, printed))
        })();
        match r {
            Ok((q, p)) => {
                c.report.push(Entry::check(format!("Eq.16-20.quadrature[k={k}]"), q, 1e-10));
                c.report.push(
                    Entry::claim(format!("Eq.20.printed_form[k={k}]"), p, 0.0)
                        .with_notes("binomial form as printed against the Laguerre moments"),
                );
            }
            Err(e) => c.report.push(Entry::error(format!("Eq.16-20.quadrature[k={k}]"), 1e-10, &e)),
        }
    }

    // Eq. (21): kvec = 0 reproduces the Voros product.
    let mut voros_gap: f64 = 0.0;
    let mut assoc: Vec<(u32, f64)> = Vec::new();
    let run = (|| -> Result<()> {
        for t in 0..12 {
            let modes = 1 + t % 2;
            let f = random_exact_symbol(rng, modes, 3);
            let g = random_exact_symbol(rng, modes, 3);
            let ctx = ExtendedStarContext::new(vec![0; modes], 6);
            let d = extended_star(&f, &g, &ctx)?.checked_sub(&voros_star(&f, &g)?)?;
            voros_gap = voros_gap.max(d.max_abs_coeff());
        }
        for k in 1..=3u32 {
            let ctx = ExtendedStarContext::new(vec![k], 8);
            let mut worst: f64 = 0.0;
            for _ in 0..6 {
                let f = random_exact_symbol(rng, 1, 2);
                let g = random_exact_symbol(rng, 1, 2);
                let h = random_exact_symbol(rng, 1, 2);
                worst = worst.max(associativity_defect(&f, &g, &h, &ctx)?.max_abs_coeff());
            }
            assoc.push((k, worst));
        }
        Ok(())
    })();
    match run {
        Ok(()) => {
            c.report.push(Entry::check("Eq.21.kvec_zero_is_voros", voros_gap, 0.0));
            for (k, d) in assoc {
                c.report.push(
                    Entry::claim(format!("Eq.13.associativity_of_differential_form[k={k}]"), d, 0.0)
                        .with_notes("(f*g)*h - f*(g*h) on random degree <= 2 symbols"),
                );
            }
        }
        Err(e) => c.report.push(Entry::error("Eq.21.kvec_zero_is_voros", 0.0, &e)),
    }

    // Eqs. (22)–(26) at N = 2.
    for kvec in [[0u32, 0], [1, 2], [3, 1], [5, 4], [2, 5]] {
        let tag = format!("k=({},{})", kvec[0], kvec[1]);
        let r = generator_relations(&kvec);
        match r {
            Ok(errs) => {
                for (eq, e) in [22, 23, 24, 25, 26].iter().zip(errs) {
                    c.report.push(Entry::check(format!("Eq.{eq}[{tag}]"), e, 0.0));
                }
            }
            Err(e) => c.report.push(Entry::error(format!("Eq.22-26[{tag}]"), 0.0, &e)),
        }
    }
    for k in 0..=5u32 {
        let r = (|| -> Result<f64> {
            let ctx = ExtendedStarContext::new(vec![k], 4);
            let b = moyal_bracket(&gen::<ExactComplex>(1, 0, false), &gen(1, 0, true), &ctx)?;
            let want = PhaseSymbol::constant(1, ExactComplex::new(heisenberg::icoeff(k, 1), BigRational::zero()));
            Ok(b.checked_sub(&want)?.max_abs_coeff())
        })();
        c.check(&format!("Eq.26[k={k}]"), 0.0, r);
    }

    // Eq. (18): the N = 2 product factorizes on separable functions.
    let fact = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for kvec in [[1u32, 2], [3, 0]] {
            let ctx2 = ExtendedStarContext::new(kvec.to_vec(), 8);
            let c1 = ExtendedStarContext::new(vec![kvec[0]], 8);
            let c2 = ExtendedStarContext::new(vec![kvec[1]], 8);
            for _ in 0..4 {
                let (f1, f2) = (random_exact_symbol(rng, 1, 3), random_exact_symbol(rng, 1, 3));
                let (g1, g2) = (random_exact_symbol(rng, 1, 3), random_exact_symbol(rng, 1, 3));
                let f = f1.embed(0, 2)?.pointwise_mul(&f2.embed(1, 2)?)?;
                let g = g1.embed(0, 2)?.pointwise_mul(&g2.embed(1, 2)?)?;
                let lhs = ctx2.star(&f, &g)?;
                let rhs = c1.star(&f1, &g1)?.embed(0, 2)?.pointwise_mul(&c2.star(&f2, &g2)?.embed(1, 2)?)?;
                worst = worst.max(lhs.checked_sub(&rhs)?.max_abs_coeff());
            }
        }
        Ok(worst)
    })();
    c.check("Eq.18.factorization", 0.0, fact);

    // Eq. (17) from inner products of displaced number states.
    let pts = disk_points(rng, cfg.points(10), 1.0);
    for k in 0..=4usize {
        let r = (|| -> Result<f64> {
            let vecs: Vec<_> =
                pts.iter().map(|z| fock::displaced_number_vector(&[*z], &[k], 48)).collect::<Result<_>>()?;
            let mut worst: f64 = 0.0;
            for i in 0..pts.len() {
                for j in 0..pts.len() {
                    let ov = vecs[i].inner(&vecs[j])?.norm_sqr();
                    let s = (pts[j] - pts[i]).norm_sqr();
                    let want = (-s).exp() * starlab_core::specfun::laguerre_l(k, 0.0, s).powi(2);
                    worst = worst.max((ov - want).abs());
                }
            }
            Ok(worst)
        })();
        c.check(&format!("Eq.17.overlap[k={k}]"), 1e-9, r);
    }

    // The operator-product symbol (Eq. 13) against the differential form (Eq. 25).
    for k in 0..=2usize {
        let r = (|| -> Result<(f64, f64)> {
            let z = gen::<Complex64>(1, 0, false);
            let zb = gen::<Complex64>(1, 0, true);
            let ctx = ExtendedStarContext::new(vec![k as u32], 4);
            let diff = extended_star(&z, &zb, &ctx)?;
            let (mut closed, mut vs): (f64, f64) = (0.0, 0.0);
            for p in pts.iter().take(6) {
                let at = SamplePoint::single(*p);
                let o = fock::star_oracle(&z, &zb, &at, &[k], 48)?;
                closed = closed.max((o - (p.norm_sqr() + k as f64 + 1.0)).norm());
                vs = vs.max((o - diff.eval(&at)?).norm());
            }
            Ok((closed, vs))
        })();
        match r {
            Ok((a, b)) => {
                c.report.push(
                    Entry::check(format!("Eq.13.oracle_z_zbar[k={k}]"), a, 1e-10).with_notes("|z|^2 + k + 1"),
                );
                c.report.push(
                    Entry::claim(format!("Eq.13-vs-19.z_zbar[k={k}]"), b, 1e-10)
                        .with_notes("operator-product symbol against I_{k,0} zbar z + I_{k,1}"),
                );
            }
            Err(e) => c.report.push(Entry::error(format!("Eq.13.oracle_z_zbar[k={k}]"), 1e-10, &e)),
        }
    }
    c.report.record_cutoff("extended.oracle", 48);
    c.finish()
}

/// Residuals of Eqs. (22)–(26) for all mode pairs at `N = 2`.
fn generator_relations(kvec: &[u32; 2]) -> Result<[f64; 5]> {
    let n = 2;
    let ctx = ExtendedStarContext::new(kvec.to_vec(), 4);
    let ikn = ExactComplex::new(ctx.i_kn(), BigRational::zero());
    let z = |i| gen::<ExactComplex>(n, i, false);
    let zb = |i| gen::<ExactComplex>(n, i, true);
    let gap = |a: &PhaseSymbol<ExactComplex>, b: &PhaseSymbol<ExactComplex>| -> Result<f64> {
        Ok(a.checked_sub(b)?.max_abs_coeff())
    };
    let mut e = [0.0f64; 5];
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j {
                let r = heisenberg::icoeff(kvec[i], 1) / heisenberg::icoeff(kvec[i], 0);
                PhaseSymbol::constant(n, ExactComplex::new(r, BigRational::zero()))
            } else {
                PhaseSymbol::zero(n)
            };
            e[0] = e[0].max(gap(&ctx.star(&zb(i), &z(j))?, &zb(i).pointwise_mul(&z(j))?.scale(&ikn))?);
            e[1] = e[1].max(gap(&ctx.star(&zb(i), &zb(j))?, &zb(i).pointwise_mul(&zb(j))?.scale(&ikn))?);
            e[1] = e[1].max(gap(&ctx.star(&zb(i), &zb(j))?, &ctx.star(&zb(j), &zb(i))?)?);
            e[2] = e[2].max(gap(&ctx.star(&z(i), &z(j))?, &z(i).pointwise_mul(&z(j))?.scale(&ikn))?);
            e[2] = e[2].max(gap(&ctx.star(&z(i), &z(j))?, &ctx.star(&z(j), &z(i))?)?);
            let want = delta.checked_add(&z(j).pointwise_mul(&zb(i))?)?.scale(&ikn);
            e[3] = e[3].max(gap(&ctx.star(&z(j), &zb(i))?, &want)?);
            e[4] = e[4].max(gap(&moyal_bracket(&z(j), &zb(i), &ctx)?, &delta.scale(&ikn))?);
        }
    }
    Ok(e)
}

// ----------------------------------------------------------------- canonical

fn canonical_suite(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> VerificationReport {
    let mut c = Collector::new("canonical");
    let flow = FlowConfig::default();
    let samples: Vec<SamplePoint> = disk_points(rng, cfg.points(12), 1.0).into_iter().map(SamplePoint::single).collect();
    let z = gen::<Complex64>(1, 0, false);
    let zb = gen::<Complex64>(1, 0, true);
    let observables: Vec<(&str, PhaseSymbol)> = vec![
        ("z", z.clone()),
        ("zbar z", zb.pointwise_mul(&z).expect("same modes")),
        ("z^2", z.pow(2)),
        ("zbar^2", zb.pow(2)),
    ];

    for xi in [0.1, 0.3] {
        let xi_c = Complex64::new(xi, 0.0);
        let lambda = match XiMatrix::scalar(xi_c) {
            Ok(x) => covariance::squeeze_generator(&x),
            Err(e) => {
                c.report.push(Entry::error(format!("Eq.57[xi={xi}]"), 1e-7, &e));
                continue;
            }
        };
        for (name, f) in &observables {
            let label = format!("xi={xi},f={name}");
            c.report(
                &format!("Eq.57.pointwise[{label}]"),
                1e-7,
                covariance::covariance_report(f, &lambda, true, &samples, &flow, &label),
            );
        }
        let cutoff = 40.min(cfg.max_cutoff);
        c.report(
            &format!("Eq.47[xi={xi}]"),
            1e-7,
            covariance::bogoliubov_operator_check(xi_c, cutoff, &samples, &flow),
        );
    }
    let cubic = covariance::cubic_generator();
    // Z is the flowed z, so linear observables agree by construction
    for (name, f) in observables.iter().filter(|(_, f)| f.degree() > 1) {
        let label = format!("cubic,f={name}");
        c.report(
            &format!("Eq.46.violation[{label}]"),
            1e-3,
            covariance::covariance_report(f, &cubic, false, &samples, &flow, &label),
        );
    }

    let mixed = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => Complex64::new(0.2, 0.1),
        (1, 1) => Complex64::new(-0.1, 0.15),
        _ => Complex64::new(0.05, -0.02),
    });
    for (label, xi) in [("N=1,xi=0.3", XiMatrix::scalar(Complex64::new(0.3, 0.0))), ("N=2,complex", XiMatrix::new(mixed))] {
        match xi {
            Ok(x) => {
                c.report(&format!("Eq.56[{label}]"), 1e-12, covariance::transformed_bracket_check(&x, label));
                c.report(&format!("Eq.51[{label}]"), 1e-12, covariance::generator_action_check(&x, label));
                let printed = covariance::bogoliubov_blocks_printed(&x).and_then(|b| b.canonicality_residual());
                c.claim(&format!("Eq.53.printed_ordering[{label}]"), 1e-12, printed);
            }
            Err(e) => c.report.push(Entry::error(format!("Eq.56[{label}]"), 1e-12, &e)),
        }
    }

    // Eq. (36): e_⋆^{−λ} ⋆ e_⋆^{λ} = e_⋆^{λ} ⋆ e_⋆^{−λ} = 1.
    let pts: Vec<SamplePoint> = disk_points(rng, 10, 1.0).into_iter().map(SamplePoint::single).collect();
    let inverse = (|| -> Result<f64> {
        let lambda = zb.pow(2).checked_sub(&z.pow(2))?.scale(&Complex64::new(0.15, 0.0));
        let plus = star_exp(&lambda, &Voros, &pts, 1e-13, 80)?.symbol;
        let minus = star_exp(&(-&lambda), &Voros, &pts, 1e-13, 80)?.symbol;
        let one = PhaseSymbol::one(1);
        Ok(max_gap(&voros_star(&minus, &plus)?, &one, &pts)?.max(max_gap(&voros_star(&plus, &minus)?, &one, &pts)?))
    })();
    c.check("Eq.36.inverse", 1e-8, inverse);

    // Eq. (38) with exact coefficients.
    let zx = gen::<ExactComplex>(1, 0, false);
    let zbx = gen::<ExactComplex>(1, 0, true);
    let half = exact(1, 2, 0, 1);
    let l1 = zbx.pow(2).checked_sub(&zx.pow(2)).map(|s| s.scale(&half));
    let l2 = zbx.pow(3).checked_sub(&zx.pow(3)).map(|s| s.scale(&exact(1, 10, 0, 1)));
    match (l1, l2) {
        (Ok(l1), Ok(l2)) => {
            for t in 0..3 {
                let f = random_exact_symbol(rng, 1, 3);
                c.report(
                    &format!("Eq.38[f{t}]"),
                    0.0,
                    covariance::dlambda_commutator_check(&l1, &l2, &f, &format!("f{t}")),
                );
            }
        }
        (Err(e), _) | (_, Err(e)) => c.report.push(Entry::error("Eq.38", 0.0, &e)),
    }
    c.finish()
}

// ---------------------------------------------------------------------- su11

pub(crate) fn su11_suite(cfg: &RunConfig, rng: &mut ChaCha8Rng, ks: &[f64]) -> VerificationReport {
    let mut c = Collector::new("su11");
    let grid = disk_points(rng, cfg.points(12), 1.0);
    let cap = cfg.max_cutoff;
    c.report("Eq.63.theta_vs_2K3", 1e-9, su11::theta_oracle_check(ks, &grid, cap));
    for &k in ks {
        c.report(&format!("Eq.62[k={k}]"), 1e-8, su11::su11_moyal_check(k, &grid, cap));
        c.report(&format!("Eq.64-67[k={k}]"), 1e-8, su11::theta_star_relations_check(k, &grid, cap));
    }
    let radii: Vec<f64> = (1..=10).map(|i| 0.1 * i as f64).collect();
    c.report("Eq.71[k=1000]", 2e-3, su11::contraction_check(1e3, &radii, 2e-3));
    c.report("Eq.71[k=10000]", 2e-4, su11::contraction_check(1e4, &radii, 2e-4));
    c.finish()
}

// ------------------------------------------------------------------ calogero

pub(crate) fn calogero_suite(cfg: &RunConfig, rng: &mut ChaCha8Rng, etas: &[f64]) -> VerificationReport {
    let mut c = Collector::new("calogero");
    let mut grid = disk_points(rng, cfg.points(12), 1.0);
    // completeness is pinned at |z| = 0.5
    grid.push(Complex64::new(0.5, 0.0));
    for &eta in etas {
        c.report(&format!("calogero[eta={eta}]"), 1e-8, calogero::verify(eta, &grid, 4, cfg.max_cutoff));
    }
    c.finish()
}

// -------------------------------------------------------------------- landau

pub(crate) fn landau_suite(cfg: &RunConfig, rng: &mut ChaCha8Rng, k_max: usize) -> VerificationReport {
    let mut c = Collector::new("landau");
    let grid = disk_points(rng, cfg.points(12), 1.5);
    c.report("landau", 1e-10, landau::verify(k_max, 3, &grid, 48.min(cfg.max_cutoff)));
    c.finish()
}

/// The su11 suite at the given indices, for `starlab su11 verify`.
pub fn run_su11(ks: &[f64], cfg: &RunConfig) -> VerificationReport {
    let mut r = su11_suite(cfg, &mut cfg.rng("su11"), ks);
    finish(&mut r, cfg);
    r
}

pub fn run_calogero(etas: &[f64], cfg: &RunConfig) -> VerificationReport {
    let mut r = calogero_suite(cfg, &mut cfg.rng("calogero"), etas);
    finish(&mut r, cfg);
    r
}

pub fn run_landau(k_max: usize, cfg: &RunConfig) -> VerificationReport {
    let mut r = landau_suite(cfg, &mut cfg.rng("landau"), k_max);
    finish(&mut r, cfg);
    r
}

/// Covariance checks for one squeeze parameter and observable.
pub fn run_covariance(xi: Complex64, f: &PhaseSymbol, noncanonical: bool, cfg: &RunConfig) -> VerificationReport {
    let mut rng = cfg.rng("canonical");
    let samples: Vec<SamplePoint> = disk_points(&mut rng, cfg.points(12), 1.0).into_iter().map(SamplePoint::single).collect();
    let flow = FlowConfig::default();
    let mut c = Collector::new("canonical");
    if noncanonical {
        let label = "cubic";
        c.report(
            "Eq.46.violation[cubic]",
            1e-3,
            covariance::covariance_report(f, &covariance::cubic_generator(), false, &samples, &flow, label),
        );
    } else {
        let label = format!("xi={xi}");
        match XiMatrix::scalar(xi) {
            Ok(x) => {
                let lambda = covariance::squeeze_generator(&x);
                c.report(
                    &format!("Eq.57.pointwise[{label}]"),
                    1e-7,
                    covariance::covariance_report(f, &lambda, true, &samples, &flow, &label),
                );
                c.report(
                    &format!("Eq.47[{label}]"),
                    1e-7,
                    covariance::bogoliubov_operator_check(xi, 40.min(cfg.max_cutoff), &samples, &flow),
                );
            }
            Err(e) => c.report.push(Entry::error(format!("Eq.57[{label}]"), 1e-7, &e)),
        }
    }
    let mut r = c.finish();
    finish(&mut r, cfg);
    r
}
