//! Public-API runs of the symbol calculus against the truncated Fock oracle.

use proptest::prelude::*;
use starlab_core::calogero;
use starlab_core::fock::star_oracle;
use starlab_core::heisenberg::voros_star;
use starlab_core::landau;
use starlab_core::report::Status;
use starlab_core::symbol::{Monomial, PhaseSymbol, SamplePoint};
use starlab_core::Complex64;

fn symbol(terms: Vec<(u32, u32, f64, f64)>) -> PhaseSymbol {
    PhaseSymbol::from_terms(
        1,
        terms.into_iter().map(|(m, n, re, im)| (Monomial::new(vec![m], vec![n]).unwrap(), Complex64::new(re, im))),
    )
    .unwrap()
}

fn arb_symbol() -> impl Strategy<Value = PhaseSymbol> {
    prop::collection::vec((0u32..3, 0u32..3, -2.0..2.0f64, -2.0..2.0f64), 1..4).prop_map(symbol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn voros_matches_operator_product(
        f in arb_symbol(),
        g in arb_symbol(),
        r in 0.0..1.2f64,
        phase in 0.0..6.3f64,
    ) {
        let at = SamplePoint::single(Complex64::from_polar(r, phase));
        let symbolic = voros_star(&f, &g).unwrap().eval(&at).unwrap();
        let oracle = star_oracle(&f, &g, &at, &[0], 48).unwrap();
        prop_assert!((symbolic - oracle).norm() < 1e-9, "{symbolic} vs {oracle}");
    }
}

#[test]
fn z_star_zbar_has_the_unit_shift() {
    let z = PhaseSymbol::generator(1, 0, false).unwrap();
    let zbar = PhaseSymbol::generator(1, 0, true).unwrap();
    let prod = voros_star(&z, &zbar).unwrap();
    assert_eq!(prod, symbol(vec![(1, 1, 1.0, 0.0), (0, 0, 1.0, 0.0)]));
    assert_eq!(voros_star(&zbar, &z).unwrap(), symbol(vec![(1, 1, 1.0, 0.0)]));
}

#[test]
fn calogero_report_has_no_failures() {
    let grid = [Complex64::new(0.5, 0.0), Complex64::from_polar(0.8, 2.0)];
    for eta in [0.0, 0.5, 1.0] {
        let r = calogero::verify(eta, &grid, 3, 512).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.entries.iter().any(|e| e.status == Status::PaperDiscrepancy));
    }
}

#[test]
fn landau_report_has_no_failures() {
    let grid = [Complex64::new(0.3, 0.4), Complex64::from_polar(1.1, -1.0)];
    let r = landau::verify(2, 2, &grid, 48).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}
