//! Canonical JSON form of phase-space symbols:
//! `{"modes":N,"terms":[{"m":[..],"n":[..],"re":..,"im":..}]}`, terms in
//! the symbol's graded-lexicographic order.

use serde::{Deserialize, Serialize};
use starlab_core::symbol::{Monomial, PhaseSymbol};
use starlab_core::Complex64;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolJson {
    pub modes: usize,
    pub terms: Vec<TermJson>,
}

impl From<&PhaseSymbol> for SymbolJson {
    fn from(s: &PhaseSymbol) -> Self {
        SymbolJson {
            modes: s.modes(),
            terms: s
                .terms()
                .map(|(mono, c)| TermJson {
                    m: mono.zbar_exponents().to_vec(),
                    n: mono.z_exponents().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl SymbolJson {
    pub fn to_symbol(&self) -> CliResult<PhaseSymbol> {
        if self.modes == 0 {
            return Err(CliError::Symbol("modes must be positive".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            if t.m.len() != self.modes || t.n.len() != self.modes {
                return Err(CliError::Symbol(format!(
                    "term {i}: exponent vectors must have length {}",
                    self.modes
                )));
            }
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(CliError::Symbol(format!("term {i}: coefficient is not finite")));
            }
            terms.push((Monomial::new(t.m.clone(), t.n.clone())?, Complex64::new(t.re, t.im)));
        }
        Ok(PhaseSymbol::from_terms(self.modes, terms)?)
    }
}

pub fn parse_symbol(text: &str) -> CliResult<PhaseSymbol> {
    let raw: SymbolJson = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.to_symbol()
}

pub fn symbol_to_json(s: &PhaseSymbol) -> String {
    serde_json::to_string(&SymbolJson::from(s)).expect("symbol JSON serializes")
}
