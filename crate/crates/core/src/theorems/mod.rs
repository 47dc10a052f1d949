//! Executable character identities for Demazure modules and fusion
//! products, and the combinatorial data attached to them.
//!
//! Every check produces a [`VerificationReport`]. A failing report always
//! carries a witness: the first monomial, dimension or multiplicity at which
//! the two sides disagree.

mod combinatorics;
mod fusion;
mod grid;
mod identities;
mod schur;

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::affring::{AffWeight, CharElement, GradedCharacter};
use crate::cache::CharacterCache;
use crate::demazure::{finite_character, weyl_dim};
use crate::error::Result;
use crate::rootsys::{FinWeight, RootSystem};

pub use combinatorics::{
    enumerate_s, s_count_generating, verify_enumerate_s, verify_xi_tuple, xi_expected_sizes,
    xi_tuple, SMode, XiTuple,
};
pub use fusion::{
    fusion_character, fusion_dim, fusion_factors, hchar_datum, verify_exactfg_graded,
    verify_hchar_product, verify_mtone_dims, FusionSpec, Regime, Shape,
};
pub use grid::{
    case_count, run_suites, CvGrid, DlkGrid, EnumSGrid, FiniteGrid, FusionGrid, GridConfig,
    LengthGrid, OperatorGrid, RandomGrid, RunOptions, SchurGrid, Suite,
};
pub use identities::{
    reduced_words, verify_cv_lemma, verify_cvk, verify_dlk_decomposition, verify_finite_character,
    verify_length_additivity, verify_operator_laws,
};
pub use schur::{is_admissible_pair, partitions, verify_schur_dominance};

/// Outcome of one verification case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub case_id: String,
    pub cartan_type: String,
    pub inputs: BTreeMap<String, String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Short summary of what was compared, e.g. `dim 4 = 1 + 3`.
    pub detail: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Shared state for a verification run.
pub struct Verifier<'a> {
    pub rs: &'a RootSystem,
    pub cache: &'a CharacterCache,
    /// Perturb one coefficient of the first compared quantity in every case.
    pub inject_fault: bool,
    pub seed: u64,
    pub timing: bool,
    finite: Mutex<HashMap<FinWeight, CharElement>>,
}

impl<'a> Verifier<'a> {
    pub fn new(rs: &'a RootSystem, cache: &'a CharacterCache) -> Self {
        Verifier {
            rs,
            cache,
            inject_fault: false,
            seed: 0,
            timing: false,
            finite: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_fault(mut self, on: bool) -> Self {
        self.inject_fault = on;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_timing(mut self, on: bool) -> Self {
        self.timing = on;
        self
    }

    /// ch V(λ), memoized per verifier.
    pub fn finite(&self, lambda: &FinWeight) -> Result<CharElement> {
        if let Some(c) = self.finite.lock().expect("finite cache").get(lambda) {
            return Ok(c.clone());
        }
        let c = finite_character(self.rs, lambda)?;
        self.finite
            .lock()
            .expect("finite cache")
            .insert(lambda.clone(), c.clone());
        Ok(c)
    }

    /// ch_h D(ℓ,λ); `D(0,0)` is the trivial module.
    pub fn demazure_h(&self, level: i64, lambda: &FinWeight) -> Result<CharElement> {
        if level == 0 && lambda.is_zero() {
            return Ok(CharElement::one(self.rs.rank()));
        }
        Ok(self
            .cache
            .demazure(self.rs, level, lambda)?
            .char
            .restrict_h())
    }

    /// dim D(ℓ,λ).
    pub fn demazure_dim(&self, level: i64, lambda: &FinWeight) -> Result<BigInt> {
        if level == 0 && lambda.is_zero() {
            return Ok(BigInt::from(1));
        }
        Ok(self.cache.demazure(self.rs, level, lambda)?.dim())
    }

    pub fn weyl_dim(&self, lambda: &FinWeight) -> Result<BigInt> {
        weyl_dim(self.rs, lambda)
    }

    pub(crate) fn check(&self, suite: &str, case_id: String) -> Check {
        Check {
            report: VerificationReport {
                suite: suite.to_string(),
                case_id,
                cartan_type: self.rs.cartan_type().to_string(),
                inputs: BTreeMap::new(),
                passed: true,
                witness: None,
                detail: String::new(),
                seed: self.seed,
                elapsed_ms: None,
            },
            fault_pending: self.inject_fault,
            rank: self.rs.rank(),
            timing: self.timing,
            start: Instant::now(),
        }
    }
}

/// Accumulates comparisons for one case and records the first failure.
pub(crate) struct Check {
    pub(crate) report: VerificationReport,
    fault_pending: bool,
    rank: usize,
    timing: bool,
    start: Instant,
}

impl Check {
    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.report
            .inputs
            .insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, detail: impl Into<String>) {
        let d = detail.into();
        if self.report.detail.is_empty() {
            self.report.detail = d;
        } else {
            self.report.detail.push_str("; ");
            self.report.detail.push_str(&d);
        }
    }

    fn fail(&mut self, witness: String) {
        if self.report.passed {
            self.report.passed = false;
            self.report.witness = Some(witness);
        }
    }

    fn take_fault(&mut self) -> bool {
        std::mem::replace(&mut self.fault_pending, false)
    }

    /// Requires `cond`; `witness` is only built on failure.
    pub fn holds(&mut self, cond: bool, witness: impl FnOnce() -> String) {
        if !cond {
            self.fail(witness());
        }
    }

    pub fn ints(&mut self, what: &str, lhs: &BigInt, rhs: &BigInt) {
        let lhs = if self.take_fault() {
            lhs + 1
        } else {
            lhs.clone()
        };
        if lhs != *rhs {
            self.fail(format!("{what}: {lhs} != {rhs}"));
        }
    }

    pub fn chars(&mut self, what: &str, lhs: &CharElement, rhs: &CharElement) {
        let mut lhs = lhs.clone();
        if self.take_fault() {
            let w = lhs
                .sorted_terms()
                .first()
                .map(|(w, _)| (*w).clone())
                .or_else(|| rhs.sorted_terms().first().map(|(w, _)| (*w).clone()));
            if let Some(w) = w {
                lhs.add_term(w, BigInt::from(1));
            }
        }
        if let Some(w) = first_char_difference(&lhs, rhs) {
            self.fail(format!("{what}: {w}"));
        }
    }

    pub fn graded(&mut self, what: &str, lhs: &GradedCharacter, rhs: &GradedCharacter) {
        let mut lhs = lhs.clone();
        if self.take_fault() {
            let key = lhs
                .pieces()
                .chain(rhs.pieces())
                .filter_map(|(g, c)| c.sorted_terms().first().map(|(w, _)| (g, w.fin.clone())))
                .min();
            let (g, w) = key.unwrap_or_else(|| (0, FinWeight::zero(self.rank)));
            lhs.perturb(g, w, 1);
        }
        if let Some(w) = lhs.first_difference(rhs) {
            self.fail(format!("{what}: {w}"));
        }
    }

    /// Records an error from a computation inside the case as a failure.
    pub fn error(&mut self, context: &str, e: crate::Error) {
        self.fail(format!("{context}: {e}"));
    }

    pub fn finish(mut self) -> VerificationReport {
        if self.timing {
            self.report.elapsed_ms = Some(self.start.elapsed().as_millis() as u64);
        }
        self.report
    }
}

/// The smallest exponent at which two characters differ, as text.
pub fn first_char_difference(a: &CharElement, b: &CharElement) -> Option<String> {
    let mut keys: Vec<&AffWeight> = a.terms().chain(b.terms()).map(|(w, _)| w).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|w| {
        let (x, y) = (a.coeff(w), b.coeff(w));
        (x != y).then(|| format!("e^{w}: {x} != {y}"))
    })
}
