//! Parameter grids for the verification suites and a parallel runner.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affweyl::{element_length, AffWeylElement};
use crate::cache::CharacterCache;
use crate::error::{Error, Result};
use crate::rootsys::{CartanType, FinWeight, RootSystem, WeylElement};

use super::combinatorics::{verify_enumerate_s, verify_xi_tuple, SMode};
use super::fusion::{
    hchar_datum, verify_exactfg_graded, verify_hchar_product, verify_mtone_dims, FusionSpec, Regime,
};
use super::identities::{
    verify_cv_lemma, verify_cvk, verify_dlk_decomposition, verify_finite_character,
    verify_length_additivity, verify_operator_laws,
};
use super::schur::{is_admissible_pair, partitions, verify_schur_dominance};
use super::{VerificationReport, Verifier};

/// A named family of verification cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Finite,
    Dlk,
    Operators,
    Length,
    Mtone,
    Exactfg,
    Hchar,
    Schur,
    Cvk,
    Cv,
    Xi,
    EnumS,
    Random,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Finite,
        Suite::Dlk,
        Suite::Operators,
        Suite::Length,
        Suite::Mtone,
        Suite::Exactfg,
        Suite::Hchar,
        Suite::Schur,
        Suite::Cvk,
        Suite::Cv,
        Suite::Xi,
        Suite::EnumS,
        Suite::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Finite => "finite",
            Suite::Dlk => "dlk",
            Suite::Operators => "operators",
            Suite::Length => "length",
            Suite::Mtone => "mtone",
            Suite::Exactfg => "exactfg",
            Suite::Hchar => "hchar",
            Suite::Schur => "schur",
            Suite::Cvk => "cvk",
            Suite::Cv => "cv",
            Suite::Xi => "xi",
            Suite::EnumS => "enum_s",
            Suite::Random => "random",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == t)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::parse(
                    0,
                    format!("unknown suite {s:?}; expected one of {}", names.join(", ")),
                )
            })
    }
}

fn default_types() -> Vec<String> {
    ["A1", "A2", "B2", "G2"].map(String::from).to_vec()
}

fn small_types() -> Option<Vec<String>> {
    Some(["A1", "A2"].map(String::from).to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FiniteGrid {
    pub types: Option<Vec<String>>,
    /// Bound on the coordinate sum of λ.
    pub max_sum: i64,
}

impl Default for FiniteGrid {
    fn default() -> Self {
        FiniteGrid {
            types: None,
            max_sum: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DlkGrid {
    pub types: Option<Vec<String>>,
    pub max_k: i64,
}

impl Default for DlkGrid {
    fn default() -> Self {
        DlkGrid {
            types: None,
            max_k: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OperatorGrid {
    pub types: Option<Vec<String>>,
    pub max_length: usize,
}

impl Default for OperatorGrid {
    fn default() -> Self {
        OperatorGrid {
            types: None,
            max_length: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LengthGrid {
    pub types: Option<Vec<String>>,
    /// Bound on (λ|θ) and (μ|θ).
    pub max_theta: i64,
}

impl Default for LengthGrid {
    fn default() -> Self {
        LengthGrid {
            types: None,
            max_theta: 3,
        }
    }
}

/// Shared by the fusion-product suites, the level-constancy check and ξ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FusionGrid {
    pub types: Option<Vec<String>>,
    pub max_level: i64,
    pub max_km: i64,
    /// Bound on (λ|θ) for λ ∈ M⁺.
    pub max_lambda_theta: i64,
    /// Coordinate-sum bound for the last weight of the product formula and
    /// for the weights of the level-constancy check.
    pub max_final_sum: i64,
    /// Add the two-part spot checks.
    pub two_parts: bool,
}

impl Default for FusionGrid {
    fn default() -> Self {
        FusionGrid {
            types: small_types(),
            max_level: 4,
            max_km: 3,
            max_lambda_theta: 2,
            max_final_sum: 2,
            two_parts: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchurGrid {
    pub types: Option<Vec<String>>,
    pub max_n: i64,
}

impl Default for SchurGrid {
    fn default() -> Self {
        SchurGrid {
            types: small_types(),
            max_n: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CvGrid {
    pub types: Option<Vec<String>>,
    pub max_level: i64,
    pub max_mu_theta: i64,
    pub max_nu_sum: i64,
    pub degrees: Vec<i64>,
}

impl Default for CvGrid {
    fn default() -> Self {
        CvGrid {
            types: None,
            max_level: 2,
            max_mu_theta: 2,
            max_nu_sum: 1,
            degrees: vec![-1, 0, 2],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnumSGrid {
    pub max_r: usize,
    pub max_s: usize,
}

impl Default for EnumSGrid {
    fn default() -> Self {
        EnumSGrid { max_r: 6, max_s: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RandomGrid {
    pub types: Option<Vec<String>>,
    pub cases: usize,
}

impl Default for RandomGrid {
    fn default() -> Self {
        RandomGrid {
            types: None,
            cases: 24,
        }
    }
}

/// The full verification grid. Every field has a default, so a TOML file
/// only needs the entries it changes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Types for sections that do not list their own.
    pub types: Vec<String>,
    pub finite: FiniteGrid,
    pub dlk: DlkGrid,
    pub operators: OperatorGrid,
    pub length: LengthGrid,
    pub fusion: FusionGrid,
    pub schur: SchurGrid,
    pub cv: CvGrid,
    pub enum_s: EnumSGrid,
    pub random: RandomGrid,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            types: default_types(),
            finite: FiniteGrid::default(),
            dlk: DlkGrid::default(),
            operators: OperatorGrid::default(),
            length: LengthGrid::default(),
            fusion: FusionGrid::default(),
            schur: SchurGrid::default(),
            cv: CvGrid::default(),
            enum_s: EnumSGrid::default(),
            random: RandomGrid::default(),
        }
    }
}

impl GridConfig {
    pub fn from_toml(s: &str) -> Result<GridConfig> {
        let cfg: GridConfig =
            toml::from_str(s).map_err(|e| Error::Serialization(format!("grid file: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("grid config serializes")
    }

    /// Replaces every type list with `types`.
    pub fn restrict_types(&mut self, types: &[String]) {
        let t = Some(types.to_vec());
        self.types = types.to_vec();
        self.finite.types = t.clone();
        self.dlk.types = t.clone();
        self.operators.types = t.clone();
        self.length.types = t.clone();
        self.fusion.types = t.clone();
        self.schur.types = t.clone();
        self.cv.types = t.clone();
        self.random.types = t;
    }

    fn types_for(&self, suite: Suite) -> &[String] {
        let own = match suite {
            Suite::Finite => &self.finite.types,
            Suite::Dlk => &self.dlk.types,
            Suite::Operators => &self.operators.types,
            Suite::Length => &self.length.types,
            Suite::Mtone | Suite::Exactfg | Suite::Hchar | Suite::Cvk | Suite::Xi => {
                &self.fusion.types
            }
            Suite::Schur => &self.schur.types,
            Suite::Cv => &self.cv.types,
            Suite::Random => &self.random.types,
            Suite::EnumS => return &[],
        };
        own.as_deref().unwrap_or(&self.types)
    }

    /// Rejects unknown types and bounds that would make the grid enormous.
    pub fn validate(&self) -> Result<()> {
        for s in Suite::ALL {
            for t in self.types_for(s) {
                t.parse::<CartanType>()?;
            }
        }
        let checks: [(&str, i64, i64); 12] = [
            ("finite.max_sum", self.finite.max_sum, 12),
            ("dlk.max_k", self.dlk.max_k, 8),
            ("operators.max_length", self.operators.max_length as i64, 12),
            ("length.max_theta", self.length.max_theta, 8),
            ("fusion.max_level", self.fusion.max_level, 8),
            ("fusion.max_km", self.fusion.max_km, 8),
            ("fusion.max_lambda_theta", self.fusion.max_lambda_theta, 6),
            ("fusion.max_final_sum", self.fusion.max_final_sum, 6),
            ("schur.max_n", self.schur.max_n, 8),
            ("cv.max_level", self.cv.max_level, 6),
            ("enum_s.max_r", self.enum_s.max_r as i64, 20),
            ("enum_s.max_s", self.enum_s.max_s as i64, 20),
        ];
        for (name, v, max) in checks {
            if !(0..=max).contains(&v) {
                return Err(Error::Domain(format!("{name} = {v} is outside 0..={max}")));
            }
        }
        if self.random.cases > 10_000 {
            return Err(Error::Domain("random.cases is above 10000".into()));
        }
        if self.cv.max_mu_theta > 6
            || self.cv.max_nu_sum > 6
            || self.cv.degrees.iter().any(|d| d.abs() > 1000)
        {
            return Err(Error::Domain("cv bounds are too large".into()));
        }
        Ok(())
    }
}

/// Run-wide switches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub inject_fault: bool,
    pub seed: u64,
    pub timing: bool,
}

#[derive(Debug, Clone)]
enum Case {
    Finite(FinWeight),
    Dlk {
        k: i64,
        level: i64,
    },
    Operators(AffWeylElement),
    Length(FinWeight, FinWeight, WeylElement),
    Mtone(FusionSpec, Regime),
    Exactfg(FusionSpec, Regime),
    Hchar {
        levels: Vec<i64>,
        lambdas: Vec<FinWeight>,
        level: i64,
        lambda_final: FinWeight,
    },
    Schur(Vec<i64>, Vec<i64>),
    Cvk {
        level: i64,
        lambda: FinWeight,
    },
    Cv {
        level: i64,
        mu: FinWeight,
        a: i64,
        nu: FinWeight,
    },
    Xi(FusionSpec),
    EnumS {
        r: usize,
        s: usize,
        mode: SMode,
    },
}

impl Case {
    fn label(&self) -> String {
        match self {
            Case::Finite(l) => l.to_string(),
            Case::Dlk { k, level } => format!("k={k}/l={level}"),
            Case::Operators(x) => format!("{:?}", x.translation_part()),
            Case::Length(l, m, w) => format!("{l}/{m}/{:?}", w),
            Case::Mtone(s, r) | Case::Exactfg(s, r) => {
                format!("r{}/l={},m={},k={}", r.number(), s.level, s.m, s.k)
            }
            Case::Hchar {
                levels,
                level,
                lambda_final,
                ..
            } => format!("{levels:?}/l={level}/{lambda_final}"),
            Case::Schur(l, m) => format!("{l:?}/{m:?}"),
            Case::Cvk { level, lambda } => format!("l={level}/{lambda}"),
            Case::Cv { level, mu, a, nu } => format!("l={level}/{mu}/A={a}/{nu}"),
            Case::Xi(s) => format!("l={},m={},k={}", s.level, s.m, s.k),
            Case::EnumS { r, s, .. } => format!("r={r}/s={s}"),
        }
    }

    fn run(&self, v: &Verifier<'_>) -> Result<VerificationReport> {
        match self {
            Case::Finite(l) => verify_finite_character(v, l),
            Case::Dlk { k, level } => verify_dlk_decomposition(v, *k, *level),
            Case::Operators(x) => verify_operator_laws(v, x),
            Case::Length(l, m, w) => verify_length_additivity(v, l, m, w),
            Case::Mtone(s, r) => verify_mtone_dims(v, s, *r),
            Case::Exactfg(s, r) => verify_exactfg_graded(v, s, *r),
            Case::Hchar {
                levels,
                lambdas,
                level,
                lambda_final,
            } => verify_hchar_product(v, levels, lambdas, *level, lambda_final),
            Case::Schur(l, m) => verify_schur_dominance(v, l, m),
            Case::Cvk { level, lambda } => verify_cvk(v, *level, lambda),
            Case::Cv { level, mu, a, nu } => verify_cv_lemma(v, *level, mu, *a, nu),
            Case::Xi(s) => verify_xi_tuple(v, s),
            Case::EnumS { r, s, mode } => verify_enumerate_s(v, *r, *s, *mode),
        }
    }
}

/// Affine Weyl group elements of length ≤ `max_len`, by breadth-first search.
fn elements_up_to(rs: &RootSystem, max_len: usize) -> Vec<AffWeylElement> {
    let mut seen: HashSet<AffWeylElement> = HashSet::new();
    let mut layer = vec![AffWeylElement::identity(rs)];
    seen.insert(layer[0].clone());
    let mut out = layer.clone();
    for len in 1..=max_len {
        let mut next = Vec::new();
        for x in &layer {
            for i in 0..=rs.rank() {
                let y = AffWeylElement::simple(rs, i).compose(rs, x);
                if element_length(rs, &y) == len && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        next.sort_by_key(|y| y.reduced_word(rs).0);
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `(ℓ, m, k)` in regime `r` within the grid bounds. Regime 1 does not
/// depend on m, so it is listed once with m = k.
fn regime_params(g: &FusionGrid, r: Regime) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for l in 1..=g.max_level {
        for k in 1..=g.max_km.min(l) {
            for m in k..=g.max_km.min(l) {
                if r == Regime::One && m != k {
                    continue;
                }
                if r.applies(l, m, k) {
                    out.push((l, m, k));
                }
            }
        }
    }
    out
}

fn fusion_specs(rs: &RootSystem, g: &FusionGrid) -> Vec<FusionSpec> {
    let mut out = Vec::new();
    for lam in rs.m_plus_up_to(g.max_lambda_theta) {
        let parts = if lam.is_zero() { vec![] } else { vec![lam] };
        for l in 1..=g.max_level {
            for k in 1..=g.max_km.min(l) {
                for m in k..=g.max_km.min(l) {
                    out.push(FusionSpec::new(l, m, k, parts.clone()));
                }
            }
        }
    }
    out
}

fn cases_for(cfg: &GridConfig, suite: Suite, rs: &RootSystem, seed: u64) -> Vec<Case> {
    let mut out = Vec::new();
    match suite {
        Suite::Finite => {
            for l in rs.dominant_weights_up_to(cfg.finite.max_sum) {
                out.push(Case::Finite(l));
            }
        }
        Suite::Dlk => {
            for k in 1..=cfg.dlk.max_k {
                for level in k..=2 * k {
                    out.push(Case::Dlk { k, level });
                }
            }
        }
        Suite::Operators => {
            if rs.rank() <= 2 {
                for x in elements_up_to(rs, cfg.operators.max_length) {
                    out.push(Case::Operators(x));
                }
            }
        }
        Suite::Length => {
            let ms = rs.m_plus_up_to(cfg.length.max_theta);
            let ws = rs.weyl_group();
            for l in &ms {
                for m in &ms {
                    for w in &ws {
                        out.push(Case::Length(l.clone(), m.clone(), w.clone()));
                    }
                }
            }
        }
        Suite::Mtone | Suite::Exactfg => {
            let g = &cfg.fusion;
            for lam in rs.m_plus_up_to(g.max_lambda_theta) {
                let parts = if lam.is_zero() { vec![] } else { vec![lam] };
                for r in [Regime::One, Regime::Two, Regime::Three] {
                    for (l, m, k) in regime_params(g, r) {
                        let spec = FusionSpec::new(l, m, k, parts.clone());
                        out.push(if suite == Suite::Mtone {
                            Case::Mtone(spec, r)
                        } else {
                            Case::Exactfg(spec, r)
                        });
                    }
                }
            }
            if g.two_parts && g.max_level >= 2 {
                let th = rs.theta().clone();
                let spec = FusionSpec::new(2, 1, 1, vec![th.clone(), th]);
                out.push(if suite == Suite::Mtone {
                    Case::Mtone(spec, Regime::One)
                } else {
                    Case::Exactfg(spec, Regime::One)
                });
            }
        }
        Suite::Hchar => {
            let g = &cfg.fusion;
            let finals: Vec<(i64, FinWeight)> = (1..=g.max_level)
                .flat_map(|l| {
                    rs.dominant_weights_up_to(g.max_final_sum)
                        .into_iter()
                        .map(move |f| (l, f))
                })
                .filter(|(l, f)| hchar_datum(rs, *l, f).is_ok())
                .collect();
            for lam in rs.m_plus_up_to(g.max_lambda_theta) {
                for l1 in 1..=g.max_level {
                    for (l, f) in finals.iter().filter(|(l, _)| *l <= l1) {
                        out.push(Case::Hchar {
                            levels: vec![l1],
                            lambdas: vec![lam.clone()],
                            level: *l,
                            lambda_final: f.clone(),
                        });
                    }
                }
            }
            if g.two_parts && g.max_level >= 2 {
                let th = rs.theta().clone();
                out.push(Case::Hchar {
                    levels: vec![2, 1],
                    lambdas: vec![th.clone(), th.clone()],
                    level: 1,
                    lambda_final: th,
                });
            }
        }
        Suite::Schur => {
            for n in 1..=cfg.schur.max_n {
                let ps = partitions(n);
                for a in &ps {
                    for b in &ps {
                        if is_admissible_pair(a, b) {
                            out.push(Case::Schur(a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        Suite::Cvk => {
            for level in 1..=cfg.fusion.max_level {
                for lambda in rs.dominant_weights_up_to(cfg.fusion.max_final_sum) {
                    out.push(Case::Cvk { level, lambda });
                }
            }
        }
        Suite::Cv => {
            let g = &cfg.cv;
            for level in 1..=g.max_level {
                for mu in rs.m_plus_up_to(g.max_mu_theta) {
                    for &a in &g.degrees {
                        for nu in rs.dominant_weights_up_to(g.max_nu_sum) {
                            out.push(Case::Cv {
                                level,
                                mu: mu.clone(),
                                a,
                                nu,
                            });
                        }
                    }
                }
            }
        }
        Suite::Xi => {
            for spec in fusion_specs(rs, &cfg.fusion) {
                out.push(Case::Xi(spec));
            }
        }
        Suite::EnumS => unreachable!("enum_s does not depend on a type"),
        Suite::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ type_salt(rs));
            let ms = rs.m_plus_up_to(2);
            let ws = rs.weyl_group();
            for _ in 0..cfg.random.cases {
                let case = match rng.gen_range(0..5) {
                    0 => {
                        let ds = rs.dominant_weights_up_to(3);
                        Case::Finite(ds.choose(&mut rng).expect("nonempty").clone())
                    }
                    1 => {
                        let k = rng.gen_range(1..=2);
                        Case::Dlk {
                            k,
                            level: rng.gen_range(k..=2 * k),
                        }
                    }
                    2 => Case::Length(
                        ms.choose(&mut rng).expect("nonempty").clone(),
                        ms.choose(&mut rng).expect("nonempty").clone(),
                        ws.choose(&mut rng).expect("nonempty").clone(),
                    ),
                    3 => Case::Cv {
                        level: rng.gen_range(1..=2),
                        mu: ms.choose(&mut rng).expect("nonempty").clone(),
                        a: rng.gen_range(-3..=3),
                        nu: rs
                            .dominant_weights_up_to(1)
                            .choose(&mut rng)
                            .expect("nonempty")
                            .clone(),
                    },
                    _ => {
                        let l = rng.gen_range(1..=4);
                        let m = rng.gen_range(1..=l);
                        let k = rng.gen_range(1..=m);
                        let lam = ms.choose(&mut rng).expect("nonempty").clone();
                        let parts = if lam.is_zero() { vec![] } else { vec![lam] };
                        Case::Xi(FusionSpec::new(l, m, k, parts))
                    }
                };
                out.push(case);
            }
        }
    }
    out
}

fn type_salt(rs: &RootSystem) -> u64 {
    rs.cartan_type()
        .to_string()
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
        })
}

fn enum_s_cases(g: &EnumSGrid) -> Vec<Case> {
    let mut out = Vec::new();
    for r in 0..=g.max_r {
        for s in 0..=g.max_s {
            out.push(Case::EnumS {
                r,
                s,
                mode: SMode::All,
            });
            for k in 1..=s {
                out.push(Case::EnumS {
                    r,
                    s,
                    mode: SMode::Upper(k),
                });
                out.push(Case::EnumS {
                    r,
                    s,
                    mode: SMode::Lower(k),
                });
            }
        }
    }
    out
}

/// Number of cases each suite contributes under `cfg`.
pub fn case_count(cfg: &GridConfig, suite: Suite) -> Result<usize> {
    if suite == Suite::EnumS {
        return Ok(enum_s_cases(&cfg.enum_s).len());
    }
    let mut n = 0;
    for t in cfg.types_for(suite) {
        let rs = RootSystem::new(t.parse()?)?;
        n += cases_for(cfg, suite, &rs, 0).len();
    }
    Ok(n)
}

/// Runs the selected suites. Reports come back in a fixed order: by suite
/// as listed, then by type as configured, then by case.
pub fn run_suites(
    cfg: &GridConfig,
    suites: &[Suite],
    cache: &CharacterCache,
    opts: RunOptions,
) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let mut type_names: Vec<String> = Vec::new();
    for &s in suites {
        for t in cfg.types_for(s) {
            let canon = t.parse::<CartanType>()?.to_string();
            if !type_names.contains(&canon) {
                type_names.push(canon);
            }
        }
    }
    if type_names.is_empty() {
        type_names.push("A1".into());
    }
    let systems: Vec<RootSystem> = type_names
        .iter()
        .map(|t| RootSystem::new(t.parse()?))
        .collect::<Result<_>>()?;
    let verifiers: Vec<Verifier<'_>> = systems
        .iter()
        .map(|rs| {
            Verifier::new(rs, cache)
                .with_fault(opts.inject_fault)
                .with_seed(opts.seed)
                .with_timing(opts.timing)
        })
        .collect();

    let mut jobs: Vec<(Suite, usize, Case)> = Vec::new();
    for &s in suites {
        if s == Suite::EnumS {
            jobs.extend(enum_s_cases(&cfg.enum_s).into_iter().map(|c| (s, 0, c)));
            continue;
        }
        for t in cfg.types_for(s) {
            let canon = t.parse::<CartanType>()?.to_string();
            let idx = type_names
                .iter()
                .position(|x| *x == canon)
                .expect("type registered");
            jobs.extend(
                cases_for(cfg, s, &systems[idx], opts.seed)
                    .into_iter()
                    .map(|c| (s, idx, c)),
            );
        }
    }

    Ok(jobs
        .par_iter()
        .map(|(s, idx, case)| {
            let v = &verifiers[*idx];
            let mut r = case.run(v).unwrap_or_else(|e| {
                let mut c = v.check(s.name(), format!("{}/{}", v.rs.cartan_type(), case.label()));
                c.error("computation failed", e);
                c.finish()
            });
            if *s == Suite::Random && r.suite != s.name() {
                r.case_id = format!("{}:{}", r.suite, r.case_id);
                r.suite = s.name().to_string();
            }
            r
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("enum-s".parse::<Suite>().unwrap(), Suite::EnumS);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn toml_defaults_and_overrides() {
        let cfg = GridConfig::from_toml("").unwrap();
        assert_eq!(cfg, GridConfig::default());
        let cfg = GridConfig::from_toml("types = [\"A1\"]\n[dlk]\nmax_k = 2\n").unwrap();
        assert_eq!(cfg.dlk.max_k, 2);
        assert_eq!(cfg.types_for(Suite::Dlk), ["A1".to_string()]);
        assert_eq!(cfg.types_for(Suite::Schur).len(), 2);
        assert!(GridConfig::from_toml("[dlk]\nmax_q = 2\n").is_err());
        assert!(GridConfig::from_toml("types = [\"E9\"]").is_err());
        assert_eq!(GridConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn elements_by_length() {
        let rs = RootSystem::new("A1".parse().unwrap()).unwrap();
        // the infinite dihedral group has two elements of each positive length
        assert_eq!(elements_up_to(&rs, 4).len(), 9);
    }

    #[test]
    fn small_run_is_deterministic() {
        let mut cfg = GridConfig::default();
        cfg.restrict_types(&["A1".to_string()]);
        cfg.random.cases = 6;
        let cache = CharacterCache::in_memory();
        let opts = RunOptions {
            seed: 7,
            ..Default::default()
        };
        let suites = [Suite::Dlk, Suite::Random, Suite::Xi];
        let a = run_suites(&cfg, &suites, &cache, opts).unwrap();
        let b = run_suites(&cfg, &suites, &cache, opts).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.passed), "{a:?}");
        let bad = run_suites(
            &cfg,
            &[Suite::Dlk],
            &cache,
            RunOptions {
                inject_fault: true,
                ..opts
            },
        )
        .unwrap();
        assert!(bad.iter().all(|r| !r.passed && r.witness.is_some()));
    }
}
