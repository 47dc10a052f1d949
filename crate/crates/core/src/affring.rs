//! Affine weights `μ + aΛ₀ + bδ` and the group ring `Z[P̂]` of formal sums of
//! their exponentials.
//!
//! Grades follow the current-algebra convention: `x ⊗ t^r` raises the
//! δ-coefficient by `r`, so the grade of `e^{μ+aΛ₀+bδ}` relative to a base
//! degree `b₀` is `b - b₀`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{FinWeight, RootSystem};
use crate::Rational;

/// Element `fin + level·Λ₀ + degree·δ` of the affine weight space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffWeight {
    pub fin: FinWeight,
    pub level: Rational,
    pub degree: Rational,
}

impl AffWeight {
    pub fn new(fin: FinWeight, level: Rational, degree: Rational) -> Self {
        AffWeight { fin, level, degree }
    }

    pub fn from_ints(fin: &[i64], level: i64, degree: i64) -> Self {
        AffWeight::new(
            FinWeight::from_ints(fin),
            Rational::from_integer(level),
            Rational::from_integer(degree),
        )
    }

    /// A finite weight placed at level 0, degree 0.
    pub fn finite(fin: FinWeight) -> Self {
        AffWeight::new(fin, Rational::zero(), Rational::zero())
    }

    pub fn zero(rank: usize) -> Self {
        AffWeight::finite(FinWeight::zero(rank))
    }

    pub fn lambda0(rank: usize) -> Self {
        AffWeight::new(FinWeight::zero(rank), Rational::one(), Rational::zero())
    }

    pub fn delta(rank: usize) -> Self {
        AffWeight::new(FinWeight::zero(rank), Rational::zero(), Rational::one())
    }

    /// `fin + level·Λ₀` at degree 0.
    pub fn at_level(fin: FinWeight, level: i64) -> Self {
        AffWeight::new(fin, Rational::from_integer(level), Rational::zero())
    }

    /// Λ_i = ω_i + ⟨ω_i, θ∨⟩Λ₀ for i ≥ 1, and Λ₀ for i = 0.
    pub fn fundamental(rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank();
        if i == 0 {
            return AffWeight::lambda0(n);
        }
        let w = FinWeight::fundamental(n, i - 1);
        let level = rs.theta_pairing(&w);
        AffWeight::new(w, level, Rational::zero())
    }

    /// ρ̂ = Σ_{i∈Î} Λ_i.
    pub fn rho_hat(rs: &RootSystem) -> Self {
        AffWeight::at_level(rs.rho().clone(), rs.dual_coxeter_number())
    }

    /// Affine simple root α_i; α₀ = δ − θ.
    pub fn simple_root(rs: &RootSystem, i: usize) -> Self {
        if i == 0 {
            AffWeight::new(-rs.theta(), Rational::zero(), Rational::one())
        } else {
            AffWeight::finite(rs.simple_root(i - 1).clone())
        }
    }

    pub fn rank(&self) -> usize {
        self.fin.rank()
    }

    /// ⟨ξ, α_i∨⟩ for i ∈ Î.
    pub fn pairing(&self, rs: &RootSystem, i: usize) -> Rational {
        if i == 0 {
            self.level - rs.theta_pairing(&self.fin)
        } else {
            self.fin.0[i - 1]
        }
    }

    pub fn is_dominant(&self, rs: &RootSystem) -> bool {
        (0..=rs.rank()).all(|i| !self.pairing(rs, i).is_negative())
    }

    /// The extended invariant form: (δ|Λ₀) = 1, (δ|δ) = (Λ₀|Λ₀) = 0.
    pub fn form(&self, rs: &RootSystem, other: &AffWeight) -> Rational {
        rs.form(&self.fin, &other.fin) + self.level * other.degree + self.degree * other.level
    }

    pub fn scale(&self, s: Rational) -> Self {
        AffWeight::new(self.fin.scale(s), self.level * s, self.degree * s)
    }

    pub fn add_scaled(&self, other: &AffWeight, s: Rational) -> Self {
        AffWeight::new(
            self.fin.add_scaled(&other.fin, s),
            self.level + other.level * s,
            self.degree + other.degree * s,
        )
    }

    pub fn with_degree(&self, degree: Rational) -> Self {
        AffWeight::new(self.fin.clone(), self.level, degree)
    }

    pub fn is_integral(&self) -> bool {
        self.fin.is_integral() && self.level.is_integer() && self.degree.is_integer()
    }
}

impl Add for &AffWeight {
    type Output = AffWeight;
    fn add(self, rhs: &AffWeight) -> AffWeight {
        AffWeight::new(
            &self.fin + &rhs.fin,
            self.level + rhs.level,
            self.degree + rhs.degree,
        )
    }
}

impl Sub for &AffWeight {
    type Output = AffWeight;
    fn sub(self, rhs: &AffWeight) -> AffWeight {
        AffWeight::new(
            &self.fin - &rhs.fin,
            self.level - rhs.level,
            self.degree - rhs.degree,
        )
    }
}

impl Neg for &AffWeight {
    type Output = AffWeight;
    fn neg(self) -> AffWeight {
        AffWeight::new(-&self.fin, -self.level, -self.degree)
    }
}

impl fmt::Display for AffWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fin)?;
        if !self.level.is_zero() {
            write!(f, "+{}Λ0", self.level)?;
        }
        if !self.degree.is_zero() {
            write!(f, "{:+}δ", self.degree)?;
        }
        Ok(())
    }
}

/// Finitely supported integer combination `Σ c_ξ e^ξ`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharElement {
    terms: HashMap<AffWeight, BigInt>,
}

impl CharElement {
    pub fn zero() -> Self {
        CharElement::default()
    }

    pub fn monomial(w: AffWeight) -> Self {
        let mut terms = HashMap::with_capacity(1);
        terms.insert(w, BigInt::one());
        CharElement { terms }
    }

    /// The multiplicative identity `e^0` in rank `rank`.
    pub fn one(rank: usize) -> Self {
        CharElement::monomial(AffWeight::zero(rank))
    }

    pub fn from_terms<I: IntoIterator<Item = (AffWeight, BigInt)>>(it: I) -> Self {
        let mut c = CharElement::zero();
        for (w, k) in it {
            c.add_term(w, k);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &AffWeight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffWeight, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (AffWeight, BigInt)> {
        self.terms.into_iter()
    }

    /// Terms sorted by (weight, level, degree).
    pub fn sorted_terms(&self) -> Vec<(&AffWeight, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, w: AffWeight, k: BigInt) {
        if k.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += k;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(k);
            }
        }
    }

    fn add_term_ref(&mut self, w: &AffWeight, k: &BigInt) {
        if let Some(c) = self.terms.get_mut(w) {
            *c += k;
            if c.is_zero() {
                self.terms.remove(w);
            }
        } else if !k.is_zero() {
            self.terms.insert(w.clone(), k.clone());
        }
    }

    pub fn add_assign_ref(&mut self, other: &CharElement) {
        for (w, k) in &other.terms {
            self.add_term_ref(w, k);
        }
    }

    /// Adds `k·other`.
    pub fn add_scaled(&mut self, other: &CharElement, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * k);
        }
    }

    pub fn scalar_mul(&self, k: &BigInt) -> CharElement {
        if k.is_zero() {
            return CharElement::zero();
        }
        CharElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Multiplication by the monomial `e^w`.
    pub fn shift(&self, w: &AffWeight) -> CharElement {
        CharElement {
            terms: self.terms.iter().map(|(x, c)| (x + w, c.clone())).collect(),
        }
    }

    /// Applies `f` to every exponent, merging collisions.
    pub fn map_weights<F: Fn(&AffWeight) -> AffWeight>(&self, f: F) -> CharElement {
        let mut out = CharElement::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Image modulo I_δ: every δ-coefficient set to zero.
    pub fn specialize_delta(&self) -> CharElement {
        self.map_weights(|w| w.with_degree(Rational::zero()))
    }

    /// The h-character: forgets both Λ₀ and δ.
    pub fn restrict_h(&self) -> CharElement {
        self.map_weights(|w| AffWeight::finite(w.fin.clone()))
    }

    /// Σ c_ξ, i.e. the dimension of a module with this character.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// The q-graded h-character relative to `base_degree`: the grade of
    /// `e^{μ+aΛ₀+bδ}` is `b - base_degree`.
    pub fn graded_character(&self, base_degree: Rational) -> Result<GradedCharacter> {
        let mut pieces: BTreeMap<i64, CharElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let g = w.degree - base_degree;
            if !g.is_integer() || g.is_negative() {
                return Err(Error::Normalization(format!(
                    "term e^{w} has grade {g} relative to base degree {base_degree}"
                )));
            }
            pieces
                .entry(g.to_integer())
                .or_default()
                .add_term(AffWeight::finite(w.fin.clone()), c.clone());
        }
        pieces.retain(|_, v| !v.is_zero());
        Ok(GradedCharacter { pieces })
    }

    pub fn to_json_entries(&self) -> Vec<JsonTerm> {
        self.sorted_terms()
            .into_iter()
            .map(|(w, c)| JsonTerm {
                weight: w.fin.0.iter().map(JsonNum::from_rational).collect(),
                level: JsonNum::from_rational(&w.level),
                degree: JsonNum::from_rational(&w.degree),
                coeff: JsonNum::from_bigint(c),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_entries()).expect("JSON terms always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_entries()).expect("JSON terms always serialize")
    }

    pub fn from_json_entries(entries: &[JsonTerm]) -> Result<CharElement> {
        let mut rank = None;
        let mut out = CharElement::zero();
        for (k, e) in entries.iter().enumerate() {
            if *rank.get_or_insert(e.weight.len()) != e.weight.len() {
                return Err(Error::Serialization(format!(
                    "entry {k}: weight has {} coordinates, expected {}",
                    e.weight.len(),
                    rank.unwrap_or_default()
                )));
            }
            let fin = e
                .weight
                .iter()
                .map(JsonNum::to_rational)
                .collect::<Result<Vec<_>>>()?;
            let w = AffWeight::new(
                FinWeight(fin),
                e.level.to_rational()?,
                e.degree.to_rational()?,
            );
            out.add_term(w, e.coeff.to_bigint()?);
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<CharElement> {
        let entries: Vec<JsonTerm> = serde_json::from_str(s)?;
        CharElement::from_json_entries(&entries)
    }
}

impl Add for &CharElement {
    type Output = CharElement;
    fn add(self, rhs: &CharElement) -> CharElement {
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        big.add_assign_ref(small);
        big
    }
}

impl Sub for &CharElement {
    type Output = CharElement;
    fn sub(self, rhs: &CharElement) -> CharElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &CharElement {
    type Output = CharElement;
    fn neg(self) -> CharElement {
        CharElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &CharElement {
    type Output = CharElement;
    fn mul(self, rhs: &CharElement) -> CharElement {
        let (a, b) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = CharElement::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                out.add_term(wa + wb, ca * cb);
            }
        }
        out
    }
}

/// Writes `c·e^ξ` terms joined by `+`, sorted; the zero weight prints as `e^0`.
impl fmt::Display for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.sorted_terms().into_iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}·")?;
            }
            if w.fin.is_zero() && w.level.is_zero() && w.degree.is_zero() {
                write!(f, "e^0")?;
            } else {
                write!(f, "e^{w}")?;
            }
        }
        Ok(())
    }
}

/// q-graded h-character: grade ↦ level-0, degree-0 character.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedCharacter {
    pieces: BTreeMap<i64, CharElement>,
}

/// First monomial at which two graded characters disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedWitness {
    pub grade: i64,
    pub weight: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for GradedWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q^{} e^{}: {} != {}",
            self.grade, self.weight, self.left, self.right
        )
    }
}

impl GradedCharacter {
    pub fn piece(&self, grade: i64) -> Option<&CharElement> {
        self.pieces.get(&grade)
    }

    pub fn pieces(&self) -> impl Iterator<Item = (i64, &CharElement)> {
        self.pieces.iter().map(|(g, c)| (*g, c))
    }

    pub fn max_grade(&self) -> Option<i64> {
        self.pieces.keys().next_back().copied()
    }

    pub fn dims(&self) -> BTreeMap<i64, BigInt> {
        self.pieces
            .iter()
            .map(|(g, c)| (*g, c.coefficient_sum()))
            .collect()
    }

    pub fn total_dim(&self) -> BigInt {
        self.pieces.values().map(CharElement::coefficient_sum).sum()
    }

    /// Multiplication by q^s.
    pub fn shifted(&self, s: i64) -> GradedCharacter {
        GradedCharacter {
            pieces: self
                .pieces
                .iter()
                .map(|(g, c)| (g + s, c.clone()))
                .collect(),
        }
    }

    pub fn ungraded(&self) -> CharElement {
        let mut out = CharElement::zero();
        for c in self.pieces.values() {
            out.add_assign_ref(c);
        }
        out
    }

    /// Adds `k` to the coefficient of `e^fin` in grade `grade`.
    pub fn perturb(&mut self, grade: i64, fin: FinWeight, k: i64) {
        let piece = self.pieces.entry(grade).or_default();
        piece.add_term(AffWeight::finite(fin), BigInt::from(k));
        if piece.is_zero() {
            self.pieces.remove(&grade);
        }
    }

    /// The smallest (grade, weight) where `self` and `other` differ.
    pub fn first_difference(&self, other: &GradedCharacter) -> Option<GradedWitness> {
        let mut keys: Vec<(i64, &AffWeight)> = self
            .pieces
            .iter()
            .chain(other.pieces.iter())
            .flat_map(|(g, c)| c.terms().map(move |(w, _)| (*g, w)))
            .collect();
        keys.sort();
        keys.dedup();
        let empty = CharElement::zero();
        keys.into_iter().find_map(|(g, w)| {
            let a = self.pieces.get(&g).unwrap_or(&empty).coeff(w);
            let b = other.pieces.get(&g).unwrap_or(&empty).coeff(w);
            (a != b).then(|| GradedWitness {
                grade: g,
                weight: w.fin.to_string(),
                left: a.to_string(),
                right: b.to_string(),
            })
        })
    }
}

impl Add for &GradedCharacter {
    type Output = GradedCharacter;
    fn add(self, rhs: &GradedCharacter) -> GradedCharacter {
        let mut pieces = self.pieces.clone();
        for (g, c) in &rhs.pieces {
            pieces.entry(*g).or_default().add_assign_ref(c);
        }
        pieces.retain(|_, v| !v.is_zero());
        GradedCharacter { pieces }
    }
}

/// One entry of the CharElement JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub weight: Vec<JsonNum>,
    pub level: JsonNum,
    pub degree: JsonNum,
    pub coeff: JsonNum,
}

/// Integer as a JSON number when it fits in i64; otherwise (and for
/// non-integral rationals) a string such as `"-1/2"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonNum {
    Int(i64),
    Str(String),
}

impl JsonNum {
    fn from_rational(r: &Rational) -> JsonNum {
        if r.is_integer() {
            JsonNum::Int(r.to_integer())
        } else {
            JsonNum::Str(r.to_string())
        }
    }

    fn from_bigint(b: &BigInt) -> JsonNum {
        match b.to_i64() {
            Some(v) => JsonNum::Int(v),
            None => JsonNum::Str(b.to_string()),
        }
    }

    fn to_rational(&self) -> Result<Rational> {
        match self {
            JsonNum::Int(v) => Ok(Rational::from_integer(*v)),
            JsonNum::Str(s) => {
                let bad = || Error::Serialization(format!("invalid rational {s:?}"));
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s.trim(), "1"),
                };
                let n: i64 = n.parse().map_err(|_| bad())?;
                let d: i64 = d.parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                // Rational::new panics on overflow of i64::MIN normalization
                if n == i64::MIN || d == i64::MIN {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
        }
    }

    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonNum::Int(v) => Ok(BigInt::from(*v)),
            JsonNum::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Serialization(format!("invalid integer {s:?}"))),
        }
    }
}
