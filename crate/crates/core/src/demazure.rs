//! Demazure operators and the characters built from them: Demazure modules
//! `D(ℓ,λ)`, generalized Demazure modules, and finite irreducibles.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::affring::{AffWeight, CharElement, GradedCharacter};
use crate::affweyl::{dominant_reduce, AffWeylElement, ReducedWord};
use crate::error::{Error, Result};
use crate::rootsys::{FinWeight, RootSystem};
use crate::Rational;

/// A character together with the weights that pin down its normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemazureCharacter {
    pub char: CharElement,
    /// ξ for `D(ℓ,λ)`, or `Σ_j x_{[1,j]}Λ^j` in the generalized case.
    pub extremal_weight: AffWeight,
    /// `w₀` applied to the extremal weight: the weight of the generator line.
    pub generator_weight: AffWeight,
    /// δ-coefficient of the generator; grades are measured from here.
    pub base_degree: Rational,
    /// Whether every partial extremal weight is antidominant for `g`, i.e.
    /// the module is stable under the finite Lie algebra.
    pub g_stable: bool,
}

impl DemazureCharacter {
    /// q-graded h-character with the generator at grade 0.
    pub fn graded(&self) -> Result<GradedCharacter> {
        self.char.graded_character(self.base_degree)
    }

    pub fn dim(&self) -> BigInt {
        self.char.coefficient_sum()
    }

    /// Extremal and generator weights occur with multiplicity one and no
    /// coefficient is negative.
    pub fn check_invariants(&self) -> Result<()> {
        if let Some((w, c)) = self.char.terms().find(|(_, c)| c.is_negative()) {
            return Err(Error::Internal(format!(
                "negative coefficient {c} at e^{w}"
            )));
        }
        let one = BigInt::one();
        let e = self.char.coeff(&self.extremal_weight);
        if e != one {
            return Err(Error::Internal(format!(
                "extremal weight {} has coefficient {e}",
                self.extremal_weight
            )));
        }
        if self.g_stable {
            let g = self.char.coeff(&self.generator_weight);
            if g != one {
                return Err(Error::Internal(format!(
                    "generator weight {} has coefficient {g}",
                    self.generator_weight
                )));
            }
        }
        Ok(())
    }
}

/// One factor `(x_j, Λ^j)` of a generalized Demazure character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemazureFactor {
    pub element: AffWeylElement,
    pub weight: AffWeight,
}

impl DemazureFactor {
    pub fn new(element: AffWeylElement, weight: AffWeight) -> Self {
        DemazureFactor { element, weight }
    }
}

/// D_i on a single exponent, written into `out` with multiplier `c`.
fn demazure_monomial(
    rs: &RootSystem,
    i: usize,
    alpha: &AffWeight,
    xi: &AffWeight,
    c: &BigInt,
    out: &mut CharElement,
) -> Result<()> {
    let n = xi.pairing(rs, i);
    if !n.is_integer() {
        return Err(Error::Domain(format!(
            "⟨{xi}, α{i}∨⟩ = {n} is not an integer"
        )));
    }
    let n = n.to_integer();
    if n >= 0 {
        let mut cur = xi.clone();
        for _ in 0..n {
            let next = &cur - alpha;
            out.add_term(cur, c.clone());
            cur = next;
        }
        out.add_term(cur, c.clone());
    } else if n <= -2 {
        let mut cur = xi + alpha;
        for _ in 1..(-n) {
            let next = &cur + alpha;
            out.add_term(cur, -c);
            cur = next;
        }
    }
    Ok(())
}

/// The Demazure operator D_i, `i ∈ Î`.
pub fn demazure_op(rs: &RootSystem, i: usize, f: &CharElement) -> Result<CharElement> {
    if i > rs.rank() {
        return Err(Error::Domain(format!(
            "index {i} is outside 0..={}",
            rs.rank()
        )));
    }
    let alpha = AffWeight::simple_root(rs, i);
    let mut out = CharElement::zero();
    for (xi, c) in f.terms() {
        demazure_monomial(rs, i, &alpha, xi, c, &mut out)?;
    }
    Ok(out)
}

/// D_{i₁}∘⋯∘D_{i_k}; the rightmost letter acts first.
pub fn demazure_op_word(rs: &RootSystem, word: &[usize], f: &CharElement) -> Result<CharElement> {
    let mut acc = f.clone();
    for &i in word.iter().rev() {
        acc = demazure_op(rs, i, &acc)?;
    }
    Ok(acc)
}

/// D_x along a reduced word of `x`.
pub fn demazure_op_element(
    rs: &RootSystem,
    x: &AffWeylElement,
    f: &CharElement,
) -> Result<CharElement> {
    let word = x.reduced_word(rs);
    demazure_op_word(rs, word.letters(), f)
}

/// Extremal weight `w₀λ + ℓΛ₀` and its dominant reduction.
pub fn demazure_datum(
    rs: &RootSystem,
    level: i64,
    lambda: &FinWeight,
) -> Result<(AffWeight, AffWeight, ReducedWord)> {
    check_dominant_integral(lambda)?;
    if level < 1 {
        return Err(Error::Domain(format!("level {level} must be positive")));
    }
    if lambda.rank() != rs.rank() {
        return Err(Error::Domain(format!(
            "weight {lambda} has {} coordinates, expected {}",
            lambda.rank(),
            rs.rank()
        )));
    }
    let xi = AffWeight::at_level(rs.apply_w0(lambda), level);
    let (big_lambda, word) = dominant_reduce(rs, &xi)?;
    Ok((xi, big_lambda, word))
}

fn check_dominant_integral(lambda: &FinWeight) -> Result<()> {
    if !lambda.is_integral() || !lambda.is_dominant() {
        return Err(Error::Domain(format!(
            "{lambda} is not a dominant integral weight"
        )));
    }
    Ok(())
}

/// ch D(ℓ,λ), normalized so the generator `λ + ℓΛ₀` sits at degree 0.
pub fn demazure_character(
    rs: &RootSystem,
    level: i64,
    lambda: &FinWeight,
) -> Result<DemazureCharacter> {
    let (xi, big_lambda, word) = demazure_datum(rs, level, lambda)?;
    let char = demazure_op_word(rs, word.letters(), &CharElement::monomial(big_lambda))?;
    let generator_weight = AffWeight::at_level(lambda.clone(), level);
    Ok(DemazureCharacter {
        char,
        extremal_weight: xi,
        generator_weight,
        base_degree: Rational::zero(),
        g_stable: true,
    })
}

/// `D_{x₁}(e^{Λ¹} D_{x₂}(e^{Λ²} ⋯ D_{x_p}(e^{Λ^p})))`, under the length
/// additivity hypothesis `ℓ(x₁⋯x_p) = Σ ℓ(x_j)`.
pub fn generalized_demazure_character(
    rs: &RootSystem,
    factors: &[DemazureFactor],
) -> Result<DemazureCharacter> {
    if factors.is_empty() {
        return Err(Error::Precondition(
            "at least one factor is required".into(),
        ));
    }
    for (j, f) in factors.iter().enumerate() {
        if f.weight.rank() != rs.rank() {
            return Err(Error::Domain(format!(
                "factor {}: weight has rank {}, expected {}",
                j + 1,
                f.weight.rank(),
                rs.rank()
            )));
        }
        if !f.weight.is_dominant(rs) || !f.weight.is_integral() {
            return Err(Error::Domain(format!(
                "factor {}: {} is not a dominant integral affine weight",
                j + 1,
                f.weight
            )));
        }
    }

    let mut prefix = AffWeylElement::identity(rs);
    let mut sum_lengths = 0usize;
    let mut extremal = AffWeight::zero(rs.rank());
    let mut g_stable = true;
    for f in factors {
        sum_lengths += f.element.length(rs);
        prefix = prefix.compose(rs, &f.element);
        let xi = prefix.apply(rs, &f.weight);
        g_stable &= xi.fin.0.iter().all(|c| !c.is_positive());
        extremal = &extremal + &xi;
    }
    let total = prefix.length(rs);
    if total != sum_lengths {
        return Err(Error::Precondition(format!(
            "length additivity fails: ℓ(x₁⋯x_p) = {total} but Σ ℓ(x_j) = {sum_lengths}"
        )));
    }

    let mut acc = CharElement::one(rs.rank());
    for f in factors.iter().rev() {
        let inner = acc.shift(&f.weight);
        acc = demazure_op_element(rs, &f.element, &inner)?;
    }

    let generator_weight =
        AffWeight::new(rs.apply_w0(&extremal.fin), extremal.level, extremal.degree);
    let base_degree = generator_weight.degree;
    let out = DemazureCharacter {
        char: acc,
        extremal_weight: extremal,
        generator_weight,
        base_degree,
        g_stable,
    };
    out.check_invariants()?;
    Ok(out)
}

/// ch V(λ) = D_{w₀}(e^λ).
pub fn finite_character(rs: &RootSystem, lambda: &FinWeight) -> Result<CharElement> {
    check_dominant_integral(lambda)?;
    demazure_op_word(
        rs,
        rs.longest_word(),
        &CharElement::monomial(AffWeight::finite(lambda.clone())),
    )
}

/// Weyl dimension formula Π_{α>0} (λ+ρ|α)/(ρ|α).
pub fn weyl_dim(rs: &RootSystem, lambda: &FinWeight) -> Result<BigInt> {
    check_dominant_integral(lambda)?;
    let lr = lambda + rs.rho();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for root in rs.positive_roots() {
        // use coroot pairings: (μ|α) = ⟨μ,α∨⟩/d_α, and the d_α cancel
        let a = rs.coroot_pairing(&lr, root);
        let b = rs.coroot_pairing(rs.rho(), root);
        num *= BigInt::from(a.to_integer());
        den *= BigInt::from(b.to_integer());
    }
    Ok(num / den)
}

/// All W-conjugates of μ.
pub fn weyl_orbit(rs: &RootSystem, mu: &FinWeight) -> Vec<FinWeight> {
    let mut seen = HashSet::from([mu.clone()]);
    let mut stack = vec![mu.clone()];
    while let Some(x) = stack.pop() {
        for i in 0..rs.rank() {
            let y = rs.reflect_simple(i, &x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Dominant weight multiplicities of V(λ) by Freudenthal's recursion.
pub fn freudenthal_dominant(
    rs: &RootSystem,
    lambda: &FinWeight,
) -> Result<BTreeMap<FinWeight, BigInt>> {
    check_dominant_integral(lambda)?;
    let n = rs.rank();
    let span = rs.alpha_coords(&(lambda - &rs.apply_w0(lambda)));
    let bound: Vec<i64> = span.iter().map(|c| c.to_integer()).collect();

    // dominant μ = λ − Σ c_i α_i inside the box c ≤ bound, by depth Σ c_i
    let mut candidates: Vec<(i64, FinWeight)> = Vec::new();
    let mut c = vec![0i64; n];
    loop {
        let mut mu = lambda.clone();
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                mu = mu.add_scaled(rs.simple_root(i), Rational::from_integer(-ci));
            }
        }
        if mu.is_dominant() {
            candidates.push((c.iter().sum(), mu));
        }
        let mut k = 0;
        while k < n && c[k] == bound[k] {
            c[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        c[k] += 1;
    }
    candidates.sort();

    let lr = lambda + rs.rho();
    let norm_top = rs.form(&lr, &lr);
    let mut mult: BTreeMap<FinWeight, BigInt> = BTreeMap::new();
    let mut conj_cache: HashMap<FinWeight, FinWeight> = HashMap::new();
    for (depth, mu) in candidates {
        if depth == 0 {
            mult.insert(mu, BigInt::one());
            continue;
        }
        let mut sum = BigRational::zero();
        for root in rs.positive_roots() {
            for j in 1i64.. {
                let nu = mu.add_scaled(&root.weight, Rational::from_integer(j));
                let dom = conj_cache
                    .entry(nu.clone())
                    .or_insert_with(|| rs.dominant_conjugate(&nu).0)
                    .clone();
                // α-strings through weights are unbroken
                let Some(m) = mult.get(&dom) else { break };
                sum += big_rational(rs.form(&nu, &root.weight)) * m;
            }
        }
        let mr = &mu + rs.rho();
        let denom = big_rational(norm_top - rs.form(&mr, &mr));
        let value = sum * BigInt::from(2) / denom;
        if !value.is_integer() {
            return Err(Error::Internal(format!(
                "Freudenthal recursion gave non-integral multiplicity {value} at {mu}"
            )));
        }
        let value = value.to_integer();
        if !value.is_zero() {
            mult.insert(mu, value);
        }
    }
    Ok(mult)
}

fn big_rational(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// All weight multiplicities of V(λ) by Freudenthal's formula, as a level-0
/// character.
pub fn freudenthal(rs: &RootSystem, lambda: &FinWeight) -> Result<CharElement> {
    let dom = freudenthal_dominant(rs, lambda)?;
    let mut out = CharElement::zero();
    for (mu, m) in dom {
        for nu in weyl_orbit(rs, &mu) {
            out.add_term(AffWeight::finite(nu), m.clone());
        }
    }
    Ok(out)
}

/// Writes a W-invariant level-0 character as Σ mult·ch V(λ), peeling off the
/// maximal dominant weight (by height, then lexicographically) each time.
pub fn decompose_finite(rs: &RootSystem, f: &CharElement) -> Result<Vec<(FinWeight, BigInt)>> {
    if let Some((w, _)) = f
        .terms()
        .find(|(w, _)| !w.level.is_zero() || !w.degree.is_zero())
    {
        return Err(Error::Precondition(format!(
            "e^{w} has nonzero level or degree; restrict to h first"
        )));
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut chars: HashMap<FinWeight, CharElement> = HashMap::new();
    while !rest.is_zero() {
        let top = rest
            .terms()
            .filter(|(w, _)| w.fin.is_dominant())
            .map(|(w, c)| (rs.height(&w.fin), w.fin.clone(), c.clone()))
            .max_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let Some((_, lambda, c)) = top else {
            return Err(Error::NotACharacter(
                "remaining terms contain no dominant weight".into(),
            ));
        };
        if c.is_negative() {
            return Err(Error::NotACharacter(format!(
                "V({lambda}) would occur with multiplicity {c}"
            )));
        }
        if !lambda.is_integral() {
            return Err(Error::NotACharacter(format!("{lambda} is not integral")));
        }
        let ch = match chars.get(&lambda) {
            Some(ch) => ch,
            None => {
                let ch = finite_character(rs, &lambda)?;
                chars.entry(lambda.clone()).or_insert(ch)
            }
        };
        rest.add_scaled(ch, &-&c);
        out.push((lambda, c));
    }
    Ok(out)
}
