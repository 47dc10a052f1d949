//! Fusion products `D(ℓ,ℓλ₁) * ⋯ * D(ℓ,ℓλ_p) * D(m,kθ)` as generalized
//! Demazure modules, their short exact sequences, and the product formula
//! for h-characters.

use num_bigint::BigInt;

use crate::affring::AffWeight;
use crate::affweyl::{dominant_reduce, translation_element, AffWeylElement};
use crate::demazure::{generalized_demazure_character, DemazureCharacter, DemazureFactor};
use crate::error::{Error, Result};
use crate::rootsys::{FinWeight, RootSystem};
use crate::Rational;

use super::{VerificationReport, Verifier};

/// Parameters `(ℓ, m, k, λ₁,…,λ_p)` of a fusion product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionSpec {
    pub level: i64,
    pub m: i64,
    pub k: i64,
    pub lambda_parts: Vec<FinWeight>,
}

impl FusionSpec {
    pub fn new(level: i64, m: i64, k: i64, lambda_parts: Vec<FinWeight>) -> Self {
        FusionSpec {
            level,
            m,
            k,
            lambda_parts,
        }
    }

    /// λ = Σ λ_j (zero when there are no parts).
    pub fn lambda(&self, rs: &RootSystem) -> FinWeight {
        self.lambda_parts
            .iter()
            .fold(FinWeight::zero(rs.rank()), |acc, l| &acc + l)
    }

    /// Same λ-parts and level with different `(m, k)`.
    pub fn with_mk(&self, m: i64, k: i64) -> FusionSpec {
        FusionSpec {
            m,
            k,
            ..self.clone()
        }
    }

    /// ℓ ≥ m ≥ k ≥ 0, ℓ ≥ 1, and every λ_j ∈ M⁺.
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        if !(self.level >= 1 && self.level >= self.m && self.m >= self.k && self.k >= 0) {
            return Err(Error::Precondition(format!(
                "need ℓ ≥ m ≥ k ≥ 0 and ℓ ≥ 1, got ℓ={}, m={}, k={}",
                self.level, self.m, self.k
            )));
        }
        for part in &self.lambda_parts {
            if part.rank() != rs.rank() {
                return Err(Error::Domain(format!("{part} has the wrong rank")));
            }
            if !rs.lattice_membership(part).in_m_plus {
                return Err(Error::Lattice(format!(
                    "{part} is not in M⁺; only the co-root lattice is supported"
                )));
            }
        }
        Ok(())
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.lambda_parts.iter().map(|l| l.to_string()).collect();
        format!(
            "l={},m={},k={},lambda=[{}]",
            self.level,
            self.m,
            self.k,
            parts.join(";")
        )
    }
}

/// Second-factor shape of the generalized Demazure module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `(t_{w₀θ}, mΛ₀ + (m−k)θ)`, valid for m ≤ 2k.
    Translation,
    /// `(w₀, mΛ₀ + kθ)`, valid for m ≥ 2k.
    LongestElement,
}

impl Shape {
    pub fn default_for(m: i64, k: i64) -> Shape {
        if m <= 2 * k {
            Shape::Translation
        } else {
            Shape::LongestElement
        }
    }
}

/// Factors `(t_{w₀λ}, (ℓ−m)Λ₀)` and the second factor of `shape`.
pub fn fusion_factors(
    rs: &RootSystem,
    spec: &FusionSpec,
    shape: Shape,
) -> Result<Vec<DemazureFactor>> {
    spec.validate(rs)?;
    let (l, m, k) = (spec.level, spec.m, spec.k);
    let n = rs.rank();
    let lambda = spec.lambda(rs);
    let t_lambda = translation_element(rs, &rs.apply_w0(&lambda))?;
    let first = DemazureFactor::new(t_lambda, AffWeight::at_level(FinWeight::zero(n), l - m));
    let second = match shape {
        Shape::Translation => {
            if m > 2 * k {
                return Err(Error::Precondition(format!(
                    "the translation shape needs m ≤ 2k, got m={m}, k={k}"
                )));
            }
            DemazureFactor::new(
                translation_element(rs, &rs.apply_w0(rs.theta()))?,
                AffWeight::at_level(rs.theta().scale_int(m - k), m),
            )
        }
        Shape::LongestElement => {
            if m < 2 * k {
                return Err(Error::Precondition(format!(
                    "the longest-element shape needs m ≥ 2k, got m={m}, k={k}"
                )));
            }
            DemazureFactor::new(
                AffWeylElement::finite(rs.w0()),
                AffWeight::at_level(rs.theta().scale_int(k), m),
            )
        }
    };
    Ok(vec![first, second])
}

/// Character of the fusion product as a generalized Demazure module.
pub fn fusion_character(rs: &RootSystem, spec: &FusionSpec) -> Result<DemazureCharacter> {
    let factors = fusion_factors(rs, spec, Shape::default_for(spec.m, spec.k))?;
    generalized_demazure_character(rs, &factors)
}

/// Π_j dim D(ℓ,ℓλ_j) · dim D(m,kθ).
pub fn fusion_dim(v: &Verifier<'_>, spec: &FusionSpec) -> Result<BigInt> {
    let mut d = v.demazure_dim(spec.m, &v.rs.theta().scale_int(spec.k))?;
    for part in &spec.lambda_parts {
        d *= v.demazure_dim(spec.level, &part.scale_int(spec.level))?;
    }
    Ok(d)
}

/// The three regimes of the short exact sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// ℓ ≥ 2k.
    One,
    /// ℓ ≥ 2k and k < m ≤ 2k.
    Two,
    /// ℓ ≤ 2k and k ≤ m < ℓ.
    Three,
}

impl Regime {
    pub fn number(self) -> u8 {
        match self {
            Regime::One => 1,
            Regime::Two => 2,
            Regime::Three => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Regime> {
        match n {
            1 => Some(Regime::One),
            2 => Some(Regime::Two),
            3 => Some(Regime::Three),
            _ => None,
        }
    }

    pub fn applies(self, l: i64, m: i64, k: i64) -> bool {
        match self {
            Regime::One => k >= 1 && l >= 2 * k,
            Regime::Two => k >= 1 && l >= 2 * k && k < m && m <= 2 * k,
            Regime::Three => k >= 1 && l <= 2 * k && k <= m && m < l,
        }
    }
}

/// `(middle, sub, quotient, shift)` of the exact sequence for `regime`.
fn sequence(
    rs: &RootSystem,
    spec: &FusionSpec,
    regime: Regime,
) -> Result<(FusionSpec, FusionSpec, FusionSpec, i64)> {
    let (l, m, k) = (spec.level, spec.m, spec.k);
    if !regime.applies(l, m, k) {
        return Err(Error::Precondition(format!(
            "ℓ={l}, m={m}, k={k} is outside regime {}",
            regime.number()
        )));
    }
    let lt = rs.form(&spec.lambda(rs), rs.theta());
    if !lt.is_integer() {
        return Err(Error::Lattice(format!("(λ|θ) = {lt} is not integral")));
    }
    let base = lt.to_integer() + 1;
    Ok(match regime {
        Regime::One => (
            spec.with_mk(k, k),
            spec.with_mk(k - 1, k - 1),
            spec.with_mk(l, k),
            base,
        ),
        Regime::Two => (
            spec.with_mk(k, k),
            spec.with_mk(m - k - 1, m - k - 1),
            spec.with_mk(m, k),
            (2 * k - m + 1) * base,
        ),
        Regime::Three => (
            spec.with_mk(m, k),
            spec.with_mk(l + m - 2 * k - 1, l - k - 1),
            spec.with_mk(l, k),
            (2 * k - l + 1) * base,
        ),
    })
}

/// Dimension identity of the exact sequence, with each fusion product's
/// dimension computed both as a product of Demazure dimensions and as the
/// dimension of the corresponding generalized Demazure module.
pub fn verify_mtone_dims(
    v: &Verifier<'_>,
    spec: &FusionSpec,
    regime: Regime,
) -> Result<VerificationReport> {
    let rs = v.rs;
    spec.validate(rs)?;
    let (middle, sub, quotient, _) = sequence(rs, spec, regime)?;
    let mut c = v.check(
        "mtone",
        format!(
            "{}/r{}/{}",
            rs.cartan_type(),
            regime.number(),
            spec.describe()
        ),
    );
    c.input("spec", spec.describe())
        .input("regime", regime.number());

    let dims: Vec<BigInt> = [&middle, &sub, &quotient]
        .into_iter()
        .map(|s| fusion_dim(v, s))
        .collect::<Result<_>>()?;
    c.ints(
        "dim(middle) vs dim(sub) + dim(quotient)",
        &dims[0],
        &(&dims[1] + &dims[2]),
    );
    c.note(format!("{} = {} + {}", dims[0], dims[1], dims[2]));
    for (name, s, d) in [
        ("middle", &middle, &dims[0]),
        ("sub", &sub, &dims[1]),
        ("quotient", &quotient, &dims[2]),
    ] {
        let g = fusion_character(rs, s)?;
        c.ints(
            &format!("dim {name} as generalized Demazure module"),
            &g.dim(),
            d,
        );
    }
    // at m = 2k both factorizations must agree
    if spec.m == 2 * spec.k {
        let a = generalized_demazure_character(rs, &fusion_factors(rs, spec, Shape::Translation)?)?;
        let b =
            generalized_demazure_character(rs, &fusion_factors(rs, spec, Shape::LongestElement)?)?;
        c.graded("shapes at m = 2k", &a.graded()?, &b.graded()?);
    }
    Ok(c.finish())
}

/// Graded identity `ch(middle) = q^s ch(sub) + ch(quotient)`, each term
/// normalized with its generator in grade 0.
pub fn verify_exactfg_graded(
    v: &Verifier<'_>,
    spec: &FusionSpec,
    regime: Regime,
) -> Result<VerificationReport> {
    let rs = v.rs;
    spec.validate(rs)?;
    let (middle, sub, quotient, s) = sequence(rs, spec, regime)?;
    let mut c = v.check(
        "exactfg",
        format!(
            "{}/r{}/{}",
            rs.cartan_type(),
            regime.number(),
            spec.describe()
        ),
    );
    c.input("spec", spec.describe())
        .input("regime", regime.number())
        .input("shift", s);

    let gm = fusion_character(rs, &middle)?.graded()?;
    let gs = fusion_character(rs, &sub)?.graded()?;
    let gq = fusion_character(rs, &quotient)?.graded()?;
    let rhs = &gs.shifted(s) + &gq;
    c.graded("middle vs q^s·sub + quotient", &gm, &rhs);
    c.note(format!(
        "dims {} = {} + {}, s = {s}",
        gm.total_dim(),
        gs.total_dim(),
        gq.total_dim()
    ));

    // the quotient V_{ℓ,kθ} is the Demazure module D(ℓ, ℓλ + kθ)
    if quotient.m == quotient.level {
        let lam = &spec.lambda(rs).scale_int(spec.level) + &rs.theta().scale_int(quotient.k);
        let d = v.cache.demazure(rs, spec.level, &lam)?;
        c.graded("quotient vs D(ℓ, ℓλ+kθ)", &gq, &d.graded()?);
    }
    Ok(c.finish())
}

/// `(x, Λ)` with `x = t_{−ν} w`, `ν ∈ M⁺`, and `xΛ ≡ w₀λ + ℓΛ₀` mod δ.
pub fn hchar_datum(
    rs: &RootSystem,
    level: i64,
    lambda: &FinWeight,
) -> Result<(AffWeylElement, AffWeight)> {
    let xi = AffWeight::at_level(rs.apply_w0(lambda), level);
    let (big, _) = dominant_reduce(rs, &xi)?;
    let target = rs.apply_w0(lambda);
    let inv_level = Rational::new(1, level);
    for w in rs.weyl_group() {
        let nu = (&w.apply(&big.fin) - &target).scale(inv_level);
        if !rs.lattice_membership(&nu).in_m_plus {
            continue;
        }
        // t_{−ν} w = w t_{−w⁻¹ν}
        let shift = -&w.inverse(rs).apply(&nu);
        let x = AffWeylElement::from_parts(w, shift);
        let got = x.apply(rs, &big);
        if got.fin == xi.fin && got.level == xi.level {
            return Ok((x, big));
        }
    }
    Err(Error::Precondition(format!(
        "no ν ∈ M⁺, w ∈ W with t_(−ν) w Λ ≡ w₀λ + ℓΛ₀ for ℓ={level}, λ={lambda}"
    )))
}

/// `ch_h D(t_{w₀λ₁}(ℓ₁−ℓ₂)Λ₀, …, t_{w₀λ}t_{−ν}wΛ)` equals
/// `Π_j ch_h D(ℓ_j, ℓ_jλ_j) · ch_h D(ℓ, λ_final)`.
pub fn verify_hchar_product(
    v: &Verifier<'_>,
    levels: &[i64],
    lambdas: &[FinWeight],
    level: i64,
    lambda_final: &FinWeight,
) -> Result<VerificationReport> {
    let rs = v.rs;
    if levels.len() != lambdas.len() {
        return Err(Error::Precondition("one level per λ_j is required".into()));
    }
    if level < 1
        || levels.windows(2).any(|w| w[0] < w[1])
        || levels.last().is_some_and(|&x| x < level)
    {
        return Err(Error::Precondition(format!(
            "levels {levels:?} must weakly decrease to at least ℓ = {level} ≥ 1"
        )));
    }
    for l in lambdas {
        if !rs.lattice_membership(l).in_m_plus {
            return Err(Error::Lattice(format!("{l} is not in M⁺")));
        }
    }
    let (x, big) = hchar_datum(rs, level, lambda_final)?;

    let lam_s: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
    let mut c = v.check(
        "hchar",
        format!(
            "{}/levels={levels:?}/lambda=[{}]/l={level}/final={lambda_final}",
            rs.cartan_type(),
            lam_s.join(";")
        ),
    );
    c.input("levels", format!("{levels:?}"))
        .input("lambdas", lam_s.join(";"))
        .input("level", level)
        .input("lambda_final", lambda_final)
        .input("x", x.display(rs))
        .input("Lambda", &big);

    let n = rs.rank();
    let mut factors = Vec::new();
    for (j, (l, lam)) in levels.iter().zip(lambdas).enumerate() {
        let next = levels.get(j + 1).copied().unwrap_or(level);
        factors.push(DemazureFactor::new(
            translation_element(rs, &rs.apply_w0(lam))?,
            AffWeight::at_level(FinWeight::zero(n), l - next),
        ));
    }
    factors.push(DemazureFactor::new(x, big));
    let lhs = generalized_demazure_character(rs, &factors)?
        .char
        .restrict_h();

    let mut rhs = v.demazure_h(level, lambda_final)?;
    for (l, lam) in levels.iter().zip(lambdas) {
        rhs = &rhs * &v.demazure_h(*l, &lam.scale_int(*l))?;
    }
    c.chars("restricted generalized character vs product", &lhs, &rhs);
    c.note(format!("dim {}", rhs.coefficient_sum()));
    Ok(c.finish())
}
