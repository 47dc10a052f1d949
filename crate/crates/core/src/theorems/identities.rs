//! Single-module identities: finite characters, the decomposition of
//! `D(ℓ,kθ)`, Demazure operator laws, length additivity of translations,
//! and the level-constancy statements behind the product formula.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::affring::{AffWeight, CharElement};
use crate::affweyl::{dominant_reduce, element_length, translation_element, AffWeylElement};
use crate::demazure::{demazure_op, demazure_op_element, demazure_op_word, freudenthal};
use crate::error::{Error, Result};
use crate::rootsys::{FinWeight, WeylElement};
use crate::Rational;

use super::fusion::hchar_datum;
use super::{first_char_difference, VerificationReport, Verifier};

/// `D_{w₀}(e^λ)` against the Weyl dimension formula and Freudenthal.
pub fn verify_finite_character(v: &Verifier<'_>, lambda: &FinWeight) -> Result<VerificationReport> {
    let rs = v.rs;
    let mut c = v.check("finite", format!("{}/{lambda}", rs.cartan_type()));
    c.input("lambda", lambda);
    let ch = demazure_op_word(
        rs,
        rs.longest_word(),
        &CharElement::monomial(AffWeight::finite(lambda.clone())),
    )?;
    let weyl = v.weyl_dim(lambda)?;
    c.ints(
        "dim D_w0(e^λ) vs Weyl dimension",
        &ch.coefficient_sum(),
        &weyl,
    );
    c.chars("D_w0(e^λ) vs Freudenthal", &ch, &freudenthal(rs, lambda)?);
    c.note(format!("dim {weyl}"));
    Ok(c.finish())
}

/// Grade i of `D(ℓ,kθ)` is `V((k−i)θ)` for `0 ≤ i ≤ 2k−ℓ`, nothing above.
pub fn verify_dlk_decomposition(
    v: &Verifier<'_>,
    k: i64,
    level: i64,
) -> Result<VerificationReport> {
    let rs = v.rs;
    if !(k >= 1 && k <= level && level <= 2 * k) {
        return Err(Error::Precondition(format!(
            "need 1 ≤ k ≤ ℓ ≤ 2k, got k={k}, ℓ={level}"
        )));
    }
    let mut c = v.check("dlk", format!("{}/k={k}/l={level}", rs.cartan_type()));
    c.input("k", k).input("level", level);

    let d = v.cache.demazure(rs, level, &rs.theta().scale_int(k))?;
    let got = d.graded()?;
    let mut expected = CharElement::zero();
    let mut dims = BigInt::from(0);
    for i in 0..=(2 * k - level) {
        let nu = rs.theta().scale_int(k - i);
        let shift = AffWeight::new(
            FinWeight::zero(rs.rank()),
            Rational::from(0),
            Rational::from(i),
        );
        expected.add_assign_ref(&v.finite(&nu)?.shift(&shift));
        dims += v.weyl_dim(&nu)?;
    }
    c.graded(
        "graded pieces vs ⊕ V((k−i)θ)",
        &got,
        &expected.graded_character(Rational::from(0))?,
    );
    c.ints("dim D(ℓ,kθ) vs Σ Weyl dimensions", &d.dim(), &dims);
    let pieces: Vec<String> = got
        .dims()
        .iter()
        .map(|(g, n)| format!("q^{g}: {n}"))
        .collect();
    c.note(pieces.join(", "));
    Ok(c.finish())
}

/// Every reduced word of `x`, as `x = r_{i₁}⋯r_{i_k}`.
pub fn reduced_words(v: &Verifier<'_>, x: &AffWeylElement) -> Vec<Vec<usize>> {
    let rs = v.rs;
    let len = element_length(rs, x);
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = BTreeSet::new();
    for i in 0..=rs.rank() {
        let rest = AffWeylElement::simple(rs, i).compose(rs, x);
        if element_length(rs, &rest) < len {
            for mut w in reduced_words(v, &rest) {
                w.insert(0, i);
                out.insert(w);
            }
        }
    }
    out.into_iter().collect()
}

/// On `f = e^{ρ̂}`: all reduced words of `x` give the same operator,
/// `D_i² = D_i`, and `D_i D_x = D_x` whenever `r_i` is a left descent.
pub fn verify_operator_laws(v: &Verifier<'_>, x: &AffWeylElement) -> Result<VerificationReport> {
    let rs = v.rs;
    let words = reduced_words(v, x);
    let first = words.first().cloned().unwrap_or_default();
    let mut c = v.check("operators", format!("{}/{first:?}", rs.cartan_type()));
    c.input("element", x.display(rs))
        .input("reduced_words", words.len());

    let f = CharElement::monomial(AffWeight::rho_hat(rs));
    let base = demazure_op_word(rs, &first, &f)?;
    for w in words.iter().skip(1) {
        let other = demazure_op_word(rs, w, &f)?;
        c.chars(&format!("D along {first:?} vs {w:?}"), &base, &other);
    }
    let len = element_length(rs, x);
    for i in 0..=rs.rank() {
        let once = demazure_op(rs, i, &base)?;
        let twice = demazure_op(rs, i, &once)?;
        c.chars(&format!("D_{i}² vs D_{i}"), &twice, &once);
        let descent = element_length(rs, &AffWeylElement::simple(rs, i).compose(rs, x)) < len;
        if descent {
            c.chars(
                &format!("D_{i} D_x vs D_x for a left descent"),
                &once,
                &base,
            );
        }
    }
    c.note(format!(
        "length {len}, {} reduced words, {} terms",
        words.len(),
        base.len()
    ));
    Ok(c.finish())
}

/// `ℓ(t_{−λ} t_{−μ} w) = ℓ(t_{−λ}) + ℓ(t_{−μ} w)`.
pub fn verify_length_additivity(
    v: &Verifier<'_>,
    lambda: &FinWeight,
    mu: &FinWeight,
    w: &WeylElement,
) -> Result<VerificationReport> {
    let rs = v.rs;
    for x in [lambda, mu] {
        if !rs.lattice_membership(x).in_m_plus {
            return Err(Error::Lattice(format!("{x} is not in M⁺")));
        }
    }
    let word = w.reduced_word(rs);
    let mut c = v.check(
        "length",
        format!("{}/{lambda}/{mu}/{word:?}", rs.cartan_type()),
    );
    c.input("lambda", lambda)
        .input("mu", mu)
        .input("w", format!("{word:?}"));

    let t_l = translation_element(rs, &-lambda)?;
    let t_m = translation_element(rs, &-mu)?;
    let t_m_w = t_m.compose(rs, &AffWeylElement::finite(w.clone()));
    let whole = t_l.compose(rs, &t_m_w);
    let (a, b, total) = (
        element_length(rs, &t_l),
        element_length(rs, &t_m_w),
        element_length(rs, &whole),
    );
    c.ints(
        "ℓ(t_−λ t_−μ w) vs ℓ(t_−λ) + ℓ(t_−μ w)",
        &BigInt::from(total),
        &BigInt::from(a + b),
    );
    c.note(format!("{total} = {a} + {b}"));
    Ok(c.finish())
}

/// For every `x`, `Λ` with `xΛ ≡ w₀λ + ℓΛ₀` mod δ, `D_x(e^Λ)` is
/// `e^{ℓΛ₀} ch_h D(ℓ,λ)` modulo `e^δ = 1`. Checked for the element found by
/// dominant reduction and for the `t_{−ν} w` form when it exists.
pub fn verify_cvk(v: &Verifier<'_>, level: i64, lambda: &FinWeight) -> Result<VerificationReport> {
    let rs = v.rs;
    let mut c = v.check("cvk", format!("{}/l={level}/{lambda}", rs.cartan_type()));
    c.input("level", level).input("lambda", lambda);

    let xi = AffWeight::at_level(rs.apply_w0(lambda), level);
    let (big, word) = dominant_reduce(rs, &xi)?;
    let expected = v
        .demazure_h(level, lambda)?
        .shift(&AffWeight::at_level(FinWeight::zero(rs.rank()), level));

    let ch = demazure_op_word(rs, word.letters(), &CharElement::monomial(big.clone()))?;
    c.chars(
        "D_x(e^Λ) mod δ vs e^{ℓΛ0} ch_h D(ℓ,λ)",
        &ch.specialize_delta(),
        &expected,
    );
    let lvl = Rational::from(level);
    c.holds(ch.terms().all(|(w, _)| w.level == lvl), || {
        format!("a term of D_x(e^Λ) is not at level {level}")
    });

    match hchar_datum(rs, level, lambda) {
        Ok((x, big2)) => {
            let ch2 = demazure_op_element(rs, &x, &CharElement::monomial(big2))?;
            c.chars(
                "D_(t_−ν w)(e^Λ) mod δ vs e^{ℓΛ0} ch_h D(ℓ,λ)",
                &ch2.specialize_delta(),
                &expected,
            );
            c.input("t_nu_w", x.display(rs));
        }
        Err(Error::Precondition(_)) => c.note("no t_−ν w datum"),
        Err(e) => return Err(e),
    }
    c.note(format!("dim {}", expected.coefficient_sum()));
    Ok(c.finish())
}

/// `D_{t_{w₀μ}}(e^{ℓΛ₀+Aδ} ch V(ν)) ≡ D_{t_{w₀μ}}(e^{ℓΛ₀+Aδ}) ch V(ν)`
/// modulo `e^δ = 1`.
pub fn verify_cv_lemma(
    v: &Verifier<'_>,
    level: i64,
    mu: &FinWeight,
    a: i64,
    nu: &FinWeight,
) -> Result<VerificationReport> {
    let rs = v.rs;
    if level < 0 {
        return Err(Error::Precondition(format!("level {level} is negative")));
    }
    let mut c = v.check(
        "cv",
        format!("{}/l={level}/{mu}/A={a}/{nu}", rs.cartan_type()),
    );
    c.input("level", level)
        .input("mu", mu)
        .input("A", a)
        .input("nu", nu);

    let x = translation_element(rs, &rs.apply_w0(mu))?;
    let base = AffWeight::new(
        FinWeight::zero(rs.rank()),
        Rational::from(level),
        Rational::from(a),
    );
    let v_nu = v.finite(nu)?;
    let lhs = demazure_op_element(rs, &x, &v_nu.shift(&base))?;
    let rhs = &demazure_op_element(rs, &x, &CharElement::monomial(base))? * &v_nu;
    c.chars(
        "D(e^{ℓΛ0+Aδ} ch V(ν)) vs D(e^{ℓΛ0+Aδ}) ch V(ν) mod δ",
        &lhs.specialize_delta(),
        &rhs.specialize_delta(),
    );
    // r₀ moves level-0 weights by multiples of δ, so the two sides agree
    // only after e^δ = 1; record how the unreduced forms compare
    let exact = match first_char_difference(&lhs, &rhs) {
        None => "equal before reduction".to_string(),
        Some(w) => format!("before reduction they differ at {w}"),
    };
    c.note(format!("{} terms, {exact}", lhs.len()));
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cache::CharacterCache;
    use crate::demazure::finite_character;
    use crate::rootsys::{CartanType, RootSystem};

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse::<CartanType>().unwrap()).unwrap()
    }

    #[test]
    fn dlk_examples() {
        let cache = CharacterCache::in_memory();
        for (t, k, l) in [("A1", 1, 2), ("A1", 1, 1), ("A2", 2, 3), ("G2", 1, 1)] {
            let r = rs(t);
            let v = Verifier::new(&r, &cache);
            let rep = verify_dlk_decomposition(&v, k, l).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        let r = rs("A1");
        let v = Verifier::new(&r, &cache);
        let rep = verify_dlk_decomposition(&v, 1, 1).unwrap();
        assert_eq!(rep.detail, "q^0: 3, q^1: 1");
        assert!(verify_dlk_decomposition(&v, 1, 3).is_err());
    }

    #[test]
    fn dlk_fault_is_caught() {
        let cache = CharacterCache::in_memory();
        let r = rs("A2");
        let v = Verifier::new(&r, &cache).with_fault(true);
        let rep = verify_dlk_decomposition(&v, 1, 1).unwrap();
        assert!(!rep.passed);
        assert!(rep.witness.unwrap().starts_with("graded pieces"));
    }

    #[test]
    fn reduced_words_of_longest_finite_element() {
        let cache = CharacterCache::in_memory();
        let r = rs("A2");
        let v = Verifier::new(&r, &cache);
        let w0 = AffWeylElement::finite(r.w0());
        let words = reduced_words(&v, &w0);
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        let rep = verify_operator_laws(&v, &w0).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn factor_out_needs_delta_reduction() {
        // D_0(e^{Λ0} ch V(θ)) in A1 contains e^{Λ0+α−2δ}; D_0(e^{Λ0}) ch V(θ)
        // has e^{Λ0+α} instead
        let r = rs("A1");
        let lam0 = AffWeight::lambda0(1);
        let v_theta = finite_character(&r, r.theta()).unwrap();
        let lhs = demazure_op(&r, 0, &v_theta.shift(&lam0)).unwrap();
        let rhs = &demazure_op(&r, 0, &CharElement::monomial(lam0)).unwrap() * &v_theta;
        assert_ne!(lhs, rhs);
        assert_eq!(
            lhs.coeff(&AffWeight::from_ints(&[2], 1, -2)),
            BigInt::from(1)
        );
        assert_eq!(
            rhs.coeff(&AffWeight::from_ints(&[2], 1, 0)),
            BigInt::from(1)
        );
        assert_eq!(lhs.specialize_delta(), rhs.specialize_delta());
    }

    #[test]
    fn length_additivity_and_cv() {
        let cache = CharacterCache::in_memory();
        let r = rs("B2");
        let v = Verifier::new(&r, &cache);
        let th = r.theta().clone();
        for w in r.weyl_group() {
            assert!(verify_length_additivity(&v, &th, &th, &w).unwrap().passed);
        }
        let rep = verify_cv_lemma(&v, 1, &th, 2, &FinWeight::from_ints(&[1, 0])).unwrap();
        assert!(rep.passed, "{rep:?}");
        let rep = verify_cvk(&v, 2, &FinWeight::from_ints(&[0, 2])).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}
