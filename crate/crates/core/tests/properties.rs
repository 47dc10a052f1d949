//! Algebraic invariants checked on random inputs.

use demazure_core::affring::{AffWeight, CharElement};
use demazure_core::affweyl::{
    affine_reflect, dominant_reduce, dominant_reduce_with, element_length, inversion_count,
    AffWeylElement, TieBreak,
};
use demazure_core::demazure::{demazure_character, demazure_op, finite_character};
use demazure_core::parse::parse_weight;
use demazure_core::rootsys::{CartanType, FinWeight, RootSystem};
use demazure_core::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

const TYPES: [&str; 4] = ["A1", "A2", "B2", "G2"];

fn rs(t: &str) -> RootSystem {
    RootSystem::new(t.parse::<CartanType>().unwrap()).unwrap()
}

fn weight(rank: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(range, rank)
}

/// A small character with weights of rank 2.
fn char2() -> impl Strategy<Value = CharElement> {
    prop::collection::vec((weight(2, -3..=3), -2i64..=2, -2i64..=2, -3i64..=3), 0..6).prop_map(
        |terms| {
            CharElement::from_terms(
                terms
                    .into_iter()
                    .map(|(w, l, d, c)| (AffWeight::from_ints(&w, l, d), BigInt::from(c))),
            )
        },
    )
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=rank, 0..=max_len)
}

fn type_and_word(max_len: usize) -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    prop::sample::select(TYPES.to_vec()).prop_flat_map(move |t| {
        let n = if t == "A1" { 1 } else { 2 };
        (Just(t), word(n, max_len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in char2(), b in char2(), c in char2()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &CharElement::one(2), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), CharElement::zero());
    }

    #[test]
    fn specializations_are_homomorphisms(a in char2(), b in char2()) {
        prop_assert_eq!((&a * &b).specialize_delta(), &a.specialize_delta() * &b.specialize_delta());
        prop_assert_eq!((&a + &b).restrict_h(), &a.restrict_h() + &b.restrict_h());
        prop_assert_eq!((&a * &b).restrict_h(), &a.restrict_h() * &b.restrict_h());
        prop_assert_eq!(a.coefficient_sum(), a.restrict_h().coefficient_sum());
    }

    #[test]
    fn json_round_trip(a in char2()) {
        prop_assert_eq!(CharElement::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn weight_text_round_trip(w in weight(3, -50..=50)) {
        let fw = FinWeight::from_ints(&w);
        let text = fw.to_string();
        prop_assert_eq!(parse_weight(text.trim_matches(|c| c == '(' || c == ')'), Some(3)).unwrap(), fw);
    }

    #[test]
    fn affine_weyl_group_laws(
        (t, x) in type_and_word(5),
        y in word(2, 5),
        z in word(2, 5),
        fin in weight(2, -3..=3),
        level in 0i64..=3,
        degree in -2i64..=2,
    ) {
        let r = rs(t);
        let n = r.rank();
        let clip = |w: &[usize]| w.iter().map(|&i| i.min(n)).collect::<Vec<_>>();
        let (x, y, z) = (
            AffWeylElement::from_word(&r, &x),
            AffWeylElement::from_word(&r, &clip(&y)),
            AffWeylElement::from_word(&r, &clip(&z)),
        );
        prop_assert_eq!(x.compose(&r, &y).compose(&r, &z), x.compose(&r, &y.compose(&r, &z)));
        prop_assert!(x.compose(&r, &x.inverse(&r)).is_identity());
        let xi = AffWeight::from_ints(&fin[..n], level, degree);
        prop_assert_eq!(x.compose(&r, &y).apply(&r, &xi), x.apply(&r, &y.apply(&r, &xi)));
        let image = x.apply(&r, &xi);
        prop_assert_eq!(image.level, xi.level);
        prop_assert_eq!(image.form(&r, &image), xi.form(&r, &xi));
        prop_assert_eq!(element_length(&r, &x), element_length(&r, &x.inverse(&r)));
        prop_assert_eq!(x.reduced_word(&r).len(), element_length(&r, &x));
        prop_assert_eq!(x.reduced_word(&r).evaluate(&r), x);
    }

    #[test]
    fn dominant_reduction(
        t in prop::sample::select(TYPES.to_vec()),
        fin in weight(2, -6..=6),
        level in 1i64..=4,
        degree in -3i64..=3,
    ) {
        let r = rs(t);
        let n = r.rank();
        let xi = AffWeight::from_ints(&fin[..n], level, degree);
        let (big, w) = dominant_reduce(&r, &xi).unwrap();
        prop_assert!(big.is_dominant(&r));
        prop_assert_eq!(w.len() as u64, inversion_count(&r, &xi).unwrap());
        prop_assert_eq!(w.evaluate(&r).apply(&r, &big), xi.clone());
        let (big2, w2) = dominant_reduce_with(&r, &xi, TieBreak::Largest).unwrap();
        prop_assert_eq!(&big2, &big);
        prop_assert_eq!(w2.len(), w.len());
        // one more reflection at a negative pairing lowers the count by one
        if let Some(i) = (0..=n).find(|&i| xi.pairing(&r, i) < Rational::from(0)) {
            let next = affine_reflect(&r, i, &xi);
            prop_assert_eq!(inversion_count(&r, &next).unwrap() + 1, inversion_count(&r, &xi).unwrap());
        }
    }

    #[test]
    fn demazure_operator_laws(
        t in prop::sample::select(TYPES.to_vec()),
        fin in weight(2, -3..=3),
        level in 0i64..=2,
        i in 0usize..=2,
        g_fin in weight(2, 0..=1),
    ) {
        let r = rs(t);
        let n = r.rank();
        let i = i.min(n);
        let f = CharElement::monomial(AffWeight::from_ints(&fin[..n], level, 0));
        let once = demazure_op(&r, i, &f).unwrap();
        prop_assert_eq!(demazure_op(&r, i, &once).unwrap(), once.clone());
        // D_i(f) is r_i-invariant
        prop_assert_eq!(once.map_weights(|w| affine_reflect(&r, i, w)), once.clone());
        // r_i-invariant factors commute with D_i
        if i > 0 {
            let g = finite_character(&r, &FinWeight::from_ints(&g_fin[..n])).unwrap();
            prop_assert_eq!(demazure_op(&r, i, &(&g * &f)).unwrap(), &g * &once);
        }
    }

    #[test]
    fn high_level_demazure_modules_are_irreducible(
        t in prop::sample::select(TYPES.to_vec()),
        lam in weight(2, 0..=2),
        extra in 0i64..=2,
    ) {
        let r = rs(t);
        let lam = FinWeight::from_ints(&lam[..r.rank()]);
        let level = r.pairing(&lam, r.theta()).unwrap().to_integer() + extra;
        prop_assume!(level >= 1);
        let d = demazure_character(&r, level, &lam).unwrap();
        d.check_invariants().unwrap();
        let g = d.graded().unwrap();
        prop_assert_eq!(g.max_grade(), Some(0));
        prop_assert_eq!(d.char.restrict_h(), finite_character(&r, &lam).unwrap());
    }

    #[test]
    fn demazure_characters_are_graded_and_positive(
        t in prop::sample::select(TYPES.to_vec()),
        lam in weight(2, 0..=2),
        level in 1i64..=2,
    ) {
        let r = rs(t);
        let lam = FinWeight::from_ints(&lam[..r.rank()]);
        let d = demazure_character(&r, level, &lam).unwrap();
        prop_assert!(d.char.is_nonnegative());
        let g = d.graded().unwrap();
        let top = g.piece(0).unwrap();
        prop_assert_eq!(top.coeff(&AffWeight::finite(lam.clone())), BigInt::from(1));
        prop_assert_eq!(g.total_dim(), d.dim());
        let lvl = Rational::from(level);
        prop_assert!(d.char.terms().all(|(w, _)| w.level == lvl));
    }
}
