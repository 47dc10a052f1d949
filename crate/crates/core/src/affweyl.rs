//! The affine Weyl group `Ŵ = W ⋉ T_M` acting on affine weights.
//!
//! An element is stored as a pair `(w, μ)` acting as `w ∘ t_μ`. With this
//! convention `(w₁,μ₁)(w₂,μ₂) = (w₁w₂, w₂⁻¹μ₁ + μ₂)` and `r₀ = (r_θ, −θ)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::affring::AffWeight;
use crate::error::{Error, Result};
use crate::rootsys::{FinWeight, RootSystem, WeylElement};
use crate::Rational;

/// A word in the simple reflections `r_i`, `i ∈ Î = {0,…,n}`, read as the
/// product `r_{i₁} r_{i₂} ⋯ r_{i_k}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The group element `r_{i₁}⋯r_{i_k}`.
    pub fn evaluate(&self, rs: &RootSystem) -> AffWeylElement {
        AffWeylElement::from_word(rs, &self.0)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let s: Vec<String> = self.0.iter().map(|i| format!("r{i}")).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Which negative-pairing index `dominant_reduce` reflects at first.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    Smallest,
    Largest,
}

/// `w ∘ t_μ` with `w ∈ W` and `μ ∈ M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffWeylElement {
    finite: WeylElement,
    translation: FinWeight,
}

impl AffWeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        AffWeylElement {
            finite: WeylElement::identity(rs.rank()),
            translation: FinWeight::zero(rs.rank()),
        }
    }

    pub fn from_parts(finite: WeylElement, translation: FinWeight) -> Self {
        AffWeylElement {
            finite,
            translation,
        }
    }

    pub fn finite(w: WeylElement) -> Self {
        let n = w.rank();
        AffWeylElement::from_parts(w, FinWeight::zero(n))
    }

    /// Simple reflection r_i for `i ∈ Î`.
    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        if i == 0 {
            let r_theta = reflection_matrix(rs, rs.theta());
            AffWeylElement::from_parts(r_theta, -rs.theta())
        } else {
            AffWeylElement::finite(WeylElement::simple(rs, i))
        }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        word.iter().fold(AffWeylElement::identity(rs), |acc, &i| {
            acc.compose(rs, &AffWeylElement::simple(rs, i))
        })
    }

    /// The translation `t_μ`; μ must lie in the co-root lattice M.
    pub fn translation(rs: &RootSystem, mu: &FinWeight) -> Result<Self> {
        if !rs.lattice_membership(mu).in_m {
            return Err(Error::Lattice(format!(
                "t_{mu} lies outside W ⋉ T_M; the extended affine Weyl group is not implemented"
            )));
        }
        Ok(AffWeylElement::from_parts(
            WeylElement::identity(rs.rank()),
            mu.clone(),
        ))
    }

    pub fn finite_part(&self) -> &WeylElement {
        &self.finite
    }

    pub fn translation_part(&self) -> &FinWeight {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.finite.is_identity() && self.translation.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, rs: &RootSystem, other: &AffWeylElement) -> AffWeylElement {
        let shifted = if self.translation.is_zero() {
            self.translation.clone()
        } else {
            other.finite.inverse(rs).apply(&self.translation)
        };
        AffWeylElement {
            finite: self.finite.compose(&other.finite),
            translation: &shifted + &other.translation,
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> AffWeylElement {
        // (w t_μ)⁻¹ = t_{−μ} w⁻¹ = w⁻¹ t_{−wμ}
        AffWeylElement {
            finite: self.finite.inverse(rs),
            translation: -&self.finite.apply(&self.translation),
        }
    }

    pub fn apply(&self, rs: &RootSystem, xi: &AffWeight) -> AffWeight {
        let t = translate(rs, &self.translation, xi);
        AffWeight::new(self.finite.apply(&t.fin), t.level, t.degree)
    }

    /// A reduced word, read off from sorting `x(ρ̂)` back to ρ̂.
    pub fn reduced_word(&self, rs: &RootSystem) -> ReducedWord {
        let probe = self.apply(rs, &AffWeight::rho_hat(rs));
        let (_, word) = dominant_reduce(rs, &probe).expect("ρ̂ has positive level");
        word
    }

    pub fn length(&self, rs: &RootSystem) -> usize {
        element_length(rs, self)
    }

    /// "w · t_μ" with `w` as a reduced word in the finite simple reflections.
    pub fn display(&self, rs: &RootSystem) -> String {
        let word = self.finite.reduced_word(rs);
        let w = if word.is_empty() {
            "id".to_string()
        } else {
            word.iter()
                .map(|i| format!("r{i}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{w} · t_{}", self.translation)
    }
}

/// r_β for a positive root β, as u r_j u⁻¹ where u⁻¹β = α_j.
fn reflection_matrix(rs: &RootSystem, beta: &FinWeight) -> WeylElement {
    let mut cur = beta.clone();
    let mut path = Vec::new();
    loop {
        if let Some(j) = rs.simple_roots().iter().position(|a| *a == cur) {
            let u = WeylElement::from_word(rs, &path);
            let mut rev = path.clone();
            rev.reverse();
            let u_inv = WeylElement::from_word(rs, &rev);
            return u.compose(&WeylElement::simple(rs, j + 1)).compose(&u_inv);
        }
        let i = (0..rs.rank())
            .find(|&i| cur.0[i].is_positive())
            .expect("a positive non-simple root pairs positively with some simple coroot");
        cur = rs.reflect_simple(i, &cur);
        path.push(i + 1);
    }
}

/// Simple reflection r_i on affine weights, `i ∈ Î`.
pub fn affine_reflect(rs: &RootSystem, i: usize, xi: &AffWeight) -> AffWeight {
    let n = xi.pairing(rs, i);
    if n.is_zero() {
        return xi.clone();
    }
    if i == 0 {
        // ξ − n(δ − θ)
        AffWeight::new(xi.fin.add_scaled(rs.theta(), n), xi.level, xi.degree - n)
    } else {
        AffWeight::new(
            xi.fin.add_scaled(rs.simple_root(i - 1), -n),
            xi.level,
            xi.degree,
        )
    }
}

/// t_α(ξ) = ξ + (ξ|δ)α − ((ξ|α) + ½(ξ|δ)(α|α))δ.
pub fn translate(rs: &RootSystem, alpha: &FinWeight, xi: &AffWeight) -> AffWeight {
    if alpha.is_zero() {
        return xi.clone();
    }
    let a = xi.level;
    let half = Rational::new(1, 2);
    AffWeight::new(
        xi.fin.add_scaled(alpha, a),
        a,
        xi.degree - rs.form(&xi.fin, alpha) - half * a * rs.form(alpha, alpha),
    )
}

/// Number of positive real affine roots β with ⟨ξ, β∨⟩ < 0. Each step of
/// [`dominant_reduce`] removes exactly one of them.
pub fn inversion_count(rs: &RootSystem, xi: &AffWeight) -> Result<u64> {
    if !xi.level.is_positive() {
        return Err(Error::Unsupported(format!(
            "level {} is not positive",
            xi.level
        )));
    }
    let mut total: u64 = 0;
    for root in rs.positive_roots() {
        let p = rs.coroot_pairing(&xi.fin, root);
        let c = xi.level * root.d;
        // α + rδ, r ≥ 0:  p + rc < 0
        if p.is_negative() {
            total += ceil_pos(-p / c);
        }
        // −α + rδ, r ≥ 1:  −p + rc < 0
        if p.is_positive() {
            total += ceil_pos(p / c) - 1;
        }
    }
    Ok(total)
}

fn ceil_pos(q: Rational) -> u64 {
    let (n, d) = (*q.numer(), *q.denom());
    Integer::div_ceil(&n, &d) as u64
}

/// Moves ξ into the dominant chamber by simple reflections at negative
/// pairings (smallest index first). Returns `(Λ, i₁…i_k)` with
/// ξ = r_{i₁}⋯r_{i_k} Λ.
pub fn dominant_reduce(rs: &RootSystem, xi: &AffWeight) -> Result<(AffWeight, ReducedWord)> {
    dominant_reduce_with(rs, xi, TieBreak::Smallest)
}

pub fn dominant_reduce_with(
    rs: &RootSystem,
    xi: &AffWeight,
    tie: TieBreak,
) -> Result<(AffWeight, ReducedWord)> {
    let cap = inversion_count(rs, xi)?;
    let n = rs.rank();
    let mut cur = xi.clone();
    let mut word = Vec::new();
    loop {
        let negative = |i: &usize| cur.pairing(rs, *i).is_negative();
        let next = match tie {
            TieBreak::Smallest => (0..=n).find(negative),
            TieBreak::Largest => (0..=n).rev().find(negative),
        };
        let Some(i) = next else { break };
        if word.len() as u64 >= cap {
            return Err(Error::Internal(format!(
                "dominant reduction of {xi} exceeded {cap} steps"
            )));
        }
        cur = affine_reflect(rs, i, &cur);
        word.push(i);
    }
    Ok((cur, ReducedWord(word)))
}

/// Coxeter length ℓ(x), read off from the reduction of x(ρ̂).
pub fn element_length(rs: &RootSystem, x: &AffWeylElement) -> usize {
    let probe = x.apply(rs, &AffWeight::rho_hat(rs));
    inversion_count(rs, &probe).expect("ρ̂ has positive level") as usize
}

/// t_μ for μ ∈ M.
pub fn translation_element(rs: &RootSystem, mu: &FinWeight) -> Result<AffWeylElement> {
    AffWeylElement::translation(rs, mu)
}

/// True when ⟨ξ, α_i∨⟩ is an integer for every i ∈ Î.
pub fn has_integral_pairings(rs: &RootSystem, xi: &AffWeight) -> bool {
    (0..=rs.rank()).all(|i| xi.pairing(rs, i).is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet, VecDeque};

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn w(fin: &[i64], level: i64, degree: i64) -> AffWeight {
        AffWeight::from_ints(fin, level, degree)
    }

    /// Breadth-first search over words: length of the shortest word mapping
    /// ρ̂ to `target`.
    fn bfs_length(rs: &RootSystem, target: &AffWeight, max: usize) -> Option<usize> {
        let start = AffWeight::rho_hat(rs);
        let mut seen = HashSet::from([start.clone()]);
        let mut q = VecDeque::from([(start, 0usize)]);
        while let Some((x, d)) = q.pop_front() {
            if &x == target {
                return Some(d);
            }
            if d == max {
                continue;
            }
            for i in 0..=rs.rank() {
                let y = affine_reflect(rs, i, &x);
                if seen.insert(y.clone()) {
                    q.push_back((y, d + 1));
                }
            }
        }
        None
    }

    #[test]
    fn reflect_zero_examples() {
        let r = rs("A1");
        // r₀(Λ₀) = Λ₀ − δ + θ
        assert_eq!(affine_reflect(&r, 0, &w(&[0], 1, 0)), w(&[2], 1, -1));
        let fixed = w(&[0], 3, 5);
        assert_eq!(affine_reflect(&r, 1, &fixed), fixed);
        for x in [w(&[3], 2, 1), w(&[-5], 1, 0), w(&[1], 0, 7)] {
            assert_eq!(affine_reflect(&r, 0, &affine_reflect(&r, 0, &x)), x);
        }
    }

    #[test]
    fn translate_examples() {
        let r = rs("A1");
        let d = AffWeight::delta(1);
        assert_eq!(translate(&r, &FinWeight::from_ints(&[2]), &d), d);
        // t_{−α₁}(Λ₀) = Λ₀ − α₁ − δ
        assert_eq!(
            translate(&r, &FinWeight::from_ints(&[-2]), &w(&[0], 1, 0)),
            w(&[-2], 1, -1)
        );
        let a2 = rs("A2");
        let (a, b) = (
            FinWeight::from_ints(&[2, -1]),
            FinWeight::from_ints(&[1, 1]),
        );
        let x = w(&[1, -3], 1, 2);
        assert_eq!(
            translate(&a2, &a, &translate(&a2, &b, &x)),
            translate(&a2, &(&a + &b), &x)
        );
    }

    #[test]
    fn simple_elements_match_reflections() {
        for t in ["A1", "A2", "B2", "G2", "C3"] {
            let r = rs(t);
            let x = w(
                &vec![1; r.rank()]
                    .iter()
                    .enumerate()
                    .map(|(i, _)| 2 - i as i64)
                    .collect::<Vec<_>>(),
                3,
                1,
            );
            for i in 0..=r.rank() {
                assert_eq!(
                    AffWeylElement::simple(&r, i).apply(&r, &x),
                    affine_reflect(&r, i, &x),
                    "{t} r{i}"
                );
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let r = rs("A1");
        let dom = w(&[1], 2, 0);
        assert_eq!(
            dominant_reduce(&r, &dom).unwrap(),
            (dom.clone(), ReducedWord::default())
        );
        let (lam, word) = dominant_reduce(&r, &w(&[-2], 1, 0)).unwrap();
        assert!(lam.is_dominant(&r));
        assert_eq!(word.len(), 2);
        // Λ₀ − θ = r₁ r₀ (Λ₀ + δ)
        assert_eq!(lam, w(&[0], 1, 1));
        assert_eq!(word.evaluate(&r).apply(&r, &lam), w(&[-2], 1, 0));
        assert!(dominant_reduce(&r, &w(&[1], 0, 0)).is_err());
    }

    #[test]
    fn translation_lengths() {
        let r = rs("A1");
        let t = translation_element(&r, &FinWeight::from_ints(&[2])).unwrap();
        assert_eq!(t.length(&r), 2);
        assert_eq!(
            bfs_length(&r, &t.apply(&r, &AffWeight::rho_hat(&r)), 6),
            Some(2)
        );
        assert!(translation_element(&r, &FinWeight::from_ints(&[1])).is_err());
        assert!(translation_element(&r, &FinWeight::zero(1))
            .unwrap()
            .is_identity());
        let l = w(&[0], 3, 0);
        assert_eq!(t.apply(&r, &l).fin, FinWeight::from_ints(&[6]));
    }

    #[test]
    fn lengths_agree_with_breadth_first_search() {
        for t in ["A1", "A2", "B2", "G2"] {
            let r = rs(t);
            // every element reachable by words of length ≤ 4
            let mut elems: HashMap<AffWeylElement, usize> = HashMap::new();
            let mut frontier = vec![AffWeylElement::identity(&r)];
            elems.insert(frontier[0].clone(), 0);
            for d in 1..=4 {
                let mut next = Vec::new();
                for x in &frontier {
                    for i in 0..=r.rank() {
                        let y = x.compose(&r, &AffWeylElement::simple(&r, i));
                        if !elems.contains_key(&y) {
                            elems.insert(y.clone(), d);
                            next.push(y);
                        }
                    }
                }
                frontier = next;
            }
            for (x, d) in elems {
                assert_eq!(x.length(&r), d, "{t} {}", x.display(&r));
                assert_eq!(x.reduced_word(&r).evaluate(&r), x);
            }
        }
    }

    #[test]
    fn group_law_and_inverse() {
        let r = rs("B2");
        let x = AffWeylElement::from_word(&r, &[0, 1, 2, 0]);
        let y = AffWeylElement::from_word(&r, &[2, 0, 1]);
        let xi = w(&[3, -1], 2, 5);
        assert_eq!(
            x.compose(&r, &y).apply(&r, &xi),
            x.apply(&r, &y.apply(&r, &xi))
        );
        assert!(x.compose(&r, &x.inverse(&r)).is_identity());
        let r0 = AffWeylElement::simple(&r, 0);
        assert_eq!(r0.translation_part(), &(-r.theta()));
    }

    #[test]
    fn largest_tie_break_gives_same_element() {
        let r = rs("G2");
        let xi = w(&[-3, 2], 2, 0);
        let (a, wa) = dominant_reduce_with(&r, &xi, TieBreak::Smallest).unwrap();
        let (b, wb) = dominant_reduce_with(&r, &xi, TieBreak::Largest).unwrap();
        assert_eq!(a, b);
        assert_eq!(wa.len(), wb.len());
        assert_eq!(wa.evaluate(&r).apply(&r, &a), xi);
        assert_eq!(wb.evaluate(&r).apply(&r, &b), xi);
    }
}
