use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::Zero;

use super::{FinWeight, RootSystem};
use crate::Rational;

/// Element of the finite Weyl group, stored as its integer action matrix on
/// fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    /// Row-major; `(wλ)_j = Σ_k m[j·n + k] λ_k`.
    m: Vec<i64>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut m = vec![0; rank * rank];
        for i in 0..rank {
            m[i * rank + i] = 1;
        }
        WeylElement { rank, m }
    }

    /// Simple reflection r_i, 1-based.
    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank();
        let c = rs.cartan_matrix();
        let mut m = vec![0; n * n];
        for j in 0..n {
            for k in 0..n {
                let delta = i64::from(j == k);
                let sub = if k == i - 1 { c[i - 1][j] } else { 0 };
                m[j * n + k] = delta - sub;
            }
        }
        WeylElement { rank: n, m }
    }

    /// r_{i₁}⋯r_{i_k} for 1-based indices.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        word.iter()
            .fold(WeylElement::identity(rs.rank()), |acc, &i| {
                acc.compose(&WeylElement::simple(rs, i))
            })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.m[k * n + j];
                }
            }
        }
        WeylElement { rank: n, m }
    }

    pub fn apply(&self, lambda: &FinWeight) -> FinWeight {
        let n = self.rank;
        FinWeight(
            (0..n)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for k in 0..n {
                        let a = self.m[j * n + k];
                        if a != 0 {
                            acc += lambda.0[k] * a;
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// A reduced word (1-based) obtained by sorting wρ back to ρ with
    /// smallest-index tie-breaking.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let (_, word) = rs.dominant_conjugate(&self.apply(rs.rho()));
        word
    }

    pub fn length(&self, rs: &RootSystem) -> usize {
        self.reduced_word(rs).len()
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let mut word = self.reduced_word(rs);
        word.reverse();
        WeylElement::from_word(rs, &word)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for j in 0..self.rank {
            if j > 0 {
                write!(f, ";")?;
            }
            for k in 0..self.rank {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.m[j * self.rank + k])?;
            }
        }
        write!(f, "]")
    }
}

pub(super) fn enumerate(rs: &RootSystem) -> Vec<WeylElement> {
    let id = WeylElement::identity(rs.rank());
    let gens: Vec<_> = (1..=rs.rank())
        .map(|i| WeylElement::simple(rs, i))
        .collect();
    let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let x = w.compose(g);
            if seen.insert(x.clone()) {
                order.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn group_orders() {
        for (t, order) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A3", 24),
            ("B3", 48),
        ] {
            assert_eq!(rs(t).weyl_group().len(), order, "{t}");
        }
    }

    #[test]
    fn simple_reflection_matches_root_system() {
        let r = rs("G2");
        let lam = FinWeight::from_ints(&[3, -2]);
        for i in 1..=2 {
            assert_eq!(
                WeylElement::simple(&r, i).apply(&lam),
                r.reflect_simple(i - 1, &lam)
            );
        }
    }

    #[test]
    fn inverse_and_words_round_trip() {
        let r = rs("B2");
        for w in r.weyl_group() {
            let inv = w.inverse(&r);
            assert!(w.compose(&inv).is_identity());
            let word = w.reduced_word(&r);
            assert_eq!(WeylElement::from_word(&r, &word), w);
        }
        let w0 = r.w0();
        assert_eq!(w0.length(&r), 4);
        assert!(w0.compose(&w0).is_identity());
    }
}
