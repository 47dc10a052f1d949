//! Finite root systems of types A–G with the normalization (θ|θ) = 2.
//!
//! Weights are stored in fundamental-weight coordinates, so the pairing with a
//! simple coroot is a coordinate read-off. The Cartan matrix convention is
//! `cartan[i][j] = ⟨α_i, α_j∨⟩`, which makes row `i` the ω-coordinates of α_i.

mod cartan;
mod linalg;
mod weight;
mod weyl;

use std::collections::HashMap;

use num_traits::{Signed, Zero};

pub use cartan::{CartanType, Family, MAX_RANK};
pub use weight::FinWeight;
pub use weyl::WeylElement;

use crate::error::{Error, Result};
use crate::Rational;
use linalg::RatMatrix;

/// A positive root together with its coroot data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub weight: FinWeight,
    /// Coefficients of α∨ in the simple coroots.
    pub coroot: Vec<i64>,
    /// d_α = 2/(α|α).
    pub d: i64,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_long(&self) -> bool {
        self.d == 1
    }
}

/// Lattice membership flags of a finite weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct LatticeFlags {
    pub in_p: bool,
    pub in_p_plus: bool,
    pub in_q: bool,
    pub in_l: bool,
    pub in_l_plus: bool,
    pub in_m: bool,
    pub in_m_plus: bool,
}

/// Immutable finite root-system datum.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    simple_d: Vec<i64>,
    simple_roots: Vec<FinWeight>,
    positive_roots: Vec<Root>,
    highest: usize,
    form: RatMatrix,
    cartan_inv: RatMatrix,
    longest_word: Vec<usize>,
    rho: FinWeight,
    index: HashMap<FinWeight, (usize, bool)>,
}

/// Builds the root system of type `t`.
pub fn build_root_system(t: CartanType) -> Result<RootSystem> {
    RootSystem::new(t)
}

impl RootSystem {
    pub fn new(t: CartanType) -> Result<Self> {
        // Re-validate in case the type was built around `CartanType::new`.
        let t = CartanType::new(t.family(), t.rank())?;
        let n = t.rank();
        let simple_d = t.simple_d();
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in t.edges() {
            // ⟨α_i, α_j∨⟩ = -max(1, d_j/d_i) for adjacent nodes.
            cartan[a][b] = -(simple_d[b] / simple_d[a]).max(1);
            cartan[b][a] = -(simple_d[a] / simple_d[b]).max(1);
        }

        let cartan_q = linalg::to_rational(&cartan);
        let cartan_inv = linalg::invert(&cartan_q)
            .ok_or_else(|| Error::Internal(format!("singular Cartan matrix for {t}")))?;
        // (ω_i|ω_j) = (C⁻¹ diag(1/d))_{ij}
        let dinv: RatMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::new(1, simple_d[j])
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let form = linalg::mul(&cartan_inv, &dinv);

        let simple_roots: Vec<FinWeight> =
            (0..n).map(|i| FinWeight::from_ints(&cartan[i])).collect();

        let positive_roots = Self::generate_roots(&cartan, &simple_d);
        let max_height = positive_roots.iter().map(Root::height).max().unwrap_or(0);
        let highest = positive_roots
            .iter()
            .position(|r| r.height() == max_height)
            .ok_or_else(|| Error::Internal("no roots generated".into()))?;

        let mut index = HashMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            index.insert(r.weight.clone(), (k, true));
            index.insert(-&r.weight, (k, false));
        }

        let rho = FinWeight::from_ints(&vec![1; n]);
        let mut rs = RootSystem {
            cartan_type: t,
            cartan,
            simple_d,
            simple_roots,
            positive_roots,
            highest,
            form,
            cartan_inv,
            longest_word: Vec::new(),
            rho,
            index,
        };
        rs.longest_word = rs.compute_longest_word();
        Ok(rs)
    }

    fn generate_roots(cartan: &[Vec<i64>], simple_d: &[i64]) -> Vec<Root> {
        let n = cartan.len();
        let pair = |c: &[i64], i: usize| -> i64 { (0..n).map(|j| c[j] * cartan[j][i]).sum() };
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut all: Vec<Vec<i64>> = (0..n).map(unit).collect();
        let mut known: std::collections::HashSet<Vec<i64>> = all.iter().cloned().collect();
        let mut layer = all.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // α_i-string through β: p steps down, q = p - ⟨β, α_i∨⟩ steps up
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - pair(beta, i);
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort();
            all.extend(next.iter().cloned());
            layer = next;
        }

        all.into_iter()
            .map(|coeffs| {
                let weight = FinWeight::from_ints(
                    &(0..n)
                        .map(|k| (0..n).map(|j| coeffs[j] * cartan[j][k]).sum())
                        .collect::<Vec<i64>>(),
                );
                // (α|α) = Σ c_i c_j cartan[i][j]/d_j; the long normalization is 2.
                let norm: Rational = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| Rational::new(coeffs[i] * coeffs[j] * cartan[i][j], simple_d[j]))
                    .sum();
                let d = (Rational::from_integer(2) / norm).to_integer();
                let coroot = (0..n).map(|i| coeffs[i] * d / simple_d[i]).collect();
                Root {
                    coeffs,
                    weight,
                    coroot,
                    d,
                }
            })
            .collect()
    }

    fn compute_longest_word(&self) -> Vec<usize> {
        // Reflect ρ to -ρ, always at the smallest index with positive pairing.
        let mut mu = self.rho.clone();
        let mut word = Vec::new();
        while let Some(i) = mu.0.iter().position(|c| c.is_positive()) {
            mu = self.reflect_simple(i, &mu);
            word.push(i + 1);
        }
        word
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// d_i for the simple roots (0-based).
    pub fn simple_d(&self) -> &[i64] {
        &self.simple_d
    }

    pub fn simple_root(&self, i: usize) -> &FinWeight {
        &self.simple_roots[i]
    }

    pub fn simple_roots(&self) -> &[FinWeight] {
        &self.simple_roots
    }

    /// Positive roots ordered by height (simple roots first).
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// d_α for every positive root, in `positive_roots` order.
    pub fn d_values(&self) -> Vec<i64> {
        self.positive_roots.iter().map(|r| r.d).collect()
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest]
    }

    /// θ in ω-coordinates.
    pub fn theta(&self) -> &FinWeight {
        &self.positive_roots[self.highest].weight
    }

    pub fn rho(&self) -> &FinWeight {
        &self.rho
    }

    /// Reduced word (1-based indices) for the longest element w₀.
    pub fn longest_word(&self) -> &[usize] {
        &self.longest_word
    }

    /// h∨ = 1 + Σ_i ⟨ω_i, θ∨⟩, the level of ρ̂.
    pub fn dual_coxeter_number(&self) -> i64 {
        1 + self.highest_root().coroot.iter().sum::<i64>()
    }

    /// The invariant form (·|·) in ω-coordinates.
    pub fn form_matrix(&self) -> &[Vec<Rational>] {
        &self.form
    }

    pub fn form(&self, a: &FinWeight, b: &FinWeight) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b.0[j].is_zero() {
                    acc += a.0[i] * self.form[i][j] * b.0[j];
                }
            }
        }
        acc
    }

    /// Looks up a (possibly negative) root; returns the positive root and
    /// whether `alpha` itself is positive.
    pub fn find_root(&self, alpha: &FinWeight) -> Option<(&Root, bool)> {
        self.index
            .get(alpha)
            .map(|&(k, pos)| (&self.positive_roots[k], pos))
    }

    pub fn is_root(&self, alpha: &FinWeight) -> bool {
        self.index.contains_key(alpha)
    }

    /// ⟨λ, α∨⟩ for a root α given in ω-coordinates.
    pub fn pairing(&self, lambda: &FinWeight, alpha: &FinWeight) -> Result<Rational> {
        let (root, positive) = self.find_root(alpha).ok_or_else(|| {
            Error::Domain(format!("{alpha} is not a root of {}", self.cartan_type))
        })?;
        let p = self.coroot_pairing(lambda, root);
        Ok(if positive { p } else { -p })
    }

    /// ⟨λ, α∨⟩ for a positive root.
    pub fn coroot_pairing(&self, lambda: &FinWeight, root: &Root) -> Rational {
        lambda
            .0
            .iter()
            .zip(&root.coroot)
            .filter(|(_, &c)| c != 0)
            .map(|(l, &c)| l * c)
            .sum()
    }

    /// ⟨λ, θ∨⟩.
    pub fn theta_pairing(&self, lambda: &FinWeight) -> Rational {
        self.coroot_pairing(lambda, self.highest_root())
    }

    /// r_α(λ) = λ - ⟨λ, α∨⟩ α.
    pub fn reflect(&self, alpha: &FinWeight, lambda: &FinWeight) -> Result<FinWeight> {
        let p = self.pairing(lambda, alpha)?;
        Ok(lambda.add_scaled(alpha, -p))
    }

    /// Simple reflection r_{i+1} (0-based `i`).
    pub fn reflect_simple(&self, i: usize, lambda: &FinWeight) -> FinWeight {
        let p = lambda.0[i];
        if p.is_zero() {
            return lambda.clone();
        }
        lambda.add_scaled(&self.simple_roots[i], -p)
    }

    /// Coefficients of λ in the simple roots.
    pub fn alpha_coords(&self, lambda: &FinWeight) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|k| lambda.0[k] * self.cartan_inv[k][j]).sum())
            .collect()
    }

    pub fn from_alpha_coords(&self, coeffs: &[Rational]) -> FinWeight {
        let n = self.rank();
        FinWeight(
            (0..n)
                .map(|k| {
                    (0..n)
                        .map(|j| coeffs[j] * Rational::from_integer(self.cartan[j][k]))
                        .sum()
                })
                .collect(),
        )
    }

    /// Height: the sum of simple-root coefficients.
    pub fn height(&self, lambda: &FinWeight) -> Rational {
        self.alpha_coords(lambda).into_iter().sum()
    }

    pub fn lattice_membership(&self, lambda: &FinWeight) -> LatticeFlags {
        let in_p = lambda.is_integral();
        let dominant = lambda.is_dominant();
        let a = self.alpha_coords(lambda);
        let in_q = a.iter().all(|c| c.is_integer());
        let divisible = |c: &Rational, d: i64| c.is_integer() && c.to_integer() % d == 0;
        let in_l = lambda
            .0
            .iter()
            .zip(&self.simple_d)
            .all(|(c, &d)| divisible(c, d));
        let in_m = in_q && a.iter().zip(&self.simple_d).all(|(c, &d)| divisible(c, d));
        LatticeFlags {
            in_p,
            in_p_plus: in_p && dominant,
            in_q,
            in_l,
            in_l_plus: in_l && dominant,
            in_m,
            in_m_plus: in_m && dominant,
        }
    }

    /// Dominant W-conjugate of λ and a word `i₁…i_k` (1-based) with
    /// λ = r_{i₁}⋯r_{i_k}(dominant).
    pub fn dominant_conjugate(&self, lambda: &FinWeight) -> (FinWeight, Vec<usize>) {
        let mut mu = lambda.clone();
        let mut word = Vec::new();
        while let Some(i) = mu.0.iter().position(|c| c.is_negative()) {
            mu = self.reflect_simple(i, &mu);
            word.push(i + 1);
        }
        (mu, word)
    }

    pub fn w0(&self) -> WeylElement {
        WeylElement::from_word(self, &self.longest_word)
    }

    /// w₀λ.
    pub fn apply_w0(&self, lambda: &FinWeight) -> FinWeight {
        self.longest_word
            .iter()
            .rev()
            .fold(lambda.clone(), |mu, &i| self.reflect_simple(i - 1, &mu))
    }

    /// All elements of the finite Weyl group, in breadth-first order.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        weyl::enumerate(self)
    }

    /// Dominant integral weights λ with Σ λ_i ≤ `max_sum`, lexicographically.
    pub fn dominant_weights_up_to(&self, max_sum: i64) -> Vec<FinWeight> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        fn rec(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<FinWeight>) {
            if k == cur.len() {
                out.push(FinWeight::from_ints(cur));
                return;
            }
            for v in 0..=left {
                cur[k] = v;
                rec(k + 1, left - v, cur, out);
            }
            cur[k] = 0;
        }
        rec(0, max_sum, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Dominant elements of the co-root lattice M with (λ|θ) ≤ `max_theta`.
    pub fn m_plus_up_to(&self, max_theta: i64) -> Vec<FinWeight> {
        // (ω_i|θ) = ⟨ω_i, θ∨⟩ ≥ 1, so Σλ_i ≤ max_theta bounds the search.
        let bound = Rational::from_integer(max_theta);
        let mut out: Vec<FinWeight> = self
            .dominant_weights_up_to(max_theta)
            .into_iter()
            .filter(|l| self.form(l, self.theta()) <= bound)
            .filter(|l| self.lattice_membership(l).in_m_plus)
            .collect();
        out.sort_by_key(|l| (self.form(l, self.theta()), l.clone()));
        out
    }
}
