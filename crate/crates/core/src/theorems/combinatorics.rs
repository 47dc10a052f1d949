//! ξ-tuples of partitions and the index sets S(r,s).

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{FinWeight, RootSystem};

use super::fusion::FusionSpec;
use super::{VerificationReport, Verifier};

/// One partition per positive root, in `positive_roots` order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiTuple {
    pub roots: Vec<String>,
    pub parts: Vec<Vec<i64>>,
}

impl fmt::Display for XiTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (r, p)) in self.roots.iter().zip(&self.parts).enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}: {p:?}")?;
        }
        Ok(())
    }
}

/// The tuple ξ attached to `D(ℓ,ℓλ) * D(m,kθ)`:
///
/// * (θ|α) = 0: `(d_α ℓ)` repeated `(λ|α)` times;
/// * (θ|α) = 1: the same followed by `d_α k`;
/// * α = θ: `ℓ` repeated `(λ|θ)` times, then `m, 2k−m` if m ≤ 2k, else `2k`.
///
/// Zero parts are dropped.
pub fn xi_tuple(rs: &RootSystem, spec: &FusionSpec) -> Result<XiTuple> {
    spec.validate(rs)?;
    let (l, m, k) = (spec.level, spec.m, spec.k);
    let lambda = spec.lambda(rs);
    let theta = rs.theta();
    let mut roots = Vec::new();
    let mut parts = Vec::new();
    for root in rs.positive_roots() {
        let la = rs.form(&lambda, &root.weight);
        let ta = rs.form(theta, &root.weight);
        if !la.is_integer() || !ta.is_integer() {
            return Err(Error::Lattice(format!(
                "(λ|α) = {la} for α = {} is not integral",
                root.weight
            )));
        }
        let (la, ta) = (la.to_integer(), ta.to_integer());
        let mut p: Vec<i64>;
        if root.weight == *theta {
            p = vec![l; la as usize];
            if m <= 2 * k {
                p.extend([m, 2 * k - m]);
            } else {
                p.push(2 * k);
            }
        } else {
            p = vec![root.d * l; la as usize];
            match ta {
                0 => {}
                1 => p.push(root.d * k),
                other => {
                    return Err(Error::Internal(format!(
                        "(θ|α) = {other} for α = {}",
                        root.weight
                    )))
                }
            }
        }
        p.retain(|&x| x != 0);
        roots.push(root.weight.to_string());
        parts.push(p);
    }
    Ok(XiTuple { roots, parts })
}

/// `⟨ℓλ + kθ, α∨⟩` for each positive root: the size each partition must have.
pub fn xi_expected_sizes(rs: &RootSystem, spec: &FusionSpec) -> Vec<i64> {
    let mu: FinWeight = &spec.lambda(rs).scale_int(spec.level) + &rs.theta().scale_int(spec.k);
    rs.positive_roots()
        .iter()
        .map(|r| rs.coroot_pairing(&mu, r).to_integer())
        .collect()
}

/// Which sequences of S(r,s) to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SMode {
    All,
    /// b_p = 0 for p ≥ K.
    Upper(usize),
    /// b_p = 0 for p < K.
    Lower(usize),
}

/// Sequences `(b_0,…,b_s)` of nonnegative integers with `Σ b_p = r` and
/// `Σ p·b_p = s`, filtered by `mode`, in lexicographic order.
pub fn enumerate_s(r: usize, s: usize, mode: SMode) -> Vec<Vec<usize>> {
    let (lo, hi) = match mode {
        SMode::All => (0, s + 1),
        SMode::Upper(k) => (0, k.min(s + 1)),
        SMode::Lower(k) => (k, s + 1),
    };
    let mut out = Vec::new();
    let mut cur = vec![0usize; s + 1];
    fn rec(
        p: usize,
        hi: usize,
        r: usize,
        s: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p == hi {
            if r == 0 && s == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max_b = s.checked_div(p).map_or(r, |q| r.min(q));
        for b in 0..=max_b {
            cur[p] = b;
            rec(p + 1, hi, r - b, s - p * b, cur, out);
        }
        cur[p] = 0;
    }
    if lo <= hi {
        rec(lo, hi, r, s, &mut cur, &mut out);
    }
    out.sort();
    out
}

/// |S(r,s)| for `mode`, as the coefficient of `x^r q^s` in
/// `Π_p 1/(1 − x q^p)` over the allowed `p`.
pub fn s_count_generating(r: usize, s: usize, mode: SMode) -> u64 {
    let ps: Vec<usize> = match mode {
        SMode::All => (0..=s).collect(),
        SMode::Upper(k) => (0..k.min(s + 1)).collect(),
        SMode::Lower(k) => (k..=s).collect(),
    };
    // coeff[i][j] of x^i q^j, truncated at (r, s)
    let mut coeff = vec![vec![0u64; s + 1]; r + 1];
    coeff[0][0] = 1;
    for p in ps {
        // multiply by 1/(1 − x q^p) = Σ_b x^b q^{pb}
        for i in 1..=r {
            for j in p..=s {
                coeff[i][j] += coeff[i - 1][j - p];
            }
        }
    }
    coeff[r][s]
}

/// ξ-tuple invariants: each partition is weakly decreasing with parts at
/// most `d_α ℓ`, and `|ξ(α)| = ⟨ℓλ+kθ, α∨⟩`.
pub fn verify_xi_tuple(v: &Verifier<'_>, spec: &FusionSpec) -> Result<VerificationReport> {
    let rs = v.rs;
    let xi = xi_tuple(rs, spec)?;
    let lam = spec.lambda(rs);
    let mut c = v.check(
        "xi",
        format!(
            "{}/l={},m={},k={}/{lam}",
            rs.cartan_type(),
            spec.level,
            spec.m,
            spec.k
        ),
    );
    c.input("level", spec.level)
        .input("m", spec.m)
        .input("k", spec.k)
        .input("lambda", &lam);
    let sizes = xi_expected_sizes(rs, spec);
    for ((root, p), (name, want)) in rs
        .positive_roots()
        .iter()
        .zip(&xi.parts)
        .zip(xi.roots.iter().zip(&sizes))
    {
        let got: i64 = p.iter().sum();
        c.ints(
            &format!("|ξ({name})|"),
            &BigInt::from(got),
            &BigInt::from(*want),
        );
        c.holds(p.windows(2).all(|w| w[0] >= w[1]), || {
            format!("ξ({name}) = {p:?} is not weakly decreasing")
        });
        let cap = root.d * spec.level;
        c.holds(p.iter().all(|&x| x > 0 && x <= cap), || {
            format!("ξ({name}) = {p:?} has a part outside 1..={cap}")
        });
    }
    c.note(xi.to_string());
    Ok(c.finish())
}

/// `enumerate_s` is sorted, duplicate free, satisfies both sums and the
/// mode constraint, and has the size predicted by the generating function.
pub fn verify_enumerate_s(
    v: &Verifier<'_>,
    r: usize,
    s: usize,
    mode: SMode,
) -> Result<VerificationReport> {
    let mode_s = match mode {
        SMode::All => "all".to_string(),
        SMode::Upper(k) => format!("upper{k}"),
        SMode::Lower(k) => format!("lower{k}"),
    };
    let mut c = v.check("enum_s", format!("r={r}/s={s}/{mode_s}"));
    c.input("r", r).input("s", s).input("mode", &mode_s);
    c.report.cartan_type = String::new();
    let seqs = enumerate_s(r, s, mode);
    let want = s_count_generating(r, s, mode);
    c.ints(
        "|S(r,s)| vs generating function",
        &BigInt::from(seqs.len()),
        &BigInt::from(want),
    );
    c.holds(seqs.windows(2).all(|w| w[0] < w[1]), || {
        "output is not strictly increasing".into()
    });
    for b in &seqs {
        let total: usize = b.iter().sum();
        let weighted: usize = b.iter().enumerate().map(|(p, x)| p * x).sum();
        let in_mode = b.iter().enumerate().all(|(p, &x)| {
            x == 0
                || match mode {
                    SMode::All => true,
                    SMode::Upper(k) => p < k,
                    SMode::Lower(k) => p >= k,
                }
        });
        c.holds(total == r && weighted == s && in_mode, || {
            format!("{b:?} is not in S({r},{s}) for {mode_s}")
        });
    }
    c.note(format!("{} sequences", seqs.len()));
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn s_examples() {
        assert_eq!(enumerate_s(3, 0, SMode::All), vec![vec![3]]);
        assert_eq!(enumerate_s(2, 1, SMode::All), vec![vec![1, 1]]);
        assert_eq!(
            enumerate_s(2, 2, SMode::All),
            vec![vec![0, 2, 0], vec![1, 0, 1]]
        );
        assert_eq!(enumerate_s(2, 2, SMode::Upper(2)), vec![vec![0, 2, 0]]);
        assert_eq!(enumerate_s(2, 2, SMode::Lower(1)), vec![vec![0, 2, 0]]);
        assert!(enumerate_s(1, 2, SMode::Upper(2)).is_empty());
        assert_eq!(s_count_generating(2, 2, SMode::All), 2);
    }

    #[test]
    fn xi_examples() {
        let a2 = rs("A2");
        let spec = FusionSpec::new(2, 2, 1, vec![]);
        let xi = xi_tuple(&a2, &spec).unwrap();
        // positive roots are ordered by height; θ is last
        assert_eq!(xi.parts, vec![vec![1], vec![1], vec![2]]);
        let a1 = rs("A1");
        let xi = xi_tuple(&a1, &FusionSpec::new(3, 3, 1, vec![])).unwrap();
        assert_eq!(xi.parts, vec![vec![2]]);
        let spec = FusionSpec::new(2, 2, 1, vec![FinWeight::from_ints(&[1, 1])]);
        let xi = xi_tuple(&a2, &spec).unwrap();
        let sizes: Vec<i64> = xi.parts.iter().map(|p| p.iter().sum()).collect();
        assert_eq!(sizes, xi_expected_sizes(&a2, &spec));
        assert_eq!(xi.parts[2], vec![2, 2, 2]);
    }
}
