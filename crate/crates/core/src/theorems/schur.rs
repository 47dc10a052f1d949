//! Multiplicity dominance between tensor products of `D(ℓ_i, ℓ_iθ)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::affring::CharElement;
use crate::demazure::decompose_finite;
use crate::error::{Error, Result};
use crate::rootsys::FinWeight;

use super::{VerificationReport, Verifier};

/// Partitions of `n` as weakly decreasing lists of positive parts,
/// in reverse lexicographic order.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn go(n: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

fn pad(a: &[i64], len: usize) -> Vec<i64> {
    let mut v = a.to_vec();
    v.resize(len, 0);
    v
}

/// Checks the hypotheses and returns both partitions padded to equal length.
fn admissible(l: &[i64], m: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    let p = l.len().max(m.len());
    let (l, m) = (pad(l, p), pad(m, p));
    for (name, x) in [("first", &l), ("second", &m)] {
        if x.iter().any(|&a| a < 0) || x.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!(
                "{name} sequence {x:?} is not a weakly decreasing list of non-negative integers"
            )));
        }
    }
    let (sl, sm): (i64, i64) = (l.iter().sum(), m.iter().sum());
    if sl != sm || sl == 0 {
        return Err(Error::Precondition(format!(
            "{l:?} and {m:?} must partition the same positive integer"
        )));
    }
    for i in 0..p {
        let (a, b): (i64, i64) = (l[i..].iter().sum(), m[i..].iter().sum());
        if a < b {
            return Err(Error::Precondition(format!(
                "suffix sums fail at position {}: {a} < {b}",
                i + 1
            )));
        }
    }
    Ok((l, m))
}

/// Whether `(l, m)` satisfies the hypotheses of the dominance check.
pub fn is_admissible_pair(l: &[i64], m: &[i64]) -> bool {
    admissible(l, m).is_ok()
}

fn product(v: &Verifier<'_>, parts: &[i64]) -> Result<CharElement> {
    let mut acc = CharElement::one(v.rs.rank());
    for &l in parts {
        acc = &acc * &v.demazure_h(l, &v.rs.theta().scale_int(l))?;
    }
    Ok(acc)
}

/// Every V(ν) occurs in `⊗ D(ℓ_i, ℓ_iθ)` at least as often as in
/// `⊗ D(m_i, m_iθ)`.
pub fn verify_schur_dominance(
    v: &Verifier<'_>,
    l: &[i64],
    m: &[i64],
) -> Result<VerificationReport> {
    let rs = v.rs;
    let (l, m) = admissible(l, m)?;
    let mut c = v.check("schur", format!("{}/{l:?}/{m:?}", rs.cartan_type()));
    c.input("l", format!("{l:?}")).input("m", format!("{m:?}"));

    let left = product(v, &l)?;
    let right = product(v, &m)?;

    // dimensions against the decomposition of D(ℓ,ℓθ) into V(jθ)
    for (side, parts, ch) in [("left", &l, &left), ("right", &m, &right)] {
        let mut expected = BigInt::from(1);
        for &p in parts.iter() {
            let mut d = BigInt::from(0);
            for j in 0..=p {
                d += v.weyl_dim(&rs.theta().scale_int(j))?;
            }
            expected *= d;
        }
        c.ints(&format!("dim {side}"), &ch.coefficient_sum(), &expected);
    }

    let dl: BTreeMap<FinWeight, BigInt> = decompose_finite(rs, &left)?.into_iter().collect();
    let dr: BTreeMap<FinWeight, BigInt> = decompose_finite(rs, &right)?.into_iter().collect();
    let zero = BigInt::from(0);
    for (nu, b) in &dr {
        let a = dl.get(nu).unwrap_or(&zero);
        c.holds(a >= b, || format!("multiplicity of V{nu}: {a} < {b}"));
    }
    c.note(format!(
        "dims {} ≥ {}, {} vs {} irreducible types",
        left.coefficient_sum(),
        right.coefficient_sum(),
        dl.len(),
        dr.len()
    ));
    Ok(c.finish())
}
