//! Text syntax for weights and generalized Demazure factors.
//!
//! * weight: `c₁,…,c_n` in ω-coordinates; each `c` is an integer or `p/q`,
//!   optionally wrapped in parentheses.
//! * affine weight: `weight|level` or `weight|level|degree`.
//! * element: `id`, `w0`, `s[i,…]` (a word over Î), `t[c,…]` (translation),
//!   joined with `*`.
//! * factor: `element:affine weight`; a factor list separates factors
//!   with `;`.
//!
//! Errors report the byte offset in the input.

use num_traits::Zero;

use crate::affring::AffWeight;
use crate::affweyl::AffWeylElement;
use crate::demazure::DemazureFactor;
use crate::error::{Error, Result};
use crate::rootsys::{FinWeight, RootSystem};
use crate::Rational;

const MAX_INPUT: usize = 4096;
/// Bound on every integer literal. Forms of weights square coordinates, and
/// translations add them up across factors, so this leaves ample headroom in i64.
const MAX_INT: u64 = 1 << 20;

fn check_len(s: &str) -> Result<()> {
    if s.len() > MAX_INPUT {
        return Err(Error::parse(MAX_INPUT, "input too long"));
    }
    Ok(())
}

/// Splits `s` at `sep`, yielding each piece with its byte offset.
fn split_at(s: &str, sep: char, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == sep {
            out.push((base + start, &s[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push((base + start, &s[start..]));
    out
}

/// Trims whitespace, moving the offset past any leading whitespace.
fn trimmed(pos: usize, s: &str) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (pos + lead, s.trim())
}

fn parse_i64(pos: usize, s: &str) -> Result<i64> {
    let (pos, t) = trimmed(pos, s);
    if t.is_empty() {
        return Err(Error::parse(pos, "expected an integer"));
    }
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if let Some(k) = digits.find(|c: char| !c.is_ascii_digit()) {
        return Err(Error::parse(
            pos + (t.len() - digits.len()) + k,
            format!("unexpected character in integer {t:?}"),
        ));
    }
    if digits.is_empty() {
        return Err(Error::parse(pos, "expected digits after sign"));
    }
    t.parse::<i64>()
        .map_err(|_| Error::parse(pos, format!("integer {t:?} out of range")))
        .and_then(|v| {
            if v.unsigned_abs() > MAX_INT {
                Err(Error::parse(pos, format!("integer {t:?} out of range")))
            } else {
                Ok(v)
            }
        })
}

fn parse_rational(pos: usize, s: &str) -> Result<Rational> {
    let (pos, t) = trimmed(pos, s);
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_i64(pos, t)?)),
        Some((n, d)) => {
            let num = parse_i64(pos, n)?;
            let dpos = pos + n.len() + 1;
            let den = parse_i64(dpos, d)?;
            if den == 0 {
                return Err(Error::parse(dpos, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

fn parse_coords(pos: usize, s: &str) -> Result<Vec<Rational>> {
    let (mut pos, mut t) = trimmed(pos, s);
    if let Some(inner) = t.strip_prefix('(') {
        let Some(inner) = inner.strip_suffix(')') else {
            return Err(Error::parse(pos + t.len(), "missing closing parenthesis"));
        };
        pos += 1;
        t = inner;
    }
    if t.trim().is_empty() {
        return Err(Error::parse(pos, "empty weight"));
    }
    split_at(t, ',', pos)
        .into_iter()
        .map(|(p, c)| parse_rational(p, c))
        .collect()
}

fn check_rank(pos: usize, got: usize, rank: Option<usize>) -> Result<()> {
    match rank {
        Some(n) if n != got => Err(Error::parse(
            pos,
            format!("expected {n} coordinates, found {got}"),
        )),
        _ => Ok(()),
    }
}

/// Parses a finite weight; when `rank` is given the coordinate count must
/// match.
pub fn parse_weight(s: &str, rank: Option<usize>) -> Result<FinWeight> {
    check_len(s)?;
    let coords = parse_coords(0, s)?;
    check_rank(0, coords.len(), rank)?;
    Ok(FinWeight(coords))
}

fn parse_aff_at(pos: usize, s: &str, rank: usize) -> Result<AffWeight> {
    let parts = split_at(s, '|', pos);
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Error::parse(
            pos,
            "expected `weight|level` or `weight|level|degree`",
        ));
    }
    let coords = parse_coords(parts[0].0, parts[0].1)?;
    check_rank(parts[0].0, coords.len(), Some(rank))?;
    let level = parse_rational(parts[1].0, parts[1].1)?;
    let degree = match parts.get(2) {
        Some(&(p, d)) => parse_rational(p, d)?,
        None => Rational::zero(),
    };
    Ok(AffWeight::new(FinWeight(coords), level, degree))
}

/// Parses `c₁,…,c_n|level[|degree]`.
pub fn parse_aff_weight(s: &str, rank: usize) -> Result<AffWeight> {
    check_len(s)?;
    parse_aff_at(0, s, rank)
}

fn parse_bracketed<'a>(pos: usize, s: &'a str, head: &str) -> Result<Option<(usize, &'a str)>> {
    let Some(rest) = s.strip_prefix(head) else {
        return Ok(None);
    };
    let rest_pos = pos + head.len();
    let (p, rest) = trimmed(rest_pos, rest);
    let Some(inner) = rest.strip_prefix('[') else {
        return Err(Error::parse(p, format!("expected `[` after `{head}`")));
    };
    let Some(inner) = inner.strip_suffix(']') else {
        return Err(Error::parse(p + rest.len(), "missing closing `]`"));
    };
    Ok(Some((p + 1, inner)))
}

fn parse_element_at(pos: usize, s: &str, rs: &RootSystem) -> Result<AffWeylElement> {
    let mut acc = AffWeylElement::identity(rs);
    for (p, piece) in split_at(s, '*', pos) {
        let (p, t) = trimmed(p, piece);
        let x = if t == "id" {
            AffWeylElement::identity(rs)
        } else if t == "w0" {
            AffWeylElement::finite(rs.w0())
        } else if let Some((ip, inner)) = parse_bracketed(p, t, "s")? {
            let mut word = Vec::new();
            if !inner.trim().is_empty() {
                for (q, letter) in split_at(inner, ',', ip) {
                    let i = parse_i64(q, letter)?;
                    if i < 0 || i as usize > rs.rank() {
                        return Err(Error::parse(
                            trimmed(q, letter).0,
                            format!("index {i} is outside 0..={}", rs.rank()),
                        ));
                    }
                    word.push(i as usize);
                }
            }
            AffWeylElement::from_word(rs, &word)
        } else if let Some((ip, inner)) = parse_bracketed(p, t, "t")? {
            let coords = parse_coords(ip, inner)?;
            check_rank(ip, coords.len(), Some(rs.rank()))?;
            AffWeylElement::translation(rs, &FinWeight(coords)).map_err(|e| match e {
                Error::Lattice(m) => Error::parse(ip, m),
                other => other,
            })?
        } else {
            return Err(Error::parse(
                p,
                format!("unknown element {t:?}; expected id, w0, s[...] or t[...]"),
            ));
        };
        acc = acc.compose(rs, &x);
    }
    Ok(acc)
}

/// Parses an element of the affine Weyl group.
pub fn parse_element(s: &str, rs: &RootSystem) -> Result<AffWeylElement> {
    check_len(s)?;
    parse_element_at(0, s, rs)
}

fn parse_factor_at(pos: usize, s: &str, rs: &RootSystem) -> Result<DemazureFactor> {
    let Some(colon) = s.find(':') else {
        return Err(Error::parse(pos + s.len(), "expected `element:weight`"));
    };
    let element = parse_element_at(pos, &s[..colon], rs)?;
    let weight = parse_aff_at(pos + colon + 1, &s[colon + 1..], rs.rank())?;
    Ok(DemazureFactor::new(element, weight))
}

/// Parses one factor `element:weight|level[|degree]`.
pub fn parse_factor(s: &str, rs: &RootSystem) -> Result<DemazureFactor> {
    check_len(s)?;
    parse_factor_at(0, s, rs)
}

/// Parses a `;`-separated list of factors.
pub fn parse_factors(s: &str, rs: &RootSystem) -> Result<Vec<DemazureFactor>> {
    check_len(s)?;
    split_at(s, ';', 0)
        .into_iter()
        .filter(|(_, t)| !t.trim().is_empty())
        .map(|(p, t)| parse_factor_at(p, t, rs))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn large_translations_are_rejected_before_overflow() {
        let a2 = rs("A2");
        assert!(parse_factor("t[22222222226]:8|1", &rs("A1")).is_err());
        // at the bound, lengths and actions stay in range
        let f = parse_factor("t[1048576,-524288]:0,0|1", &a2).unwrap();
        assert!(f.element.length(&a2) > 1_000_000);
        let x = parse_element("t[1048576,-524288]*t[-524288,1048576]*w0", &a2).unwrap();
        assert!(x.length(&a2) > 0);
    }

    fn pos_of(e: Error) -> usize {
        match e {
            Error::Parse { pos, .. } => pos,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn weights() {
        assert_eq!(
            parse_weight("1, 0", Some(2)).unwrap(),
            FinWeight::from_ints(&[1, 0])
        );
        assert_eq!(
            parse_weight("(2)", None).unwrap(),
            FinWeight::from_ints(&[2])
        );
        assert_eq!(
            parse_weight("1/2,-3", None).unwrap(),
            FinWeight(vec![Rational::new(1, 2), Rational::from_integer(-3)])
        );
        assert_eq!(pos_of(parse_weight("1,x", None).unwrap_err()), 2);
        assert_eq!(pos_of(parse_weight("1, 2", Some(3)).unwrap_err()), 0);
        assert_eq!(pos_of(parse_weight("3/0", None).unwrap_err()), 2);
        assert_eq!(pos_of(parse_weight("1,,2", None).unwrap_err()), 2);
        assert!(parse_weight("", None).is_err());
        assert!(parse_weight("99999999999999999999", None).is_err());
    }

    #[test]
    fn factors() {
        let a1 = rs("A1");
        let f = parse_factor("t[-2]:0|1", &a1).unwrap();
        assert_eq!(f.weight, AffWeight::from_ints(&[0], 1, 0));
        assert_eq!(f.element.length(&a1), 2);
        let list = parse_factors("t[-2]:0|1; t[-2] : 0|2|0", &a1).unwrap();
        assert_eq!(list.len(), 2);
        let w = parse_factor("s[1,0]*id:0|1", &a1).unwrap();
        assert_eq!(w.element, AffWeylElement::from_word(&a1, &[1, 0]));
        assert_eq!(parse_factor("w0:0|1", &a1).unwrap().element.length(&a1), 1);
        assert_eq!(pos_of(parse_factor("t[1]:0|1", &a1).unwrap_err()), 2);
        assert_eq!(pos_of(parse_factor("s[1,5]:0|1", &a1).unwrap_err()), 4);
        assert_eq!(pos_of(parse_factor("q:0|1", &a1).unwrap_err()), 0);
        assert_eq!(pos_of(parse_factor("id:0", &a1).unwrap_err()), 3);
        assert_eq!(pos_of(parse_factor("id", &a1).unwrap_err()), 2);
    }
}
