use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Family letter of a finite simple root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// Cartan type such as `A2` or `G2`. Construction checks admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CartanType {
    family: Family,
    rank: usize,
}

/// Largest supported rank.
pub const MAX_RANK: usize = 8;

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok || rank > MAX_RANK {
            return Err(Error::InadmissibleType {
                family: family.letter(),
                rank,
            });
        }
        Ok(CartanType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bourbaki-style Dynkin edges (0-based node indices).
    pub(crate) fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        let path = |k: usize| {
            (0..k.saturating_sub(1))
                .map(|i| (i, i + 1))
                .collect::<Vec<_>>()
        };
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => path(n),
            Family::D => {
                let mut e = path(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// d_i = 2/(α_i|α_i) for each simple root.
    pub(crate) fn simple_d(&self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![1; n],
            Family::B => (0..n).map(|i| if i == n - 1 { 2 } else { 1 }).collect(),
            Family::C => (0..n).map(|i| if i == n - 1 { 1 } else { 2 }).collect(),
            Family::F => vec![1, 1, 2, 2],
            // α₂ short, so that ω₂ is the 7-dimensional representation.
            Family::G => vec![1, 3],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        let mut chars = t.char_indices();
        let (_, c) = chars
            .next()
            .ok_or_else(|| Error::parse(lead, "empty Cartan type"))?;
        let family = Family::from_letter(c)
            .ok_or_else(|| Error::parse(lead, format!("unknown family letter {c:?}")))?;
        let digits = &t[c.len_utf8()..];
        if digits.is_empty() {
            return Err(Error::parse(lead + c.len_utf8(), "missing rank"));
        }
        if let Some((i, bad)) = digits.char_indices().find(|(_, ch)| !ch.is_ascii_digit()) {
            return Err(Error::parse(
                lead + c.len_utf8() + i,
                format!("unexpected character {bad:?} in rank"),
            ));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::parse(lead + c.len_utf8(), "rank out of range"))?;
        CartanType::new(family, rank)
    }
}

impl TryFrom<String> for CartanType {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CartanType> for String {
    fn from(t: CartanType) -> String {
        t.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_case_insensitively() {
        let t: CartanType = "g2".parse().unwrap();
        assert_eq!(t.to_string(), "G2");
        let t: CartanType = " B3 ".parse().unwrap();
        assert_eq!((t.family(), t.rank()), (Family::B, 3));
    }

    #[test]
    fn rejects_inadmissible_ranks() {
        for s in ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "A9"] {
            assert!(
                matches!(s.parse::<CartanType>(), Err(Error::InadmissibleType { .. })),
                "{s}"
            );
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            "X2".parse::<CartanType>(),
            Err(Error::parse(0, "unknown family letter 'X'"))
        );
        match "A2x".parse::<CartanType>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match "A".parse::<CartanType>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("{other:?}"),
        }
    }
}
