use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::Rational;
use num_traits::{One, Signed, Zero};

/// A weight of the finite root system in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinWeight(pub Vec<Rational>);

impl FinWeight {
    pub fn zero(rank: usize) -> Self {
        FinWeight(vec![Rational::zero(); rank])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        FinWeight(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    /// The fundamental weight ω_{i+1} (0-based `i`).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = FinWeight::zero(rank);
        w.0[i] = Rational::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, s: Rational) -> Self {
        FinWeight(self.0.iter().map(|c| c * s).collect())
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(Rational::from_integer(s))
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &FinWeight, s: Rational) -> Self {
        FinWeight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b * s)
                .collect(),
        )
    }
}

impl Add for &FinWeight {
    type Output = FinWeight;
    fn add(self, rhs: &FinWeight) -> FinWeight {
        FinWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for FinWeight {
    type Output = FinWeight;
    fn add(self, rhs: FinWeight) -> FinWeight {
        &self + &rhs
    }
}

impl AddAssign<&FinWeight> for FinWeight {
    fn add_assign(&mut self, rhs: &FinWeight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub for &FinWeight {
    type Output = FinWeight;
    fn sub(self, rhs: &FinWeight) -> FinWeight {
        FinWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for FinWeight {
    type Output = FinWeight;
    fn sub(self, rhs: FinWeight) -> FinWeight {
        &self - &rhs
    }
}

impl Neg for &FinWeight {
    type Output = FinWeight;
    fn neg(self) -> FinWeight {
        FinWeight(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for FinWeight {
    type Output = FinWeight;
    fn neg(self) -> FinWeight {
        -&self
    }
}

/// Prints `(c1,c2,...)`.
impl fmt::Display for FinWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
