use num_traits::{One, Zero};

use crate::Rational;

pub(crate) type RatMatrix = Vec<Vec<Rational>>;

pub(crate) fn to_rational(m: &[Vec<i64>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect()
}

/// Gauss-Jordan inverse; `None` if singular.
pub(crate) fn invert(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.clone();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

pub(crate) fn mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_a2_cartan() {
        let c = to_rational(&[vec![2, -1], vec![-1, 2]]);
        let inv = invert(&c).unwrap();
        let third = Rational::new(1, 3);
        assert_eq!(inv, vec![vec![third * 2, third], vec![third, third * 2]]);
        assert_eq!(mul(&c, &inv), to_rational(&[vec![1, 0], vec![0, 1]]));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        assert!(invert(&to_rational(&[vec![1, 2], vec![2, 4]])).is_none());
    }
}
