//! Exact determinants and inverses over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ensure;
use crate::Result;

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect()
}

pub fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut sign = BigRational::one();
    let mut acc = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            sign = -sign;
        }
        let pivot = m[col][col].clone();
        acc *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    sign * acc
}

pub fn det_int(m: &[Vec<i64>]) -> BigInt {
    det(to_rational(m)).to_integer()
}

/// Gauss-Jordan inverse, `None` when singular.
pub fn inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let pivot = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of an integer matrix with determinant `+-1`.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let d = det_int(m);
    ensure!(d.abs() == BigInt::one(), "matrix has determinant {d}, not +-1");
    let inv = inverse(&to_rational(m)).expect("nonzero determinant");
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| {
                    ensure!(v.is_integer(), "inverse entry {v} is not integral");
                    v.to_integer().to_i64().ok_or_else(|| crate::Error::Invariant("inverse entry overflows".into()))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|r| r[c]).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let bt = transpose(b);
    a.iter().map(|r| bt.iter().map(|c| r.iter().zip(c).map(|(x, y)| x * y).sum()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small() {
        let m = vec![vec![2, 1], vec![1, 1]];
        assert_eq!(det_int(&m), BigInt::from(1));
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![1, -1], vec![-1, 2]]);
        assert_eq!(mat_mul(&m, &inv), vec![vec![1, 0], vec![0, 1]]);
        assert!(unimodular_inverse(&[vec![2, 0], vec![0, 1]]).is_err());
        assert_eq!(det_int(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }
}
