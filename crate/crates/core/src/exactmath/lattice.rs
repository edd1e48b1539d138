use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Non-negative gcd of all entries (0 for the zero vector).
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides `v` by the gcd of its entries. The sign of every entry is kept.
pub fn make_primitive(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::input("cannot make the zero vector primitive"));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::input(format!(
            "determinant needs a square matrix, got {n} rows of lengths {:?}",
            rows.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// True iff the `d` given vectors of length `d` form a Z-basis (|det| = 1).
pub fn is_unimodular(vectors: &[Vec<BigInt>]) -> Result<bool> {
    let d = vectors.len();
    if d == 0 || vectors.iter().any(|v| v.len() != d) {
        return Err(Error::input(format!(
            "is_unimodular needs d vectors of length d, got {d} vectors"
        )));
    }
    Ok(determinant(vectors)?.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(make_primitive(&bi(&[2, 4])).unwrap(), bi(&[1, 2]));
        assert_eq!(make_primitive(&bi(&[1, 1])).unwrap(), bi(&[1, 1]));
        assert_eq!(make_primitive(&bi(&[-3, 6, -9])).unwrap(), bi(&[-1, 2, -3]));
        assert!(make_primitive(&bi(&[0, 0])).is_err());
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&[bi(&[1, 0]), bi(&[0, 1])]).unwrap());
        assert!(is_unimodular(&[bi(&[1, 1]), bi(&[1, 0])]).unwrap());
        assert!(!is_unimodular(&[bi(&[2, 0]), bi(&[0, 1])]).unwrap());
        assert!(is_unimodular(&[bi(&[1, 0])]).is_err());
        assert!(is_unimodular(&[]).is_err());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = vec![bi(&[2, -1, 0]), bi(&[1, 3, 2]), bi(&[0, 1, 4])];
        // 2*(12-2) - (-1)*(4-0) + 0 = 24
        assert_eq!(determinant(&m).unwrap(), BigInt::from(24));
        let singular = vec![bi(&[1, 2]), bi(&[2, 4])];
        assert_eq!(determinant(&singular).unwrap(), BigInt::zero());
        let needs_swap = vec![bi(&[0, 1]), bi(&[1, 0])];
        assert_eq!(determinant(&needs_swap).unwrap(), BigInt::from(-1));
    }

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * cofactor_det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn primitive_is_idempotent(v in proptest::collection::vec(-50i64..50, 1..5)) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let p = make_primitive(&bi(&v)).unwrap();
            prop_assert_eq!(make_primitive(&p).unwrap(), p.clone());
            prop_assert!(gcd_all(&p).is_one());
            for (a, b) in v.iter().zip(&p) {
                prop_assert_eq!(a.signum(), i64::try_from(b.signum()).unwrap());
            }
        }

        #[test]
        fn bareiss_agrees_with_cofactors(entries in proptest::collection::vec(-6i64..6, 16)) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| bi(r)).collect();
            prop_assert_eq!(determinant(&big).unwrap(), BigInt::from(cofactor_det(&m)));
        }

        #[test]
        fn unimodularity_ignores_row_order(entries in proptest::collection::vec(-3i64..3, 9)) {
            let mut rows: Vec<Vec<BigInt>> = entries.chunks(3).map(bi).collect();
            let before = is_unimodular(&rows).unwrap();
            rows.swap(0, 2);
            prop_assert_eq!(is_unimodular(&rows).unwrap(), before);
        }
    }
}
