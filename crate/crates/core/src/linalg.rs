//! Exact linear algebra over the rationals.
//!
//! Nothing here uses floating point. Row reduction works directly in `Q`;
//! determinants clear denominators column by column and then run
//! fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Matrix = Vec<Vec<Rational>>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `3`, `-3`, `3/4` or `-3/4`. The denominator must be a positive
/// integer; the result is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Reduced row echelon form. Returns the nonzero rows (leading entries 1)
/// and the pivot column of each.
pub fn rref(rows: &[Vec<Rational>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Coordinates of `v` in the (independent) rows of `basis`, if `v` lies in
/// their span.
pub fn coordinates(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let r = basis.len();
    let dim = v.len();
    // Augmented system: columns are basis vectors, right-hand side v.
    let system: Matrix = (0..dim)
        .map(|k| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[k].clone()).collect();
            row.push(v[k].clone());
            row
        })
        .collect();
    let (red, pivots) = rref(&system);
    if pivots.len() != r || pivots.iter().any(|&p| p >= r) {
        // Either the basis is dependent or the right-hand side is a pivot.
        return None;
    }
    Some(red.iter().map(|row| row[r].clone()).collect())
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Scales `v` so that its first nonzero entry is 1.
pub fn normalize_first_nonzero(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            v.iter().map(|x| x * &inv).collect()
        }
        None => v.to_vec(),
    }
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Determinant of a square rational matrix. Each column is first scaled to
/// integers by the lcm of its denominators; the integer determinant is
/// computed by Bareiss elimination and then divided back.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for col in 0..n {
        let l = m
            .iter()
            .fold(BigInt::one(), |acc, row| acc.lcm(row[col].denom()));
        for (i, row) in m.iter().enumerate() {
            a[i][col] = row[col].numer() * (&l / row[col].denom());
        }
        scale *= l;
    }
    Rational::new(bareiss(a), scale)
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Exact by Sylvester's identity.
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_accepted_forms() {
        assert_eq!(parse_rational("3").unwrap(), q(3));
        assert_eq!(parse_rational("-3").unwrap(), q(-3));
        assert_eq!(parse_rational("3/4").unwrap(), qq(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), qq(-3, 4));
        for bad in ["", "-", "3/", "3/0", "3/-4", "a", "1.5", "+3", " 3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn rref_of_two_points() {
        let rows = vec![vec![q(1), q(0), q(0)], vec![q(1), q(1), q(1)]];
        let (r, piv) = rref(&rows);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(1)]]);
    }

    #[test]
    fn det_matches_cofactor_on_small_cases() {
        let m = vec![
            vec![qq(1, 2), q(3), q(-1)],
            vec![q(2), qq(-5, 3), q(0)],
            vec![q(4), q(1), qq(7, 4)],
        ];
        // Cofactor expansion along the first row, by hand.
        let expect = qq(1, 2) * (qq(-5, 3) * qq(7, 4) - q(0)) - q(3) * (q(2) * qq(7, 4) - q(0))
            + q(-1) * (q(2) * q(1) - qq(-5, 3) * q(4));
        assert_eq!(det(&m), expect);
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(det(&singular).is_zero());
        let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(det(&swap), q(-1));
    }

    #[test]
    fn coordinates_in_basis() {
        let basis = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        assert_eq!(coordinates(&basis, &[q(1), q(2)]), Some(vec![q(-1), q(2)]));
        let line = vec![vec![q(1), q(0), q(0)]];
        assert_eq!(coordinates(&line, &[q(0), q(1), q(0)]), None);
    }
}
