//! Integer and rational number theory behind weighted equivalence and
//! reconstructibility: Bezout coefficients, exact roots, root-power counts,
//! and a generalized Chinese Remainder solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Extended Euclid: `(g, x, y)` with `g = gcd(a, b) > 0` and `a*x + b*y = g`.
pub fn ext_gcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::InvalidInput("ext_gcd(0, 0)".into()));
    }
    if a != 0 && b % a == 0 {
        return Ok((a.abs(), a.signum(), 0));
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
        (old_t, t) = (t, old_t - quot * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    Ok((old_r as i64, old_s as i64, old_t as i64))
}

/// Bezout coefficients for a list: `sum(c_k * v_k) = gcd(v)`.
pub fn bezout(values: &[i64]) -> Result<(i64, Vec<i64>)> {
    let (&first, rest) = values
        .split_first()
        .ok_or_else(|| Error::InvalidInput("bezout of an empty list".into()))?;
    let mut g = first;
    let mut coeffs = vec![1i64];
    for &v in rest {
        let (ng, x, y) = ext_gcd(g, v)?;
        for c in coeffs.iter_mut() {
            *c *= x;
        }
        coeffs.push(y);
        g = ng;
    }
    if g < 0 {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -*c;
        }
    }
    Ok((g, coeffs))
}

/// Exact integer `n`-th root of `m`, if one exists. Even roots are
/// non-negative; even roots of negative numbers do not exist.
pub fn integer_nth_root(m: &BigInt, n: u32) -> Option<BigInt> {
    if n == 0 {
        return None;
    }
    if m.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return integer_nth_root(&-m, n).map(|r| -r);
    }
    if m.is_zero() || m.is_one() || n == 1 {
        return Some(m.clone());
    }
    // Binary search on [0, 2^(bits/n + 1)].
    let bits = m.bits();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one() << (bits / n as u64 + 1);
    while lo < hi {
        let mid: BigInt = (&lo + &hi + 1u32) >> 1;
        if num_traits::pow(mid.clone(), n as usize) <= *m {
            lo = mid;
        } else {
            hi = mid - 1u32;
        }
    }
    (num_traits::pow(lo.clone(), n as usize) == *m).then_some(lo)
}

/// All rational `r` with `r^n = q`: two roots `{r, -r}` for even `n` and
/// positive `q`, at most one for odd `n`.
pub fn rational_nth_roots(q: &Rational, n: u32) -> Result<Vec<Rational>> {
    if q.is_zero() {
        return Err(Error::InvalidInput("rational_nth_roots of zero".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("zeroth root".into()));
    }
    let (Some(num), Some(den)) = (
        integer_nth_root(q.numer(), n),
        integer_nth_root(q.denom(), n),
    ) else {
        return Ok(Vec::new());
    };
    let r = Rational::new(num, den);
    Ok(if n.is_multiple_of(2) {
        vec![r.clone(), -r]
    } else {
        vec![r]
    })
}

/// Number of distinct `P`-th powers among the `N` complex `N`-th roots of a
/// nonzero number: `lcm(P, N) / P`.
pub fn root_power_count(p: u64, n: u64) -> u64 {
    p.lcm(&n) / p
}

/// One congruence `x = residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Congruence {
    pub residue: i64,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    entries: Vec<Congruence>,
}

impl CongruenceSystem {
    pub fn new(entries: Vec<Congruence>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("empty congruence system".into()));
        }
        if entries.iter().any(|c| c.modulus == 0) {
            return Err(Error::InvalidInput("modulus must be >= 1".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_pairs(pairs: &[(i64, u64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(residue, modulus)| Congruence { residue, modulus })
                .collect(),
        )
    }

    pub fn entries(&self) -> &[Congruence] {
        &self.entries
    }

    /// Pairwise compatibility: `k_i = k_j (mod gcd(b_i, b_j))` for all pairs.
    pub fn is_compatible(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, a)| {
            self.entries[i + 1..].iter().all(|b| {
                let g = a.modulus.gcd(&b.modulus) as i128;
                (a.residue as i128 - b.residue as i128).rem_euclid(g) == 0
            })
        })
    }
}

/// Least non-negative solution together with the combined modulus
/// `lcm(b_j)`, or `None` when the system is incompatible.
pub fn crt_solve(sys: &CongruenceSystem) -> Option<(u64, u64)> {
    let mut x: i128 = 0;
    let mut m: i128 = 1;
    for c in sys.entries() {
        let b = c.modulus as i128;
        let k = (c.residue as i128).rem_euclid(b);
        // Solve x + m*t = k (mod b).
        let (g, inv, _) = ext_gcd((m % b) as i64, b as i64).expect("modulus is positive");
        let g = g as i128;
        let diff = k - x;
        if diff.rem_euclid(g) != 0 {
            return None;
        }
        let step = b / g;
        let t = ((diff / g) % step * (inv as i128 % step)).rem_euclid(step);
        x += m * t;
        m *= step;
        x = x.rem_euclid(m);
    }
    Some((x as u64, m as u64))
}
