//! Brute-force reference implementations. They share no code with the main
//! pipelines beyond the data types and serve as cross-checks for them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::invariant::InvariantValue;
use crate::linalg::Rational;
use crate::wps::{Weight, WeightedPoint};

/// Limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBound {
    /// Largest numerator or denominator of a candidate `lambda`.
    pub lambda_height: u64,
    /// Largest combined modulus for exhaustive congruence search.
    pub max_modulus: u64,
    /// Order of the finite field used for class enumeration.
    pub field_order: u64,
}

impl SearchBound {
    pub fn new(lambda_height: u64, max_modulus: u64, field_order: u64) -> Result<Self> {
        if lambda_height == 0 || max_modulus == 0 || field_order == 0 {
            return Err(Error::InvalidInput("search bounds must be >= 1".into()));
        }
        Ok(Self {
            lambda_height,
            max_modulus,
            field_order,
        })
    }
}

impl Default for SearchBound {
    fn default() -> Self {
        Self {
            lambda_height: 64,
            max_modulus: 100_000,
            field_order: 7,
        }
    }
}

/// Whether some `lambda = ±a/b` with `1 <= a, b <= bound` satisfies
/// `w_k = lambda^{p_k} z_k` for every `k`.
pub fn bounded_lambda_search(z: &WeightedPoint, w: &WeightedPoint, bound: u64) -> Result<bool> {
    if z.weight().parts() != w.weight().parts() {
        return Err(Error::WeightMismatch {
            left: z.weight().to_string(),
            right: w.weight().to_string(),
        });
    }
    let parts = z.weight().parts();
    let holds = |lambda: &Rational| {
        z.coords()
            .iter()
            .zip(w.coords())
            .zip(parts)
            .all(|((zk, wk), &p)| num_traits::pow(lambda.clone(), p as usize) * zk == *wk)
    };
    // Any witness must match the first coordinate where z is nonzero, which
    // pins a and b separately; enumerate those before testing all coordinates.
    let Some(k0) = z.coords().iter().position(|c| !c.is_zero()) else {
        return Ok(false);
    };
    let target = w.coord(k0) / z.coord(k0);
    if target.is_zero() {
        return Ok(false);
    }
    let p0 = parts[k0] as usize;
    let matching = |goal: &BigInt| -> Vec<u64> {
        (1..=bound)
            .take_while(|&a| num_traits::pow(BigInt::from(a), p0) <= *goal)
            .filter(|&a| num_traits::pow(BigInt::from(a), p0) == *goal)
            .collect()
    };
    let num_abs = target.numer().abs();
    for a in matching(&num_abs) {
        for b in matching(target.denom()) {
            if a.gcd(&b) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let lambda = Rational::new(BigInt::from(sign) * BigInt::from(a), BigInt::from(b));
                if holds(&lambda) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Exhaustive search for the least `x` in `[0, lcm)` satisfying every
/// congruence, or `None` when there is none below `limit`.
pub fn exhaustive_crt(pairs: &[(i64, u64)], limit: u64) -> Option<u64> {
    let lcm = pairs.iter().fold(1u64, |acc, &(_, m)| acc.lcm(&m));
    (0..lcm.min(limit)).find(|&x| {
        pairs
            .iter()
            .all(|&(k, m)| (x as i128 - k as i128).rem_euclid(m as i128) == 0)
    })
}

/// The `~_p` classes of `(F_q)^{n+1} \ {0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFieldPartition {
    pub q: u64,
    pub classes: Vec<Vec<Vec<u64>>>,
}

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

fn pow_mod(base: u64, exp: u32, q: u64) -> u64 {
    (0..exp).fold(1, |acc, _| acc * base % q)
}

/// Enumerates every orbit of `lambda . z = (lambda^{p_k} z_k)` over `F_q^*`
/// and checks the bookkeeping: the orbits cover every nonzero vector once,
/// each has size dividing `q - 1`, and each is closed under the action.
pub fn ff_enumerate_classes(p: &Weight, q: u64) -> Result<FiniteFieldPartition> {
    if !is_prime(q) || q > 31 {
        return Err(Error::InvalidInput(format!("{q} is not a prime <= 31")));
    }
    let n1 = p.len();
    let total = q
        .checked_pow(n1 as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or_else(|| Error::InvalidInput(format!("{q}^{n1} vectors is too many to enumerate")))?;
    let decode = |mut idx: u64| -> Vec<u64> {
        let mut v = vec![0; n1];
        for slot in v.iter_mut().rev() {
            *slot = idx % q;
            idx /= q;
        }
        v
    };
    let act = |lambda: u64, v: &[u64]| -> Vec<u64> {
        v.iter()
            .zip(p.parts())
            .map(|(&x, &e)| pow_mod(lambda, e, q) * x % q)
            .collect()
    };
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut classes = Vec::new();
    for idx in 1..total {
        let v = decode(idx);
        if seen.contains(&v) {
            continue;
        }
        let orbit: BTreeSet<Vec<u64>> = (1..q).map(|l| act(l, &v)).collect();
        if !(q - 1).is_multiple_of(orbit.len() as u64) {
            return Err(Error::OracleInconsistent(format!(
                "orbit of {v:?} has size {} not dividing {}",
                orbit.len(),
                q - 1
            )));
        }
        for u in &orbit {
            let again: BTreeSet<Vec<u64>> = (1..q).map(|l| act(l, u)).collect();
            if again != orbit || !seen.insert(u.clone()) {
                return Err(Error::OracleInconsistent(format!(
                    "orbit of {u:?} is not a class"
                )));
            }
        }
        classes.push(orbit.into_iter().collect());
    }
    if seen.len() as u64 != total - 1 {
        return Err(Error::OracleInconsistent(
            "classes do not cover the space".into(),
        ));
    }
    Ok(FiniteFieldPartition { q, classes })
}

fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&col| !m[0][col].is_zero())
            .map(|col| {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * cofactor_det(&minor);
                if col % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .fold(Rational::zero(), |acc, t| acc + t),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn columns(rows: &[Vec<Rational>], cols: &[usize]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
        .collect()
}

/// Whether every `(r+1)`-minor of `basis` with `v` appended vanishes.
fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    subsets(v.len(), rows.len())
        .iter()
        .all(|cols| cofactor_det(&columns(&rows, cols)).is_zero())
}

/// Cramer's rule on the first column set where `basis` has a nonzero minor.
fn cramer_coordinates(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let r = basis.len();
    subsets(v.len(), r).into_iter().find_map(|cols| {
        let b = columns(basis, &cols);
        let d = cofactor_det(&b);
        if d.is_zero() {
            return None;
        }
        let target: Vec<Rational> = cols.iter().map(|&c| v[c].clone()).collect();
        Some(
            (0..r)
                .map(|e| {
                    let mut replaced = b.clone();
                    replaced[e] = target.clone();
                    cofactor_det(&replaced) / &d
                })
                .collect(),
        )
    })
}

/// Recomputes `E_p(S)` with cofactor determinants, representatives scaled
/// so their last nonzero entry is 1, and the first-seen tuple of each span
/// as that span's basis.
pub fn brute_invariant(cfg: &Configuration) -> Result<InvariantValue> {
    let report = cfg.validate_h();
    if let Some(why) = report.first_failure {
        return Err(Error::NotHConfiguration(why));
    }
    let reps: BTreeMap<&str, Vec<Rational>> = cfg
        .points()
        .iter()
        .map(|(name, p)| {
            let last = p
                .coords
                .iter()
                .rev()
                .find(|x| !x.is_zero())
                .cloned()
                .unwrap_or_else(Rational::one);
            (name.as_str(), p.coords.iter().map(|x| x / &last).collect())
        })
        .collect();
    let mut bases: Vec<Vec<Vec<Rational>>> = Vec::new();
    let mut coords = Vec::with_capacity(cfg.num_colors());
    for list in cfg.colors() {
        let mut product = Rational::one();
        for t in list {
            let vs: Vec<Vec<Rational>> = t
                .members()
                .iter()
                .map(|m| reps[m.as_str()].clone())
                .collect();
            let basis = match bases.iter().find(|b| vs.iter().all(|v| in_span(b, v))) {
                Some(b) => b.clone(),
                None => {
                    bases.push(vs.clone());
                    vs.clone()
                }
            };
            let cols: Vec<Vec<Rational>> = vs
                .iter()
                .map(|v| {
                    cramer_coordinates(&basis, v)
                        .ok_or_else(|| Error::OracleInconsistent(format!("{t}: degenerate basis")))
                })
                .collect::<Result<_>>()?;
            let m: Vec<Vec<Rational>> = (0..basis.len())
                .map(|row| cols.iter().map(|c| c[row].clone()).collect())
                .collect();
            product *= cofactor_det(&m);
        }
        coords.push(product);
    }
    Ok(InvariantValue::from_point(WeightedPoint::new(
        coords,
        cfg.weight().clone(),
    )?))
}
