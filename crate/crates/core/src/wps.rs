//! Weighted projective space points, the weighted equivalence relation,
//! axis projections onto the projective line, and the reconstructibility
//! test.
//!
//! Coordinates are exact rationals standing in for the reals. Points are
//! never canonicalized: the only way to compare two classes is
//! [`wps_equivalent`].

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::numtheory::{bezout, rational_nth_roots};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    RealLike,
    ComplexLike,
}

/// A weight `(p_0, ..., p_n)` with `n >= 1` and every part positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    parts: Vec<u32>,
    field: FieldTag,
}

impl Weight {
    pub fn new(parts: Vec<u32>, field: FieldTag) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "weight needs at least 2 parts, got {}",
                parts.len()
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput("weight parts must be >= 1".into()));
        }
        Ok(Self { parts, field })
    }

    pub fn real(parts: &[u32]) -> Result<Self> {
        Self::new(parts.to_vec(), FieldTag::RealLike)
    }

    pub fn complex(parts: &[u32]) -> Result<Self> {
        Self::new(parts.to_vec(), FieldTag::ComplexLike)
    }

    /// The classical projective line weight `(1,1)`.
    pub fn unit_pair() -> Self {
        Self {
            parts: vec![1, 1],
            field: FieldTag::RealLike,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part(&self, k: usize) -> u32 {
        self.parts[k]
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn with_field(&self, field: FieldTag) -> Self {
        Self {
            parts: self.parts.clone(),
            field,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A stored representative `(z_0, ..., z_n)` of a point of `FP(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedPoint {
    coords: Vec<Rational>,
    weight: Weight,
}

impl WeightedPoint {
    pub fn new(coords: Vec<Rational>, weight: Weight) -> Result<Self> {
        if coords.len() != weight.len() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates but weight {} has {} parts",
                coords.len(),
                weight,
                weight.len()
            )));
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("weighted point is all zero".into()));
        }
        Ok(Self { coords, weight })
    }

    pub fn from_ints(coords: &[i64], weight: &Weight) -> Result<Self> {
        Self::new(
            coords.iter().map(|&c| crate::linalg::q(c)).collect(),
            weight.clone(),
        )
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &Rational {
        &self.coords[k]
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// Whether the point lies in `D_p` (no zero coordinate).
    pub fn in_torus(&self) -> bool {
        self.coords.iter().all(|c| !c.is_zero())
    }

    /// The representative `(lambda^{p_k} z_k)`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&self.weight.parts)
            .map(|(z, &p)| z * num_traits::pow(lambda.clone(), p as usize))
            .collect();
        Self {
            coords,
            weight: self.weight.clone(),
        }
    }
}

impl fmt::Display for WeightedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]_{}", self.weight)
    }
}

fn same_parts(z: &WeightedPoint, w: &WeightedPoint) -> Result<()> {
    if z.weight.parts != w.weight.parts {
        return Err(Error::WeightMismatch {
            left: z.weight.to_string(),
            right: w.weight.to_string(),
        });
    }
    Ok(())
}

/// Zero patterns, nonzero ratios `w_k / z_k`, and the Bezout data for the
/// nonzero positions. `None` when the zero patterns differ.
struct Ratios {
    ratios: Vec<(usize, Rational)>,
    gcd: u32,
    /// `prod (w_k/z_k)^{c_k}` with `sum c_k p_k = gcd`; any `lambda` must
    /// satisfy `lambda^gcd = mu`.
    mu: Rational,
}

fn ratios(z: &WeightedPoint, w: &WeightedPoint) -> Result<Option<Ratios>> {
    let mut ratios = Vec::new();
    for (k, (a, b)) in z.coords.iter().zip(&w.coords).enumerate() {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (false, false) => ratios.push((k, b / a)),
            _ => return Ok(None),
        }
    }
    let parts: Vec<i64> = ratios
        .iter()
        .map(|(k, _)| z.weight.parts[*k] as i64)
        .collect();
    let (g, coeffs) = bezout(&parts)?;
    let mut mu = Rational::one();
    for ((_, r), c) in ratios.iter().zip(coeffs) {
        let factor = num_traits::pow(r.clone(), c.unsigned_abs() as usize);
        if c >= 0 {
            mu *= factor;
        } else {
            mu /= factor;
        }
    }
    Ok(Some(Ratios {
        ratios,
        gcd: g as u32,
        mu,
    }))
}

/// Decides `z ~_p w`: is there a rational `lambda != 0` with
/// `w_k = lambda^{p_k} z_k` for every `k`?
///
/// Any such `lambda` satisfies `lambda^g = mu` where `g` is the gcd of the
/// weights at the nonzero positions and `mu` is the matching Bezout product
/// of ratios, so the rational `g`-th roots of `mu` are the only candidates.
pub fn wps_equivalent(z: &WeightedPoint, w: &WeightedPoint) -> Result<bool> {
    same_parts(z, w)?;
    if z.weight.field == FieldTag::ComplexLike || w.weight.field == FieldTag::ComplexLike {
        return Err(Error::InvalidInput(
            "equivalence is decided for real-like weights only".into(),
        ));
    }
    let Some(data) = ratios(z, w)? else {
        return Ok(false);
    };
    for lambda in rational_nth_roots(&data.mu, data.gcd)? {
        let ok = data
            .ratios
            .iter()
            .all(|(k, r)| num_traits::pow(lambda.clone(), z.weight.parts[*k] as usize) == *r);
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Real-field equivalence of two rational representatives: whether some
/// real (possibly irrational) `lambda` relates them. This is coarser than
/// [`wps_equivalent`]; for example `(1,1)` and `(2,2)` are related in
/// weight `(2,2)` by `lambda = sqrt 2` but by no rational `lambda`.
pub fn real_equivalent(z: &WeightedPoint, w: &WeightedPoint) -> Result<bool> {
    same_parts(z, w)?;
    let Some(data) = ratios(z, w)? else {
        return Ok(false);
    };
    if data.gcd % 2 == 0 && !data.mu.is_positive() {
        return Ok(false);
    }
    // lambda^{p_k} = (lambda^g)^{p_k/g} = mu^{p_k/g}.
    Ok(data.ratios.iter().all(|(k, r)| {
        let e = z.weight.parts[*k] / data.gcd;
        num_traits::pow(data.mu.clone(), e as usize) == *r
    }))
}

/// Divides out the largest common factor of the weight that leaves the
/// equivalence relation unchanged over the tagged field.
///
/// Over the complex numbers that is the full gcd. Over the reals an odd
/// factor can always be removed, and a power of two only while every
/// quotient part stays even.
pub fn reduce_weight(p: &Weight) -> Weight {
    let g = p.parts.iter().fold(0u32, |acc, &x| acc.gcd(&x));
    let m = match p.field {
        FieldTag::ComplexLike => g,
        FieldTag::RealLike => {
            let twos = g.trailing_zeros();
            let odd = g >> twos;
            if twos == 0 {
                odd
            } else {
                odd << (twos - 1)
            }
        }
    };
    Weight {
        parts: p.parts.iter().map(|&x| x / m).collect(),
        field: p.field,
    }
}

/// The map `FP(p) -> FP^1`, `z -> [z_i^a : z_j^b]`, with `p_i a = p_j b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisProjectionSpec {
    pub i: usize,
    pub j: usize,
    pub a: u32,
    pub b: u32,
}

impl AxisProjectionSpec {
    pub fn new(p: &Weight, i: usize, j: usize, a: u32, b: u32) -> Result<Self> {
        check_pair(p, i, j)?;
        if a == 0 || b == 0 {
            return Err(Error::InvalidInput("exponents must be positive".into()));
        }
        if p.part(i) as u64 * a as u64 != p.part(j) as u64 * b as u64 {
            return Err(Error::InvalidInput(format!(
                "p_{i}*a = {}*{a} differs from p_{j}*b = {}*{b}",
                p.part(i),
                p.part(j)
            )));
        }
        Ok(Self { i, j, a, b })
    }
}

fn check_pair(p: &Weight, i: usize, j: usize) -> Result<()> {
    if i >= j || j >= p.len() {
        return Err(Error::InvalidInput(format!(
            "index pair ({i},{j}) not in 0 <= i < j <= {}",
            p.len() - 1
        )));
    }
    Ok(())
}

/// `h_ij` with exponents `lcm(p_i,p_j)/p_i` and `lcm(p_i,p_j)/p_j`.
pub fn canonical_axis_projection(p: &Weight, i: usize, j: usize) -> Result<AxisProjectionSpec> {
    check_pair(p, i, j)?;
    let l = p.part(i).lcm(&p.part(j));
    Ok(AxisProjectionSpec {
        i,
        j,
        a: l / p.part(i),
        b: l / p.part(j),
    })
}

pub fn apply_axis_projection(
    spec: &AxisProjectionSpec,
    z: &WeightedPoint,
) -> Result<WeightedPoint> {
    if spec.j >= z.coords.len() {
        return Err(Error::InvalidInput("projection index out of range".into()));
    }
    let (zi, zj) = (&z.coords[spec.i], &z.coords[spec.j]);
    if zi.is_zero() && zj.is_zero() {
        return Err(Error::UndefinedPoint {
            i: spec.i,
            j: spec.j,
        });
    }
    WeightedPoint::new(
        vec![
            num_traits::pow(zi.clone(), spec.a as usize),
            num_traits::pow(zj.clone(), spec.b as usize),
        ],
        Weight::unit_pair(),
    )
}

/// The `k` with `c_ij = G_k o h_ij`, i.e. `p_i a = p_j b = k lcm(p_i, p_j)`.
pub fn factor_through_h(spec: &AxisProjectionSpec, p: &Weight) -> Result<u32> {
    let checked = AxisProjectionSpec::new(p, spec.i, spec.j, spec.a, spec.b)?;
    let l = p.part(checked.i).lcm(&p.part(checked.j));
    Ok(p.part(checked.i) * checked.a / l)
}

/// All index pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn index_pairs(n_plus_one: usize) -> Vec<(usize, usize)> {
    (0..n_plus_one)
        .flat_map(|i| (i + 1..n_plus_one).map(move |j| (i, j)))
        .collect()
}

/// `(h_01(z), h_02(z), ..., h_{n-1,n}(z))`.
pub fn product_map(z: &WeightedPoint) -> Result<Vec<WeightedPoint>> {
    index_pairs(z.weight.len())
        .into_iter()
        .map(|(i, j)| apply_axis_projection(&canonical_axis_projection(&z.weight, i, j)?, z))
        .collect()
}

/// Whether the product of canonical axis projections is one-to-one on
/// `D_p`: always over the complex numbers, and over the reals exactly when
/// some part is odd.
pub fn is_reconstructible(p: &Weight) -> bool {
    match p.field {
        FieldTag::ComplexLike => true,
        FieldTag::RealLike => p.parts.iter().any(|x| x % 2 == 1),
    }
}

/// For an all-even real weight, two inequivalent points of `D_p` with the
/// same product-map image: `(1,...,1)` and the point with `-1` wherever the
/// 2-adic valuation of `p_k` is minimal.
pub fn nonreconstructible_witness(p: &Weight) -> Result<(WeightedPoint, WeightedPoint)> {
    if p.parts.iter().any(|x| x % 2 == 1) {
        return Err(Error::InvalidInput(format!(
            "weight {p} has an odd part; the space is reconstructible"
        )));
    }
    let min_val = p
        .parts
        .iter()
        .map(|x| x.trailing_zeros())
        .min()
        .unwrap_or(0);
    let ones = vec![1i64; p.len()];
    let flipped: Vec<i64> = p
        .parts
        .iter()
        .map(|x| if x.trailing_zeros() == min_val { -1 } else { 1 })
        .collect();
    let weight = p.with_field(FieldTag::RealLike);
    Ok((
        WeightedPoint::from_ints(&ones, &weight)?,
        WeightedPoint::from_ints(&flipped, &weight)?,
    ))
}

/// Componentwise `(1,1)`-equivalence of two product-map images.
pub fn images_equivalent(a: &[WeightedPoint], b: &[WeightedPoint]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for (x, y) in a.iter().zip(b) {
        if !wps_equivalent(x, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}
