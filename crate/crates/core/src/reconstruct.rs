//! Two-color restrictions, their unit-weight expansions, and the
//! comparison of a weighted invariant against its classical shadows.

use std::fmt;

use num_integer::Integer;

use crate::configuration::{build_configuration, Configuration};
use crate::error::{Error, Result};
use crate::invariant::eves_invariant;
use crate::wps::{
    apply_axis_projection, canonical_axis_projection, index_pairs, wps_equivalent, Weight,
    WeightedPoint,
};

/// The configuration `(S_i, S_j)` with weight `(p_i, p_j)`. A one-color
/// configuration is returned unchanged for `i = j = 0`.
pub fn restrict_pair(cfg: &Configuration, i: usize, j: usize) -> Result<Configuration> {
    let n = cfg.num_colors();
    if n == 1 && i == 0 && j == 0 {
        return Ok(cfg.clone());
    }
    if i >= j || j >= n {
        return Err(Error::InvalidInput(format!(
            "color pair ({i},{j}) is not i < j < {n}"
        )));
    }
    let weight = Weight::new(
        vec![cfg.weight().part(i), cfg.weight().part(j)],
        cfg.weight().field(),
    )?;
    let names = cfg.color_names();
    rebuild(cfg, weight, vec![names[i].clone(), names[j].clone()])
}

/// `S^(i,j)`: color 0 repeated `lcm/p_0` times and color 1 repeated
/// `lcm/p_1` times, reweighted to `(1,1)`.
pub fn unit_weight_expansion(pair: &Configuration) -> Result<Configuration> {
    if pair.num_colors() != 2 {
        return Err(Error::InvalidInput(format!(
            "expansion needs two colors, found {}",
            pair.num_colors()
        )));
    }
    let (pi, pj) = (pair.weight().part(0), pair.weight().part(1));
    let l = pi.lcm(&pj);
    let names = pair.color_names();
    let repeat = |list: &Vec<Vec<String>>, times: u32| -> Vec<Vec<String>> {
        (0..times).flat_map(|_| list.iter().cloned()).collect()
    };
    let colors = vec![repeat(&names[0], l / pi), repeat(&names[1], l / pj)];
    rebuild(
        pair,
        Weight::unit_pair().with_field(pair.weight().field()),
        colors,
    )
}

fn rebuild(
    cfg: &Configuration,
    weight: Weight,
    colors: Vec<Vec<Vec<String>>>,
) -> Result<Configuration> {
    build_configuration(
        weight,
        cfg.arity(),
        cfg.dim(),
        colors,
        cfg.points().values().cloned().collect(),
    )
}

/// `E_(1,1)(S^(i,j))` for every pair `i < j`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionVector {
    pub entries: Vec<((usize, usize), WeightedPoint)>,
}

impl ReconstructionVector {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Componentwise `(1,1)`-equivalence.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        for ((_, a), (_, b)) in self.entries.iter().zip(&other.entries) {
            if !wps_equivalent(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ReconstructionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, j), v) in &self.entries {
            writeln!(f, "h_{i}{j}: {v}")?;
        }
        Ok(())
    }
}

pub fn reconstruction_vector(cfg: &Configuration) -> Result<ReconstructionVector> {
    let mut entries = Vec::new();
    for (i, j) in index_pairs(cfg.num_colors()) {
        let expanded = unit_weight_expansion(&restrict_pair(cfg, i, j)?)?;
        entries.push(((i, j), eves_invariant(&expanded)?.into_point()));
    }
    Ok(ReconstructionVector { entries })
}

/// Whether `E_(1,1)(S^(i,j))` is equivalent to `h_ij(E_p(S))` for all pairs.
pub fn check_corollary(cfg: &Configuration) -> Result<bool> {
    let ep = eves_invariant(cfg)?.into_point();
    let rv = reconstruction_vector(cfg)?;
    for ((i, j), entry) in &rv.entries {
        let h = canonical_axis_projection(cfg.weight(), *i, *j)?;
        if !wps_equivalent(entry, &apply_axis_projection(&h, &ep)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDetail {
    pub pair: (usize, usize),
    pub left: WeightedPoint,
    pub right: WeightedPoint,
    pub equivalent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub left: WeightedPoint,
    pub right: WeightedPoint,
    pub pairs: Vec<PairDetail>,
    pub ep_equivalent: bool,
    pub reconstruction_equal: bool,
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.pairs {
            let (i, j) = d.pair;
            let rel = if d.equivalent { "~" } else { "!~" };
            writeln!(f, "h_{i}{j}: {} {rel} {}", d.left, d.right)?;
        }
        let rel = if self.ep_equivalent { "~" } else { "!~" };
        writeln!(f, "E_p: {} {rel} {}", self.left, self.right)?;
        writeln!(f, "ep_equivalent: {}", self.ep_equivalent)?;
        writeln!(f, "reconstruction_equal: {}", self.reconstruction_equal)
    }
}

pub fn compare(a: &Configuration, b: &Configuration) -> Result<CompareReport> {
    if a.weight() != b.weight() {
        return Err(Error::WeightMismatch {
            left: a.weight().to_string(),
            right: b.weight().to_string(),
        });
    }
    if a.arity() != b.arity() {
        return Err(Error::InvalidInput(format!(
            "arity mismatch: {} vs {}",
            a.arity(),
            b.arity()
        )));
    }
    let left = eves_invariant(a)?.into_point();
    let right = eves_invariant(b)?.into_point();
    let ep_equivalent = wps_equivalent(&left, &right)?;
    let (ra, rb) = (reconstruction_vector(a)?, reconstruction_vector(b)?);
    let mut pairs = Vec::with_capacity(ra.len());
    for ((pair, l), (_, r)) in ra.entries.into_iter().zip(rb.entries) {
        let equivalent = wps_equivalent(&l, &r)?;
        pairs.push(PairDetail {
            pair,
            left: l,
            right: r,
            equivalent,
        });
    }
    let reconstruction_equal = pairs.iter().all(|d| d.equivalent);
    Ok(CompareReport {
        left,
        right,
        pairs,
        ep_equivalent,
        reconstruction_equal,
    })
}
