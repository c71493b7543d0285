//! Peano brackets and the weighted Eves invariant `E_p`, together with
//! morphism application and the classical special cases (cross-ratio,
//! ratios of signed areas, signed lengths).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::configuration::{build_configuration, Configuration, ProjPoint, RTuple, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, det, mat_vec, normalize_first_nonzero, rank, Matrix, Rational};
use crate::wps::{Weight, WeightedPoint};

/// The value `E_p(S)`: a weighted point with every coordinate nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantValue(WeightedPoint);

impl InvariantValue {
    pub(crate) fn from_point(point: WeightedPoint) -> Self {
        Self(point)
    }

    pub fn point(&self) -> &WeightedPoint {
        &self.0
    }

    pub fn into_point(self) -> WeightedPoint {
        self.0
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One ordered basis per span and one representative vector per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChoice {
    pub bases: BTreeMap<Subspace, Matrix>,
    pub reps: BTreeMap<String, Vec<Rational>>,
}

impl BasisChoice {
    /// Representatives scaled so the first nonzero entry is 1; each span
    /// uses its echelon basis.
    pub fn canonical(cfg: &Configuration) -> Self {
        let bases = cfg
            .subspaces()
            .into_iter()
            .map(|l| (l.clone(), l.basis().to_vec()))
            .collect();
        let reps = cfg
            .used_points()
            .into_iter()
            .map(|n| {
                (
                    n.to_string(),
                    normalize_first_nonzero(&cfg.points()[n].coords),
                )
            })
            .collect();
        Self { bases, reps }
    }

    fn check(&self, cfg: &Configuration) -> Result<()> {
        for name in cfg.used_points() {
            let rep = self
                .reps
                .get(name)
                .ok_or_else(|| Error::InvalidChoice(format!("no representative for {name}")))?;
            let stored = &cfg.points()[name].coords;
            if rep.len() != stored.len()
                || rep.iter().all(Zero::is_zero)
                || rank(&[rep.clone(), stored.clone()]) != 1
            {
                return Err(Error::InvalidChoice(format!(
                    "representative of {name} is not a nonzero multiple of its coordinates"
                )));
            }
        }
        for l in cfg.subspaces() {
            let basis = self
                .bases
                .get(l)
                .ok_or_else(|| Error::InvalidChoice(format!("no basis for {l}")))?;
            let spans = basis.len() == l.dim()
                && rank(basis) == l.dim()
                && basis
                    .iter()
                    .all(|v| v.len() == cfg.dim() + 1 && l.contains(v));
            if !spans {
                return Err(Error::InvalidChoice(format!("basis does not span {l}")));
            }
        }
        Ok(())
    }
}

/// `det` of the basis coordinates of the representatives, stacked as
/// columns.
pub fn bracket(reps: &[Vec<Rational>], basis: &[Vec<Rational>]) -> Result<Rational> {
    if reps.len() != basis.len() {
        return Err(Error::InvalidInput(format!(
            "{} representatives for a basis of size {}",
            reps.len(),
            basis.len()
        )));
    }
    let r = basis.len();
    let cols = reps
        .iter()
        .map(|v| {
            coordinates(basis, v)
                .ok_or_else(|| Error::InvalidInput("basis does not span the tuple".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let m: Matrix = (0..r)
        .map(|row| cols.iter().map(|c| c[row].clone()).collect())
        .collect();
    let d = det(&m);
    if d.is_zero() {
        return Err(Error::InvalidInput("dependent representatives".into()));
    }
    Ok(d)
}

fn tuple_bracket(
    cfg: &Configuration,
    choices: &BasisChoice,
    t: &RTuple,
    span: &Subspace,
) -> Result<Rational> {
    let reps: Vec<Vec<Rational>> = t
        .members()
        .iter()
        .map(|m| choices.reps[m].clone())
        .collect();
    bracket(&reps, &choices.bases[span]).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::InvalidChoice(format!("{t} in {}: {msg}", cfg.dim())),
        other => other,
    })
}

fn require_h(cfg: &Configuration) -> Result<()> {
    let report = cfg.validate_h();
    match report.first_failure {
        None => Ok(()),
        Some(why) => Err(Error::NotHConfiguration(why)),
    }
}

/// `E_p(S)` with the canonical choices of [`BasisChoice::canonical`].
pub fn eves_invariant(cfg: &Configuration) -> Result<InvariantValue> {
    require_h(cfg)?;
    evaluate(cfg, &BasisChoice::canonical(cfg))
}

/// `E_p(S)` with caller-supplied bases and representatives. The class does
/// not depend on the choices; the representative does.
pub fn eves_invariant_with_choices(
    cfg: &Configuration,
    choices: &BasisChoice,
) -> Result<InvariantValue> {
    require_h(cfg)?;
    choices.check(cfg)?;
    evaluate(cfg, choices)
}

fn evaluate(cfg: &Configuration, choices: &BasisChoice) -> Result<InvariantValue> {
    let mut cache: BTreeMap<&RTuple, Rational> = BTreeMap::new();
    let mut coords = Vec::with_capacity(cfg.num_colors());
    for c in 0..cfg.num_colors() {
        let mut product = Rational::one();
        for (t, span) in cfg.color(c).iter().zip(cfg.spans(c)) {
            if !cache.contains_key(t) {
                cache.insert(t, tuple_bracket(cfg, choices, t, span)?);
            }
            product *= &cache[t];
        }
        coords.push(product);
    }
    Ok(InvariantValue(WeightedPoint::new(
        coords,
        cfg.weight().clone(),
    )?))
}

/// A linear map `F^{D+1} -> F^{D'+1}`, applied on the left to column
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMorphism {
    matrix: Matrix,
}

impl LinearMorphism {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let cols = matrix.first().map_or(0, Vec::len);
        if cols == 0 || matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput(
                "matrix must be non-empty and rectangular".into(),
            ));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.matrix, v)
    }
}

/// The image configuration `A(S)`. The matrix must be injective on every
/// span of the source. Image points that coincide projectively are merged
/// into one point named by joining the preimage names with `+`.
pub fn apply_morphism(cfg: &Configuration, m: &LinearMorphism) -> Result<Configuration> {
    if m.cols() != cfg.dim() + 1 {
        return Err(Error::MorphismInvalid(format!(
            "matrix has {} columns, configuration lives in dimension {}",
            m.cols(),
            cfg.dim() + 1
        )));
    }
    if m.rows() < cfg.arity() {
        return Err(Error::MorphismInvalid(format!(
            "target dimension {} is too small for arity {}",
            m.rows(),
            cfg.arity()
        )));
    }
    for l in cfg.subspaces() {
        let image: Matrix = l.basis().iter().map(|v| m.apply(v)).collect();
        if rank(&image) != l.dim() {
            return Err(Error::MorphismInvalid(format!("not injective on {l}")));
        }
    }

    // Group images by projective point; BTreeMap keeps names sorted.
    let mut groups: BTreeMap<Vec<Rational>, Vec<(&str, Vec<Rational>)>> = BTreeMap::new();
    for name in cfg.used_points() {
        let image = m.apply(&cfg.points()[name].coords);
        if image.iter().all(Zero::is_zero) {
            return Err(Error::MorphismInvalid(format!("point {name} maps to zero")));
        }
        groups
            .entry(normalize_first_nonzero(&image))
            .or_default()
            .push((name, image));
    }
    let mut rename: BTreeMap<&str, String> = BTreeMap::new();
    let mut points = Vec::new();
    let taken: Vec<&str> = cfg.points().keys().map(String::as_str).collect();
    for members in groups.into_values() {
        let mut fresh = members
            .iter()
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
            .join("+");
        if members.len() > 1 {
            while taken.contains(&fresh.as_str()) {
                fresh.push('\'');
            }
        }
        points.push(ProjPoint::new(fresh.clone(), members[0].1.clone()));
        for (n, _) in &members {
            rename.insert(n, fresh.clone());
        }
    }
    let colors = cfg
        .colors()
        .iter()
        .map(|list| {
            list.iter()
                .map(|t| {
                    t.members()
                        .iter()
                        .map(|n| rename[n.as_str()].clone())
                        .collect()
                })
                .collect()
        })
        .collect();
    build_configuration(
        cfg.weight().clone(),
        cfg.arity(),
        m.rows() - 1,
        colors,
        points,
    )
    .map_err(|e| match e {
        Error::DependentTuple { color, index } => {
            Error::MorphismInvalid(format!("image of colors[{color}][{index}] is dependent"))
        }
        other => other,
    })
}

/// Cross-ratio of four distinct collinear points, as the `(1,1)` invariant
/// of `S_0 = [(d,a),(c,b)]`, `S_1 = [(c,a),(d,b)]`.
pub fn cross_ratio(
    a: &ProjPoint,
    b: &ProjPoint,
    c: &ProjPoint,
    d: &ProjPoint,
) -> Result<WeightedPoint> {
    let quad = [a, b, c, d];
    let len = a.coords.len();
    if len < 2 || quad.iter().any(|p| p.coords.len() != len) {
        return Err(Error::InvalidInput(
            "points must share a dimension >= 1".into(),
        ));
    }
    for (i, p) in quad.iter().enumerate() {
        for q in &quad[i + 1..] {
            if rank(&[p.coords.clone(), q.coords.clone()]) < 2 {
                return Err(Error::InvalidInput("coincident points".into()));
            }
        }
    }
    let all: Vec<Vec<Rational>> = quad.iter().map(|p| p.coords.clone()).collect();
    if rank(&all) != 2 {
        return Err(Error::NotCollinear);
    }
    let names = ["alpha", "beta", "gamma", "delta"];
    let points = quad
        .iter()
        .zip(names)
        .map(|(p, n)| ProjPoint::new(n, p.coords.clone()))
        .collect();
    let seg = |x: &str, y: &str| vec![x.to_string(), y.to_string()];
    let cfg = build_configuration(
        Weight::unit_pair(),
        2,
        len - 1,
        vec![
            vec![seg("delta", "alpha"), seg("gamma", "beta")],
            vec![seg("gamma", "alpha"), seg("delta", "beta")],
        ],
        points,
    )?;
    Ok(eves_invariant(&cfg)?.into_point())
}

/// Triangle configurations of plane points built from fixed index patterns
/// (1-based labels refer to positions in the point list).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrianglePattern {
    /// Black `[124, 356]`, red `[123, 456]`.
    SixPoint,
    /// The six-point pattern with point 6 equal to point 1.
    FivePoint,
    /// Black `[465, 423, 512, 136]`, red `[123, 165, 245, 346]`.
    Octahedral,
    /// The octahedral pattern with one black and one red triangle reversed.
    OctahedralReversed,
}

impl TrianglePattern {
    fn lists(self) -> (usize, [&'static [[usize; 3]]; 2]) {
        match self {
            Self::SixPoint => (6, [&[[1, 2, 4], [3, 5, 6]], &[[1, 2, 3], [4, 5, 6]]]),
            Self::FivePoint => (5, [&[[1, 2, 4], [3, 5, 1]], &[[1, 2, 3], [4, 5, 1]]]),
            Self::Octahedral => (
                6,
                [
                    &[[4, 6, 5], [4, 2, 3], [5, 1, 2], [1, 3, 6]],
                    &[[1, 2, 3], [1, 6, 5], [2, 4, 5], [3, 4, 6]],
                ],
            ),
            Self::OctahedralReversed => (
                6,
                [
                    &[[4, 5, 6], [4, 2, 3], [5, 1, 2], [1, 3, 6]],
                    &[[1, 3, 2], [1, 6, 5], [2, 4, 5], [3, 4, 6]],
                ],
            ),
        }
    }
}

pub fn triangle_configuration(
    points: &[ProjPoint],
    pattern: TrianglePattern,
    weight: &Weight,
) -> Result<Configuration> {
    let (count, lists) = pattern.lists();
    if points.len() != count {
        return Err(Error::InvalidInput(format!(
            "pattern needs {count} points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|p| p.coords.len() != 3) {
        return Err(Error::InvalidInput(
            "triangle patterns live in the plane".into(),
        ));
    }
    let colors = lists
        .iter()
        .map(|l| {
            l.iter()
                .map(|t| t.iter().map(|&k| points[k - 1].name.clone()).collect())
                .collect()
        })
        .collect();
    build_configuration(weight.clone(), 3, 2, colors, points.to_vec())
}

pub fn triangle_ratio(
    points: &[ProjPoint],
    pattern: TrianglePattern,
    weight: &Weight,
) -> Result<InvariantValue> {
    eves_invariant(&triangle_configuration(points, pattern, weight)?)
}

/// Bracket of a directed segment against a chart-normalized basis
/// `(b_0, b_1)` of its line. With endpoints written as `(1, ...)`, this is
/// the affine parameter difference `t_2 - t_1`.
pub fn signed_length_bracket(
    line: &Subspace,
    seg: (&ProjPoint, &ProjPoint),
    basis: &[Vec<Rational>; 2],
) -> Result<Rational> {
    if line.dim() != 2 {
        return Err(Error::InvalidInput(
            "signed lengths need a line (r = 2)".into(),
        ));
    }
    for b in basis {
        if b.first().is_none_or(|x| !x.is_one()) {
            return Err(Error::OutsideChart("basis vector must have x0 = 1".into()));
        }
        if !line.contains(b) {
            return Err(Error::InvalidInput("basis vector off the line".into()));
        }
    }
    let mut reps = Vec::with_capacity(2);
    for p in [seg.0, seg.1] {
        let x0 = p.coords.first().cloned().unwrap_or_else(Rational::zero);
        if x0.is_zero() {
            return Err(Error::OutsideChart(p.name.clone()));
        }
        if !line.contains(&p.coords) {
            return Err(Error::InvalidInput(format!("{} is off the line", p.name)));
        }
        reps.push(p.coords.iter().map(|c| c / &x0).collect::<Vec<_>>());
    }
    bracket(&reps, basis.as_slice())
}
