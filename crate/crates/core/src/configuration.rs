//! Colored configurations of independent r-tuples of points in projective
//! D-space, their spans, color degrees and the h-configuration test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, rank, rref, Matrix, Rational};
use crate::wps::Weight;

/// A named point of `FP^D` with a stored representative vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub name: String,
    pub coords: Vec<Rational>,
}

impl ProjPoint {
    pub fn new(name: impl Into<String>, coords: Vec<Rational>) -> Self {
        Self {
            name: name.into(),
            coords,
        }
    }

    pub fn from_ints(name: impl Into<String>, coords: &[i64]) -> Self {
        Self::new(name, coords.iter().map(|&c| crate::linalg::q(c)).collect())
    }
}

/// An ordered r-tuple of point names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RTuple {
    members: Vec<String>,
}

impl RTuple {
    pub fn new<S: Into<String>>(members: impl IntoIterator<Item = S>) -> Self {
        Self {
            members: members.into_iter().map(Into::into).collect(),
        }
    }

    pub fn members(&self) -> &[String] {
        &self.members
    }

    pub fn contains(&self, name: &str) -> bool {
        self.members.iter().any(|m| m == name)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for RTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.members.join(","))
    }
}

/// A linear subspace of `F^{D+1}`, stored by its reduced row echelon basis.
/// Two spans are equal exactly when their `Subspace` values are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Span of arbitrary vectors; `None` if they are dependent.
    pub fn from_independent(vectors: &[Vec<Rational>]) -> Option<Self> {
        let (basis, pivots) = rref(vectors);
        (pivots.len() == vectors.len()).then_some(Self { basis })
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows) == self.basis.len()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, row) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", entries.join(" "))?;
        }
        write!(f, ">")
    }
}

/// A `(p, r, ell, D)`-configuration. Each color list is a multiset of
/// r-tuples, stored sorted by member names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    weight: Weight,
    arity: usize,
    dim: usize,
    ell: usize,
    colors: Vec<Vec<RTuple>>,
    spans: Vec<Vec<Subspace>>,
    points: BTreeMap<String, ProjPoint>,
}

/// Validates and assembles a configuration. Error positions refer to the
/// caller's list order.
pub fn build_configuration(
    weight: Weight,
    arity: usize,
    dim: usize,
    colors: Vec<Vec<Vec<String>>>,
    points: Vec<ProjPoint>,
) -> Result<Configuration> {
    if arity == 0 || arity > dim + 1 {
        return Err(Error::ArityTooLarge {
            arity,
            max: dim + 1,
        });
    }
    let mut table = BTreeMap::new();
    for p in points {
        if p.coords.len() != dim + 1 {
            return Err(Error::DimensionMismatch {
                name: p.name,
                expected: dim + 1,
                found: p.coords.len(),
            });
        }
        if is_zero_vector(&p.coords) {
            return Err(Error::ZeroVector { name: p.name });
        }
        if table.contains_key(&p.name) {
            return Err(Error::DuplicatePoint(p.name));
        }
        table.insert(p.name.clone(), p);
    }
    if colors.len() != weight.len() {
        return Err(Error::ColorCount {
            expected: weight.len(),
            found: colors.len(),
        });
    }
    for (c, list) in colors.iter().enumerate() {
        for (index, tuple) in list.iter().enumerate() {
            if tuple.len() != arity {
                return Err(Error::ArityMismatch {
                    color: c,
                    index,
                    expected: arity,
                    found: tuple.len(),
                });
            }
            if let Some(name) = tuple.iter().find(|n| !table.contains_key(*n)) {
                return Err(Error::UnknownPoint {
                    name: name.clone(),
                    color: c,
                    index,
                });
            }
        }
    }
    let mut ell = None;
    for (c, list) in colors.iter().enumerate() {
        let part = weight.part(c);
        if list.len() % part as usize != 0 {
            return Err(Error::LengthNotDivisible {
                color: c,
                len: list.len(),
                part,
            });
        }
        let here = list.len() / part as usize;
        match ell {
            None => ell = Some(here),
            Some(e) if e != here => {
                return Err(Error::InconsistentEll {
                    color: c,
                    expected: e,
                    found: here,
                })
            }
            _ => {}
        }
    }
    let ell = ell.unwrap_or(0);
    if ell == 0 {
        return Err(Error::ZeroEll);
    }

    let mut span_cache: BTreeMap<RTuple, Subspace> = BTreeMap::new();
    let mut sorted = Vec::with_capacity(colors.len());
    for (c, list) in colors.into_iter().enumerate() {
        let mut tuples = Vec::with_capacity(list.len());
        for (index, names) in list.into_iter().enumerate() {
            let t = RTuple::new(names);
            if !span_cache.contains_key(&t) {
                let vectors: Vec<Vec<Rational>> =
                    t.members.iter().map(|m| table[m].coords.clone()).collect();
                let span = Subspace::from_independent(&vectors)
                    .ok_or(Error::DependentTuple { color: c, index })?;
                span_cache.insert(t.clone(), span);
            }
            tuples.push(t);
        }
        tuples.sort();
        sorted.push(tuples);
    }
    let spans = sorted
        .iter()
        .map(|list| list.iter().map(|t| span_cache[t].clone()).collect())
        .collect();
    Ok(Configuration {
        weight,
        arity,
        dim,
        ell,
        colors: sorted,
        spans,
        points: table,
    })
}

impl Configuration {
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn num_colors(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Vec<RTuple>] {
        &self.colors
    }

    pub fn color(&self, c: usize) -> &[RTuple] {
        &self.colors[c]
    }

    /// Spans of the tuples of color `c`, parallel to [`Self::color`].
    pub fn spans(&self, c: usize) -> &[Subspace] {
        &self.spans[c]
    }

    pub fn points(&self) -> &BTreeMap<String, ProjPoint> {
        &self.points
    }

    pub fn point(&self, name: &str) -> Option<&ProjPoint> {
        self.points.get(name)
    }

    /// Names of points occurring in some tuple.
    pub fn used_points(&self) -> BTreeSet<&str> {
        self.colors
            .iter()
            .flatten()
            .flat_map(|t| t.members.iter().map(String::as_str))
            .collect()
    }

    /// The distinct spans of all tuples.
    pub fn subspaces(&self) -> BTreeSet<&Subspace> {
        self.spans.iter().flatten().collect()
    }

    /// Color lists as name arrays, in stored order.
    pub fn color_names(&self) -> Vec<Vec<Vec<String>>> {
        self.colors
            .iter()
            .map(|l| l.iter().map(|t| t.members.clone()).collect())
            .collect()
    }

    /// Rebuilds with the same points and lists under another weight.
    pub fn reweighted(&self, weight: Weight) -> Result<Configuration> {
        build_configuration(
            weight,
            self.arity,
            self.dim,
            self.color_names(),
            self.points.values().cloned().collect(),
        )
    }

    pub fn span_of(&self, t: &RTuple) -> Result<Subspace> {
        let vectors = t
            .members
            .iter()
            .map(|m| {
                self.points
                    .get(m)
                    .map(|p| p.coords.clone())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown point '{m}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::from_independent(&vectors)
            .ok_or_else(|| Error::InvalidInput(format!("dependent tuple {t}")))
    }

    /// Number of color-`c` tuples containing the named point.
    pub fn point_degree(&self, name: &str, c: usize) -> Result<usize> {
        if !self.points.contains_key(name) {
            return Err(Error::InvalidInput(format!("unknown point '{name}'")));
        }
        Ok(self.colors[c].iter().filter(|t| t.contains(name)).count())
    }

    /// Number of color-`c` tuples whose span is `l`.
    pub fn subspace_degree(&self, l: &Subspace, c: usize) -> usize {
        self.spans[c].iter().filter(|s| *s == l).count()
    }

    pub fn validate_h(&self) -> DegreeReport {
        self.validate_h_under(&self.weight)
            .expect("own weight has matching length")
    }

    /// Degree report with quotients taken against `weight` instead of the
    /// configuration's own weight.
    pub fn validate_h_under(&self, weight: &Weight) -> Result<DegreeReport> {
        if weight.len() != self.colors.len() {
            return Err(Error::ColorCount {
                expected: self.colors.len(),
                found: weight.len(),
            });
        }
        let n = self.colors.len();
        let mut point_degrees: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut subspace_degrees: BTreeMap<Subspace, Vec<usize>> = BTreeMap::new();
        for c in 0..n {
            for (t, span) in self.colors[c].iter().zip(&self.spans[c]) {
                for m in &t.members {
                    point_degrees.entry(m.clone()).or_insert_with(|| vec![0; n])[c] += 1;
                }
                subspace_degrees
                    .entry(span.clone())
                    .or_insert_with(|| vec![0; n])[c] += 1;
            }
        }
        let mut first_failure = None;
        let mut point_quotients = BTreeMap::new();
        for (name, degs) in &point_degrees {
            let y = common_quotient(degs, weight);
            if y.is_none() && first_failure.is_none() {
                first_failure = Some(format!("point {name} has degrees {}", fmt_degs(degs)));
            }
            point_quotients.insert(name.clone(), y);
        }
        let mut multiplicities = BTreeMap::new();
        for (l, degs) in &subspace_degrees {
            let m = common_quotient(degs, weight);
            if m.is_none() && first_failure.is_none() {
                first_failure = Some(format!("subspace {l} has degrees {}", fmt_degs(degs)));
            }
            multiplicities.insert(l.clone(), m);
        }
        Ok(DegreeReport {
            weight: weight.clone(),
            h_valid: first_failure.is_none(),
            first_failure,
            point_degrees,
            subspace_degrees,
            point_quotients,
            multiplicities,
        })
    }
}

fn common_quotient(degs: &[usize], weight: &Weight) -> Option<usize> {
    let mut q = None;
    for (d, &p) in degs.iter().zip(weight.parts()) {
        if d % p as usize != 0 {
            return None;
        }
        let here = d / p as usize;
        match q {
            None => q = Some(here),
            Some(prev) if prev != here => return None,
            _ => {}
        }
    }
    q
}

fn fmt_degs(degs: &[usize]) -> String {
    let s: Vec<String> = degs.iter().map(ToString::to_string).collect();
    format!("({})", s.join(","))
}

/// Color degrees of every point and span of a configuration, and the
/// verdict of the h-configuration test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub weight: Weight,
    pub point_degrees: BTreeMap<String, Vec<usize>>,
    pub subspace_degrees: BTreeMap<Subspace, Vec<usize>>,
    /// `deg_c(z) / p_c` when it is one integer for all colors.
    pub point_quotients: BTreeMap<String, Option<usize>>,
    /// `deg_c(L) / p_c` when it is one integer for all colors.
    pub multiplicities: BTreeMap<Subspace, Option<usize>>,
    pub h_valid: bool,
    pub first_failure: Option<String>,
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "weight: {}", self.weight)?;
        for (name, degs) in &self.point_degrees {
            write!(f, "point {name}: degrees {}", fmt_degs(degs))?;
            match self.point_quotients[name] {
                Some(y) => writeln!(f, " y={y}")?,
                None => writeln!(f, " y=-")?,
            }
        }
        for (l, degs) in &self.subspace_degrees {
            write!(f, "subspace {l}: degrees {}", fmt_degs(degs))?;
            match self.multiplicities[l] {
                Some(m) => writeln!(f, " m={m}")?,
                None => writeln!(f, " m=-")?,
            }
        }
        writeln!(f, "h_valid: {}", self.h_valid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn names(lists: &[&[&[&str]]]) -> Vec<Vec<Vec<String>>> {
        lists
            .iter()
            .map(|l| {
                l.iter()
                    .map(|t| t.iter().map(|s| s.to_string()).collect())
                    .collect()
            })
            .collect()
    }

    fn cross_ratio_cfg() -> Configuration {
        let pts = vec![
            ProjPoint::from_ints("a", &[1, 0]),
            ProjPoint::from_ints("b", &[1, 1]),
            ProjPoint::from_ints("c", &[1, 2]),
            ProjPoint::from_ints("d", &[1, 3]),
        ];
        build_configuration(
            Weight::real(&[1, 1]).unwrap(),
            2,
            1,
            names(&[&[&["d", "a"], &["c", "b"]], &[&["c", "a"], &["d", "b"]]]),
            pts,
        )
        .unwrap()
    }

    #[test]
    fn infers_ell() {
        let cfg = cross_ratio_cfg();
        assert_eq!(cfg.ell(), 2);
        assert!(cfg.validate_h().h_valid);
    }

    #[test]
    fn shape_errors_are_distinct() {
        let pts = || {
            vec![
                ProjPoint::from_ints("a", &[1, 0]),
                ProjPoint::from_ints("b", &[0, 1]),
            ]
        };
        let w = |p: &[u32]| Weight::real(p).unwrap();
        let e = build_configuration(
            w(&[2, 1]),
            2,
            1,
            names(&[&[&["a", "b"], &["a", "b"], &["a", "b"]], &[&["a", "b"]]]),
            pts(),
        );
        assert!(matches!(
            e,
            Err(Error::LengthNotDivisible {
                color: 0,
                len: 3,
                part: 2
            })
        ));
        let e = build_configuration(
            w(&[1, 1]),
            2,
            1,
            names(&[&[&["a", "b"], &["a", "b"]], &[&["a", "b"]]]),
            pts(),
        );
        assert!(matches!(e, Err(Error::InconsistentEll { color: 1, .. })));
        let e = build_configuration(w(&[1, 1]), 2, 1, names(&[&[], &[]]), pts());
        assert!(matches!(e, Err(Error::ZeroEll)));
        let e = build_configuration(
            w(&[1, 1]),
            2,
            1,
            names(&[&[&["a", "a"]], &[&["a", "b"]]]),
            pts(),
        );
        assert!(matches!(
            e,
            Err(Error::DependentTuple { color: 0, index: 0 })
        ));
        let e = build_configuration(
            w(&[1, 1]),
            2,
            1,
            names(&[&[&["a", "b"]], &[&["a", "x"]]]),
            pts(),
        );
        assert!(matches!(
            e,
            Err(Error::UnknownPoint {
                color: 1,
                index: 0,
                ..
            })
        ));
        let mut dup = pts();
        dup.push(ProjPoint::from_ints("a", &[1, 1]));
        let e = build_configuration(
            w(&[1, 1]),
            2,
            1,
            names(&[&[&["a", "b"]], &[&["a", "b"]]]),
            dup,
        );
        assert!(matches!(e, Err(Error::DuplicatePoint(_))));
        let mut zero = pts();
        zero.push(ProjPoint::from_ints("z", &[0, 0]));
        let e = build_configuration(
            w(&[1, 1]),
            2,
            1,
            names(&[&[&["a", "b"]], &[&["a", "b"]]]),
            zero,
        );
        assert!(matches!(e, Err(Error::ZeroVector { .. })));
        let mut wrong = pts();
        wrong.push(ProjPoint::from_ints("z", &[0, 0, 1]));
        let e = build_configuration(
            w(&[1, 1]),
            2,
            1,
            names(&[&[&["a", "b"]], &[&["a", "b"]]]),
            wrong,
        );
        assert!(matches!(e, Err(Error::DimensionMismatch { .. })));
        let e = build_configuration(w(&[1, 1]), 3, 1, names(&[&[], &[]]), pts());
        assert!(matches!(e, Err(Error::ArityTooLarge { .. })));
    }

    #[test]
    fn span_examples() {
        let cfg = cross_ratio_cfg();
        let s = cfg.span_of(&RTuple::new(["a", "d"])).unwrap();
        assert_eq!(s.basis(), &[vec![q(1), q(0)], vec![q(0), q(1)]]);

        let v =
            Subspace::from_independent(&[vec![q(1), q(0), q(0)], vec![q(1), q(1), q(1)]]).unwrap();
        assert_eq!(v.basis(), &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(1)]]);

        let tri = Subspace::from_independent(&[
            vec![q(1), q(0), q(0)],
            vec![q(1), q(1), q(0)],
            vec![q(1), q(0), q(1)],
        ])
        .unwrap();
        assert_eq!(
            tri.basis(),
            &[
                vec![q(1), q(0), q(0)],
                vec![q(0), q(1), q(0)],
                vec![q(0), q(0), q(1)]
            ]
        );
        assert!(cfg.span_of(&RTuple::new(["a", "a"])).is_err());
    }

    #[test]
    fn degrees() {
        let cfg = cross_ratio_cfg();
        assert_eq!(cfg.point_degree("a", 0).unwrap(), 1);
        assert_eq!(cfg.point_degree("a", 1).unwrap(), 1);
        assert!(cfg.point_degree("zz", 0).is_err());
        let line = cfg.span_of(&RTuple::new(["a", "b"])).unwrap();
        assert_eq!(cfg.subspace_degree(&line, 0), 2);
        let other = Subspace::from_independent(&[vec![q(1), q(0)]]).unwrap();
        assert_eq!(cfg.subspace_degree(&other, 0), 0);
    }

    #[test]
    fn unused_point_has_degree_zero() {
        let pts = vec![
            ProjPoint::from_ints("a", &[1, 0]),
            ProjPoint::from_ints("b", &[0, 1]),
            ProjPoint::from_ints("lonely", &[1, 1]),
        ];
        let cfg = build_configuration(
            Weight::real(&[1, 1]).unwrap(),
            2,
            1,
            names(&[&[&["a", "b"]], &[&["b", "a"]]]),
            pts,
        )
        .unwrap();
        assert_eq!(cfg.point_degree("lonely", 0).unwrap(), 0);
        let report = cfg.validate_h();
        assert!(report.h_valid);
        assert!(!report.point_degrees.contains_key("lonely"));
    }

    #[test]
    fn unbalanced_is_reported_not_raised() {
        let pts = vec![
            ProjPoint::from_ints("a", &[1, 0]),
            ProjPoint::from_ints("b", &[1, 1]),
            ProjPoint::from_ints("c", &[1, 2]),
        ];
        let cfg = build_configuration(
            Weight::real(&[1, 1]).unwrap(),
            2,
            1,
            names(&[&[&["a", "b"]], &[&["a", "c"]]]),
            pts,
        )
        .unwrap();
        let report = cfg.validate_h();
        assert!(!report.h_valid);
        assert!(report.first_failure.unwrap().contains("point b"));
    }

    #[test]
    fn stored_order_is_sorted() {
        let a = cross_ratio_cfg();
        let pts = a.points().values().cloned().collect();
        let b = build_configuration(
            Weight::real(&[1, 1]).unwrap(),
            2,
            1,
            names(&[&[&["c", "b"], &["d", "a"]], &[&["d", "b"], &["c", "a"]]]),
            pts,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
