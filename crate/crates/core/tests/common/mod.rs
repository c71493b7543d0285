#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use eves_core::configuration::{build_configuration, Configuration, ProjPoint, Subspace};
use eves_core::format::{parse_config, parse_matrix};
use eves_core::invariant::{BasisChoice, LinearMorphism};
use eves_core::linalg::{det, mat_vec, rank, Matrix, Rational};
use eves_core::wps::Weight;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const FIXTURES: &[&str] = &[
    "ex4_6",
    "ex5_2",
    "ex5_3",
    "ex6_1_S",
    "ex6_1_T",
    "ex6_4_S",
    "ex6_4_T",
    "ex6_5_S",
    "ex6_5_T",
    "ex6_5_conic_S",
    "ex6_5_conic_T",
    "fig2",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Configuration {
    let path = fixture_path(name);
    let text = std::fs::read_to_string(&path).unwrap();
    parse_config(&text, &path.display().to_string()).unwrap()
}

pub fn fixture_matrix(name: &str) -> Matrix {
    let path = fixture_path(name);
    parse_matrix(&std::fs::read_to_string(&path).unwrap(), name).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rational(rng: &mut StdRng, height: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-height..=height)),
        BigInt::from(rng.gen_range(1..=height)),
    )
}

pub fn nonzero_rational(rng: &mut StdRng, height: i64) -> Rational {
    loop {
        let x = rational(rng, height);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_vector(rng: &mut StdRng, len: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..len).map(|_| rational(rng, 5)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn invertible_matrix(rng: &mut StdRng, n: usize) -> Matrix {
    loop {
        let m: Matrix = (0..n)
            .map(|_| (0..n).map(|_| rational(rng, 4)).collect())
            .collect();
        if !det(&m).is_zero() {
            return m;
        }
    }
}

pub fn invertible_morphism(rng: &mut StdRng, n: usize) -> LinearMorphism {
    LinearMorphism::new(invertible_matrix(rng, n)).unwrap()
}

fn combine(u: &[Rational], v: &[Rational], s: &Rational, t: &Rational) -> Vec<Rational> {
    u.iter().zip(v).map(|(a, b)| s * a + t * b).collect()
}

/// A random `(p, 2, ell, D)` h-configuration.
///
/// Points lie on a few random lines (sometimes sharing a point). For every
/// color `c` and every line, `p_c` random oriented cycles through that
/// line's points are added, so each point has `deg_c = 2 p_c` per line
/// through it and each line has `deg_c = p_c` times its point count.
pub fn random_h_config(rng: &mut StdRng) -> Configuration {
    let colors = rng.gen_range(2..=4);
    let parts: Vec<u32> = (0..colors).map(|_| rng.gen_range(1..=4)).collect();
    let dim = rng.gen_range(1..=3);
    random_h_config_with(rng, &Weight::real(&parts).unwrap(), dim)
}

pub fn random_h_config_with(rng: &mut StdRng, weight: &Weight, dim: usize) -> Configuration {
    let n1 = dim + 1;
    let line_count = if dim == 1 { 1 } else { rng.gen_range(1..=3) };
    let mut points: Vec<ProjPoint> = Vec::new();
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut spans: BTreeSet<Subspace> = BTreeSet::new();
    while lines.len() < line_count {
        let u = match (points.is_empty(), rng.gen_bool(0.5)) {
            (false, true) => points[rng.gen_range(0..points.len())].coords.clone(),
            _ => random_vector(rng, n1),
        };
        let v = random_vector(rng, n1);
        if rank(&[u.clone(), v.clone()]) != 2 {
            continue;
        }
        let span = Subspace::from_independent(&[u.clone(), v.clone()]).unwrap();
        if !spans.insert(span) {
            continue;
        }
        let k = rng.gen_range(2..=4);
        let mut ts: BTreeSet<i64> = BTreeSet::new();
        while ts.len() < k - 2 {
            let t = rng.gen_range(-6..=6);
            if t != 0 {
                ts.insert(t);
            }
        }
        let mut on_line = Vec::new();
        let mut fresh = vec![v.clone()];
        match points.iter().position(|p| p.coords == u) {
            Some(idx) => on_line.push(idx),
            None => fresh.push(u.clone()),
        }
        for t in ts {
            let s = nonzero_rational(rng, 3);
            let st = &s * Rational::from(BigInt::from(t));
            fresh.push(combine(&u, &v, &s, &st));
        }
        for coords in fresh {
            on_line.push(points.len());
            points.push(ProjPoint::new(format!("P{}", points.len()), coords));
        }
        lines.push(on_line);
    }
    let mut colors: Vec<Vec<Vec<String>>> = Vec::new();
    for &p in weight.parts() {
        let mut list = Vec::new();
        for line in &lines {
            for _ in 0..p {
                let mut cycle = line.clone();
                cycle.shuffle(rng);
                for i in 0..cycle.len() {
                    let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                    let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                    list.push(vec![points[a].name.clone(), points[b].name.clone()]);
                }
            }
        }
        list.shuffle(rng);
        colors.push(list);
    }
    build_configuration(weight.clone(), 2, dim, colors, points).unwrap()
}

/// Canonical choices with every representative rescaled and every basis
/// replaced by a random invertible recombination.
pub fn random_choices(rng: &mut StdRng, cfg: &Configuration) -> BasisChoice {
    let mut choices = BasisChoice::canonical(cfg);
    for rep in choices.reps.values_mut() {
        let s = nonzero_rational(rng, 6);
        for x in rep.iter_mut() {
            *x *= &s;
        }
    }
    for basis in choices.bases.values_mut() {
        let q = invertible_matrix(rng, basis.len());
        let cols = basis[0].len();
        let old = basis.clone();
        *basis = q
            .iter()
            .map(|row| {
                (0..cols)
                    .map(|k| {
                        let column: Vec<Rational> = old.iter().map(|b| b[k].clone()).collect();
                        mat_vec(std::slice::from_ref(row), &column)[0].clone()
                    })
                    .collect()
            })
            .collect();
    }
    choices
}
