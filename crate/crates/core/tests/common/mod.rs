//! Shared corpus loading, random presentations and independent rank oracles.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use koszulkit::filtered::{FDAlgebra, FModule, FModuleDoc};
use koszulkit::gmod::{Cokernel, GradedModule, ModuleDoc};
use koszulkit::presentation::{CatPresentation, GradedQuiver, Path, PresentationDoc, Relation};
use koszulkit::xla::{Field, Mat, Scalar};

pub const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(101)];

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn read(rel: &str) -> String {
    let path = corpus_dir().join(rel);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn presentation(name: &str, field: Field) -> Arc<CatPresentation> {
    let doc = PresentationDoc::from_json(&read(&format!("presentations/{name}.json"))).unwrap();
    Arc::new(doc.build(Some(field), None).unwrap())
}

pub fn presentation_names() -> Vec<String> {
    names_in("presentations")
}

pub fn names_in(dir: &str) -> Vec<String> {
    let mut out: Vec<String> = std::fs::read_dir(corpus_dir().join(dir))
        .unwrap()
        .filter_map(|e| {
            let p = e.ok()?.path();
            (p.extension()? == "json").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    out.sort();
    out
}

/// A corpus module with its presentation, built over `field`.
pub fn module(name: &str, field: Field) -> (Cokernel, GradedModule) {
    let doc = ModuleDoc::from_json(&read(&format!("modules/{name}.json"))).unwrap();
    let rel = doc.presentation.trim_start_matches("../presentations/").trim_end_matches(".json");
    let mut base = presentation(rel, field);
    if doc.opposite {
        base = Arc::new(base.opposite());
    }
    let c = doc.build(base).unwrap();
    let m = c.to_module().unwrap();
    (c, m)
}

pub fn module_is_opposite(name: &str) -> bool {
    ModuleDoc::from_json(&read(&format!("modules/{name}.json"))).unwrap().opposite
}

pub fn algebra(name: &str, field: Field) -> Arc<FDAlgebra> {
    let doc = PresentationDoc::from_json(&read(&format!("algebras/{name}.json"))).unwrap();
    Arc::new(FDAlgebra::from_doc(&doc, Some(field)).unwrap())
}

pub fn fmodule(name: &str, field: Field) -> FModule {
    let doc = FModuleDoc::from_json(&read(&format!("fmodules/{name}.json"))).unwrap();
    let rel = doc.algebra.trim_start_matches("../algebras/").trim_end_matches(".json");
    doc.build(&algebra(rel, field)).unwrap()
}

pub fn field_name(f: Field) -> String {
    f.to_string()
}

/// Seeded random quadratic presentation: up to `max_obj` objects, up to
/// `max_arrows` arrows and up to `max_rel` relations with small integer
/// coefficients between a common pair of endpoints.
pub fn random_quadratic(
    rng: &mut ChaCha8Rng,
    field: Field,
    max_obj: usize,
    max_arrows: usize,
    max_rel: usize,
    truncation: usize,
) -> CatPresentation {
    let n = rng.gen_range(1..=max_obj);
    let k = rng.gen_range(1..=max_arrows);
    let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let arrows: Vec<(String, String, String)> = (0..k)
        .map(|i| {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            (format!("a{i}"), objects[s].clone(), objects[t].clone())
        })
        .collect();
    let q = GradedQuiver::new(&objects, &arrows).unwrap();
    let mut by_ends: Vec<((usize, usize), Vec<Path>)> = Vec::new();
    for outer in 0..k {
        for inner in 0..k {
            if let Ok(p) = Path::new(&q, vec![outer, inner]) {
                let key = (p.source(), p.target());
                match by_ends.iter_mut().find(|(e, _)| *e == key) {
                    Some((_, v)) => v.push(p),
                    None => by_ends.push((key, vec![p])),
                }
            }
        }
    }
    let mut relations = Vec::new();
    if !by_ends.is_empty() {
        for _ in 0..rng.gen_range(0..=max_rel) {
            let (_, paths) = &by_ends[rng.gen_range(0..by_ends.len())];
            let mut terms: Vec<(Scalar, Path)> = paths
                .iter()
                .filter_map(|p| {
                    let c: i64 = rng.gen_range(-3..=3);
                    (c != 0).then(|| (field.from_i64(c), p.clone()))
                })
                .collect();
            if terms.is_empty() {
                terms.push((field.one(), paths[0].clone()));
            }
            relations.push(Relation::new(terms));
        }
    }
    CatPresentation::new(q, field, relations, truncation).unwrap()
}

/// Rank by an algorithm independent of the library's elimination:
/// fraction-free Bareiss over ℤ (after clearing denominators) for ℚ, plain
/// modular Gauss on `u64` for 𝔽_p.
pub fn oracle_rank(m: &Mat) -> usize {
    let rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    oracle_rank_rows(m.field(), &rows)
}

pub fn oracle_rank_rows(field: Field, rows: &[Vec<Scalar>]) -> usize {
    match field {
        Field::Rational => bareiss_rank(rows.iter().map(|r| integer_row(r)).collect()),
        Field::Prime(p) => modular_rank(
            p as u64,
            rows.iter()
                .map(|r| r.iter().map(|s| s.to_canonical_string().parse::<u64>().unwrap()).collect())
                .collect(),
        ),
    }
}

fn integer_row(r: &[Scalar]) -> Vec<BigInt> {
    let parsed: Vec<(BigInt, BigInt)> = r
        .iter()
        .map(|s| {
            let t = s.to_canonical_string();
            match t.split_once('/') {
                Some((a, b)) => (a.parse().unwrap(), b.parse().unwrap()),
                None => (t.parse().unwrap(), BigInt::from(1)),
            }
        })
        .collect();
    let mut l = BigInt::from(1);
    for (_, d) in &parsed {
        l = num_integer_lcm(&l, d);
    }
    parsed.into_iter().map(|(a, d)| a * (&l / d)).collect()
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let t = &x % &y;
        x = y;
        y = t;
    }
    (a * b).abs() / x
}

pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn modular_rank(p: u64, mut a: Vec<Vec<u64>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let inv = |x: u64| -> u64 {
        let (mut r, mut b, mut e) = (1u64, x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] % p != 0) else { continue };
        a.swap(rank, piv);
        let iv = inv(a[rank][c]);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * iv % p;
                for j in c..cols {
                    a[r][j] = (a[r][j] + p * p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All paths of length `n` from `x` to `y` by depth-first search, as arrow
/// words with the last-applied arrow first.
pub fn dfs_paths(q: &GradedQuiver, x: usize, y: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(q: &GradedQuiver, at: usize, y: usize, left: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if at == y {
                let mut w = word.clone();
                w.reverse();
                out.push(w);
            }
            return;
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            if arrow.source == at {
                word.push(a);
                go(q, arrow.target, y, left - 1, word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(q, x, y, n, &mut Vec::new(), &mut out);
    out
}

/// `dim Hom(x, y)_n` as (number of paths) − (rank of all `u·r·v`) with the
/// ideal spanned naively by DFS-enumerated paths and the oracle rank.
pub fn oracle_hom_dim(p: &CatPresentation, x: usize, y: usize, n: usize) -> usize {
    let q = p.quiver();
    let paths = dfs_paths(q, x, y, n);
    if n < 2 || paths.is_empty() {
        return paths.len();
    }
    let index = |w: &[usize]| paths.iter().position(|p| p == w).expect("path of the right shape");
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in p.relations() {
        let d = r.degree();
        if d > n {
            continue;
        }
        for left in 0..=n - d {
            let right = n - d - left;
            // u: r.target → y of length `left`; v: x → r.source of length `right`
            for u in dfs_paths(q, r.target(), y, left) {
                for v in dfs_paths(q, x, r.source(), right) {
                    let mut row = vec![p.field().zero(); paths.len()];
                    for (c, path) in r.terms() {
                        let mut w = u.clone();
                        w.extend_from_slice(path.arrows());
                        w.extend_from_slice(&v);
                        let i = index(&w);
                        row[i] = &row[i] + c;
                    }
                    rows.push(row);
                }
            }
        }
    }
    paths.len() - oracle_rank_rows(p.field(), &rows)
}

/// A second presentation of the same module: an extra summand cancelled by
/// an identity relation, and a redundant multiple of an existing relation.
pub fn restabilize(g: &Cokernel, rng: &mut ChaCha8Rng) -> Cokernel {
    let base = g.base().clone();
    let field = base.field();
    let mut rows = g.rows().to_vec();
    let mut cols = g.cols().to_vec();
    let mut entries = g.raw_entries();
    let y = rng.gen_range(0..base.num_objects());
    let n = rows[rng.gen_range(0..rows.len())].1;
    for row in entries.iter_mut() {
        row.push(Vec::new());
    }
    rows.push((y, n));
    cols.push((y, n));
    let mut last = vec![Vec::new(); cols.len()];
    last[cols.len() - 1] = vec![field.one()];
    entries.push(last);
    if !g.cols().is_empty() {
        let j = rng.gen_range(0..g.cols().len());
        let c = field.from_i64(rng.gen_range(1..=50));
        cols.push(g.cols()[j]);
        for row in entries.iter_mut() {
            let e: Vec<Scalar> = row[j].iter().map(|v| v * &c).collect();
            row.push(e);
        }
    }
    Cokernel::new(base, rows, cols, entries).unwrap()
}
