use std::sync::Arc;

use serde::Serialize;

use super::translation::TranslationQuiver;
use crate::error::Result;
use crate::gmod::GradedModule;
use crate::presentation::{CatPresentation, GradedQuiver, Path, Relation};
use crate::resolve::{is_koszul, minimal_resolution, with_room_for, KoszulCertificate};
use crate::xla::Field;

/// `"{from}>{to}"`, with `#k` appended when there are several.
pub fn arrow_name(tq: &TranslationQuiver, x: usize, y: usize, k: usize) -> String {
    let base = format!("{}>{}", tq.name(x), tq.name(y));
    if tq.mult(x, y) > 1 {
        format!("{base}#{k}")
    } else {
        base
    }
}

/// Mesh category on the translation quiver: one degree-2 relation per
/// non-projective vertex, all signs `+1`, pairing the `k`-th copies.
/// Truncated at `|V| + 2`; raise with `with_truncation` if needed.
pub fn mesh_presentation(tq: &TranslationQuiver, field: Field) -> Result<CatPresentation> {
    let n = tq.num_vertices();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for k in 1..=tq.mult(x, y) {
                arrows.push((arrow_name(tq, x, y, k), tq.name(x).to_string(), tq.name(y).to_string()));
            }
        }
    }
    let quiver = GradedQuiver::new(tq.names(), &arrows)?;
    let mut relations = Vec::new();
    for c in 0..n {
        let Some(t) = tq.tau(c) else { continue };
        let mut terms = Vec::new();
        for e in 0..n {
            for k in 1..=tq.mult(e, c) {
                let inner = quiver.arrow_id(&arrow_name(tq, t, e, k))?;
                let outer = quiver.arrow_id(&arrow_name(tq, e, c, k))?;
                terms.push((field.one(), Path::new(&quiver, vec![outer, inner])?));
            }
        }
        if !terms.is_empty() {
            relations.push(Relation::new(terms));
        }
    }
    CatPresentation::new(quiver, field, relations, n + 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub vertex: String,
    pub projective: bool,
    /// Per stage: `(object, shift, multiplicity)`.
    pub expected: Vec<Vec<(String, i64, usize)>>,
    pub actual: Vec<Vec<(String, i64, usize)>>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArReport {
    pub vertices: Vec<VertexCheck>,
    pub shapes_ok: bool,
    pub koszul: KoszulCertificate,
}

impl ArReport {
    pub fn passed(&self) -> bool {
        self.shapes_ok && self.koszul.koszul
    }
}

/// Resolves every simple of the mesh category and compares with
/// `(τC, −2), (E, −1), (C, 0)` or `(rad P, −1), (P, 0)`.
pub fn verify_ar_resolutions(tq: &TranslationQuiver, m: usize, field: Field) -> Result<ArReport> {
    let p = with_room_for(&Arc::new(mesh_presentation(tq, field)?), m.max(3));
    let n = tq.num_vertices();
    let name = |x: usize| tq.name(x).to_string();
    let mut vertices = Vec::with_capacity(n);
    for c in 0..n {
        let mut expected = vec![vec![(name(c), 0, 1)]];
        let middle: Vec<(String, i64, usize)> = if let Some(t) = tq.tau(c) {
            let mid = (0..n).filter(|&e| tq.mult(e, c) > 0).map(|e| (name(e), -1, tq.mult(e, c))).collect();
            expected.push(mid);
            expected.push(vec![(name(t), -2, 1)]);
            Vec::new()
        } else {
            let mut mid: Vec<(String, i64, usize)> = Vec::new();
            for e in 0..n {
                let k = tq.rad(c).iter().filter(|&&r| r == e).count();
                if k > 0 {
                    mid.push((name(e), -1, k));
                }
            }
            mid
        };
        if !middle.is_empty() {
            expected.push(middle);
        }
        let len = expected.len();
        let res = minimal_resolution(&GradedModule::simple(&p, c)?, len)?;
        let actual: Vec<Vec<(String, i64, usize)>> = res.summary().into_iter().map(|s| s.summands).filter(|s| !s.is_empty()).collect();
        let ok = actual == expected && res.syzygy_vanishes(len);
        vertices.push(VertexCheck {
            vertex: name(c),
            projective: tq.is_projective(c),
            expected,
            actual,
            ok,
        });
    }
    Ok(ArReport {
        shapes_ok: vertices.iter().all(|v| v.ok),
        vertices,
        koszul: is_koszul(&p, m)?,
    })
}
