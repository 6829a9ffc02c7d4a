use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub name: String,
    #[serde(default)]
    pub projective: bool,
    /// Indecomposable summands of the radical, for projective vertices.
    #[serde(default)]
    pub rad: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranslationQuiverDoc {
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub arrows: Vec<EdgeDoc>,
    #[serde(default)]
    pub tau: BTreeMap<String, String>,
}

/// A finite translation quiver: irreducible-map multiplicities and the
/// translation on non-projective vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationQuiver {
    names: Vec<String>,
    projective: Vec<bool>,
    rad: Vec<Vec<usize>>,
    /// `mult[x][y]`: number of irreducible maps `x → y`.
    mult: Vec<Vec<usize>>,
    tau: Vec<Option<usize>>,
}

impl TranslationQuiver {
    /// Validates the translation and mesh consistency: for non-projective
    /// `C`, arrows into `C` match arrows out of `τC` with multiplicity; for
    /// projective `P`, arrows into `P` match the listed summands of `rad P`.
    pub fn from_doc(doc: &TranslationQuiverDoc) -> Result<TranslationQuiver> {
        let bad = |s: String| Error::MeshInconsistent(s);
        let names: Vec<String> = doc.vertices.iter().map(|v| v.name.clone()).collect();
        let id = |n: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::MeshInconsistent(format!("unknown vertex {n:?}")))
        };
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(bad(format!("duplicate vertex {n:?}")));
            }
        }
        let k = names.len();
        let mut mult = vec![vec![0; k]; k];
        for e in &doc.arrows {
            if e.mult == 0 {
                return Err(bad(format!("arrow {} → {} has multiplicity 0", e.from, e.to)));
            }
            mult[id(&e.from)?][id(&e.to)?] += e.mult;
        }
        let projective: Vec<bool> = doc.vertices.iter().map(|v| v.projective).collect();
        let mut tau = vec![None; k];
        for (c, t) in &doc.tau {
            tau[id(c)?] = Some(id(t)?);
        }
        let mut rad = vec![Vec::new(); k];
        for (i, v) in doc.vertices.iter().enumerate() {
            rad[i] = v.rad.iter().map(|n| id(n)).collect::<Result<Vec<_>>>()?;
            if !v.projective && !v.rad.is_empty() {
                return Err(bad(format!("non-projective vertex {:?} lists a radical", v.name)));
            }
        }
        for c in 0..k {
            match (projective[c], tau[c]) {
                (true, Some(_)) => return Err(bad(format!("τ defined on projective vertex {:?}", names[c]))),
                (false, None) => return Err(bad(format!("τ undefined on non-projective vertex {:?}", names[c]))),
                (false, Some(t)) => {
                    for e in 0..k {
                        if mult[e][c] != mult[t][e] {
                            return Err(bad(format!(
                                "mesh at {:?}: {} arrows {:?} → {:?} but {} arrows {:?} → {:?}",
                                names[c], mult[e][c], names[e], names[c], mult[t][e], names[t], names[e]
                            )));
                        }
                    }
                }
                (true, None) => {
                    for e in 0..k {
                        let listed = rad[c].iter().filter(|&&r| r == e).count();
                        if listed != mult[e][c] {
                            return Err(bad(format!(
                                "radical of {:?} lists {:?} {} times but there are {} arrows into it",
                                names[c], names[e], listed, mult[e][c]
                            )));
                        }
                    }
                }
            }
        }
        Ok(TranslationQuiver {
            names,
            projective,
            rad,
            mult,
            tau,
        })
    }

    pub fn from_json(text: &str) -> Result<TranslationQuiver> {
        TranslationQuiver::from_doc(&serde_json::from_str(text)?)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_projective(&self, v: usize) -> bool {
        self.projective[v]
    }

    pub fn tau(&self, v: usize) -> Option<usize> {
        self.tau[v]
    }

    pub fn mult(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    pub fn rad(&self, v: usize) -> &[usize] {
        &self.rad[v]
    }
}
