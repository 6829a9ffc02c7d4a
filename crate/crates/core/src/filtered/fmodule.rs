use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::presentation::CoeffDoc;
use crate::xla::{Mat, Scalar, Subspace};

/// A finite-dimensional contravariant representation: arrow `a: X → Y`
/// acts by `F(a): F(Y) → F(X)`, as the graded modules do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FModule {
    alg: Arc<FDAlgebra>,
    dims: Vec<usize>,
    actions: Vec<Mat>,
}

impl FModule {
    /// Checks shapes and that every relation and every path of length `N` acts as zero.
    pub fn new(alg: &Arc<FDAlgebra>, dims: Vec<usize>, actions: Vec<Mat>) -> Result<FModule> {
        let q = alg.quiver();
        if dims.len() != q.num_objects() || actions.len() != q.arrows().len() {
            return Err(Error::InvalidModule("one dimension per object and one matrix per arrow".into()));
        }
        for (a, m) in actions.iter().enumerate() {
            let arrow = q.arrow(a);
            if m.rows() != dims[arrow.source] || m.cols() != dims[arrow.target] || m.field() != alg.field() {
                return Err(Error::InvalidModule(format!("matrix of arrow {:?} has the wrong shape", arrow.name)));
            }
        }
        let f = FModule::assemble(alg, dims, actions);
        for (index, terms) in alg.relations().iter().enumerate() {
            let (x, y) = (terms[0].1.source(), terms[0].1.target());
            let mut sum = Mat::zeros(alg.field(), f.dim(x), f.dim(y));
            for (c, p) in terms {
                sum = sum.add(&f.word_matrix(p.arrows(), y).scale(c));
            }
            if !sum.is_zero() {
                return Err(Error::InvalidModule(format!("relation #{index} does not act as zero")));
            }
        }
        if !f.radical_power_full(alg.nilpotency()).iter().all(Subspace::is_zero) {
            return Err(Error::InvalidModule("paths of length N do not act as zero".into()));
        }
        Ok(f)
    }

    pub(crate) fn assemble(alg: &Arc<FDAlgebra>, dims: Vec<usize>, actions: Vec<Mat>) -> FModule {
        FModule {
            alg: alg.clone(),
            dims,
            actions,
        }
    }

    pub fn alg(&self) -> &Arc<FDAlgebra> {
        &self.alg
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, a: usize) -> &Mat {
        &self.actions[a]
    }

    /// `F(w) v` for a word `w` ending at `y`; arrows act in stored order.
    pub fn apply_word(&self, word: &[usize], v: &[Scalar]) -> Vec<Scalar> {
        word.iter().fold(v.to_vec(), |cur, &a| self.actions[a].mul_vec(&cur))
    }

    fn word_matrix(&self, word: &[usize], y: usize) -> Mat {
        let field = self.alg.field();
        let cols: Vec<Vec<Scalar>> = (0..self.dim(y))
            .map(|j| {
                let mut e = vec![field.zero(); self.dim(y)];
                e[j] = field.one();
                self.apply_word(word, &e)
            })
            .collect();
        let rows = match word.last() {
            Some(&a) => self.dim(self.alg.quiver().arrow(a).source),
            None => self.dim(y),
        };
        Mat::from_columns(field, rows, &cols)
    }

    fn radical_power_full(&self, k: usize) -> Vec<Subspace> {
        FSub::full(self).radical_power(k).spaces
    }

    /// `Λ(−, c)`, with basis the basis paths of `e_c Λ e_x`.
    pub fn projective(alg: &Arc<FDAlgebra>, c: usize) -> FModule {
        let q = alg.quiver();
        let dims: Vec<usize> = (0..q.num_objects()).map(|x| alg.dim(x, c)).collect();
        let actions = (0..q.arrows().len())
            .map(|a| {
                let arrow = q.arrow(a);
                let cols: Vec<Vec<Scalar>> = (0..alg.dim(arrow.target, c))
                    .map(|i| {
                        let mut word = alg.basis_path(arrow.target, c, i).arrows().to_vec();
                        word.push(a);
                        alg.project_word(arrow.source, c, &word)
                    })
                    .collect();
                Mat::from_columns(alg.field(), dims[arrow.source], &cols)
            })
            .collect();
        FModule::assemble(alg, dims, actions)
    }

    pub fn simple(alg: &Arc<FDAlgebra>, c: usize) -> FModule {
        let q = alg.quiver();
        let dims: Vec<usize> = (0..q.num_objects()).map(|x| usize::from(x == c)).collect();
        let actions = q
            .arrows()
            .iter()
            .map(|a| Mat::zeros(alg.field(), dims[a.source], dims[a.target]))
            .collect();
        FModule::assemble(alg, dims, actions)
    }

    pub fn direct_sum(alg: &Arc<FDAlgebra>, parts: &[FModule]) -> FModule {
        let q = alg.quiver();
        let dims: Vec<usize> = (0..q.num_objects()).map(|x| parts.iter().map(|p| p.dim(x)).sum()).collect();
        let actions = (0..q.arrows().len())
            .map(|a| {
                let arrow = q.arrow(a);
                let mut m = Mat::zeros(alg.field(), dims[arrow.source], dims[arrow.target]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let b = p.action(a);
                    for r in 0..b.rows() {
                        for c in 0..b.cols() {
                            if !b.get(r, c).is_zero() {
                                m.set(r0 + r, c0 + c, b.get(r, c).clone());
                            }
                        }
                    }
                    r0 += b.rows();
                    c0 += b.cols();
                }
                m
            })
            .collect();
        FModule::assemble(alg, dims, actions)
    }

    /// `dim rad^i M / rad^{i+1} M`, summed over objects, until it vanishes.
    pub fn radical_layers(&self) -> Vec<usize> {
        let full = FSub::full(self);
        let mut out = Vec::new();
        let mut cur = full;
        while !cur.is_zero() {
            let next = cur.radical();
            out.push(cur.total_dim() - next.total_dim());
            cur = next;
        }
        out
    }
}

/// A subrepresentation, one subspace per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSub {
    parent: FModule,
    spaces: Vec<Subspace>,
}

impl FSub {
    pub fn new(parent: &FModule, spaces: Vec<Subspace>) -> Result<FSub> {
        let q = parent.alg().quiver();
        for (a, arrow) in q.arrows().iter().enumerate() {
            for v in spaces[arrow.target].basis_vectors() {
                if !spaces[arrow.source].contains(&parent.action(a).mul_vec(&v)) {
                    return Err(Error::InvalidModule(format!("not closed under arrow {:?}", arrow.name)));
                }
            }
        }
        Ok(FSub {
            parent: parent.clone(),
            spaces,
        })
    }

    pub fn full(parent: &FModule) -> FSub {
        let field = parent.alg().field();
        FSub {
            parent: parent.clone(),
            spaces: parent.dims.iter().map(|&d| Subspace::full(field, d)).collect(),
        }
    }

    pub fn zero(parent: &FModule) -> FSub {
        let field = parent.alg().field();
        FSub {
            parent: parent.clone(),
            spaces: parent.dims.iter().map(|&d| Subspace::zero(field, d)).collect(),
        }
    }

    pub fn parent(&self) -> &FModule {
        &self.parent
    }

    pub fn space(&self, x: usize) -> &Subspace {
        &self.spaces[x]
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    /// `rad K(X) = Σ_{a: X → Y} F(a) K(Y)`.
    pub fn radical(&self) -> FSub {
        let q = self.parent.alg().quiver();
        let field = self.parent.alg().field();
        let spaces = (0..q.num_objects())
            .map(|x| {
                let gens: Vec<Vec<Scalar>> = q
                    .arrows_out_of(x)
                    .flat_map(|a| {
                        let y = q.arrow(a).target;
                        self.spaces[y]
                            .basis_vectors()
                            .into_iter()
                            .map(move |v| self.parent.action(a).mul_vec(&v))
                    })
                    .collect();
                Subspace::span(field, self.parent.dim(x), gens)
            })
            .collect();
        FSub {
            parent: self.parent.clone(),
            spaces,
        }
    }

    pub fn radical_power(&self, k: usize) -> FSub {
        let mut cur = self.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = cur.radical();
        }
        cur
    }

    pub fn intersect(&self, other: &FSub) -> Result<FSub> {
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| a.intersect(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(FSub {
            parent: self.parent.clone(),
            spaces,
        })
    }

    pub fn is_contained_in(&self, other: &FSub) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(b))
    }

    /// The subrepresentation as a module in RREF coordinates.
    pub fn to_module(&self) -> FModule {
        let alg = self.parent.alg();
        let q = alg.quiver();
        let dims = self.spaces.iter().map(Subspace::dim).collect();
        let actions = (0..q.arrows().len())
            .map(|a| {
                let arrow = q.arrow(a);
                let cols: Vec<Vec<Scalar>> = self.spaces[arrow.target]
                    .basis_vectors()
                    .iter()
                    .map(|v| {
                        self.spaces[arrow.source]
                            .coords(&self.parent.action(a).mul_vec(v))
                            .expect("closed under arrows")
                    })
                    .collect();
                Mat::from_columns(alg.field(), self.spaces[arrow.source].dim(), &cols)
            })
            .collect();
        FModule::assemble(alg, dims, actions)
    }

    /// `F / K` on the canonical complement of each `K(X)`.
    pub fn quotient(&self) -> FModule {
        let alg = self.parent.alg();
        let q = alg.quiver();
        let field = alg.field();
        let qbs: Vec<_> = self.spaces.iter().map(Subspace::quotient_basis).collect();
        let dims = qbs.iter().map(|b| b.dim()).collect();
        let actions = (0..q.arrows().len())
            .map(|a| {
                let arrow = q.arrow(a);
                let (src, tgt) = (&qbs[arrow.source], &qbs[arrow.target]);
                let cols: Vec<Vec<Scalar>> = (0..tgt.dim())
                    .map(|i| {
                        let mut e = vec![field.zero(); tgt.dim()];
                        e[i] = field.one();
                        src.project(&self.parent.action(a).mul_vec(&tgt.lift(&e)))
                    })
                    .collect();
                Mat::from_columns(field, src.dim(), &cols)
            })
            .collect();
        FModule::assemble(alg, dims, actions)
    }

    /// `self` re-expressed inside `outer.to_module()`; requires `self ⊆ outer`.
    pub fn restrict_to(&self, outer: &FSub) -> Result<FSub> {
        if !self.is_contained_in(outer) {
            return Err(Error::InvalidModule("submodule is not contained in the ambient one".into()));
        }
        let module = outer.to_module();
        let field = module.alg().field();
        let spaces = self
            .spaces
            .iter()
            .zip(&outer.spaces)
            .map(|(s, o)| {
                let coords = s.basis_vectors().iter().map(|v| o.coords(v).expect("contained")).collect();
                Subspace::span(field, o.dim(), coords)
            })
            .collect();
        Ok(FSub { parent: module, spaces })
    }
}

pub fn radical_module(m: &FModule) -> FModule {
    FSub::full(m).radical().to_module()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FModuleKind {
    Simple,
    Projective,
    Explicit,
}

/// On-disk representation: named simple or projective, or explicit
/// per-object dimensions and per-arrow matrices (rows index the source).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FModuleDoc {
    pub algebra: String,
    pub kind: FModuleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dims: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, Vec<Vec<CoeffDoc>>>,
    /// Replace the module by its radical.
    #[serde(default)]
    pub radical: bool,
}

impl FModuleDoc {
    pub fn from_json(text: &str) -> Result<FModuleDoc> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, alg: &Arc<FDAlgebra>) -> Result<FModule> {
        let q = alg.quiver();
        let object = || -> Result<usize> {
            let name = self
                .object
                .as_deref()
                .ok_or_else(|| Error::InvalidModule("field \"object\" is required".into()))?;
            q.object_id(name)
        };
        let m = match self.kind {
            FModuleKind::Simple => FModule::simple(alg, object()?),
            FModuleKind::Projective => FModule::projective(alg, object()?),
            FModuleKind::Explicit => {
                for name in self.dims.keys() {
                    q.object_id(name)?;
                }
                for name in self.actions.keys() {
                    q.arrow_id(name)?;
                }
                let dims: Vec<usize> = q.objects().iter().map(|o| self.dims.get(o).copied().unwrap_or(0)).collect();
                let actions = q
                    .arrows()
                    .iter()
                    .map(|a| {
                        let (r, c) = (dims[a.source], dims[a.target]);
                        match self.actions.get(&a.name) {
                            None => Ok(Mat::zeros(alg.field(), r, c)),
                            Some(rows) => {
                                let rows = rows
                                    .iter()
                                    .map(|row| row.iter().map(|e| e.parse(alg.field())).collect::<Result<Vec<_>>>())
                                    .collect::<Result<Vec<_>>>()?;
                                if rows.len() != r {
                                    return Err(Error::InvalidModule(format!("arrow {:?} needs {r} rows", a.name)));
                                }
                                Mat::from_rows(alg.field(), c, rows)
                            }
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                FModule::new(alg, dims, actions)?
            }
        };
        Ok(if self.radical { radical_module(&m) } else { m })
    }
}
