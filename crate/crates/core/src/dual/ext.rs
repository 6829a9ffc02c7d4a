use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::quadratic::dual_arrow_name;
use crate::error::{Error, Result};
use crate::gmod::GradedModule;
use crate::presentation::{CatPresentation, GradedQuiver, Relation};
use crate::resolve::{minimal_resolution, with_room_for, FreeModule, Resolution};
use crate::xla::{Mat, Scalar, Subspace};

/// A basis element of `Ext^stage(S_source, S_D)`: generator `index` of the
/// given stage in the minimal resolution of `S_source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExtBasis {
    pub source: usize,
    pub stage: usize,
    pub index: usize,
}

/// Sparse linear combination over [`ExtBasis`] elements of one stage.
pub type ExtVector = Vec<(ExtBasis, Scalar)>;

/// The bigraded Ext-category of the simples, with Yoneda composition read
/// off lifted chain maps between minimal resolutions.
#[derive(Clone, Debug)]
pub struct ExtAlgebra {
    base: Arc<CatPresentation>,
    hom_degree: usize,
    resolutions: Vec<Resolution>,
    /// `(η, ξ) ↦ η ∘ ξ` for every composable pair with total stage `≤ m`.
    products: HashMap<(ExtBasis, ExtBasis), ExtVector>,
}

/// `Σ v_b · F(path_b)(image_g)` over the blocks of `v ∈ P(z)_n`.
fn apply_free_map(src: &FreeModule, target: &GradedModule, images: &[Vec<Scalar>], z: usize, n: i64, v: &[Scalar]) -> Vec<Scalar> {
    let base = src.module.base();
    let field = base.field();
    let mut out = vec![field.zero(); target.dim(z, n)];
    for (g, (off, dim)) in src.blocks(z, n).into_iter().enumerate() {
        if dim == 0 || images[g].iter().all(Scalar::is_zero) {
            continue;
        }
        let (x, dg) = src.generators[g];
        let piece = base.hom_piece(z, x, (n - dg) as usize).expect("within truncation");
        for b in 0..dim {
            let c = &v[off + b];
            if c.is_zero() {
                continue;
            }
            let col = target.apply_path(piece.basis_path(b), dg, &images[g]);
            for (o, w) in out.iter_mut().zip(&col) {
                o.add_mul(c, w);
            }
        }
    }
    out
}

impl ExtAlgebra {
    pub fn base(&self) -> &Arc<CatPresentation> {
        &self.base
    }

    pub fn hom_degree(&self) -> usize {
        self.hom_degree
    }

    pub fn resolution(&self, c: usize) -> &Resolution {
        &self.resolutions[c]
    }

    /// `(D, j)`: `b ∈ Ext^i(S_source, S_D)` of internal degree `j`.
    pub fn target_of(&self, b: ExtBasis) -> (usize, i64) {
        self.resolutions[b.source].stages[b.stage].generators()[b.index]
    }

    pub fn basis(&self, c: usize, d: usize, i: usize) -> Vec<ExtBasis> {
        self.resolutions[c].stages[i]
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.0 == d)
            .map(|(index, _)| ExtBasis { source: c, stage: i, index })
            .collect()
    }

    /// `dim Ext^i(S_c, S_d)`, summed over internal degrees.
    pub fn dim(&self, c: usize, d: usize, i: usize) -> usize {
        self.basis(c, d, i).len()
    }

    pub fn graded_dim(&self, c: usize, d: usize, i: usize, j: i64) -> usize {
        self.resolutions[c].ext_dim(i, d, j)
    }

    /// Whether every `Ext^i` sits in internal degree `i`.
    pub fn is_diagonal(&self) -> bool {
        self.resolutions
            .iter()
            .all(|r| r.stages.iter().enumerate().all(|(i, s)| s.generators().iter().all(|g| g.1 == i as i64)))
    }

    /// `η ∘ ξ`, or `None` when the pair is not composable or exceeds `m`.
    pub fn multiply(&self, eta: ExtBasis, xi: ExtBasis) -> Option<&ExtVector> {
        self.products.get(&(eta, xi))
    }

    /// Bilinear extension of [`ExtAlgebra::multiply`].
    pub fn compose(&self, eta: &ExtVector, xi: &ExtVector) -> Option<ExtVector> {
        let mut acc: BTreeMap<ExtBasis, Scalar> = BTreeMap::new();
        for (e, ce) in eta {
            for (x, cx) in xi {
                if self.target_of(*x).0 != e.source {
                    continue;
                }
                let c = ce * cx;
                for (b, v) in self.multiply(*e, *x)? {
                    acc.entry(*b).or_insert_with(|| self.base.field().zero()).add_mul(&c, v);
                }
            }
        }
        Some(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    /// `(ζ ∘ η) ∘ ξ = ζ ∘ (η ∘ ξ)` on all basis triples within degree `m`.
    pub fn is_associative(&self) -> bool {
        let n = self.base.num_objects();
        let all: Vec<ExtBasis> = (0..n)
            .flat_map(|c| {
                let r = &self.resolutions[c];
                (0..r.stages.len()).flat_map(move |i| {
                    (0..r.stages[i].generators().len()).map(move |index| ExtBasis { source: c, stage: i, index })
                })
            })
            .collect();
        let one = self.base.field().one();
        all.par_iter().all(|&xi| {
            let (d, _) = self.target_of(xi);
            all.iter()
                .filter(|eta| eta.source == d && xi.stage + eta.stage <= self.hom_degree)
                .all(|&eta| {
                    let (e, _) = self.target_of(eta);
                    all.iter()
                        .filter(|z| z.source == e && xi.stage + eta.stage + z.stage <= self.hom_degree)
                        .all(|&zeta| {
                            let z = vec![(zeta, one.clone())];
                            let h = vec![(eta, one.clone())];
                            let x = vec![(xi, one.clone())];
                            let left = self.compose(&self.compose(&z, &h).unwrap(), &x);
                            let right = self.compose(&z, &self.compose(&h, &x).unwrap());
                            left == right
                        })
                })
        })
    }

    /// Whether each `Ext^i`, `i ≥ 2`, is spanned by `Ext^1 ∘ Ext^{i-1}`.
    pub fn generated_in_degree_one(&self) -> bool {
        let field = self.base.field();
        let n = self.base.num_objects();
        (0..n).all(|c| {
            let r = &self.resolutions[c];
            (2..r.stages.len()).all(|i| {
                let width = r.stages[i].generators().len();
                let mut vecs = Vec::new();
                for xi in (0..n).flat_map(|d| self.basis(c, d, i - 1)) {
                    let (d, _) = self.target_of(xi);
                    for e in 0..n {
                        for eta in self.basis(d, e, 1) {
                            let mut v = vec![field.zero(); width];
                            for (b, s) in self.multiply(eta, xi).expect("within degree") {
                                v[b.index] = s.clone();
                            }
                            vecs.push(v);
                        }
                    }
                }
                Subspace::span(field, width, vecs).dim() == width
            })
        })
    }

    /// Name of the arrow standing for a basis element of `Ext^1`.
    fn arrow_name(&self, b: ExtBasis) -> Option<String> {
        let st = &self.resolutions[b.source].stages[1];
        let (x, _) = st.generators()[b.index];
        let piece = self.base.hom_piece(x, b.source, 1).ok()?;
        let v = &st.images[b.index];
        let hot: Vec<usize> = v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, _)| k).collect();
        match hot[..] {
            [k] if v[k].is_one() => {
                let a = piece.basis_path(k).arrows()[0];
                Some(dual_arrow_name(&self.base.quiver().arrow(a).name))
            }
            _ => None,
        }
    }

    /// Quiver of `Ext^1` plus the kernel of composition on length-2 paths.
    /// Returns `None` unless the algebra is diagonal, generated by `Ext^1`
    /// and these quadratic relations reproduce every `Ext^i`, `i ≤ m`.
    pub fn quadratic_presentation(&self) -> Option<CatPresentation> {
        if !self.is_diagonal() || self.hom_degree < 2 || !self.generated_in_degree_one() {
            return None;
        }
        let n = self.base.num_objects();
        let field = self.base.field();
        let objects: Vec<String> = (0..n).map(|c| self.base.object_name(c).to_string()).collect();
        let gens: Vec<ExtBasis> = (0..n).flat_map(|c| self.resolutions[c].stages[1].generators().iter().enumerate().map(move |(index, _)| ExtBasis { source: c, stage: 1, index })).collect();
        let mut names: Vec<String> = gens.iter().map(|&b| self.arrow_name(b)).collect::<Option<Vec<_>>>().unwrap_or_default();
        let unique = names.len() == gens.len() && {
            let mut s = names.clone();
            s.sort();
            s.dedup();
            s.len() == names.len()
        };
        if !unique {
            names = (0..gens.len()).map(|k| format!("e{k}")).collect();
        }
        let arrows: Vec<(String, String, String)> = gens
            .iter()
            .zip(&names)
            .map(|(&b, name)| (name.clone(), objects[b.source].clone(), objects[self.target_of(b).0].clone()))
            .collect();
        let quiver = GradedQuiver::new(&objects, &arrows).ok()?;
        let free = CatPresentation::new(quiver.clone(), field, Vec::new(), 2).ok()?;
        let mut relations = Vec::new();
        for c in 0..n {
            for e in 0..n {
                let paths = free.enumerate_paths(c, e, 2).ok()?;
                if paths.is_empty() {
                    continue;
                }
                let target = self.basis(c, e, 2);
                let cols: Vec<Vec<Scalar>> = paths
                    .iter()
                    .map(|p| {
                        // word [η, ξ] is η ∘ ξ
                        let (eta, xi) = (gens[p.arrows()[0]], gens[p.arrows()[1]]);
                        let mut v = vec![field.zero(); target.len()];
                        for (b, s) in self.multiply(eta, xi).expect("degree 2 within m") {
                            let k = target.iter().position(|t| t == b).expect("same target");
                            v[k] = s.clone();
                        }
                        v
                    })
                    .collect();
                let kernel = Mat::from_columns(field, target.len(), &cols).kernel();
                for v in kernel.basis_vectors() {
                    relations.push(Relation::new(
                        v.into_iter().zip(paths.iter().cloned()).filter(|(s, _)| !s.is_zero()).collect(),
                    ));
                }
            }
        }
        let pres = CatPresentation::new(quiver, field, relations, self.hom_degree).ok()?;
        let matches = (0..n).all(|c| (0..n).all(|d| (0..=self.hom_degree).all(|i| pres.hom_dim(c, d, i) == self.dim(c, d, i))));
        matches.then_some(pres)
    }

    pub fn table(&self) -> ExtTable {
        let name = |c: usize| self.base.object_name(c).to_string();
        let n = self.base.num_objects();
        let mut dims = Vec::new();
        for c in 0..n {
            let r = &self.resolutions[c];
            for (i, st) in r.stages.iter().enumerate() {
                for (d, shift, mult) in st.summands() {
                    dims.push(ExtDim {
                        from: name(c),
                        to: name(d),
                        degree: i,
                        internal_degree: -shift,
                        dim: mult,
                    });
                }
            }
        }
        let mut keys: Vec<&(ExtBasis, ExtBasis)> = self.products.keys().collect();
        keys.sort();
        let products = keys
            .into_iter()
            .filter(|(eta, xi)| eta.stage > 0 && xi.stage > 0)
            .filter_map(|k| {
                let v = &self.products[k];
                (!v.is_empty()).then(|| ExtProduct {
                    left: k.0,
                    right: k.1,
                    value: v.iter().map(|(b, s)| (*b, s.to_canonical_string())).collect(),
                })
            })
            .collect();
        let quadratic = self.quadratic_presentation();
        ExtTable {
            hom_degree: self.hom_degree,
            truncation: self.base.truncation(),
            diagonal: self.is_diagonal(),
            associative: self.is_associative(),
            dims,
            products,
            quadratic: quadratic.is_some(),
            presentation: quadratic.map(|p| p.to_doc()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtDim {
    pub from: String,
    pub to: String,
    pub degree: usize,
    pub internal_degree: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtProduct {
    pub left: ExtBasis,
    pub right: ExtBasis,
    pub value: Vec<(ExtBasis, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtTable {
    pub hom_degree: usize,
    pub truncation: usize,
    pub diagonal: bool,
    pub associative: bool,
    pub dims: Vec<ExtDim>,
    pub products: Vec<ExtProduct>,
    pub quadratic: bool,
    pub presentation: Option<crate::presentation::PresentationDoc>,
}

/// Lifts `ξ` to a chain map `f_t : P^C_{i+t} → P^D_t[−j]` and records the
/// products `η ∘ ξ` for every `η` at stage `t ≤ m − i` of `S_D`.
fn lift_products(
    res: &[Resolution],
    diffs: &[Vec<HashMap<(usize, i64), Mat>>],
    xi: ExtBasis,
    m: usize,
) -> Result<Vec<((ExtBasis, ExtBasis), ExtVector)>> {
    let rc = &res[xi.source];
    let (d, j) = rc.stages[xi.stage].generators()[xi.index];
    let rd = &res[d];
    let field = rc.base().field();
    let mut out = Vec::new();

    // f_0 sends ξ's generator to the identity of D and all others to zero
    let mut images: Vec<Vec<Scalar>> = rc.stages[xi.stage]
        .generators()
        .iter()
        .enumerate()
        .map(|(g, &(x, dg))| {
            let mut v = vec![field.zero(); rd.stages[0].free.module.dim(x, dg - j)];
            if g == xi.index {
                v[0] = field.one();
            }
            v
        })
        .collect();
    for t in 0..=(m - xi.stage) {
        if t > 0 {
            let src_prev = &rc.stages[xi.stage + t - 1].free;
            let tgt_prev = rd.stages[t - 1].free.module.shift(-j);
            let st = &rc.stages[xi.stage + t];
            let mut next = Vec::with_capacity(st.generators().len());
            for (g, &(x, dg)) in st.generators().iter().enumerate() {
                let w = apply_free_map(src_prev, &tgt_prev, &images, x, dg, &st.images[g]);
                let dim = rd.stages[t].free.module.dim(x, dg - j);
                let u = if w.iter().all(Scalar::is_zero) {
                    vec![field.zero(); dim]
                } else {
                    diffs[d][t]
                        .get(&(x, dg - j))
                        .and_then(|dm| dm.solve(&w))
                        .ok_or_else(|| Error::Precondition("chain map does not lift; resolution window too small".into()))?
                };
                next.push(u);
            }
            images = next;
        }
        // η ∘ ξ for η = generator h of stage t of S_D
        let st = &rc.stages[xi.stage + t];
        let dst = &rd.stages[t].free;
        let mut prods: BTreeMap<usize, ExtVector> = BTreeMap::new();
        for (g, &(x, dg)) in st.generators().iter().enumerate() {
            let blocks = dst.blocks(x, dg - j);
            for (h, &(y, dh)) in dst.generators.iter().enumerate() {
                if y == x && dh == dg - j {
                    let c = &images[g][blocks[h].0];
                    if !c.is_zero() {
                        prods.entry(h).or_default().push((
                            ExtBasis {
                                source: xi.source,
                                stage: xi.stage + t,
                                index: g,
                            },
                            c.clone(),
                        ));
                    }
                }
            }
        }
        for h in 0..dst.generators.len() {
            let eta = ExtBasis { source: d, stage: t, index: h };
            out.push(((eta, xi), prods.remove(&h).unwrap_or_default()));
        }
    }
    Ok(out)
}

/// Ext between simples up to homological degree `m`, with all Yoneda products.
pub fn ext_algebra(p: &Arc<CatPresentation>, m: usize) -> Result<ExtAlgebra> {
    let base = with_room_for(p, m);
    let n = base.num_objects();
    let resolutions = (0..n)
        .into_par_iter()
        .map(|c| minimal_resolution(&GradedModule::simple(&base, c)?, m))
        .collect::<Result<Vec<_>>>()?;
    let diffs: Vec<Vec<HashMap<(usize, i64), Mat>>> = resolutions
        .par_iter()
        .map(|r| {
            (0..r.stages.len())
                .map(|t| {
                    let mut table = HashMap::new();
                    if t > 0 {
                        for z in 0..n {
                            for k in r.window.0..=r.window.1 {
                                table.insert((z, k), r.differential(t, z, k));
                            }
                        }
                    }
                    table
                })
                .collect()
        })
        .collect();
    let xis: Vec<ExtBasis> = (0..n)
        .flat_map(|c| {
            let r = &resolutions[c];
            (0..r.stages.len())
                .flat_map(move |i| (0..r.stages[i].generators().len()).map(move |index| ExtBasis { source: c, stage: i, index }))
        })
        .collect();
    let products = xis
        .par_iter()
        .map(|&xi| lift_products(&resolutions, &diffs, xi, m))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ExtAlgebra {
        base,
        hom_degree: m,
        resolutions,
        products,
    })
}
