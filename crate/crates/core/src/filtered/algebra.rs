use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{CatPresentation, GradedQuiver, Path, PresentationDoc};
use crate::xla::{Field, QuotientBasis, Scalar, Subspace};

/// `e_y Λ e_x`: paths `x → y` of length `< N`, the saturated ideal among
/// them, and the radical filtration in quotient coordinates.
#[derive(Clone, Debug)]
struct AlgPiece {
    paths: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
    ideal: Subspace,
    quotient: QuotientBasis,
    /// `𝔯^i` for `i = 0..=N`.
    radical: Vec<Subspace>,
}

/// A finite-dimensional algebra `Λ = kQ / (I + J^N)` with `I ⊆ J²`.
#[derive(Clone, Debug)]
pub struct FDAlgebra {
    quiver: GradedQuiver,
    field: Field,
    relations: Vec<Vec<(Scalar, Path)>>,
    nilpotency: usize,
    pieces: Vec<Vec<AlgPiece>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerDims {
    pub from: String,
    pub to: String,
    /// `dim 𝔯^i / 𝔯^{i+1}` for `i = 0, 1, …` until the radical vanishes.
    pub layers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub nilpotency: usize,
    pub total_dim: usize,
    pub pairs: Vec<LayerDims>,
}

fn layer_dims(radical: &[Subspace]) -> Vec<usize> {
    let mut out: Vec<usize> = radical.windows(2).map(|w| w[0].dim() - w[1].dim()).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

impl PartialEq for FDAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver
            && self.field == other.field
            && self.nilpotency == other.nilpotency
            && self.relations == other.relations
    }
}

impl Eq for FDAlgebra {}

impl FDAlgebra {
    /// Validates admissibility: `N ≥ 2` and every relation term has length
    /// at least two, so `I + J^N` lies between `J^N` and `J²`.
    pub fn new(quiver: GradedQuiver, field: Field, relations: Vec<Vec<(Scalar, Path)>>, nilpotency: usize) -> Result<FDAlgebra> {
        if nilpotency < 2 {
            return Err(Error::NotAdmissible(format!("nilpotency {nilpotency} < 2 kills arrows")));
        }
        for (index, terms) in relations.iter().enumerate() {
            let Some((_, first)) = terms.first() else {
                return Err(Error::InvalidRelation {
                    index,
                    reason: "empty relation".into(),
                });
            };
            for (c, p) in terms {
                if c.field() != field {
                    return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
                }
                if p.source() != first.source() || p.target() != first.target() {
                    return Err(Error::InvalidRelation {
                        index,
                        reason: "terms have different endpoints".into(),
                    });
                }
                if p.len() < 2 {
                    return Err(Error::NotAdmissible(format!(
                        "relation #{index} has a term of length {}, outside the square of the radical",
                        p.len()
                    )));
                }
            }
        }
        let pieces = build(&quiver, field, &relations, nilpotency)?;
        Ok(FDAlgebra {
            quiver,
            field,
            relations,
            nilpotency,
            pieces,
        })
    }

    /// Reads the presentation schema; `nilpotency` is mandatory here.
    pub fn from_doc(doc: &PresentationDoc, field: Option<Field>) -> Result<FDAlgebra> {
        let field = match field {
            Some(f) => f,
            None => Field::from_doc(&doc.field)?,
        };
        let n = doc
            .nilpotency
            .ok_or_else(|| Error::NotAdmissible("missing field \"nilpotency\"".into()))?;
        let quiver = doc.quiver()?;
        let relations = doc.relation_terms(&quiver, field)?;
        FDAlgebra::new(quiver, field, relations, n)
    }

    pub fn from_json(text: &str) -> Result<FDAlgebra> {
        FDAlgebra::from_doc(&PresentationDoc::from_json(text)?, None)
    }

    /// The graded algebra `kQ / ⟨homogeneous relations⟩` truncated at `N`,
    /// as an ungraded algebra.
    pub fn from_graded(p: &CatPresentation, nilpotency: usize) -> Result<FDAlgebra> {
        let relations = p.relations().iter().map(|r| r.terms().to_vec()).collect();
        FDAlgebra::new(p.quiver().clone(), p.field(), relations, nilpotency)
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[Vec<(Scalar, Path)>] {
        &self.relations
    }

    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn num_objects(&self) -> usize {
        self.quiver.num_objects()
    }

    /// `dim e_y Λ e_x`.
    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.pieces[x][y].quotient.dim()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().flatten().map(|p| p.quotient.dim()).sum()
    }

    /// Path representing the `i`-th basis element of `e_y Λ e_x`.
    pub fn basis_path(&self, x: usize, y: usize, i: usize) -> &Path {
        let p = &self.pieces[x][y];
        &p.paths[p.quotient.section[i]]
    }

    /// `(I + J^N) ∩ span(paths x → y of length < N)`, in path coordinates.
    pub fn ideal(&self, x: usize, y: usize) -> &Subspace {
        &self.pieces[x][y].ideal
    }

    /// `𝔯^i(x, y)` in basis coordinates; zero for `i ≥ N`.
    pub fn radical_power(&self, x: usize, y: usize, i: usize) -> &Subspace {
        let r = &self.pieces[x][y].radical;
        &r[i.min(r.len() - 1)]
    }

    /// Image of a word `x → y` in basis coordinates.
    pub fn project_word(&self, x: usize, y: usize, word: &[usize]) -> Vec<Scalar> {
        let p = &self.pieces[x][y];
        match p.index.get(word) {
            Some(&k) => p.quotient.proj.column(k),
            None => vec![self.field.zero(); p.quotient.dim()],
        }
    }

    /// `f ∘ g` for `g ∈ e_y Λ e_x`, `f ∈ e_z Λ e_y`.
    pub fn compose(&self, x: usize, y: usize, z: usize, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim(x, z)];
        for (i, fi) in f.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let mut word = self.basis_path(y, z, i).arrows().to_vec();
                word.extend_from_slice(self.basis_path(x, y, j).arrows());
                let c = fi * gj;
                for (o, v) in out.iter_mut().zip(self.project_word(x, z, &word)) {
                    o.add_mul(&c, &v);
                }
            }
        }
        out
    }

    /// Whether all relations are homogeneous.
    pub fn is_graded(&self) -> bool {
        self.relations.iter().all(|t| t.iter().all(|(_, p)| p.len() == t[0].1.len()))
    }

    pub fn filtration(&self) -> FiltrationReport {
        let n = self.num_objects();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let layers = layer_dims(&self.pieces[x][y].radical);
                if !layers.is_empty() {
                    pairs.push(LayerDims {
                        from: self.quiver.object_name(x).to_string(),
                        to: self.quiver.object_name(y).to_string(),
                        layers,
                    });
                }
            }
        }
        FiltrationReport {
            nilpotency: self.nilpotency,
            total_dim: self.total_dim(),
            pairs,
        }
    }
}

fn build(quiver: &GradedQuiver, field: Field, relations: &[Vec<(Scalar, Path)>], big_n: usize) -> Result<Vec<Vec<AlgPiece>>> {
    let n_obj = quiver.num_objects();
    let free = CatPresentation::new(quiver.clone(), field, Vec::new(), big_n - 1)?;
    // longest paths first, so the quotient keeps short representatives
    let mut paths: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n_obj]; n_obj];
    for (x, row) in paths.iter_mut().enumerate() {
        for (y, slot) in row.iter_mut().enumerate() {
            for len in (0..big_n).rev() {
                slot.extend_from_slice(free.enumerate_paths(x, y, len)?);
            }
        }
    }
    let index: Vec<Vec<HashMap<Vec<usize>, usize>>> = paths
        .iter()
        .map(|row| {
            row.iter()
                .map(|ps| ps.iter().enumerate().map(|(i, p)| (p.arrows().to_vec(), i)).collect())
                .collect()
        })
        .collect();
    let vector = |x: usize, y: usize, terms: &[(Scalar, Vec<usize>)]| -> Vec<Scalar> {
        let mut v = vec![field.zero(); paths[x][y].len()];
        for (c, w) in terms {
            if let Some(&k) = index[x][y].get(w) {
                v[k] += c;
            }
        }
        v
    };

    let mut ideal: Vec<Vec<Subspace>> = (0..n_obj)
        .map(|x| (0..n_obj).map(|y| Subspace::zero(field, paths[x][y].len())).collect())
        .collect();
    let mut work: Vec<(usize, usize, Vec<Scalar>)> = relations
        .iter()
        .map(|t| {
            let (x, y) = (t[0].1.source(), t[0].1.target());
            let terms: Vec<(Scalar, Vec<usize>)> = t.iter().map(|(c, p)| (c.clone(), p.arrows().to_vec())).collect();
            (x, y, vector(x, y, &terms))
        })
        .collect();
    while let Some((x, y, v)) = work.pop() {
        let space = &ideal[x][y];
        if space.contains(&v) {
            continue;
        }
        let grown = space.sum(&Subspace::span(field, v.len(), vec![v.clone()]))?;
        ideal[x][y] = grown;
        let support: Vec<(Scalar, Vec<usize>)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), paths[x][y][k].arrows().to_vec()))
            .collect();
        // b ∘ v for arrows b out of y
        for b in quiver.arrows_out_of(y) {
            let z = quiver.arrow(b).target;
            let terms: Vec<(Scalar, Vec<usize>)> = support
                .iter()
                .map(|(c, w)| {
                    let mut word = vec![b];
                    word.extend_from_slice(w);
                    (c.clone(), word)
                })
                .collect();
            work.push((x, z, vector(x, z, &terms)));
        }
        // v ∘ a for arrows a into x
        for a in quiver.arrows_into(x) {
            let w0 = quiver.arrow(a).source;
            let terms: Vec<(Scalar, Vec<usize>)> = support
                .iter()
                .map(|(c, w)| {
                    let mut word = w.clone();
                    word.push(a);
                    (c.clone(), word)
                })
                .collect();
            work.push((w0, y, vector(w0, y, &terms)));
        }
    }

    let mut pieces = Vec::with_capacity(n_obj);
    for (x, (ps_row, id_row)) in paths.into_iter().zip(ideal).enumerate() {
        let mut row = Vec::with_capacity(n_obj);
        for (y, (ps, id)) in ps_row.into_iter().zip(id_row).enumerate() {
            let quotient = id.quotient_basis();
            let radical = (0..=big_n)
                .map(|i| {
                    let gens = ps
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| p.len() >= i)
                        .map(|(k, _)| quotient.proj.column(k))
                        .collect();
                    Subspace::span(field, quotient.dim(), gens)
                })
                .collect();
            row.push(AlgPiece {
                index: index[x][y].clone(),
                paths: ps,
                ideal: id,
                quotient,
                radical,
            });
        }
        pieces.push(row);
    }
    Ok(pieces)
}
