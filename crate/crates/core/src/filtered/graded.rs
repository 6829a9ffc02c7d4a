use std::sync::Arc;

use super::algebra::FDAlgebra;
use super::fmodule::{FModule, FSub};
use crate::error::{Error, Result};
use crate::gmod::{GradedModule, ModuleData};
use crate::presentation::{CatPresentation, GradedTable, Relation};
use crate::xla::{Mat, QuotientBasis, Scalar, Subspace};

/// `A_gr = ⊕ 𝔯ⁿ/𝔯ⁿ⁺¹` presented on the quiver of `A` (arrows are a basis of
/// `𝔯/𝔯²` because `I ⊆ J²`). Degree-`n` relations are a complement of the
/// consequences of lower ones inside the kernel of `kQ_n → 𝔯ⁿ/𝔯ⁿ⁺¹`.
pub fn assoc_graded(a: &FDAlgebra) -> Result<CatPresentation> {
    let big_n = a.nilpotency();
    let field = a.field();
    let n_obj = a.num_objects();
    let free = CatPresentation::new(a.quiver().clone(), field, Vec::new(), big_n)?;
    let mut relations: Vec<Relation> = Vec::new();
    for n in 2..=big_n {
        let generated = CatPresentation::new(a.quiver().clone(), field, relations.clone(), n)?;
        for x in 0..n_obj {
            for y in 0..n_obj {
                let paths = free.enumerate_paths(x, y, n)?;
                if paths.is_empty() {
                    continue;
                }
                let rows = a.dim(x, y);
                let next = a.radical_power(x, y, n + 1);
                let cols: Vec<Vec<Scalar>> = paths
                    .iter()
                    .map(|p| {
                        if n < big_n {
                            next.reduce(&a.project_word(x, y, p.arrows()))
                        } else {
                            vec![field.zero(); rows]
                        }
                    })
                    .collect();
                let kernel = if rows == 0 {
                    Subspace::full(field, paths.len())
                } else {
                    Mat::from_columns(field, rows, &cols).kernel()
                };
                let mut have = generated.ideal_piece(x, y, n)?.clone();
                debug_assert!(have.is_subspace_of(&kernel));
                for v in kernel.basis_vectors() {
                    if have.contains(&v) {
                        continue;
                    }
                    have = have.sum(&Subspace::span(field, v.len(), vec![v.clone()]))?;
                    relations.push(Relation::new(
                        v.into_iter().zip(paths.iter().cloned()).filter(|(c, _)| !c.is_zero()).collect(),
                    ));
                }
            }
        }
    }
    let out = CatPresentation::new(a.quiver().clone(), field, relations, big_n)?;
    for x in 0..n_obj {
        for y in 0..n_obj {
            for n in 0..=big_n {
                let layer = a.radical_power(x, y, n).dim() - a.radical_power(x, y, n + 1).dim();
                if out.hom_dim(x, y, n) != layer {
                    return Err(Error::NotAdmissible(format!(
                        "associated graded dimension mismatch at ({x}, {y}, {n})"
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// `rad^j K / rad^{j+1} K` at one object: representatives in the ambient
/// coordinates and the projection from `rad^j K` coordinates.
struct Layer {
    sub: Subspace,
    quotient: QuotientBasis,
    reps: Vec<Vec<Scalar>>,
}

impl Layer {
    fn new(sub: &Subspace, inner: &Subspace) -> Layer {
        let coords = inner.basis_vectors().iter().map(|v| sub.coords(v).expect("inner layer")).collect();
        let quotient = Subspace::span(sub.field(), sub.dim(), coords).quotient_basis();
        let basis = sub.basis_vectors();
        let reps = quotient.section.iter().map(|&s| basis[s].clone()).collect();
        Layer {
            sub: sub.clone(),
            quotient,
            reps,
        }
    }

    fn class(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.quotient.project(&self.sub.coords(v).expect("vector in the layer"))
    }
}

/// Radical layers of the algebra itself as a graded table, composition
/// computed in `Λ`; `check_generated_01` on it is a genuine test.
pub fn assoc_graded_table(a: &FDAlgebra) -> GradedTable {
    let big_n = a.nilpotency();
    let n_obj = a.num_objects();
    let field = a.field();
    let layers: Vec<Vec<Vec<Layer>>> = (0..n_obj)
        .map(|x| {
            (0..n_obj)
                .map(|y| (0..big_n).map(|n| Layer::new(a.radical_power(x, y, n), a.radical_power(x, y, n + 1))).collect())
                .collect()
        })
        .collect();
    let mut t = GradedTable::new(field, n_obj, big_n.saturating_sub(1));
    for x in 0..n_obj {
        for y in 0..n_obj {
            for n in 1..big_n {
                t.set_dim(x, y, n, layers[x][y][n].reps.len());
            }
        }
    }
    for x in 0..n_obj {
        for y in 0..n_obj {
            for z in 0..n_obj {
                for i in 1..big_n {
                    for j in 1..big_n - i {
                        for (ia, f) in layers[y][z][i].reps.iter().enumerate() {
                            for (jb, g) in layers[x][y][j].reps.iter().enumerate() {
                                let prod = a.compose(x, y, z, f, g);
                                let target = &layers[x][z][i + j];
                                let v = if target.reps.is_empty() { Vec::new() } else { target.class(&prod) };
                                t.set_product(x, y, z, i, ia, j, jb, v);
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

/// `G(M) = ⊕ rad^j M / rad^{j+1} M` over a presentation of `A_gr`
/// (any truncation) whose quiver is that of `A`.
pub fn g_functor_on(base: &Arc<CatPresentation>, m: &FModule) -> Result<GradedModule> {
    let alg = m.alg();
    if base.quiver() != alg.quiver() || base.field() != alg.field() {
        return Err(Error::BaseMismatch);
    }
    let q = alg.quiver();
    let n_obj = q.num_objects();
    let mut powers = vec![FSub::full(m)];
    while !powers.last().expect("nonempty").is_zero() {
        let next = powers.last().expect("nonempty").radical();
        powers.push(next);
    }
    // powers[L] = 0
    let depth = powers.len() - 1;
    let hi = depth.saturating_sub(1) as i64;
    let layers: Vec<Vec<Layer>> = (0..n_obj)
        .map(|x| {
            (0..=hi as usize)
                .map(|j| {
                    let outer = powers.get(j).map(|p| p.space(x).clone()).unwrap_or_else(|| Subspace::zero(alg.field(), m.dim(x)));
                    let inner = powers.get(j + 1).map(|p| p.space(x).clone()).unwrap_or_else(|| Subspace::zero(alg.field(), m.dim(x)));
                    Layer::new(&outer, &inner)
                })
                .collect()
        })
        .collect();
    let dims = (0..n_obj).map(|x| layers[x].iter().map(|l| l.reps.len()).collect()).collect();
    let actions = (0..q.arrows().len())
        .map(|a| {
            let arrow = q.arrow(a);
            (0..hi as usize)
                .map(|j| {
                    let src = &layers[arrow.source][j + 1];
                    let cols: Vec<Vec<Scalar>> = layers[arrow.target][j]
                        .reps
                        .iter()
                        .map(|r| src.class(&m.action(a).mul_vec(r)))
                        .collect();
                    Mat::from_columns(alg.field(), src.reps.len(), &cols)
                })
                .collect()
        })
        .collect();
    GradedModule::new(
        base.clone(),
        ModuleData {
            lo: 0,
            hi,
            complete: true,
            dims,
            actions,
        },
    )
}

/// `G(M)` over `assoc_graded(A)` with truncation `N`.
pub fn g_functor(a: &Arc<FDAlgebra>, m: &FModule) -> Result<GradedModule> {
    if m.alg() != a {
        return Err(Error::BaseMismatch);
    }
    g_functor_on(&Arc::new(assoc_graded(a)?), m)
}
