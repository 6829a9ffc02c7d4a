use crate::error::{Error, Result};
use crate::presentation::{CatPresentation, GradedQuiver, Path, Relation};
use crate::xla::{Scalar, Subspace};

/// `a ↦ a*` and `a* ↦ a`, so dualizing twice restores every name.
pub fn dual_arrow_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(stem) => stem.to_string(),
        None => format!("{name}*"),
    }
}

/// Opposite quiver with starred names: `a: X → Y` becomes `a*: Y → X`.
pub fn dual_quiver(q: &GradedQuiver) -> GradedQuiver {
    let arrows: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| {
            (
                dual_arrow_name(&a.name),
                q.object_name(a.target).to_string(),
                q.object_name(a.source).to_string(),
            )
        })
        .collect();
    GradedQuiver::new(q.objects(), &arrows).expect("dual of a valid quiver is valid")
}

/// The path `a₁* ⋯ aₙ*` paired with `aₙ ⋯ a₁`; arrow ids agree in both quivers.
fn dual_path(dq: &GradedQuiver, p: &Path) -> Path {
    Path::new(dq, p.arrows().iter().rev().copied().collect()).expect("reversed path composes in the dual quiver")
}

/// `I₂(x, z)` transported into the coordinates of the dual paths `z → x`
/// and annihilated under the Kronecker pairing.
pub fn orthogonal_relations(p: &CatPresentation, dual: &CatPresentation, x: usize, z: usize) -> Result<Subspace> {
    let paths = p.enumerate_paths(x, z, 2)?;
    let dual_piece = dual.hom_piece(z, x, 2)?;
    let width = dual_piece.paths().len();
    let ideal = p.ideal_piece(x, z, 2)?;
    let moved: Vec<Vec<Scalar>> = ideal
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let mut w = vec![p.field().zero(); width];
            for (k, c) in v.into_iter().enumerate() {
                let dp = dual_path(dual.quiver(), &paths[k]);
                w[dual_piece.path_index(&dp).expect("dual path enumerated")] = c;
            }
            w
        })
        .collect();
    Ok(Subspace::span(p.field(), width, moved).annihilator())
}

/// `T(E) / ⟨I₂^⊥⟩` on the dual quiver. Fails on relations of degree ≠ 2.
pub fn quadratic_dual(p: &CatPresentation) -> Result<CatPresentation> {
    for (index, r) in p.relations().iter().enumerate() {
        if r.degree() != 2 {
            return Err(Error::NotQuadratic {
                index,
                degree: r.degree(),
            });
        }
    }
    let dq = dual_quiver(p.quiver());
    // relation-free dual with enough room to enumerate length-2 paths
    let free = CatPresentation::new(dq.clone(), p.field(), Vec::new(), p.truncation().max(2))?;
    let n = p.num_objects();
    let mut relations = Vec::new();
    for z in 0..n {
        for x in 0..n {
            let perp = orthogonal_relations(p, &free, x, z)?;
            let paths = free.enumerate_paths(z, x, 2)?;
            for v in perp.basis_vectors() {
                relations.push(Relation::new(
                    v.into_iter().zip(paths.iter().cloned()).filter(|(c, _)| !c.is_zero()).collect(),
                ));
            }
        }
    }
    CatPresentation::new(dq, p.field(), relations, p.truncation())
}
