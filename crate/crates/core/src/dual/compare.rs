use std::sync::Arc;

use serde::Serialize;

use super::ext::ext_algebra;
use super::quadratic::quadratic_dual;
use crate::error::Result;
use crate::presentation::CatPresentation;
use crate::resolve::with_room_for;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimMismatch {
    pub from: String,
    pub to: String,
    pub degree: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualComparison {
    /// `dim Ext^i(S_C, S_D) = dim Hom_{A!}(C, D)_i` for `i ≤ m`.
    pub ext_matches_dual: bool,
    /// `(I₂^⊥)^⊥ = I₂` for every pair of objects.
    pub double_orthogonal: bool,
    /// `dim Ext^i_{A!}(S_C, S_D) = dim Hom_A(C, D)_i` for `i ≤ m`.
    pub double_ext_matches: bool,
    pub mismatches: Vec<DimMismatch>,
    pub hom_degree: usize,
}

impl DualComparison {
    pub fn all_agree(&self) -> bool {
        self.ext_matches_dual && self.double_orthogonal && self.double_ext_matches
    }
}

/// Compares a quadratic presentation with its quadratic dual three ways.
pub fn koszul_dual_compare(p: &Arc<CatPresentation>, m: usize) -> Result<DualComparison> {
    let p = with_room_for(p, m);
    let dual = Arc::new(quadratic_dual(&p)?);
    let n = p.num_objects();
    let name = |c: usize| p.object_name(c).to_string();
    let mut mismatches = Vec::new();

    let ext = ext_algebra(&p, m)?;
    let mut ext_matches_dual = true;
    for c in 0..n {
        for d in 0..n {
            for i in 0..=m {
                let (l, r) = (ext.dim(c, d, i), dual.hom_dim(c, d, i));
                if l != r {
                    ext_matches_dual = false;
                    mismatches.push(DimMismatch { from: name(c), to: name(d), degree: i, left: l, right: r });
                }
            }
        }
    }

    let back = quadratic_dual(&dual)?;
    let double_orthogonal = (0..n).all(|x| {
        (0..n).all(|z| match (p.ideal_piece(x, z, 2), back.ideal_piece(x, z, 2)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        })
    });

    let ext_dual = ext_algebra(&dual, m)?;
    let mut double_ext_matches = true;
    for c in 0..n {
        for d in 0..n {
            for i in 0..=m {
                let (l, r) = (ext_dual.dim(c, d, i), p.hom_dim(c, d, i));
                if l != r {
                    double_ext_matches = false;
                    mismatches.push(DimMismatch { from: name(c), to: name(d), degree: i, left: l, right: r });
                }
            }
        }
    }

    Ok(DualComparison {
        ext_matches_dual,
        double_orthogonal,
        double_ext_matches,
        mismatches,
        hom_degree: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xla::Field;

    #[test]
    fn two_loop_commutative_agrees() {
        let p = Arc::new(
            CatPresentation::from_spec(
                Field::Prime(101),
                &["v"],
                &[("x", "v", "v"), ("y", "v", "v")],
                &[&[(1, &["x", "y"]), (-1, &["y", "x"])]],
                4,
            )
            .unwrap(),
        );
        let r = koszul_dual_compare(&p, 4).unwrap();
        assert!(r.all_agree(), "{r:?}");
    }
}
