use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::xla::{Mat, Scalar};

use super::module::GradedModule;

/// A natural transformation `source → target[shift]`, one block per
/// `(object, degree)`; missing blocks are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    pub source: GradedModule,
    pub target: GradedModule,
    pub shift: i64,
    pub blocks: BTreeMap<(usize, i64), Mat>,
}

impl ModuleMap {
    /// `source(x)_n → target(x)_{n+shift}`.
    pub fn block(&self, x: usize, n: i64) -> Mat {
        self.blocks.get(&(x, n)).cloned().unwrap_or_else(|| {
            Mat::zeros(
                self.source.field(),
                self.target.dim(x, n + self.shift),
                self.source.dim(x, n),
            )
        })
    }

    /// Exact commutation with every arrow on the source window.
    pub fn is_natural(&self) -> bool {
        let base = self.source.base();
        base.quiver().arrows().iter().enumerate().all(|(a, arrow)| {
            (self.source.lo()..=self.source.hi()).all(|n| {
                let left = self.target.action(a, n + self.shift).mul(&self.block(arrow.target, n));
                let right = self.block(arrow.source, n + 1).mul(&self.source.action(a, n));
                left == right
            })
        })
    }
}

/// `Hom_{Gr₀}(F, G)` on the common window.
#[derive(Clone, Debug)]
pub struct NatSpace {
    pub dim: usize,
    /// Degrees on which maps were solved for.
    pub window: (i64, i64),
    /// False when part of `F` or `G` beyond the truncation could add constraints or maps.
    pub exact: bool,
    pub basis: Vec<ModuleMap>,
}

/// Solves the naturality system `G(a) φ_Y = φ_X F(a)` arrow by arrow.
///
/// When `F` is not complete the answer is `Hom(F_{≤t}, G)` for the last
/// known degree `t`.
pub fn hom_degree0(f: &GradedModule, g: &GradedModule) -> Result<NatSpace> {
    if f.base() != g.base() {
        return Err(Error::BaseMismatch);
    }
    let base = f.base();
    let field = f.field();
    let lo = f.lo().max(g.lo());
    let hi = f.hi().min(g.hi());
    let exact = f.is_complete() && (g.is_complete() || g.hi() > f.hi());
    let n_obj = base.num_objects();

    let mut offsets: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    let mut unknowns = 0;
    for n in lo..=hi {
        for x in 0..n_obj {
            offsets.insert((x, n), unknowns);
            unknowns += g.dim(x, n) * f.dim(x, n);
        }
    }
    let var = |x: usize, n: i64, r: usize, c: usize| -> Option<usize> {
        offsets.get(&(x, n)).map(|&o| o + r * f.dim(x, n) + c)
    };

    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for (a, arrow) in base.quiver().arrows().iter().enumerate() {
        let (x, y) = (arrow.source, arrow.target);
        for n in lo..=hi {
            if n + 1 > g.hi() && !g.is_complete() {
                continue;
            }
            let ga = g.action(a, n);
            let fa = f.action(a, n);
            for r in 0..g.dim(x, n + 1) {
                for c in 0..f.dim(y, n) {
                    let mut eq: Vec<(usize, Scalar)> = Vec::new();
                    for k in 0..g.dim(y, n) {
                        let coeff = ga.get(r, k);
                        if !coeff.is_zero() {
                            eq.push((var(y, n, k, c).expect("in range"), coeff.clone()));
                        }
                    }
                    if n + 1 <= hi {
                        for k in 0..f.dim(x, n + 1) {
                            let coeff = fa.get(k, c);
                            if !coeff.is_zero() {
                                eq.push((var(x, n + 1, r, k).expect("in range"), -coeff));
                            }
                        }
                    }
                    if !eq.is_empty() {
                        rows.push(eq);
                    }
                }
            }
        }
    }
    let mut system = Mat::zeros(field, rows.len(), unknowns);
    for (i, eq) in rows.into_iter().enumerate() {
        for (j, s) in eq {
            let mut cur = system.get(i, j).clone();
            cur += &s;
            system.set(i, j, cur);
        }
    }
    let kernel = system.kernel();
    let basis = kernel
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let mut blocks = BTreeMap::new();
            for (&(x, n), &o) in &offsets {
                let (r, c) = (g.dim(x, n), f.dim(x, n));
                if r * c == 0 {
                    continue;
                }
                let mut m = Mat::zeros(field, r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, v[o + i * c + j].clone());
                    }
                }
                blocks.insert((x, n), m);
            }
            ModuleMap {
                source: f.clone(),
                target: g.clone(),
                shift: 0,
                blocks,
            }
        })
        .collect();
    Ok(NatSpace {
        dim: kernel.dim(),
        window: (lo, hi),
        exact,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::presentation::CatPresentation;
    use crate::xla::Field;

    #[test]
    fn simples_and_yoneda() {
        let p = Arc::new(
            CatPresentation::from_spec(
                Field::Prime(101),
                &["1", "2", "3"],
                &[("a", "1", "2"), ("b", "2", "3")],
                &[],
                4,
            )
            .unwrap(),
        );
        let s1 = GradedModule::simple(&p, 0).unwrap();
        let s2 = GradedModule::simple(&p, 1).unwrap();
        assert_eq!(hom_degree0(&s1, &s1).unwrap().dim, 1);
        assert_eq!(hom_degree0(&s1, &s2).unwrap().dim, 0);
        let p3 = GradedModule::projective(&p, 2, 0).unwrap();
        for c in 0..3 {
            for j in 0..=2 {
                let pc = GradedModule::projective(&p, c, -j).unwrap();
                let h = hom_degree0(&pc, &p3).unwrap();
                assert_eq!(h.dim, p3.dim(c, j), "object {c} degree {j}");
                assert!(h.basis.iter().all(ModuleMap::is_natural));
            }
        }
    }
}
