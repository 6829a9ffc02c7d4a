use crate::error::{Error, Result};
use crate::xla::{Mat, Scalar, Subspace};

use super::module::{GradedModule, ModuleData};

/// A subfunctor: one subspace per object and window degree, closed under
/// every arrow action.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule {
    parent: GradedModule,
    /// `spaces[x][n - lo]`
    spaces: Vec<Vec<Subspace>>,
}

impl Submodule {
    /// Verifies closure under the arrow actions.
    pub fn new(parent: &GradedModule, spaces: Vec<Vec<Subspace>>) -> Result<Submodule> {
        let s = Submodule {
            parent: parent.clone(),
            spaces,
        };
        let base = parent.base();
        for (a, arrow) in base.quiver().arrows().iter().enumerate() {
            for n in parent.lo()..parent.hi() {
                for v in s.space(arrow.target, n).basis_vectors() {
                    if !s.space(arrow.source, n + 1).contains(&parent.act(a, n, &v)) {
                        return Err(Error::InvalidModule(format!(
                            "subspaces not closed under arrow {:?} in degree {n}",
                            arrow.name
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn full(parent: &GradedModule) -> Submodule {
        Submodule::from_fn(parent, |x, n| Subspace::full(parent.field(), parent.dim(x, n)))
    }

    pub fn zero(parent: &GradedModule) -> Submodule {
        Submodule::from_fn(parent, |x, n| Subspace::zero(parent.field(), parent.dim(x, n)))
    }

    pub(crate) fn from_fn(parent: &GradedModule, mut f: impl FnMut(usize, i64) -> Subspace) -> Submodule {
        let spaces = (0..parent.base().num_objects())
            .map(|x| (parent.lo()..=parent.hi()).map(|n| f(x, n)).collect())
            .collect();
        Submodule {
            parent: parent.clone(),
            spaces,
        }
    }

    pub fn parent(&self) -> &GradedModule {
        &self.parent
    }

    /// Subspace of `F(x)_n`; outside the window this is the zero space.
    pub fn space(&self, x: usize, n: i64) -> Subspace {
        if self.parent.in_window(n) {
            self.spaces[x][(n - self.parent.lo()) as usize].clone()
        } else {
            Subspace::zero(self.parent.field(), 0)
        }
    }

    fn space_ref(&self, x: usize, n: i64) -> &Subspace {
        &self.spaces[x][(n - self.parent.lo()) as usize]
    }

    pub fn dim(&self, x: usize, n: i64) -> usize {
        if self.parent.in_window(n) {
            self.space_ref(x, n).dim()
        } else {
            0
        }
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().flatten().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `rad S`: spanned by arrow images of `S` one degree lower.
    pub fn radical(&self) -> Submodule {
        let p = &self.parent;
        let q = p.base().quiver();
        Submodule::from_fn(p, |x, n| {
            let mut gens = Vec::new();
            if n > p.lo() {
                for a in q.arrows_out_of(x) {
                    let y = q.arrow(a).target;
                    for v in self.space_ref(y, n - 1).basis_vectors() {
                        gens.push(p.act(a, n - 1, &v));
                    }
                }
            }
            Subspace::span(p.field(), p.dim(x, n), gens)
        })
    }

    /// `rad^k S`.
    pub fn radical_power(&self, k: usize) -> Submodule {
        let mut s = self.clone();
        for _ in 0..k {
            s = s.radical();
        }
        s
    }

    fn zip_with(&self, other: &Submodule, f: impl Fn(&Subspace, &Subspace) -> Subspace) -> Result<Submodule> {
        if self.parent != other.parent {
            return Err(Error::BaseMismatch);
        }
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| a.iter().zip(b).map(|(s, t)| f(s, t)).collect())
            .collect();
        Ok(Submodule {
            parent: self.parent.clone(),
            spaces,
        })
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.zip_with(other, |s, t| s.intersect(t).expect("same ambient"))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.zip_with(other, |s, t| s.sum(t).expect("same ambient"))
    }

    pub fn is_contained_in(&self, other: &Submodule) -> bool {
        self.spaces
            .iter()
            .flatten()
            .zip(other.spaces.iter().flatten())
            .all(|(s, t)| s.is_subspace_of(t))
    }

    /// The subfunctor as a module in its own right, in RREF-basis coordinates.
    pub fn to_module(&self) -> GradedModule {
        let p = &self.parent;
        let base = p.base();
        let dims = self.spaces.iter().map(|d| d.iter().map(Subspace::dim).collect()).collect();
        let actions = base
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                (p.lo()..p.hi())
                    .map(|n| {
                        let src = self.space_ref(arrow.target, n);
                        let dst = self.space_ref(arrow.source, n + 1);
                        let cols: Vec<Vec<Scalar>> = src
                            .basis_vectors()
                            .iter()
                            .map(|v| dst.coords(&p.act(a, n, v)).expect("closed under actions"))
                            .collect();
                        Mat::from_columns(p.field(), dst.dim(), &cols)
                    })
                    .collect()
            })
            .collect();
        GradedModule::assemble(
            base.clone(),
            ModuleData {
                lo: p.lo(),
                hi: p.hi(),
                complete: p.is_complete(),
                dims,
                actions,
            },
            p.is_lower_open(),
        )
    }

    /// `F / S` in canonical quotient coordinates.
    pub fn quotient(&self) -> GradedModule {
        let p = &self.parent;
        let base = p.base();
        let qb: Vec<Vec<_>> = self
            .spaces
            .iter()
            .map(|d| d.iter().map(Subspace::quotient_basis).collect())
            .collect();
        let at = |x: usize, n: i64| &qb[x][(n - p.lo()) as usize];
        let dims = qb.iter().map(|d| d.iter().map(|q| q.dim()).collect()).collect();
        let actions = base
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                (p.lo()..p.hi())
                    .map(|n| {
                        let src = at(arrow.target, n);
                        let dst = at(arrow.source, n + 1);
                        let cols: Vec<Vec<Scalar>> = src
                            .section
                            .iter()
                            .map(|&c| {
                                let mut e = vec![p.field().zero(); p.dim(arrow.target, n)];
                                e[c] = p.field().one();
                                dst.project(&p.act(a, n, &e))
                            })
                            .collect();
                        Mat::from_columns(p.field(), dst.dim(), &cols)
                    })
                    .collect()
            })
            .collect();
        GradedModule::assemble(
            base.clone(),
            ModuleData {
                lo: p.lo(),
                hi: p.hi(),
                complete: p.is_complete(),
                dims,
                actions,
            },
            p.is_lower_open(),
        )
    }
}

/// `rad F` as a subfunctor of `F`.
pub fn radical(f: &GradedModule) -> Submodule {
    Submodule::full(f).radical()
}

/// `rad^k F`; `k = 0` gives `F` itself.
pub fn ideal_product(k: usize, f: &GradedModule) -> Submodule {
    Submodule::full(f).radical_power(k)
}

/// `F / rad F`.
pub fn top(f: &GradedModule) -> GradedModule {
    radical(f).quotient()
}
