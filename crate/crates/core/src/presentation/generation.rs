use std::collections::HashMap;

use serde::Serialize;

use super::category::{CatPresentation, HomElem};
use crate::xla::{Field, Scalar, Subspace};

/// Anything with finite-dimensional graded hom-spaces and a composition law
/// on basis elements.
pub trait GradedCategory {
    fn field(&self) -> Field;
    fn num_objects(&self) -> usize;
    fn max_degree(&self) -> usize;
    fn hom_dim(&self, x: usize, y: usize, n: usize) -> usize;
    /// Coordinates of `f ∘ g` in `Hom(x, z)_{i+j}`, where `f` is basis element
    /// `a` of `Hom(y, z)_i` and `g` is basis element `b` of `Hom(x, y)_j`.
    fn compose_basis(&self, x: usize, y: usize, z: usize, i: usize, a: usize, j: usize, b: usize) -> Vec<Scalar>;
}

impl GradedCategory for CatPresentation {
    fn field(&self) -> Field {
        CatPresentation::field(self)
    }

    fn num_objects(&self) -> usize {
        CatPresentation::num_objects(self)
    }

    fn max_degree(&self) -> usize {
        self.truncation()
    }

    fn hom_dim(&self, x: usize, y: usize, n: usize) -> usize {
        CatPresentation::hom_dim(self, x, y, n)
    }

    fn compose_basis(&self, x: usize, y: usize, z: usize, i: usize, a: usize, j: usize, b: usize) -> Vec<Scalar> {
        let unit = |s: usize, t: usize, n: usize, k: usize| {
            let mut coords = vec![self.field().zero(); self.hom_dim(s, t, n)];
            coords[k] = self.field().one();
            HomElem {
                source: s,
                target: t,
                degree: n,
                coords,
            }
        };
        self.compose(&unit(y, z, i, a), &unit(x, y, j, b))
            .expect("degrees within truncation")
            .coords
    }
}

/// A graded category given by explicit dimension and product tables.
/// Missing products are zero.
#[derive(Clone, Debug)]
pub struct GradedTable {
    field: Field,
    objects: usize,
    max_degree: usize,
    dims: HashMap<(usize, usize, usize), usize>,
    products: HashMap<(usize, usize, usize, usize, usize, usize, usize), Vec<Scalar>>,
}

impl GradedTable {
    /// Identities in degree 0 are installed for every object.
    pub fn new(field: Field, objects: usize, max_degree: usize) -> GradedTable {
        let mut t = GradedTable {
            field,
            objects,
            max_degree,
            dims: HashMap::new(),
            products: HashMap::new(),
        };
        for x in 0..objects {
            t.dims.insert((x, x, 0), 1);
        }
        t
    }

    pub fn set_dim(&mut self, x: usize, y: usize, n: usize, d: usize) {
        self.dims.insert((x, y, n), d);
    }

    #[allow(clippy::too_many_arguments)]
    pub fn set_product(&mut self, x: usize, y: usize, z: usize, i: usize, a: usize, j: usize, b: usize, v: Vec<Scalar>) {
        self.products.insert((x, y, z, i, a, j, b), v);
    }
}

impl GradedCategory for GradedTable {
    fn field(&self) -> Field {
        self.field
    }

    fn num_objects(&self) -> usize {
        self.objects
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn hom_dim(&self, x: usize, y: usize, n: usize) -> usize {
        self.dims.get(&(x, y, n)).copied().unwrap_or(0)
    }

    fn compose_basis(&self, x: usize, y: usize, z: usize, i: usize, a: usize, j: usize, b: usize) -> Vec<Scalar> {
        let n = self.hom_dim(x, z, i + j);
        if i == 0 && y == z {
            // identity on the left
            let mut v = vec![self.field.zero(); n];
            v[b] = self.field.one();
            return v;
        }
        if j == 0 && x == y {
            let mut v = vec![self.field.zero(); n];
            v[a] = self.field.one();
            return v;
        }
        self.products
            .get(&(x, y, z, i, a, j, b))
            .cloned()
            .unwrap_or_else(|| vec![self.field.zero(); n])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedReport {
    pub generated: bool,
    /// `(degree, source, target)` of the first hom-space not spanned by products.
    pub first_failure: Option<(usize, usize, usize)>,
    pub truncation: usize,
}

/// Checks `Hom(x, z)_r = Σ_y Hom(y, z)_1 · Hom(x, y)_{r-1}` for `1 ≤ r ≤ D`,
/// which by induction says degree-`r` morphisms are sums of composites of
/// degree-one morphisms.
pub fn check_generated_01<C: GradedCategory + ?Sized>(c: &C) -> GeneratedReport {
    let n_obj = c.num_objects();
    let field = c.field();
    for r in 2..=c.max_degree() {
        for x in 0..n_obj {
            for z in 0..n_obj {
                let target = c.hom_dim(x, z, r);
                if target == 0 {
                    continue;
                }
                let mut gens = Vec::new();
                for y in 0..n_obj {
                    for a in 0..c.hom_dim(y, z, 1) {
                        for b in 0..c.hom_dim(x, y, r - 1) {
                            gens.push(c.compose_basis(x, y, z, 1, a, r - 1, b));
                        }
                    }
                }
                if Subspace::span(field, target, gens).dim() < target {
                    return GeneratedReport {
                        generated: false,
                        first_failure: Some((r, x, z)),
                        truncation: c.max_degree(),
                    };
                }
            }
        }
    }
    GeneratedReport {
        generated: true,
        first_failure: None,
        truncation: c.max_degree(),
    }
}
