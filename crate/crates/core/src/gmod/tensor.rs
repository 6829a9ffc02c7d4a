use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{CatPresentation, HomElem};
use crate::xla::{Mat, Scalar, Subspace};

use super::module::GradedModule;
use super::sub::Submodule;

/// A finitely presented module `coker(⊕_j Hom(−, Y_j)[−n_j] → ⊕_i Hom(−, X_i)[−m_i])`.
///
/// `rows[i] = (X_i, m_i)` and `cols[j] = (Y_j, n_j)` carry the generator degrees;
/// `entries[i][j] ∈ Hom(Y_j, X_i)_{n_j − m_i}` is the `(i, j)` component.
#[derive(Clone, Debug)]
pub struct Cokernel {
    base: Arc<CatPresentation>,
    rows: Vec<(usize, i64)>,
    cols: Vec<(usize, i64)>,
    entries: Vec<Vec<Option<HomElem>>>,
}

impl Cokernel {
    pub fn new(
        base: Arc<CatPresentation>,
        rows: Vec<(usize, i64)>,
        cols: Vec<(usize, i64)>,
        entries: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Cokernel> {
        let bad = |s: String| Err(Error::InvalidModule(s));
        for &(x, _) in rows.iter().chain(&cols) {
            if x >= base.num_objects() {
                return Err(Error::UnknownObject(format!("#{x}")));
            }
        }
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return bad("entries must be a rows × cols table".into());
        }
        let mut elems = Vec::with_capacity(rows.len());
        for (i, &(x, m)) in rows.iter().enumerate() {
            let mut row = Vec::with_capacity(cols.len());
            for (j, &(y, n)) in cols.iter().enumerate() {
                let coords = &entries[i][j];
                if coords.iter().any(|c| c.field() != base.field()) {
                    return Err(Error::FieldMismatch(base.field().to_string(), "entry".into()));
                }
                if coords.iter().all(Scalar::is_zero) {
                    row.push(None);
                    continue;
                }
                let deg = n - m;
                if deg < 0 || deg > base.truncation() as i64 {
                    return bad(format!("entry ({i},{j}) would have degree {deg}"));
                }
                let dim = base.hom_dim(y, x, deg as usize);
                if coords.len() != dim {
                    return bad(format!("entry ({i},{j}) has {} coordinates, expected {dim}", coords.len()));
                }
                row.push(Some(HomElem {
                    source: y,
                    target: x,
                    degree: deg as usize,
                    coords: coords.clone(),
                }));
            }
            elems.push(row);
        }
        let entries = elems;
        Ok(Cokernel {
            base,
            rows,
            cols,
            entries,
        })
    }

    /// The representable `Hom(−, c)` generated in degree `m`.
    pub fn representable(base: Arc<CatPresentation>, c: usize, m: i64) -> Result<Cokernel> {
        Cokernel::new(base, vec![(c, m)], Vec::new(), vec![Vec::new()])
    }

    /// `S_c = Hom(−, c) / rad(−, c)`, presented by the arrows ending at `c`.
    pub fn simple(base: Arc<CatPresentation>, c: usize) -> Result<Cokernel> {
        let q = base.quiver();
        let arrows: Vec<usize> = q.arrows_into(c).collect();
        let cols = arrows.iter().map(|&a| (q.arrow(a).source, 1)).collect();
        let entries = vec![arrows.iter().map(|&a| base.arrow_elem(a).coords).collect()];
        Cokernel::new(base.clone(), vec![(c, 0)], cols, entries)
    }

    pub fn base(&self) -> &Arc<CatPresentation> {
        &self.base
    }

    pub fn rows(&self) -> &[(usize, i64)] {
        &self.rows
    }

    pub fn cols(&self) -> &[(usize, i64)] {
        &self.cols
    }

    /// `None` for zero entries.
    pub fn entry(&self, i: usize, j: usize) -> Option<&HomElem> {
        self.entries[i][j].as_ref()
    }

    /// Entry coordinates, with zero entries as empty lists.
    pub fn raw_entries(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.as_ref().map(|h| h.coords.clone()).unwrap_or_default()).collect())
            .collect()
    }

    /// Appends a column (relation) with the given entries.
    pub fn with_column(&self, y: usize, n: i64, column: Vec<Vec<Scalar>>) -> Result<Cokernel> {
        let mut cols = self.cols.clone();
        cols.push((y, n));
        let mut entries = self.raw_entries();
        for (row, c) in entries.iter_mut().zip(column) {
            row.push(c);
        }
        Cokernel::new(self.base.clone(), self.rows.clone(), cols, entries)
    }

    /// The presented module, evaluated on the window allowed by the truncation.
    pub fn to_module(&self) -> Result<GradedModule> {
        let base = &self.base;
        let free: Vec<GradedModule> = self
            .rows
            .iter()
            .map(|&(x, m)| GradedModule::projective(base, x, -m))
            .collect::<Result<_>>()?;
        let sum = GradedModule::direct_sum(base, &free)?;
        let image = Submodule::from_fn(&sum, |z, n| {
            let mut gens = Vec::new();
            for (j, &(y, nj)) in self.cols.iter().enumerate() {
                let k = n - nj;
                if k < 0 || k > base.truncation() as i64 {
                    continue;
                }
                let piece = base.hom_piece(z, y, k as usize).expect("within truncation");
                for b in 0..piece.dim() {
                    let mut h = vec![base.field().zero(); piece.dim()];
                    h[b] = base.field().one();
                    let h = HomElem {
                        source: z,
                        target: y,
                        degree: k as usize,
                        coords: h,
                    };
                    let mut v = Vec::with_capacity(sum.dim(z, n));
                    for (i, &(x, m)) in self.rows.iter().enumerate() {
                        let deg = n - m;
                        if deg < 0 || deg > base.truncation() as i64 {
                            continue;
                        }
                        let block = base.hom_dim(z, x, deg as usize);
                        match self.entry(i, j) {
                            Some(f) => v.extend(base.compose(f, &h).expect("degree within truncation").coords),
                            None => v.extend(vec![base.field().zero(); block]),
                        }
                    }
                    gens.push(v);
                }
            }
            Subspace::span(base.field(), sum.dim(z, n), gens)
        });
        Ok(image.quotient())
    }
}

/// Graded vector space `G ⊗ F`, listed on the degrees where it is determined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorDims {
    pub degrees: Vec<(i64, usize)>,
}

impl TensorDims {
    pub fn dim(&self, n: i64) -> Option<usize> {
        self.degrees.iter().find(|(d, _)| *d == n).map(|&(_, k)| k)
    }
}

/// `G ⊗ F` for `G` presented over the opposite of `F`'s presentation:
/// the cokernel of `(F(f_ij)) : ⊕_j F(Y_j)[−n_j] → ⊕_i F(X_i)[−m_i]`.
pub fn tensor(g: &Cokernel, f: &GradedModule) -> Result<TensorDims> {
    let p = f.base();
    if **g.base() != p.opposite() {
        return Err(Error::BaseMismatch);
    }
    let field = f.field();
    // entries live in Hom_{op}(Y_j, X_i) = Hom_p(X_i, Y_j)
    let op = g.base();
    let mut maps: Vec<Vec<Option<HomElem>>> = Vec::new();
    for i in 0..g.rows.len() {
        let mut row = Vec::new();
        for j in 0..g.cols.len() {
            row.push(match g.entry(i, j) {
                Some(e) => Some(transfer_to_opposite(op, p, e)?),
                None => None,
            });
        }
        maps.push(row);
    }
    let shifts = g.rows.iter().chain(&g.cols).map(|&(_, m)| m);
    let lo = f.lo() + shifts.clone().min().unwrap_or(0);
    let hi = f.hi() + shifts.max().unwrap_or(0);
    let mut degrees = Vec::new();
    for n in lo..=hi {
        let needed = g.rows.iter().chain(&g.cols).all(|&(_, m)| f.is_known(n - m));
        if !needed {
            continue;
        }
        let row_dims: Vec<usize> = g.rows.iter().map(|&(x, m)| f.dim(x, n - m)).collect();
        let total: usize = row_dims.iter().sum();
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        for (j, &(y, nj)) in g.cols.iter().enumerate() {
            for b in 0..f.dim(y, n - nj) {
                let mut e = vec![field.zero(); f.dim(y, n - nj)];
                e[b] = field.one();
                let mut col = Vec::with_capacity(total);
                for (i, h) in maps.iter().map(|r| &r[j]).enumerate() {
                    match h {
                        Some(h) => col.extend(f.apply_hom(h, n - nj, &e)),
                        None => col.extend(vec![field.zero(); row_dims[i]]),
                    }
                }
                columns.push(col);
            }
        }
        let rank = Mat::from_columns(field, total, &columns).rank();
        degrees.push((n, total - rank));
    }
    Ok(TensorDims { degrees })
}

/// Reads an element of `Hom_{op}(y, x)` as the element of `Hom_p(x, y)` with
/// the same paths reversed.
pub fn transfer_to_opposite(op: &CatPresentation, p: &CatPresentation, e: &HomElem) -> Result<HomElem> {
    let piece = op.hom_piece(e.source, e.target, e.degree)?;
    let terms: Vec<(Scalar, crate::presentation::Path)> = e
        .coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (c.clone(), piece.basis_path(k).reversed()))
        .collect();
    p.elem_from_paths(e.target, e.source, e.degree, &terms)
}
