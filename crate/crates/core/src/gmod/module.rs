use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentation::{CatPresentation, HomElem, Path};
use crate::xla::{Field, Mat, Scalar};

/// A contravariant graded functor stored on the degree window `[lo, hi]`.
///
/// Below `lo` the functor is zero unless `lower_open` is set (which only
/// happens for duals of modules whose top is unknown). Above `hi` it is zero
/// when `complete`, and unknown otherwise.
///
/// An arrow `a: X → Y` acts by `F(a)_n : F(Y)_n → F(X)_{n+1}`; matrices act on
/// column vectors.
#[derive(Clone, Debug)]
pub struct GradedModule {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    base: Arc<CatPresentation>,
    lo: i64,
    hi: i64,
    complete: bool,
    lower_open: bool,
    /// `dims[x][n - lo]`
    dims: Vec<Vec<usize>>,
    /// `actions[a][n - lo]` for `lo ≤ n < hi`
    actions: Vec<Vec<Mat>>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&*self.inner, &*other.inner);
        a.lo == b.lo
            && a.hi == b.hi
            && a.complete == b.complete
            && a.lower_open == b.lower_open
            && a.dims == b.dims
            && a.actions == b.actions
            && a.base == b.base
    }
}

/// Raw data for [`GradedModule::new`].
pub struct ModuleData {
    pub lo: i64,
    pub hi: i64,
    pub complete: bool,
    pub dims: Vec<Vec<usize>>,
    pub actions: Vec<Vec<Mat>>,
}

impl GradedModule {
    /// Checks shapes, fields, and that every relation acts as zero.
    pub fn new(base: Arc<CatPresentation>, data: ModuleData) -> Result<GradedModule> {
        let m = GradedModule::assemble(base, data, false);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn assemble(base: Arc<CatPresentation>, data: ModuleData, lower_open: bool) -> GradedModule {
        GradedModule {
            inner: Arc::new(Inner {
                base,
                lo: data.lo,
                hi: data.hi,
                complete: data.complete,
                lower_open,
                dims: data.dims,
                actions: data.actions,
            }),
        }
    }

    fn validate(&self) -> Result<()> {
        let base = self.base();
        let width = self.width();
        let bad = |s: String| Err(Error::InvalidModule(s));
        if self.inner.dims.len() != base.num_objects() || self.inner.dims.iter().any(|d| d.len() != width) {
            return bad("dimension table does not match objects and window".into());
        }
        if self.inner.actions.len() != base.quiver().arrows().len() {
            return bad("one action list per arrow expected".into());
        }
        for (a, per_degree) in self.inner.actions.iter().enumerate() {
            if per_degree.len() != width.saturating_sub(1) {
                return bad(format!("arrow {:?}: wrong number of degree slices", base.quiver().arrow(a).name));
            }
            let arrow = base.quiver().arrow(a);
            for (k, m) in per_degree.iter().enumerate() {
                let n = self.lo() + k as i64;
                if m.field() != self.field() {
                    return Err(Error::FieldMismatch(self.field().to_string(), m.field().to_string()));
                }
                if (m.rows(), m.cols()) != (self.dim(arrow.source, n + 1), self.dim(arrow.target, n)) {
                    return bad(format!("arrow {:?} at degree {n}: wrong matrix shape", arrow.name));
                }
            }
        }
        for (i, r) in base.relations().iter().enumerate() {
            for n in self.lo()..=self.hi() - r.degree() as i64 {
                let mut total = Mat::zeros(self.field(), self.dim(r.source(), n + r.degree() as i64), self.dim(r.target(), n));
                for (c, p) in r.terms() {
                    total = total.add(&self.path_matrix(p, n).scale(c));
                }
                if !total.is_zero() {
                    return bad(format!("relation #{i} does not act as zero in degree {n}"));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<CatPresentation> {
        &self.inner.base
    }

    pub fn field(&self) -> Field {
        self.inner.base.field()
    }

    pub fn lo(&self) -> i64 {
        self.inner.lo
    }

    pub fn hi(&self) -> i64 {
        self.inner.hi
    }

    /// Zero above `hi`.
    pub fn is_complete(&self) -> bool {
        self.inner.complete
    }

    /// Unknown below `lo`.
    pub fn is_lower_open(&self) -> bool {
        self.inner.lower_open
    }

    fn width(&self) -> usize {
        (self.inner.hi - self.inner.lo + 1).max(0) as usize
    }

    pub fn in_window(&self, n: i64) -> bool {
        self.lo() <= n && n <= self.hi()
    }

    /// Whether `F(−)_n` is determined (inside the window or a known-zero region).
    pub fn is_known(&self, n: i64) -> bool {
        self.in_window(n) || (n < self.lo() && !self.is_lower_open()) || (n > self.hi() && self.is_complete())
    }

    /// `dim F(x)_n`; zero outside the window.
    pub fn dim(&self, x: usize, n: i64) -> usize {
        if self.in_window(n) {
            self.inner.dims[x][(n - self.lo()) as usize]
        } else {
            0
        }
    }

    pub fn total_dim(&self) -> usize {
        self.inner.dims.iter().flatten().sum()
    }

    pub fn degree_dim(&self, n: i64) -> usize {
        (0..self.base().num_objects()).map(|x| self.dim(x, n)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `dims[x][n - lo]` over the window.
    pub fn dims(&self) -> &[Vec<usize>] {
        &self.inner.dims
    }

    /// `F(a)_n : F(Y)_n → F(X)_{n+1}` for `a: X → Y`.
    pub fn action(&self, a: usize, n: i64) -> Mat {
        let arrow = self.base().quiver().arrow(a);
        if self.in_window(n) && self.in_window(n + 1) {
            self.inner.actions[a][(n - self.lo()) as usize].clone()
        } else {
            Mat::zeros(self.field(), self.dim(arrow.source, n + 1), self.dim(arrow.target, n))
        }
    }

    fn action_ref(&self, a: usize, n: i64) -> Option<&Mat> {
        if self.in_window(n) && self.in_window(n + 1) {
            Some(&self.inner.actions[a][(n - self.lo()) as usize])
        } else {
            None
        }
    }

    /// `F(a)_n v`.
    pub fn act(&self, a: usize, n: i64, v: &[Scalar]) -> Vec<Scalar> {
        match self.action_ref(a, n) {
            Some(m) => m.mul_vec(v),
            None => {
                let src = self.base().quiver().arrow(a).source;
                vec![self.field().zero(); self.dim(src, n + 1)]
            }
        }
    }

    /// `F(p) v` for `v ∈ F(target p)_n`.
    pub fn apply_path(&self, p: &Path, n: i64, v: &[Scalar]) -> Vec<Scalar> {
        let mut cur = v.to_vec();
        for (k, &a) in p.arrows().iter().enumerate() {
            cur = self.act(a, n + k as i64, &cur);
        }
        cur
    }

    pub fn path_matrix(&self, p: &Path, n: i64) -> Mat {
        let rows = self.dim(p.source(), n + p.len() as i64);
        let cols = self.dim(p.target(), n);
        let columns: Vec<Vec<Scalar>> = (0..cols)
            .map(|j| {
                let mut e = vec![self.field().zero(); cols];
                e[j] = self.field().one();
                self.apply_path(p, n, &e)
            })
            .collect();
        Mat::from_columns(self.field(), rows, &columns)
    }

    /// `F(h) v` for a hom element `h: X → Y` and `v ∈ F(Y)_n`.
    pub fn apply_hom(&self, h: &HomElem, n: i64, v: &[Scalar]) -> Vec<Scalar> {
        let piece = self.base().hom_piece(h.source, h.target, h.degree).expect("hom element within truncation");
        let mut out = vec![self.field().zero(); self.dim(h.source, n + h.degree as i64)];
        for (i, c) in h.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = self.apply_path(piece.basis_path(i), n, v);
            for (o, x) in out.iter_mut().zip(&w) {
                o.add_mul(c, x);
            }
        }
        out
    }

    pub fn zero(base: Arc<CatPresentation>) -> GradedModule {
        let n = base.num_objects();
        let arrows = base.quiver().arrows().len();
        GradedModule::assemble(
            base,
            ModuleData {
                lo: 0,
                hi: -1,
                complete: true,
                dims: vec![Vec::new(); n],
                actions: vec![Vec::new(); arrows],
            },
            false,
        )
    }

    /// `Hom(−, c)[m]`: degree `n` is `Hom(−, c)_{n+m}`, so the generator sits in degree `−m`.
    pub fn projective(base: &Arc<CatPresentation>, c: usize, m: i64) -> Result<GradedModule> {
        if c >= base.num_objects() {
            return Err(Error::UnknownObject(format!("#{c}")));
        }
        let d = base.truncation() as i64;
        let (lo, hi) = (-m, d - m);
        let n_obj = base.num_objects();
        let dims = (0..n_obj)
            .map(|x| (0..=d).map(|k| base.hom_dim(x, c, k as usize)).collect())
            .collect();
        let actions = (0..base.quiver().arrows().len())
            .map(|a| {
                (0..d)
                    .map(|k| base.right_action(a, c, k as usize).expect("within truncation"))
                    .collect()
            })
            .collect();
        Ok(GradedModule::assemble(
            base.clone(),
            ModuleData {
                lo,
                hi,
                complete: base.vanishes_from(c, base.truncation()),
                dims,
                actions,
            },
            false,
        ))
    }

    /// `S_c`: one-dimensional at `c` in degree 0, zero elsewhere.
    pub fn simple(base: &Arc<CatPresentation>, c: usize) -> Result<GradedModule> {
        if c >= base.num_objects() {
            return Err(Error::UnknownObject(format!("#{c}")));
        }
        let dims = (0..base.num_objects()).map(|x| vec![usize::from(x == c)]).collect();
        Ok(GradedModule::assemble(
            base.clone(),
            ModuleData {
                lo: 0,
                hi: 0,
                complete: true,
                dims,
                actions: vec![Vec::new(); base.quiver().arrows().len()],
            },
            false,
        ))
    }

    /// `F[j]`, with `F[j]_n = F_{n+j}`.
    pub fn shift(&self, j: i64) -> GradedModule {
        let i = &self.inner;
        GradedModule::assemble(
            i.base.clone(),
            ModuleData {
                lo: i.lo - j,
                hi: i.hi - j,
                complete: i.complete,
                dims: i.dims.clone(),
                actions: i.actions.clone(),
            },
            i.lower_open,
        )
    }

    /// `F_{≤t}` as a quotient module, which is complete by construction.
    pub fn truncate_above(&self, t: i64) -> GradedModule {
        let i = &self.inner;
        let hi = t.min(i.hi).max(i.lo - 1);
        let keep = (hi - i.lo + 1) as usize;
        GradedModule::assemble(
            i.base.clone(),
            ModuleData {
                lo: i.lo,
                hi,
                complete: true,
                dims: i.dims.iter().map(|d| d[..keep].to_vec()).collect(),
                actions: i.actions.iter().map(|d| d[..keep.saturating_sub(1)].to_vec()).collect(),
            },
            i.lower_open,
        )
    }

    /// Same functor on the window `[lo, hi]`: padding with zeros requires
    /// completeness, cutting keeps completeness only if nothing nonzero is dropped.
    pub fn with_upper(&self, hi: i64) -> GradedModule {
        let i = &self.inner;
        if hi == i.hi {
            return self.clone();
        }
        if hi < i.hi {
            let dropped_zero = ((hi + 1).max(i.lo)..=i.hi).all(|n| self.degree_dim(n) == 0);
            let t = self.truncate_above(hi);
            let complete = i.complete && dropped_zero;
            return GradedModule::assemble(
                i.base.clone(),
                ModuleData {
                    lo: t.lo(),
                    hi: t.hi(),
                    complete,
                    dims: t.inner.dims.clone(),
                    actions: t.inner.actions.clone(),
                },
                i.lower_open,
            );
        }
        assert!(i.complete, "cannot extend the window of an incomplete module");
        let field = self.field();
        let q = i.base.quiver();
        let dims = (0..i.base.num_objects())
            .map(|x| (i.lo..=hi).map(|n| self.dim(x, n)).collect())
            .collect();
        let actions = (0..q.arrows().len())
            .map(|a| {
                let arrow = q.arrow(a);
                (i.lo..hi)
                    .map(|n| {
                        if n + 1 <= i.hi {
                            self.action(a, n)
                        } else {
                            Mat::zeros(field, 0, self.dim(arrow.target, n))
                        }
                    })
                    .collect()
            })
            .collect();
        GradedModule::assemble(
            i.base.clone(),
            ModuleData {
                lo: i.lo,
                hi,
                complete: true,
                dims,
                actions,
            },
            i.lower_open,
        )
    }

    /// Direct sum; the window ends where the first incomplete summand ends.
    pub fn direct_sum(base: &Arc<CatPresentation>, parts: &[GradedModule]) -> Result<GradedModule> {
        if parts.iter().any(|p| p.base() != base) {
            return Err(Error::BaseMismatch);
        }
        let nonzero: Vec<&GradedModule> = parts.iter().filter(|p| p.hi() >= p.lo()).collect();
        if nonzero.is_empty() {
            return Ok(GradedModule::zero(base.clone()));
        }
        let lo = nonzero.iter().map(|p| p.lo()).min().expect("nonempty");
        let complete = nonzero.iter().all(|p| p.is_complete());
        let hi = if complete {
            nonzero.iter().map(|p| p.hi()).max().expect("nonempty")
        } else {
            nonzero.iter().filter(|p| !p.is_complete()).map(|p| p.hi()).min().expect("some incomplete")
        };
        let field = base.field();
        let n_obj = base.num_objects();
        let dims: Vec<Vec<usize>> = (0..n_obj)
            .map(|x| (lo..=hi).map(|n| nonzero.iter().map(|p| p.dim(x, n)).sum()).collect())
            .collect();
        let actions = base
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                (lo..hi)
                    .map(|n| {
                        let rows: usize = nonzero.iter().map(|p| p.dim(arrow.source, n + 1)).sum();
                        let cols: usize = nonzero.iter().map(|p| p.dim(arrow.target, n)).sum();
                        let mut m = Mat::zeros(field, rows, cols);
                        let (mut r0, mut c0) = (0, 0);
                        for p in &nonzero {
                            let block = p.action(a, n);
                            for r in 0..block.rows() {
                                for c in 0..block.cols() {
                                    let v = block.get(r, c);
                                    if !v.is_zero() {
                                        m.set(r0 + r, c0 + c, v.clone());
                                    }
                                }
                            }
                            r0 += block.rows();
                            c0 += block.cols();
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let lower_open = nonzero.iter().any(|p| p.is_lower_open());
        Ok(GradedModule::assemble(
            base.clone(),
            ModuleData {
                lo,
                hi,
                complete,
                dims,
                actions,
            },
            lower_open,
        ))
    }

    /// Graded dual over the opposite presentation: `D(F)(X)_i = F(X)_{−i}^*`
    /// with transposed actions.
    pub fn dual(&self) -> GradedModule {
        let i = &self.inner;
        let base = Arc::new(i.base.opposite());
        let (lo, hi) = (-i.hi, -i.lo);
        let dims = i.dims.iter().map(|d| d.iter().rev().copied().collect()).collect();
        let actions = (0..i.actions.len())
            .map(|a| (lo..hi).map(|k| self.action(a, -k - 1).transpose()).collect())
            .collect();
        GradedModule::assemble(
            base,
            ModuleData {
                lo,
                hi,
                complete: !i.lower_open,
                dims,
                actions,
            },
            !i.complete,
        )
    }

    /// Nonzero `(object, degree, dim)` entries in window order.
    pub fn dims_table(&self) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        for x in 0..self.base().num_objects() {
            for n in self.lo()..=self.hi() {
                let d = self.dim(x, n);
                if d > 0 {
                    out.push((x, n, d));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_x2() -> Arc<CatPresentation> {
        Arc::new(
            CatPresentation::from_spec(Field::Rational, &["v"], &[("x", "v", "v")], &[&[(1, &["x", "x"])]], 3).unwrap(),
        )
    }

    #[test]
    fn projective_examples() {
        let p = loop_x2();
        let pv = GradedModule::projective(&p, 0, 0).unwrap();
        assert_eq!((pv.dim(0, 0), pv.dim(0, 1), pv.dim(0, 2)), (1, 1, 0));
        assert_eq!(pv.action(0, 0), Mat::from_i64(Field::Rational, &[&[1]]));
        assert!(pv.is_complete());

        let a2 = Arc::new(CatPresentation::from_spec(Field::Rational, &["1", "2"], &[("a", "1", "2")], &[], 3).unwrap());
        let p2 = GradedModule::projective(&a2, 1, 0).unwrap();
        assert_eq!(p2.dim(0, 1), 1);
        let shifted = GradedModule::projective(&a2, 1, -2).unwrap();
        assert_eq!((shifted.dim(1, 2), shifted.dim(0, 3)), (1, 1));

        let semi = Arc::new(CatPresentation::from_spec(Field::Rational, &["1", "2"], &[], &[], 2).unwrap());
        let ps = GradedModule::projective(&semi, 0, 0).unwrap();
        assert_eq!(ps.dims_table(), GradedModule::simple(&semi, 0).unwrap().dims_table());
    }

    #[test]
    fn dual_mirrors_degrees() {
        let p = loop_x2();
        let pv = GradedModule::projective(&p, 0, 0).unwrap();
        let d = pv.dual();
        assert_eq!((d.lo(), d.hi()), (-3, 0));
        assert_eq!((d.dim(0, 0), d.dim(0, -1), d.dim(0, -2)), (1, 1, 0));
        let dd = d.dual();
        assert_eq!(dd.dims(), pv.dims());
        assert_eq!(dd, pv);
        let s = GradedModule::simple(&p, 0).unwrap();
        assert_eq!(s.dual().dims_table(), vec![(0, 0, 1)]);
    }

    #[test]
    fn invalid_module_rejected() {
        let p = loop_x2();
        // x acts nontrivially twice in a row, violating x² = 0
        let one = Mat::from_i64(Field::Rational, &[&[1]]);
        let data = ModuleData {
            lo: 0,
            hi: 2,
            complete: true,
            dims: vec![vec![1, 1, 1]],
            actions: vec![vec![one.clone(), one]],
        };
        assert!(matches!(GradedModule::new(p, data), Err(Error::InvalidModule(_))));
    }
}
