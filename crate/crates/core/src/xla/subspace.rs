use super::mat::Mat;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A subspace of `field^ambient`, stored as the RREF of a basis.
///
/// Equal subspaces have bit-identical representations, so `==` is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

/// A canonical complement of a subspace and the projection onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    /// Non-pivot coordinates; their unit vectors span a complement.
    pub section: Vec<usize>,
    /// `section.len() × ambient`; sends a vector to its class in quotient coordinates.
    pub proj: Mat,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Mat) -> Subspace {
        let r = m.rref();
        let basis = if r.rank == r.matrix.rows() {
            r.matrix
        } else {
            Mat::from_rows(m.field(), m.cols(), r.matrix.row_vecs()[..r.rank].to_vec())
                .expect("rows of one field")
        };
        Subspace {
            ambient: m.cols(),
            basis,
            pivots: r.pivots,
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Mat::from_rows(field, ambient, vectors).expect("vectors of the ambient field");
        Subspace::row_space(&m)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the basis, read off at pivot positions.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = -&out[p];
            for (j, b) in self.basis.row(k).iter().enumerate() {
                if !b.is_zero() {
                    out[j].add_mul(&f, b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Inverse of [`Subspace::coords`].
    pub fn vector_from_coords(&self, c: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(c.len(), self.dim());
        let mut out = vec![self.field().zero(); self.ambient];
        for (k, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(k).iter().enumerate() {
                if !b.is_zero() {
                    out[j].add_mul(x, b);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|k| other.contains(self.basis.row(k)))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient dimensions {} and {} differ",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Intersection via the kernel of `[Aᵀ | −Bᵀ]`: a kernel vector `(x, y)`
    /// gives the common vector `xA = yB`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let field = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(field, self.ambient));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let system = self
            .basis
            .transpose()
            .hstack(&other.basis.transpose().scale(&-field.one()));
        let ker = system.kernel();
        let ra = self.dim();
        let vecs = ker
            .basis_vectors()
            .into_iter()
            .map(|kv| {
                let mut w = vec![field.zero(); self.ambient];
                for (k, x) in kv[..ra].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, b) in self.basis.row(k).iter().enumerate() {
                        if !b.is_zero() {
                            w[j].add_mul(x, b);
                        }
                    }
                }
                w
            })
            .collect();
        Ok(Subspace::span(field, self.ambient, vecs))
    }

    /// Orthogonal complement under the standard bilinear form `Σ xᵢyᵢ`.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    /// Canonical complement (non-pivot coordinates) and the projection onto it.
    pub fn quotient_basis(&self) -> QuotientBasis {
        let field = self.field();
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let section: Vec<usize> = (0..self.ambient).filter(|&c| !is_pivot[c]).collect();
        let mut position = vec![usize::MAX; self.ambient];
        for (i, &c) in section.iter().enumerate() {
            position[c] = i;
        }
        let mut proj = Mat::zeros(field, section.len(), self.ambient);
        for (i, &c) in section.iter().enumerate() {
            proj.set(i, c, field.one());
        }
        for (k, &p) in self.pivots.iter().enumerate() {
            for (j, b) in self.basis.row(k).iter().enumerate() {
                if !b.is_zero() && !is_pivot[j] {
                    proj.set(position[j], p, -b);
                }
            }
        }
        QuotientBasis { section, proj }
    }
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.section.len()
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.proj.mul_vec(v)
    }

    /// Lift quotient coordinates back along the section.
    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let field = self.proj.field();
        let mut v = vec![field.zero(); self.proj.cols()];
        for (i, &c) in self.section.iter().enumerate() {
            v[c] = q[i].clone();
        }
        v
    }
}

/// Quotient by a subspace given in ambient coordinates, with `quotient_basis`
/// semantics; the pre-check mirrors the documented precondition.
pub fn quotient_basis(sub: &Subspace, ambient_dim: usize) -> Result<QuotientBasis> {
    if sub.ambient_dim() != ambient_dim {
        return Err(Error::Dimension(format!(
            "subspace of dimension-{} space used in dimension {}",
            sub.ambient_dim(),
            ambient_dim
        )));
    }
    Ok(sub.quotient_basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn intersect_examples() {
        let f = Field::Rational;
        let full = Subspace::full(f, 3);
        let b = Subspace::span(f, 3, vec![v(f, &[1, 2, 3])]);
        assert_eq!(full.intersect(&b).unwrap(), b);

        let l1 = Subspace::span(f, 2, vec![v(f, &[1, 0])]);
        let l2 = Subspace::span(f, 2, vec![v(f, &[1, 1])]);
        assert!(l1.intersect(&l2).unwrap().is_zero());

        let a = Subspace::span(f, 3, vec![v(f, &[1, 0, 0]), v(f, &[0, 1, 0])]);
        let b = Subspace::span(f, 3, vec![v(f, &[0, 1, 0]), v(f, &[0, 0, 1])]);
        assert_eq!(
            a.intersect(&b).unwrap(),
            Subspace::span(f, 3, vec![v(f, &[0, 1, 0])])
        );
        assert!(a.intersect(&Subspace::full(f, 2)).is_err());
    }

    #[test]
    fn quotient_basis_examples() {
        let f = Field::Rational;
        let q = Subspace::zero(f, 3).quotient_basis();
        assert_eq!(q.section, vec![0, 1, 2]);
        assert_eq!(q.proj, Mat::identity(f, 3));

        let q = Subspace::full(f, 3).quotient_basis();
        assert!(q.section.is_empty());
        assert_eq!((q.proj.rows(), q.proj.cols()), (0, 3));

        let sub = Subspace::span(f, 2, vec![v(f, &[1, 1])]);
        let q = sub.quotient_basis();
        assert_eq!(q.section, vec![1]);
        assert_eq!(q.proj, Mat::from_i64(f, &[&[-1, 1]]));
        assert!(q.proj.mul(&sub.basis().transpose()).is_zero());
    }

    #[test]
    fn canonical_equality() {
        let f = Field::Prime(101);
        let a = Subspace::span(f, 3, vec![v(f, &[2, 4, 0]), v(f, &[0, 0, 7])]);
        let b = Subspace::span(f, 3, vec![v(f, &[1, 2, 5]), v(f, &[3, 6, 0])]);
        assert_eq!(a, b);
    }
}
