use std::collections::BTreeMap;

use super::mat::{Mat, Rref};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Sparse matrix in triplet form, held internally as one ordered map per row.
#[derive(Clone, Debug)]
pub struct SparseMat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMat {
    /// Duplicate coordinates are rejected; explicit zeros are dropped.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<SparseMat> {
        let mut data = vec![BTreeMap::new(); rows];
        let mut seen = std::collections::HashSet::new();
        for (r, c, s) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Dimension(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            if s.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), s.field().to_string()));
            }
            if !seen.insert((r, c)) {
                return Err(Error::Dimension(format!("duplicate coordinate ({r},{c})")));
            }
            if !s.is_zero() {
                data[r].insert(c, s);
            }
        }
        Ok(SparseMat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_dense(m: &Mat) -> SparseMat {
        let data = (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(c, s)| (c, s.clone()))
                    .collect()
            })
            .collect();
        SparseMat {
            field: m.field(),
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, s)| (r, c, s.clone())))
            .collect()
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, s) in row {
                m.set(r, c, s.clone());
            }
        }
        m
    }

    /// Gauss–Jordan elimination, columns left to right so the pivot set is
    /// canonical; among candidate rows the one with the fewest nonzeros wins
    /// (Markowitz row count), which limits fill-in.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = self.data.clone();
        let mut used = vec![false; rows.len()];
        let mut pivot_rows: Vec<usize> = Vec::new();
        let mut pivots = Vec::new();
        // column -> rows that currently hold a nonzero there
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); self.cols];
        for (r, row) in rows.iter().enumerate() {
            for &c in row.keys() {
                col_rows[c].push(r);
            }
        }
        for c in 0..self.cols {
            let mut candidates: Vec<usize> = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r].contains_key(&c))
                .collect();
            candidates.sort_unstable();
            candidates.dedup();
            let Some(p) = candidates
                .iter()
                .copied()
                .filter(|&r| !used[r])
                .min_by_key(|&r| (rows[r].len(), r))
            else {
                continue;
            };
            let inv = rows[p][&c].inv().expect("nonzero pivot");
            for v in rows[p].values_mut() {
                *v = &*v * &inv;
            }
            let pivot_row: Vec<(usize, Scalar)> =
                rows[p].iter().map(|(&j, v)| (j, v.clone())).collect();
            for &r in &candidates {
                if r == p {
                    continue;
                }
                let f = -&rows[r][&c];
                for (j, v) in &pivot_row {
                    let entry = rows[r].entry(*j).or_insert_with(|| self.field.zero());
                    let was_zero = entry.is_zero();
                    entry.add_mul(&f, v);
                    if entry.is_zero() {
                        rows[r].remove(j);
                    } else if was_zero {
                        col_rows[*j].push(r);
                    }
                }
            }
            used[p] = true;
            pivot_rows.push(p);
            pivots.push(c);
        }
        let rank = pivots.len();
        let mut m = Mat::zeros(self.field, self.rows, self.cols);
        for (k, &p) in pivot_rows.iter().enumerate() {
            for (&c, s) in &rows[p] {
                m.set(k, c, s.clone());
            }
        }
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }
}
