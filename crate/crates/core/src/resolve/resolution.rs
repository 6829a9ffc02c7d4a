use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmod::{GradedModule, ModuleData, Submodule};
use crate::presentation::CatPresentation;
use crate::xla::{Mat, Scalar, Subspace};

/// `⊕_g Hom(−, X_g)[−d_g]` for generators `(X_g, d_g)`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub generators: Vec<(usize, i64)>,
    pub module: GradedModule,
}

impl FreeModule {
    /// Built on the window `[lo, hi]` of the module it maps to.
    pub fn new(base: &Arc<CatPresentation>, generators: Vec<(usize, i64)>, lo: i64, hi: i64) -> FreeModule {
        let d = base.truncation() as i64;
        let n_obj = base.num_objects();
        let in_range = |k: i64| (0..=d).contains(&k);
        let dim = |z: usize, n: i64| -> usize {
            generators
                .iter()
                .map(|&(x, dg)| if in_range(n - dg) { base.hom_dim(z, x, (n - dg) as usize) } else { 0 })
                .sum()
        };
        let complete = generators
            .iter()
            .all(|&(x, dg)| base.vanishes_from(x, (hi - dg + 1).max(0) as usize));
        let dims = (0..n_obj).map(|z| (lo..=hi).map(|n| dim(z, n)).collect()).collect();
        let field = base.field();
        let actions = (0..base.quiver().arrows().len())
            .map(|a| {
                let arrow = base.quiver().arrow(a);
                (lo..hi)
                    .map(|n| {
                        let mut m = Mat::zeros(field, dim(arrow.source, n + 1), dim(arrow.target, n));
                        let (mut r0, mut c0) = (0, 0);
                        for &(x, dg) in &generators {
                            let k = n - dg;
                            let cols = if in_range(k) { base.hom_dim(arrow.target, x, k as usize) } else { 0 };
                            let rows = if in_range(k + 1) { base.hom_dim(arrow.source, x, (k + 1) as usize) } else { 0 };
                            if cols > 0 && rows > 0 {
                                let block = base.right_action(a, x, k as usize).expect("within truncation");
                                for r in 0..rows {
                                    for c in 0..cols {
                                        let v = block.get(r, c);
                                        if !v.is_zero() {
                                            m.set(r0 + r, c0 + c, v.clone());
                                        }
                                    }
                                }
                            }
                            r0 += rows;
                            c0 += cols;
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let module = GradedModule::assemble(
            base.clone(),
            ModuleData {
                lo,
                hi,
                complete,
                dims,
                actions,
            },
            false,
        );
        FreeModule { generators, module }
    }

    /// For each generator, its block `(offset, dim)` inside `P(z)_n`.
    pub fn blocks(&self, z: usize, n: i64) -> Vec<(usize, usize)> {
        let base = self.module.base();
        let d = base.truncation() as i64;
        let mut off = 0;
        self.generators
            .iter()
            .map(|&(x, dg)| {
                let k = n - dg;
                let dim = if (0..=d).contains(&k) { base.hom_dim(z, x, k as usize) } else { 0 };
                let out = (off, dim);
                off += dim;
                out
            })
            .collect()
    }

    /// Matrix at `(z, n)` of the map to `target` sending generator `g` to
    /// `images[g] ∈ target(X_g)_{d_g}`.
    pub fn map_matrix(&self, target: &GradedModule, images: &[Vec<Scalar>], z: usize, n: i64) -> Mat {
        let base = self.module.base();
        let field = base.field();
        let rows = target.dim(z, n);
        let mut columns = Vec::with_capacity(self.module.dim(z, n));
        for (g, &(x, dg)) in self.generators.iter().enumerate() {
            let k = n - dg;
            if !(0..=base.truncation() as i64).contains(&k) {
                continue;
            }
            let piece = base.hom_piece(z, x, k as usize).expect("within truncation");
            for b in 0..piece.dim() {
                let col = if images[g].iter().all(Scalar::is_zero) {
                    vec![field.zero(); rows]
                } else {
                    target.apply_path(piece.basis_path(b), dg, &images[g])
                };
                columns.push(col);
            }
        }
        Mat::from_columns(field, rows, &columns)
    }
}

/// One step `P_i → N` of a resolution, where `N` is `P_{i-1}` (or the
/// resolved module when `i = 0`).
#[derive(Clone, Debug)]
pub struct Stage {
    pub free: FreeModule,
    /// Generator images in `N`-coordinates.
    pub images: Vec<Vec<Scalar>>,
    /// `Ω^{i+1}`, the kernel, as a subfunctor of `P_i`.
    pub syzygy: Submodule,
}

impl Stage {
    pub fn generators(&self) -> &[(usize, i64)] {
        &self.free.generators
    }

    /// `(object, shift, multiplicity)` with shift `−degree`, sorted by object then degree.
    pub fn summands(&self) -> Vec<(usize, i64, usize)> {
        let mut count: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        for &(x, d) in self.generators() {
            *count.entry((x, d)).or_default() += 1;
        }
        count.into_iter().map(|((x, d), m)| (x, -d, m)).collect()
    }
}

/// A minimal graded projective resolution, computed on the window of the
/// resolved module. Stage generators are exact for degrees up to `hi`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: GradedModule,
    pub stages: Vec<Stage>,
    pub hom_degree: usize,
    /// Window `[lo, hi]` on which every stage is computed.
    pub window: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    pub stage: usize,
    pub summands: Vec<(String, i64, usize)>,
}

impl Resolution {
    pub fn base(&self) -> &Arc<CatPresentation> {
        self.target.base()
    }

    /// Target of stage `i`'s map.
    pub fn codomain(&self, i: usize) -> &GradedModule {
        if i == 0 {
            &self.target
        } else {
            &self.stages[i - 1].free.module
        }
    }

    /// Matrix of `d_i : P_i(z)_n → N(z)_n`.
    pub fn differential(&self, i: usize, z: usize, n: i64) -> Mat {
        let s = &self.stages[i];
        s.free.map_matrix(self.codomain(i), &s.images, z, n)
    }

    /// Projective dimension: the first stage whose syzygy vanishes on the window.
    pub fn length(&self) -> Option<usize> {
        self.stages.iter().position(|s| s.syzygy.is_zero())
    }

    /// Whether the window is known to contain the whole resolution: every
    /// module involved vanishes above `hi`.
    pub fn is_complete(&self) -> bool {
        self.target.is_complete() && self.stages.iter().all(|s| s.free.module.is_complete())
    }

    /// Whether `Ω^{i}` is zero on the window (`Ω^0` is the target).
    pub fn syzygy_vanishes(&self, i: usize) -> bool {
        if i == 0 {
            return self.target.is_zero();
        }
        self.stages.get(i - 1).is_some_and(|s| s.syzygy.is_zero())
    }

    pub fn summary(&self) -> Vec<StageSummary> {
        let base = self.base();
        self.stages
            .iter()
            .enumerate()
            .map(|(i, s)| StageSummary {
                stage: i,
                summands: s
                    .summands()
                    .into_iter()
                    .map(|(x, sh, m)| (base.object_name(x).to_string(), sh, m))
                    .collect(),
            })
            .collect()
    }

    /// `dim Ext^i(F, S_d)_j`: multiplicity of `Hom(−, d)[−j]` at stage `i`.
    pub fn ext_dim(&self, i: usize, d: usize, j: i64) -> usize {
        self.stages
            .get(i)
            .map(|s| s.generators().iter().filter(|&&g| g == (d, j)).count())
            .unwrap_or(0)
    }
}

/// Generators of `K / rad K` for a subfunctor `K`, as vectors in the
/// ambient coordinates, ordered by object, then degree, then section index.
pub fn top_generators(k: &Submodule) -> Vec<(usize, i64, Vec<Scalar>)> {
    let parent = k.parent();
    let rad = k.radical();
    let mut out = Vec::new();
    for x in 0..parent.base().num_objects() {
        for n in parent.lo()..=parent.hi() {
            let space = k.space(x, n);
            if space.is_zero() {
                continue;
            }
            let rad_coords: Vec<Vec<Scalar>> = rad
                .space(x, n)
                .basis_vectors()
                .iter()
                .map(|v| space.coords(v).expect("radical inside the submodule"))
                .collect();
            let q = Subspace::span(parent.field(), space.dim(), rad_coords).quotient_basis();
            let basis = space.basis_vectors();
            for &s in &q.section {
                out.push((x, n, basis[s].clone()));
            }
        }
    }
    out
}

/// One projective cover step: `P → N` with image `K`, plus its kernel.
pub fn cover_of(k: &Submodule) -> Stage {
    let target = k.parent();
    let base = target.base();
    let gens = top_generators(k);
    let free = FreeModule::new(
        base,
        gens.iter().map(|(x, n, _)| (*x, *n)).collect(),
        target.lo(),
        target.hi(),
    );
    let images: Vec<Vec<Scalar>> = gens.into_iter().map(|(_, _, v)| v).collect();
    let field = base.field();
    let syzygy = Submodule::from_fn(&free.module, |z, n| {
        let m = free.map_matrix(target, &images, z, n);
        if m.rows() == 0 {
            Subspace::full(field, m.cols())
        } else {
            m.kernel()
        }
    });
    Stage { free, images, syzygy }
}

/// Projective cover `P → F` and `Ω(F)`.
pub fn projective_cover(f: &GradedModule) -> Result<Stage> {
    check_bounded_below(f)?;
    Ok(cover_of(&Submodule::full(&working_window(f))))
}

fn check_bounded_below(f: &GradedModule) -> Result<()> {
    if f.is_lower_open() {
        return Err(Error::Precondition("module is not known to be bounded below".into()));
    }
    Ok(())
}

/// The module on the widest window its projective covers can be evaluated
/// on: `[lo, lo + D]`, cut further if the module itself is unknown earlier.
pub fn working_window(f: &GradedModule) -> GradedModule {
    let reach = f.lo() + f.base().truncation() as i64;
    let hi = if f.is_complete() { reach } else { f.hi().min(reach) };
    f.with_upper(hi)
}

/// Stages `0..=m` of the minimal resolution of `F`.
pub fn minimal_resolution(f: &GradedModule, m: usize) -> Result<Resolution> {
    check_bounded_below(f)?;
    let f = &working_window(f);
    let mut stages: Vec<Stage> = Vec::with_capacity(m + 1);
    let mut k = Submodule::full(f);
    for _ in 0..=m {
        let stage = cover_of(&k);
        k = stage.syzygy.clone();
        stages.push(stage);
    }
    Ok(Resolution {
        target: f.clone(),
        stages,
        hom_degree: m,
        window: (f.lo(), f.hi()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xla::Field;

    fn loop_power(k: usize, d: usize) -> Arc<CatPresentation> {
        let word = vec!["x"; k];
        Arc::new(CatPresentation::from_spec(Field::Rational, &["v"], &[("x", "v", "v")], &[&[(1, &word[..])]], d).unwrap())
    }

    #[test]
    fn cover_examples() {
        let p = loop_power(2, 6);
        let pv = GradedModule::projective(&p, 0, 0).unwrap();
        let st = projective_cover(&pv).unwrap();
        assert_eq!(st.generators(), &[(0, 0)]);
        assert!(st.syzygy.is_zero());

        let s = GradedModule::simple(&p, 0).unwrap();
        let st = projective_cover(&s).unwrap();
        assert_eq!(st.generators(), &[(0, 0)]);
        let omega = st.syzygy.to_module();
        assert_eq!(omega.dims_table(), vec![(0, 1, 1)]);
    }

    #[test]
    fn loop_x2_is_periodic() {
        let p = loop_power(2, 8);
        let s = GradedModule::simple(&p, 0).unwrap();
        let r = minimal_resolution(&s, 6).unwrap();
        for (i, st) in r.stages.iter().enumerate() {
            assert_eq!(st.summands(), vec![(0, -(i as i64), 1)], "stage {i}");
        }
    }

    #[test]
    fn loop_x3_jumps_to_three() {
        let p = loop_power(3, 6);
        let s = GradedModule::simple(&p, 0).unwrap();
        let r = minimal_resolution(&s, 3).unwrap();
        let shifts: Vec<i64> = r.stages.iter().map(|s| s.summands()[0].1).collect();
        assert_eq!(shifts, vec![0, -1, -3, -4]);
    }

    #[test]
    fn differentials_compose_to_zero_and_are_minimal() {
        let p = Arc::new(
            CatPresentation::from_spec(
                Field::Prime(101),
                &["1", "2", "3", "4"],
                &[("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")],
                &[&[(1, &["c", "a"]), (-1, &["d", "b"])]],
                4,
            )
            .unwrap(),
        );
        let s = GradedModule::simple(&p, 3).unwrap();
        let r = minimal_resolution(&s, 3).unwrap();
        for i in 1..r.stages.len() {
            for z in 0..4 {
                for n in 0..=4 {
                    let prod = r.differential(i - 1, z, n).mul(&r.differential(i, z, n));
                    assert!(prod.is_zero());
                }
            }
            // generator images land in the radical of the previous free module
            let rad = crate::gmod::radical(&r.stages[i - 1].free.module);
            for (g, &(x, d)) in r.stages[i].generators().iter().enumerate() {
                assert!(rad.space(x, d).contains(&r.stages[i].images[g]));
            }
        }
    }
}
