use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::algebra::FDAlgebra;
use super::fmodule::{FModule, FSub};
use super::graded::{assoc_graded, g_functor_on};
use crate::error::{Error, Result};
use crate::resolve::{is_koszul, is_linear, with_room_for, KoszulCertificate, LinearityCertificate};
use crate::xla::{Mat, Scalar, Subspace};

/// `⊕_g Λ(−, X_g)`, blocks in generator order.
#[derive(Clone, Debug)]
pub struct FFree {
    pub generators: Vec<usize>,
    pub module: FModule,
}

impl FFree {
    pub fn new(alg: &Arc<FDAlgebra>, generators: Vec<usize>) -> FFree {
        let parts: Vec<FModule> = generators.iter().map(|&x| FModule::projective(alg, x)).collect();
        FFree {
            module: FModule::direct_sum(alg, &parts),
            generators,
        }
    }

    /// Matrix at `z` of the map sending generator `g` to `images[g] ∈ target(X_g)`.
    pub fn map_matrix(&self, target: &FModule, images: &[Vec<Scalar>], z: usize) -> Mat {
        let alg = self.module.alg();
        let mut cols = Vec::with_capacity(self.module.dim(z));
        for (g, &x) in self.generators.iter().enumerate() {
            for b in 0..alg.dim(z, x) {
                cols.push(target.apply_word(alg.basis_path(z, x, b).arrows(), &images[g]));
            }
        }
        Mat::from_columns(alg.field(), target.dim(z), &cols)
    }
}

#[derive(Clone, Debug)]
pub struct FStage {
    pub free: FFree,
    pub images: Vec<Vec<Scalar>>,
    /// `Ω^{i+1}` inside `P_i`.
    pub syzygy: FSub,
}

/// Minimal projective resolution of a representation, stages `0..=m`.
#[derive(Clone, Debug)]
pub struct FResolution {
    pub target: FModule,
    pub stages: Vec<FStage>,
}

impl FResolution {
    /// Object names of the generators at each stage.
    pub fn summary(&self) -> Vec<Vec<String>> {
        let q = self.target.alg().quiver();
        self.stages
            .iter()
            .map(|s| s.free.generators.iter().map(|&x| q.object_name(x).to_string()).collect())
            .collect()
    }
}

/// Generators of `K / rad K`, ordered by object then section index.
pub fn f_top_generators(k: &FSub) -> Vec<(usize, Vec<Scalar>)> {
    let parent = k.parent();
    let field = parent.alg().field();
    let rad = k.radical();
    let mut out = Vec::new();
    for x in 0..parent.alg().num_objects() {
        let space = k.space(x);
        let coords = rad.space(x).basis_vectors().iter().map(|v| space.coords(v).expect("radical inside")).collect();
        let q = Subspace::span(field, space.dim(), coords).quotient_basis();
        let basis = space.basis_vectors();
        for &s in &q.section {
            out.push((x, basis[s].clone()));
        }
    }
    out
}

pub fn f_cover_of(k: &FSub) -> FStage {
    let target = k.parent();
    let alg = target.alg();
    let gens = f_top_generators(k);
    let free = FFree::new(alg, gens.iter().map(|(x, _)| *x).collect());
    let images: Vec<Vec<Scalar>> = gens.into_iter().map(|(_, v)| v).collect();
    let spaces = (0..alg.num_objects())
        .map(|z| {
            let m = free.map_matrix(target, &images, z);
            if m.rows() == 0 {
                Subspace::full(alg.field(), m.cols())
            } else {
                m.kernel()
            }
        })
        .collect();
    let syzygy = FSub::new(&free.module, spaces).expect("kernels are subrepresentations");
    FStage { free, images, syzygy }
}

pub fn f_minimal_resolution(m: &FModule, stages: usize) -> FResolution {
    let mut out = Vec::with_capacity(stages + 1);
    let mut k = FSub::full(m);
    for _ in 0..=stages {
        let st = f_cover_of(&k);
        k = st.syzygy.clone();
        out.push(st);
    }
    FResolution {
        target: m.clone(),
        stages: out,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeakMode {
    /// `rad^{i+1} P_j ∩ Ω^{j+1} = rad^i Ω^{j+1}` for all `i ≥ 1`.
    Weakly,
    /// Only `i = 1`.
    Quasi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakFailure {
    pub j: usize,
    pub i: usize,
    /// `dim rad^{i+1} P_j ∩ Ω^{j+1}`.
    pub intersection_dim: usize,
    /// `dim rad^i Ω^{j+1}`.
    pub radical_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeaklyKoszulCertificate {
    pub weakly_koszul: bool,
    pub mode: WeakMode,
    pub j_max: usize,
    pub i_max: usize,
    pub failure: Option<WeakFailure>,
    /// Stage at which the resolution stopped (`Ω^{j+1} = 0`), if it did.
    pub finite_at: Option<usize>,
    pub stages: Vec<Vec<String>>,
}

/// Checks the weakly-Koszul equalities for `j ≤ j_max`, `1 ≤ i ≤ i_max`
/// (`i` is capped at `N`, beyond which both sides vanish).
pub fn weakly_koszul_mode(m: &FModule, j_max: usize, i_max: usize, mode: WeakMode) -> Result<WeaklyKoszulCertificate> {
    if m.is_zero() {
        return Err(Error::Precondition("weakly Koszul check needs a nonzero module".into()));
    }
    let res = f_minimal_resolution(m, j_max);
    let cap = i_max.min(m.alg().nilpotency());
    let is: Vec<usize> = match mode {
        WeakMode::Weakly => (1..=cap).collect(),
        WeakMode::Quasi => (1..=cap.min(1)).collect(),
    };
    let mut failure = None;
    let mut finite_at = None;
    'outer: for (j, st) in res.stages.iter().enumerate() {
        let omega = &st.syzygy;
        if omega.is_zero() {
            finite_at = Some(j);
            break;
        }
        let full = FSub::full(&st.free.module);
        for &i in &is {
            let lhs = full.radical_power(i + 1).intersect(omega)?;
            let rhs = omega.radical_power(i);
            if lhs != rhs {
                failure = Some(WeakFailure {
                    j,
                    i,
                    intersection_dim: lhs.total_dim(),
                    radical_dim: rhs.total_dim(),
                });
                break 'outer;
            }
        }
    }
    Ok(WeaklyKoszulCertificate {
        weakly_koszul: failure.is_none(),
        mode,
        j_max,
        i_max: cap,
        failure,
        finite_at,
        stages: res.summary(),
    })
}

pub fn weakly_koszul(m: &FModule, j_max: usize, i_max: usize) -> Result<WeaklyKoszulCertificate> {
    weakly_koszul_mode(m, j_max, i_max, WeakMode::Weakly)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraWeakCertificate {
    pub weakly_koszul: bool,
    pub simples: Vec<(String, WeaklyKoszulCertificate)>,
}

/// Every simple, in parallel, with `i` up to `N`.
pub fn weakly_koszul_algebra(a: &Arc<FDAlgebra>, j_max: usize) -> Result<AlgebraWeakCertificate> {
    let simples = (0..a.num_objects())
        .into_par_iter()
        .map(|c| {
            let cert = weakly_koszul(&FModule::simple(a, c), j_max, a.nilpotency())?;
            Ok((a.quiver().object_name(c).to_string(), cert))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraWeakCertificate {
        weakly_koszul: simples.iter().all(|(_, c)| c.weakly_koszul),
        simples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakToKoszulReport {
    pub module: WeaklyKoszulCertificate,
    /// Linearity of `G(M)` over `A_gr`.
    pub g_linear: LinearityCertificate,
    /// Koszulity of `A_gr`, checked when every simple is weakly Koszul.
    pub algebra: Option<KoszulCertificate>,
}

/// Refuses unless `M` is weakly Koszul up to stage `m`; then resolves `G(M)`
/// over `A_gr` and, if the algebra is weakly Koszul, certifies `A_gr`.
pub fn weak_to_koszul_check(a: &Arc<FDAlgebra>, m_mod: &FModule, m: usize) -> Result<WeakToKoszulReport> {
    let module = weakly_koszul(m_mod, m, a.nilpotency())?;
    if let Some(f) = &module.failure {
        return Err(Error::Precondition(format!(
            "module is not weakly Koszul: fails at j={}, i={} ({} vs {})",
            f.j, f.i, f.intersection_dim, f.radical_dim
        )));
    }
    let layers = m_mod.radical_layers().len();
    let gr = Arc::new(assoc_graded(a)?);
    let base = with_room_for(&gr, m + layers);
    let g = g_functor_on(&base, m_mod)?;
    let g_linear = is_linear(&g, m)?;
    let algebra = if weakly_koszul_algebra(a, m)?.weakly_koszul {
        Some(is_koszul(&gr, m)?)
    } else {
        None
    };
    Ok(WeakToKoszulReport {
        module,
        g_linear,
        algebra,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesReport {
    /// `rad^k F₂ ∩ F₁ = rad^k F₁` for all `k`.
    pub condition: bool,
    pub failing_k: Option<usize>,
    pub f1: WeaklyKoszulCertificate,
    pub f2: WeaklyKoszulCertificate,
    /// Certificate computed directly on `F₃ = F₂ / F₁`.
    pub f3: WeaklyKoszulCertificate,
}

/// For `0 → F₁ → F₂ → F₃ → 0` given by a subrepresentation `F₁ ⊆ F₂`,
/// checks the radical compatibility and certifies all three terms.
pub fn ses_check(f1: &FSub, j_max: usize) -> Result<SesReport> {
    let f2 = f1.parent();
    let n = f2.alg().nilpotency();
    let full = FSub::full(f2);
    let mut failing_k = None;
    for k in 0..=n {
        if full.radical_power(k).intersect(f1)? != f1.radical_power(k) {
            failing_k = Some(k);
            break;
        }
    }
    let cert = |m: &FModule| -> Result<WeaklyKoszulCertificate> {
        if m.is_zero() {
            // the zero module resolves by zero and satisfies every equality
            Ok(WeaklyKoszulCertificate {
                weakly_koszul: true,
                mode: WeakMode::Weakly,
                j_max,
                i_max: n,
                failure: None,
                finite_at: Some(0),
                stages: Vec::new(),
            })
        } else {
            weakly_koszul(m, j_max, n)
        }
    };
    Ok(SesReport {
        condition: failing_k.is_none(),
        failing_k,
        f1: cert(&f1.to_module())?,
        f2: cert(f2)?,
        f3: cert(&f1.quotient())?,
    })
}

/// `0 → Ω(F) → rad P → rad F → 0` from the projective cover `P → F`.
pub fn radical_sequence(m: &FModule) -> Result<FSub> {
    let st = f_cover_of(&FSub::full(m));
    let rad_p = FSub::full(&st.free.module).radical();
    st.syzygy.restrict_to(&rad_p)
}
