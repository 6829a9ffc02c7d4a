use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::resolution::{minimal_resolution, Resolution, StageSummary};
use crate::error::Result;
use crate::gmod::{top, GradedModule};
use crate::presentation::{check_generated_01, CatPresentation, GeneratedReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearFailure {
    pub stage: usize,
    pub object: String,
    pub shift: i64,
    pub expected_shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearityCertificate {
    pub linear: bool,
    /// Lowest degree of a generator of the module; stage `i` must sit `i` above it.
    pub generation_degree: i64,
    pub failure: Option<LinearFailure>,
    pub stages: Vec<StageSummary>,
    pub certified_hom_degree: usize,
    pub internal_degree: i64,
    /// Set when the window ends before the degree stage `m` should occupy.
    pub partial: bool,
}

/// Linear iff every stage-`i` generator sits in degree `g + i`, where `g` is
/// the generation degree (shifts reported as `−degree`).
pub fn is_linear(f: &GradedModule, m: usize) -> Result<LinearityCertificate> {
    let res = minimal_resolution(f, m)?;
    Ok(linearity_of(&res))
}

pub fn linearity_of(res: &Resolution) -> LinearityCertificate {
    let base = res.base();
    let m = res.hom_degree;
    let g = top(&res.target)
        .dims_table()
        .iter()
        .map(|&(_, n, _)| n)
        .min()
        .unwrap_or(res.window.0);
    let mut failure = None;
    'outer: for (i, st) in res.stages.iter().enumerate() {
        for (x, shift, _) in st.summands() {
            let expected = -(g + i as i64);
            if shift != expected {
                failure = Some(LinearFailure {
                    stage: i,
                    object: base.object_name(x).to_string(),
                    shift,
                    expected_shift: expected,
                });
                break 'outer;
            }
        }
    }
    LinearityCertificate {
        linear: failure.is_none(),
        generation_degree: g,
        failure,
        stages: res.summary(),
        certified_hom_degree: m,
        internal_degree: res.window.1,
        partial: g + (m as i64) > res.window.1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleCertificate {
    pub object: String,
    pub certificate: LinearityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulCertificate {
    pub koszul: bool,
    pub simples: Vec<SimpleCertificate>,
    pub generated_01: GeneratedReport,
    pub certified_hom_degree: usize,
    pub truncation: usize,
}

/// Raises the truncation so stage `m` of a linear resolution of a simple is visible.
pub fn with_room_for(p: &Arc<CatPresentation>, m: usize) -> Arc<CatPresentation> {
    if p.truncation() >= m {
        p.clone()
    } else {
        Arc::new(p.with_truncation(m))
    }
}

/// Runs `is_linear` on every simple, in parallel.
pub fn is_koszul(p: &Arc<CatPresentation>, m: usize) -> Result<KoszulCertificate> {
    let p = with_room_for(p, m);
    let simples = (0..p.num_objects())
        .into_par_iter()
        .map(|c| {
            let s = GradedModule::simple(&p, c)?;
            Ok(SimpleCertificate {
                object: p.object_name(c).to_string(),
                certificate: is_linear(&s, m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KoszulCertificate {
        koszul: simples.iter().all(|s| s.certificate.linear),
        simples,
        generated_01: check_generated_01(&*p),
        certified_hom_degree: m,
        truncation: p.truncation(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ButlerReport {
    pub object: String,
    /// `(object, degree, dim)` of `Ω²(S_C) / rad Ω²(S_C)`.
    pub omega2_top: Vec<(String, i64, usize)>,
    /// `(object, 2, dim I₂(object, C))`.
    pub i2: Vec<(String, i64, usize)>,
    /// False when only the degree-2 slice was compared.
    pub quadratic: bool,
    pub equal: bool,
}

/// Compares the generators of the second syzygy of `S_c` with the
/// degree-2 relations ending at `c`.
pub fn butler_check(p: &Arc<CatPresentation>, c: usize) -> Result<ButlerReport> {
    let p = with_room_for(p, 3);
    let s = GradedModule::simple(&p, c)?;
    let res = minimal_resolution(&s, 2)?;
    let name = |x: usize| p.object_name(x).to_string();
    let quadratic = p.is_quadratic();
    let omega2_top: Vec<(String, i64, usize)> = res.stages[2]
        .summands()
        .into_iter()
        .filter(|&(_, shift, _)| quadratic || shift == -2)
        .map(|(x, shift, k)| (name(x), -shift, k))
        .collect();
    let i2: Vec<(String, i64, usize)> = (0..p.num_objects())
        .filter_map(|x| {
            let d = p.ideal_piece(x, c, 2).expect("degree 2 within truncation").dim();
            (d > 0).then(|| (name(x), 2, d))
        })
        .collect();
    Ok(ButlerReport {
        object: name(c),
        equal: omega2_top == i2,
        omega2_top,
        i2,
        quadratic,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PdBound {
    Exact(usize),
    AtLeast(usize),
}

impl PdBound {
    fn max(self, other: PdBound) -> PdBound {
        use PdBound::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a.max(b)),
            (AtLeast(a), AtLeast(b)) => AtLeast(a.max(b)),
            (AtLeast(a), Exact(b)) | (Exact(b), AtLeast(a)) => {
                if b >= a {
                    Exact(b)
                } else {
                    AtLeast(a)
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalDimReport {
    pub simples: Vec<(String, PdBound)>,
    /// Maximum over simples; an upper bound for the global dimension when exact.
    pub max: PdBound,
    pub truncation: usize,
}

pub fn projective_dimension(res: &Resolution) -> PdBound {
    match res.length() {
        Some(k) => PdBound::Exact(k),
        None => PdBound::AtLeast(res.hom_degree + 1),
    }
}

/// Projective dimensions of all simples, resolved to stage `m`.
pub fn global_dim_probe(p: &Arc<CatPresentation>, m: usize) -> Result<GlobalDimReport> {
    let p = with_room_for(p, m + 1);
    let simples = (0..p.num_objects())
        .into_par_iter()
        .map(|c| {
            let res = minimal_resolution(&GradedModule::simple(&p, c)?, m)?;
            Ok((p.object_name(c).to_string(), projective_dimension(&res)))
        })
        .collect::<Result<Vec<_>>>()?;
    let max = simples
        .iter()
        .map(|(_, b)| *b)
        .fold(PdBound::Exact(0), PdBound::max);
    Ok(GlobalDimReport {
        simples,
        max,
        truncation: p.truncation(),
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
    fn linearity_examples() {
        let p = loop_power(2, 8);
        let pv = GradedModule::projective(&p, 0, 0).unwrap();
        assert!(is_linear(&pv, 4).unwrap().linear);
        let c = is_linear(&GradedModule::simple(&p, 0).unwrap(), 6).unwrap();
        assert!(c.linear && !c.partial);

        let p3 = loop_power(3, 8);
        let c = is_linear(&GradedModule::simple(&p3, 0).unwrap(), 6).unwrap();
        let f = c.failure.unwrap();
        assert_eq!((f.stage, f.shift, f.expected_shift), (2, -3, -2));
    }

    #[test]
    fn koszul_and_probe() {
        let sq = Arc::new(
            CatPresentation::from_spec(
                Field::Prime(101),
                &["1", "2", "3", "4"],
                &[("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")],
                &[&[(1, &["c", "a"]), (-1, &["d", "b"])]],
                6,
            )
            .unwrap(),
        );
        let k = is_koszul(&sq, 6).unwrap();
        assert!(k.koszul && k.generated_01.generated);
        assert!(!is_koszul(&loop_power(3, 6), 6).unwrap().koszul);

        let b = butler_check(&sq, 3).unwrap();
        assert!(b.equal);
        assert_eq!(b.i2, vec![("1".to_string(), 2, 1)]);

        let free = Arc::new(CatPresentation::from_spec(Field::Rational, &["v"], &[("x", "v", "v"), ("y", "v", "v")], &[], 4).unwrap());
        assert_eq!(global_dim_probe(&free, 3).unwrap().max, PdBound::Exact(1));
        assert_eq!(global_dim_probe(&loop_power(2, 6), 4).unwrap().max, PdBound::AtLeast(5));
        let semi = Arc::new(CatPresentation::from_spec(Field::Rational, &["1", "2"], &[], &[], 2).unwrap());
        assert_eq!(global_dim_probe(&semi, 3).unwrap().max, PdBound::Exact(0));
    }
}
