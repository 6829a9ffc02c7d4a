use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use koszulkit::ar::{verify_ar_resolutions, TranslationQuiver};
use koszulkit::dual::{ext_algebra, koszul_dual_compare, quadratic_dual};
use koszulkit::filtered::{
    assoc_graded, assoc_graded_table, weakly_koszul_algebra, weakly_koszul_mode, FDAlgebra, FModule, FModuleDoc,
    WeakMode, WeaklyKoszulCertificate,
};
use koszulkit::gmod::{tensor, Cokernel, GradedModule, ModuleDoc};
use koszulkit::presentation::{check_generated_01, CatPresentation, PresentationDoc};
use koszulkit::resolve::{is_koszul, linearity_of, minimal_resolution, projective_dimension, PdBound};
use koszulkit::xla::Field;

use crate::job::{read, Command, Input, InputError, JobSpec};

/// Every report carries its kind, field, inputs and window.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub kind: String,
    pub field: String,
    pub inputs: Vec<String>,
    pub window: Window,
    pub pass: bool,
    pub summary: String,
    pub result: Value,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Window {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hom_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub internal_degrees: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn at(path: &Path) -> impl Fn(koszulkit::Error) -> InputError + '_ {
    move |e| InputError(format!("{}: {e}", path.display()))
}

fn load_presentation(path: &Path, field: Option<Field>, d: Option<usize>) -> Input<Arc<CatPresentation>> {
    let text = read(path)?;
    let doc = PresentationDoc::from_json(&text).map_err(at(path))?;
    Ok(Arc::new(doc.build(field, d).map_err(at(path))?))
}

struct LoadedModule {
    presentation: Cokernel,
    module: GradedModule,
}

fn load_module(path: &Path, field: Option<Field>, d: Option<usize>) -> Input<LoadedModule> {
    let doc = ModuleDoc::from_json(&read(path)?).map_err(at(path))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut base = load_presentation(&dir.join(&doc.presentation), field, d)?;
    if doc.opposite {
        base = Arc::new(base.opposite());
    }
    let presentation = doc.build(base).map_err(at(path))?;
    let module = presentation.to_module().map_err(at(path))?;
    Ok(LoadedModule { presentation, module })
}

fn load_algebra(path: &Path, field: Option<Field>) -> Input<Arc<FDAlgebra>> {
    let doc = PresentationDoc::from_json(&read(path)?).map_err(at(path))?;
    Ok(Arc::new(FDAlgebra::from_doc(&doc, field).map_err(at(path))?))
}

fn load_fmodule(path: &Path, field: Option<Field>) -> Input<FModule> {
    let doc = FModuleDoc::from_json(&read(path)?).map_err(at(path))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let alg = load_algebra(&dir.join(&doc.algebra), field)?;
    Ok(doc.build(&alg).map_err(at(path))?)
}

fn named_dims(m: &GradedModule) -> Vec<(String, i64, usize)> {
    m.dims_table()
        .into_iter()
        .map(|(x, n, d)| (m.base().object_name(x).to_string(), n, d))
        .collect()
}

/// Runs one job; input paths are taken relative to `base_dir`.
pub fn run(job: &JobSpec, base_dir: &Path) -> Input<Report> {
    let field = job.validate()?;
    let input = |k: usize| job.resolve_input(base_dir, k);
    let m = job.hom_degree();
    let mut window = Window {
        seed: job.seed,
        ..Window::default()
    };
    let (field_used, pass, summary, result) = match job.command {
        Command::CheckKoszul => {
            let p = load_presentation(&input(0), field, job.d)?;
            let cert = is_koszul(&p, m)?;
            window.hom_degree = Some(m);
            window.truncation = Some(cert.truncation);
            let verdict = match cert.simples.iter().find_map(|s| s.certificate.failure.as_ref().map(|f| (s, f))) {
                None => format!("koszul: true (certified m={m}, D={})", cert.truncation),
                Some((s, f)) => format!(
                    "koszul: false (S_{} fails at stage {}, shift {}, expected {}; certified m={m}, D={})",
                    s.object, f.stage, f.shift, f.expected_shift, cert.truncation
                ),
            };
            (p.field(), cert.koszul, verdict, value(&cert))
        }
        Command::Resolve => {
            let f = load_module(&input(0), field, job.d)?.module;
            let res = minimal_resolution(&f, m)?;
            let pd = projective_dimension(&res);
            window.hom_degree = Some(m);
            window.truncation = Some(f.base().truncation());
            window.internal_degrees = Some(res.window);
            let pd_text = match pd {
                PdBound::Exact(k) => format!("pd = {k}"),
                PdBound::AtLeast(k) => format!("pd >= {k}"),
            };
            let lin = linearity_of(&res);
            let summary = format!("resolution: {pd_text}, linear: {}", lin.linear);
            let result = json!({
                "stages": res.summary(),
                "projective_dimension": pd,
                "complete": res.is_complete(),
                "linearity": lin,
            });
            (f.field(), true, summary, result)
        }
        Command::QuadraticDual => {
            let p = load_presentation(&input(0), field, job.d)?;
            let dual = quadratic_dual(&p)?;
            window.truncation = Some(dual.truncation());
            let summary = format!(
                "quadratic dual: {} objects, {} arrows, {} relations",
                dual.num_objects(),
                dual.quiver().arrows().len(),
                dual.relations().len()
            );
            (p.field(), true, summary, json!({ "presentation": dual.to_doc() }))
        }
        Command::ExtAlgebra => {
            let p = load_presentation(&input(0), field, job.d)?;
            let table = ext_algebra(&p, m)?.table();
            window.hom_degree = Some(m);
            window.truncation = Some(table.truncation);
            let summary = format!(
                "ext algebra: associative: {}, diagonal: {}, quadratic: {}",
                table.associative, table.diagonal, table.quadratic
            );
            (p.field(), table.associative, summary, value(&table))
        }
        Command::DualCompare => {
            let p = load_presentation(&input(0), field, job.d)?;
            let c = koszul_dual_compare(&p, m)?;
            window.hom_degree = Some(m);
            window.truncation = Some(p.truncation().max(m));
            let summary = format!(
                "dual compare: ext vs dual: {}, double orthogonal: {}, ext of dual vs hom: {}",
                c.ext_matches_dual, c.double_orthogonal, c.double_ext_matches
            );
            (p.field(), c.all_agree(), summary, value(&c))
        }
        Command::AssocGraded => {
            let a = load_algebra(&input(0), field)?;
            let gr = assoc_graded(&a)?;
            let generated = check_generated_01(&assoc_graded_table(&a));
            window.nilpotency = Some(a.nilpotency());
            window.truncation = Some(gr.truncation());
            let summary = format!(
                "assoc graded: dim {}, {} relations, generated in degrees 0 and 1: {}",
                a.total_dim(),
                gr.relations().len(),
                generated.generated
            );
            let result = json!({
                "filtration": a.filtration(),
                "input_graded": a.is_graded(),
                "presentation": gr.to_doc(),
                "generated_01": generated,
            });
            (a.field(), generated.generated, summary, result)
        }
        Command::CheckWeaklyKoszul => check_weakly(job, &input(0), field, &mut window)?,
        Command::ArVerify => {
            let tq = TranslationQuiver::from_json(&read(&input(0))?).map_err(at(&input(0)))?;
            let f = field.unwrap_or(Field::Prime(101));
            let r = verify_ar_resolutions(&tq, m, f)?;
            window.hom_degree = Some(m);
            window.truncation = Some(r.koszul.truncation);
            let bad: Vec<&str> = r.vertices.iter().filter(|v| !v.ok).map(|v| v.vertex.as_str()).collect();
            let summary = format!(
                "ar: shapes {} ({} vertices{}), mesh category koszul: {}",
                if r.shapes_ok { "ok" } else { "wrong" },
                r.vertices.len(),
                if bad.is_empty() { String::new() } else { format!(", mismatched at {}", bad.join(", ")) },
                r.koszul.koszul
            );
            (f, r.passed(), summary, value(&r))
        }
        Command::Tensor => {
            let g = load_module(&input(0), field, job.d)?.presentation;
            let f = load_module(&input(1), field, job.d)?.module;
            if **g.base() != f.base().opposite() {
                return Err(InputError(
                    "the first module must live over the opposite of the second module's presentation".into(),
                ));
            }
            let dims = tensor(&g, &f)?;
            let alt = restabilize(&g, job.seed.unwrap_or(0))?;
            let alt_dims = tensor(&alt, &f)?;
            let invariant = dims == alt_dims;
            window.truncation = Some(f.base().truncation());
            window.internal_degrees = Some((f.lo(), f.hi()));
            let total: usize = dims.degrees.iter().map(|&(_, d)| d).sum();
            let summary = format!(
                "tensor: total dim {total} on {} degrees, presentation invariant: {invariant}",
                dims.degrees.len()
            );
            let result = json!({
                "dims": dims,
                "alternative_presentation": { "rows": alt.rows().len(), "cols": alt.cols().len() },
                "alternative_dims": alt_dims,
                "invariant": invariant,
            });
            (f.field(), invariant, summary, result)
        }
        Command::Gdual => {
            let f = load_module(&input(0), field, job.d)?.module;
            let d = f.dual();
            let dd = d.dual();
            let preserved = dd.dims_table() == f.dims_table() && (dd.lo(), dd.hi()) == (f.lo(), f.hi());
            window.truncation = Some(f.base().truncation());
            window.internal_degrees = Some((f.lo(), f.hi()));
            let summary = format!("graded dual: total dim {}, double dual preserves dims: {preserved}", d.total_dim());
            let result = json!({
                "dims": named_dims(&f),
                "dual": named_dims(&d),
                "dual_window": (d.lo(), d.hi()),
                "double_dual": named_dims(&dd),
                "preserved": preserved,
            });
            (f.field(), preserved, summary, result)
        }
    };
    Ok(Report {
        kind: job.command.name().to_string(),
        field: field_used.to_string(),
        inputs: job.inputs.clone(),
        window,
        pass,
        summary,
        result,
    })
}

fn weak_summary(c: &WeaklyKoszulCertificate) -> String {
    match &c.failure {
        None => "true".into(),
        Some(f) => format!(
            "false (j={}, i={}: intersection dim {} vs radical dim {})",
            f.j, f.i, f.intersection_dim, f.radical_dim
        ),
    }
}

fn check_weakly(job: &JobSpec, path: &Path, field: Option<Field>, window: &mut Window) -> Input<(Field, bool, String, Value)> {
    let raw: Value = serde_json::from_str(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let m = job.hom_degree();
    let j_max = job.j_max.unwrap_or(m);
    window.j_max = Some(j_max);
    if raw.get("algebra").is_some() {
        let module = load_fmodule(path, field)?;
        let n = module.alg().nilpotency();
        let i_max = job.i_max.unwrap_or(n);
        let mode = if job.quasi { WeakMode::Quasi } else { WeakMode::Weakly };
        let cert = weakly_koszul_mode(&module, j_max, i_max, mode)?;
        window.i_max = Some(cert.i_max);
        window.nilpotency = Some(n);
        let summary = format!("weakly koszul: {}", weak_summary(&cert));
        return Ok((module.alg().field(), cert.weakly_koszul, summary, value(&cert)));
    }
    if job.quasi {
        return Err(InputError("quasi mode applies to a single module, not to an algebra".into()));
    }
    if job.i_max.is_some() {
        return Err(InputError("i_max applies to a single module; algebras use the nilpotency degree".into()));
    }
    let a = load_algebra(path, field)?;
    let cert = weakly_koszul_algebra(&a, j_max)?;
    window.i_max = Some(a.nilpotency());
    window.nilpotency = Some(a.nilpotency());
    // transfer: certify the associated graded algebra when every simple passes
    let graded = if cert.weakly_koszul {
        window.hom_degree = Some(m);
        Some(is_koszul(&Arc::new(assoc_graded(&a)?), m)?)
    } else {
        None
    };
    let summary = match cert.simples.iter().find(|(_, c)| !c.weakly_koszul) {
        None => format!(
            "weakly koszul algebra: true, assoc graded koszul: {}",
            graded.as_ref().is_some_and(|g| g.koszul)
        ),
        Some((name, c)) => format!("weakly koszul algebra: false (simple {name}: {})", weak_summary(c)),
    };
    let result = json!({ "algebra": cert, "assoc_graded_koszul": graded });
    Ok((a.field(), cert.weakly_koszul, summary, result))
}

/// A second presentation of the same module: a trivial summand cancelled by
/// an identity relation, plus a redundant multiple of an existing relation.
fn restabilize(g: &Cokernel, seed: u64) -> Input<Cokernel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = g.base().clone();
    let field = base.field();
    let mut rows = g.rows().to_vec();
    let mut cols = g.cols().to_vec();
    let mut entries = g.raw_entries();
    let y = rng.gen_range(0..base.num_objects());
    let n = rows[rng.gen_range(0..rows.len())].1;
    for row in entries.iter_mut() {
        row.push(Vec::new());
    }
    rows.push((y, n));
    cols.push((y, n));
    let mut last = vec![Vec::new(); cols.len()];
    last[cols.len() - 1] = vec![field.one()];
    entries.push(last);
    if !g.cols().is_empty() {
        let j = rng.gen_range(0..g.cols().len());
        let c = field.from_i64(rng.gen_range(1..=50));
        cols.push(g.cols()[j]);
        for row in entries.iter_mut() {
            let e: Vec<_> = row[j].iter().map(|v| v * &c).collect();
            row.push(e);
        }
    }
    Ok(Cokernel::new(base, rows, cols, entries)?)
}
