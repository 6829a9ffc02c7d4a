use std::fmt::Write as _;

use serde_json::Value;

use crate::job::{Input, InputError};

fn schema(msg: &str) -> InputError {
    InputError(format!("schema mismatch: {msg}"))
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn get<'a>(v: &'a Value, key: &str) -> Input<&'a Value> {
    v.get(key).ok_or_else(|| schema(&format!("missing {key:?}")))
}

fn flag(v: &Value, key: &str) -> Input<bool> {
    get(v, key)?.as_bool().ok_or_else(|| schema(&format!("{key:?} is not a boolean")))
}

fn arr<'a>(v: &'a Value, key: &str) -> Input<&'a Vec<Value>> {
    get(v, key)?.as_array().ok_or_else(|| schema(&format!("{key:?} is not a list")))
}

/// `[name, shift, mult]` triples as `name[shift]^mult`.
fn summands(v: &Value) -> String {
    let parts: Vec<String> = v
        .as_array()
        .map(|a| {
            a.iter()
                .map(|t| {
                    let name = t[0].as_str().unwrap_or("?");
                    let mult = t[2].as_u64().unwrap_or(1);
                    if mult == 1 {
                        format!("{name}[{}]", t[1])
                    } else {
                        format!("{name}[{}]^{mult}", t[1])
                    }
                })
                .collect()
        })
        .unwrap_or_default();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn stage_table(out: &mut String, stages: &[Value]) {
    for st in stages {
        let _ = writeln!(out, "    P{:<3} {}", st["stage"], summands(&st["summands"]));
    }
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("  {}", padded.join("  ").trim_end())
    };
    let _ = writeln!(out, "{}", line(header.iter().map(|h| h.to_string()).collect()));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.clone()));
    }
}

fn weak_failure(out: &mut String, cert: &Value) {
    match cert.get("failure") {
        Some(f) if !f.is_null() => {
            let _ = writeln!(
                out,
                "  violated at j={}, i={}: dim rad^(i+1) P_j ∩ Ω^(j+1) = {}, dim rad^i Ω^(j+1) = {}",
                f["j"], f["i"], f["intersection_dim"], f["radical_dim"]
            );
        }
        _ => {
            let _ = writeln!(out, "  all equalities hold (j ≤ {}, i ≤ {})", cert["j_max"], cert["i_max"]);
        }
    }
}

/// Renders a report as aligned text. Every verdict in the JSON appears.
pub fn explain(text: &str) -> Input<String> {
    let r: Value = serde_json::from_str(text).map_err(|e| schema(&e.to_string()))?;
    let kind = get(&r, "kind")?.as_str().ok_or_else(|| schema("\"kind\" is not a string"))?;
    let pass = flag(&r, "pass")?;
    let summary = get(&r, "summary")?.as_str().ok_or_else(|| schema("\"summary\" is not a string"))?;
    let res = get(&r, "result")?;
    let window = get(&r, "window")?.as_object().ok_or_else(|| schema("\"window\" is not an object"))?;
    let mut out = String::new();
    let _ = writeln!(out, "{kind}: {}", verdict(pass));
    let _ = writeln!(out, "  {summary}");
    let _ = writeln!(out, "  field: {}", r.get("field").and_then(Value::as_str).unwrap_or("?"));
    let win: Vec<String> = window.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "  window: {}", win.join(", "));
    match kind {
        "check-koszul" => {
            let mut rows = Vec::new();
            for s in arr(res, "simples")? {
                let c = &s["certificate"];
                let stages: Vec<String> = c["stages"]
                    .as_array()
                    .map(|a| a.iter().map(|st| summands(&st["summands"])).collect())
                    .unwrap_or_default();
                rows.push(vec![
                    format!("S_{}", s["object"].as_str().unwrap_or("?")),
                    verdict(c["linear"].as_bool().unwrap_or(false)).to_string(),
                    stages.join(" <- "),
                ]);
            }
            table(&mut out, &["simple", "linear", "stages (object[shift])"], &rows);
            let g = get(res, "generated_01")?;
            let _ = writeln!(out, "  generated in degrees 0 and 1: {}", verdict(flag(g, "generated")?));
        }
        "resolve" => {
            stage_table(&mut out, arr(res, "stages")?);
            let _ = writeln!(out, "  projective dimension: {}", res["projective_dimension"]);
            let _ = writeln!(out, "  linear: {}", verdict(res["linearity"]["linear"].as_bool().unwrap_or(false)));
        }
        "check-weakly-koszul" => {
            if let Some(alg) = res.get("algebra") {
                for s in arr(alg, "simples")? {
                    let _ = writeln!(
                        out,
                        "  S_{}: {}",
                        s[0].as_str().unwrap_or("?"),
                        verdict(s[1]["weakly_koszul"].as_bool().unwrap_or(false))
                    );
                    weak_failure(&mut out, &s[1]);
                }
                match res.get("assoc_graded_koszul") {
                    Some(g) if !g.is_null() => {
                        let _ = writeln!(out, "  assoc graded koszul: {}", verdict(flag(g, "koszul")?));
                    }
                    _ => {
                        let _ = writeln!(out, "  assoc graded koszul: not checked");
                    }
                }
            } else {
                weak_failure(&mut out, res);
                let stages: Vec<String> = arr(res, "stages")?
                    .iter()
                    .enumerate()
                    .map(|(j, s)| format!("P{j} = {}", s.as_array().map(|a| a.len()).unwrap_or(0)))
                    .collect();
                let _ = writeln!(out, "  generators: {}", stages.join(", "));
            }
        }
        "dual-compare" => {
            let _ = writeln!(out, "  Ext(S, S) vs dual hom dims:     {}", verdict(flag(res, "ext_matches_dual")?));
            let _ = writeln!(out, "  double orthogonal = I2:          {}", verdict(flag(res, "double_orthogonal")?));
            let _ = writeln!(out, "  Ext of dual vs original hom dims: {}", verdict(flag(res, "double_ext_matches")?));
            let rows: Vec<Vec<String>> = arr(res, "mismatches")?
                .iter()
                .map(|m| {
                    ["from", "to", "degree", "left", "right"]
                        .iter()
                        .map(|k| m[*k].to_string().trim_matches('"').to_string())
                        .collect()
                })
                .collect();
            if !rows.is_empty() {
                table(&mut out, &["from", "to", "degree", "left", "right"], &rows);
            }
        }
        "ext-algebra" => {
            let _ = writeln!(
                out,
                "  diagonal: {}, associative: {}, quadratic: {}",
                res["diagonal"], res["associative"], res["quadratic"]
            );
            let rows: Vec<Vec<String>> = arr(res, "dims")?
                .iter()
                .map(|d| {
                    ["from", "to", "degree", "internal_degree", "dim"]
                        .iter()
                        .map(|k| d[*k].to_string().trim_matches('"').to_string())
                        .collect()
                })
                .collect();
            table(&mut out, &["from", "to", "i", "j", "dim"], &rows);
        }
        "assoc-graded" => {
            let f = get(res, "filtration")?;
            let rows: Vec<Vec<String>> = arr(f, "pairs")?
                .iter()
                .map(|p| {
                    vec![
                        p["from"].as_str().unwrap_or("?").to_string(),
                        p["to"].as_str().unwrap_or("?").to_string(),
                        p["layers"].to_string(),
                    ]
                })
                .collect();
            table(&mut out, &["from", "to", "radical layers"], &rows);
            let g = get(res, "generated_01")?;
            let _ = writeln!(out, "  generated in degrees 0 and 1: {}", verdict(flag(g, "generated")?));
        }
        "ar-verify" => {
            let rows: Vec<Vec<String>> = arr(res, "vertices")?
                .iter()
                .map(|v| {
                    let st = |key: &str| -> String {
                        v[key].as_array().map(|a| a.iter().map(summands).collect::<Vec<_>>().join(" <- ")).unwrap_or_default()
                    };
                    vec![
                        v["vertex"].as_str().unwrap_or("?").to_string(),
                        verdict(v["ok"].as_bool().unwrap_or(false)).to_string(),
                        st("actual"),
                        st("expected"),
                    ]
                })
                .collect();
            table(&mut out, &["vertex", "shape", "actual", "expected"], &rows);
            let _ = writeln!(out, "  mesh category koszul: {}", verdict(flag(get(res, "koszul")?, "koszul")?));
        }
        "tensor" => {
            let grid = |key: &str| -> Input<String> {
                Ok(arr(get(res, key)?, "degrees")?
                    .iter()
                    .map(|d| format!("{}:{}", d[0], d[1]))
                    .collect::<Vec<_>>()
                    .join("  "))
            };
            let _ = writeln!(out, "  degree:dim   {}", grid("dims")?);
            let _ = writeln!(out, "  alternative  {}", grid("alternative_dims")?);
            let _ = writeln!(out, "  invariant: {}", verdict(flag(res, "invariant")?));
        }
        "gdual" => {
            for key in ["dims", "dual", "double_dual"] {
                let _ = writeln!(out, "  {key:<12} {}", summands(get(res, key)?));
            }
            let _ = writeln!(out, "  double dual preserves dims: {}", verdict(flag(res, "preserved")?));
        }
        "quadratic-dual" => {
            let p = get(res, "presentation")?;
            let _ = writeln!(
                out,
                "  objects: {}, arrows: {}, relations: {}",
                arr(p, "objects")?.len(),
                arr(p, "arrows")?.len(),
                arr(p, "relations")?.len()
            );
        }
        other => return Err(schema(&format!("unknown report kind {other:?}"))),
    }
    Ok(out)
}
