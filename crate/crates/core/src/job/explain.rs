use std::fmt::Write as _;
use std::path::Path;

use serde_json::Value;

use super::SCHEMA_VERSION;
use crate::error::{Error, Result};

fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut w = vec![0; cols];
    for r in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        for (k, c) in r.iter().enumerate().take(cols) {
            w[k] = w[k].max(c.chars().count());
        }
    }
    let line = |r: &[String]| -> String {
        let cells: Vec<String> = r.iter().enumerate().map(|(k, c)| format!("{c:<width$}", width = w[k])).collect();
        cells.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    out += &(w.iter().map(|&n| "-".repeat(n)).collect::<Vec<_>>().join("  ") + "\n");
    for r in rows {
        out += &line(r);
    }
    out
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::BadReport(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| Error::BadReport(format!("`{key}` is not an array")))
}

fn pairing_grid(arm: &Value) -> Result<String> {
    let gens = array(arm, "generators")?;
    let table = array(arm, "table")?;
    let roots = text(field(arm, "roots")?);
    let names: Vec<String> = (0..gens.len()).map(|k| format!("g{}", k + 1)).collect();
    let mut out = String::new();
    for (n, g) in names.iter().zip(gens) {
        let _ = writeln!(out, "  {n} = {}", text(g));
    }
    let _ = writeln!(out, "pairing <gi, gj> as powers of a primitive {roots}-th root of unity:");
    let header: Vec<String> = std::iter::once(String::new()).chain(names.iter().cloned()).collect();
    let rows: Vec<Vec<String>> = table
        .iter()
        .zip(&names)
        .map(|(r, n)| {
            let cells = r.as_array().map(|c| c.iter().map(text).collect()).unwrap_or_default();
            std::iter::once(n.clone()).chain::<Vec<String>>(cells).collect()
        })
        .collect();
    out += &grid(&header, &rows);
    Ok(out)
}

fn factors(list: &[Value]) -> String {
    let header = ["factor", "degree", "a", "b", "zeta"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = list
        .iter()
        .enumerate()
        .map(|(k, f)| {
            vec![
                format!("{}", k + 1),
                text(&f["n"]),
                text(&f["a"]),
                text(&f["b"]),
                text(&f["zeta"]),
            ]
        })
        .collect();
    grid(&header, &rows)
}

fn symplectic(base: &Value) -> Result<String> {
    let header = ["pair", "g", "h", "order", "<g,h>"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = array(base, "pairs")?
        .iter()
        .enumerate()
        .map(|(k, p)| {
            vec![
                format!("{}", k + 1),
                text(&p["g"]),
                text(&p["h"]),
                text(&p["order"]),
                text(&p["value"]),
            ]
        })
        .collect();
    Ok(grid(&header, &rows))
}

fn crossed(d: &Value) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Kummer subfield: radicands {} of degrees {}, variables {}",
        d["radicands"], d["degrees"], d["vars"]
    );
    if let Some(b) = d.get("build") {
        let _ = writeln!(
            out,
            "E' of dimension {} over {}, centralizer of dimension {}, associative: {}",
            text(&b["dim"]),
            text(&b["field"]),
            text(&b["centralizer_dim"]),
            text(&b["associative"])
        );
        let _ = writeln!(out, "cocycle f(s,t) = prod t_i^e_i and c(s,t) = z_s z_t z_(st)^-1:");
        let header = ["s", "t", "f(s,t)", "c(s,t)"].map(String::from).to_vec();
        let rows: Vec<Vec<String>> = array(b, "cocycle_table")?
            .iter()
            .map(|e| vec![text(&e["sigma"]), text(&e["tau"]), text(&e["f"]), text(&e["c"])])
            .collect();
        out += &grid(&header, &rows);
    }
    if let Some(l) = d.get("skolem_noether") {
        let _ = writeln!(out, "Skolem-Noether lift: z = {}", l["witness"]["z"]);
    }
    for (key, title) in [("lifted", "lifted armature on E'"), ("nu", "nu image in A"), ("residue", "residue armature on C")] {
        if let Some(x) = d.get(key) {
            let _ = writeln!(out, "{title}:");
            out += &pairing_grid(&x["armature"])?;
        }
    }
    if let Some(x) = d.get("residue") {
        let _ = writeln!(
            out,
            "value classes {}, kernel order {}, radical order {}, radical is Kum: {}",
            text(&x["value_classes"]),
            text(&x["kernel_order"]),
            text(&x["radical_order"]),
            text(&x["radical_is_kum"])
        );
    }
    if let Some(x) = d.get("decompose") {
        let _ = writeln!(out, "cyclic factors (k_i, s_i, delta_i) and E'-side parameters:");
        let header = ["i", "radicand", "degree", "delta", "delta*t_i"].map(String::from).to_vec();
        let rows: Vec<Vec<String>> = array(x, "cyclic")?
            .iter()
            .enumerate()
            .map(|(k, c)| {
                vec![
                    format!("{}", k + 1),
                    text(&c["radicand"]),
                    text(&c["degree"]),
                    text(&c["delta"]),
                    text(&c["e_parameter"]),
                ]
            })
            .collect();
        out += &grid(&header, &rows);
        let syms = array(x, "symbols")?;
        if !syms.is_empty() {
            let _ = writeln!(out, "remaining symbol factors:");
            out += &factors(syms);
        }
    }
    if let Some(b) = d.get("brauer") {
        let _ = writeln!(
            out,
            "Brauer witness: dim R' = {}, centralizer {} (expected {}), pass {}",
            text(&b["dim_r"]),
            text(&b["centralizer_dim"]),
            text(&b["expected_centralizer_dim"]),
            text(&b["pass"])
        );
    }
    if let Some(l) = d.get("laws") {
        let _ = writeln!(
            out,
            "valuation laws on {} pairs: multiplicative {}, ultrametric {}, distinct components {}",
            text(&l["pairs"]),
            text(&l["multiplicative"]),
            text(&l["ultrametric"]),
            text(&l["distinct_components"])
        );
    }
    Ok(out)
}

fn sqcentral(d: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "g = {}", text(&d["g"]));
    let _ = writeln!(out, "case {} ({})", text(&d["case"]), text(&d["square"]));
    if let Some(dims) = d["dims"].as_array() {
        let _ = writeln!(
            out,
            "dim (g - l)A = {}, dim (g + l)A = {}",
            text(&dims[0]),
            text(&dims[1])
        );
    }
    let _ = writeln!(out, "Trd(g) = {}", text(&d["trace"]));
    let _ = writeln!(out, "verdict {}", text(&d["verdict"]));
    if !d["reason"].is_null() {
        let _ = writeln!(out, "  {}", text(&d["reason"]));
    }
    if let Some(w) = d["witness"].as_object() {
        let _ = writeln!(out, "witness f = {}", text(&w["f"]));
        let _ = writeln!(out, "  g^2 = {}, f^2 = {}, span dimension {}", text(&w["g2"]), text(&w["f2"]), text(&w["span_dim"]));
    }
    out
}

/// Render a report (a task report or a job summary) as text.
pub fn explain_value(v: &Value) -> Result<String> {
    match v.get("schema_version").and_then(Value::as_u64) {
        Some(s) if s == SCHEMA_VERSION as u64 => {}
        Some(s) => return Err(Error::BadReport(format!("schema_version {s} is not supported"))),
        None => return Err(Error::BadReport("missing schema_version".into())),
    }
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| Error::BadReport("`kind` is not a string".into()))?;
    let mut out = String::new();
    if kind == "summary" {
        let _ = writeln!(out, "job over {} with seed {}: pass {}", v["tower"], text(&v["seed"]), text(&v["pass"]));
        if !v["error"].is_null() {
            let _ = writeln!(out, "stopped: {}", text(&v["error"]));
        }
        let header = ["task", "kind", "pass", "file"].map(String::from).to_vec();
        let rows: Vec<Vec<String>> = array(v, "tasks")?
            .iter()
            .map(|t| vec![text(&t["name"]), text(&t["kind"]), text(&t["pass"]), text(&t["file"])])
            .collect();
        out += &grid(&header, &rows);
        return Ok(out);
    }
    let _ = writeln!(out, "{} `{}`: pass {}", kind, text(field(v, "name")?), text(field(v, "pass")?));
    if let Some(e) = v.get("error").filter(|e| !e.is_null()) {
        let _ = writeln!(out, "error: {}", text(e));
        return Ok(out);
    }
    let d = field(v, "data")?;
    match kind {
        "verify_armature" => {
            if d.get("table").is_some() {
                out += &pairing_grid(d)?;
            }
            if let Some(f) = d["report"]["failure"].as_str() {
                let _ = writeln!(out, "failure: {f}");
            }
        }
        "decompose" => {
            out += &pairing_grid(d)?;
            let _ = writeln!(out, "symplectic base:");
            out += &symplectic(field(d, "symplectic_base")?)?;
            let _ = writeln!(out, "factors:");
            out += &factors(array(d, "factors")?);
            let _ = writeln!(
                out,
                "isomorphism checked on {} basis pairs: {}",
                text(&d["witness"]["pairs_checked"]),
                text(&d["witness"]["pass"])
            );
        }
        "crossed" => out += &crossed(d)?,
        "sqcentral" => out += &sqcentral(d),
        other => return Err(Error::BadReport(format!("unknown report kind `{other}`"))),
    }
    Ok(out)
}

pub fn explain(path: &Path) -> Result<String> {
    let s = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&s).map_err(|e| Error::BadReport(e.to_string()))?;
    explain_value(&v)
}
