//! Machine-readable output with byte-stable rendering.
//!
//! Every JSON document the tooling emits is built from the small `Json`
//! model below and rendered with a fixed key order, fixed indentation, and a
//! fixed real-number format, so identical inputs produce identical bytes.
//! CSV writers cover the two grid-shaped outputs. A structural validator
//! checks documents against the schemas shipped in `schemas/`.

use crate::bounds::{BoundDerivation, ExactBound};
use crate::catalog::{CatalogEntry, CatalogRow};
use crate::density::DensityReport;
use crate::moments::MomentTable;
use crate::rational::{format_real, rat, rat_int, Rat};
use crate::stream::PlaceStream;
use crate::verify::VerifyReport;
use num_rational::Ratio;
use std::fmt::Write as _;

/// A JSON value with insertion-ordered object keys.
#[derive(Clone, Debug, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i128),
    /// Rendered with 15 significant digits via `format_real`.
    Real(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn rational(r: &Rat) -> Json {
        Json::Obj(vec![
            ("num".into(), Json::Int(*r.numer())),
            ("den".into(), Json::Int(*r.denom())),
        ])
    }

    pub fn str(s: impl Into<String>) -> Json {
        Json::Str(s.into())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Json::Real(x) => out.push_str(&format_real(*x)),
            Json::Str(s) => write_escaped(out, s),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    item.write(out, indent + 1);
                }
                out.push('\n');
                push_indent(out, indent);
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (k, (key, value)) in fields.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    write_escaped(out, key);
                    out.push_str(": ");
                    value.write(out, indent + 1);
                }
                out.push('\n');
                push_indent(out, indent);
                out.push('}');
            }
        }
    }
}

fn push_indent(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// `catalog list` document; also the catalog.json export.
pub fn catalog_json(rows: &[CatalogRow]) -> Json {
    Json::Obj(vec![
        ("kind".into(), Json::str("catalog")),
        (
            "entries".into(),
            Json::Arr(
                rows.iter()
                    .map(|r| {
                        Json::Obj(vec![
                            ("name".into(), Json::str(&r.name)),
                            ("order".into(), Json::Int(r.order as i128)),
                            (
                                "distinguished_degrees".into(),
                                Json::Arr(
                                    r.degrees.iter().map(|&d| Json::Int(d as i128)).collect(),
                                ),
                            ),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

/// `group table` document: classes and exact character rows.
pub fn group_table_json(e: &CatalogEntry) -> Json {
    let classes = e
        .group
        .classes()
        .iter()
        .map(|c| {
            Json::Obj(vec![
                ("size".into(), Json::Int(c.size as i128)),
                ("rep_order".into(), Json::Int(c.rep_order as i128)),
            ])
        })
        .collect();
    let rows = e
        .table
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            Json::Obj(vec![
                ("degree".into(), Json::Int(e.table.degree(i) as i128)),
                (
                    "values".into(),
                    Json::Arr(
                        row.values()
                            .iter()
                            .map(|v| Json::Str(v.to_string()))
                            .collect(),
                    ),
                ),
            ])
        })
        .collect();
    let mut roles: Vec<(String, Json)> = e
        .roles
        .iter()
        .map(|(name, &row)| (name.clone(), Json::Int(row as i128)))
        .collect();
    roles.sort_by(|a, b| a.0.cmp(&b.0));
    Json::Obj(vec![
        ("kind".into(), Json::str("group-table")),
        ("name".into(), Json::str(&e.name)),
        ("order".into(), Json::Int(e.group.order() as i128)),
        ("exponent".into(), Json::Int(e.group.exponent() as i128)),
        ("class_count".into(), Json::Int(e.group.class_count() as i128)),
        ("splitting_prime".into(), Json::Int(e.table.prime() as i128)),
        ("classes".into(), Json::Arr(classes)),
        ("rows".into(), Json::Arr(rows)),
        ("roles".into(), Json::Obj(roles)),
        ("notes".into(), Json::str(&e.notes)),
    ])
}

fn moment_table_fields(t: &MomentTable) -> Vec<(String, Json)> {
    vec![
        ("A".into(), Json::rational(&t.a)),
        ("B".into(), Json::rational(&t.b)),
        ("C".into(), Json::rational(&t.c)),
        (
            "P".into(),
            t.p.as_ref().map_or(Json::Null, Json::rational),
        ),
        (
            "Q".into(),
            t.q.as_ref().map_or(Json::Null, |q| {
                Json::Arr(q.iter().map(Json::rational).collect())
            }),
        ),
        ("D".into(), Json::rational(&t.d)),
    ]
}

/// `moments` document for a catalog pair.
pub fn moments_json(
    e: &CatalogEntry,
    role_a: &str,
    role_b: &str,
    rows: (usize, usize),
    t: &MomentTable,
) -> Json {
    Json::Obj(vec![
        ("kind".into(), Json::str("moments")),
        ("entry".into(), Json::str(&e.name)),
        ("role_a".into(), Json::str(role_a)),
        ("role_b".into(), Json::str(role_b)),
        (
            "rows".into(),
            Json::Arr(vec![Json::Int(rows.0 as i128), Json::Int(rows.1 as i128)]),
        ),
        ("table".into(), Json::Obj(moment_table_fields(t))),
    ])
}

fn exact_bound_json(v: &ExactBound) -> Json {
    match v {
        ExactBound::Rational(r) => Json::Obj(vec![
            ("form".into(), Json::str("rational")),
            ("num".into(), Json::Int(*r.numer())),
            ("den".into(), Json::Int(*r.denom())),
        ]),
        ExactBound::Quadratic { p, q, r, t } => Json::Obj(vec![
            ("form".into(), Json::str("quadratic")),
            ("p".into(), Json::rational(p)),
            ("q".into(), Json::rational(q)),
            ("r".into(), Json::Int(*r)),
            ("t".into(), Json::rational(t)),
        ]),
        ExactBound::OverRadical { num, den } => Json::Obj(vec![
            ("form".into(), Json::str("over-radical")),
            ("num".into(), Json::rational(num)),
            ("den".into(), Json::str(den.to_string())),
        ]),
    }
}

/// `bound` document: value, closed form, and the derivation trace.
pub fn bound_json(source: (&str, &str), description: &str, b: &BoundDerivation) -> Json {
    let mut fields = vec![
        ("kind".into(), Json::str("bound")),
        (
            "source".into(),
            Json::Obj(vec![(source.0.to_string(), Json::str(source.1))]),
        ),
        ("description".into(), Json::str(description)),
        ("method".into(), Json::str(b.method.tag())),
        (
            "picked".into(),
            b.picked.map_or(Json::Null, |m| Json::str(m.tag())),
        ),
        ("table".into(), Json::Obj(moment_table_fields(&b.table))),
        ("value".into(), exact_bound_json(&b.value)),
        ("value_real".into(), Json::Real(b.value_f64())),
        ("closed_form".into(), Json::str(b.value.to_string())),
        ("denominator".into(), Json::str(b.denominator.to_string())),
    ];
    fields.push((
        "trace".into(),
        Json::Arr(
            b.trace
                .iter()
                .map(|step| {
                    Json::Obj(vec![
                        ("label".into(), Json::str(&step.label)),
                        ("detail".into(), Json::str(&step.detail)),
                    ])
                })
                .collect(),
        ),
    ));
    Json::Obj(fields)
}

/// `density` document: exact density, empirical grid, and the model bound.
#[allow(clippy::too_many_arguments)]
pub fn density_json(
    e: &CatalogEntry,
    role_a: &str,
    role_b: &str,
    stream: &PlaceStream,
    report: &DensityReport,
    bound: &BoundDerivation,
) -> Json {
    let grid = report
        .s_grid
        .iter()
        .zip(&report.ratios)
        .zip(&report.sums)
        .map(|((&s, &ratio), &sum)| {
            Json::Obj(vec![
                ("s".into(), Json::Real(s)),
                ("ratio".into(), Json::Real(ratio)),
                ("partial_sum".into(), Json::Real(sum)),
                ("count".into(), Json::Int(report.disagreements as i128)),
            ])
        })
        .collect();
    Json::Obj(vec![
        ("kind".into(), Json::str("density")),
        ("entry".into(), Json::str(&e.name)),
        ("role_a".into(), Json::str(role_a)),
        ("role_b".into(), Json::str(role_b)),
        ("seed".into(), Json::Int(stream.seed() as i128)),
        ("count".into(), Json::Int(stream.count() as i128)),
        ("exact_density".into(), Json::rational(&report.exact_density)),
        ("label".into(), Json::str(report.label)),
        ("grid".into(), Json::Arr(grid)),
        ("extrapolated".into(), Json::Real(report.extrapolated)),
        ("freq_ok".into(), Json::Bool(stream.freq_ok())),
        ("max_z".into(), Json::Real(stream.max_z())),
        (
            "model_bound".into(),
            Json::Obj(vec![
                ("method".into(), Json::str(bound.method.tag())),
                (
                    "picked".into(),
                    bound.picked.map_or(Json::Null, |m| Json::str(m.tag())),
                ),
                ("value".into(), exact_bound_json(&bound.value)),
                ("value_real".into(), Json::Real(bound.value_f64())),
                ("closed_form".into(), Json::str(bound.value.to_string())),
            ]),
        ),
    ])
}

/// `density` CSV: one row per grid point.
pub fn density_csv(report: &DensityReport) -> String {
    let mut out = String::from("s,ratio,partial_sum,count\n");
    for ((&s, &ratio), &sum) in report
        .s_grid
        .iter()
        .zip(&report.ratios)
        .zip(&report.sums)
    {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_real(s),
            format_real(ratio),
            format_real(sum),
            report.disagreements
        );
    }
    out
}

/// `stream` document: the sampled places with exact and numeric values.
pub fn stream_json(e: &CatalogEntry, role: &str, stream: &PlaceStream) -> Json {
    let row = e.role_row(role).expect("caller resolved the role");
    let values = row.values();
    let places = stream
        .norms()
        .iter()
        .zip(stream.classes())
        .map(|(&norm, &class)| {
            let v = &values[class as usize];
            let (re, im) = v.to_c64();
            Json::Obj(vec![
                ("norm".into(), Json::Int(norm as i128)),
                ("class".into(), Json::Int(class as i128)),
                ("value".into(), Json::Str(v.to_string())),
                ("re".into(), Json::Real(re)),
                ("im".into(), Json::Real(im)),
            ])
        })
        .collect();
    Json::Obj(vec![
        ("kind".into(), Json::str("stream")),
        ("entry".into(), Json::str(&e.name)),
        ("role".into(), Json::str(role)),
        ("seed".into(), Json::Int(stream.seed() as i128)),
        ("count".into(), Json::Int(stream.count() as i128)),
        ("freq_ok".into(), Json::Bool(stream.freq_ok())),
        ("max_z".into(), Json::Real(stream.max_z())),
        ("places".into(), Json::Arr(places)),
    ])
}

/// `stream` CSV: one row per place.
pub fn stream_csv(e: &CatalogEntry, role: &str, stream: &PlaceStream) -> String {
    let row = e.role_row(role).expect("caller resolved the role");
    let values = row.values();
    let mut out = String::from("place,norm,class,a_re,a_im\n");
    for (i, (&norm, &class)) in stream.norms().iter().zip(stream.classes()).enumerate() {
        let (re, im) = values[class as usize].to_c64();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            i,
            norm,
            class,
            format_real(re),
            format_real(im)
        );
    }
    out
}

/// `verify` document.
pub fn verify_json(report: &VerifyReport) -> Json {
    Json::Obj(vec![
        ("kind".into(), Json::str("verify")),
        ("passed".into(), Json::Bool(report.passed())),
        (
            "checks".into(),
            Json::Arr(
                report
                    .lines
                    .iter()
                    .map(|l| {
                        Json::Obj(vec![
                            ("name".into(), Json::str(&l.name)),
                            ("passed".into(), Json::Bool(l.passed)),
                            ("hard".into(), Json::Bool(l.hard)),
                            ("detail".into(), Json::str(&l.detail)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

fn parse_rat_field(v: &serde_json::Value, key: &str) -> Result<Rat, String> {
    if let Some(i) = v.as_i64() {
        return Ok(rat_int(i as i128));
    }
    if let Some(obj) = v.as_object() {
        let num = obj
            .get("num")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| format!("field {key}: missing integer \"num\""))?;
        let den = obj
            .get("den")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| format!("field {key}: missing integer \"den\""))?;
        if den == 0 {
            return Err(format!("field {key}: zero denominator"));
        }
        return Ok(rat(num as i128, den as i128));
    }
    Err(format!(
        "field {key}: expected an integer or a {{num, den}} object"
    ))
}

/// Parse a user-supplied moment table: JSON object with integer or
/// {num, den} entries A, B, C, D and optional P and Q (array of 4).
pub fn parse_moment_table(doc: &serde_json::Value) -> Result<MomentTable, String> {
    let obj = doc
        .as_object()
        .ok_or_else(|| "moment table must be a JSON object".to_string())?;
    for key in obj.keys() {
        if !["A", "B", "C", "P", "Q", "D"].contains(&key.as_str()) {
            return Err(format!("unknown moment table field \"{key}\""));
        }
    }
    let need = |key: &str| -> Result<Rat, String> {
        let v = obj
            .get(key)
            .ok_or_else(|| format!("moment table is missing \"{key}\""))?;
        parse_rat_field(v, key)
    };
    let a = need("A")?;
    let b = need("B")?;
    let c = need("C")?;
    let d = need("D")?;
    let p = match obj.get("P") {
        None | Some(serde_json::Value::Null) => None,
        Some(v) => Some(parse_rat_field(v, "P")?),
    };
    let q = match obj.get("Q") {
        None | Some(serde_json::Value::Null) => None,
        Some(serde_json::Value::Array(items)) if items.len() == 4 => {
            let mut out = [Ratio::default(); 4];
            for (i, item) in items.iter().enumerate() {
                out[i] = parse_rat_field(item, "Q")?;
            }
            Some(out)
        }
        Some(_) => return Err("field Q: expected an array of 4 entries".to_string()),
    };
    Ok(MomentTable { a, b, c, p, q, d })
}

/// A shipped schema by document kind, e.g. "bound" or "catalog".
pub fn schema_text(kind: &str) -> Option<&'static str> {
    match kind {
        "catalog" => Some(include_str!("../schemas/catalog.schema.json")),
        "group-table" => Some(include_str!("../schemas/group-table.schema.json")),
        "moments" => Some(include_str!("../schemas/moments.schema.json")),
        "bound" => Some(include_str!("../schemas/bound.schema.json")),
        "density" => Some(include_str!("../schemas/density.schema.json")),
        "stream" => Some(include_str!("../schemas/stream.schema.json")),
        "verify" => Some(include_str!("../schemas/verify.schema.json")),
        _ => None,
    }
}

/// Structural schema check over the subset the shipped schemas use:
/// type, required, properties, additionalProperties, items, enum, oneOf.
pub fn validate_schema(
    doc: &serde_json::Value,
    schema: &serde_json::Value,
) -> Result<(), String> {
    validate_at(doc, schema, "$")
}

fn type_name(v: &serde_json::Value) -> &'static str {
    match v {
        serde_json::Value::Null => "null",
        serde_json::Value::Bool(_) => "boolean",
        serde_json::Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                "integer"
            } else {
                "number"
            }
        }
        serde_json::Value::String(_) => "string",
        serde_json::Value::Array(_) => "array",
        serde_json::Value::Object(_) => "object",
    }
}

fn validate_at(
    doc: &serde_json::Value,
    schema: &serde_json::Value,
    path: &str,
) -> Result<(), String> {
    let s = schema
        .as_object()
        .ok_or_else(|| format!("{path}: schema node is not an object"))?;

    if let Some(variants) = s.get("oneOf").and_then(|v| v.as_array()) {
        let mut errs = Vec::new();
        for (i, variant) in variants.iter().enumerate() {
            match validate_at(doc, variant, path) {
                Ok(()) => return Ok(()),
                Err(e) => errs.push(format!("variant {i}: {e}")),
            }
        }
        return Err(format!("{path}: no oneOf variant matched ({})", errs.join("; ")));
    }

    if let Some(expected) = s.get("type").and_then(|v| v.as_str()) {
        let actual = type_name(doc);
        let ok = match expected {
            "number" => actual == "number" || actual == "integer",
            other => actual == other,
        };
        if !ok {
            return Err(format!("{path}: expected {expected}, found {actual}"));
        }
    }

    if let Some(allowed) = s.get("enum").and_then(|v| v.as_array()) {
        if !allowed.contains(doc) {
            return Err(format!("{path}: value not in enum"));
        }
    }

    if let Some(obj) = doc.as_object() {
        if let Some(required) = s.get("required").and_then(|v| v.as_array()) {
            for key in required.iter().filter_map(|k| k.as_str()) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required field \"{key}\""));
                }
            }
        }
        if let Some(props) = s.get("properties").and_then(|v| v.as_object()) {
            for (key, sub) in props {
                if let Some(value) = obj.get(key) {
                    validate_at(value, sub, &format!("{path}.{key}"))?;
                }
            }
            if s.get("additionalProperties") == Some(&serde_json::Value::Bool(false)) {
                for key in obj.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("{path}: unexpected field \"{key}\""));
                    }
                }
            }
        }
    }

    if let (Some(items), Some(arr)) = (s.get("items"), doc.as_array()) {
        for (i, item) in arr.iter().enumerate() {
            validate_at(item, items, &format!("{path}[{i}]"))?;
        }
    }

    Ok(())
}

/// Parse rendered output and check it against the schema for `kind`.
pub fn check_rendered(kind: &str, rendered: &str) -> Result<(), String> {
    let doc: serde_json::Value =
        serde_json::from_str(rendered).map_err(|e| format!("output is not JSON: {e}"))?;
    let schema_src =
        schema_text(kind).ok_or_else(|| format!("no schema for kind \"{kind}\""))?;
    let schema: serde_json::Value =
        serde_json::from_str(schema_src).map_err(|e| format!("schema is not JSON: {e}"))?;
    validate_schema(&doc, &schema)
}
