//! JSON documents: tables, decomposition matrices, labellings and groups.
//!
//! Integers are written as bare JSON numbers of any length (the reader also
//! accepts decimal strings). Writers lay out one matrix row per line with a
//! fixed key order, so equal inputs give byte-identical output.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde_json::{Map, Value};

use crate::aut::PermGroup;
use crate::brauer::DecompositionMatrix;
use crate::error::FormatError;
use crate::partition::Partition;
use crate::relabel::{Labelling, ReconstructionReport};
use crate::tables::{CharTable, GroupKind, Label, Sign};
use crate::AlgebraicValue;

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(msg.into())
}

fn big_int(v: &Value, what: &str) -> Result<BigInt, FormatError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(schema(format!("{what}: expected an integer, got {v}"))),
    };
    text.parse::<BigInt>()
        .map_err(|_| schema(format!("{what}: {text} is not an integer")))
}

fn small_int(v: &Value, what: &str) -> Result<u32, FormatError> {
    let b = big_int(v, what)?;
    u32::try_from(&b).map_err(|_| schema(format!("{what}: {b} out of range")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| schema(format!("{what}: expected an array")))
}

pub fn parse_entry(v: &Value) -> Result<AlgebraicValue, FormatError> {
    match v {
        Value::Object(m) => {
            let get = |k: &str| {
                m.get(k)
                    .ok_or_else(|| schema(format!("entry object lacks \"{k}\"")))
                    .and_then(|x| big_int(x, k))
            };
            Ok(AlgebraicValue::new(get("a")?, get("b")?, get("D")?)?)
        }
        _ => Ok(AlgebraicValue::Int(big_int(v, "entry")?)),
    }
}

pub fn entry_json(v: &AlgebraicValue) -> String {
    match v {
        AlgebraicValue::Int(x) => x.to_string(),
        AlgebraicValue::Surd { a, b, d } => format!("{{\"a\":{a},\"b\":{b},\"D\":{d}}}"),
    }
}

fn parse_partition(v: &Value) -> Result<Partition, FormatError> {
    let parts = array(v, "partition")?
        .iter()
        .map(|x| small_int(x, "part"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts)?)
}

pub fn parse_label(v: &Value) -> Result<Label, FormatError> {
    match v {
        Value::Array(_) => Ok(Label::plain(parse_partition(v)?)),
        Value::Object(m) => {
            let p = parse_partition(m.get("partition").ok_or_else(|| schema("label lacks \"partition\""))?)?;
            let sign = match m.get("sign") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) if s == "+" => Some(Sign::Plus),
                Some(Value::String(s)) if s == "-" => Some(Sign::Minus),
                Some(other) => return Err(schema(format!("bad sign {other}"))),
            };
            Ok(Label { partition: p, sign })
        }
        _ => Err(schema(format!("bad label {v}"))),
    }
}

fn partition_json(p: &Partition) -> String {
    let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn label_json(l: &Label) -> String {
    match l.sign {
        None => partition_json(&l.partition),
        Some(s) => format!(
            "{{\"partition\":{},\"sign\":\"{}\"}}",
            partition_json(&l.partition),
            s.as_str()
        ),
    }
}

fn push_list(out: &mut String, key: &str, items: &[String], last: bool) {
    let _ = write!(out, "  \"{key}\": [{}]", items.join(", "));
    out.push_str(if last { "\n" } else { ",\n" });
}

fn push_matrix(out: &mut String, key: &str, rows: &[Vec<String>], last: bool) {
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, r) in rows.iter().enumerate() {
        let sep = if i + 1 == rows.len() { "" } else { "," };
        let _ = writeln!(out, "    [{}]{sep}", r.join(", "));
    }
    out.push_str(if last { "  ]\n" } else { "  ],\n" });
}

pub fn write_table(t: &CharTable) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"group\": \"{}\",", t.group().as_str());
    let _ = writeln!(out, "  \"n\": {},", t.n());
    if let Some(p) = t.p() {
        let _ = writeln!(out, "  \"p\": {p},");
    }
    let rows: Vec<Vec<String>> = t.values().iter().map(|r| r.iter().map(entry_json).collect()).collect();
    let mut tail: Vec<(&str, Vec<String>)> = Vec::new();
    if let Some(l) = t.row_labels() {
        tail.push(("rowLabels", l.iter().map(label_json).collect()));
    }
    if let Some(l) = t.col_labels() {
        tail.push(("colLabels", l.iter().map(label_json).collect()));
    }
    if let Some(s) = t.class_sizes() {
        tail.push(("classSizes", s.iter().map(|x| x.to_string()).collect()));
    }
    push_matrix(&mut out, "values", &rows, tail.is_empty());
    let count = tail.len();
    for (i, (k, items)) in tail.into_iter().enumerate() {
        push_list(&mut out, k, &items, i + 1 == count);
    }
    out.push_str("}\n");
    out
}

fn object(v: &Value) -> Result<&Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| schema("document must be a JSON object"))
}

pub fn read_table(text: &str) -> Result<CharTable, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    let m = object(&doc)?;
    let group = m
        .get("group")
        .and_then(Value::as_str)
        .and_then(GroupKind::parse)
        .ok_or_else(|| schema("\"group\" must be one of S, A, S-mod-p, A-mod-p"))?;
    let n = small_int(m.get("n").ok_or_else(|| schema("missing \"n\""))?, "n")?;
    let p = match m.get("p") {
        None | Some(Value::Null) => None,
        Some(v) => Some(small_int(v, "p")?),
    };
    if group.is_modular() != p.is_some() {
        return Err(schema("\"p\" must be given exactly for modular groups"));
    }
    let values = array(m.get("values").ok_or_else(|| schema("missing \"values\""))?, "values")?
        .iter()
        .map(|r| array(r, "values row")?.iter().map(parse_entry).collect())
        .collect::<Result<Vec<Vec<_>>, FormatError>>()?;
    let mut t = CharTable::new(group, n, p, values).map_err(|e| schema(e.to_string()))?;
    if let Some(v) = m.get("rowLabels") {
        let l = array(v, "rowLabels")?
            .iter()
            .map(parse_label)
            .collect::<Result<_, _>>()?;
        t = t.with_row_labels(l).map_err(|e| schema(e.to_string()))?;
    }
    if let Some(v) = m.get("colLabels") {
        let l = array(v, "colLabels")?
            .iter()
            .map(parse_label)
            .collect::<Result<_, _>>()?;
        t = t.with_col_labels(l).map_err(|e| schema(e.to_string()))?;
    }
    if let Some(v) = m.get("classSizes") {
        let s = array(v, "classSizes")?
            .iter()
            .map(|x| {
                big_int(x, "class size")?
                    .to_biguint()
                    .filter(|b| b > &BigUint::from(0u32))
                    .ok_or_else(|| schema("class sizes must be positive"))
            })
            .collect::<Result<_, _>>()?;
        t = t.with_class_sizes(s).map_err(|e| schema(e.to_string()))?;
    }
    Ok(t)
}

/// The `values` matrix of any document, labelled or not, including plain
/// matrices that are not tables of symmetric or alternating groups.
pub fn read_matrix(text: &str) -> Result<Vec<Vec<AlgebraicValue>>, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    let values = match &doc {
        Value::Array(_) => &doc,
        _ => object(&doc)?
            .get("values")
            .ok_or_else(|| schema("missing \"values\""))?,
    };
    array(values, "values")?
        .iter()
        .map(|r| array(r, "values row")?.iter().map(parse_entry).collect())
        .collect()
}

pub fn read_decomposition(text: &str) -> Result<DecompositionMatrix, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    let m = object(&doc)?;
    let field = |k: &str| m.get(k).ok_or_else(|| schema(format!("missing \"{k}\"")));
    let n = small_int(field("n")?, "n")?;
    let p = small_int(field("p")?, "p")?;
    let rows = array(field("rows")?, "rows")?
        .iter()
        .map(parse_partition)
        .collect::<Result<Vec<_>, _>>()?;
    let cols = array(field("cols")?, "cols")?
        .iter()
        .map(parse_partition)
        .collect::<Result<Vec<_>, _>>()?;
    let entries = array(field("entries")?, "entries")?
        .iter()
        .map(|r| {
            array(r, "entries row")?
                .iter()
                .map(|x| {
                    let b = big_int(x, "entry")?;
                    i64::try_from(&b).map_err(|_| schema(format!("entry {b} out of range")))
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<i64>>, FormatError>>()?;
    DecompositionMatrix::new(n, p, rows, cols, entries).map_err(|e| schema(e.to_string()))
}

pub fn write_decomposition(d: &DecompositionMatrix) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"n\": {},", d.n());
    let _ = writeln!(out, "  \"p\": {},", d.p());
    push_list(
        &mut out,
        "rows",
        &d.rows().iter().map(partition_json).collect::<Vec<_>>(),
        false,
    );
    push_list(
        &mut out,
        "cols",
        &d.cols().iter().map(partition_json).collect::<Vec<_>>(),
        false,
    );
    let entries: Vec<Vec<String>> = d
        .entries()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    push_matrix(&mut out, "entries", &entries, true);
    out.push_str("}\n");
    out
}

/// 1-based image form `[σ(1), …, σ(k)]`.
pub fn permutation_json(perm: &[usize]) -> String {
    let items: Vec<String> = perm.iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", items.join(","))
}

pub fn parse_permutation(v: &Value) -> Result<Vec<usize>, FormatError> {
    let perm = array(v, "permutation")?
        .iter()
        .map(|x| {
            let i = small_int(x, "point")? as usize;
            i.checked_sub(1).ok_or_else(|| schema("points are 1-based"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = vec![false; perm.len()];
    for &i in &perm {
        if i >= perm.len() || std::mem::replace(&mut seen[i], true) {
            return Err(schema("not a permutation"));
        }
    }
    Ok(perm)
}

/// Sidecar written next to a scrambled table: new row `i` is old row
/// `rows[i]`, likewise for columns.
pub fn write_scramble_sidecar(seed: u64, rows: &[usize], cols: &[usize]) -> String {
    format!(
        "{{\n  \"seed\": {seed},\n  \"rows\": {},\n  \"cols\": {}\n}}\n",
        permutation_json(rows),
        permutation_json(cols)
    )
}

pub fn read_scramble_sidecar(text: &str) -> Result<(u64, Vec<usize>, Vec<usize>), FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    let m = object(&doc)?;
    let seed = big_int(m.get("seed").ok_or_else(|| schema("missing \"seed\""))?, "seed")?;
    let seed = u64::try_from(&seed).map_err(|_| schema("seed out of range"))?;
    let rows = parse_permutation(m.get("rows").ok_or_else(|| schema("missing \"rows\""))?)?;
    let cols = parse_permutation(m.get("cols").ok_or_else(|| schema("missing \"cols\""))?)?;
    Ok((seed, rows, cols))
}

fn labels_json(ls: &[Label]) -> String {
    format!("[{}]", ls.iter().map(label_json).collect::<Vec<_>>().join(", "))
}

pub fn labelling_json(l: &Labelling) -> String {
    format!(
        "{{\"rows\": {}, \"cols\": {}}}",
        labels_json(&l.rows),
        labels_json(&l.cols)
    )
}

fn string_list(items: &[String]) -> String {
    let quoted: Vec<String> = items.iter().map(|s| Value::String(s.clone()).to_string()).collect();
    format!("[{}]", quoted.join(", "))
}

/// Every labelling on its own line, followed by the counts and the trace.
pub fn write_report(r: &ReconstructionReport) -> String {
    let mut out = String::from("{\n  \"labellings\": [\n");
    for (i, l) in r.labellings.iter().enumerate() {
        let sep = if i + 1 == r.labellings.len() { "" } else { "," };
        let _ = writeln!(out, "    {}{sep}", labelling_json(l));
    }
    out.push_str("  ],\n");
    let _ = writeln!(out, "  \"count\": {},", r.labellings.len());
    let _ = writeln!(out, "  \"labellingClasses\": {},", r.labelling_classes);
    let _ = writeln!(out, "  \"signOrbitNote\": {},", r.sign_orbit_note);
    let _ = writeln!(out, "  \"trace\": {}", string_list(&r.trace));
    out.push_str("}\n");
    out
}

/// `{"order": .., "generators": [..], "orbitSizes": [..]}`.
pub fn group_json(g: &PermGroup) -> String {
    let gens: Vec<String> = g.generators().iter().map(|p| permutation_json(p)).collect();
    let orbits: Vec<String> = g.orbit_sizes().iter().map(|x| x.to_string()).collect();
    format!(
        "{{\"order\": {}, \"generators\": [{}], \"orbitSizes\": [{}]}}",
        g.order(),
        gens.join(", "),
        orbits.join(", ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::brauer::DecompositionMatrix;
    use crate::tables::{build_an_table, build_sn_table};

    #[test]
    fn table_round_trip_is_byte_stable() {
        for t in [
            build_sn_table(5).unwrap(),
            build_an_table(5).unwrap(),
            build_an_table(4).unwrap(),
        ] {
            let text = write_table(&t);
            let back = read_table(&text).unwrap();
            assert_eq!(back, t);
            assert_eq!(write_table(&back), text);
        }
    }

    #[test]
    fn a5_entries_use_the_object_form() {
        let text = write_table(&build_an_table(5).unwrap());
        assert!(text.contains("{\"a\":1,\"b\":1,\"D\":5}"));
        assert!(text.contains("{\"a\":1,\"b\":-1,\"D\":5}"));
        assert!(text.contains("{\"partition\":[3,1,1],\"sign\":\"+\"}"));
    }

    #[test]
    fn strings_and_huge_integers_are_accepted() {
        let doc = r#"{"group":"S","n":1,"values":[["123456789012345678901234567890"]]}"#;
        let t = read_table(doc).unwrap();
        assert_eq!(t.value(0, 0).to_string(), "123456789012345678901234567890");
        let doc = r#"{"group":"S","n":1,"values":[[123456789012345678901234567890]]}"#;
        let t2 = read_table(doc).unwrap();
        assert_eq!(t, t2);
        assert!(write_table(&t2).contains("[123456789012345678901234567890]"));
    }

    #[test]
    fn malformed_documents() {
        assert!(read_table("[1]").is_err());
        assert!(read_table(r#"{"group":"X","n":1,"values":[[1]]}"#).is_err());
        assert!(read_table(r#"{"group":"S","n":2,"values":[[1,1],[1]]}"#).is_err());
        assert!(read_table(r#"{"group":"S-mod-p","n":2,"values":[[1]]}"#).is_err());
        assert!(read_table(r#"{"group":"S","n":2,"values":[[{"a":1,"b":1,"D":3}]]}"#).is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let d = DecompositionMatrix::semisimple(4, 5).unwrap();
        let text = write_decomposition(&d);
        assert_eq!(read_decomposition(&text).unwrap(), d);
    }

    #[test]
    fn permutations_are_one_based() {
        assert_eq!(permutation_json(&[1, 0, 2]), "[2,1,3]");
        let v: Value = serde_json::from_str("[2,1,3]").unwrap();
        assert_eq!(parse_permutation(&v).unwrap(), vec![1, 0, 2]);
        let bad: Value = serde_json::from_str("[1,1]").unwrap();
        assert!(parse_permutation(&bad).is_err());
    }
}
