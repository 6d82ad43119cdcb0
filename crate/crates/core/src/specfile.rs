//! Module spec files: a small JSON schema describing which construction to
//! build and with what exact-rational parameters. All rationals are "p/q"
//! strings; bare JSON floats anywhere in the document are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::Value;
use thiserror::Error;

use crate::algebra::Gen;
use crate::halfint::HalfInt;
use crate::modules::{ActionTable, ModuleParams, ModuleSpec, WhittakerData};
use crate::rat::{rat_from_string, rat_int, Rat};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read spec file: {0}")]
    Io(#[from] std::io::Error),
    #[error("spec file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
}

fn field_err(field: &str, msg: impl Into<String>) -> SpecError {
    SpecError::Field {
        field: field.to_string(),
        msg: msg.into(),
    }
}

/// A parsed spec file: the construction plus optional run overrides.
#[derive(Clone, Debug)]
pub struct SpecFile {
    pub module: ModuleSpec,
    pub truncation: Option<HalfInt>,
    pub budget: Option<usize>,
}

pub fn load_spec(path: &Path) -> Result<SpecFile, SpecError> {
    let text = std::fs::read_to_string(path)?;
    parse_spec(&text)
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let root: Value = serde_json::from_str(text)?;
    reject_floats(&root, "$")?;
    let obj = as_object(&root, "$")?;
    check_keys(
        obj,
        "$",
        &[
            "construction",
            "params",
            "whittaker",
            "q",
            "m",
            "action_table",
            "tensor",
            "truncation",
            "budget",
        ],
    )?;

    let construction = get_str(obj, "construction")?;
    let module = match construction {
        "verma" => ModuleSpec::Verma(parse_params(obj, true)?),
        "svir-verma" => ModuleSpec::SvirVerma(parse_params(obj, true)?),
        "fock" => ModuleSpec::Fock(parse_params(obj, true)?),
        "whittaker" => ModuleSpec::Whittaker(parse_whittaker(obj)?),
        "induced-g0q" => ModuleSpec::InducedG0q {
            q: get_int(obj, "q")?,
            table: parse_table(obj)?,
            params: parse_params(obj, true)?,
        },
        "hc-induced" => ModuleSpec::HcInduced {
            m: get_int(obj, "m")?,
            table: parse_table(obj)?,
            params: parse_params(obj, true)?,
        },
        "tensor" => {
            let t = obj
                .get("tensor")
                .ok_or_else(|| field_err("tensor", "required for the tensor construction"))?;
            let t = as_object(t, "tensor")?;
            check_keys(t, "tensor", &["left", "right"])?;
            let left = t
                .get("left")
                .ok_or_else(|| field_err("tensor.left", "missing"))?;
            let right = t
                .get("right")
                .ok_or_else(|| field_err("tensor.right", "missing"))?;
            ModuleSpec::Tensor {
                left: parse_params_value(left, "tensor.left")?,
                right: parse_params_value(right, "tensor.right")?,
            }
        }
        other => {
            return Err(field_err(
                "construction",
                format!("unknown construction {other:?}"),
            ))
        }
    };

    let truncation = match obj.get("truncation") {
        None => None,
        Some(Value::String(s)) => Some(
            HalfInt::parse(s)
                .map_err(|e| field_err("truncation", e))?,
        ),
        Some(_) => {
            return Err(field_err(
                "truncation",
                "expected a string like \"4\" or \"7/2\"",
            ))
        }
    };
    let budget = match obj.get("budget") {
        None => None,
        Some(v) => {
            let n = get_int_value(v, "budget")?;
            if n < 0 {
                return Err(field_err("budget", "must be nonnegative"));
            }
            Some(n as usize)
        }
    };

    Ok(SpecFile {
        module,
        truncation,
        budget,
    })
}

fn reject_floats(v: &Value, path: &str) -> Result<(), SpecError> {
    match v {
        Value::Number(n) => {
            if !n.is_i64() && !n.is_u64() {
                return Err(field_err(
                    path,
                    "floating-point literals are not allowed; write rationals as \"p/q\" strings",
                ));
            }
            Ok(())
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                reject_floats(item, &format!("{path}[{i}]"))?;
            }
            Ok(())
        }
        Value::Object(map) => {
            for (k, item) in map {
                reject_floats(item, &format!("{path}.{k}"))?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn as_object<'a>(
    v: &'a Value,
    path: &str,
) -> Result<&'a serde_json::Map<String, Value>, SpecError> {
    v.as_object()
        .ok_or_else(|| field_err(path, "expected an object"))
}

fn check_keys(
    obj: &serde_json::Map<String, Value>,
    path: &str,
    allowed: &[&str],
) -> Result<(), SpecError> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(field_err(
                &format!("{path}.{k}"),
                format!("unknown field (allowed: {})", allowed.join(", ")),
            ));
        }
    }
    Ok(())
}

fn get_str<'a>(
    obj: &'a serde_json::Map<String, Value>,
    key: &str,
) -> Result<&'a str, SpecError> {
    obj.get(key)
        .ok_or_else(|| field_err(key, "missing"))?
        .as_str()
        .ok_or_else(|| field_err(key, "expected a string"))
}

fn get_int_value(v: &Value, path: &str) -> Result<i64, SpecError> {
    v.as_i64()
        .ok_or_else(|| field_err(path, "expected an integer"))
}

fn get_int(obj: &serde_json::Map<String, Value>, key: &str) -> Result<i64, SpecError> {
    let v = obj.get(key).ok_or_else(|| field_err(key, "missing"))?;
    get_int_value(v, key)
}

fn rat_field(v: &Value, path: &str) -> Result<Rat, SpecError> {
    match v {
        Value::String(s) => rat_from_string(s).map_err(|e| field_err(path, e)),
        Value::Number(n) => n
            .as_i64()
            .map(rat_int)
            .ok_or_else(|| field_err(path, "expected an integer or a \"p/q\" string")),
        _ => Err(field_err(path, "expected an integer or a \"p/q\" string")),
    }
}

fn parse_params(
    obj: &serde_json::Map<String, Value>,
    required: bool,
) -> Result<ModuleParams, SpecError> {
    match obj.get("params") {
        Some(v) => parse_params_value(v, "params"),
        None if !required => Ok(ModuleParams::default()),
        None => Err(field_err("params", "missing")),
    }
}

fn parse_params_value(v: &Value, path: &str) -> Result<ModuleParams, SpecError> {
    let obj = as_object(v, path)?;
    check_keys(obj, path, &["c", "z", "ell", "d", "h"])?;
    let mut p = ModuleParams::default();
    for key in ["c", "z", "ell", "d", "h"] {
        if let Some(val) = obj.get(key) {
            let r = rat_field(val, &format!("{path}.{key}"))?;
            match key {
                "c" => p.c = r,
                "z" => p.z = r,
                "ell" => p.ell = r,
                "d" => p.d = r,
                _ => p.h = r,
            }
        }
    }
    Ok(p)
}

fn parse_index_map(v: &Value, path: &str) -> Result<BTreeMap<i64, Rat>, SpecError> {
    let obj = as_object(v, path)?;
    let mut out = BTreeMap::new();
    for (k, val) in obj {
        let idx: i64 = k
            .parse()
            .map_err(|_| field_err(&format!("{path}.{k}"), "key must be an integer index"))?;
        out.insert(idx, rat_field(val, &format!("{path}.{k}"))?);
    }
    Ok(out)
}

fn parse_whittaker(
    obj: &serde_json::Map<String, Value>,
) -> Result<WhittakerData, SpecError> {
    let w = obj
        .get("whittaker")
        .ok_or_else(|| field_err("whittaker", "required for the whittaker construction"))?;
    let w = as_object(w, "whittaker")?;
    check_keys(w, "whittaker", &["m", "L", "H", "c", "z", "ell"])?;
    let m = get_int(w, "m")?;
    if m < 1 {
        return Err(field_err("whittaker.m", "must be at least 1"));
    }
    let l_values = match w.get("L") {
        Some(v) => parse_index_map(v, "whittaker.L")?,
        None => BTreeMap::new(),
    };
    let h_values = match w.get("H") {
        Some(v) => parse_index_map(v, "whittaker.H")?,
        None => BTreeMap::new(),
    };
    for k in l_values.keys() {
        if *k < m || *k > 2 * m {
            return Err(field_err(
                "whittaker.L",
                format!("index {k} outside the defining range {m}..{}", 2 * m),
            ));
        }
    }
    for k in h_values.keys() {
        if *k < 0 || *k > m {
            return Err(field_err(
                "whittaker.H",
                format!("index {k} outside the defining range 0..{m}"),
            ));
        }
    }
    let mut c = Rat::default();
    let mut z = Rat::default();
    let mut ell = Rat::default();
    if let Some(v) = w.get("c") {
        c = rat_field(v, "whittaker.c")?;
    }
    if let Some(v) = w.get("z") {
        z = rat_field(v, "whittaker.z")?;
    }
    if let Some(v) = w.get("ell") {
        ell = rat_field(v, "whittaker.ell")?;
    }
    Ok(WhittakerData {
        m,
        l_values,
        h_values,
        c,
        z,
        ell,
    })
}

fn parse_table(obj: &serde_json::Map<String, Value>) -> Result<ActionTable, SpecError> {
    let t = obj
        .get("action_table")
        .ok_or_else(|| field_err("action_table", "required for induced constructions"))?;
    let t = as_object(t, "action_table")?;
    check_keys(t, "action_table", &["dim", "parities", "generators"])?;
    let dim = get_int(t, "dim")?;
    if dim < 1 {
        return Err(field_err("action_table.dim", "must be at least 1"));
    }
    let dim = dim as usize;
    let parities = match t.get("parities") {
        None => vec![false; dim],
        Some(Value::Array(items)) => {
            if items.len() != dim {
                return Err(field_err(
                    "action_table.parities",
                    format!("expected {dim} entries"),
                ));
            }
            let mut ps = Vec::with_capacity(dim);
            for (i, item) in items.iter().enumerate() {
                ps.push(item.as_bool().ok_or_else(|| {
                    field_err(&format!("action_table.parities[{i}]"), "expected a bool")
                })?);
            }
            ps
        }
        Some(_) => return Err(field_err("action_table.parities", "expected an array")),
    };
    let mut generators = BTreeMap::new();
    if let Some(gv) = t.get("generators") {
        let gmap = as_object(gv, "action_table.generators")?;
        for (name, rows_v) in gmap {
            let path = format!("action_table.generators.{name}");
            let gen = Gen::parse(name).map_err(|e| field_err(&path, e))?;
            let rows_v = rows_v
                .as_array()
                .ok_or_else(|| field_err(&path, "expected an array of rows"))?;
            if rows_v.len() != dim {
                return Err(field_err(&path, format!("expected {dim} rows")));
            }
            let mut rows = Vec::with_capacity(dim);
            for (i, row_v) in rows_v.iter().enumerate() {
                let row_path = format!("{path}[{i}]");
                let row_v = row_v
                    .as_array()
                    .ok_or_else(|| field_err(&row_path, "expected an array"))?;
                if row_v.len() != dim {
                    return Err(field_err(&row_path, format!("expected {dim} entries")));
                }
                let mut row = Vec::with_capacity(dim);
                for (j, cell) in row_v.iter().enumerate() {
                    row.push(rat_field(cell, &format!("{row_path}[{j}]"))?);
                }
                rows.push(row);
            }
            generators.insert(gen, rows);
        }
    }
    Ok(ActionTable {
        dim,
        parities,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn parses_verma_spec() {
        let s = parse_spec(
            r#"{"construction":"verma","params":{"ell":"1","d":"1/2"},"truncation":"7/2"}"#,
        )
        .unwrap();
        match s.module {
            ModuleSpec::Verma(p) => {
                assert_eq!(p.ell, rat_int(1));
                assert_eq!(p.d, rat(1, 2));
                assert_eq!(p.c, rat_int(0));
            }
            other => panic!("wrong construction: {other:?}"),
        }
        assert_eq!(s.truncation, Some(HalfInt::from_twice(7)));
        assert_eq!(s.budget, None);
    }

    #[test]
    fn parses_whittaker_spec() {
        let s = parse_spec(
            r#"{"construction":"whittaker","budget":6,
                "whittaker":{"m":1,"ell":"1","L":{"1":"5","2":"7"},"H":{"0":"2","1":"3"}}}"#,
        )
        .unwrap();
        match s.module {
            ModuleSpec::Whittaker(w) => {
                assert_eq!(w.m, 1);
                assert_eq!(w.l_values.get(&2), Some(&rat_int(7)));
                assert_eq!(w.h_values.get(&0), Some(&rat_int(2)));
            }
            other => panic!("wrong construction: {other:?}"),
        }
        assert_eq!(s.budget, Some(6));
    }

    #[test]
    fn parses_action_table() {
        let s = parse_spec(
            r#"{"construction":"induced-g0q","q":0,
                "params":{"d":"1","z":"0","ell":"0"},
                "action_table":{"dim":2,"generators":{"H(1)":[["1","0"],["0","1"]]}}}"#,
        )
        .unwrap();
        match s.module {
            ModuleSpec::InducedG0q { q, table, .. } => {
                assert_eq!(q, 0);
                assert_eq!(table.dim, 2);
                assert_eq!(table.parities, vec![false, false]);
                let h1 = table.generators.get(&Gen::H(1)).unwrap();
                assert_eq!(h1[0][0], rat_int(1));
                assert_eq!(h1[0][1], rat_int(0));
            }
            other => panic!("wrong construction: {other:?}"),
        }
    }

    #[test]
    fn rejects_float_literals() {
        let err = parse_spec(r#"{"construction":"verma","params":{"d":0.5}}"#).unwrap_err();
        assert!(err.to_string().contains("floating-point"), "{err}");
        let err =
            parse_spec(r#"{"construction":"verma","params":{"d":"0.5"}}"#).unwrap_err();
        assert!(err.to_string().contains("params.d"), "{err}");
    }

    #[test]
    fn rejects_unknown_fields_and_bad_ranges() {
        assert!(parse_spec(r#"{"construction":"verma","params":{"q":"1"}}"#).is_err());
        assert!(parse_spec(
            r#"{"construction":"whittaker","whittaker":{"m":1,"H":{"5":"1"}}}"#
        )
        .is_err());
    }

    #[test]
    fn parses_tensor_spec() {
        let s = parse_spec(
            r#"{"construction":"tensor",
                "tensor":{"left":{"c":"1","h":"2","z":"1"},
                          "right":{"ell":"2","z":"1","d":"3"}}}"#,
        )
        .unwrap();
        match s.module {
            ModuleSpec::Tensor { left, right } => {
                assert_eq!(left.c, rat_int(1));
                assert_eq!(right.ell, rat_int(2));
            }
            other => panic!("wrong construction: {other:?}"),
        }
    }
}
