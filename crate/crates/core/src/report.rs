//! Report documents: a stable JSON layout shared by every CLI subcommand.
//! All numeric content is rendered as exact "p/q" strings or integers; key
//! order is fixed by construction so identical inputs serialize to identical
//! bytes.

use serde_json::{json, Map, Value};

use crate::analysis::{GramMatrix, RelationReport, SimplicityVerdict};
use crate::halfint::HalfInt;
use crate::modules::{vector_text, GradedVector, ModuleHandle};

pub fn relation_value(r: &RelationReport) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), json!(r.id));
    m.insert("window".into(), json!(r.window));
    m.insert("checked".into(), json!(r.checked));
    m.insert("failures".into(), json!(r.failures));
    m.insert("residual".into(), json!(r.residual));
    m.insert("pass".into(), json!(r.pass));
    Value::Object(m)
}

pub fn relations_value(reports: &[RelationReport]) -> Value {
    Value::Array(reports.iter().map(relation_value).collect())
}

pub fn graded_dims_value(handle: &ModuleHandle) -> Value {
    let mut m = Map::new();
    for d in handle.degrees() {
        let dim = handle.graded_dim(d).unwrap_or(0);
        m.insert(d.to_string(), json!(dim));
    }
    Value::Object(m)
}

pub fn gram_ranks_value(grams: &[GramMatrix]) -> Value {
    let mut m = Map::new();
    for g in grams {
        let mut entry = Map::new();
        entry.insert("rank".into(), json!(g.rank()));
        entry.insert("dim".into(), json!(g.dim()));
        m.insert(g.degree.to_string(), Value::Object(entry));
    }
    Value::Object(m)
}

pub fn witness_value(handle: &ModuleHandle, degree: HalfInt, v: &GradedVector) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), json!(degree.to_string()));
    m.insert("vector".into(), json!(vector_text(handle, v)));
    Value::Object(m)
}

pub fn verdict_value(handle: Option<&ModuleHandle>, v: &SimplicityVerdict) -> Value {
    let mut m = Map::new();
    match v {
        SimplicityVerdict::NoObstructionUpTo(d) => {
            m.insert("kind".into(), json!("no-obstruction-up-to"));
            m.insert("degree".into(), json!(d.to_string()));
        }
        SimplicityVerdict::ObstructionAt { degree, witness } => {
            m.insert("kind".into(), json!("obstruction-at"));
            m.insert("degree".into(), json!(degree.to_string()));
            if let Some(h) = handle {
                m.insert("witness".into(), json!(vector_text(h, witness)));
            }
        }
        SimplicityVerdict::FormulaSimple => {
            m.insert("kind".into(), json!("formula-simple"));
        }
        SimplicityVerdict::FormulaNotSimple => {
            m.insert("kind".into(), json!("formula-not-simple"));
        }
        SimplicityVerdict::Inconclusive { budget } => {
            m.insert("kind".into(), json!("inconclusive"));
            m.insert("budget".into(), json!(budget));
        }
    }
    Value::Object(m)
}

/// Assemble the common report document. Sections the caller does not supply
/// serialize as empty, keeping the schema identical across subcommands.
pub struct ReportBuilder {
    doc: Map<String, Value>,
}

impl ReportBuilder {
    pub fn new(module_spec: &str, truncation: HalfInt) -> Self {
        let mut doc = Map::new();
        doc.insert("module_spec".into(), json!(module_spec));
        doc.insert("truncation".into(), json!(truncation.to_string()));
        doc.insert("relation_reports".into(), Value::Array(vec![]));
        doc.insert("graded_dims".into(), Value::Object(Map::new()));
        doc.insert("gram_ranks".into(), Value::Object(Map::new()));
        doc.insert("singular_witnesses".into(), Value::Array(vec![]));
        doc.insert("verdict".into(), Value::Null);
        ReportBuilder { doc }
    }

    pub fn relations(mut self, reports: &[RelationReport]) -> Self {
        self.doc
            .insert("relation_reports".into(), relations_value(reports));
        self
    }

    pub fn graded_dims(mut self, handle: &ModuleHandle) -> Self {
        self.doc
            .insert("graded_dims".into(), graded_dims_value(handle));
        self
    }

    pub fn gram_ranks(mut self, grams: &[GramMatrix]) -> Self {
        self.doc.insert("gram_ranks".into(), gram_ranks_value(grams));
        self
    }

    pub fn singular_witnesses(
        mut self,
        handle: &ModuleHandle,
        witnesses: &[(HalfInt, GradedVector)],
    ) -> Self {
        let arr = witnesses
            .iter()
            .map(|(d, v)| witness_value(handle, *d, v))
            .collect();
        self.doc.insert("singular_witnesses".into(), Value::Array(arr));
        self
    }

    pub fn verdict(mut self, handle: Option<&ModuleHandle>, v: &SimplicityVerdict) -> Self {
        self.doc.insert("verdict".into(), verdict_value(handle, v));
        self
    }

    pub fn extra(mut self, key: &str, value: Value) -> Self {
        self.doc.insert(key.into(), value);
        self
    }

    pub fn build(self) -> Value {
        Value::Object(self.doc)
    }
}

pub fn render_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization");
    s.push('\n');
    s
}

/// Plain-text rendering: a two-column key/value walk of the same document.
pub fn render_table(doc: &Value) -> String {
    let mut out = String::new();
    render_table_inner(doc, "", &mut out);
    out
}

fn render_table_inner(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                let path = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_table_inner(val, &path, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{prefix}  (none)\n"));
            }
            for (i, item) in items.iter().enumerate() {
                render_table_inner(item, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::Null => out.push_str(&format!("{prefix}  -\n")),
        Value::Bool(b) => out.push_str(&format!("{prefix}  {b}\n")),
        Value::Number(n) => out.push_str(&format!("{prefix}  {n}\n")),
        Value::String(s) => out.push_str(&format!("{prefix}  {s}\n")),
    }
}
