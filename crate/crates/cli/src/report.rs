//! Output assembly. Text is one `name: value` line per field; JSON is a
//! single object whose keys are sorted, so both forms are deterministic.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use tmdelta::{write_graph, Certificate, Element, Graph, TotalMatching};

pub struct Report {
    lines: Vec<(String, String)>,
    json: Map<String, Value>,
    pub code: u8,
}

impl Report {
    pub fn new() -> Self {
        Report {
            lines: Vec::new(),
            json: Map::new(),
            code: 0,
        }
    }

    /// Adds a field shown in both forms.
    pub fn field(&mut self, name: &str, text: impl ToString, value: Value) -> &mut Self {
        self.lines.push((name.to_string(), text.to_string()));
        self.json.insert(name.to_string(), value);
        self
    }

    pub fn text_only(&mut self, name: &str, text: impl ToString) -> &mut Self {
        self.lines.push((name.to_string(), text.to_string()));
        self
    }

    pub fn json_only(&mut self, name: &str, value: Value) -> &mut Self {
        self.json.insert(name.to_string(), value);
        self
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("plain json values");
            s.push('\n');
            s
        } else {
            self.lines.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
        }
    }
}

/// A JSON number when it fits in `i64`, a decimal string otherwise.
pub fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn vertex_names(vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| Element::Vertex(v).to_string()).collect()
}

pub fn edge_names(es: &[usize]) -> Vec<String> {
    es.iter().map(|&e| Element::Edge(e).to_string()).collect()
}

pub fn matching(r: &mut Report, g: &Graph, t: &TotalMatching) {
    for line in t.to_text(g).lines() {
        let (k, v) = line.split_once(": ").unwrap_or((line.trim_end_matches(':'), ""));
        r.text_only(k, v);
    }
    r.json_only("weight", json!(t.weight))
        .json_only("vertices", json!(vertex_names(&t.vertices)))
        .json_only("edges", json!(edge_names(&t.edges)));
}

/// Certificate fields with 1-based names; a subdeterminant certificate
/// carries its core graph in the text file format.
pub fn certificate(r: &mut Report, c: &Certificate) {
    for line in c.to_string().lines() {
        if let Some((k, v)) = line.split_once(": ") {
            r.text_only(k, v);
        }
    }
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(c.kind()));
    obj.insert("value".into(), big(&c.lower_bound()));
    match c {
        Certificate::DegreeExceeds { vertex, degree } => {
            obj.insert("vertex".into(), json!(Element::Vertex(*vertex).to_string()));
            obj.insert("degree".into(), json!(degree));
        }
        Certificate::TooManyHighDegreeVertices { d_set, .. } => {
            obj.insert("vertices".into(), json!(vertex_names(d_set)));
        }
        Certificate::TooManyDisjointCycles { cycles } => {
            let cycles: Vec<Vec<String>> = cycles.iter().map(|c| vertex_names(c)).collect();
            obj.insert("cycles".into(), json!(cycles));
        }
        Certificate::SubdeterminantFound { graph, witness, .. } => {
            obj.insert("core".into(), json!(write_graph(graph)));
            obj.insert("witness".into(), serde_json::to_value(witness).expect("names"));
        }
    }
    r.json_only("certificate", Value::Object(obj));
}
