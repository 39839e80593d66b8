use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use super::{Edge, ReachabilityGraph};
use crate::dicke::EntropyVector;
use crate::error::{Error, Result};
use crate::exact_state::{CanonicalStateKey, Gate, PureState};

/// Class colors in class-id order; ids past the palette are drawn gray.
pub const PALETTE: [&str; 6] = ["red", "blue", "green", "yellow", "magenta", "cyan"];

pub fn palette_color(class: usize) -> &'static str {
    PALETTE.get(class).copied().unwrap_or("gray")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    GraphMl,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(GraphFormat::Dot),
            "graphml" => Ok(GraphFormat::GraphMl),
            "json" => Ok(GraphFormat::Json),
            _ => Err(Error::Parse(format!("unknown graph format {s:?}"))),
        }
    }
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Dot => "dot",
            GraphFormat::GraphMl => "graphml",
            GraphFormat::Json => "json",
        }
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

impl ReachabilityGraph {
    fn class_of(&self, v: usize) -> Option<usize> {
        self.vertex_class.as_ref().map(|c| c[v])
    }

    /// Undirected generators appear twice in `edges` (once from each end);
    /// drawings keep the copy with `from <= to`. Self-loops appear once.
    fn drawn_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.directed || e.from <= e.to)
    }

    pub fn export(&self, format: GraphFormat) -> String {
        match format {
            GraphFormat::Dot => self.to_dot(),
            GraphFormat::GraphMl => self.to_graphml(),
            GraphFormat::Json => self.to_json(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph reachability {\n  node [shape=circle, style=filled];\n");
        for v in 0..self.len() {
            let color = self.class_of(v).map(palette_color).unwrap_or("white");
            let _ = writeln!(s, "  v{v} [label=\"{v}\", fillcolor={color}];");
        }
        for e in self.drawn_edges() {
            let dir = if e.directed { "" } else { ", dir=none" };
            let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"{dir}];", e.from, e.to, e.label);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_graphml(&self) -> String {
        let mut s = String::from(concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n",
            "  <key id=\"key\" for=\"node\" attr.name=\"key\" attr.type=\"string\"/>\n",
            "  <key id=\"class\" for=\"node\" attr.name=\"class\" attr.type=\"int\"/>\n",
            "  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"string\"/>\n",
            "  <key id=\"label\" for=\"edge\" attr.name=\"label\" attr.type=\"string\"/>\n",
            "  <key id=\"directed\" for=\"edge\" attr.name=\"directed\" attr.type=\"boolean\"/>\n",
            "  <graph id=\"reachability\" edgedefault=\"undirected\">\n",
        ));
        for (v, key) in self.vertices.iter().enumerate() {
            let _ = write!(s, "    <node id=\"v{v}\"><data key=\"key\">{}</data>", key.to_hex());
            if let Some(c) = self.class_of(v) {
                let _ = write!(s, "<data key=\"class\">{c}</data><data key=\"color\">{}</data>", palette_color(c));
            }
            s.push_str("</node>\n");
        }
        for (i, e) in self.drawn_edges().enumerate() {
            let _ = writeln!(
                s,
                "    <edge id=\"e{i}\" source=\"v{}\" target=\"v{}\" directed=\"{}\"><data key=\"label\">{}</data><data key=\"directed\">{}</data></edge>",
                e.from,
                e.to,
                e.directed,
                xml_escape(&e.label),
                e.directed
            );
        }
        s.push_str("  </graph>\n</graphml>\n");
        s
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "n": self.n,
            "generators": self.generators,
            "vertices": self.vertices,
            "states": self.states.iter().map(PureState::to_json).collect::<Vec<_>>(),
            "edges": self.edges,
            "vertex_class": self.vertex_class,
            "class_table": self.class_table,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let field = |name: &str| v.get(name).cloned().ok_or_else(|| Error::Parse(format!("graph json: missing {name}")));
        let parse = |e: serde_json::Error| Error::Parse(format!("graph json: {e}"));
        let n: usize = serde_json::from_value(field("n")?).map_err(parse)?;
        let generators: Vec<Gate> = serde_json::from_value(field("generators")?).map_err(parse)?;
        let vertices: Vec<CanonicalStateKey> = serde_json::from_value(field("vertices")?).map_err(parse)?;
        let states = field("states")?
            .as_array()
            .ok_or_else(|| Error::Parse("graph json: states".into()))?
            .iter()
            .map(PureState::from_json)
            .collect::<Result<Vec<_>>>()?;
        let edges: Vec<(usize, usize, String, bool)> = field("edges")?
            .as_array()
            .ok_or_else(|| Error::Parse("graph json: edges".into()))?
            .iter()
            .map(|e| {
                let from = e.get("from").and_then(Value::as_u64);
                let to = e.get("to").and_then(Value::as_u64);
                let label = e.get("label").and_then(Value::as_str);
                let directed = e.get("directed").and_then(Value::as_bool);
                match (from, to, label, directed) {
                    (Some(f), Some(t), Some(l), Some(d)) => Ok((f as usize, t as usize, l.to_string(), d)),
                    _ => Err(Error::Parse("graph json: malformed edge".into())),
                }
            })
            .collect::<Result<_>>()?;
        let vertex_class: Option<Vec<usize>> = serde_json::from_value(field("vertex_class")?).map_err(parse)?;
        let class_table: Vec<EntropyVector> = serde_json::from_value(field("class_table")?).map_err(parse)?;
        if states.len() != vertices.len() || edges.iter().any(|e| e.0 >= vertices.len() || e.1 >= vertices.len()) {
            return Err(Error::Parse("graph json: inconsistent vertex count".into()));
        }
        Ok(ReachabilityGraph {
            n,
            generators,
            vertices,
            states,
            edges: edges.into_iter().map(|(from, to, label, directed)| Edge { from, to, label, directed }).collect(),
            vertex_class,
            class_table,
        })
    }
}
