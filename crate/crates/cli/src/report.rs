//! Report trees and their two renderings: JSON with 17 significant digits
//! and indented text with 6.

use std::fmt::Write;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::input::InputDocument;

/// A value in a report.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Real(f64),
    /// Radians; rendered with degrees alongside.
    Angle(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    List(Vec<Node>),
    Map(Vec<(String, Node)>),
}

/// Ordered key-value builder for [`Node::Map`].
#[derive(Debug, Default)]
pub struct Obj(Vec<(String, Node)>);

impl Obj {
    pub fn new() -> Self {
        Obj::default()
    }

    pub fn node(mut self, key: &str, value: Node) -> Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn real(self, key: &str, x: f64) -> Self {
        self.node(key, Node::Real(x))
    }

    pub fn angle(self, key: &str, x: f64) -> Self {
        self.node(key, Node::Angle(x))
    }

    pub fn int(self, key: &str, x: impl TryInto<i64>) -> Self {
        self.node(key, Node::Int(x.try_into().unwrap_or(i64::MAX)))
    }

    pub fn bool(self, key: &str, x: bool) -> Self {
        self.node(key, Node::Bool(x))
    }

    pub fn text(self, key: &str, x: impl Into<String>) -> Self {
        self.node(key, Node::Text(x.into()))
    }

    pub fn build(self) -> Node {
        Node::Map(self.0)
    }
}

pub fn angles(xs: &[f64]) -> Node {
    Node::List(xs.iter().map(|x| Node::Angle(*x)).collect())
}

pub fn reals(xs: &[f64]) -> Node {
    Node::List(xs.iter().map(|x| Node::Real(*x)).collect())
}

pub fn texts<S: AsRef<str>>(xs: &[S]) -> Node {
    Node::List(xs.iter().map(|x| Node::Text(x.as_ref().to_string())).collect())
}

/// A whole report: the echoed input, when there is one, then named sections.
#[derive(Debug, Clone)]
pub struct Report {
    pub input: Option<InputDocument>,
    pub sections: Vec<(String, Node)>,
}

impl Report {
    pub fn new(input: Option<InputDocument>) -> Self {
        Report { input, sections: Vec::new() }
    }

    pub fn section(mut self, name: &str, node: Node) -> Self {
        self.sections.push((name.to_string(), node));
        self
    }

    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        if let Some(input) = &self.input {
            top.insert("input".into(), json(&input.to_node()));
        }
        for (k, v) in &self.sections {
            top.insert(k.clone(), json(v));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("plain JSON values");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        if let Some(input) = &self.input {
            out.push_str("# input\n");
            out.push_str(&input.to_toml());
            out.push('\n');
        }
        for (k, v) in &self.sections {
            human(&mut out, k, v, 0);
        }
        out
    }
}

/// `x` with 17 significant digits, enough to round-trip every `f64`.
fn number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    let x = if x == 0.0 { 0.0 } else { x };
    Value::Number(Number::from_str(&format!("{x:.16e}")).expect("formatted float is a JSON number"))
}

fn json(node: &Node) -> Value {
    match node {
        Node::Real(x) => number(*x),
        Node::Angle(x) => {
            let mut m = Map::new();
            m.insert("rad".into(), number(*x));
            m.insert("deg".into(), number(x.to_degrees()));
            Value::Object(m)
        }
        Node::Int(i) => Value::Number((*i).into()),
        Node::Bool(b) => Value::Bool(*b),
        Node::Text(s) => Value::String(s.clone()),
        Node::List(xs) => Value::Array(xs.iter().map(json).collect()),
        Node::Map(kv) => Value::Object(kv.iter().map(|(k, v)| (k.clone(), json(v))).collect()),
    }
}

/// Six significant digits, trailing zeros dropped, scientific notation
/// outside `[1e-5, 1e6)`.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        // Rounding can turn a tiny value into "-0".
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

fn scalar_text(node: &Node) -> Option<String> {
    match node {
        Node::Real(x) => Some(sig6(*x)),
        Node::Angle(x) => Some(format!("{} rad ({} deg)", sig6(*x), sig6(x.to_degrees()))),
        Node::Int(i) => Some(i.to_string()),
        Node::Bool(b) => Some(b.to_string()),
        Node::Text(s) => Some(s.clone()),
        _ => None,
    }
}

fn human(out: &mut String, key: &str, node: &Node, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar_text(node) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    match node {
        Node::List(xs) if xs.is_empty() => {
            let _ = writeln!(out, "{pad}{key}: []");
        }
        Node::List(xs) if xs.iter().all(|x| scalar_text(x).is_some()) => {
            let items: Vec<String> = xs.iter().filter_map(scalar_text).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", items.join(", "));
        }
        Node::List(xs) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, x) in xs.iter().enumerate() {
                human(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        Node::Map(kv) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in kv {
                human(out, k, v, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
