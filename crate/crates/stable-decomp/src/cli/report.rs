//! Deterministic report documents.
//!
//! Reports are JSON rendered by hand so the byte stream is a pure function
//! of the content: keys sort lexicographically, floats print with exactly
//! 12 significant digits in scientific notation (zero prints as `0`), and
//! indentation is fixed at two spaces.  Library serializers print floats
//! with shortest-roundtrip formatting, which varies in width; that would
//! leak representation noise into committed golden files.

use std::collections::BTreeMap;

/// A report value tree.  Maps iterate in key order by construction.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Null,
    Bool(bool),
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    List(Vec<Node>),
    Map(BTreeMap<String, Node>),
}

impl Node {
    pub fn map(entries: Vec<(&str, Node)>) -> Node {
        Node::Map(
            entries
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }

    pub fn floats(values: &[f64]) -> Node {
        Node::List(values.iter().map(|&x| Node::Float(x)).collect())
    }

    pub fn strings<S: AsRef<str>>(values: &[S]) -> Node {
        Node::List(
            values
                .iter()
                .map(|s| Node::Str(s.as_ref().to_string()))
                .collect(),
        )
    }

    pub fn float_rows(rows: &[Vec<f64>]) -> Node {
        Node::List(rows.iter().map(|r| Node::floats(r)).collect())
    }
}

impl From<&str> for Node {
    fn from(s: &str) -> Node {
        Node::Str(s.to_string())
    }
}

impl From<String> for Node {
    fn from(s: String) -> Node {
        Node::Str(s)
    }
}

impl From<bool> for Node {
    fn from(b: bool) -> Node {
        Node::Bool(b)
    }
}

impl From<f64> for Node {
    fn from(x: f64) -> Node {
        Node::Float(x)
    }
}

impl From<usize> for Node {
    fn from(n: usize) -> Node {
        Node::Int(n as i64)
    }
}

impl From<u64> for Node {
    fn from(n: u64) -> Node {
        Node::UInt(n)
    }
}

/// Render the tree followed by a trailing newline.
pub fn render(node: &Node) -> String {
    let mut out = String::new();
    write_node(node, 0, &mut out);
    out.push('\n');
    out
}

fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.11e}")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn write_node(node: &Node, indent: usize, out: &mut String) {
    match node {
        Node::Null => out.push_str("null"),
        Node::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Node::Int(i) => out.push_str(&i.to_string()),
        Node::UInt(u) => out.push_str(&u.to_string()),
        Node::Float(x) => out.push_str(&fmt_float(*x)),
        Node::Str(s) => out.push_str(&escape(s)),
        Node::List(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                write_node(item, indent + 1, out);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Node::Map(entries) => {
            if entries.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (k, v)) in entries.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                out.push_str(&escape(k));
                out.push_str(": ");
                write_node(v, indent + 1, out);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
    }
}
