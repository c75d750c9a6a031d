//! The instance and container-model text formats.
//!
//! Both are line-oriented: one record per line, `#` starts a comment.
//! All numbers are exact — integers, finite decimals (`0.1` is 1/10) or
//! fractions `a/b`.  Repeating decimals must be written as fractions.
//! Serialization is canonical, so parse(serialize(x)) reproduces x
//! structurally and numerically, including sibling order.
//!
//! ```text
//! goas instance v1
//! root r
//! vertex r 0
//! vertex a 5
//! edge r a 1/2
//! budget 3
//! threshold 10
//! alphabet 1/2 3/2        # optional declared cost alphabet
//! ```
//!
//! ```text
//! goas containers v1
//! container outer 4
//! container inner 3 outer
//! target t1 9 inner
//! budget 5
//! threshold 9
//! ```

use std::fmt;

use crate::instance::{build_instance, Instance};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::reductions::{ContainerDecl, ContainerModel, TargetDecl};

pub const INSTANCE_HEADER: &str = "goas instance v1";
pub const CONTAINERS_HEADER: &str = "goas containers v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { line: usize, message: String },
    Semantic { message: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            ParseError::Semantic { message } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for ParseError {}

/// A parsed instance document: the instance itself plus the optional
/// declared cost alphabet for the d-rational solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDocument {
    pub instance: Instance,
    pub alphabet: Option<Vec<Rational>>,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_field(line_no: usize, field: &str, token: &str) -> Result<Rational, ParseError> {
    parse_rational(token).map_err(|e| syntax(line_no, format!("{field}: {e}")))
}

/// Parses an instance document.
pub fn parse_instance(text: &str) -> Result<InstanceDocument, ParseError> {
    let mut lines = meaningful_lines(text);
    match lines.next() {
        Some((_, line)) if line == INSTANCE_HEADER => {}
        Some((no, line)) => return Err(syntax(no, format!("expected {INSTANCE_HEADER:?}, got {line:?}"))),
        None => return Err(syntax(1, "empty document")),
    }

    let mut root: Option<String> = None;
    let mut vertices: Vec<(String, Rational)> = Vec::new();
    let mut edges: Vec<(String, String, Rational)> = Vec::new();
    let mut budget: Option<Rational> = None;
    let mut threshold: Option<Rational> = None;
    let mut alphabet: Option<Vec<Rational>> = None;

    for (no, line) in lines {
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "root" => match rest.as_slice() {
                [id] if root.is_none() => root = Some(id.to_string()),
                [_] => return Err(syntax(no, "duplicate root line")),
                _ => return Err(syntax(no, "usage: root <id>")),
            },
            "vertex" => match rest.as_slice() {
                [id, prize] => vertices.push((id.to_string(), parse_field(no, "prize", prize)?)),
                _ => return Err(syntax(no, "usage: vertex <id> <prize>")),
            },
            "edge" => match rest.as_slice() {
                [parent, child, cost] => edges.push((
                    parent.to_string(),
                    child.to_string(),
                    parse_field(no, "cost", cost)?,
                )),
                _ => return Err(syntax(no, "usage: edge <parent> <child> <cost>")),
            },
            "budget" => match rest.as_slice() {
                [q] if budget.is_none() => budget = Some(parse_field(no, "budget", q)?),
                _ => return Err(syntax(no, "usage: budget <rational> (once)")),
            },
            "threshold" => match rest.as_slice() {
                [q] if threshold.is_none() => threshold = Some(parse_field(no, "threshold", q)?),
                _ => return Err(syntax(no, "usage: threshold <rational> (once)")),
            },
            "alphabet" => {
                if alphabet.is_some() || rest.is_empty() {
                    return Err(syntax(no, "usage: alphabet <rational>... (once)"));
                }
                let mut values = Vec::with_capacity(rest.len());
                for tok in rest {
                    values.push(parse_field(no, "alphabet", tok)?);
                }
                alphabet = Some(values);
            }
            other => return Err(syntax(no, format!("unknown record {other:?}"))),
        }
    }

    let root = root.ok_or_else(|| ParseError::Semantic {
        message: "missing root line".into(),
    })?;
    let budget = budget.ok_or_else(|| ParseError::Semantic {
        message: "missing budget line".into(),
    })?;
    let threshold = threshold.ok_or_else(|| ParseError::Semantic {
        message: "missing threshold line".into(),
    })?;
    let instance = build_instance(&vertices, &edges, &root, budget, threshold)
        .map_err(|e| ParseError::Semantic { message: e.to_string() })?;
    Ok(InstanceDocument { instance, alphabet })
}

/// Canonical serialization; the exact inverse of [`parse_instance`].
pub fn serialize_instance(inst: &Instance, alphabet: Option<&[Rational]>) -> String {
    let tree = inst.tree();
    let mut out = String::new();
    out.push_str(INSTANCE_HEADER);
    out.push('\n');
    out.push_str(&format!("root {}\n", tree.id(tree.root())));
    for v in tree.vertex_indices() {
        out.push_str(&format!(
            "vertex {} {}\n",
            tree.id(v),
            format_rational(inst.prize(v))
        ));
    }
    for u in tree.vertex_indices() {
        for &c in tree.children(u) {
            out.push_str(&format!(
                "edge {} {} {}\n",
                tree.id(u),
                tree.id(c),
                format_rational(inst.cost(c))
            ));
        }
    }
    out.push_str(&format!("budget {}\n", format_rational(inst.budget())));
    out.push_str(&format!("threshold {}\n", format_rational(inst.threshold())));
    if let Some(values) = alphabet {
        out.push_str("alphabet");
        for v in values {
            out.push(' ');
            out.push_str(&format_rational(v));
        }
        out.push('\n');
    }
    out
}

/// Parses a container-model document.
pub fn parse_containers(text: &str) -> Result<ContainerModel, ParseError> {
    let mut lines = meaningful_lines(text);
    match lines.next() {
        Some((_, line)) if line == CONTAINERS_HEADER => {}
        Some((no, line)) => {
            return Err(syntax(no, format!("expected {CONTAINERS_HEADER:?}, got {line:?}")))
        }
        None => return Err(syntax(1, "empty document")),
    }

    let mut containers: Vec<ContainerDecl> = Vec::new();
    let mut targets: Vec<TargetDecl> = Vec::new();
    let mut budget: Option<Rational> = None;
    let mut threshold: Option<Rational> = None;

    for (no, line) in lines {
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "container" => match rest.as_slice() {
                [id, cost, chain @ ..] => containers.push(ContainerDecl {
                    id: id.to_string(),
                    cost: parse_field(no, "cost", cost)?,
                    penetration: chain.iter().map(|s| s.to_string()).collect(),
                }),
                _ => return Err(syntax(no, "usage: container <id> <cost> [outer...]")),
            },
            "target" => match rest.as_slice() {
                [id, value, location] => targets.push(TargetDecl {
                    id: id.to_string(),
                    value: parse_field(no, "value", value)?,
                    location: location.to_string(),
                }),
                _ => return Err(syntax(no, "usage: target <id> <value> <container>")),
            },
            "budget" => match rest.as_slice() {
                [q] if budget.is_none() => budget = Some(parse_field(no, "budget", q)?),
                _ => return Err(syntax(no, "usage: budget <rational> (once)")),
            },
            "threshold" => match rest.as_slice() {
                [q] if threshold.is_none() => threshold = Some(parse_field(no, "threshold", q)?),
                _ => return Err(syntax(no, "usage: threshold <rational> (once)")),
            },
            other => return Err(syntax(no, format!("unknown record {other:?}"))),
        }
    }

    Ok(ContainerModel {
        containers,
        targets,
        budget: budget.ok_or_else(|| ParseError::Semantic {
            message: "missing budget line".into(),
        })?,
        threshold: threshold.ok_or_else(|| ParseError::Semantic {
            message: "missing threshold line".into(),
        })?,
    })
}
