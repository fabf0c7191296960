//! Corpus files: one group per line.
//!
//! ```text
//! # comment
//! S3: degree=3; gens=(1 2),(1 2 3)
//! S3xS3: product=S3*S3
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use pigroups_core::{direct_product, parse_permutation, Group, Perm};
use thiserror::Error;

/// The corpus shipped with the tool, selected by the name `default`.
pub const DEFAULT_CORPUS: &str = include_str!("../corpus/default.corpus");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: group {name} is defined twice")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: product operand {name} is not defined earlier")]
    UnknownOperand { line: usize, name: String },
    #[error("line {line}: group {name}: {source}")]
    Group {
        line: usize,
        name: String,
        #[source]
        source: pigroups_core::Error,
    },
    #[error("cannot read corpus {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Generators { degree: usize, gens: Vec<String> },
    Product(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDefinition {
    pub name: String,
    pub construction: Construction,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: Group,
}

/// Splits `text` on commas that are not inside parentheses.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

/// Parses a generator list such as `(1 2),(1 2 3)` at the given degree.
pub fn parse_generators(text: &str, degree: usize) -> pigroups_core::Result<Vec<Perm>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text)
        .into_iter()
        .map(|g| parse_permutation(g, degree))
        .collect()
}

fn syntax(line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_line(line: usize, text: &str) -> Result<GroupDefinition, CorpusError> {
    let (name, body) = text
        .split_once(':')
        .ok_or_else(|| syntax(line, "expected `name: ...`"))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(syntax(line, format!("bad group name {name:?}")));
    }
    let mut fields = BTreeMap::new();
    for field in body.split(';') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected `key=value`, found {:?}", field.trim())))?;
        if fields.insert(key.trim(), value.trim()).is_some() {
            return Err(syntax(line, format!("field {} given twice", key.trim())));
        }
    }
    let construction = match (fields.remove("degree"), fields.remove("gens"), fields.remove("product")) {
        (Some(degree), gens, None) => {
            let degree = degree
                .parse()
                .map_err(|_| syntax(line, format!("bad degree {degree:?}")))?;
            let gens = match gens {
                Some(g) if !g.is_empty() => split_top_level(g).into_iter().map(String::from).collect(),
                _ => Vec::new(),
            };
            Construction::Generators { degree, gens }
        }
        (None, None, Some(product)) => {
            let (a, b) = product
                .split_once('*')
                .ok_or_else(|| syntax(line, "expected `product=<a>*<b>`"))?;
            Construction::Product(a.trim().to_string(), b.trim().to_string())
        }
        _ => return Err(syntax(line, "expected `degree=<n>; gens=...` or `product=<a>*<b>`")),
    };
    if let Some(key) = fields.keys().next() {
        return Err(syntax(line, format!("unknown field {key}")));
    }
    Ok(GroupDefinition {
        name: name.to_string(),
        construction,
        line,
    })
}

pub fn parse_corpus(text: &str) -> Result<Vec<GroupDefinition>, CorpusError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_once('#').map_or(l, |(body, _)| body).trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(n, l)| parse_line(n, l))
        .collect()
}

/// Builds the groups in declaration order.
pub fn build(defs: &[GroupDefinition]) -> Result<Vec<NamedGroup>, CorpusError> {
    let mut built: BTreeMap<&str, Group> = BTreeMap::new();
    let mut out = Vec::with_capacity(defs.len());
    for def in defs {
        if built.contains_key(def.name.as_str()) {
            return Err(CorpusError::Duplicate {
                line: def.line,
                name: def.name.clone(),
            });
        }
        let wrap = |source| CorpusError::Group {
            line: def.line,
            name: def.name.clone(),
            source,
        };
        let group = match &def.construction {
            Construction::Generators { degree, gens } => {
                let perms = gens
                    .iter()
                    .map(|g| parse_permutation(g, *degree))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(wrap)?;
                Group::generate(&perms, *degree).map_err(wrap)?
            }
            Construction::Product(a, b) => {
                let operand = |n: &String| {
                    built.get(n.as_str()).ok_or_else(|| CorpusError::UnknownOperand {
                        line: def.line,
                        name: n.clone(),
                    })
                };
                direct_product(operand(a)?, operand(b)?).map_err(wrap)?
            }
        };
        let group = group.with_name(def.name.clone());
        built.insert(&def.name, group.clone());
        out.push(NamedGroup {
            name: def.name.clone(),
            group,
        });
    }
    Ok(out)
}

/// Loads a corpus file, or the built-in corpus for the name `default`.
pub fn load_corpus(path: &str) -> Result<Vec<NamedGroup>, CorpusError> {
    let text = if path == "default" {
        DEFAULT_CORPUS.to_string()
    } else {
        std::fs::read_to_string(Path::new(path)).map_err(|source| CorpusError::Io {
            path: path.to_string(),
            source,
        })?
    };
    build(&parse_corpus(&text)?)
}
