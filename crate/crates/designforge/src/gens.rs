//! Generator files.
//!
//! ```text
//! # comment
//! degree 6
//! (1,2,3)(4,5)
//! img: 1 0 2 3 4 5
//! ```
//!
//! Cycle lines are 1-based, `img:` lines list 0-based images. Comments and
//! blank lines are kept in place, so a file written in canonical form
//! (cycles starting at their least point, in increasing order) reads back
//! and writes out byte for byte.

use std::fmt::Write as _;

use designforge_core::Permutation;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    Cycles,
    Images,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Line {
    Comment(String),
    Blank,
    Degree(usize),
    Generator(Permutation, Notation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFile {
    pub lines: Vec<Line>,
}

impl GeneratorFile {
    pub fn new(degree: usize, generators: &[Permutation], notation: Notation) -> Self {
        let mut lines = vec![Line::Degree(degree)];
        lines.extend(
            generators
                .iter()
                .map(|g| Line::Generator(g.clone(), notation)),
        );
        GeneratorFile { lines }
    }

    pub fn degree(&self) -> usize {
        self.lines
            .iter()
            .find_map(|l| match l {
                Line::Degree(n) => Some(*n),
                _ => None,
            })
            .unwrap_or(0)
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.lines
            .iter()
            .filter_map(|l| match l {
                Line::Generator(g, _) => Some(g.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut lines = Vec::new();
        let mut degree = None;
        for (no, raw) in text.lines().enumerate() {
            let err = |msg: String| CliError::Input(format!("line {}: {msg}", no + 1));
            let line = raw.trim();
            if line.is_empty() {
                lines.push(Line::Blank);
            } else if line.starts_with('#') {
                lines.push(Line::Comment(raw.to_string()));
            } else if let Some(rest) = line.strip_prefix("degree") {
                if degree.is_some() {
                    return Err(err("repeated degree line".into()));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad degree `{rest}`")))?;
                degree = Some(n);
                lines.push(Line::Degree(n));
            } else {
                let n = degree.ok_or_else(|| err("generator before the degree line".into()))?;
                let (perm, notation) = if let Some(rest) = line.strip_prefix("img:") {
                    (parse_images(rest, n).map_err(err)?, Notation::Images)
                } else {
                    (parse_cycles(line, n).map_err(err)?, Notation::Cycles)
                };
                lines.push(Line::Generator(perm, notation));
            }
        }
        if degree.is_none() {
            return Err(CliError::Input("missing `degree n` line".into()));
        }
        Ok(GeneratorFile { lines })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            match line {
                Line::Comment(c) => out.push_str(c),
                Line::Blank => {}
                Line::Degree(n) => {
                    let _ = write!(out, "degree {n}");
                }
                Line::Generator(g, Notation::Cycles) => out.push_str(&one_based_cycles(g)),
                Line::Generator(g, Notation::Images) => {
                    out.push_str("img:");
                    for x in g.images() {
                        let _ = write!(out, " {x}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Cycle notation with points numbered from 1; `()` for the identity.
pub fn one_based_cycles(g: &Permutation) -> String {
    let cycles = g.cycles();
    if cycles.is_empty() {
        return "()".into();
    }
    let mut out = String::new();
    for c in cycles {
        out.push('(');
        let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
        out.push_str(&pts.join(","));
        out.push(')');
    }
    out
}

fn parse_images(rest: &str, degree: usize) -> Result<Permutation, String> {
    let images = rest
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| format!("bad image `{t}`")))
        .collect::<Result<Vec<_>, _>>()?;
    if images.len() != degree {
        return Err(format!("{} images for degree {degree}", images.len()));
    }
    Permutation::from_images(images).map_err(|e| e.to_string())
}

pub fn parse_cycles(line: &str, degree: usize) -> Result<Permutation, String> {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "()" {
        return Ok(Permutation::identity(degree));
    }
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let end = body.find(')').ok_or("unclosed cycle")?;
        let cycle = body[..end]
            .split(',')
            .map(|t| match t.parse::<u32>() {
                Ok(x) if x >= 1 => Ok(x - 1),
                _ => Err(format!("bad point `{t}` (points are 1-based)")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(cycle);
        rest = &body[end + 1..];
    }
    let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(degree, &refs).map_err(|e| e.to_string())
}
