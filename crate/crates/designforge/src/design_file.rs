//! Design files.
//!
//! ```text
//! # optional comments
//! design 7 7
//! 1 3 3
//! 0 1 3
//! ...
//! ```
//!
//! The header gives `v` and `b`. An optional `t k lambda` line follows; it
//! is recognised by the line count, `b + 1` data lines instead of `b`.
//! Each block is a line of 0-based points; repeated lines are repeated
//! blocks.

use std::fmt::Write as _;

use designforge_core::design::IncidenceStructure;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignFile {
    /// Comment lines, written before the header.
    pub comments: Vec<String>,
    /// `(t, k, lambda)`.
    pub params: Option<(usize, usize, u64)>,
    pub structure: IncidenceStructure,
}

impl DesignFile {
    /// Wraps a structure, filling in `1 k r` when it is a 1-design.
    pub fn from_structure(structure: IncidenceStructure, comments: Vec<String>) -> Self {
        let params = structure
            .validate_1design()
            .ok()
            .map(|p| (p.t, p.k, p.lambda));
        DesignFile {
            comments,
            params,
            structure,
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut comments = Vec::new();
        let mut data: Vec<(usize, &str)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.starts_with('#') {
                comments.push(raw.to_string());
            } else if !line.is_empty() {
                data.push((no + 1, line));
            }
        }
        let (&(hno, header), rest) = data
            .split_first()
            .ok_or_else(|| CliError::Input("empty design file".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let (v, b) = match head.as_slice() {
            ["design", v, b] => (parse_num(v, hno)?, parse_num(b, hno)?),
            _ => {
                return Err(CliError::Input(format!(
                    "line {hno}: expected `design v b`"
                )));
            }
        };
        let (params, blocks) = if rest.len() == b + 1 {
            let (pno, pline) = rest[0];
            let nums = parse_line(pline, pno)?;
            match nums.as_slice() {
                [t, k, l] => (Some((*t, *k, *l as u64)), &rest[1..]),
                _ => {
                    return Err(CliError::Input(format!(
                        "line {pno}: expected `t k lambda`"
                    )))
                }
            }
        } else if rest.len() == b {
            (None, rest)
        } else {
            return Err(CliError::Input(format!(
                "header announces {b} blocks, found {} data lines",
                rest.len()
            )));
        };
        let blocks = blocks
            .iter()
            .map(|&(no, l)| {
                parse_line(l, no).map(|pts| pts.into_iter().map(|x| x as u32).collect::<Vec<_>>())
            })
            .collect::<CliResult<Vec<_>>>()?;
        let structure = IncidenceStructure::new(v, blocks)?;
        if let Some((t, k, _)) = params {
            if t == 1 {
                let p = structure.validate_1design()?;
                if Some((p.t, p.k, p.lambda)) != params {
                    return Err(CliError::Input(format!(
                        "parameter line says 1-({v},{k},{}), blocks give 1-({},{},{})",
                        params.map_or(0, |p| p.2),
                        p.v,
                        p.k,
                        p.lambda
                    )));
                }
            }
        }
        Ok(DesignFile {
            comments,
            params,
            structure,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str(c);
            out.push('\n');
        }
        let s = &self.structure;
        let _ = writeln!(out, "design {} {}", s.v(), s.b());
        if let Some((t, k, l)) = self.params {
            let _ = writeln!(out, "{t} {k} {l}");
        }
        for block in s.blocks() {
            let pts: Vec<String> = block.iter().map(u32::to_string).collect();
            out.push_str(&pts.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_num(tok: &str, line: usize) -> CliResult<usize> {
    tok.parse()
        .map_err(|_| CliError::Input(format!("line {line}: bad number `{tok}`")))
}

fn parse_line(line: &str, no: usize) -> CliResult<Vec<usize>> {
    line.split_whitespace().map(|t| parse_num(t, no)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FANO: &str =
        "# Fano plane\ndesign 7 7\n1 3 3\n0 1 3\n1 2 4\n2 3 5\n3 4 6\n0 4 5\n1 5 6\n0 2 6\n";

    #[test]
    fn fano_round_trip() {
        let f = DesignFile::parse(FANO).unwrap();
        assert_eq!(f.params, Some((1, 3, 3)));
        assert_eq!(f.structure.b(), 7);
        assert_eq!(f.render(), FANO);
    }

    #[test]
    fn params_line_is_optional() {
        let f = DesignFile::parse("design 3 2\n0 1\n0 1\n").unwrap();
        assert_eq!(f.params, None);
        assert_eq!(f.structure.max_multiplicity(), 2);
        // three data lines for two blocks: the first is read as `t k lambda`,
        // and point 2 lies on no block
        assert!(DesignFile::parse("design 3 2\n1 2 2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn rejects_inconsistent_files() {
        assert!(DesignFile::parse("design 3 2\n0 1\n").is_err());
        assert!(DesignFile::parse("design 3 1\n0 3\n").is_err());
        assert!(DesignFile::parse(
            "design 7 7\n1 3 2\n0 1 3\n1 2 4\n2 3 5\n3 4 6\n0 4 5\n1 5 6\n0 2 6\n"
        )
        .is_err());
        assert!(DesignFile::parse("").is_err());
    }

    proptest! {
        #[test]
        fn random_structures_round_trip(
            v in 2usize..10,
            raw in proptest::collection::vec(proptest::collection::btree_set(0u32..10, 1..5), 1..8),
        ) {
            let blocks: Vec<Vec<u32>> = raw
                .into_iter()
                .map(|s| s.into_iter().filter(|&x| (x as usize) < v).collect::<Vec<_>>())
                .filter(|b: &Vec<u32>| !b.is_empty())
                .collect();
            prop_assume!(!blocks.is_empty());
            let s = IncidenceStructure::new(v, blocks).unwrap();
            let f = DesignFile::from_structure(s, vec!["# generated".into()]);
            let text = f.render();
            let back = DesignFile::parse(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.render(), text);
        }
    }
}
