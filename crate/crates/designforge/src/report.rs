//! JSON report envelope shared by every command.

use std::path::Path;

use designforge_core::atlas::GroupRecipe;
use designforge_core::cases::Check;
use serde::{Deserialize, Serialize};

use crate::error::{read_file, CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<GroupRecipe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<GroupRecipe>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, seed: u64, checks: Vec<Check>, body: T) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            seed,
            recipe: None,
            subgroup: None,
            passed: checks.iter().all(|c| c.pass),
            checks,
            body,
        }
    }

    pub fn with_recipes(
        mut self,
        recipe: Option<GroupRecipe>,
        subgroup: Option<GroupRecipe>,
    ) -> Self {
        self.recipe = recipe;
        self.subgroup = subgroup;
        self
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Compares `json` with `dir/name.json` byte for byte.
pub fn compare_golden(dir: &Path, name: &str, json: &str) -> CliResult<()> {
    let path = dir.join(format!("{name}.json"));
    let expected = read_file(&path)?;
    if expected == json {
        return Ok(());
    }
    let line = expected
        .lines()
        .zip(json.lines())
        .position(|(a, b)| a != b)
        .unwrap_or_else(|| expected.lines().count().min(json.lines().count()))
        + 1;
    Err(CliError::Golden(format!(
        "{} differs at line {line}",
        path.display()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use designforge_core::atlas::Pgl2Variant;

    #[test]
    fn report_round_trips_through_json() {
        let checks = vec![Check::eq("blocks", 15, 15), Check::holds("lifts", false)];
        let r = Report::new("construct", 7, checks, vec![1u32, 2, 3]).with_recipes(
            Some(GroupRecipe::Psl2 { q: 9 }),
            Some(GroupRecipe::Pgl2InPsl2Sq {
                q: 3,
                variant: Pgl2Variant::Squared,
            }),
        );
        assert!(!r.passed);
        assert_eq!(r.failed(), 1);
        let json = r.to_json().unwrap();
        let back: Report<Vec<u32>> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), json);
        assert!(json.contains("\"schema_version\": 1"));
        assert!(json.contains("\"variant\": \"squared\""));
    }
}
