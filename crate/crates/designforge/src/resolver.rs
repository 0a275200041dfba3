//! Named generator sets: the bundled Mathieu groups and files on disk.

use std::path::{Path, PathBuf};

use designforge_core::atlas::GroupResolver;
use designforge_core::{PermGroup, Result as CoreResult};

use crate::error::{read_file, CliError, CliResult};
use crate::gens::GeneratorFile;

pub const M22: &str = include_str!("../data/m22.gens");
pub const M23: &str = include_str!("../data/m23.gens");
pub const M24: &str = include_str!("../data/m24.gens");

/// Bundled generator text for `m22`, `m23` or `m24`.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name.to_ascii_lowercase().as_str() {
        "m22" => Some(M22),
        "m23" => Some(M23),
        "m24" => Some(M24),
        _ => None,
    }
}

pub fn group_from_text(text: &str) -> CliResult<PermGroup> {
    let file = GeneratorFile::parse(text)?;
    Ok(PermGroup::new(file.degree(), file.generators())?)
}

pub fn group_from_path(path: &Path) -> CliResult<PermGroup> {
    group_from_text(&read_file(path)?)
}

/// Looks names up among the bundled groups, then as paths relative to
/// `base`.
#[derive(Clone, Debug, Default)]
pub struct FileResolver {
    pub base: Option<PathBuf>,
}

impl FileResolver {
    pub fn load(&self, name: &str) -> CliResult<PermGroup> {
        if let Some(text) = bundled(name) {
            return group_from_text(text);
        }
        let path = match &self.base {
            Some(b) => b.join(name),
            None => PathBuf::from(name),
        };
        if !path.exists() {
            return Err(CliError::Input(format!("unknown group `{name}`")));
        }
        group_from_path(&path)
    }
}

impl GroupResolver for FileResolver {
    fn resolve(&self, name: &str) -> CoreResult<PermGroup> {
        self.load(name).map_err(|e| match e {
            CliError::Core(c) => c,
            other => designforge_core::Error::InvalidArgument(other.to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_groups_have_their_orders() {
        assert_eq!(group_from_text(M22).unwrap().order(), 443_520);
        assert_eq!(group_from_text(M23).unwrap().order(), 10_200_960);
        assert_eq!(group_from_text(M24).unwrap().order(), 244_823_040);
    }

    #[test]
    fn unknown_names_are_input_errors() {
        let err = FileResolver::default().load("no-such-group").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
