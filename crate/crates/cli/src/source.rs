//! Resolving a scheme from the catalog, a file, or the custom-scheme directory.

use std::fs;
use std::path::{Path, PathBuf};

use gosper::schemes::{lookup, parse_scheme, Params, SchemeDef};
use gosper::Error;

/// Environment variable naming a directory of `*.scheme` files.
pub const SCHEME_PATH_VAR: &str = "GOSPER_SCHEME_PATH";

/// A scheme loaded from disk.
#[derive(Clone, Debug)]
pub struct CustomScheme {
    pub path: PathBuf,
    pub scheme: SchemeDef,
}

/// Custom schemes found in a directory, plus files that failed to load.
#[derive(Clone, Debug, Default)]
pub struct CustomSet {
    pub schemes: Vec<CustomScheme>,
    pub skipped: Vec<(PathBuf, String)>,
}

impl CustomSet {
    /// Loads every `*.scheme` file in `dir`, ordered by scheme name and then path.
    pub fn load(dir: &Path) -> std::io::Result<CustomSet> {
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "scheme") && p.is_file())
            .collect();
        paths.sort();
        let mut set = CustomSet::default();
        for path in paths {
            match read_scheme_file(&path) {
                Ok(scheme) => set.schemes.push(CustomScheme { path, scheme }),
                Err(e) => set.skipped.push((path, e.to_string())),
            }
        }
        set.schemes
            .sort_by(|a, b| a.scheme.name.cmp(&b.scheme.name).then(a.path.cmp(&b.path)));
        Ok(set)
    }

    pub fn find(&self, name: &str) -> Option<&CustomScheme> {
        self.schemes.iter().find(|c| c.scheme.name == name)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Scheme { path: PathBuf, source: Error },
}

pub fn read_scheme_file(path: &Path) -> Result<SchemeDef, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scheme(&text).map_err(|source| LoadError::Scheme {
        path: path.to_path_buf(),
        source,
    })
}

/// Catalog names win over custom files of the same name.
pub fn resolve(name: &str, params: &Params, custom: &CustomSet) -> Result<SchemeDef, Error> {
    match lookup(name, params) {
        Err(Error::NotInCatalog(_)) => match custom.find(name) {
            Some(c) if params.is_empty() => Ok(c.scheme.clone()),
            Some(c) => c.scheme.with_params(params),
            None => Err(Error::NotInCatalog(name.to_string())),
        },
        other => other,
    }
}
