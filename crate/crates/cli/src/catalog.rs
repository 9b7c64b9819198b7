use std::path::{Path, PathBuf};

use pythaproof_core::library::{LoadError, Registry};

pub const PROOFS_DIR_VAR: &str = "TRIG_PROOFS_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Load(#[from] LoadError),
}

/// Where the catalog comes from: an explicit directory, the environment
/// override, or the embedded copy.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf).or_else(|| std::env::var_os(PROOFS_DIR_VAR).map(PathBuf::from))
}

pub fn load(dir: Option<&Path>) -> Result<Registry, CatalogError> {
    match dir {
        None => Ok(Registry::shipped()?),
        Some(d) => load_dir(d),
    }
}

/// Loads every `*.trig` file of `dir` in file-name order.
pub fn load_dir(dir: &Path) -> Result<Registry, CatalogError> {
    let io = |source| CatalogError::Io { path: dir.to_path_buf(), source };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "trig"))
        .collect();
    files.sort();
    let mut sources = Vec::new();
    for path in files {
        let text = std::fs::read_to_string(&path).map_err(|source| CatalogError::Io { path: path.clone(), source })?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        sources.push((stem, text));
    }
    Ok(Registry::from_sources(sources.iter().map(|(s, t)| (s.as_str(), t.as_str())))?)
}
