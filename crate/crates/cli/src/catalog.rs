//! Built-in spec files. `PLIE_CATALOG_DIR` points at a directory of
//! `NAME.json` files to use instead.

use std::path::PathBuf;

use crate::error::CliError;

pub const ENV_VAR: &str = "PLIE_CATALOG_DIR";

const BUILTIN: &[(&str, &str)] = &[
    ("abelian-trivial", include_str!("../catalog/abelian-trivial.json")),
    ("heisenberg", include_str!("../catalog/heisenberg.json")),
    ("nontrivial-bi", include_str!("../catalog/nontrivial-bi.json")),
    ("r3-lambda", include_str!("../catalog/r3-lambda.json")),
    ("so3-dual", include_str!("../catalog/so3-dual.json")),
];

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Entry names in sorted order.
pub fn names() -> Result<Vec<String>, CliError> {
    let Some(dir) = override_dir() else {
        return Ok(BUILTIN.iter().map(|(n, _)| n.to_string()).collect());
    };
    let read = std::fs::read_dir(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for entry in read {
        let path = entry.map_err(|e| CliError::Io(e.to_string()))?.path();
        if path.extension().is_some_and(|x| x == "json") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                out.push(stem.to_string());
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Text of a catalog entry; a trailing `.json` on the name is ignored.
pub fn lookup(name: &str) -> Result<Option<String>, CliError> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    if let Some(dir) = override_dir() {
        let path = dir.join(format!("{name}.json"));
        return match std::fs::read_to_string(&path) {
            Ok(t) => Ok(Some(t)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(CliError::Io(format!("{}: {e}", path.display()))),
        };
    }
    Ok(BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| t.to_string()))
}
