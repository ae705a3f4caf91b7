//! Built-in example documents and input resolution.

use std::path::{Path, PathBuf};

pub const EXAMPLES_ENV: &str = "SULLIVAN_EXAMPLES";

pub const LIBRARY: &[(&str, &str)] = &[
    ("abelian1", include_str!("../library/abelian1.json")),
    ("abelian2", include_str!("../library/abelian2.json")),
    ("abelian3", include_str!("../library/abelian3.json")),
    ("affine", include_str!("../library/affine.json")),
    ("boundary-pair", include_str!("../library/boundary-pair.json")),
    ("collapse", include_str!("../library/collapse.json")),
    ("cp2", include_str!("../library/cp2.json")),
    ("interval", include_str!("../library/interval.json")),
    ("s2", include_str!("../library/s2.json")),
    ("s3", include_str!("../library/s3.json")),
    ("so3", include_str!("../library/so3.json")),
    ("weighted", include_str!("../library/weighted.json")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    let key = name.strip_suffix(".json").unwrap_or(name).to_ascii_lowercase();
    LIBRARY.iter().find(|(n, _)| *n == key).map(|(_, text)| *text)
}

/// Reads `input` as a path, then relative to `$SULLIVAN_EXAMPLES`, then
/// from the built-in library.
pub fn resolve(input: &str, examples_dir: Option<&Path>) -> std::io::Result<String> {
    let direct = Path::new(input);
    if direct.is_file() {
        return std::fs::read_to_string(direct);
    }
    if let Some(dir) = examples_dir {
        for candidate in [dir.join(input), dir.join(format!("{input}.json"))] {
            if candidate.is_file() {
                return std::fs::read_to_string(candidate);
            }
        }
    }
    builtin(input).map(str::to_owned).ok_or_else(|| {
        std::io::Error::new(std::io::ErrorKind::NotFound, format!("no document {input:?} (not a file, not in the example library)"))
    })
}

pub fn examples_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(EXAMPLES_ENV).map(PathBuf::from)
}
