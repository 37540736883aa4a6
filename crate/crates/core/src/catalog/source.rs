//! Resolving a user-supplied source: a catalog name or a path to a spec file.

use std::path::Path;

use super::{jordan_catalog, lie_catalog, load, JordanName, LieName};
use crate::error::{Error, Result};
use crate::jordan::JordanAlgebra;
use crate::superspace::{Kind, SuperAlgebra};

#[derive(Clone, Debug)]
pub enum Source {
    Jordan(JordanAlgebra),
    Lie(SuperAlgebra),
    /// A file whose table is not a Jordan superalgebra; only the identity
    /// checks apply to it.
    Plain(SuperAlgebra),
}

impl Source {
    pub fn name(&self) -> &str {
        match self {
            Source::Jordan(v) => v.name(),
            Source::Lie(g) | Source::Plain(g) => g.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Source::Jordan(v) => v.dim(),
            Source::Lie(g) | Source::Plain(g) => g.dim(),
        }
    }
}

/// Jordan names first, then Lie names, then a file. A plain file is read as a
/// Jordan superalgebra.
pub fn resolve(source: &str) -> Result<Source> {
    match source.parse::<JordanName>() {
        Ok(name) => return jordan_catalog(&name).map(Source::Jordan),
        Err(Error::UnknownName(_)) => {}
        Err(e) => return Err(e),
    }
    match source.parse::<LieName>() {
        Ok(name) => return lie_catalog(&name).map(Source::Lie),
        Err(Error::UnknownName(_)) => {}
        Err(e) => return Err(e),
    }
    let path = Path::new(source);
    if !path.is_file() {
        return Err(Error::UnknownName(source.to_string()));
    }
    let text = std::fs::read_to_string(path)?;
    let spec = load(&text)?;
    let a = spec.to_algebra()?;
    match a.kind() {
        Kind::Lie => Ok(Source::Lie(a)),
        Kind::Jordan | Kind::Plain => match JordanAlgebra::new(a.clone()) {
            Ok(v) => Ok(Source::Jordan(v)),
            Err(Error::CheckFailed(_)) => Ok(Source::Plain(a)),
            Err(e) => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{save, AlgebraSpec};

    #[test]
    fn names_and_files() {
        assert!(matches!(resolve("j19"), Ok(Source::Jordan(_))));
        assert!(matches!(resolve("psl:2"), Ok(Source::Lie(_))));
        assert!(matches!(resolve("no-such-thing"), Err(Error::UnknownName(_))));
        let dir = std::env::temp_dir().join(format!("tkk-source-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("k.json");
        let k = jordan_catalog(&JordanName::KacK).unwrap();
        std::fs::write(&path, save(&AlgebraSpec::from_algebra(k.base()))).unwrap();
        let back = resolve(path.to_str().unwrap()).unwrap();
        assert!(matches!(&back, Source::Jordan(v) if v.dim() == 3 && !v.is_unital()));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
