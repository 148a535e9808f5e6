//! One JSON document per level, keyed by level, code version and the
//! algebra's presentation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CensusRecord;
use crate::error::Result;
use crate::quatarith::brandt::BrandtMatrix;
use crate::quatarith::classes::IdealClassSet;

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub level: u64,
    pub version: String,
    /// "(a,b)" for B = (a, b | Q).
    pub algebra: String,
}

impl CacheKey {
    pub fn for_classes(classes: &IdealClassSet) -> Self {
        let alg = &classes.order.algebra;
        CacheKey {
            level: classes.level,
            version: CODE_VERSION.to_string(),
            algebra: format!("({},{})", alg.a, alg.b),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheDocument {
    pub key: CacheKey,
    pub classes: IdealClassSet,
    pub brandt: Vec<BrandtMatrix>,
    pub record: Option<CensusRecord>,
}

impl CacheDocument {
    pub fn new(classes: IdealClassSet, brandt: Vec<BrandtMatrix>, record: Option<CensusRecord>) -> Self {
        CacheDocument {
            key: CacheKey::for_classes(&classes),
            classes,
            brandt,
            record,
        }
    }
}

/// A directory of level documents. Documents from another code version or
/// algebra presentation are treated as absent.
#[derive(Clone, Debug)]
pub struct LevelCache {
    dir: PathBuf,
}

impl LevelCache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        LevelCache {
            dir: dir.as_ref().to_path_buf(),
        }
    }

    pub fn path(&self, level: u64) -> PathBuf {
        self.dir.join(format!("level-{level}.json"))
    }

    pub fn load(&self, level: u64) -> Result<Option<CacheDocument>> {
        let p = self.path(level);
        if !p.exists() {
            return Ok(None);
        }
        let doc: CacheDocument = match serde_json::from_str(&fs::read_to_string(&p)?) {
            Ok(d) => d,
            Err(_) => return Ok(None),
        };
        let alg = crate::quatarith::algebra::build_algebra(level)?;
        let fresh = doc.key.level == level
            && doc.key.version == CODE_VERSION
            && doc.key.algebra == format!("({},{})", alg.a, alg.b);
        Ok(fresh.then_some(doc))
    }

    /// Writes through a temporary file so readers never see a partial document.
    pub fn store(&self, doc: &CacheDocument) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let p = self.path(doc.key.level);
        let tmp = p.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(doc)?)?;
        fs::rename(&tmp, &p)?;
        Ok(())
    }

    /// Levels with a current document, increasing.
    pub fn levels(&self) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        if !self.dir.exists() {
            return Ok(out);
        }
        for e in fs::read_dir(&self.dir)? {
            let name = e?.file_name().to_string_lossy().into_owned();
            if let Some(n) = name
                .strip_prefix("level-")
                .and_then(|r| r.strip_suffix(".json"))
                .and_then(|r| r.parse::<u64>().ok())
            {
                if self.load(n)?.is_some() {
                    out.push(n);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Removes every level document; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let mut k = 0;
        if !self.dir.exists() {
            return Ok(0);
        }
        for e in fs::read_dir(&self.dir)? {
            let e = e?;
            let name = e.file_name().to_string_lossy().into_owned();
            if name.starts_with("level-") && name.ends_with(".json") {
                fs::remove_file(e.path())?;
                k += 1;
            }
        }
        Ok(k)
    }
}
