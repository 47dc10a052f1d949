//! Memoization of Demazure characters keyed by `(type, ℓ, λ)`.
//!
//! The in-memory layer is shared across threads. The optional disk layer
//! stores one JSON file per character under the SHA-256 of its key; a file
//! whose recorded key does not match is ignored and rewritten.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::affring::{AffWeight, CharElement, JsonTerm};
use crate::demazure::{demazure_character, demazure_datum, DemazureCharacter};
use crate::error::Result;
use crate::rootsys::{FinWeight, RootSystem};
use crate::Rational;

#[derive(Serialize, Deserialize)]
struct DiskEntry {
    key: String,
    char: Vec<JsonTerm>,
}

#[derive(Debug, Default)]
pub struct CharacterCache {
    enabled: bool,
    dir: Option<PathBuf>,
    mem: Mutex<HashMap<String, Arc<DemazureCharacter>>>,
}

impl CharacterCache {
    /// Process-local memoization only.
    pub fn in_memory() -> Self {
        CharacterCache {
            enabled: true,
            ..Default::default()
        }
    }

    /// Memory plus a directory of JSON files, created if missing.
    pub fn with_dir(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(CharacterCache {
            enabled: true,
            dir: Some(dir),
            ..Default::default()
        })
    }

    /// Every lookup recomputes.
    pub fn disabled() -> Self {
        CharacterCache::default()
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(rs: &RootSystem, level: i64, lambda: &FinWeight) -> String {
        format!("{}|{}|{}", rs.cartan_type(), level, lambda)
    }

    fn file_for(dir: &Path, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// ch D(ℓ,λ), computed at most once per key.
    pub fn demazure(
        &self,
        rs: &RootSystem,
        level: i64,
        lambda: &FinWeight,
    ) -> Result<Arc<DemazureCharacter>> {
        if !self.enabled {
            return Ok(Arc::new(demazure_character(rs, level, lambda)?));
        }
        let key = Self::key(rs, level, lambda);
        if let Some(hit) = self.mem.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let value = match self.load(rs, level, lambda, &key)? {
            Some(v) => v,
            None => {
                let v = demazure_character(rs, level, lambda)?;
                self.store(&key, &v)?;
                v
            }
        };
        let value = Arc::new(value);
        self.mem
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&value));
        Ok(value)
    }

    fn load(
        &self,
        rs: &RootSystem,
        level: i64,
        lambda: &FinWeight,
        key: &str,
    ) -> Result<Option<DemazureCharacter>> {
        let Some(dir) = &self.dir else {
            return Ok(None);
        };
        let Ok(text) = fs::read_to_string(Self::file_for(dir, key)) else {
            return Ok(None);
        };
        let Ok(entry) = serde_json::from_str::<DiskEntry>(&text) else {
            return Ok(None);
        };
        if entry.key != key {
            return Ok(None);
        }
        let Ok(char) = CharElement::from_json_entries(&entry.char) else {
            return Ok(None);
        };
        let (xi, _, _) = demazure_datum(rs, level, lambda)?;
        Ok(Some(DemazureCharacter {
            char,
            extremal_weight: xi,
            generator_weight: AffWeight::at_level(lambda.clone(), level),
            base_degree: Rational::from_integer(0),
            g_stable: true,
        }))
    }

    fn store(&self, key: &str, value: &DemazureCharacter) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let entry = DiskEntry {
            key: key.to_string(),
            char: value.char.to_json_entries(),
        };
        let path = Self::file_for(dir, key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_cache_round_trips_and_survives_corruption() {
        let dir = std::env::temp_dir().join(format!("demazure-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let rs = RootSystem::new("A2".parse().unwrap()).unwrap();
        let lambda = FinWeight::from_ints(&[1, 1]);
        let fresh = demazure_character(&rs, 2, &lambda).unwrap();

        let c = CharacterCache::with_dir(&dir).unwrap();
        assert_eq!(*c.demazure(&rs, 2, &lambda).unwrap(), fresh);
        let file = CharacterCache::file_for(&dir, &CharacterCache::key(&rs, 2, &lambda));
        assert!(file.exists());

        let reread = CharacterCache::with_dir(&dir).unwrap();
        assert_eq!(*reread.demazure(&rs, 2, &lambda).unwrap(), fresh);

        fs::write(&file, b"{not json").unwrap();
        let again = CharacterCache::with_dir(&dir).unwrap();
        assert_eq!(*again.demazure(&rs, 2, &lambda).unwrap(), fresh);
        assert_eq!(
            *CharacterCache::disabled()
                .demazure(&rs, 2, &lambda)
                .unwrap(),
            fresh
        );
        let _ = fs::remove_dir_all(&dir);
    }
}
