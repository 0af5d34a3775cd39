//! Epimorphism cache keyed by input hash, target group, and search bound.

use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::groups::{GroupHom, Permutation, TargetGroup};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheEntry {
    homs: Vec<Vec<Vec<usize>>>,
    complete: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
struct CacheData {
    entries: BTreeMap<String, CacheEntry>,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    data: CacheData,
    dirty: bool,
}

#[derive(Clone, Debug)]
pub struct CachedSearch {
    pub homs: Vec<GroupHom>,
    pub complete: bool,
}

fn key(hash: &str, group: TargetGroup, max_homs: usize) -> String {
    format!("{}:{}:{}", hash, group.name(), max_homs)
}

impl Cache {
    /// Loads the cache file; a corrupt or unreadable file logs a warning and
    /// yields an empty cache (the search re-runs).
    pub fn load(path: &Path) -> Cache {
        let data = match std::fs::read(path) {
            Ok(bytes) => match serde_json::from_slice::<CacheData>(&bytes) {
                Ok(data) => data,
                Err(e) => {
                    log::warn!("corrupt cache {}: {}; re-searching", path.display(), e);
                    CacheData::default()
                }
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => CacheData::default(),
            Err(e) => {
                log::warn!("unreadable cache {}: {}; re-searching", path.display(), e);
                CacheData::default()
            }
        };
        Cache { path: path.to_path_buf(), data, dirty: false }
    }

    pub fn get(&self, hash: &str, group: TargetGroup, max_homs: usize) -> Option<CachedSearch> {
        let entry = self.data.entries.get(&key(hash, group, max_homs))?;
        let mut homs = Vec::with_capacity(entry.homs.len());
        for tables in &entry.homs {
            let mut images = Vec::with_capacity(tables.len());
            for t in tables {
                images.push(Permutation::from_images(t.clone())?);
            }
            homs.push(GroupHom { target: group, images, surjective: true });
        }
        Some(CachedSearch { homs, complete: entry.complete })
    }

    pub fn put(&mut self, hash: &str, group: TargetGroup, max_homs: usize, search: &CachedSearch) {
        let entry = CacheEntry {
            homs: search
                .homs
                .iter()
                .map(|h| h.images.iter().map(|p| p.images().to_vec()).collect())
                .collect(),
            complete: search.complete,
        };
        self.data.entries.insert(key(hash, group, max_homs), entry);
        self.dirty = true;
    }

    pub fn save(&mut self) -> io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let bytes = serde_json::to_vec_pretty(&self.data).expect("cache serialization");
        std::fs::write(&self.path, bytes)?;
        self.dirty = false;
        Ok(())
    }
}
