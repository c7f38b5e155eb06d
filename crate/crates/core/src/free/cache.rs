use std::fs;
use std::path::{Path, PathBuf};

use super::arena::TreeArena;
use super::component::StoredComponent;
use crate::linalg::{Scalar, SparseVec, Subspace};
use crate::{Error, Result};

pub(crate) const FORMAT_VERSION: u32 = 1;

fn path_for(dir: &Path, n: usize, d: usize, w: usize) -> PathBuf {
    dir.join(format!("component-n{n}-d{d}-w{w}.json"))
}

fn layer_children(arena: &TreeArena, w: usize) -> Vec<Vec<u32>> {
    arena
        .layer_ids(w)
        .map(|id| {
            arena
                .children(id)
                .map(|ch| ch.iter().map(|c| c.0).collect())
                .unwrap_or_default()
        })
        .collect()
}

/// Loads the relation space of weight `w`. Any mismatch (version, parameters,
/// tree layout, malformed rows, non-canonical echelon form) is a miss.
pub(crate) fn load(dir: &Path, arena: &TreeArena, w: usize) -> Option<Subspace> {
    let (n, d) = (arena.arity(), arena.generators());
    let text = fs::read_to_string(path_for(dir, n, d, w)).ok()?;
    let stored: StoredComponent = serde_json::from_str(&text).ok()?;
    if stored.format_version != FORMAT_VERSION || stored.n != n || stored.d != d || stored.w != w {
        return None;
    }
    if stored.trees != layer_children(arena, w) {
        return None;
    }
    let len = stored.trees.len();
    let mut rows = Vec::with_capacity(stored.relations.len());
    for r in &stored.relations {
        let mut entries = Vec::with_capacity(r.len());
        for (c, x) in r {
            if *c >= len {
                return None;
            }
            entries.push((*c, x.parse::<Scalar>().ok()?));
        }
        rows.push(SparseVec::from_entries(entries));
    }
    let space = Subspace::span(len, rows.iter()).ok()?;
    (space.basis() == rows.as_slice()).then_some(space)
}

pub(crate) fn store(dir: &Path, arena: &TreeArena, w: usize, relations: &Subspace) -> Result<()> {
    let (n, d) = (arena.arity(), arena.generators());
    let stored = StoredComponent {
        format_version: FORMAT_VERSION,
        n,
        d,
        w,
        trees: layer_children(arena, w),
        relations: relations
            .basis()
            .iter()
            .map(|r| r.iter().map(|(c, x)| (c, x.to_string())).collect())
            .collect(),
    };
    let io = |e: std::io::Error| Error::Cache(e.to_string());
    fs::create_dir_all(dir).map_err(io)?;
    let text = serde_json::to_string(&stored).map_err(|e| Error::Cache(e.to_string()))?;
    let path = path_for(dir, n, d, w);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, &path).map_err(io)?;
    Ok(())
}

