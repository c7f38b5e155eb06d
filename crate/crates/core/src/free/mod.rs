//! Free n-Lie algebras: canonical bracket trees, Filippov relations by weight,
//! and the graded components `γ_w(F)/γ_{w+1}(F)`.
//!
//! Components are memoized per `(n, d)` in a process-wide registry, and can
//! optionally be persisted to a cache directory.

mod arena;
mod cache;
mod component;
mod nilpotent;
mod tree;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, LazyLock, Mutex, MutexGuard};

pub use arena::{Bracketed, TreeArena, TreeId};
pub use component::GradedComponent;
pub use nilpotent::{free_nilpotent, free_nilpotent_shared, FreeNilpotentAlgebra};
pub use tree::{canonicalize, total_tree_order, BracketTree, SignedCanonicalTree};

use crate::linalg::{Echelon, SparseVec};
use crate::{Error, Result};
use component::RelationContext;

pub const DEFAULT_MAX_TREES: usize = 200_000;

static MAX_TREES: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_TREES);
static CACHE_DIR: Mutex<Option<PathBuf>> = Mutex::new(None);
static REGISTRY: LazyLock<Mutex<HashMap<(usize, usize), Arc<Mutex<FreeLie>>>>> =
    LazyLock::new(Default::default);

/// Caps the number of canonical trees any single `(n, d)` arena may hold.
pub fn set_max_trees(limit: usize) {
    MAX_TREES.store(limit, Ordering::Relaxed);
}

pub fn max_trees() -> usize {
    MAX_TREES.load(Ordering::Relaxed)
}

/// Enables (or disables, with `None`) the on-disk component cache.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *lock(&CACHE_DIR) = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    lock(&CACHE_DIR).clone()
}

pub(crate) fn sort_parity<T: Ord>(v: &mut [T]) -> i8 {
    tree::sort_with_parity(v, |a, b| a.cmp(b))
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

/// The free n-Lie algebra on `d` generators, built lazily weight by weight.
pub struct FreeLie {
    arena: TreeArena,
    components: Vec<Arc<GradedComponent>>,
}

impl FreeLie {
    fn new(n: usize, d: usize) -> Self {
        Self {
            arena: TreeArena::new(n, d),
            components: Vec::new(),
        }
    }

    pub fn arena(&self) -> &TreeArena {
        &self.arena
    }

    /// Components of weights `1..=built`.
    pub fn components(&self) -> &[Arc<GradedComponent>] {
        &self.components
    }

    fn ensure(&mut self, w: usize) -> Result<()> {
        if self.components.len() >= w {
            return Ok(());
        }
        self.arena.extend_to(w, max_trees())?;
        let (n, d) = (self.arena.arity(), self.arena.generators());
        while self.components.len() < w {
            let v = self.components.len() + 1;
            let dir = cache_dir();
            let cached = match (&dir, v >= 3) {
                (Some(dir), true) => cache::load(dir, &self.arena, v),
                _ => None,
            };
            let relations = match cached {
                Some(r) => r,
                None => {
                    let ctx = RelationContext {
                        arena: &self.arena,
                        lower: &self.components,
                    };
                    let r = ctx.relation_space(v);
                    if let (Some(dir), true) = (&dir, v >= 3) {
                        cache::store(dir, &self.arena, v, &r)?;
                    }
                    r
                }
            };
            let comp = GradedComponent::new(n, d, v, &self.arena, relations);
            self.components.push(Arc::new(comp));
        }
        Ok(())
    }
}

fn check_params(n: usize, w: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("arity n must be at least 2, got {n}")));
    }
    if w < 1 {
        return Err(Error::Domain("weight must be at least 1".into()));
    }
    Ok(())
}

/// Runs `f` on the free algebra for `(n, d)` after building it through
/// weight `w`.
pub fn with_free_lie<R>(n: usize, d: usize, w: usize, f: impl FnOnce(&FreeLie) -> R) -> Result<R> {
    check_params(n, w)?;
    let entry = lock(&REGISTRY)
        .entry((n, d))
        .or_insert_with(|| Arc::new(Mutex::new(FreeLie::new(n, d))))
        .clone();
    let mut fl = lock(&entry);
    fl.ensure(w)?;
    Ok(f(&fl))
}

pub fn graded_component(n: usize, d: usize, w: usize) -> Result<Arc<GradedComponent>> {
    with_free_lie(n, d, w, |fl| fl.components[w - 1].clone())
}

/// `D_d^n(w)`: the dimension of the weight-`w` layer of the free n-Lie
/// algebra on `d` generators.
pub fn oracle_dim(n: usize, d: usize, w: usize) -> Result<usize> {
    Ok(graded_component(n, d, w)?.dim())
}

pub fn canonical_trees(n: usize, d: usize, w: usize) -> Result<Vec<BracketTree>> {
    with_free_lie(n, d, w, |fl| {
        fl.arena.layer_ids(w).map(|id| fl.arena.tree(id)).collect()
    })
}

/// Every generating relation of weight `w` in canonical-tree coordinates:
/// direct Filippov instances, then lower-weight relations bracketed into
/// weight `w`.
pub fn filippov_relations(n: usize, d: usize, w: usize) -> Result<Vec<SparseVec>> {
    if w < 3 {
        check_params(n, w)?;
        return Ok(Vec::new());
    }
    with_free_lie(n, d, w, |fl| {
        let ctx = RelationContext {
            arena: &fl.arena,
            lower: &fl.components,
        };
        let mut out = Vec::new();
        ctx.for_each_relation(w, &mut |row| {
            out.push(row);
            true
        });
        out
    })
}

/// Fixed-point test: adding a redundant second family of relation instances
/// (all argument orderings, all embedding positions) leaves the relation
/// rank unchanged.
pub fn saturation_check(n: usize, d: usize, w: usize) -> Result<bool> {
    if w < 3 {
        check_params(n, w)?;
        return Ok(true);
    }
    with_free_lie(n, d, w, |fl| {
        let comp = &fl.components[w - 1];
        let ctx = RelationContext {
            arena: &fl.arena,
            lower: &fl.components,
        };
        let mut ech = Echelon::new(comp.num_trees());
        for r in comp.relations().basis() {
            ech.insert(r);
        }
        let before = ech.rank();
        ctx.for_each_redundant_relation(w, &mut |row| {
            ech.insert(&row);
        });
        ech.rank() == before
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn mobius(mut n: usize) -> i64 {
        let mut res = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                res = -res;
            }
            p += 1;
        }
        if n > 1 {
            res = -res;
        }
        res
    }

    fn witt(d: usize, w: usize) -> usize {
        let s: i64 = (1..=w)
            .filter(|e| w % e == 0)
            .map(|e| mobius(e) * (d as i64).pow((w / e) as u32))
            .sum();
        (s / w as i64) as usize
    }

    #[test]
    fn witt_dimensions_for_lie_case() {
        for d in 1..=4 {
            for w in 1..=5 {
                assert_eq!(oracle_dim(2, d, w).unwrap(), witt(d, w), "d={d} w={w}");
            }
        }
    }

    #[test]
    fn weight_two_is_binomial() {
        for n in 2..=4 {
            for d in 0..=6 {
                assert_eq!(oracle_dim(n, d, 2).unwrap(), binom(d, n));
            }
        }
    }

    #[test]
    fn below_arity_is_abelian() {
        assert_eq!(oracle_dim(3, 2, 1).unwrap(), 2);
        for w in 2..=4 {
            assert_eq!(oracle_dim(3, 2, w).unwrap(), 0);
        }
    }

    #[test]
    fn no_relations_at_weight_two() {
        assert!(filippov_relations(3, 3, 2).unwrap().is_empty());
        // Jacobi with a repeated generator is trivial, so d = 2 has none at w = 3
        assert!(filippov_relations(2, 2, 3).unwrap().is_empty());
        assert!(!filippov_relations(2, 3, 3).unwrap().is_empty());
    }

    #[test]
    fn relation_sets_are_saturated() {
        for (n, d, w) in [(2, 2, 3), (2, 2, 4), (2, 3, 4), (2, 2, 5), (3, 3, 3), (3, 4, 3)] {
            assert!(saturation_check(n, d, w).unwrap(), "n={n} d={d} w={w}");
        }
    }

    #[test]
    fn reduce_column_is_identity_on_basis() {
        let c = graded_component(2, 3, 4).unwrap();
        for (b, &col) in c.basis_columns().iter().enumerate() {
            assert_eq!(c.reduce_column(col), SparseVec::unit(b));
        }
        assert_eq!(c.dim(), c.num_trees() - c.relation_rank());
    }

    #[test]
    fn bad_arity_is_a_domain_error() {
        assert!(matches!(oracle_dim(1, 3, 2), Err(Error::Domain(_))));
    }
}
