use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use super::arena::{Bracketed, TreeId};
use super::component::GradedComponent;
use super::{with_free_lie, BracketTree};
use crate::algebra::StructureAlgebra;
use crate::linalg::SparseVec;
use crate::Result;

/// `F/γ_{k+1}(F)` for the free n-Lie algebra `F` on `d` generators, with the
/// basis trees of each layer concatenated in weight order.
#[derive(Clone, Debug)]
pub struct FreeNilpotentAlgebra {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub layers: Vec<Arc<GradedComponent>>,
    /// Weight of each basis element.
    pub weights: Vec<usize>,
    pub trees: Vec<BracketTree>,
    /// Start of each weight's block in the basis (`offsets[w-1]`).
    pub offsets: Vec<usize>,
    pub algebra: StructureAlgebra,
}

impl FreeNilpotentAlgebra {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Basis indices of the weight-`w` layer.
    pub fn layer_range(&self, w: usize) -> std::ops::Range<usize> {
        let start = self.offsets[w - 1];
        start..start + self.layers[w - 1].dim()
    }

    /// Basis indices of all layers of weight at least `w`.
    pub fn tail_from(&self, w: usize) -> std::ops::Range<usize> {
        if w > self.k {
            return self.dim()..self.dim();
        }
        self.offsets[w - 1]..self.dim()
    }
}

/// Structure constants: bracket basis trees, canonicalize, then reduce in the
/// target layer; anything above weight `k` is zero.
pub fn free_nilpotent(n: usize, d: usize, k: usize) -> Result<FreeNilpotentAlgebra> {
    with_free_lie(n, d, k, |fl| {
        let arena = fl.arena();
        let layers: Vec<Arc<GradedComponent>> = fl.components()[..k].to_vec();
        let mut weights = Vec::new();
        let mut ids: Vec<TreeId> = Vec::new();
        let mut offsets = Vec::with_capacity(k);
        for comp in &layers {
            offsets.push(ids.len());
            for id in comp.basis_tree_ids() {
                weights.push(comp.w);
                ids.push(id);
            }
        }
        let trees: Vec<BracketTree> = ids.iter().map(|&id| arena.tree(id)).collect();
        let names = trees.iter().map(ToString::to_string).collect();
        let mut algebra = StructureAlgebra::new(n, names)?;
        let dim = ids.len();
        let budget = k + n - 2;
        let mut tuple = Vec::with_capacity(n);
        fn rec(
            start: usize,
            remaining: usize,
            n: usize,
            weights: &[usize],
            tuple: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if tuple.len() == n {
                f(tuple);
                return;
            }
            let left = n - tuple.len();
            for i in start..weights.len() {
                if weights[i] * left > remaining {
                    break;
                }
                tuple.push(i);
                rec(i + 1, remaining - weights[i], n, weights, tuple, f);
                tuple.pop();
            }
        }
        let mut entries: Vec<(Vec<usize>, SparseVec)> = Vec::new();
        rec(0, budget, n, &weights, &mut tuple, &mut |t| {
            let args: Vec<TreeId> = t.iter().map(|&i| ids[i]).collect();
            let target = t.iter().map(|&i| weights[i]).sum::<usize>() + 2 - n;
            if let Bracketed::Tree { sign, id } = arena.bracket(&args) {
                let comp = &layers[target - 1];
                let col = comp.column_of(id).expect("bracket lands in its weight layer");
                let v = comp.reduce_column(col).shifted(offsets[target - 1]);
                if !v.is_zero() {
                    entries.push((t.to_vec(), if sign > 0 { v } else { v.negated() }));
                }
            }
        });
        for (t, v) in entries {
            algebra.set_bracket(&t, v)?;
        }
        debug_assert_eq!(algebra.dim(), dim);
        Ok(FreeNilpotentAlgebra {
            n,
            d,
            k,
            layers,
            weights,
            trees,
            offsets,
            algebra,
        })
    })?
}

static SHARED: LazyLock<Mutex<HashMap<(usize, usize, usize), Arc<FreeNilpotentAlgebra>>>> =
    LazyLock::new(Default::default);

/// Memoized `free_nilpotent`.
pub fn free_nilpotent_shared(n: usize, d: usize, k: usize) -> Result<Arc<FreeNilpotentAlgebra>> {
    if let Some(f) = super::lock(&SHARED).get(&(n, d, k)) {
        return Ok(f.clone());
    }
    let f = Arc::new(free_nilpotent(n, d, k)?);
    Ok(super::lock(&SHARED).entry((n, d, k)).or_insert(f).clone())
}
