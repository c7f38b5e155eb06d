use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::arena::{Bracketed, TreeArena, TreeId};
use crate::linalg::{Accumulator, Echelon, Scalar, SparseVec, Subspace};

/// One weight layer `γ_w(F)/γ_{w+1}(F)` of the free n-Lie algebra on `d`
/// generators.
///
/// Coordinates ("columns") index the canonical trees of weight `w` in tree
/// order. `relations` is the Filippov relation space in those coordinates;
/// the non-pivot trees form the basis of the layer.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub n: usize,
    pub d: usize,
    pub w: usize,
    first_id: u32,
    labels: Vec<String>,
    relations: Subspace,
    basis_cols: Vec<usize>,
    col_to_basis: Vec<Option<usize>>,
    pivot_row: Vec<Option<usize>>,
}

impl GradedComponent {
    pub(crate) fn new(
        n: usize,
        d: usize,
        w: usize,
        arena: &TreeArena,
        relations: Subspace,
    ) -> Self {
        let range = arena.layer(w);
        let len = range.len();
        assert_eq!(relations.ambient_dim(), len);
        let labels = range.clone().map(|i| arena.label(TreeId(i))).collect();
        let basis_cols = relations.complement_indices();
        let mut col_to_basis = vec![None; len];
        for (b, &c) in basis_cols.iter().enumerate() {
            col_to_basis[c] = Some(b);
        }
        let mut pivot_row = vec![None; len];
        for (r, &p) in relations.pivots().iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        Self {
            n,
            d,
            w,
            first_id: range.start,
            labels,
            relations,
            basis_cols,
            col_to_basis,
            pivot_row,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis_cols.len()
    }

    pub fn num_trees(&self) -> usize {
        self.labels.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.dim()
    }

    pub fn canonical_tree_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_labels(&self) -> Vec<&str> {
        self.basis_cols.iter().map(|&c| self.labels[c].as_str()).collect()
    }

    pub fn basis_columns(&self) -> &[usize] {
        &self.basis_cols
    }

    pub fn basis_tree_ids(&self) -> Vec<TreeId> {
        self.basis_cols.iter().map(|&c| self.tree_id(c)).collect()
    }

    pub fn tree_id(&self, col: usize) -> TreeId {
        TreeId(self.first_id + col as u32)
    }

    pub fn column_of(&self, id: TreeId) -> Option<usize> {
        let c = id.0.checked_sub(self.first_id)? as usize;
        (c < self.labels.len()).then_some(c)
    }

    /// Coordinates over the layer basis of a single canonical tree.
    pub fn reduce_column(&self, col: usize) -> SparseVec {
        if let Some(b) = self.col_to_basis[col] {
            return SparseVec::unit(b);
        }
        let row = &self.relations.basis()[self.pivot_row[col].expect("column is a pivot")];
        SparseVec::from_entries(row.iter().filter(|&(c, _)| c != col).map(|(c, x)| {
            (
                self.col_to_basis[c].expect("echelon rows are zero on other pivots"),
                -x,
            )
        }))
    }

    /// Coordinates over the layer basis of a combination of canonical trees.
    pub fn reduce_vector(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        for (c, x) in v.iter() {
            acc.add_scaled(x, &self.reduce_column(c));
        }
        acc.take()
    }
}

/// Everything needed to generate relations of one weight: the arena (built at
/// least through that weight) and the components of all lower weights.
pub(crate) struct RelationContext<'a> {
    pub arena: &'a TreeArena,
    pub lower: &'a [Arc<GradedComponent>],
}

impl RelationContext<'_> {
    fn column(&self, w: usize, id: TreeId) -> usize {
        let r = self.arena.layer(w);
        debug_assert!(r.contains(&id.0));
        (id.0 - r.start) as usize
    }

    /// Streams every generating relation of weight `w` in canonical-tree
    /// coordinates: direct Filippov instances first, then each lower-weight
    /// relation bracketed with trees of the complementary weight. The stream
    /// stops early when `f` returns `false`.
    pub fn for_each_relation(&self, w: usize, f: &mut dyn FnMut(SparseVec) -> bool) {
        let arena = self.arena;
        let n = arena.arity();
        if w < 3 || arena.layer(w).is_empty() {
            return;
        }
        let len = arena.layer(w).len();
        let mut acc = Accumulator::new(len);
        let mut go = true;

        // [[t_1..t_n], s_2..s_n] − Σ_i [t_1, .., [t_i, s_2..s_n], .., t_n]
        for inner_w in 2..w {
            if !go {
                break;
            }
            let s_sum = w + n - 2 - inner_w;
            for inner in arena.layer_ids(inner_w) {
                if !go {
                    break;
                }
                let t = arena.children(inner).expect("bracket tree").to_vec();
                arena.for_each_increasing_tuple(n - 1, s_sum, 0, &mut |s| {
                    self.filippov_instance(w, inner, 1, &t, s, &mut acc);
                    let row = acc.take();
                    if !row.is_zero() {
                        go = f(row);
                    }
                    go
                });
            }
        }

        // ideal closure: [r, s_2..s_n] for r a relation of lower weight
        for v in 3..w {
            if !go {
                break;
            }
            let comp = &self.lower[v - 1];
            let s_sum = w + n - 2 - v;
            for r in comp.relations().basis() {
                if !go {
                    break;
                }
                arena.for_each_increasing_tuple(n - 1, s_sum, 0, &mut |s| {
                    self.embed(w, comp, r, 0, s, &mut acc);
                    let row = acc.take();
                    if !row.is_zero() {
                        go = f(row);
                    }
                    go
                });
            }
        }
    }

    fn filippov_instance(
        &self,
        w: usize,
        inner: TreeId,
        inner_sign: i8,
        t: &[TreeId],
        s: &[TreeId],
        acc: &mut Accumulator,
    ) {
        let arena = self.arena;
        let n = t.len();
        let mut args = Vec::with_capacity(n);
        args.push(inner);
        args.extend_from_slice(s);
        if let Bracketed::Tree { sign, id } = arena.bracket(&args) {
            acc.add(self.column(w, id), &Scalar::from_int((sign * inner_sign) as i64));
        }
        for i in 0..n {
            args.clear();
            args.push(t[i]);
            args.extend_from_slice(s);
            let Bracketed::Tree { sign: s1, id: mid } = arena.bracket(&args) else {
                continue;
            };
            let mut outer = t.to_vec();
            outer[i] = mid;
            if let Bracketed::Tree { sign: s2, id } = arena.bracket(&outer) {
                acc.add(self.column(w, id), &Scalar::from_int(-(s1 * s2) as i64));
            }
        }
    }

    /// Adds the bracket with `r` (a weight-`comp.w` relation row) placed at
    /// argument position `pos` and the trees `s` filling the other slots.
    fn embed(
        &self,
        w: usize,
        comp: &GradedComponent,
        r: &SparseVec,
        pos: usize,
        s: &[TreeId],
        acc: &mut Accumulator,
    ) {
        let mut args: Vec<TreeId> = Vec::with_capacity(s.len() + 1);
        for (c, x) in r.iter() {
            args.clear();
            args.extend_from_slice(&s[..pos]);
            args.push(comp.tree_id(c));
            args.extend_from_slice(&s[pos..]);
            if let Bracketed::Tree { sign, id } = self.arena.bracket(&args) {
                if sign > 0 {
                    acc.add(self.column(w, id), x);
                } else {
                    acc.add(self.column(w, id), &-x);
                }
            }
        }
    }

    pub fn relation_space(&self, w: usize) -> Subspace {
        let len = if w <= self.arena.max_weight() {
            self.arena.layer(w).len()
        } else {
            0
        };
        let mut ech = Echelon::new(len);
        self.for_each_relation(w, &mut |row| {
            ech.insert(&row);
            !ech.is_full()
        });
        ech.into_subspace()
    }

    /// Redundant relation stream used by the saturation check: Filippov
    /// instances over every ordering of both argument groups, and lower
    /// relations embedded at every argument position with every ordering of
    /// the remaining trees.
    pub fn for_each_redundant_relation(&self, w: usize, f: &mut dyn FnMut(SparseVec)) {
        let arena = self.arena;
        let n = arena.arity();
        if w < 3 || arena.layer(w).is_empty() {
            return;
        }
        let mut acc = Accumulator::new(arena.layer(w).len());
        for inner_w in 2..w {
            let s_sum = w + n - 2 - inner_w;
            for inner in arena.layer_ids(inner_w) {
                let t = arena.children(inner).expect("bracket tree").to_vec();
                arena.for_each_increasing_tuple(n - 1, s_sum, 0, &mut |s| {
                    for tp in permutations(&t) {
                        let Bracketed::Tree { sign, .. } = arena.bracket(&tp) else {
                            continue;
                        };
                        for sp in permutations(s) {
                            self.filippov_instance(w, inner, sign, &tp, &sp, &mut acc);
                            f(acc.take());
                        }
                    }
                    true
                });
            }
        }
        for v in 3..w {
            let comp = &self.lower[v - 1];
            let s_sum = w + n - 2 - v;
            for r in comp.relations().basis() {
                arena.for_each_increasing_tuple(n - 1, s_sum, 0, &mut |s| {
                    for sp in permutations(s) {
                        for pos in 0..n {
                            self.embed(w, comp, r, pos, &sp, &mut acc);
                            f(acc.take());
                        }
                    }
                    true
                });
            }
        }
    }
}

fn permutations(items: &[TreeId]) -> Vec<Vec<TreeId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// On-disk form of a component: the layer's tree structure (child ids) and
/// its relation rows, tagged with a format version.
#[derive(Serialize, Deserialize)]
pub(crate) struct StoredComponent {
    pub format_version: u32,
    pub n: usize,
    pub d: usize,
    pub w: usize,
    pub trees: Vec<Vec<u32>>,
    pub relations: Vec<Vec<(usize, String)>>,
}
