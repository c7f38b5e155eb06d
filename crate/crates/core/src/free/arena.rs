use std::collections::HashMap;
use std::ops::Range;

use super::tree::{sort_with_parity, BracketTree};
use crate::Error;

/// Index of an interned canonical tree. Ids are assigned weight by weight and,
/// inside a weight, in lexicographic order of the children's ids, so comparing
/// ids is the same as comparing trees under the total tree order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeId(pub u32);

impl TreeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Result of bracketing canonical trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracketed {
    Zero,
    Tree { sign: i8, id: TreeId },
}

/// Interning table of all canonical bracket trees over `d` generators with an
/// `n`-ary bracket, built layer by layer in weight order.
#[derive(Debug)]
pub struct TreeArena {
    n: usize,
    d: usize,
    weights: Vec<u32>,
    children: Vec<Option<Box<[TreeId]>>>,
    lookup: HashMap<Box<[TreeId]>, TreeId>,
    layers: Vec<Range<u32>>,
}

impl TreeArena {
    pub fn new(n: usize, d: usize) -> Self {
        assert!(n >= 2, "bracket arity must be at least 2");
        let mut arena = Self {
            n,
            d,
            weights: Vec::new(),
            children: Vec::new(),
            lookup: HashMap::new(),
            layers: Vec::new(),
        };
        for _ in 0..d {
            arena.weights.push(1);
            arena.children.push(None);
        }
        arena.layers.push(0..d as u32);
        arena
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> usize {
        self.d
    }

    pub fn max_weight(&self) -> usize {
        self.layers.len()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, id: TreeId) -> usize {
        self.weights[id.index()] as usize
    }

    pub fn children(&self, id: TreeId) -> Option<&[TreeId]> {
        self.children[id.index()].as_deref()
    }

    /// Id range of the weight-`w` layer; `w` must already be built.
    pub fn layer(&self, w: usize) -> Range<u32> {
        self.layers[w - 1].clone()
    }

    pub fn layer_ids(&self, w: usize) -> impl Iterator<Item = TreeId> {
        self.layer(w).map(TreeId)
    }

    /// Builds all layers up to weight `w`, refusing to create more than
    /// `max_trees` trees in total.
    pub fn extend_to(&mut self, w: usize, max_trees: usize) -> Result<(), Error> {
        while self.layers.len() < w {
            let next = self.layers.len() + 1;
            let mut found: Vec<Box<[TreeId]>> = Vec::new();
            let mut overflow = false;
            let budget = max_trees.saturating_sub(self.len());
            self.for_each_increasing_tuple(self.n, next + self.n - 2, 0, &mut |tuple| {
                if found.len() >= budget {
                    overflow = true;
                    return false;
                }
                found.push(tuple.to_vec().into_boxed_slice());
                true
            });
            if overflow {
                return Err(Error::ResourceGuard {
                    what: "canonical trees",
                    limit: max_trees,
                });
            }
            let start = self.len() as u32;
            for ch in found {
                let id = TreeId(self.len() as u32);
                self.weights.push(next as u32);
                self.lookup.insert(ch.clone(), id);
                self.children.push(Some(ch));
            }
            self.layers.push(start..self.len() as u32);
        }
        Ok(())
    }

    /// Calls `f` on every strictly increasing `k`-tuple of existing ids, each
    /// at least `start`, whose weights sum to `sum`, in lexicographic order.
    /// `f` returns `false` to stop early.
    pub fn for_each_increasing_tuple(
        &self,
        k: usize,
        sum: usize,
        start: u32,
        f: &mut dyn FnMut(&[TreeId]) -> bool,
    ) {
        let mut stack = Vec::with_capacity(k);
        self.tuples_rec(k, sum, start, &mut stack, f);
    }

    fn tuples_rec(
        &self,
        k: usize,
        sum: usize,
        start: u32,
        stack: &mut Vec<TreeId>,
        f: &mut dyn FnMut(&[TreeId]) -> bool,
    ) -> bool {
        if k == 0 {
            return if sum == 0 { f(stack) } else { true };
        }
        if k == 1 {
            if sum == 0 || sum > self.layers.len() {
                return true;
            }
            let r = self.layer(sum);
            for id in r.start.max(start)..r.end {
                stack.push(TreeId(id));
                let go = f(stack);
                stack.pop();
                if !go {
                    return false;
                }
            }
            return true;
        }
        // ids are sorted by weight, so every later child weighs at least as
        // much as the current one
        for id in start..self.len() as u32 {
            let wt = self.weights[id as usize] as usize;
            if wt * k > sum {
                break;
            }
            stack.push(TreeId(id));
            let go = self.tuples_rec(k - 1, sum - wt, id + 1, stack, f);
            stack.pop();
            if !go {
                return false;
            }
        }
        true
    }

    /// Bracket of canonical trees, sorted into canonical order.
    ///
    /// Panics if the resulting weight has not been built yet.
    pub fn bracket(&self, args: &[TreeId]) -> Bracketed {
        debug_assert_eq!(args.len(), self.n);
        let mut sorted: smallbuf::Buf = smallbuf::Buf::from_slice(args);
        let sign = sort_with_parity(sorted.as_mut_slice(), |a, b| a.cmp(b));
        if sorted.as_slice().windows(2).any(|w| w[0] == w[1]) {
            return Bracketed::Zero;
        }
        match self.lookup.get(sorted.as_slice()) {
            Some(&id) => Bracketed::Tree { sign, id },
            None => panic!(
                "bracket of weight {} requested before that layer was built",
                args.iter().map(|&a| self.weight(a)).sum::<usize>() + 2 - self.n
            ),
        }
    }

    pub fn tree(&self, id: TreeId) -> BracketTree {
        match self.children(id) {
            None => BracketTree::Generator(id.index()),
            Some(ch) => BracketTree::Bracket(ch.iter().map(|&c| self.tree(c)).collect()),
        }
    }

    /// Interns a tree given in any form; returns its canonical signed id.
    pub fn intern(&self, t: &BracketTree) -> Option<Bracketed> {
        match t {
            BracketTree::Generator(i) if *i < self.d => Some(Bracketed::Tree {
                sign: 1,
                id: TreeId(*i as u32),
            }),
            BracketTree::Generator(_) => None,
            BracketTree::Bracket(ch) => {
                if ch.len() != self.n || t.weight() > self.max_weight() {
                    return None;
                }
                let mut sign = 1i8;
                let mut ids = Vec::with_capacity(self.n);
                for c in ch {
                    match self.intern(c)? {
                        Bracketed::Zero => return Some(Bracketed::Zero),
                        Bracketed::Tree { sign: s, id } => {
                            sign *= s;
                            ids.push(id);
                        }
                    }
                }
                Some(match self.bracket(&ids) {
                    Bracketed::Zero => Bracketed::Zero,
                    Bracketed::Tree { sign: s, id } => Bracketed::Tree { sign: sign * s, id },
                })
            }
        }
    }

    pub fn label(&self, id: TreeId) -> String {
        self.tree(id).to_string()
    }
}

/// Tiny inline buffer so the hot bracket path avoids heap allocation for
/// small arities.
mod smallbuf {
    use super::TreeId;

    const INLINE: usize = 8;

    pub enum Buf {
        Inline([TreeId; INLINE], usize),
        Heap(Vec<TreeId>),
    }

    impl Buf {
        pub fn from_slice(s: &[TreeId]) -> Self {
            if s.len() <= INLINE {
                let mut a = [TreeId(0); INLINE];
                a[..s.len()].copy_from_slice(s);
                Buf::Inline(a, s.len())
            } else {
                Buf::Heap(s.to_vec())
            }
        }

        pub fn as_slice(&self) -> &[TreeId] {
            match self {
                Buf::Inline(a, n) => &a[..*n],
                Buf::Heap(v) => v,
            }
        }

        pub fn as_mut_slice(&mut self) -> &mut [TreeId] {
            match self {
                Buf::Inline(a, n) => &mut a[..*n],
                Buf::Heap(v) => v,
            }
        }
    }
}
