use std::cmp::Ordering;
use std::fmt;

/// A fully parenthesised n-ary bracket word over generators `x1, x2, …`.
///
/// Generators are 0-based internally and render 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Generator(usize),
    Bracket(Vec<BracketTree>),
}

impl BracketTree {
    pub fn gen(i: usize) -> Self {
        BracketTree::Generator(i)
    }

    pub fn bracket(children: Vec<BracketTree>) -> Self {
        BracketTree::Bracket(children)
    }

    pub fn leaves(&self) -> usize {
        match self {
            BracketTree::Generator(_) => 1,
            BracketTree::Bracket(ch) => ch.iter().map(BracketTree::leaves).sum(),
        }
    }

    /// Generators weigh 1; a bracket of `t_1..t_n` weighs `Σ w(t_i) − n + 2`.
    pub fn weight(&self) -> usize {
        match self {
            BracketTree::Generator(_) => 1,
            BracketTree::Bracket(ch) => {
                ch.iter().map(BracketTree::weight).sum::<usize>() + 2 - ch.len()
            }
        }
    }

    /// Every internal node has exactly `n` children.
    pub fn is_well_formed(&self, n: usize) -> bool {
        match self {
            BracketTree::Generator(_) => true,
            BracketTree::Bracket(ch) => ch.len() == n && ch.iter().all(|c| c.is_well_formed(n)),
        }
    }

    pub fn max_generator(&self) -> usize {
        match self {
            BracketTree::Generator(i) => *i,
            BracketTree::Bracket(ch) => ch.iter().map(BracketTree::max_generator).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Generator(i) => write!(f, "x{}", i + 1),
            BracketTree::Bracket(ch) => {
                f.write_str("[")?;
                for (k, c) in ch.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Generators by index, every generator below every bracket, brackets by
/// weight and then lexicographically by children.
pub fn total_tree_order(a: &BracketTree, b: &BracketTree) -> Ordering {
    match (a, b) {
        (BracketTree::Generator(i), BracketTree::Generator(j)) => i.cmp(j),
        (BracketTree::Generator(_), BracketTree::Bracket(_)) => Ordering::Less,
        (BracketTree::Bracket(_), BracketTree::Generator(_)) => Ordering::Greater,
        (BracketTree::Bracket(x), BracketTree::Bracket(y)) => a.weight().cmp(&b.weight()).then_with(|| {
            for (p, q) in x.iter().zip(y) {
                match total_tree_order(p, q) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            x.len().cmp(&y.len())
        }),
    }
}

/// A tree in canonical form together with the sign picked up while sorting.
/// A sign of 0 means the tree vanishes by antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCanonicalTree {
    pub tree: BracketTree,
    pub sign: i8,
}

/// Sorts children ascending at every node, multiplying in the parity of each
/// sorting permutation; a repeated child at any node kills the tree.
pub fn canonicalize(t: &BracketTree) -> SignedCanonicalTree {
    match t {
        BracketTree::Generator(_) => SignedCanonicalTree {
            tree: t.clone(),
            sign: 1,
        },
        BracketTree::Bracket(ch) => {
            let mut sign = 1i8;
            let mut kids = Vec::with_capacity(ch.len());
            for c in ch {
                let sc = canonicalize(c);
                sign *= sc.sign;
                kids.push(sc.tree);
            }
            sign *= sort_with_parity(&mut kids, total_tree_order);
            if kids
                .windows(2)
                .any(|w| total_tree_order(&w[0], &w[1]) == Ordering::Equal)
            {
                sign = 0;
            }
            SignedCanonicalTree {
                tree: BracketTree::Bracket(kids),
                sign,
            }
        }
    }
}

/// Insertion sort returning the sign of the applied permutation.
pub(crate) fn sort_with_parity<T, F: Fn(&T, &T) -> Ordering>(v: &mut [T], cmp: F) -> i8 {
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && cmp(&v[j - 1], &v[j]) == Ordering::Greater {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use BracketTree::Generator as G;

    fn br(ch: Vec<BracketTree>) -> BracketTree {
        BracketTree::Bracket(ch)
    }

    #[test]
    fn order_examples() {
        assert_eq!(total_tree_order(&G(0), &G(1)), Ordering::Less);
        assert_eq!(total_tree_order(&G(2), &br(vec![G(0), G(1)])), Ordering::Less);
        assert_eq!(
            total_tree_order(&br(vec![G(0), G(1)]), &br(vec![G(0), G(2)])),
            Ordering::Less
        );
    }

    #[test]
    fn canonicalize_examples() {
        let c = canonicalize(&br(vec![G(1), G(0)]));
        assert_eq!(c.tree, br(vec![G(0), G(1)]));
        assert_eq!(c.sign, -1);

        assert_eq!(canonicalize(&br(vec![G(0), G(0), G(2)])).sign, 0);

        let c = canonicalize(&br(vec![br(vec![G(1), G(0)]), G(2)]));
        // generators sort below brackets, so x3 moves to the front: two sign flips
        assert_eq!(c.tree, br(vec![G(2), br(vec![G(0), G(1)])]));
        assert_eq!(c.sign, 1);
    }

    #[test]
    fn weights() {
        let t = br(vec![br(vec![G(0), G(1), G(2)]), G(3), G(4)]);
        assert_eq!(t.leaves(), 5);
        assert_eq!(t.weight(), 3);
        assert!(t.is_well_formed(3));
        assert!(!t.is_well_formed(2));
    }

    fn arb_tree(n: usize) -> impl proptest::strategy::Strategy<Value = BracketTree> {
        use proptest::prelude::*;
        let leaf = (0usize..4).prop_map(BracketTree::Generator);
        leaf.prop_recursive(3, 24, n as u32, move |inner| {
            proptest::collection::vec(inner, n).prop_map(BracketTree::Bracket)
        })
    }

    proptest::proptest! {
        #[test]
        fn canonicalize_is_idempotent(t in arb_tree(2)) {
            let c = canonicalize(&t);
            let cc = canonicalize(&c.tree);
            if c.sign != 0 {
                proptest::prop_assert_eq!(cc.sign, 1);
                proptest::prop_assert_eq!(cc.tree, c.tree);
            }
        }

        #[test]
        fn transposition_flips_sign(t in arb_tree(3)) {
            if let BracketTree::Bracket(ch) = &t {
                let mut sw = ch.clone();
                sw.swap(0, 1);
                let a = canonicalize(&t);
                let b = canonicalize(&BracketTree::Bracket(sw));
                proptest::prop_assert_eq!(a.sign, -b.sign);
                if a.sign != 0 {
                    proptest::prop_assert_eq!(a.tree, b.tree);
                }
            }
        }
    }
}
