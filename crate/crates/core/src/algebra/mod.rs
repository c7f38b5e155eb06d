//! Finite-dimensional n-Lie algebras given by structure constants.

mod io;
mod series;

use std::collections::BTreeMap;

pub use io::{from_json_str, to_json_string, to_json_value};
pub use series::{
    lower_central_series, minimal_generators, nilpotency_class, upper_central_series, CentralSeries,
};

use crate::free::BracketTree;
use crate::linalg::{kernel, Accumulator, Echelon, Scalar, SparseVec, Subspace};
use crate::{Error, Result};

/// An n-Lie algebra on an ordered basis. Only strictly increasing index
/// tuples are stored; other orderings follow by antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    n: usize,
    names: Vec<String>,
    table: BTreeMap<Vec<usize>, SparseVec>,
}

/// For each sorted `(n−1)`-tuple `s`, the nonzero `[e_i, e_s]` with their
/// leading index `i`.
pub(crate) type AdjointIndex = BTreeMap<Vec<usize>, Vec<(usize, SparseVec)>>;

impl StructureAlgebra {
    pub fn new(n: usize, names: Vec<String>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("arity n must be at least 2, got {n}")));
        }
        Ok(Self {
            n,
            names,
            table: BTreeMap::new(),
        })
    }

    pub fn with_dim(n: usize, dim: usize) -> Result<Self> {
        Self::new(n, (1..=dim).map(|i| format!("e{i}")).collect())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Stored nonzero brackets, keyed by sorted 0-based index tuples.
    pub fn table(&self) -> &BTreeMap<Vec<usize>, SparseVec> {
        &self.table
    }

    /// Sets `[e_{args}]` for any ordering of distinct indices; the value is
    /// sign-adjusted so the stored tuple is sorted.
    pub fn set_bracket(&mut self, args: &[usize], value: SparseVec) -> Result<()> {
        if args.len() != self.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: args.len(),
            });
        }
        let dim = self.dim();
        if args.iter().any(|&a| a >= dim) || value.support_bound() > dim {
            return Err(Error::Domain("basis index out of range".into()));
        }
        let mut key = args.to_vec();
        let sign = crate::free::sort_parity(&mut key);
        if key.windows(2).any(|w| w[0] == w[1]) {
            return if value.is_zero() {
                Ok(())
            } else {
                Err(Error::Domain("bracket with a repeated argument must be zero".into()))
            };
        }
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            let v = if sign > 0 { value } else { value.negated() };
            self.table.insert(key, v);
        }
        Ok(())
    }

    /// `[e_{i_1}, …, e_{i_n}]` for any index order.
    pub fn bracket_basis(&self, args: &[usize]) -> SparseVec {
        let mut key = args.to_vec();
        let sign = crate::free::sort_parity(&mut key);
        if key.windows(2).any(|w| w[0] == w[1]) {
            return SparseVec::new();
        }
        match self.table.get(&key) {
            None => SparseVec::new(),
            Some(v) if sign > 0 => v.clone(),
            Some(v) => v.negated(),
        }
    }

    /// Multilinear extension of the bracket to arbitrary vectors.
    pub fn bracket(&self, args: &[&SparseVec]) -> SparseVec {
        assert_eq!(args.len(), self.n, "bracket needs exactly n arguments");
        let mut acc = Accumulator::new(self.dim());
        let mut idx = Vec::with_capacity(self.n);
        self.bracket_rec(args, &mut idx, Scalar::one(), &mut acc);
        acc.take()
    }

    fn bracket_rec(
        &self,
        args: &[&SparseVec],
        idx: &mut Vec<usize>,
        coeff: Scalar,
        acc: &mut Accumulator,
    ) {
        let k = idx.len();
        if k == args.len() {
            let v = self.bracket_basis(idx);
            if !v.is_zero() {
                acc.add_scaled(&coeff, &v);
            }
            return;
        }
        for (i, x) in args[k].iter() {
            if idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.bracket_rec(args, idx, &coeff * x, acc);
            idx.pop();
        }
    }

    pub(crate) fn adjoint_index(&self) -> AdjointIndex {
        let mut ad: AdjointIndex = BTreeMap::new();
        for (key, v) in &self.table {
            for p in 0..key.len() {
                let mut s = key.clone();
                let i = s.remove(p);
                let val = if p % 2 == 0 { v.clone() } else { v.negated() };
                ad.entry(s).or_default().push((i, val));
            }
        }
        ad
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// Span of all brackets taking the `k`-th argument from `factors[k]`.
    pub fn bracket_product(&self, factors: &[&Subspace]) -> Result<Subspace> {
        if factors.len() != self.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: factors.len(),
            });
        }
        let dim = self.dim();
        if factors.iter().any(|f| f.ambient_dim() != dim) {
            return Err(Error::ParentMismatch);
        }
        if factors.iter().any(|f| f.is_zero()) || self.table.is_empty() {
            return Ok(Subspace::zero(dim));
        }
        let partial: Vec<&Subspace> = factors.iter().copied().filter(|f| !f.is_full()).collect();
        match partial.len() {
            0 => self.derived(),
            1 => Ok(self.product_with_full(partial[0], &self.adjoint_index())),
            _ => {
                let mut ech = Echelon::new(dim);
                let bases: Vec<&[SparseVec]> = factors.iter().map(|f| f.basis()).collect();
                let mut choice = vec![0usize; self.n];
                'outer: loop {
                    let args: Vec<&SparseVec> =
                        choice.iter().zip(&bases).map(|(&c, b)| &b[c]).collect();
                    ech.insert(&self.bracket(&args));
                    if ech.is_full() {
                        break;
                    }
                    for k in (0..self.n).rev() {
                        choice[k] += 1;
                        if choice[k] < bases[k].len() {
                            continue 'outer;
                        }
                        choice[k] = 0;
                    }
                    break;
                }
                Ok(ech.into_subspace())
            }
        }
    }

    /// `[L, …, L]`.
    pub fn derived(&self) -> Result<Subspace> {
        Ok(Subspace::span(self.dim(), self.table.values())?)
    }

    /// `[U, L, …, L]`.
    pub(crate) fn product_with_full(&self, u: &Subspace, ad: &AdjointIndex) -> Subspace {
        let mut ech = Echelon::new(self.dim());
        let mut acc = Accumulator::new(self.dim());
        for v in u.basis() {
            for terms in ad.values() {
                for (i, val) in terms {
                    let x = v.get(*i);
                    if !x.is_zero() {
                        acc.add_scaled(&x, val);
                    }
                }
                let row = acc.take();
                if !row.is_zero() && ech.insert(&row) && ech.is_full() {
                    return ech.into_subspace();
                }
            }
        }
        ech.into_subspace()
    }

    pub fn is_ideal(&self, m: &Subspace) -> Result<bool> {
        let full = self.full();
        let mut factors = vec![&full; self.n];
        factors[0] = m;
        Ok(self.bracket_product(&factors)?.is_subspace_of(m)?)
    }

    /// `[M, L, …, L] = 0`.
    pub fn is_central(&self, m: &Subspace) -> Result<bool> {
        let full = self.full();
        let mut factors = vec![&full; self.n];
        factors[0] = m;
        Ok(self.bracket_product(&factors)?.is_zero())
    }

    /// Solutions `x` of `[x, L, …, L] ⊆ target`.
    pub fn centralizer_mod(&self, target: &Subspace) -> Subspace {
        let dim = self.dim();
        let ad = self.adjoint_index();
        let mut images: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
        for (block, terms) in ad.values().enumerate() {
            for (i, val) in terms {
                let r = target.reduce(val);
                images[*i].extend(r.iter().map(|(c, x)| (block * dim + c, x.clone())));
            }
        }
        let images: Vec<SparseVec> = images.into_iter().map(SparseVec::from_entries).collect();
        kernel(&images, dim * ad.len())
    }

    /// `L/M` on the echelon complement of `M`, with the projection.
    pub fn quotient(&self, m: &Subspace) -> Result<Quotient> {
        if m.ambient_dim() != self.dim() {
            return Err(Error::ParentMismatch);
        }
        if !self.is_ideal(m)? {
            return Err(Error::Domain("subspace is not an ideal".into()));
        }
        let reps = m.complement_indices();
        let mut pos = vec![None; self.dim()];
        for (k, &c) in reps.iter().enumerate() {
            pos[c] = Some(k);
        }
        let project = |v: &SparseVec| m.reduce(v).remap(|c| pos[c]);
        let names = reps.iter().map(|&c| self.names[c].clone()).collect();
        let mut q = StructureAlgebra::new(self.n, names)?;
        for (key, v) in &self.table {
            if key.iter().all(|&k| pos[k].is_some()) {
                let qkey: Vec<usize> = key.iter().map(|&k| pos[k].unwrap()).collect();
                let val = project(v);
                if !val.is_zero() {
                    q.table.insert(qkey, val);
                }
            }
        }
        let projection = (0..self.dim()).map(|i| project(&SparseVec::unit(i))).collect();
        Ok(Quotient {
            algebra: q,
            representatives: reps,
            projection,
        })
    }

    /// Evaluates a bracket tree at the given images of the generators.
    pub fn evaluate(&self, tree: &BracketTree, generators: &[SparseVec]) -> SparseVec {
        match tree {
            BracketTree::Generator(i) => generators[*i].clone(),
            BracketTree::Bracket(ch) => {
                let vals: Vec<SparseVec> = ch.iter().map(|c| self.evaluate(c, generators)).collect();
                let refs: Vec<&SparseVec> = vals.iter().collect();
                self.bracket(&refs)
            }
        }
    }

    /// Checks the Filippov identity on all basis tuples.
    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

/// `L/M` with chosen coset representatives (basis indices of `L`) and the
/// projection `L → L/M` as images of the basis vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: StructureAlgebra,
    pub representatives: Vec<usize>,
    pub projection: Vec<SparseVec>,
}

/// Outcome of checking the Filippov identity on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub instances_checked: usize,
    pub violation: Option<Violation>,
}

/// `[[e_outer], e_inner] − Σ_k [.., [e_{outer_k}, e_inner], ..]` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
    pub residual: SparseVec,
}

fn for_each_sorted_tuple(dim: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(dim: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..dim {
            cur.push(i);
            let go = rec(dim, k, i + 1, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(dim, k, 0, &mut Vec::with_capacity(k), f);
}

/// `ad_s` is a derivation for every sorted `(n−1)`-tuple `s`; an `s` with
/// `ad_s = 0` satisfies the identity trivially.
pub fn validate(a: &StructureAlgebra) -> ValidationReport {
    let n = a.n;
    let dim = a.dim();
    let ad = a.adjoint_index();
    let mut checked = 0usize;
    let mut violation = None;
    for (s, terms) in &ad {
        let mut ad_s = vec![SparseVec::new(); dim];
        for (i, v) in terms {
            ad_s[*i] = v.clone();
        }
        for_each_sorted_tuple(dim, n, &mut |t| {
            checked += 1;
            let lhs_inner = a.bracket_basis(t);
            let mut acc = Accumulator::new(dim);
            // [[e_t], e_s] = −ad_s applied with sign: [x, e_s] is ad_s(x)
            for (i, x) in lhs_inner.iter() {
                acc.add_scaled(x, &ad_s[i]);
            }
            for k in 0..n {
                let img = &ad_s[t[k]];
                if img.is_zero() {
                    continue;
                }
                let mut args: Vec<SparseVec> = t.iter().map(|&j| SparseVec::unit(j)).collect();
                args[k] = img.clone();
                let refs: Vec<&SparseVec> = args.iter().collect();
                acc.add_scaled(&-Scalar::one(), &a.bracket(&refs));
            }
            let residual = acc.take();
            if residual.is_zero() {
                true
            } else {
                violation = Some(Violation {
                    outer: t.to_vec(),
                    inner: s.clone(),
                    residual,
                });
                false
            }
        });
        if violation.is_some() {
            break;
        }
    }
    ValidationReport {
        valid: violation.is_none(),
        instances_checked: checked,
        violation,
    }
}

/// `A(d)`: every bracket zero.
pub fn abelian(n: usize, d: usize) -> Result<StructureAlgebra> {
    StructureAlgebra::with_dim(n, d)
}

/// `H(n, m)`: basis `e_1..e_{mn}, z` with `[e_{(j−1)n+1}, …, e_{jn}] = z`.
pub fn heisenberg(n: usize, m: usize) -> Result<StructureAlgebra> {
    if m < 1 {
        return Err(Error::Domain("Heisenberg block count m must be at least 1".into()));
    }
    let mut names: Vec<String> = (1..=m * n).map(|i| format!("e{i}")).collect();
    names.push("z".into());
    let mut h = StructureAlgebra::new(n, names)?;
    let z = m * n;
    for j in 0..m {
        let args: Vec<usize> = (j * n..(j + 1) * n).collect();
        h.set_bracket(&args, SparseVec::unit(z))?;
    }
    Ok(h)
}

/// Block direct sum; brackets mixing the blocks vanish.
pub fn direct_sum(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra> {
    if a.n != b.n {
        return Err(Error::ArityMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let off = a.dim();
    let names = a.names.iter().chain(&b.names).cloned().collect();
    let mut s = StructureAlgebra::new(a.n, names)?;
    s.table = a.table.clone();
    for (k, v) in &b.table {
        s.table
            .insert(k.iter().map(|i| i + off).collect(), v.shifted(off));
    }
    Ok(s)
}

/// Subspace of `L` spanned by explicit vectors, checked against the
/// algebra's dimension.
pub fn span_in(a: &StructureAlgebra, vectors: &[SparseVec]) -> Result<Subspace> {
    Ok(Subspace::span(a.dim(), vectors.iter())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solvable() -> StructureAlgebra {
        let mut a = StructureAlgebra::with_dim(2, 3).unwrap();
        a.set_bracket(&[0, 1], SparseVec::unit(0)).unwrap();
        a
    }

    #[test]
    fn permuted_lookup_is_signed() {
        let h = heisenberg(3, 1).unwrap();
        assert_eq!(h.bracket_basis(&[0, 1, 2]), SparseVec::unit(3));
        assert_eq!(h.bracket_basis(&[1, 0, 2]), SparseVec::unit(3).negated());
        assert_eq!(h.bracket_basis(&[2, 0, 1]), SparseVec::unit(3));
        assert!(h.bracket_basis(&[0, 0, 1]).is_zero());
    }

    #[test]
    fn validation_examples() {
        assert!(abelian(3, 5).unwrap().validate().valid);
        assert!(heisenberg(2, 1).unwrap().validate().valid);
        assert!(solvable().validate().valid);
    }

    #[test]
    fn validation_catches_a_bad_table() {
        // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 breaks Jacobi
        let mut a = StructureAlgebra::with_dim(2, 3).unwrap();
        a.set_bracket(&[0, 1], SparseVec::unit(2)).unwrap();
        a.set_bracket(&[1, 2], SparseVec::unit(0)).unwrap();
        a.set_bracket(&[0, 2], SparseVec::unit(0)).unwrap();
        let r = a.validate();
        assert!(!r.valid);
        assert!(r.violation.is_some());
    }

    #[test]
    fn bracket_product_examples() {
        let h = heisenberg(2, 1).unwrap();
        let l = h.full();
        assert_eq!(h.bracket_product(&[&l, &l]).unwrap(), Subspace::coordinate(3, [2]));
        let a = abelian(2, 4).unwrap();
        let la = a.full();
        assert!(a.bracket_product(&[&la, &la]).unwrap().is_zero());
        let zero = Subspace::zero(3);
        assert!(h.bracket_product(&[&zero, &l]).unwrap().is_zero());
        let e1 = Subspace::coordinate(3, [0]);
        let e2 = Subspace::coordinate(3, [1]);
        assert_eq!(h.bracket_product(&[&e1, &e2]).unwrap().dim(), 1);
        assert!(h.bracket_product(&[&e1, &e1]).unwrap().is_zero());
    }

    #[test]
    fn quotient_of_heisenberg_by_center_is_abelian() {
        let h = heisenberg(2, 2).unwrap();
        let q = h.quotient(&Subspace::coordinate(5, [4])).unwrap();
        assert_eq!(q.algebra.dim(), 4);
        assert!(q.algebra.is_abelian());
        assert!(h.quotient(&Subspace::coordinate(5, [0])).is_err());
    }

    #[test]
    fn direct_sums() {
        let s = direct_sum(&abelian(2, 2).unwrap(), &abelian(2, 3).unwrap()).unwrap();
        let a5 = abelian(2, 5).unwrap();
        assert_eq!((s.dim(), s.table()), (a5.dim(), a5.table()));
        let t = direct_sum(&heisenberg(2, 1).unwrap(), &abelian(2, 2).unwrap()).unwrap();
        assert_eq!(t.derived().unwrap().dim(), 1);
        assert!(t.validate().valid);
        assert!(direct_sum(&abelian(2, 1).unwrap(), &abelian(3, 1).unwrap()).is_err());
    }
}
