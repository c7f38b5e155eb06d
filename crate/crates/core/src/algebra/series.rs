use super::StructureAlgebra;
use crate::linalg::Subspace;
use crate::{Error, Result};

/// A central series up to its first repeated term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSeries {
    /// Distinct terms in order; the last one is the stable value.
    pub terms: Vec<Subspace>,
}

impl CentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn stable(&self) -> &Subspace {
        self.terms.last().expect("series has at least one term")
    }

    /// Term `k` with the stable tail repeating past the stored terms;
    /// `k = 0` is the first stored term.
    pub fn term(&self, k: usize) -> &Subspace {
        self.terms.get(k).unwrap_or_else(|| self.stable())
    }
}

/// `γ_1 = L`, `γ_{k+1} = [γ_k, L, …, L]`.
pub fn lower_central_series(a: &StructureAlgebra) -> CentralSeries {
    let ad = a.adjoint_index();
    let mut terms = vec![a.full()];
    loop {
        let next = a.product_with_full(terms.last().unwrap(), &ad);
        if &next == terms.last().unwrap() {
            return CentralSeries { terms };
        }
        terms.push(next);
    }
}

/// `Z_0 = 0`, `Z_{k+1} = {x : [x, L, …, L] ⊆ Z_k}`.
pub fn upper_central_series(a: &StructureAlgebra) -> CentralSeries {
    let mut terms = vec![Subspace::zero(a.dim())];
    loop {
        let next = a.centralizer_mod(terms.last().unwrap());
        if &next == terms.last().unwrap() {
            return CentralSeries { terms };
        }
        terms.push(next);
    }
}

/// Class `s` with `γ_{s+1} = 0 ≠ γ_s`, or `None` when the lower series
/// stabilizes above zero.
pub fn nilpotency_class(a: &StructureAlgebra) -> Option<usize> {
    let lower = lower_central_series(a);
    lower.stable().is_zero().then(|| lower.terms.len() - 1)
}

/// `d(L) = dim L − dim γ_2(L)` for nilpotent `L`.
pub fn minimal_generators(a: &StructureAlgebra) -> Result<usize> {
    if nilpotency_class(a).is_none() {
        return Err(Error::NotNilpotent);
    }
    Ok(a.dim() - a.derived()?.dim())
}
