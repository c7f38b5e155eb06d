//! c-nilpotent multipliers `M^(c)(L) = (γ_{c+1}(F)∩R)/γ_{c+1}(R,F,…,F)`,
//! computed in the truncation `E = F/γ_{m+c+1}(F)` where `m` is the class
//! of `L`.
//!
//! Both the numerator and the denominator contain `γ_{m+c+1}(F)`, so
//! passing to `E` changes neither dimension.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{nilpotency_class, upper_central_series, StructureAlgebra};
use crate::count::binomial;
use crate::free::{free_nilpotent_shared, oracle_dim, FreeNilpotentAlgebra};
use crate::linalg::{apply_map, kernel, Subspace, SparseVec};
use crate::{Error, Result};

/// `E → L` sending free generators to lifts of a basis of `L/γ_2(L)`.
#[derive(Clone, Debug)]
pub struct Presentation<'a> {
    pub l: &'a StructureAlgebra,
    pub c: usize,
    pub class: usize,
    pub e: Arc<FreeNilpotentAlgebra>,
    pub lifts: Vec<SparseVec>,
    /// Image in `L` of each basis element of `E`.
    pub phi: Vec<SparseVec>,
    /// `ker phi`.
    pub rbar: Subspace,
}

impl Presentation<'_> {
    pub fn generators(&self) -> usize {
        self.lifts.len()
    }

    /// `γ_w(E)`: the layers of weight at least `w`.
    pub fn gamma_e(&self, w: usize) -> Subspace {
        Subspace::coordinate(self.e.dim(), self.e.tail_from(w.max(1)))
    }

    /// Image under `phi` of a subspace of `E`.
    pub fn push_forward(&self, s: &Subspace) -> Subspace {
        s.image(&self.phi, self.l.dim())
            .expect("phi has one image per basis element of E")
    }

    /// `phi⁻¹(M)` for a subspace `M` of `L`.
    pub fn pull_back(&self, m: &Subspace) -> Subspace {
        crate::linalg::preimage(&self.phi, m)
    }

    /// `U_1 = S`, `U_{j+1} = [U_j, E, …, E]`; returns `U_1 ..= U_{c+1}`.
    pub fn chain_from(&self, s: &Subspace) -> Vec<Subspace> {
        let ad = self.e.algebra.adjoint_index();
        let mut out = vec![s.clone()];
        for _ in 0..self.c {
            let next = self.e.algebra.product_with_full(out.last().unwrap(), &ad);
            out.push(next);
        }
        out
    }
}

/// Unit vectors at the echelon complement of `γ_2(L)`.
pub fn default_lifts(l: &StructureAlgebra) -> Result<Vec<SparseVec>> {
    let derived = l.derived()?;
    Ok(derived
        .complement_indices()
        .into_iter()
        .map(SparseVec::unit)
        .collect())
}

pub fn present(l: &StructureAlgebra, c: usize) -> Result<Presentation<'_>> {
    present_with_lifts(l, c, default_lifts(l)?, None)
}

/// Presentation with explicit generator lifts and, optionally, a truncation
/// class larger than `m + c`.
pub fn present_with_lifts(
    l: &StructureAlgebra,
    c: usize,
    lifts: Vec<SparseVec>,
    truncation: Option<usize>,
) -> Result<Presentation<'_>> {
    if c < 1 {
        return Err(Error::Domain("c must be at least 1".into()));
    }
    let class = nilpotency_class(l).ok_or(Error::NotNilpotent)?;
    let dim = l.dim();
    let derived = l.derived()?;
    if lifts.len() != dim - derived.dim() {
        return Err(Error::Domain(format!(
            "expected {} generator lifts, got {}",
            dim - derived.dim(),
            lifts.len()
        )));
    }
    let modulo = Subspace::span(dim, lifts.iter().chain(derived.basis()))?;
    if !modulo.is_full() {
        return Err(Error::Domain("lifts do not span L modulo γ_2(L)".into()));
    }
    let k = truncation.unwrap_or(class + c).max(class + c);
    let e = free_nilpotent_shared(l.arity(), lifts.len(), k)?;
    let phi: Vec<SparseVec> = e.trees.iter().map(|t| l.evaluate(t, &lifts)).collect();
    let image = Subspace::span(dim, phi.iter())?;
    if !image.is_full() {
        return Err(Error::Domain("presentation map is not surjective".into()));
    }
    let rbar = kernel(&phi, dim);
    Ok(Presentation {
        l,
        c,
        class,
        e,
        lifts,
        phi,
        rbar,
    })
}

/// `γ_{c+1}(R̄, E, …, E)`.
pub fn gamma_ideal_chain(p: &Presentation) -> Subspace {
    p.chain_from(&p.rbar).pop().unwrap()
}

/// All quantities of one `M^(c)(L)` computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierReport {
    pub n: usize,
    pub c: usize,
    pub dim_l: usize,
    pub class: usize,
    pub generators: usize,
    pub dim_e: usize,
    pub dim_rbar: usize,
    pub dim_gamma_e: usize,
    pub dim_gamma_e_cap_rbar: usize,
    pub dim_u: usize,
    pub multiplier_dim: usize,
    pub zcstar_dim: usize,
    pub capable_c: bool,
}

/// The engine's intermediate subspaces, for callers that need more than
/// dimensions.
#[derive(Clone, Debug)]
pub struct MultiplierParts<'a> {
    pub presentation: Presentation<'a>,
    pub gamma_e: Subspace,
    pub numerator: Subspace,
    pub u: Subspace,
    pub zcstar: Subspace,
}

impl MultiplierParts<'_> {
    pub fn multiplier_dim(&self) -> usize {
        self.numerator.dim() - self.u.dim()
    }

    pub fn report(&self) -> MultiplierReport {
        let p = &self.presentation;
        MultiplierReport {
            n: p.l.arity(),
            c: p.c,
            dim_l: p.l.dim(),
            class: p.class,
            generators: p.generators(),
            dim_e: p.e.dim(),
            dim_rbar: p.rbar.dim(),
            dim_gamma_e: self.gamma_e.dim(),
            dim_gamma_e_cap_rbar: self.numerator.dim(),
            dim_u: self.u.dim(),
            multiplier_dim: self.multiplier_dim(),
            zcstar_dim: self.zcstar.dim(),
            capable_c: self.zcstar.is_zero(),
        }
    }
}

pub fn multiplier_parts<'a>(p: Presentation<'a>) -> Result<MultiplierParts<'a>> {
    let gamma_e = p.gamma_e(p.c + 1);
    let numerator = gamma_e.intersect(&p.rbar)?;
    let u = gamma_ideal_chain(&p);
    if !u.is_subspace_of(&numerator)? {
        return Err(Error::Domain("γ_{c+1}(R̄,E,…,E) escaped γ_{c+1}(E)∩R̄".into()));
    }
    let zcstar = zcstar_from(&p, &u)?;
    Ok(MultiplierParts {
        presentation: p,
        gamma_e,
        numerator,
        u,
        zcstar,
    })
}

pub fn c_multiplier(l: &StructureAlgebra, c: usize) -> Result<MultiplierReport> {
    Ok(multiplier_parts(present(l, c)?)?.report())
}

/// `Q = E/U`, its `c`-th center, and the image of that center in `L`.
fn zcstar_from(p: &Presentation, u: &Subspace) -> Result<Subspace> {
    let q = p.e.algebra.quotient(u)?;
    let zc = upper_central_series(&q.algebra).term(p.c).clone();
    let reps_phi: Vec<SparseVec> = q.representatives.iter().map(|&r| p.phi[r].clone()).collect();
    let images: Vec<SparseVec> = zc
        .basis()
        .iter()
        .map(|v| apply_map(&reps_phi, v, p.l.dim()))
        .collect();
    Ok(Subspace::span(p.l.dim(), images.iter())?)
}

/// `Z_c^*(L)` together with the c-capability flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZcStar {
    pub subspace: Subspace,
    pub capable: bool,
}

pub fn z_c_star(l: &StructureAlgebra, c: usize) -> Result<ZcStar> {
    let p = present(l, c)?;
    let u = gamma_ideal_chain(&p);
    let subspace = zcstar_from(&p, &u)?;
    Ok(ZcStar {
        capable: subspace.is_zero(),
        subspace,
    })
}

/// Recomputes the multiplier in a truncation one class deeper and compares.
pub fn truncation_check(l: &StructureAlgebra, c: usize) -> Result<bool> {
    let base = multiplier_parts(present(l, c)?)?;
    let class = base.presentation.class;
    let deeper = multiplier_parts(present_with_lifts(
        l,
        c,
        default_lifts(l)?,
        Some(class + c + 1),
    )?)?;
    Ok(base.multiplier_dim() == deeper.multiplier_dim()
        && base.zcstar == deeper.zcstar)
}

/// Closed form for Heisenberg multipliers: `n` or `C(mn, n) − 1` when
/// `c = 1`, `D_n^n(c+1) + D_n^n(c+2)` when `m = 1`, else `D_{mn}^n(c+1)`.
pub fn closed_form_heisenberg(n: usize, m: usize, c: usize) -> Result<i128> {
    if n < 2 || m < 1 || c < 1 {
        return Err(Error::Domain("need n ≥ 2, m ≥ 1, c ≥ 1".into()));
    }
    if c == 1 {
        return if m == 1 {
            Ok(n as i128)
        } else {
            Ok(binomial((m * n) as i128, n as i128)? - 1)
        };
    }
    if m == 1 {
        Ok((oracle_dim(n, n, c + 1)? + oracle_dim(n, n, c + 2)?) as i128)
    } else {
        Ok(oracle_dim(n, m * n, c + 1)? as i128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg};
    use crate::free::free_nilpotent;

    #[test]
    fn abelian_presentation() {
        let a = abelian(2, 3).unwrap();
        let p = present(&a, 1).unwrap();
        assert_eq!(p.rbar, p.gamma_e(2));
    }

    #[test]
    fn heisenberg_presentation() {
        let h = heisenberg(2, 1).unwrap();
        let p = present(&h, 1).unwrap();
        assert_eq!(p.e.dim(), 5);
        assert_eq!(p.rbar.dim(), 2);
        assert_eq!(p.rbar, p.gamma_e(3));
        assert!(gamma_ideal_chain(&p).is_zero());
    }

    #[test]
    fn phi_is_identity_on_free_class_two() {
        let f = free_nilpotent(2, 2, 2).unwrap();
        let p = present(&f.algebra, 1).unwrap();
        for i in 0..3 {
            assert_eq!(p.phi[i], SparseVec::unit(i));
        }
    }

    #[test]
    fn small_multipliers() {
        assert_eq!(c_multiplier(&abelian(2, 3).unwrap(), 1).unwrap().multiplier_dim, 3);
        assert_eq!(c_multiplier(&heisenberg(2, 1).unwrap(), 1).unwrap().multiplier_dim, 2);
        assert_eq!(c_multiplier(&heisenberg(2, 1).unwrap(), 2).unwrap().multiplier_dim, 5);
    }

    #[test]
    fn capability() {
        assert!(z_c_star(&heisenberg(2, 1).unwrap(), 1).unwrap().capable);
        let h = heisenberg(2, 2).unwrap();
        let z = z_c_star(&h, 1).unwrap();
        assert_eq!(z.subspace, h.derived().unwrap());
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let mut a = StructureAlgebra::with_dim(2, 2).unwrap();
        a.set_bracket(&[0, 1], SparseVec::unit(0)).unwrap();
        assert!(matches!(c_multiplier(&a, 1), Err(Error::NotNilpotent)));
    }

    #[test]
    fn deeper_truncation_agrees() {
        assert!(truncation_check(&heisenberg(2, 1).unwrap(), 1).unwrap());
        assert!(truncation_check(&abelian(2, 2).unwrap(), 2).unwrap());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_heisenberg(2, 1, 1).unwrap(), 2);
        assert_eq!(closed_form_heisenberg(2, 2, 1).unwrap(), 5);
        assert_eq!(closed_form_heisenberg(2, 1, 2).unwrap(), 5);
    }
}
