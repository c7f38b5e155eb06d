//! The closed-form count `l_d^n(w)` of basic commutators, evaluated exactly
//! as printed, and its comparison with the rank oracle `D_d^n(w)`.

use serde::{Deserialize, Serialize};

use crate::free::oracle_dim;
use crate::{Error, Result};

/// Largest grid `compare_table` accepts.
pub const MAX_GRID: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountFormulaInput {
    pub d: usize,
    pub n: usize,
    pub w: usize,
}

impl CountFormulaInput {
    pub fn new(d: usize, n: usize, w: usize) -> Self {
        Self { d, n, w }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReportRow {
    pub d: usize,
    pub n: usize,
    pub w: usize,
    pub formula_l: i128,
    pub oracle_d: i128,
    pub agree: bool,
    /// `w ≤ 2`, where the value comes from the convention rather than the
    /// closed form.
    pub convention: bool,
}

fn overflow() -> Error {
    Error::Domain("integer overflow in count formula".into())
}

/// `C(n, k)` in `i128`, zero when `k > n` or either is negative.
pub fn binomial(n: i128, k: i128) -> Result<i128> {
    if k < 0 || n < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i).ok_or_else(overflow)? / (i + 1);
    }
    Ok(acc)
}

fn check_input(x: &CountFormulaInput) -> Result<()> {
    if x.d < 1 || x.n < 2 || x.w < 1 {
        return Err(Error::Domain(format!(
            "need d ≥ 1, n ≥ 2, w ≥ 1 (got d={}, n={}, w={})",
            x.d, x.n, x.w
        )));
    }
    Ok(())
}

/// `Σ_{j=1}^{α_0} β_{j*} · Σ_{i=2}^{w−1} α_i · C(C(d,n−1), w−i)` with
/// `α_0 = C(d−1,n−1)`, `α_i = C(w−3,i−2)`, `j* = C(k−1,n−1)+1` for the `k`
/// in `n−1..=d−1` whose block `C(k−1,n−1)+1 ..= C(k,n−1)` contains `j`, and
/// `β_{j*} = d−n−j*+2`.
pub fn formula_l(x: CountFormulaInput) -> Result<i128> {
    check_input(&x)?;
    if x.w < 3 {
        return Err(Error::Domain(format!(
            "the closed form needs w ≥ 3 (got w={}); use convention_l",
            x.w
        )));
    }
    let (d, n, w) = (x.d as i128, x.n as i128, x.w as i128);
    let alpha0 = binomial(d - 1, n - 1)?;
    let top = binomial(d, n - 1)?;
    let mut inner: i128 = 0;
    for i in 2..w {
        let term = binomial(w - 3, i - 2)?
            .checked_mul(binomial(top, w - i)?)
            .ok_or_else(overflow)?;
        inner = inner.checked_add(term).ok_or_else(overflow)?;
    }
    let mut beta_sum: i128 = 0;
    for j in 1..=alpha0 {
        let mut j_star = None;
        for k in (n - 1)..=(d - 1) {
            let lo = binomial(k - 1, n - 1)? + 1;
            let hi = binomial(k, n - 1)?;
            if lo <= j && j <= hi {
                j_star = Some(lo);
                break;
            }
        }
        let j_star = j_star.ok_or_else(|| {
            Error::Domain(format!("index j={j} is not covered by any k in {}..={}", n - 1, d - 1))
        })?;
        beta_sum = beta_sum
            .checked_add(d - n - j_star + 2)
            .ok_or_else(overflow)?;
    }
    beta_sum.checked_mul(inner).ok_or_else(overflow)
}

/// `d` at weight 1, `C(d,n)` at weight 2, the closed form from weight 3.
pub fn convention_l(x: CountFormulaInput) -> Result<i128> {
    check_input(&x)?;
    match x.w {
        1 => Ok(x.d as i128),
        2 => binomial(x.d as i128, x.n as i128),
        _ => formula_l(x),
    }
}

/// `Σ_{j=0}^{c−1} l_d^n(i+j)`, or the same sum of `D_d^n(i+j)`.
pub fn layer_sum(n: usize, d: usize, i: usize, c: usize, use_oracle: bool) -> Result<i128> {
    if i < 1 || c < 1 {
        return Err(Error::Domain("layer_sum needs i ≥ 1 and c ≥ 1".into()));
    }
    let mut total: i128 = 0;
    for j in 0..c {
        let v = if use_oracle {
            oracle_dim(n, d, i + j)? as i128
        } else {
            convention_l(CountFormulaInput::new(d, n, i + j))?
        };
        total = total.checked_add(v).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// One row per input with both counts side by side. Never asserts.
pub fn compare_table(inputs: &[CountFormulaInput]) -> Result<Vec<CountReportRow>> {
    if inputs.len() > MAX_GRID {
        return Err(Error::ResourceGuard {
            what: "grid rows",
            limit: MAX_GRID,
        });
    }
    inputs
        .iter()
        .map(|&x| {
            let formula = convention_l(x)?;
            let oracle = oracle_dim(x.n, x.d, x.w)? as i128;
            Ok(CountReportRow {
                d: x.d,
                n: x.n,
                w: x.w,
                formula_l: formula,
                oracle_d: oracle,
                agree: formula == oracle,
                convention: x.w < 3,
            })
        })
        .collect()
}

/// Inputs `(d, n, w)` for `d ≤ d_max`, `w ≤ w_max`, ordered by `d` then `w`.
pub fn grid(n: usize, d_max: usize, w_max: usize) -> Vec<CountFormulaInput> {
    (1..=d_max)
        .flat_map(|d| (1..=w_max).map(move |w| CountFormulaInput::new(d, n, w)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(d: usize, n: usize, w: usize) -> i128 {
        formula_l(CountFormulaInput::new(d, n, w)).unwrap()
    }

    #[test]
    fn hand_fixtures() {
        assert_eq!(l(2, 2, 3), 2);
        assert_eq!(l(3, 2, 3), 9);
        assert_eq!(l(4, 2, 3), 24);
    }

    #[test]
    fn low_weight_is_a_domain_error() {
        assert!(matches!(
            formula_l(CountFormulaInput::new(3, 2, 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn convention_values() {
        assert_eq!(convention_l(CountFormulaInput::new(5, 2, 2)).unwrap(), 10);
        assert_eq!(convention_l(CountFormulaInput::new(4, 3, 2)).unwrap(), 4);
        assert_eq!(convention_l(CountFormulaInput::new(3, 2, 1)).unwrap(), 3);
    }

    #[test]
    fn layer_sums() {
        assert_eq!(layer_sum(2, 2, 1, 2, true).unwrap(), 3);
        assert_eq!(layer_sum(2, 2, 3, 2, true).unwrap(), 5);
        assert_eq!(layer_sum(2, 2, 1, 1, true).unwrap(), 2);
        assert_eq!(layer_sum(2, 2, 1, 1, false).unwrap(), 2);
    }

    #[test]
    fn comparison_rows() {
        let rows = compare_table(&[
            CountFormulaInput::new(2, 2, 3),
            CountFormulaInput::new(3, 2, 3),
        ])
        .unwrap();
        assert!(rows[0].agree);
        assert_eq!((rows[1].formula_l, rows[1].oracle_d, rows[1].agree), (9, 8, false));
    }

    #[test]
    fn weight_two_always_agrees() {
        for n in 2..=4 {
            let rows = compare_table(&grid(n, 6, 2)).unwrap();
            assert!(rows.iter().filter(|r| r.w == 2).all(|r| r.agree));
        }
    }

    #[test]
    fn oversized_grid_is_refused() {
        let big = vec![CountFormulaInput::new(2, 2, 1); MAX_GRID + 1];
        assert!(matches!(compare_table(&big), Err(Error::ResourceGuard { .. })));
    }
}
