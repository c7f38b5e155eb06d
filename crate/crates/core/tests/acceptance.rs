use std::panic::{catch_unwind, AssertUnwindSafe};

use nlie_core::algebra::{abelian, heisenberg, lower_central_series};
use nlie_core::bounds::{report_json, report_tsv, run_catalog, Relation, Variant};
use nlie_core::count::{compare_table, formula_l, CountFormulaInput};
use nlie_core::free::oracle_dim;
use nlie_core::multiplier::{c_multiplier, z_c_star};

fn mobius(mut k: u64) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if k > 1 {
        mu = -mu;
    }
    mu
}

fn witt(d: u64, w: u64) -> u64 {
    let s: i64 = (1..=w)
        .filter(|k| w % k == 0)
        .map(|k| mobius(k) * (d as i64).pow((w / k) as u32))
        .sum();
    (s / w as i64) as u64
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn mult(l: &nlie_core::algebra::StructureAlgebra, c: usize) -> usize {
    c_multiplier(l, c).unwrap().multiplier_dim
}

fn oracle_matches_witt_and_binomial() {
    for d in 2..=4 {
        for w in 1..=5 {
            assert_eq!(oracle_dim(2, d, w).unwrap() as u64, witt(d as u64, w as u64), "d={d} w={w}");
        }
    }
    for n in 2..=4 {
        for d in 1..=6 {
            assert_eq!(oracle_dim(n, d, 2).unwrap() as u64, choose(d as u64, n as u64), "n={n} d={d}");
        }
    }
}

fn formula_fixtures() {
    let l = |d, n, w| formula_l(CountFormulaInput::new(d, n, w)).unwrap();
    assert_eq!((l(2, 2, 3), l(3, 2, 3), l(4, 2, 3)), (2, 9, 24));
    let rows = compare_table(&[CountFormulaInput::new(3, 2, 3)]).unwrap();
    assert!(!rows[0].agree);
}

fn abelian_multipliers() {
    for d in 1..=3 {
        for c in 1..=3 {
            assert_eq!(mult(&abelian(2, d).unwrap(), c), oracle_dim(2, d, c + 1).unwrap(), "d={d} c={c}");
        }
    }
    for c in 1..=2 {
        assert_eq!(mult(&abelian(3, 3).unwrap(), c), oracle_dim(3, 3, c + 1).unwrap(), "n=3 c={c}");
    }
    for d in 1..=4 {
        assert_eq!(mult(&abelian(2, d).unwrap(), 1), d * (d - 1) / 2);
    }
}

fn heisenberg_schur() {
    assert_eq!(mult(&heisenberg(2, 1).unwrap(), 1), 2);
    assert_eq!(mult(&heisenberg(2, 2).unwrap(), 1), 5);
    assert_eq!(mult(&heisenberg(3, 1).unwrap(), 1), 3);
    assert_eq!(choose(4, 2) - 1, 5);
}

fn heisenberg_c2() {
    let h21 = mult(&heisenberg(2, 1).unwrap(), 2);
    assert_eq!(h21, oracle_dim(2, 2, 3).unwrap() + oracle_dim(2, 2, 4).unwrap());
    assert_eq!(h21, 5);
    let h22 = mult(&heisenberg(2, 2).unwrap(), 2);
    assert_eq!(h22, oracle_dim(2, 4, 3).unwrap());
    assert_eq!(h22, 20);
}

fn capability() {
    let z = z_c_star(&heisenberg(2, 1).unwrap(), 1).unwrap();
    assert!(z.subspace.is_zero() && z.capable);
    let h = heisenberg(2, 2).unwrap();
    let z = z_c_star(&h, 1).unwrap();
    assert_eq!(z.subspace, lower_central_series(&h).term(1).clone());
    assert_eq!(z.subspace.dim(), 1);
}

fn bound_suite() {
    let rows = run_catalog(2).unwrap();
    let bad: Vec<_> = rows.iter().filter(|r| r.is_violation()).collect();
    assert!(bad.is_empty(), "violations: {bad:#?}");
    for family in ["quotient", "central_tensor", "generator_lower", "generator_upper", "class", "hypercenter", "dim_cap", "maximal_class"] {
        assert!(rows.iter().any(|r| r.name == family && r.applicable), "{family} never applied");
    }
    let tight: Vec<_> = rows
        .iter()
        .filter(|r| r.algebra.starts_with("A(") && r.name.starts_with("generator_") && r.variant == Variant::Oracle)
        .collect();
    assert!(!tight.is_empty());
    assert!(tight.iter().all(|r| r.slack == 0), "{tight:#?}");
}

fn equivalence_for_heisenberg() {
    let l = heisenberg(2, 2).unwrap();
    let gamma2 = lower_central_series(&l).term(1).clone();
    let q = l.quotient(&gamma2).unwrap().algebra;
    for c in 2..=3 {
        let zc = z_c_star(&l, c).unwrap();
        assert!(gamma2.is_subspace_of(&zc.subspace).unwrap());
        assert!(lower_central_series(&l).term(c).is_zero());
        assert_eq!(mult(&q, c), mult(&l, c), "c={c}");
    }
    let rows = run_catalog(2).unwrap();
    let eq = rows
        .iter()
        .find(|r| r.name == "equivalence" && r.algebra == "H(2,2)" && r.c == 2 && r.ideal.as_deref().is_some_and(|i| i.split('=').any(|p| p == "gamma_2")))
        .expect("equivalence row");
    assert_eq!((eq.relation, eq.lhs, eq.rhs), (Relation::Iff, 1, 1));
}

fn determinism() {
    let a = run_catalog(2).unwrap();
    let b = run_catalog(2).unwrap();
    assert_eq!(report_json(&a), report_json(&b));
    assert_eq!(report_tsv(&a), report_tsv(&b));
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn()); 9] = [
        ("oracle matches Witt numbers and binomials", oracle_matches_witt_and_binomial),
        ("closed-form count fixtures and disagreement flag", formula_fixtures),
        ("abelian c-multipliers", abelian_multipliers),
        ("Heisenberg Schur multipliers", heisenberg_schur),
        ("Heisenberg 2-multipliers", heisenberg_c2),
        ("capability of Heisenberg algebras", capability),
        ("bound suite has no oracle-variant violations", bound_suite),
        ("equivalence condition for H(2,2) modulo its derived ideal", equivalence_for_heisenberg),
        ("deterministic reports", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (label, f)) in criteria.iter().enumerate() {
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        println!("criterion {}: {} - {label}", i + 1, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
