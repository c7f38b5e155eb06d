//! Dimension bounds and identities for c-nilpotent multipliers, checked over
//! a catalog of small nilpotent algebras.
//!
//! Rows tagged with the `D` variant use the rank oracle for every graded
//! count and are the asserting rows. Rows tagged `l` use the closed-form count
//! instead and are reported only.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    abelian, direct_sum, from_json_str, heisenberg, lower_central_series, nilpotency_class,
    to_json_string, upper_central_series, StructureAlgebra,
};
use crate::count::{convention_l, CountFormulaInput};
use crate::free::{free_nilpotent, oracle_dim};
use crate::linalg::Subspace;
use crate::multiplier::{multiplier_parts, present, MultiplierParts};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "iff")]
    Iff,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Iff => "iff",
        }
    }
}

/// Which graded count fills the `l_d^n(w)` slots of a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Rank oracle `D_d^n(w)`; asserting.
    #[serde(rename = "D")]
    Oracle,
    /// Closed-form count with the low-weight convention; reported only.
    #[serde(rename = "l")]
    Formula,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Oracle => "D",
            Variant::Formula => "l",
        }
    }

    pub fn count(self, n: usize, d: usize, w: usize) -> Result<i128> {
        match self {
            Variant::Oracle => Ok(oracle_dim(n, d, w)? as i128),
            Variant::Formula => convention_l(CountFormulaInput::new(d, n, w)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub algebra: String,
    pub c: usize,
    pub ideal: Option<String>,
    pub variant: Variant,
    pub lhs: i128,
    pub rhs: i128,
    pub relation: Relation,
    pub applicable: bool,
    pub holds: bool,
    /// `rhs − lhs`.
    pub slack: i128,
    pub flags: Vec<String>,
}

impl BoundCheck {
    fn new(
        name: &str,
        algebra: &str,
        c: usize,
        ideal: Option<&str>,
        variant: Variant,
        lhs: i128,
        relation: Relation,
        rhs: i128,
    ) -> Self {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq | Relation::Iff => lhs == rhs,
        };
        Self {
            name: name.into(),
            algebra: algebra.into(),
            c,
            ideal: ideal.map(Into::into),
            variant,
            lhs,
            rhs,
            relation,
            applicable: true,
            holds,
            slack: rhs - lhs,
            flags: Vec::new(),
        }
    }

    fn inapplicable(name: &str, algebra: &str, c: usize, variant: Variant, reason: &str) -> Self {
        Self {
            name: name.into(),
            algebra: algebra.into(),
            c,
            ideal: None,
            variant,
            lhs: 0,
            rhs: 0,
            relation: Relation::Le,
            applicable: false,
            holds: true,
            slack: 0,
            flags: vec![reason.into()],
        }
    }

    fn flag(mut self, f: &str) -> Self {
        self.flags.push(f.into());
        self
    }

    /// An applicable, asserting row that does not hold.
    pub fn is_violation(&self) -> bool {
        self.applicable && !self.holds && self.variant == Variant::Oracle
    }

    /// A closed-form row that disagrees with what the oracle row shows.
    pub fn is_flagged(&self) -> bool {
        self.variant == Variant::Formula && (!self.holds || !self.applicable)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: StructureAlgebra,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, algebra: StructureAlgebra) -> Self {
        Self {
            name: name.into(),
            algebra,
        }
    }
}

/// The built-in desk-scale catalog.
pub fn default_catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for d in 1..=4 {
        out.push(CatalogEntry::new(format!("A(2;{d})"), abelian(2, d)?));
    }
    for (n, m) in [(2, 1), (2, 2), (3, 1)] {
        out.push(CatalogEntry::new(format!("H({n},{m})"), heisenberg(n, m)?));
    }
    for k in 1..=2 {
        out.push(CatalogEntry::new(
            format!("H(2,1)+A({k})"),
            direct_sum(&heisenberg(2, 1)?, &abelian(2, k)?)?,
        ));
    }
    for k in 1..=3 {
        out.push(CatalogEntry::new(
            format!("F(2,2,{k})"),
            free_nilpotent(2, 2, k)?.algebra,
        ));
    }
    out.push(CatalogEntry::new("F(3,3,2)", free_nilpotent(3, 3, 2)?.algebra));
    Ok(out)
}

/// Every `*.json` algebra file in `dir`, named by file stem, in file-name
/// order.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let io = |e: std::io::Error| Error::Parse {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(io)?;
            let algebra = from_json_str(&text).map_err(|e| match e {
                Error::Parse { path, message } => Error::Parse {
                    path: format!("{}: {path}", p.display()),
                    message,
                },
                other => other,
            })?;
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Ok(CatalogEntry::new(name, algebra))
        })
        .collect()
}

/// Multiplier dimensions memoized by algebra and `c`.
#[derive(Default)]
pub struct MultiplierCache {
    dims: HashMap<(String, usize), usize>,
}

impl MultiplierCache {
    pub fn multiplier_dim(&mut self, l: &StructureAlgebra, c: usize) -> Result<usize> {
        let key = (to_json_string(l), c);
        if let Some(&m) = self.dims.get(&key) {
            return Ok(m);
        }
        let m = multiplier_parts(present(l, c)?)?.multiplier_dim();
        self.dims.insert(key, m);
        Ok(m)
    }
}

fn pow(base: usize, exp: i64) -> i128 {
    (base as i128).pow(exp.max(0) as u32)
}

/// Structural data of one `(L, c)` used by several checkers.
struct Context<'a> {
    name: &'a str,
    l: &'a StructureAlgebra,
    c: usize,
    n: usize,
    class: usize,
    generators: usize,
    lower: Vec<Subspace>,
    zc: Subspace,
    mult: usize,
}

impl Context<'_> {
    fn gamma(&self, k: usize) -> &Subspace {
        let i = k.saturating_sub(1);
        self.lower.get(i).unwrap_or_else(|| self.lower.last().unwrap())
    }

    fn gamma_c1(&self) -> usize {
        self.gamma(self.c + 1).dim()
    }

    /// `a_i = dim γ_{i+1}(L)`.
    fn a(&self, i: usize) -> usize {
        self.gamma(i + 1).dim()
    }
}

fn with_count(
    variant: Variant,
    name: &str,
    ctx: &Context,
    f: impl FnOnce(&dyn Fn(usize, usize) -> Result<i128>) -> Result<BoundCheck>,
) -> Result<BoundCheck> {
    let n = ctx.n;
    let count = move |d: usize, w: usize| variant.count(n, d, w);
    match f(&count) {
        Err(Error::Domain(_)) if variant == Variant::Formula => Ok(BoundCheck::inapplicable(
            name,
            ctx.name,
            ctx.c,
            variant,
            "closed form undefined for these parameters",
        )),
        other => other,
    }
}

/// `l_d(c+1) ≤ dim M^(c)(L) + dim γ_{c+1}(L) ≤ l_d(c+1) + Σ a_i d^{c(n−1)−i+1}`
/// with `d = d(L)`.
fn generator_bounds(ctx: &Context, variant: Variant) -> Result<Vec<BoundCheck>> {
    let (c, d, n) = (ctx.c, ctx.generators, ctx.n);
    let mid = (ctx.mult + ctx.gamma_c1()) as i128;
    let lower = with_count(variant, "generator_lower", ctx, |count| {
        Ok(BoundCheck::new("generator_lower", ctx.name, c, None, variant, count(d, c + 1)?, Relation::Le, mid))
    })?;
    let upper = with_count(variant, "generator_upper", ctx, |count| {
        let mut clamped = false;
        let mut extra: i128 = 0;
        for i in 1..=c {
            let e = (c * (n - 1)) as i64 - i as i64 + 1;
            clamped |= e < 0;
            extra += ctx.a(i) as i128 * pow(d, e);
        }
        let row = BoundCheck::new("generator_upper", ctx.name, c, None, variant, mid, Relation::Le, count(d, c + 1)? + extra);
        Ok(if clamped { row.flag("negative exponent clamped to 0") } else { row })
    })?;
    Ok(vec![lower, upper])
}

/// `dim M^(c)(L) ≤ Σ_{k=0}^{c} l_d(m+k)` for `m ≤ c`, else `Σ_{k=1}^{m} l_d(c+k)`.
fn class_bound(ctx: &Context, variant: Variant) -> Result<BoundCheck> {
    let (c, m, d) = (ctx.c, ctx.class, ctx.generators);
    with_count(variant, "class", ctx, |count| {
        let mut rhs: i128 = 0;
        if m <= c {
            for k in 0..=c {
                rhs += count(d, (m + k).max(1))?;
            }
        } else {
            for k in 1..=m {
                rhs += count(d, c + k)?;
            }
        }
        let row = BoundCheck::new("class", ctx.name, c, None, variant, ctx.mult as i128, Relation::Le, rhs);
        Ok(if m <= c { row.flag("branch m<=c") } else { row.flag("branch m>=c+1") })
    })
}

/// `dim γ_{c+1}(L) ≤ l_{dim L/Z_c(L)}(c+1)`.
fn hypercenter_bound(ctx: &Context, variant: Variant) -> Result<BoundCheck> {
    let d = ctx.l.dim() - ctx.zc.dim();
    with_count(variant, "hypercenter", ctx, |count| {
        Ok(BoundCheck::new("hypercenter", ctx.name, ctx.c, None, variant, ctx.gamma_c1() as i128, Relation::Le, count(d, ctx.c + 1)?))
    })
}

/// `dim γ_{c+1}(K) ≤ l_d(c+1) + Σ a_i d^{c(n−1)−i+1}` for `K = L`, with `d`
/// and `a_i` taken from `K/Z_c(K)`.
fn hypercenter_corollary(
    ctx: &Context,
    variant: Variant,
    quotient: &StructureAlgebra,
    cache: &mut MultiplierCache,
) -> Result<Vec<BoundCheck>> {
    let (c, n) = (ctx.c, ctx.n);
    let lower_q = lower_central_series(quotient);
    let d = quotient.dim() - lower_q.term(1).dim();
    let lhs = ctx.gamma_c1() as i128;
    let row = with_count(variant, "hypercenter_corollary", ctx, |count| {
        let mut extra: i128 = 0;
        for i in 1..=c {
            let e = (c * (n - 1)) as i64 - i as i64 + 1;
            extra += lower_q.term(i).dim() as i128 * pow(d, e);
        }
        Ok(BoundCheck::new("hypercenter_corollary", ctx.name, c, None, variant, lhs, Relation::Le, count(d, c + 1)? + extra))
    })?;
    let mut out = vec![row];
    if variant == Variant::Oracle {
        let m_q = cache.multiplier_dim(quotient, c)? as i128;
        let g_q = lower_q.term(c).dim() as i128;
        out.push(BoundCheck::new("hypercenter_corollary_sharp", ctx.name, c, None, variant, lhs, Relation::Le, m_q + g_q));
    }
    Ok(out)
}

/// `dim M^(c)(L) + dim γ_{c+1}(L) ≤ l_{dim L}(c+1)`.
fn dim_cap_bound(ctx: &Context, variant: Variant) -> Result<BoundCheck> {
    with_count(variant, "dim_cap", ctx, |count| {
        Ok(BoundCheck::new(
            "dim_cap",
            ctx.name,
            ctx.c,
            None,
            variant,
            (ctx.mult + ctx.gamma_c1()) as i128,
            Relation::Le,
            count(ctx.l.dim(), ctx.c + 1)?,
        ))
    })
}

/// `dim M^(c)(L) ≤ l_{dim L − 1}(c+1) + n^{c(n−1)}` for `L` of maximal class
/// `c+1`: `dim Z_c = dim γ_2 = dim L − n`, unit steps in the upper series,
/// class exactly `c+1`.
fn maximal_class_bound(ctx: &Context, variant: Variant) -> Result<BoundCheck> {
    let (c, n, dim) = (ctx.c, ctx.n, ctx.l.dim());
    let upper = upper_central_series(ctx.l);
    let unit_steps = (1..=c).all(|i| upper.term(i).dim() == upper.term(i - 1).dim() + 1);
    let applies = dim >= n
        && ctx.zc.dim() == dim - n
        && ctx.gamma(2).dim() == dim - n
        && unit_steps
        && ctx.class == c + 1;
    if !applies {
        return Ok(BoundCheck::inapplicable(
            "maximal_class",
            ctx.name,
            c,
            variant,
            "not of maximal class c+1",
        ));
    }
    with_count(variant, "maximal_class", ctx, |count| {
        let rhs = count(dim - 1, c + 1)? + pow(n, (c * (n - 1)) as i64);
        Ok(BoundCheck::new("maximal_class", ctx.name, c, None, variant, ctx.mult as i128, Relation::Le, rhs)
            .flag("d read as dim L"))
    })
}

/// Ideals tried for the ideal-dependent checks, deduplicated, labeled.
fn candidate_ideals(ctx: &Context, upper_z1: &Subspace) -> Result<Vec<(String, Subspace)>> {
    let dim = ctx.l.dim();
    let mut raw: Vec<(String, Subspace)> = vec![
        ("0".into(), Subspace::zero(dim)),
        ("Z".into(), upper_z1.clone()),
        ("Z_c".into(), ctx.zc.clone()),
        ("gamma_2".into(), ctx.gamma(2).clone()),
        ("gamma_c+1".into(), ctx.gamma(ctx.c + 1).clone()),
        ("L".into(), Subspace::full(dim)),
    ];
    if dim > 0 {
        let last = Subspace::coordinate(dim, [dim - 1]);
        if ctx.l.is_ideal(&last)? {
            raw.push((format!("span({})", ctx.l.names()[dim - 1]), last));
        }
    }
    let mut out: Vec<(String, Subspace)> = Vec::new();
    for (label, s) in raw {
        match out.iter_mut().find(|(_, t)| t == &s) {
            Some((existing, _)) => *existing = format!("{existing}={label}"),
            None => out.push((label, s)),
        }
    }
    Ok(out)
}

fn ideal_checks(
    ctx: &Context,
    parts: &MultiplierParts,
    label: &str,
    m: &Subspace,
    cache: &mut MultiplierCache,
) -> Result<Vec<BoundCheck>> {
    let (c, n) = (ctx.c, ctx.n);
    let l = ctx.l;
    let name = ctx.name;
    let ideal = Some(label);
    let v = Variant::Oracle;
    let mut out = Vec::new();
    let gamma = ctx.gamma(c + 1);
    let cap = gamma.intersect(m)?.dim() as i128;
    let mult = ctx.mult as i128;
    let quotient = l.quotient(m)?.algebra;
    let m_q = cache.multiplier_dim(&quotient, c)? as i128;

    out.push(BoundCheck::new("quotient", name, c, ideal, v, m_q, Relation::Le, mult + cap));

    // γ_{c+1}(M, L, …, L)
    let full = l.full();
    let mut g = m.clone();
    for _ in 0..c {
        let mut factors = vec![&full; n];
        factors[0] = &g;
        g = l.bracket_product(&factors)?;
    }
    out.push(BoundCheck::new(
        "quotient_sharp",
        name,
        c,
        ideal,
        v,
        m_q,
        Relation::Le,
        mult + cap - g.intersect(m)?.intersect(gamma)?.dim() as i128,
    ));

    let p = &parts.presentation;
    let sbar = p.pull_back(m);
    let ge = &parts.gamma_e;
    out.push(BoundCheck::new(
        "intersection_identity",
        name,
        c,
        ideal,
        v,
        cap,
        Relation::Eq,
        ge.intersect(&sbar)?.dim() as i128 - parts.numerator.dim() as i128,
    ));

    if l.is_central(m)? {
        let ab = quotient.dim() - quotient.derived()?.dim();
        let m_m = cache.multiplier_dim(&abelian(n, m.dim())?, c)? as i128;
        let tensor = pow(ab, (c * (n - 1)) as i64) * m.dim() as i128;
        out.push(BoundCheck::new(
            "central_tensor",
            name,
            c,
            ideal,
            v,
            mult + cap,
            Relation::Le,
            m_q + m_m + tensor,
        ));
    }

    if m.is_subspace_of(&ctx.zc)? {
        let t = p.chain_from(&sbar).pop().unwrap();
        out.push(BoundCheck::new(
            "exact_sequence_identity",
            name,
            c,
            ideal,
            v,
            mult + cap,
            Relation::Eq,
            m_q + (t.dim() - parts.u.dim()) as i128,
        ));
        let inside = m.is_subspace_of(&parts.zcstar)?;
        let equal = m_q == mult + cap;
        out.push(
            BoundCheck::new("equivalence", name, c, ideal, v, inside as i128, Relation::Iff, equal as i128)
                .flag(if inside { "M in Z_c^*" } else { "M not in Z_c^*" }),
        );
    }
    Ok(out)
}

/// All checks for one algebra and one `c`.
pub fn check_algebra(
    entry: &CatalogEntry,
    c: usize,
    cache: &mut MultiplierCache,
) -> Result<Vec<BoundCheck>> {
    let l = &entry.algebra;
    let class = nilpotency_class(l).ok_or(Error::NotNilpotent)?;
    let parts = multiplier_parts(present(l, c)?)?;
    let lower = lower_central_series(l).terms;
    let upper = upper_central_series(l);
    let ctx = Context {
        name: &entry.name,
        l,
        c,
        n: l.arity(),
        class,
        generators: parts.presentation.generators(),
        lower,
        zc: upper.term(c).clone(),
        mult: parts.multiplier_dim(),
    };
    let mut out = Vec::new();
    for v in [Variant::Oracle, Variant::Formula] {
        out.extend(generator_bounds(&ctx, v)?);
        out.push(class_bound(&ctx, v)?);
        out.push(hypercenter_bound(&ctx, v)?);
        let q = l.quotient(&ctx.zc)?.algebra;
        out.extend(hypercenter_corollary(&ctx, v, &q, cache)?);
        out.push(dim_cap_bound(&ctx, v)?);
        out.push(maximal_class_bound(&ctx, v)?);
    }

    let q = parts.presentation.e.algebra.quotient(&parts.u)?.algebra;
    let gamma_q = lower_central_series(&q).term(c).dim() as i128;
    out.push(BoundCheck::new(
        "gamma_q_identity",
        &entry.name,
        c,
        None,
        Variant::Oracle,
        (ctx.mult + ctx.gamma_c1()) as i128,
        Relation::Eq,
        gamma_q,
    ));

    for (label, m) in candidate_ideals(&ctx, upper.term(1))? {
        out.extend(ideal_checks(&ctx, &parts, &label, &m, cache)?);
    }
    Ok(out)
}

/// Runs every checker over every entry and every `1 ≤ c ≤ c_max`; rows are
/// sorted by name, then algebra, `c`, ideal and variant.
pub fn run_catalog_on(entries: &[CatalogEntry], c_max: usize) -> Result<Vec<BoundCheck>> {
    let mut cache = MultiplierCache::default();
    let mut rows = Vec::new();
    for entry in entries {
        for c in 1..=c_max {
            rows.extend(check_algebra(entry, c, &mut cache)?);
        }
    }
    rows.sort_by(|a, b| {
        (&a.name, &a.algebra, a.c, &a.ideal, a.variant).cmp(&(&b.name, &b.algebra, b.c, &b.ideal, b.variant))
    });
    Ok(rows)
}

pub fn run_catalog(c_max: usize) -> Result<Vec<BoundCheck>> {
    if c_max > 3 {
        return Err(Error::ResourceGuard {
            what: "c_max (catalog runs support c ≤ 3)",
            limit: 3,
        });
    }
    run_catalog_on(&default_catalog()?, c_max)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub rows: usize,
    pub violations: usize,
    pub flagged: usize,
    pub inapplicable: usize,
}

pub fn summarize(rows: &[BoundCheck]) -> CatalogSummary {
    CatalogSummary {
        rows: rows.len(),
        violations: rows.iter().filter(|r| r.is_violation()).count(),
        flagged: rows.iter().filter(|r| r.is_flagged()).count(),
        inapplicable: rows.iter().filter(|r| !r.applicable).count(),
    }
}

pub fn report_json(rows: &[BoundCheck]) -> String {
    #[derive(Serialize)]
    struct Report<'a> {
        summary: CatalogSummary,
        checks: &'a [BoundCheck],
    }
    serde_json::to_string_pretty(&Report {
        summary: summarize(rows),
        checks: rows,
    })
    .expect("report is serializable")
}

pub fn report_tsv(rows: &[BoundCheck]) -> String {
    let mut s = String::from("name\talgebra\tc\tideal\tvariant\tlhs\trelation\trhs\tapplicable\tholds\tslack\tflags\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.name,
            r.algebra,
            r.c,
            r.ideal.as_deref().unwrap_or("-"),
            r.variant.tag(),
            r.lhs,
            r.relation.symbol(),
            r.rhs,
            r.applicable,
            r.holds,
            r.slack,
            r.flags.join("; ")
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows_for(name: &str, l: StructureAlgebra, c: usize) -> Vec<BoundCheck> {
        let mut cache = MultiplierCache::default();
        check_algebra(&CatalogEntry::new(name, l), c, &mut cache).unwrap()
    }

    fn find<'a>(rows: &'a [BoundCheck], name: &str, ideal: Option<&str>) -> &'a BoundCheck {
        rows.iter()
            .find(|r| r.name == name && r.ideal.as_deref() == ideal && r.variant == Variant::Oracle)
            .unwrap_or_else(|| panic!("no row {name} {ideal:?}"))
    }

    #[test]
    fn heisenberg_examples() {
        let rows = rows_for("H(2,1)", heisenberg(2, 1).unwrap(), 1);
        let q = find(&rows, "quotient", Some("Z=Z_c=gamma_2=gamma_c+1=span(z)"));
        assert_eq!((q.lhs, q.rhs), (1, 3));
        let t = find(&rows, "central_tensor", Some("Z=Z_c=gamma_2=gamma_c+1=span(z)"));
        assert_eq!((t.lhs, t.rhs), (3, 3));
        let lo = find(&rows, "generator_lower", None);
        let hi = find(&rows, "generator_upper", None);
        assert_eq!((lo.lhs, lo.rhs, hi.rhs), (1, 3, 3));
        let cl = find(&rows, "class", None);
        assert_eq!((cl.lhs, cl.rhs), (2, 3));
        let hc = find(&rows, "hypercenter", None);
        assert_eq!((hc.lhs, hc.rhs), (1, 1));
        let dc = find(&rows, "dim_cap", None);
        assert_eq!((dc.lhs, dc.rhs), (3, 3));
        let mc = find(&rows, "maximal_class", None);
        assert!(mc.applicable);
        assert_eq!((mc.lhs, mc.rhs), (2, 3));
        assert!(rows.iter().all(|r| !r.is_violation()), "{rows:#?}");
    }

    #[test]
    fn zero_ideal_has_zero_slack() {
        let rows = rows_for("H(2,2)", heisenberg(2, 2).unwrap(), 1);
        assert_eq!(find(&rows, "quotient", Some("0")).slack, 0);
        assert_eq!(find(&rows, "central_tensor", Some("0")).slack, 0);
        let g = find(&rows, "generator_upper", None);
        assert_eq!((g.lhs, g.rhs), (6, 10));
    }

    #[test]
    fn abelian_generator_rows_are_tight() {
        for d in 1..=3 {
            let rows = rows_for("A", abelian(2, d).unwrap(), 2);
            for name in ["generator_lower", "generator_upper"] {
                assert_eq!(find(&rows, name, None).slack, 0);
            }
        }
    }

    #[test]
    fn class_bound_for_heisenberg_c2() {
        let rows = rows_for("H(2,1)", heisenberg(2, 1).unwrap(), 2);
        let cl = find(&rows, "class", None);
        assert_eq!((cl.lhs, cl.rhs), (5, 6));
    }

    #[test]
    fn abelian_quotient_example() {
        let rows = rows_for("A(3)", abelian(2, 3).unwrap(), 1);
        let q = find(&rows, "quotient", Some("span(e3)"));
        assert_eq!((q.lhs, q.rhs), (1, 3));
    }

    #[test]
    fn central_tensor_counterexample_at_class_two() {
        let rows = rows_for("A(2)", abelian(2, 2).unwrap(), 2);
        let t = find(&rows, "central_tensor", Some("span(e2)"));
        assert_eq!((t.lhs, t.rhs, t.holds), (2, 1, false));
        let c1 = rows_for("A(2)", abelian(2, 2).unwrap(), 1);
        assert!(find(&c1, "central_tensor", Some("span(e2)")).holds);
    }

    #[test]
    fn empty_catalog_is_empty() {
        assert!(run_catalog_on(&[], 2).unwrap().is_empty());
    }

    #[test]
    fn inapplicable_maximal_class() {
        let rows = rows_for("A(2)", abelian(2, 2).unwrap(), 1);
        let mc = find(&rows, "maximal_class", None);
        assert!(!mc.applicable && mc.holds);
    }
}
