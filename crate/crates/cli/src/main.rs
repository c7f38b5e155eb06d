use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use nlie_core::algebra::{
    abelian, from_json_str, heisenberg, lower_central_series, to_json_string, to_json_value,
    upper_central_series, StructureAlgebra,
};
use nlie_core::bounds::{self, load_catalog, report_json, report_tsv, run_catalog_on};
use nlie_core::count::{compare_table, convention_l, grid, CountFormulaInput};
use nlie_core::free::{self, free_nilpotent, graded_component};
use nlie_core::linalg::SparseVec;
use nlie_core::multiplier::{c_multiplier, closed_form_heisenberg, z_c_star};
use nlie_core::Error;

const EXIT_INPUT: u8 = 2;
const EXIT_FAILED_CHECK: u8 = 3;

#[derive(Parser)]
#[command(name = "nlie", version, about = "Exact computations with nilpotent n-Lie algebras and their c-nilpotent multipliers")]
struct Cli {
    /// Print TSV instead of JSON.
    #[arg(long, global = true)]
    tsv: bool,
    /// Largest number of canonical trees built for any free component.
    #[arg(long, global = true, default_value_t = free::DEFAULT_MAX_TREES)]
    max_trees: usize,
    /// Directory for persisted graded components.
    #[arg(long, global = true, env = "NLIE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count of basic commutators of weight w: closed form l_d^n(w) and rank oracle D_d^n(w).
    #[command(group(ArgGroup::new("which").args(["formula", "oracle", "both"])))]
    Count {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        w: usize,
        #[arg(long)]
        formula: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        both: bool,
    },
    /// Table of l_d^n(w) against D_d^n(w) for 1 ≤ d ≤ d-max, 1 ≤ w ≤ w-max.
    Table {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        d_max: usize,
        #[arg(long)]
        w_max: usize,
    },
    /// Graded component of weight w of the free n-Lie algebra on d generators, dim γ_w(F)/γ_{w+1}(F).
    Graded {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        w: usize,
        /// List the basis trees.
        #[arg(long)]
        basis: bool,
    },
    /// Free nilpotent n-Lie algebra F/γ_{k+1}(F) of class k on d generators.
    FreeNilpotent {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        /// Write the structure constants to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Lower central series γ_k(L) and upper central series Z_k(L).
    #[command(group(ArgGroup::new("side").args(["upper", "lower"])))]
    Series {
        /// Algebra file, or abelian(n,d), heisenberg(n,m), free(n,d,k).
        algebra: String,
        #[arg(long)]
        upper: bool,
        #[arg(long)]
        lower: bool,
    },
    /// c-nilpotent multiplier M^(c)(L) = (γ_{c+1}(F)∩R)/γ_{c+1}(R,F,…,F).
    Multiplier {
        algebra: String,
        #[arg(short, default_value_t = 1)]
        c: usize,
    },
    /// Z_c^*(L), the image of the c-th center of F/γ_{c+1}(R,F,…,F); L is c-capable iff it is 0.
    Zcstar {
        algebra: String,
        #[arg(short, default_value_t = 1)]
        c: usize,
    },
    /// Heisenberg n-Lie algebra H(n,m) with dim M^(c)(H(n,m)) from the engine and the closed form.
    Heisenberg {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(short, default_value_t = 1)]
        c: usize,
        /// Print the structure constants instead.
        #[arg(long)]
        emit: bool,
    },
    /// Dimension bounds on M^(c)(L) checked over the algebra catalog; exits 3 on a failed oracle row.
    Bounds {
        #[arg(long, default_value_t = 2)]
        c_max: usize,
        /// Directory of algebra files to use instead of the built-in catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Filippov identity on all basis tuples; exits 3 when it fails.
    Validate { algebra: String },
}

struct Output {
    json: Value,
    tsv: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, tsv: String) -> Self {
        Self {
            json,
            tsv,
            failed: false,
        }
    }
}

fn parse_args(s: &str, name: &str, arity: usize) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    let v: Vec<usize> = inner.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
    (v.len() == arity).then_some(v)
}

fn load_algebra(arg: &str) -> Result<StructureAlgebra, Error> {
    if let Some(v) = parse_args(arg, "abelian", 2) {
        return abelian(v[0], v[1]);
    }
    if let Some(v) = parse_args(arg, "heisenberg", 2) {
        return heisenberg(v[0], v[1]);
    }
    if let Some(v) = parse_args(arg, "free", 3) {
        return Ok(free_nilpotent(v[0], v[1], v[2])?.algebra);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Parse {
        path: arg.into(),
        message: e.to_string(),
    })?;
    from_json_str(&text).map_err(|e| match e {
        Error::Parse { path, message } => Error::Parse {
            path: format!("{arg}: {path}"),
            message,
        },
        other => other,
    })
}

fn render(v: &SparseVec, dim: usize) -> Vec<String> {
    v.to_dense(dim).iter().map(ToString::to_string).collect()
}

fn tsv_pairs(pairs: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        let _ = writeln!(s, "{k}\t{v}");
    }
    s
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn run(cmd: Command) -> Result<Output, Error> {
    Ok(match cmd {
        Command::Count { n, d, w, formula, oracle, .. } => {
            let (f, o) = match (formula, oracle) {
                (true, _) => (true, false),
                (_, true) => (false, true),
                _ => (true, true),
            };
            let mut obj = serde_json::Map::new();
            let mut pairs = Vec::new();
            let fv = f.then(|| convention_l(CountFormulaInput::new(d, n, w))).transpose()?;
            let ov = o.then(|| free::oracle_dim(n, d, w)).transpose()?;
            if let Some(x) = fv {
                obj.insert("formula".into(), json!(x));
                pairs.push(("formula", x.to_string()));
            }
            if let Some(x) = ov {
                obj.insert("oracle".into(), json!(x));
                pairs.push(("oracle", x.to_string()));
            }
            if let (Some(a), Some(b)) = (fv, ov) {
                obj.insert("agree".into(), json!(a == b as i128));
                pairs.push(("agree", (a == b as i128).to_string()));
            }
            Output::ok(Value::Object(obj), tsv_pairs(&pairs))
        }
        Command::Table { n, d_max, w_max } => {
            let rows = compare_table(&grid(n, d_max, w_max))?;
            let mut tsv = String::from("d\tn\tw\tformula\toracle\tagree\tconvention\n");
            for r in &rows {
                let _ = writeln!(tsv, "{}\t{}\t{}\t{}\t{}\t{}\t{}", r.d, r.n, r.w, r.formula_l, r.oracle_d, r.agree, r.convention);
            }
            Output::ok(json!(rows), tsv)
        }
        Command::Graded { n, d, w, basis } => {
            let comp = graded_component(n, d, w)?;
            let mut json = json!({
                "n": n, "d": d, "w": w,
                "dim": comp.dim(),
                "canonical_trees": comp.num_trees(),
                "relation_rank": comp.relation_rank(),
            });
            let mut pairs = vec![
                ("n", n.to_string()),
                ("d", d.to_string()),
                ("w", w.to_string()),
                ("dim", comp.dim().to_string()),
                ("canonical_trees", comp.num_trees().to_string()),
                ("relation_rank", comp.relation_rank().to_string()),
            ];
            if basis {
                let labels = comp.basis_labels();
                json["basis"] = json!(labels);
                pairs.push(("basis", labels.join(" ")));
            }
            Output::ok(json, tsv_pairs(&pairs))
        }
        Command::FreeNilpotent { n, d, k, emit } => {
            let f = free_nilpotent(n, d, k)?;
            if let Some(path) = emit {
                write_file(&path, &to_json_string(&f.algebra))?;
            }
            let layers: Vec<usize> = f.layers.iter().map(|c| c.dim()).collect();
            let tsv = tsv_pairs(&[
                ("dim", f.dim().to_string()),
                ("layer_dims", layers.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
            ]);
            Output::ok(json!({"n": n, "d": d, "k": k, "dim": f.dim(), "layer_dims": layers}), tsv)
        }
        Command::Series { algebra, upper, lower } => {
            let l = load_algebra(&algebra)?;
            let (u, lo) = (upper || !lower, lower || !upper);
            let mut obj = serde_json::Map::new();
            let mut pairs = Vec::new();
            let dims_str = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            if lo {
                let dims = lower_central_series(&l).dims();
                pairs.push(("lower", dims_str(&dims)));
                obj.insert("lower".into(), json!(dims));
            }
            if u {
                let dims = upper_central_series(&l).dims();
                pairs.push(("upper", dims_str(&dims)));
                obj.insert("upper".into(), json!(dims));
            }
            Output::ok(Value::Object(obj), tsv_pairs(&pairs))
        }
        Command::Multiplier { algebra, c } => {
            let r = c_multiplier(&load_algebra(&algebra)?, c)?;
            let json = serde_json::to_value(&r).expect("report serializes");
            let pairs: Vec<(&str, String)> = json
                .as_object()
                .unwrap()
                .iter()
                .map(|(k, v)| (k.as_str(), v.to_string()))
                .collect();
            let tsv = tsv_pairs(&pairs);
            Output::ok(json, tsv)
        }
        Command::Zcstar { algebra, c } => {
            let l = load_algebra(&algebra)?;
            let z = z_c_star(&l, c)?;
            let basis: Vec<Vec<String>> = z.subspace.basis().iter().map(|v| render(v, l.dim())).collect();
            let tsv = tsv_pairs(&[
                ("dim", z.subspace.dim().to_string()),
                ("capable", z.capable.to_string()),
                ("basis", basis.iter().map(|v| v.join(",")).collect::<Vec<_>>().join(" ")),
            ]);
            Output::ok(json!({"c": c, "dim": z.subspace.dim(), "capable": z.capable, "basis": basis}), tsv)
        }
        Command::Heisenberg { n, m, c, emit } => {
            let h = heisenberg(n, m)?;
            if emit {
                return Ok(Output::ok(to_json_value(&h), to_json_string(&h)));
            }
            let engine = c_multiplier(&h, c)?.multiplier_dim;
            let closed = closed_form_heisenberg(n, m, c)?;
            let agree = closed == engine as i128;
            let tsv = tsv_pairs(&[
                ("dim", h.dim().to_string()),
                ("multiplier_dim", engine.to_string()),
                ("closed_form", closed.to_string()),
                ("agree", agree.to_string()),
            ]);
            Output::ok(
                json!({"n": n, "m": m, "c": c, "dim": h.dim(), "multiplier_dim": engine, "closed_form": closed, "agree": agree}),
                tsv,
            )
        }
        Command::Bounds { c_max, catalog } => {
            if c_max > 3 {
                return Err(Error::ResourceGuard {
                    what: "c_max",
                    limit: 3,
                });
            }
            let entries = match catalog {
                Some(dir) => load_catalog(&dir)?,
                None => bounds::default_catalog()?,
            };
            let rows = run_catalog_on(&entries, c_max)?;
            let json: Value = serde_json::from_str(&report_json(&rows)).expect("report is JSON");
            Output {
                json,
                tsv: report_tsv(&rows),
                failed: rows.iter().any(|r| r.is_violation()),
            }
        }
        Command::Validate { algebra } => {
            let l = load_algebra(&algebra)?;
            let r = l.validate();
            let violation = r.violation.as_ref().map(|v| {
                json!({
                    "outer": v.outer.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "inner": v.inner.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "residual": render(&v.residual, l.dim()),
                })
            });
            let tsv = tsv_pairs(&[
                ("valid", r.valid.to_string()),
                ("instances_checked", r.instances_checked.to_string()),
            ]);
            Output {
                json: json!({"valid": r.valid, "instances_checked": r.instances_checked, "violation": violation}),
                tsv,
                failed: !r.valid,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    free::set_max_trees(cli.max_trees);
    free::set_cache_dir(cli.cache_dir.clone());
    match run(cli.command) {
        Ok(out) => {
            if cli.tsv {
                print!("{}", out.tsv);
            } else {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("output serializes"));
            }
            if out.failed {
                ExitCode::from(EXIT_FAILED_CHECK)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
