//! Thin command-line front end; all logic lives in the library.
//!
//! Exit status is nonzero iff a certification fails.

use clap::{Parser, Subcommand, ValueEnum};
use pathtsp::christofides::{best_of_many, hoogeveen, round_half_integral};
use pathtsp::corpus::{
    build_good_spanning_tree, builtin_hb, gap_cycle, hb_paper_dual, random_metric_instance,
    run_suite, standard_corpus, unit_path, verify_counterexample_hb,
};
use pathtsp::decomp::{decompose, is_in_some_decomposition, SpanningTree};
use pathtsp::instance::{
    parse_edge_vector, parse_instance, serialize_edge_vector, serialize_instance, EdgeVector,
    Instance,
};
use pathtsp::lp::{parse_dual, serialize_dual, solve_lp1, solve_lp4, verify_dual_certificate};
use pathtsp::narrow::{certificate_report, narrow_cuts, UnifiedParams};
use pathtsp::rational::{format_rational, parse_rational, to_f64, Rational};
use pathtsp::transform::{
    brute_opt_int_lp1, brute_opt_int_lp4, check_ratio_theorem, lp1_to_lp4, lp4_to_lp1,
    solve_lp4_via_equivalence,
};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pathtsp", about = "Exact LP machinery for the metric s-t path TSP", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the path Held-Karp relaxation on the metric completion.
    SolveLp1 { instance: PathBuf },
    /// Solve the partition relaxation on the base graph.
    SolveLp4 {
        instance: PathBuf,
        /// Use the metric-completion equivalence instead of direct enumeration.
        #[arg(long)]
        equivalence: bool,
    },
    /// Verify a dual certificate against a primal vector.
    VerifyDual { instance: PathBuf, vector: PathBuf, dual: PathBuf },
    /// Decompose a vector into a convex combination of spanning trees.
    Decompose { instance: PathBuf, vector: PathBuf },
    /// Check whether a tree lies in some convex decomposition of a vector.
    CheckTreeInDecomposition { instance: PathBuf, vector: PathBuf, tree: PathBuf },
    /// Extract the narrow-cut chain of a vector.
    NarrowCuts {
        instance: PathBuf,
        vector: PathBuf,
        #[arg(long)]
        tau: String,
    },
    /// Full unified-correction certificate at one parameter setting.
    Certify {
        instance: PathBuf,
        /// Vector to certify; the LP optimum when omitted.
        vector: Option<PathBuf>,
        #[arg(long)]
        beta: String,
    },
    /// Deterministic pipeline: MST, T-join, Eulerian shortcut.
    Hoogeveen { instance: PathBuf },
    /// Tree-by-tree pipeline over a convex decomposition.
    BestOfMany {
        instance: PathBuf,
        vector: Option<PathBuf>,
        #[arg(long, default_value = "4/9")]
        beta: String,
    },
    /// Round a half-integral relaxation optimum to a path within 3/2.
    RoundHalf { instance: PathBuf, vector: PathBuf },
    /// Transform a partition-relaxation solution to the path relaxation.
    Lp4ToLp1 { instance: PathBuf, vector: PathBuf },
    /// Transform a path-relaxation solution back to the base graph.
    Lp1ToLp4 { instance: PathBuf, vector: PathBuf },
    /// Brute-force integral optimum of one relaxation.
    OptInt {
        instance: PathBuf,
        #[arg(long)]
        lp: u8,
    },
    /// Integral 3/2 sandwich with the constructive route.
    RatioCheck { instance: PathBuf },
    /// Build the extended good spanning tree over the narrow-cut partition.
    GoodTree { instance: PathBuf, vector: Option<PathBuf> },
    /// Certify all five counterexample claims.
    VerifyHb,
    /// Emit a built-in instance or vector in the standard format.
    Gen {
        #[command(subcommand)]
        what: GenTarget,
    },
    /// Run every check across the standard corpus.
    Suite {
        /// Number of seeded random instances to include.
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
}

#[derive(Subcommand)]
enum GenTarget {
    /// The eight-vertex counterexample support instance.
    Hb,
    /// Its optimal fractional solution.
    HbX,
    /// Its dual certificate.
    HbDual,
    /// Unit-cost cycle of length 2l with antipodal endpoints.
    Cycle { l: usize },
    /// Unit-cost path on k vertices.
    Path { k: usize },
    /// Seeded random complete metric.
    Random { n: usize, seed: u64 },
}

fn read_instance(path: &PathBuf) -> Result<Instance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_vector(path: &PathBuf) -> Result<EdgeVector, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_edge_vector(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text)
}

fn edge_list_json(x: &EdgeVector) -> Value {
    Value::Array(
        x.iter()
            .map(|((u, v), val)| json!({ "u": u, "v": v, "value": format_rational(val) }))
            .collect(),
    )
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("valid json")),
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let format = cli.format;
    let fail = |e: pathtsp::Error| e.to_string();
    match cli.command {
        Command::SolveLp1 { instance } => {
            let inst = read_instance(&instance)?.metric_completion().map_err(fail)?;
            let sol = solve_lp1(&inst).map_err(fail)?;
            let mut text = format!("value {}\n", format_rational(&sol.value));
            for ((u, v), val) in sol.x.iter() {
                text += &format!("x {u} {v} {}\n", format_rational(val));
            }
            for g in &sol.active_constraints {
                text += &format!("generated {}\n", g.describe());
            }
            let value = json!({
                "value": format_rational(&sol.value),
                "support": edge_list_json(&sol.x),
                "generated_constraints": sol.active_constraints.iter().map(|g| g.describe()).collect::<Vec<_>>(),
            });
            emit(format, text, value);
            Ok(true)
        }
        Command::SolveLp4 { instance, equivalence } => {
            let inst = read_instance(&instance)?;
            let sol = if equivalence {
                solve_lp4_via_equivalence(&inst).map_err(fail)?
            } else {
                solve_lp4(&inst).map_err(fail)?
            };
            let mut text = format!("value {}\n", format_rational(&sol.value));
            for ((u, v), val) in sol.x.iter() {
                text += &format!("x {u} {v} {}\n", format_rational(val));
            }
            for g in &sol.active_constraints {
                text += &format!("generated {}\n", g.describe());
            }
            let value = json!({
                "value": format_rational(&sol.value),
                "support": edge_list_json(&sol.x),
                "generated_constraints": sol.active_constraints.iter().map(|g| g.describe()).collect::<Vec<_>>(),
            });
            emit(format, text, value);
            Ok(true)
        }
        Command::VerifyDual { instance, vector, dual } => {
            let inst = read_instance(&instance)?.metric_completion().map_err(fail)?;
            let x = read_vector(&vector)?;
            let text = std::fs::read_to_string(&dual).map_err(|e| e.to_string())?;
            let dual = parse_dual(&text, inst.n()).map_err(fail)?;
            let report = verify_dual_certificate(&inst, &x, &dual).map_err(fail)?;
            let mut out = format!(
                "{}: primal {}, dual {}\n",
                if report.pass { "pass" } else { "FAIL" },
                format_rational(&report.primal_value),
                format_rational(&report.dual_value)
            );
            for f in &report.failures {
                out += &format!("  {f}\n");
            }
            let value = json!({
                "pass": report.pass,
                "primal_value": format_rational(&report.primal_value),
                "dual_value": format_rational(&report.dual_value),
                "failures": report.failures,
            });
            emit(format, out, value);
            Ok(report.pass)
        }
        Command::Decompose { instance, vector } => {
            let inst = read_instance(&instance)?;
            let x = read_vector(&vector)?;
            let dec = decompose(&inst, &x).map_err(fail)?;
            let mut text = String::new();
            for (lambda, tree) in dec.terms() {
                let edges: Vec<String> =
                    tree.edges().map(|(u, v)| format!("{u}-{v}")).collect();
                text += &format!("lambda {} ; {}\n", format_rational(lambda), edges.join(" "));
            }
            let value = Value::Array(
                dec.terms()
                    .iter()
                    .map(|(lambda, tree)| {
                        json!({
                            "lambda": format_rational(lambda),
                            "edges": tree.edges().map(|(u, v)| json!([u, v])).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            );
            emit(format, text, value);
            Ok(true)
        }
        Command::CheckTreeInDecomposition { instance, vector, tree } => {
            let inst = read_instance(&instance)?;
            let x = read_vector(&vector)?;
            let tree_vec = read_vector(&tree)?;
            let tree = SpanningTree::new(inst.n(), tree_vec.support()).map_err(fail)?;
            let pass = is_in_some_decomposition(&inst, &x, &tree).map_err(fail)?;
            emit(
                format,
                format!("{}\n", if pass { "pass" } else { "FAIL" }),
                json!({ "pass": pass }),
            );
            Ok(pass)
        }
        Command::NarrowCuts { instance, vector, tau } => {
            let inst = read_instance(&instance)?.metric_completion().map_err(fail)?;
            let x = read_vector(&vector)?;
            let tau = rational_arg(&tau)?;
            let chain = narrow_cuts(&inst, &x, &tau).map_err(fail)?;
            let mut text = String::new();
            for (i, cut) in chain.cuts().iter().enumerate() {
                let (u, v) = chain.min_edges()[i];
                text += &format!(
                    "cut {} value {} min-edge {u}-{v} cost {}\n",
                    cut,
                    format_rational(&chain.values()[i]),
                    format_rational(&chain.min_edge_costs()[i])
                );
            }
            text += &format!(
                "parts {}\n",
                chain
                    .parts()
                    .iter()
                    .map(|p| format!("{p:?}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let value = Value::Array(
                chain
                    .cuts()
                    .iter()
                    .enumerate()
                    .map(|(i, cut)| {
                        json!({
                            "cut": cut.members().iter().collect::<Vec<_>>(),
                            "value": format_rational(&chain.values()[i]),
                            "min_edge": chain.min_edges()[i],
                            "min_edge_cost": format_rational(&chain.min_edge_costs()[i]),
                        })
                    })
                    .collect(),
            );
            emit(format, text, value);
            Ok(true)
        }
        Command::Certify { instance, vector, beta } => {
            let inst = read_instance(&instance)?.metric_completion().map_err(fail)?;
            let x = match vector {
                Some(path) => read_vector(&path)?,
                None => solve_lp1(&inst).map_err(fail)?.x,
            };
            let beta = rational_arg(&beta)?;
            let params = UnifiedParams::from_beta(beta).map_err(fail)?;
            let dec = decompose(&inst, &x).map_err(fail)?;
            let report = certificate_report(&inst, &x, &dec, &params).map_err(fail)?;
            let mut text = format!(
                "alpha {} beta {} tau {}\n",
                format_rational(&report.params.alpha),
                format_rational(&report.params.beta),
                format_rational(&report.params.tau)
            );
            for stat in &report.per_cut {
                text += &format!(
                    "cut {} value {} e_Q {:?} cost {} Pr[one crossing] {} >= {} Pr[T-odd] {} <= {}\n",
                    stat.cut,
                    format_rational(&stat.value),
                    stat.min_edge,
                    format_rational(&stat.min_edge_cost),
                    format_rational(&stat.pr_single_crossing),
                    format_rational(&stat.single_crossing_bound),
                    format_rational(&stat.pr_t_odd),
                    format_rational(&stat.t_odd_bound),
                );
            }
            text += &format!(
                "lp cost {}\nE[c(P)] {}\nE[c(F)] {}\nE[c(f)] {}\n",
                format_rational(&report.lp_cost),
                format_rational(&report.expected_path_cost),
                format_rational(&report.expected_tjoin_cost),
                format_rational(&report.expected_unified_cost)
            );
            text += &format!(
                "quadratic-layer bound {}\npath-layer bound {}\n",
                format_rational(&report.aks_bound),
                report
                    .sebo_bound
                    .as_ref()
                    .map(|b| format_rational(b))
                    .unwrap_or_else(|| format!("~{:.6}", report.sebo_bound_float))
            );
            text += &format!(
                "certified total bound {} (ratio {} vs LP, within 8/5: {})\n",
                format_rational(&report.certified_total_bound),
                format_rational(&report.certified_ratio),
                report.ratio_le_8_5
            );
            text += &format!(
                "trees checked {} all feasible {}\n",
                report.trees_checked, report.all_trees_feasible
            );
            let value = json!({
                "alpha": format_rational(&report.params.alpha),
                "beta": format_rational(&report.params.beta),
                "tau": format_rational(&report.params.tau),
                "lp_cost": format_rational(&report.lp_cost),
                "expected_path_cost": format_rational(&report.expected_path_cost),
                "expected_tjoin_cost": format_rational(&report.expected_tjoin_cost),
                "expected_unified_cost": format_rational(&report.expected_unified_cost),
                "quadratic_layer_bound": format_rational(&report.aks_bound),
                "path_layer_bound": report.sebo_bound.as_ref().map(|b| format_rational(b)),
                "path_layer_bound_float": report.sebo_bound_float,
                "certified_total_bound": format_rational(&report.certified_total_bound),
                "certified_ratio": format_rational(&report.certified_ratio),
                "certified_ratio_float": to_f64(&report.certified_ratio),
                "ratio_le_8_5": report.ratio_le_8_5,
                "trees_checked": report.trees_checked,
                "all_trees_feasible": report.all_trees_feasible,
            });
            emit(format, text, value);
            Ok(report.all_trees_feasible && report.ratio_le_8_5)
        }
        Command::Hoogeveen { instance } => {
            let inst = read_instance(&instance)?.metric_completion().map_err(fail)?;
            let path = hoogeveen(&inst).map_err(fail)?;
            emit(
                format,
                format!(
                    "path {:?}\ncost {}\n",
                    path.order,
                    format_rational(&path.cost)
                ),
                json!({ "path": path.order, "cost": format_rational(&path.cost) }),
            );
            Ok(true)
        }
        Command::BestOfMany { instance, vector, beta } => {
            let inst = read_instance(&instance)?.metric_completion().map_err(fail)?;
            let x = match vector {
                Some(path) => read_vector(&path)?,
                None => solve_lp1(&inst).map_err(fail)?.x,
            };
            let beta = rational_arg(&beta)?;
            let params = UnifiedParams::from_beta(beta).map_err(fail)?;
            let dec = decompose(&inst, &x).map_err(fail)?;
            let result = best_of_many(&inst, &x, &dec).map_err(fail)?;
            let certificate = certificate_report(&inst, &x, &dec, &params).map_err(fail)?;
            let mut text = String::new();
            for run in &result.runs {
                text += &format!(
                    "lambda {} tree {} join {} combined {} path-cost {}\n",
                    format_rational(&run.lambda),
                    format_rational(&run.tree_cost),
                    format_rational(&run.tjoin_cost),
                    format_rational(&run.combined),
                    format_rational(&run.path.cost)
                );
            }
            text += &format!(
                "best {:?} cost {}\nexpected combined {} <= certified bound {}\n",
                result.best.order,
                format_rational(&result.best.cost),
                format_rational(&result.expected_combined),
                format_rational(&certificate.certified_total_bound)
            );
            let value = json!({
                "runs": result.runs.iter().map(|r| json!({
                    "lambda": format_rational(&r.lambda),
                    "tree_cost": format_rational(&r.tree_cost),
                    "tjoin_cost": format_rational(&r.tjoin_cost),
                    "combined": format_rational(&r.combined),
                    "path": r.path.order,
                    "path_cost": format_rational(&r.path.cost),
                })).collect::<Vec<_>>(),
                "best_path": result.best.order,
                "best_cost": format_rational(&result.best.cost),
                "expected_combined": format_rational(&result.expected_combined),
                "certified_bound": format_rational(&certificate.certified_total_bound),
            });
            emit(format, text, value);
            Ok(result.expected_combined <= certificate.certified_total_bound)
        }
        Command::RoundHalf { instance, vector } => {
            let inst = read_instance(&instance)?.metric_completion().map_err(fail)?;
            let x = read_vector(&vector)?;
            let dec = decompose(&inst, &x).map_err(fail)?;
            let rounding = round_half_integral(&inst, &x, &dec).map_err(fail)?;
            let ok = rounding.result.best.cost <= rounding.bound;
            emit(
                format,
                format!(
                    "path {:?}\ncost {} <= bound {}\n",
                    rounding.result.best.order,
                    format_rational(&rounding.result.best.cost),
                    format_rational(&rounding.bound)
                ),
                json!({
                    "path": rounding.result.best.order,
                    "cost": format_rational(&rounding.result.best.cost),
                    "bound": format_rational(&rounding.bound),
                }),
            );
            Ok(ok)
        }
        Command::Lp4ToLp1 { instance, vector } => {
            let inst = read_instance(&instance)?;
            let x = read_vector(&vector)?;
            let out = lp4_to_lp1(&inst, &x).map_err(fail)?;
            emit(format, serialize_edge_vector(&out), json!({ "vector": edge_list_json(&out) }));
            Ok(true)
        }
        Command::Lp1ToLp4 { instance, vector } => {
            let inst = read_instance(&instance)?;
            let x = read_vector(&vector)?;
            let out = lp1_to_lp4(&inst, &x).map_err(fail)?;
            emit(format, serialize_edge_vector(&out), json!({ "vector": edge_list_json(&out) }));
            Ok(true)
        }
        Command::OptInt { instance, lp } => {
            let inst = read_instance(&instance)?;
            let value = match lp {
                1 => brute_opt_int_lp1(&inst).map_err(fail)?,
                4 => brute_opt_int_lp4(&inst, 2).map_err(fail)?.0,
                other => return Err(format!("unknown relaxation {other}; use 1 or 4")),
            };
            emit(
                format,
                format!("optimal integral value {}\n", format_rational(&value)),
                json!({ "lp": lp, "value": format_rational(&value) }),
            );
            Ok(true)
        }
        Command::RatioCheck { instance } => {
            let inst = read_instance(&instance)?;
            let report = check_ratio_theorem(&inst).map_err(fail)?;
            let pass = report.sandwich_ok && report.constructive_ok;
            let text = format!(
                "opt_int_lp4 {}\nopt_int_lp1 {}\nratio {} ({})\nconstructive cost {} ({})\nmultiplicity bound verified: {:?}\n",
                format_rational(&report.opt_int_lp4),
                format_rational(&report.opt_int_lp1),
                format_rational(&report.ratio),
                if report.sandwich_ok { "within 3/2" } else { "SANDWICH FAILED" },
                format_rational(&report.constructive_cost),
                if report.constructive_ok { "ok" } else { "FAILED" },
                report.multiplicity_bound_verified
            );
            let value = json!({
                "opt_int_lp4": format_rational(&report.opt_int_lp4),
                "opt_int_lp1": format_rational(&report.opt_int_lp1),
                "ratio": format_rational(&report.ratio),
                "sandwich_ok": report.sandwich_ok,
                "constructive_cost": format_rational(&report.constructive_cost),
                "constructive_ok": report.constructive_ok,
                "multiplicity_bound_verified": report.multiplicity_bound_verified,
            });
            emit(format, text, value);
            Ok(pass)
        }
        Command::GoodTree { instance, vector } => {
            let inst = read_instance(&instance)?.metric_completion().map_err(fail)?;
            let x = match vector {
                Some(path) => read_vector(&path)?,
                None => solve_lp1(&inst).map_err(fail)?.x,
            };
            let report = build_good_spanning_tree(&inst, &x).map_err(fail)?;
            let mut text = String::new();
            for (i, part) in report.parts.iter().enumerate() {
                text += &format!("part {i}: {part:?}\n");
            }
            for ((u, v), c) in &report.connectors {
                text += &format!("connector {u}-{v} cost {}\n", format_rational(c));
            }
            text += &format!(
                "inside {} total {} vs LP {}{}\n",
                format_rational(&report.inside_cost),
                format_rational(&report.total_cost),
                format_rational(&report.lp_value),
                if report.exceeds_lp { " (good tree exceeds the LP value)" } else { "" }
            );
            let value = json!({
                "parts": report.parts.iter().map(|p| p.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
                "connectors": report.connectors.iter().map(|((u, v), c)| json!({
                    "edge": [u, v], "cost": format_rational(c),
                })).collect::<Vec<_>>(),
                "inside_cost": format_rational(&report.inside_cost),
                "total_cost": format_rational(&report.total_cost),
                "lp_value": format_rational(&report.lp_value),
                "exceeds_lp": report.exceeds_lp,
            });
            emit(format, text, value);
            Ok(true)
        }
        Command::VerifyHb => {
            let report = verify_counterexample_hb().map_err(fail)?;
            let mut text = String::new();
            for check in &report.checks {
                text += &format!(
                    "[{}] {} ({})\n",
                    if check.pass { "pass" } else { "FAIL" },
                    check.name,
                    check.detail
                );
            }
            let value = Value::Array(
                report
                    .checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                    .collect(),
            );
            emit(format, text, value);
            Ok(report.all_pass)
        }
        Command::Gen { what } => {
            let text = match what {
                GenTarget::Hb => serialize_instance(&builtin_hb().0),
                GenTarget::HbX => serialize_edge_vector(&builtin_hb().1),
                GenTarget::HbDual => serialize_dual(&hb_paper_dual()),
                GenTarget::Cycle { l } => serialize_instance(&gap_cycle(l).map_err(fail)?),
                GenTarget::Path { k } => serialize_instance(&unit_path(k).map_err(fail)?),
                GenTarget::Random { n, seed } => {
                    serialize_instance(&random_metric_instance(n, seed).map_err(fail)?)
                }
            };
            print!("{text}");
            Ok(true)
        }
        Command::Suite { random } => {
            let corpus = standard_corpus(random);
            let summary = run_suite(&corpus).map_err(fail)?;
            let value = json!({
                "total_checks": summary.total_checks,
                "failures": summary.failures,
                "failed": summary.failed_checks().iter().map(|(i, c)| json!([i, c])).collect::<Vec<_>>(),
                "worst_certified_ratio": summary.worst_certified_ratio.as_ref().map(|r| format_rational(r)),
                "worst_path_ratio": summary.worst_path_ratio.as_ref().map(|r| format_rational(r)),
            });
            emit(format, summary.render_text(), value);
            Ok(summary.failures == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
