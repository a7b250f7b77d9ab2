//! Command-line front end: graph ingestion, generators, analysis commands
//! and the acceptance check suites.  Machine-readable JSON goes to stdout,
//! a one-line human summary to stderr.  Exit codes: 0 success/pass,
//! 1 check failure, 2 input error, 3 budget exhaustion.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use topograph::category::{cat_bounds, cup_length_capped};
use topograph::complex::{stanley_reisner_product, SimplicialComplex};
use topograph::delta::{fusion_check, SimplexSet};
use topograph::graph::{generator, mertens_graph, Graph};
use topograph::hodge::HodgeData;
use topograph::morse::{
    cri_exact, cri_heuristic, curvature_exact_expectation, curvature_levitt,
    curvature_monte_carlo, morse_profile, ph_indices, MorseOutcome, VertexFunction,
};
use topograph::suite::{mobius_sieve, run_all, run_suite, SUITE_NAMES};
use topograph::TopoError;

#[derive(Parser)]
#[command(name = "topograph", version, about = "Exact topology of finite simple graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Levitt,
    Exact,
    Mc,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a generator graph as JSON.
    Gen {
        name: String,
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti vector of the clique complex.
    Betti { graph: String },
    /// Euler characteristic of the clique complex.
    Euler { graph: String },
    /// Simplex counts per dimension.
    Fvector { graph: String },
    /// Barycentric refinement graph.
    Refine {
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Combine two graphs.
    #[command(group = clap::ArgGroup::new("kind").required(true))]
    Product {
        /// Zykov join: connect every vertex of one graph to every vertex of the other.
        #[arg(long, group = "kind")]
        join: bool,
        /// Shannon (strong) product.
        #[arg(long, group = "kind")]
        shannon: bool,
        /// Disjoint union.
        #[arg(long, group = "kind")]
        union: bool,
        /// Stanley-Reisner simplex product.
        #[arg(long, group = "kind")]
        sr: bool,
        g: String,
        h: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Curvature field; always sums to the Euler characteristic.
    Curvature {
        graph: String,
        #[arg(long, value_enum, default_value = "levitt")]
        measure: Measure,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Poincaré–Hopf indices of a vertex function.
    Ph {
        graph: String,
        #[arg(long)]
        function: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Morse profile of a vertex function.
    Morse {
        graph: String,
        #[arg(long)]
        function: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimal number of critical points over locally injective functions.
    Cri {
        graph: String,
        #[arg(long)]
        exact_cap: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lusternik–Schnirelmann category bounds with a cover witness.
    Cat {
        graph: String,
        #[arg(long, default_value_t = 64)]
        exact_cap: usize,
    },
    /// Cup length of the cohomology ring.
    Cup {
        graph: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Fusion inequality for a closed set and its open complement.
    Fusion {
        graph: String,
        #[arg(long)]
        closed: PathBuf,
    },
    /// Euler characteristic of the divisibility graph versus 1 - M(n).
    Mertens { n: u64 },
    /// Run acceptance suites: `all` or one suite name.
    Check {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load_graph(spec: &str) -> Result<Graph, TopoError> {
    if Path::new(spec).exists() {
        return Graph::from_json(&std::fs::read_to_string(spec)?);
    }
    // Generator spec: name, name:3 or name:2,2,2.
    let (name, params) = match spec.split_once(':') {
        Some((n, ps)) => {
            let params: Result<Vec<usize>, _> = ps.split(',').map(|p| p.trim().parse()).collect();
            let params = params.map_err(|_| {
                TopoError::InvalidParams(format!("cannot parse parameters in `{spec}`"))
            })?;
            (n, params)
        }
        None => (spec, vec![]),
    };
    generator(name, &params)
}

fn parse_rational(v: &Value) -> Result<BigRational, TopoError> {
    match v {
        Value::Number(n) if n.is_i64() => {
            Ok(BigRational::from(BigInt::from(n.as_i64().expect("i64"))))
        }
        Value::String(s) => BigRational::from_str(s)
            .map_err(|_| TopoError::InvalidParams(format!("bad rational `{s}`"))),
        other => Err(TopoError::InvalidParams(format!("bad rational `{other}`"))),
    }
}

/// Function file: a JSON object mapping vertex labels to rationals, given
/// as integers or `p/q` strings.
fn load_function(path: &Path) -> Result<VertexFunction, TopoError> {
    let text = std::fs::read_to_string(path)?;
    let raw: BTreeMap<String, Value> = serde_json::from_str(&text)?;
    let mut values = BTreeMap::new();
    for (k, v) in raw {
        let vertex: u32 = k
            .parse()
            .map_err(|_| TopoError::InvalidParams(format!("bad vertex label `{k}`")))?;
        values.insert(vertex, parse_rational(&v)?);
    }
    Ok(VertexFunction::from_values(values))
}

fn function_for(g: &Graph, file: &Option<PathBuf>, seed: u64) -> Result<VertexFunction, TopoError> {
    match file {
        Some(path) => load_function(path),
        None => {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            Ok(VertexFunction::random(g, &mut rng))
        }
    }
}

fn rational_json(r: &BigRational) -> Value {
    if r.is_integer() {
        match i64::try_from(r.to_integer()) {
            Ok(n) => json!(n),
            Err(_) => json!(r.to_string()),
        }
    } else {
        json!(r.to_string())
    }
}

fn field_json(field: &BTreeMap<u32, BigRational>) -> Value {
    Value::Object(
        field
            .iter()
            .map(|(v, r)| (v.to_string(), rational_json(r)))
            .collect(),
    )
}

fn emit(report: &Value, summary: &str) {
    println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    eprintln!("{summary}");
}

fn write_or_print(text: &str, out: &Option<PathBuf>, summary: &str) -> Result<(), TopoError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    eprintln!("{summary}");
    Ok(())
}

fn run(cmd: Cmd) -> Result<u8, TopoError> {
    match cmd {
        Cmd::Gen { name, params, out } => {
            let g = generator(&name, &params)?;
            write_or_print(
                &g.to_json(),
                &out,
                &format!("{name}: {} vertices, {} edges", g.n(), g.edge_count()),
            )?;
        }
        Cmd::Betti { graph } => {
            let g = load_graph(&graph)?;
            let b = topograph::hodge::betti_of_graph(&g)?;
            emit(&json!({ "input": graph, "betti": b }), &format!("betti {:?}", b));
        }
        Cmd::Euler { graph } => {
            let g = load_graph(&graph)?;
            let chi = SimplicialComplex::whitney(&g)?.euler_characteristic();
            emit(&json!({ "input": graph, "chi": chi }), &format!("chi = {chi}"));
        }
        Cmd::Fvector { graph } => {
            let g = load_graph(&graph)?;
            let f = SimplicialComplex::whitney(&g)?.f_vector().0;
            emit(&json!({ "input": graph, "f": f }), &format!("f-vector {:?}", f));
        }
        Cmd::Refine { graph, out } => {
            let g = load_graph(&graph)?;
            let r = SimplicialComplex::whitney(&g)?.barycentric_refinement();
            write_or_print(
                &r.to_json(),
                &out,
                &format!("refinement: {} vertices, {} edges", r.n(), r.edge_count()),
            )?;
        }
        Cmd::Product { join, shannon, union, sr: _, g, h, out } => {
            let a = load_graph(&g)?;
            let b = load_graph(&h)?;
            let p = if join {
                a.zykov_join(&b)
            } else if shannon {
                a.shannon_product(&b)
            } else if union {
                a.disjoint_union(&b)
            } else {
                stanley_reisner_product(&a, &b)?
            };
            write_or_print(
                &p.to_json(),
                &out,
                &format!("product: {} vertices, {} edges", p.n(), p.edge_count()),
            )?;
        }
        Cmd::Curvature { graph, measure, samples, seed } => {
            let g = load_graph(&graph)?;
            let (name, field) = match measure {
                Measure::Levitt => ("levitt", curvature_levitt(&g)?),
                Measure::Exact => ("exact", curvature_exact_expectation(&g)?),
                Measure::Mc => ("mc", curvature_monte_carlo(&g, seed, samples)?),
            };
            let total: BigRational = field.values().sum();
            emit(
                &json!({
                    "input": graph,
                    "measure": name,
                    "samples": samples,
                    "seed": seed,
                    "curvature": field_json(&field),
                    "total": rational_json(&total),
                }),
                &format!("{name} curvature sums to {total}"),
            );
        }
        Cmd::Ph { graph, function, seed } => {
            let g = load_graph(&graph)?;
            let f = function_for(&g, &function, seed)?;
            let idx = ph_indices(&g, &f)?;
            let total: i64 = idx.values().sum();
            let chi = SimplicialComplex::whitney(&g)?.euler_characteristic();
            emit(
                &json!({
                    "input": graph,
                    "seed": seed,
                    "indices": idx.iter().map(|(v, i)| (v.to_string(), *i)).collect::<BTreeMap<_, _>>(),
                    "sum": total,
                    "chi": chi,
                    "pass": total == chi,
                }),
                &format!("index sum {total}, chi {chi}"),
            );
        }
        Cmd::Morse { graph, function, seed } => {
            let g = load_graph(&graph)?;
            let f = function_for(&g, &function, seed)?;
            match morse_profile(&g, &f)? {
                MorseOutcome::Morse(c) => emit(
                    &json!({ "input": graph, "seed": seed, "morse": true, "profile": c }),
                    &format!("Morse with profile {:?}", c),
                ),
                MorseOutcome::NotMorse(v) => emit(
                    &json!({ "input": graph, "seed": seed, "morse": false, "witness": v }),
                    &format!("not Morse: stable sphere at vertex {v} is neither sphere nor contractible"),
                ),
            }
        }
        Cmd::Cri { graph, exact_cap, restarts, seed } => {
            let g = load_graph(&graph)?;
            let (cri, order, mode) = match (exact_cap, restarts) {
                (Some(cap), _) => {
                    let (c, o) = cri_exact(&g, cap)?;
                    (c, o, "exact")
                }
                (None, Some(r)) => {
                    let (c, o) = cri_heuristic(&g, seed, r)?;
                    (c, o, "heuristic")
                }
                (None, None) => {
                    let (c, o) = cri_exact(&g, g.n())?;
                    (c, o, "exact")
                }
            };
            emit(
                &json!({
                    "input": graph,
                    "mode": mode,
                    "seed": seed,
                    "cri": cri,
                    "order": order,
                }),
                &format!("{mode} critical point count {cri}"),
            );
        }
        Cmd::Cat { graph, exact_cap } => {
            let g = load_graph(&graph)?;
            let b = cat_bounds(&g, exact_cap)?;
            emit(
                &json!({
                    "input": graph,
                    "exact_cap": exact_cap,
                    "lower": b.lower,
                    "upper": b.upper,
                    "lower_witness": {
                        "components": b.lower_witness.components,
                        "cup_length": b.lower_witness.cup_length,
                        "non_contractible": b.lower_witness.non_contractible,
                    },
                    "cover": b.cover,
                }),
                &format!("category in [{}, {}]", b.lower, b.upper),
            );
        }
        Cmd::Cup { graph, budget } => {
            let g = load_graph(&graph)?;
            let h = HodgeData::from_graph(&g)?;
            let (cup, truncated) = cup_length_capped(&h, budget)?;
            emit(
                &json!({ "input": graph, "budget": budget, "cup": cup, "truncated": truncated }),
                &format!("cup length {cup}{}", if truncated { " (truncated)" } else { "" }),
            );
        }
        Cmd::Fusion { graph, closed } => {
            let g = load_graph(&graph)?;
            let k = SimplicialComplex::whitney(&g)?;
            let s = SimplexSet::from_json(&k, &std::fs::read_to_string(&closed)?)?;
            let r = fusion_check(&k, &s)?;
            let pass = r.passes;
            emit(
                &json!({
                    "input": graph,
                    "betti_open": r.betti_open,
                    "betti_closed": r.betti_closed,
                    "betti_host": r.betti_host,
                    "chi": { "open": r.chi_open, "closed": r.chi_closed, "host": r.chi_host },
                    "pass": pass,
                }),
                &format!(
                    "fusion {}: {:?} + {:?} vs {:?}",
                    if pass { "holds" } else { "FAILS" },
                    r.betti_open,
                    r.betti_closed,
                    r.betti_host
                ),
            );
            if !pass {
                return Ok(1);
            }
        }
        Cmd::Mertens { n } => {
            let g = mertens_graph(n)?;
            let chi = SimplicialComplex::whitney(&g)?.euler_characteristic();
            let mu = mobius_sieve(n as usize);
            let m: i64 = (1..=n as usize).map(|k| mu[k]).sum();
            let pass = chi == 1 - m;
            emit(
                &json!({ "n": n, "chi": chi, "mertens": m, "pass": pass }),
                &format!("chi = {chi}, 1 - M({n}) = {}", 1 - m),
            );
            if !pass {
                return Ok(1);
            }
        }
        Cmd::Check { suite, seed } => {
            let reports = if suite == "all" {
                run_all(seed)
            } else {
                vec![run_suite(&suite, seed)?]
            };
            let mut failed = false;
            for r in &reports {
                eprintln!(
                    "[{}] {:<14} {} ({} checks{})",
                    r.id,
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.checks,
                    if r.failures.is_empty() {
                        String::new()
                    } else {
                        format!(", {} failures", r.failures.len())
                    }
                );
                for f in &r.failures {
                    eprintln!("    {f}");
                }
                failed |= !r.passed;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "seed": seed,
                    "suites": SUITE_NAMES,
                    "reports": reports,
                }))
                .expect("report serializes")
            );
            if failed {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn exit_code_for(e: &TopoError) -> u8 {
    match e {
        TopoError::SimplexBudget(_)
        | TopoError::SearchBudget(_)
        | TopoError::CapExceeded(_, _)
        | TopoError::DegreeBound(_, _, _) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
