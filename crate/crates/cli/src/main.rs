//! Command-line entry point: synthesis, evaluation, invariance checks,
//! minimum-weight scans, bound reports, certificates and their verifier,
//! the depth-2 oracle, cycle-space tooling, and the self-test suite.
//!
//! Exit codes: 0 on success or a verified artifact, 1 on a verification
//! failure, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ac0form::bounds::{
    lower_bound_certificate, trace_from_json_str, trace_lower_bound, trace_to_json_string,
    verify_trace, TraceNode,
};
use ac0form::f2::{min_weight_in_difference, BitVec, Subspace};
use ac0form::formula::{
    evaluate, formula_from_json_str, formula_to_json_string, is_invariant,
    is_semantically_invariant, semantic_invariance_sampled, Formula, GateOp, OnSet,
};
use ac0form::graph::{even_weight_sub, max_cut, random_regular, Graph, RNG_ALGORITHM};
use ac0form::oracle::{min_invariant_depth2_size, SeparatorSpec};
use ac0form::synthesis::{synth_parity, Strategy};
use ac0form::Error;

const LONG_VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    "\nformats: subspace/1, formula/1, graph/1, trace/1, bound-report/1, oracle/1, ",
    "synth-report/1, selftest-report/1"
);

#[derive(Parser)]
#[command(name = "ac0form", version, long_version = LONG_VERSION)]
#[command(about = "Subspace-invariant bounded-depth formula toolkit")]
struct Cli {
    /// Worker count for parallelizable searches; results are identical
    /// for every value.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateArg {
    And,
    Or,
}

impl From<GateArg> for GateOp {
    fn from(g: GateArg) -> GateOp {
        match g {
            GateArg::And => GateOp::And,
            GateArg::Or => GateOp::Or,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    ExactDp,
    ClosedForm,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::ExactDp => Strategy::ExactDp,
            StrategyArg::ClosedForm => Strategy::ClosedForm,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize an invariant parity formula.
    Synth {
        /// Formula depth (gate layers).
        #[arg(long)]
        depth: u32,
        /// Number of variables.
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "or")]
        gate: GateArg,
        #[arg(long, value_enum, default_value = "exact-dp")]
        strategy: StrategyArg,
        /// Output formula file (JSON).
        #[arg(long)]
        out: PathBuf,
        /// Optional sidecar report (JSON).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate a formula on one input, or classify it over a subspace.
    Eval {
        #[arg(long)]
        formula: PathBuf,
        /// Input point as a 0/1 string.
        #[arg(long)]
        input: Option<String>,
        /// Classify over all elements of this subspace instead.
        #[arg(long)]
        subspace: Option<PathBuf>,
    },
    /// Check syntactic (and semantic) invariance of a formula.
    Invariant {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
        /// Sampling mode for semantic checks beyond the exhaustive cap:
        /// number of random probes.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimum Hamming weight over A \ B with its witness.
    Minweight {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Bound report for a pair U ⊂ V at depth parameter d.
    Bound {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build, verify, and store a size certificate for a formula.
    Trace {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a stored certificate against its formula and spaces.
    VerifyTrace {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Exhaustive minimal depth-2 separator for a codimension-1 pair.
    Oracle {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
        #[arg(long, default_value_t = 0)]
        polarity: u8,
        /// Require the clause set to be closed under the subspace action.
        #[arg(long)]
        invariant: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cycle space of a graph, with its even-weight part.
    CycleSpace {
        #[arg(long)]
        graph: PathBuf,
        /// Write the cycle space here (text format).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the even-weight subspace here (text format).
        #[arg(long)]
        z0: Option<PathBuf>,
    },
    /// Exact maximum cut and m = edges − cut.
    Maxcut {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Seeded uniform random regular graph.
    RandomRegular {
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria; exit 0 only if every one passes.
    Selftest {
        /// Write the deterministic report here (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.max(1);
    match dispatch(cli.command, jobs) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_subspace(path: &Path) -> Result<Subspace, Error> {
    Subspace::parse_text(&read(path)?)
}

fn load_formula(path: &Path) -> Result<Formula, Error> {
    formula_from_json_str(&read(path)?)
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    Graph::parse_text(&read(path)?)
}

fn write_out(path: &Path, content: &str) -> Result<(), Error> {
    fs::write(path, content)?;
    Ok(())
}

fn dispatch(command: Command, jobs: usize) -> Result<ExitCode, Error> {
    match command {
        Command::Synth {
            depth,
            n,
            gate,
            strategy,
            out,
            report,
        } => {
            let (formula, rep) = synth_parity(depth, n, gate.into(), strategy.into())?;
            write_out(&out, &formula_to_json_string(&formula))?;
            if let Some(path) = report {
                let mut s = serde_json::to_string_pretty(&rep)?;
                s.push('\n');
                write_out(&path, &s)?;
            }
            println!(
                "depth={} n={} leafsize={} size={} beta={}",
                rep.depth, rep.n, rep.leafsize, rep.size, rep.beta_value
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval {
            formula,
            input,
            subspace,
        } => {
            let f = load_formula(&formula)?;
            match (input, subspace) {
                (Some(bits), None) => {
                    let x = BitVec::parse(&bits)?;
                    let value = evaluate(&f, &x)?;
                    println!("value: {}", value as u8);
                }
                (None, Some(path)) => {
                    let s = load_subspace(&path)?;
                    let points: Vec<BitVec> = s.elements().collect();
                    let class = ac0form::formula::evaluate_on(&f, &points)?;
                    let label = match class {
                        OnSet::AllZero => "all-0",
                        OnSet::AllOne => "all-1",
                        OnSet::NonConstant => "non-constant",
                    };
                    println!("classification: {label}");
                }
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "pass exactly one of --input or --subspace".into(),
                    })
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariant {
            formula,
            subspace,
            samples,
            seed,
        } => {
            let f = load_formula(&formula)?;
            let u = load_subspace(&subspace)?;
            let syntactic = is_invariant(&f, &u)?;
            println!("syntactic: {syntactic}");
            match is_semantically_invariant(&f, &u) {
                Ok(semantic) => println!("semantic: {semantic}"),
                Err(Error::NeedsSampling { n, cap }) => match samples {
                    Some(count) => match semantic_invariance_sampled(&f, &u, count, seed)? {
                        Some((x, shift)) => {
                            println!("semantic: violated (x={x}, shift={shift}) [sampled]")
                        }
                        None => {
                            println!("semantic: no violation in {count} samples [one-sided]")
                        }
                    },
                    None => return Err(Error::NeedsSampling { n, cap }),
                },
                Err(e) => return Err(e),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Minweight { a, b } => {
            let a = load_subspace(&a)?;
            let b = load_subspace(&b)?;
            let (m, witness) = min_weight_in_difference(&a, &b, jobs)?;
            println!("m={m} witness={witness}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound { u, v, depth, out } => {
            let u = load_subspace(&u)?;
            let v = load_subspace(&v)?;
            let report = lower_bound_certificate(&u, &v, depth, jobs)?;
            let mut text = serde_json::to_string_pretty(&report.to_json())?;
            text.push('\n');
            match out {
                Some(path) => write_out(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Trace {
            formula,
            u,
            v,
            out,
        } => {
            let f = load_formula(&formula)?;
            let u = load_subspace(&u)?;
            let v = load_subspace(&v)?;
            let trace = trace_lower_bound(&f, &u, &v, jobs)?;
            verify_trace(&f, &trace)?;
            write_out(&out, &trace_to_json_string(&trace))?;
            println!(
                "m={} claimed_log2={} size={} verified=true",
                trace.m, trace.claimed_log2, trace.actual_size
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTrace {
            trace,
            formula,
            u,
            v,
        } => {
            let stored = trace_from_json_str(&read(&trace)?)?;
            let f = load_formula(&formula)?;
            let u = load_subspace(&u)?;
            let v = load_subspace(&v)?;
            let pair_matches = match &stored.root {
                TraceNode::Reduction { sub, sup, .. } => *sub == u && *sup == v,
                _ => false,
            };
            if !pair_matches {
                eprintln!("verify-trace: FAIL (trace was built for a different pair)");
                return Ok(ExitCode::from(1));
            }
            match verify_trace(&f, &stored) {
                Ok(()) => {
                    println!("verify-trace: OK");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("verify-trace: FAIL ({e})");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Oracle {
            u,
            v,
            polarity,
            invariant,
            out,
        } => {
            let u = load_subspace(&u)?;
            let v = load_subspace(&v)?;
            let spec = SeparatorSpec::new(u, v, polarity != 0)?;
            let result = min_invariant_depth2_size(&spec, invariant)?;
            let mut text = serde_json::to_string_pretty(&result.to_json())?;
            text.push('\n');
            match out {
                Some(path) => write_out(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CycleSpace { graph, out, z0 } => {
            let g = load_graph(&graph)?;
            let z = g.cycle_space();
            let (z_even, codim) = even_weight_sub(&z);
            println!(
                "edges={} dim={} codim={} bipartite={}",
                g.edge_count(),
                z.dim(),
                codim,
                g.is_bipartite()
            );
            if let Some(path) = out {
                write_out(&path, &z.to_text())?;
            }
            if let Some(path) = z0 {
                write_out(&path, &z_even.to_text())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Maxcut { graph } => {
            let g = load_graph(&graph)?;
            let cut = max_cut(&g, jobs)?;
            let bipartite = g.is_bipartite();
            let m = if bipartite {
                serde_json::Value::Null
            } else {
                serde_json::json!(g.edge_count() - cut)
            };
            let text = serde_json::to_string_pretty(&serde_json::json!({
                "format": "maxcut/1",
                "edges": g.edge_count(),
                "cut": cut,
                "bipartite": bipartite,
                "m": m,
            }))?;
            println!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::RandomRegular {
            v,
            degree,
            seed,
            out,
        } => {
            let (g, attempts) = random_regular(v, degree, seed)?;
            let mut text = g.to_text();
            text.push_str(&format!(
                "# rng: {RNG_ALGORITHM} seed={seed} degree={degree} attempts={attempts}\n"
            ));
            match out {
                Some(path) => write_out(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { out } => {
            let results = ac0form::acceptance::run_all(jobs);
            let mut all_ok = true;
            for r in &results {
                let within = r.within_budget();
                let status = if r.passed && within { "PASS" } else { "FAIL" };
                println!(
                    "criterion {} {}: {status} ({:.2}s, budget {}s) - {}",
                    r.id,
                    r.name,
                    r.elapsed.as_secs_f64(),
                    r.budget.as_secs(),
                    r.details
                );
                all_ok &= r.passed && within;
            }
            if let Some(path) = out {
                let mut text =
                    serde_json::to_string_pretty(&ac0form::acceptance::report_json(&results))?;
                text.push('\n');
                write_out(&path, &text)?;
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
