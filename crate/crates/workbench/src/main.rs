use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use localdom::domination::{best_minimum_dominating_set, is_dominating_set, minimum_dominating_set, verify_domination};
use localdom::generic::ControlFunction;
use localdom::planar::Executor;
use localdom::planarity::is_planar;
use localdom::{Graph, VertexSet};
use serde_json::json;
use workbench::error::{read_file, write_file};
use workbench::experiment::{run_suite, write_csv, Suite};
use workbench::generators::{generate, Gadget, GeneratorSpec};
use workbench::report::{make_report, AlgorithmConfig, GraphDescriptor};
use workbench::sets::parse_set;
use workbench::{Error, Result};

#[derive(Parser)]
#[command(name = "localdom", version, about = "LOCAL dominating-set algorithms and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in edge-list format.
    Gen(GenArgs),
    /// Run an algorithm on a graph and write a JSON report.
    Run(RunArgs),
    /// Exact minimum dominating set of a graph or of a target set.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Check that a set dominates the graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: PathBuf,
        /// Also require the graph to be planar.
        #[arg(long)]
        planar: bool,
    },
    /// Run a suite and write one CSV row per (graph, algorithm) cell.
    Measure {
        #[arg(long)]
        suite: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Grid,
    ToroidalGrid,
    RandomPlanarTriangulation,
    ProjectiveCirculant,
    Depth2Tree,
    GadgetGraft,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    K5,
    Circulant,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    genus: Option<usize>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    delete_prob: f64,
    #[arg(long)]
    host_len: Option<usize>,
    #[arg(long)]
    gadgets: Option<usize>,
    #[arg(long)]
    spacing: Option<usize>,
    #[arg(long, value_enum, default_value = "k5")]
    gadget: GadgetKind,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    alg: Alg,
    #[arg(long)]
    graph: PathBuf,
    /// `linear:c` or `affine:c:b`.
    #[arg(long, default_value = "linear:1")]
    control_fn: ControlFunction,
    /// Declared uniformity radius of the sub-algorithm.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Declared ratio of the sub-algorithm.
    #[arg(long, default_value_t = 302)]
    alpha: u64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, value_enum, default_value = "views")]
    executor: ExecutorArg,
    /// Graphs up to this size get an exact optimum in the report.
    #[arg(long, default_value_t = 40)]
    oracle_limit: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExecutorArg {
    Views,
    Messages,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report_error("input", &e.render().to_string()),
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => report_error(e.category(), &e.to_string()),
    }
}

fn report_error(category: &str, message: &str) -> ExitCode {
    let body = json!({ "error": { "category": category, "message": message.trim() } });
    eprintln!("{body}");
    ExitCode::from(match category {
        "input" => 2,
        "resource" => 3,
        _ => 4,
    })
}

fn execute(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen(args) => {
            let spec = gen_spec(&args)?;
            let g = generate(&spec)?;
            let header = format!("# {}\n", serde_json::to_string(&spec)?);
            emit(args.output.as_deref(), &(header + &g.to_edge_list()))?;
        }
        Command::Run(args) => {
            let g = load_graph(&args.graph)?;
            let config = match args.alg {
                Alg::A => AlgorithmConfig::A {
                    executor: match args.executor {
                        ExecutorArg::Views => Executor::Views,
                        ExecutorArg::Messages => Executor::Messages,
                    },
                },
                Alg::B => AlgorithmConfig::B {
                    control: args.control_fn,
                    uniformity_radius: args.k,
                    alpha: args.alpha,
                    dimension: args.dim,
                },
            };
            let name = args.graph.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let report = make_report(GraphDescriptor::new(name, &g, None), &g, &config, args.oracle_limit)?;
            emit(args.output.as_deref(), &(report.to_json()? + "\n"))?;
        }
        Command::Oracle { graph, target } => {
            let g = load_graph(&graph)?;
            let target = match target {
                Some(path) => parse_set(&read_file(&path)?)?,
                None => g.vertices().collect(),
            };
            let set = minimum_dominating_set(&g, &target)?;
            let best = best_minimum_dominating_set(&g, &target)?;
            let body = json!({ "size": set.len(), "set": set, "best": best });
            println!("{body}");
        }
        Command::Verify { graph, set, planar } => {
            let g = load_graph(&graph)?;
            let set: VertexSet = parse_set(&read_file(&set)?)?;
            g.check_set(&set)?;
            let dominates = is_dominating_set(&g, &set);
            let undominated: VertexSet = g
                .vertices()
                .filter(|&v| !verify_domination(&g, &set, &VertexSet::from([v])))
                .collect();
            let planar_ok = planar.then(|| is_planar(&g));
            let body = json!({
                "dominates": dominates,
                "size": set.len(),
                "undominated": undominated,
                "planar": planar_ok,
            });
            println!("{body}");
            if !dominates || planar_ok == Some(false) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Measure { suite, output } => {
            let suite: Suite = serde_json::from_str(&read_file(&suite)?)?;
            let result = run_suite(&suite);
            let mut csv = Vec::new();
            write_csv(&result.rows, &mut csv)?;
            emit(output.as_deref(), &String::from_utf8(csv).expect("CSV writer emits UTF-8"))?;
            let body = json!({ "suite": suite.name, "cells": result.rows.len(), "failures": result.failures, "summary": result.summary });
            if output.is_some() {
                println!("{body}");
            } else {
                eprintln!("{body}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_graph(path: &Path) -> Result<Graph> {
    Ok(Graph::parse_edge_list(&read_file(path)?)?)
}

fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn gen_spec(a: &GenArgs) -> Result<GeneratorSpec> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Error::Usage(format!("this family needs --{flag}")));
    Ok(match a.family {
        Family::Path => GeneratorSpec::Path { n: need(a.n, "n")? },
        Family::Cycle => GeneratorSpec::Cycle { n: need(a.n, "n")? },
        Family::Grid => GeneratorSpec::Grid {
            width: need(a.width, "width")?,
            height: need(a.height, "height")?,
        },
        Family::ToroidalGrid => GeneratorSpec::ToroidalGrid {
            width: need(a.width, "width")?,
            height: need(a.height, "height")?,
        },
        Family::RandomPlanarTriangulation => GeneratorSpec::RandomPlanarTriangulation {
            n: need(a.n, "n")?,
            seed: a.seed,
            delete_prob: a.delete_prob,
        },
        Family::ProjectiveCirculant => GeneratorSpec::ProjectiveCirculant {
            genus: need(a.genus, "genus")?,
        },
        Family::Depth2Tree => GeneratorSpec::Depth2Tree {
            alpha: need(a.alpha, "alpha")?,
        },
        Family::GadgetGraft => GeneratorSpec::GadgetGraft {
            host_len: need(a.host_len, "host-len")?,
            gadgets: need(a.gadgets, "gadgets")?,
            spacing: need(a.spacing, "spacing")?,
            gadget: match a.gadget {
                GadgetKind::K5 => Gadget::K5,
                GadgetKind::Circulant => Gadget::Circulant { genus: a.genus.unwrap_or(1) },
            },
        },
    })
}
