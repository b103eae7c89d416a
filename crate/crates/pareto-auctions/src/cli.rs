//! Command-line front end.
//!
//! Reads an instance (JSON file via `--instance`, or stdin), runs one
//! computation, and writes the result (`--output` file, or stdout) as CSV,
//! JSON, or SVG.  Exit codes: `0` success, `2` "no such mechanism"
//! (an unattainable exact value, an out-of-range mixture target, or a gap
//! query answering with a certificate of infeasibility), `1` anything
//! malformed.
//!
//! `--plot` additionally renders the computed point set as a scatter/hull
//! SVG; it is best-effort and never affects the exit status or the
//! machine-readable outputs.

use std::fs;
use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dp::{achievable_values, ScalarObjective};
use crate::fptas::{eps_pareto, gap_query, GapAnswer};
use crate::generators::{
    gen_binary_partition, gen_exponential_pareto, gen_nonconvex, gen_partition_bicriterion,
    gen_partition_welfare, GeneratedInstance,
};
use crate::io::{
    build_curve, curve_csv, curve_json, curve_svg, emit_mechanisms, instance_json,
    mechanism_json, mechanism_list_json, mixture_json, read_instance_str,
};
use crate::matching::build_graph;
use crate::mechanisms::{lambda_optimal, myerson, randomized_tradeoff, vickrey};
use crate::model::{Instance, Mechanism, ObjectivePoint};
use crate::oracle::{count_feasible, enumerate_feasible, oracle_pareto};
use crate::rational::{format_rat, parse_rat};
use crate::{Error, Result};

/// Exit code for "the requested mechanism does not exist".
pub const EXIT_NO_MECHANISM: i32 = 2;

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

/// Parsed invocation: one command plus input/output plumbing.
#[derive(Debug, Parser)]
#[command(
    name = "pareto-auctions",
    version,
    about = "Exact and approximate revenue/welfare Pareto curves for \
             deterministic single-item auctions"
)]
pub struct RunConfig {
    /// Instance JSON file; reads stdin when omitted (not used by `gen`).
    #[arg(long, global = true, value_name = "FILE")]
    pub instance: Option<PathBuf>,

    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Output format; defaults to JSON for single mechanisms and CSV for
    /// curves.  Text outputs (`enumerate --count-only`, `graph`, `gen`)
    /// ignore it.
    #[arg(long, global = true, value_enum, value_name = "FMT")]
    pub format: Option<OutputFormat>,

    /// Additionally render the computed points as an SVG scatter with the
    /// upper hull overlaid (best-effort; never changes the exit status).
    #[arg(long, global = true, value_name = "SVG")]
    pub plot: Option<PathBuf>,

    /// Write every mechanism referenced by id as `<id>.json` into this
    /// directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub emit_mechanisms: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Welfare,
    Revenue,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sell to the highest bidder at the second-highest value
    /// (welfare-optimal).
    Vickrey,
    /// Revenue-optimal deterministic auction (ironed virtual values).
    Myerson,
    /// Maximize revenue + λ·welfare over deterministic mechanisms.
    Lambda {
        /// Non-negative rational weight on welfare.
        #[arg(long)]
        lambda: String,
    },
    /// Revenue-best randomized mixture with the given expected welfare.
    Mix {
        /// Rational welfare target on the upper hull.
        #[arg(long = "target-welfare")]
        target_welfare: String,
    },
    /// Find a two-bidder mechanism whose objective equals a value exactly.
    Exact {
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        /// Rational value to attain exactly.
        #[arg(long)]
        value: String,
    },
    /// Find a mechanism dominating the bound (w, r), or certify that no
    /// mechanism reaches (1+δ)·(w, r) (two bidders).
    Gap {
        /// Welfare bound (positive rational).
        #[arg(long)]
        w: String,
        /// Revenue bound (positive rational).
        #[arg(long)]
        r: String,
        /// Slack δ (positive rational).
        #[arg(long)]
        delta: String,
    },
    /// ε-approximate Pareto curve (two bidders, polynomial time).
    Pareto {
        /// Approximation parameter ε (positive rational).
        #[arg(long)]
        eps: String,
    },
    /// Exact Pareto curve by exhaustive search (small instances only).
    OraclePareto,
    /// List every feasible mechanism, or just count them.
    Enumerate {
        #[arg(long)]
        count_only: bool,
    },
    /// Emit a named hard instance as instance JSON.
    Gen {
        /// Also write the family's target values and metadata as JSON.
        #[arg(long, value_name = "FILE")]
        targets: Option<PathBuf>,
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Export the matching graph of a binary instance as a tab-separated
    /// edge list.
    Graph,
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Two bidders whose exact Pareto curve is non-convex.
    Nonconvex,
    /// k-bidder family whose welfare target is reachable iff the integers
    /// split into two halves of equal sum.
    PartitionWelfare {
        /// Descending positive integers (the multiset to split).
        #[arg(required = true)]
        elements: Vec<i64>,
    },
    /// Two-bidder family whose target point is dominated iff the rationals
    /// split into two halves of equal sum.
    PartitionBicriterion {
        /// Positive rationals (the multiset to split).
        #[arg(required = true)]
        elements: Vec<String>,
        /// Perturbation budget (positive rational ≤ 1/100).
        #[arg(long)]
        eps: Option<String>,
    },
    /// Two bidders with 2^k distinct points on the exact Pareto curve.
    Exponential {
        /// Number of trade-off positions (2 ≤ k ≤ 16).
        k: usize,
    },
    /// One binary bidder per element; the welfare target is reachable iff
    /// the rationals split into two halves of equal sum.
    BinaryPartition {
        /// Positive rationals (the multiset to split).
        #[arg(required = true)]
        elements: Vec<String>,
    },
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

/// Runs one parsed invocation and returns the process exit code.  `Err`
/// means "input error" and maps to exit 1 in `main`.
pub fn run(config: RunConfig) -> Result<i32> {
    match &config.command {
        Command::Vickrey => {
            let inst = load_instance(&config)?;
            finish_mechanism(&config, vickrey(&inst)?)
        }
        Command::Myerson => {
            let inst = load_instance(&config)?;
            finish_mechanism(&config, myerson(&inst)?)
        }
        Command::Lambda { lambda } => {
            let inst = load_instance(&config)?;
            let l = parse_rat(lambda)?;
            finish_mechanism(&config, lambda_optimal(&inst, &l)?)
        }
        Command::Mix { target_welfare } => {
            let inst = load_instance(&config)?;
            let target = parse_rat(target_welfare)?;
            match randomized_tradeoff(&inst, &target) {
                Ok(mixture) => {
                    let payload = match output_format(&config, OutputFormat::Json) {
                        OutputFormat::Json => mixture_json(&mixture),
                        OutputFormat::Csv | OutputFormat::Svg => {
                            let curve =
                                build_curve(vec![(mixture.objectives(), None)]);
                            if output_format(&config, OutputFormat::Json) == OutputFormat::Svg {
                                curve_svg(&curve)
                            } else {
                                curve_csv(&curve)
                            }
                        }
                    };
                    maybe_plot(&config, &build_curve(vec![(mixture.objectives(), None)]));
                    write_output(&config, &payload)?;
                    Ok(0)
                }
                Err(Error::TargetOutOfRange { target, lo, hi }) => {
                    eprintln!(
                        "no mixture attains expected welfare {target}; \
                         the reachable range is [{lo}, {hi}]"
                    );
                    Ok(EXIT_NO_MECHANISM)
                }
                Err(e) => Err(e),
            }
        }
        Command::Exact { objective, value } => {
            let inst = load_instance(&config)?;
            let v = parse_rat(value)?;
            let obj = match objective {
                ObjectiveArg::Welfare => ScalarObjective::Welfare,
                ObjectiveArg::Revenue => ScalarObjective::Revenue,
            };
            let set = achievable_values(&inst, obj, None)?;
            match set.witness(&v)? {
                Some(mech) => finish_mechanism(&config, mech),
                None => {
                    eprintln!(
                        "no feasible mechanism has {} exactly {}",
                        match obj {
                            ScalarObjective::Welfare => "welfare",
                            ScalarObjective::Revenue => "revenue",
                        },
                        format_rat(&v)
                    );
                    Ok(EXIT_NO_MECHANISM)
                }
            }
        }
        Command::Gap { w, r, delta } => {
            let inst = load_instance(&config)?;
            let bound = ObjectivePoint::new(parse_rat(w)?, parse_rat(r)?);
            let d = parse_rat(delta)?;
            match gap_query(&inst, &bound, &d)? {
                GapAnswer::Mechanism(mech) => finish_mechanism(&config, *mech),
                GapAnswer::NoCertificate => {
                    eprintln!(
                        "certified: no feasible mechanism dominates \
                         (1+{})·({}, {})",
                        format_rat(&d),
                        format_rat(&bound.welfare),
                        format_rat(&bound.revenue)
                    );
                    Ok(EXIT_NO_MECHANISM)
                }
            }
        }
        Command::Pareto { eps } => {
            let inst = load_instance(&config)?;
            let e = parse_rat(eps)?;
            let entries = eps_pareto(&inst, &e)?
                .into_iter()
                .map(|(mech, point)| (point, Some(mech)))
                .collect();
            finish_curve(&config, entries)
        }
        Command::OraclePareto => {
            let inst = load_instance(&config)?;
            let entries = oracle_pareto(&inst)?
                .into_iter()
                .map(|(point, mech)| (point, Some(mech)))
                .collect();
            finish_curve(&config, entries)
        }
        Command::Enumerate { count_only } => {
            let inst = load_instance(&config)?;
            if *count_only {
                let n = count_feasible(&inst)?;
                write_output(&config, &format!("{n}\n"))?;
                return Ok(0);
            }
            let mechs: Vec<Mechanism> = enumerate_feasible(&inst)?
                .into_iter()
                .map(|a| Mechanism::from_allocation(a, &inst))
                .collect::<Result<_>>()?;
            write_output(&config, &mechanism_list_json(&mechs))?;
            Ok(0)
        }
        Command::Gen { targets, family } => {
            let generated = generate(family)?;
            if let Some(path) = targets {
                fs::write(path, targets_json(&generated))?;
            }
            write_output(&config, &instance_json(&generated.instance))?;
            Ok(0)
        }
        Command::Graph => {
            let inst = load_instance(&config)?;
            let graph = build_graph(&inst)?;
            write_output(&config, &graph.export_edge_list())?;
            Ok(0)
        }
    }
}

fn generate(family: &GenFamily) -> Result<GeneratedInstance> {
    match family {
        GenFamily::Nonconvex => Ok(gen_nonconvex()),
        GenFamily::PartitionWelfare { elements } => gen_partition_welfare(elements),
        GenFamily::PartitionBicriterion { elements, eps } => {
            let a: Vec<_> = elements.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
            let e = eps.as_deref().map(parse_rat).transpose()?;
            gen_partition_bicriterion(&a, e.as_ref())
        }
        GenFamily::Exponential { k } => gen_exponential_pareto(*k),
        GenFamily::BinaryPartition { elements } => {
            let b: Vec<_> = elements.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
            gen_binary_partition(&b)
        }
    }
}

#[derive(Serialize)]
struct TargetsJson<'a> {
    targets: std::collections::BTreeMap<&'a str, String>,
    metadata: &'a std::collections::BTreeMap<String, String>,
}

fn targets_json(g: &GeneratedInstance) -> String {
    let doc = TargetsJson {
        targets: g
            .targets
            .iter()
            .map(|(k, v)| (k.as_str(), format_rat(v)))
            .collect(),
        metadata: &g.metadata,
    };
    serde_json::to_string_pretty(&doc).expect("targets serialize")
}

// ---------------------------------------------------------------------------
// Plumbing
// ---------------------------------------------------------------------------

fn load_instance(config: &RunConfig) -> Result<Instance> {
    let text = match &config.instance {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    read_instance_str(&text)
}

fn write_output(config: &RunConfig, payload: &str) -> Result<()> {
    match &config.output {
        Some(path) => fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

fn output_format(config: &RunConfig, default: OutputFormat) -> OutputFormat {
    config.format.unwrap_or(default)
}

/// Best-effort `--plot` rendering; failures warn on stderr only.
fn maybe_plot(config: &RunConfig, curve: &crate::io::Curve) {
    if let Some(path) = &config.plot {
        if let Err(e) = fs::write(path, curve_svg(curve)) {
            eprintln!("warning: could not write plot {}: {e}", path.display());
        }
    }
}

fn finish_mechanism(config: &RunConfig, mech: Mechanism) -> Result<i32> {
    let curve = build_curve(vec![(mech.objectives.clone(), Some(mech.clone()))]);
    let payload = match output_format(config, OutputFormat::Json) {
        OutputFormat::Json => mechanism_json(&mech),
        OutputFormat::Csv => curve_csv(&curve),
        OutputFormat::Svg => curve_svg(&curve),
    };
    maybe_plot(config, &curve);
    if let Some(dir) = &config.emit_mechanisms {
        emit_mechanisms(dir, &curve.mechanisms)?;
    }
    write_output(config, &payload)?;
    Ok(0)
}

fn finish_curve(
    config: &RunConfig,
    entries: Vec<(ObjectivePoint, Option<Mechanism>)>,
) -> Result<i32> {
    let curve = build_curve(entries);
    let payload = match output_format(config, OutputFormat::Csv) {
        OutputFormat::Csv => curve_csv(&curve),
        OutputFormat::Json => curve_json(&curve),
        OutputFormat::Svg => curve_svg(&curve),
    };
    maybe_plot(config, &curve);
    if let Some(dir) = &config.emit_mechanisms {
        emit_mechanisms(dir, &curve.mechanisms)?;
    }
    write_output(config, &payload)?;
    Ok(0)
}
