//! Command-line front end. Every command reads and writes JSON; the exit
//! status follows a fixed table:
//!
//! | code | meaning                                        |
//! |------|------------------------------------------------|
//! | 0    | found / holds / campaign passed                |
//! | 1    | not found / violated (a witness is included)   |
//! | 2    | inconclusive (search budget exhausted)         |
//! | 3    | usage or input format error                    |

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use stmatch::conditions::{
    check_condition, check_double_sided, f_report, g_report, is_redundant, threshold_main,
    threshold_summary, ThresholdParams,
};
use stmatch::gadgets::tight_family;
use stmatch::harness::{
    property_suite, verify_prop_counter, verify_star_cover_theorem, verify_theorem_main,
    verify_tree_lemma, CampaignReport, Dedup, EnumerationBounds, PropertyConfig,
    TheoremMainConfig, DEFAULT_BUDGET,
};
use stmatch::solver::{find_k_star_covering, find_st_matching, verify_st_matching, StSearch};
use stmatch::{format_rational, parse_rational, BipartiteGraph, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "stmatch", version, about = "Neighbourhood conditions, (s,t)-matchings and k-star coverings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph JSON file; standard input when absent or "-".
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, default_value_t = 5)]
    u_max: usize,
    #[arg(long, default_value_t = 8)]
    v_max: usize,
    /// Left degree cap for enumeration (defaults per command).
    #[arg(long)]
    d_max: Option<usize>,
    #[arg(long)]
    total_max: Option<usize>,
    /// Enumerate every labelled graph instead of symmetry representatives.
    #[arg(long)]
    labelled: bool,
    #[arg(long)]
    connected: bool,
    /// Rayon worker threads; 0 picks the default.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl BoundsArgs {
    fn bounds(&self, default_degree: usize) -> EnumerationBounds {
        let mut bounds = EnumerationBounds::up_to(self.u_max, self.v_max, self.d_max.unwrap_or(default_degree));
        if let Some(total) = self.total_max {
            bounds = bounds.with_total_max(total);
        }
        if self.labelled {
            bounds = bounds.with_dedup(Dedup::None);
        }
        if self.connected {
            bounds = bounds.connected();
        }
        bounds
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check |Γ(S)| ≥ α|S| for every left set S.
    Check {
        #[command(flatten)]
        input: GraphInput,
        /// Defaults to the gadget's predicted ratio when the input carries one.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Check the condition on both sides.
    DoubleCheck {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        alpha: String,
    },
    /// The matching threshold for (h, k, d), or its limit when --d is absent.
    Threshold {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: Option<u64>,
    },
    /// Search for an (s, t)-matching.
    Solve {
        #[command(flatten)]
        input: GraphInput,
        /// Defaults to h from gadget metadata.
        #[arg(long)]
        s: Option<usize>,
        /// Defaults to hk from gadget metadata.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build a k-star covering.
    StarCover {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
    },
    /// The redundancy measures f and g of one edge.
    Fg {
        #[command(flatten)]
        input: GraphInput,
        /// Edge as "u,v".
        #[arg(long)]
        edge: String,
        #[arg(long)]
        alpha: String,
    },
    /// Emit the tight-family graph G_n with metadata.
    GenTight {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Main-theorem campaign over enumerated graphs.
    VerifyMain {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
        /// Override the threshold (self-tests).
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Extra graph JSON files checked before the enumeration.
        #[arg(long)]
        inject: Vec<PathBuf>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Tight-family campaign for n = 1..=n-max.
    VerifyCounter {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Structural tree-lemma campaign.
    VerifyTree {
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Star-covering equivalence campaign.
    VerifyStars {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Seeded randomized property suite.
    Props {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        union_triples: usize,
        #[arg(long, default_value_t = 500)]
        oracle: usize,
        #[arg(long, default_value_t = 300)]
        redundancy_graphs: usize,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

/// Exit status plus what goes to standard output.
#[derive(Debug, Clone, PartialEq)]
pub struct Response {
    pub code: i32,
    pub stdout: String,
}

impl Response {
    fn json(code: i32, value: Value) -> Self {
        let stdout = serde_json::to_string_pretty(&value).expect("JSON value serializes");
        Response { code, stdout }
    }

    /// The parsed JSON output, if it is JSON.
    pub fn value(&self) -> Option<Value> {
        serde_json::from_str(&self.stdout).ok()
    }
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<(i32, Value), UsageError>;

/// Parses `argv` (including the program name) and runs the command, reading
/// graphs from `stdin` when no file is given.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read) -> Response
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Response {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                },
                _ => Response::json(EXIT_USAGE, json!({ "error": e.to_string() })),
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok((code, value)) => Response::json(code, value),
        Err(UsageError(message)) => Response::json(EXIT_USAGE, json!({ "error": message })),
    }
}

/// Graph plus the raw document, which may carry gadget metadata.
fn read_graph(input: &GraphInput, stdin: &mut dyn Read) -> Result<(BipartiteGraph, Value), UsageError> {
    let text = match &input.graph {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            text
        }
    };
    let document: Value = serde_json::from_str(&text)?;
    let graph = BipartiteGraph::from_json_str(&text)?;
    Ok((graph, document))
}

fn alpha_arg(text: &str) -> Result<Rational, UsageError> {
    parse_rational::<i64>(text).map_err(UsageError::from)
}

fn meta_usize(document: &Value, key: &str) -> Option<usize> {
    document["meta"]["spec"][key].as_u64().map(|x| x as usize)
}

fn campaign(report: CampaignReport) -> Outcome {
    let code = if !report.passed() {
        EXIT_NEGATIVE
    } else if !report.conclusive() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok((code, serde_json::to_value(report)?))
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Check { input, alpha } => {
            let (graph, document) = read_graph(&input, stdin)?;
            let alpha = match alpha {
                Some(text) => alpha_arg(&text)?,
                None => match document["meta"]["predicted_ratio"].as_str() {
                    Some(text) => alpha_arg(text)?,
                    None => return Err(UsageError("--alpha is required".into())),
                },
            };
            let outcome = check_condition(&graph, &alpha)?;
            let code = if outcome.holds() { EXIT_OK } else { EXIT_NEGATIVE };
            let mut value = serde_json::to_value(&outcome)?;
            value["alpha"] = json!(format_rational(&alpha));
            Ok((code, value))
        }
        Command::DoubleCheck { input, alpha } => {
            let (graph, _) = read_graph(&input, stdin)?;
            let alpha = alpha_arg(&alpha)?;
            let outcome = check_double_sided(&graph, &alpha)?;
            let code = if outcome.holds() { EXIT_OK } else { EXIT_NEGATIVE };
            let mut value = serde_json::to_value(&outcome)?;
            value["alpha"] = json!(format_rational(&alpha));
            Ok((code, value))
        }
        Command::Threshold { h, k, d } => {
            let value = match d {
                Some(d) => threshold_main::<i64>(ThresholdParams::new(h, k, d)?)?,
                None => threshold_summary::<i64>(h, k)?,
            };
            Ok((
                EXIT_OK,
                json!({ "h": h, "k": k, "d": d, "threshold": format_rational(&value) }),
            ))
        }
        Command::Solve { input, s, t, budget } => {
            let (graph, document) = read_graph(&input, stdin)?;
            let h = meta_usize(&document, "h");
            let s = s.or(h).ok_or_else(|| UsageError("--s is required".into()))?;
            let t = t
                .or_else(|| Some(h? * meta_usize(&document, "k")?))
                .ok_or_else(|| UsageError("--t is required".into()))?;
            let search = find_st_matching(&graph, s, t, budget)?;
            let code = match &search {
                StSearch::Found { cover, .. } => {
                    verify_st_matching(&graph, s, t, &cover.edges)
                        .map_err(|e| UsageError(format!("internal: solver output rejected: {e}")))?;
                    EXIT_OK
                }
                StSearch::NotFound { .. } => EXIT_NEGATIVE,
                StSearch::BudgetExceeded { .. } => EXIT_INCONCLUSIVE,
            };
            let mut value = serde_json::to_value(&search)?;
            value["s"] = json!(s);
            value["t"] = json!(t);
            Ok((code, value))
        }
        Command::StarCover { input, k } => {
            let (graph, _) = read_graph(&input, stdin)?;
            match find_k_star_covering(&graph, k)? {
                Some(cover) => Ok((EXIT_OK, json!({ "status": "found", "k": k, "cover": cover }))),
                None => {
                    // the covering exists iff the double-sided 1/k condition holds
                    let alpha = Rational::new(1, k as i64);
                    let violation = check_double_sided(&graph, &alpha)?;
                    Ok((
                        EXIT_NEGATIVE,
                        json!({ "status": "not_found", "k": k, "violation": violation }),
                    ))
                }
            }
        }
        Command::Fg { input, edge, alpha } => {
            let (graph, _) = read_graph(&input, stdin)?;
            let alpha = alpha_arg(&alpha)?;
            let (u, v) = edge
                .split_once(',')
                .and_then(|(u, v)| Some((u.trim().parse().ok()?, v.trim().parse().ok()?)))
                .ok_or_else(|| UsageError(format!("--edge expects \"u,v\", got {edge:?}")))?;
            let f = f_report(&graph, u, v, &alpha)?;
            let (g, g_witness) = g_report(&graph, u, v, &alpha)?;
            let redundant = if check_condition(&graph, &alpha)?.holds() {
                Some(is_redundant(&graph, u, v, &alpha)?)
            } else {
                None
            };
            Ok((
                EXIT_OK,
                json!({
                    "edge": [u, v],
                    "alpha": format_rational(&alpha),
                    "f": f.minimum.map(|m| format_rational(&m)),
                    "f_witness": f.witness,
                    "g": format_rational(&g),
                    "g_witness": g_witness,
                    "redundant": redundant,
                }),
            ))
        }
        Command::GenTight { h, k, d, n } => Ok((EXIT_OK, tight_family(h, k, d, n)?.to_json_with_meta())),
        Command::VerifyMain {
            h,
            k,
            d,
            alpha,
            budget,
            inject,
            bounds,
        } => {
            let mut config = TheoremMainConfig::new(h, k, d, bounds.bounds(d as usize));
            config.alpha = alpha.as_deref().map(alpha_arg).transpose()?;
            config.budget = budget;
            config.workers = bounds.workers;
            for path in &inject {
                let input = GraphInput { graph: Some(path.clone()) };
                config.inject.push(read_graph(&input, stdin)?.0);
            }
            campaign(verify_theorem_main(&config)?)
        }
        Command::VerifyCounter {
            h,
            k,
            d,
            n_max,
            budget,
            workers,
        } => campaign(verify_prop_counter(h, k, d, 1..=n_max, budget, workers)?),
        Command::VerifyTree { alpha, bounds } => {
            let alpha = alpha_arg(&alpha)?;
            campaign(verify_tree_lemma(&alpha, &bounds.bounds(4), bounds.workers)?)
        }
        Command::VerifyStars { k, bounds } => {
            campaign(verify_star_cover_theorem(k, &bounds.bounds(bounds.v_max), bounds.workers)?)
        }
        Command::Props {
            seed,
            union_triples,
            oracle,
            redundancy_graphs,
            workers,
        } => {
            let config = PropertyConfig {
                seed,
                union_triples,
                oracle_graphs: oracle,
                redundancy_graphs,
                workers,
                ..PropertyConfig::default()
            };
            campaign(property_suite(&config)?)
        }
    }
}
