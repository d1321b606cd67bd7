//! `coolcodes`: construct, verify, encode/decode, bound and simulate cooling
//! codes from the command line. Errors print as one JSON object per line on
//! stderr; exit code 0 on success, 1 on runtime failure, 2 on usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cooling_codes::construct::load_code;
use cooling_codes::domination::{self, DominationGraph};
use cooling_codes::model::{
    bounds, concatenation_sizes, save_code, sunflower_size, verify_code, CheckResult, HotSet,
    VerifyMode, VerifyOptions, VerifyReport,
};
use cooling_codes::sim;

#[derive(Parser)]
#[command(name = "coolcodes", version, about = "Cooling codes for on-chip buses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction and write its code file.
    Construct {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Encode a message under a hot set; prints the codeword's wire list.
    Encode {
        code: String,
        /// Codeset (message) index.
        #[arg(long)]
        codeset: u128,
        /// Comma-separated hot wires, e.g. 1,5,9.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "")]
        hot: Vec<String>,
    },
    /// Decode a codeword; prints the codeset index it belongs to.
    Decode {
        code: String,
        /// Comma-separated lit wires.
        #[arg(long, value_delimiter = ',')]
        word: Vec<String>,
    },
    /// Check weight bounds, codeset disjointness and the cooling property.
    Verify {
        code: String,
        #[arg(long, conflicts_with = "sampled")]
        exhaustive: bool,
        /// Number of sampled (hot set, codeset) trials.
        #[arg(long)]
        sampled: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Budget for exhaustive mode, in elementary avoid-checks.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the four size bounds for (n, t, w).
    Bounds {
        n: usize,
        t: usize,
        w: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the size formulas of earlier constructions for comparison.
    Compare {
        #[command(subcommand)]
        family: CompareFamily,
    },
    /// Run a batch bus-transmission simulation from a JSON config file.
    Simulate {
        config: String,
        #[arg(long)]
        json: bool,
    },
    /// Synthesize a domination mapping and write its JSON file.
    SynthMapping {
        #[arg(long)]
        w: usize,
        /// Groups as OWNER-separated wire lists, e.g. "0|1,2" for {0},{1,2}.
        #[arg(long)]
        groups: Option<String>,
        /// Input length for automatic balanced-partition search.
        #[arg(long)]
        m: Option<usize>,
        /// Output length for automatic balanced-partition search.
        #[arg(long)]
        n: Option<usize>,
        #[arg(short, long)]
        output: String,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Reed-Solomon grid code: (qw, q-1, w)-CPC of size q^(w-1).
    #[command(name = "mds_cpc")]
    MdsCpc(MdsArgs),
    /// Grid code from an arbitrary generator matrix (desk scale).
    #[command(name = "linear_cpc")]
    LinearCpc(LinearArgs),
    /// Error-correcting grid code: (qw, q-1, w, e)-CPECC of size q^(w-e-1).
    Cpecc(CpeccArgs),
    /// Blow-up of an inner code: (nq, tq, w)-CPC of size m q^(w-1).
    #[command(name = "recursive_cpc")]
    RecursiveCpc(RecursiveArgs),
    /// Union of blow-ups of trivial inners: (nq, tq, w)-LPC.
    #[command(name = "lpc_union")]
    LpcUnion(LpcUnionArgs),
    /// Single-codeset code of all w-subsets of n wires.
    Trivial(TrivialArgs),
    /// Line-partition cooling code on n wires avoiding t hot wires.
    #[command(name = "spread_cooling")]
    SpreadCooling(SpreadArgs),
    /// Spread cooling code through product domination mappings:
    /// (5w, t, w)-LPC.
    Construction4(C4Args),
}

#[derive(Args)]
struct MdsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    w: usize,
    #[arg(short, long)]
    output: String,
}

#[derive(Args)]
struct LinearArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    w: usize,
    /// Path to a JSON row-major integer matrix, e.g. `[[1,0],[0,1]]`.
    #[arg(long)]
    generator: String,
    #[arg(short, long)]
    output: String,
}

#[derive(Args)]
struct CpeccArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    w: usize,
    #[arg(long)]
    e: usize,
    #[arg(short, long)]
    output: String,
}

#[derive(Args)]
struct RecursiveArgs {
    #[arg(long)]
    q: u64,
    /// Code file of the inner code (explicit codesets).
    #[arg(long)]
    inner: String,
    #[arg(short, long)]
    output: String,
}

#[derive(Args)]
struct LpcUnionArgs {
    /// Inner length.
    #[arg(long)]
    n: usize,
    /// Inner hot-set size.
    #[arg(long)]
    t: usize,
    #[arg(long)]
    w: usize,
    #[arg(long)]
    q: u64,
    #[arg(short, long)]
    output: String,
}

#[derive(Args)]
struct TrivialArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    w: usize,
    #[arg(short, long)]
    output: String,
}

#[derive(Args)]
struct SpreadArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(short, long)]
    output: String,
}

#[derive(Args)]
struct C4Args {
    #[arg(long)]
    w: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    alpha: usize,
    #[arg(long)]
    beta: usize,
    #[arg(short, long)]
    output: String,
}

#[derive(Subcommand)]
enum CompareFamily {
    /// Concatenation construction: (ms, t, mw')-LPC sizes.
    Concat {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, name = "wprime")]
        wprime: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        json: bool,
    },
    /// Sunflower construction: (n, t, w)-LPC of size 2^(n-t-r).
    Sunflower {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{}", serde_json::json!({ "error": err.to_string() }));
            ExitCode::from(1)
        }
    }
}

fn parse_wires(items: &[String]) -> anyhow::Result<Vec<usize>> {
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| Ok(s.trim().parse::<usize>()?))
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Construct { construction } => {
            let (code, output, warnings) = match construction {
                Construction::MdsCpc(a) => (
                    cooling_codes::mds::build_rs_cpc(a.q, a.w)?.into_code()?,
                    a.output,
                    Vec::new(),
                ),
                Construction::LinearCpc(a) => {
                    let text = std::fs::read_to_string(&a.generator)?;
                    let rows: Vec<Vec<u64>> = serde_json::from_str(&text)?;
                    (
                        cooling_codes::mds::build_linear_cpc(a.q, &rows, a.w)?.into_code()?,
                        a.output,
                        Vec::new(),
                    )
                }
                Construction::Cpecc(a) => (
                    cooling_codes::cpecc::build_cpecc(a.q, a.w, a.e)?.into_code()?,
                    a.output,
                    Vec::new(),
                ),
                Construction::RecursiveCpc(a) => {
                    let inner = load_code(&a.inner)?;
                    let built = cooling_codes::recursive::build_recursive(a.q, &inner)?;
                    let warnings = built.warnings().to_vec();
                    (built.into_code()?, a.output, warnings)
                }
                Construction::LpcUnion(a) => (
                    cooling_codes::recursive::build_lpc_union(a.n, a.t, a.w, a.q)?,
                    a.output,
                    Vec::new(),
                ),
                Construction::Trivial(a) => (
                    cooling_codes::recursive::build_trivial_inner(a.n, a.w)?,
                    a.output,
                    Vec::new(),
                ),
                Construction::SpreadCooling(a) => (
                    cooling_codes::spread::build_spread_cooling(a.n, a.t)?.into_code()?,
                    a.output,
                    Vec::new(),
                ),
                Construction::Construction4(a) => (
                    cooling_codes::spread::build_construction4(a.w, a.t, a.alpha, a.beta)?,
                    a.output,
                    Vec::new(),
                ),
            };
            for warning in warnings {
                eprintln!("warning: {warning}");
            }
            save_code(&code, &output)?;
            println!(
                "kind={} n={} t={} w={} M={}",
                code.kind.name(),
                code.n,
                code.t,
                code.w,
                code.num_codesets()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode { code, codeset, hot } => {
            let code = load_code(&code)?;
            let hot = HotSet::new(code.n, parse_wires(&hot)?)?;
            let word = code.encode(codeset, &hot)?;
            let wires: Vec<String> = word.support().iter().map(usize::to_string).collect();
            println!("{}", wires.join(","));
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode { code, word } => {
            let code = load_code(&code)?;
            let received = cooling_codes::model::Codeword::new(code.n, parse_wires(&word)?)?;
            println!("{}", code.decode(&received)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            code,
            exhaustive,
            sampled,
            seed,
            budget,
            json,
        } => {
            let code = load_code(&code)?;
            let mode = match (exhaustive, sampled) {
                (false, Some(trials)) => VerifyMode::Sampled { trials, seed },
                // exhaustive is the default mode
                _ => VerifyMode::Exhaustive,
            };
            let report = verify_code(&code, mode, &VerifyOptions { budget })?;
            print_verify_report(&report, json)?;
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bounds { n, t, w, json } => {
            let b = bounds(n, t, w)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&b)?);
            } else {
                println!("lpc_count_bound  = {}", b.lpc_count_bound);
                println!("cpc_count_bound  = {}", b.cpc_count_bound);
                println!("cpc_turan_bound  = {}", b.cpc_turan_bound);
                println!("lpc_turan_bound  = {}", b.lpc_turan_bound);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { family } => {
            match family {
                CompareFamily::Concat {
                    m,
                    s,
                    wprime,
                    q,
                    t,
                    json,
                } => {
                    let report = concatenation_sizes(m, s, wprime, q, t);
                    if json {
                        println!("{}", serde_json::to_string_pretty(&report)?);
                    } else {
                        println!(
                            "concatenation target: ({}, {}, {})-LPC",
                            report.n, report.t, report.w
                        );
                        println!("  t+1 <= m/2 variant:    {}", show(&report.half_m_variant));
                        println!(
                            "  t+1 <= m <= q+1 variant: {}",
                            show(&report.up_to_q_plus_1_variant)
                        );
                    }
                }
                CompareFamily::Sunflower {
                    n,
                    t,
                    w,
                    s,
                    r,
                    json,
                } => {
                    let report = sunflower_size(n, t, w, s, r);
                    if json {
                        println!("{}", serde_json::to_string_pretty(&report)?);
                    } else {
                        println!(
                            "sunflower target: ({}, {}, {})-LPC",
                            report.n, report.t, report.w
                        );
                        println!("  size: {}", show(&report.result));
                        println!("  caller asserts: {}", report.asserted_by_caller);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { config, json } => {
            let text = std::fs::read_to_string(&config)?;
            let config: sim::SimConfig = serde_json::from_str(&text)?;
            let report = sim::simulate(&config)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("# thermal model: {}", report.thermal_model);
                println!("steps                = {}", report.steps);
                println!("max step weight      = {}", report.max_step_weight);
                println!("min step weight      = {}", report.min_step_weight);
                println!("hot-wire violations  = {}", report.hot_wire_violations);
                println!("decode success rate  = {}", report.decode_success_rate);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SynthMapping {
            w,
            groups,
            m,
            n,
            output,
        } => {
            let (mapping, chosen) = match (groups, m, n) {
                (Some(cells), _, _) => {
                    let groups: Vec<Vec<usize>> = cells
                        .split('|')
                        .map(|cell| {
                            cell.split(',')
                                .filter(|s| !s.trim().is_empty())
                                .map(|s| Ok(s.trim().parse::<usize>()?))
                                .collect::<anyhow::Result<Vec<usize>>>()
                        })
                        .collect::<anyhow::Result<Vec<_>>>()?;
                    let graph = DominationGraph::new(groups.clone())?;
                    (domination::synthesize_mapping(&graph, w)?, groups)
                }
                (None, Some(m), Some(n)) => domination::synthesize_auto(m, n, w)?,
                _ => anyhow::bail!("pass either --groups or both --m and --n"),
            };
            let report = domination::verify_mapping(&mapping)?;
            if !report.passed() {
                anyhow::bail!("synthesized mapping failed verification: {:?}", report);
            }
            std::fs::write(
                &output,
                serde_json::to_string_pretty(&mapping.to_schema())?,
            )?;
            println!(
                "({}, {}, {})-domination mapping, partition {:?}",
                mapping.m(),
                mapping.n(),
                mapping.w(),
                chosen
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn show(a: &cooling_codes::model::Applicability) -> String {
    match a {
        cooling_codes::model::Applicability::Applicable { size } => size.to_string(),
        cooling_codes::model::Applicability::NotApplicable { reason } => {
            format!("n/a ({reason})")
        }
    }
}

fn print_verify_report(report: &VerifyReport, json: bool) -> anyhow::Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
        return Ok(());
    }
    let show = |c: &CheckResult| match c {
        CheckResult::Pass { checked } => format!("PASS ({checked} checks)"),
        CheckResult::Fail { detail } => format!("FAIL {detail:?}"),
    };
    println!("mode          : {}", report.mode);
    println!("codesets      : {}", report.codesets_checked);
    println!("weight bounds : {}", show(&report.weight));
    println!("disjointness  : {}", show(&report.disjointness));
    println!("cooling       : {}", show(&report.cooling));
    println!("result        : {}", if report.passed() { "PASS" } else { "FAIL" });
    Ok(())
}
