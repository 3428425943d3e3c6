use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zeroseq::decomp::{decompose, LayeredInstance};
use zeroseq::extremal::{
    enumerate_block_family, enumerate_gap_family, is_block_family_member, is_gap_family_member,
};
use zeroseq::numtheory::{legendre_zs_blocks, liouville_ap_zs, liouville_zs_blocks, ZsReport};
use zeroseq::oracle::{
    default_workers, verify_ap_proposition, verify_block_threshold, verify_decomposition,
    verify_gap_threshold, DEFAULT_BUDGET,
};
use zeroseq::search::{find_zs_ap, find_zs_gap_block, scan_bounded_block};
use zeroseq::thresholds::{block_threshold, gap_threshold, residue_s, GapParams};
use zeroseq::{parse_seq, BlockWitness, SignedSeq};

mod render;

const SCHEMA: &str = "zeroseq/1";

#[derive(Parser)]
#[command(
    name = "zeroseq",
    version,
    about = "Zero-sum and bounded-weight blocks in ±1 sequences"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add elapsed wall time to the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Smallest length forcing a k-block of weight at most t whenever the
    /// total is at most q in absolute value. With --d, the length forcing a
    /// zero-sum block with gaps at most d whenever |total| <= (d-1)n/(d+1).
    Threshold {
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 0, conflicts_with = "d")]
        t: i64,
        #[arg(long, default_value_t = 0, conflicts_with = "d")]
        q: i64,
        #[arg(long)]
        d: Option<i64>,
    },
    /// Leftmost k-block of weight at most t in absolute value.
    FindBlock {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        t: i64,
        /// Also report whether the sequence is long and balanced enough for a
        /// block to be guaranteed.
        #[arg(long)]
        q: Option<i64>,
        /// Sequence file; stdin when omitted.
        file: Option<PathBuf>,
    },
    /// Zero-sum block of k positions with consecutive gaps at most d.
    FindGapBlock {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        file: Option<PathBuf>,
    },
    /// Zero-sum k-term arithmetic progression, smallest difference first.
    FindAp {
        #[arg(long)]
        k: usize,
        file: Option<PathBuf>,
    },
    /// Longest sequences of total ±q with no k-block of weight at most t.
    Extremal {
        #[command(subcommand)]
        action: ExtremalAction,
    },
    /// Longest sequences of total ±(d-1)n/(d+1) with no zero-sum gap block.
    ExtremalGap {
        #[command(subcommand)]
        action: ExtremalGapAction,
    },
    /// Split n*m cell values (layer by layer) into n one-cell-per-layer
    /// paths whose weights lie in the bracket around the mean.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, default_value_t = 1)]
        s: i64,
        file: Option<PathBuf>,
    },
    /// Zero-sum k-blocks of the Liouville function up to a limit; with --d,
    /// of the dilated sequence λ(d), λ(2d), ...
    Liouville {
        #[arg(long)]
        limit: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Zero-sum k-blocks of consecutive primes under the Legendre symbol mod p.
    Legendre {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive or randomized verification.
    Verify {
        /// Worker threads for enumeration.
        #[arg(long, global = true)]
        workers: Option<usize>,
        /// Maximum number of sequences enumerated per length.
        #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(subcommand)]
        what: VerifyWhat,
    },
}

#[derive(Args)]
struct BlockFamilyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    q: usize,
}

#[derive(Args)]
struct GapFamilyArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand)]
enum ExtremalAction {
    /// List every member.
    Gen(BlockFamilyArgs),
    /// Test membership of a sequence.
    Check {
        #[command(flatten)]
        params: BlockFamilyArgs,
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExtremalGapAction {
    /// List every member.
    Gen(GapFamilyArgs),
    /// Test membership of a sequence.
    Check {
        #[command(flatten)]
        params: GapFamilyArgs,
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Enumerate all sequences at the block threshold and one below it.
    Block(BlockFamilyArgs),
    /// Enumerate all sequences at the gap-block threshold and one below it.
    Gap(GapFamilyArgs),
    /// Check decompositions of random instances against their bracket.
    Decomp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, default_value_t = 1)]
        s: i64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that the block-avoiding pattern for k still has a zero-sum
    /// k-term progression (k ≡ 2 mod 4, k/2 composite).
    Ap {
        #[arg(long)]
        k: usize,
    },
}

/// A command result: JSON payload, its text rendering, and whether the
/// outcome is positive.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub positive: bool,
}

type CmdResult = Result<Outcome, String>;

fn read_input(file: &Option<PathBuf>) -> Result<String, String> {
    match file {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn read_seq(file: &Option<PathBuf>, r: i64, s: i64) -> Result<SignedSeq, String> {
    parse_seq(&read_input(file)?, r, s).map_err(|e| e.to_string())
}

fn witness_outcome(f: &SignedSeq, found: Option<BlockWitness>) -> Outcome {
    match found {
        Some(w) => Outcome {
            text: render::witness(f, &w),
            json: json!({
                "indices": w.indices,
                "kind": w.kind,
                "weight": w.weight,
            }),
            positive: true,
        },
        None => Outcome {
            json: json!({"result": "none"}),
            text: "none\n".into(),
            positive: false,
        },
    }
}

fn zs_outcome(r: ZsReport) -> Outcome {
    Outcome {
        text: render::fields(&[
            ("count", r.count.to_string()),
            ("first starts", format!("{:?}", r.first_starts)),
            ("partial sum", r.partial_sum.to_string()),
        ]),
        positive: r.count > 0,
        json: serde_json::to_value(r).expect("serializable"),
    }
}

fn family_outcome(family: Vec<SignedSeq>) -> Outcome {
    let members: Vec<String> = family.iter().map(SignedSeq::to_text).collect();
    Outcome {
        text: members.iter().map(|m| format!("{m}\n")).collect(),
        json: json!({"count": members.len(), "members": members}),
        positive: true,
    }
}

fn membership_outcome(member: bool) -> Outcome {
    Outcome {
        json: json!({"member": member}),
        text: format!("member: {member}\n"),
        positive: member,
    }
}

fn report_outcome<T: serde::Serialize>(report: &T, passed: bool) -> Outcome {
    let json = serde_json::to_value(report).expect("serializable");
    Outcome {
        text: render::value(&json),
        json,
        positive: passed,
    }
}

fn run(command: Command) -> CmdResult {
    let err = |e: zeroseq::Error| e.to_string();
    match command {
        Command::Threshold { k, t, q, d } => {
            let (n, s) = match d {
                Some(d) => (
                    gap_threshold(d, k).map_err(err)?,
                    GapParams::new(d, k).map_err(err)?.s_residue,
                ),
                None => (
                    block_threshold(k, t, q).map_err(err)?,
                    residue_s(k, t, q).map_err(err)?,
                ),
            };
            Ok(Outcome {
                json: json!({"n_threshold": n, "s": s}),
                text: render::fields(&[("threshold", n.to_string()), ("s", s.to_string())]),
                positive: true,
            })
        }
        Command::FindBlock { k, t, q, file } => {
            let f = read_seq(&file, 1, 1)?;
            let found = scan_bounded_block(&f, k, t).map_err(err)?;
            let mut out = witness_outcome(&f, found);
            if let Some(q) = q {
                let n = block_threshold(k as i64, t, q).map_err(err)?;
                let guaranteed = f.len() as i64 >= n && f.total().abs() <= q;
                out.json["guaranteed"] = json!(guaranteed);
                out.text.push_str(&format!("guaranteed: {guaranteed}\n"));
            }
            Ok(out)
        }
        Command::FindGapBlock { d, k, file } => {
            let f = read_seq(&file, 1, 1)?;
            let found = find_zs_gap_block(&f, d, k).map_err(err)?;
            Ok(witness_outcome(&f, found))
        }
        Command::FindAp { k, file } => {
            let f = read_seq(&file, 1, 1)?;
            let found = find_zs_ap(&f, k).map_err(err)?;
            Ok(witness_outcome(&f, found))
        }
        Command::Extremal { action } => match action {
            ExtremalAction::Gen(a) => Ok(family_outcome(
                enumerate_block_family(a.k, a.t, a.q).map_err(err)?,
            )),
            ExtremalAction::Check { params: a, file } => {
                let f = read_seq(&file, 1, 1)?;
                Ok(membership_outcome(
                    is_block_family_member(&f, a.k, a.t, a.q).map_err(err)?,
                ))
            }
        },
        Command::ExtremalGap { action } => match action {
            ExtremalGapAction::Gen(a) => {
                Ok(family_outcome(enumerate_gap_family(a.d, a.k).map_err(err)?))
            }
            ExtremalGapAction::Check { params: a, file } => {
                let f = read_seq(&file, 1, 1)?;
                Ok(membership_outcome(
                    is_gap_family_member(&f, a.d, a.k).map_err(err)?,
                ))
            }
        },
        Command::Decompose { n, m, r, s, file } => {
            let f = read_seq(&file, r, s)?;
            let inst = LayeredInstance::from_seq(&f, n, m).map_err(err)?;
            let dec = decompose(&inst);
            Ok(Outcome {
                text: render::decomposition(&inst, &dec),
                json: serde_json::to_value(&dec).expect("serializable"),
                positive: true,
            })
        }
        Command::Liouville { limit, k, d } => {
            let report = match d {
                Some(d) => liouville_ap_zs(limit, k, d),
                None => liouville_zs_blocks(limit, k),
            };
            Ok(zs_outcome(report.map_err(err)?))
        }
        Command::Legendre { p, limit, k } => {
            Ok(zs_outcome(legendre_zs_blocks(p, limit, k).map_err(err)?))
        }
        Command::Verify {
            workers,
            budget,
            what,
        } => {
            let workers = workers.unwrap_or_else(default_workers);
            match what {
                VerifyWhat::Block(a) => {
                    let r = verify_block_threshold(a.k, a.t, a.q, budget, workers).map_err(err)?;
                    Ok(report_outcome(&r, r.passed))
                }
                VerifyWhat::Gap(a) => {
                    let r = verify_gap_threshold(a.d, a.k, budget, workers).map_err(err)?;
                    Ok(report_outcome(&r, r.passed))
                }
                VerifyWhat::Decomp {
                    n,
                    m,
                    r,
                    s,
                    trials,
                    seed,
                } => {
                    let rep = verify_decomposition(n, m, r, s, trials, seed).map_err(err)?;
                    Ok(report_outcome(&rep, rep.passed))
                }
                VerifyWhat::Ap { k } => {
                    let r = verify_ap_proposition(k).map_err(err)?;
                    Ok(report_outcome(&r, r.passed))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(cli.command) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    match cli.format {
        Format::Json => {
            let mut payload = json!({"schema": SCHEMA});
            if let (Value::Object(dst), Value::Object(src)) = (&mut payload, outcome.json) {
                dst.extend(src);
            }
            if cli.timing {
                payload["elapsed_ms"] = json!(elapsed_ms);
            }
            let text = if cli.pretty {
                serde_json::to_string_pretty(&payload)
            } else {
                serde_json::to_string(&payload)
            };
            println!("{}", text.expect("serializable"));
        }
        Format::Text => {
            print!("{}", outcome.text);
            if cli.timing {
                println!("elapsed: {elapsed_ms:.1} ms");
            }
        }
    }
    if outcome.positive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
