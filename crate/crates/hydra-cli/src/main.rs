//! `hydra`: command-line front end for hydra-core.
//!
//! Output is one JSON object on stdout (or plain text with `--plain`).
//! Exit codes: 0 success, 1 engine/oracle disagreement under `--oracle`,
//! 2 usage or parse error, 3 broken internal invariant.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hydra_core::engine::Engine;
use hydra_core::hydra_alg::{hydra_battle, hydra_count, hydra_witness, normal_form, piece_decomposition, HYDRA_CAP};
use hydra_core::membership::{gamma_word_problem, gk_word_problem, Pusher};
use hydra_core::oracles::{coset_exponent_exact, eval_ack_exact, eval_psi_exact, CosetExact, ExactResult, DEFAULT_CAP};
use hydra_core::{
    parse_ack_word, parse_group_word, parse_psi_word, CosetResult, EngineError, Family, TraceEvent, Verdict, Word,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hydra", version, about = "Ackermann and psi words, hydra groups and their membership problem")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct Opts {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    plain: bool,
    /// Print each rewriting step to stderr.
    #[arg(long, global = true)]
    trace: bool,
    /// Cross-check against the exact oracles; exit 1 on disagreement.
    #[arg(long, global = true)]
    oracle: bool,
    /// Magnitude cap for the oracles and step cap for hydra battles.
    #[arg(long, global = true, env = "HYDRA_CAP")]
    cap: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ackermann words, e.g. "A2^-1 A1 A1 A0".
    Ack {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Psi words, e.g. "p3^-1 p1^2 p2^2 p3".
    Psi {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Normal form t^r v of a word in G_k.
    Nf { word: String },
    /// Rank-m piece decomposition of a word over a_1..a_m.
    Pieces {
        #[arg(long)]
        rank: u32,
        word: String,
    },
    /// Whether a word lies in H_k = <a_1 t, ..., a_k t>.
    Member {
        #[arg(long)]
        k: u32,
        word: String,
    },
    /// Word problem in Gamma_k.
    Wp {
        #[arg(long)]
        k: u32,
        word: String,
    },
    /// Word problem in G_k.
    GkWp {
        #[arg(long)]
        k: u32,
        word: String,
    },
    /// The hydra game.
    Hydra {
        #[command(subcommand)]
        op: HydraOp,
    },
}

#[derive(Subcommand)]
enum WordOp {
    /// Validity and sign of w(0).
    Sign { word: String },
    /// Exact value of w(0) by the slow evaluator.
    Eval { word: String },
}

#[derive(Subcommand)]
enum HydraOp {
    /// Every hydra from the given one down to the empty word.
    Battle {
        word: String,
        /// Give up once a hydra is longer than this.
        #[arg(long, default_value_t = 10_000)]
        max_len: usize,
    },
    /// Number of steps to kill the hydra.
    Count { word: String },
    /// The word u_{k,n} in the generators a_i t.
    Witness {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
}

enum Failure {
    Usage(String),
    Invariant(String),
    Mismatch(Value),
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        if e.is_invariant() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<hydra_core::ParseError> for Failure {
    fn from(e: hydra_core::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<Value, Failure>;

fn verdict_json(v: Verdict) -> Value {
    match v {
        Verdict::Invalid => json!({ "valid": false }),
        Verdict::Valid(s) => json!({ "valid": true, "sign": s.as_str() }),
    }
}

fn exact_json(x: &ExactResult) -> Value {
    match x {
        ExactResult::Invalid => json!({ "valid": false }),
        ExactResult::Overflow => json!({ "overflow": true }),
        ExactResult::Value(v) => json!({ "valid": true, "value": v.to_string() }),
    }
}

fn emit_trace(on: bool, events: Vec<TraceEvent>) {
    if on {
        for e in events {
            eprintln!("{}: {} -> {}", e.op, e.before, e.after);
        }
    }
}

fn word_op<F: Family>(
    opts: Opts,
    op: &WordOp,
    parse: fn(&str) -> Result<Word<F>, hydra_core::ParseError>,
    exact: fn(&Word<F>, u64) -> ExactResult,
) -> Out {
    let cap = opts.cap.unwrap_or(DEFAULT_CAP);
    match op {
        WordOp::Sign { word } => {
            let w = parse(word)?;
            let mut e = Engine::<F>::new();
            if opts.trace {
                e = e.with_trace();
            }
            let v = e.sign(&w);
            emit_trace(opts.trace, e.take_trace());
            let v = v?;
            let mut out = verdict_json(v);
            if opts.oracle {
                let x = exact(&w, cap);
                out["oracle"] = exact_json(&x);
                if x.verdict().is_some_and(|o| o != v) {
                    return Err(Failure::Mismatch(out));
                }
            }
            Ok(out)
        }
        WordOp::Eval { word } => {
            let w = parse(word)?;
            let x = exact(&w, cap);
            let mut out = exact_json(&x);
            if opts.oracle {
                let v = Engine::<F>::new().sign(&w)?;
                out["engine"] = verdict_json(v);
                if x.verdict().is_some_and(|o| o != v) {
                    return Err(Failure::Mismatch(out));
                }
            }
            Ok(out)
        }
    }
}

fn member(opts: Opts, k: u32, word: &str) -> Out {
    let w = parse_group_word(word)?;
    let mut p = Pusher::new();
    if opts.trace {
        p = p.with_trace();
    }
    let res = p.member_detail(k, &w);
    emit_trace(opts.trace, p.take_trace());
    let (is_member, coset) = res?;
    let mut out = match &coset {
        CosetResult::NotInAnyCoset => json!({ "member": false, "coset_psi_word": null, "coset_sign": null }),
        CosetResult::InCoset(h) => {
            let sign = match p.psi_sign(h)? {
                Verdict::Valid(s) => json!(s.as_str()),
                Verdict::Invalid => Value::Null,
            };
            json!({ "member": is_member, "coset_psi_word": h.to_string(), "coset_sign": sign })
        }
    };
    if opts.oracle {
        let x = coset_exponent_exact(k, &w, opts.cap.unwrap_or(DEFAULT_CAP));
        let agree = match (&x, &coset) {
            (CosetExact::NotInAnyCoset, CosetResult::NotInAnyCoset) => true,
            (CosetExact::Value(s), CosetResult::InCoset(h)) => match eval_psi_exact(h, u64::MAX) {
                ExactResult::Value(v) => v == *s,
                _ => true,
            },
            (CosetExact::Overflow, _) => true,
            _ => false,
        };
        out["oracle"] = match x {
            CosetExact::Invalid => json!({ "invalid": true }),
            CosetExact::Overflow => json!({ "overflow": true }),
            CosetExact::NotInAnyCoset => json!({ "coset": null }),
            CosetExact::Value(s) => json!({ "coset": s.to_string() }),
        };
        if !agree {
            return Err(Failure::Mismatch(out));
        }
    }
    Ok(out)
}

fn hydra(opts: Opts, op: &HydraOp) -> Out {
    let cap = opts.cap.unwrap_or(HYDRA_CAP);
    match op {
        HydraOp::Battle { word, max_len } => {
            let w = parse_group_word(word)?;
            match hydra_battle(&w, cap, *max_len)? {
                Some(hs) => Ok(json!({
                    "steps": hs.len() - 1,
                    "hydras": hs.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
                })),
                None => Ok(json!({ "steps": null, "capped": true })),
            }
        }
        HydraOp::Count { word } => {
            let w = parse_group_word(word)?;
            let steps = hydra_count(&w, cap)?;
            let mut out = match steps {
                Some(n) => json!({ "steps": n }),
                None => json!({ "steps": null, "capped": true }),
            };
            if opts.oracle {
                if let Some(n) = steps.filter(|&n| n <= 100_000) {
                    let naive = hydra_battle(&w, n, usize::MAX)?.map(|hs| hs.len() as u64 - 1);
                    out["oracle"] = json!({ "steps": naive });
                    if naive != Some(n) {
                        return Err(Failure::Mismatch(out));
                    }
                }
            }
            Ok(out)
        }
        HydraOp::Witness { k, n } => match hydra_witness(*k, *n, cap)? {
            Some(u) => Ok(json!({ "word": u.to_string(), "length": u.len() / 2 })),
            None => Ok(json!({ "word": null, "capped": true })),
        },
    }
}

fn run(cli: &Cli) -> Out {
    let opts = cli.opts;
    match &cli.cmd {
        Cmd::Ack { op } => word_op(opts, op, parse_ack_word, eval_ack_exact),
        Cmd::Psi { op } => word_op(opts, op, parse_psi_word, eval_psi_exact),
        Cmd::Nf { word } => {
            let nf = normal_form(&parse_group_word(word)?)?;
            Ok(json!({ "t_exp": nf.t_exp, "body": nf.body.to_string() }))
        }
        Cmd::Pieces { rank, word } => {
            let ps = piece_decomposition(&parse_group_word(word)?, *rank)?;
            Ok(json!({ "pieces": ps.iter().map(|p| p.to_word().to_string()).collect::<Vec<_>>() }))
        }
        Cmd::Member { k, word } => member(opts, *k, word),
        Cmd::Wp { k, word } => Ok(json!({ "trivial": gamma_word_problem(*k, &parse_group_word(word)?)? })),
        Cmd::GkWp { k, word } => Ok(json!({ "trivial": gk_word_problem(*k, &parse_group_word(word)?)? })),
        Cmd::Hydra { op } => hydra(opts, op),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}: {}", plain(v))).collect::<Vec<_>>().join("\n"),
        Value::Array(xs) => xs.iter().map(plain).collect::<Vec<_>>().join("\n"),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn print(opts: Opts, v: &Value) {
    if opts.plain {
        println!("{}", plain(v));
    } else {
        println!("{v}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            print(cli.opts, &v);
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(v)) => {
            print(cli.opts, &v);
            eprintln!("hydra: engine and oracle disagree");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("hydra: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("hydra: {msg}");
            ExitCode::from(3)
        }
    }
}
