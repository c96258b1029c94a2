use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use monolef::conjectures::{conjecture39_check, ehu_containment, EhuForms};
use monolef::hilbert::{hilbert_function, socle};
use monolef::lefschetz::{check_support_chain, slp_check, wlp_check, wlp_check_with, wlp_failure_witness, SlpMode};
use monolef::resolution::{betti_table, linear_steps, regularity_from};
use monolef::scan::{scan, Check, ScanConfig, ScanMode};
use monolef::segments::{
    conjecture39_exponent, segment_decomposition, segment_lemma_check, slp_hypothesis, xy_hypothesis,
};
use monolef::toeplitz::{toeplitz_invertible, two_var_cross_oracle, BinomialConvention, ToeplitzSpec};
use monolef::{LinearForm, MonomialIdeal};

const SCHEMA: u32 = 1;

/// Anything that ends the run with exit code 1.
struct Fail(String);

impl From<monolef::Error> for Fail {
    fn from(e: monolef::Error) -> Self {
        Fail(e.to_string())
    }
}

impl From<String> for Fail {
    fn from(s: String) -> Self {
        Fail(s)
    }
}

impl From<&str> for Fail {
    fn from(s: &str) -> Self {
        Fail(s.to_string())
    }
}

#[derive(Parser)]
#[command(name = "monolef", version, about = "Lefschetz properties and Betti tables of artinian monomial algebras")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Refuse randomized work unless --seed is given.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IdealArgs {
    /// JSON file with fields n, d and gens (exponent vectors).
    #[arg(long, conflicts_with_all = ["gens", "n", "d"])]
    ideal: Option<PathBuf>,
    /// Comma-separated generators, e.g. "x1^3,x2^3,x1*x2*x3".
    #[arg(long, requires_all = ["n", "d"])]
    gens: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<u32>,
}

impl IdealArgs {
    fn load(&self) -> Result<MonomialIdeal, Fail> {
        match (&self.ideal, &self.gens, self.n, self.d) {
            (Some(path), ..) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                Ok(MonomialIdeal::from_json_str(&text)?)
            }
            (None, Some(g), Some(n), Some(d)) => Ok(MonomialIdeal::parse_gens(g, n, d)?),
            _ => Err("supply --ideal <file.json> or --gens <list> with --n and --d".into()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Standard,
    Verbatim,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function of S/I.
    Hilbert(IdealArgs),
    /// Graded Betti table, linear steps and regularity.
    Betti {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Also list the multigraded Betti numbers.
        #[arg(long)]
        multigraded: bool,
    },
    /// Weak Lefschetz check, with kernel witnesses for failures.
    Wlp {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Linear form to test instead of x1+...+xn, e.g. "2x1-x3".
        #[arg(long)]
        form: Option<String>,
    },
    /// Strong Lefschetz check.
    Slp {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Try random forms instead of x1+...+xn.
        #[arg(long)]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Socle monomials by degree.
    Socle(IdealArgs),
    /// Line segments along (x_i, x_j) and the divisibility hypotheses.
    Segments {
        #[command(flatten)]
        ideal: IdealArgs,
        /// One-based axis pair; every pair when omitted.
        #[arg(long, requires = "j")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
        /// Check each segment on the ideal generated by its complement.
        #[arg(long)]
        lemma: bool,
    },
    /// Binomial Toeplitz matrix T(n, m, k) and its determinant.
    Toeplitz {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_enum, default_value = "standard")]
        convention: ConventionArg,
        /// Compare against the two-variable multiplication matrix.
        #[arg(long)]
        cross_oracle: bool,
    },
    /// m^d inside I + (l_p, ..., l_n), or its square.
    Ehu {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Comma-separated linear forms, e.g. "x-y,z".
        #[arg(long, conflicts_with = "random")]
        forms: Option<String>,
        /// First index p; defaults to n + 1 - (number of forms), or n.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        squared: bool,
        #[arg(long)]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Power of x1+...+xn predicted by the minimal exponent of degree-d survivors.
    Conj39(IdealArgs),
    /// Scan many ideals; JSONL records plus a summary.
    Scan(ScanArgs),
    /// Kernel witness for a weak Lefschetz failure in a given degree.
    Witness {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Source degree j of the failing map (S/I)_j -> (S/I)_{j+1}.
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// Variable count, "3" or "2..4".
    #[arg(long, default_value = "3")]
    n: String,
    /// Generating degree, "3" or "2..4".
    #[arg(long, default_value = "3")]
    d: String,
    /// Total generator count, "5" or "4..8".
    #[arg(long)]
    gen_count: Option<String>,
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated subset of wlp, slp, betti, ehu, conj39, theorem-suite.
    #[arg(long, default_value = "wlp,slp,betti,theorem-suite")]
    checks: String,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// JSONL destination. Records go to stdout and the summary to stderr
    /// when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record per-ideal wall time (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
}

fn parse_range<T: std::str::FromStr + Copy>(s: &str, what: &str) -> Result<(T, T), String> {
    let bad = || format!("bad {what} range `{s}`");
    match s.split_once("..") {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn parse_forms(s: &str, n: usize) -> Result<Vec<LinearForm>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| LinearForm::parse(t.trim(), n).map_err(|e| e.to_string()))
        .collect()
}

struct Ctx {
    pretty: bool,
    strict: bool,
}

impl Ctx {
    fn emit(&self, mut v: Value) -> Result<(), Fail> {
        if let Value::Object(map) = &mut v {
            map.insert("schema".into(), json!(SCHEMA));
        }
        let text = if self.pretty {
            serde_json::to_string_pretty(&v)
        } else {
            serde_json::to_string(&v)
        }
        .map_err(|e| Fail(e.to_string()))?;
        println!("{text}");
        Ok(())
    }

    fn seed(&self, seed: Option<u64>) -> Result<u64, Fail> {
        match seed {
            Some(s) => Ok(s),
            None if self.strict => Err("--strict requires an explicit --seed".into()),
            None => Ok(0),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value, Fail> {
    serde_json::to_value(x).map_err(|e| Fail(e.to_string()))
}

fn run(cli: Cli) -> Result<u8, Fail> {
    let ctx = Ctx {
        pretty: cli.pretty,
        strict: cli.strict,
    };
    match cli.command {
        Command::Hilbert(args) => {
            let ideal = args.load()?;
            let hf = hilbert_function(&ideal)?;
            ctx.emit(json!({
                "ideal": ideal.to_json(),
                "hilbert": hf,
                "top": hf.top(),
                "total": hf.total(),
            }))?;
        }
        Command::Betti { ideal, multigraded } => {
            let ideal = ideal.load()?;
            let table = betti_table(&ideal);
            let betti: Vec<Value> = table
                .entries()
                .iter()
                .map(|(&(i, j), &b)| json!({"i": i, "j": j, "b": b}))
                .collect();
            let hf = hilbert_function(&ideal).ok();
            let reg = match &hf {
                Some(hf) => Some(regularity_from(&table, hf)?),
                None => None,
            };
            let mut out = json!({
                "ideal": ideal.to_json(),
                "betti": betti,
                "linear_steps": linear_steps(&table, ideal.d()),
                "reg": reg,
                "euler_identity": hf.as_ref().map(|h| table.satisfies_euler_identity(h)),
            });
            if multigraded {
                out["multigraded"] = to_value(&table.multigraded())?;
            }
            ctx.emit(out)?;
        }
        Command::Wlp { ideal, form } => {
            let ideal = ideal.load()?;
            let report = match form {
                Some(f) => wlp_check_with(&ideal, &LinearForm::parse(&f, ideal.n())?)?,
                None => wlp_check(&ideal)?,
            };
            let mut out = to_value(&report)?;
            out["ideal"] = to_value(&ideal.to_json())?;
            ctx.emit(out)?;
        }
        Command::Slp {
            ideal,
            random,
            seed,
            trials,
        } => {
            let ideal = ideal.load()?;
            let mode = if random {
                SlpMode::Random {
                    seed: ctx.seed(seed)?,
                    trials,
                }
            } else {
                SlpMode::Canonical
            };
            let mut out = to_value(&slp_check(&ideal, mode)?)?;
            out["ideal"] = to_value(&ideal.to_json())?;
            out["mode"] = to_value(&mode)?;
            ctx.emit(out)?;
        }
        Command::Socle(args) => {
            let ideal = args.load()?;
            let s = socle(&ideal)?;
            ctx.emit(json!({
                "ideal": ideal.to_json(),
                "count": s.len(),
                "socle": s.by_degree,
            }))?;
        }
        Command::Segments { ideal, i, j, lemma } => {
            let ideal = ideal.load()?;
            ideal.require_artinian()?;
            let n = ideal.n();
            let pairs: Vec<(usize, usize)> = match (i, j) {
                (Some(i), Some(j)) => vec![(i, j)],
                _ => (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect(),
            };
            let mut segments = Vec::new();
            for (i, j) in pairs {
                for seg in segment_decomposition(&ideal, i, j)? {
                    let mut v = to_value(&seg)?;
                    if lemma {
                        v["lemma"] = to_value(&segment_lemma_check(&ideal, &seg)?.holds)?;
                    }
                    segments.push(v);
                }
            }
            ctx.emit(json!({
                "ideal": ideal.to_json(),
                "segments": segments,
                "xy_hypothesis": xy_hypothesis(&ideal)?,
                "slp_hypothesis": slp_hypothesis(&ideal)?,
                "conj39_exponent": conjecture39_exponent(&ideal).ok(),
            }))?;
        }
        Command::Toeplitz {
            n,
            m,
            k,
            convention,
            cross_oracle,
        } => {
            let spec = ToeplitzSpec { n, m, k };
            let conv = match convention {
                ConventionArg::Standard => BinomialConvention::Standard,
                ConventionArg::Verbatim => BinomialConvention::Verbatim,
            };
            let mut out = to_value(&toeplitz_invertible(spec, conv)?)?;
            if cross_oracle {
                out["cross_oracle"] = to_value(&two_var_cross_oracle(spec, conv)?)?;
            }
            ctx.emit(out)?;
        }
        Command::Ehu {
            ideal,
            forms,
            p,
            squared,
            random,
            seed,
            trials,
        } => {
            let ideal = ideal.load()?;
            let n = ideal.n();
            let (forms, p) = match forms {
                Some(s) => {
                    let fs = parse_forms(&s, n)?;
                    let p = p.unwrap_or((n + 1).saturating_sub(fs.len()));
                    (EhuForms::Explicit { forms: fs }, p)
                }
                None if random => (
                    EhuForms::Random {
                        seed: ctx.seed(seed)?,
                        trials,
                    },
                    p.unwrap_or(n),
                ),
                None => return Err("supply --forms or --random".into()),
            };
            let mut out = to_value(&ehu_containment(&ideal, p, &forms, squared)?)?;
            out["ideal"] = to_value(&ideal.to_json())?;
            ctx.emit(out)?;
        }
        Command::Conj39(args) => {
            let ideal = args.load()?;
            let mut out = to_value(&conjecture39_check(&ideal)?)?;
            out["ideal"] = to_value(&ideal.to_json())?;
            ctx.emit(out)?;
        }
        Command::Witness { ideal, degree } => {
            let ideal = ideal.load()?;
            let w = wlp_failure_witness(&ideal, degree)?;
            let chain = check_support_chain(&ideal, &w)?;
            ctx.emit(json!({
                "ideal": ideal.to_json(),
                "witness": w,
                "support_chain": chain,
            }))?;
        }
        Command::Scan(args) => return run_scan(&ctx, args),
    }
    Ok(0)
}

fn run_scan(ctx: &Ctx, args: ScanArgs) -> Result<u8, Fail> {
    let checks = args
        .checks
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Check>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let mode = match args.samples {
        Some(count) => ScanMode::Samples { count },
        None => ScanMode::Exhaustive,
    };
    let cfg = ScanConfig {
        n_range: parse_range(&args.n, "n")?,
        d_range: parse_range(&args.d, "d")?,
        gen_range: args.gen_count.as_deref().map(|s| parse_range(s, "gen-count")).transpose()?,
        mode,
        seed: ctx.seed(args.seed)?,
        checks,
        trials: args.trials,
        timing: args.timing,
    };
    let summary = match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            scan(&cfg, args.jobs, &mut w)?
        }
        None => scan(&cfg, args.jobs, &mut io::stdout().lock())?,
    };
    let mut v = to_value(&summary)?;
    v["schema"] = json!(SCHEMA);
    let text = if ctx.pretty {
        serde_json::to_string_pretty(&v)
    } else {
        serde_json::to_string(&v)
    }
    .map_err(|e| Fail(e.to_string()))?;
    if args.out.is_some() {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    io::stdout().flush().map_err(|e| e.to_string())?;
    Ok(summary.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
