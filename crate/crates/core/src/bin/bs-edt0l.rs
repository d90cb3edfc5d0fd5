use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use bs_edt0l::constructions::fixture::{adjudicate, fixture_check, with_published_table};
use bs_edt0l::constructions::RecurrenceFit;
use bs_edt0l::lsystem::{enumerate, membership, Bounds, Et0lSystem, Membership};
use bs_edt0l::normal_form::{frac_of, nf_of, parse_frac};
use bs_edt0l::oracle::{conjecture_set, shortlex, OracleCache, Verdict, CACHE_ENV};
use bs_edt0l::verify::{verify, Params, Target};
use bs_edt0l::zk::DigitSign;
use bs_edt0l::{eval_word, Error, GroupElement};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "bs-edt0l", version, about = "Normal forms, arithmetic and EDT0L systems for BS(1,k)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// The base k of BS(1,k).
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BoundArgs {
    /// Longest word (per factor for normal-form triples).
    #[arg(long = "max-len", default_value_t = 12)]
    max_len: usize,
    /// Longest control word.
    #[arg(long, default_value_t = 64)]
    depth: usize,
    /// Sentential forms longer than slack·(max-len + 1) are cut.
    #[arg(long, default_value_t = 4)]
    slack: usize,
}

/// Parameters naming one language.
#[derive(Args)]
struct TargetArgs {
    /// nf-fixed-r, exp-seq, centralizer, conjugator, left-mult-a, mult-frac, mult-nf, inv-frac or inv-nf.
    name: String,
    /// b-exponent for nf-fixed-r and exp-seq.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    /// Element g as "(r,u)" or a word over a A b B.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Element h as "(r,u)" or a word.
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    /// A sign case such as mult/rx+ry-/ux-uy+uz-; all cases when absent.
    #[arg(long)]
    case: Option<String>,
    /// exp-seq: offset c in b^{rn+c}.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    c: i64,
    /// exp-seq: first index n.
    #[arg(long = "n-start", default_value_t = 0)]
    n_start: u64,
    /// exp-seq: lambda in s_{n+1} = k^r s_n + lambda.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
    /// exp-seq: s at the first index.
    #[arg(long = "s-start", default_value = "1")]
    s_start: String,
    /// exp-seq: central word between the b prefix and the tail.
    #[arg(long, default_value = "")]
    central: String,
    /// exp-seq: tail letter, a or A.
    #[arg(long, default_value = "a")]
    alpha: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an element or word.
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        word: Option<String>,
    },
    /// Fractional form of an element or word.
    Frac {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        word: Option<String>,
    },
    /// Evaluate a word, a normal form or a fractional form to (r,u).
    Eval {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Product of two elements.
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Inverse of an element.
    Inv {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Power of an element.
    Pow {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Print a generated system as JSON.
    BuildSystem {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: TargetArgs,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the words of a system within the bounds, in shortlex order.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bounds: BoundArgs,
        /// JSON system file, or - for stdin.
        system: PathBuf,
    },
    /// Decide whether a system generates a word, printing a witness.
    Membership {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bounds: BoundArgs,
        system: PathBuf,
        word: String,
    },
    /// Compare a generated system with the oracle.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Fractional triples: largest |r| per factor.
        #[arg(long = "max-r", default_value_t = 1)]
        max_r: usize,
        /// Fractional triples: most digits per factor.
        #[arg(long, default_value_t = 3)]
        digits: usize,
        /// Directory for cached oracle sets.
        #[arg(long = "cache-dir", env = CACHE_ENV)]
        cache_dir: Option<PathBuf>,
    },
    /// Compare the generated k=3 multiplication tables with the published ones.
    FixtureCheck {
        #[command(flatten)]
        common: Common,
        /// Also check each differing published table against the oracle at this factor length.
        #[arg(long)]
        adjudicate: Option<usize>,
    },
    /// Pairs b^r a # (b^r a)^n for r ≤ r_max, n ≤ n_max.
    ConjectureSet {
        #[command(flatten)]
        common: Common,
        #[arg(long = "r-max", default_value_t = 3)]
        r_max: u32,
        #[arg(long = "n-max", default_value_t = 5)]
        n_max: u32,
    },
}

enum Failure {
    Input(Error),
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// An element as "(r,u)", else a word, normal form or fractional form.
fn element(k: u32, s: &str) -> Result<GroupElement, Error> {
    let s = s.trim();
    if s.starts_with('(') {
        GroupElement::parse(k, s)
    } else if s.contains(['+', '-', '.']) {
        parse_frac(k, s)
    } else {
        eval_word(k, s)
    }
}

/// The element given by `--element` or positionally.
fn either(k: u32, e: Option<String>, word: Option<String>) -> Result<GroupElement, Error> {
    match (e, word) {
        (Some(e), None) | (None, Some(e)) => element(k, &e),
        _ => Err(Error::InvalidParameter("give exactly one of --element and a word".into())),
    }
}

fn show(format: Format, g: &GroupElement) {
    match format {
        Format::Text if g.is_identity() => println!("identity"),
        Format::Text => println!("{g}"),
        Format::Json => println!("{}", serde_json::json!({ "r": g.r, "u": g.u.to_string(), "nf": nf_of(g), "frac": frac_of(g) })),
    }
}

fn print_word(format: Format, w: &str) {
    match format {
        Format::Text => println!("{w}"),
        Format::Json => println!("{}", serde_json::Value::String(w.to_string())),
    }
}

fn parse_int(what: &'static str, s: &str) -> Result<BigInt, Error> {
    s.parse().map_err(|_| Error::Parse { what, input: s.to_string() })
}

fn target(k: u32, t: &TargetArgs) -> Result<Target, Error> {
    if t.name != "exp-seq" {
        return Target::named(k, &t.name, t.r, t.g.as_deref(), t.h.as_deref(), t.case.as_deref());
    }
    let r = t.r.ok_or_else(|| Error::InvalidParameter("exp-seq needs --r".into()))?;
    let alpha_sign = match t.alpha.as_str() {
        "a" => DigitSign::Pos,
        "A" => DigitSign::Neg,
        s => return Err(Error::Parse { what: "tail letter", input: s.into() }),
    };
    Ok(Target::ExpSeq(RecurrenceFit {
        r: u32::try_from(r).map_err(|_| Error::InvalidParameter("exp-seq needs r > 0".into()))?,
        c: t.c,
        n_start: t.n_start,
        lambda: parse_int("lambda", &t.lambda)?,
        central_word: t.central.clone(),
        s_start: parse_int("s-start", &t.s_start)?,
        alpha_sign,
    }))
}

fn load_system(path: &PathBuf) -> Result<Et0lSystem, Error> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)?
    };
    Et0lSystem::from_json(&text)
}

fn verdict_exit(v: Verdict) -> Outcome {
    match v {
        Verdict::Equal => Ok(()),
        Verdict::Mismatch => Err(Failure::Exit(EXIT_MISMATCH)),
        Verdict::Inconclusive => Err(Failure::Exit(EXIT_INCONCLUSIVE)),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Nf { common, element: e, word } => {
            print_word(common.format, &nf_of(&either(common.k, e, word)?));
            Ok(())
        }
        Cmd::Frac { common, element: e, word } => {
            print_word(common.format, &frac_of(&either(common.k, e, word)?));
            Ok(())
        }
        Cmd::Eval { common, word } => {
            show(common.format, &element(common.k, &word)?);
            Ok(())
        }
        Cmd::Mul { common, x, y } => {
            show(common.format, &element(common.k, &x)?.mul(&element(common.k, &y)?));
            Ok(())
        }
        Cmd::Inv { common, x } => {
            show(common.format, &element(common.k, &x)?.inv());
            Ok(())
        }
        Cmd::Pow { common, x, n } => {
            show(common.format, &element(common.k, &x)?.pow(n));
            Ok(())
        }
        Cmd::BuildSystem { common, target: t, out } => {
            let json = target(common.k, &t)?.build(common.k)?.to_json();
            match out {
                Some(p) => std::fs::write(p, json + "\n").map_err(Error::from)?,
                None => println!("{json}"),
            }
            Ok(())
        }
        Cmd::Enumerate { common, bounds, system } => {
            let sys = load_system(&system)?;
            let found = enumerate(&sys, Bounds::new(bounds.max_len, bounds.depth, bounds.slack))?;
            let mut words: Vec<String> = found.word_set().into_iter().collect();
            words.sort_by(|a, b| shortlex(a, b));
            match common.format {
                Format::Text => {
                    for w in &words {
                        println!("{w}");
                    }
                    if !found.exhaustive_up_to_len {
                        eprintln!("note: control depth reached, list may be incomplete");
                    }
                }
                Format::Json => {
                    println!("{}", serde_json::json!({ "words": words, "exhaustive": found.exhaustive_up_to_len }))
                }
            }
            Ok(())
        }
        Cmd::Membership { common, bounds, system, word } => {
            let sys = load_system(&system)?;
            let answer = membership(&sys, &word, bounds.depth, bounds.slack)?;
            let (text, json, code) = match &answer {
                Membership::Yes(w) => (format!("yes: {}", w.join(" ")), serde_json::json!({ "member": true, "witness": w }), None),
                Membership::NoUpToDepth { exhaustive: true } => {
                    ("no".to_string(), serde_json::json!({ "member": false, "exhaustive": true }), Some(EXIT_MISMATCH))
                }
                Membership::NoUpToDepth { exhaustive: false } => (
                    format!("not found up to depth {}", bounds.depth),
                    serde_json::json!({ "member": false, "exhaustive": false }),
                    Some(EXIT_INCONCLUSIVE),
                ),
            };
            match common.format {
                Format::Text => println!("{text}"),
                Format::Json => println!("{json}"),
            }
            code.map_or(Ok(()), |c| Err(Failure::Exit(c)))
        }
        Cmd::Verify { common, target: t, bounds, max_r, digits, cache_dir } => {
            let target = target(common.k, &t)?;
            let params = Params {
                k: common.k,
                max_len: bounds.max_len,
                depth: bounds.depth,
                slack: bounds.slack,
                max_abs_r: max_r,
                max_digits: digits,
            };
            let cache = cache_dir.map(OracleCache::new);
            let report = verify(&target, &params, cache.as_ref())?;
            match common.format {
                Format::Text => println!("{target}: {}", report.summary()),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "target": target.to_string(),
                        "verdict": format!("{:?}", report.verdict).to_lowercase(),
                        "missing": report.missing,
                        "extra": report.extra,
                        "bounds": report.bounds,
                        "exhaustive": report.exhaustive,
                    })
                ),
            }
            verdict_exit(report.verdict)
        }
        Cmd::FixtureCheck { common, adjudicate: max_len } => {
            if common.k != 3 {
                return Err(Error::InvalidParameter("the published tables are for k = 3".into()).into());
            }
            let report = fixture_check()?;
            println!("{} matched tables: {}", report.matched.len(), report.matched.join(" "));
            for id in &report.not_generated {
                println!("not generated: {id}");
            }
            for d in &report.differing {
                println!("differs: {}", d.id);
                for row in &d.rows {
                    let show = |s: &Option<String>| s.as_deref().map_or("(none)".to_string(), |s| format!("{s:?}"));
                    println!("  {}: published {} generated {}", row.letter, show(&row.published), show(&row.generated));
                }
                if let Some(l) = max_len {
                    let published = adjudicate(&with_published_table(&d.id)?, l)?;
                    println!("  oracle, published table: {}", published.summary().replace('\n', "\n  "));
                }
            }
            if let Some(l) = max_len {
                let generated = adjudicate(&bs_edt0l::constructions::fixture::explicit_system()?, l)?;
                println!("oracle, generated tables: {}", generated.summary());
            }
            println!("{}", if report.passed() { "pass" } else { "fail" });
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Exit(EXIT_MISMATCH))
            }
        }
        Cmd::ConjectureSet { common, r_max, n_max } => {
            let mut words: Vec<String> = conjecture_set(common.k, r_max, n_max)?.into_iter().collect();
            words.sort_by(|a, b| shortlex(a, b));
            for w in words {
                print_word(common.format, &w);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Exit(c)) => ExitCode::from(c),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
