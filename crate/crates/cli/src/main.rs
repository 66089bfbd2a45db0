mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use config::Config;
use qcurrent::bform::{gram, rank, sqrt_gamma};
use qcurrent::freealg::{straighten_with, Letter, Strategy, Word};
use qcurrent::kashiwara::{verify_operator_identity, Identity, IdentityParams};
use qcurrent::omega::{omega_phi, omega_psi};
use qcurrent::schur::{s_plus_minus, schur_poly, Sign};
use qcurrent::suite::{all_words, run_suite, SuiteConfig};
use qcurrent::verma::{
    act_d, act_k, act_xminus, act_xplus, reducibility_witness, HighestWeight, VermaVector,
};
use qcurrent::{CartanData, Coefficient, Element, Scalar};

#[derive(Parser)]
#[command(
    name = "qcurrent",
    version,
    about = "Exact computations with Omega operators, the invariant form and reduced imaginary Verma modules"
)]
struct Cli {
    /// TOML file with keys such as cartan.type, window.kmin, window.kmax, maxlen, gamma.specialize
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Psi,
    Phi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Apply Omega_psi or Omega_phi to an element
    Omega {
        #[arg(long)]
        cartan: Option<String>,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        color: usize,
        #[arg(long, allow_hyphen_values = true)]
        component: i64,
        /// Element JSON
        #[arg(long)]
        element: String,
    },
    /// Gram matrix of the invariant form on a list of words
    Gram {
        #[arg(long)]
        cartan: Option<String>,
        /// JSON list of words, each a list of [color, index] pairs
        #[arg(long)]
        words: String,
        /// Value substituted for gamma
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact rank of a saved matrix (JSON or CSV of coefficient strings)
    Rank {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Check an operator identity on all words in a window
    Verify {
        #[arg(long)]
        cartan: Option<String>,
        /// mixed-psi, mixed-phi, psi-psi, phi-phi or psi-phi
        #[arg(long)]
        identity: String,
        /// Letter index window lo:hi
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        maxlen: Option<usize>,
        /// Identity parameter window lo:hi
        #[arg(long, allow_hyphen_values = true, default_value = "-3:3")]
        params: String,
    },
    /// Rewrite a single-color element into ascending normal form
    Straighten {
        #[arg(long)]
        cartan: Option<String>,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
    },
    /// Act on the reduced imaginary Verma module or find a reducibility witness
    Verma {
        #[arg(long)]
        cartan: Option<String>,
        /// Comma-separated values lambda(h_i)
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        lambda_d: i64,
        /// "x+ i k", "x- i k", "K i" or "D"
        #[arg(long, allow_hyphen_values = true, conflicts_with = "witness")]
        act: Option<String>,
        /// Element JSON for P in P v_lambda; defaults to v_lambda
        #[arg(long)]
        on: Option<String>,
        #[arg(long)]
        witness: bool,
    },
    /// Schur polynomial S_k, or S^+-_{i,k} with --color
    Schur {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        cartan: Option<String>,
        #[arg(long)]
        color: Option<usize>,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
    },
    /// Run the full verification grid and emit a JSON report
    Suite {
        #[arg(long)]
        cartan: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        maxlen: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
    Internal(String),
}

type Res = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| usage(format!("range {s:?} must look like lo:hi")))?;
    let lo: i64 = a
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range start {a:?}")))?;
    let hi: i64 = b
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range end {b:?}")))?;
    if lo > hi {
        return Err(usage(format!("empty range {s}")));
    }
    Ok((lo, hi))
}

fn cartan(flag: Option<String>, cfg: &Config) -> Result<CartanData, Failure> {
    let label = match flag {
        Some(l) => l,
        None => cfg
            .str("cartan.type")
            .map_err(usage)?
            .unwrap_or_else(|| "A1".into()),
    };
    CartanData::from_label(&label).map_err(usage)
}

fn window(flag: Option<String>, cfg: &Config) -> Result<(i64, i64), Failure> {
    match flag {
        Some(w) => parse_range(&w),
        None => Ok((
            cfg.int("window.kmin").map_err(usage)?.unwrap_or(-2),
            cfg.int("window.kmax").map_err(usage)?.unwrap_or(2),
        )),
    }
}

fn maxlen(flag: Option<usize>, cfg: &Config, default: usize) -> Result<usize, Failure> {
    match flag {
        Some(m) => Ok(m),
        None => Ok(cfg
            .int("maxlen")
            .map_err(usage)?
            .map_or(default, |m| m.max(0) as usize)),
    }
}

fn element(text: &str, cd: &CartanData) -> Result<Element, Failure> {
    let e = Element::from_json(text).map_err(usage)?;
    e.check_colors(cd).map_err(usage)?;
    Ok(e)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value serializes")
}

fn gamma_value(flag: Option<String>, cfg: &Config) -> Result<Option<Scalar>, Failure> {
    match flag {
        Some(g) => Ok(Some(g.parse().map_err(usage)?)),
        None => Ok(cfg
            .bool("gamma.specialize")
            .map_err(usage)?
            .unwrap_or(false)
            .then(Scalar::one)),
    }
}

fn cmd_omega(cd: CartanData, kind: Kind, color: usize, k: i64, text: &str) -> Res {
    cd.check_color(color).map_err(usage)?;
    let e = element(text, &cd)?;
    let out = match kind {
        Kind::Psi => omega_psi(&cd, color, k, &e),
        Kind::Phi => omega_phi(&cd, color, k, &e),
    };
    Ok(out.to_json())
}

fn cmd_gram(cd: CartanData, words: &str, gamma: Option<Scalar>, format: Format) -> Res {
    let raw: Vec<Vec<(usize, i64)>> = serde_json::from_str(words).map_err(usage)?;
    let ws: Vec<Word> = raw
        .iter()
        .map(|w| w.iter().map(|&(c, k)| Letter::new(c, k)).collect())
        .collect();
    for w in &ws {
        for l in w {
            cd.check_color(l.color).map_err(usage)?;
        }
    }
    let g = gram(&cd, &ws);
    let cells: Vec<Vec<String>> = match &gamma {
        None => g
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect(),
        Some(v) => {
            let c = sqrt_gamma(v).map_err(usage)?;
            g.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.specialize(&c).map(|s| s.to_string()))
                        .collect()
                })
                .collect::<Result<_, _>>()
                .map_err(internal)?
        }
    };
    Ok(match format {
        Format::Json => pretty(&json!({
            "cartan": cd.label(),
            "gamma": gamma.map(|v| v.to_string()),
            "words": raw,
            "matrix": cells,
        })),
        Format::Csv => cells
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| format!("\"{c}\""))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn read_matrix(path: &PathBuf) -> Result<Vec<Vec<Coefficient>>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let cells: Vec<Vec<String>> = if path.extension().is_some_and(|x| x == "csv") {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(',')
                    .map(|c| c.trim().trim_matches('"').to_string())
                    .collect()
            })
            .collect()
    } else {
        let v: Value = serde_json::from_str(&text).map_err(usage)?;
        let m = v.get("matrix").cloned().unwrap_or(v);
        serde_json::from_value(m).map_err(usage)?
    };
    let width = cells.first().map_or(0, |r| r.len());
    if cells.iter().any(|r| r.len() != width) {
        return Err(usage("matrix rows have different lengths"));
    }
    cells
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| {
                    c.parse::<Coefficient>()
                        .map_err(|e| usage(format!("{c:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

fn cmd_rank(path: &PathBuf, gamma: Option<Scalar>) -> Res {
    let m = read_matrix(path)?;
    let r = rank(&m, gamma.as_ref()).map_err(usage)?;
    Ok(pretty(&json!({
        "rows": m.len(),
        "cols": m.first().map_or(0, |r| r.len()),
        "gamma": gamma.map(|v| v.to_string()),
        "rank": r,
    })))
}

fn cmd_verify(cd: CartanData, id: &str, win: (i64, i64), maxlen: usize, params: (i64, i64)) -> Res {
    let identity: Identity = id.parse().map_err(usage)?;
    let words = all_words(cd.rank(), maxlen, win.0, win.1);
    let mut instances = 0;
    let mut failures = Vec::new();
    for i in 1..=cd.rank() {
        for j in 1..=cd.rank() {
            for m in params.0..=params.1 {
                for n in params.0..=params.1 {
                    let p = IdentityParams { i, j, m, n };
                    let rep = verify_operator_identity(&cd, identity, p, &words);
                    instances += rep.instances;
                    for f in rep.failures {
                        failures.push(json!({"params": p, "word": f.word, "residual": f.residual}));
                    }
                }
            }
        }
    }
    let report = pretty(&json!({
        "identity": identity.name(),
        "cartan": cd.label(),
        "window": [win.0, win.1],
        "maxlen": maxlen,
        "params": [params.0, params.1],
        "instances": instances,
        "failures": failures,
    }));
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Verification(report))
    }
}

fn cmd_straighten(cd: CartanData, text: &str, strategy: StrategyArg) -> Res {
    let e = element(text, &cd)?;
    let s = match strategy {
        StrategyArg::Leftmost => Strategy::Leftmost,
        StrategyArg::Rightmost => Strategy::Rightmost,
    };
    Ok(straighten_with(&cd, &e, s).map_err(usage)?.to_json())
}

fn parse_act(cd: &CartanData, act: &str, v: &VermaVector) -> Result<VermaVector, Failure> {
    let toks: Vec<&str> = act.split_whitespace().collect();
    let num = |t: &str| {
        t.parse::<i64>()
            .map_err(|_| usage(format!("bad integer {t:?} in --act")))
    };
    let color = |t: &str| -> Result<usize, Failure> {
        let i = t
            .parse::<usize>()
            .map_err(|_| usage(format!("bad color {t:?} in --act")))?;
        cd.check_color(i).map_err(usage)?;
        Ok(i)
    };
    match toks.as_slice() {
        ["x+", i, k] => Ok(act_xplus(cd, color(i)?, num(k)?, v)),
        ["x-", i, k] => Ok(act_xminus(color(i)?, num(k)?, v)),
        ["K", i] => Ok(act_k(cd, color(i)?, v)),
        ["D"] => Ok(act_d(cd, v)),
        _ => Err(usage(format!(
            "cannot parse --act {act:?}; use \"x+ i k\", \"x- i k\", \"K i\" or \"D\""
        ))),
    }
}

fn cmd_verma(
    cd: CartanData,
    lambda: &str,
    lambda_d: i64,
    act: Option<String>,
    on: Option<String>,
    witness: bool,
) -> Res {
    let lam: Vec<i64> = lambda
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| usage(format!("bad lambda entry {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    let hw = HighestWeight::new(&cd, lam, lambda_d).map_err(usage)?;
    if witness {
        let out = match reducibility_witness(&cd, &hw) {
            Some((i, v, rep)) => json!({
                "lambda": hw,
                "witness": {"color": i, "vector": v.elem.to_json_value(), "check": rep},
            }),
            None => json!({"lambda": hw, "witness": null}),
        };
        return Ok(pretty(&out));
    }
    let Some(act) = act else {
        return Err(usage("verma needs --act or --witness"));
    };
    let p = match on {
        Some(t) => element(&t, &cd)?,
        None => Element::one(),
    };
    let v = VermaVector::new(p, &hw).map_err(usage)?;
    let out = parse_act(&cd, &act, &v)?;
    Ok(pretty(&json!({
        "lambda": hw,
        "act": act,
        "result": out.elem.to_json_value(),
    })))
}

fn cmd_schur(k: u32, cd: Option<CartanData>, color: Option<usize>, sign: SignArg) -> Res {
    match (cd, color) {
        (Some(cd), Some(i)) => {
            cd.check_color(i).map_err(usage)?;
            let s = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            Ok(s_plus_minus(&cd, i, k, s).to_string())
        }
        _ => Ok(schur_poly(k).to_string()),
    }
}

fn cmd_suite(
    cd: CartanData,
    win: (i64, i64),
    maxlen: usize,
    samples: Option<usize>,
    seed: Option<u64>,
    cfg: &Config,
) -> Res {
    let mut sc = SuiteConfig {
        cartan: cd.label(),
        kmin: win.0,
        kmax: win.1,
        maxlen,
        ..SuiteConfig::default()
    };
    if let Some(s) = samples.or(cfg
        .int("suite.samples")
        .map_err(usage)?
        .map(|s| s.max(0) as usize))
    {
        sc.samples = s;
    }
    if let Some(s) = seed.or(cfg.int("suite.seed").map_err(usage)?.map(|s| s as u64)) {
        sc.seed = s;
    }
    let rep = run_suite(&cd, &sc);
    let text = pretty(&serde_json::to_value(&rep).map_err(internal)?);
    if rep.passed {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn run(cli: Cli) -> Res {
    let cfg = Config::load(cli.config.as_deref()).map_err(usage)?;
    match cli.command {
        Command::Omega {
            cartan: c,
            kind,
            color,
            component,
            element: e,
        } => cmd_omega(cartan(c, &cfg)?, kind, color, component, &e),
        Command::Gram {
            cartan: c,
            words,
            gamma,
            format,
        } => cmd_gram(cartan(c, &cfg)?, &words, gamma_value(gamma, &cfg)?, format),
        Command::Rank { matrix, gamma } => cmd_rank(&matrix, gamma_value(gamma, &cfg)?),
        Command::Verify {
            cartan: c,
            identity,
            window: w,
            maxlen: m,
            params,
        } => cmd_verify(
            cartan(c, &cfg)?,
            &identity,
            window(w, &cfg)?,
            maxlen(m, &cfg, 2)?,
            parse_range(&params)?,
        ),
        Command::Straighten {
            cartan: c,
            element: e,
            strategy,
        } => cmd_straighten(cartan(c, &cfg)?, &e, strategy),
        Command::Verma {
            cartan: c,
            lambda,
            lambda_d,
            act,
            on,
            witness,
        } => cmd_verma(cartan(c, &cfg)?, &lambda, lambda_d, act, on, witness),
        Command::Schur {
            k,
            cartan: c,
            color,
            sign,
        } => {
            let cd = if color.is_some() {
                Some(cartan(c, &cfg)?)
            } else {
                None
            };
            cmd_schur(k, cd, color, sign)
        }
        Command::Suite {
            cartan: c,
            window: w,
            maxlen: m,
            samples,
            seed,
        } => cmd_suite(
            cartan(c, &cfg)?,
            window(w, &cfg)?,
            maxlen(m, &cfg, 3)?,
            samples,
            seed,
            &cfg,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(report)) => {
            println!("{report}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
