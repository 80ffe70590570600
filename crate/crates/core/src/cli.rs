//! The `pathend` command line. Every invocation prints one JSON object.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::closure::{
    brute_force_rank, generate_with_limit, rank_certificate, rank_formula, relative_rank_check, word_for_with_limit,
    DEFAULT_CLOSURE_LIMIT, DEFAULT_SUBSET_BUDGET,
};
use crate::enumeration::{count_class_dp, default_cap, enumerate_class_capped};
use crate::error::Error;
use crate::formulas::{wend_count, wend_count_closed, wend_count_recursive};
use crate::generators::{family, FamilyName};
use crate::reductions::verify_all;
use crate::regularity::{class_regular, regular_by_criterion};
use crate::transformation::{EndoClass, Transformation};

#[derive(Parser, Debug)]
#[command(name = "pathend", version, about = "Endomorphism monoids of the path P_n")]
struct Cli {
    /// worker threads (results do not depend on this)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size of a class
    Count {
        #[arg(long)]
        class: EndoClass,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Enumerate)]
        method: Method,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// |wEnd P_n| from the closed formula, cross-checked by the recursion
    Formula {
        #[arg(long)]
        n: usize,
    },
    /// Lists a class, optionally dumping it to a file
    Enumerate {
        #[arg(long)]
        class: EndoClass,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Members of a generator family
    Gens {
        #[arg(long)]
        family: FamilyName,
        #[arg(long)]
        n: usize,
    },
    /// Size of the generated submonoid, optionally compared with a class
    Closure {
        #[command(flatten)]
        gens: GenSource,
        #[arg(long)]
        check_equal: Option<EndoClass>,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_LIMIT)]
        limit: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Rank of End, wEnd or swEnd
    Rank {
        #[arg(long)]
        class: EndoClass,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: u64,
    },
    /// Relative rank of wEnd P_n modulo End P_n
    RelativeRank {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: u64,
    },
    /// Regularity of one element or of a whole class
    Regular {
        #[arg(long)]
        class: Option<EndoClass>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        element: Option<Transformation>,
    },
    /// Structure checks and reduction suites
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Shortest word over a family for an element
    Word {
        #[command(flatten)]
        gens: GenSource,
        #[arg(long)]
        element: Transformation,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_LIMIT)]
        limit: usize,
    },
}

#[derive(Args, Debug)]
struct GenSource {
    /// a named family (needs --n)
    #[arg(long, conflicts_with = "gen")]
    family: Option<FamilyName>,
    #[arg(long)]
    n: Option<usize>,
    /// an explicit generator, repeatable
    #[arg(long = "gen")]
    gen: Vec<Transformation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Enumerate,
    Dp,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Bruteforce,
    Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Value,
}

/// One invocation's output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub payload: Value,
    pub elapsed_ms: u64,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass | Verdict::Value => 0,
            Verdict::Fail => 1,
        }
    }
}

/// Why an invocation produced no result.
#[derive(Clone, Debug, PartialEq)]
pub enum CliError {
    /// bad arguments; `exit_code` 2
    Usage(String),
    /// a size guard or search budget was hit; `exit_code` 3
    Guard(String),
    /// a library error that is neither; `exit_code` 1
    Failed(String),
    /// `--help` or `--version`; printed as is, `exit_code` 0
    Info(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Info(_) => "info",
            CliError::Failed(_) => "failed",
            CliError::Usage(_) => "usage",
            CliError::Guard(_) => "guard",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Guard(m) | CliError::Failed(m) | CliError::Info(m) => m,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.kind(), "reason": self.message() })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::ClosureTooLarge { .. } => CliError::Guard(e.to_string()),
            Error::Consistency(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CliResult<CommandResult>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    match cli.threads {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {k} threads: {e}")))?;
            pool.install(|| dispatch(cli.command))
        }
        None => dispatch(cli.command),
    }
}

/// Runs `argv`, prints the JSON result, and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match run(argv) {
        Ok(result) => {
            println!("{}", serde_json::to_string(&result).expect("serializable"));
            result.exit_code()
        }
        Err(CliError::Info(text)) => {
            print!("{text}");
            0
        }
        Err(err) => {
            println!("{}", err.to_json());
            if let CliError::Usage(msg) = &err {
                eprintln!("{msg}");
            }
            err.exit_code()
        }
    }
}

struct Builder {
    command: &'static str,
    parameters: BTreeMap<String, Value>,
    start: Instant,
}

impl Builder {
    fn new(command: &'static str) -> Self {
        Builder {
            command,
            parameters: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    fn finish(self, verdict: Verdict, payload: Value) -> CliResult<CommandResult> {
        Ok(CommandResult {
            command: self.command.to_string(),
            parameters: self.parameters,
            verdict,
            payload,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        })
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn method_key(m: Method) -> &'static str {
    match m {
        Method::Enumerate => "enumerate",
        Method::Dp => "dp",
        Method::Formula => "formula",
    }
}

fn mode_key(m: Mode) -> &'static str {
    match m {
        Mode::Formula => "formula",
        Mode::Bruteforce => "bruteforce",
        Mode::Certificate => "certificate",
    }
}

fn resolve_gens(src: &GenSource) -> CliResult<(Vec<Transformation>, Vec<String>)> {
    match (src.family, src.gen.is_empty()) {
        (Some(name), true) => {
            let n = src.n.ok_or_else(|| CliError::Usage("--family needs --n".into()))?;
            let fam = family(name, n)?;
            Ok((fam.members, fam.labels))
        }
        (None, false) => {
            let labels = src.gen.iter().map(|g| g.to_string()).collect();
            Ok((src.gen.clone(), labels))
        }
        (None, true) => Err(CliError::Usage("give --family and --n, or at least one --gen".into())),
        (Some(_), false) => Err(CliError::Usage("--family and --gen are exclusive".into())),
    }
}

fn gens_param(src: &GenSource, builder: Builder) -> Builder {
    match src.family {
        Some(f) => builder.param("family", f.key()).param("n", src.n),
        None => builder.param("gens", src.gen.iter().map(|g| g.to_string()).collect::<Vec<_>>()),
    }
}

fn dispatch(command: Command) -> CliResult<CommandResult> {
    match command {
        Command::Count { class, n, method, cap } => {
            let b = Builder::new("count")
                .param("class", class.key())
                .param("n", n)
                .param("method", method_key(method));
            let count = match method {
                Method::Enumerate => enumerate_class_capped(class, n, cap.unwrap_or_else(default_cap))?.cardinality(),
                Method::Dp => count_class_dp(class, n)?,
                Method::Formula if class == EndoClass::WEnd => wend_count(n)?,
                Method::Formula => return Err(CliError::Usage(format!("no counting formula for {class}"))),
            };
            b.finish(Verdict::Value, json!({ "count": count.to_string() }))
        }
        Command::Formula { n } => {
            let b = Builder::new("formula").param("n", n);
            if n < 2 {
                return b.finish(Verdict::Value, json!({ "count": wend_count(n)?.to_string() }));
            }
            let closed = wend_count_closed(n)?;
            let recursive = wend_count_recursive(n)?;
            if closed != recursive {
                return Err(CliError::Failed(format!(
                    "closed form {closed} ≠ recursion {recursive}"
                )));
            }
            b.finish(
                Verdict::Value,
                json!({ "count": closed.to_string(), "digits": closed.to_string().len() }),
            )
        }
        Command::Enumerate { class, n, out, cap } => {
            let b = Builder::new("enumerate")
                .param("class", class.key())
                .param("n", n)
                .param("out", &out);
            let set = enumerate_class_capped(class, n, cap.unwrap_or_else(default_cap))?;
            let payload = match out {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    let mut w = BufWriter::new(file);
                    set.write_dump(&mut w)
                        .and_then(|_| w.flush())
                        .map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))?;
                    json!({ "count": set.len().to_string(), "out": path })
                }
                None => json!({
                    "count": set.len().to_string(),
                    "elements": set.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                }),
            };
            b.finish(Verdict::Value, payload)
        }
        Command::Gens { family: name, n } => {
            let b = Builder::new("gens").param("family", name.key()).param("n", n);
            let fam = family(name, n)?;
            let members: Vec<Value> = fam
                .labels
                .iter()
                .zip(&fam.members)
                .map(|(label, t)| json!({ "label": label, "element": t.to_string() }))
                .collect();
            b.finish(Verdict::Value, json!({ "size": fam.len(), "members": members }))
        }
        Command::Closure {
            gens,
            check_equal,
            limit,
            cap,
        } => {
            let b = gens_param(&gens, Builder::new("closure")).param("check_equal", check_equal.map(|c| c.key()));
            let (members, _) = resolve_gens(&gens)?;
            let closure = generate_with_limit(&members, limit)?;
            let Some(class) = check_equal else {
                return b.finish(Verdict::Value, json!({ "size": closure.len() }));
            };
            let target = enumerate_class_capped(class, closure.n(), cap.unwrap_or_else(default_cap))?;
            let sample = |it: &mut dyn Iterator<Item = &Transformation>| -> Vec<String> {
                it.take(10).map(|t| t.to_string()).collect()
            };
            let missing = sample(&mut target.difference(&closure));
            let extra = sample(&mut closure.difference(&target));
            let equal = closure == target;
            b.finish(
                pass_if(equal),
                json!({
                    "size": closure.len(),
                    "class_size": target.len(),
                    "equal": equal,
                    "missing_sample": missing,
                    "extra_sample": extra,
                }),
            )
        }
        Command::Rank { class, n, mode, budget } => {
            let b = Builder::new("rank")
                .param("class", class.key())
                .param("n", n)
                .param("mode", mode_key(mode));
            match mode {
                Mode::Formula => {
                    let rank = rank_formula(class, n)?;
                    b.finish(Verdict::Value, json!({ "rank": rank }))
                }
                Mode::Bruteforce => {
                    let b = b.param("budget", budget);
                    let rank = brute_force_rank(class, n, budget)?
                        .ok_or_else(|| CliError::Guard(format!("subset budget {budget} exhausted")))?;
                    let formula = rank_formula(class, n).ok();
                    b.finish(
                        Verdict::Value,
                        json!({ "rank": rank, "formula": formula, "agrees": formula.map(|f| f == rank) }),
                    )
                }
                Mode::Certificate => {
                    let cert = rank_certificate(class, n)?;
                    b.finish(
                        pass_if(cert.is_valid()),
                        serde_json::to_value(&cert).expect("serializable"),
                    )
                }
            }
        }
        Command::RelativeRank { n, budget } => {
            let b = Builder::new("relative-rank").param("n", n).param("budget", budget);
            let check = relative_rank_check(n, budget)?;
            let ok = check.upper_ok && check.lower_ok != Some(false);
            b.finish(
                pass_if(ok),
                json!({
                    "relative_rank": n / 2,
                    "upper_ok": check.upper_ok,
                    "lower_ok": check.lower_ok,
                    "lower_checked": check.lower_ok.is_some(),
                }),
            )
        }
        Command::Regular { class, n, element } => {
            let b = Builder::new("regular")
                .param("class", class.map(|c| c.key()))
                .param("n", n);
            match (element, n) {
                (Some(t), _) => {
                    let class = class.unwrap_or(if t.is_endomorphism() {
                        EndoClass::End
                    } else {
                        EndoClass::WEnd
                    });
                    let b = b.param("element", t.to_string());
                    let report = regular_by_criterion(&t, class)?;
                    b.finish(Verdict::Value, serde_json::to_value(&report).expect("serializable"))
                }
                (None, Some(n)) => {
                    let class = class.ok_or_else(|| CliError::Usage("--n needs --class".into()))?;
                    let verdict = class_regular(class, n)?;
                    b.finish(Verdict::Value, serde_json::to_value(&verdict).expect("serializable"))
                }
                (None, None) => Err(CliError::Usage("give --element, or --class and --n".into())),
            }
        }
        Command::Verify { n } => {
            let b = Builder::new("verify").param("n", n);
            let report = verify_all(n)?;
            b.finish(pass_if(report.passed()), json!({ "checks": report.checks }))
        }
        Command::Word { gens, element, limit } => {
            let b = gens_param(&gens, Builder::new("word")).param("element", element.to_string());
            let (members, labels) = resolve_gens(&gens)?;
            match word_for_with_limit(&members, &element, limit)? {
                Some(word) => {
                    let spelled: Vec<&str> = word.iter().map(|&k| labels[k].as_str()).collect();
                    b.finish(
                        Verdict::Pass,
                        json!({ "found": true, "length": word.len(), "word": spelled, "indices": word }),
                    )
                }
                None => b.finish(Verdict::Fail, json!({ "found": false })),
            }
        }
    }
}
