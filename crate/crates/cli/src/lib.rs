//! Argument handling for the `shufflecraft` binary, kept in a library so
//! tests can drive it without spawning processes.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use shufflecraft_core::catalog::{verify_catalog, Catalog};
use shufflecraft_core::construct::Constructor;
use shufflecraft_core::enumerate::{enumeration_row, find_self_shuffle_betas, unshuffle_square_free};
use shufflecraft_core::limit::{
    verify_abelian_periodicity, verify_lyndon_example, verify_theorem4, verify_theorem5, PrefixVerdict,
};
use shufflecraft_core::morphism::{
    certify_square_free_morphism, certify_square_free_substitution, substitution_test_length, Certificate,
};
use shufflecraft_core::reproduce::scorecard;
use shufflecraft_core::shuffle::shuffle_conducted;
use shufflecraft_core::{ConductingSequence, Error, Morphism, Substitution, Word};

pub const EXIT_OK: i32 = 0;
/// A mathematical check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Bad arguments or unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub output: String,
}

impl CommandResult {
    fn ok(output: String) -> Self {
        CommandResult { exit_code: EXIT_OK, output }
    }

    fn check(passed: bool, output: String) -> Self {
        CommandResult {
            exit_code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
            output,
        }
    }

    fn usage(output: String) -> Self {
        CommandResult {
            exit_code: EXIT_USAGE,
            output,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "shufflecraft", version, about = "Square-free words and their self-shuffles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct JsonFlag {
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the leftmost square of a word, if any.
    Squarefree {
        word: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// The shuffle of two words conducted by a bit string.
    Shuffle {
        u: String,
        v: String,
        beta: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Conducting sequences giving square-free self-shuffles of a word.
    FindBeta {
        u: String,
        /// List every sequence.
        #[arg(long, conflicts_with = "limit")]
        all: bool,
        /// List at most this many sequences (default 1).
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Write a square-free word as a self-shuffle of a square-free word.
    Unshuffle {
        w: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Counts of square-free words and self-shuffles for even lengths.
    Enumerate {
        #[arg(long)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certify a morphism given as a file or a catalog name.
    CertifyMorphism {
        source: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Certify a substitution given as a file or a catalog name.
    CertifySubstitution {
        source: String,
        /// Length of the source words tested (default from the image lengths).
        #[arg(long)]
        length: Option<usize>,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Prefix of the fixed point of a catalog morphism.
    FixedPoint {
        name: String,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u8,
    },
    /// Build and verify a witness of the given length.
    Construct {
        #[arg(long)]
        length: usize,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Build witnesses for every length from 3 to the bound.
    Coverage {
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Prefix checks of the infinite-word statements.
    Verify {
        #[arg(value_enum)]
        statement: Statement,
        #[arg(long, default_value_t = 10_000)]
        prefix: usize,
        /// Block length for the abelian check.
        #[arg(long, default_value_t = 48)]
        period: usize,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Inspect or verify the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run every reproduction check and print a scorecard.
    VerifyPaper {
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Print entries as JSON.
    Dump {
        /// Only this entry.
        #[arg(long)]
        name: Option<String>,
    },
    Verify {
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Statement {
    Theorem4,
    Theorem5,
    Abelian,
    Lyndon,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return CommandResult {
                exit_code: code,
                output: e.render().to_string(),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(result) => result,
        Err(e) => CommandResult::usage(format!("error: {e}\n")),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn word(text: &str) -> Result<Word, Error> {
    text.parse()
}

fn dispatch(command: Command) -> Result<CommandResult, Error> {
    match command {
        Command::Squarefree { word: text, out } => {
            let w = word(&text)?;
            let square = w.find_square();
            let output = if out.json {
                json(&serde_json::json!({ "word": w, "square_free": square.is_none(), "square": square }))?
            } else {
                match square {
                    None => format!("{w}: square-free\n"),
                    Some(sq) => format!(
                        "{w}: square at {sq}, factor {}\n",
                        w.factor(sq.start..sq.end())
                    ),
                }
            };
            Ok(CommandResult::check(square.is_none(), output))
        }
        Command::Shuffle { u, v, beta, out } => {
            let (u, v) = (word(&u)?, word(&v)?);
            let (u, v) = widen_pair(u, v)?;
            let beta: ConductingSequence = beta.parse()?;
            let w = shuffle_conducted(&u, &v, &beta)?;
            Ok(CommandResult::ok(if out.json {
                json(&serde_json::json!({ "u": u, "v": v, "beta": beta, "w": w, "square_free": w.is_square_free() }))?
            } else {
                format!("{w}\n")
            }))
        }
        Command::FindBeta { u, all, limit, out } => {
            let u = word(&u)?;
            let limit = if all { None } else { Some(limit.unwrap_or(1)) };
            let found = find_self_shuffle_betas(&u, limit);
            let output = if out.json {
                let rows: Vec<_> = found
                    .iter()
                    .map(|(beta, w)| serde_json::json!({ "beta": beta, "w": w }))
                    .collect();
                json(&serde_json::json!({ "u": u, "results": rows }))?
            } else if found.is_empty() {
                format!("{u}: no square-free self-shuffle\n")
            } else {
                found.iter().map(|(beta, w)| format!("{beta} {w}\n")).collect()
            };
            Ok(CommandResult::check(!found.is_empty(), output))
        }
        Command::Unshuffle { w, out } => {
            let w = word(&w)?;
            let found = unshuffle_square_free(&w);
            let output = if out.json {
                json(&serde_json::json!({
                    "w": w,
                    "u": found.as_ref().map(|f| &f.0),
                    "beta": found.as_ref().map(|f| &f.1),
                }))?
            } else {
                match &found {
                    Some((u, beta)) => format!("u {u}\nbeta {beta}\n"),
                    None => format!("{w}: not a self-shuffle of a square-free word\n"),
                }
            };
            Ok(CommandResult::check(found.is_some(), output))
        }
        Command::Enumerate { max_length, format } => {
            let rows = (4..=max_length)
                .step_by(2)
                .map(enumeration_row)
                .collect::<Result<Vec<_>, _>>()?;
            let output = match format {
                Format::Json => json(&rows)?,
                Format::Csv => {
                    let mut s = String::from("length,square_free,shuffle_words,shuffleable_u\n");
                    for r in &rows {
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            r.length, r.square_free_count, r.shuffle_word_count, r.shuffleable_u_count
                        );
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("{:>4} {:>12} {:>12} {:>6}\n", "L", "square-free", "shuffles", "u");
                    for r in &rows {
                        let _ = writeln!(
                            s,
                            "{:>4} {:>12} {:>12} {:>6}",
                            r.length, r.square_free_count, r.shuffle_word_count, r.shuffleable_u_count
                        );
                    }
                    s
                }
            };
            Ok(CommandResult::ok(output))
        }
        Command::CertifyMorphism { source, out } => {
            let h = load_morphism(&source)?;
            let cert = certify_square_free_morphism(&h).named(source);
            Ok(CommandResult::check(cert.is_certified(), render_certificate(&cert, out.json)?))
        }
        Command::CertifySubstitution { source, length, out } => {
            let s = load_substitution(&source)?;
            let length = length.unwrap_or_else(|| substitution_test_length(&s));
            let cert = certify_square_free_substitution(&s, length).named(source);
            Ok(CommandResult::check(cert.is_certified(), render_certificate(&cert, out.json)?))
        }
        Command::FixedPoint { name, length, seed } => {
            let h = load_morphism(&name)?;
            Ok(CommandResult::ok(format!("{}\n", h.fixed_point_prefix(seed, length)?)))
        }
        Command::Construct { length, out } => {
            let built = Constructor::from_env()?.construct_witness(length)?;
            Ok(CommandResult::ok(if out.json {
                json(&built)?
            } else {
                format!(
                    "n {}\nu {}\nbeta {}\nw {}\nstrategy {}\nrecipe {}\n",
                    built.n, built.u, built.beta, built.w, built.strategy, built.recipe
                )
            }))
        }
        Command::Coverage { max, out } => {
            let report = Constructor::from_env()?.coverage_report(max)?;
            let output = if out.json {
                json(&report)?
            } else {
                let mut s = format!("lengths {}..={}\n", report.low, report.high);
                for (strategy, count) in report.tally() {
                    let _ = writeln!(s, "{strategy} {count}");
                }
                let _ = writeln!(s, "gaps {:?}", report.gaps);
                s
            };
            Ok(CommandResult::check(report.gaps.is_empty(), output))
        }
        Command::Verify {
            statement,
            prefix,
            period,
            out,
        } => {
            let verdict = match statement {
                Statement::Theorem4 => verify_theorem4(prefix)?,
                Statement::Theorem5 => verify_theorem5(prefix)?,
                Statement::Abelian => verify_abelian_periodicity(prefix, period)?,
                Statement::Lyndon => verify_lyndon_example()?,
            };
            Ok(CommandResult::check(verdict.holds, render_verdict(&verdict, out.json)?))
        }
        Command::Catalog { action } => match action {
            CatalogAction::Dump { name } => {
                let catalog = Catalog::embedded();
                Ok(CommandResult::ok(match name {
                    Some(name) => json(catalog.get(&name)?)?,
                    None => json(&catalog.entries())?,
                }))
            }
            CatalogAction::Verify { out } => {
                let report = verify_catalog();
                let output = if out.json {
                    json(&report)?
                } else {
                    let mut s = String::new();
                    for row in &report.rows {
                        let _ = write!(
                            s,
                            "{} {} {}",
                            if row.passed { "pass" } else { "FAIL" },
                            row.entry,
                            row.check
                        );
                        if !row.detail.is_empty() {
                            let _ = write!(s, " ({})", row.detail);
                        }
                        s.push('\n');
                    }
                    let _ = writeln!(s, "{} checks, {} failed", report.rows.len(), report.failures().count());
                    s
                };
                Ok(CommandResult::check(report.all_passed(), output))
            }
        },
        Command::VerifyPaper { out } => {
            let results = scorecard();
            let passed = results.iter().all(|r| r.passed);
            let output = if out.json {
                json(&results)?
            } else {
                let mut s = String::new();
                for r in &results {
                    let _ = writeln!(
                        s,
                        "[{}] {:>2} {} ({:.1}s): {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.number,
                        r.title,
                        r.seconds,
                        r.detail
                    );
                }
                let _ = writeln!(
                    s,
                    "{}/{} criteria passed",
                    results.iter().filter(|r| r.passed).count(),
                    results.len()
                );
                s
            };
            Ok(CommandResult::check(passed, output))
        }
    }
}

/// Words typed on the command line infer their alphabet; shuffling needs
/// a common one.
fn widen_pair(u: Word, v: Word) -> Result<(Word, Word), Error> {
    let k = u.alphabet().max(v.alphabet());
    Ok((u.widen(k)?, v.widen(k)?))
}

fn load_morphism(source: &str) -> Result<Morphism, Error> {
    if Path::new(source).is_file() {
        Morphism::parse(&std::fs::read_to_string(source)?)
    } else {
        Catalog::embedded().morphism(source).cloned()
    }
}

fn load_substitution(source: &str) -> Result<Substitution, Error> {
    if Path::new(source).is_file() {
        Substitution::parse(&std::fs::read_to_string(source)?)
    } else {
        Catalog::embedded().substitution(source).cloned()
    }
}

fn render_certificate(cert: &Certificate, as_json: bool) -> Result<String, Error> {
    if as_json {
        return json(cert);
    }
    let mut s = format!(
        "{}: {:?} ({} words, test length {})\n",
        cert.subject, cert.verdict, cert.checked_count, cert.bound_used
    )
    .to_lowercase();
    if let Some(cx) = &cert.counterexample {
        let _ = writeln!(s, "counterexample {} -> {}, square at {}", cx.source, cx.image, cx.square);
    }
    if let Some(p) = &cert.properties {
        let _ = writeln!(
            s,
            "no inner occurrence {}, prefix-free {}, distinct last letters {}",
            p.no_inner_occurrence, p.prefix_free, p.distinct_last_letters
        );
    }
    Ok(s)
}

fn render_verdict(v: &PrefixVerdict, as_json: bool) -> Result<String, Error> {
    if as_json {
        return json(v);
    }
    let mut s = format!(
        "{} on {} letters: {}\n",
        v.theorem,
        v.prefix_length,
        if v.holds { "holds" } else { "fails" }
    );
    for c in &v.checks {
        let _ = write!(s, "  {} {}", if c.holds { "ok" } else { "FAIL" }, c.name);
        if let Some(p) = c.first_violation {
            let _ = write!(s, " at {p}");
        }
        s.push('\n');
    }
    if let Some(d) = &v.detail {
        let _ = writeln!(s, "  {d}");
    }
    Ok(s)
}
