//! Command dispatch. Element arguments are a file path, inline JSON, or
//! `word:…`. Results go to standard output as JSON; errors go to standard
//! error with exit codes 1 (usage), 2 (parse), 3 (domain), 4 (internal).

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thompson_core::exact::{fraction_string, parse_fraction};
use thompson_core::sigma::sigma_of;
use thompson_core::word::format_word;
use thompson_core::{
    centralizer_structure, check_in_f, conjugator_witness, decide, delta_of, r_generator, root_extract, Error,
    FElement,
};

use crate::exit_code;
use crate::format::{centralizer_value, delta_value, element_value, parse_element, parse_map_json, sigma_value};
use crate::oracle::Oracle;
use crate::random::{reduced_word, seeded};
use crate::search::{confirm, search, SearchConfig};

#[derive(Parser, Debug)]
#[command(name = "thompson", version, about = "Conjugacy, roots and centralizers in Thompson's group F")]
struct Cli {
    /// Emit JSON (the only output format).
    #[arg(long, global = true, default_value_t = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify membership in F.
    Check { element: String },
    /// Evaluate at a rational point.
    Eval { element: String, x: String },
    /// Composite `a∘b` (b acts first).
    Mul { a: String, b: String },
    Inv { element: String },
    Pow {
        element: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    Sigma { element: String },
    Delta { element: String },
    /// Conjugacy in F, with the first invariant that differs.
    Conj { a: String, b: String },
    /// A verified `h` with `h a h⁻¹ = b`, or null.
    Witness { a: String, b: String },
    /// The `p`-th root in F, or null.
    Root { element: String, p: u64 },
    /// Generator of the group of roots.
    Rgen { element: String },
    Centralizer { element: String },
    /// A random element from a reduced word of the given length.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        len: usize,
    },
    /// Brute-force conjugator search over short words.
    OracleConj {
        a: String,
        b: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Brute-force root search over short words.
    OracleRoot {
        element: String,
        p: u32,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Number of distinct elements of word length at most `max-len`.
    OracleCount {
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Randomised search for Σ-equal pairs not conjugate in F.
    Search {
        #[arg(long, default_value_t = SearchConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SearchConfig::default().samples)]
        samples: usize,
        #[arg(long, default_value_t = SearchConfig::default().max_len)]
        max_len: usize,
        /// Also check each pair against every word of this length.
        #[arg(long)]
        confirm_len: Option<usize>,
    },
}

/// Reads an element argument: inline text or a file.
fn load_text(arg: &str) -> Result<String, Error> {
    let t = arg.trim_start();
    if t.starts_with("word:") || t.starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Usage(format!("cannot read {arg}: {e}")))
}

fn load(arg: &str) -> Result<FElement, Error> {
    parse_element(&load_text(arg)?)
}

fn option_value(f: Option<FElement>) -> Value {
    f.as_ref().map_or(Value::Null, element_value)
}

fn oracle_bound(max_len: Option<usize>) -> Result<(Oracle, usize), Error> {
    let oracle = Oracle::from_env()?;
    Ok((oracle, max_len.unwrap_or(oracle.bound())))
}

fn execute(cmd: Command) -> Result<(Value, i32), Error> {
    let ok = |v: Value| Ok((v, 0));
    match cmd {
        Command::Check { element } => {
            let text = load_text(&element)?;
            if text.trim_start().starts_with("word:") {
                return ok(json!({ "in_f": true, "element": element_value(&parse_element(&text)?) }));
            }
            let map = parse_map_json(&text)?;
            match check_in_f(&map) {
                Ok(f) => ok(json!({ "in_f": true, "element": element_value(&f) })),
                Err(d) => Ok((json!({ "in_f": false, "diagnosis": d.to_string() }), 3)),
            }
        }
        Command::Eval { element, x } => {
            let f = load(&element)?;
            ok(json!({ "value": fraction_string(&f.evaluate(&parse_fraction(&x)?)?) }))
        }
        Command::Mul { a, b } => ok(element_value(&load(&a)?.compose(&load(&b)?))),
        Command::Inv { element } => ok(element_value(&load(&element)?.inverse())),
        Command::Pow { element, n } => ok(element_value(&load(&element)?.power(n))),
        Command::Sigma { element } => ok(sigma_value(&sigma_of(load(&element)?.map())?)),
        Command::Delta { element } => ok(delta_value(&delta_of(&load(&element)?)?)),
        Command::Conj { a, b } => {
            let v = decide(&load(&a)?, &load(&b)?)?;
            ok(json!({ "conjugate": v.conjugate, "reason": v.reason.map(|r| r.as_str()) }))
        }
        Command::Witness { a, b } => ok(option_value(conjugator_witness(&load(&a)?, &load(&b)?)?)),
        Command::Root { element, p } => ok(option_value(root_extract(&load(&element)?, p)?)),
        Command::Rgen { element } => {
            let (g, n) = r_generator(&load(&element)?)?;
            ok(json!({ "root": element_value(&g), "order": n }))
        }
        Command::Centralizer { element } => ok(centralizer_value(&centralizer_structure(&load(&element)?)?)),
        Command::Random { seed, len } => {
            let w = reduced_word(&mut seeded(seed), len);
            let f = thompson_core::word_to_element(&w);
            ok(json!({ "word": format_word(&w), "element": element_value(&f) }))
        }
        Command::OracleConj { a, b, max_len } => {
            let (oracle, n) = oracle_bound(max_len)?;
            ok(option_value(oracle.brute_force_conjugator(&load(&a)?, &load(&b)?, n)?))
        }
        Command::OracleRoot { element, p, max_len } => {
            let (oracle, n) = oracle_bound(max_len)?;
            ok(option_value(oracle.brute_force_root(&load(&element)?, p, n)?))
        }
        Command::OracleCount { max_len } => {
            let (oracle, n) = oracle_bound(max_len)?;
            ok(json!({ "max_len": n, "count": oracle.enumerate(n)?.len() }))
        }
        Command::Search { seed, samples, max_len, confirm_len } => {
            let report = search(&SearchConfig { seed, samples, max_len })?;
            let mut v = serde_json::to_value(&report).expect("serializable");
            if let Some(bound) = confirm_len {
                v["confirmed_without_conjugator"] = json!(confirm(&report.pairs, bound)?);
            }
            ok(v)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let _ = cli.json;
    match execute(cli.command) {
        Ok((value, code)) => {
            let _ = writeln!(out, "{value}");
            code
        }
        Err(e) => {
            let kind = match exit_code(&e) {
                1 => "usage",
                2 => "parse",
                3 => "domain",
                _ => "internal",
            };
            let _ = writeln!(err, "{}", json!({ "error": kind, "message": e.to_string() }));
            exit_code(&e)
        }
    }
}
