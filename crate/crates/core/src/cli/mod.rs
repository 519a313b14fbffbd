//! Batch front end: `cohnloc <group> <action>` reads JSON documents from
//! `--in` files (or stdin), runs one library operation and writes one JSON
//! result. Exit codes: 0 success, 1 domain error, 2 parse or usage error.
//! Error payloads go to stdout and carry a `kind` field.

mod commands;
mod document;

use std::ffi::OsString;
use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::Parser;
use serde_json::{json, Value};

pub use commands::{run, Options, COMMANDS};
pub use document::{
    document_from_value, document_to_value, parse_document, parse_document_with, parse_ring, parse_sigma,
    print_document, Document, Payload, VERSION,
};

use crate::error::Error;
use crate::ltheory::{Epsilon, Side, WITT_BOUND};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Syntax { line: usize, column: usize, message: String },
    /// A document that parses but violates the schema or an invariant.
    Semantic { kind: &'static str, message: String },
    Usage(String),
    Domain(Error),
}

impl CliError {
    pub(crate) fn from_json(e: serde_json::Error) -> CliError {
        CliError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax",
            CliError::Semantic { kind, .. } => kind,
            CliError::Usage(_) => "usage",
            CliError::Domain(e) => e.kind(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"kind": self.kind(), "message": self.to_string(), "exit": self.exit_code()});
        if let CliError::Syntax { line, column, .. } = self {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        v
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax { message, .. } => write!(f, "syntax error: {message}"),
            CliError::Semantic { message, .. } => write!(f, "{message}"),
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "cohnloc", version, about = "Exact computations in Cohn localizations")]
pub struct Args {
    /// localize | complex | lift | ltheory
    pub group: String,
    /// e.g. eval, homology, clear, boundary
    pub action: String,
    /// JSON ring descriptor used when a document has no "ring"
    #[arg(long = "ring", value_name = "FILE")]
    pub ring: Option<PathBuf>,
    /// JSON sigma descriptor used when a document has no "sigma"
    #[arg(long = "sigma", value_name = "FILE")]
    pub sigma: Option<PathBuf>,
    /// input document(s); a file may hold several documents
    #[arg(long = "in", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    #[arg(long = "out", value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// sign of the structure (1 or -1)
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub eps: i64,
    /// degree n for Q-groups
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub degree: i64,
    /// symmetric or quadratic
    #[arg(long, default_value = "symmetric")]
    pub side: String,
    /// highest Tor index reported
    #[arg(long = "max-i", default_value_t = 2)]
    pub max_i: usize,
    /// bound on |M| for the metabolic search
    #[arg(long, default_value_t = WITT_BOUND)]
    pub bound: u64,
    /// longest word listed when evaluating a free-algebra series
    #[arg(long, default_value_t = 3)]
    pub length: usize,
}

fn read_json_file(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(CliError::from_json)
}

/// Splits a text into consecutive JSON values.
fn split_documents(text: &str) -> Result<Vec<Value>, CliError> {
    serde_json::Deserializer::from_str(text)
        .into_iter::<Value>()
        .map(|v| v.map_err(CliError::from_json))
        .collect()
}

fn options(args: &Args) -> Result<Options, CliError> {
    let eps = Epsilon::from_i64(args.eps).map_err(|e| CliError::Usage(e.to_string()))?;
    let side = match args.side.as_str() {
        "symmetric" => Side::Symmetric,
        "quadratic" => Side::Quadratic,
        s => return Err(CliError::Usage(format!("--side must be symmetric or quadratic, got {s}"))),
    };
    Ok(Options { eps, degree: args.degree, side, max_i: args.max_i, bound: args.bound, length: args.length })
}

/// Runs one invocation and returns the output document text.
pub fn execute(args: &Args, stdin: &mut dyn Read) -> Result<String, CliError> {
    let opts = options(args)?;
    let ring = args.ring.as_ref().map(read_json_file).transpose()?;
    let sigma = args.sigma.as_ref().map(read_json_file).transpose()?;
    let mut texts = Vec::new();
    if args.inputs.is_empty() {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        texts.push(s);
    }
    for p in &args.inputs {
        texts.push(std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?);
    }
    let mut docs = Vec::new();
    for t in &texts {
        for v in split_documents(t)? {
            docs.push(document_from_value(&v, ring.as_ref(), sigma.as_ref())?);
        }
    }
    let out = run(&args.group, &args.action, &docs, &opts)?;
    Ok(serde_json::to_string(&out).expect("serializable"))
}

/// Full command-line entry point; returns the exit code.
pub fn main_with<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (text, code) = match execute(&args, stdin) {
        Ok(t) => (t, 0),
        Err(e) => (serde_json::to_string(&e.to_json()).expect("serializable"), e.exit_code()),
    };
    let written = match (&args.out, code) {
        (Some(path), 0) => std::fs::write(path, format!("{text}\n")),
        _ => writeln!(stdout, "{text}"),
    };
    if let Err(e) = written {
        eprintln!("cohnloc: {e}");
        return 2;
    }
    code
}
