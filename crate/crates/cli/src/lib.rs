//! Command-line front end for `kmgrad-core`.
//!
//! Every verb calls one library routine and wraps its serialized result in
//! a [`Report`]. Exit codes: 0 on success, 1 for domain errors (a pair that
//! is not C-admissible, a failed check, ...), 2 for bad input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use kmgrad_core::cadmissible::{
    build_aj, check_pair, enumerate_pairs, orbit_cap_from_env, weight_fiber,
};
use kmgrad_core::diagram::Diagram;
use kmgrad_core::families::builtin;
use kmgrad_core::gradation::{
    analyze, cartan_constraints, check_adapted, fiber_counts, imaginary_sign_check,
    paper_s5_composed, RestrictionSpec,
};
use kmgrad_core::quotient::{
    build_abar, check_quotient, enumerate_quotients, parse_fibers, verify_maximal,
};
use kmgrad_core::rootsys::{enumerate_positive_roots, BilinearData, Normalization};
use kmgrad_core::{Error, Gcm, RootVec};

pub const SCHEMA: &str = "kmgrad/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "kmgrad",
    version,
    about = "Generalized Cartan matrices, foldings and gradations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Height bound for root enumeration.
    #[arg(long, global = true, default_value_t = 12)]
    pub height: usize,
    /// Invariant form normalization: `scale=q`, `short=x` or `short=x,long=y`.
    #[arg(long, global = true)]
    pub normalize: Option<String>,
}

/// `<matrix>` is a builtin name (`E10`, `paper-s5`, `H3,3`, `D4`, `A2(1)`)
/// or a path to a JSON matrix file.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type, hyperbolicity and symmetrizability.
    Classify {
        matrix: String,
        #[arg(long)]
        det: bool,
        #[arg(long)]
        signature: bool,
    },
    /// Positive roots up to the height bound.
    Roots { matrix: String },
    /// All C-admissible J, or the check of one J.
    Pairs {
        matrix: String,
        #[arg(long)]
        j: Option<String>,
    },
    /// The folded matrix A^J of a C-admissible pair.
    BuildAj {
        matrix: String,
        #[arg(long)]
        j: String,
    },
    /// Roots restricting to a given weight of A^J.
    Fiber {
        matrix: String,
        #[arg(long)]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Fold along a quotient map given as `1,5|2,6|3|4`.
    Fold {
        matrix: String,
        #[arg(long)]
        fibers: String,
    },
    /// All admissible quotient maps.
    Quotients {
        matrix: String,
        /// Largest allowed fiber.
        #[arg(long)]
        max_fiber: Option<usize>,
    },
    /// Analyze a restriction spec (JSON path, or `paper-s5` for the built-in one).
    Analyze { spec: String },
    /// Dynkin diagram; `--j` marks J white and the rest black.
    Diagram {
        matrix: String,
        #[arg(long)]
        j: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Write one JSON file per matrix of a family such as `A2..A5` or `E10 H3,3`.
    Catalog {
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Roots { .. } => "roots",
            Command::Pairs { .. } => "pairs",
            Command::BuildAj { .. } => "build-aj",
            Command::Fiber { .. } => "fiber",
            Command::Fold { .. } => "fold",
            Command::Quotients { .. } => "quotients",
            Command::Analyze { .. } => "analyze",
            Command::Diagram { .. } => "diagram",
            Command::Catalog { .. } => "catalog",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub verb: String,
    pub result: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema: String,
    pub verb: String,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug)]
pub enum CliError {
    Input(String, String),
    Domain(String, String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Domain(..) => 1,
            CliError::Input(..) => 2,
        }
    }

    fn body(&self) -> ErrorBody {
        let (CliError::Input(kind, message) | CliError::Domain(kind, message)) = self;
        ErrorBody {
            kind: kind.clone(),
            message: message.clone(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = format!("{e:?}");
        let kind = kind
            .split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or_default()
            .to_string();
        let message = e.to_string();
        match e {
            Error::AxisMismatch { .. }
            | Error::DuplicateLabel(_)
            | Error::NotCartan { .. }
            | Error::TooLarge(_)
            | Error::UnknownLabel(_)
            | Error::DimensionMismatch { .. }
            | Error::NotARootInput(_)
            | Error::InvalidWeight(_)
            | Error::BadPartition(_)
            | Error::UnknownName(_)
            | Error::Parse(_) => CliError::Input(kind, message),
            _ => CliError::Domain(kind, message),
        }
    }
}

fn input(kind: &str, message: impl Into<String>) -> CliError {
    CliError::Input(kind.to_string(), message.into())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

/// Builtin name or JSON file. Files hold `{"labels": [...], "matrix": [[...]]}`
/// or a bare array of rows.
pub fn load_matrix(arg: &str) -> Result<Gcm, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| input("Io", format!("{arg}: {e}")))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| input("Parse", format!("{arg}: {e}")))?;
        return if value.is_array() {
            let rows: Vec<Vec<i64>> =
                serde_json::from_value(value).map_err(|e| input("Parse", format!("{arg}: {e}")))?;
            Ok(Gcm::unlabeled(rows)?)
        } else {
            Ok(Gcm::from_json(&text)?)
        };
    }
    Ok(builtin(arg)?)
}

/// Comma-separated labels; the empty string is the empty set.
pub fn parse_labels(gcm: &Gcm, text: &str) -> Result<Vec<usize>, CliError> {
    let labels: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(gcm.indices_of(&labels)?)
}

fn parse_vector(text: &str) -> Result<RootVec, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| input("Parse", format!("bad integer vector {text:?}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(RootVec::new)
}

fn load_spec(arg: &str) -> Result<RestrictionSpec, CliError> {
    if arg == "paper-s5" && !Path::new(arg).exists() {
        return Ok(paper_s5_composed()?.2);
    }
    let text = fs::read_to_string(arg).map_err(|e| input("Io", format!("{arg}: {e}")))?;
    Ok(RestrictionSpec::from_json(&text)?)
}

pub fn classify_result(g: &Gcm, det: bool, signature: bool) -> Result<Value, CliError> {
    let mut v = to_value(&g.classify());
    let obj = v.as_object_mut().expect("object");
    if det {
        obj.insert("det".into(), json!(g.det().to_string()));
    }
    if signature {
        let s = g.signature()?;
        obj.insert("signature".into(), json!([s.0, s.1, s.2]));
    }
    Ok(v)
}

pub fn roots_result(
    g: &Gcm,
    height: usize,
    norm: Option<&Normalization>,
) -> Result<Value, CliError> {
    let roots = enumerate_positive_roots(g, height);
    let mut list = to_value(&roots);
    if let Some(n) = norm {
        let b = BilinearData::new(g, n)?;
        for (entry, r) in list.as_array_mut().expect("array").iter_mut().zip(&roots) {
            entry
                .as_object_mut()
                .expect("object")
                .insert("norm".into(), json!(b.norm(&r.root).to_string()));
        }
    }
    Ok(json!({ "max_height": height, "count": roots.len(), "roots": list }))
}

pub fn pairs_result(g: &Gcm, j: Option<&str>) -> Result<Value, CliError> {
    if let Some(j) = j {
        let j = parse_labels(g, j)?;
        let c = check_pair(g, &j)?;
        if !c.c_admissible {
            let bad = c.components.iter().find(|c| !c.c_admissible);
            return Err(CliError::Domain(
                "NotCAdmissible".into(),
                match bad {
                    Some(b) => format!(
                        "J = {:?} fails at {}: {}",
                        c.j_labels,
                        b.k_label,
                        serde_json::to_string(b).expect("serializes")
                    ),
                    None => format!("J = {:?} leaves no vertex outside J", c.j_labels),
                },
            ));
        }
        return Ok(to_value(&c));
    }
    let checks = enumerate_pairs(g)?
        .iter()
        .map(|j| check_pair(g, j))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({ "count": checks.len(), "pairs": checks }))
}

pub fn build_aj_result(g: &Gcm, j: &str) -> Result<Value, CliError> {
    let j = parse_labels(g, j)?;
    let alg = build_aj(g, &j)?;
    Ok(json!({
        "algebra": alg,
        "classification": alg.aj.classify(),
        "source_diagram": Diagram::of_pair(g, &j).to_text(),
        "diagram": Diagram::of(&alg.aj).to_text(),
    }))
}

pub fn fiber_result(g: &Gcm, j: &str, gamma: &str) -> Result<Value, CliError> {
    let j = parse_labels(g, j)?;
    let alg = build_aj(g, &j)?;
    let fiber = weight_fiber(&alg, &parse_vector(gamma)?, orbit_cap_from_env())?;
    Ok(json!({ "count": fiber.roots.len(), "fiber": fiber }))
}

pub fn fold_result(g: &Gcm, fibers: &str, height: usize) -> Result<Value, CliError> {
    let q = check_quotient(g, &parse_fibers(g, fibers)?, None)?;
    let mg = build_abar(&q)?;
    let check = verify_maximal(&mg, height);
    Ok(json!({
        "gradation": mg,
        "classification": mg.abar.classify(),
        "verification": check,
        "diagram": Diagram::of(&mg.abar).to_text(),
    }))
}

pub fn quotients_result(g: &Gcm, max_fiber: Option<usize>) -> Result<Value, CliError> {
    let list: Vec<Value> = enumerate_quotients(g, max_fiber)
        .iter()
        .map(|q| build_abar(q).map(|mg| json!({ "fibers": q.fiber_labels(), "matrix": mg.abar })))
        .collect::<Result<_, _>>()?;
    Ok(json!({ "count": list.len(), "quotients": list }))
}

pub fn analyze_result(spec: &RestrictionSpec, height: usize) -> Result<Value, CliError> {
    Ok(json!({
        "report": analyze(spec, height)?,
        "adapted": check_adapted(spec, height),
        "imaginary": imaginary_sign_check(spec, height),
        "fibers": fiber_counts(spec, height)?,
        "cartan_constraints": cartan_constraints(spec)?,
    }))
}

pub fn diagram_result(g: &Gcm, j: Option<&str>, dot: bool) -> Result<Value, CliError> {
    let d = match j {
        Some(j) => Diagram::of_pair(g, &parse_labels(g, j)?),
        None => Diagram::of(g),
    };
    let rendered = if dot { d.to_dot() } else { d.to_text() };
    Ok(json!({ "diagram": d, "rendered": rendered }))
}

/// Items separated by whitespace or `;`. An item is a builtin name or a
/// range `X<a>..X<b>` over one classical letter.
pub fn parse_family(spec: &str) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for item in spec.split(|c: char| c.is_whitespace() || c == ';') {
        if item.is_empty() {
            continue;
        }
        if let Some((a, b)) = item.split_once("..") {
            let split = |s: &str| -> Option<(String, usize)> {
                let pos = s.find(|c: char| c.is_ascii_digit())?;
                Some((s[..pos].to_string(), s[pos..].parse().ok()?))
            };
            let bad = || input("Parse", format!("bad range {item:?}"));
            let (la, na) = split(a).ok_or_else(bad)?;
            let (lb, nb) = split(b).ok_or_else(bad)?;
            if la != lb || na > nb {
                return Err(bad());
            }
            out.extend((na..=nb).map(|n| format!("{la}{n}")));
        } else {
            out.push(item.to_string());
        }
    }
    Ok(out)
}

pub fn file_name(name: &str) -> String {
    let mut s: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect();
    while s.ends_with('_') {
        s.pop();
    }
    format!("{s}.json")
}

pub fn catalog_entry(name: &str, g: &Gcm) -> Result<Value, CliError> {
    let pairs = enumerate_pairs(g)?
        .iter()
        .map(|j| check_pair(g, j))
        .collect::<Result<Vec<_>, _>>()?;
    let quotients: Vec<Value> = enumerate_quotients(g, None)
        .iter()
        .map(|q| build_abar(q).map(|mg| json!({ "fibers": q.fiber_labels(), "matrix": mg.abar })))
        .collect::<Result<_, _>>()?;
    Ok(json!({
        "schema": SCHEMA,
        "name": name,
        "matrix": g,
        "classification": g.classify(),
        "pairs": pairs,
        "quotients": quotients,
    }))
}

pub fn catalog(family: &str, out: &Path) -> Result<Value, CliError> {
    let names = parse_family(family)?;
    let mut written = Vec::new();
    if names.is_empty() {
        return Ok(json!({ "files": written }));
    }
    fs::create_dir_all(out).map_err(|e| input("Io", format!("{}: {e}", out.display())))?;
    for name in names {
        let g = builtin(&name)?;
        let entry = catalog_entry(&name, &g)?;
        let file = out.join(file_name(&name));
        let mut text = serde_json::to_string_pretty(&entry).expect("serializes");
        text.push('\n');
        fs::write(&file, text).map_err(|e| input("Io", format!("{}: {e}", file.display())))?;
        written.push(file.display().to_string());
    }
    Ok(json!({ "files": written }))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let h = cli.height;
    let norm = cli
        .normalize
        .as_deref()
        .map(str::parse::<Normalization>)
        .transpose()?;
    let result = match &cli.command {
        Command::Classify {
            matrix,
            det,
            signature,
        } => classify_result(&load_matrix(matrix)?, *det, *signature)?,
        Command::Roots { matrix } => roots_result(&load_matrix(matrix)?, h, norm.as_ref())?,
        Command::Pairs { matrix, j } => pairs_result(&load_matrix(matrix)?, j.as_deref())?,
        Command::BuildAj { matrix, j } => build_aj_result(&load_matrix(matrix)?, j)?,
        Command::Fiber { matrix, j, gamma } => fiber_result(&load_matrix(matrix)?, j, gamma)?,
        Command::Fold { matrix, fibers } => fold_result(&load_matrix(matrix)?, fibers, h)?,
        Command::Quotients { matrix, max_fiber } => {
            quotients_result(&load_matrix(matrix)?, *max_fiber)?
        }
        Command::Analyze { spec } => analyze_result(&load_spec(spec)?, h)?,
        Command::Diagram { matrix, j, dot } => {
            diagram_result(&load_matrix(matrix)?, j.as_deref(), *dot)?
        }
        Command::Catalog { family, out } => catalog(family, out)?,
    };
    Ok(Report {
        schema: SCHEMA.to_string(),
        verb: cli.command.verb().to_string(),
        result,
    })
}

/// Indented `key: value` rendering of a JSON value. Multi-line strings
/// (diagrams) are printed verbatim under their key.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => None,
    }
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match (scalar(x), x) {
                    (Some(s), _) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    (None, Value::String(s)) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for line in s.lines() {
                            out.push_str(&format!("{pad}  {line}\n"));
                        }
                    }
                    (None, Value::Array(a)) if a.is_empty() => {
                        out.push_str(&format!("{pad}{k}: []\n"))
                    }
                    (None, _) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parse `args` (including the program name) and run.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Output {
            stdout: match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("serializes");
                    s.push('\n');
                    s
                }
                Format::Text => render_text(&report.result),
            },
            stderr: String::new(),
            code: 0,
        },
        Err(e) => {
            let body = e.body();
            let stdout = match cli.format {
                Format::Json => {
                    let r = ErrorReport {
                        schema: SCHEMA.to_string(),
                        verb: cli.command.verb().to_string(),
                        error: body.clone(),
                    };
                    let mut s = serde_json::to_string_pretty(&r).expect("serializes");
                    s.push('\n');
                    s
                }
                Format::Text => String::new(),
            };
            Output {
                stdout,
                stderr: format!("error: {}\n", body.message),
                code: e.code(),
            }
        }
    }
}
