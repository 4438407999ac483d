//! Command-line front end. Every command builds a JSON artifact carrying the
//! schema tag; exit code 0 means success, 1 a failed check and 2 bad input.

/// Binds `$vf` to the concrete valued field of a [`FieldKind`].
macro_rules! with_field {
    ($kind:expr, $vf:ident => $body:expr) => {
        match $kind {
            $crate::zoo::FieldKind::Trivial => {
                let $vf = $crate::zoo::TrivialQ;
                $body
            }
            $crate::zoo::FieldKind::Padic(p) => {
                let $vf = p;
                $body
            }
            $crate::zoo::FieldKind::Tadic => {
                let $vf = $crate::zoo::TadicQt;
                $body
            }
        }
    };
}

mod bands;
mod geometry;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const GRAMMAR: &str = "\
Polynomials use a small infix grammar with exact rational coefficients:
  expr  := term (('+' | '-') term)*
  term  := unary (('*' | '/')? unary)*      juxtaposition multiplies: 2x, 3x^2*y
  unary := '-' unary | power
  power := atom ('^' integer)?
  atom  := integer | identifier | '(' expr ')'
Division is only by nonzero constants inside polynomials. The identifier `t`
is the field parameter of field:Qt-tadic unless it is declared as a variable.
Rationals are written a/b. Band ids: f1pm, krasner, sign, trop, rtrop,
triangle:q=<q>, ring:Z, ring:Z/<n>, ring:Q, field:Q-trivial, field:Q-padic:<p>,
field:Qt-tadic, and free bands <base>[x,y,...] for `spec`.";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub(crate) fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// Settings shared by all commands. Values come from flags, then from the
/// `--config` TOML file, then from the defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Longest formal sum L used by sampled and exhaustive checks.
    pub max_len: usize,
    /// Degree bound for ideal membership; unset means two above the degrees involved.
    pub degree_bound: Option<u32>,
    /// Primes up to this bound index the points of Spec of the integers.
    pub prime_bound: u64,
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, max_len: 6, degree_bound: None, prime_bound: 5, json: None, svg: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.max_len == 0 || self.prime_bound == 0 || self.degree_bound == Some(0) {
            return Err(CliError::Input("bounds must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Args, Default)]
pub struct GlobalOpts {
    /// Seed for every randomized suite [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Longest formal sum L [default: 6]
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Degree bound for ideal membership
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,
    /// Prime bound for Spec of the integers [default: 5]
    #[arg(long, global = true)]
    pub prime_bound: Option<u64>,
    /// Also write the JSON artifact here
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// TOML file with RunConfig fields
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl GlobalOpts {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
                toml::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(l) = self.max_len {
            cfg.max_len = l;
        }
        if self.degree_bound.is_some() {
            cfg.degree_bound = self.degree_bound;
        }
        if let Some(p) = self.prime_bound {
            cfg.prime_bound = p;
        }
        if self.json.is_some() {
            cfg.json = self.json.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Parser)]
#[command(name = "band-kernel", version, about = "Bands, their spectra and tropical points of affine varieties", after_help = GRAMMAR)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the band axioms, exhaustively for finite bands
    Axioms {
        #[arg(long)]
        band: String,
        /// Random samples for infinite bands
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Decide whether a formal sum is null
    Null {
        #[arg(long, required_unless_present = "embedding")]
        band: Option<String>,
        /// Comma-separated entries; monomials c*a^e in the generator names with --embedding
        #[arg(long, allow_hyphen_values = true)]
        sum: String,
        /// JSON or TOML presentation; decides nullity in its monomial model
        #[arg(long, conflicts_with = "band")]
        embedding: Option<PathBuf>,
    },
    /// The additive inverse of an element
    Neg {
        #[arg(long)]
        band: String,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Prime m-ideals, specialization order and basic opens
    Spec {
        #[arg(long)]
        band: String,
    },
    /// Localize a band at the powers of h, an explicit set, or the complement of a prime
    Localize {
        #[arg(long)]
        band: String,
        #[arg(long, allow_hyphen_values = true, group = "multiplicative")]
        at: Option<String>,
        /// Comma-separated multiplicative set containing 1
        #[arg(long, allow_hyphen_values = true, group = "multiplicative")]
        set: Option<String>,
        /// Comma-separated prime; localizes at its complement
        #[arg(long, allow_hyphen_values = true, group = "multiplicative")]
        prime: Option<String>,
    },
    /// Check a valuation morphism on seeded null sums
    Morphism {
        /// trop-valuation, sign or signed-valuation
        #[arg(long)]
        name: String,
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Bend condition of a polynomial at a point of 𝕋^n
    Trop(PointArgs),
    /// ℝ𝕋 null condition of a polynomial at a signed point
    Rtrop(PointArgs),
    /// Plane tropical curve of a bivariate polynomial
    TropCurve {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Functoriality and separation on a preset diagram
    LimitDemo {
        /// line (the affine line) or conic (x^2 + y^2 = 1)
        #[arg(long)]
        preset: String,
        #[arg(long, default_value = "field:Q-trivial")]
        field: String,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Find an extension of the canonical embedding separating two points
    Separate {
        /// a1-pm1: the points 1 and -1 of the affine line over Q-trivial
        #[arg(long, required_unless_present = "points")]
        preset: Option<String>,
        /// P,Q with coordinates of each point separated by ';'
        #[arg(long, allow_hyphen_values = true, conflicts_with = "preset")]
        points: Option<String>,
        #[arg(long, default_value = "field:Q-trivial")]
        field: String,
        /// JSON or TOML presentation; the affine line in t otherwise
        #[arg(long)]
        embedding: Option<PathBuf>,
        /// Extra candidate elements, tried in the last tier
        #[arg(long = "extra", allow_hyphen_values = true)]
        extras: Vec<String>,
        #[arg(long, default_value_t = 3)]
        budget: usize,
    },
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "embedding")]
    pub poly: Option<String>,
    /// Comma-separated coordinates
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    /// Variable order; sorted symbols of the polynomial otherwise
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// JSON or TOML presentation; tests membership for all its relations
    #[arg(long, conflicts_with = "poly")]
    pub embedding: Option<PathBuf>,
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    /// Short answer printed on stdout, before the artifact if that is shown.
    pub text: String,
    pub show_artifact: bool,
    pub artifact: serde_json::Value,
    pub pass: bool,
    pub svg: Option<String>,
}

impl Outcome {
    fn report(artifact: serde_json::Value, pass: bool) -> Self {
        Outcome { text: String::new(), show_artifact: true, artifact, pass, svg: None }
    }

    fn answer(text: impl Into<String>, artifact: serde_json::Value) -> Self {
        Outcome { text: text.into(), show_artifact: false, artifact, pass: true, svg: None }
    }
}

pub(crate) fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

/// Runs a parsed command without touching stdout or the filesystem.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = cli.opts.resolve()?;
    let mut outcome = dispatch(cli, &cfg)?;
    if let Some(obj) = outcome.artifact.as_object_mut() {
        obj.entry("seed").or_insert(serde_json::json!(cfg.seed));
    }
    Ok(outcome)
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let cfg = cfg.clone();
    match &cli.command {
        Command::Axioms { band, samples } => bands::axioms(&cfg, band, *samples),
        Command::Null { band, sum, embedding } => match (band, embedding) {
            (_, Some(path)) => geometry::model_null(&cfg, path, sum),
            (Some(band), None) => bands::null(band, sum),
            (None, None) => Err(input("--band or --embedding is required")),
        },
        Command::Neg { band, elem } => bands::neg(band, elem),
        Command::Spec { band } => bands::spec(&cfg, band),
        Command::Localize { band, at, set, prime } => bands::localize(&cfg, band, at, set, prime),
        Command::Morphism { name, field, samples } => bands::morphism(&cfg, name, field, *samples),
        Command::Trop(args) => geometry::trop(args, false),
        Command::Rtrop(args) => geometry::trop(args, true),
        Command::TropCurve { field, poly, .. } => geometry::trop_curve(field, poly),
        Command::LimitDemo { preset, field, points } => geometry::limit_demo(&cfg, preset, field, *points),
        Command::Separate { preset, points, field, embedding, extras, budget } => {
            geometry::separate(preset.as_deref(), points.as_deref(), field, embedding.as_deref(), extras, *budget)
        }
    }
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Parses `args`, runs the command, prints its output and writes the
/// requested files. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let cfg = cli.opts.resolve().expect("resolved once already");
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    if let Some(path) = &cfg.json {
        files.push((path.clone(), pretty(&outcome.artifact) + "\n"));
    }
    if let (Command::TropCurve { svg: Some(path), .. }, Some(svg)) = (&cli.command, &outcome.svg) {
        files.push((path.clone(), svg.clone()));
    } else if let (Some(path), Some(svg)) = (&cfg.svg, &outcome.svg) {
        files.push((path.clone(), svg.clone()));
    }
    for (path, contents) in files {
        if let Err(e) = write(&path, &contents) {
            eprintln!("error: {e}");
            return 2;
        }
    }
    // a closed stdout (e.g. piped into head) is not an error of the command
    let mut out = std::io::stdout().lock();
    if !outcome.text.is_empty() {
        let _ = writeln!(out, "{}", outcome.text);
    }
    if outcome.show_artifact {
        let _ = writeln!(out, "{}", pretty(&outcome.artifact));
    }
    if outcome.pass {
        0
    } else {
        1
    }
}
