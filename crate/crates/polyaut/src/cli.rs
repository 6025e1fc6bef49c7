//! Command-line frontend. [`run`] is the whole program minus process exit so
//! it can be driven in-process.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use polyaut_core::corpus::{random_recipe, realize};
use polyaut_core::inverter::{
    composition_failure, decide_invertible, solve_series, verify_mutual_inverse, CompositionWitness,
    Evidence, Identity, SolveConfig, Verdict,
};
use polyaut_core::linalg::jacobian;

use crate::mapfile::{parse_map, ParsedMap};
use crate::recipe::format_recipe;
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_INVERTIBLE: i32 = 2;
pub const EXIT_BOUND_EXCEEDED: i32 = 3;

/// Exit status for a verdict.
pub fn exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Invertible { .. } => EXIT_OK,
        Verdict::NotInvertibleJacobian { .. } | Verdict::NotInvertibleComposition { .. } => {
            EXIT_NOT_INVERTIBLE
        }
        Verdict::BoundExceeded { .. } => EXIT_BOUND_EXCEEDED,
    }
}

#[derive(Debug, Parser)]
#[command(name = "polyaut", version, about = "Invert polynomial automorphisms over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Jacobian matrix and its determinant.
    Jacobian { mapfile: PathBuf },
    /// Print the truncated series solution.
    Series {
        mapfile: PathBuf,
        #[arg(long)]
        order: usize,
        /// Initial condition U(0); the identity when omitted.
        #[arg(long)]
        init: Option<PathBuf>,
    },
    /// Decide invertibility and print the inverse.
    Invert {
        mapfile: PathBuf,
        #[arg(long, default_value_t = SolveConfig::default().max_order)]
        max_order: NonZeroUsize,
        /// Check the candidate after every order and stop early.
        #[arg(long)]
        eager: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check that two maps are mutually inverse.
    Verify { mapfile: PathBuf, invfile: PathBuf },
    /// Emit random tame automorphisms with their inverses.
    GenCorpus {
        #[arg(long = "m")]
        m: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 3)]
        max_h_degree: u32,
        /// Also write `case-<seed>.{recipe,map,inv}` files here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_map(path: &Path) -> anyhow::Result<ParsedMap> {
    let text = read_input(path)?;
    parse_map(&text).with_context(|| format!("{}", path.display()))
}

fn describe_witness(w: &CompositionWitness, input: &ParsedMap) -> String {
    let side = match w.identity {
        Identity::MapOfCandidate => "F(A)",
        Identity::CandidateOfMap => "A(F)",
    };
    let detail = match &w.evidence {
        Evidence::Residual(p) => format!("residual leading term {}", input.display_poly(p)),
        Evidence::Point { point, value } => {
            let pt: Vec<String> = point.iter().map(ToString::to_string).collect();
            format!("value {} at ({})", value, pt.join(", "))
        }
    };
    format!("{side} differs from the identity in component {}: {detail}", w.index + 1)
}

/// Runs the CLI and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        Command::Jacobian { mapfile } => {
            let input = load_map(&mapfile)?;
            let j = jacobian(&input.map);
            writeln!(out, "{}", j.display_with(&input.variables))?;
            writeln!(out, "determinant: {}", input.display_poly(&j.determinant()?))?;
            Ok(EXIT_OK)
        }
        Command::Series { mapfile, order, init } => {
            let input = load_map(&mapfile)?;
            let init = match init {
                Some(path) => {
                    let p = load_map(&path)?;
                    if p.map.arity() != input.map.arity() {
                        bail!("initial condition has {} components, map has {}", p.map.arity(), input.map.arity());
                    }
                    Some(p.map)
                }
                None => None,
            };
            let series = match solve_series(&input.map, order, init.as_ref()) {
                Ok(s) => s,
                Err(polyaut_core::Error::JacobianNotUnit) => {
                    let det = jacobian(&input.map).determinant().expect("Jacobian is square");
                    writeln!(
                        err,
                        "Jacobian determinant {} is not a nonzero constant",
                        input.display_poly(&det)
                    )?;
                    return Ok(EXIT_NOT_INVERTIBLE);
                }
                Err(e) => return Err(e.into()),
            };
            for (i, c) in series.components().iter().enumerate() {
                writeln!(out, "U{} = {}", i + 1, c.display_with(&input.variables))?;
            }
            Ok(EXIT_OK)
        }
        Command::Invert { mapfile, max_order, eager, json } => {
            let input = load_map(&mapfile)?;
            let cfg = SolveConfig { max_order, eager_check: eager, ..SolveConfig::default() };
            let start = Instant::now();
            let verdict = decide_invertible(&input.map, &cfg);
            let elapsed = start.elapsed();
            if json {
                writeln!(out, "{}", Report::new(&input, &verdict, &cfg, elapsed).to_json())?;
            } else {
                write_verdict(out, &input, &verdict)?;
            }
            Ok(exit_code(&verdict))
        }
        Command::Verify { mapfile, invfile } => {
            let input = load_map(&mapfile)?;
            let inv = load_map(&invfile)?;
            if inv.map.arity() != input.map.arity() {
                bail!("{} has {} components, {} has {}", invfile.display(), inv.map.arity(), mapfile.display(), input.map.arity());
            }
            if verify_mutual_inverse(&input.map, &inv.map) {
                writeln!(out, "mutual inverses")?;
                return Ok(EXIT_OK);
            }
            writeln!(out, "not mutual inverses")?;
            if let Some(w) = composition_failure(&input.map, &inv.map, None, 0)? {
                writeln!(out, "{}", describe_witness(&w, &input))?;
            }
            Ok(EXIT_NOT_INVERTIBLE)
        }
        Command::GenCorpus { m, steps, seed, count, max_h_degree, out_dir } => {
            if m == 0 {
                bail!("--m must be positive");
            }
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            }
            for k in 0..count {
                let s = seed.checked_add(k).context("seed overflow")?;
                let recipe = random_recipe(m, steps, max_h_degree, s);
                let (f, a) = realize(&recipe)?;
                let text = format_recipe(&recipe);
                write!(out, "{text}")?;
                writeln!(out, "# map: {f}")?;
                writeln!(out, "# inverse: {a}")?;
                writeln!(out)?;
                if let Some(dir) = &out_dir {
                    let write = |ext: &str, body: String| {
                        let path = dir.join(format!("case-{s}.{ext}"));
                        fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))
                    };
                    write("recipe", text)?;
                    write("map", ParsedMap::with_default_names(f).to_file_string())?;
                    write("inv", ParsedMap::with_default_names(a).to_file_string())?;
                }
            }
            let _ = err;
            Ok(EXIT_OK)
        }
    }
}

fn write_verdict(out: &mut dyn Write, input: &ParsedMap, verdict: &Verdict) -> io::Result<()> {
    match verdict {
        Verdict::Invertible { inverse, series } => {
            writeln!(out, "verdict: invertible")?;
            writeln!(out, "order: {}", series.order())?;
            writeln!(out, "inverse: {}", input.display_map(inverse))
        }
        Verdict::NotInvertibleJacobian { determinant } => {
            writeln!(out, "verdict: not invertible (Jacobian determinant is not a nonzero constant)")?;
            writeln!(out, "determinant: {}", input.display_poly(determinant))
        }
        Verdict::NotInvertibleComposition { witness } => {
            writeln!(out, "verdict: not invertible (composition check failed at order {})", witness.order)?;
            writeln!(out, "witness: {}", describe_witness(witness, input))
        }
        Verdict::BoundExceeded { required, cap } => {
            writeln!(out, "verdict: bound exceeded (needs order {required}, max order is {cap})")
        }
    }
}
