//! Command-line front end for `eqloc`.
//!
//! [`run`] takes the argument vector and returns the exit code together with everything
//! that would be written to stdout and stderr, so the binary is a thin wrapper and tests
//! can drive the whole interface in-process.
//!
//! Exit codes: `0` success, `1` domain errors (the mathematics says no: a non-integral
//! pushforward, a function outside the localized ring, a failed check), `2` usage, parse
//! and input-format errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use eqloc::algebra::{format_scalar, RationalFunction, TheoryKind};
use eqloc::expr::{parse_constant, parse_expression};
use eqloc::fgl::{fgl_builtin, residue_axiom_check, BuiltinLaw};
use eqloc::format::{
    axiom_report_json, laurent_json, qr_report_json, read_law, read_model, scalar_json,
    series_json, to_canonical_string, write_model,
};
use eqloc::localization::{
    kappa, kappa_plus_half, multiplicity_zero, pushforward_closed, qr_check, ManifoldModel,
};
use eqloc::models::ModelRecipe;
use eqloc::series::{expand, residue_map, Domain, ExpansionAnchor, ResidueKind};
use eqloc::Error;
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "eqloc",
    version,
    about = "Exact equivariant localization and residue calculator"
)]
pub struct Cli {
    /// Emit canonical JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a residue map to a rational function in u.
    Residue {
        #[arg(long)]
        kind: ResidueKind,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Reject functions outside the localized ring of the map's theory.
        #[arg(long)]
        strict: bool,
    },
    /// Laurent-expand a rational function at 0, infinity or a rational point.
    Expand {
        /// `zero`, `inf`, or a rational point such as `1` or `-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Highest power of the local parameter to keep.
        #[arg(long, allow_hyphen_values = true)]
        order: i64,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Boundary formula: sum of residues of the fixed-point terms of the plus side.
    Kappa {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        kind: ResidueKind,
        /// Sum over plus-side components of a model with both sides labelled.
        #[arg(long)]
        plus_half: bool,
    },
    /// Pushforward of a closed model to the coefficient ring.
    Push {
        #[arg(long)]
        model: PathBuf,
    },
    /// Multiplicity of the trivial representation, summed from fixed points.
    Mult0 {
        #[arg(long)]
        model: PathBuf,
    },
    /// Compare quantization of the reduced space with the invariant part.
    Qr {
        #[arg(long)]
        model: PathBuf,
        /// Exit with status 1 unless every degree condition holds and the two sides agree.
        #[arg(long)]
        require_conditions: bool,
    },
    /// Check a residue map's axioms against a formal group law.
    FglCheck {
        /// `additive`, `multiplicative`, or a path to a law JSON file.
        #[arg(long)]
        law: String,
        #[arg(long)]
        kind: ResidueKind,
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Euler class of the standard representation; defaults to -u (Borel) or 1 - u^-1.
        #[arg(long, allow_hyphen_values = true)]
        euler: Option<String>,
    },
    /// Build a model from a recipe and write its canonical JSON.
    Model {
        /// e.g. `cp1:k=2`, `cpn:n=3,k=1`, `cp1:k=1*cp1:k=2`.
        #[arg(long)]
        recipe: String,
        /// Output file; stdout when omitted or `-`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure raised while executing a parsed command.
enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::ZeroDenominator
            | Error::Format(_)
            | Error::InvalidModel(_)
            | Error::InvalidLaw(_)
            | Error::BadPolynomial(_)
            | Error::ZeroWeight => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(()) => Outcome {
            code: 0,
            stdout: out,
            stderr: String::new(),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: 1,
            stdout: out,
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: out,
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn load_model(path: &Path) -> Result<ManifoldModel, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read model {}: {e}", path.display())))?;
    Ok(read_model(&text)?)
}

fn parse_anchor(text: &str) -> Result<ExpansionAnchor, Failure> {
    match text.trim() {
        "zero" | "0" => Ok(ExpansionAnchor::Zero),
        "inf" | "infinity" => Ok(ExpansionAnchor::Infinity),
        point => Ok(ExpansionAnchor::FinitePoint(parse_constant(point)?)),
    }
}

fn emit_json(out: &mut String, value: &serde_json::Value) {
    out.push_str(&to_canonical_string(value));
}

fn execute(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    match &cli.command {
        Command::Residue { kind, expr, strict } => {
            let f = parse_expression(expr)?;
            let domain = if *strict {
                Domain::Strict
            } else {
                Domain::Relaxed
            };
            let value = residue_map(*kind, &f, domain)?;
            if cli.json {
                emit_json(
                    out,
                    &json!({ "kind": kind.name(), "value": scalar_json(&value) }),
                );
            } else {
                writeln!(out, "{}", format_scalar(&value)).unwrap();
            }
        }
        Command::Expand { at, order, expr } => {
            let f = parse_expression(expr)?;
            let series = expand(&f, &parse_anchor(at)?, *order);
            if cli.json {
                emit_json(out, &series_json(&series));
            } else {
                writeln!(out, "{series}").unwrap();
            }
        }
        Command::Kappa {
            model,
            kind,
            plus_half,
        } => {
            let m = load_model(model)?;
            let value = if *plus_half {
                kappa_plus_half(&m, *kind)?
            } else {
                kappa(&m, *kind)?
            };
            if cli.json {
                emit_json(
                    out,
                    &json!({ "kind": kind.name(), "kappa": scalar_json(&value) }),
                );
            } else {
                writeln!(out, "{}", format_scalar(&value)).unwrap();
            }
        }
        Command::Push { model } => {
            let m = load_model(model)?;
            let p = pushforward_closed(&m)?;
            if cli.json {
                emit_json(out, &json!({ "pushforward": laurent_json(&p) }));
            } else {
                writeln!(out, "{p}").unwrap();
            }
        }
        Command::Mult0 { model } => {
            let m = load_model(model)?;
            let value = multiplicity_zero(&m)?;
            if cli.json {
                emit_json(out, &json!({ "mult0": scalar_json(&value) }));
            } else {
                writeln!(out, "{}", format_scalar(&value)).unwrap();
            }
        }
        Command::Qr {
            model,
            require_conditions,
        } => {
            let m = load_model(model)?;
            let report = qr_check(&m)?;
            if cli.json {
                emit_json(out, &qr_report_json(&report));
            } else {
                writeln!(
                    out,
                    "{:<12} {:<6} {:>4} {:>6} {:>6} {:>9}  ok",
                    "component", "side", "w", "min", "max", "oriented"
                )
                .unwrap();
                for c in &report.conditions {
                    let show = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
                    writeln!(
                        out,
                        "{:<12} {:<6} {:>4} {:>6} {:>6} {:>9}  {}",
                        c.id,
                        c.side.to_string(),
                        c.w,
                        show(c.bounds.map(|b| b.0)),
                        show(c.bounds.map(|b| b.1)),
                        show(c.oriented),
                        if c.ok { "yes" } else { "NO" }
                    )
                    .unwrap();
                }
                writeln!(out, "Q(M)_0      = {}", format_scalar(&report.q_m0)).unwrap();
                writeln!(out, "Q(M_red)    = {}", format_scalar(&report.q_mred)).unwrap();
                writeln!(out, "defectPlus  = {}", format_scalar(&report.defect_plus)).unwrap();
                writeln!(out, "defectMinus = {}", format_scalar(&report.defect_minus)).unwrap();
                writeln!(out, "equal       = {}", report.equal).unwrap();
            }
            if *require_conditions && !(report.all_conditions_hold() && report.equal) {
                let failed: Vec<&str> = report
                    .conditions
                    .iter()
                    .filter(|c| !c.ok)
                    .map(|c| c.id.as_str())
                    .collect();
                return Err(Failure::Domain(format!(
                    "ConditionsFailed: degree conditions violated at [{}], Q(M)_0 = {}, Q(M_red) = {}",
                    failed.join(", "),
                    format_scalar(&report.q_m0),
                    format_scalar(&report.q_mred)
                )));
            }
        }
        Command::FglCheck {
            law,
            kind,
            order,
            euler,
        } => {
            let default_e = match kind.theory() {
                TheoryKind::Borel => fgl_builtin(BuiltinLaw::Additive).1,
                TheoryKind::KTheory => fgl_builtin(BuiltinLaw::Multiplicative).1,
            };
            let (table, builtin_e) = match law.parse::<BuiltinLaw>() {
                Ok(b) => {
                    let (t, e) = fgl_builtin(b);
                    (t, Some(e))
                }
                Err(_) => {
                    let text = std::fs::read_to_string(law)
                        .map_err(|e| Failure::Usage(format!("cannot read law {law}: {e}")))?;
                    (read_law(&text)?, None)
                }
            };
            let e: RationalFunction = match euler {
                Some(text) => parse_expression(text)?,
                None => builtin_e.unwrap_or(default_e),
            };
            let report = residue_axiom_check(*kind, &table, &e, *order)?;
            if cli.json {
                emit_json(out, &axiom_report_json(&report));
            } else {
                writeln!(out, "residue map       {kind}").unwrap();
                writeln!(out, "order             {order}").unwrap();
                writeln!(out, "e                 {e}").unwrap();
                writeln!(
                    out,
                    "kills unlocalized {}",
                    if report.axiom1_violations.is_empty() {
                        "yes".to_string()
                    } else {
                        format!("NO ({})", report.axiom1_violations.join(", "))
                    }
                )
                .unwrap();
                writeln!(
                    out,
                    "rho(e^-1)         {}",
                    format_scalar(&report.axiom2_value)
                )
                .unwrap();
                let killed: Vec<&str> = report
                    .c_killed
                    .iter()
                    .map(|&b| if b { "0" } else { "x" })
                    .collect();
                writeln!(out, "rho(c_k), k>=1    [{}]", killed.join(" ")).unwrap();
                writeln!(out, "passed            {}", report.passed()).unwrap();
            }
            if !report.passed() {
                return Err(Failure::Domain(format!(
                    "AxiomCheckFailed: {kind} is not a residue map for this law and e up to order {order}"
                )));
            }
        }
        Command::Model { recipe, emit } => {
            let m = recipe.parse::<ModelRecipe>()?.build()?;
            let text = write_model(&m);
            match emit {
                Some(path) if path.as_os_str() != "-" => std::fs::write(path, &text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
                _ => out.push_str(&text),
            }
        }
    }
    Ok(())
}
