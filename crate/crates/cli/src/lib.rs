//! Command dispatch for the `grfrob` binary.
//!
//! [`run_command`] never exits the process; it returns a [`Report`] holding
//! the exit code and both renderings, which keeps the commands testable.

mod generate;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use grfrob::format::{field_declaration, parse_algebra, parse_certificate, render_certificate};
use grfrob::frobenius::{
    inertia_group, is_frobenius, is_graded_symmetric, is_sigma_graded_frobenius, is_symmetric, left_sigma_faithful,
    right_sigma_faithful, scan_sigma, verify_certificate, Faithfulness, Method, Outcome, Verdict, Verification,
};
use grfrob::module::Side;
use grfrob::{Budget, Error, Field, FieldDecl, GradedAlgebra, PrimeField, Rationals};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use report::Report;
use report::{certificate_json, verdict_json, verdict_line};

/// Exit codes.
pub mod exit {
    pub const YES: u8 = 0;
    pub const NO: u8 = 1;
    pub const INCONCLUSIVE: u8 = 2;
    pub const USAGE: u8 = 64;
    pub const PARSE: u8 = 65;
    pub const INCONSISTENCY: u8 = 70;
}

#[derive(Parser, Debug)]
#[command(
    name = "grfrob",
    version,
    about = "Decide graded Frobenius and graded symmetric properties of graded algebras"
)]
struct Cli {
    /// Seed for the randomized invertibility search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random trials per invertibility search.
    #[arg(long = "budget-trials", global = true, default_value_t = 64)]
    budget_trials: u32,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write certificates to this path (scan appends `.<sigma>`).
    #[arg(long = "cert-out", global = true)]
    cert_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate an algebra file.
    Validate { file: PathBuf },
    /// Decide whether the algebra is σ-graded Frobenius.
    Check {
        file: PathBuf,
        #[arg(long)]
        sigma: usize,
        #[arg(long, default_value = "all")]
        method: Method,
    },
    /// Decide σ-graded Frobenius for every group element.
    Scan {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        method: Method,
    },
    /// Decide graded symmetry (default) or ungraded symmetry.
    Symmetric {
        file: PathBuf,
        #[arg(long, conflicts_with = "ungraded")]
        graded: bool,
        #[arg(long)]
        ungraded: bool,
    },
    /// Decide whether the underlying ungraded algebra is Frobenius.
    Frobenius { file: PathBuf },
    /// Decide left or right σ-faithfulness.
    Faithful {
        file: PathBuf,
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        side: Side,
    },
    /// Compute the inertia group {g : A(g) ≅ A}.
    Inertia { file: PathBuf },
    /// Build an algebra and print it in the file format. PARAMS are
    /// key=value pairs; run `gen help` for the list.
    Gen { name: String, params: Vec<String> },
    /// Re-check a certificate against an algebra.
    Verify { file: PathBuf, cert: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Check { .. } => "check",
            Command::Scan { .. } => "scan",
            Command::Symmetric { .. } => "symmetric",
            Command::Frobenius { .. } => "frobenius",
            Command::Faithful { .. } => "faithful",
            Command::Inertia { .. } => "inertia",
            Command::Gen { .. } => "gen",
            Command::Verify { .. } => "verify",
        }
    }

    fn file(&self) -> Option<&Path> {
        match self {
            Command::Validate { file }
            | Command::Check { file, .. }
            | Command::Scan { file, .. }
            | Command::Symmetric { file, .. }
            | Command::Frobenius { file }
            | Command::Faithful { file, .. }
            | Command::Inertia { file }
            | Command::Verify { file, .. } => Some(file),
            Command::Gen { .. } => None,
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub(crate) struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::ParseAt { .. } | Error::Algebra(_) | Error::Group(_) | Error::Shape(_) => {
                exit::PARSE
            }
            Error::Inconsistency(_) => exit::INCONSISTENCY,
            Error::Unsupported(_) => exit::INCONCLUSIVE,
            Error::Module(_) | Error::Invalid(_) => exit::USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub(crate) fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::YES,
                _ => exit::USAGE,
            };
            let text = e.render().to_string();
            return if code == exit::YES {
                Report::text_only(code, text)
            } else {
                Report::error(code, "", &text, false)
            };
        }
    };
    let command = cli.command.name();
    match run(&cli) {
        Ok(report) => report,
        Err(f) => Report::error(f.code, command, &f.message, cli.json),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    if let Command::Gen { name, params } = &cli.command {
        return generate::run(cli, name, params);
    }
    let path = cli.command.file().expect("file argument");
    let text = read(path)?;
    match field_declaration(&text)? {
        FieldDecl::Rationals => execute(cli, &Rationals, &text),
        FieldDecl::Prime(p) => execute(cli, &PrimeField::new(p)?, &text),
    }
}

struct Context<'a, F: Field> {
    cli: &'a Cli,
    algebra: Arc<GradedAlgebra<F>>,
    budget: Budget,
    rng: ChaCha8Rng,
}

impl<F: Field> Context<'_, F> {
    fn header(&self) -> Value {
        let a = &self.algebra;
        json!({
            "command": self.cli.command.name(),
            "algebra": { "dim": a.dim(), "group": a.group().spec().to_string(), "field": a.field().decl().to_string() },
            "seed": self.cli.seed,
            "budget": { "trials": self.budget.trials },
        })
    }

    fn summary(&self) -> String {
        let a = &self.algebra;
        format!(
            "algebra: dim {} over {}, group {}\n",
            a.dim(),
            a.field().decl(),
            a.group().spec()
        )
    }

    /// Yes verdicts must carry a certificate that re-verifies.
    fn audit(&self, algebra: &GradedAlgebra<F>, v: &Verdict<F::Elem>) -> Result<(), Failure> {
        if v.outcome != Outcome::Yes {
            return Ok(());
        }
        let cert = v.certificate.as_ref().ok_or_else(|| Failure {
            code: exit::INCONSISTENCY,
            message: format!("yes verdict at {} without a certificate", v.sigma),
        })?;
        match verify_certificate(algebra, cert)? {
            Verification::Accept => Ok(()),
            Verification::Reject(reason) => Err(Failure {
                code: exit::INCONSISTENCY,
                message: format!("certificate at {} failed re-verification: {reason}", v.sigma),
            }),
        }
    }

    fn write_certificate(&self, path: &Path, v: &Verdict<F::Elem>) -> Result<(), Failure> {
        if let Some(cert) = &v.certificate {
            fs::write(path, render_certificate(self.algebra.field(), cert))
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }

    /// Report for a single verdict, checked against `algebra`.
    fn single(&self, algebra: &GradedAlgebra<F>, v: Verdict<F::Elem>) -> Result<Report, Failure> {
        self.audit(algebra, &v)?;
        if let Some(path) = &self.cli.cert_out {
            self.write_certificate(path, &v)?;
        }
        let mut json = self.header();
        json["verdicts"] = json!([verdict_json(&v)]);
        let mut text = self.summary();
        text += &verdict_line(&v);
        if let Some(cert) = &v.certificate {
            text += "certificate:\n";
            for line in render_certificate(algebra.field(), cert).lines() {
                text += &format!("  {line}\n");
            }
        }
        Ok(Report::new(outcome_code(v.outcome), text, json, self.cli.json))
    }
}

fn outcome_code(o: Outcome) -> u8 {
    match o {
        Outcome::Yes => exit::YES,
        Outcome::No => exit::NO,
        Outcome::Inconclusive => exit::INCONCLUSIVE,
    }
}

fn execute<F: Field>(cli: &Cli, field: &F, text: &str) -> Result<Report, Failure> {
    let algebra = Arc::new(parse_algebra(text, field)?);
    let budget = Budget {
        trials: cli.budget_trials,
        ..Budget::default()
    };
    let mut ctx = Context {
        cli,
        algebra: algebra.clone(),
        budget,
        rng: ChaCha8Rng::seed_from_u64(cli.seed),
    };
    let a = &*algebra;
    match &cli.command {
        Command::Validate { .. } => Ok(validate_report(&ctx)),
        Command::Check { sigma, method, .. } => {
            check_sigma(a, *sigma)?;
            let v = is_sigma_graded_frobenius(&algebra, *sigma, *method, &ctx.budget, &mut ctx.rng)?;
            ctx.single(a, v)
        }
        Command::Scan { method, .. } => scan_report(&mut ctx, *method),
        Command::Symmetric { ungraded, .. } => {
            if *ungraded {
                let v = is_symmetric(a, &ctx.budget, &mut ctx.rng)?;
                ctx.single(&a.forget_grading(), v)
            } else {
                let v = is_graded_symmetric(a, &ctx.budget, &mut ctx.rng)?;
                ctx.single(a, v)
            }
        }
        Command::Frobenius { .. } => {
            let v = is_frobenius(a, &ctx.budget, &mut ctx.rng)?;
            ctx.single(&a.forget_grading(), v)
        }
        Command::Faithful { sigma, side, .. } => {
            check_sigma(a, *sigma)?;
            Ok(faithful_report(&ctx, *sigma, *side))
        }
        Command::Inertia { .. } => inertia_report(&mut ctx),
        Command::Verify { cert, .. } => verify_report(&ctx, cert),
        Command::Gen { .. } => unreachable!("handled before parsing a file"),
    }
}

fn check_sigma<F: Field>(a: &GradedAlgebra<F>, sigma: usize) -> Result<(), Failure> {
    if sigma >= a.group().order() {
        return Err(Failure::usage(format!(
            "--sigma {sigma} is not an element of a group of order {}",
            a.group().order()
        )));
    }
    Ok(())
}

fn validate_report<F: Field>(ctx: &Context<'_, F>) -> Report {
    let a = &ctx.algebra;
    let dims = a.component_dims();
    let strongly = a.strongly_graded_failure().is_none();
    let mut json = ctx.header();
    json["valid"] = json!(true);
    json["component_dims"] = json!(dims);
    json["support"] = json!(a.support());
    json["commutative"] = json!(a.is_commutative());
    json["strongly_graded"] = json!(strongly);
    json["verdicts"] = json!([]);
    let mut text = ctx.summary();
    text += "valid\n";
    text += &format!("component dimensions: {dims:?}\n");
    text += &format!("commutative: {}\n", a.is_commutative());
    text += &format!("strongly graded: {strongly}\n");
    Report::new(exit::YES, text, json, ctx.cli.json)
}

fn scan_report<F: Field>(ctx: &mut Context<'_, F>, method: Method) -> Result<Report, Failure> {
    let verdicts = scan_sigma(&ctx.algebra, method, &ctx.budget, &mut ctx.rng)?;
    for v in &verdicts {
        ctx.audit(&ctx.algebra, v)?;
        if let Some(base) = &ctx.cli.cert_out {
            let mut path = base.clone().into_os_string();
            path.push(format!(".{}", v.sigma));
            ctx.write_certificate(Path::new(&path), v)?;
        }
    }
    let mut json = ctx.header();
    json["verdicts"] = verdicts.iter().map(verdict_json).collect();
    let mut text = ctx.summary();
    text += "sigma  outcome       detail\n";
    for v in &verdicts {
        let detail = match (&v.certificate, &v.refutation) {
            (Some(c), _) => format!("{} certificate", c.kind),
            (None, Some(r)) => r.to_string(),
            (None, None) => String::new(),
        };
        text += &format!("{:<6} {:<13} {detail}\n", v.sigma, v.outcome.to_string());
    }
    let yes: Vec<usize> = verdicts
        .iter()
        .filter(|v| v.outcome == Outcome::Yes)
        .map(|v| v.sigma)
        .collect();
    text += &format!("graded Frobenius degrees: {yes:?}\n");
    let code = if !yes.is_empty() {
        exit::YES
    } else if verdicts.iter().all(|v| v.outcome == Outcome::No) {
        exit::NO
    } else {
        exit::INCONCLUSIVE
    };
    Ok(Report::new(code, text, json, ctx.cli.json))
}

fn faithful_report<F: Field>(ctx: &Context<'_, F>, sigma: usize, side: Side) -> Report {
    let a = &ctx.algebra;
    let result = match side {
        Side::Left => left_sigma_faithful(a, sigma),
        Side::Right => right_sigma_faithful(a, sigma),
    };
    let mut entry = json!({ "sigma": sigma, "side": side.to_string() });
    let mut text = ctx.summary();
    let code = match &result {
        Faithfulness::Yes => {
            entry["outcome"] = json!("yes");
            text += &format!("sigma {sigma}: {side} faithful\n");
            exit::YES
        }
        Faithfulness::No { degree, witness } => {
            let w: Vec<String> = witness.iter().map(ToString::to_string).collect();
            entry["outcome"] = json!("no");
            entry["refutation"] = json!({ "degree": degree, "witness": w });
            text += &format!(
                "sigma {sigma}: not {side} faithful; [{}] in degree {degree} is annihilated\n",
                w.join(" ")
            );
            exit::NO
        }
    };
    let mut json = ctx.header();
    json["verdicts"] = json!([entry]);
    Report::new(code, text, json, ctx.cli.json)
}

fn inertia_report<F: Field>(ctx: &mut Context<'_, F>) -> Result<Report, Failure> {
    let inertia = inertia_group(&ctx.algebra, &ctx.budget, &mut ctx.rng)?;
    let mut json = ctx.header();
    json["inertia"] = json!(inertia.members);
    json["undecided"] = json!(inertia.undecided);
    json["verdicts"] = json!([]);
    let mut text = ctx.summary();
    text += &format!("inertia group: {:?}\n", inertia.members);
    if !inertia.undecided.is_empty() {
        text += &format!("undecided: {:?}\n", inertia.undecided);
    }
    let code = if inertia.undecided.is_empty() {
        exit::YES
    } else {
        exit::INCONCLUSIVE
    };
    Ok(Report::new(code, text, json, ctx.cli.json))
}

fn verify_report<F: Field>(ctx: &Context<'_, F>, cert_path: &Path) -> Result<Report, Failure> {
    let a = &ctx.algebra;
    let cert = parse_certificate(&read(cert_path)?, a.field())?;
    let result = verify_certificate(a, &cert)?;
    let mut json = ctx.header();
    json["certificate"] = certificate_json(&cert);
    json["verdicts"] = json!([]);
    let mut text = ctx.summary();
    let code = match &result {
        Verification::Accept => {
            json["verification"] = json!("accept");
            text += &format!("accept: valid {} for sigma {}\n", cert.kind, cert.sigma);
            exit::YES
        }
        Verification::Reject(reason) => {
            json["verification"] = json!("reject");
            json["reason"] = json!(reason);
            text += &format!("reject: {reason}\n");
            exit::NO
        }
    };
    Ok(Report::new(code, text, json, ctx.cli.json))
}

/// `key=value` parameters of `gen`.
pub(crate) fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>, Failure> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Failure::usage(format!("expected key=value, got `{p}`")))
        })
        .collect()
}
