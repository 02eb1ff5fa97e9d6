//! Command-line driver. [`run_with`] takes explicit argument and output
//! streams so tests can drive it in-process.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{quotient_by, GreenRelation, DEFAULT_ISO_BOUND};
use crate::error::{Error, ErrorClass, Result};
use crate::format::{
    digest, emit_algebra_file, emit_arrow_table, parse_algebra_file, parse_poset_file, Outcome,
    Report, ReportFormat,
};
use crate::models::{
    family_instances, partial_function_algebra, poset_sections_algebra, sections_algebra,
    upset_heyting, Family, PosetSectionModel, SurjectionModel, DEFAULT_MODEL_BOUND,
};
use crate::properties::{
    binormal_factorization, check_costrong_equivalence, check_quasi_distributive,
    check_skew_lattice, classify, law, property_names,
};
use crate::report::{Check, Role, Witness};
use crate::skew_heyting::{check_sh_axioms, check_sha, derive_arrow, verify, Derivation};
use crate::Algebra;

#[derive(Debug, Parser)]
#[command(name = "skewheyting", version, about = "Finite skew lattices and skew Heyting algebras")]
struct Cli {
    /// Largest carrier a model or search instance may have.
    #[arg(long, global = true, default_value_t = DEFAULT_MODEL_BOUND)]
    bound: usize,
    /// Largest carrier for isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_BOUND)]
    iso_bound: usize,
    /// Worker threads for tuple scans. 0 picks the number of cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Report format.
    #[arg(long, global = true, default_value = "text")]
    format: ReportFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify an algebra file against the named identities.
    Check {
        file: PathBuf,
        /// Property whose failure makes the verdict FAIL. Repeatable.
        /// Defaults to skew-lattice.
        #[arg(long = "require", value_name = "P")]
        require: Vec<String>,
    },
    /// Derive the skew Heyting arrow and check SH0 to SH4'.
    Derive {
        file: PathBuf,
        /// Print the algebra with its derived arrow instead of a report.
        #[arg(long)]
        emit_algebra: bool,
    },
    /// Quotient by one of Green's relations.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        rel: GreenRelation,
    },
    /// Build a model and print it as an algebra file.
    #[command(subcommand)]
    Model(ModelCommand),
    /// Run every theorem check on an algebra file.
    Verify { file: PathBuf },
    /// Look for an instance of a family with (or, with --negate, without) a property.
    Search(SearchArgs),
}

#[derive(Debug, Subcommand)]
enum ModelCommand {
    /// Partial functions X -> Y.
    Pfn {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Sections of a surjection with the given fiber sizes.
    Sections {
        #[arg(long, value_delimiter = ',', required = true)]
        fibers: Vec<usize>,
    },
    /// Sections over upsets of a poset.
    PosetSections {
        poset: PathBuf,
        /// One fiber size per point. Defaults to 2 everywhere.
        #[arg(long, value_delimiter = ',')]
        fibers: Vec<usize>,
    },
    /// The Heyting algebra of upsets of a poset.
    Upsets { poset: PathBuf },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    max_size: usize,
    #[arg(long, value_name = "P")]
    property: String,
    /// Look for an instance where the property fails.
    #[arg(long)]
    negate: bool,
}

/// Names accepted by `search --property` and `check --require`.
pub fn searchable_properties() -> Vec<&'static str> {
    let mut v = vec!["skew-lattice"];
    v.extend(property_names());
    v.extend(["quasi-distributive", "costrong-equivalence", "skew-heyting", "verify"]);
    v
}

/// Checks that restate a theorem about the derived arrow. Their failure on a
/// valid input is an inconsistency, not a property of the input.
fn is_theorem(name: &str) -> bool {
    const EXACT: &[&str] = &[
        "SH0", "SH1", "SH2", "SH3", "SH4", "SH4'", "SHA", "arrow-top-iff-preceq", "below-arrow",
        "sha-sufficiency", "imp-or", "lifting", "upset-isomorphism", "three-way-equivalence",
        "skew-chain-arrow", "dual-difference-arrow", "pullback", "costrong-equivalence",
    ];
    EXACT.contains(&name) || name.starts_with("congruence-") || name.starts_with("induced-arrow-")
}

/// Parses `args` (including the program name), runs, and returns the exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 2;
        }
    };
    let result = pool.install(|| execute(&cli));
    emit(&cli, result, out, err)
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

enum Output {
    Report(Report),
    Text(String),
}

fn execute(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Check { file, require } => cmd_check(cli, file, require),
        Command::Derive { file, emit_algebra } => cmd_derive(file, *emit_algebra),
        Command::Quotient { file, rel } => cmd_quotient(file, *rel),
        Command::Model(m) => cmd_model(cli, m),
        Command::Verify { file } => cmd_verify(file),
        Command::Search(s) => cmd_search(cli, s),
    }
}

fn emit(cli: &Cli, result: CmdResult, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match result {
        Ok((Output::Report(r), _)) => {
            let _ = out.write_all(r.render(cli.format).as_bytes());
            r.outcome.exit_code()
        }
        Ok((Output::Text(t), code)) => {
            let _ = out.write_all(t.as_bytes());
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Reported(r)) => {
            let _ = out.write_all(r.render(cli.format).as_bytes());
            r.outcome.exit_code()
        }
        Err(Failure::Plain(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit status for an error by its class.
pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::PropertyFailure => 1,
        ErrorClass::Usage => 2,
        ErrorClass::Inconsistency => 3,
    }
}

enum Failure {
    Usage(String),
    /// A report that records the error; used by report-producing commands.
    Reported(Report),
    /// An error from a command whose output is an algebra file.
    Plain(Error),
}

type CmdResult = std::result::Result<(Output, i32), Failure>;

struct Input {
    label: String,
    digest: String,
    algebra: Algebra,
}

fn read_text(path: &PathBuf) -> std::result::Result<(String, Vec<u8>), Failure> {
    let mut bytes = Vec::new();
    let label = path.display().to_string();
    let res = if label == "-" {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    res.map_err(|e| Failure::Usage(format!("cannot read `{label}`: {e}")))?;
    Ok((label, bytes))
}

fn utf8(label: &str, bytes: &[u8]) -> std::result::Result<String, Failure> {
    String::from_utf8(bytes.to_vec()).map_err(|_| Failure::Usage(format!("`{label}` is not UTF-8")))
}

fn read_algebra(path: &PathBuf) -> std::result::Result<Input, Failure> {
    let (label, bytes) = read_text(path)?;
    let text = utf8(&label, &bytes)?;
    let algebra = parse_algebra_file(&text).map_err(|e| Failure::Usage(format!("{label}: {e}")))?;
    Ok(Input {
        label,
        digest: digest(&bytes),
        algebra,
    })
}

fn fail_report(report: Report, e: Error) -> Failure {
    match fold_error(report, e) {
        Ok(r) => Failure::Reported(r),
        Err(m) => Failure::Usage(m),
    }
}

fn report_for(command: &str, input: &Input) -> Report {
    let mut r = Report::new(format!("{command} {}", input.label));
    r.input = Some(input.digest.clone());
    r.names = input.algebra.names().to_vec();
    r
}

fn cmd_check(cli: &Cli, file: &PathBuf, require: &[String]) -> CmdResult {
    let required: Vec<&str> = require.iter().map(String::as_str).collect();
    unknown_property(&required).map_or(Ok(()), |m| Err(Failure::Usage(m)))?;
    let input = read_algebra(file)?;
    let report = check_report(&input.algebra, &required, cli.iso_bound, report_for("check", &input))
        .map_err(Failure::Usage)?;
    Ok((Output::Report(report), 0))
}

fn unknown_property(names: &[&str]) -> Option<String> {
    let known = searchable_properties();
    names.iter().find(|p| !known.contains(p)).map(|bad| {
        format!("unknown property `{bad}`; known: {}", known.join(", "))
    })
}

/// Records `e` on `report`, or returns its message when it is a usage error.
fn fold_error(mut report: Report, e: Error) -> std::result::Result<Report, String> {
    match e.class() {
        ErrorClass::Usage => Err(e.to_string()),
        class => {
            report.outcome = if class == ErrorClass::Inconsistency {
                Outcome::Inconsistent
            } else {
                Outcome::Fail
            };
            report.error = Some(e.to_string());
            Ok(report)
        }
    }
}

/// Fills `report` with the `check` command's findings on `a`. The properties
/// in `require` decide the verdict; an empty list means `skew-lattice`.
/// `Err` carries usage errors only.
pub fn check_report(
    a: &Algebra,
    require: &[&str],
    iso_bound: usize,
    mut report: Report,
) -> std::result::Result<Report, String> {
    if let Some(m) = unknown_property(require) {
        return Err(m);
    }
    let required: BTreeSet<&str> = if require.is_empty() {
        BTreeSet::from(["skew-lattice"])
    } else {
        require.iter().copied().collect()
    };
    let mut extra = Vec::new();
    for p in required.iter().filter(|p| matches!(**p, "skew-heyting" | "verify")) {
        match property_check(a, p) {
            Ok(Some(c)) => extra.push(c),
            Ok(None) => extra.push(Check::skipped(*p, "not applicable")),
            Err(e) => return fold_error(report, e),
        }
    }
    for mut c in classify(a).checks.into_iter().chain(extra) {
        c.role = if required.contains(c.name.as_str()) {
            Role::Requirement
        } else {
            Role::Classification
        };
        report.checks.push(c);
    }
    let mut ce = match check_costrong_equivalence(a) {
        Ok(c) => c,
        Err(Error::PreconditionFailed(why)) => Check::skipped("costrong-equivalence", why),
        Err(e) => return fold_error(report, e),
    };
    if !required.contains("costrong-equivalence") {
        ce.role = Role::Classification;
    }
    report.checks.push(ce);
    if a.size() > iso_bound {
        report.payload.push(format!(
            "factorization: skipped (size {} exceeds iso bound {})",
            a.size(),
            iso_bound
        ));
    } else {
        match binormal_factorization(a) {
            Ok(Some(f)) => report.payload.push(format!(
                "factorization: lattice of {} x rectangular {}",
                f.lattice.size(),
                f.rectangular.size()
            )),
            Ok(None) => report.payload.push("factorization: not binormal".into()),
            Err(e) => return fold_error(report, e),
        }
    }
    report.settle();
    Ok(report)
}

fn cmd_derive(file: &PathBuf, emit_algebra: bool) -> CmdResult {
    let input = read_algebra(file)?;
    let base = input.algebra.clone().without_arrow();
    let mut report = report_for("derive", &input);
    let derived = match derive_arrow(&base) {
        Ok(Derivation::Derived(d)) => d.table,
        Ok(Derivation::NotHeyting { u, missing }) => {
            report.checks.push(Check::fails(
                "arrow-derivable",
                base.size() as u64,
                Witness::new(&["u", "y", "z"], &[u, missing.y, missing.z])
                    .with_note("upset is not Heyting"),
            ));
            report.settle();
            return Ok((Output::Report(report), 0));
        }
        Err(e) => return Err(fail_report(report, e)),
    };
    report.checks.push(Check::holds("arrow-derivable", base.size() as u64));
    let sh = check_sh_axioms(&base, &derived).map_err(|e| fail_report(report.clone(), e))?;
    let violated = sh.first_failure().is_some();
    report.checks.extend(sh.checks);
    if violated {
        report.outcome = Outcome::Inconsistent;
    }
    if emit_algebra && !violated {
        let with = base
            .with_arrow(derived)
            .map_err(|e| fail_report(report.clone(), e))?;
        return Ok((Output::Text(emit_algebra_file(&with)), 0));
    }
    report.payload.extend(emit_arrow_table(&base, &derived).lines().map(String::from));
    let pairs: Vec<String> = base
        .elements()
        .flat_map(|x| base.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("{}->{}={}", base.name(x), base.name(y), base.name(derived.get(x, y))))
        .collect();
    report.payload.push(format!("pairs: {}", pairs.join(" ")));
    report.settle();
    Ok((Output::Report(report), 0))
}

fn cmd_quotient(file: &PathBuf, rel: GreenRelation) -> CmdResult {
    let input = read_algebra(file)?;
    if !check_skew_lattice(&input.algebra).is_holds() {
        return Err(Failure::Plain(Error::PreconditionFailed("not a skew lattice".into())));
    }
    let (q, _) = quotient_by(&input.algebra, rel).map_err(Failure::Plain)?;
    Ok((Output::Text(emit_algebra_file(&q)), 0))
}

fn model_error(e: Error) -> Failure {
    match e.class() {
        ErrorClass::Inconsistency => Failure::Plain(e),
        _ => Failure::Usage(e.to_string()),
    }
}

fn read_poset(path: &PathBuf) -> std::result::Result<crate::models::Poset, Failure> {
    let (label, bytes) = read_text(path)?;
    let text = utf8(&label, &bytes)?;
    parse_poset_file(&text).map_err(|e| Failure::Usage(format!("{label}: {e}")))
}

fn cmd_model(cli: &Cli, m: &ModelCommand) -> CmdResult {
    let text = match m {
        ModelCommand::Pfn { x, y } => {
            emit_algebra_file(&partial_function_algebra(*x, *y, cli.bound).map_err(model_error)?)
        }
        ModelCommand::Sections { fibers } => {
            let s = SurjectionModel::from_fibers(fibers).map_err(model_error)?;
            emit_algebra_file(&sections_algebra(&s, cli.bound).map_err(model_error)?)
        }
        ModelCommand::PosetSections { poset, fibers } => {
            let p = read_poset(poset)?;
            let fibers = if fibers.is_empty() { vec![2; p.size()] } else { fibers.clone() };
            if fibers.contains(&0) {
                return Err(Failure::Usage("fiber sizes must be positive".into()));
            }
            let model = PosetSectionModel::from_fibers(p, &fibers).map_err(model_error)?;
            let (a, report) = poset_sections_algebra(&model, cli.bound).map_err(model_error)?;
            let mut text: String = report
                .lines(a.names())
                .iter()
                .map(|l| format!("# {l}\n"))
                .collect();
            text.push_str(&emit_algebra_file(&a));
            text
        }
        ModelCommand::Upsets { poset } => {
            let p = read_poset(poset)?;
            emit_algebra_file(&upset_heyting(&p).map_err(model_error)?)
        }
    };
    Ok((Output::Text(text), 0))
}

fn cmd_verify(file: &PathBuf) -> CmdResult {
    let input = read_algebra(file)?;
    let report = verify_report(&input.algebra, report_for("verify", &input)).map_err(Failure::Usage)?;
    Ok((Output::Report(report), 0))
}

/// Fills `report` with the `verify` command's theorem checks on `a`. A given
/// arrow is checked too when the derived one exists. `Err` carries usage
/// errors only.
pub fn verify_report(a: &Algebra, mut report: Report) -> std::result::Result<Report, String> {
    let r = match verify(a) {
        Ok(r) => r,
        Err(e) => return fold_error(report, e),
    };
    let derived_ok = r.holds("arrow-derivable");
    report.checks.extend(r.checks);
    if let (true, Some(given)) = (derived_ok, a.arrow_table()) {
        let base = a.clone().without_arrow();
        let g = check_sh_axioms(&base, given).and_then(|mut g| {
            g.extend(check_sha(&base, given)?);
            Ok(g)
        });
        let g = match g {
            Ok(g) => g,
            Err(e) => return fold_error(report, e),
        };
        report
            .checks
            .extend(g.checks.into_iter().map(|c| {
                let name = format!("given:{}", c.name);
                c.renamed(name)
            }));
    }
    if report.checks.iter().any(|c| c.is_fails() && is_theorem(&c.name)) {
        report.outcome = Outcome::Inconsistent;
    }
    report.settle();
    Ok(report)
}

/// The named property on `a`. `None` when it does not apply (for example
/// the costrong equivalence on a non-skew-lattice).
pub fn property_check(a: &Algebra, name: &str) -> Result<Option<Check>> {
    if let Some(l) = law(name) {
        return Ok(Some(l.check(a)));
    }
    match name {
        "skew-lattice" => Ok(Some(check_skew_lattice(a))),
        "quasi-distributive" => Ok(Some(check_quasi_distributive(a))),
        "costrong-equivalence" => match check_costrong_equivalence(a) {
            Ok(c) => Ok(Some(c)),
            Err(Error::PreconditionFailed(_)) => Ok(None),
            Err(e) => Err(e),
        },
        "skew-heyting" | "verify" => {
            let r = verify(a)?;
            let c = if name == "verify" {
                match r.first_failure() {
                    None => Check::holds("verify", r.checks.len() as u64),
                    Some(f) => Check {
                        name: "verify".into(),
                        witness: f.witness.clone().map(|w| {
                            let note = match &w.note {
                                Some(n) => format!("{}: {n}", f.name),
                                None => f.name.clone(),
                            };
                            w.with_note(note)
                        }),
                        ..f.clone()
                    },
                }
            } else {
                let prefix = ["skew-lattice", "co-strongly-distributive", "has-top", "arrow-derivable"];
                match r.checks.iter().find(|c| prefix.contains(&c.name.as_str()) && c.is_fails()) {
                    None => Check::holds("skew-heyting", 4),
                    Some(f) => {
                        let mut f = f.clone();
                        let w = f.witness.take().map(|w| {
                            let note = match &w.note {
                                Some(n) => format!("{}: {n}", f.name),
                                None => f.name.clone(),
                            };
                            w.with_note(note)
                        });
                        Check { name: "skew-heyting".into(), witness: w, ..f }
                    }
                }
            };
            Ok(Some(c))
        }
        _ => Err(Error::PreconditionFailed(format!("unknown property `{name}`"))),
    }
}

fn cmd_search(cli: &Cli, s: &SearchArgs) -> CmdResult {
    let known = searchable_properties();
    if !known.contains(&s.property.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown property `{}`; known: {}",
            s.property,
            known.join(", ")
        )));
    }
    let mut report = Report::new(format!(
        "search --family {} --max-size {} --property {}{}",
        s.family,
        s.max_size,
        s.property,
        if s.negate { " --negate" } else { "" }
    ));
    let instances = family_instances(s.family, s.max_size, cli.bound).map_err(|e| fail_report(report.clone(), e))?;
    let mut examined = 0;
    for inst in &instances {
        let check = match property_check(&inst.algebra, &s.property) {
            Ok(Some(c)) => c,
            Ok(None) => continue,
            Err(e) => {
                report.payload.push(format!("instance: {}", inst.label));
                report.names = inst.algebra.names().to_vec();
                return Err(fail_report(report, e));
            }
        };
        examined += 1;
        let hit = if s.negate { check.is_fails() } else { check.is_holds() };
        if hit {
            report.names = inst.algebra.names().to_vec();
            report.payload.push(format!("examined: {examined} of {} instances", instances.len()));
            report.payload.push(format!("found: {}", inst.label));
            report.payload.extend(emit_algebra_file(&inst.algebra).lines().map(String::from));
            report.checks.push(check);
            report.outcome = if s.negate { Outcome::Fail } else { Outcome::Pass };
            return Ok((Output::Report(report), 0));
        }
    }
    report.payload.push(format!("examined: {examined} of {} instances", instances.len()));
    report.payload.push("found: none".into());
    report.outcome = if s.negate { Outcome::Pass } else { Outcome::Fail };
    Ok((Output::Report(report), 0))
}
