//! Command-line surface: build tables, run verification suites, emit
//! certificates.
//!
//! Exit codes are a contract: 0 all checks pass, 1 a check failed (the
//! certificate is still written), 2 the closure diverged, 3 usage or
//! configuration error.

use crate::closure::{table_from_presentation, ClosureError, StructureTable};
use crate::dynkin::{DynkinDiagram, Family};
use crate::verify::{
    center_c, center_d, certify_dimension, ideal_i, ideal_i_prime, verify_abelian, verify_center,
    verify_highest_weight, verify_ideal, verify_odd_a_extension, verify_quotient_iso_c_mod_i,
    verify_relations, verify_table, verify_typed_radical, Certificate, VerifyError,
};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_DIVERGED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Default rank caps keep exhaustive Jacobi checking in the seconds range.
pub fn rank_cap(family: Family) -> usize {
    match family {
        Family::A => 12,
        Family::B | Family::C | Family::D => 8,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ela",
    about = "Exact structure-constant tables and certificates for electrical Lie algebras of classical Dynkin types"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify the dimension of an electrical Lie algebra.
    Dim {
        /// Family letter: A, B, C, or D
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Write the JSON certificate here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Closure iteration cap (default 10 * |Phi^+|^2; ELA_ITER_CAP
        /// overrides the default)
        #[arg(long)]
        iter_cap: Option<usize>,
    },
    /// Run a verification suite and emit its certificate.
    Verify {
        /// One of: relations, table, ideal, center, weights, quotient,
        /// radical, oddA, all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        iter_cap: Option<usize>,
        /// Parallelism degree for independent suite parts
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn effective_cap(flag: Option<usize>) -> usize {
    if let Some(c) = flag {
        return c;
    }
    std::env::var("ELA_ITER_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn parse_diagram(family: &str, rank: usize) -> Result<DynkinDiagram, String> {
    let fam = Family::parse(family).map_err(|e| e.to_string())?;
    let d = DynkinDiagram::new(fam, rank).map_err(|e| e.to_string())?;
    if rank > rank_cap(fam) {
        return Err(format!(
            "rank {rank} exceeds the supported cap {} for family {fam}",
            rank_cap(fam)
        ));
    }
    Ok(d)
}

/// Print without panicking when the consumer closes the pipe early.
fn say(line: String) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{line}");
}

fn emit(cert: &Certificate, format: OutputFormat, out: &Option<PathBuf>) -> std::io::Result<()> {
    let json = cert.to_json_string();
    if let Some(path) = out {
        std::fs::File::create(path)?.write_all(json.as_bytes())?;
    }
    match format {
        OutputFormat::Json => {
            if out.is_none() {
                say(json);
            }
        }
        OutputFormat::Text => {
            say(format!(
                "claim {}_{}: {}",
                cert.family, cert.rank, cert.claim
            ));
            for check in &cert.checks {
                say(format!(
                    "  {} {} — {}",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.name,
                    check.witness
                ));
            }
            say(format!(
                "overall: {}",
                if cert.overall { "PASS" } else { "FAIL" }
            ));
        }
    }
    Ok(())
}

fn exit_code_for(cert: &Certificate) -> i32 {
    if cert.overall {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn verify_error_exit(e: &VerifyError) -> i32 {
    match e {
        VerifyError::Closure(ClosureError::ClosureDiverged { .. }) => EXIT_DIVERGED,
        VerifyError::BasisMismatch(_) => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

type SuitePart = Box<dyn FnOnce() -> Result<Certificate, VerifyError> + Send>;

/// Run independent certificate parts on up to `jobs` threads and merge the
/// checks in the original order.
fn run_parts(
    parts: Vec<(String, SuitePart)>,
    jobs: usize,
) -> Vec<(String, Result<Certificate, VerifyError>)> {
    let jobs = jobs.max(1);
    let mut results: Vec<Option<(String, Result<Certificate, VerifyError>)>> =
        (0..parts.len()).map(|_| None).collect();
    let mut queue: Vec<(usize, (String, SuitePart))> = parts.into_iter().enumerate().collect();
    while !queue.is_empty() {
        let batch: Vec<_> = queue.drain(..queue.len().min(jobs)).collect();
        let handles: Vec<_> = batch
            .into_iter()
            .map(|(idx, (name, f))| std::thread::spawn(move || (idx, name, f())))
            .collect();
        for h in handles {
            let (idx, name, res) = h.join().expect("suite part does not panic");
            results[idx] = Some((name, res));
        }
    }
    results
        .into_iter()
        .map(|r| r.expect("all parts ran"))
        .collect()
}

fn suite_parts(
    suite: &str,
    d: &DynkinDiagram,
    cap: usize,
) -> Result<Vec<(String, SuitePart)>, String> {
    let mut parts: Vec<(String, SuitePart)> = Vec::new();
    let fam = d.family;
    let rank = d.rank;
    let is_even_c = fam == Family::C && rank % 2 == 0 && rank >= 4;
    let is_odd_d = fam == Family::D && rank % 2 == 1;
    let is_odd_a = fam == Family::A && rank % 2 == 1;

    let build = {
        let d = d.clone();
        move || -> Result<StructureTable, VerifyError> { Ok(table_from_presentation(&d, cap)?) }
    };

    let want = |name: &str| suite == name || suite == "all";

    if want("relations") {
        let d2 = d.clone();
        let b = build.clone();
        parts.push((
            "relations".into(),
            Box::new(move || Ok(verify_relations(&d2, &b()?))),
        ));
    }
    if want("table") {
        let d2 = d.clone();
        let b = build.clone();
        parts.push((
            "table".into(),
            Box::new(move || Ok(verify_table(&d2, &b()?))),
        ));
    }
    if want("ideal") {
        if is_even_c {
            let d2 = d.clone();
            let b = build.clone();
            parts.push((
                "ideal".into(),
                Box::new(move || {
                    let t = b()?;
                    let mut cert = verify_ideal(&t, &ideal_i_prime(&d2))?;
                    let abelian = verify_abelian(&t, &ideal_i_prime(&d2))?;
                    let full = verify_ideal(&t, &ideal_i(&d2))?;
                    for c in abelian.checks.into_iter().chain(full.checks) {
                        cert.push(c.name, c.pass, c.witness);
                    }
                    Ok(cert)
                }),
            ));
        } else if suite == "ideal" {
            return Err(format!("suite ideal needs even type C rank >= 4, got {d}"));
        }
    }
    if want("center") {
        if is_even_c || (is_odd_d && rank >= 5) {
            let d2 = d.clone();
            let b = build.clone();
            parts.push((
                "center".into(),
                Box::new(move || {
                    let t = b()?;
                    let c = if d2.family == Family::C {
                        center_c(&d2)
                    } else {
                        center_d(&d2)
                    };
                    verify_center(&t, &c)
                }),
            ));
        } else if suite == "center" {
            return Err(format!(
                "suite center needs even type C rank >= 4 or odd type D rank >= 5, got {d}"
            ));
        }
    }
    if want("weights") {
        if is_even_c {
            let b = build.clone();
            let n = rank / 2;
            parts.push((
                "weights".into(),
                Box::new(move || verify_highest_weight(&b()?, n)),
            ));
        } else if suite == "weights" {
            return Err(format!(
                "suite weights needs even type C rank >= 4, got {d}"
            ));
        }
    }
    if want("quotient") {
        if is_even_c {
            let b = build.clone();
            let da = DynkinDiagram::new(Family::A, rank).expect("valid rank");
            parts.push((
                "quotient".into(),
                Box::new(move || {
                    let tc = b()?;
                    let ta = table_from_presentation(&da, cap)?;
                    verify_quotient_iso_c_mod_i(&tc, &ta)
                }),
            ));
        } else if suite == "quotient" {
            return Err(format!(
                "suite quotient needs even type C rank >= 4, got {d}"
            ));
        }
    }
    if want("radical") {
        if is_odd_d {
            let b = build.clone();
            let n = (rank - 1) / 2;
            parts.push((
                "radical".into(),
                Box::new(move || verify_typed_radical(&b()?, n, cap)),
            ));
        } else if suite == "radical" {
            return Err(format!("suite radical needs odd type D rank, got {d}"));
        }
    }
    if want("oddA") {
        if is_odd_a && rank >= 3 {
            let n = (rank - 1) / 2;
            parts.push(("oddA".into(), Box::new(move || verify_odd_a_extension(n))));
        } else if suite == "oddA" {
            return Err(format!("suite oddA needs odd type A rank >= 3, got {d}"));
        }
    }
    if parts.is_empty() {
        return Err(format!("unknown or inapplicable suite '{suite}' for {d}"));
    }
    Ok(parts)
}

/// Run the CLI and return the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Dim {
            family,
            rank,
            format,
            out,
            iter_cap,
        } => {
            let d = match parse_diagram(&family, rank) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            };
            match certify_dimension(&d, effective_cap(iter_cap)) {
                Ok(cert) => {
                    let n = crate::dynkin::positive_root_count(&d);
                    if format == OutputFormat::Text {
                        say(format!(
                            "dim e_{d} = {n} ({})",
                            if cert.overall {
                                "certified"
                            } else {
                                "NOT certified"
                            }
                        ));
                    }
                    if emit(&cert, format, &out).is_err() {
                        return EXIT_USAGE;
                    }
                    exit_code_for(&cert)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    verify_error_exit(&e)
                }
            }
        }
        Command::Verify {
            suite,
            family,
            rank,
            format,
            out,
            iter_cap,
            jobs,
        } => {
            let d = match parse_diagram(&family, rank) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            };
            let parts = match suite_parts(&suite, &d, effective_cap(iter_cap)) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            };
            let mut merged = Certificate::new(&format!("suite {suite}"), &d);
            for (name, result) in run_parts(parts, jobs) {
                match result {
                    Ok(cert) => {
                        for c in cert.checks {
                            merged.push(
                                format!(
                                    "{}{}.{}",
                                    d.family.letter().to_ascii_lowercase(),
                                    d.rank,
                                    c.name
                                ),
                                c.pass,
                                c.witness,
                            );
                        }
                    }
                    Err(e) => {
                        let code = verify_error_exit(&e);
                        if code != EXIT_CHECK_FAILED {
                            eprintln!("error: {e}");
                            return code;
                        }
                        merged.push(format!("{name}.error"), false, e.to_string());
                    }
                }
            }
            if emit(&merged, format, &out).is_err() {
                return EXIT_USAGE;
            }
            exit_code_for(&merged)
        }
    }
}
