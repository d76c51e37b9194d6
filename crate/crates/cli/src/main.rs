//! geomlat: build lattices of flats from matroid instance files, verify the
//! geometric axioms and construction suites, compute atom-to-hyperplane
//! matchings, extract espousal obstructions, and export Hasse diagrams.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure, 2 input
//! error, 3 internal invariant breach.

use clap::{Parser, Subcommand};
use geomlat::checks::{
    atom_sublattice_suite, check_cover_join, check_no_four_crown, check_shadow_bound,
    modular_complement_suite, verify_geometric,
};
use geomlat::export::{lattice_dot, lattice_export, matroid_instance, society_instance};
use geomlat::matching::{check_case2_classification, match_dispatch, MatchError, StrategyReport};
use geomlat::matroid::{parse_instance, ParsedInstance, DEFAULT_FLAT_CAP};
use geomlat::society::{extract_obstruction, lattice_society, verify_obstruction, Society};
use geomlat::subset::Subset;
use geomlat::{Lattice, LatticeError, Matroid, Strategy};
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "geomlat", version, about = "Finite geometric lattice toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the lattice of flats and print its census.
    Build {
        #[arg(long)]
        input: PathBuf,
        /// Write the lattice export JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_FLAT_CAP)]
        flat_cap: usize,
    },
    /// Run every verification suite and report per-check results.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the sampled suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Lattices up to this size run the complement suite exhaustively.
        #[arg(long, default_value_t = 200)]
        exhaustive_cap: usize,
        #[arg(long, default_value_t = DEFAULT_FLAT_CAP)]
        flat_cap: usize,
    },
    /// Compute an atom-to-hyperplane matching.
    Match {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// hall, milner-shelah, bjorner or auto.
        #[arg(long, default_value = "auto")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FLAT_CAP)]
        flat_cap: usize,
    },
    /// Extract and verify an espousal obstruction from a society instance
    /// (or from the incidence society of a matroid instance).
    Obstruct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_FLAT_CAP)]
        flat_cap: usize,
    },
    /// Export the Hasse diagram as rank-layered Graphviz DOT.
    ExportDot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_FLAT_CAP)]
        flat_cap: usize,
    },
    /// Write the standard corpus of instance files into a directory.
    GenCorpus {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random GF(2) matroids.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

enum CliError {
    Input(String),
    Verification(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Verification(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> CliError {
        match e {
            LatticeError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<MatchError> for CliError {
    fn from(e: MatchError) -> CliError {
        match e {
            MatchError::Lattice(inner) => inner.into(),
            MatchError::DegreeCondition { .. } | MatchError::EmptyNeighborhood(_) => {
                CliError::Verification(e.to_string())
            }
            MatchError::Internal(_) => CliError::Internal(e.to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<ParsedInstance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| CliError::Input(e.to_string()))
}

fn read_matroid(path: &Path) -> Result<Matroid, CliError> {
    match read_input(path)? {
        ParsedInstance::Matroid(m) => Ok(m),
        ParsedInstance::Society(_) => Err(CliError::Input(format!(
            "{} holds a society; this command needs a matroid instance",
            path.display()
        ))),
    }
}

fn build_lattice(m: &Matroid, flat_cap: usize) -> Result<Lattice, CliError> {
    Ok(Lattice::from_matroid_capped(m, flat_cap)?)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn cmd_build(input: &Path, out: Option<&PathBuf>, flat_cap: usize) -> Result<(), CliError> {
    let matroid = read_matroid(input)?;
    let lat = build_lattice(&matroid, flat_cap)?;
    if let Some(path) = out {
        std::fs::write(path, format!("{}\n", to_pretty(&lattice_export(&lat))))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    println!(
        "N={} r={} atoms={} hyperplanes={}",
        lat.len(),
        lat.height(),
        lat.atoms().len(),
        lat.hyperplanes().len()
    );
    Ok(())
}

#[derive(Serialize)]
struct CheckLine {
    name: String,
    passed: bool,
    detail: Option<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    input: String,
    seed: u64,
    exhaustive_cap: usize,
    elements: usize,
    rank: usize,
    checks: Vec<CheckLine>,
    all_passed: bool,
}

fn cmd_verify(
    input: &Path,
    out: Option<&PathBuf>,
    seed: u64,
    exhaustive_cap: usize,
    flat_cap: usize,
) -> Result<(), CliError> {
    let matroid = read_matroid(input)?;
    let lat = build_lattice(&matroid, flat_cap)?;
    let mut checks: Vec<CheckLine> = Vec::new();

    for check in verify_geometric(&lat).checks {
        checks.push(CheckLine {
            name: format!("geometric/{}", check.name),
            passed: check.passed,
            detail: check.witness,
        });
    }

    if lat.height() >= 2 {
        let report = check_shadow_bound(&lat);
        checks.push(CheckLine {
            name: "shadow_bound".into(),
            passed: report.passed(),
            detail: Some(format!(
                "{} pairs, min slack {}",
                report.pairs_checked,
                report.min_slack.map_or("n/a".into(), |s| s.to_string())
            )),
        });
    } else {
        checks.push(CheckLine {
            name: "shadow_bound".into(),
            passed: true,
            detail: Some("skipped: rank < 2".into()),
        });
    }

    let cover_join = check_cover_join(&lat);
    checks.push(CheckLine {
        name: cover_join.name.clone(),
        passed: cover_join.passed,
        detail: cover_join.witness,
    });
    let crown = check_no_four_crown(&lat);
    checks.push(CheckLine {
        name: crown.name.clone(),
        passed: crown.passed,
        detail: crown.witness,
    });

    let complement = modular_complement_suite(&lat, exhaustive_cap, 1000, seed);
    checks.push(CheckLine {
        name: "modular_complement".into(),
        passed: complement.passed(),
        detail: Some(if complement.exhaustive {
            format!("exhaustive, {} triples", complement.cases)
        } else {
            format!("sampled, {} triples (seed {seed})", complement.cases)
        }),
    });

    let sublattice = atom_sublattice_suite(&lat, 200, seed);
    checks.push(CheckLine {
        name: "atom_sublattice".into(),
        passed: sublattice.passed(),
        detail: Some(format!(
            "{} sampled generator sets (seed {seed})",
            sublattice.cases
        )),
    });

    if lat.height() >= 3 {
        let mut failures = Vec::new();
        for &h0 in lat.hyperplanes() {
            let report = check_case2_classification(&lat, h0);
            if !report.passed() {
                failures.extend(report.failures);
            }
        }
        checks.push(CheckLine {
            name: "case2_classification".into(),
            passed: failures.is_empty(),
            detail: if failures.is_empty() {
                Some(format!("{} hyperplanes", lat.hyperplanes().len()))
            } else {
                Some(failures.join("; "))
            },
        });
    } else {
        checks.push(CheckLine {
            name: "case2_classification".into(),
            passed: true,
            detail: Some("skipped: rank < 3".into()),
        });
    }

    let all_passed = checks.iter().all(|c| c.passed);
    let report = VerifyReport {
        input: input.display().to_string(),
        seed,
        exhaustive_cap,
        elements: lat.len(),
        rank: lat.height(),
        checks,
        all_passed,
    };
    emit(&to_pretty(&report), out)?;
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Verification("verification checks failed".into()))
    }
}

#[derive(Serialize)]
struct MatchReport {
    input: String,
    seed: u64,
    strategy: StrategyReport,
    matching: Vec<MatchPair>,
}

#[derive(Serialize)]
struct MatchPair {
    atom: Subset,
    hyperplane: Subset,
}

fn cmd_match(
    input: &Path,
    out: Option<&PathBuf>,
    strategy: &str,
    seed: u64,
    flat_cap: usize,
) -> Result<(), CliError> {
    let strategy: Strategy = strategy.parse().map_err(CliError::Input)?;
    let matroid = read_matroid(input)?;
    let lat = build_lattice(&matroid, flat_cap)?;
    let (matching, report) = match_dispatch(&lat, strategy)?;
    let pairs = matching
        .pairs()
        .iter()
        .map(|(&a, &h)| MatchPair {
            atom: lat.flat(a),
            hyperplane: lat.flat(h),
        })
        .collect();
    let report = MatchReport {
        input: input.display().to_string(),
        seed,
        strategy: report,
        matching: pairs,
    };
    let verified = report.strategy.verified;
    emit(&to_pretty(&report), out)?;
    if verified {
        Ok(())
    } else {
        Err(CliError::Internal("matching failed verification".into()))
    }
}

fn cmd_obstruct(input: &Path, out: Option<&PathBuf>, flat_cap: usize) -> Result<(), CliError> {
    let society: Society = match read_input(input)? {
        ParsedInstance::Society(s) => s,
        ParsedInstance::Matroid(m) => {
            let lat = build_lattice(&m, flat_cap)?;
            lattice_society(&lat)?
        }
    };
    let report = match extract_obstruction(&society) {
        None => {
            let (espousal, _) = geomlat::society::max_espousal(&society);
            json!({
                "input": input.display().to_string(),
                "obstruction": null,
                "espousal": espousal,
                "verified": true,
            })
        }
        Some(witness) => {
            let check = verify_obstruction(&witness, &society);
            let verdict = check.passed();
            let value = json!({
                "input": input.display().to_string(),
                "obstruction": {
                    "pi": witness.pi,
                    "deleted": witness.deleted,
                    "kappa": witness.kappa,
                    "espousal": witness.espousal,
                },
                "clauses": check.clauses,
                "verified": verdict,
            });
            if !verdict {
                emit(&to_pretty(&value), out)?;
                return Err(CliError::Internal(
                    "extracted obstruction failed verification".into(),
                ));
            }
            value
        }
    };
    emit(&to_pretty(&report), out)
}

fn cmd_export_dot(input: &Path, out: Option<&PathBuf>, flat_cap: usize) -> Result<(), CliError> {
    let matroid = read_matroid(input)?;
    let lat = build_lattice(&matroid, flat_cap)?;
    let dot = lattice_dot(&lat);
    print!("{dot}");
    if let Some(path) = out {
        std::fs::write(path, &dot)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_gen_corpus(out: &Path, seed: u64, count: usize) -> Result<(), CliError> {
    std::fs::create_dir_all(out)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", out.display())))?;
    let mut written: Vec<String> = Vec::new();
    for entry in geomlat::corpus::standard_corpus(seed, count) {
        let path = out.join(format!("{}.json", entry.name));
        std::fs::write(
            &path,
            format!("{}\n", to_pretty(&matroid_instance(&entry.matroid))),
        )
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        written.push(format!("{}.json", entry.name));
    }
    for (name, society) in geomlat::corpus::sample_societies() {
        let path = out.join(format!("{name}.json"));
        std::fs::write(
            &path,
            format!("{}\n", to_pretty(&society_instance(&society))),
        )
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        written.push(format!("{name}.json"));
    }
    for name in written {
        println!("{name}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build {
            input,
            out,
            flat_cap,
        } => cmd_build(&input, out.as_ref(), flat_cap),
        Command::Verify {
            input,
            out,
            seed,
            exhaustive_cap,
            flat_cap,
        } => cmd_verify(&input, out.as_ref(), seed, exhaustive_cap, flat_cap),
        Command::Match {
            input,
            out,
            strategy,
            seed,
            flat_cap,
        } => cmd_match(&input, out.as_ref(), &strategy, seed, flat_cap),
        Command::Obstruct {
            input,
            out,
            flat_cap,
        } => cmd_obstruct(&input, out.as_ref(), flat_cap),
        Command::ExportDot {
            input,
            out,
            flat_cap,
        } => cmd_export_dot(&input, out.as_ref(), flat_cap),
        Command::GenCorpus { out, seed, count } => cmd_gen_corpus(&out, seed, count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
