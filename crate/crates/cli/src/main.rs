mod tablefile;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpl_core::enumerate::{enumerate, EnumerationKind, EnumerationSpec};
use qpl_core::holomorph::{automorphism_group, build_holomorph_bounded, DEFAULT_HOLOMORPH_BOUND};
use qpl_core::identities::{
    builtin, evans_check, evans_search, identity_holds, khalil_identities, parse_identity, Assignment, EvansWitness,
    BUILTINS,
};
use qpl_core::isotopy::{find_isomorphism, find_isotopism};
use qpl_core::parastrophe::{is_totally_symmetric, parse_kind};
use qpl_core::verify::{run_suite, suite_names, SuiteOptions};
use qpl_core::{parastrophe, NucleusKind, ParastropheKind, Quasigroup};

use tablefile::{parse_perms, parse_table, write_table};

/// Finite quasigroups: tables, parastrophes, isotopy and identity checks.
#[derive(Parser)]
#[command(name = "qpl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on a single table
    #[command(subcommand)]
    Table(TableCmd),
    /// Checks that print a verdict: exit 0 if it holds, 1 if not
    #[command(subcommand)]
    Check(CheckCmd),
    /// Run a verification suite and emit line-delimited JSON records
    Verify(VerifyArgs),
    /// List tables of a given order
    Enum(EnumArgs),
}

#[derive(Subcommand)]
enum TableCmd {
    /// Parse and validate; prints the order and loop/group status
    Validate { file: PathBuf },
    /// Print a parastrophe (pi1..pi6, or star, rinv, linv, rinv-star, linv-star)
    Parastrophe {
        #[arg(long, value_parser = parse_kind_arg)]
        kind: ParastropheKind,
        file: PathBuf,
    },
    /// Print the holomorph table
    Holomorph {
        #[arg(long, default_value_t = DEFAULT_HOLOMORPH_BOUND)]
        bound: usize,
        file: PathBuf,
    },
    /// List automorphisms in lexicographic order of their images
    Automorphisms { file: PathBuf },
    /// Print the left, middle and right nuclei
    Nuclei { file: PathBuf },
    /// Identity elements, commutativity, associativity and parastrophe loops
    Profile { file: PathBuf },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Does an identity hold? Prints the first failing assignment otherwise
    Identity {
        /// A built-in identity
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        name: Option<String>,
        /// An identity such as 'x*(y*z) = (x*y)*z'
        #[arg(long)]
        expr: Option<String>,
        file: PathBuf,
    },
    /// Search for an isotopism from the first table to the second
    Isotopic { first: PathBuf, second: PathBuf },
    /// Search for an isomorphism from the first table to the second
    Isomorphic { first: PathBuf, second: PathBuf },
    /// The six Khalil identities
    Khalil { file: PathBuf },
    /// The Evans law, with a given witness or by search (order at most 3)
    Evans {
        /// Degree, then ten permutations P1..P5, Q1..Q5
        #[arg(long)]
        witness: Option<PathBuf>,
        file: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(suite_names().collect::<Vec<_>>()))]
    suite: String,
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    sample: Option<usize>,
    /// Write records here instead of standard output
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    AllLatin,
    ReducedLatin,
    Loops,
    Groups,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    order: usize,
    /// Sample instead of enumerating (needs --limit)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    limit: Option<usize>,
}

fn parse_kind_arg(s: &str) -> Result<ParastropheKind, String> {
    parse_kind(s).map_err(|e| e.to_string())
}

enum Failure {
    Input(String),
    Bound(String),
}

impl From<qpl_core::Error> for Failure {
    fn from(e: qpl_core::Error) -> Failure {
        match e {
            qpl_core::Error::BoundExceeded { .. } => Failure::Bound(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Quasigroup, Failure> {
    parse_table(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn show_assignment(a: &Assignment) -> String {
    a.iter().map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(" ")
}

fn table(cmd: TableCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        TableCmd::Validate { file } => {
            let q = load(&file)?;
            let mut line = format!("ok, order {}", q.order());
            if q.identity_element().is_some() {
                line.push_str(", loop");
                if q.associative() {
                    line.push_str(", group");
                }
            }
            writeln!(out, "{line}")?;
        }
        TableCmd::Parastrophe { kind, file } => {
            write!(out, "{}", write_table(&parastrophe(&load(&file)?, kind)))?;
        }
        TableCmd::Holomorph { bound, file } => {
            write!(
                out,
                "{}",
                write_table(&build_holomorph_bounded(&load(&file)?, bound)?.table)
            )?;
        }
        TableCmd::Automorphisms { file } => {
            for p in automorphism_group(&load(&file)?)?.perms() {
                writeln!(out, "{p}")?;
            }
        }
        TableCmd::Nuclei { file } => {
            let q = load(&file)?;
            for (label, kind) in [
                ("left", NucleusKind::Left),
                ("middle", NucleusKind::Middle),
                ("right", NucleusKind::Right),
            ] {
                let elems = q.nucleus(kind);
                writeln!(
                    out,
                    "{label}:{}",
                    elems.iter().map(|e| format!(" {e}")).collect::<String>()
                )?;
            }
        }
        TableCmd::Profile { file } => {
            let q = load(&file)?;
            let p = q.loop_profile();
            let list = |s: &std::collections::BTreeSet<usize>| s.iter().map(|e| format!(" {e}")).collect::<String>();
            writeln!(out, "order: {}", q.order())?;
            writeln!(
                out,
                "identity: {}",
                p.two_sided_identity.map_or("none".into(), |e| e.to_string())
            )?;
            writeln!(out, "left identities:{}", list(&p.left_identities))?;
            writeln!(out, "right identities:{}", list(&p.right_identities))?;
            writeln!(out, "commutative: {}", p.commutative)?;
            writeln!(out, "associative: {}", q.associative())?;
            writeln!(out, "exponent two: {}", p.exponent_two)?;
            writeln!(out, "totally symmetric: {}", is_totally_symmetric(&q))?;
            for kind in ParastropheKind::ALL {
                writeln!(
                    out,
                    "{kind} loop: {}",
                    parastrophe(&q, kind).identity_element().is_some()
                )?;
            }
        }
    }
    Ok(true)
}

fn check(cmd: CheckCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        CheckCmd::Identity { name, expr, file } => {
            let id = match (name, expr) {
                (Some(n), _) => builtin(&n).ok_or_else(|| {
                    let known: Vec<&str> = BUILTINS.iter().map(|b| b.0).collect();
                    Failure::Input(format!("unknown identity '{n}' (known: {})", known.join(", ")))
                })?,
                (None, Some(e)) => parse_identity(&e)?,
                (None, None) => unreachable!("clap requires one"),
            };
            let q = load(&file)?;
            match identity_holds(&q, &id)? {
                None => {
                    writeln!(out, "holds")?;
                    Ok(true)
                }
                Some(a) => {
                    writeln!(out, "fails at {}", show_assignment(&a))?;
                    Ok(false)
                }
            }
        }
        CheckCmd::Isotopic { first, second } => {
            let (a, b) = (load(&first)?, load(&second)?);
            if a.order() != b.order() {
                writeln!(out, "not isotopic")?;
                return Ok(false);
            }
            match find_isotopism(&a, &b)? {
                Some(t) => {
                    writeln!(out, "isotopic\nA: {}\nB: {}\nC: {}", t.a, t.b, t.c)?;
                    Ok(true)
                }
                None => {
                    writeln!(out, "not isotopic")?;
                    Ok(false)
                }
            }
        }
        CheckCmd::Isomorphic { first, second } => match find_isomorphism(&load(&first)?, &load(&second)?) {
            Some(phi) => {
                writeln!(out, "isomorphic\nphi: {phi}")?;
                Ok(true)
            }
            None => {
                writeln!(out, "not isomorphic")?;
                Ok(false)
            }
        },
        CheckCmd::Khalil { file } => {
            let q = load(&file)?;
            let mut all = true;
            for (i, id) in khalil_identities().iter().enumerate() {
                match identity_holds(&q, id)? {
                    None => writeln!(out, "khalil{} holds", i + 1)?,
                    Some(a) => {
                        all = false;
                        writeln!(out, "khalil{} fails at {}", i + 1, show_assignment(&a))?;
                    }
                }
            }
            Ok(all)
        }
        CheckCmd::Evans { witness, file } => {
            let q = load(&file)?;
            match witness {
                Some(path) => {
                    let perms =
                        parse_perms(&read(&path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    let w = EvansWitness::from_perms(perms)?;
                    let holds = evans_check(&q, &w)?;
                    writeln!(out, "{}", if holds { "holds" } else { "fails" })?;
                    Ok(holds)
                }
                None => match evans_search(&q)? {
                    Some(w) => {
                        writeln!(out, "found")?;
                        for (label, p) in ["P1", "P2", "P3", "P4", "P5"].iter().zip(&w.p) {
                            writeln!(out, "{label}: {p}")?;
                        }
                        for (label, p) in ["Q1", "Q2", "Q3", "Q4", "Q5"].iter().zip(&w.q) {
                            writeln!(out, "{label}: {p}")?;
                        }
                        Ok(true)
                    }
                    None => {
                        writeln!(out, "not found")?;
                        Ok(false)
                    }
                },
            }
        }
    }
}

fn verify(args: VerifyArgs, out: &mut impl Write) -> Outcome {
    let opts = SuiteOptions {
        max_order: args.max_order,
        seed: args.seed,
        sample: args.sample,
        workers: args.workers,
    };
    let report = run_suite(&args.suite, &opts)?;
    match &args.report {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let mut w = io::BufWriter::new(file);
            report.write_jsonl(&mut w)?;
            w.flush()?;
            let s = &report.summary;
            writeln!(
                out,
                "{}: {} instances, {} records, {} failed, {} skipped",
                s.suite, s.instances, s.records, s.failed, s.skipped
            )?;
            if let Some(first) = &s.first_failure {
                writeln!(out, "first failure: {first}")?;
            }
        }
        None => report.write_jsonl(out)?,
    }
    Ok(report.summary.exit == 0)
}

fn enumerate_cmd(args: EnumArgs, out: &mut impl Write) -> Outcome {
    let kind = match args.kind {
        KindArg::AllLatin => EnumerationKind::AllLatin,
        KindArg::ReducedLatin => EnumerationKind::ReducedLatin,
        KindArg::Loops => EnumerationKind::Loops,
        KindArg::Groups => EnumerationKind::Groups,
    };
    let spec = EnumerationSpec {
        order: args.order,
        kind,
        seed: args.seed,
        limit: args.limit,
    };
    for (i, q) in enumerate(spec)?.enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        write!(out, "{}", write_table(&q))?;
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = std::env::var("QPL_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Table(cmd) => table(cmd, &mut out),
        Command::Check(cmd) => check(cmd, &mut out),
        Command::Verify(args) => verify(args, &mut out),
        Command::Enum(args) => enumerate_cmd(args, &mut out),
    };
    let flushed = out.flush();
    match result {
        Ok(_) if flushed.is_err() => ExitCode::from(2),
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(msg)) => {
            eprintln!("bound exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
