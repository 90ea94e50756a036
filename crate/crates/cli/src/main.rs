//! `mtcm`: validate CM data, compute Mumford-Tate and reflex-norm lattices,
//! check their equality, enumerate atlases over group families, and expand
//! tensor-space weights.
//!
//! Exit codes: 0 success; 1 invalid input (with a diagnostic naming the
//! failed invariant); 2 internal invariant violation (a theorem or
//! stability check failed); 64 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use mtcm_core::atlas::{
    records_to_csv, records_to_json, tabulate_datum, tabulate_family, write_atomic, FamilySpec,
    SubfieldPolicy, TabulateOptions,
};
use mtcm_core::mumford_tate::{
    check_main_theorem, invariant_class_dimension, motive_weights, mt_lattice, ClassRoute,
    DEFAULT_WEIGHT_CAP,
};
use mtcm_core::{CmError, Error, DEFAULT_ORDER_CAP};

use mtcm_cli::input::{load_datum, load_type, parse_document, InputDocument, LoadedDatum};
use mtcm_cli::render::{self, header, to_json, CheckDoc, MtDoc, ReflexDoc};

const EXIT_INVALID_INPUT: u8 = 1;
const EXIT_INTERNAL_VIOLATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "mtcm",
    about = "Mumford-Tate tori of CM types on exact cocharacter lattices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a datum (and type, when phi is present) and print the
    /// element order used for indexing.
    Validate { file: PathBuf },
    /// Compute the Mumford-Tate lattice: rank, basis, degeneracy,
    /// primitivity.
    Mt {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the reflex subgroup, reflex degree and reflex type.
    Reflex {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compare the Hodge-orbit lattice with the reflex-norm image lattice.
    /// Exits 0 exactly when every cross-check holds.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate CM types over a file datum or a group family and tabulate
    /// the theorem checker over all of them.
    Enumerate(EnumerateArgs),
    /// Expand the weight multiset of V(m,n,r); with --classes also count
    /// Hodge and Tate invariant classes.
    Weights {
        file: PathBuf,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        n: u32,
        #[arg(short, allow_hyphen_values = true)]
        r: i64,
        #[arg(long)]
        classes: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct EnumerateSource {
    /// Input document whose datum is enumerated.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Group family: cyclic | abelian-products | dihedral.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: EnumerateSource,
    /// Order bound for family enumeration.
    #[arg(long, default_value_t = 16)]
    max_order: usize,
    /// Emit one representative per left-translation orbit.
    #[arg(long)]
    dedupe: bool,
    /// Range H over all subgroups instead of only the trivial one.
    #[arg(long)]
    all_subfields: bool,
    /// Write CSV to this path (atomic).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write JSON to this path (atomic).
    #[arg(long, conflicts_with = "csv")]
    json: Option<PathBuf>,
}

enum Failure {
    InvalidInput(String),
    Internal(String),
    Usage(String),
}

impl Failure {
    fn report(self) -> u8 {
        match self {
            Failure::InvalidInput(msg) => {
                eprintln!("error: {msg}");
                EXIT_INVALID_INPUT
            }
            Failure::Internal(msg) => {
                eprintln!("internal invariant violation: {msg}");
                EXIT_INTERNAL_VIOLATION
            }
            Failure::Usage(msg) => {
                eprintln!("usage error: {msg}");
                EXIT_USAGE
            }
        }
    }
}

fn classify(e: Error) -> Failure {
    match e {
        Error::Cm(CmError::InternalStabilityViolation { .. }) => Failure::Internal(e.to_string()),
        other => Failure::InvalidInput(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    let order_cap = match order_cap_from_env() {
        Ok(cap) => cap,
        Err(f) => return ExitCode::from(f.report()),
    };
    match dispatch(cli.command, order_cap) {
        Ok(code) => ExitCode::from(code),
        Err(f) => ExitCode::from(f.report()),
    }
}

fn order_cap_from_env() -> Result<usize, Failure> {
    match std::env::var("MTCM_ORDER_CAP") {
        Ok(text) => text.trim().parse::<usize>().map_err(|_| {
            Failure::Usage(format!("MTCM_ORDER_CAP must be a positive integer, got {text:?}"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ORDER_CAP),
        Err(e) => Err(Failure::Usage(format!("MTCM_ORDER_CAP unreadable: {e}"))),
    }
}

fn read_document(path: &PathBuf) -> Result<InputDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(Failure::InvalidInput)
}

fn load(path: &PathBuf, order_cap: usize) -> Result<(InputDocument, LoadedDatum), Failure> {
    let doc = read_document(path)?;
    let loaded = load_datum(&doc, order_cap).map_err(Failure::InvalidInput)?;
    Ok((doc, loaded))
}

fn dispatch(command: Command, order_cap: usize) -> Result<u8, Failure> {
    match command {
        Command::Validate { file } => run_validate(&file, order_cap),
        Command::Mt { file, json } => run_mt(&file, json, order_cap),
        Command::Reflex { file, json } => run_reflex(&file, json, order_cap),
        Command::Check { file, json } => run_check(&file, json, order_cap),
        Command::Enumerate(args) => run_enumerate(args, order_cap),
        Command::Weights { file, m, n, r, classes } => {
            run_weights(&file, m, n, r, classes, order_cap)
        }
    }
}

fn run_validate(file: &PathBuf, order_cap: usize) -> Result<u8, Failure> {
    let doc = read_document(file)?;
    let built = mtcm_core::make_group(&doc.group.to_spec(), order_cap)
        .map_err(|e| Failure::InvalidInput(e.to_string()))?;
    println!("group: {}  (order {})", built.description, built.group.order());
    println!("elements:");
    for (i, label) in built.labels.iter().enumerate() {
        println!("  {i}: {label}");
    }
    println!("identity: {}", built.group.identity());

    let h = built
        .group
        .subgroup_closure(&doc.h)
        .map_err(|e| Failure::InvalidInput(e.to_string()))?;
    println!("H: {:?}  (order {})", h.elements(), h.order());
    println!("c: {}", doc.c);
    let datum = match mtcm_core::validate_cm_datum(built.group.clone(), h, doc.c) {
        Ok(datum) => datum,
        Err(e) => {
            println!("datum: INVALID — {e}");
            return Ok(EXIT_INVALID_INPUT);
        }
    };
    println!("coset reps: {:?}", datum.sigma().reps());
    println!("g: {}", datum.g_dim());
    println!("datum: valid");
    match &doc.phi {
        None => Ok(0),
        Some(phi) => match mtcm_core::validate_cm_type(&datum, phi) {
            Ok(t) => {
                println!("phi: {:?}", t.phi());
                println!("type: valid");
                Ok(0)
            }
            Err(e) => {
                println!("type: INVALID — {e}");
                Ok(EXIT_INVALID_INPUT)
            }
        },
    }
}

fn run_mt(file: &PathBuf, json: bool, order_cap: usize) -> Result<u8, Failure> {
    let (doc, loaded) = load(file, order_cap)?;
    let t = load_type(&doc, &loaded).map_err(Failure::InvalidInput)?;
    let lattice = mt_lattice(&t).map_err(|e| classify(e.into()))?;
    let primitive = t
        .primitive_descent()
        .map_err(|e| classify(e.into()))?
        .is_none();
    let doc = MtDoc::new(
        header(&loaded, &t),
        lattice.rank(),
        lattice.rank() < t.datum().g_dim() + 1,
        primitive,
        lattice.basis().to_vec(),
    );
    print!("{}", if json { to_json(&doc) } else { doc.human() });
    Ok(0)
}

fn run_reflex(file: &PathBuf, json: bool, order_cap: usize) -> Result<u8, Failure> {
    let (doc, loaded) = load(file, order_cap)?;
    let t = load_type(&doc, &loaded).map_err(Failure::InvalidInput)?;
    let reflex = t.reflex_type().map_err(|e| classify(e.into()))?;
    let doc = ReflexDoc::new(
        header(&loaded, &t),
        &reflex.h_e,
        reflex.reflex_degree,
        reflex.phi_e.phi(),
    );
    print!("{}", if json { to_json(&doc) } else { doc.human() });
    Ok(0)
}

fn run_check(file: &PathBuf, json: bool, order_cap: usize) -> Result<u8, Failure> {
    let (doc, loaded) = load(file, order_cap)?;
    let t = load_type(&doc, &loaded).map_err(Failure::InvalidInput)?;
    let report = check_main_theorem(&t).map_err(classify)?;
    let primitive = t
        .primitive_descent()
        .map_err(|e| classify(e.into()))?
        .is_none();
    let ok = report.all_checks_hold();
    let doc = CheckDoc::new(header(&loaded, &t), &report, primitive);
    print!("{}", if json { to_json(&doc) } else { doc.human() });
    Ok(if ok { 0 } else { EXIT_INTERNAL_VIOLATION })
}

fn run_enumerate(args: EnumerateArgs, order_cap: usize) -> Result<u8, Failure> {
    let policy = if args.all_subfields {
        SubfieldPolicy::AllSubgroups
    } else {
        SubfieldPolicy::TrivialOnly
    };
    let records = match (&args.source.file, &args.source.family) {
        (Some(path), None) => {
            let (_, loaded) = load(path, order_cap)?;
            let h_text = loaded
                .datum
                .h()
                .elements()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("+");
            let description = format!(
                "{} H={} c={}",
                loaded.built.description,
                h_text,
                loaded.datum.conjugation()
            );
            let mut records = Vec::new();
            tabulate_datum(&loaded.datum, &description, args.dedupe, &mut records);
            records.sort_by(|a, b| (&a.group, &a.phi).cmp(&(&b.group, &b.phi)));
            records
        }
        (None, Some(name)) => {
            let family = FamilySpec::from_name(name).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown family {name:?}; expected cyclic, abelian-products or dihedral"
                ))
            })?;
            let opts = TabulateOptions {
                max_order: args.max_order,
                policy,
                dedupe: args.dedupe,
                order_cap,
            };
            tabulate_family(&family, &opts).map_err(classify)?
        }
        _ => unreachable!("clap enforces exactly one source"),
    };
    if let Some(path) = &args.csv {
        write_atomic(path, &records_to_csv(&records))
            .map_err(|e| Failure::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {} records to {}", records.len(), path.display());
    } else if let Some(path) = &args.json {
        write_atomic(path, &records_to_json(&records))
            .map_err(|e| Failure::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {} records to {}", records.len(), path.display());
    } else {
        print!("{}", records_to_csv(&records));
    }
    Ok(0)
}

fn run_weights(
    file: &PathBuf,
    m: u32,
    n: u32,
    r: i64,
    classes: bool,
    order_cap: usize,
) -> Result<u8, Failure> {
    let (doc, loaded) = load(file, order_cap)?;
    let t = load_type(&doc, &loaded).map_err(Failure::InvalidInput)?;
    let weights =
        motive_weights(&t, m, n, r, DEFAULT_WEIGHT_CAP).map_err(|e| classify(e.into()))?;
    let class_dims = if classes {
        let hodge = invariant_class_dimension(&t, m, n, r, ClassRoute::Hodge, DEFAULT_WEIGHT_CAP)
            .map_err(classify)?;
        let tate = invariant_class_dimension(&t, m, n, r, ClassRoute::Tate, DEFAULT_WEIGHT_CAP)
            .map_err(classify)?;
        Some((hodge, tate))
    } else {
        None
    };
    print!(
        "{}",
        render::render_weights(&header(&loaded, &t), &weights, class_dims)
    );
    Ok(0)
}
