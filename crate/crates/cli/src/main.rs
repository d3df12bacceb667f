use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sdmod_core::canonical::adversary::{adversary_demo, full_budget_strategy, limited_suite};
use sdmod_core::io::{self, FileForm};
use sdmod_core::setfn::DEFAULT_SIZE_LIMIT;
use sdmod_core::value::parse_rational;
use sdmod_core::zoo::GeneratorSpec;
use sdmod_core::{
    build_parity_system, certify, counted, inequality_graph, inseparable_decomposition,
    lovasz_extension, sd_transform, strict_canonical_anchored, verify_canonical, Error,
    FunctionClass, GroundSet, Rational, SetFunction, Subset,
};

#[derive(Parser)]
#[command(
    name = "sdmod",
    version,
    about = "Symmetric-difference transformations of submodular set functions"
)]
struct Cli {
    /// Largest accepted ground set.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_LIMIT)]
    max_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Submodular,
    Strict,
    Modular,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Dense,
    Sparse,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a function class on every 2-face.
    Check {
        #[arg(long, value_enum)]
        kind: Kind,
        file: PathBuf,
    },
    /// Write g = f∘σ_S.
    Transform {
        /// Comma-joined element names; "" is the empty set.
        #[arg(long = "set", allow_hyphen_values = true)]
        set: String,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Inequality graph and its components.
    Graph { file: PathBuf },
    /// Inseparable decomposition of a submodular function.
    Decompose { file: PathBuf },
    /// Solve for every T with g∘σ_T submodular.
    Canonical { file: PathBuf },
    /// Linear-query canonical set for transforms of strictly submodular functions.
    StrictCanonical {
        file: PathBuf,
        /// Replay the full 2-face scan on g∘σ_T.
        #[arg(long)]
        verify: bool,
        /// Report oracle-call counts.
        #[arg(long)]
        trace: bool,
        /// Element kept outside T.
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Evaluate the Lovász extension.
    Lovasz {
        file: PathBuf,
        /// Comma-joined coordinates in ground-set order.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Generate a fixture file.
    Gen(GenArgs),
    /// Play query strategies against the cardinality adversary.
    AdversaryDemo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    NotClique,
    PartitionDistance,
    PartMin,
    MinDip,
    Modular,
    QuadraticStrict,
    BlockQuadratic,
    Cut,
    Figure1Like,
    NoCanonical,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Ground set of size n named 1..n.
    #[arg(long, conflicts_with = "names")]
    n: Option<usize>,
    /// Comma-joined element names.
    #[arg(long)]
    names: Option<String>,
    /// Partition as parts separated by ';', e.g. "1,2;3".
    #[arg(long)]
    parts: Option<String>,
    /// Subset for part-min and min-dip.
    #[arg(long = "set", allow_hyphen_values = true)]
    set: Option<String>,
    /// Comma-joined modular weights.
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    offset: String,
    /// Weighted edges "u-v:w", comma-joined.
    #[arg(long)]
    edges: Option<String>,
    #[arg(long, value_enum, default_value = "dense")]
    form: Form,
    #[arg(short, long)]
    output: PathBuf,
}

enum Status {
    Ok,
    No,
}

fn load(path: &Path, limit: usize) -> Result<(SetFunction, FileForm), Error> {
    io::load_function(path, limit)
}

fn emit(value: &Value) {
    print!("{}", io::to_text(value));
}

fn ground_for(args: &GenArgs, limit: usize) -> Result<GroundSet, Error> {
    match (&args.n, &args.names) {
        (Some(n), None) => {
            if *n > limit {
                return Err(Error::TooLarge { n: *n, limit });
            }
            GroundSet::numbered(*n)
        }
        (None, Some(names)) => GroundSet::with_limit(names.split(','), limit),
        _ => Err(Error::Domain("gen needs --n or --names".into())),
    }
}

fn need<'a>(opt: &'a Option<String>, flag: &str) -> Result<&'a str, Error> {
    opt.as_deref()
        .ok_or_else(|| Error::Domain(format!("this generator needs {flag}")))
}

fn parse_parts(ground: &GroundSet, text: &str) -> Result<Vec<Subset>, Error> {
    text.split(';').map(|p| ground.parse_subset(p)).collect()
}

fn parse_list(text: &str) -> Result<Vec<Rational>, Error> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|v| parse_rational(v.trim())).collect()
}

fn parse_edges(ground: &GroundSet, text: &str) -> Result<Vec<(usize, usize, Rational)>, Error> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|edge| {
            let (ends, w) = edge.split_once(':').unwrap_or((edge, "1"));
            let (u, v) = ends.split_once('-').ok_or_else(|| {
                Error::Format(format!("edge \"{edge}\" is not of the form u-v:w"))
            })?;
            Ok((ground.position(u)?, ground.position(v)?, parse_rational(w)?))
        })
        .collect()
}

fn generator_spec(args: &GenArgs, limit: usize) -> Result<GeneratorSpec, Error> {
    Ok(match args.kind {
        GenKind::NotClique => GeneratorSpec::NotClique,
        GenKind::Figure1Like => GeneratorSpec::Figure1Like,
        GenKind::NoCanonical => GeneratorSpec::NoCanonical,
        kind => {
            let ground = ground_for(args, limit)?;
            match kind {
                GenKind::PartitionDistance => {
                    let parts = parse_parts(&ground, need(&args.parts, "--parts")?)?;
                    GeneratorSpec::PartitionDistance { ground, parts }
                }
                GenKind::BlockQuadratic => {
                    let parts = parse_parts(&ground, need(&args.parts, "--parts")?)?;
                    GeneratorSpec::BlockQuadratic { ground, parts }
                }
                GenKind::PartMin => {
                    let dip = ground.parse_subset(need(&args.set, "--set")?)?;
                    GeneratorSpec::PartMin { ground, dip }
                }
                GenKind::MinDip => {
                    let dip = ground.parse_subset(need(&args.set, "--set")?)?;
                    GeneratorSpec::MinDip { ground, dip }
                }
                GenKind::Modular => {
                    let weights = parse_list(need(&args.weights, "--weights")?)?;
                    let offset = parse_rational(&args.offset)?;
                    GeneratorSpec::Modular {
                        ground,
                        weights,
                        offset,
                    }
                }
                GenKind::QuadraticStrict => GeneratorSpec::QuadraticStrict { ground },
                GenKind::Cut => {
                    let edges = parse_edges(&ground, args.edges.as_deref().unwrap_or(""))?;
                    GeneratorSpec::Cut { ground, edges }
                }
                GenKind::NotClique | GenKind::Figure1Like | GenKind::NoCanonical => unreachable!(),
            }
        }
    })
}

fn run(cli: Cli) -> Result<Status, Error> {
    let limit = cli.max_n;
    match cli.command {
        Command::Check { kind, file } => {
            let (f, _) = load(&file, limit)?;
            let class = match kind {
                Kind::Submodular => FunctionClass::Submodular,
                Kind::Strict => FunctionClass::StrictlySubmodular,
                Kind::Modular => FunctionClass::Modular,
            };
            let cert = certify(&f, class);
            emit(&io::check_report(f.ground(), &cert));
            Ok(if cert.is_yes() {
                Status::Ok
            } else {
                Status::No
            })
        }
        Command::Transform { set, file, output } => {
            let (f, form) = load(&file, limit)?;
            let s = f.ground().parse_subset(&set)?;
            let g = if s.is_empty() { f } else { sd_transform(&f, s) };
            io::save_function(&output, &g, form)?;
            emit(
                &json!({ "set": io::subset_json(g.ground(), s), "output": output.display().to_string() }),
            );
            Ok(Status::Ok)
        }
        Command::Graph { file } => {
            let (f, _) = load(&file, limit)?;
            emit(&io::graph_json(&inequality_graph(&f)));
            Ok(Status::Ok)
        }
        Command::Decompose { file } => {
            let (f, _) = load(&file, limit)?;
            let dec = inseparable_decomposition(&f)?;
            emit(&io::decomposition_report(f.ground(), &dec));
            Ok(Status::Ok)
        }
        Command::Canonical { file } => {
            let (g, _) = load(&file, limit)?;
            let system = build_parity_system(&g);
            emit(&io::solver_report(&system));
            Ok(if system.is_feasible() {
                Status::Ok
            } else {
                Status::No
            })
        }
        Command::StrictCanonical {
            file,
            verify,
            trace,
            anchor,
        } => {
            let (g, _) = load(&file, limit)?;
            let anchor = match anchor {
                Some(name) => g.ground().position(&name)?,
                None => 0,
            };
            let oracle = counted(&g);
            let t = strict_canonical_anchored(&oracle, anchor)?;
            let queried = oracle.queried();
            let trace = trace.then(|| {
                (
                    oracle.distinct_queries(),
                    oracle.total_calls(),
                    queried.as_slice(),
                )
            });
            let verified = verify.then(|| verify_canonical(&g, t));
            emit(&io::strict_report(g.ground(), t, anchor, trace, verified));
            Ok(if verified == Some(false) {
                Status::No
            } else {
                Status::Ok
            })
        }
        Command::Lovasz { file, point } => {
            let (f, _) = load(&file, limit)?;
            let x = parse_list(&point)?;
            let value = lovasz_extension(&f, &x)?;
            emit(&io::lovasz_report(&x, &value));
            Ok(Status::Ok)
        }
        Command::Gen(args) => {
            let f = generator_spec(&args, limit)?.generate()?;
            let form = match args.form {
                Form::Dense => FileForm::Dense,
                Form::Sparse => FileForm::Sparse,
            };
            io::save_function(&args.output, &f, form)?;
            emit(
                &json!({ "generated": f.provenance(), "n": f.n(), "output": args.output.display().to_string() }),
            );
            Ok(Status::Ok)
        }
        Command::AdversaryDemo { n, budget } => {
            let mut records = Vec::new();
            if budget + 2 >= 1usize << n {
                let mut full = full_budget_strategy(n);
                records.push(adversary_demo(n, budget, &mut full)?);
            } else {
                for mut strategy in limited_suite(n) {
                    records.push(adversary_demo(n, budget, strategy.as_mut())?);
                }
            }
            emit(&io::adversary_summary(&records)?);
            Ok(Status::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::No) => ExitCode::from(2),
        Err(e) => {
            eprintln!("sdmod: {e}");
            ExitCode::from(1)
        }
    }
}
