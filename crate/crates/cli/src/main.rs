//! `krlip`: norms of measures, seminorms of functions and decompositions on
//! finite metric spaces, driven by JSON files.
//!
//! Every run echoes its configuration and emits a result object; errors go
//! to stderr as `{"error": {"code", "detail"}}` with exit code 1 for domain
//! errors and 2 for I/O problems.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use krlip::atomic;
use krlip::besov::{self, BesovParams};
use krlip::json::{DecompositionFile, FieldFile, MeasureFile, SpaceFile, SpaceRef};
use krlip::lipschitz::{self, ScalarField};
use krlip::measure::SignedMeasure;
use krlip::metric::{self, FiniteMetricSpace, MetricMeasureSpace};
use krlip::transport::{self, KRResult};

use krlip_cli::gen::generate_space;
use krlip_cli::report::{to_json_string, write_atomic, Report};

#[derive(Parser)]
#[command(
    name = "krlip",
    version,
    about = "Kantorovich-Rubinstein norms, Lipschitz-Hölder seminorms, atomic decompositions and Besov/Hajłasz seminorms on finite metric spaces"
)]
struct Cli {
    /// Print the JSON file schemas and exit.
    #[arg(long)]
    schema: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a space file against the metric axioms.
    Validate(ValidateArgs),
    /// Generate an example space file.
    Gen(GenArgs),
    /// Kantorovich-Rubinstein norms with dual certificates.
    Kr {
        #[command(subcommand)]
        sub: KrCommand,
    },
    /// Hölder seminorms, small-scale moduli and distance profiles.
    Lip {
        #[command(subcommand)]
        sub: LipCommand,
    },
    /// Atomic decomposition into dipole and Dirac atoms.
    Decompose(DecomposeArgs),
    /// Besov seminorms and the Clarkson inequality.
    Besov {
        #[command(subcommand)]
        sub: BesovCommand,
    },
    /// Hajłasz gradients: certified at p = 1, descent bound otherwise.
    Hajlasz(HajlaszArgs),
    /// Doubling estimates and the lower mass bound fit.
    Doubling(DoublingArgs),
    /// Embedding checks between the function scales.
    Embed {
        #[command(subcommand)]
        sub: EmbedCommand,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout (atomic rename).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; csv only for tabular profiles.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    space: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GenArgs {
    /// grid1d, grid2d, cantor or random-euclidean.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional snowflake exponent applied to the generated distances.
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum KrCommand {
    /// General norm; `--balanced-only` computes the balanced norm instead.
    Norm(KrNormArgs),
}

#[derive(Args)]
struct KrNormArgs {
    #[arg(long)]
    space: Option<PathBuf>,
    /// Measure file; repeat for a batch.
    #[arg(long, required = true)]
    measure: Vec<PathBuf>,
    /// Snowflake the space before computing the norm.
    #[arg(long)]
    alpha: Option<f64>,
    /// Require a balanced measure and use the plan-only norm.
    #[arg(long)]
    balanced_only: bool,
    /// Worker threads for batch items.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum LipCommand {
    Seminorm(LipArgs),
    Norm(LipArgs),
    Modulus(LipModulusArgs),
    Dist(LipDistArgs),
}

#[derive(Args)]
struct LipArgs {
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    alpha: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LipModulusArgs {
    #[command(flatten)]
    base: LipArgs,
    #[arg(long)]
    delta: f64,
}

#[derive(Args)]
struct LipDistArgs {
    #[command(flatten)]
    base: LipArgs,
    /// Strictly decreasing scales, e.g. "1,0.5,0.25".
    #[arg(long)]
    delta_schedule: String,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct DecomposeArgs {
    #[command(subcommand)]
    sub: Option<DecomposeSub>,
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long)]
    measure: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum DecomposeSub {
    /// Re-check a stored decomposition against its measure.
    Verify(DecomposeVerifyArgs),
}

#[derive(Args)]
struct DecomposeVerifyArgs {
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long)]
    measure: PathBuf,
    #[arg(long)]
    decomposition: PathBuf,
    /// Defaults to the alpha stored in the decomposition file.
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum BesovCommand {
    Seminorm(BesovArgs),
    Norm(BesovArgs),
    Clarkson(ClarksonArgs),
}

#[derive(Args)]
struct BesovArgs {
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    p: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ClarksonArgs {
    #[command(flatten)]
    base: BesovArgs,
    /// Second field of the pair.
    #[arg(long)]
    field2: PathBuf,
}

#[derive(Args)]
struct HajlaszArgs {
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    s: f64,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DoublingArgs {
    #[arg(long)]
    space: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum EmbedCommand {
    /// lip-besov, besov-hajlasz, morrey or linfty.
    Check(EmbedArgs),
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    p: f64,
    /// Hölder exponent for the lip-besov check.
    #[arg(long)]
    alpha: Option<f64>,
    /// Constant to test against in the morrey check.
    #[arg(long)]
    c: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

enum CliError {
    Domain(krlip::Error),
    Parse(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> String {
        match self {
            CliError::Domain(e) => e.code().to_string(),
            CliError::Parse(_) => "ParseError".to_string(),
            CliError::Io(_) => "Io".to_string(),
        }
    }

    fn detail(&self) -> String {
        match self {
            CliError::Domain(e) => e.to_string(),
            CliError::Parse(d) | CliError::Io(d) => d.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> Value {
        json!({"error": {"code": self.code(), "detail": self.detail()}})
    }
}

impl From<krlip::Error> for CliError {
    fn from(e: krlip::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!(
                "{}",
                to_json_string(&json!({"error": {"code": "Usage", "detail": e.to_string()}}))
            );
            return ExitCode::from(2);
        }
    };
    if cli.schema {
        println!("{}", schema_text());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!(
            "{}",
            to_json_string(
                &json!({"error": {"code": "Usage", "detail": "missing command; see --help"}})
            )
        );
        return ExitCode::from(2);
    };
    match run(command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", to_json_string(&e.to_json()));
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_space_file(path: &Path) -> CliResult<SpaceFile> {
    parse_json(path, &read_text(path)?)
}

/// Resolves the space: the `--space` flag wins, otherwise the file's inline
/// space or its path (relative to the referring file).
fn resolve_space(
    flag: Option<&PathBuf>,
    file_ref: Option<&SpaceRef>,
    base: &Path,
) -> CliResult<SpaceFile> {
    if let Some(path) = flag {
        return read_space_file(path);
    }
    match file_ref {
        Some(SpaceRef::Inline(sf)) => Ok(sf.clone()),
        Some(SpaceRef::Path(rel)) => {
            let mut path = PathBuf::from(rel);
            if path.is_relative() {
                path = base.join(path);
            }
            read_space_file(&path)
        }
        None => Err(CliError::Domain(krlip::Error::InvalidInput(
            "no space given: pass --space or embed one in the input file".into(),
        ))),
    }
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn load_space_and_measure(
    space_flag: Option<&PathBuf>,
    measure_path: &Path,
) -> CliResult<(FiniteMetricSpace, SignedMeasure, MeasureFile)> {
    let mf: MeasureFile = parse_json(measure_path, &read_text(measure_path)?)?;
    let sf = resolve_space(space_flag, mf.space.as_ref(), &base_dir(measure_path))?;
    let space = sf.to_space()?;
    let measure = mf.to_measure(&space)?;
    Ok((space, measure, mf))
}

fn load_space_and_field(
    space_flag: Option<&PathBuf>,
    field_path: &Path,
) -> CliResult<(FiniteMetricSpace, ScalarField)> {
    let ff: FieldFile = parse_json(field_path, &read_text(field_path)?)?;
    let sf = resolve_space(space_flag, ff.space.as_ref(), &base_dir(field_path))?;
    let space = sf.to_space()?;
    let field = ff.to_field(&space)?;
    Ok((space, field))
}

fn load_measure_space_and_field(
    space_flag: Option<&PathBuf>,
    field_path: &Path,
) -> CliResult<(MetricMeasureSpace, ScalarField)> {
    let ff: FieldFile = parse_json(field_path, &read_text(field_path)?)?;
    let sf = resolve_space(space_flag, ff.space.as_ref(), &base_dir(field_path))?;
    let mm = sf.to_measure_space()?;
    let field = ff.to_field(mm.space())?;
    Ok((mm, field))
}

fn emit(output: &OutputArgs, config: Value, results: Value, started: Instant) -> CliResult<()> {
    require_json(output)?;
    let report = Report::new(config, results, started.elapsed().as_secs_f64() * 1e3);
    let text = to_json_string(&report.to_value());
    match &output.out {
        Some(path) => write_atomic(path, &text).map_err(CliError::from),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn require_json(output: &OutputArgs) -> CliResult<()> {
    if output.format != "json" {
        return Err(CliError::Domain(krlip::Error::InvalidInput(format!(
            "format `{}` is not available for this command; csv is reserved for profile tables",
            output.format
        ))));
    }
    Ok(())
}

fn emit_text(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => write_atomic(path, text).map_err(CliError::from),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn kr_result_json(space: &FiniteMetricSpace, r: &KRResult) -> Value {
    let plan: Vec<Value> = r
        .plan
        .arcs()
        .iter()
        .map(|a| {
            json!({
                "from": space.point_id(a.from),
                "to": space.point_id(a.to),
                "mass": a.mass,
            })
        })
        .collect();
    let residual: serde_json::Map<String, Value> = (0..space.len())
        .filter(|&i| r.residual.mass(i) != 0.0)
        .map(|i| (space.point_id(i).to_string(), json!(r.residual.mass(i))))
        .collect();
    let potential: serde_json::Map<String, Value> = (0..space.len())
        .map(|i| (space.point_id(i).to_string(), json!(r.potential.value(i))))
        .collect();
    json!({
        "primal": r.primal_value,
        "dual": r.dual_value,
        "gap": r.gap,
        "plan": plan,
        "residual": residual,
        "potential": potential,
    })
}

fn run(command: Command) -> CliResult<()> {
    let started = Instant::now();
    match command {
        Command::Validate(args) => {
            let sf = read_space_file(&args.space)?;
            let space = sf.to_space()?;
            let config = json!({"command": "validate", "space": args.space.display().to_string()});
            let results = json!({
                "valid": true,
                "points": space.len(),
                "diam": space.diam(),
            });
            emit(&args.output, config, results, started)
        }
        Command::Gen(args) => {
            require_json(&args.output)?;
            let mm = generate_space(&args.kind, args.n, args.seed, args.alpha)?;
            let mut sf = SpaceFile::from_space(mm.space());
            sf.weight = Some(
                mm.space()
                    .point_ids()
                    .iter()
                    .enumerate()
                    .map(|(i, id)| (id.clone(), mm.weight(i)))
                    .collect(),
            );
            let value = serde_json::to_value(&sf).map_err(|e| CliError::Parse(e.to_string()))?;
            emit_text(&args.output, &to_json_string(&value))
        }
        Command::Kr {
            sub: KrCommand::Norm(args),
        } => run_kr_norm(args, started),
        Command::Lip { sub } => run_lip(sub, started),
        Command::Decompose(args) => run_decompose(args, started),
        Command::Besov { sub } => run_besov(sub, started),
        Command::Hajlasz(args) => {
            let (mm, field) = load_measure_space_and_field(args.space.as_ref(), &args.field)?;
            let result = if args.p == 1.0 {
                besov::hajlasz_seminorm_p1(&mm, &field, args.s)?
            } else {
                besov::hajlasz_upper_bound(&mm, &field, args.s, args.p)?
            };
            let gradient: serde_json::Map<String, Value> = (0..mm.space().len())
                .map(|i| {
                    (
                        mm.space().point_id(i).to_string(),
                        json!(result.gradient.value(i)),
                    )
                })
                .collect();
            let config = json!({
                "command": "hajlasz",
                "field": args.field.display().to_string(),
                "s": args.s,
                "p": args.p,
            });
            let results = json!({
                "seminorm": result.seminorm,
                "certified": result.certified,
                "gradient": gradient,
            });
            emit(&args.output, config, results, started)
        }
        Command::Doubling(args) => {
            let sf = read_space_file(&args.space)?;
            let mm = sf.to_measure_space()?;
            let cover = metric::estimate_doubling_constant(mm.space())?;
            let volume = metric::estimate_measure_doubling_constant(&mm)?;
            let mass_bound = if mm.space().len() >= 2 {
                let (c, q) = metric::fit_lower_mass_bound(&mm)?;
                json!({"c": c, "q": q})
            } else {
                Value::Null
            };
            let config = json!({"command": "doubling", "space": args.space.display().to_string()});
            let results = json!({
                "cover_constant": cover,
                "measure_constant": volume,
                "lower_mass_bound": mass_bound,
            });
            emit(&args.output, config, results, started)
        }
        Command::Embed {
            sub: EmbedCommand::Check(args),
        } => run_embed(args, started),
    }
}

fn run_kr_norm(args: KrNormArgs, started: Instant) -> CliResult<()> {
    let jobs = args.jobs.max(1);
    let items: Vec<CliResult<(FiniteMetricSpace, SignedMeasure)>> = args
        .measure
        .iter()
        .map(|m| {
            let (mut space, measure, _) = load_space_and_measure(args.space.as_ref(), m)?;
            if let Some(alpha) = args.alpha {
                space = space.snowflake(alpha)?;
            }
            Ok((space, measure))
        })
        .collect();

    let solve = |item: &CliResult<(FiniteMetricSpace, SignedMeasure)>| -> Value {
        match item {
            Err(e) => e.to_json(),
            Ok((space, measure)) => {
                let solved = if args.balanced_only {
                    transport::kr0_norm(space, measure)
                } else {
                    transport::kr_norm(space, measure)
                };
                match solved {
                    Ok(r) => kr_result_json(space, &r),
                    Err(e) => CliError::from(e).to_json(),
                }
            }
        }
    };

    let solved: Vec<Value> = if jobs == 1 || items.len() <= 1 {
        items.iter().map(solve).collect()
    } else {
        // batch items are independent; split round-robin over the workers
        let mut out: Vec<Option<Value>> = vec![None; items.len()];
        std::thread::scope(|scope| {
            let chunks: Vec<Vec<usize>> = (0..jobs)
                .map(|t| (t..items.len()).step_by(jobs).collect())
                .collect();
            let mut handles = Vec::new();
            for chunk in chunks {
                let items = &items;
                handles.push(scope.spawn(move || {
                    chunk
                        .into_iter()
                        .map(|i| (i, solve(&items[i])))
                        .collect::<Vec<_>>()
                }));
            }
            for h in handles {
                for (i, v) in h.join().expect("worker panicked") {
                    out[i] = Some(v);
                }
            }
        });
        out.into_iter()
            .map(|v| v.expect("all items solved"))
            .collect()
    };

    let config = json!({
        "command": "kr norm",
        "measures": args.measure.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "alpha": args.alpha,
        "balanced_only": args.balanced_only,
        "jobs": jobs,
    });
    let results = if solved.len() == 1 {
        solved.into_iter().next().unwrap()
    } else {
        json!({ "items": solved })
    };
    emit(&args.output, config, results, started)
}

fn parse_schedule(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Parse(format!("delta schedule entry `{t}`: {e}")))
        })
        .collect()
}

fn run_lip(sub: LipCommand, started: Instant) -> CliResult<()> {
    match sub {
        LipCommand::Seminorm(args) => {
            let (space, field) = load_space_and_field(args.space.as_ref(), &args.field)?;
            let value = lipschitz::holder_seminorm(&space, &field, args.alpha)?;
            let config = lip_config("lip seminorm", &args);
            emit(&args.output, config, json!({"value": value}), started)
        }
        LipCommand::Norm(args) => {
            let (space, field) = load_space_and_field(args.space.as_ref(), &args.field)?;
            let value = lipschitz::holder_norm(&space, &field, args.alpha)?;
            let config = lip_config("lip norm", &args);
            emit(&args.output, config, json!({"value": value}), started)
        }
        LipCommand::Modulus(args) => {
            let (space, field) = load_space_and_field(args.base.space.as_ref(), &args.base.field)?;
            let value = lipschitz::lip_modulus(&space, &field, args.base.alpha, args.delta)?;
            let mut config = lip_config("lip modulus", &args.base);
            config["delta"] = json!(args.delta);
            emit(&args.base.output, config, json!({"value": value}), started)
        }
        LipCommand::Dist(args) => {
            let (space, field) = load_space_and_field(args.base.space.as_ref(), &args.base.field)?;
            let schedule = parse_schedule(&args.delta_schedule)?;
            let profile =
                lipschitz::dist_to_little_lip(&space, &field, args.base.alpha, &schedule)?;
            if args.base.output.format == "csv" {
                let mut text = String::from("delta,omega\n");
                for (d, w) in profile.deltas.iter().zip(&profile.omega) {
                    text.push_str(&format!("{d:.16e},{w:.16e}\n"));
                }
                return emit_text(&args.base.output, text.trim_end());
            }
            let mut config = lip_config("lip dist", &args.base);
            config["delta_schedule"] = json!(args.delta_schedule);
            let results = json!({
                "deltas": profile.deltas,
                "omega": profile.omega,
                "estimate": profile.estimate(),
            });
            emit(&args.base.output, config, results, started)
        }
    }
}

fn lip_config(command: &str, args: &LipArgs) -> Value {
    json!({
        "command": command,
        "field": args.field.display().to_string(),
        "alpha": args.alpha,
    })
}

fn run_decompose(args: DecomposeArgs, started: Instant) -> CliResult<()> {
    match args.sub {
        Some(DecomposeSub::Verify(v)) => {
            let (space, measure, _) = load_space_and_measure(v.space.as_ref(), &v.measure)?;
            let df: DecompositionFile =
                parse_json(&v.decomposition, &read_text(&v.decomposition)?)?;
            let alpha = v.alpha.unwrap_or(df.alpha);
            let dec = df.to_decomposition(&space)?;
            let rep = atomic::verify_bounds(&space, &measure, &dec, alpha)?;
            let config = json!({
                "command": "decompose verify",
                "measure": v.measure.display().to_string(),
                "decomposition": v.decomposition.display().to_string(),
                "alpha": alpha,
            });
            let results = json!({
                "gamma_sum": rep.gamma_sum,
                "mu_norm": rep.mu_norm,
                "realized_c": rep.realized_c,
                "atom_norms": rep.atom_norms,
                "reconstruction_error": rep.reconstruction_error,
            });
            emit(&v.output, config, results, started)
        }
        None => {
            require_json(&args.output)?;
            let (Some(measure_path), Some(alpha)) = (args.measure.as_ref(), args.alpha) else {
                return Err(CliError::Domain(krlip::Error::InvalidInput(
                    "decompose needs --measure and --alpha".into(),
                )));
            };
            let (space, measure, _) = load_space_and_measure(args.space.as_ref(), measure_path)?;
            let dec = atomic::decompose(&space, &measure, alpha)?;
            let df = DecompositionFile::from_decomposition(&space, &dec);
            let value = serde_json::to_value(&df).map_err(|e| CliError::Parse(e.to_string()))?;
            match &args.output.out {
                Some(path) => {
                    write_atomic(path, &to_json_string(&value))?;
                    let config = json!({
                        "command": "decompose",
                        "measure": measure_path.display().to_string(),
                        "alpha": alpha,
                        "out": path.display().to_string(),
                    });
                    let results = json!({
                        "atoms": dec.atoms.len(),
                        "gamma_sum": dec.gamma_sum(),
                    });
                    let report =
                        Report::new(config, results, started.elapsed().as_secs_f64() * 1e3);
                    println!("{}", to_json_string(&report.to_value()));
                    Ok(())
                }
                None => {
                    println!("{}", to_json_string(&value));
                    Ok(())
                }
            }
        }
    }
}

fn run_besov(sub: BesovCommand, started: Instant) -> CliResult<()> {
    match sub {
        BesovCommand::Seminorm(args) => {
            let (mm, field) = load_measure_space_and_field(args.space.as_ref(), &args.field)?;
            let params = BesovParams::new(args.s, args.p)?;
            let value = besov::besov_seminorm(&mm, &field, params)?;
            let config = besov_config("besov seminorm", &args);
            emit(&args.output, config, json!({"value": value}), started)
        }
        BesovCommand::Norm(args) => {
            let (mm, field) = load_measure_space_and_field(args.space.as_ref(), &args.field)?;
            let params = BesovParams::new(args.s, args.p)?;
            let value = besov::besov_norm(&mm, &field, params)?;
            let config = besov_config("besov norm", &args);
            emit(&args.output, config, json!({"value": value}), started)
        }
        BesovCommand::Clarkson(args) => {
            let (mm, field) =
                load_measure_space_and_field(args.base.space.as_ref(), &args.base.field)?;
            let ff2: FieldFile = parse_json(&args.field2, &read_text(&args.field2)?)?;
            let field2 = ff2.to_field(mm.space())?;
            let params = BesovParams::new(args.base.s, args.base.p)?;
            let rep = besov::clarkson_check(&mm, &field, &field2, params)?;
            let mut config = besov_config("besov clarkson", &args.base);
            config["field2"] = json!(args.field2.display().to_string());
            let results = json!({"lhs": rep.lhs, "rhs": rep.rhs, "holds": rep.holds});
            emit(&args.base.output, config, results, started)
        }
    }
}

fn besov_config(command: &str, args: &BesovArgs) -> Value {
    json!({
        "command": command,
        "field": args.field.display().to_string(),
        "s": args.s,
        "p": args.p,
    })
}

fn run_embed(args: EmbedArgs, started: Instant) -> CliResult<()> {
    let (mm, field) = load_measure_space_and_field(args.space.as_ref(), &args.field)?;
    let results = match args.kind.as_str() {
        "lip-besov" => {
            let alpha = args.alpha.ok_or_else(|| {
                CliError::Domain(krlip::Error::InvalidInput("lip-besov needs --alpha".into()))
            })?;
            let params = BesovParams::new(args.s, args.p)?;
            let rep = besov::embedding_ratio_lip_besov(&mm, &field, alpha, params)?;
            json!({
                "besov_seminorm": rep.besov_seminorm,
                "holder_norm": rep.holder_norm,
                "ratio": rep.ratio,
                "ceiling": rep.ceiling,
                "holds": rep.holds,
            })
        }
        "besov-hajlasz" => {
            let rep = besov::besov_to_hajlasz_check(&mm, &field, args.s, args.p)?;
            json!({
                "hajlasz_bound": rep.hajlasz_bound,
                "besov_seminorm": rep.besov_seminorm,
                "ratio": rep.ratio,
            })
        }
        "morrey" => {
            let (c_fit, q) = metric::fit_lower_mass_bound(&mm)?;
            let grad = besov::hajlasz_upper_bound(&mm, &field, args.s, args.p)?;
            let c_bound = args.c.unwrap_or(f64::INFINITY);
            let rep = besov::morrey_check(&mm, &field, &grad, args.s, args.p, c_bound, q)?;
            json!({
                "c_star": rep.c_star,
                "c": if rep.c.is_finite() { json!(rep.c) } else { Value::Null },
                "q": rep.q,
                "mass_bound_c": c_fit,
                "gradient_lp": rep.gradient_lp,
                "holds": rep.holds,
            })
        }
        "linfty" => {
            let (_, q) = metric::fit_lower_mass_bound(&mm)?;
            let rep = besov::linfty_embedding_check(&mm, &field, args.s, args.p, q)?;
            json!({
                "sup_norm": rep.sup_norm,
                "lp_norm": rep.lp_norm,
                "gradient_bound": rep.gradient_bound,
                "ratio": rep.ratio,
                "q": q,
            })
        }
        other => {
            return Err(CliError::Domain(krlip::Error::InvalidInput(format!(
                "unknown embedding kind `{other}`"
            ))))
        }
    };
    let config = json!({
        "command": "embed check",
        "kind": args.kind,
        "field": args.field.display().to_string(),
        "s": args.s,
        "p": args.p,
        "alpha": args.alpha,
    });
    emit(&args.output, config, results, started)
}

fn schema_text() -> String {
    let schema = json!({
        "space": {
            "description": "finite metric space",
            "fields": {
                "points": "array of unique string ids",
                "dist": "square matrix of nonnegative numbers (optional when coords given)",
                "coords": "array of coordinate arrays inducing Euclidean distances (optional)",
                "metric": "only \"euclidean\" is supported, with coords",
                "alpha": "optional snowflake exponent in (0, 1]",
                "weight": "optional map point id -> positive weight; uniform when omitted",
            },
        },
        "measure": {
            "description": "signed measure",
            "fields": {
                "space": "path string or inline space object (optional when --space is passed)",
                "mass": "map point id -> signed mass; omitted points are 0",
            },
        },
        "field": {
            "description": "scalar field",
            "fields": {
                "space": "path string or inline space object (optional when --space is passed)",
                "value": "map point id -> value; omitted points are 0",
            },
        },
        "decomposition": {
            "description": "weighted atom list",
            "fields": {
                "alpha": "snowflake exponent in (0, 1)",
                "atoms": "array of {gamma, kind: \"dipole\", x, y} or {gamma, kind: \"dirac\", z, sign}",
            },
        },
        "report": {
            "description": "envelope for every command output",
            "fields": {
                "version": "tool version",
                "config": "echo of the parsed command configuration",
                "results": "command-specific results object",
                "wall_time_ms": "elapsed wall time in milliseconds",
            },
        },
    });
    to_json_string(&schema)
}
