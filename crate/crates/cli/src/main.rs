use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use orthapart::compat::CompatError;
use orthapart::experiments::{self, Certificate, ExperimentError};
use orthapart::io::{FamilyJson, FrameJson, MemberSetJson};
use orthapart::linalg::{parse_rational, rational, Rational, Subspace};
use orthapart::random;
use orthapart::rigidity::{self, Bystanders, Relation};
use orthapart::{Apartment, ClassDescriptor, SpectralOperator};

/// Exact experiments on orthogonal apartments of conjugacy classes of
/// finite-rank self-adjoint operators.
#[derive(Parser, Debug)]
#[command(name = "orthapart", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the orthocomplementary-count lower bound on every member pair.
    VerifyLemma3(LemmaArgs),
    /// Check that the count decides orthogonality on every member pair.
    VerifyLemma4(LemmaArgs),
    /// Tabulate c(x) for 2k < n < 4k and search for non-orthogonal pairs at k².
    ScanBoundary(ScanArgs),
    /// Build a swap counterexample and certify it.
    Counterexample(CounterArgs),
    /// Refine a compatible family of subspaces to a frame.
    Refine(RefineArgs),
    /// Decide whether a set of apartment members is orthogonally inexact.
    Inexact(InexactArgs),
}

#[derive(Args, Debug, Clone)]
struct ClassArgs {
    /// Ambient dimension.
    #[arg(long)]
    n: usize,
    /// Comma-separated nonzero eigenvalues in p/q form (default 1,2,..).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alphas: Vec<String>,
    /// Comma-separated eigenspace dimensions.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Write the JSON report here ("-" for standard output, which replaces
    /// the summary).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[command(flatten)]
    class: ClassArgs,
    /// Frame file; the standard frame is used otherwise.
    #[arg(long)]
    frame: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    k: usize,
    /// A dimension `10` or an inclusive range `9..11`; defaults to every n
    /// with 2k < n < 4k.
    #[arg(long)]
    n: Option<String>,
    /// Restrict the pair search to one class; all compositions of k
    /// otherwise.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Example {
    Orth,
    Comm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BystanderChoice {
    /// All members of the apartment spanned by the swapped pair.
    Apartment,
    /// One operator filling the slots with e₁, e₃, e₄, ...
    Single,
    None,
}

#[derive(Args, Debug)]
struct CounterArgs {
    #[arg(value_enum)]
    name: Example,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Eigenvalues; `comm` takes exactly two (α, β).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,2")]
    alphas: Vec<String>,
    /// Eigenspace dimensions for `orth` (default 1,1); `comm` takes one
    /// value, the common dimension of X and Y (default 1).
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long, value_enum, default_value_t = BystanderChoice::Apartment)]
    bystanders: BystanderChoice,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct RefineArgs {
    /// Family file; without it a random compatible family is generated.
    #[arg(long, conflicts_with = "seed")]
    family: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Ambient dimension of the random family.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Number of subspaces in the random family.
    #[arg(long, default_value_t = 3)]
    size: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct InexactArgs {
    /// Member set file.
    #[arg(long)]
    members: PathBuf,
    #[arg(long)]
    frame: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

/// Everything a run depends on, after parsing and validation.
#[derive(Debug)]
struct RunConfig {
    command: &'static str,
    class: Option<Arc<ClassDescriptor>>,
    ns: Vec<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

impl RunConfig {
    fn header(&self) -> String {
        match &self.class {
            Some(c) => format!("{} [class {c}]", self.command),
            None => self.command.to_string(),
        }
    }
}

/// What the run found: `Clean` maps to exit code 0, `Violations` to 1.
enum Verdict {
    Clean,
    Violations,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Clean) => ExitCode::SUCCESS,
        Ok(Verdict::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::VerifyLemma3(args) => lemma(args, "verify-lemma3"),
        Command::VerifyLemma4(args) => lemma(args, "verify-lemma4"),
        Command::ScanBoundary(args) => scan(args),
        Command::Counterexample(args) => counterexample(args),
        Command::Refine(args) => refine(args),
        Command::Inexact(args) => inexact(args),
    }
}

fn parse_alphas(texts: &[String], m: usize) -> Result<Vec<Rational>> {
    if texts.is_empty() {
        return Ok((1..=m as i64).map(|a| rational(a, 1)).collect());
    }
    texts
        .iter()
        .map(|t| parse_rational(t).with_context(|| format!("bad eigenvalue {t:?}")))
        .collect()
}

fn parse_class(args: &ClassArgs) -> Result<Arc<ClassDescriptor>> {
    let alphas = parse_alphas(&args.alphas, args.dims.len())?;
    Ok(Arc::new(ClassDescriptor::new(args.n, alphas, args.dims.clone())?))
}

fn parse_range(text: &str) -> Result<Vec<usize>> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse()?, hi.trim().parse()?),
        None => {
            let n = text.trim().parse()?;
            (n, n)
        }
    };
    Ok((lo..=hi).collect())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn apartment(class: Arc<ClassDescriptor>, frame: Option<&PathBuf>) -> Result<Apartment> {
    match frame {
        None => Ok(Apartment::standard(class)),
        Some(path) => {
            let frame = read_json::<FrameJson>(path)?.to_frame()?;
            Ok(Apartment::new(frame, class)?)
        }
    }
}

/// Writes the report and prints the summary unless the report itself goes
/// to standard output.
fn emit<T: Serialize>(config: &RunConfig, report: &T, summary: &str) -> Result<()> {
    let json = serde_json::to_string_pretty(report)? + "\n";
    match &config.out {
        Some(p) if p.as_os_str() == "-" => print!("{json}"),
        Some(p) => {
            fs::write(p, json).with_context(|| format!("writing {}", p.display()))?;
            println!("{summary}");
        }
        None => println!("{summary}"),
    }
    Ok(())
}

fn verdict(clean: bool) -> Verdict {
    if clean {
        Verdict::Clean
    } else {
        Verdict::Violations
    }
}

fn lemma(args: LemmaArgs, command: &'static str) -> Result<Verdict> {
    let class = parse_class(&args.class)?;
    let config = RunConfig {
        command,
        class: Some(class.clone()),
        ns: vec![args.class.n],
        seed: None,
        out: args.output.out,
    };
    let ap = apartment(class.clone(), args.frame.as_ref())?;
    if config.command == "verify-lemma3" {
        let report = experiments::verify_lemma3(&ap)?;
        let summary = format!(
            "{}: n={}: {} members, {} pairs, {} orthogonal, counts {:?}, {} violations",
            config.header(),
            report.n,
            report.members,
            report.pairs_checked,
            report.orthogonal_pairs,
            report.orthogonal_counts,
            report.violations.len()
        );
        emit(&config, &report, &summary)?;
        Ok(verdict(report.violations.is_empty()))
    } else {
        let report = experiments::verify_lemma4(&ap)?;
        let summary = format!(
            "{}: n={}: {} members, {} pairs, {} orthogonal, {} disagreements",
            config.header(),
            report.n,
            report.members,
            report.pairs_checked,
            report.orthogonal_pairs,
            report.violations.len()
        );
        emit(&config, &report, &summary)?;
        Ok(verdict(report.violations.is_empty()))
    }
}

fn scan(args: ScanArgs) -> Result<Verdict> {
    let k = args.k;
    let ns = match &args.n {
        Some(text) => parse_range(text)?,
        None => (2 * k + 1..4 * k).collect(),
    };
    let config = RunConfig {
        command: "scan-boundary",
        class: None,
        ns,
        seed: None,
        out: args.output.out,
    };
    let dims_list = if args.dims.is_empty() {
        experiments::compositions(k)
    } else {
        vec![args.dims]
    };
    let report = experiments::scan_boundary(k, config.ns.iter().copied(), &dims_list)?;
    let mut summary = format!("{}: k={k}", config.command);
    for row in &report.rows {
        summary.push_str(&format!("\n  n={}: c(0)={}", row.n, row.c0));
        match (&row.m, &row.cm) {
            (Some(m), Some(cm)) => {
                let found: u64 = row.scans.iter().map(|s| s.non_orthogonal_at_k_squared).sum();
                summary.push_str(&format!(", c({m})={cm}, non-orthogonal pairs at k²: {found}"));
            }
            _ => summary.push_str(", (4k-n)/2 not integral"),
        }
    }
    emit(&config, &report, &summary)?;
    Ok(Verdict::Clean)
}

fn counterexample(args: CounterArgs) -> Result<Verdict> {
    let n = args.n;
    let dims = match (args.dims.is_empty(), args.name) {
        (false, _) => args.dims.clone(),
        (true, Example::Orth) => vec![1, 1],
        (true, Example::Comm) => vec![1],
    };
    let alphas = parse_alphas(&args.alphas, dims.len())?;
    let (class, relation, name) = match args.name {
        Example::Orth => (
            Arc::new(ClassDescriptor::new(n, alphas, dims)?),
            Relation::Orthogonal,
            "orth",
        ),
        Example::Comm => {
            let [d] = dims[..] else {
                bail!("comm takes a single --dims value");
            };
            if alphas.len() != 2 {
                bail!("comm takes exactly two --alphas");
            }
            (Arc::new(ClassDescriptor::new(n, alphas, vec![d, d])?), Relation::Commute, "comm")
        }
    };
    let config = RunConfig {
        command: "counterexample",
        class: Some(class.clone()),
        ns: vec![n],
        seed: None,
        out: args.output.out,
    };
    let bystanders = match args.bystanders {
        BystanderChoice::Apartment => Bystanders::Apartment,
        BystanderChoice::None => Bystanders::None,
        BystanderChoice::Single => Bystanders::Explicit(vec![single_bystander(&class)?]),
    };
    let k = class.rank();
    let example = match args.name {
        Example::Orth => {
            let x = Subspace::coordinate(n, &(0..k).collect::<Vec<_>>());
            rigidity::example_orth_swap(class.clone(), &x, bystanders)?
        }
        Example::Comm => {
            let d = class.dims()[0];
            let x = Subspace::coordinate(n, &(0..d).collect::<Vec<_>>());
            let y = Subspace::coordinate(n, &(d..2 * d).collect::<Vec<_>>());
            let [alpha, beta] = [class.alphas()[0].clone(), class.alphas()[1].clone()];
            rigidity::example_comm_swap(alpha, beta, d, &x, &y, bystanders)?
        }
    };
    let t = &example.transformation;
    let family: Vec<Subspace> = example.a().eigenspaces().iter().chain(example.b().eigenspaces()).cloned().collect();
    let ap = Apartment::new(orthapart::refine_to_frame(n, &family)?, class.clone())?;
    let cert = Certificate::new(name, t, [example.a, example.b], relation);
    let cert = match cert.clone().with_frame_permutation(t, &ap) {
        Ok(c) => c,
        // some bystander lies outside the apartment; no permutation to report
        Err(ExperimentError::Rigidity(_)) => cert,
        Err(e) => return Err(e.into()),
    };
    let summary = format!(
        "{}: {name} swap, domain of {} operators\n  preserves commute: {}, orthogonal: {}\n  trace-pairing witness: {}\n  frame permutation: {}",
        config.header(),
        cert.domain_size,
        cert.preserves.commute,
        cert.preserves.orthogonal,
        match &cert.witness {
            Some(w) => format!("tr(A{} A{}) = {} but the images give {}", w.s, w.t, w.lhs, w.rhs),
            None => "none".into(),
        },
        match &cert.frame_permutation {
            Some(p) => format!("{p:?}"),
            None => "none".into(),
        }
    );
    emit(&config, &cert, &summary)?;
    Ok(verdict(cert.holds()))
}

/// The class member that puts `e₁` in the first slot and `e₃, e₄, ...` in
/// the rest, in order.
fn single_bystander(class: &Arc<ClassDescriptor>) -> Result<SpectralOperator> {
    let (n, k) = (class.n(), class.rank());
    if n < k + 1 {
        bail!("single bystander needs n > k");
    }
    let mut lines = std::iter::once(0).chain(2..n);
    let eigenspaces = class
        .dims()
        .iter()
        .map(|&d| Subspace::coordinate(n, &lines.by_ref().take(d).collect::<Vec<_>>()))
        .collect();
    Ok(SpectralOperator::new(class.clone(), eigenspaces)?)
}

fn refine(args: RefineArgs) -> Result<Verdict> {
    let config = RunConfig {
        command: "refine",
        class: None,
        ns: vec![args.n],
        seed: args.seed,
        out: args.output.out,
    };
    let (n, family) = match (&args.family, config.seed) {
        (Some(path), _) => read_json::<FamilyJson>(path)?.to_family()?,
        (None, Some(seed)) => {
            let mut rng = random::rng(seed);
            let frame = random::random_frame(&mut rng, args.n);
            (args.n, random::random_compatible_family(&mut rng, &frame, args.size))
        }
        (None, None) => bail!("refine needs --family or --seed"),
    };
    match experiments::refine_and_check(n, &family) {
        Ok((frame, ok)) => {
            let summary = format!(
                "{}: {} subspaces of C^{n} refined to a frame; members are sums of lines: {ok}",
                config.command,
                family.len()
            );
            emit(&config, &FrameJson::from(&frame), &summary)?;
            Ok(verdict(ok))
        }
        Err(ExperimentError::Compat(CompatError::IncompatibleFamily { first, second })) => {
            println!("{}: family members {first} and {second} are not compatible", config.command);
            Ok(Verdict::Violations)
        }
        Err(e) => Err(e.into()),
    }
}

fn inexact(args: InexactArgs) -> Result<Verdict> {
    let set: MemberSetJson = read_json(&args.members)?;
    let class = Arc::new(set.class.to_class()?);
    let config = RunConfig {
        command: "inexact",
        class: Some(class.clone()),
        ns: vec![class.n()],
        seed: None,
        out: args.output.out,
    };
    let ap = apartment(class, args.frame.as_ref())?;
    let labelings = set.labelings();
    for l in &labelings {
        ap.check_member(l)?;
    }
    let report = experiments::inexact_report(&ap, &labelings)?;
    let summary = format!(
        "{}: {} members, orthogonally {}{}",
        config.header(),
        report.members,
        if report.inexact { "inexact" } else { "exact" },
        match &report.witness {
            Some(p) => format!(" (lines {} and {} can be rotated)", p.i(), p.j()),
            None => String::new(),
        }
    );
    emit(&config, &report, &summary)?;
    Ok(Verdict::Clean)
}
