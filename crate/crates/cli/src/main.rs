use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pcompact::arith::PadicEmbedding;
use pcompact::catalog::{CatalogEntry, CatalogError, GroupSource};
use pcompact::hocolim::adjoint_homology;
use pcompact::model::{centralizer_structure, flag_poincare, ModelRecord, DEFAULT_PRECISION};
use pcompact::splitting::splitting_report;
use pcompact::{close_group, model_for, Error};

/// Exact invariants of p-compact groups from their Weyl groups.
#[derive(Parser)]
#[command(name = "pcompact", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in groups.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Group and model invariants.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Flag variety Poincaré polynomials.
    #[command(subcommand)]
    Flag(FlagCommand),
    /// Homology of the adjoint space.
    Adjoint(GroupArgs),
    /// Idempotent splitting of the p-completed BS¹.
    #[command(subcommand)]
    Splitting(SplittingCommand),
    /// Centralizer of a primitive reflection.
    Centralizer {
        #[command(flatten)]
        group: GroupArgs,
        /// Index into the group's reflection list.
        #[arg(long)]
        reflection: usize,
    },
    /// Generator matrices embedded in GL_r(Z/p^k).
    Embed(GroupArgs),
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
}

#[derive(Subcommand)]
enum GroupCommand {
    Info(GroupArgs),
}

#[derive(Subcommand)]
enum FlagCommand {
    Poincare {
        #[command(flatten)]
        group: GroupArgs,
        /// Positions in the minimal generating set, comma separated.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum SplittingCommand {
    Verify {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        l: u64,
        /// Largest degree 2N considered; defaults to 6(p − 1).
        #[arg(long)]
        degree_bound: Option<usize>,
        #[arg(long, env = "PCOMPACT_PRECISION", default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Catalog name (C<m>, S<n>, G7, sign, sullivan) or spec file path.
    group: String,
    /// Defaults to the catalog entry's or file's prime.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, env = "PCOMPACT_PRECISION", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
}

impl GroupArgs {
    fn prime(&self) -> Result<(GroupSource, u64), Error> {
        let source = GroupSource::resolve(&self.group)?;
        let p = self
            .prime
            .or_else(|| source.default_prime())
            .ok_or_else(|| CatalogError::PrimeRequired(source.name()))?;
        Ok((source, p))
    }

    fn model(&self) -> Result<pcompact::PCompactModel, Error> {
        let (_, p) = self.prime()?;
        model_for(&self.group, p, self.precision)
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CatalogItem {
    name: String,
    description: String,
    default_prime: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GroupInfo {
    name: String,
    prime: u64,
    order: usize,
    reflections: usize,
    generating_reflections: Vec<usize>,
    model: ModelRecord,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FlagReport {
    subset: Vec<usize>,
    coeffs: Vec<u64>,
    polynomial: String,
    euler: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct EmbedReport {
    prime: u64,
    precision: u32,
    conductor: u32,
    factor_index: usize,
    factor_count: usize,
    factor: Vec<u64>,
    matrices: Vec<Vec<Vec<u64>>>,
}

impl From<&PadicEmbedding> for EmbedReport {
    fn from(e: &PadicEmbedding) -> Self {
        EmbedReport {
            prime: e.prime,
            precision: e.precision,
            conductor: e.conductor,
            factor_index: e.factor_index,
            factor_count: e.factor_count,
            factor: e.factor.clone(),
            matrices: e.matrices.iter().map(|m| m.rows()).collect(),
        }
    }
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn run(cli: Cli) -> Result<(), Error> {
    let json = cli.json;
    match cli.command {
        Command::Catalog(CatalogCommand::List) => {
            let items: Vec<CatalogItem> = CatalogEntry::list()
                .into_iter()
                .map(|e| CatalogItem { name: e.name(), description: e.description(), default_prime: e.default_prime() })
                .collect();
            if json {
                print_json(&items);
            } else {
                for item in items {
                    println!("{:<10} p={:<4} {}", item.name, item.default_prime, item.description);
                }
            }
        }
        Command::Group(GroupCommand::Info(args)) => {
            let (source, p) = args.prime()?;
            let model = model_for(&args.group, p, args.precision)?;
            let info = GroupInfo {
                name: source.name(),
                prime: p,
                order: model.weyl.order(),
                reflections: model.weyl.reflections().len(),
                generating_reflections: model.generating_set.clone(),
                model: model.record(),
            };
            if json {
                print_json(&info);
            } else {
                let m = &info.model;
                println!("group        {} at p = {}", info.name, info.prime);
                println!("order        {}", info.order);
                println!("reflections  {}", info.reflections);
                println!("degrees      {{{}}}", join(&m.degrees));
                println!("rank r       {}", m.rank);
                println!("r'           {}", m.r_prime);
                println!("kappa        {}", m.kappa);
                println!("l            {}", m.l);
                println!("dimension d  {}", m.dimension);
            }
        }
        Command::Flag(FlagCommand::Poincare { group, subset }) => {
            let model = group.model()?;
            let poly = flag_poincare(&model, &subset)?;
            let report = FlagReport {
                subset,
                coeffs: poly.coeffs().to_vec(),
                polynomial: poly.to_string(),
                euler: poly.eval_one(),
            };
            if json {
                print_json(&report);
            } else {
                println!("{}", report.polynomial);
                println!("euler characteristic {}", report.euler);
            }
        }
        Command::Adjoint(args) => {
            let model = args.model()?;
            let report = adjoint_homology(&model)?;
            if json {
                print_json(&report.record());
            } else {
                println!("k = r' = {}, kappa = {}", report.k, report.kappa);
                println!("E1 page:");
                print!("{}", report.e1);
                println!("dim A_G      {}", report.dimension);
                println!("top rank     {}", report.top_rank);
                println!("euler        {}", report.euler);
                match &report.reduced_ranks {
                    Some(r) => {
                        let degrees: Vec<String> = r.iter().map(|(d, n)| format!("{d}:{n}")).collect();
                        println!("reduced homology ranks {{{}}}", degrees.join(", "));
                    }
                    None => println!("lower degrees: {}", report.lower_degrees()),
                }
                println!("verdict      {}", report.verdict.as_str());
            }
        }
        Command::Splitting(SplittingCommand::Verify { prime, l, degree_bound, precision }) => {
            let bound = degree_bound.unwrap_or(6 * prime.saturating_sub(1) as usize);
            let report = splitting_report(prime, l, bound / 2, precision)?;
            if json {
                print_json(&report);
            } else {
                println!("p = {}, l = {}, degrees up to {}", report.p, report.l, report.degree_bound);
                for c in &report.checks_passed {
                    println!("  pass  {c}");
                }
                for c in &report.checks_failed {
                    println!("  FAIL  {c}");
                }
                println!("umkehr residues {{{}}}", join(&report.umkehr_residues));
            }
        }
        Command::Centralizer { group, reflection } => {
            let model = group.model()?;
            let report = centralizer_structure(&model, reflection)?;
            if json {
                print_json(&report);
            } else {
                println!("reflection {} of order {}", report.reflection, report.order);
                println!("degrees      {{{}}}", join(&report.degrees));
                println!("dimension    {}", report.dimension);
                println!("stabilizer of hyperplane is <s>: {}", report.stabilizer_is_cyclic);
                println!("one nontrivial degree: {}", report.rank_one_quotient);
            }
        }
        Command::Embed(args) => {
            let (source, p) = args.prime()?;
            let gens = source.generators(Some(p))?;
            close_group(&gens, source.cap(Some(p)))?;
            let embedding = pcompact::arith::embed_matrices(&gens, p, args.precision)?;
            let report = EmbedReport::from(&embedding);
            if json {
                print_json(&report);
            } else {
                println!(
                    "factor {} of {} of Phi_{} mod {}, lifted mod {}^{}: {:?}",
                    report.factor_index, report.factor_count, report.conductor, p, p, report.precision, report.factor
                );
                for (i, m) in report.matrices.iter().enumerate() {
                    println!("generator {i}: {m:?}");
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
