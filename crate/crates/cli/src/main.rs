mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cartan", version, about = "Exact commutant, A3 and Racah algebra computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    output: Format,

    /// Fail the run when a printed formula differs from the recomputed one.
    #[arg(long, global = true)]
    strict_paper: bool,

    /// Seed for randomized spot checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure constants, Jacobi identity and random spot checks.
    Algebra(AlgebraArgs),
    /// Cartan commutant: dimensions, generators and relations.
    Commutant(CommutantArgs),
    /// Classical and quantum A3 verification.
    #[command(name = "verify-a3")]
    VerifyA3(A3Args),
    /// Racah relations for the sphere model with solved constants.
    #[command(name = "verify-racah")]
    VerifyRacah(RacahArgs),
    /// Recomputed quantum corrections against the printed ones.
    Corrections,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// sl2, sl3, sl4, gl3 (any sl<n>/gl<n>) or file:<path>.
    #[arg(long, default_value = "sl3")]
    algebra: String,
}

#[derive(Args, Debug)]
struct CommutantArgs {
    #[arg(long, default_value = "sl3")]
    algebra: String,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Weighted degree bound for the relation search (default: twice the
    /// maximal generator degree).
    #[arg(long)]
    relation_degree: Option<usize>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct A3Args {
    #[arg(long)]
    classical: bool,
    #[arg(long)]
    quantum: bool,
    #[arg(long)]
    constraint: bool,
}

#[derive(Args, Debug)]
struct RacahArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Also verify the closure identities.
    #[arg(long)]
    closure: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("COMMUTANT_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("COMMUTANT_THREADS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match &cli.command {
        Command::Algebra(a) => commands::algebra(&a.algebra, cli.seed),
        Command::Commutant(a) => commands::commutant(&a.algebra, a.max_degree, a.relation_degree),
        Command::VerifyA3(a) => commands::verify_a3(a.classical, a.quantum, a.constraint),
        Command::VerifyRacah(a) => commands::verify_racah(a.n, a.closure),
        Command::Corrections => commands::corrections(),
    };
    match outcome {
        Ok(out) => {
            match cli.output {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            if !out.ok || (cli.strict_paper && !out.paper_ok) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if commands::is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
