//! Command-line front end for the adversarial-risk engine.
//!
//! Every command loads one model configuration, derives all randomness
//! from a single master seed and writes its artifacts into `--out`
//! together with a `meta.json` sidecar describing the run.  CSV bytes
//! depend only on the configuration and seed, never on the thread
//! count; the sidecar carries the wall clock and is the one file that
//! differs between otherwise identical runs.
//!
//! Exit codes: 0 on success, 2 for configuration or usage problems,
//! 3 when constraints exclude every decision, 1 for filesystem errors.

mod config;
mod report;

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use ara_core::analysis::{
    apply_constraints, insurance_reservation_price, rosi_curve, sensitivity_sweep, AnalysisError,
    ConstraintSet,
};
use ara_core::casestudy::{
    pair_label, CaseStudy, CaseStudyError, ControlPortfolio, DecisionPair, InsurancePlan,
};
use ara_core::solver::DefenderModel;
use ara_core::synthetic::SyntheticScenario;
use ara_core::{
    solve_defence_attack_defence, AttackPolicyTable, DefenderRanking, RngStream, SolveError,
};
use clap::{Parser, Subcommand};
use thiserror::Error;

use config::ModelConfig;
use report::{ReservationMeta, RunMeta};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad configuration, flag or argument values.
    #[error("{0}")]
    Config(String),
    /// The requested constraints admit no decision at all.
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Infeasible(msg) => CliError::Infeasible(msg),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<CaseStudyError> for CliError {
    fn from(e: CaseStudyError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ara",
    version,
    about = "Monte Carlo portfolio and insurance optimisation against an adaptive attacker"
)]
struct Cli {
    /// TOML model configuration; omitted means the bundled defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Master seed, overriding the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Attacker hyper draws, overriding the configuration.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Attacker inner samples per hyper draw, overriding the configuration.
    #[arg(long, global = true)]
    m: Option<usize>,

    /// Defender samples per decision, overriding the configuration.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Cap in euro on control spend plus insurance premium.
    #[arg(long, global = true, allow_negative_numbers = true, value_name = "EUR")]
    budget: Option<f64>,

    /// Directory for CSV artifacts and the metadata sidecar.
    #[arg(long, global = true, default_value = "out", value_name = "DIR")]
    out: PathBuf,

    /// Worker threads; defaults to ARA_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate the attack distribution for every absorption tier.
    AttackerTable,
    /// Rank every control and insurance pair by expected utility.
    DefenderRank,
    /// Solve the bundled two-stage synthetic scenario end to end.
    DadSolve,
    /// Re-solve across a range of values for one model parameter.
    Sensitivity {
        /// Registered parameter name to sweep.
        #[arg(long, default_value = "fire_rate_per_year")]
        parameter: String,
        /// Comma-separated sweep values, strictly increasing.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            default_values_t = vec![0.011, 0.022, 0.044]
        )]
        values: Vec<f64>,
    },
    /// Best affordable decision at each security budget level.
    Rosi {
        /// Comma-separated budget levels in euro, non-decreasing.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            default_values_t = vec![0.0, 5_000.0, 10_000.0, 15_000.0, 20_000.0, 25_000.0]
        )]
        budgets: Vec<f64>,
    },
    /// Premium multiplier at which an insurance contract stops being
    /// worth buying.
    ReservePrice {
        /// Control portfolio held while pricing, e.g. `anti-fire+firewall+1tbps`.
        #[arg(long, default_value = "anti-fire+firewall+1tbps")]
        portfolio: String,
        /// Insurance product to price: `traditional`, `cyber` or `comprehensive`.
        #[arg(long, default_value = "comprehensive")]
        insurance: String,
    },
    /// Attack table, ranking, sensitivity sweep, investment curve and
    /// reservation price in one run.
    FullReport,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::AttackerTable => "attacker-table",
            Command::DefenderRank => "defender-rank",
            Command::DadSolve => "dad-solve",
            Command::Sensitivity { .. } => "sensitivity",
            Command::Rosi { .. } => "rosi",
            Command::ReservePrice { .. } => "reserve-price",
            Command::FullReport => "full-report",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let threads = resolve_threads(cli.threads)?;
    init_thread_pool(threads)?;
    let cfg = effective_config(&cli)?;
    let study = cfg.study()?;
    let rng = RngStream::new(cfg.seed);
    fs::create_dir_all(&cli.out)?;

    let mut outputs: Vec<PathBuf> = Vec::new();
    let mut reservation: Option<ReservationMeta> = None;

    match &cli.command {
        Command::AttackerTable => {
            let table = solve_table(&study, &cfg, &rng)?;
            outputs.push(report::write_attack_table(&cli.out, &table)?);
        }
        Command::DefenderRank => {
            let table = solve_table(&study, &cfg, &rng)?;
            let ranking = constrained_ranking(&study, &table, &cfg, cli.budget, &rng)?;
            print_top(&ranking, 3);
            outputs.push(report::write_attack_table(&cli.out, &table)?);
            outputs.push(report::write_defender_rank(&cli.out, &ranking)?);
        }
        Command::DadSolve => {
            let scenario = SyntheticScenario::default();
            let solution = solve_defence_attack_defence(
                &scenario,
                &scenario,
                cfg.solver.hyper_draws,
                cfg.solver.inner_samples,
                cfg.solver.samples,
                &rng,
            )?;
            print_top(&solution.ranking, 3);
            outputs.push(report::write_attack_table(&cli.out, &solution.table)?);
            outputs.push(report::write_defender_rank(&cli.out, &solution.ranking)?);
        }
        Command::Sensitivity { parameter, values } => {
            let table = solve_table(&study, &cfg, &rng)?;
            let sweep = sensitivity_sweep(&study, &table, parameter, values, &cfg.solver, &rng)?;
            println!(
                "sweep of {} over {} values: best decision {}",
                sweep.parameter,
                sweep.rows.len(),
                if sweep.argmax_changed { "changes" } else { "is stable" }
            );
            outputs.push(report::write_sensitivity(&cli.out, &sweep)?);
        }
        Command::Rosi { budgets } => {
            let table = solve_table(&study, &cfg, &rng)?;
            let curve = rosi_curve(&study, &table, budgets, cfg.solver.samples, &rng)?;
            outputs.push(report::write_rosi(&cli.out, &curve)?);
        }
        Command::ReservePrice {
            portfolio,
            insurance,
        } => {
            let table = solve_table(&study, &cfg, &rng)?;
            let price = price_insurance(&study, &table, portfolio, insurance, &cfg, &rng)?;
            print_reservation(&price);
            reservation = Some(ReservationMeta::from(&price));
        }
        Command::FullReport => {
            let table = solve_table(&study, &cfg, &rng)?;
            outputs.push(report::write_attack_table(&cli.out, &table)?);

            let ranking = constrained_ranking(&study, &table, &cfg, cli.budget, &rng)?;
            print_top(&ranking, 3);
            outputs.push(report::write_defender_rank(&cli.out, &ranking)?);

            let budgets = [0.0, 5_000.0, 10_000.0, 15_000.0, 20_000.0, 25_000.0];
            let curve = rosi_curve(&study, &table, &budgets, cfg.solver.samples, &rng)?;
            outputs.push(report::write_rosi(&cli.out, &curve)?);

            let values = [0.011, 0.022, 0.044];
            let sweep = sensitivity_sweep(
                &study,
                &table,
                "fire_rate_per_year",
                &values,
                &cfg.solver,
                &rng,
            )?;
            outputs.push(report::write_sensitivity(&cli.out, &sweep)?);

            let price = price_insurance(
                &study,
                &table,
                "anti-fire+firewall+1tbps",
                "comprehensive",
                &cfg,
                &rng,
            )?;
            print_reservation(&price);
            reservation = Some(ReservationMeta::from(&price));
        }
    }

    for path in &outputs {
        println!("wrote {}", path.display());
    }
    let meta = RunMeta {
        command: cli.command.name().to_string(),
        engine: format!("ara {}", env!("CARGO_PKG_VERSION")),
        seed: cfg.seed,
        hyper_draws: cfg.solver.hyper_draws,
        inner_samples: cfg.solver.inner_samples,
        samples: cfg.solver.samples,
        budget_eur: cli.budget,
        threads,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        outputs: outputs
            .iter()
            .map(|p| {
                p.file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default()
            })
            .collect(),
        reservation,
    };
    let meta_path = report::write_meta(&cli.out, &meta)?;
    println!("wrote {}", meta_path.display());
    Ok(())
}

/// Explicit thread request: the flag wins, then the ARA_THREADS
/// variable; `None` leaves the pool at its default size.
fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let requested = match flag {
        Some(t) => Some(t),
        None => match std::env::var("ARA_THREADS") {
            Ok(raw) => Some(raw.trim().parse::<usize>().map_err(|_| {
                CliError::Config(format!("cannot parse ARA_THREADS value `{raw}` as a thread count"))
            })?),
            Err(_) => None,
        },
    };
    if requested == Some(0) {
        return Err(CliError::Config("thread count must be at least 1".into()));
    }
    Ok(requested)
}

fn init_thread_pool(threads: Option<usize>) -> Result<(), CliError> {
    let Some(threads) = threads else {
        return Ok(());
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot initialise the thread pool: {e}")))
}

fn effective_config(cli: &Cli) -> Result<ModelConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => ModelConfig::load(path)?,
        None => ModelConfig::parse(config::DEFAULT_CONFIG_TOML)?,
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(k) = cli.k {
        cfg.solver.hyper_draws = k;
    }
    if let Some(m) = cli.m {
        cfg.solver.inner_samples = m;
    }
    if let Some(n) = cli.n {
        cfg.solver.samples = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn solve_table(
    study: &CaseStudy,
    cfg: &ModelConfig,
    rng: &RngStream,
) -> Result<AttackPolicyTable, CliError> {
    Ok(study.solve_attack_table(cfg.solver.hyper_draws, cfg.solver.inner_samples, rng)?)
}

/// Ranks the decision pairs, restricted to the budget when one is set.
///
/// Feasibility is checked before the solve so an impossible budget
/// fails fast; the restriction itself happens by filtering the full
/// ranking, which matches re-solving the restricted problem bit for
/// bit.
fn constrained_ranking(
    study: &CaseStudy,
    table: &AttackPolicyTable,
    cfg: &ModelConfig,
    budget: Option<f64>,
    rng: &RngStream,
) -> Result<DefenderRanking<DecisionPair>, CliError> {
    let allowed: Option<BTreeSet<String>> = match budget {
        Some(budget) => {
            let model = study.defender_model()?;
            let admitted =
                apply_constraints(&model, &model.decisions(), &ConstraintSet::with_budget(budget))?;
            Some(admitted.iter().map(|(s, i)| pair_label(s, *i)).collect())
        }
        None => None,
    };
    let ranking = study.solve_ranking(table, cfg.solver.samples, rng)?;
    Ok(match allowed {
        Some(labels) => ranking.filtered(|entry| labels.contains(&entry.result.decision)),
        None => ranking,
    })
}

fn price_insurance(
    study: &CaseStudy,
    table: &AttackPolicyTable,
    portfolio: &str,
    insurance: &str,
    cfg: &ModelConfig,
    rng: &RngStream,
) -> Result<ara_core::analysis::ReservationPrice, CliError> {
    let portfolio: ControlPortfolio = portfolio.parse()?;
    let insurance: InsurancePlan = insurance.parse()?;
    Ok(insurance_reservation_price(
        study,
        table,
        &portfolio,
        insurance,
        cfg.solver.samples,
        rng,
    )?)
}

fn print_top<D>(ranking: &DefenderRanking<D>, count: usize) {
    for (i, entry) in ranking.iter().take(count).enumerate() {
        println!(
            "#{} {}  eu {:.6} (se {:.1e}, spend {:.2} eur)",
            i + 1,
            entry.result.decision,
            entry.result.expected_utility,
            entry.result.standard_error,
            entry.fixed_cost,
        );
    }
}

fn print_reservation(price: &ara_core::analysis::ReservationPrice) {
    println!("decision             {}", price.decision_label);
    println!("alternative          {}", price.alternative_label);
    println!("baseline premium     {:.2} eur", price.baseline_premium_eur);
    println!("preferred at baseline {}", price.preferred_at_baseline);
    println!(
        "reservation premium  {:.2} eur ({:.4}x baseline)",
        price.reservation_premium_eur, price.multiplier
    );
}
