use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gibbsmix_cli::commands::{
    cmd_bayes_demo, cmd_beta_sweep, cmd_estimate, cmd_extend, cmd_fig1, cmd_fig2,
    cmd_nishimori_check, CommandOutput,
};
use gibbsmix_cli::config::RunConfig;
use gibbsmix_cli::output::OutputFormat;
use gibbsmix_cli::CliError;

#[derive(Parser)]
#[command(name = "gibbsmix", version)]
#[command(about = "Model averaging with likelihood-tempered weights, plus its verification harnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Run configuration file ([models] / [sample] / [run] sections)
    #[arg(long)]
    config: PathBuf,
    /// RNG seed; required whenever a generator or Monte Carlo is involved
    #[arg(long)]
    seed: Option<u64>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Reject unknown config keys instead of warning
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct OutArgs {
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Predictive density over an x-grid
    Estimate(RunArgs),
    /// Expected divergence to truth as a function of beta; the minimum is
    /// expected at beta = n
    BetaSweep(RunArgs),
    /// Exact internal-energy identity check; exit 0 iff the gap is tiny
    NishimoriCheck {
        #[command(flatten)]
        args: RunArgs,
        /// Perturb one side of the identity as a negative control
        #[arg(long)]
        perturb: bool,
    },
    /// Rank candidate models for extending the set
    Extend(RunArgs),
    /// Per-step posterior weights under sequential updating
    BayesDemo(RunArgs),
    /// Preset curves: two-component family, a = 1, xbar = 0.1, n in {2, 10, 50}
    Fig1(OutArgs),
    /// Preset curves: all-normal family, xbar = 0, V = 1, n in {3, 10, 50}
    Fig2(OutArgs),
}

fn load_config(args: &RunArgs) -> Result<(RunConfig, Vec<String>), CliError> {
    let text = std::fs::read_to_string(&args.config).map_err(|source| CliError::Io {
        path: args.config.display().to_string(),
        source,
    })?;
    RunConfig::parse(&text, args.strict)
}

fn write_output(
    out: &Option<PathBuf>,
    format: Format,
    output: &CommandOutput,
) -> Result<(), CliError> {
    let rendered = output.record.render(format.into());
    match out {
        Some(path) => std::fs::write(path, rendered).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".to_string(),
                source,
            })
        }
    }
}

fn run() -> Result<i32, CliError> {
    let cli = Cli::parse();
    let (run_args, output) = match &cli.command {
        Command::Estimate(args) => {
            let (config, warnings) = load_config(args)?;
            let mut output = cmd_estimate(&config, args.seed)?;
            output.warnings.splice(0..0, warnings);
            (Some(args), output)
        }
        Command::BetaSweep(args) => {
            let (config, warnings) = load_config(args)?;
            let mut output = cmd_beta_sweep(&config, args.seed)?;
            output.warnings.splice(0..0, warnings);
            (Some(args), output)
        }
        Command::NishimoriCheck { args, perturb } => {
            let (config, warnings) = load_config(args)?;
            let mut output = cmd_nishimori_check(&config, args.seed, *perturb)?;
            output.warnings.splice(0..0, warnings);
            (Some(args), output)
        }
        Command::Extend(args) => {
            let (config, warnings) = load_config(args)?;
            let mut output = cmd_extend(&config, args.seed)?;
            output.warnings.splice(0..0, warnings);
            (Some(args), output)
        }
        Command::BayesDemo(args) => {
            let (config, warnings) = load_config(args)?;
            let mut output = cmd_bayes_demo(&config, args.seed)?;
            output.warnings.splice(0..0, warnings);
            (Some(args), output)
        }
        Command::Fig1(_) => (None, cmd_fig1()?),
        Command::Fig2(_) => (None, cmd_fig2()?),
    };

    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }
    match (&cli.command, run_args) {
        (Command::Fig1(out_args) | Command::Fig2(out_args), _) => {
            write_output(&out_args.out, out_args.format, &output)?;
        }
        (_, Some(args)) => {
            write_output(&args.out, args.format, &output)?;
        }
        _ => unreachable!(),
    }
    Ok(output.exit_code)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}
