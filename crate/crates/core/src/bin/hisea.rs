use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hisea::harness::{self, ExperimentConfig, Profile, ReferenceTable};

#[derive(Parser)]
#[command(name = "hisea", version, about = "Run and compare HisEA benchmark experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded trials and write traces and summaries.
    Run(RunArgs),
    /// Compare saved summaries with the published results.
    Report {
        #[arg(long = "in", value_name = "DIR")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Desk,
    Paper,
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated function ids (1-30).
    #[arg(long, value_delimiter = ',', required = true)]
    functions: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, value_enum, default_value = "desk")]
    profile: ProfileArg,
    /// Base seed; trial t uses seed + t.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long)]
    nf: Option<usize>,
    #[arg(long)]
    np: Option<usize>,
    #[arg(long)]
    ng: Option<usize>,
    #[arg(long)]
    ns: Option<usize>,
    #[arg(long)]
    max_loops: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
}

impl RunArgs {
    fn experiment(self) -> ExperimentConfig {
        let profile = match self.profile {
            ProfileArg::Desk => Profile::Desk,
            ProfileArg::Paper => Profile::Paper,
        };
        let mut run = profile.run_config();
        if let Some(v) = self.nf {
            run.n_f = v;
        }
        if let Some(v) = self.np {
            run.n_p = v;
        }
        if let Some(v) = self.ng {
            run.n_g = v;
        }
        if let Some(v) = self.ns {
            run.n_s = v;
        }
        if let Some(v) = self.max_loops {
            run.max_loops = v;
        }
        if let Some(v) = self.epsilon {
            run.epsilon = v;
        }
        ExperimentConfig {
            function_ids: self.functions,
            trials: self.trials,
            run,
            out_dir: self.out,
            base_seed: self.seed,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };

    match cli.command {
        Command::Run(args) => {
            let config = args.experiment();
            if let Err(e) = config.validate() {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            match harness::run_experiment(&config) {
                Ok(outcome) => {
                    print!("{}", harness::compare_report(&outcome.summaries, &ReferenceTable).to_text());
                    if outcome.failed_trials() > 0 {
                        eprintln!("{} trial(s) failed", outcome.failed_trials());
                        return ExitCode::from(2);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Report { input, json } => {
            let summaries = match harness::load_summaries(&input) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let report = harness::compare_report(&summaries, &ReferenceTable);
            if json {
                match serde_json::to_string_pretty(&report) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                }
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::SUCCESS
        }
    }
}
