//! `statelink`: detection pipeline for coordinated attacks on
//! cyber-physical power systems.

use clap::{Parser, Subcommand};

use statelink::commands::{
    run_balance, run_cluster, run_evaluate, run_fuse, run_generate, run_pipeline, run_train,
    BalanceArgs, ClusterArgs, EvaluateArgs, FuseArgs, GenerateArgs, PipelineArgs, TrainArgs,
};

#[derive(Parser)]
#[command(
    name = "statelink",
    version,
    about = "Coordinated-attack detection for cyber-physical power systems",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labeled synthetic operating-state data link.
    Generate(GenerateArgs),
    /// Fuse raw physical and cyber telemetry into a data link.
    Fuse(FuseArgs),
    /// Cluster a data link into operating states.
    Cluster(ClusterArgs),
    /// Oversample minority classes of a labeled table.
    Balance(BalanceArgs),
    /// Train the boosted classifier on a labeled table.
    Train(TrainArgs),
    /// Evaluate a model on labeled data, or a prediction table directly.
    Evaluate(EvaluateArgs),
    /// Run generate, cluster, balance, train, and evaluate end to end.
    Pipeline(PipelineArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(args) => run_generate(args),
        Command::Fuse(args) => run_fuse(args),
        Command::Cluster(args) => run_cluster(args),
        Command::Balance(args) => run_balance(args),
        Command::Train(args) => run_train(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Pipeline(args) => run_pipeline(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
