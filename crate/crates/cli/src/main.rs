mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "stairgb", version, about = "Reduced Groebner bases of ideals of points over Z_p")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Variable names, e.g. "x1=M,x2=L"
    #[arg(long, global = true)]
    names: Option<String>,
    /// JSON run configuration; flags given on the command line win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for fan and classification runs
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Read point files as CSV with this modulus and dimension
    #[arg(long, global = true, value_name = "P,N")]
    csv: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Groebner basis for one monomial order
    Gb {
        points: PathBuf,
        /// lex[:perm] | grlex | grevlex | weight:w1,..,wn[:tie=perm]
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Every reduced Groebner basis, with a witness weight for each
    Fan { points: PathBuf },
    /// Whether the reduced Groebner basis is the same for every order
    Unique { points: PathBuf },
    /// Whether the points are a linear shift of a staircase
    Staircase { points: PathBuf },
    /// Smallest linear shift carrying SOURCE onto TARGET
    Shift { source: PathBuf, target: PathBuf },
    /// Shift classes of all (or sampled) m-subsets of Z_p^n
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Draw this many random subsets instead of enumerating all
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Finite dynamical systems and model selection
    Fds {
        #[command(subcommand)]
        action: FdsCommand,
    },
    /// Worked example on the four-variable lac operon network
    LacDemo,
}

#[derive(Subcommand, Debug)]
pub enum FdsCommand {
    /// State space graph, components and fixed points of an FDS file
    StateSpace { file: PathBuf },
    /// Interpolating model per coordinate over the standard monomials of one order
    Select {
        data: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// All minimal models over every standard monomial basis
    Models { data: PathBuf },
    /// Fewest extra points that make the basis unique
    Augment {
        points: PathBuf,
        #[arg(long)]
        k_max: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match RunConfig::resolve(&cli) {
        Ok(c) => c,
        Err(e) => return e.report(),
    };
    if let Some(t) = config.threads {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match commands::run(&cli.command, &config) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => e.report(),
    }
}
