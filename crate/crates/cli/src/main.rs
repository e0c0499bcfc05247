mod input;
mod run;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rhopi", version, about = "Workbench for the ρ-calculus and its π encodings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BoundArgs {
    /// Stop exploring after this many states.
    #[arg(long, default_value_t = 100_000)]
    pub max_states: usize,
    /// Stop exploring below this BFS depth.
    #[arg(long, default_value_t = 200)]
    pub max_depth: usize,
}

impl BoundArgs {
    pub fn bounds(self) -> rhopi::Bounds {
        rhopi::Bounds::new(self.max_states, self.max_depth)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeArg {
    Ns,
    Mr,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReproArg {
    Cex1,
    Cex2,
    Separation,
    Nameserver,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a term and print its canonical form.
    Parse {
        term: String,
        /// Read the term as a π-process.
        #[arg(long)]
        pi: bool,
    },
    /// Decide name equivalence of two ρ-names.
    Nameq { a: String, b: String },
    /// Decide structural congruence of two terms.
    Structeq {
        a: String,
        b: String,
        #[arg(long)]
        pi: bool,
    },
    /// Quote depth of a ρ-name (or of a process).
    Qdepth { term: String },
    /// Follow the first redex for up to `steps` reductions.
    Reduce {
        term: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long)]
        pi: bool,
    },
    /// Explore the reachable state space.
    Trace {
        term: String,
        #[arg(long)]
        pi: bool,
        /// One JSON object per line.
        #[arg(long)]
        json: bool,
        /// Barbs are reported on these names (default: free names).
        #[arg(long, value_delimiter = ',')]
        restrict: Option<Vec<String>>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Strong barbs of a term.
    Barbs {
        term: String,
        #[arg(long)]
        pi: bool,
        /// Comma-separated observable names (default: free names).
        #[arg(long, value_delimiter = ',')]
        restrict: Option<Vec<String>>,
    },
    /// Translate a π-process into the ρ-calculus.
    Encode {
        term: String,
        #[arg(long, value_enum, default_value_t = SchemeArg::Ns)]
        scheme: SchemeArg,
        /// Print the atom and parameter aliases.
        #[arg(long)]
        manifest: bool,
        /// Print full quoted names instead of aliases.
        #[arg(long)]
        raw: bool,
    },
    /// Bounded barbed bisimulation.
    Bisim {
        a: String,
        b: String,
        #[arg(long)]
        pi: bool,
        #[arg(long)]
        weak: bool,
        /// Comma-separated observable names (default: union of free names).
        #[arg(long, value_delimiter = ',')]
        restrict: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Divergence probe; with --encode a π-process is translated first.
    Diverge {
        term: String,
        #[arg(long)]
        pi: bool,
        #[arg(long, value_enum)]
        encode: Option<SchemeArg>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Run one of the reproduction reports.
    Repro {
        #[arg(value_enum)]
        which: ReproArg,
        /// The process Q of the first counter-example (π syntax).
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Correspondence checks over a generated corpus.
    Criteria {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        size: usize,
        /// Number of atoms the generator draws from (1 to 6).
        #[arg(long, default_value_t = rhopi::harness::DEFAULT_POOL)]
        pool: usize,
        #[arg(long)]
        json: bool,
        /// Print every check, not only the ones that did not pass.
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
