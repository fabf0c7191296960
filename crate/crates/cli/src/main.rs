use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pigroups::{run, Command, Options};

#[derive(Parser)]
#[command(name = "pigroups", version, about = "Pi-relative Fitting sets, projectors and injectors of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Comma list of primes; "" is the empty set, a trailing ' the complement.
    /// `verify` accepts it repeatedly.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pi: Vec<String>,
    /// all, trivial, nilpotent, epi, npiprime or npi, optionally with its own
    /// set as in npi{3,5}.
    #[arg(long, global = true)]
    class: Option<String>,
    #[arg(long, global = true)]
    group: Option<String>,
    /// Corpus file, or "default" for the built-in one.
    #[arg(long, global = true, default_value = "default")]
    corpus: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for `verify`; all cores by default.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Generator lists separated by ';', e.g. "(1 2);(1 2 3)".
    #[arg(long, global = true)]
    seed_subgroups: Option<String>,
    /// Generator list such as "(1 2),(3 4)".
    #[arg(long, global = true)]
    subgroup: Option<String>,
    /// Suite id for `verify`; repeatable, "all" by default.
    #[arg(long, global = true)]
    suite: Vec<String>,
    /// Record wall-clock time per suite; makes output run-dependent.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Subcommand)]
enum Cmd {
    /// All subgroups with their conjugacy classes.
    Lattice,
    /// Hall pi-subgroups.
    Halls,
    /// Largest normal pi-subgroup.
    Opi,
    /// Smallest normal subgroup with pi-group quotient.
    Oupperpi,
    /// Residual of --subgroup (default: the group) for --class.
    Residual,
    /// Whether --subgroup is Dnormal, or all Dnormal subgroups.
    Dnormal,
    /// Whether --subgroup is Dsubnormal, with a chain, or all of them.
    Dsubnormal,
    /// Radical of --subgroup in the Fitting set.
    Radical,
    /// Maximal members of the Fitting set inside --subgroup.
    Fmaximal,
    /// Injectors of the Fitting set, constructed when possible.
    Injectors,
    /// Projectors and covering subgroups for N^pi.
    Projectors,
    /// Least N^pi-Fitting set containing --seed-subgroups.
    Closure,
    /// Fitting set axioms for --class, or for --seed-subgroups as given.
    ValidateFitting,
    /// Run verification suites over the corpus.
    Verify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Lattice => Command::Lattice,
            Cmd::Halls => Command::Halls,
            Cmd::Opi => Command::Opi,
            Cmd::Oupperpi => Command::Oupperpi,
            Cmd::Residual => Command::Residual,
            Cmd::Dnormal => Command::Dnormal,
            Cmd::Dsubnormal => Command::Dsubnormal,
            Cmd::Radical => Command::Radical,
            Cmd::Fmaximal => Command::Fmaximal,
            Cmd::Injectors => Command::Injectors,
            Cmd::Projectors => Command::Projectors,
            Cmd::Closure => Command::Closure,
            Cmd::ValidateFitting => Command::ValidateFitting,
            Cmd::Verify => Command::Verify,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let opts = Options {
        corpus: g.corpus,
        group: g.group,
        pi: g.pi,
        class: g.class,
        subgroup: g.subgroup,
        seed_subgroups: g.seed_subgroups,
        suites: g.suite,
        jobs: g.jobs,
        timing: g.timing,
    };
    match run(cli.command.into(), &opts) {
        Ok(out) => {
            match g.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("reports serialize")
                ),
            }
            if out.failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
