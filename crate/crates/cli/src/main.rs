//! `grouppoly`: batch front end for the polymatroid, representation, code,
//! hypergraph and quotient-complex computations.

mod commands;
mod input;
mod suite;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::Outcome;

#[derive(Parser)]
#[command(name = "grouppoly", version, about = "Polymatroids of subgroups of finite group products")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
pub struct Opts {
    /// Product spec, e.g. "symmetric:3,symmetric:3" or "cyclic:6^3".
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Subgroup generators, one tuple per line, coordinates separated by '|'.
    #[arg(long, global = true)]
    pub gens: Option<PathBuf>,
    /// Raw subset of the product, same format as --gens, not closed.
    #[arg(long, global = true)]
    pub elems: Option<PathBuf>,
    /// Rank table in the JSON format written by `rank --json`.
    #[arg(long = "rank-table", global = true)]
    pub rank_table: Option<PathBuf>,
    /// Logarithm base: "group" or a rational number.
    #[arg(long, global = true, default_value = "group")]
    pub b: String,
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub lambda: Vec<u64>,
    /// Capacities A_x for `dual`, or exponents a for the Greene checks.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    #[arg(long, global = true)]
    pub dim: Option<i64>,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Override the command's scale cap.
    #[arg(long, global = true)]
    pub cap: Option<u128>,
    #[arg(long, global = true, conflicts_with = "unaugmented")]
    pub augmented: bool,
    #[arg(long, global = true)]
    pub unaugmented: bool,
    #[arg(long, global = true)]
    pub hypergraph: Option<PathBuf>,
    /// Character table file used for every factor.
    #[arg(long, global = true)]
    pub tables: Option<PathBuf>,
    /// Tutte evaluation point u-1 = b^alpha.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<i64>,
    /// Tutte evaluation point v-1 = b^beta.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<i64>,
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiplicative rank table |H_S| and ranks.
    Rank,
    /// Flats with Möbius values from the bottom flat.
    Flats,
    /// Characteristic polynomial by both routes.
    Charpoly,
    /// a-dual table, flats and characteristic polynomial.
    Dual,
    /// Tutte polynomial terms.
    Tutte,
    /// Weight enumerators of H and R(H).
    Weights,
    /// Irreducibles of G in the permutation representation on G/H.
    RepSpectrum,
    #[command(subcommand)]
    Verify(VerifyCmd),
    #[command(subcommand)]
    Hypergraph(HyperCmd),
    #[command(subcommand)]
    Laplacian(LapCmd),
    /// Recompute every bundled worked example.
    PaperSuite,
}

#[derive(Subcommand)]
enum VerifyCmd {
    CrapoRota,
    DualCrapoRota,
    Greene,
    DualGreene,
    Macwilliams,
    Axioms,
}

#[derive(Subcommand)]
enum HyperCmd {
    Chromatic,
    Flow,
}

#[derive(Subcommand)]
enum LapCmd {
    Spectrum,
    Betti,
    Euler,
    /// Face lists and boundary triplets as JSON.
    Dump,
}

fn name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Rank => "rank",
        Cmd::Flats => "flats",
        Cmd::Charpoly => "charpoly",
        Cmd::Dual => "dual",
        Cmd::Tutte => "tutte",
        Cmd::Weights => "weights",
        Cmd::RepSpectrum => "rep-spectrum",
        Cmd::Verify(v) => match v {
            VerifyCmd::CrapoRota => "verify crapo-rota",
            VerifyCmd::DualCrapoRota => "verify dual-crapo-rota",
            VerifyCmd::Greene => "verify greene",
            VerifyCmd::DualGreene => "verify dual-greene",
            VerifyCmd::Macwilliams => "verify macwilliams",
            VerifyCmd::Axioms => "verify axioms",
        },
        Cmd::Hypergraph(HyperCmd::Chromatic) => "hypergraph chromatic",
        Cmd::Hypergraph(HyperCmd::Flow) => "hypergraph flow",
        Cmd::Laplacian(l) => match l {
            LapCmd::Spectrum => "laplacian spectrum",
            LapCmd::Betti => "laplacian betti",
            LapCmd::Euler => "laplacian euler",
            LapCmd::Dump => "laplacian dump",
        },
        Cmd::PaperSuite => "paper-suite",
    }
}

fn dispatch(cmd: &Cmd, o: &Opts) -> grouppoly::Result<Outcome> {
    match cmd {
        Cmd::Rank => commands::rank(o),
        Cmd::Flats => commands::flats_cmd(o),
        Cmd::Charpoly => commands::charpoly(o),
        Cmd::Dual => commands::dual(o),
        Cmd::Tutte => commands::tutte_cmd(o),
        Cmd::Weights => commands::weights(o),
        Cmd::RepSpectrum => commands::rep_spectrum(o),
        Cmd::Verify(v) => match v {
            VerifyCmd::CrapoRota => commands::verify_crapo_rota_cmd(o),
            VerifyCmd::DualCrapoRota => commands::verify_dual_crapo_rota(o),
            VerifyCmd::Greene => commands::verify_greene(o, false),
            VerifyCmd::DualGreene => commands::verify_greene(o, true),
            VerifyCmd::Macwilliams => commands::verify_macwilliams(o),
            VerifyCmd::Axioms => commands::verify_axioms(o),
        },
        Cmd::Hypergraph(HyperCmd::Chromatic) => commands::hyper_chromatic(o),
        Cmd::Hypergraph(HyperCmd::Flow) => commands::hyper_flow(o),
        Cmd::Laplacian(l) => match l {
            LapCmd::Spectrum => commands::laplacian_spectrum_cmd(o),
            LapCmd::Betti => commands::laplacian_betti(o),
            LapCmd::Euler => commands::laplacian_euler(o),
            LapCmd::Dump => commands::laplacian_dump(o),
        },
        Cmd::PaperSuite => suite::run(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match dispatch(&cli.cmd, &cli.opts) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("grouppoly: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", out.text);
    if let Some(path) = &cli.opts.json {
        let report = json!({"schema": 1, "command": name(&cli.cmd), "ok": out.ok, "result": out.result});
        let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        if path.as_os_str() == "-" {
            print!("{body}");
        } else if let Err(e) = fs::write(path, body) {
            eprintln!("grouppoly: cannot write '{}': {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
