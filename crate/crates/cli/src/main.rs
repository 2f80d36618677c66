mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use config::{Format, RunConfig};
use nilq::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "nilq", version, about = "Equivariant quantization of nilradicals in U_q(g)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

/// Indices are 1-based in the Bourbaki numbering.
#[derive(Args, Debug)]
struct Common {
    /// Root system, e.g. `G2`, `A3`, `A1+A2`.
    #[arg(long = "type", global = true)]
    type_spec: Option<String>,
    /// Order of the simple roots, smallest first (default 1,2,...,r).
    #[arg(long, global = true, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Subset of simple roots.
    #[arg(long, global = true, value_delimiter = ',')]
    subset: Option<Vec<usize>>,
    /// Reduced word overriding the default one.
    #[arg(long, global = true, value_delimiter = ',')]
    word: Option<Vec<usize>>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Degree cutoff.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// `canonical` or `paper-g2`.
    #[arg(long, global = true, default_value = "canonical")]
    normalization: String,
    /// Worker threads for `appendix` and `selftest`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan data and positive roots.
    Roots,
    /// Convex root order attached to a reduced word of the longest element.
    Enumerate,
    /// Parabolic factorization of the longest element with respect to `--subset`.
    Factorize {
        /// Ambient subset (default: all simple roots).
        #[arg(long, value_delimiter = ',')]
        ambient: Option<Vec<usize>>,
    },
    /// PBW expansion of the q-commutator of two root vectors.
    Qcomm {
        #[arg(long = "i")]
        i: usize,
        #[arg(long = "j")]
        j: usize,
    },
    /// PBW data: root vectors by default, else `--weight` monomials or an `--element` expansion.
    Pbw {
        /// Weight in simple-root coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Option<Vec<i64>>,
        /// Element in the text grammar, e.g. `E[1,2] + -q * E[2,1]`.
        #[arg(long)]
        element: Option<String>,
    },
    /// Braiding of the degree-one component of a piece.
    Braiding {
        #[arg(long, default_value_t = 1)]
        piece: usize,
    },
    /// Inverse shuffles and, with `--type`, the transmuted shuffle identity.
    Shuffle {
        #[arg(long = "i", default_value_t = 1)]
        i: usize,
        #[arg(long = "j", default_value_t = 1)]
        j: usize,
        #[arg(long, default_value_t = 1)]
        piece: usize,
        /// Longest product checked.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Equivariant quantization of every piece of the nilradical decomposition.
    Quantize,
    /// Left coideal check of C + n^q_k for every piece.
    #[command(name = "coideal-check")]
    CoidealCheck,
    /// Quantum Schubert cell of the Levi factor `--subset`.
    Schubert {
        #[arg(long, value_delimiter = ',')]
        ambient: Option<Vec<usize>>,
        /// Skip the twist by the longest element of the Levi factor.
        #[arg(long)]
        untwisted: bool,
    },
    /// Tangent spaces of the covariant first-order calculi.
    Tangent,
    /// Decomposition of V(lambda) ⊗ V(mu).
    #[command(name = "tensor-mult")]
    TensorMult {
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        mu: Vec<i64>,
    },
    /// Degree-three multiplicity table for maximal parabolics.
    Appendix,
    /// Runs the acceptance suite.
    Selftest {
        /// Report run times on stderr.
        #[arg(long)]
        timings: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::Enumerate => "enumerate",
            Command::Factorize { .. } => "factorize",
            Command::Qcomm { .. } => "qcomm",
            Command::Pbw { .. } => "pbw",
            Command::Braiding { .. } => "braiding",
            Command::Shuffle { .. } => "shuffle",
            Command::Quantize => "quantize",
            Command::CoidealCheck => "coideal-check",
            Command::Schubert { .. } => "schubert",
            Command::Tangent => "tangent",
            Command::TensorMult { .. } => "tensor-mult",
            Command::Appendix => "appendix",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = cli.common;
    let cfg = RunConfig {
        command: cli.command.name().into(),
        type_spec: c.type_spec,
        order: c.order,
        subset: c.subset,
        word: c.word,
        format: c.format,
        cutoff: c.cutoff,
        normalization: c.normalization,
    };
    let outcome = cfg.validate().and_then(|()| commands::dispatch(&cli.command, &cfg, c.jobs.max(1)));
    match outcome {
        Ok(out) => {
            match cfg.format {
                Format::Text => print!("{}", out.text),
                Format::Json => {
                    let doc = serde_json::json!({
                        "schema_version": SCHEMA_VERSION,
                        "config": cfg,
                        "ok": out.ok,
                        "result": out.json,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::RootSystem(_) | Error::Invalid(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
