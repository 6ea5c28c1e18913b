//! Command-line front end for `jetdiff-core`.
//!
//! [`run`] takes the argument vector and two output streams and returns the
//! process exit code: 0 on success, 1 on domain errors, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use jetdiff_core::FieldSpec;

pub mod commands;
pub mod input;
pub mod report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] jetdiff_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    FieldSpec::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "jetdiff", version, about = "Jet schemes, higher-order Jacobians and rank tests over Q and GF(p)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Ground field: Q or Fp:<prime>
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    pub field: FieldSpec,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized subcommands
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random trials
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Number of base variables (default: largest index seen in the input)
    #[arg(long, global = true)]
    pub s: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print d_0(f), ..., d_n(f)
    HsDerive {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
    },
    /// Check that jet partials commute with d_k
    VerifyIdentities {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
    },
    /// Higher-order Jacobian Jac_m of a list of polynomials
    Jacm {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        m: u32,
    },
    /// Block matrix D_n(Jac_m)
    Dnl {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Compare D_n(Jac(f)) with the Jacobian of the jet equations
    CheckFdbd {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
    },
    /// Equations of the jet scheme J_n(V(f))
    JetEquations {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
    },
    /// Rank of a matrix at a point
    RankAtPoint {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// All k-minors of a matrix
    Minors {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        k: usize,
        /// Refuse to enumerate more minors than this
        #[arg(long, default_value_t = jetdiff_core::linalg::DEFAULT_MINOR_CAP)]
        cap: u128,
    },
    /// Generic rank by random evaluation
    GenericRank {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Rank tests at a point of J_n(V(f))
    SingularCheck {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Certificate that the higher Nash blowup of J_n(V(f)) is not an isomorphism
    Nobile {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
    },
    /// Compare free ranks of order-m differentials for the jets of the affine line
    RankRemark {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let stream: &mut dyn Write = if code == 0 { out } else { err };
            let _ = stream.write_all(text.as_bytes());
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) => format!("error: {m}"),
                CliError::Domain(d) => {
                    let shown = d.to_string();
                    if shown.starts_with(d.name()) {
                        format!("error: {shown}")
                    } else {
                        format!("error: {}: {shown}", d.name())
                    }
                }
            };
            let _ = writeln!(err, "{msg}");
            e.exit_code()
        }
    }
}
