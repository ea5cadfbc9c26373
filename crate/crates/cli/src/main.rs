//! `venlab`: exact polynomial algebra, Gröbner membership, locally nilpotent
//! derivations and Vénéreau coordinate checks from the command line.
//!
//! Checks print one JSON report per line on stdout. Exit status: 0 all pass,
//! 1 any fail, 2 undetermined, 3 usage or input error.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use venlab::groebner::Budget;
use venlab::MonomialOrder;

const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "venlab", version, about = "Exact checks for polynomial coordinates and locally nilpotent derivations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Monomial order for printing, bases and normal forms: lex, grevlex or elim:<k>.
    #[arg(long, global = true, default_value = "grevlex", value_parser = parse_order)]
    pub order: MonomialOrder,
    /// Maximum total degree of a basis element before giving up.
    #[arg(long, global = true)]
    pub budget_degree: Option<u64>,
    /// Maximum number of basis elements before giving up.
    #[arg(long, global = true)]
    pub budget_basis: Option<usize>,
    /// Seed for randomized batteries.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include the Gröbner basis (order, variables, generators) in the output.
    #[arg(long, global = true)]
    pub emit_basis: bool,
    /// Print values as JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Variables in order; inferred from the inputs when omitted.
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Coefficient-ring variables, placed first in the context.
    #[arg(long, global = true, value_delimiter = ',')]
    pub constants: Vec<String>,
}

impl Global {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(d) = self.budget_degree {
            b.max_degree = d;
        }
        if let Some(n) = self.budget_basis {
            b.max_basis = n;
        }
        b
    }
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    s.parse::<MonomialOrder>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Polynomial arithmetic.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Gröbner bases.
    #[command(subcommand)]
    Groebner(GroebnerCommand),
    /// Ideal and subalgebra membership.
    #[command(subcommand)]
    Member(MemberCommand),
    /// Locally nilpotent derivations.
    #[command(subcommand)]
    Lnd(LndCommand),
    /// Vénéreau-type polynomials.
    #[command(subcommand)]
    Venereau(VenereauCommand),
}

#[derive(Subcommand, Debug)]
pub enum PolyCommand {
    /// Substitutes values for variables: `--at x=1,y=-1/2`.
    Eval {
        f: String,
        #[arg(long, value_delimiter = ',')]
        at: Vec<String>,
    },
    /// Partial derivative.
    Diff {
        f: String,
        #[arg(long)]
        var: String,
    },
    /// Substitutes polynomials for variables: `--map "y = y + x*z, z = z^2"`.
    Compose {
        f: String,
        #[arg(long)]
        map: String,
    },
    /// Canonical form in the active order.
    Print { f: String },
}

#[derive(Subcommand, Debug)]
pub enum GroebnerCommand {
    /// Reduced Gröbner basis of the ideal generated by `--gens`.
    Basis {
        #[arg(long)]
        gens: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum MemberCommand {
    /// `f ∈ (gens)`.
    Ideal {
        #[arg(long)]
        f: String,
        #[arg(long)]
        gens: String,
    },
    /// `f ∈ R[gens]`, with `R` the constants and optionally one of them inverted.
    Subalgebra {
        #[arg(long)]
        f: String,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        invert: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct DerivationArg {
    /// File of `D(var) = poly` lines with an optional `# constants: a, b` header.
    #[arg(long)]
    pub derivation: std::path::PathBuf,
    /// Iteration cap for the nilpotency certificate.
    #[arg(long, default_value_t = venlab::derivation::DEFAULT_NILPOTENCY_CAP)]
    pub cap: u32,
}

#[derive(Subcommand, Debug)]
pub enum LndCommand {
    /// `D^times(f)`.
    Apply {
        #[command(flatten)]
        d: DerivationArg,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Certifies local nilpotency by iterating on the generators.
    Nilpotent {
        #[command(flatten)]
        d: DerivationArg,
    },
    /// `exp(t·D)` on the variables, or on `--f`; `t` must lie in the kernel.
    Exp {
        #[command(flatten)]
        d: DerivationArg,
        #[arg(long)]
        t: String,
        #[arg(long)]
        f: Option<String>,
    },
    /// Dixmier projection `π` on the fiber variables, or on `--f`.
    Dixmier {
        #[command(flatten)]
        d: DerivationArg,
        #[arg(long)]
        slice: String,
        #[arg(long)]
        f: Option<String>,
    },
    /// Kernel generators from a slice and the polynomial-ring certificate.
    /// With `--random <n>`, runs `n` random triangular instances instead.
    Kernel {
        #[arg(long, required_unless_present = "random")]
        derivation: Option<std::path::PathBuf>,
        #[arg(long, required_unless_present = "random")]
        slice: Option<String>,
        #[arg(long, conflicts_with_all = ["derivation", "slice"])]
        random: Option<u32>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// venereau, bhatwadekar-dutta, daigle-freudenburg or lewis.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    /// `r(x)` in `λ = z² + r·z + s`.
    #[arg(long, default_value = "0")]
    pub r: String,
    /// `s(x)` in `λ = z² + r·z + s`.
    #[arg(long, default_value = "0")]
    pub s: String,
    /// `Q(x, V, W)` in `h = y + x·Q(x, v, w)`.
    #[arg(long, default_value = "V")]
    pub q: String,
    /// `Q₂(x, V, W)` of the lewis family.
    #[arg(long, default_value = "0")]
    pub q2: String,
    /// Coefficient of `(∂λ/∂z)·p` in `w`: `scaled` uses `x`, `printed` uses 2.
    #[arg(long, default_value = "scaled", value_parser = ["scaled", "printed"])]
    pub w_convention: String,
}

#[derive(Subcommand, Debug)]
pub enum VenereauCommand {
    /// Builds `λ, p, v, w, h` from `--r`, `--s`, `--q`.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Runs the residual, localized, jacobian and fibers checks.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_delimiter = ',', default_value = "residual,localized,jacobian,fibers",
              value_parser = ["residual", "localized", "jacobian", "fibers"])]
        checks: Vec<String>,
        /// Fiber sample points `c:d`, comma separated.
        #[arg(long, value_delimiter = ',')]
        samples: Vec<String>,
    },
    /// A named family member: `--family venereau --n 2`.
    Family {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("venlab: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
