//! `qzeta`: batch front-end for the verification toolkit.
//!
//! Exit codes: 0 pass, 1 check failed, 2 invalid input, 3 precision exhausted.

mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qzeta::arith::Rat;
use qzeta::linform::{Eps, Params};
use qzeta::Error;

use args::{parse_q, parse_range};
use commands::ProbeKind;
use output::{Format, Rendered};

#[derive(Parser, Debug)]
#[command(name = "qzeta", version, about = "Linear forms in q-zeta values: exact construction and verification")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "QZETA_PREC", default_value_t = 256)]
    prec: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Ar {
    #[arg(long = "A")]
    a: u32,
    #[arg(long)]
    r: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Linear-form identity and denominator check for one (A, r, n, eps, q).
    Linform {
        #[command(flatten)]
        ar: Ar,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_eps)]
        eps: Eps,
        #[arg(long, value_parser = parse_q)]
        q: Rat,
        /// Residual tolerance 10^(−tol).
        #[arg(long, default_value_t = 40)]
        tol: u32,
    },
    /// The bound δ(A, r); without --r, the best integer r.
    Delta {
        #[arg(long = "A")]
        a: u32,
        #[arg(long)]
        r: Option<u32>,
    },
    /// The asymptotic constant of δ(A, r)/√A.
    DeltaConst,
    /// Growth of S_n^[eps](q).
    #[command(name = "slope-S")]
    SlopeS {
        #[command(flatten)]
        ar: Ar,
        #[arg(long, value_parser = parse_eps, default_value = "1")]
        eps: Eps,
        #[arg(long, value_parser = parse_q)]
        q: Rat,
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        /// Fail when the fitted relative gap reaches this value.
        #[arg(long)]
        max_gap: Option<f64>,
    },
    /// Upper-bound check on the growth of P_s^[eps](q).
    #[command(name = "slope-P")]
    SlopeP {
        #[command(flatten)]
        ar: Ar,
        #[arg(long, value_parser = parse_eps, default_value = "1")]
        eps: Eps,
        #[arg(long, value_parser = parse_q)]
        q: Rat,
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        #[arg(long, default_value_t = 0.02)]
        margin: f64,
    },
    /// Growth of the denominators D_n(q).
    #[command(name = "slope-D")]
    SlopeD {
        #[command(flatten)]
        ar: Ar,
        #[arg(long, value_parser = parse_q)]
        q: Rat,
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        /// Fail when the last relative gap reaches this value.
        #[arg(long)]
        max_gap: Option<f64>,
    },
    /// q-Ball and q-BGN series, their ζ_q(3) decomposition and denominator.
    Zeta3 {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_q)]
        q: Rat,
        #[arg(long, default_value_t = 40)]
        tol: u32,
    },
    /// Express E_weight (or ζ_q(weight) with --zeta) in the E_4/E_6 monomials.
    Eisenstein {
        #[arg(long)]
        weight: u32,
        /// Highest coefficient index compared.
        #[arg(long, default_value_t = 60)]
        verify: usize,
        /// Highest coefficient index used to solve; defaults to the square system.
        #[arg(long)]
        solve: Option<usize>,
        #[arg(long)]
        zeta: bool,
    },
    /// Reduced-denominator probes; always exits 0 on completion.
    DenomProbe {
        #[command(flatten)]
        ar: Ar,
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        #[arg(long, value_enum, default_value_t = ProbeKind::Conjecture)]
        kind: ProbeKind,
    },
}

fn parse_eps(s: &str) -> Result<Eps, String> {
    match s.trim() {
        "0" => Ok(Eps::Even),
        "1" => Ok(Eps::Odd),
        _ => Err(format!("eps must be 0 or 1, got {s:?}")),
    }
}

/// A set of n values given as a range or list.
#[derive(Clone, Debug)]
struct NList(Vec<u32>);

fn parse_n_list(s: &str) -> Result<NList, String> {
    parse_range(s).map(NList)
}

fn validate(a: u32, r: u32) -> qzeta::Result<()> {
    Params::check_ar(a, r)
}

fn run(cli: &Cli) -> qzeta::Result<Rendered> {
    let prec = cli.prec;
    if prec < qzeta::arith::bigfloat::MIN_PRECISION {
        return Err(Error::InvalidParams(format!("precision must be at least {} bits", qzeta::arith::bigfloat::MIN_PRECISION)));
    }
    match &cli.command {
        Command::Linform { ar, n, eps, q, tol } => {
            let p = Params::new(ar.a, ar.r, *n)?;
            commands::linform(p, *eps, q, prec, *tol)
        }
        Command::Delta { a, r } => commands::delta(*a, *r, prec),
        Command::DeltaConst => commands::delta_const(prec),
        Command::SlopeS { ar, eps, q, n, max_gap } => {
            validate(ar.a, ar.r)?;
            commands::slope_s(ar.a, ar.r, *eps, q, &n.0, prec, *max_gap)
        }
        Command::SlopeP { ar, eps, q, n, margin } => {
            validate(ar.a, ar.r)?;
            commands::slope_p(ar.a, ar.r, *eps, q, &n.0, *margin)
        }
        Command::SlopeD { ar, q, n, max_gap } => {
            validate(ar.a, ar.r)?;
            commands::slope_d(ar.a, ar.r, q, &n.0, *max_gap)
        }
        Command::Zeta3 { n, q, tol } => commands::zeta3(*n, q, prec, *tol),
        Command::Eisenstein { weight, verify, solve, zeta } => commands::eisenstein(*weight, *verify, *solve, *zeta),
        Command::DenomProbe { ar, n, kind } => {
            validate(ar.a, ar.r)?;
            commands::denom_probe(ar.a, ar.r, &n.0, *kind)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidParams(_)
        | Error::Parse(_)
        | Error::IndexOutOfRange(_)
        | Error::OddHalfPower
        | Error::PoleAtPoint
        | Error::PoleAtZero => 2,
        Error::PrecisionExhausted(_) | Error::Divergence => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            if let Err(e) = rendered.write(cli.format, cli.output.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if rendered.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed: {}", rendered.failures.join(", "));
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code_for(&Error::InvalidParams("x".into())), 2);
        assert_eq!(exit_code_for(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code_for(&Error::PrecisionExhausted("x".into())), 3);
        assert_eq!(exit_code_for(&Error::Divergence), 3);
        assert_eq!(exit_code_for(&Error::InconsistentSystem("x".into())), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
