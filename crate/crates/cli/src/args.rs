use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "polycauchy",
    version,
    about = "Projective-Cauchy densities over polygons"
)]
pub struct Cli {
    /// Emit one JSON object instead of line-oriented text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a density at a point.
    Pdf(PdfArgs),
    /// Probability mass of a polygon.
    Integrate(IntegrateArgs),
    /// Draw exact samples from a density truncated to a polygon.
    Sample(SampleArgs),
    /// Solid angle subtended by a polygon on the plane z = 1.
    SolidAngle(PolyArgs),
    /// Cross-check integrals and samplers against independent oracles.
    Verify(VerifyArgs),
    /// Re-run a sample manifest and confirm the output digest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct PdfArgs {
    /// Evaluation point `x1,x2`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    pub point: (f64, f64),
    /// Location-scale-correlation parameters `a1,a2,b1,b2,rho`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_lsc, conflicts_with = "nu")]
    pub lsc: Option<[f64; 5]>,
    /// Student degrees of freedom (1 is the Cauchy density).
    #[arg(long, value_parser = positive_u32())]
    pub nu: Option<u32>,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// Polygon document (JSON); `-` reads standard input.
    #[arg(long)]
    pub poly: PathBuf,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Overrides any `lsc` entry in the polygon document.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_lsc, conflicts_with = "nu")]
    pub lsc: Option<[f64; 5]>,
    /// Student degrees of freedom; integrates by Monte Carlo.
    #[arg(long, requires_all = ["samples", "seed"], value_parser = positive_u32())]
    pub nu: Option<u32>,
    #[arg(long, value_parser = positive_u64())]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_lsc)]
    pub lsc: Option<[f64; 5]>,
    #[arg(long, value_parser = positive_u64())]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    /// Also write a run manifest here.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_lsc, conflicts_with = "nu")]
    pub lsc: Option<[f64; 5]>,
    /// Also check Student Monte Carlo against quadrature.
    #[arg(long, value_parser = positive_u32())]
    pub nu: Option<u32>,
    #[arg(long, default_value_t = 100_000, value_parser = positive_u64())]
    pub samples: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Test these `x1,x2` rows (as written by `sample`) instead of drawing
    /// fresh ones; `-` reads standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Swap the largest and smallest bin masses (power check).
    #[arg(long, hide = true)]
    pub tamper_masses: bool,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

fn positive_u32() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(1..)
}

fn positive_u64() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    match parse_reals(s)?[..] {
        [x1, x2] => Ok((x1, x2)),
        _ => Err("expected two comma-separated numbers".into()),
    }
}

fn parse_lsc(s: &str) -> Result<[f64; 5], String> {
    parse_reals(s)?
        .try_into()
        .map_err(|_| "expected five comma-separated numbers a1,a2,b1,b2,rho".into())
}
