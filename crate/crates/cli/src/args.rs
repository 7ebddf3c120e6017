use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hessperm::{BigInt, Family, Method, TheoremId};

#[derive(Debug, Parser)]
#[command(name = "hessperm", version, about = "Exact permanents of Hessenberg matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a family matrix as JSON or CSV.
    Gen(GenArgs),
    /// Compute the permanent of a family matrix or a JSON matrix file.
    Per(PerArgs),
    /// Check the permanent identities over a range of orders.
    Verify(VerifyArgs),
    /// Time every evaluator on the same matrices and compare their values.
    Bench(BenchArgs),
    /// Compare each contraction step against its closed form and the published displays.
    Trace(TraceArgs),
    /// Check per(A) = det(A') on random tridiagonal matrices.
    Perdet(PerdetArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Paper,
    Corrected,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// H, K, M, N, LEE, S or TRIDIAG.
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    /// TRIDIAG subdiagonal, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub sub: Option<Vec<BigInt>>,
    /// TRIDIAG main diagonal, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub main: Option<Vec<BigInt>>,
    /// TRIDIAG superdiagonal, comma separated.
    #[arg(long = "super", value_delimiter = ',', allow_hyphen_values = true)]
    pub sup: Option<Vec<BigInt>>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub matrix: FamilyArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: MatrixFormat,
}

#[derive(Debug, Args)]
pub struct PerArgs {
    #[command(flatten)]
    pub matrix: FamilyArgs,
    /// Matrix JSON file; `-` reads standard input.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "contraction")]
    pub method: Method,
    /// Print every contraction step and intermediate matrix.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma separated: T1, T2, T3, T4, LEE.
    #[arg(long, value_delimiter = ',', default_value = "T1,T2,T3,T4,LEE")]
    pub theorems: Vec<TheoremId>,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
    #[arg(long, default_value = "contraction")]
    pub method: Method,
    /// Orders up to this are recomputed with Ryser's formula.
    #[arg(long, default_value_t = 16)]
    pub oracle_max_n: usize,
    /// Right-hand side used for T3.
    #[arg(long, value_enum, default_value = "paper")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "H,K,M,N")]
    pub families: Vec<Family>,
    #[arg(long, value_delimiter = ',', default_value = "8,16,24")]
    pub n_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "contraction,hessenberg,ryser,naive")]
    pub methods: Vec<Method>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct PerdetArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = hessperm::verify::PERDET_MAX_N)]
    pub n_max: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_band_values_parse() {
        let cli = Cli::try_parse_from([
            "hessperm", "gen", "--family", "TRIDIAG", "--sub", "-1,2", "--main", "3,-4,5", "--super", "6,-7",
        ])
        .unwrap();
        let Command::Gen(g) = cli.command else { panic!() };
        assert_eq!(g.matrix.main.unwrap(), vec![3.into(), BigInt::from(-4), 5.into()]);
    }

    #[test]
    fn theorem_list_parses_suffixes() {
        let cli = Cli::try_parse_from(["hessperm", "verify", "--theorems", "T1,T3:corrected"]).unwrap();
        let Command::Verify(v) = cli.command else { panic!() };
        assert_eq!(v.theorems, vec![TheoremId::T1, TheoremId::T3_CORRECTED]);
    }
}
