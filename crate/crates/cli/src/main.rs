use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use prm_core::codes::{evaluate_on, generator_matrix, Codeword, Family, PointList};
use prm_core::linalg;
use prm_core::minwt::{
    self, count_report, prm_form_count, prm_witness_codeword, prm_witness_poly, rm_form_count, rm_witness_poly,
    subsets, ts_decompose, AffineForm, Kind, MinWtWitness,
};
use prm_core::oracle::{self, brute_min_weight_words, weight_distribution};
use prm_core::poly::{LinearForm, Poly};
use prm_core::verify::{run_sweep, table_rows, FormulaSet, SweepConfig};
use prm_core::Field;

#[derive(Parser)]
#[command(name = "prm", version, about = "Generalized and projective Reed-Muller codes over GF(q)")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Maximum number of codewords the oracle may enumerate
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_GUARD)]
    guard: u128,
    /// Seed for random witness generation
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Prm,
    Rm,
    All,
}

impl FamilyArg {
    fn families(self) -> Vec<Family> {
        match self {
            FamilyArg::Prm => vec![Family::Prm],
            FamilyArg::Rm => vec![Family::Rm],
            FamilyArg::All => vec![Family::Prm, Family::Rm],
        }
    }

    fn single(self) -> Result<Family, CliError> {
        match self {
            FamilyArg::Prm => Ok(Family::Prm),
            FamilyArg::Rm => Ok(Family::Rm),
            FamilyArg::All => Err(CliError::Usage("this command needs --family prm or --family rm".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form parameters of PRM codes over a parameter range
    Table {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Also build each generator matrix and report its rank
        #[arg(long)]
        rank: bool,
    },
    /// Check every formula against exhaustive enumeration
    Verify {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, value_enum, default_value = "all")]
        family: FamilyArg,
        /// Maximum number of witness or incidence tuples to enumerate
        #[arg(long, default_value_t = minwt::WITNESS_GUARD)]
        witness_guard: u128,
    },
    /// Generator matrix of a code
    Genmat {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Projective reduction of a polynomial
    Reduce {
        /// Polynomial such as "2*X0*X1^2 + X2^3"
        poly: String,
        #[arg(long)]
        q: u64,
        /// Projective dimension; the polynomial uses X0..Xm
        #[arg(long)]
        m: usize,
    },
    /// A random minimum-weight witness and its codeword
    Witness {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Number of minimum-weight PRM codewords from both closed forms
    CountMinwt {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        m: u64,
        /// Also count by exhaustive enumeration
        #[arg(long)]
        oracle: bool,
    },
    /// Fiber check (s > 0) or flag bijection check (s = 0)
    CheckFibers {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = minwt::WITNESS_GUARD)]
        witness_guard: u128,
    },
    /// Weight distribution by exhaustive enumeration
    Distribution {
        #[command(flatten)]
        code: CodeArgs,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Field orders, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3])]
    q: Vec<u64>,
    /// Projective or affine dimension range, "a..b" (inclusive) or a single value
    #[arg(long, default_value = "1..2", value_parser = parse_range)]
    m: (i64, i64),
    /// Order range; every valid order when omitted
    #[arg(long, visible_alias = "order", value_parser = parse_range)]
    d: Option<(i64, i64)>,
}

#[derive(clap::Args)]
struct CodeArgs {
    #[arg(long, value_enum, default_value = "prm")]
    family: FamilyArg,
    #[arg(long)]
    q: u64,
    /// Order: d for PRM codes, nu for RM codes
    #[arg(long, visible_aliases = ["order", "nu"])]
    d: u32,
    #[arg(long)]
    m: usize,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("invalid number '{t}': {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((parse(a)?, parse(b)?))
        }
        None => {
            let v = parse(s)?;
            Ok((v, v))
        }
    }
}

enum CliError {
    Usage(String),
    Lib(prm_core::Error),
    Io(std::io::Error),
}

impl From<prm_core::Error> for CliError {
    fn from(e: prm_core::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Text to emit plus whether the command's own check succeeded.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn sweep_config(args: &SweepArgs, families: Vec<Family>, guard: u128, witness_guard: u128) -> Result<SweepConfig, CliError> {
    let (lo, hi) = args.m;
    if lo < 1 && lo <= hi {
        return Err(CliError::Usage(format!("m must be at least 1, got {lo}")));
    }
    Ok(SweepConfig {
        qs: args.q.clone(),
        ms: (lo.max(1)..=hi).map(|m| m as u64).collect(),
        orders: args.d,
        families,
        guard,
        witness_guard,
    })
}

fn cmd_table(cli: &Cli, sweep: &SweepArgs, rank: bool) -> Result<Output, CliError> {
    let cfg = sweep_config(sweep, vec![Family::Prm], cli.guard, 0)?;
    let rows = table_rows(&cfg, rank)?;
    if cli.format == Some(Format::Json) {
        return Ok(Output::ok(json(&rows)));
    }
    let mut s = String::from("q,m,d,length,alpha,beta,gamma,delta,rank,distance,minwt_count,agree\n");
    for r in &rows {
        let rank = r.rank.as_ref().map(BigInt::to_string).unwrap_or_default();
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.q, r.m, r.d, r.length, r.alpha, r.beta, r.gamma, r.delta, rank, r.distance, r.minwt_count, r.agree
        )
        .unwrap();
    }
    Ok(Output::ok(s))
}

fn cmd_verify(cli: &Cli, sweep: &SweepArgs, family: FamilyArg, witness_guard: u128) -> Result<Output, CliError> {
    let cfg = sweep_config(sweep, family.families(), cli.guard, witness_guard)?;
    let report = run_sweep(&cfg, &FormulaSet::default())?;
    let text = match cli.format {
        Some(Format::Json) => json(&report),
        Some(Format::Csv) => {
            let mut s = String::from("status,family,q,m,order,check,detail\n");
            for o in &report.outcomes {
                let t = o.tuple;
                writeln!(s, "{},{},{},{},{},{},\"{}\"", o.status, t.family, t.q, t.m, t.order, o.check, o.detail).unwrap();
            }
            s
        }
        None => report.to_text(),
    };
    Ok(Output {
        text,
        ok: report.all_passed(),
    })
}

fn cmd_genmat(cli: &Cli, code: &CodeArgs) -> Result<Output, CliError> {
    let field = Field::from_order(code.q)?;
    let g = generator_matrix(code.family.single()?, &field, code.d, code.m)?;
    Ok(Output::ok(match cli.format {
        Some(Format::Json) => json(&g.to_json()),
        _ => g.to_csv(),
    }))
}

fn cmd_reduce(cli: &Cli, text: &str, q: u64, m: usize) -> Result<Output, CliError> {
    let field = Field::from_order(q)?;
    let reduced = Poly::parse(text, &field, m + 1)?.reduce_projective();
    Ok(Output::ok(match cli.format {
        Some(Format::Json) => json(&serde_json::json!({ "input": text, "reduced": reduced.to_string() })),
        _ => format!("{reduced}\n"),
    }))
}

fn random_independent(rng: &mut ChaCha8Rng, q: u32, field: &Field, n: usize, k: usize) -> Vec<Vec<u32>> {
    loop {
        let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        if linalg::is_independent(field, &rows) {
            return rows;
        }
    }
}

#[derive(Serialize)]
struct WitnessOutput<'a> {
    witness: &'a MinWtWitness,
    polynomial: String,
    codeword: &'a Codeword,
    weight: usize,
}

fn cmd_witness(cli: &Cli, code: &CodeArgs) -> Result<Output, CliError> {
    let field = Field::from_order(code.q)?;
    let q = field.q();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let (witness, poly, codeword) = match code.family.single()? {
        Family::Prm => {
            let ts = ts_decompose(code.d as i64, code.q, code.m as u64, Kind::Prm)?;
            let forms = random_independent(&mut rng, q, &field, code.m + 1, prm_form_count(ts))
                .into_iter()
                .map(LinearForm::new)
                .collect::<Result<Vec<_>, _>>()?;
            let omega_sets = subsets(q, ts.s as usize);
            let omegas = omega_sets[rng.gen_range(0..omega_sets.len())].clone();
            let w = MinWtWitness::Prm { forms, omegas };
            let points = PointList::projective(&field, code.m)?;
            let poly = prm_witness_poly(&w, &field, code.d, code.m)?.reduce_projective();
            let c = prm_witness_codeword(&w, &field, code.d, code.m, &points)?;
            (w, poly, c)
        }
        Family::Rm => {
            let ts = ts_decompose(code.d as i64, code.q, code.m as u64, Kind::Rm)?;
            let forms = random_independent(&mut rng, q, &field, code.m, rm_form_count(ts))
                .into_iter()
                .map(|linear| AffineForm {
                    linear,
                    constant: rng.gen_range(0..q),
                })
                .collect();
            let omega_sets = subsets(q, ts.s as usize);
            let omegas = omega_sets[rng.gen_range(0..omega_sets.len())].clone();
            let w = MinWtWitness::Rm {
                forms,
                omegas,
                omega0: rng.gen_range(1..q),
            };
            let poly = rm_witness_poly(&w, &field, code.d, code.m)?;
            let c = evaluate_on(&poly, &PointList::affine(&field, code.m)?)?;
            (w, poly, c)
        }
    };
    Ok(Output::ok(match cli.format {
        Some(Format::Json) => json(&WitnessOutput {
            witness: &witness,
            polynomial: poly.to_string(),
            codeword: &codeword,
            weight: codeword.weight(),
        }),
        _ => format!("{poly}\n{}\n", codeword.to_csv()),
    }))
}

fn cmd_count(cli: &Cli, q: u64, d: i64, m: u64, with_oracle: bool) -> Result<Output, CliError> {
    let brute = if with_oracle {
        let field = Field::from_order(q)?;
        let g = generator_matrix(Family::Prm, &field, d.try_into().unwrap_or(0), m as usize)?;
        Some(BigInt::from(brute_min_weight_words(&g, cli.guard)?.1.len()))
    } else {
        None
    };
    let r = count_report(q, d, m, brute)?;
    let text = match cli.format {
        Some(Format::Csv) => {
            let brute = r.brute_count.as_ref().map(BigInt::to_string).unwrap_or_default();
            format!(
                "q,d,m,t,s,formula_count,alt_count,brute_count,agree\n{},{},{},{},{},{},{},{},{}\n",
                r.q, r.d, r.m, r.t, r.s, r.formula_count, r.alt_count, brute, r.agree
            )
        }
        _ => json(&r),
    };
    Ok(Output { text, ok: r.agree })
}

fn cmd_check_fibers(q: u64, d: u32, m: usize, witness_guard: u128) -> Result<Output, CliError> {
    let field = Field::from_order(q)?;
    let ts = ts_decompose(d as i64, q, m as u64, Kind::Prm)?;
    if ts.s > 0 {
        let r = minwt::support_fiber_check(&field, d, m, witness_guard)?;
        Ok(Output { text: json(&r), ok: r.ok })
    } else {
        let r = minwt::tau_bijection_check(&field, d, m, witness_guard)?;
        Ok(Output { text: json(&r), ok: r.ok })
    }
}

fn cmd_distribution(cli: &Cli, code: &CodeArgs) -> Result<Output, CliError> {
    let field = Field::from_order(code.q)?;
    let g = generator_matrix(code.family.single()?, &field, code.d, code.m)?;
    let dist = weight_distribution(&g, cli.guard)?;
    Ok(Output::ok(match cli.format {
        Some(Format::Csv) => {
            let mut s = String::from("weight,count\n");
            for (w, c) in &dist.counts {
                writeln!(s, "{w},{c}").unwrap();
            }
            s
        }
        _ => json(&dist),
    }))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Table { sweep, rank } => cmd_table(cli, sweep, *rank),
        Command::Verify {
            sweep,
            family,
            witness_guard,
        } => cmd_verify(cli, sweep, *family, *witness_guard),
        Command::Genmat { code } => cmd_genmat(cli, code),
        Command::Reduce { poly, q, m } => cmd_reduce(cli, poly, *q, *m),
        Command::Witness { code } => cmd_witness(cli, code),
        Command::CountMinwt { q, d, m, oracle } => cmd_count(cli, *q, *d, *m, *oracle),
        Command::CheckFibers {
            q,
            d,
            m,
            witness_guard,
        } => cmd_check_fibers(*q, *d, *m, *witness_guard),
        Command::Distribution { code } => cmd_distribution(cli, code),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.text)?,
            None => print!("{}", out.text),
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let msg = match e {
                CliError::Usage(m) => m,
                CliError::Lib(e) => e.to_string(),
                CliError::Io(e) => format!("i/o error: {e}"),
            };
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3"), Ok((1, 3)));
        assert_eq!(parse_range("1..=3"), Ok((1, 3)));
        assert_eq!(parse_range("4"), Ok((4, 4)));
        assert!(parse_range("a..3").is_err());
    }
}
