use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coxchar::group::{build_group, parse_subset};
use coxchar::theorem::{resolve_tables, verify_theorem_a, verify_theorem_c, OmegaScope, Options, Source};
use coxchar::{read_table_dir, shipped_tables_dir, AppError, Format, Report, TableFile};
use coxeter_core::coxgroup::GroupBox;
use coxeter_core::osalg::{omega_value, CoeffMemo, DenseOracle, OsAlgebra};
use coxeter_core::rootsys::RootOrder;

#[derive(Parser)]
#[command(name = "coxchar", version, about = "Descent-algebra and Orlik-Solomon characters of finite Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cross-check against independent computations
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Evaluate the Orlik-Solomon side on the identity and N more classes only
    #[arg(long, global = true, value_name = "N")]
    omega_sample: Option<usize>,
    /// Print wall-clock times in text reports
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check both identities for one parabolic subgroup W_L
    VerifyC {
        #[arg(long)]
        group: String,
        /// Generator labels, e.g. 1,2,4,5 or S
        #[arg(long = "L", value_name = "LIST")]
        subset: String,
        #[arg(long, conflicts_with = "solve", required_unless_present = "solve")]
        table: Option<PathBuf>,
        /// Find the characters by search instead of reading a table
        #[arg(long)]
        solve: bool,
    },
    /// Check the decomposition of the regular and Orlik-Solomon characters of W
    VerifyA {
        #[arg(long)]
        group: String,
        /// Directory of table files (default: the shipped tables)
        #[arg(long)]
        tables: Option<PathBuf>,
        /// Solve for shapes without a table
        #[arg(long)]
        solve: bool,
    },
    /// Value of the Orlik-Solomon character at an element
    Omega {
        #[arg(long)]
        group: String,
        /// Word in the generator labels, e.g. 12345 or 1'2345
        #[arg(long)]
        rep: String,
        #[arg(long)]
        top_only: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<i32, AppError> {
    let format = match cli.common.format {
        FormatArg::Text => Format::Text,
        FormatArg::Machine => Format::Machine,
    };
    let opts = Options {
        omega: cli.common.omega_sample.map_or(OmegaScope::Full, OmegaScope::Sample),
        oracle: cli.common.oracle,
    };
    let print = |r: &Report| {
        print!("{}", r.render(format, cli.common.timing));
        r.exit_code()
    };
    match &cli.command {
        Command::VerifyC { group, subset, table, solve } => {
            let gb = build_group(group)?;
            let l = parse_subset(gb.datum(), subset)?;
            let report = if *solve {
                verify_theorem_c(&gb, &l, Source::Solve, &opts)?
            } else {
                let path = table.as_ref().expect("clap requires --table or --solve");
                let resolved = TableFile::read(path)?.resolve(&gb).map_err(|e| AppError::Table(path.display().to_string(), e))?;
                verify_theorem_c(&gb, &l, Source::Table(&resolved), &opts)?
            };
            Ok(print(&report))
        }
        Command::VerifyA { group, tables, solve } => {
            let gb = build_group(group)?;
            let dir = tables.clone().unwrap_or_else(|| shipped_tables_dir().to_path_buf());
            let files = read_table_dir(&dir)?;
            let resolved = resolve_tables(&gb, &files)?;
            Ok(print(&verify_theorem_a(&gb, &resolved, *solve, &opts)?))
        }
        Command::Omega { group, rep, top_only } => {
            let gb = build_group(group)?;
            omega(&gb, rep, *top_only, cli.common.oracle, format)
        }
    }
}

fn omega(gb: &GroupBox, rep: &str, top_only: bool, oracle: bool, format: Format) -> Result<i32, AppError> {
    let word = if rep == "()" || rep == "id" { Vec::new() } else { gb.datum().parse_word(rep)? };
    let w = gb.from_word(&word)?;
    let os = OsAlgebra::new(gb.datum());
    let degrees: Vec<usize> = if top_only { vec![os.rank()] } else { (0..=os.rank()).collect() };
    let mut memo = CoeffMemo::new();
    let values: Vec<i64> = degrees.iter().map(|&d| omega_value(gb, &os, w, d, &mut memo)).collect();
    let total: i64 = values.iter().sum();
    let mut code = 0;
    let mut oracle_note = None;
    if oracle {
        match DenseOracle::new(gb.datum(), RootOrder::Canonical) {
            Ok(dense) => {
                let check: Vec<i64> = degrees.iter().map(|&d| oracle_trace(gb, &os, &dense, w, d)).collect();
                let ok = check == values;
                if !ok {
                    code = 1;
                }
                oracle_note = Some(if ok { "PASS".to_string() } else { format!("FAIL (oracle {check:?})") });
            }
            Err(_) => oracle_note = Some("unavailable for this group".into()),
        }
    }
    match format {
        Format::Text => {
            println!("{} w={} ({})", gb.datum().name(), gb.datum().format_word(&word), gb.format(w));
            for (d, v) in degrees.iter().zip(&values) {
                println!("degree {d}: {v}");
            }
            println!("total: {total}");
            if let Some(n) = oracle_note {
                println!("oracle: {n}");
            }
        }
        Format::Machine => {
            let mut obj = serde_json::json!({
                "group": gb.datum().name(),
                "rep": gb.format(w),
                "degrees": degrees,
                "values": values,
                "total": total,
            });
            if let Some(n) = oracle_note {
                obj["oracle"] = serde_json::Value::String(n);
            }
            println!("{obj}");
        }
    }
    Ok(code)
}

/// Trace of `w` on one degree, computed in the dense model.
fn oracle_trace(gb: &GroupBox, os: &OsAlgebra, dense: &DenseOracle, w: u32, degree: usize) -> i64 {
    let n = gb.datum().num_positive();
    let basis = os.nbc_basis(degree);
    let mut total = coxeter_core::Rational::from_integer(0);
    for (i, b) in basis.iter().enumerate() {
        let roots: Vec<usize> = b
            .roots()
            .iter()
            .map(|&p| {
                let img = gb.image(w, os.root_at(p));
                if img >= n {
                    img - n
                } else {
                    img
                }
            })
            .collect();
        if let Some((m, sign)) = os.monomial_from_roots(&roots) {
            let x = dense.expand(&m, basis).expect("NBC monomials span the quotient");
            total += x[i] * coxeter_core::Rational::from_integer(sign as i128);
        }
    }
    total.to_integer() as i64
}
