use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use linksig::seifert::{link_invariants, random_seifert_with};
use linksig::signature::signature_function_with;
use linksig::verify::campaign::{run_campaign, CampaignConfig};
use linksig::verify::io::MatrixFile;
use linksig::verify::plot::{csv_string, svg};
use linksig::verify::{analyze, check_all, Options, TheoremId, SCHEMA};
use linksig::Result;

/// Exact Alexander polynomials and signature functions from Seifert matrices.
#[derive(Parser)]
#[command(name = "linksig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, components, higher Alexander polynomials and invariant factors.
    Invariants { file: PathBuf },
    /// The signature step function on the upper semicircle.
    Signature {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Exact samples per arc; all must agree.
        #[arg(long, default_value_t = 1)]
        samples_per_arc: usize,
    },
    /// Theorem reports; exit code 0 iff every applicable check passes.
    Check {
        file: PathBuf,
        /// Comma-separated subset of main,bound,bound2,cong,even,estmult,remark,module7.
        #[arg(long, value_delimiter = ',')]
        theorems: Option<Vec<TheoremId>>,
    },
    /// Random property campaign; exit code 0 iff nothing fails.
    Campaign {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        size_bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on the entries of the random symmetric part.
        #[arg(long, default_value_t = 2)]
        entry_bound: i64,
        /// Tighten one inequality to check that failures are reported.
        #[arg(long)]
        inject_fault: bool,
    },
    /// A random Seifert matrix as a matrix file.
    Random {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        components: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Apply a random unimodular congruence afterwards.
        #[arg(long)]
        congruence: bool,
    },
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Invariants { file } => {
            let f = MatrixFile::load(&file)?;
            let s = f.seifert()?;
            let inv = link_invariants(&s);
            print(&json!({
                "schema": SCHEMA,
                "name": f.name,
                "size": s.size(),
                "genus": s.genus(),
                "components": s.components(),
                "h": inv.h_index,
                "deltas": inv.deltas,
                "a_poly": inv.a_poly,
                "factors": inv.factors,
                "free_rank": inv.free_rank,
            }))?;
            Ok(true)
        }
        Command::Signature {
            file,
            svg: svg_out,
            csv: csv_out,
            samples_per_arc,
        } => {
            let f = MatrixFile::load(&file)?;
            let s = f.seifert()?;
            let sf = signature_function_with(&s, &link_invariants(&s), samples_per_arc)?;
            if let Some(p) = svg_out {
                fs::write(p, svg(&sf, &f.name))?;
            }
            if let Some(p) = csv_out {
                fs::write(p, csv_string(&sf)?)?;
            }
            print(&json!({
                "schema": SCHEMA,
                "name": f.name,
                "murasugi": sf.murasugi(),
                "step_function": sf,
            }))?;
            Ok(true)
        }
        Command::Check { file, theorems } => {
            let f = MatrixFile::load(&file)?;
            let s = f.seifert()?;
            let a = analyze(&f.name, &s, Options::default())?;
            let ids = theorems.unwrap_or_else(|| TheoremId::ALL.to_vec());
            let reports = check_all(&a, &ids);
            print(&reports)?;
            Ok(reports.iter().all(|r| r.overall))
        }
        Command::Campaign {
            count,
            size_bound,
            seed,
            entry_bound,
            inject_fault,
        } => {
            let mut cfg = CampaignConfig::new(count, size_bound, seed);
            cfg.entry_bound = entry_bound;
            cfg.inject_fault = inject_fault;
            let summary = run_campaign(&cfg);
            print(&summary)?;
            Ok(summary.passed())
        }
        Command::Random {
            genus,
            components,
            bound,
            seed,
            congruence,
        } => {
            let s = random_seifert_with(genus, components as usize, bound, seed, congruence);
            let name = format!("random-g{genus}-mu{components}-seed{seed}");
            println!("{}", MatrixFile::new(name, &s).to_json()?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("linksig: {e}");
            ExitCode::from(2)
        }
    }
}
