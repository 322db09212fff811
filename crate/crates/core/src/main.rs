use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use hodgecalc::cache::IntegralCache;
use hodgecalc::format;
use hodgecalc::hodge::LambdaMonomial;
use hodgecalc::psi::PsiEngine;
use hodgecalc::series::{Calculator, Convention, IndexVector, PPolynomial};
use hodgecalc::verify::{self, Suite, VerifyOptions};
use hodgecalc::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "hodgecalc", version, about = "Exact ψ/λ intersection numbers and the P_a polynomials")]
struct Cli {
    /// Persistent integral cache, loaded before and saved after the run.
    #[arg(long, global = true, env = "HODGECALC_CACHE")]
    cache: Option<PathBuf>,

    /// Worker threads for independent index vectors (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ∫_{M̄_{g,n}} ψ_1^{d_1} ... ψ_n^{d_n}
    Psi {
        #[arg(long)]
        g: u32,
        /// Comma-separated exponents, one per marking.
        #[arg(long, allow_hyphen_values = true)]
        exp: String,
    },
    /// ∫_{M̄_{g,n}} ψ-monomial times a product of λ classes
    Hodge {
        #[arg(long)]
        g: u32,
        #[arg(long, allow_hyphen_values = true)]
        exp: String,
        /// Comma-separated λ indices, e.g. `2,1` for λ_2 λ_1.
        #[arg(long, default_value = "")]
        lambda: String,
    },
    /// One polynomial P_a.
    Pa {
        /// Comma-separated index vector; "" is the empty vector.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Print P_a(-α-1, t) instead of P_a(α, t).
        #[arg(long)]
        shifted: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 2)]
        guard: usize,
    },
    /// Every P_a(-α-1, t) with |a| <= max.
    Table {
        #[arg(long, default_value_t = 4)]
        max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 2)]
        guard: usize,
    },
    /// Run a self-check suite.
    Verify {
        /// theorem01, prop12, prop21, prop22, cor23, mumford or all
        suite: String,
        #[arg(long, default_value_t = 4)]
        max: u32,
        #[arg(long, default_value_t = 2)]
        guard: usize,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Manage the integral cache given by --cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Stats,
    /// Write the cache contents to a file, keys sorted.
    Export { path: PathBuf },
    /// Merge a file into the cache; nothing is imported on any conflict.
    Import { path: PathBuf },
    Clear,
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.parse::<IndexVector>().map(|v| v.entries().to_vec())
}

fn open_cache(path: Option<&Path>) -> Result<Arc<IntegralCache>> {
    match path {
        Some(p) if p.exists() => Ok(Arc::new(IntegralCache::load(p)?)),
        _ => Ok(Arc::new(IntegralCache::new())),
    }
}

fn render(p: &PPolynomial, fmt: Format) -> String {
    match fmt {
        Format::Text => format::to_text(p),
        Format::Latex => format::to_latex(p),
        Format::Json => format::to_json(p).to_string(),
    }
}

fn table_line(p: &PPolynomial, fmt: Format) -> String {
    match fmt {
        Format::Json => render(p, fmt),
        _ => format!("{} = {}", format::label(p), render(p, fmt)),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cache = open_cache(cli.cache.as_deref())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let mut ok = true;
    let mut dirty = true;

    match cli.command {
        Command::Psi { g, exp } => {
            let value = PsiEngine::new(cache.clone()).integral(g, &parse_list(&exp)?)?;
            println!("{value}");
        }
        Command::Hodge { g, exp, lambda } => {
            let psi = parse_list(&exp)?;
            let lam = LambdaMonomial::from_indices(&parse_list(&lambda)?);
            let calc = Calculator::new(cache.clone());
            println!("{}", calc.hodge().hodge_integral(g, psi.len(), &psi, &lam)?);
        }
        Command::Pa { a, shifted, format: fmt, guard } => {
            let a: IndexVector = a.parse()?;
            let calc = Calculator::new(cache.clone());
            let mut p = calc.assemble_pa(&a, guard)?;
            if shifted {
                p = p.in_convention(Convention::AlphaShifted);
            }
            println!("{}", render(&p, fmt));
        }
        Command::Table { max, format: fmt, guard } => {
            let calc = Calculator::new(cache.clone());
            let items: Vec<IndexVector> = (0..=max).flat_map(IndexVector::partitions).collect();
            let lines = pool.install(|| {
                items
                    .par_iter()
                    .map(|a| {
                        let p = calc.assemble_pa(a, guard)?;
                        Ok(table_line(&p.in_convention(Convention::AlphaShifted), fmt))
                    })
                    .collect::<Result<Vec<String>>>()
            })?;
            for line in lines {
                println!("{line}");
            }
        }
        Command::Verify { suite, max, guard, order } => {
            let suite: Suite = suite.parse()?;
            let opts = VerifyOptions { max_weight: max, guard, order, ..VerifyOptions::default() };
            let calc = Calculator::new(cache.clone());
            let reports = pool.install(|| verify::run(&calc, suite, &opts));
            for report in &reports {
                println!("{report}");
                ok &= report.passed();
            }
            if reports.len() > 1 {
                println!("{} all", if ok { "PASS" } else { "FAIL" });
            }
        }
        Command::Cache { action } => match action {
            CacheAction::Stats => {
                let s = cache.stats();
                println!("psi {}", s.psi_keys);
                println!("hodge {}", s.hodge_keys);
                dirty = false;
            }
            CacheAction::Export { path } => {
                cache.save(&path)?;
                dirty = false;
            }
            CacheAction::Import { path } => {
                cache.merge(&IntegralCache::load(&path)?)?;
            }
            CacheAction::Clear => cache.clear(),
        },
    }

    if dirty {
        if let Some(path) = &cli.cache {
            cache.save(path)?;
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
