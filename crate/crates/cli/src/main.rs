use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kromatic::kromatic::Engine;
use kromatic::{BasisId, Partition};
use kromatic_cli::{
    compare, default_degree, expand, involution, parse_graph, parse_poset, positivity, table1_file,
    tableaux, trees_report, CliError, Report,
};

/// Kromatic symmetric functions of graphs, K-theoretic bases and
/// Grothendieck P-tableaux, in exact arithmetic.
#[derive(Parser)]
#[command(name = "kromatic", version)]
struct Cli {
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand X̄ of a graph in one basis.
    Expand {
        /// Inline JSON, @file or a fixture name such as path:3 or claw.
        graph: String,
        #[arg(short, long, default_value = "km")]
        basis: String,
        /// Degree cap; defaults to total weight + 3.
        #[arg(short, long)]
        degree: Option<usize>,
        /// direct, covers, delcon or auto.
        #[arg(short, long, default_value = "auto")]
        engine: String,
    },
    /// Recompute the five reference rows and diff them against the golden file.
    Table1 {
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Comma-separated engines used for the km rows.
        #[arg(long, default_value = "covers,delcon")]
        engines: String,
    },
    /// Compare two graphs' chromatic and Kromatic functions.
    Compare {
        left: String,
        right: String,
        #[arg(short, long)]
        degree: Option<usize>,
    },
    /// Search for trees with equal Kromatic functions.
    Trees {
        #[arg(long = "max-n", default_value_t = 7)]
        max_n: usize,
    },
    /// Expansion in a filtered family with its most negative coefficient.
    Positivity {
        graph: String,
        #[arg(short, long, default_value = "ket")]
        family: String,
        #[arg(short, long)]
        degree: Option<usize>,
    },
    /// List the Grothendieck P-tableaux of one shape.
    Tableaux {
        poset: String,
        /// Shape such as 2,1.
        shape: String,
    },
    /// Check the P-array identity and the sign-reversing involution.
    Involution { poset: String, shape: String },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let usage = |e: kromatic::Error| CliError::Usage(e.to_string());
    match &cli.command {
        Command::Expand {
            graph,
            basis,
            degree,
            engine,
        } => {
            let g = parse_graph(graph)?;
            let basis: BasisId = basis.parse().map_err(usage)?;
            let engine: Engine = engine.parse().map_err(usage)?;
            expand(
                &g,
                basis,
                degree.unwrap_or_else(|| default_degree(&g)),
                engine,
            )
        }
        Command::Table1 { golden, engines } => {
            let engines = engines
                .split(',')
                .map(|e| e.trim().parse::<Engine>().map_err(usage))
                .collect::<Result<Vec<_>, _>>()?;
            table1_file(golden.as_deref(), &engines)
        }
        Command::Compare {
            left,
            right,
            degree,
        } => {
            let g = parse_graph(left)?;
            let h = parse_graph(right)?;
            let d = degree.unwrap_or_else(|| default_degree(&g).max(default_degree(&h)));
            compare(&g, &h, d)
        }
        Command::Trees { max_n } => trees_report(*max_n),
        Command::Positivity {
            graph,
            family,
            degree,
        } => {
            let g = parse_graph(graph)?;
            let family: BasisId = family.parse().map_err(usage)?;
            positivity(&g, family, degree.unwrap_or_else(|| default_degree(&g)))
        }
        Command::Tableaux { poset, shape } => {
            let p = parse_poset(poset)?;
            let shape: Partition = shape.parse().map_err(usage)?;
            tableaux(&p, &shape)
        }
        Command::Involution { poset, shape } => {
            let p = parse_poset(poset)?;
            let shape: Partition = shape.parse().map_err(usage)?;
            involution(&p, &shape)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("KROMATIC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(report) => {
            let mut out = report.render(cli.pretty);
            if !out.ends_with('\n') {
                out.push('\n');
            }
            let _ = std::io::stdout().write_all(out.as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
