//! `hamming-eigen` command-line tool.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hamming_eigen::function_space::parse_rational;
use hamming_eigen::{
    classify_additive, construct_dual_layer, construct_single_layer, eigenvalue, exhaustive_lemma3_check,
    random_eigenfunction, reduce, spectrum, verify_main_theorem, vorobev_lower_bound, CoefficientSet, Error,
    GraphParams, Rational, ReductionSpec, SearchConfig, VertexFunction,
};

#[derive(Parser)]
#[command(name = "hamming-eigen", version, about = "Eigenfunctions of Hamming graphs H(n,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct GraphArgs {
    /// Word length
    #[arg(short = 'n')]
    n: usize,
    /// Alphabet size
    #[arg(short = 'q')]
    q: usize,
}

impl GraphArgs {
    fn params(&self) -> Result<GraphParams, Error> {
        GraphParams::new(self.n, self.q)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the eigenvalues λ_0 … λ_n
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Write a single-layer or dual-layer function file
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Write a seeded random eigenfunction for eigen index m
    Random {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "eigen-m")]
        eigen_m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entries are drawn from [-bound, bound]
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check whether a function file is an eigenfunction for λ_m
    CheckEigen {
        file: PathBuf,
        #[arg(long = "eigen-m")]
        eigen_m: usize,
    },
    /// Apply the reduction g_{i,k,m} and write the reduced function
    Reduce {
        file: PathBuf,
        #[arg(long = "i")]
        i: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "m")]
        m: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Classify an additive function of small support
    Classify { file: PathBuf },
    /// Exhaustive minimum-support search over an integer grid
    Search {
        #[command(flatten)]
        graph: GraphArgs,
        /// Coefficient set, e.g. -2..2 or -1,0,1
        #[arg(long, allow_hyphen_values = true, default_value = "-1..1")]
        coeffs: String,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Override the maximum number of grid points
        #[arg(long = "grid-cap")]
        grid_cap: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive check of the n = 2 additive trichotomy
    Trichotomy {
        #[arg(short = 'q')]
        q: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "-1..1")]
        coeffs: String,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long = "grid-cap")]
        grid_cap: Option<u64>,
    },
    /// Print the two-branch support lower bound for λ_m
    Bound {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "eigen-m")]
        eigen_m: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// c on T_k(i)∖T_m(j), −c on T_m(j)∖T_k(i)
    Dual {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "i")]
        i: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "j")]
        j: usize,
        #[arg(long = "m")]
        m: usize,
        #[arg(long = "c", allow_hyphen_values = true, default_value = "1")]
        c: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// c on T_k(i)
    Single {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "i")]
        i: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "c", allow_hyphen_values = true, default_value = "1")]
        c: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

enum Failure {
    /// A verification ran and did not hold.
    Verification(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoFormMatched(_) => Failure::Verification(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn read_function(path: &Path) -> Result<VertexFunction, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(VertexFunction::from_json(&text)?)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn constant(c: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(c)?)
}

fn coefficient_set(s: &str) -> Result<CoefficientSet, Failure> {
    Ok(s.parse()?)
}

fn search_config(grid_cap: Option<u64>, seed: u64) -> SearchConfig {
    let mut config = SearchConfig {
        seed,
        ..SearchConfig::default()
    };
    if let Some(cap) = grid_cap {
        config.grid_cap = cap;
    }
    config
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Spectrum { graph } => {
            let values: Vec<String> = spectrum(&graph.params()?).iter().map(ToString::to_string).collect();
            println!("{}", values.join(" "));
        }
        Command::Construct { family } => match family {
            Family::Dual {
                graph,
                i,
                k,
                j,
                m,
                c,
                output,
            } => {
                let f = construct_dual_layer(&graph.params()?, i, k, j, m, constant(&c)?)?;
                emit(&f.to_json(), output.as_deref())?;
            }
            Family::Single { graph, i, k, c, output } => {
                let f = construct_single_layer(&graph.params()?, i, k, constant(&c)?)?;
                emit(&f.to_json(), output.as_deref())?;
            }
        },
        Command::Random {
            graph,
            eigen_m,
            seed,
            bound,
            output,
        } => {
            let f = random_eigenfunction(eigen_m, &graph.params()?, seed, bound)?;
            emit(&f.to_json(), output.as_deref())?;
        }
        Command::CheckEigen { file, eigen_m } => {
            let f = read_function(&file)?;
            let lambda = eigenvalue(eigen_m, f.params())?;
            let check = f.eigen_check(lambda);
            let trivial = if check.trivial { " (trivial: zero function)" } else { "" };
            if check.holds {
                println!("pass: Af = {lambda}·f on {}{trivial}", f.params());
            } else {
                println!("fail: Af ≠ {lambda}·f on {}", f.params());
                return Err(Failure::Verification(format!(
                    "not an eigenfunction for λ_{eigen_m} = {lambda}"
                )));
            }
        }
        Command::Reduce { file, i, k, m, output } => {
            let f = read_function(&file)?;
            let g = reduce(&f, ReductionSpec::new(i, k, m))?;
            emit(&g.to_json(), output.as_deref())?;
        }
        Command::Classify { file } => {
            let f = read_function(&file)?;
            let form = classify_additive(&f)?;
            println!("{}", serde_json::to_string(&form).expect("form serializes"));
        }
        Command::Search {
            graph,
            coeffs,
            report,
            grid_cap,
            seed,
        } => {
            let params = graph.params()?;
            let set = coefficient_set(&coeffs)?;
            let result = verify_main_theorem(&params, &set, &search_config(grid_cap, seed))?;
            println!("graph:           {params}");
            println!("grid points:     {}", result.enumerated_count);
            println!("theoretical min: {}", result.theoretical_min);
            println!("observed min:    {}", result.observed_min);
            println!(
                "lower bound:     {} ({} branch)",
                result.lower_bound, result.lower_bound_branch
            );
            println!("achievers:       {}", result.achievers.len());
            for d in &result.diagnostics {
                eprintln!("diagnostic: {d}");
            }
            println!("verdict:         {}", if result.verdict { "pass" } else { "fail" });
            if let Some(path) = report {
                emit(&result.to_json(), Some(&path))?;
            }
            if !result.verdict {
                return Err(Failure::Verification("search verdict is false".into()));
            }
        }
        Command::Trichotomy {
            q,
            coeffs,
            report,
            grid_cap,
        } => {
            let set = coefficient_set(&coeffs)?;
            let result = exhaustive_lemma3_check(q, &set, &search_config(grid_cap, 0))?;
            let counts = &result.clause_counts;
            println!("enumerated: {}", result.enumerated_count);
            println!("qualifying: {}", result.qualifying_count);
            println!(
                "clauses:    zero {} / single layer {} / dual layer {}",
                counts.zero, counts.single_layer, counts.dual_layer
            );
            for failure in &result.failures {
                eprintln!("failure: {failure}");
            }
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&result).expect("report serializes");
                emit(&text, Some(&path))?;
            }
            if !result.passed {
                return Err(Failure::Verification(format!(
                    "{} unclassified functions",
                    result.failures.len()
                )));
            }
        }
        Command::Bound { graph, eigen_m } => {
            let bound = vorobev_lower_bound(graph.n, graph.q, eigen_m)?;
            match bound.exact_integer() {
                Some(b) => println!("{b} (exact, {} branch)", bound.branch()),
                None => println!("{} (approximate, {} branch)", bound.decimal(6), bound.branch()),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
