//! The `barystable` command line: node generation, interpolation, error
//! statistics, product benchmarks and node-rounding diagnostics.
//!
//! Every command writes CSV (or, for `nodes`, a hex-float node file) to
//! `--output` or standard output. Each CSV row repeats the full run
//! configuration.

mod commands;
pub mod points;

use std::fmt;
use std::path::PathBuf;

use barystable::fp_scaled::ProductStrategy;
use barystable::{Error, Oracle, Result, SummationMethod};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use points::{FunctionSpec, PointSpec};

#[derive(Parser, Debug)]
#[command(
    name = "barystable",
    version,
    about = "Stable barycentric interpolation at rounded Chebyshev points"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Oracle precision in bits (106..=65536). Overrides BARYSTABLE_ORACLE_BITS.
    #[arg(long, global = true)]
    pub oracle_bits: Option<usize>,

    /// Output file; standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Writes the rounded Chebyshev nodes of degree n.
    Nodes {
        #[arg(long)]
        n: usize,
    },
    /// Evaluates the interpolant at a set of points.
    Eval(EvalArgs),
    /// Error statistics of an evaluator against the oracle.
    Errors {
        #[command(flatten)]
        eval: EvalArgs,
        /// Compare with the exact interpolant or with the function itself.
        #[arg(long, value_enum, default_value_t = Reference::Interpolant)]
        reference: Reference,
        #[arg(long, value_enum, default_value_t = Mode::Absolute)]
        mode: Mode,
    },
    /// Accuracy and timing of the product strategies of the first formula.
    BenchProducts {
        #[arg(long)]
        n: usize,
        /// Strategies to run; all of them when absent.
        #[arg(long = "product-strategy", value_parser = parse_strategy)]
        strategies: Vec<ProductStrategy>,
        #[arg(long, default_value = "random:1000:1")]
        points: PointSpec,
    },
    /// Node-rounding diagnostics at the nodes `k`.
    Diagnose {
        #[arg(long)]
        n: usize,
        /// Node indices, `n - 1` when absent.
        #[arg(long = "k")]
        ks: Vec<usize>,
        /// Point for `δ_{n,k}(t)`; the rounded node `x̂_k` when absent.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value = "sin")]
        function: FunctionSpec,
        /// Use the correctly rounded nodes as both the rounded and the exact
        /// nodes.
        #[arg(long, hide = true)]
        exact_nodes: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Method::Stable)]
    pub method: Method,
    #[arg(long, value_parser = parse_summation, default_value = "naive")]
    pub summation: SummationMethod,
    #[arg(long, default_value = "sin")]
    pub function: FunctionSpec,
    #[arg(long, default_value = "grid:1001")]
    pub points: PointSpec,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Second formula, positive-term decomposition.
    Stable,
    /// Second formula summed directly with simplified weights.
    SecondNaive,
    /// First formula with simplified weights.
    FirstSimplified,
    /// First formula with weights computed from the nodes.
    FirstNu,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reference {
    Interpolant,
    Function,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Absolute,
    Relative,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_owned())
        .unwrap_or_default()
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&value_name(self))
    }
}

fn parse_strategy(s: &str) -> std::result::Result<ProductStrategy, String> {
    ProductStrategy::parse(s).ok_or_else(|| {
        format!("unknown product strategy {s:?}; expected naive, scaling, logsum or grouped-logs")
    })
}

fn parse_summation(s: &str) -> std::result::Result<SummationMethod, String> {
    SummationMethod::parse(s)
        .ok_or_else(|| format!("unknown summation {s:?}; expected naive or kahan"))
}

/// The settings of one run, validated before any work starts.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: &'static str,
    pub n: usize,
    pub method: Option<Method>,
    pub product_strategy: Option<ProductStrategy>,
    pub summation: Option<SummationMethod>,
    pub function: Option<FunctionSpec>,
    pub points: Option<PointSpec>,
    pub oracle: Oracle,
}

impl RunConfig {
    pub const HEADER: [&'static str; 8] = [
        "command",
        "n",
        "method",
        "product_strategy",
        "summation",
        "function",
        "points",
        "oracle_bits",
    ];

    pub fn echo(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        vec![
            self.command.to_owned(),
            self.n.to_string(),
            opt(&self.method),
            self.product_strategy
                .map(|p| p.name().to_owned())
                .unwrap_or_default(),
            opt(&self.summation),
            opt(&self.function),
            opt(&self.points),
            self.oracle.bits().to_string(),
        ]
    }

    fn base(command: &'static str, n: usize, oracle: Oracle) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("--n must be at least 1".into()));
        }
        Ok(RunConfig {
            command,
            n,
            method: None,
            product_strategy: None,
            summation: None,
            function: None,
            points: None,
            oracle,
        })
    }

    fn with_eval(mut self, args: &EvalArgs) -> Self {
        self.method = Some(args.method);
        self.summation = Some(args.summation);
        self.function = Some(args.function.clone());
        self.points = Some(args.points.clone());
        self
    }
}

fn oracle(bits: Option<usize>) -> Result<Oracle> {
    match bits {
        Some(b) => Oracle::new(b),
        None => Oracle::from_env(),
    }
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<()> {
    let oracle = oracle(cli.oracle_bits)?;
    let out = cli.output.as_deref();
    match cli.command {
        Command::Nodes { n } => {
            let config = RunConfig::base("nodes", n, oracle)?;
            commands::nodes(&config, out)
        }
        Command::Eval(args) => {
            let config = RunConfig::base("eval", args.n, oracle)?.with_eval(&args);
            commands::eval(&config, out)
        }
        Command::Errors {
            eval,
            reference,
            mode,
        } => {
            let config = RunConfig::base("errors", eval.n, oracle)?.with_eval(&eval);
            if reference == Reference::Function && eval.function.test_function().is_none() {
                return Err(Error::Config(
                    "--reference function needs an analytic --function".into(),
                ));
            }
            commands::errors(&config, reference, mode, out)
        }
        Command::BenchProducts {
            n,
            strategies,
            points,
        } => {
            let mut config = RunConfig::base("bench-products", n, oracle)?;
            config.points = Some(points);
            let strategies = if strategies.is_empty() {
                ProductStrategy::ALL.to_vec()
            } else {
                strategies
            };
            commands::bench_products(&config, &strategies, out)
        }
        Command::Diagnose {
            n,
            ks,
            t,
            function,
            exact_nodes,
        } => {
            let mut config = RunConfig::base("diagnose", n, oracle)?;
            if n < 2 {
                return Err(Error::Config("diagnose needs --n of at least 2".into()));
            }
            let ks = if ks.is_empty() { vec![n - 1] } else { ks };
            if let Some(&k) = ks.iter().find(|&&k| k == 0 || k >= n) {
                return Err(Error::Config(format!("--k {k} outside 1..{n}")));
            }
            if t.is_some_and(|t| !(-1.0..=1.0).contains(&t)) {
                return Err(Error::Config("--t must lie in [-1, 1]".into()));
            }
            config.function = Some(function);
            commands::diagnose(&config, &ks, t, exact_nodes, out)
        }
    }
}

/// Process exit status for a failed run: 1 for I/O, 3 for violated numeric
/// invariants, 2 for everything the user can fix by changing the input.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 1,
        Error::Invariant(_) | Error::Evaluation(_) | Error::Range(_) => 3,
        _ => 2,
    }
}
