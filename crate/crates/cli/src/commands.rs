use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use barystable::diagnostics::{diagnose as diagnose_at, Reference as NodeReference};
use barystable::fp_scaled::ProductStrategy;
use barystable::hexfloat::format_hex;
use barystable::oracle::{ErrorMode, ErrorStats, StatsCollector};
use barystable::{
    eval_first, eval_naive, eval_stable, Error, NodeSet, Result, SampleVector, WeightScheme,
};
use rayon::prelude::*;

use crate::{Method, Mode, Reference, RunConfig};

struct Output {
    path: PathBuf,
    writer: csv::Writer<Box<dyn Write>>,
}

impl Output {
    fn open(out: Option<&Path>, columns: &[&str]) -> Result<Self> {
        let (path, sink) = sink(out)?;
        let mut o = Output {
            path,
            writer: csv::Writer::from_writer(sink),
        };
        let header: Vec<&str> = RunConfig::HEADER.iter().chain(columns).copied().collect();
        o.row(&header)?;
        Ok(o)
    }

    fn row<S: AsRef<[u8]>>(&mut self, fields: &[S]) -> Result<()> {
        self.writer
            .write_record(fields)
            .map_err(|e| self.io(e.into()))
    }

    fn finish(mut self) -> Result<()> {
        self.writer.flush().map_err(|e| self.io(e))
    }

    fn io(&self, source: io::Error) -> Error {
        Error::Io {
            path: self.path.clone(),
            source,
        }
    }
}

fn sink(out: Option<&Path>) -> Result<(PathBuf, Box<dyn Write>)> {
    match out {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|source| Error::Io {
                path: p.to_path_buf(),
                source,
            })?;
            Ok((p.to_path_buf(), Box::new(io::BufWriter::new(file))))
        }
        None => Ok(("<stdout>".into(), Box::new(io::stdout().lock()))),
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn hex_opt(x: Option<f64>) -> String {
    x.map(format_hex).unwrap_or_default()
}

fn with_echo(config: &RunConfig, rest: impl IntoIterator<Item = String>) -> Vec<String> {
    config.echo().into_iter().chain(rest).collect()
}

fn rounded_nodes(config: &RunConfig) -> Result<NodeSet> {
    NodeSet::rounded_chebyshev(config.n, &config.oracle)
}

pub fn nodes(config: &RunConfig, out: Option<&Path>) -> Result<()> {
    let nodes = rounded_nodes(config)?;
    let (path, mut sink) = sink(out)?;
    let io_err = |source| Error::Io {
        path: path.clone(),
        source,
    };
    sink.write_all(nodes.to_text().as_bytes()).map_err(io_err)?;
    sink.flush().map_err(io_err)?;
    let dev = nodes.max_relative_deviation(&config.oracle);
    eprintln!(
        "max relative deviation from -cos(i pi / n): {dev:e} ({:.3} * 2^-52)",
        dev / f64::EPSILON
    );
    Ok(())
}

enum Evaluator {
    Stable,
    SecondNaive(WeightScheme),
    First(WeightScheme),
}

impl Evaluator {
    fn new(method: Method, nodes: &NodeSet) -> Result<Self> {
        Ok(match method {
            Method::Stable => Evaluator::Stable,
            Method::SecondNaive => {
                Evaluator::SecondNaive(WeightScheme::simplified(nodes.degree())?)
            }
            Method::FirstSimplified => Evaluator::First(WeightScheme::simplified(nodes.degree())?),
            Method::FirstNu => Evaluator::First(WeightScheme::compute_nu(nodes)?),
        })
    }

    fn eval(&self, t: f64, nodes: &NodeSet, f: &SampleVector, config: &RunConfig) -> Result<f64> {
        let m = config
            .summation
            .unwrap_or(barystable::SummationMethod::Naive);
        match self {
            Evaluator::Stable => eval_stable(t, nodes, f, m),
            Evaluator::SecondNaive(w) => eval_naive(t, nodes, f, w, m),
            Evaluator::First(w) => eval_first(t, nodes, f, w, m),
        }
    }
}

struct Setup {
    nodes: NodeSet,
    f: SampleVector,
    points: Vec<f64>,
    evaluator: Evaluator,
}

fn setup(config: &RunConfig) -> Result<Setup> {
    let nodes = rounded_nodes(config)?;
    let function = config.function.as_ref().expect("eval config");
    let f = function.samples(&nodes, &config.oracle)?;
    let points = config
        .points
        .as_ref()
        .expect("eval config")
        .generate(&nodes)?;
    let evaluator = Evaluator::new(config.method.expect("eval config"), &nodes)?;
    Ok(Setup {
        nodes,
        f,
        points,
        evaluator,
    })
}

pub fn eval(config: &RunConfig, out: Option<&Path>) -> Result<()> {
    let s = setup(config)?;
    let values: Vec<f64> = s
        .points
        .par_iter()
        .map(|&t| s.evaluator.eval(t, &s.nodes, &s.f, config))
        .collect::<Result<_>>()?;
    let mut o = Output::open(out, &["t", "t_hex", "value", "value_hex"])?;
    for (&t, &v) in s.points.iter().zip(&values) {
        o.row(&with_echo(
            config,
            [num(t), format_hex(t), num(v), format_hex(v)],
        ))?;
    }
    o.finish()
}

fn stats_fields(stats: &ErrorStats) -> [String; 6] {
    [
        stats.count.to_string(),
        opt_num(stats.max),
        hex_opt(stats.max),
        opt_num(stats.mean),
        opt_num(stats.std),
        stats.infinity_count.to_string(),
    ]
}

const STATS_COLUMNS: [&str; 6] = ["count", "max", "max_hex", "mean", "std", "infinity_count"];

pub fn errors(
    config: &RunConfig,
    reference: Reference,
    mode: Mode,
    out: Option<&Path>,
) -> Result<()> {
    let s = setup(config)?;
    let error_mode = match mode {
        Mode::Absolute => ErrorMode::Absolute,
        Mode::Relative => ErrorMode::Relative,
    };
    let oracle = &config.oracle;
    let function = config.function.as_ref().and_then(|f| f.test_function());
    let errs: Vec<f64> = s
        .points
        .par_iter()
        .map(|&t| {
            let exact = match reference {
                Reference::Interpolant => oracle.interpolant(t, &s.nodes, s.f.values()),
                Reference::Function => oracle.function(function.expect("checked"), t),
            };
            match s.evaluator.eval(t, &s.nodes, &s.f, config) {
                Ok(v) => Ok(error_mode.error(v, &exact)),
                Err(Error::Evaluation(_) | Error::Range(_)) => Ok(f64::INFINITY),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let mut stats = StatsCollector::new();
    for e in errs {
        stats.push_error(e);
    }
    let mut columns = vec!["reference", "mode"];
    columns.extend(STATS_COLUMNS);
    let mut o = Output::open(out, &columns)?;
    let reference = match reference {
        Reference::Interpolant => "interpolant",
        Reference::Function => "function",
    };
    let mut row = with_echo(config, [reference.to_owned(), error_mode.name().to_owned()]);
    row.extend(stats_fields(&stats.finish()));
    o.row(&row)?;
    o.finish()
}

pub fn bench_products(
    config: &RunConfig,
    strategies: &[ProductStrategy],
    out: Option<&Path>,
) -> Result<()> {
    let nodes = rounded_nodes(config)?;
    let points = config
        .points
        .as_ref()
        .expect("bench config")
        .generate(&nodes)?;
    let exact: Vec<_> = points
        .par_iter()
        .map(|&t| config.oracle.product(t, &nodes))
        .collect();
    let mut columns = STATS_COLUMNS.to_vec();
    columns.push("seconds");
    let mut o = Output::open(out, &columns)?;
    for &strategy in strategies {
        let start = Instant::now();
        let values = points
            .iter()
            .map(|&t| strategy.evaluate(t, &nodes))
            .collect::<Result<Vec<_>>>()?;
        let seconds = start.elapsed().as_secs_f64();
        let mut stats = StatsCollector::new();
        for (v, e) in values.iter().zip(&exact) {
            stats.push_error(e.rel_error_value(v));
        }
        let mut c = config.clone();
        c.product_strategy = Some(strategy);
        let mut row = with_echo(&c, stats_fields(&stats.finish()));
        row.push(num(seconds));
        o.row(&row)?;
    }
    o.finish()
}

pub fn diagnose(
    config: &RunConfig,
    ks: &[usize],
    t: Option<f64>,
    exact_nodes: bool,
    out: Option<&Path>,
) -> Result<()> {
    let n = config.n;
    let oracle = &config.oracle;
    let nodes = if exact_nodes {
        NodeSet::from_values(
            (0..=n)
                .map(|i| oracle.chebyshev_node(i, n).to_f64())
                .collect(),
        )?
    } else {
        rounded_nodes(config)?
    };
    let reference = if exact_nodes {
        NodeReference::Explicit(nodes.values())
    } else {
        NodeReference::Chebyshev
    };
    let f = config
        .function
        .as_ref()
        .expect("diagnose config")
        .samples(&nodes, oracle)?;
    let rows: Vec<Vec<String>> = ks
        .par_iter()
        .map(|&k| {
            let t = t.unwrap_or(nodes.values()[k]);
            let head = [k.to_string(), num(t), format_hex(t)];
            match diagnose_at(&nodes, &f, k, t, reference, oracle) {
                Ok(r) => Ok(with_echo(
                    config,
                    head.into_iter().chain([
                        num(r.alpha_nk),
                        num(r.delta_nk),
                        num(r.delta_nk_node),
                        num(r.s_nk),
                        num(r.s_nk_over_n2eps),
                        num(r.sigma_estimate),
                        String::new(),
                    ]),
                )),
                Err(Error::Domain(msg)) => Ok(with_echo(
                    config,
                    head.into_iter()
                        .chain(std::iter::repeat_n(String::new(), 6))
                        .chain([msg]),
                )),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let mut o = Output::open(
        out,
        &[
            "k",
            "t",
            "t_hex",
            "alpha",
            "delta",
            "delta_node",
            "s",
            "s_over_n2eps",
            "sigma",
            "error",
        ],
    )?;
    for row in rows {
        o.row(&row)?;
    }
    o.finish()
}
