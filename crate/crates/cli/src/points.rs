//! Evaluation point sets and sample sources.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use barystable::hexfloat::parse_hex;
use barystable::oracle::TestFunction;
use barystable::{Error, NodeSet, Oracle, Result, SampleVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq)]
pub enum PointSpec {
    /// `m` equally spaced points covering `[-1, 1]`.
    Grid(usize),
    /// The `radius` representable neighbours on each side of the `count`
    /// nodes closest to 1, not counting 1 itself.
    NearNodes {
        count: usize,
        radius: usize,
    },
    File(PathBuf),
    Random {
        count: usize,
        seed: u64,
    },
}

impl FromStr for PointSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| -> std::result::Result<usize, String> {
            p.parse()
                .map_err(|_| format!("{p:?} is not a count in point spec {s:?}"))
        };
        match parts.as_slice() {
            ["grid", m] => match num(m)? {
                0 => Err("grid needs at least one point".into()),
                m => Ok(PointSpec::Grid(m)),
            },
            ["near-nodes", c, r] => Ok(PointSpec::NearNodes {
                count: num(c)?,
                radius: num(r)?,
            }),
            ["random", m, seed] => Ok(PointSpec::Random {
                count: num(m)?,
                seed: seed
                    .parse()
                    .map_err(|_| format!("{seed:?} is not a seed in point spec {s:?}"))?,
            }),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(PointSpec::File(path.into())),
                _ => Err(format!(
                    "unknown point spec {s:?}; expected grid:M, near-nodes:C:R, file:PATH or random:M:SEED"
                )),
            },
        }
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::Grid(m) => write!(f, "grid:{m}"),
            PointSpec::NearNodes { count, radius } => write!(f, "near-nodes:{count}:{radius}"),
            PointSpec::File(p) => write!(f, "file:{}", p.display()),
            PointSpec::Random { count, seed } => write!(f, "random:{count}:{seed}"),
        }
    }
}

impl PointSpec {
    pub fn generate(&self, nodes: &NodeSet) -> Result<Vec<f64>> {
        match *self {
            PointSpec::Grid(1) => Ok(vec![0.0]),
            PointSpec::Grid(m) => Ok((0..m)
                .map(|i| {
                    if i + 1 == m {
                        1.0
                    } else {
                        -1.0 + 2.0 * i as f64 / (m - 1) as f64
                    }
                })
                .collect()),
            PointSpec::NearNodes { count, radius } => {
                let xs = nodes.values();
                let n = nodes.degree();
                let mut pts = Vec::with_capacity(2 * count.min(n) * radius);
                for &x in &xs[n - count.min(n.saturating_sub(1))..n] {
                    let mut down = Vec::with_capacity(radius);
                    let mut t = x;
                    for _ in 0..radius {
                        t = t.next_down();
                        down.push(t);
                    }
                    pts.extend(down.iter().rev());
                    let mut t = x;
                    for _ in 0..radius {
                        t = t.next_up();
                        pts.push(t);
                    }
                }
                Ok(pts)
            }
            PointSpec::Random { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok((0..count).map(|_| rng.gen_range(-1.0..=1.0)).collect())
            }
            PointSpec::File(ref path) => read_points(path),
        }
    }
}

fn parse_number(s: &str) -> Option<f64> {
    let body = s.trim_start_matches(['+', '-']);
    if body.starts_with("0x") || body.starts_with("0X") {
        parse_hex(s).ok()
    } else {
        s.parse().ok()
    }
}

/// One point per line, decimal or hexadecimal; blank lines and lines
/// starting with `#` are skipped.
pub fn read_points(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut pts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Format {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let t = parse_number(line).ok_or_else(|| bad(format!("{line:?} is not a number")))?;
        if !(-1.0..=1.0).contains(&t) {
            return Err(bad(format!("point {t:e} lies outside [-1, 1]")));
        }
        pts.push(t);
    }
    Ok(pts)
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Test(TestFunction),
    SamplesFile(PathBuf),
}

impl FromStr for FunctionSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(path) = s.strip_prefix("samples-file:") {
            if path.is_empty() {
                return Err("samples-file needs a path".into());
            }
            return Ok(FunctionSpec::SamplesFile(path.into()));
        }
        TestFunction::parse(s).map(FunctionSpec::Test).ok_or_else(|| {
            format!("unknown function {s:?}; expected sin, sin-scaled:W, runge or samples-file:PATH")
        })
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Test(t) => f.write_str(&t.name()),
            FunctionSpec::SamplesFile(p) => write!(f, "samples-file:{}", p.display()),
        }
    }
}

impl FunctionSpec {
    pub fn test_function(&self) -> Option<TestFunction> {
        match self {
            FunctionSpec::Test(t) => Some(*t),
            FunctionSpec::SamplesFile(_) => None,
        }
    }

    pub fn samples(&self, nodes: &NodeSet, oracle: &Oracle) -> Result<SampleVector> {
        match self {
            FunctionSpec::Test(f) => SampleVector::new(oracle.samples(*f, nodes)),
            FunctionSpec::SamplesFile(path) => {
                let f = SampleVector::read_file(path)?;
                if f.len() != nodes.len() {
                    return Err(Error::Config(format!(
                        "{} holds {} samples but degree {} needs {}",
                        path.display(),
                        f.len(),
                        nodes.degree(),
                        nodes.len()
                    )));
                }
                Ok(f)
            }
        }
    }
}
