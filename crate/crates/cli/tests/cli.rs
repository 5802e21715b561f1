use std::path::Path;
use std::process::{Command, Output};

use barystable::{NodeSet, Oracle, SampleVector, EPS};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_barystable"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn records(csv_text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn column(csv_text: &str, name: &str) -> Vec<String> {
    let (header, rows) = records(csv_text);
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.into_iter().map(|r| r[i].clone()).collect()
}

fn number(csv_text: &str, name: &str) -> f64 {
    column(csv_text, name)[0].parse().unwrap()
}

#[test]
fn nodes_small_degrees() {
    let two = ok(&["nodes", "--n", "2"]);
    let lines: Vec<&str> = two.lines().collect();
    assert_eq!(lines[0], "# barystable-nodes v1 n=2");
    assert_eq!(&lines[1..], ["-0x1p+0", "0x0p+0", "0x1p+0"]);
    let four = ok(&["nodes", "--n", "4"]);
    assert_eq!(four.lines().nth(3), Some("0x0p+0"));
}

#[test]
fn nodes_file_and_deviation_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nodes.txt");
    let out = run(&["nodes", "--n", "100001", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let nodes = NodeSet::read_file(&path).unwrap();
    assert_eq!(nodes.degree(), 100_001);
    let stderr = String::from_utf8(out.stderr).unwrap();
    let dev: f64 = stderr
        .split_whitespace()
        .find_map(|w| w.parse().ok())
        .expect("deviation in report");
    assert!(dev <= 2.54 * f64::EPSILON, "{stderr}");
}

#[test]
fn eval_rows_echo_config() {
    let text = ok(&[
        "eval",
        "--n",
        "8",
        "--points",
        "grid:5",
        "--function",
        "runge",
        "--summation",
        "kahan",
    ]);
    let (header, rows) = records(&text);
    assert_eq!(
        &header[..8],
        [
            "command",
            "n",
            "method",
            "product_strategy",
            "summation",
            "function",
            "points",
            "oracle_bits"
        ]
    );
    assert_eq!(rows.len(), 5);
    for row in &rows {
        assert_eq!(
            &row[..8],
            ["eval", "8", "stable", "", "kahan", "runge", "grid:5", "106"]
        );
        let v: f64 = row[10].parse().unwrap();
        let h = barystable::hexfloat::parse_hex(&row[11]).unwrap();
        assert_eq!(v.to_bits(), h.to_bits());
    }
    assert_eq!(column(&text, "t")[2], "0e0");
    assert_eq!(column(&text, "value")[2], "1e0");
}

#[test]
fn near_node_errors_separate_the_formulas() {
    let args = |m: &'static str| {
        [
            "errors",
            "--n",
            "10001",
            "--points",
            "near-nodes:10:200",
            "--method",
            m,
        ]
    };
    let stable = ok(&args("stable"));
    assert_eq!(number(&stable, "count"), 4000.0);
    let s = number(&stable, "max");
    assert!(s <= 1e-15, "{s:e}");
    let first = number(&ok(&args("first-simplified")), "max");
    assert!(first >= 100.0 * s, "{first:e} vs {s:e}");
    let nu = number(&ok(&args("first-nu")), "max");
    assert!(nu <= 1e-12, "{nu:e}");
}

#[test]
fn naive_second_formula_reproduces_constants() {
    let text = ok(&[
        "errors",
        "--n",
        "300",
        "--method",
        "second-naive",
        "--function",
        "constant:1",
        "--points",
        "grid:1000",
        "--reference",
        "function",
    ]);
    assert!(number(&text, "max") <= 1e-14);
    assert_eq!(column(&text, "reference")[0], "function");
}

#[test]
fn approximation_error_of_scaled_sine() {
    let args = |n: &'static str| {
        [
            "errors",
            "--n",
            n,
            "--function",
            "sin-scaled:1000",
            "--points",
            "grid:10000",
            "--reference",
            "function",
        ]
    };
    assert!(number(&ok(&args("1000")), "max") > 1e-3);
    assert!(number(&ok(&args("5000")), "max") <= 1e-11);
}

#[test]
fn scaling_product_is_accurate() {
    let text = ok(&[
        "bench-products",
        "--n",
        "1000",
        "--product-strategy",
        "scaling",
        "--points",
        "random:10000:4",
    ]);
    let (_, rows) = records(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(column(&text, "product_strategy")[0], "scaling");
    assert_eq!(number(&text, "count"), 10_000.0);
    assert!(number(&text, "max") <= 1e-13);
    assert!(number(&text, "seconds") >= 0.0);
}

#[test]
fn naive_and_log_products_at_a_million_nodes() {
    let text = ok(&[
        "bench-products",
        "--n",
        "1000000",
        "--product-strategy",
        "naive",
        "--product-strategy",
        "logsum",
        "--points",
        "random:200:5",
    ]);
    let inf = column(&text, "infinity_count");
    assert!(inf[0].parse::<f64>().unwrap() > 0.99 * 200.0);
    let max = column(&text, "max");
    let logsum: f64 = max[1].parse().unwrap();
    assert!((1e-9..=1e-6).contains(&logsum), "{logsum:e}");
}

#[test]
fn diagnose_reports() {
    let text = ok(&["diagnose", "--n", "100001"]);
    let s = number(&text, "s_over_n2eps").abs();
    assert!((1e-4..=1.0).contains(&s), "{s:e}");
    assert_eq!(column(&text, "k")[0], "100000");

    let exact = ok(&[
        "diagnose",
        "--n",
        "64",
        "--k",
        "1",
        "--k",
        "63",
        "--exact-nodes",
    ]);
    assert_eq!(column(&exact, "s"), ["0e0", "0e0"]);
    assert_eq!(column(&exact, "alpha"), ["0e0", "0e0"]);

    let zero = ok(&["diagnose", "--n", "4", "--k", "2", "--k", "3"]);
    let err = column(&zero, "error");
    assert!(err[0].contains("zero"), "{err:?}");
    assert_eq!(err[1], "");
    assert_eq!(column(&zero, "s")[0], "");
}

#[test]
fn samples_file_function() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    let nodes = NodeSet::rounded_chebyshev(6, &Oracle::default()).unwrap();
    let f = SampleVector::new(nodes.values().iter().map(|x| 2.0 * x + 1.0).collect()).unwrap();
    f.write_file(&path).unwrap();
    let spec = format!("samples-file:{}", path.display());
    let text = ok(&[
        "eval",
        "--n",
        "6",
        "--function",
        &spec,
        "--points",
        "grid:11",
    ]);
    for (t, v) in column(&text, "t").iter().zip(column(&text, "value")) {
        let (t, v): (f64, f64) = (t.parse().unwrap(), v.parse().unwrap());
        assert!((v - (2.0 * t + 1.0)).abs() <= 16.0 * EPS, "{t}: {v}");
    }
    let out = run(&["eval", "--n", "7", "--function", &spec]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "errors",
        "--n",
        "6",
        "--function",
        &spec,
        "--reference",
        "function",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn points_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, "# points\n0.25\n\n-0x1p-1\n").unwrap();
    let spec = format!("file:{}", path.display());
    let text = ok(&["eval", "--n", "5", "--points", &spec]);
    assert_eq!(column(&text, "t"), ["2.5e-1", "-5e-1"]);
    std::fs::write(&path, "0.25\n1.5\n").unwrap();
    assert_eq!(
        run(&["eval", "--n", "5", "--points", &spec]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "eval",
        "--n",
        "200",
        "--points",
        "random:2000:9",
        "--method",
        "first-nu",
    ];
    let a = bin()
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    let b = bin()
        .args(args)
        .env("RAYON_NUM_THREADS", "4")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let bench = ["bench-products", "--n", "500", "--points", "random:300:2"];
    let strip = |o: Output| -> Vec<Vec<String>> {
        let text = String::from_utf8(o.stdout).unwrap();
        let (header, rows) = records(&text);
        let i = header.iter().position(|h| h == "seconds").unwrap();
        rows.into_iter()
            .map(|mut r| {
                r.remove(i);
                r
            })
            .collect()
    };
    let a = strip(
        bin()
            .args(bench)
            .env("RAYON_NUM_THREADS", "1")
            .output()
            .unwrap(),
    );
    let b = strip(
        bin()
            .args(bench)
            .env("RAYON_NUM_THREADS", "3")
            .output()
            .unwrap(),
    );
    assert_eq!(a, b);
    assert_eq!(a.len(), 4);
}

#[test]
fn oracle_precision_from_env_and_flag() {
    let text = String::from_utf8(
        bin()
            .args(["errors", "--n", "30", "--points", "grid:50"])
            .env("BARYSTABLE_ORACLE_BITS", "160")
            .output()
            .unwrap()
            .stdout,
    )
    .unwrap();
    assert_eq!(column(&text, "oracle_bits")[0], "160");
    let text = ok(&[
        "errors",
        "--n",
        "30",
        "--points",
        "grid:50",
        "--oracle-bits",
        "212",
    ]);
    assert_eq!(column(&text, "oracle_bits")[0], "212");
    let out = bin()
        .args(["nodes", "--n", "3"])
        .env("BARYSTABLE_ORACLE_BITS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["eval", "--n", "0"]), Some(2));
    assert_eq!(code(&["eval", "--n", "3", "--method", "bogus"]), Some(2));
    assert_eq!(code(&["eval", "--n", "3", "--points", "mesh:3"]), Some(2));
    assert_eq!(code(&["diagnose", "--n", "5", "--k", "5"]), Some(2));
    assert_eq!(code(&["nodes", "--n", "3", "--oracle-bits", "64"]), Some(2));
    assert_eq!(
        code(&["eval", "--n", "3", "--points", "file:/nonexistent/points"]),
        Some(1)
    );
    let missing_dir = Path::new("/nonexistent/dir/out.csv");
    assert_eq!(
        code(&["nodes", "--n", "3", "-o", missing_dir.to_str().unwrap()]),
        Some(1)
    );
    assert_eq!(code(&["nodes", "--n", "3"]), Some(0));
}
