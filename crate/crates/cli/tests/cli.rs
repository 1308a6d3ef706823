use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const HEADER: &str = "problem,dimension,algorithm,seed,final_error,final_fitness,n_eval,status";

fn mscap_with(args: &[&str], env: &[(&str, &str)]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mscap"))
        .args(args)
        .envs(env.iter().copied())
        .output()
        .expect("binary runs")
}

fn mscap(args: &[&str]) -> Output {
    mscap_with(args, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("config.json");
    fs::write(&path, body).unwrap();
    path
}

fn grid(out: &Path, algorithms: &str, problems: &str, dims: &str, seeds: &str, mult: u64) -> String {
    format!(
        r#"{{"algorithms":{algorithms},"problems":{problems},"dimensions":{dims},
            "seeds":{seeds},"budget_multiplier":{mult},"output_dir":{:?}}}"#,
        p(out)
    )
}

/// Summary CSV with the given (problem, algorithm, scores) groups at D=10.
fn fixture(path: &Path, groups: &[(&str, &str, &[f64])]) {
    let mut text = format!("{HEADER}\n");
    for (problem, algorithm, values) in groups {
        for (i, v) in values.iter().enumerate() {
            text += &format!("{problem},10,{algorithm},{},{v:e},{v:e},50000,ok\n", i + 1);
        }
    }
    fs::write(path, text).unwrap();
}

fn summary_rows(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn run_writes_one_row_per_seed_and_is_repeatable() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let cfg = write_config(dir.path(), &grid(&out, r#"["mscap"]"#, r#"["rastrigin"]"#, "[4]", "10", 200));

    let o = mscap(&["run", "--config", p(&cfg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = out.join("summary.csv");
    let first = fs::read(&summary).unwrap();
    let first_trends = read_dir_sorted(&out.join("trends"));

    let rows = summary_rows(&summary);
    assert_eq!(rows.len(), 10);
    let seeds: Vec<u64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert_eq!(seeds, (1..=10).collect::<Vec<u64>>());
    assert!(rows.iter().all(|r| r[0] == "rastrigin" && r[1] == "4" && r[2] == "mscap"));
    assert!(rows.iter().all(|r| r[6] == "800" && r[7] == "ok"));
    assert_eq!(first_trends.len(), 10);
    assert!(first_trends.iter().any(|(n, _)| n == "mscap__rastrigin__d4__s7.csv"));

    let o = mscap(&["run", "--config", p(&cfg)]);
    assert!(o.status.success());
    assert_eq!(fs::read(&summary).unwrap(), first);
    assert_eq!(read_dir_sorted(&out.join("trends")), first_trends);
}

#[test]
fn sphere_defaults_reach_small_error() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let cfg = write_config(dir.path(), &grid(&out, r#"["mscap"]"#, r#"["sphere"]"#, "[10]", "10", 5000));
    let o = mscap(&["run", "--config", p(&cfg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = summary_rows(&out.join("summary.csv"));
    assert_eq!(rows.len(), 10);
    let mean: f64 = rows.iter().map(|r| r[4].parse::<f64>().unwrap()).sum::<f64>() / 10.0;
    assert!(mean < 1e-6, "mean error {mean:e}");
    assert!(rows.iter().all(|r| r[6] == "50000"));
}

#[test]
fn final_error_matches_last_trend_sample() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let cfg = write_config(
        dir.path(),
        &grid(
            &out,
            r#"["mscap","de-rand1-bin"]"#,
            r#"["sphere","rastrigin","shifted-rotated-ackley"]"#,
            "[3,6]",
            "[2,9]",
            300,
        ),
    );
    let o = mscap(&["run", "--config", p(&cfg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = summary_rows(&out.join("summary.csv"));
    assert_eq!(rows.len(), 2 * 3 * 2 * 2);
    for r in &rows {
        let trend = out
            .join("trends")
            .join(format!("{}__{}__d{}__s{}.csv", r[2], r[0], r[1], r[3]));
        let text = fs::read_to_string(&trend).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n_eval,best_fitness"));
        let samples: Vec<(u64, f64)> = lines
            .map(|l| {
                let (n, f) = l.split_once(',').unwrap();
                (n.parse().unwrap(), f.parse().unwrap())
            })
            .collect();
        for w in samples.windows(2) {
            assert!(w[0].0 < w[1].0 && w[1].1 <= w[0].1, "{}", trend.display());
        }
        let (last_n, last_f) = *samples.last().unwrap();
        let error: f64 = r[4].parse().unwrap();
        let fitness: f64 = r[5].parse().unwrap();
        assert_eq!(last_n, r[6].parse::<u64>().unwrap());
        assert_eq!(last_f, fitness);
        // all registry optima are zero
        assert_eq!(error, fitness.max(0.0));
        assert!(error >= 0.0);
    }
}

#[test]
fn concurrent_and_sequential_runs_agree() {
    let dir = TempDir::new().unwrap();
    let mut summaries = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("out{threads}"));
        let cfg = write_config(
            dir.path(),
            &grid(&out, r#"["mscap","de-rand1-bin"]"#, r#"["griewank","rosenbrock"]"#, "[3,5]", "4", 200),
        );
        let o = mscap_with(&["run", "--config", p(&cfg)], &[("MSCAP_THREADS", threads)]);
        assert!(o.status.success(), "{}", stderr(&o));
        summaries.push(fs::read(out.join("summary.csv")).unwrap());
    }
    assert_eq!(summaries[0], summaries[1]);
}

#[test]
fn network_problem_runs_at_weight_dimension() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let cfg = write_config(
        dir.path(),
        &grid(&out, r#"["mscap"]"#, r#"["nn-h2:synthetic:none:60"]"#, "[]", "2", 20),
    );
    let o = mscap(&["run", "--config", p(&cfg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = summary_rows(&out.join("summary.csv"));
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert_eq!(r[1], "18");
        assert_eq!(r[4], "");
        assert!(r[5].parse::<f64>().unwrap() > 0.0);
        assert_eq!(r[6], "360");
    }
}

#[test]
fn invalid_configs_exit_with_validation_status() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let cases = [
        (grid(&out, r#"["pso"]"#, r#"["sphere"]"#, "[2]", "1", 10), "pso"),
        (grid(&out, r#"["mscap"]"#, r#"["cube"]"#, "[2]", "1", 10), "cube"),
        (grid(&out, r#"["mscap"]"#, r#"["sphere"]"#, "[2]", "0", 10), "seeds"),
        ("{\n  \"algorithms\": [\"mscap\"],\n  \"problems\": [\"sphere\"],\n  \"dimensions\": [2],\n  \"seeds\": 1,\n  \"bogus\": 1\n}".into(), "line 6"),
    ];
    for (body, needle) in cases {
        let cfg = write_config(dir.path(), &body);
        let o = mscap(&["run", "--config", p(&cfg)]);
        assert_eq!(o.status.code(), Some(1), "{body}");
        assert!(stderr(&o).contains(needle), "{body}: {}", stderr(&o));
    }
    let o = mscap(&["run", "--config", p(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn compare_same_file_is_all_equal() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    fixture(
        &a,
        &[
            ("sphere", "mscap", &[1.0, 2.0, 3.0, 4.0, 5.0]),
            ("ackley", "mscap", &[0.5, 0.1, 0.9, 0.3, 0.2]),
            ("rastrigin", "mscap", &[7.0, 7.0, 8.0, 6.0, 9.0]),
        ],
    );
    let o = mscap(&["compare", "--a", p(&a), "--b", p(&a), "--alpha", "0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let verdicts: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("  10  "))
        .map(|l| l.split_whitespace().last().unwrap())
        .collect();
    assert_eq!(verdicts, ["=", "=", "="]);
    assert!(text.contains("total (-/=/+): 0/3/0"), "{text}");
}

#[test]
fn compare_disjoint_ranges_favour_better_file() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let low: &[f64] = &[1e-9, 2e-9, 3e-9, 4e-9, 5e-9, 6e-9];
    let high: &[f64] = &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
    fixture(&a, &[("sphere", "good", low), ("ackley", "good", low)]);
    fixture(&b, &[("sphere", "bad", high), ("ackley", "bad", high)]);

    let o = mscap(&["compare", "--a", p(&a), "--b", p(&b), "--alpha", "0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("total (-/=/+): 0/0/2"), "{}", stdout(&o));

    let o = mscap(&["compare", "--a", p(&b), "--b", p(&a), "--alpha", "0.05"]);
    let text = stdout(&o);
    let counted: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("total (-/=/+): "))
        .unwrap()
        .split('/')
        .map(|n| n.parse::<usize>().unwrap())
        .sum();
    assert_eq!(counted, 2);
    assert!(text.contains("total (-/=/+): 2/0/0"));
}

#[test]
fn compare_mismatched_cells_lists_difference() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let v: &[f64] = &[1.0, 2.0, 3.0];
    fixture(&a, &[("sphere", "x", v), ("ackley", "x", v)]);
    fixture(&b, &[("sphere", "y", v), ("griewank", "y", v)]);
    let o = mscap(&["compare", "--a", p(&a), "--b", p(&b), "--alpha", "0.05"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("ackley@10") && err.contains("griewank@10"), "{err}");
    assert!(!err.contains("sphere@10"));
}

fn rank_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip_while(|l| !l.starts_with("j "))
        .skip(1)
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect()
}

#[test]
fn rank_identical_algorithms_accepted() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let v: &[f64] = &[0.5, 0.7, 0.9];
    let w: &[f64] = &[3.0, 1.0, 2.0];
    fixture(&a, &[("sphere", "ref", v), ("ackley", "ref", w)]);
    fixture(&b, &[("sphere", "twin", v), ("ackley", "twin", w)]);
    let o = mscap(&["rank", "--summaries", p(&a), p(&b), "--reference", "ref", "--delta", "0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("reference: ref, rank 1.50"), "{text}");
    let rows = rank_rows(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1], "twin");
    assert_eq!(rows[0][2], "1.50");
    assert_eq!(rows[0][6], "Accepted");
}

#[test]
fn rank_strict_dominance_and_thresholds() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("all.csv");
    let problems = ["sphere", "ackley", "rastrigin", "griewank", "schwefel"];
    let algorithms = ["a1", "a2", "a3", "a4"];
    let values: Vec<Vec<f64>> = (0..4)
        .map(|k| vec![10f64.powi(k), 2.0 * 10f64.powi(k), 3.0 * 10f64.powi(k)])
        .collect();
    let mut groups = Vec::new();
    for prob in problems {
        for (k, alg) in algorithms.iter().enumerate() {
            groups.push((prob, *alg, values[k].as_slice()));
        }
    }
    fixture(&path, &groups);
    let o = mscap(&["rank", "--summaries", p(&path), "--reference", "a1", "--delta", "0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("reference: a1, rank 4.00"), "{text}");
    assert!(text.contains("N_A = 4, N_TP = 5"));
    let rows = rank_rows(&text);
    let table: Vec<(&str, &str, &str, &str)> = rows
        .iter()
        .map(|r| (r[0].as_str(), r[1].as_str(), r[2].as_str(), r[5].as_str()))
        .collect();
    assert_eq!(
        table,
        [
            ("1", "a2", "3.00", "5.00e-02"),
            ("2", "a3", "2.00", "2.50e-02"),
            ("3", "a4", "1.00", "1.67e-02"),
        ]
    );
}

#[test]
fn rank_reports_coverage_hole() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let v: &[f64] = &[1.0, 2.0, 3.0];
    fixture(&a, &[("sphere", "ref", v), ("ackley", "ref", v)]);
    fixture(&b, &[("sphere", "other", v)]);
    let o = mscap(&["rank", "--summaries", p(&a), p(&b), "--reference", "ref", "--delta", "0.05"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("other") && err.contains("ackley@10"), "{err}");
}

#[test]
fn gen_kin_row_counts_and_determinism() {
    let dir = TempDir::new().unwrap();
    let big = dir.path().join("big.csv");
    let o = mscap(&["gen-kin", "--n", "8192", "--noise", "medium", "--seed", "3", "--out", p(&big)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&big).unwrap();
    assert_eq!(text.lines().count(), 8193);
    assert!(text.starts_with("theta1,theta2,theta3,theta4,theta5,theta6,theta7,theta8,distance\n"));

    let again = dir.path().join("again.csv");
    mscap(&["gen-kin", "--n", "8192", "--noise", "medium", "--seed", "3", "--out", p(&again)]);
    assert_eq!(fs::read(&big).unwrap(), fs::read(&again).unwrap());

    let one = dir.path().join("one.csv");
    let o = mscap(&["gen-kin", "--n", "1", "--noise", "high", "--seed", "3", "--out", p(&one)]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&one).unwrap().lines().count(), 2);

    let o = mscap(&["gen-kin", "--n", "0", "--noise", "high", "--seed", "3", "--out", p(&one)]);
    assert_eq!(o.status.code(), Some(1));
    let o = mscap(&["gen-kin", "--n", "4", "--noise", "loud", "--seed", "3", "--out", p(&one)]);
    assert_eq!(o.status.code(), Some(1));
    let bad = dir.path().join("no/such/dir/k.csv");
    let o = mscap(&["gen-kin", "--n", "4", "--noise", "high", "--seed", "3", "--out", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
}

fn parse_mse_table(text: &str) -> Vec<(String, f64, f64)> {
    text.lines()
        .filter(|l| ["train ", "validation ", "test "].iter().any(|s| l.starts_with(s)))
        .map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            (t[0].to_string(), t[1].parse().unwrap(), t[4].parse().unwrap())
        })
        .collect()
}

#[test]
fn train_nn_smoke_and_budget() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("nn.csv");
    let o = mscap(&[
        "train-nn", "--data", "synthetic:none:30", "--hidden", "4", "--seeds", "1",
        "--budget-multiplier", "5000", "--out", p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("D = 36, budget 180000"), "{text}");
    assert_eq!(parse_mse_table(&text).len(), 3);
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("seed,train_mse,validation_mse,test_mse,n_eval"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    for v in &row[1..4] {
        assert!(v.parse::<f64>().unwrap().is_finite());
    }
    assert_eq!(row[4], "180000");
    assert!(lines.next().is_none());
}

#[test]
fn trained_network_beats_zero_network_on_test() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("nn.csv");
    let o = mscap(&[
        "train-nn", "--data", "synthetic:medium:600", "--hidden", "2", "--seeds", "2",
        "--budget-multiplier", "500", "--out", p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = parse_mse_table(&stdout(&o));
    let (name, trained, zero) = &table[2];
    assert_eq!(name, "test");
    assert!(trained < zero, "trained {trained} vs zero {zero}");
}

#[test]
fn train_nn_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("nn.csv");
    let o = mscap(&["train-nn", "--data", "synthetic:none:30", "--hidden", "0", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "a,b\n1,2\n").unwrap();
    let o = mscap(&["train-nn", "--data", p(&bad), "--hidden", "2", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.csv"), "{}", stderr(&o));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(mscap(&["bogus"]).status.code(), Some(1));
    assert_eq!(mscap(&["compare", "--a", "x.csv"]).status.code(), Some(1));
    assert_eq!(mscap(&["--help"]).status.code(), Some(0));
}
