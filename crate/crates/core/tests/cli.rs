use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use conformity::report::{ScoreFile, SummaryFile};
use conformity::stats::{quantile_sorted, Summary};
use tempfile::TempDir;

fn conformity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conformity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str]) -> Output {
    let o = conformity(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stderr(&o));
    o
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }

    fn write(&self, name: &str, body: &str) -> String {
        std::fs::write(self.path(name), body).unwrap();
        self.s(name)
    }

    fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.path(name)).unwrap()
    }

    fn generate(&self, stem: &str, extra: &[&str]) -> (String, String) {
        let (g, a) = (self.s(&format!("{stem}.edges")), self.s(&format!("{stem}.csv")));
        let mut args = vec!["generate", "--graph", &g, "--attrs", &a];
        args.extend_from_slice(extra);
        ok(&args);
        (g, a)
    }
}

fn read_bytes(p: &Path) -> Vec<u8> {
    std::fs::read(p).unwrap()
}

#[test]
fn generate_reports_counts() {
    let ws = Workspace::new();
    let (g, a) = (ws.s("q.edges"), ws.s("q.csv"));
    let o = ok(&["generate", "--kind", "quintet", "--variant", "a", "--seed", "7", "--graph", &g, "--attrs", &a]);
    let line = stdout(&o);
    assert!(line.starts_with("nodes=40 edges=160 r_global="), "{line}");
    let r: f64 = line.trim().rsplit('=').next().unwrap().parse().unwrap();
    assert!(r.abs() <= 0.05);
    let edges = ws.read("q.edges");
    assert!(edges.starts_with("#config,"));
    assert_eq!(edges.lines().filter(|l| !l.starts_with('#')).count(), 160);

    let o = ok(&["generate", "--kind", "complete-distinct", "--n", "5", "--graph", &g, "--attrs", &a]);
    assert!(stdout(&o).starts_with("nodes=5 edges=10"));
}

#[test]
fn impossible_quintet_fails_with_generation_status() {
    let ws = Workspace::new();
    let (g, a) = (ws.s("q.edges"), ws.s("q.csv"));
    let o = conformity(&[
        "generate", "--kind", "quintet", "--variant", "a", "--max-abs-r=-1", "--max-attempts", "20",
        "--graph", &g, "--attrs", &a,
    ]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.starts_with("error[generation]:"), "{err}");
    assert!(err.contains("best achieved |r|"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn compute_writes_provenance_and_scores() {
    let ws = Workspace::new();
    let (g, a) = ws.generate("k", &["--kind", "karate"]);
    let out = ws.s("scores.csv");
    ok(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "faction", "--alpha", "0,2.5", "--out", &out]);
    let text = ws.read("scores.csv");
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("#config,{\"command\":\"compute\""));
    assert_eq!(lines.next().unwrap(), "node_id,alpha,label,psi");
    let file = ScoreFile::parse(&text).unwrap();
    assert_eq!(file.scores.len(), 68);
    assert_eq!(file.network.len(), 2);
    assert_eq!(file.config.alphas, vec![0.0, 2.5]);
    assert_eq!(file.network[1].histogram.counts.iter().sum::<usize>(), 34);
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let ws = Workspace::new();
    let (g, a) = ws.generate("q", &["--kind", "quintet", "--variant", "d", "--seed", "3"]);
    let (c, j) = (ws.s("s.csv"), ws.s("s.json"));
    let base = ["compute", "--graph", &g, "--attrs", &a, "--attributes", "color", "--alpha", "0,1,2.5", "--bins", "10"];
    let mut args = base.to_vec();
    args.extend_from_slice(&["--out", &c]);
    ok(&args);
    let mut args = base.to_vec();
    args.extend_from_slice(&["--out", &j, "--format", "json"]);
    ok(&args);
    let from_csv = ScoreFile::parse(&ws.read("s.csv")).unwrap();
    let from_json = ScoreFile::parse(&ws.read("s.json")).unwrap();
    assert_eq!(from_csv.scores, from_json.scores);
    assert_eq!(from_csv.network, from_json.network);
    assert_eq!(from_json.config.format, conformity::report::Format::Json);
}

#[test]
fn isolated_nodes_are_undefined_in_both_formats() {
    let ws = Workspace::new();
    let g = ws.write("g.txt", "a b\nb c\n");
    let a = ws.write("a.csv", "id,color\na,red\nb,blue\nc,red\nd,blue\n");
    let o = ok(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "color", "--alpha", "1"]);
    let csv = stdout(&o);
    assert!(csv.contains("\nd,1,blue,undefined\n"), "{csv}");
    assert!(csv.contains("\na,1,red,-0.333333333333\n"), "{csv}");
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    let o = ok(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "color", "--alpha", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = v["scores"].as_array().unwrap().iter().find(|r| r["node_id"] == "d").unwrap();
    assert!(d["psi"].is_null());
}

#[test]
fn worker_count_does_not_change_bytes() {
    let ws = Workspace::new();
    let (g, a) = ws.generate("q", &["--kind", "quintet", "--variant", "e", "--seed", "5"]);
    let mut files = Vec::new();
    for (i, workers) in ["1", "3", "8", "1"].iter().enumerate() {
        let out = ws.s(&format!("s{i}.csv"));
        ok(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "color", "--alpha", "0,2.5,5", "--workers", workers, "--out", &out]);
        files.push(read_bytes(&ws.path(&format!("s{i}.csv"))));
    }
    assert!(files.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn baseline_reports_mixing_terms() {
    let ws = Workspace::new();
    let g = ws.write("g.txt", "a b\nb c\nc a\nd e\ne f\nf d\n");
    let a = ws.write("a.csv", "id,team\na,x\nb,x\nc,x\nd,y\ne,y\nf,y\n");
    let o = ok(&["baseline", "--graph", &g, "--attrs", &a, "--attributes", "team"]);
    let text = stdout(&o);
    assert!(text.contains("\nx,0.5,0.5\n"), "{text}");
    assert!(text.contains("\n#r_global,1\n"), "{text}");
}

#[test]
fn single_category_baseline_is_undefined_not_an_error() {
    let ws = Workspace::new();
    let g = ws.write("g.txt", "a b\nb c\n");
    let a = ws.write("a.csv", "id,team\na,x\nb,x\nc,x\n");
    let o = ok(&["baseline", "--graph", &g, "--attrs", &a, "--attributes", "team"]);
    assert!(stdout(&o).contains("#r_global,undefined"));
    assert!(stderr(&o).contains("warning"));
    let o = ok(&["baseline", "--graph", &g, "--attrs", &a, "--attributes", "team", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["r_global"].is_null());
}

#[test]
fn exit_codes_follow_error_kind() {
    let ws = Workspace::new();
    let g = ws.write("g.txt", "a b\n");
    let a = ws.write("a.csv", "id,team\na,x\nb,y\n");
    let code = |args: &[&str]| conformity(args).status.code();

    assert_eq!(code(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "team", "--alpha=-1"]), Some(1));
    assert_eq!(code(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "team", "--bogus"]), Some(1));
    assert_eq!(code(&["compute", "--graph", &g, "--attrs", &a]), Some(1));
    assert_eq!(code(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "team", "--bins", "0"]), Some(1));
    assert_eq!(code(&["compute", "--graph", &ws.s("missing.txt"), "--attrs", &a, "--attributes", "team"]), Some(2));
    assert_eq!(code(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "nope"]), Some(2));
    let partial = ws.write("p.csv", "id,team\na,x\n");
    let o = conformity(&["compute", "--graph", &g, "--attrs", &partial, "--attributes", "team"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains('b'));
    let bad = ws.write("bad.txt", "a\n");
    let o = conformity(&["compute", "--graph", &bad, "--attrs", &a, "--attributes", "team"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn summarize_groups_karate_by_faction() {
    let ws = Workspace::new();
    let (g, a) = ws.generate("k", &["--kind", "karate"]);
    let s = ws.s("s.csv");
    ok(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "faction", "--alpha", "1,2.5", "--out", &s]);
    let o = ok(&["summarize", "--scores", &s, "--attrs", &a, "--group-by", "faction"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "alpha,group,count,mean,median,q1,q3,min,max"));
    let summary = SummaryFile::parse(&text).unwrap();
    assert_eq!(summary.groups.len(), 4);
    for alpha in [1.0, 2.5] {
        let rows: Vec<_> = summary.groups.iter().filter(|r| r.alpha == alpha).collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows.iter().map(|r| r.count).sum::<usize>(), 34);
    }

    let o = conformity(&["summarize", "--scores", &s, "--attrs", &a, "--group-by", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn summarize_matches_recomputation_from_rows() {
    let ws = Workspace::new();
    let (g, a) = ws.generate("q", &["--kind", "quintet", "--variant", "e", "--seed", "2"]);
    let s = ws.s("s.csv");
    ok(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "color", "--alpha", "2.5", "--out", &s]);
    let o = ok(&["summarize", "--scores", &s, "--attrs", &a, "--group-by", "color", "--format", "json"]);
    let summary = SummaryFile::parse(&stdout(&o)).unwrap();

    let scores = ScoreFile::parse(&ws.read("s.csv")).unwrap();
    for group in ["green", "red"] {
        let mut xs: Vec<f64> = scores
            .scores
            .iter()
            .filter(|r| r.label == group)
            .filter_map(|r| r.psi)
            .collect();
        xs.sort_by(f64::total_cmp);
        let row = summary.groups.iter().find(|r| r.group == group).unwrap();
        assert_eq!(row.count, xs.len());
        let close = |a: Option<f64>, b: f64| (a.unwrap() - b).abs() <= 1e-9;
        assert!(close(row.mean, xs.iter().sum::<f64>() / xs.len() as f64));
        assert!(close(row.median, quantile_sorted(&xs, 0.5).unwrap()));
        assert!(close(row.q1, quantile_sorted(&xs, 0.25).unwrap()));
        assert!(close(row.q3, quantile_sorted(&xs, 0.75).unwrap()));
        assert!(close(row.min, xs[0]));
        assert!(close(row.max, *xs.last().unwrap()));
        let s = Summary::of(&xs).unwrap();
        assert!(close(row.median, s.median));
    }
}

#[test]
fn summarize_uniform_scores() {
    let ws = Workspace::new();
    let (g, a) = ws.generate(
        "r",
        &["--kind", "concentric-rings", "--core", "4", "--rings", "3,6", "--core-label", "z", "--outer-label", "z"],
    );
    let s = ws.s("s.csv");
    ok(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "label", "--out", &s]);
    let o = ok(&["summarize", "--scores", &s, "--attrs", &a, "--group-by", "label"]);
    let summary = SummaryFile::parse(&stdout(&o)).unwrap();
    assert_eq!(summary.groups.len(), 1);
    let row = &summary.groups[0];
    assert_eq!(row.count, 13);
    for v in [row.mean, row.median, row.q1, row.q3, row.min, row.max] {
        assert_eq!(v, Some(1.0));
    }
}

#[test]
fn joint_attributes_from_files() {
    let ws = Workspace::new();
    let g = ws.write("g.txt", "# comment\n1,2\n2,3\n3,4\n4,1\n");
    let a = ws.write("a.csv", "id,dorm,year\n1,A,2006\n2,A,2007\n3,B,2006\n4,A,2006\n");
    let o = ok(&["compute", "--graph", &g, "--attrs", &a, "--attributes", "dorm,year", "--alpha", "0"]);
    let file = ScoreFile::parse(&stdout(&o)).unwrap();
    let labels: Vec<&str> = file.scores.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(labels, ["A|2006", "A|2007", "B|2006", "A|2006"]);
}
