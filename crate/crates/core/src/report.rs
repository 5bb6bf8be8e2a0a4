//! Score, baseline and summary files in csv or json.
//!
//! Every file carries the normalized run configuration. In csv it is the
//! first line, `#config,<json>`; other metadata lines also start with `#`
//! so a csv reader with `#` comments sees only the main table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::assortativity::AssortativityReport;
use crate::config::RunConfig;
use crate::conformity::ConformityResult;
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::labels::LabelView;
use crate::stats::{Histogram, Summary};

/// Token written in csv for scores that do not exist.
pub const UNDEFINED: &str = "undefined";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParameter(format!(
                "unknown format `{other}` (expected csv or json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Plain decimal text of `x` at 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{}", round_sig(x))
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_else(|| UNDEFINED.to_string())
}

fn parse_opt(s: &str, line: usize) -> Result<Option<f64>> {
    if s == UNDEFINED {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Error::Parse {
        line,
        message: format!("`{s}` is not a number"),
    })
}

fn parse_num<T: FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{s}` is not a number"),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub node_id: String,
    pub alpha: f64,
    pub label: String,
    pub psi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSummary {
    pub alpha: f64,
    pub network_psi: Option<f64>,
    pub defined: usize,
    pub undefined: usize,
    pub histogram: Histogram,
}

/// Per-node scores plus the per-alpha trailer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreFile {
    pub config: RunConfig,
    pub scores: Vec<ScoreRow>,
    pub network: Vec<AlphaSummary>,
}

const SCORE_HEADER: [&str; 4] = ["node_id", "alpha", "label", "psi"];

impl ScoreFile {
    /// Collects results into file form; all numbers are rounded to 12 significant digits.
    pub fn from_results(
        config: RunConfig,
        g: &AttributedGraph,
        view: &LabelView,
        results: &[ConformityResult],
        bins: usize,
    ) -> Result<Self> {
        let mut scores = Vec::with_capacity(results.len() * g.node_count());
        let mut network = Vec::with_capacity(results.len());
        for res in results {
            for node in 0..g.node_count() {
                scores.push(ScoreRow {
                    node_id: g.id(node).to_string(),
                    alpha: round_sig(res.alpha),
                    label: view.node_display(node),
                    psi: res.psi[node].map(round_sig),
                });
            }
            network.push(AlphaSummary {
                alpha: round_sig(res.alpha),
                network_psi: res.network_psi.map(round_sig),
                defined: g.node_count() - res.undefined_nodes.len(),
                undefined: res.undefined_nodes.len(),
                histogram: Histogram::over_unit_range(res.defined(), bins)?.rounded(),
            });
        }
        Ok(ScoreFile {
            config,
            scores,
            network,
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = config_line(&self.config)?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(SCORE_HEADER).map_err(write_error)?;
                for row in &self.scores {
                    w.write_record([
                        row.node_id.as_str(),
                        &fmt_num(row.alpha),
                        &row.label,
                        &fmt_opt(row.psi),
                    ])
                    .map_err(write_error)?;
                }
                out.push_str(&finish(w)?);
                out.push_str("#network,alpha,network_psi,defined,undefined\n");
                for s in &self.network {
                    out.push_str(&format!(
                        "#network,{},{},{},{}\n",
                        fmt_num(s.alpha),
                        fmt_opt(s.network_psi),
                        s.defined,
                        s.undefined
                    ));
                }
                out.push_str("#histogram,alpha,bin,lower,upper,count\n");
                for s in &self.network {
                    let h = &s.histogram;
                    for (i, c) in h.counts.iter().enumerate() {
                        out.push_str(&format!(
                            "#histogram,{},{},{},{},{}\n",
                            fmt_num(s.alpha),
                            i,
                            fmt_num(h.edges[i]),
                            fmt_num(h.edges[i + 1]),
                            c
                        ));
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::ScoreFormat(e.to_string()));
        }
        let (config, meta, table) = split_csv(text)?;

        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(table.as_bytes());
        let header: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::ScoreFormat(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if header != SCORE_HEADER {
            return Err(Error::ScoreFormat(format!(
                "expected header {}, found {}",
                SCORE_HEADER.join(","),
                header.join(",")
            )));
        }
        let mut scores = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::ScoreFormat(e.to_string()))?;
            let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
            scores.push(ScoreRow {
                node_id: rec[0].to_string(),
                alpha: parse_num(&rec[1], line)?,
                label: rec[2].to_string(),
                psi: parse_opt(&rec[3], line)?,
            });
        }

        let mut network: Vec<AlphaSummary> = Vec::new();
        let mut hist: BTreeMap<u64, Vec<(f64, f64, usize)>> = BTreeMap::new();
        for (line, fields) in meta {
            match fields[0].as_str() {
                "#network" if fields.len() == 5 && fields[1] != "alpha" => {
                    network.push(AlphaSummary {
                        alpha: parse_num(&fields[1], line)?,
                        network_psi: parse_opt(&fields[2], line)?,
                        defined: parse_num(&fields[3], line)?,
                        undefined: parse_num(&fields[4], line)?,
                        histogram: Histogram {
                            edges: vec![],
                            counts: vec![],
                        },
                    });
                }
                "#histogram" if fields.len() == 6 && fields[1] != "alpha" => {
                    let alpha: f64 = parse_num(&fields[1], line)?;
                    hist.entry(alpha.to_bits()).or_default().push((
                        parse_num(&fields[3], line)?,
                        parse_num(&fields[4], line)?,
                        parse_num(&fields[5], line)?,
                    ));
                }
                _ => {}
            }
        }
        for s in &mut network {
            let bins = hist.remove(&s.alpha.to_bits()).unwrap_or_default();
            if let Some(first) = bins.first() {
                s.histogram.edges.push(first.0);
            }
            for (_, upper, count) in bins {
                s.histogram.edges.push(upper);
                s.histogram.counts.push(count);
            }
        }
        Ok(ScoreFile {
            config,
            scores,
            network,
        })
    }
}

impl Histogram {
    fn rounded(mut self) -> Self {
        self.edges.iter_mut().for_each(|e| *e = round_sig(*e));
        self
    }
}

/// Splits a csv document into config, `#`-prefixed metadata rows and the main table.
#[allow(clippy::type_complexity)]
fn split_csv(text: &str) -> Result<(RunConfig, Vec<(usize, Vec<String>)>, String)> {
    let mut config = None;
    let mut meta = Vec::new();
    let mut table = String::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(json) = line.strip_prefix("#config,") {
            config = Some(
                serde_json::from_str(json).map_err(|e| Error::ScoreFormat(format!("config: {e}")))?,
            );
        } else if line.starts_with('#') {
            meta.push((i + 1, line.split(',').map(str::to_string).collect()));
        } else {
            table.push_str(line);
            table.push('\n');
        }
    }
    let config = config.ok_or_else(|| Error::ScoreFormat("missing #config line".to_string()))?;
    Ok((config, meta, table))
}

fn config_line(config: &RunConfig) -> Result<String> {
    let json = serde_json::to_string(config).map_err(|e| Error::ScoreFormat(e.to_string()))?;
    Ok(format!("#config,{json}\n"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::ScoreFormat(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn write_error(e: csv::Error) -> Error {
    Error::ScoreFormat(e.to_string())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::ScoreFormat(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::ScoreFormat(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryMixing {
    pub category: String,
    pub e_gg: f64,
    pub a_g: f64,
}

/// Assortativity report in file form. Categories are sorted by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineFile {
    pub config: RunConfig,
    pub edges: usize,
    pub categories: Vec<CategoryMixing>,
    pub sum_e: f64,
    pub sum_a_squared: f64,
    pub r_global: Option<f64>,
}

impl BaselineFile {
    pub fn new(config: RunConfig, edges: usize, report: &AssortativityReport) -> Self {
        let mut categories: Vec<CategoryMixing> = report
            .categories
            .iter()
            .zip(report.e.iter().zip(&report.a))
            .map(|(c, (&e, &a))| CategoryMixing {
                category: c.clone(),
                e_gg: round_sig(e),
                a_g: round_sig(a),
            })
            .collect();
        categories.sort_by(|x, y| x.category.cmp(&y.category));
        BaselineFile {
            config,
            edges,
            categories,
            sum_e: round_sig(report.trace_e()),
            sum_a_squared: round_sig(report.sum_a_squared()),
            r_global: report.r_global.map(round_sig),
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = config_line(&self.config)?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["category", "e_gg", "a_g"]).map_err(write_error)?;
                for c in &self.categories {
                    w.write_record([c.category.as_str(), &fmt_num(c.e_gg), &fmt_num(c.a_g)])
                        .map_err(write_error)?;
                }
                out.push_str(&finish(w)?);
                out.push_str(&format!("#edges,{}\n", self.edges));
                out.push_str(&format!("#sum_e,{}\n", fmt_num(self.sum_e)));
                out.push_str(&format!("#sum_a_squared,{}\n", fmt_num(self.sum_a_squared)));
                out.push_str(&format!("#r_global,{}\n", fmt_opt(self.r_global)));
                Ok(out)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub alpha: f64,
    pub group: String,
    pub count: usize,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryFile {
    pub config: RunConfig,
    pub groups: Vec<GroupSummary>,
}

pub const SUMMARY_HEADER: [&str; 9] = [
    "alpha", "group", "count", "mean", "median", "q1", "q3", "min", "max",
];

impl SummaryFile {
    /// Groups defined scores by `group_of(node_id)`; alphas keep their file order,
    /// groups are sorted by name.
    pub fn from_scores<F>(config: RunConfig, scores: &ScoreFile, mut group_of: F) -> Result<Self>
    where
        F: FnMut(&str) -> Result<String>,
    {
        let mut alphas: Vec<f64> = Vec::new();
        let mut buckets: BTreeMap<(usize, String), Vec<f64>> = BTreeMap::new();
        for row in &scores.scores {
            let k = match alphas.iter().position(|a| a.to_bits() == row.alpha.to_bits()) {
                Some(k) => k,
                None => {
                    alphas.push(row.alpha);
                    alphas.len() - 1
                }
            };
            let bucket = buckets.entry((k, group_of(&row.node_id)?)).or_default();
            if let Some(p) = row.psi {
                bucket.push(p);
            }
        }
        let groups = buckets
            .into_iter()
            .map(|((k, group), values)| {
                let s = Summary::of(&values);
                let pick = |f: fn(&Summary) -> f64| s.as_ref().map(|s| round_sig(f(s)));
                GroupSummary {
                    alpha: alphas[k],
                    group,
                    count: values.len(),
                    mean: pick(|s| s.mean),
                    median: pick(|s| s.median),
                    q1: pick(|s| s.q1),
                    q3: pick(|s| s.q3),
                    min: pick(|s| s.min),
                    max: pick(|s| s.max),
                }
            })
            .collect();
        Ok(SummaryFile { config, groups })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = config_line(&self.config)?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(SUMMARY_HEADER).map_err(write_error)?;
                for g in &self.groups {
                    w.write_record([
                        fmt_num(g.alpha),
                        g.group.clone(),
                        g.count.to_string(),
                        fmt_opt(g.mean),
                        fmt_opt(g.median),
                        fmt_opt(g.q1),
                        fmt_opt(g.q3),
                        fmt_opt(g.min),
                        fmt_opt(g.max),
                    ])
                    .map_err(write_error)?;
                }
                out.push_str(&finish(w)?);
                Ok(out)
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::ScoreFormat(e.to_string()));
        }
        let (config, _, table) = split_csv(text)?;
        let mut rdr = csv::Reader::from_reader(table.as_bytes());
        let mut groups = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::ScoreFormat(e.to_string()))?;
            let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
            groups.push(GroupSummary {
                alpha: parse_num(&rec[0], line)?,
                group: rec[1].to_string(),
                count: parse_num(&rec[2], line)?,
                mean: parse_opt(&rec[3], line)?,
                median: parse_opt(&rec[4], line)?,
                q1: parse_opt(&rec[5], line)?,
                q3: parse_opt(&rec[6], line)?,
                min: parse_opt(&rec[7], line)?,
                max: parse_opt(&rec[8], line)?,
            });
        }
        Ok(SummaryFile { config, groups })
    }
}
