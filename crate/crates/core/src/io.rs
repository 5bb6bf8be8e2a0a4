//! Edge-list and attribute-table ingestion, plus the matching writers.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

/// Category assigned to empty attribute cells.
pub const MISSING: &str = "missing";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    /// Comma if the first data line has one, else tab, else runs of whitespace.
    #[default]
    Auto,
    Comma,
    Tab,
    Whitespace,
}

impl FromStr for Delimiter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Delimiter::Auto),
            "comma" | "," => Ok(Delimiter::Comma),
            "tab" | "\\t" | "\t" => Ok(Delimiter::Tab),
            "whitespace" | "space" | " " => Ok(Delimiter::Whitespace),
            other => Err(Error::InvalidParameter(format!(
                "unknown delimiter `{other}` (expected auto, comma, tab or whitespace)"
            ))),
        }
    }
}

impl Delimiter {
    fn resolve(self, sample: &str) -> Delimiter {
        match self {
            Delimiter::Auto if sample.contains(',') => Delimiter::Comma,
            Delimiter::Auto if sample.contains('\t') => Delimiter::Tab,
            Delimiter::Auto => Delimiter::Whitespace,
            d => d,
        }
    }

    fn split(self, line: &str) -> Vec<&str> {
        match self {
            Delimiter::Comma => line.split(',').map(str::trim).collect(),
            Delimiter::Tab => line.split('\t').map(str::trim).collect(),
            Delimiter::Whitespace | Delimiter::Auto => line.split_whitespace().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EdgeListOptions {
    pub delimiter: Delimiter,
    pub has_header: bool,
}

/// Deduplicated undirected edges over string ids, each stored as `(low, high)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub edges: Vec<(String, String)>,
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Reads one edge per line; columns beyond the first two are ignored.
///
/// Blank lines and lines starting with `#` or `%` are skipped.
pub fn read_edge_list<R: BufRead>(reader: R, options: &EdgeListOptions) -> Result<EdgeList> {
    let mut delimiter = None;
    let mut header_pending = options.has_header;
    let mut rows = 0usize;
    let mut seen = BTreeSet::new();
    let mut out = EdgeList::default();

    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let delim = *delimiter.get_or_insert_with(|| options.delimiter.resolve(trimmed));
        if header_pending {
            header_pending = false;
            continue;
        }
        rows += 1;
        let cols = delim.split(trimmed);
        if cols.len() < 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected at least 2 columns, found {}", cols.len()),
            });
        }
        let (a, b) = (cols[0], cols[1]);
        if a.is_empty() || b.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: "empty node id".to_string(),
            });
        }
        if a == b {
            out.self_loops += 1;
            continue;
        }
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        if !seen.insert(key) {
            out.duplicates += 1;
        }
    }
    if rows == 0 {
        return Err(Error::EmptyInput("edge list has no data rows".to_string()));
    }
    out.edges = seen.into_iter().collect();
    Ok(out)
}

pub fn load_edge_list(path: impl AsRef<Path>, options: &EdgeListOptions) -> Result<EdgeList> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(BufReader::new(file), options)
}

/// Node id to categorical attribute record, keyed in lexicographic id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeTable {
    pub names: Vec<String>,
    pub records: BTreeMap<String, Vec<String>>,
}

impl AttributeTable {
    pub fn value(&self, id: &str, name: &str) -> Option<&str> {
        let col = self.names.iter().position(|n| n == name)?;
        self.records.get(id).map(|r| r[col].as_str())
    }
}

/// Reads a delimited table with a header row (comma or tab, detected from the header).
/// Lines starting with `#` are skipped.
///
/// An empty `names` selects every non-id column. Empty cells become [`MISSING`].
pub fn read_attributes<R: Read>(
    mut reader: R,
    id_column: &str,
    names: &[String],
) -> Result<AttributeTable> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    let header_line = text
        .lines()
        .find(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let Some(header_line) = header_line else {
        return Err(Error::EmptyInput("attribute table has no header".to_string()));
    };
    let delim = if !header_line.contains(',') && header_line.contains('\t') { b'\t' } else { b',' };

    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delim)
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| csv_error(e, 1))?
        .iter()
        .map(str::to_string)
        .collect();
    let id_pos = header
        .iter()
        .position(|h| h == id_column)
        .ok_or_else(|| Error::UnknownColumn {
            name: id_column.to_string(),
            available: header.clone(),
        })?;

    let selected: Vec<String> = if names.is_empty() {
        header.iter().filter(|h| *h != id_column).cloned().collect()
    } else {
        names.to_vec()
    };
    let positions = selected
        .iter()
        .map(|name| {
            header
                .iter()
                .position(|h| h == name && h != id_column)
                .ok_or_else(|| Error::UnknownColumn {
                    name: name.clone(),
                    available: header.clone(),
                })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = BTreeMap::new();
    for row in rdr.records() {
        let row = row.map_err(|e| csv_error(e, 0))?;
        let line = row.position().map(|p| p.line() as usize).unwrap_or(0);
        let id = row.get(id_pos).unwrap_or("");
        if id.is_empty() {
            return Err(Error::Parse {
                line,
                message: format!("empty `{id_column}` cell"),
            });
        }
        let record = positions
            .iter()
            .map(|&p| match row.get(p).unwrap_or("") {
                "" => MISSING.to_string(),
                v => v.to_string(),
            })
            .collect();
        if records.insert(id.to_string(), record).is_some() {
            return Err(Error::DuplicateNodeId(id.to_string()));
        }
    }
    Ok(AttributeTable {
        names: selected,
        records,
    })
}

pub fn load_attributes(
    path: impl AsRef<Path>,
    id_column: &str,
    names: &[String],
) -> Result<AttributeTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_attributes(file, id_column, names)
}

fn csv_error(e: csv::Error, fallback_line: usize) -> Error {
    let line = e
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback_line);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

/// Joins edges with attribute records.
///
/// Every node in the table becomes a graph node, so attributed nodes without
/// edges are kept as isolated nodes. An empty `names` declares every table column.
pub fn build_graph(edges: &EdgeList, table: &AttributeTable, names: &[String]) -> Result<AttributedGraph> {
    let declared: Vec<String> = if names.is_empty() { table.names.clone() } else { names.to_vec() };
    let columns = declared
        .iter()
        .map(|name| {
            table
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownAttribute {
                    name: name.clone(),
                    declared: table.names.clone(),
                })
        })
        .collect::<Result<Vec<_>>>()?;

    for (a, b) in &edges.edges {
        for id in [a, b] {
            if !table.records.contains_key(id) {
                return Err(Error::MissingAttributes(id.clone()));
            }
        }
    }

    let position: HashMap<&str, usize> = table
        .records
        .keys()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let ids: Vec<String> = table.records.keys().cloned().collect();
    let values: Vec<Vec<String>> = table
        .records
        .values()
        .map(|r| columns.iter().map(|&c| r[c].clone()).collect())
        .collect();
    let pairs = edges
        .edges
        .iter()
        .map(|(a, b)| (position[a.as_str()], position[b.as_str()]));
    AttributedGraph::from_parts(ids, declared, values, pairs)
}

/// Writes one `source,target` row per undirected edge, optionally after a header.
pub fn write_edge_list<W: Write>(g: &AttributedGraph, mut out: W, header: bool) -> std::io::Result<()> {
    if header {
        writeln!(out, "source,target")?;
    }
    for (a, b) in g.edges() {
        writeln!(out, "{},{}", g.id(a), g.id(b))?;
    }
    Ok(())
}

/// Writes an `id,<attributes...>` table covering every node.
pub fn write_attributes<W: Write>(g: &AttributedGraph, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["id".to_string()];
    header.extend(g.attribute_names().iter().cloned());
    w.write_record(&header)?;
    for node in 0..g.node_count() {
        let mut row = vec![g.id(node).to_string()];
        row.extend(g.record(node).iter().cloned());
        w.write_record(&row)?;
    }
    w.flush()
}
