//! Score CSV files: header `vertex,score`, one row per (sub-)composite vertex
//! in identifier order, vertices rendered `(l1|l2|...)`.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use mag_core::{Aspect, CentralityVector};

use crate::format::vertex_name;
use crate::{Error, Result};

/// `x` rounded to 12 significant digits, printed without trailing noise.
pub fn format_score(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("valid float");
    format!("{rounded}")
}

/// Writes `scores`, whose domain must match the element counts of `aspects`.
pub fn write_scores<W: Write>(scores: &CentralityVector, aspects: &[Aspect], sink: W) -> Result<()> {
    let sizes: Vec<usize> = aspects.iter().map(Aspect::len).collect();
    if sizes != scores.domain().sizes() {
        return Err(Error::Data("score vector does not match the aspects".into()));
    }
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["vertex", "score"])?;
    for (i, &s) in scores.scores().iter().enumerate() {
        w.write_record([vertex_name(aspects, scores.domain(), i)?, format_score(s)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_scores_file(scores: &CentralityVector, aspects: &[Aspect], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_scores(scores, aspects, file)
}

/// Scores read back from a CSV, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub vertices: Vec<String>,
    pub scores: Vec<f64>,
}

impl ScoreTable {
    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// `other`'s scores rearranged into this table's vertex order.
    pub fn align(&self, other: &ScoreTable) -> Result<Vec<f64>> {
        if other.len() != self.len() {
            return Err(Error::Data(format!(
                "score files have {} and {} rows",
                self.len(),
                other.len()
            )));
        }
        let index: std::collections::HashMap<&str, usize> = other
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        self.vertices
            .iter()
            .map(|v| {
                index
                    .get(v.as_str())
                    .map(|&i| other.scores[i])
                    .ok_or_else(|| Error::Data(format!("vertex {v} is missing from the second file")))
            })
            .collect()
    }
}

pub fn read_scores<R: Read>(source: R) -> Result<ScoreTable> {
    let mut r = csv::Reader::from_reader(source);
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["vertex", "score"] {
        return Err(Error::Data("score file must have the header vertex,score".into()));
    }
    let mut table = ScoreTable {
        vertices: Vec::new(),
        scores: Vec::new(),
    };
    let mut seen = std::collections::HashSet::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let vertex = record.get(0).unwrap_or_default().to_string();
        let score: f64 = record
            .get(1)
            .unwrap_or_default()
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, "score is not a number"))?;
        if !score.is_finite() {
            return Err(Error::parse(line, "score is not finite"));
        }
        if !seen.insert(vertex.clone()) {
            return Err(Error::parse(line, format!("vertex {vertex} repeats")));
        }
        table.vertices.push(vertex);
        table.scores.push(score);
    }
    Ok(table)
}

pub fn read_scores_file(path: &Path) -> Result<ScoreTable> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_scores(file)
}
