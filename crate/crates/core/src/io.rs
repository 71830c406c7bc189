//! Labelled matrix serialization.
//!
//! CSV: a header row and a leading column of node labels, `INF` for
//! unreachable cells. JSON: `{"n":…, "labels":[…], "cells":[[…]]}` with
//! `null` for `INF`.

use serde::{Deserialize, Serialize};

use crate::count::ExtendedCount;
use crate::error::{Error, Result};
use crate::matrix::{Cells, CountMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledMatrix {
    pub n: usize,
    pub labels: Vec<String>,
    pub cells: Vec<Vec<ExtendedCount>>,
}

impl LabelledMatrix {
    pub fn new(labels: &[String], m: &impl Cells) -> Self {
        let n = m.dim();
        assert_eq!(labels.len(), n, "one label per row");
        LabelledMatrix {
            n,
            labels: labels.to_vec(),
            cells: (0..n).map(|i| (0..n).map(|j| m.cell(i, j)).collect()).collect(),
        }
    }

    pub fn matrix(&self) -> Result<CountMatrix> {
        if self.labels.len() != self.n || self.cells.len() != self.n {
            return Err(Error::Format(format!(
                "declared n={} but found {} labels and {} rows",
                self.n,
                self.labels.len(),
                self.cells.len()
            )));
        }
        Ok(CountMatrix::from_rows(self.cells.iter().cloned())?)
    }
}

pub fn to_csv(labels: &[String], m: &impl Cells) -> String {
    let lm = LabelledMatrix::new(labels, m);
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once(String::new()).chain(lm.labels.iter().cloned());
    w.write_record(header).expect("in-memory write");
    for (label, row) in lm.labels.iter().zip(&lm.cells) {
        let record = std::iter::once(label.clone()).chain(row.iter().map(ToString::to_string));
        w.write_record(record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn from_csv(text: &str) -> Result<LabelledMatrix> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut records = r.records();
    let header = records
        .next()
        .ok_or_else(|| Error::Format("csv: empty input".into()))?
        .map_err(|e| Error::Format(format!("csv: {e}")))?;
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let n = labels.len();
    let mut cells = Vec::with_capacity(n);
    for (k, rec) in records.enumerate() {
        let line = k + 2;
        let rec = rec.map_err(|e| Error::Format(format!("csv line {line}: {e}")))?;
        if rec.get(0) != labels.get(k).map(String::as_str) {
            return Err(Error::Format(format!("csv line {line}: row label does not match header")));
        }
        let row = rec
            .iter()
            .skip(1)
            .map(|c| c.parse::<ExtendedCount>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Format(format!("csv line {line}: {e}")))?;
        cells.push(row);
    }
    let lm = LabelledMatrix { n, labels, cells };
    lm.matrix()?;
    Ok(lm)
}

pub fn to_json(labels: &[String], m: &impl Cells) -> String {
    serde_json::to_string(&LabelledMatrix::new(labels, m)).expect("matrix serializes")
}

pub fn from_json(text: &str) -> Result<LabelledMatrix> {
    let lm: LabelledMatrix = serde_json::from_str(text).map_err(|e| Error::Format(format!("json: {e}")))?;
    lm.matrix()?;
    Ok(lm)
}
