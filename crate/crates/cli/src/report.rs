use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use krfusion::current::CharacterEntry;

use crate::config::{Format, JobConfig};

/// Per-γ results. Unset fields were not computed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub gamma: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fermionic: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pbw: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    /// Multiplicity by quotient degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded: Option<BTreeMap<u32, u64>>,
    /// `(degree cap, corank)` for every cap tried.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pbw_trace: Option<Vec<(u32, u64)>>,
    /// `(lowest degree of the window, total)` for every window tried.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_trace: Option<Vec<(i32, u64)>>,
}

impl Row {
    pub fn values(&self) -> Vec<u64> {
        [self.fermionic, self.module, self.pbw, self.dual]
            .into_iter()
            .flatten()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub checked: u64,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: JobConfig,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<CharacterEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn new(command: JobConfig) -> Self {
        Report {
            command,
            rows: Vec::new(),
            agree: None,
            character: None,
            scan: None,
            notes: Vec::new(),
            timings_ms: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Pretty => self.pretty(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(ch) = &self.character {
            w.write_record(["weight", "degree", "dim"]).unwrap();
            for e in ch {
                w.write_record([join(&e.weight.0), e.degree.to_string(), e.dim.to_string()])
                    .unwrap();
            }
        } else if let Some(scan) = &self.scan {
            w.write_record(["checked", "violations"]).unwrap();
            w.write_record([scan.checked.to_string(), scan.violations.len().to_string()])
                .unwrap();
        } else {
            let cols = self.columns();
            w.write_record(&cols).unwrap();
            for r in &self.rows {
                w.write_record(cols.iter().map(|c| cell(r, c))).unwrap();
            }
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        if let Some(ch) = &self.character {
            let _ = writeln!(out, "{:<16} {:>6} {:>6}", "weight", "degree", "dim");
            for e in ch {
                let _ = writeln!(out, "{:<16} {:>6} {:>6}", e.weight, e.degree, e.dim);
            }
        } else if let Some(scan) = &self.scan {
            let _ = writeln!(
                out,
                "checked {}, violations {}",
                scan.checked,
                scan.violations.len()
            );
            for v in &scan.violations {
                let _ = writeln!(out, "  {v}");
            }
        } else {
            let cols = self.columns();
            let _ = writeln!(out, "{}", pad_row(cols.iter().map(|c| c.to_string())));
            for r in &self.rows {
                let _ = writeln!(out, "{}", pad_row(cols.iter().map(|c| cell(r, c))));
            }
        }
        if let Some(a) = self.agree {
            let _ = writeln!(out, "agree: {a}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                let _ = writeln!(out, "time {k}: {v} ms");
            }
        }
        out
    }

    /// Columns present in at least one row.
    fn columns(&self) -> Vec<&'static str> {
        let mut cols = vec!["gamma"];
        let has = |f: fn(&Row) -> bool| self.rows.iter().any(f);
        for (name, present) in [
            ("multiplicity", has(|r| r.multiplicity.is_some())),
            ("fermionic", has(|r| r.fermionic.is_some())),
            ("module", has(|r| r.module.is_some())),
            ("pbw", has(|r| r.pbw.is_some())),
            ("dual", has(|r| r.dual.is_some())),
            ("agree", has(|r| r.agree.is_some())),
        ] {
            if present {
                cols.push(name);
            }
        }
        cols
    }
}

fn pad_row<I: Iterator<Item = String>>(cells: I) -> String {
    cells
        .map(|c| format!("{c:>12}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn cell(r: &Row, col: &str) -> String {
    let opt = |v: Option<u64>| v.map_or_else(|| "-".into(), |x| x.to_string());
    match col {
        "gamma" => join(&r.gamma),
        "multiplicity" => opt(r.multiplicity),
        "fermionic" => opt(r.fermionic),
        "module" => opt(r.module),
        "pbw" => opt(r.pbw),
        "dual" => opt(r.dual),
        "agree" => r.agree.map_or_else(|| "-".into(), |a| a.to_string()),
        _ => String::new(),
    }
}
