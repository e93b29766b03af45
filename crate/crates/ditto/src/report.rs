//! One row per run: data statistics, planted patterns, and the recovery scores.

use ditto_core::{Database, PlantSpec, RecoveryReport};

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub events: usize,
    pub steps: usize,
    pub attributes: usize,
    /// `|Ω_i|`, or a range when attributes differ.
    pub alphabet: String,
    pub planted: usize,
    pub sizes: String,
    /// Percentage of ||D||, when known.
    pub support: Option<f64>,
    pub scores: RecoveryReport,
}

fn range(lo: usize, hi: usize) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{lo}-{hi}")
    }
}

impl ReportRow {
    pub fn new(db: &Database, planted: &[ditto_core::Pattern], spec: Option<&PlantSpec>, scores: RecoveryReport) -> Self {
        let sizes: Vec<usize> = db.alphabets().iter().map(|a| a.len()).collect();
        let psizes: Vec<usize> = planted.iter().map(|p| p.size()).collect();
        let sizes_str = match spec {
            Some(s) if s.n_patterns > 0 => range(s.size_min, s.size_max),
            _ if psizes.is_empty() => "-".into(),
            _ => range(*psizes.iter().min().unwrap(), *psizes.iter().max().unwrap()),
        };
        ReportRow {
            events: db.total_events(),
            steps: db.total_steps(),
            attributes: db.n_attrs(),
            alphabet: range(*sizes.iter().min().unwrap_or(&0), *sizes.iter().max().unwrap_or(&0)),
            planted: planted.len(),
            sizes: sizes_str,
            support: spec.filter(|s| s.n_patterns > 0).map(|s| 100.0 * s.support),
            scores,
        }
    }

    fn cells(&self) -> Vec<String> {
        let r = &self.scores;
        vec![
            self.events.to_string(),
            self.steps.to_string(),
            self.attributes.to_string(),
            self.alphabet.clone(),
            self.planted.to_string(),
            self.sizes.clone(),
            self.support.map_or("-".into(), |s| format!("{s}%")),
            r.exact.to_string(),
            r.subset.to_string(),
            r.spurious.to_string(),
            format!("{:.1}", r.recovery),
            format!("{:.1}", r.compression_gain),
            r.runtime_secs.map_or("-".into(), |t| format!("{t:.2}")),
        ]
    }
}

const TEXT_HEADER: [&str; 13] = ["||D||", "t(D)", "|A|", "|Ω_i|", "|P|", "||X||", "support", "=", "⊂", "other", "R%", "ΔL%", "time"];
const TSV_HEADER: [&str; 13] =
    ["events", "steps", "attributes", "alphabet", "planted", "size", "support", "exact", "subset", "other", "recovery", "gain", "seconds"];

/// Right-aligned columns under a header.
pub fn format_text(rows: &[ReportRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(ReportRow::cells).collect();
    let width = |j: usize| body.iter().map(|r| r[j].chars().count()).chain([TEXT_HEADER[j].chars().count()]).max().unwrap();
    let widths: Vec<usize> = (0..TEXT_HEADER.len()).map(width).collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ") + "\n"
    };
    let mut out = line(TEXT_HEADER.to_vec());
    for r in &body {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn format_tsv(rows: &[ReportRow]) -> String {
    let mut out = TSV_HEADER.join("\t") + "\n";
    for r in rows {
        out += &(r.cells().join("\t") + "\n");
    }
    out
}
