//! Turning real-valued series into categorical ones.

use std::path::Path;

use ditto_core::{Alphabet, Database, MultiSeq};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Real-valued recording: one column per attribute, all of equal length.
#[derive(Clone, Debug, PartialEq)]
pub struct RawSeries {
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl RawSeries {
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() || columns.is_empty() {
            return Err(Error::Format("need one name per column and at least one column".into()));
        }
        if columns.iter().any(|c| c.len() != columns[0].len()) {
            return Err(Error::Format("columns differ in length".into()));
        }
        Ok(RawSeries { names, columns })
    }

    pub fn len(&self) -> usize {
        self.columns[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Reads a CSV file with a header row naming the attributes.
pub fn read_csv(path: impl AsRef<Path>) -> Result<RawSeries> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_csv(file)
}

pub fn parse_csv<R: std::io::Read>(input: R) -> Result<RawSeries> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let names: Vec<String> = rdr.headers()?.iter().map(String::from).collect();
    let mut columns = vec![Vec::new(); names.len()];
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        for (j, cell) in rec.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| Error::parse(line, format!("`{cell}` in column {} is not a number", j + 1)))?;
            if !v.is_finite() {
                return Err(Error::parse(line, format!("`{cell}` is not finite")));
            }
            columns[j].push(v);
        }
    }
    if columns.first().is_none_or(Vec::is_empty) {
        return Err(Error::Format("no rows".into()));
    }
    RawSeries::new(names, columns)
}

/// Means of consecutive blocks of `k` values; a trailing partial block is dropped.
pub fn subsample_mean(values: &[f64], k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::Format("subsample factor must be at least 1".into()));
    }
    Ok(values.chunks_exact(k).map(|c| c.iter().sum::<f64>() / k as f64).collect())
}

/// Successor differences, `out[i] = in[i+1] - in[i]`.
pub fn relative_transform(values: &[f64]) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(Error::Format("relative transform needs at least two values".into()));
    }
    Ok(values.windows(2).map(|w| w[1] - w[0]).collect())
}

/// The `bins - 1` cut points splitting the standard normal into equiprobable regions.
pub fn breakpoints(bins: usize) -> Vec<f64> {
    let n = Normal::standard();
    (1..bins).map(|i| n.inverse_cdf(i as f64 / bins as f64)).collect()
}

/// Symbol of each value: the number of breakpoints below it. With `znormalize` the values
/// are first standardised; a constant series then maps to the middle symbol.
pub fn sax_discretize(values: &[f64], bins: usize, znormalize: bool) -> Result<Vec<u32>> {
    if bins < 2 {
        return Err(Error::Format("need at least 2 bins".into()));
    }
    let cuts = breakpoints(bins);
    let (mean, sd) = if znormalize && !values.is_empty() {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        (mean, var.sqrt())
    } else {
        (0.0, 1.0)
    };
    if znormalize && sd <= f64::EPSILON * mean.abs().max(1.0) {
        return Ok(vec![(bins / 2) as u32; values.len()]);
    }
    Ok(values.iter().map(|&v| cuts.partition_point(|&c| c < (v - mean) / sd) as u32).collect())
}

/// Settings for [`discretize`], applied in the order subsample, relative, SAX.
#[derive(Clone, Debug)]
pub struct Discretize {
    pub subsample: usize,
    pub relative: bool,
    pub bins: usize,
    pub znormalize: bool,
}

impl Default for Discretize {
    fn default() -> Self {
        Discretize { subsample: 1, relative: false, bins: 5, znormalize: false }
    }
}

/// One-sequence database with an attribute per column; symbol names are bin numbers.
pub fn discretize(raw: &RawSeries, cfg: &Discretize) -> Result<Database> {
    let mut cols = Vec::with_capacity(raw.columns.len());
    for c in &raw.columns {
        let mut v = subsample_mean(c, cfg.subsample)?;
        if cfg.relative {
            v = relative_transform(&v)?;
        }
        cols.push(sax_discretize(&v, cfg.bins, cfg.znormalize)?);
    }
    let len = cols[0].len();
    if len == 0 {
        return Err(Error::Format("nothing left after subsampling".into()));
    }
    let cells = (0..len).flat_map(|t| cols.iter().map(move |c| c[t])).collect();
    let seq = MultiSeq::new(cols.len(), cells)?;
    Ok(Database::new(vec![Alphabet::numbered(cfg.bins); cols.len()], vec![seq])?)
}
