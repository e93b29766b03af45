//! JSON forms of code tables and planted ground truth. Events are written with their
//! value names so files stay valid when a database is re-read with other symbol codes.

use std::fs;
use std::path::Path;

use ditto_core::{CodeTable, Database, Event, GroundTruth, Occurrence, Pattern, PlantSpec};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventJson {
    pub attr: u32,
    pub value: String,
}

pub type StepsJson = Vec<Vec<EventJson>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub steps: StepsJson,
    pub usage: u64,
    pub gaps: u64,
    pub fills: u64,
    /// Bits; absent for unused patterns.
    pub code_len: Option<f64>,
    pub gap_len: Option<f64>,
    pub fill_len: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeTableJson {
    pub attributes: usize,
    pub model_len: f64,
    pub data_len: f64,
    pub total_len: f64,
    pub standard_len: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_secs: Option<f64>,
    /// Non-singletons in cover order, then the singletons.
    pub patterns: Vec<EntryJson>,
}

fn bits(x: f64) -> f64 {
    (x * 1e8).round() / 1e8
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then(|| bits(x))
}

pub fn steps_to_json(p: &Pattern, db: &Database) -> StepsJson {
    p.steps()
        .iter()
        .map(|s| {
            s.iter()
                .map(|e| EventJson { attr: e.attr, value: db.alphabet(e.attr).name(e.symbol).unwrap_or("?").to_string() })
                .collect()
        })
        .collect()
}

/// Resolves value names against `db`.
pub fn steps_from_json(steps: &StepsJson, db: &Database) -> Result<Pattern> {
    let mut out = Vec::with_capacity(steps.len());
    for s in steps {
        let mut step = Vec::with_capacity(s.len());
        for e in s {
            if e.attr as usize >= db.n_attrs() {
                return Err(Error::Format(format!("attribute {} is not in the database", e.attr)));
            }
            let sym = db
                .alphabet(e.attr)
                .code(&e.value)
                .ok_or_else(|| Error::Format(format!("value `{}` of attribute {} is not in the database", e.value, e.attr)))?;
            step.push(Event::new(e.attr, sym));
        }
        step.sort();
        out.push(step);
    }
    Ok(Pattern::new(out)?)
}

pub fn code_table_json(ct: &CodeTable, db: &Database) -> Result<CodeTableJson> {
    let size = ct.encoded_size();
    let standard = ditto_core::total_len(db, &[])?.total;
    let st = ct.stats();
    let patterns = ct
        .patterns()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let (gap_len, fill_len) = ct.gap_fill_lens(i).map_or((None, None), |(g, f)| (finite(g), finite(f)));
            EntryJson {
                steps: steps_to_json(p, db),
                usage: st.usage[i],
                gaps: st.gaps[i],
                fills: st.fills[i],
                code_len: ct.code_len(i).and_then(finite),
                gap_len,
                fill_len,
            }
        })
        .collect();
    Ok(CodeTableJson {
        attributes: ct.n_attrs(),
        model_len: bits(size.model),
        data_len: bits(size.data),
        total_len: bits(size.total),
        standard_len: bits(standard),
        runtime_secs: None,
        patterns,
    })
}

impl CodeTableJson {
    /// The non-singleton patterns resolved against `db`.
    pub fn non_singletons(&self, db: &Database) -> Result<Vec<Pattern>> {
        if self.attributes != db.n_attrs() {
            return Err(Error::Format(format!("code table has {} attributes, database {}", self.attributes, db.n_attrs())));
        }
        let mut out = Vec::new();
        for e in &self.patterns {
            let p = steps_from_json(&e.steps, db)?;
            if !p.is_singleton() {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Rebuilds the table on `db` from its non-singletons.
    pub fn to_code_table(&self, db: &Database) -> Result<CodeTable> {
        Ok(CodeTable::build(db, self.non_singletons(db)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecJson {
    pub length: usize,
    pub alphabet_sizes: Vec<usize>,
    pub n_patterns: usize,
    pub size_min: usize,
    pub size_max: usize,
    pub gap_chance: f64,
    pub support: f64,
    pub no_overwrite: bool,
    pub no_interleave: bool,
}

impl From<&PlantSpec> for SpecJson {
    fn from(s: &PlantSpec) -> Self {
        SpecJson {
            length: s.length,
            alphabet_sizes: s.alphabet_sizes.clone(),
            n_patterns: s.n_patterns,
            size_min: s.size_min,
            size_max: s.size_max,
            gap_chance: s.gap_chance,
            support: s.support,
            no_overwrite: s.no_overwrite,
            no_interleave: s.no_interleave,
        }
    }
}

impl From<&SpecJson> for PlantSpec {
    fn from(s: &SpecJson) -> Self {
        PlantSpec {
            length: s.length,
            alphabet_sizes: s.alphabet_sizes.clone(),
            n_patterns: s.n_patterns,
            size_min: s.size_min,
            size_max: s.size_max,
            gap_chance: s.gap_chance,
            support: s.support,
            no_overwrite: s.no_overwrite,
            no_interleave: s.no_interleave,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccurrenceJson {
    pub seq: u32,
    /// 1-based time of each pattern step.
    pub times: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlantedJson {
    pub steps: StepsJson,
    pub occurrences: Vec<OccurrenceJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruthJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecJson>,
    pub patterns: Vec<PlantedJson>,
}

impl TruthJson {
    pub fn new(gt: &GroundTruth, db: &Database, spec: Option<&PlantSpec>, seed: Option<u64>) -> Self {
        let patterns = gt
            .patterns
            .iter()
            .zip(&gt.occurrences)
            .map(|(p, occ)| PlantedJson {
                steps: steps_to_json(p, db),
                occurrences: occ.iter().map(|o| OccurrenceJson { seq: o.seq, times: o.matched.iter().map(|t| t + 1).collect() }).collect(),
            })
            .collect();
        TruthJson { seed, spec: spec.map(SpecJson::from), patterns }
    }

    pub fn to_ground_truth(&self, db: &Database) -> Result<GroundTruth> {
        let mut gt = GroundTruth { patterns: Vec::new(), occurrences: Vec::new() };
        for p in &self.patterns {
            gt.patterns.push(steps_from_json(&p.steps, db)?);
            let mut occ = Vec::with_capacity(p.occurrences.len());
            for o in &p.occurrences {
                if o.times.contains(&0) {
                    return Err(Error::Format("occurrence times are 1-based".into()));
                }
                occ.push(Occurrence { seq: o.seq, matched: o.times.iter().map(|t| t - 1).collect() });
            }
            gt.occurrences.push(occ);
        }
        Ok(gt)
    }
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ditto_core::{mine, Alphabet, MinerConfig, MultiSeq};

    fn db() -> Database {
        let names = |v: &[&str]| Alphabet::new(v.iter().map(|s| s.to_string()).collect());
        let rows: Vec<[u32; 2]> = (0..40).map(|t| [(t % 4) as u32, ((t / 2) % 2) as u32]).collect();
        Database::new(vec![names(&["a", "b", "c", "d"]), names(&["x", "y"])], vec![MultiSeq::from_rows(2, &rows).unwrap()]).unwrap()
    }

    #[test]
    fn code_table_round_trip() {
        let db = db();
        let ct = mine(&db, &MinerConfig::new(2)).unwrap().code_table;
        assert!(!ct.non_singletons().is_empty());
        let j = code_table_json(&ct, &db).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: CodeTableJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        let rebuilt = back.to_code_table(&db).unwrap();
        assert_eq!(rebuilt.patterns(), ct.patterns());
        assert!((rebuilt.encoded_size().total - j.total_len).abs() < 1e-7);
        assert!(j.total_len < j.standard_len);
        assert_eq!(j.patterns.len(), ct.patterns().len());
        assert!(j.patterns[0].steps.iter().flatten().all(|e| ["a", "b", "c", "d", "x", "y"].contains(&e.value.as_str())));
    }

    #[test]
    fn lengths_have_eight_decimals() {
        assert_eq!(bits(1.0 / 3.0), 0.33333333);
        assert_eq!(finite(f64::INFINITY), None);
    }

    #[test]
    fn unknown_values_are_rejected() {
        let db = db();
        let steps = vec![vec![EventJson { attr: 0, value: "z".into() }], vec![EventJson { attr: 0, value: "a".into() }]];
        assert!(steps_from_json(&steps, &db).unwrap_err().to_string().contains("`z`"));
        let steps = vec![vec![EventJson { attr: 5, value: "a".into() }]];
        assert!(steps_from_json(&steps, &db).is_err());
    }

    #[test]
    fn truth_round_trip() {
        let spec = PlantSpec::uniform(300, 3, 6, 2, (3, 4), 0.05);
        let (db, gt) = ditto_core::generate_synthetic(&spec, 7).unwrap();
        let j = TruthJson::new(&gt, &db, Some(&spec), Some(7));
        let back: TruthJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_ground_truth(&db).unwrap(), gt);
        assert_eq!(PlantSpec::from(back.spec.as_ref().unwrap()), spec);
    }
}
