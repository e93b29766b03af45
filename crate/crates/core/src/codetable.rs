//! Code tables: ordered patterns plus all singletons, with the usage statistics of the
//! cover they induce.

use alloc::vec::Vec;

use crate::cover::{cover, cover_order, Cover};
use crate::encode::{
    encoded_size, gap_fill_code_lens, model_len, pattern_code_len, streams_len, EncodedSize, EntryStats,
    StandardTable,
};
use crate::error::{Error, Result};
use crate::types::{Alphabet, Database, Pattern};

/// usage / gaps / fills per code-table entry, aligned with the pattern list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UsageStats {
    pub usage: Vec<u64>,
    pub gaps: Vec<u64>,
    pub fills: Vec<u64>,
}

impl UsageStats {
    pub fn from_cover(db: &Database, ps: &[Pattern], c: &Cover) -> Self {
        let n = ps.len();
        let mut stats = UsageStats { usage: alloc::vec![0; n], gaps: alloc::vec![0; n], fills: alloc::vec![0; n] };
        for el in &c.elements {
            stats.usage[el.pattern] += 1;
            stats.gaps[el.pattern] += el.occurrence.n_gaps() as u64;
            stats.fills[el.pattern] += ps[el.pattern].len() as u64 - 1;
        }
        let na = db.n_attrs();
        for (seq, s) in db.sequences().iter().enumerate() {
            for t in 0..s.len() {
                for a in 0..na {
                    if let Some(o) = c.owner(seq, t, a as u32, na) {
                        if ps[o].is_singleton() {
                            stats.usage[o] += 1;
                        }
                    }
                }
            }
        }
        stats
    }

    /// Σ usage over the whole table.
    pub fn total_usage(&self) -> u64 {
        self.usage.iter().sum()
    }
}

/// A code table over a database: non-singletons in cover order followed by every singleton
/// of Ω in (attribute, symbol) order.
#[derive(Clone, Debug)]
pub struct CodeTable {
    alphabets: Vec<Alphabet>,
    patterns: Vec<Pattern>,
    n_non_singletons: usize,
    stats: UsageStats,
    size: EncodedSize,
}

impl CodeTable {
    /// The singleton-only standard code table ST.
    pub fn standard(db: &Database) -> Result<Self> {
        CodeTable::build(db, Vec::new())
    }

    /// Orders `non_singletons` by cover order, covers `db` and scores the result.
    /// Duplicates and singletons in the input are ignored.
    pub fn build(db: &Database, non_singletons: Vec<Pattern>) -> Result<Self> {
        if db.n_sequences() == 0 {
            return Err(Error::EmptyDatabase);
        }
        let mut ns: Vec<Pattern> = non_singletons.into_iter().filter(|p| !p.is_singleton()).collect();
        ns.sort();
        ns.dedup();
        for p in &ns {
            db.validate_pattern(p)?;
        }
        let mut patterns = cover_order(&ns, db);
        let n_non_singletons = patterns.len();
        patterns.extend(db.singletons().map(Pattern::singleton));
        let c = cover(db, &patterns)?;
        let stats = UsageStats::from_cover(db, &patterns, &c);
        let st = StandardTable::new(db);
        let size = score(&patterns[..n_non_singletons], &stats, &st);
        Ok(CodeTable { alphabets: db.alphabets().to_vec(), patterns, n_non_singletons, stats, size })
    }

    /// Assembles a table from already ordered parts (used by the search, which keeps its own
    /// cover statistics).
    pub(crate) fn from_parts(
        db: &Database,
        non_singletons: Vec<Pattern>,
        stats: UsageStats,
        size: EncodedSize,
    ) -> Self {
        let n_non_singletons = non_singletons.len();
        let mut patterns = non_singletons;
        patterns.extend(db.singletons().map(Pattern::singleton));
        CodeTable { alphabets: db.alphabets().to_vec(), patterns, n_non_singletons, stats, size }
    }

    pub fn alphabets(&self) -> &[Alphabet] {
        &self.alphabets
    }

    pub fn n_attrs(&self) -> usize {
        self.alphabets.len()
    }

    /// All entries in order: non-singletons first, then singletons.
    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn non_singletons(&self) -> &[Pattern] {
        &self.patterns[..self.n_non_singletons]
    }

    pub fn stats(&self) -> &UsageStats {
        &self.stats
    }

    pub fn encoded_size(&self) -> EncodedSize {
        self.size
    }

    pub fn index_of(&self, p: &Pattern) -> Option<usize> {
        self.patterns.iter().position(|q| q == p)
    }

    /// Pattern code length of entry `i`, `None` when unused.
    pub fn code_len(&self, i: usize) -> Option<f64> {
        pattern_code_len(self.stats.usage[i], self.stats.total_usage())
    }

    /// Gap and fill code lengths of entry `i`; `None` for one-step patterns or unused ones.
    pub fn gap_fill_lens(&self, i: usize) -> Option<(f64, f64)> {
        if self.patterns[i].len() < 2 || self.stats.gaps[i] + self.stats.fills[i] == 0 {
            return None;
        }
        Some(gap_fill_code_lens(self.stats.gaps[i], self.stats.fills[i]))
    }

    /// Re-covers `db` with this table's order.
    pub fn cover(&self, db: &Database) -> Result<Cover> {
        cover(db, &self.patterns)
    }
}

fn entries(non_singletons: &[Pattern], stats: &UsageStats, st: &StandardTable) -> Vec<EntryStats> {
    non_singletons
        .iter()
        .enumerate()
        .map(|(i, p)| EntryStats { steps: p.len(), usage: stats.usage[i], gaps: stats.gaps[i], st_len: st.pattern_len(p) })
        .collect()
}

fn score(non_singletons: &[Pattern], stats: &UsageStats, st: &StandardTable) -> EncodedSize {
    let es = entries(non_singletons, stats, st);
    encoded_size(&es, &stats.usage[non_singletons.len()..], st)
}

/// L(D | CT) for a pattern list whose non-singletons come first.
pub fn data_len(ps: &[Pattern], stats: &UsageStats, st: &StandardTable) -> f64 {
    let k = ps.iter().take_while(|p| !p.is_singleton()).count();
    let es = entries(&ps[..k], stats, st);
    let (cp, cg) = streams_len(&es, &stats.usage[k..]);
    cp + cg + st.data_constant()
}

/// L(CT | C) for a pattern list whose non-singletons come first.
pub fn ct_len(ps: &[Pattern], stats: &UsageStats, st: &StandardTable) -> f64 {
    let k = ps.iter().take_while(|p| !p.is_singleton()).count();
    model_len(&entries(&ps[..k], stats, st), st)
}

/// L(CT, D) of the code table holding `non_singletons` plus all singletons.
pub fn total_len(db: &Database, non_singletons: &[Pattern]) -> Result<EncodedSize> {
    Ok(CodeTable::build(db, non_singletons.to_vec())?.encoded_size())
}
