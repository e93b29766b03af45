//! Greedy covering of a database with an ordered pattern set.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::encode::StandardTable;
use crate::error::{Error, Result};
use crate::types::{Database, Event, Occurrence, Pattern};
use crate::window::{find_usable_windows, max_window_len};

const NONE: u32 = u32::MAX;

/// One used occurrence of a non-singleton pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverElement {
    /// Index into the ordered pattern list the cover was built from.
    pub pattern: usize,
    pub occurrence: Occurrence,
}

impl CoverElement {
    /// The `(time, event)` cells this element covers.
    pub fn cells<'a>(&'a self, p: &'a Pattern) -> impl Iterator<Item = (usize, Event)> + 'a {
        p.steps()
            .iter()
            .zip(&self.occurrence.matched)
            .flat_map(|(step, &t)| step.iter().map(move |&e| (t as usize, e)))
    }
}

/// A partition of all cells of a database into pattern occurrences and singletons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    /// Non-singleton elements in the order they were accepted.
    pub elements: Vec<CoverElement>,
    // owner[seq][cell] = index of the covering pattern
    owner: Vec<Vec<u32>>,
}

impl Cover {
    /// Index of the pattern covering a cell.
    pub fn owner(&self, seq: usize, time: usize, attr: u32, n_attrs: usize) -> Option<usize> {
        match self.owner[seq][time * n_attrs + attr as usize] {
            NONE => None,
            o => Some(o as usize),
        }
    }

    /// Number of cells covered by singleton patterns.
    pub fn residual_count(&self, ps: &[Pattern]) -> usize {
        self.owner.iter().flatten().filter(|&&o| o != NONE && ps[o as usize].is_singleton()).count()
    }

    /// Checks that every cell is covered exactly once by a pattern whose events match the data.
    pub fn check_partition(&self, db: &Database, ps: &[Pattern]) -> Result<()> {
        let n = db.n_attrs();
        let mut seen: Vec<Vec<bool>> = db.sequences().iter().map(|s| alloc::vec![false; s.size()]).collect();
        for el in &self.elements {
            let p = ps.get(el.pattern).ok_or(Error::UnknownPattern(el.pattern))?;
            let seq = el.occurrence.seq as usize;
            let s = &db.sequences()[seq];
            if el.occurrence.matched.len() != p.len() || el.occurrence.matched.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::CoverMismatch { seq, time: el.occurrence.start() });
            }
            for (t, e) in el.cells(p) {
                if t >= s.len() || s.get(t, e.attr) != e.symbol {
                    return Err(Error::CoverMismatch { seq, time: t });
                }
                let cell = &mut seen[seq][t * n + e.attr as usize];
                if *cell {
                    return Err(Error::DoubleCovered { seq, time: t, attr: e.attr });
                }
                *cell = true;
            }
        }
        for (seq, s) in db.sequences().iter().enumerate() {
            for t in 0..s.len() {
                for a in 0..n {
                    let owner = self.owner[seq][t * n + a];
                    if seen[seq][t * n + a] {
                        continue;
                    }
                    if owner == NONE {
                        return Err(Error::Uncovered { seq, time: t, attr: a as u32 });
                    }
                    let p = &ps[owner as usize];
                    let e = Event::new(a as u32, s.get(t, a as u32));
                    if !p.is_singleton() || p.steps()[0][0] != e {
                        return Err(Error::CoverMismatch { seq, time: t });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sort key of the cover order: ↓||X||, ↓support, ↓L(X|ST), ↑lexicographic.
#[derive(Clone, Debug)]
pub struct CoverKey {
    pub size: usize,
    pub support: usize,
    pub st_len: f64,
}

pub fn compare_cover_keys(a: &CoverKey, pa: &Pattern, b: &CoverKey, pb: &Pattern) -> Ordering {
    b.size
        .cmp(&a.size)
        .then(b.support.cmp(&a.support))
        .then(b.st_len.total_cmp(&a.st_len))
        .then_with(|| pa.cmp(pb))
}

/// Orders patterns for covering. Support counts usable (gap-bounded) occurrences.
pub fn cover_order(ps: &[Pattern], db: &Database) -> Vec<Pattern> {
    let st = StandardTable::new(db);
    let mut keyed: Vec<(CoverKey, &Pattern)> = ps
        .iter()
        .map(|p| {
            let support = db
                .sequences()
                .iter()
                .enumerate()
                .map(|(i, s)| find_usable_windows(p, s, i as u32).len())
                .sum();
            (CoverKey { size: p.size(), support, st_len: st.pattern_len(p) }, p)
        })
        .collect();
    keyed.sort_by(|(ka, pa), (kb, pb)| compare_cover_keys(ka, pa, kb, pb));
    keyed.into_iter().map(|(_, p)| p.clone()).collect()
}

/// Covers `db` with the patterns in `ps`, taken in the given order.
///
/// Each pattern's disjoint usable occurrences are computed against the full data and
/// accepted in ascending (sequence, start) order when none of their cells is covered yet.
/// Fails when some event of the data has no singleton in `ps`.
pub fn cover(db: &Database, ps: &[Pattern]) -> Result<Cover> {
    cover_with(db, ps, |i, p| {
        db.sequences()
            .iter()
            .enumerate()
            .flat_map(|(si, s)| find_usable_windows(p, s, si as u32))
            .collect::<Vec<_>>()
            .into_iter()
            .map(move |o| (i, o))
    })
}

pub(crate) fn cover_with<F, I>(db: &Database, ps: &[Pattern], mut occurrences: F) -> Result<Cover>
where
    F: FnMut(usize, &Pattern) -> I,
    I: Iterator<Item = (usize, Occurrence)>,
{
    let n = db.n_attrs();
    let mut owner: Vec<Vec<u32>> = db.sequences().iter().map(|s| alloc::vec![NONE; s.size()]).collect();
    let mut remaining = db.total_events();
    let mut elements = Vec::new();

    for (i, p) in ps.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if p.is_singleton() {
            let e = p.steps()[0][0];
            for (seq, s) in db.sequences().iter().enumerate() {
                if e.attr as usize >= n {
                    continue;
                }
                for t in 0..s.len() {
                    let c = t * n + e.attr as usize;
                    if owner[seq][c] == NONE && s.cells()[c] == e.symbol {
                        owner[seq][c] = i as u32;
                        remaining -= 1;
                    }
                }
            }
            continue;
        }
        let bound = max_window_len(p.len());
        for (_, occ) in occurrences(i, p) {
            if occ.window_len() > bound {
                continue;
            }
            let seq = occ.seq as usize;
            let free = p
                .steps()
                .iter()
                .zip(&occ.matched)
                .all(|(step, &t)| step.iter().all(|e| owner[seq][t as usize * n + e.attr as usize] == NONE));
            if !free {
                continue;
            }
            for (step, &t) in p.steps().iter().zip(&occ.matched) {
                for e in step {
                    owner[seq][t as usize * n + e.attr as usize] = i as u32;
                }
            }
            remaining -= p.size();
            elements.push(CoverElement { pattern: i, occurrence: occ });
        }
    }

    if remaining > 0 {
        for (seq, s) in db.sequences().iter().enumerate() {
            for t in 0..s.len() {
                for a in 0..n {
                    if owner[seq][t * n + a] == NONE {
                        return Err(Error::Uncovered { seq, time: t, attr: a as u32 });
                    }
                }
            }
        }
    }
    Ok(Cover { elements, owner })
}

/// Per-pattern counts of a cover, without materialising it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverCounts {
    /// usage and gaps of each non-singleton, in the order given.
    pub usage: Vec<u64>,
    pub gaps: Vec<u64>,
    /// residual singleton usage, indexed by event index.
    pub singleton_usage: Vec<u64>,
    /// Indices of the used occurrences of each non-singleton.
    pub used: Vec<Vec<u32>>,
}

/// Reusable covered-cell bitmap for repeated covering of one database.
#[derive(Clone, Debug)]
pub struct Coverer {
    n_attrs: usize,
    covered: Vec<Vec<u64>>,
    singleton_counts: Vec<u64>,
    event_offsets: Vec<usize>,
}

impl Coverer {
    pub fn new(db: &Database) -> Self {
        let covered = db.sequences().iter().map(|s| alloc::vec![0u64; s.size().div_ceil(64)]).collect();
        let event_offsets = (0..db.n_attrs()).map(|a| db.event_index(Event::new(a as u32, 0))).collect();
        Coverer { n_attrs: db.n_attrs(), covered, singleton_counts: db.singleton_counts(), event_offsets }
    }

    /// Covers with non-singleton patterns (already in cover order) given their usable
    /// occurrences; all remaining cells go to singletons.
    pub fn count(&mut self, patterns: &[(&Pattern, &[Occurrence])]) -> CoverCounts {
        for words in &mut self.covered {
            words.iter_mut().for_each(|w| *w = 0);
        }
        let n = self.n_attrs;
        let mut singleton_usage = self.singleton_counts.clone();
        let mut usage = Vec::with_capacity(patterns.len());
        let mut gaps = Vec::with_capacity(patterns.len());
        let mut used_all = Vec::with_capacity(patterns.len());
        for (p, occs) in patterns {
            let bound = max_window_len(p.len());
            let (mut u, mut g) = (0u64, 0u64);
            let mut used = Vec::new();
            for (oi, occ) in occs.iter().enumerate() {
                if occ.window_len() > bound {
                    continue;
                }
                let bits = &mut self.covered[occ.seq as usize];
                let free = p.steps().iter().zip(&occ.matched).all(|(step, &t)| {
                    step.iter().all(|e| {
                        let c = t as usize * n + e.attr as usize;
                        bits[c >> 6] & (1 << (c & 63)) == 0
                    })
                });
                if !free {
                    continue;
                }
                for (step, &t) in p.steps().iter().zip(&occ.matched) {
                    for e in step {
                        let c = t as usize * n + e.attr as usize;
                        bits[c >> 6] |= 1 << (c & 63);
                        singleton_usage[self.event_offsets[e.attr as usize] + e.symbol as usize] -= 1;
                    }
                }
                u += 1;
                g += occ.n_gaps() as u64;
                used.push(oi as u32);
            }
            usage.push(u);
            gaps.push(g);
            used_all.push(used);
        }
        CoverCounts { usage, gaps, singleton_usage, used: used_all }
    }
}
