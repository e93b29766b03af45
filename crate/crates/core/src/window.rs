//! Minimal-window occurrence search.
//!
//! For every start time whose multi-event contains the first pattern step we compute the
//! earliest completion by greedy forward matching. Completion times are non-decreasing in
//! the start, so the window `[j, end(j)]` is minimal iff the next valid start completes
//! strictly later. Disjoint occurrences are then picked greedily left to right, which
//! yields the earliest-ending maximal disjoint set.

use alloc::vec::Vec;

use crate::types::{Database, Event, MultiSeq, Occurrence, Pattern};

/// Longest admissible window for a pattern of `t` steps: `t(o) < 2 t(X)`.
#[inline]
pub fn max_window_len(t: usize) -> usize {
    2 * t - 1
}

/// Earliest completion of `steps` starting at `start`, or `None` if the pattern does not
/// complete (within `limit`, the last admissible end time, when given).
fn complete_from(s: &MultiSeq, steps: &[Vec<Event>], start: usize, limit: Option<usize>) -> Option<Vec<u32>> {
    let last = match limit {
        Some(l) => l.min(s.len().saturating_sub(1)),
        None => s.len().saturating_sub(1),
    };
    let mut matched = Vec::with_capacity(steps.len());
    matched.push(start as u32);
    let mut t = start;
    for step in &steps[1..] {
        loop {
            t += 1;
            if t > last {
                return None;
            }
            if s.contains(t, step) {
                break;
            }
        }
        matched.push(t as u32);
    }
    Some(matched)
}

fn select_disjoint<I>(seq: u32, completions: I) -> Vec<Occurrence>
where
    I: Iterator<Item = Option<Vec<u32>>>,
{
    // A window is minimal iff the following start completes strictly later.
    let mut out = Vec::new();
    let mut pending: Option<Vec<u32>> = None;
    let mut last_end: Option<u32> = None;
    let mut accept = |m: Vec<u32>, out: &mut Vec<Occurrence>| {
        let start = m[0];
        if last_end.is_none_or(|e| start > e) {
            last_end = Some(*m.last().unwrap());
            out.push(Occurrence { seq, matched: m });
        }
    };
    for c in completions {
        if let Some(prev) = pending.take() {
            let prev_end = *prev.last().unwrap();
            let later = match &c {
                Some(m) => *m.last().unwrap() > prev_end,
                None => true,
            };
            if later {
                accept(prev, &mut out);
            }
        }
        pending = c;
    }
    if let Some(prev) = pending {
        accept(prev, &mut out);
    }
    out
}

fn windows_with_starts<I>(p: &Pattern, s: &MultiSeq, seq: u32, starts: I, bounded: bool) -> Vec<Occurrence>
where
    I: Iterator<Item = usize>,
{
    let steps = p.steps();
    let span = max_window_len(steps.len());
    let completions = starts.map(|j| {
        let limit = if bounded { Some(j + span - 1) } else { None };
        complete_from(s, steps, j, limit)
    });
    select_disjoint(seq, completions)
}

/// The greedy left-to-right maximal set of pairwise disjoint minimal windows of `p` in `s`.
pub fn find_minimal_windows(p: &Pattern, s: &MultiSeq, seq: u32) -> Vec<Occurrence> {
    let first = &p.steps()[0];
    let starts = (0..s.len()).filter(|&t| s.contains(t, first));
    windows_with_starts(p, s, seq, starts, false)
}

/// Like [`find_minimal_windows`], restricted to windows obeying the gap bound
/// `t(o) < 2 t(X)`; these are the only occurrences a cover may use.
pub fn find_usable_windows(p: &Pattern, s: &MultiSeq, seq: u32) -> Vec<Occurrence> {
    let first = &p.steps()[0];
    let starts = (0..s.len()).filter(|&t| s.contains(t, first));
    windows_with_starts(p, s, seq, starts, true)
}

/// support(X | D): the number of disjoint minimal windows summed over sequences.
pub fn support(p: &Pattern, db: &Database) -> usize {
    db.sequences()
        .iter()
        .enumerate()
        .map(|(i, s)| find_minimal_windows(p, s, i as u32).len())
        .sum()
}

/// Per-sequence sorted time positions of every singleton event.
#[derive(Clone, Debug)]
pub struct EventIndex {
    // positions[seq][event_index]
    positions: Vec<Vec<Vec<u32>>>,
}

impl EventIndex {
    pub fn new(db: &Database) -> Self {
        let n = db.n_singletons();
        let positions = db
            .sequences()
            .iter()
            .map(|s| {
                let mut per_event: Vec<Vec<u32>> = alloc::vec![Vec::new(); n];
                for t in 0..s.len() {
                    for (a, &sym) in s.row(t).iter().enumerate() {
                        per_event[db.event_index(Event::new(a as u32, sym))].push(t as u32);
                    }
                }
                per_event
            })
            .collect();
        EventIndex { positions }
    }

    pub fn positions(&self, seq: usize, event: usize) -> &[u32] {
        &self.positions[seq][event]
    }

    /// Usable (gap-bounded) disjoint minimal windows of `p` over the whole database.
    pub fn usable_windows(&self, db: &Database, p: &Pattern) -> Vec<Occurrence> {
        let first = &p.steps()[0];
        let mut out = Vec::new();
        for (si, s) in db.sequences().iter().enumerate() {
            // drive the start scan from the rarest event of the first step
            let lead = first
                .iter()
                .map(|&e| self.positions(si, db.event_index(e)))
                .min_by_key(|v| v.len())
                .unwrap();
            let starts = lead.iter().map(|&t| t as usize).filter(|&t| s.contains(t, first));
            out.extend(windows_with_starts(p, s, si as u32, starts, true));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Alphabet;
    use alloc::vec;

    // univariate helpers: symbols a=0, b=1, c=2
    fn uni(symbols: &[u32]) -> MultiSeq {
        MultiSeq::new(1, symbols.to_vec()).unwrap()
    }

    fn chain(symbols: &[u32]) -> Pattern {
        Pattern::new(symbols.iter().map(|&s| vec![Event::new(0, s)]).collect()).unwrap()
    }

    #[test]
    fn aa_occurs_twice_with_one_gap() {
        // a,b,a,b,c,a,c,a
        let s = uni(&[0, 1, 0, 1, 2, 0, 2, 0]);
        let occ = find_minimal_windows(&chain(&[0, 0]), &s, 0);
        assert_eq!(occ.len(), 2);
        assert!(occ.iter().all(|o| o.n_gaps() == 1));
        assert_eq!(occ[0].matched, vec![0, 2]);
        assert_eq!(occ[1].matched, vec![5, 7]);
    }

    #[test]
    fn singleton_windows() {
        let s = uni(&[0, 1, 0]);
        let occ = find_minimal_windows(&chain(&[0]), &s, 0);
        let starts: Vec<_> = occ.iter().map(Occurrence::start).collect();
        assert_eq!(starts, vec![0, 2]);
    }

    #[test]
    fn ab_in_aabb_has_one_window() {
        let s = uni(&[0, 0, 1, 1]);
        let occ = find_minimal_windows(&chain(&[0, 1]), &s, 0);
        assert_eq!(occ.len(), 1);
        assert_eq!((occ[0].start(), occ[0].end()), (1, 2));
    }

    #[test]
    fn usable_windows_drop_long_ones() {
        // a x x b : window length 4 for a 2-step pattern is not usable
        let s = uni(&[0, 2, 2, 1, 0, 1]);
        let p = chain(&[0, 1]);
        assert_eq!(find_minimal_windows(&p, &s, 0).len(), 2);
        let usable = find_usable_windows(&p, &s, 0);
        assert_eq!(usable.len(), 1);
        assert_eq!(usable[0].matched, vec![4, 5]);
    }

    #[test]
    fn long_window_does_not_block_a_usable_one() {
        // {0:a}{1:b}: a@0 .. b@4 is minimal but too long; a@4 b@5 starts inside it
        let s = MultiSeq::from_rows(2, &[[0, 2], [2, 2], [2, 2], [2, 2], [0, 1], [2, 1]]).unwrap();
        let p = Pattern::new(vec![vec![Event::new(0, 0)], vec![Event::new(1, 1)]]).unwrap();
        let all = find_minimal_windows(&p, &s, 0);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].matched, vec![0, 4]);
        let usable = find_usable_windows(&p, &s, 0);
        assert_eq!(usable.len(), 1);
        assert_eq!(usable[0].matched, vec![4, 5]);
    }

    #[test]
    fn indexed_search_matches_scan() {
        let s = MultiSeq::from_rows(2, &[[0, 1], [1, 1], [0, 0], [0, 1], [1, 0], [0, 1]]).unwrap();
        let db = Database::new(vec![Alphabet::numbered(2), Alphabet::numbered(2)], vec![s.clone(), s]).unwrap();
        let idx = EventIndex::new(&db);
        let p = Pattern::new(vec![vec![Event::new(0, 0), Event::new(1, 1)], vec![Event::new(0, 1)]]).unwrap();
        let mut scanned = find_usable_windows(&p, &db.sequences()[0], 0);
        scanned.extend(find_usable_windows(&p, &db.sequences()[1], 1));
        assert_eq!(idx.usable_windows(&db, &p), scanned);
    }

    #[test]
    fn support_on_empty_database_is_zero() {
        let db = Database::new(vec![Alphabet::numbered(2)], vec![]).unwrap();
        assert_eq!(support(&chain(&[0, 1]), &db), 0);
    }

    #[test]
    fn singleton_support_counts_cells() {
        let s = uni(&[0, 1, 0, 0, 2]);
        let db = Database::new(vec![Alphabet::numbered(3)], vec![s]).unwrap();
        assert_eq!(support(&chain(&[0]), &db), 3);
    }
}
