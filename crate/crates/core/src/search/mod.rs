//! Greedy search for a good code table.
//!
//! Candidates are built by aligning two code-table entries, ordered by an estimate of their
//! gain and accepted only when the exact total encoded length drops. Every acceptance is
//! followed by pruning, by extensions of the accepted pattern with the events seen in its
//! gaps, and by a fresh round of candidates.

pub mod cache;

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Ordering;

pub use cache::{CacheOutcome, InfrequentCache};

use crate::codetable::{CodeTable, UsageStats};
use crate::cover::{compare_cover_keys, CoverCounts, CoverKey, Coverer};
use crate::encode::{encoded_size, ln_pos, xlog2x, EncodedSize, EntryStats, StandardTable};
use crate::error::{Error, Result};
use crate::types::{Database, Event, Occurrence, Pattern};
use crate::window::EventIndex;

/// Improvements smaller than this are treated as rounding noise.
const MIN_IMPROVEMENT: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinerConfig {
    /// σ: minimum number of usable occurrences of a candidate.
    pub min_support: usize,
    /// Never re-evaluate a candidate once rejected.
    pub cache_rejected: bool,
    /// Stop after this many accepted patterns.
    pub max_accepted: Option<usize>,
}

impl MinerConfig {
    pub fn new(min_support: usize) -> Self {
        MinerConfig { min_support, cache_rejected: false, max_accepted: None }
    }
}

impl Default for MinerConfig {
    fn default() -> Self {
        MinerConfig::new(1)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// combination of two code-table entries
    Candidate,
    /// extension of an accepted pattern by one of its gap events
    Variation,
}

/// Reported to an [`Observer`] whenever the code table changes.
#[derive(Clone, Debug)]
pub enum SearchEvent<'a> {
    Accepted { pattern: &'a Pattern, source: Source, gain: f64, total: f64, ct_len: usize },
    Pruned { pattern: &'a Pattern, gain: f64, total: f64, ct_len: usize },
}

pub trait Observer {
    fn on_event(&mut self, event: &SearchEvent<'_>);
}

impl Observer for () {
    fn on_event(&mut self, _: &SearchEvent<'_>) {}
}

impl<F: FnMut(&SearchEvent<'_>)> Observer for F {
    fn on_event(&mut self, event: &SearchEvent<'_>) {
        self(event)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub evaluations: usize,
    pub support_counts: usize,
    pub accepted: usize,
    pub pruned: usize,
    pub cached_infrequent: usize,
}

#[derive(Clone, Debug)]
pub struct MineResult {
    pub code_table: CodeTable,
    /// Total encoded length after every change, starting with the standard table.
    pub history: Vec<f64>,
    pub stats: SearchStats,
}

/// A combined pattern with its ordering keys.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub pattern: Pattern,
    pub parents: (Pattern, Pattern),
    /// Step of the first parent at which the second parent starts; may be negative.
    pub offset: isize,
    pub gain: f64,
    pub support: usize,
    pub st_len: f64,
}

/// ↓gain, ↓support, ↓||Z||, ↓L(Z|ST), ↑lexicographic.
pub fn candidate_order(a: &Candidate, b: &Candidate) -> Ordering {
    b.gain
        .total_cmp(&a.gain)
        .then(b.support.cmp(&a.support))
        .then(b.pattern.size().cmp(&a.pattern.size()))
        .then(b.st_len.total_cmp(&a.st_len))
        .then_with(|| a.pattern.cmp(&b.pattern))
}

/// Estimated change of L(D | CT) when a new pattern takes over `z = min(x, y)` usages of
/// its parents (`x / 2` when both parents are the same pattern). `s` is the total usage.
pub fn estimate_data_gain(s: u64, x: u64, y: u64, same: bool) -> f64 {
    let (s, x, y) = (s as f64, x as f64, y as f64);
    if same {
        let z = x / 2.0;
        let (s2, x2) = (s - z, x - 2.0 * z);
        xlog2x(s) - xlog2x(s2) + xlog2x(z) - xlog2x(x) + xlog2x(x2)
    } else {
        let z = x.min(y);
        let (s2, x2, y2) = (s - z, x - z, y - z);
        xlog2x(s) - xlog2x(s2) + xlog2x(z) - xlog2x(x) + xlog2x(x2) - xlog2x(y) + xlog2x(y2)
    }
}

/// Estimated gain in bits of adding a pattern with `t_z` steps and standard-table length
/// `st_len_z`; larger is better.
pub fn estimate_gain(s: u64, x: u64, y: u64, same: bool, t_z: usize, st_len_z: f64, n_attrs: usize) -> f64 {
    let model = -ln_pos(t_z as u64) - t_z as f64 * libm::log2(n_attrs as f64) - st_len_z;
    estimate_data_gain(s, x, y, same) + model
}

fn steps_conflict(a: &[Event], b: &[Event]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].attr.cmp(&b[j].attr) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => return true,
        }
    }
    false
}

/// Length of `x` combined with `y` starting at step `d` of `x`, or `None` on a conflict.
fn aligned_len(x: &Pattern, y: &Pattern, d: isize) -> Option<usize> {
    let (tx, ty) = (x.len() as isize, y.len() as isize);
    for k in d.max(0)..tx.min(d + ty) {
        if steps_conflict(&x.steps()[k as usize], &y.steps()[(k - d) as usize]) {
            return None;
        }
    }
    Some(((tx).max(d + ty) - d.min(0)) as usize)
}

/// Union of `x` and `y`, with the first step of `y` placed at step `d` of `x`.
pub fn combine(x: &Pattern, y: &Pattern, d: isize) -> Option<Pattern> {
    let len = aligned_len(x, y, d)?;
    let base = -d.min(0);
    let mut steps: Vec<Vec<Event>> = alloc::vec![Vec::new(); len];
    for (k, s) in x.steps().iter().enumerate() {
        steps[(k as isize + base) as usize].extend_from_slice(s);
    }
    for (k, s) in y.steps().iter().enumerate() {
        steps[(k as isize + d + base) as usize].extend_from_slice(s);
    }
    Pattern::new(steps).ok()
}

fn offsets(x: &Pattern, y: &Pattern, same: bool) -> core::ops::RangeInclusive<isize> {
    if same {
        1..=x.len() as isize
    } else {
        -(y.len() as isize)..=x.len() as isize
    }
}

/// Every valid alignment of `x` and `y` as `(offset, pattern)`. When `x == y` only positive
/// offsets are produced, the others giving the same patterns.
pub fn alignments(x: &Pattern, y: &Pattern) -> Vec<(isize, Pattern)> {
    offsets(x, y, x == y).filter_map(|d| combine(x, y, d).map(|p| (d, p))).collect()
}

struct Info {
    pattern: Pattern,
    occs: Vec<Occurrence>,
    support: usize,
    st_len: f64,
}

struct State {
    size: EncodedSize,
    counts: CoverCounts,
}

/// A code-table entry that can serve as a candidate parent.
struct Parent {
    pattern: Pattern,
    usage: u64,
    st_len: f64,
}

#[derive(Copy, Clone, Debug)]
struct Pending {
    gain: f64,
    i: u32,
    j: u32,
    d: i32,
}

impl PartialEq for Pending {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Pending {}
impl PartialOrd for Pending {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Pending {
    fn cmp(&self, o: &Self) -> Ordering {
        self.gain.total_cmp(&o.gain).then((o.i, o.j, o.d).cmp(&(self.i, self.j, self.d)))
    }
}

/// Search state over one database.
pub struct Miner<'a> {
    db: &'a Database,
    st: StandardTable,
    index: EventIndex,
    coverer: Coverer,
    config: MinerConfig,
    infos: Vec<Info>,
    ids: BTreeMap<Pattern, usize>,
    cache: InfrequentCache,
    rejected: BTreeSet<usize>,
    /// Non-singleton entries in cover order.
    ct: Vec<usize>,
    state: State,
    stats: SearchStats,
    history: Vec<f64>,
}

impl<'a> Miner<'a> {
    pub fn new(db: &'a Database, config: MinerConfig) -> Result<Self> {
        if config.min_support == 0 {
            return Err(Error::InvalidArgument("minimum support must be at least 1"));
        }
        if db.n_sequences() == 0 || db.total_events() == 0 {
            return Err(Error::EmptyDatabase);
        }
        let st = StandardTable::new(db);
        let mut cache = InfrequentCache::new();
        for (i, &c) in st.counts().iter().enumerate() {
            if (c as usize) < config.min_support {
                cache.insert(&Pattern::singleton(db.event_at(i)));
            }
        }
        let mut coverer = Coverer::new(db);
        let counts = coverer.count(&[]);
        let size = encoded_size(&[], &counts.singleton_usage, &st);
        Ok(Miner {
            db,
            index: EventIndex::new(db),
            st,
            coverer,
            config,
            infos: Vec::new(),
            ids: BTreeMap::new(),
            cache,
            rejected: BTreeSet::new(),
            ct: Vec::new(),
            state: State { size, counts },
            stats: SearchStats::default(),
            history: alloc::vec![size.total],
        })
    }

    pub fn encoded_size(&self) -> EncodedSize {
        self.state.size
    }

    pub fn non_singletons(&self) -> Vec<Pattern> {
        self.ct.iter().map(|&i| self.infos[i].pattern.clone()).collect()
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn cache(&self) -> &InfrequentCache {
        &self.cache
    }

    /// The current code table with the statistics of the current cover.
    pub fn code_table(&self) -> CodeTable {
        let c = &self.state.counts;
        let n = self.ct.len();
        let mut stats = UsageStats {
            usage: c.usage.clone(),
            gaps: c.gaps.clone(),
            fills: self.ct.iter().zip(&c.usage).map(|(&i, &u)| u * (self.infos[i].pattern.len() as u64 - 1)).collect(),
        };
        stats.usage.extend_from_slice(&c.singleton_usage);
        stats.gaps.resize(n + c.singleton_usage.len(), 0);
        stats.fills.resize(n + c.singleton_usage.len(), 0);
        CodeTable::from_parts(self.db, self.non_singletons(), stats, self.state.size)
    }

    fn intern(&mut self, p: Pattern, occs: Vec<Occurrence>) -> usize {
        let id = self.infos.len();
        let st_len = self.st.pattern_len(&p);
        self.ids.insert(p.clone(), id);
        self.infos.push(Info { support: occs.len(), pattern: p, occs, st_len });
        id
    }

    /// Id of `p` if it is frequent, going through the infrequent cache.
    fn frequent(&mut self, p: Pattern) -> Option<usize> {
        if let Some(&id) = self.ids.get(&p) {
            return Some(id);
        }
        if self.cache.contains_subset(&p) {
            return None;
        }
        self.stats.support_counts += 1;
        let occs = self.index.usable_windows(self.db, &p);
        if occs.len() < self.config.min_support {
            self.cache.insert(&p);
            self.stats.cached_infrequent += 1;
            return None;
        }
        Some(self.intern(p, occs))
    }

    fn evaluate(&mut self, ct: &[usize]) -> State {
        self.stats.evaluations += 1;
        let infos = &self.infos;
        let pairs: Vec<(&Pattern, &[Occurrence])> =
            ct.iter().map(|&i| (&infos[i].pattern, infos[i].occs.as_slice())).collect();
        let counts = self.coverer.count(&pairs);
        let entries: Vec<EntryStats> = ct
            .iter()
            .zip(counts.usage.iter().zip(&counts.gaps))
            .map(|(&i, (&usage, &gaps))| EntryStats {
                steps: infos[i].pattern.len(),
                usage,
                gaps,
                st_len: infos[i].st_len,
            })
            .collect();
        let size = encoded_size(&entries, &counts.singleton_usage, &self.st);
        State { size, counts }
    }

    fn key(&self, id: usize) -> CoverKey {
        let i = &self.infos[id];
        CoverKey { size: i.pattern.size(), support: i.support, st_len: i.st_len }
    }

    fn with_inserted(&self, id: usize) -> Vec<usize> {
        let k = self.key(id);
        let p = &self.infos[id].pattern;
        let pos = self
            .ct
            .partition_point(|&o| compare_cover_keys(&self.key(o), &self.infos[o].pattern, &k, p) == Ordering::Less);
        let mut ct = self.ct.clone();
        ct.insert(pos, id);
        ct
    }

    fn usages(&self) -> BTreeMap<usize, u64> {
        self.ct.iter().copied().zip(self.state.counts.usage.iter().copied()).collect()
    }

    fn commit(&mut self, ct: Vec<usize>, state: State) -> f64 {
        let gain = self.state.size.total - state.size.total;
        self.ct = ct;
        self.state = state;
        self.history.push(self.state.size.total);
        gain
    }

    /// Adds the entry `id` if that lowers the total encoded length; prunes afterwards.
    fn try_add(&mut self, id: usize, source: Source, obs: &mut dyn Observer) -> bool {
        if self.ct.contains(&id) || (self.config.cache_rejected && self.rejected.contains(&id)) {
            return false;
        }
        if self.limit_reached() {
            return false;
        }
        let ct = self.with_inserted(id);
        let state = self.evaluate(&ct);
        if state.size.total >= self.state.size.total - MIN_IMPROVEMENT {
            if self.config.cache_rejected {
                self.rejected.insert(id);
            }
            return false;
        }
        let before = self.usages();
        let gain = self.commit(ct, state);
        self.stats.accepted += 1;
        obs.on_event(&SearchEvent::Accepted {
            pattern: &self.infos[id].pattern,
            source,
            gain,
            total: self.state.size.total,
            ct_len: self.ct.len(),
        });
        self.prune_from(before, obs);
        true
    }

    fn limit_reached(&self) -> bool {
        self.config.max_accepted.is_some_and(|m| self.stats.accepted >= m)
    }

    /// Adds `p` to the code table when it is frequent and improves compression, then prunes
    /// and tries its variations.
    pub fn add_pattern(&mut self, p: Pattern, obs: &mut dyn Observer) -> Result<bool> {
        self.db.validate_pattern(&p)?;
        if p.is_singleton() {
            return Ok(false);
        }
        let Some(id) = self.frequent(p) else { return Ok(false) };
        if self.try_add(id, Source::Candidate, obs) {
            self.variations_of(id, obs);
            return Ok(true);
        }
        Ok(false)
    }

    /// Inserts `p` whatever it does to the total, without pruning. Returns false for
    /// singletons and patterns already in the table.
    pub fn force_insert(&mut self, p: Pattern) -> Result<bool> {
        self.db.validate_pattern(&p)?;
        if p.is_singleton() || self.in_table(&p) {
            return Ok(false);
        }
        let id = match self.ids.get(&p) {
            Some(&id) => id,
            None => {
                let occs = self.index.usable_windows(self.db, &p);
                self.intern(p, occs)
            }
        };
        let ct = self.with_inserted(id);
        let state = self.evaluate(&ct);
        self.commit(ct, state);
        Ok(true)
    }

    /// Removes entries whose usage dropped below `before` while that lowers the total.
    fn prune_from(&mut self, before: BTreeMap<usize, u64>, obs: &mut dyn Observer) {
        let mut cand: BTreeSet<usize> = self
            .ct
            .iter()
            .zip(&self.state.counts.usage)
            .filter(|(id, &u)| before.get(id).is_some_and(|&b| u < b))
            .map(|(&id, _)| id)
            .collect();
        while let Some(y) = cand
            .iter()
            .copied()
            .filter_map(|id| self.ct.iter().position(|&o| o == id).map(|pos| (self.state.counts.usage[pos], pos, id)))
            .min()
            .map(|(_, _, id)| id)
        {
            cand.remove(&y);
            let ct: Vec<usize> = self.ct.iter().copied().filter(|&o| o != y).collect();
            let state = self.evaluate(&ct);
            if state.size.total < self.state.size.total - MIN_IMPROVEMENT {
                let before = self.usages();
                let gain = self.commit(ct, state);
                self.stats.pruned += 1;
                obs.on_event(&SearchEvent::Pruned {
                    pattern: &self.infos[y].pattern,
                    gain,
                    total: self.state.size.total,
                    ct_len: self.ct.len(),
                });
                for (pos, &id) in self.ct.iter().enumerate() {
                    if before.get(&id).is_some_and(|&b| self.state.counts.usage[pos] < b) {
                        cand.insert(id);
                    }
                }
            }
            cand.retain(|id| self.ct.contains(id));
        }
    }

    /// Prunes entries whose usage decreased since `before` was recorded.
    pub fn prune(&mut self, before: &[(Pattern, u64)], obs: &mut dyn Observer) {
        let before = before.iter().filter_map(|(p, u)| self.ids.get(p).map(|&id| (id, *u))).collect();
        self.prune_from(before, obs);
    }

    /// Usage of every non-singleton entry, to hand back to [`Miner::prune`].
    pub fn usage_snapshot(&self) -> Vec<(Pattern, u64)> {
        self.ct.iter().zip(&self.state.counts.usage).map(|(&i, &u)| (self.infos[i].pattern.clone(), u)).collect()
    }

    /// Extensions of `y` by one event seen in its used occurrences: at a gap as a new step,
    /// or at a matched step on an attribute `y` leaves free there.
    pub fn variation_candidates(&self, y: &Pattern) -> Vec<Pattern> {
        let Some(&id) = self.ids.get(y) else { return Vec::new() };
        let Some(pos) = self.ct.iter().position(|&o| o == id) else { return Vec::new() };
        let info = &self.infos[id];
        let na = self.db.n_attrs();
        // (step, merge into it?, event)
        let mut seen: BTreeSet<(usize, bool, Event)> = BTreeSet::new();
        for &oi in &self.state.counts.used[pos] {
            let occ = &info.occs[oi as usize];
            let s = &self.db.sequences()[occ.seq as usize];
            for (k, &m) in occ.matched.iter().enumerate() {
                let step = &info.pattern.steps()[k];
                for a in 0..na as u32 {
                    if step.iter().all(|e| e.attr != a) {
                        seen.insert((k, true, Event::new(a, s.get(m as usize, a))));
                    }
                }
                if let Some(&next) = occ.matched.get(k + 1) {
                    for g in m + 1..next {
                        for a in 0..na as u32 {
                            seen.insert((k + 1, false, Event::new(a, s.get(g as usize, a))));
                        }
                    }
                }
            }
        }
        let mut out: BTreeSet<Pattern> = BTreeSet::new();
        for (k, merge, e) in seen {
            let mut steps = info.pattern.steps().to_vec();
            if merge {
                steps[k].push(e);
            } else {
                steps.insert(k, alloc::vec![e]);
            }
            if let Ok(p) = Pattern::new(steps) {
                out.insert(p);
            }
        }
        out.into_iter().collect()
    }

    fn variations_of(&mut self, y: usize, obs: &mut dyn Observer) {
        let cands = self.variation_candidates(&self.infos[y].pattern.clone());
        let mut ids: Vec<usize> = cands.into_iter().filter_map(|p| self.frequent(p)).collect();
        ids.sort_by(|&a, &b| {
            let (ia, ib) = (&self.infos[a], &self.infos[b]);
            ib.support
                .cmp(&ia.support)
                .then(ib.pattern.size().cmp(&ia.pattern.size()))
                .then(ib.st_len.total_cmp(&ia.st_len))
                .then_with(|| ia.pattern.cmp(&ib.pattern))
        });
        for x in ids {
            if self.try_add(x, Source::Variation, obs) {
                self.variations_of(x, obs);
            }
        }
    }

    /// Runs the variations step for an entry already in the code table.
    pub fn variations(&mut self, y: &Pattern, obs: &mut dyn Observer) {
        if let Some(&id) = self.ids.get(y) {
            if self.ct.contains(&id) {
                self.variations_of(id, obs);
            }
        }
    }

    fn parents(&self) -> Vec<Parent> {
        let mut out: Vec<Parent> = self
            .ct
            .iter()
            .zip(&self.state.counts.usage)
            .filter(|(_, &u)| u > 0)
            .map(|(&i, &u)| Parent { pattern: self.infos[i].pattern.clone(), usage: u, st_len: self.infos[i].st_len })
            .collect();
        for (i, &u) in self.state.counts.singleton_usage.iter().enumerate() {
            if u > 0 && self.st.counts()[i] as usize >= self.config.min_support {
                out.push(Parent { pattern: Pattern::singleton(self.db.event_at(i)), usage: u, st_len: self.st.event_len(i) });
            }
        }
        out
    }

    fn pending(&self, parents: &[Parent]) -> BinaryHeap<Pending> {
        let s: u64 = self.state.counts.usage.iter().chain(&self.state.counts.singleton_usage).sum();
        let na = self.db.n_attrs();
        let mut heap = BinaryHeap::new();
        for (i, x) in parents.iter().enumerate() {
            for (j, y) in parents.iter().enumerate().skip(i) {
                let same = i == j;
                for d in offsets(&x.pattern, &y.pattern, same) {
                    let Some(t) = aligned_len(&x.pattern, &y.pattern, d) else { continue };
                    let gain = estimate_gain(s, x.usage, y.usage, same, t, x.st_len + y.st_len, na);
                    if gain > 0.0 {
                        heap.push(Pending { gain, i: i as u32, j: j as u32, d: d as i32 });
                    }
                }
            }
        }
        heap
    }

    fn candidate(&mut self, parents: &[Parent], c: Pending) -> Option<Candidate> {
        let (x, y) = (&parents[c.i as usize].pattern, &parents[c.j as usize].pattern);
        let z = combine(x, y, c.d as isize)?;
        let id = self.frequent(z)?;
        let info = &self.infos[id];
        Some(Candidate {
            pattern: info.pattern.clone(),
            parents: (x.clone(), y.clone()),
            offset: c.d as isize,
            gain: c.gain,
            support: info.support,
            st_len: info.st_len,
        })
    }

    /// All frequent candidates from the current code table with positive estimated gain,
    /// in candidate order.
    pub fn generate_candidates(&mut self) -> Vec<Candidate> {
        let parents = self.parents();
        let mut heap = self.pending(&parents);
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        while let Some(c) = heap.pop() {
            if let Some(cand) = self.candidate(&parents, c) {
                if seen.insert(cand.pattern.clone()) && !self.in_table(&cand.pattern) {
                    out.push(cand);
                }
            }
        }
        out.sort_by(candidate_order);
        out
    }

    fn in_table(&self, p: &Pattern) -> bool {
        self.ids.get(p).is_some_and(|id| self.ct.contains(id))
    }

    /// One pass over the candidates; true when something was accepted.
    fn candidate_pass(&mut self, obs: &mut dyn Observer) -> bool {
        let parents = self.parents();
        let mut heap = self.pending(&parents);
        let mut seen = BTreeSet::new();
        while let Some(first) = heap.pop() {
            // candidates sharing an estimate are ranked by the remaining keys
            let mut group = alloc::vec![first];
            while heap.peek().is_some_and(|c| c.gain == first.gain) {
                group.push(heap.pop().unwrap());
            }
            let mut cands: Vec<Candidate> = Vec::new();
            for c in group {
                if let Some(cand) = self.candidate(&parents, c) {
                    if seen.insert(cand.pattern.clone()) && !self.in_table(&cand.pattern) {
                        cands.push(cand);
                    }
                }
            }
            cands.sort_by(candidate_order);
            for cand in cands {
                let id = self.ids[&cand.pattern];
                if self.try_add(id, Source::Candidate, obs) {
                    self.variations_of(id, obs);
                    return true;
                }
                if self.limit_reached() {
                    return false;
                }
            }
        }
        false
    }

    /// Runs the search to completion.
    pub fn run(mut self, obs: &mut dyn Observer) -> MineResult {
        while !self.limit_reached() && self.candidate_pass(obs) {}
        self.finish()
    }

    pub fn finish(self) -> MineResult {
        let mut stats = self.stats.clone();
        stats.cached_infrequent = self.cache.len();
        MineResult { code_table: self.code_table(), history: self.history, stats }
    }
}

/// Mines a code table for `db` with minimum support `sigma`.
pub fn ditto(db: &Database, sigma: usize) -> Result<CodeTable> {
    Ok(mine(db, &MinerConfig::new(sigma))?.code_table)
}

pub fn mine(db: &Database, config: &MinerConfig) -> Result<MineResult> {
    mine_with(db, config, &mut ())
}

pub fn mine_with(db: &Database, config: &MinerConfig, obs: &mut dyn Observer) -> Result<MineResult> {
    Ok(Miner::new(db, config.clone())?.run(obs))
}
