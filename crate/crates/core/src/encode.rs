//! Code lengths: universal integers, pattern/gap/fill codes, L(D | CT) and L(CT | C).
//!
//! All lengths are ideal Shannon lengths in bits. Counts of zero follow `0 · log 0 = 0`,
//! so a code that is never emitted contributes nothing.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::types::{Database, Pattern};

/// Normalisation constant of the universal integer code.
pub const UNIVERSAL_C0: f64 = 2.865064;

/// L_N(z) = log2(c0) + log2 z + log2 log2 z + ..., summing only positive terms.
pub fn universal_int_len(z: u64) -> Result<f64> {
    if z < 1 {
        return Err(Error::NonPositiveInteger(z));
    }
    let mut bits = libm::log2(UNIVERSAL_C0);
    let mut x = z as f64;
    loop {
        x = libm::log2(x);
        if x <= 0.0 {
            break;
        }
        bits += x;
    }
    Ok(bits)
}

/// L_N for counts known to be positive.
#[inline]
pub(crate) fn ln_pos(z: u64) -> f64 {
    universal_int_len(z).expect("positive integer")
}

/// log2 of the binomial coefficient, through log-gamma. Zero when `k == 0` or `k >= n`.
pub fn log2_binom(n: u64, k: u64) -> f64 {
    if k == 0 || k >= n {
        return 0.0;
    }
    let (n, k) = (n as f64, k as f64);
    let ln = libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0);
    ln / core::f64::consts::LN_2
}

/// `x log2 x` with `0 log 0 = 0`.
#[inline]
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * libm::log2(x)
    }
}

/// −log2(usage / total); `None` for an unused pattern.
pub fn pattern_code_len(usage: u64, total: u64) -> Option<f64> {
    if usage == 0 || total == 0 {
        return None;
    }
    Some(-libm::log2(usage as f64 / total as f64))
}

/// `(gap_bits, fill_bits)`. A side with count zero gets an infinite (never emitted) code.
pub fn gap_fill_code_lens(gaps: u64, fills: u64) -> (f64, f64) {
    let total = (gaps + fills) as f64;
    let len = |c: u64| if c == 0 { f64::INFINITY } else { -libm::log2(c as f64 / total) };
    (len(gaps), len(fills))
}

/// Σ count · (−log2(count / total)) over a distribution of counts.
pub fn stream_len<I: IntoIterator<Item = u64>>(counts: I) -> f64 {
    let mut total = 0u64;
    let mut acc = 0.0;
    for c in counts {
        total += c;
        acc += xlog2x(c as f64);
    }
    xlog2x(total as f64) - acc
}

/// Singleton-only statistics of a database: support of every event and data constants.
#[derive(Clone, Debug)]
pub struct StandardTable {
    counts: Vec<u64>,
    total: u64,
    st_lens: Vec<f64>,
    offsets: Vec<usize>,
    n_attrs: usize,
    /// L_N(|A|) + L_N(|D|) + Σ L_N(t(S)); zero for an empty database.
    data_constant: f64,
    /// Σ_j L_N(|Ω_j|) + log2 binom(|D^j|, |Ω_j|)
    singleton_table_len: f64,
}

impl StandardTable {
    pub fn new(db: &Database) -> Self {
        let counts = db.singleton_counts();
        let total: u64 = counts.iter().sum();
        debug_assert_eq!(total as usize, db.total_events());
        let st_lens = counts
            .iter()
            .map(|&c| if c == 0 { f64::INFINITY } else { -libm::log2(c as f64 / total as f64) })
            .collect();
        let offsets = (0..db.n_attrs()).map(|a| db.event_index(crate::types::Event::new(a as u32, 0))).collect();
        let data_constant = if db.n_sequences() == 0 {
            0.0
        } else {
            ln_pos(db.n_attrs() as u64)
                + ln_pos(db.n_sequences() as u64)
                + db.sequences().iter().map(|s| ln_pos(s.len() as u64)).sum::<f64>()
        };
        // every attribute has one event per time step: |D^j| = t(D)
        let per_attr = db.total_steps() as u64;
        let singleton_table_len = db
            .alphabets()
            .iter()
            .map(|a| ln_pos(a.len().max(1) as u64) + log2_binom(per_attr, a.len() as u64))
            .sum();
        StandardTable { counts, total, st_lens, offsets, n_attrs: db.n_attrs(), data_constant, singleton_table_len }
    }

    /// support(x | D), indexed by event index.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// ||D||
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn n_attrs(&self) -> usize {
        self.n_attrs
    }

    /// L(code_p(x | ST)) by event index.
    pub fn event_len(&self, index: usize) -> f64 {
        self.st_lens[index]
    }

    /// L(X | ST): the summed standard-table lengths of the events of `p`.
    pub fn pattern_len(&self, p: &Pattern) -> f64 {
        p.events().map(|e| self.st_lens[self.offsets[e.attr as usize] + e.symbol as usize]).sum()
    }

    pub fn data_constant(&self) -> f64 {
        self.data_constant
    }

    pub fn singleton_table_len(&self) -> f64 {
        self.singleton_table_len
    }
}

/// L(X ∈ CT) = L_N(t(X)) + L_N(gaps(X) + 1) + t(X)·log2|A| + L(X | ST).
pub fn pattern_model_len(p: &Pattern, st: &StandardTable, gaps: u64) -> f64 {
    ln_pos(p.len() as u64) + ln_pos(gaps + 1) + p.len() as f64 * libm::log2(st.n_attrs() as f64) + st.pattern_len(p)
}

/// Encoded sizes in bits.
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct EncodedSize {
    /// L(CT | C)
    pub model: f64,
    /// L(D | CT)
    pub data: f64,
    pub total: f64,
}

impl EncodedSize {
    pub fn new(model: f64, data: f64) -> Self {
        EncodedSize { model, data, total: model + data }
    }
}

/// Statistics of one non-singleton code-table entry, as needed for scoring.
#[derive(Copy, Clone, Debug)]
pub struct EntryStats {
    pub steps: usize,
    pub usage: u64,
    pub gaps: u64,
    /// L(X ∈ CT) minus the gap term, which depends on usage.
    pub st_len: f64,
}

impl EntryStats {
    pub fn fills(&self) -> u64 {
        self.usage * (self.steps as u64 - 1)
    }
}

/// L(Cp | CT) + L(Cg | CT) over the given non-singleton entries and residual singletons.
pub fn streams_len(entries: &[EntryStats], singleton_usage: &[u64]) -> (f64, f64) {
    let cp = stream_len(entries.iter().map(|e| e.usage).chain(singleton_usage.iter().copied()));
    let cg = entries
        .iter()
        .filter(|e| e.steps > 1)
        .map(|e| stream_len([e.gaps, e.fills()]))
        .sum();
    (cp, cg)
}

/// L(CT | C) for the given non-singleton entries.
pub fn model_len(entries: &[EntryStats], st: &StandardTable) -> f64 {
    let n_patterns = entries.len() as u64;
    let usage_p: u64 = entries.iter().map(|e| e.usage).sum();
    let log_a = libm::log2(st.n_attrs() as f64);
    let per_pattern: f64 = entries
        .iter()
        .map(|e| ln_pos(e.steps as u64) + ln_pos(e.gaps + 1) + e.steps as f64 * log_a + e.st_len)
        .sum();
    st.singleton_table_len()
        + ln_pos(n_patterns + 1)
        + ln_pos(usage_p + 1)
        + log2_binom(usage_p, n_patterns)
        + per_pattern
}

/// Total encoded size given cover statistics.
pub fn encoded_size(entries: &[EntryStats], singleton_usage: &[u64], st: &StandardTable) -> EncodedSize {
    let (cp, cg) = streams_len(entries, singleton_usage);
    EncodedSize::new(model_len(entries, st), cp + cg + st.data_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn universal_code_values() {
        let c0 = libm::log2(2.865064);
        assert!(close(universal_int_len(1).unwrap(), 1.5186, 1e-4));
        assert!(close(universal_int_len(2).unwrap(), 2.5186, 1e-4));
        assert!(close(universal_int_len(2).unwrap(), 1.0 + c0, 1e-12));
        // 16: log2 16 = 4, log2 4 = 2, log2 2 = 1
        assert!(close(universal_int_len(16).unwrap(), c0 + 7.0, 1e-12));
        assert_eq!(universal_int_len(0), Err(Error::NonPositiveInteger(0)));
    }

    #[test]
    fn universal_code_is_monotone() {
        let mut prev = universal_int_len(1).unwrap();
        for z in 2..=1_000_000u64 {
            let cur = universal_int_len(z).unwrap();
            assert!(cur >= prev, "L_N({z}) < L_N({})", z - 1);
            prev = cur;
        }
    }

    #[test]
    fn pattern_codes() {
        assert_eq!(pattern_code_len(2, 8), Some(2.0));
        assert_eq!(pattern_code_len(5, 5), Some(0.0));
        assert_eq!(pattern_code_len(0, 5), None);
        let lens: Vec<f64> = [4u64, 2, 2].iter().map(|&u| pattern_code_len(u, 8).unwrap()).collect();
        assert_eq!(lens, vec![1.0, 2.0, 2.0]);
    }

    #[test]
    fn gap_fill_codes() {
        let (g, f) = gap_fill_code_lens(1, 3);
        assert!(close(g, 2.0, 1e-12));
        assert!(close(f, libm::log2(4.0 / 3.0), 1e-12));
        assert_eq!(gap_fill_code_lens(2, 2), (1.0, 1.0));
        let (g, f) = gap_fill_code_lens(0, 7);
        assert!(g.is_infinite());
        assert_eq!(f, 0.0);
        // the gap side contributes nothing to the stream
        assert_eq!(stream_len([0, 7]), 0.0);
    }

    #[test]
    fn binomials() {
        assert!(close(log2_binom(4, 2), libm::log2(6.0), 1e-9));
        assert!(close(log2_binom(100, 3), libm::log2(161700.0), 1e-9));
        assert_eq!(log2_binom(0, 0), 0.0);
        assert_eq!(log2_binom(5, 5), 0.0);
        assert_eq!(log2_binom(3, 7), 0.0);
    }

    #[test]
    fn stream_len_is_sum_of_code_lengths() {
        let counts = [3u64, 1, 2];
        let direct: f64 = counts.iter().map(|&c| c as f64 * pattern_code_len(c, 6).unwrap()).sum();
        assert!(close(stream_len(counts), direct, 1e-12));
        // -log2 of 3/6, 1/6, 2/6 weighted by usage
        let expected = 3.0 * 1.0 + libm::log2(6.0) + 2.0 * libm::log2(3.0);
        assert!(close(direct, expected, 1e-12));
    }
}
