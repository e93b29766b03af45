//! Data model: events, multi-events, multivariate sequences, databases and patterns.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An attribute–value pair. `symbol` is a dense code into the attribute's alphabet.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event {
    pub attr: u32,
    pub symbol: u32,
}

impl Event {
    pub const fn new(attr: u32, symbol: u32) -> Self {
        Event { attr, symbol }
    }
}

/// Symbol names of a single attribute. Codes are indices into `names`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Self {
        Alphabet { names }
    }

    /// Alphabet with symbols named `0`, `1`, ... `size - 1`.
    pub fn numbered(size: usize) -> Self {
        Alphabet { names: (0..size).map(|i| alloc::format!("{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, symbol: u32) -> Option<&str> {
        self.names.get(symbol as usize).map(String::as_str)
    }

    pub fn code(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|p| p as u32)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A categorical multivariate sequence stored row-major: `cells[t * n_attrs + a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeq {
    n_attrs: usize,
    cells: Vec<u32>,
}

impl MultiSeq {
    pub fn new(n_attrs: usize, cells: Vec<u32>) -> Result<Self> {
        if n_attrs == 0 {
            return Err(Error::NoAttributes);
        }
        if !cells.len().is_multiple_of(n_attrs) {
            return Err(Error::RaggedSequence { cells: cells.len(), attrs: n_attrs });
        }
        Ok(MultiSeq { n_attrs, cells })
    }

    /// Builds a sequence from per-step rows, each of length `n_attrs`.
    pub fn from_rows<R: AsRef<[u32]>>(n_attrs: usize, rows: &[R]) -> Result<Self> {
        let mut cells = Vec::with_capacity(rows.len() * n_attrs);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n_attrs {
                return Err(Error::RaggedSequence { cells: row.len(), attrs: n_attrs });
            }
            cells.extend_from_slice(row);
        }
        MultiSeq::new(n_attrs, cells)
    }

    /// t(S)
    pub fn len(&self) -> usize {
        self.cells.len() / self.n_attrs
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// ||S||
    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn n_attrs(&self) -> usize {
        self.n_attrs
    }

    #[inline]
    pub fn get(&self, time: usize, attr: u32) -> u32 {
        self.cells[time * self.n_attrs + attr as usize]
    }

    #[inline]
    pub fn row(&self, time: usize) -> &[u32] {
        &self.cells[time * self.n_attrs..(time + 1) * self.n_attrs]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    /// True iff every event of `step` is present at `time`.
    #[inline]
    pub fn contains(&self, time: usize, step: &[Event]) -> bool {
        let row = self.row(time);
        step.iter().all(|e| row[e.attr as usize] == e.symbol)
    }
}

/// A database D of multivariate sequences over a shared, indexed attribute set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Database {
    alphabets: Vec<Alphabet>,
    sequences: Vec<MultiSeq>,
    offsets: Vec<usize>,
}

impl Database {
    pub fn new(alphabets: Vec<Alphabet>, sequences: Vec<MultiSeq>) -> Result<Self> {
        if alphabets.is_empty() {
            return Err(Error::NoAttributes);
        }
        let n_attrs = alphabets.len();
        for (si, s) in sequences.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptySequence(si));
            }
            if s.n_attrs() != n_attrs {
                return Err(Error::AttributeMismatch { sequence: si, expected: n_attrs, found: s.n_attrs() });
            }
            for t in 0..s.len() {
                for (a, &sym) in s.row(t).iter().enumerate() {
                    if sym as usize >= alphabets[a].len() {
                        return Err(Error::UnknownSymbol { attr: a as u32, symbol: sym });
                    }
                }
            }
        }
        let mut offsets = Vec::with_capacity(n_attrs + 1);
        let mut acc = 0;
        for a in &alphabets {
            offsets.push(acc);
            acc += a.len();
        }
        offsets.push(acc);
        Ok(Database { alphabets, sequences, offsets })
    }

    /// |A|
    pub fn n_attrs(&self) -> usize {
        self.alphabets.len()
    }

    pub fn alphabets(&self) -> &[Alphabet] {
        &self.alphabets
    }

    pub fn alphabet(&self, attr: u32) -> &Alphabet {
        &self.alphabets[attr as usize]
    }

    pub fn sequences(&self) -> &[MultiSeq] {
        &self.sequences
    }

    /// |D|
    pub fn n_sequences(&self) -> usize {
        self.sequences.len()
    }

    /// t(D)
    pub fn total_steps(&self) -> usize {
        self.sequences.iter().map(MultiSeq::len).sum()
    }

    /// ||D||
    pub fn total_events(&self) -> usize {
        self.sequences.iter().map(MultiSeq::size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_events() == 0
    }

    /// |Ω| counted per attribute, i.e. the number of distinct singletons.
    pub fn n_singletons(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Dense index of an event in `0..n_singletons()`.
    #[inline]
    pub fn event_index(&self, e: Event) -> usize {
        self.offsets[e.attr as usize] + e.symbol as usize
    }

    pub fn event_at(&self, index: usize) -> Event {
        let attr = self.offsets.partition_point(|&o| o <= index) - 1;
        Event::new(attr as u32, (index - self.offsets[attr]) as u32)
    }

    /// All singleton events in attribute-then-symbol order.
    pub fn singletons(&self) -> impl Iterator<Item = Event> + '_ {
        self.alphabets
            .iter()
            .enumerate()
            .flat_map(|(a, alpha)| (0..alpha.len() as u32).map(move |s| Event::new(a as u32, s)))
    }

    /// support(x | D) for every singleton, indexed by `event_index`.
    pub fn singleton_counts(&self) -> Vec<u64> {
        let mut counts = alloc::vec![0u64; self.n_singletons()];
        for s in &self.sequences {
            for t in 0..s.len() {
                for (a, &sym) in s.row(t).iter().enumerate() {
                    counts[self.offsets[a] + sym as usize] += 1;
                }
            }
        }
        counts
    }

    pub fn validate_pattern(&self, p: &Pattern) -> Result<()> {
        for e in p.events() {
            if e.attr as usize >= self.n_attrs() {
                return Err(Error::UnknownAttribute(e.attr));
            }
            if e.symbol as usize >= self.alphabets[e.attr as usize].len() {
                return Err(Error::UnknownSymbol { attr: e.attr, symbol: e.symbol });
            }
        }
        Ok(())
    }
}

/// A pattern: an ordered list of partial multi-events.
///
/// Steps are kept sorted by attribute so that structural equality and the derived
/// lexicographic order are well defined: steps are compared one by one, events within a
/// step by ascending attribute then symbol, and a proper prefix sorts first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    steps: Vec<Vec<Event>>,
}

impl Pattern {
    pub fn new(steps: Vec<Vec<Event>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut steps = steps;
        for (i, step) in steps.iter_mut().enumerate() {
            if step.is_empty() {
                return Err(Error::EmptyStep(i));
            }
            step.sort_unstable();
            if step.windows(2).any(|w| w[0].attr == w[1].attr) {
                return Err(Error::AttributeConflict { step: i });
            }
        }
        Ok(Pattern { steps })
    }

    pub fn singleton(e: Event) -> Self {
        Pattern { steps: alloc::vec![alloc::vec![e]] }
    }

    pub fn steps(&self) -> &[Vec<Event>] {
        &self.steps
    }

    /// t(X)
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// ||X||
    pub fn size(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    pub fn is_singleton(&self) -> bool {
        self.steps.len() == 1 && self.steps[0].len() == 1
    }

    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        self.steps.iter().flatten().copied()
    }

    pub fn into_steps(self) -> Vec<Vec<Event>> {
        self.steps
    }

    /// Renders the pattern using symbol names, e.g. `{0:a, 1:x}{0:b}`.
    pub fn display<'a>(&'a self, db: &'a Database) -> PatternDisplay<'a> {
        PatternDisplay { pattern: self, alphabets: db.alphabets() }
    }
}

/// `(t(X), ||X||)`
pub fn pattern_stats(p: &Pattern) -> (usize, usize) {
    (p.len(), p.size())
}

pub struct PatternDisplay<'a> {
    pattern: &'a Pattern,
    alphabets: &'a [Alphabet],
}

impl fmt::Display for PatternDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in self.pattern.steps() {
            f.write_str("{")?;
            for (i, e) in step.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                let name = self.alphabets.get(e.attr as usize).and_then(|a| a.name(e.symbol));
                match name {
                    Some(n) => write!(f, "{}:{}", e.attr, n)?,
                    None => write!(f, "{}:#{}", e.attr, e.symbol)?,
                }
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// A minimal-window occurrence of a pattern in one sequence. Times are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub seq: u32,
    /// Matched time of each pattern step, strictly increasing.
    pub matched: Vec<u32>,
}

impl Occurrence {
    pub fn start(&self) -> usize {
        self.matched[0] as usize
    }

    pub fn end(&self) -> usize {
        *self.matched.last().unwrap() as usize
    }

    /// t(o)
    pub fn window_len(&self) -> usize {
        self.end() - self.start() + 1
    }

    pub fn n_gaps(&self) -> usize {
        self.window_len() - self.matched.len()
    }

    /// Time steps inside the window matching no pattern step.
    pub fn gap_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.matched.windows(2).flat_map(|w| (w[0] as usize + 1)..(w[1] as usize))
    }
}
