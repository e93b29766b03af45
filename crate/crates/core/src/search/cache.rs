//! Tree of materialised infrequent patterns.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::types::{Event, Pattern};

const STEP_END: u64 = u64::MAX;

#[derive(Clone, Debug, Default)]
struct Node {
    children: BTreeMap<u64, usize>,
    terminal: bool,
}

/// Outcome of [`InfrequentCache::check_insert`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Frequent(usize),
    /// Infrequent; `counted` tells whether support had to be computed.
    Infrequent { counted: bool },
}

impl CacheOutcome {
    pub fn is_frequent(&self) -> bool {
        matches!(self, CacheOutcome::Frequent(_))
    }
}

/// Patterns are stored as token paths: one token per event, with a marker closing each step.
#[derive(Clone, Debug)]
pub struct InfrequentCache {
    nodes: Vec<Node>,
    len: usize,
}

impl Default for InfrequentCache {
    fn default() -> Self {
        InfrequentCache { nodes: alloc::vec![Node::default()], len: 0 }
    }
}

fn token(e: Event) -> u64 {
    ((e.attr as u64) << 32) | e.symbol as u64
}

fn tokens(steps: &[Vec<Event>]) -> impl Iterator<Item = u64> + '_ {
    steps.iter().flat_map(|s| s.iter().map(|&e| token(e)).chain(core::iter::once(STEP_END)))
}

impl InfrequentCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, p: &Pattern) {
        let mut node = 0;
        for tok in tokens(p.steps()) {
            node = match self.nodes[node].children.get(&tok) {
                Some(&n) => n,
                None => {
                    self.nodes.push(Node::default());
                    let n = self.nodes.len() - 1;
                    self.nodes[node].children.insert(tok, n);
                    n
                }
            };
        }
        if !self.nodes[node].terminal {
            self.nodes[node].terminal = true;
            self.len += 1;
        }
    }

    fn contains_steps(&self, steps: &[Vec<Event>]) -> bool {
        let mut node = 0;
        for tok in tokens(steps) {
            match self.nodes[node].children.get(&tok) {
                Some(&n) => node = n,
                None => return false,
            }
        }
        self.nodes[node].terminal
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        self.contains_steps(p.steps())
    }

    /// True when `p` or one of its sub-patterns whose support bounds that of `p` is cached:
    /// its single events, and every pattern keeping all steps but only a non-empty part of
    /// each. Every usable window of `p` contains a usable window of each of these, so they
    /// can never be rarer than `p`.
    pub fn contains_subset(&self, p: &Pattern) -> bool {
        if p.events().any(|e| self.contains_steps(&[alloc::vec![e]])) {
            return true;
        }
        self.walk(p.steps(), 0, 0, 0, false)
    }

    // Trie walk choosing a non-empty subset of each step's events.
    fn walk(&self, steps: &[Vec<Event>], node: usize, step: usize, k: usize, taken: bool) -> bool {
        let Some(cur) = steps.get(step) else {
            return self.nodes[node].terminal;
        };
        if k == cur.len() {
            if !taken {
                return false;
            }
            return match self.nodes[node].children.get(&STEP_END) {
                Some(&n) => self.walk(steps, n, step + 1, 0, false),
                None => false,
            };
        }
        if let Some(&n) = self.nodes[node].children.get(&token(cur[k])) {
            if self.walk(steps, n, step, k + 1, true) {
                return true;
            }
        }
        self.walk(steps, node, step, k + 1, taken)
    }

    /// Skips `p` if a cached sub-pattern proves it infrequent; otherwise counts its support
    /// and caches it when below `sigma`.
    pub fn check_insert<F>(&mut self, p: &Pattern, sigma: usize, support: F) -> CacheOutcome
    where
        F: FnOnce(&Pattern) -> usize,
    {
        if self.contains_subset(p) {
            return CacheOutcome::Infrequent { counted: false };
        }
        let s = support(p);
        if s < sigma {
            self.insert(p);
            CacheOutcome::Infrequent { counted: true }
        } else {
            CacheOutcome::Frequent(s)
        }
    }
}
