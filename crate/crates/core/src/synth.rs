//! Random categorical data with planted patterns.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::types::{Alphabet, Database, Event, MultiSeq, Occurrence, Pattern};

/// Placement attempts per planted occurrence before giving up.
const MAX_TRIES: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct PlantSpec {
    /// t(D)
    pub length: usize,
    /// |Ω_i| per attribute; its length is |A|.
    pub alphabet_sizes: Vec<usize>,
    pub n_patterns: usize,
    /// Inclusive range of pattern sizes ||X||.
    pub size_min: usize,
    pub size_max: usize,
    /// Chance of one gap step between two consecutive pattern steps.
    pub gap_chance: f64,
    /// Fraction of ||D|| each pattern spans with its planted events.
    pub support: f64,
    pub no_overwrite: bool,
    /// Windows of occurrences of one pattern never overlap in time.
    pub no_interleave: bool,
}

impl PlantSpec {
    /// `n_attrs` attributes of `alphabet` symbols each, 5% gap chance, no overwriting.
    pub fn uniform(length: usize, n_attrs: usize, alphabet: usize, n_patterns: usize, sizes: (usize, usize), support: f64) -> Self {
        PlantSpec {
            length,
            alphabet_sizes: alloc::vec![alphabet; n_attrs],
            n_patterns,
            size_min: sizes.0,
            size_max: sizes.1,
            gap_chance: 0.05,
            support,
            no_overwrite: true,
            no_interleave: false,
        }
    }

    pub fn n_attrs(&self) -> usize {
        self.alphabet_sizes.len()
    }

    /// ||D||
    pub fn total_events(&self) -> usize {
        self.length * self.n_attrs()
    }

    /// ⌈support · ||D|| / ||X||⌉
    pub fn occurrences_for(&self, size: usize) -> usize {
        libm::ceil(self.support * self.total_events() as f64 / size as f64) as usize
    }

    fn validate(&self) -> Result<()> {
        if self.length == 0 || self.alphabet_sizes.is_empty() || self.alphabet_sizes.contains(&0) {
            return Err(Error::InvalidArgument("data must have a length, attributes and non-empty alphabets"));
        }
        if self.n_patterns > 0 {
            if self.size_min < 2 || self.size_min > self.size_max {
                return Err(Error::InvalidArgument("pattern sizes must satisfy 2 <= min <= max"));
            }
            if !(0.0..=1.0).contains(&self.support) || self.support <= 0.0 {
                return Err(Error::InvalidArgument("support must be in (0, 1]"));
            }
        }
        if !(0.0..1.0).contains(&self.gap_chance) {
            return Err(Error::InvalidArgument("gap chance must be in [0, 1)"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundTruth {
    pub patterns: Vec<Pattern>,
    /// Planted placements per pattern.
    pub occurrences: Vec<Vec<Occurrence>>,
}

fn random_pattern<R: Rng>(rng: &mut R, size: usize, sizes: &[usize]) -> Pattern {
    let n_attrs = sizes.len();
    // each step is a random partial multi-event taking part of what is left
    let mut per_step = Vec::new();
    let mut left = size;
    while left > 0 {
        let k = rng.gen_range(1..=left.min(n_attrs));
        per_step.push(k);
        left -= k;
    }
    let attrs: Vec<u32> = (0..n_attrs as u32).collect();
    let steps = per_step
        .iter()
        .map(|&n| {
            attrs
                .choose_multiple(rng, n)
                .map(|&a| Event::new(a, rng.gen_range(0..sizes[a as usize] as u32)))
                .collect()
        })
        .collect();
    Pattern::new(steps).expect("generated pattern is valid")
}

fn draw_patterns<R: Rng>(spec: &PlantSpec, rng: &mut R) -> Result<Vec<Pattern>> {
    let mut patterns: Vec<Pattern> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut guard = 0;
    while patterns.len() < spec.n_patterns {
        let size = rng.gen_range(spec.size_min..=spec.size_max);
        let p = random_pattern(rng, size, &spec.alphabet_sizes);
        if seen.insert(p.clone()) {
            patterns.push(p);
        }
        guard += 1;
        if guard > 1000 * (spec.n_patterns + 1) {
            return Err(Error::Infeasible("cannot draw enough distinct patterns"));
        }
    }
    Ok(patterns)
}

/// Share of an attribute's cells the planted events of one draw may take.
const MAX_LOAD: f64 = 0.6;
/// Pattern sets drawn before a spec is declared infeasible.
const ROUNDS: usize = 1000;

fn load_ok(spec: &PlantSpec, patterns: &[Pattern]) -> bool {
    let mut per_attr = alloc::vec![0usize; spec.n_attrs()];
    for p in patterns {
        let occ = spec.occurrences_for(p.size());
        for e in p.events() {
            per_attr[e.attr as usize] += occ;
        }
    }
    patterns.iter().all(|p| p.len() <= spec.length)
        && per_attr.iter().all(|&c| c as f64 <= MAX_LOAD * spec.length as f64)
}

/// Plants every occurrence into `cells`; `None` when some occurrence finds no room.
fn place<R: Rng>(
    spec: &PlantSpec,
    rng: &mut R,
    patterns: &[Pattern],
    cells: &mut [u32],
) -> Option<Vec<Vec<Occurrence>>> {
    let n = spec.n_attrs();
    let len = spec.length;

    let mut jobs: Vec<usize> = Vec::new();
    for (i, p) in patterns.iter().enumerate() {
        jobs.extend(core::iter::repeat_n(i, spec.occurrences_for(p.size())));
    }
    jobs.shuffle(rng);

    let mut used = alloc::vec![false; len * n];
    let mut busy = alloc::vec![alloc::vec![false; len]; patterns.len()];
    let mut occurrences: Vec<Vec<Occurrence>> = alloc::vec![Vec::new(); patterns.len()];
    for &pi in &jobs {
        let p = &patterns[pi];
        let fits = |matched: &[u32], used: &[bool], busy: &[Vec<bool>]| {
            let (start, end) = (matched[0] as usize, *matched.last().unwrap() as usize);
            let clash = spec.no_overwrite
                && p.steps().iter().zip(matched).any(|(step, &t)| step.iter().any(|e| used[t as usize * n + e.attr as usize]));
            !clash && !(spec.no_interleave && busy[pi][start..=end].iter().any(|&b| b))
        };
        let mut offsets = alloc::vec![0u32; p.len()];
        let mut found = None;
        for _ in 0..MAX_TRIES {
            for k in 1..p.len() {
                let gap = u32::from(rng.gen_bool(spec.gap_chance));
                offsets[k] = offsets[k - 1] + 1 + gap;
            }
            let span = *offsets.last().unwrap() as usize + 1;
            if span > len {
                continue;
            }
            let start = rng.gen_range(0..=len - span) as u32;
            let matched: Vec<u32> = offsets.iter().map(|&o| start + o).collect();
            if fits(&matched, &used, &busy) {
                found = Some(matched);
                break;
            }
        }
        if found.is_none() {
            // dense data: scan every start, from a random one, keeping the last drawn gaps
            let span = *offsets.last().unwrap() as usize + 1;
            if span <= len {
                let room = len - span + 1;
                let first = rng.gen_range(0..room);
                found = (0..room)
                    .map(|k| ((first + k) % room) as u32)
                    .map(|start| offsets.iter().map(|&o| start + o).collect::<Vec<u32>>())
                    .find(|m| fits(m, &used, &busy));
            }
        }
        let matched = found?;
        for (step, &t) in p.steps().iter().zip(&matched) {
            for e in step {
                let c = t as usize * n + e.attr as usize;
                used[c] = true;
                cells[c] = e.symbol;
            }
        }
        if spec.no_interleave {
            busy[pi][matched[0] as usize..=*matched.last().unwrap() as usize].iter_mut().for_each(|b| *b = true);
        }
        occurrences[pi].push(Occurrence { seq: 0, matched });
    }
    for occ in &mut occurrences {
        occ.sort_by_key(|o| o.matched[0]);
    }
    Some(occurrences)
}

/// Builds a random database and plants `spec.n_patterns` random patterns into it.
pub fn generate_synthetic(spec: &PlantSpec, seed: u64) -> Result<(Database, GroundTruth)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n_attrs();
    let len = spec.length;
    let mut cells: Vec<u32> = Vec::with_capacity(len * n);
    for _ in 0..len {
        for &k in &spec.alphabet_sizes {
            cells.push(rng.gen_range(0..k as u32));
        }
    }

    let mut round = 0;
    let (patterns, occurrences, cells) = loop {
        if round == ROUNDS {
            return Err(Error::Infeasible("planted patterns do not fit without overwriting"));
        }
        round += 1;
        let patterns = draw_patterns(spec, &mut rng)?;
        if !load_ok(spec, &patterns) {
            continue;
        }
        let mut planted = cells.clone();
        if let Some(occ) = place(spec, &mut rng, &patterns, &mut planted) {
            break (patterns, occ, planted);
        }
    };

    let alphabets = spec.alphabet_sizes.iter().map(|&k| Alphabet::numbered(k)).collect();
    let db = Database::new(alphabets, alloc::vec![MultiSeq::new(n, cells)?])?;
    Ok((db, GroundTruth { patterns, occurrences }))
}
