//! Scoring discovered patterns against planted ones and against the standard table.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::codetable::{total_len, CodeTable};
use crate::error::Result;
use crate::types::{Database, Event, Pattern};

/// Scores of one run in the layout of the synthetic-data table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RecoveryReport {
    /// Non-singleton patterns found.
    pub discovered: usize,
    pub exact: usize,
    pub subset: usize,
    /// Discovered patterns that are neither exact nor subset matches.
    pub spurious: usize,
    /// R%
    pub recovery: f64,
    /// ΔL%
    pub compression_gain: f64,
    pub runtime_secs: Option<f64>,
}

fn step_subset(a: &[Event], b: &[Event]) -> bool {
    a.iter().all(|e| b.binary_search(e).is_ok())
}

// All ways of mapping the steps of `x` to strictly increasing steps of `p` with each step
// contained in its image; calls `f` with the images.
fn embeddings(x: &Pattern, p: &Pattern, f: &mut dyn FnMut(&[usize])) {
    fn go(x: &Pattern, p: &Pattern, i: usize, from: usize, map: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i == x.len() {
            f(map);
            return;
        }
        let rest = x.len() - i - 1;
        for k in from..p.len().saturating_sub(rest) {
            if step_subset(&x.steps()[i], &p.steps()[k]) {
                map.push(k);
                go(x, p, i + 1, k + 1, map, f);
                map.pop();
            }
        }
    }
    go(x, p, 0, 0, &mut Vec::new(), f)
}

/// True when `x` embeds into `p`: its steps map in order to steps of `p` (gaps allowed)
/// and each is a subset of its image.
pub fn is_subpattern(x: &Pattern, p: &Pattern) -> bool {
    let mut found = false;
    embeddings(x, p, &mut |_| found = true);
    found
}

/// `(exact, subset)` counts over the non-singleton discovered patterns. A pattern is a
/// subset match when it properly embeds into some planted pattern and equals none.
pub fn match_patterns(discovered: &[Pattern], planted: &[Pattern]) -> (usize, usize) {
    let mut exact = 0;
    let mut subset = 0;
    for x in discovered.iter().filter(|x| !x.is_singleton()) {
        if planted.contains(x) {
            exact += 1;
        } else if planted.iter().any(|p| is_subpattern(x, p)) {
            subset += 1;
        }
    }
    (exact, subset)
}

/// R%: share of the events of the planted patterns that some embedding of a discovered
/// non-singleton pattern covers.
pub fn recovery_ratio(discovered: &[Pattern], planted: &[Pattern]) -> f64 {
    let total: usize = planted.iter().map(Pattern::size).sum();
    if total == 0 {
        return 0.0;
    }
    let mut covered = 0;
    for p in planted {
        let mut cells: BTreeSet<(usize, Event)> = BTreeSet::new();
        for x in discovered.iter().filter(|x| !x.is_singleton()) {
            embeddings(x, p, &mut |map| {
                for (i, &k) in map.iter().enumerate() {
                    cells.extend(x.steps()[i].iter().map(|&e| (k, e)));
                }
            });
        }
        covered += cells.len();
    }
    100.0 * covered as f64 / total as f64
}

/// ΔL% = 100 · (1 − L(CT, D) / L(ST, D)).
pub fn compression_gain(db: &Database, ct: &CodeTable) -> Result<f64> {
    let st = total_len(db, &[])?.total;
    Ok(100.0 * (1.0 - ct.encoded_size().total / st))
}

/// Full report for a mined table against the planted patterns.
pub fn evaluate(db: &Database, ct: &CodeTable, planted: &[Pattern]) -> Result<RecoveryReport> {
    let found = ct.non_singletons();
    let (exact, subset) = match_patterns(found, planted);
    Ok(RecoveryReport {
        discovered: found.len(),
        exact,
        subset,
        spurious: found.len() - exact - subset,
        recovery: recovery_ratio(found, planted),
        compression_gain: compression_gain(db, ct)?,
        runtime_secs: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Alphabet, MultiSeq};
    use alloc::vec;

    fn ev(a: u32, s: u32) -> Event {
        Event::new(a, s)
    }

    fn pat(steps: &[&[(u32, u32)]]) -> Pattern {
        Pattern::new(steps.iter().map(|s| s.iter().map(|&(a, v)| ev(a, v)).collect()).collect()).unwrap()
    }

    fn planted() -> Vec<Pattern> {
        vec![pat(&[&[(0, 1)], &[(0, 2), (1, 3)], &[(1, 1)], &[(0, 0)]]), pat(&[&[(0, 5), (1, 5)], &[(1, 6)]])]
    }

    #[test]
    fn identical_sets() {
        let p = planted();
        assert_eq!(match_patterns(&p, &p), (2, 0));
        assert_eq!(recovery_ratio(&p, &p), 100.0);
    }

    #[test]
    fn prefix_is_a_subset_match() {
        let found = vec![pat(&[&[(0, 1)], &[(0, 2), (1, 3)]])];
        assert_eq!(match_patterns(&found, &planted()), (0, 1));
    }

    #[test]
    fn gapped_and_partial_embeddings() {
        let p = &planted()[0];
        assert!(is_subpattern(&pat(&[&[(0, 1)], &[(1, 1)]]), p));
        assert!(is_subpattern(&pat(&[&[(1, 3)], &[(0, 0)]]), p));
        // order matters
        assert!(!is_subpattern(&pat(&[&[(0, 0)], &[(0, 1)]]), p));
        // a step must fit inside one step
        assert!(!is_subpattern(&pat(&[&[(0, 1), (1, 3)]]), p));
    }

    #[test]
    fn recovery_counts_events() {
        assert_eq!(recovery_ratio(&[], &planted()), 0.0);
        // singletons do not count
        assert_eq!(recovery_ratio(&[pat(&[&[(0, 1)]])], &planted()), 0.0);
        let a = pat(&[&[(0, 1)], &[(0, 2)]]);
        let b = pat(&[&[(0, 3)], &[(0, 4)]]);
        assert_eq!(recovery_ratio(core::slice::from_ref(&a), &[a.clone(), b]), 50.0);
        // 2 of the 5 events of the first planted pattern plus all of the second
        let found = vec![pat(&[&[(0, 1)], &[(0, 0)]]), planted()[1].clone()];
        assert!((recovery_ratio(&found, &planted()) - 100.0 * 5.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn order_does_not_matter() {
        let mut found = vec![planted()[1].clone(), pat(&[&[(0, 1)], &[(1, 1)]]), pat(&[&[(0, 9)], &[(0, 9)]])];
        let mut p = planted();
        let a = (match_patterns(&found, &p), recovery_ratio(&found, &p));
        found.reverse();
        p.reverse();
        assert_eq!(a, (match_patterns(&found, &p), recovery_ratio(&found, &p)));
        assert_eq!(a.0, (1, 1));
    }

    #[test]
    fn standard_table_has_no_gain() {
        let db = Database::new(vec![Alphabet::numbered(3)], vec![MultiSeq::new(1, vec![0, 1, 2, 0, 1]).unwrap()]).unwrap();
        let ct = CodeTable::standard(&db).unwrap();
        assert_eq!(compression_gain(&db, &ct).unwrap(), 0.0);
        let r = evaluate(&db, &ct, &planted()).unwrap();
        assert_eq!((r.exact, r.subset, r.spurious, r.recovery, r.compression_gain), (0, 0, 0, 0.0, 0.0));
    }
}
