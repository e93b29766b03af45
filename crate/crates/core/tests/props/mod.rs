//! Property checks shared by the `properties` and `acceptance` test targets. Each runs a
//! deterministic proptest runner and returns the number of cases checked.

#![allow(dead_code)]

use ditto_core::codetable::CodeTable;
use ditto_core::cover::cover_order;
use ditto_core::encode::stream_len;
use ditto_core::{
    compression_gain, decode_streams, encode_streams, find_minimal_windows, find_usable_windows, match_patterns, mine,
    recovery_ratio, total_len, Alphabet, Database, Event, MinerConfig, MultiSeq, Occurrence, Pattern,
};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

pub type Outcome = Result<u64, String>;

fn runner(cases: u32) -> TestRunner {
    let cfg = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn finish<T: std::fmt::Debug>(r: Result<(), TestError<T>>, cases: u32) -> Outcome {
    r.map(|_| cases as u64).map_err(|e| e.to_string())
}

/// Random categorical database: up to `max_seqs` sequences of 1..=`max_len` steps.
pub fn arb_db(max_seqs: usize, max_len: usize, max_attrs: usize, max_sym: u32) -> impl Strategy<Value = Database> {
    (vec(1..=max_sym, 1..=max_attrs), vec(1..=max_len, 1..=max_seqs))
        .prop_flat_map(|(sizes, lens)| {
            let cells: usize = lens.iter().sum::<usize>() * sizes.len();
            (Just(sizes), Just(lens), vec(any::<u32>(), cells))
        })
        .prop_map(|(sizes, lens, raw)| {
            let n = sizes.len();
            let mut it = raw.into_iter().enumerate().map(|(i, r)| r % sizes[i % n]);
            let seqs = lens.iter().map(|&l| MultiSeq::new(n, it.by_ref().take(l * n).collect()).unwrap()).collect();
            let alphabets = sizes.iter().map(|&k| Alphabet::numbered(k as usize)).collect();
            Database::new(alphabets, seqs).unwrap()
        })
}

/// Raw choices for [`make_patterns`]: sequence, start, steps, gap bits, attribute masks.
pub type PatternSeed = (u16, u16, usize, u8, u16);

pub fn arb_seeds(max_patterns: usize, max_steps: usize) -> impl Strategy<Value = Vec<PatternSeed>> {
    vec((any::<u16>(), any::<u16>(), 1..=max_steps, any::<u8>(), any::<u16>()), 0..=max_patterns)
}

/// Patterns read off the data so that most of them occur: each step takes a non-empty
/// subset of the attributes at some time, successive steps one or two time steps apart.
pub fn make_patterns(db: &Database, seeds: &[PatternSeed]) -> Vec<Pattern> {
    let n = db.n_attrs();
    let full = (1u16 << n) - 1;
    let mut out = Vec::new();
    for &(sq, start, steps, gaps, masks) in seeds {
        let s = &db.sequences()[sq as usize % db.n_sequences()];
        let mut t = start as usize % s.len();
        let mut ps = Vec::new();
        for k in 0..steps {
            if t >= s.len() {
                break;
            }
            let mut mask = (masks >> (k * n)) & full;
            if mask == 0 {
                mask = 1 << (k % n);
            }
            ps.push((0..n).filter(|a| mask >> a & 1 == 1).map(|a| Event::new(a as u32, s.get(t, a as u32))).collect());
            t += 1 + (gaps >> k & 1) as usize;
        }
        out.push(Pattern::new(ps).unwrap());
    }
    out
}

/// After covering, every cell belongs to exactly one element, each element matches the data,
/// and no occurrence has as many gaps as its pattern has steps.
pub fn cover_partition(cases: u32) -> Outcome {
    let strat = (arb_db(3, 12, 3, 4), arb_seeds(4, 3));
    let r = runner(cases).run(&strat, |(db, seeds)| {
        let ct = CodeTable::build(&db, make_patterns(&db, &seeds)).unwrap();
        let c = ct.cover(&db).unwrap();
        prop_assert!(c.check_partition(&db, ct.patterns()).is_ok());
        for e in &c.elements {
            let p = &ct.patterns()[e.pattern];
            prop_assert!(e.occurrence.window_len() < 2 * p.len());
            prop_assert!(e.occurrence.n_gaps() < p.len());
        }
        let covered: usize = c.elements.iter().map(|e| ct.patterns()[e.pattern].size()).sum::<usize>() + c.residual_count(ct.patterns());
        prop_assert_eq!(covered, db.total_events());
        Ok(())
    });
    finish(r, cases)
}

/// decode(encode(D)) = D, and counting stream symbols reproduces the cover statistics.
pub fn stream_round_trip(cases: u32) -> Outcome {
    let strat = (arb_db(3, 10, 3, 4), arb_seeds(4, 3));
    let r = runner(cases).run(&strat, |(db, seeds)| {
        let ct = CodeTable::build(&db, make_patterns(&db, &seeds)).unwrap();
        let c = ct.cover(&db).unwrap();
        let s = encode_streams(&db, &ct, &c).unwrap();
        prop_assert_eq!(&s.stats(ct.patterns().len()), ct.stats());
        prop_assert_eq!(decode_streams(&s, &ct).unwrap(), db);
        Ok(())
    });
    finish(r, cases)
}

/// L(Cp | CT) equals the number of pattern codes times the entropy of their distribution.
pub fn entropy_identity(cases: u32) -> Outcome {
    let strat = (arb_db(3, 12, 3, 4), arb_seeds(4, 3));
    let r = runner(cases).run(&strat, |(db, seeds)| {
        let ct = CodeTable::build(&db, make_patterns(&db, &seeds)).unwrap();
        let c = ct.cover(&db).unwrap();
        let s = encode_streams(&db, &ct, &c).unwrap();
        let mut counts = vec![0u64; ct.patterns().len()];
        for &p in &s.patterns {
            counts[p as usize] += 1;
        }
        let total = s.patterns.len() as f64;
        let h: f64 = counts.iter().filter(|&&u| u > 0).map(|&u| u as f64 / total).map(|q| -q * q.log2()).sum();
        let lp = stream_len(counts.iter().copied());
        let by_codes: f64 = (0..counts.len()).filter_map(|i| ct.code_len(i).map(|l| l * counts[i] as f64)).sum();
        let tol = 1e-9 * (total * h).max(1e-300);
        prop_assert!((lp - total * h).abs() <= tol, "{} vs {}", lp, total * h);
        prop_assert!((by_codes - total * h).abs() <= tol, "{} vs {}", by_codes, total * h);
        Ok(())
    });
    finish(r, cases)
}

/// Every accepted change lowers the total, and the final total is that of the final table.
pub fn monotone_history(cases: u32) -> Outcome {
    let strat = (arb_db(2, 30, 2, 3), 1usize..=3);
    let r = runner(cases).run(&strat, |(db, sigma)| {
        let res = mine(&db, &MinerConfig::new(sigma)).unwrap();
        prop_assert!(res.history.windows(2).all(|w| w[1] < w[0]), "{:?}", res.history);
        let rebuilt = total_len(&db, res.code_table.non_singletons()).unwrap().total;
        prop_assert!((res.history.last().unwrap() - rebuilt).abs() < 1e-6 * rebuilt);
        prop_assert!((res.history[0] - total_len(&db, &[]).unwrap().total).abs() < 1e-6 * rebuilt);
        Ok(())
    });
    finish(r, cases)
}

// brute force: does `p` embed into times [s, e] of `seq`? Returns the earliest embedding.
fn embed(p: &Pattern, seq: &MultiSeq, s: usize, e: usize) -> Option<Vec<u32>> {
    fn holds(seq: &MultiSeq, t: usize, step: &[Event]) -> bool {
        step.iter().all(|ev| seq.row(t)[ev.attr as usize] == ev.symbol)
    }
    let mut out = Vec::new();
    let mut t = s;
    for step in p.steps() {
        while t <= e && !holds(seq, t, step) {
            t += 1;
        }
        if t > e {
            return None;
        }
        out.push(t as u32);
        t += 1;
    }
    Some(out)
}

/// All minimal windows by enumeration, then greedy left-to-right disjoint selection.
pub fn oracle_windows(p: &Pattern, seq: &MultiSeq, max_len: Option<usize>) -> Vec<Occurrence> {
    let n = seq.len();
    let mut minimal = Vec::new();
    for s in 0..n {
        for e in s..n {
            let Some(m) = embed(p, seq, s, e) else { continue };
            let shorter = (s < e) && (embed(p, seq, s + 1, e).is_some() || embed(p, seq, s, e - 1).is_some());
            if !shorter && m[0] as usize == s && *m.last().unwrap() as usize == e {
                minimal.push(m);
            }
        }
    }
    if let Some(l) = max_len {
        minimal.retain(|m| ((m.last().unwrap() - m[0]) as usize) < l);
    }
    minimal.sort();
    let mut out: Vec<Occurrence> = Vec::new();
    for m in minimal {
        if out.last().is_none_or(|o| m[0] as usize > o.end()) {
            out.push(Occurrence { seq: 0, matched: m });
        }
    }
    out
}

fn windows_agree(p: &Pattern, seq: &MultiSeq) -> Result<(), String> {
    let a = find_minimal_windows(p, seq, 0);
    let b = oracle_windows(p, seq, None);
    if a != b {
        return Err(format!("minimal windows of {p:?} in {:?}: {a:?} vs oracle {b:?}", seq.cells()));
    }
    let a = find_usable_windows(p, seq, 0);
    let b = oracle_windows(p, seq, Some(2 * p.len() - 1));
    if a != b {
        return Err(format!("usable windows of {p:?} in {:?}: {a:?} vs oracle {b:?}", seq.cells()));
    }
    Ok(())
}

// every pattern of at most `max_steps` steps over `n` attributes with `k` symbols each
fn all_patterns(n: usize, k: u32, max_steps: usize) -> Vec<Pattern> {
    let mut steps: Vec<Vec<Event>> = vec![vec![]];
    for a in 0..n as u32 {
        steps = steps
            .into_iter()
            .flat_map(|s| {
                let mut v = vec![s.clone()];
                v.extend((0..k).map(|x| {
                    let mut t = s.clone();
                    t.push(Event::new(a, x));
                    t
                }));
                v
            })
            .collect();
    }
    steps.retain(|s| !s.is_empty());
    let mut out: Vec<Vec<Vec<Event>>> = steps.iter().map(|s| vec![s.clone()]).collect();
    let mut frontier = out.clone();
    for _ in 1..max_steps {
        frontier = frontier.iter().flat_map(|p| steps.iter().map(move |s| [p.clone(), vec![s.clone()]].concat())).collect();
        out.extend(frontier.iter().cloned());
    }
    out.into_iter().map(|p| Pattern::new(p).unwrap()).collect()
}

// every sequence of length `len` over `n` attributes with `k` symbols
fn all_sequences(n: usize, k: u32, len: usize) -> impl Iterator<Item = MultiSeq> {
    let cells = n * len;
    let count = (k as u64).pow(cells as u32);
    (0..count).map(move |mut c| {
        let v = (0..cells)
            .map(|_| {
                let x = (c % k as u64) as u32;
                c /= k as u64;
                x
            })
            .collect();
        MultiSeq::new(n, v).unwrap()
    })
}

/// Exhaustive agreement with the window oracle: every univariate sequence of up to 8 steps
/// over 3 symbols with every pattern of up to 3 steps, and every bivariate sequence of up
/// to 4 steps over 3 symbols with every pattern of up to 2 steps.
pub fn window_oracle_exhaustive() -> Outcome {
    let mut checked = 0u64;
    for (n, max_len, max_steps) in [(1usize, 8usize, 3usize), (2, 4, 2)] {
        let ps = all_patterns(n, 3, max_steps);
        for len in 1..=max_len {
            for seq in all_sequences(n, 3, len) {
                for p in &ps {
                    windows_agree(p, &seq)?;
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// The same agreement on random databases with t(D) <= 8, |A| <= 2, |Ω_i| <= 3.
pub fn window_oracle_random(cases: u32) -> Outcome {
    let strat = (arb_db(1, 8, 2, 3), arb_seeds(6, 4), vec((any::<u8>(), any::<u8>(), any::<u8>()), 0..4));
    let r = runner(cases).run(&strat, |(db, seeds, extra)| {
        let seq = &db.sequences()[0];
        let mut ps = make_patterns(&db, &seeds);
        // patterns that may not occur at all
        for (a, b, c) in extra {
            let ev = |x: u8| Event::new((x as usize % db.n_attrs()) as u32, (x as u32 / 2) % db.alphabet(0).len().max(1) as u32);
            if (ev(a).symbol as usize) < db.alphabet(ev(a).attr).len() && (ev(b).symbol as usize) < db.alphabet(ev(b).attr).len() {
                ps.push(Pattern::new(vec![vec![ev(a)], vec![ev(b)], vec![ev(a)]].into_iter().take(2 + c as usize % 2).collect()).unwrap());
            }
        }
        for p in &ps {
            windows_agree(p, seq).map_err(TestCaseError::fail)?;
        }
        Ok(())
    });
    finish(r, cases)
}

/// On tiny data, the best table with at most two patterns of at most two steps is never
/// worse than what the search finds, whenever the search result lies in that space.
/// Returns the number of cases the comparison applied to.
pub fn exhaustive_oracle(cases: u32) -> Outcome {
    let strat = arb_db(1, 12, 2, 4);
    let compared = std::cell::Cell::new(0u64);
    let worst_slack = std::cell::Cell::new(0.0f64);
    let r = runner(cases).run(&strat, |db| {
        let greedy = mine(&db, &MinerConfig::new(1)).unwrap().code_table;
        let found = greedy.non_singletons();
        if found.len() > 2 || found.iter().any(|p| p.len() > 2) {
            return Ok(());
        }
        let seq = &db.sequences()[0];
        let cands: Vec<Pattern> = all_patterns(db.n_attrs(), 4, 2)
            .into_iter()
            .filter(|p| !p.is_singleton() && db.validate_pattern(p).is_ok() && !find_usable_windows(p, seq, 0).is_empty())
            .collect();
        let mut best = total_len(&db, &[]).unwrap().total;
        for i in 0..cands.len() {
            best = best.min(total_len(&db, &cands[i..=i]).unwrap().total);
            for j in i + 1..cands.len() {
                best = best.min(total_len(&db, &[cands[i].clone(), cands[j].clone()]).unwrap().total);
            }
        }
        let g = greedy.encoded_size().total;
        prop_assert!(best <= g + 1e-9, "oracle {} above search {}", best, g);
        worst_slack.set(worst_slack.get().max(g - best));
        compared.set(compared.get() + 1);
        Ok(())
    });
    r.map_err(|e| e.to_string())?;
    eprintln!(
        "exhaustive oracle: {} of {cases} cases compared, largest search excess {:.3} bits",
        compared.get(),
        worst_slack.get()
    );
    Ok(compared.get())
}

/// Renaming the symbols of an attribute changes no length, so ΔL% stays put.
pub fn relabel_invariance(cases: u32) -> Outcome {
    let strat = (arb_db(2, 12, 3, 4), arb_seeds(3, 3), any::<u64>());
    let r = runner(cases).run(&strat, |(db, seeds, key)| {
        let ps = make_patterns(&db, &seeds);
        // per attribute a rotation by a key-dependent amount, then a reflection
        let maps: Vec<Vec<u32>> = db
            .alphabets()
            .iter()
            .enumerate()
            .map(|(a, al)| {
                let k = al.len() as u32;
                let r = ((key >> (8 * a)) & 0xff) as u32 % k;
                (0..k).map(|x| k - 1 - (x + r) % k).collect()
            })
            .collect();
        let map_ev = |e: Event| Event::new(e.attr, maps[e.attr as usize][e.symbol as usize]);
        let map_p = |p: &Pattern| {
            Pattern::new(p.steps().iter().map(|s| {
                let mut s: Vec<Event> = s.iter().map(|&e| map_ev(e)).collect();
                s.sort();
                s
            }).collect())
            .unwrap()
        };
        let n = db.n_attrs();
        let seqs = db
            .sequences()
            .iter()
            .map(|s| MultiSeq::new(n, s.cells().iter().enumerate().map(|(i, &v)| maps[i % n][v as usize]).collect()).unwrap())
            .collect();
        let db2 = Database::new(db.alphabets().to_vec(), seqs).unwrap();
        let ps2: Vec<Pattern> = ps.iter().map(map_p).collect();
        // ties in the cover order are broken by symbol codes; skip those cases
        let o1: Vec<Pattern> = cover_order(&ps, &db).iter().map(map_p).collect();
        prop_assume!(o1 == cover_order(&ps2, &db2));
        let g1 = compression_gain(&db, &CodeTable::build(&db, ps).unwrap()).unwrap();
        let g2 = compression_gain(&db2, &CodeTable::build(&db2, ps2).unwrap()).unwrap();
        prop_assert!((g1 - g2).abs() < 1e-9, "{} vs {}", g1, g2);
        Ok(())
    });
    finish(r, cases)
}

/// total_len(D, ST) does not depend on the order of the sequences.
pub fn sequence_order_invariance(cases: u32) -> Outcome {
    let strat = (arb_db(4, 10, 3, 4), any::<usize>());
    let r = runner(cases).run(&strat, |(db, rot)| {
        let mut seqs = db.sequences().to_vec();
        seqs.reverse();
        let k = seqs.len();
        seqs.rotate_left(rot % k);
        let db2 = Database::new(db.alphabets().to_vec(), seqs).unwrap();
        let (a, b) = (total_len(&db, &[]).unwrap().total, total_len(&db2, &[]).unwrap().total);
        prop_assert!((a - b).abs() <= 1e-9 * a, "{} vs {}", a, b);
        Ok(())
    });
    finish(r, cases)
}

/// Match counts and R% ignore the order of either list.
pub fn match_order_invariance(cases: u32) -> Outcome {
    let strat = (arb_db(1, 12, 3, 3), arb_seeds(6, 4), arb_seeds(4, 5), any::<usize>());
    let r = runner(cases).run(&strat, |(db, s1, s2, rot)| {
        let found = make_patterns(&db, &s1);
        let planted = make_patterns(&db, &s2);
        let a = (match_patterns(&found, &planted), recovery_ratio(&found, &planted));
        let (mut f2, mut p2) = (found.clone(), planted.clone());
        f2.reverse();
        p2.reverse();
        if !f2.is_empty() {
            let k = f2.len();
            f2.rotate_left(rot % k);
        }
        let b = (match_patterns(&f2, &p2), recovery_ratio(&f2, &p2));
        prop_assert_eq!(a, b);
        let ns = found.iter().filter(|p| !p.is_singleton()).count();
        prop_assert!(a.0 .0 + a.0 .1 <= ns);
        prop_assert!((0.0..=100.0).contains(&a.1));
        Ok(())
    });
    finish(r, cases)
}
