//! The pattern and gap code streams of a cover, and lossless decoding back to data.
//!
//! Data is traversed time step by time step. At each step, every pattern occurrence that
//! started earlier and has not yet finished emits a gap or fill code, in order of the
//! attribute of its first cell (then its start). After that the cells of the step are
//! scanned top to bottom and each occurrence starting here emits its pattern code at its
//! lowest attribute.

use alloc::vec::Vec;

use crate::codetable::{CodeTable, UsageStats};
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::types::{Alphabet, Database, MultiSeq};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GapCode {
    pub pattern: u32,
    pub fill: bool,
}

/// Cp, Cg and the metadata needed to decode them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodeStreams {
    pub patterns: Vec<u32>,
    pub gaps: Vec<GapCode>,
    pub n_attrs: usize,
    pub seq_lens: Vec<usize>,
}

impl CodeStreams {
    /// Usage statistics reproduced by counting stream symbols.
    pub fn stats(&self, n_patterns: usize) -> UsageStats {
        let mut s = UsageStats {
            usage: alloc::vec![0; n_patterns],
            gaps: alloc::vec![0; n_patterns],
            fills: alloc::vec![0; n_patterns],
        };
        for &p in &self.patterns {
            s.usage[p as usize] += 1;
        }
        for g in &self.gaps {
            if g.fill {
                s.fills[g.pattern as usize] += 1;
            } else {
                s.gaps[g.pattern as usize] += 1;
            }
        }
        s
    }
}

struct Active {
    first_attr: u32,
    start: u32,
    pattern: u32,
    next: usize,
    matched: Vec<u32>,
}

fn insert_active(active: &mut Vec<Active>, a: Active) {
    let pos = active.partition_point(|x| (x.first_attr, x.start) < (a.first_attr, a.start));
    active.insert(pos, a);
}

/// Translates a cover of `db` (made with the patterns of `ct`, in order) into code streams.
pub fn encode_streams(db: &Database, ct: &CodeTable, c: &Cover) -> Result<CodeStreams> {
    let ps = ct.patterns();
    c.check_partition(db, ps)?;
    let n = db.n_attrs();
    let mut out = CodeStreams { n_attrs: n, seq_lens: db.sequences().iter().map(MultiSeq::len).collect(), ..Default::default() };

    // non-singleton elements per sequence, by (start, first attribute)
    let mut by_seq: Vec<Vec<usize>> = alloc::vec![Vec::new(); db.n_sequences()];
    for (i, el) in c.elements.iter().enumerate() {
        by_seq[el.occurrence.seq as usize].push(i);
    }
    for (seq, s) in db.sequences().iter().enumerate() {
        let els = &mut by_seq[seq];
        els.sort_by_key(|&i| {
            let el = &c.elements[i];
            (el.occurrence.start(), ps[el.pattern].steps()[0][0].attr)
        });
        let mut next_el = 0;
        let mut active: Vec<Active> = Vec::new();
        for t in 0..s.len() {
            let mut k = 0;
            while k < active.len() {
                let a = &mut active[k];
                let fill = a.matched[a.next] as usize == t;
                out.gaps.push(GapCode { pattern: a.pattern, fill });
                if fill {
                    a.next += 1;
                    if a.next == a.matched.len() {
                        active.remove(k);
                        continue;
                    }
                }
                k += 1;
            }
            for attr in 0..n {
                let owner = c.owner(seq, t, attr as u32, n).ok_or(Error::Uncovered { seq, time: t, attr: attr as u32 })?;
                if ps[owner].is_singleton() {
                    out.patterns.push(owner as u32);
                    continue;
                }
                if next_el < els.len() {
                    let el = &c.elements[els[next_el]];
                    let first = ps[el.pattern].steps()[0][0].attr as usize;
                    if el.occurrence.start() == t && first == attr {
                        out.patterns.push(el.pattern as u32);
                        if el.occurrence.matched.len() > 1 {
                            insert_active(
                                &mut active,
                                Active {
                                    first_attr: attr as u32,
                                    start: t as u32,
                                    pattern: el.pattern as u32,
                                    next: 1,
                                    matched: el.occurrence.matched.clone(),
                                },
                            );
                        }
                        next_el += 1;
                    }
                }
            }
        }
        if !active.is_empty() {
            return Err(Error::CoverMismatch { seq, time: s.len() });
        }
    }
    Ok(out)
}

/// Reconstructs the database from its code streams and the code table used to make them.
pub fn decode_streams(streams: &CodeStreams, ct: &CodeTable) -> Result<Database> {
    let ps = ct.patterns();
    let n = streams.n_attrs;
    if n != ct.n_attrs() {
        return Err(Error::Decode { seq: 0, time: 0, reason: "attribute count differs from the code table" });
    }
    const EMPTY: u32 = u32::MAX;
    let mut cp = streams.patterns.iter();
    let mut cg = streams.gaps.iter();
    let mut sequences = Vec::with_capacity(streams.seq_lens.len());

    for (seq, &len) in streams.seq_lens.iter().enumerate() {
        let mut cells = alloc::vec![EMPTY; len * n];
        let mut active: Vec<Active> = Vec::new();
        let err = |time: usize, reason: &'static str| Error::Decode { seq, time, reason };
        for t in 0..len {
            let mut k = 0;
            while k < active.len() {
                let code = cg.next().ok_or_else(|| err(t, "gap stream exhausted"))?;
                let a = &mut active[k];
                if code.pattern != a.pattern {
                    return Err(err(t, "gap code for an unexpected pattern"));
                }
                if code.fill {
                    for e in &ps[a.pattern as usize].steps()[a.next] {
                        let cell = &mut cells[t * n + e.attr as usize];
                        if *cell != EMPTY {
                            return Err(err(t, "fill overwrites a decoded cell"));
                        }
                        *cell = e.symbol;
                    }
                    a.next += 1;
                    if a.next == ps[a.pattern as usize].len() {
                        active.remove(k);
                        continue;
                    }
                }
                k += 1;
            }
            for attr in 0..n {
                if cells[t * n + attr] != EMPTY {
                    continue;
                }
                let &code = cp.next().ok_or_else(|| err(t, "pattern stream exhausted"))?;
                let p = ps.get(code as usize).ok_or_else(|| err(t, "pattern code outside the code table"))?;
                let first = &p.steps()[0];
                if first[0].attr as usize != attr {
                    return Err(err(t, "pattern does not start at the lowest free cell"));
                }
                for e in first {
                    let cell = &mut cells[t * n + e.attr as usize];
                    if *cell != EMPTY {
                        return Err(err(t, "pattern overwrites a decoded cell"));
                    }
                    *cell = e.symbol;
                }
                if p.len() > 1 {
                    insert_active(
                        &mut active,
                        Active { first_attr: attr as u32, start: t as u32, pattern: code, next: 1, matched: Vec::new() },
                    );
                }
            }
        }
        if !active.is_empty() {
            return Err(err(len, "pattern occurrence runs past the end of the sequence"));
        }
        sequences.push(MultiSeq::new(n, cells)?);
    }
    if cp.next().is_some() || cg.next().is_some() {
        return Err(Error::Decode { seq: streams.seq_lens.len(), time: 0, reason: "trailing codes" });
    }
    let alphabets: Vec<Alphabet> = ct.alphabets().to_vec();
    Database::new(alphabets, sequences)
}
