//! The canonical database format: `seq  time  attr  value`, tab separated, one cell per line.
//! Times are 1-based and contiguous within a sequence, attributes and sequences 0-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ditto_core::{Alphabet, Database, MultiSeq};

use crate::error::{Error, Result};

pub const HEADER: &str = "seq\ttime\tattr\tvalue";

fn field<T: std::str::FromStr>(s: Option<&str>, name: &str, line: usize) -> Result<T> {
    let s = s.ok_or_else(|| Error::parse(line, format!("missing {name} column")))?;
    s.parse().map_err(|_| Error::parse(line, format!("bad {name} `{s}`")))
}

/// Symbol codes follow the sorted value names, numerically when every name is an integer.
pub(crate) fn sorted_alphabet(names: BTreeSet<&str>) -> Alphabet {
    let mut names: Vec<&str> = names.into_iter().collect();
    if names.iter().all(|n| n.parse::<u64>().is_ok()) {
        names.sort_by_key(|n| n.parse::<u64>().unwrap());
    }
    Alphabet::new(names.into_iter().map(String::from).collect())
}

pub fn parse_database(text: &str) -> Result<Database> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, h)) if h.trim_end_matches('\r') == HEADER => {}
        Some((n, _)) => return Err(Error::parse(n, format!("expected header `{}`", HEADER.replace('\t', "<TAB>")))),
        None => return Err(Error::Format("empty database file".into())),
    }
    // (seq, time, attr) -> (value, line)
    let mut cells: BTreeMap<(usize, usize, usize), (&str, usize)> = BTreeMap::new();
    for (n, l) in lines {
        let l = l.trim_end_matches('\r');
        if l.is_empty() {
            continue;
        }
        let mut cols = l.split('\t');
        let seq: usize = field(cols.next(), "seq", n)?;
        let time: usize = field(cols.next(), "time", n)?;
        let attr: usize = field(cols.next(), "attr", n)?;
        let value = cols.next().filter(|v| !v.is_empty()).ok_or_else(|| Error::parse(n, "missing value"))?;
        if cols.next().is_some() {
            return Err(Error::parse(n, "more than four columns"));
        }
        if time == 0 {
            return Err(Error::parse(n, "times start at 1"));
        }
        if let Some((_, first)) = cells.insert((seq, time, attr), (value, n)) {
            return Err(Error::parse(n, format!("cell already given on line {first}")));
        }
    }
    if cells.is_empty() {
        return Err(Error::Format("database has no rows".into()));
    }
    let n_attrs = cells.keys().map(|k| k.2).max().unwrap() + 1;
    let mut names: Vec<BTreeSet<&str>> = vec![BTreeSet::new(); n_attrs];
    for (&(_, _, a), &(v, _)) in &cells {
        names[a].insert(v);
    }
    let alphabets: Vec<Alphabet> = names.into_iter().map(sorted_alphabet).collect();

    let mut seqs: Vec<MultiSeq> = Vec::new();
    let mut it = cells.iter().peekable();
    while let Some((&(seq, _, _), &(_, line))) = it.peek() {
        if seq != seqs.len() {
            return Err(Error::parse(line, format!("sequence {} is missing", seqs.len())));
        }
        let mut data = Vec::new();
        let mut expect = (1, 0);
        while let Some((&(s, t, a), &(v, line))) = it.peek() {
            if s != seq {
                break;
            }
            if (t, a) != expect {
                let msg = if t != expect.0 && expect.1 == 0 {
                    format!("time {t} follows time {} in sequence {seq}", expect.0 - 1)
                } else {
                    format!("sequence {seq} time {} lacks attribute {}", expect.0, expect.1)
                };
                return Err(Error::parse(line, msg));
            }
            data.push(alphabets[a].code(v).unwrap());
            expect = if a + 1 == n_attrs { (t + 1, 0) } else { (t, a + 1) };
            it.next();
        }
        if expect.1 != 0 {
            return Err(Error::parse(line, format!("sequence {seq} time {} lacks attribute {}", expect.0, expect.1)));
        }
        seqs.push(MultiSeq::new(n_attrs, data)?);
    }
    Ok(Database::new(alphabets, seqs)?)
}

pub fn format_database(db: &Database) -> String {
    let mut out = String::with_capacity(db.total_events() * 12);
    out.push_str(HEADER);
    out.push('\n');
    for (s, seq) in db.sequences().iter().enumerate() {
        for t in 0..seq.len() {
            for (a, &v) in seq.row(t).iter().enumerate() {
                let name = db.alphabet(a as u32).name(v).unwrap_or("?");
                let _ = writeln!(out, "{s}\t{}\t{a}\t{name}", t + 1);
            }
        }
    }
    out
}

pub fn read_database(path: impl AsRef<Path>) -> Result<Database> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_database(&text)
}

pub fn write_database(path: impl AsRef<Path>, db: &Database) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_database(db)).map_err(|e| Error::io(path, e))
}
