//! Generator specs as flat `key = value` files. `#` starts a comment.
//!
//! ```text
//! length = 10000
//! attributes = 10
//! alphabet = 100        # or one size per attribute: 20,20,50
//! patterns = 5
//! size = 3-7
//! support = 1%          # or a fraction: 0.01
//! gap_chance = 0.05     # optional
//! no_overwrite = true   # optional
//! no_interleave = false # optional
//! ```

use std::path::Path;

use ditto_core::PlantSpec;

use crate::error::{Error, Result};

fn num<T: std::str::FromStr>(v: &str, line: usize) -> Result<T> {
    v.parse().map_err(|_| Error::parse(line, format!("bad number `{v}`")))
}

fn fraction(v: &str, line: usize) -> Result<f64> {
    match v.strip_suffix('%') {
        Some(p) => Ok(num::<f64>(p.trim(), line)? / 100.0),
        None => num(v, line),
    }
}

pub fn parse_spec(text: &str) -> Result<PlantSpec> {
    let mut length = None;
    let mut attrs: Option<usize> = None;
    let mut alphabet: Option<Vec<usize>> = None;
    let mut n_patterns = None;
    let mut size = None;
    let mut support = None;
    let mut spec = PlantSpec::uniform(0, 0, 0, 0, (0, 0), 0.0);
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let l = raw.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        let (k, v) = l.split_once('=').ok_or_else(|| Error::parse(n, "expected key = value"))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "length" => length = Some(num(v, n)?),
            "attributes" => attrs = Some(num(v, n)?),
            "alphabet" => alphabet = Some(v.split(',').map(|s| num(s.trim(), n)).collect::<Result<_>>()?),
            "patterns" => n_patterns = Some(num(v, n)?),
            "size" => {
                size = Some(match v.split_once('-') {
                    Some((a, b)) => (num(a.trim(), n)?, num(b.trim(), n)?),
                    None => (num(v, n)?, num(v, n)?),
                })
            }
            "support" => support = Some(fraction(v, n)?),
            "gap_chance" => spec.gap_chance = fraction(v, n)?,
            "no_overwrite" => spec.no_overwrite = num(v, n)?,
            "no_interleave" => spec.no_interleave = num(v, n)?,
            _ => return Err(Error::parse(n, format!("unknown key `{k}`"))),
        }
    }
    let missing = |k: &str| Error::Format(format!("spec lacks `{k}`"));
    spec.length = length.ok_or_else(|| missing("length"))?;
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    spec.alphabet_sizes = match (attrs, alphabet.len()) {
        (Some(a), 1) => vec![alphabet[0]; a],
        (Some(a), k) if a != k => return Err(Error::Format(format!("{a} attributes but {k} alphabet sizes"))),
        _ => alphabet,
    };
    spec.n_patterns = n_patterns.unwrap_or(0);
    if spec.n_patterns > 0 {
        (spec.size_min, spec.size_max) = size.ok_or_else(|| missing("size"))?;
        spec.support = support.ok_or_else(|| missing("support"))?;
    }
    Ok(spec)
}

pub fn read_spec(path: impl AsRef<Path>) -> Result<PlantSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_row() {
        let s = parse_spec("length = 10000\nattributes = 10\nalphabet = 100\npatterns = 5\nsize = 3-7\nsupport = 1%\n").unwrap();
        assert_eq!(s, PlantSpec::uniform(10_000, 10, 100, 5, (3, 7), 0.01));
    }

    #[test]
    fn options_and_comments() {
        let s = parse_spec("# noise\nlength=50\nalphabet = 3, 4 # two attributes\ngap_chance = 0\nno_interleave = true\n").unwrap();
        assert_eq!(s.alphabet_sizes, [3, 4]);
        assert_eq!((s.n_patterns, s.gap_chance, s.no_interleave, s.no_overwrite), (0, 0.0, true, true));
        let s = parse_spec("length=9\nalphabet=2\npatterns=1\nsize=4\nsupport=0.25").unwrap();
        assert_eq!((s.size_min, s.size_max, s.support, s.n_attrs()), (4, 4, 0.25, 1));
    }

    #[test]
    fn bad_specs() {
        let err = |t: &str| parse_spec(t).unwrap_err().to_string();
        assert!(err("length = 10\nfoo = 1").starts_with("line 2: unknown key"));
        assert!(err("length = ten").starts_with("line 1: bad number"));
        assert!(err("length 10").starts_with("line 1"));
        assert!(err("length = 10").contains("alphabet"));
        assert!(err("length = 10\nalphabet = 5\npatterns = 2\nsize = 3").contains("support"));
        assert!(err("length = 10\nattributes = 3\nalphabet = 5,5").contains("3 attributes"));
    }
}
