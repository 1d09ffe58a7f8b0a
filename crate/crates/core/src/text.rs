//! Line-oriented word file format.
//!
//! ```text
//! fsw n=3 k=2 len=2
//! q0>q0,q1>q1,q2>b1,q2>q2
//! b1>b2,q0>q0,q1>q1,q2>q2
//! ```
//!
//! The header fixes the state space and the number of letters; every
//! following line is one letter as comma-separated `src>dst` tokens. An
//! empty line is the empty letter. Emitted files list tokens in canonical
//! order and end every line with `\n`; the parser accepts tokens in any order.

use crate::error::{Error, Result};
use crate::state::{StateId, StateSpace};
use crate::word::{FiniteWord, Letter};

pub fn write_word(w: &FiniteWord) -> String {
    let space = w.space();
    let mut out = format!("fsw n={} k={} len={}\n", space.n, space.k, w.len());
    for l in w.letters() {
        out.push_str(&l.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_word(input: &str) -> Result<FiniteWord> {
    let body = input.strip_suffix('\n').unwrap_or(input);
    let mut lines = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines.next().unwrap_or_default();
    let (space, len) = parse_header(header)?;
    let mut letters = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if letters.len() == len {
            return Err(Error::parse(
                lineno,
                format!("more than {len} letter lines"),
            ));
        }
        let letter = parse_letter(line).map_err(|msg| Error::parse(lineno, msg))?;
        for &(s, d) in letter.edges() {
            for x in [s, d] {
                if !space.contains(x) {
                    return Err(Error::parse(
                        lineno,
                        format!("state `{x}` does not exist in {space}"),
                    ));
                }
            }
        }
        letters.push(letter);
    }
    if letters.len() != len {
        return Err(Error::parse(
            letters.len() + 2,
            format!("header declares {len} letters, found {}", letters.len()),
        ));
    }
    FiniteWord::new(space, letters)
}

fn parse_header(line: &str) -> Result<(StateSpace, usize)> {
    let fields: Vec<&str> = line.split(' ').collect();
    let [magic, n, k, len] = fields.as_slice() else {
        return Err(Error::parse(1, "expected `fsw n=<n> k=<k> len=<len>`"));
    };
    if *magic != "fsw" {
        return Err(Error::parse(1, "missing `fsw` magic"));
    }
    let num = |field: &str, key: &str| -> Result<usize> {
        let v = field
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| Error::parse(1, format!("expected `{key}=<number>`")))?;
        if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(1, format!("`{key}` is not a natural number")));
        }
        v.parse()
            .map_err(|_| Error::parse(1, format!("`{key}` is out of range")))
    };
    let n = num(n, "n")?;
    let k = num(k, "k")?;
    let len = num(len, "len")?;
    let space = StateSpace::new(n, k).map_err(|e| Error::parse(1, e.to_string()))?;
    Ok((space, len))
}

/// Parses one letter line; the empty line is the empty letter.
pub fn parse_letter(line: &str) -> std::result::Result<Letter, String> {
    if line.is_empty() {
        return Ok(Letter::default());
    }
    let mut edges = Vec::new();
    for token in line.split(',') {
        let (s, d) = token
            .split_once('>')
            .ok_or_else(|| format!("edge token `{token}` is not `src>dst`"))?;
        let s: StateId = s.parse().map_err(|e| format!("{e}"))?;
        let d: StateId = d.parse().map_err(|e| format!("{e}"))?;
        edges.push((s, d));
    }
    Ok(Letter::new(edges))
}
