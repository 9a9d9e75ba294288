//! Tab-separated triple and event files.
//!
//! Triples are `row<TAB>col<TAB>value`, events add a fourth
//! `timestamp_seconds` column. UTF-8, no header; blank lines are skipped and
//! `inf` spells infinity.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::key::Key;

fn fields(line: &str, n: usize, lineno: usize) -> Result<Vec<&str>> {
    let parts: Vec<&str> = line.split('\t').collect();
    if parts.len() != n {
        return Err(Error::Parse {
            line: lineno,
            message: format!("expected {n} tab-separated fields, found {}", parts.len()),
        });
    }
    Ok(parts)
}

fn lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)).map_err(Error::from))
        .filter(|r| match r {
            Ok((_, l)) => !l.trim().is_empty(),
            Err(_) => true,
        })
}

/// Reads triples, parsing each value with `parse_value`. Errors carry the
/// 1-based line number.
pub fn read_triples<R, V, F>(reader: R, mut parse_value: F) -> Result<Vec<(Key, Key, V)>>
where
    R: BufRead,
    F: FnMut(&str) -> Result<V>,
{
    let mut out = Vec::new();
    for item in lines(reader) {
        let (lineno, line) = item?;
        let line = line.trim_end_matches('\r');
        let f = fields(line, 3, lineno)?;
        let value = parse_value(f[2]).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        out.push((Key::parse(f[0]), Key::parse(f[1]), value));
    }
    Ok(out)
}

pub fn write_triples<W, V, I>(mut writer: W, triples: I) -> Result<()>
where
    W: Write,
    V: std::fmt::Display,
    I: IntoIterator<Item = (Key, Key, V)>,
{
    for (r, c, v) in triples {
        writeln!(writer, "{r}\t{c}\t{v}")?;
    }
    Ok(())
}

/// Raw stream event as read from disk; `count` is parsed by the caller's
/// semiring.
#[derive(Clone, Debug, PartialEq)]
pub struct RawEvent<V> {
    pub src: Key,
    pub dst: Key,
    pub count: V,
    pub timestamp: f64,
}

pub fn read_events<R, V, F>(reader: R, mut parse_value: F) -> Result<Vec<RawEvent<V>>>
where
    R: BufRead,
    F: FnMut(&str) -> Result<V>,
{
    let mut out = Vec::new();
    for item in lines(reader) {
        let (lineno, line) = item?;
        let line = line.trim_end_matches('\r');
        let f = fields(line, 4, lineno)?;
        let count = parse_value(f[2]).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let timestamp: f64 = f[3].trim().parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("bad timestamp `{}`", f[3]),
        })?;
        if !timestamp.is_finite() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("timestamp `{}` is not finite", f[3]),
            });
        }
        out.push(RawEvent {
            src: Key::parse(f[0]),
            dst: Key::parse(f[1]),
            count,
            timestamp,
        });
    }
    Ok(out)
}
