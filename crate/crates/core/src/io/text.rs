//! Plain-text matrix format for complexes and chain maps.
//!
//! ```text
//! complex
//! degree 0 rank 2
//! labels a b
//! degree 1 rank 1
//! boundary 1 2 1
//! -1
//! 1
//! end
//! ```
//!
//! `degree n rank r` declares generators, `labels` (optional) names them,
//! and `boundary n rows cols` is followed by `rows` lines of `cols`
//! integers giving `∂: C_n → C_{n-1}`. Omitted degrees have rank 0 and
//! omitted boundaries are zero. A map uses `component n rows cols` blocks
//! between `map` and `end`. Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::chaincx::{ChainComplex, ChainMap, Matrix};
use crate::error::{Error, Result};

fn clean_label(s: &str) -> String {
    if s.is_empty() {
        return "_".into();
    }
    s.split_whitespace().collect::<Vec<_>>().join("_")
}

fn write_matrix(out: &mut String, m: &Matrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

/// Serializes a complex. Degrees of rank 0 and zero boundaries are skipped.
pub fn write_complex(c: &ChainComplex) -> String {
    let mut out = String::from("complex\n");
    if let Some((lo, hi)) = c.support() {
        for n in lo..=hi {
            let r = c.rank(n);
            if r == 0 {
                continue;
            }
            let _ = writeln!(out, "degree {n} rank {r}");
            if let Some(l) = c.labels(n) {
                let l: Vec<String> = l.iter().map(|s| clean_label(s)).collect();
                let _ = writeln!(out, "labels {}", l.join(" "));
            }
        }
        for n in lo..=hi {
            let d = c.boundary(n);
            if d.rows() > 0 && d.cols() > 0 && !d.is_zero() {
                let _ = writeln!(out, "boundary {n} {} {}", d.rows(), d.cols());
                write_matrix(&mut out, &d);
            }
        }
    }
    out.push_str("end\n");
    out
}

/// Serializes the nonzero components of a map.
pub fn write_map(f: &ChainMap) -> String {
    let mut out = String::from("map\n");
    for (&n, m) in f.components() {
        if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
            let _ = writeln!(out, "component {n} {} {}", m.rows(), m.cols());
            write_matrix(&mut out, m);
        }
    }
    out.push_str("end\n");
    out
}

/// Meaningful lines with their 1-based line numbers.
struct Lines<'a> {
    context: &'a str,
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, context: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(k, l)| {
                let l = l.split('#').next().unwrap_or("").trim();
                (!l.is_empty()).then(|| (k + 1, l.split_whitespace().collect()))
            })
            .collect();
        Lines { context, lines, pos: 0 }
    }

    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::parse(format!("{} line {line}", self.context), msg)
    }

    fn next(&mut self) -> Result<(usize, Vec<&'a str>)> {
        let l = self.lines.get(self.pos).cloned();
        self.pos += 1;
        l.ok_or_else(|| Error::parse(self.context, "unexpected end of input, expected `end`"))
    }

    fn int<T: std::str::FromStr>(&self, line: usize, tok: Option<&&str>, what: &str) -> Result<T> {
        let tok = tok.ok_or_else(|| self.err(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| self.err(line, format!("{what} {tok:?} is not an integer")))
    }

    fn header(&mut self, word: &str) -> Result<()> {
        let (line, toks) = self.next()?;
        if toks != [word] {
            return Err(self.err(line, format!("expected `{word}`")));
        }
        Ok(())
    }

    /// Reads a `keyword n rows cols` header's matrix body.
    fn matrix(&mut self, line: usize, toks: &[&str]) -> Result<(i64, Matrix)> {
        if toks.len() != 4 {
            return Err(self.err(line, format!("expected `{} <degree> <rows> <cols>`", toks[0])));
        }
        let n: i64 = self.int(line, toks.get(1), "degree")?;
        let rows: usize = self.int(line, toks.get(2), "row count")?;
        let cols: usize = self.int(line, toks.get(3), "column count")?;
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            let (l, entries) = self.next()?;
            if entries.len() != cols {
                return Err(self.err(l, format!("row {} has {} entries, expected {cols}", i + 1, entries.len())));
            }
            for (j, e) in entries.iter().enumerate() {
                let v: i64 = self.int(l, Some(e), "entry")?;
                m.set(i, j, v);
            }
        }
        Ok((n, m))
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            Some((l, _)) => Err(self.err(*l, "trailing content after `end`")),
            None => Ok(()),
        }
    }
}

/// Parses a complex; `context` names the source in error messages.
pub fn read_complex(text: &str, context: &str) -> Result<ChainComplex> {
    let mut p = Lines::new(text, context);
    p.header("complex")?;
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut bounds: BTreeMap<i64, (usize, Matrix)> = BTreeMap::new();
    let mut last_degree = None;
    loop {
        let (line, toks) = p.next()?;
        match toks[0] {
            "end" => break,
            "degree" => {
                if toks.len() != 4 || toks[2] != "rank" {
                    return Err(p.err(line, "expected `degree <n> rank <r>`"));
                }
                let n: i64 = p.int(line, toks.get(1), "degree")?;
                let r: usize = p.int(line, toks.get(3), "rank")?;
                if ranks.insert(n, r).is_some() {
                    return Err(p.err(line, format!("degree {n} declared twice")));
                }
                last_degree = Some(n);
            }
            "labels" => {
                let n = last_degree.ok_or_else(|| p.err(line, "`labels` before any `degree`"))?;
                labels.insert(n, toks[1..].iter().map(|s| s.to_string()).collect());
            }
            "boundary" => {
                let (n, m) = p.matrix(line, &toks)?;
                if bounds.insert(n, (line, m)).is_some() {
                    return Err(p.err(line, format!("boundary {n} given twice")));
                }
            }
            w => return Err(p.err(line, format!("unknown keyword `{w}`"))),
        }
    }
    p.finish()?;
    for (&n, l) in &labels {
        if l.len() != ranks[&n] {
            return Err(Error::parse(context, format!("degree {n} has {} labels for rank {}", l.len(), ranks[&n])));
        }
    }
    let lo = ranks.keys().next().copied().unwrap_or(0);
    let hi = ranks.keys().last().copied().unwrap_or(-1);
    let rank = |n: i64| ranks.get(&n).copied().unwrap_or(0);
    for (&n, (line, m)) in &bounds {
        if m.rows() != rank(n - 1) || m.cols() != rank(n) {
            return Err(p.err(
                *line,
                format!("boundary {n} is {}x{}, ranks require {}x{}", m.rows(), m.cols(), rank(n - 1), rank(n)),
            ));
        }
    }
    let degree_ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let boundaries: Vec<Matrix> = (lo..=hi)
        .map(|n| bounds.get(&n).map(|b| b.1.clone()).unwrap_or_else(|| Matrix::zeros(rank(n - 1), rank(n))))
        .collect();
    let c = ChainComplex::new(lo, degree_ranks, boundaries).map_err(|e| Error::parse(context, e.to_string()))?;
    if labels.is_empty() {
        return Ok(c);
    }
    let table = (lo..=hi)
        .map(|n| labels.get(&n).cloned().unwrap_or_else(|| (0..rank(n)).map(|k| format!("g{n}_{k}")).collect()))
        .collect();
    c.with_labels(table)
}

/// Parses a map between the given complexes.
pub fn read_map(text: &str, context: &str, source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Result<ChainMap> {
    let mut p = Lines::new(text, context);
    p.header("map")?;
    let mut comps = BTreeMap::new();
    loop {
        let (line, toks) = p.next()?;
        match toks[0] {
            "end" => break,
            "component" => {
                let (n, m) = p.matrix(line, &toks)?;
                if m.rows() != target.rank(n) || m.cols() != source.rank(n) {
                    return Err(p.err(
                        line,
                        format!(
                            "component {n} is {}x{}, complexes require {}x{}",
                            m.rows(),
                            m.cols(),
                            target.rank(n),
                            source.rank(n)
                        ),
                    ));
                }
                if comps.insert(n, m).is_some() {
                    return Err(p.err(line, format!("component {n} given twice")));
                }
            }
            w => return Err(p.err(line, format!("unknown keyword `{w}`"))),
        }
    }
    p.finish()?;
    ChainMap::new(source, target, comps).map_err(|e| Error::parse(context, e.to_string()))
}
