//! Plain-text and alist matrix formats.

use std::fmt::Write as _;

use super::matrix::BinaryMatrix;
use crate::error::ParseError;

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Whitespace-separated tokens with their 1-based column.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub(crate) fn parse_count(line: usize, col: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| ParseError::new(line, col, format!("expected {what}, found `{tok}`")))
}

/// Reads "rows cols" followed by rows of 0/1 entries. Entries may be separated
/// by whitespace or written as one contiguous token per row.
pub fn parse_text(text: &str) -> Result<BinaryMatrix, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    let (rows, cols) = parse_header(hl, header)?;
    parse_rows(&mut lines, hl, rows, cols)
}

pub(crate) fn parse_header(line: usize, header: &str) -> Result<(usize, usize), ParseError> {
    let toks = tokens(header);
    if toks.len() != 2 {
        return Err(ParseError::new(line, 1, "header must be `rows cols`"));
    }
    let rows = parse_count(line, toks[0].0, toks[0].1, "row count")?;
    let cols = parse_count(line, toks[1].0, toks[1].1, "column count")?;
    Ok((rows, cols))
}

pub(crate) fn parse_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    header_line: usize,
    rows: usize,
    cols: usize,
) -> Result<BinaryMatrix, ParseError> {
    let mut m = BinaryMatrix::zeros(rows, cols);
    let mut last = header_line;
    for r in 0..rows {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(last + 1, 1, format!("expected {rows} rows, found {r}")))?;
        last = ln;
        let toks = tokens(line);
        let entries: Vec<(usize, char)> = if toks.len() == 1 && cols > 1 {
            let (c0, t) = toks[0];
            t.chars().enumerate().map(|(i, ch)| (c0 + i, ch)).collect()
        } else {
            toks.iter()
                .map(|&(c, t)| {
                    let mut it = t.chars();
                    match (it.next(), it.next()) {
                        (Some(ch), None) => Ok((c, ch)),
                        _ => Err(ParseError::new(ln, c, format!("expected 0 or 1, found `{t}`"))),
                    }
                })
                .collect::<Result<_, _>>()?
        };
        if entries.len() != cols {
            return Err(ParseError::new(
                ln,
                1,
                format!("row {r} has {} entries, expected {cols}", entries.len()),
            ));
        }
        for (j, (c, ch)) in entries.into_iter().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(r, j, true),
                _ => return Err(ParseError::new(ln, c, format!("expected 0 or 1, found `{ch}`"))),
            }
        }
    }
    Ok(m)
}

pub fn to_text(m: &BinaryMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<&str> = (0..m.cols()).map(|c| if m.get(r, c) { "1" } else { "0" }).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// MacKay's alist: `cols rows`, max degrees, degree lists, then 1-based
/// neighbour lists per column and per row (zero padded).
pub fn to_alist(m: &BinaryMatrix) -> String {
    let cw = m.col_weights();
    let rw = m.row_weights();
    let max_c = cw.iter().copied().max().unwrap_or(0);
    let max_r = rw.iter().copied().max().unwrap_or(0);
    let t = m.transpose();
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.cols(), m.rows());
    let _ = writeln!(s, "{max_c} {max_r}");
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "{}", join(&cw));
    let _ = writeln!(s, "{}", join(&rw));
    for c in 0..m.cols() {
        let mut nb: Vec<usize> = t.row_support(c).into_iter().map(|r| r + 1).collect();
        nb.resize(max_c, 0);
        let _ = writeln!(s, "{}", join(&nb));
    }
    for r in 0..m.rows() {
        let mut nb: Vec<usize> = m.row_support(r).into_iter().map(|c| c + 1).collect();
        nb.resize(max_r, 0);
        let _ = writeln!(s, "{}", join(&nb));
    }
    s
}

pub fn parse_alist(text: &str) -> Result<BinaryMatrix, ParseError> {
    let toks: Vec<(usize, usize, &str)> = content_lines(text)
        .flat_map(|(ln, l)| tokens(l).into_iter().map(move |(c, t)| (ln, c, t)))
        .collect();
    let end_line = toks.last().map_or(1, |t| t.0);
    let mut it = toks.into_iter();
    let mut next = |what: &str| -> Result<(usize, usize, usize), ParseError> {
        let (ln, c, t) = it
            .next()
            .ok_or_else(|| ParseError::new(end_line, 1, format!("unexpected end of input reading {what}")))?;
        Ok((parse_count(ln, c, t, what)?, ln, c))
    };
    let cols = next("column count")?.0;
    let rows = next("row count")?.0;
    let max_c = next("max column degree")?.0;
    let max_r = next("max row degree")?.0;
    let cw: Vec<usize> = (0..cols).map(|_| next("column degree").map(|t| t.0)).collect::<Result<_, _>>()?;
    let rw: Vec<usize> = (0..rows).map(|_| next("row degree").map(|t| t.0)).collect::<Result<_, _>>()?;
    let mut from_cols = BinaryMatrix::zeros(rows, cols);
    for (c, &deg) in cw.iter().enumerate() {
        for k in 0..max_c {
            let (r, ln, col) = next("row index")?;
            if k < deg {
                if r == 0 || r > rows {
                    return Err(ParseError::new(ln, col, format!("row index {r} out of range in column {}", c + 1)));
                }
                from_cols.set(r - 1, c, true);
            }
        }
    }
    let mut from_rows = BinaryMatrix::zeros(rows, cols);
    for (r, &deg) in rw.iter().enumerate() {
        for k in 0..max_r {
            let (c, ln, col) = next("column index")?;
            if k < deg {
                if c == 0 || c > cols {
                    return Err(ParseError::new(ln, col, format!("column index {c} out of range in row {}", r + 1)));
                }
                from_rows.set(r, c - 1, true);
            }
        }
    }
    if from_cols != from_rows {
        return Err(ParseError::new(end_line, 1, "column and row neighbour lists disagree"));
    }
    Ok(from_rows)
}
