//! Plain-text group format:
//!
//! ```text
//! group Z/3 order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! generators 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;

use super::{make_group, FiniteGroup, GroupError};

/// Syntax error with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A syntactically valid but not yet validated group description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupText {
    pub label: String,
    pub rows: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
}

impl GroupText {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        make_group(&self.rows, &self.generators, &self.label)
    }
}

/// Meaningful lines with their 1-based numbers and the column of their first
/// non-blank character.
pub fn content_lines(input: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, raw.len() - trimmed.len() + 1, trimmed.trim_end()))
        }
    })
}

/// Whitespace-separated tokens with their 1-based columns.
pub fn tokens(line: &str, first_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((first_col + s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

pub fn parse_index(line: usize, (col, tok): (usize, &str)) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| {
        ParseError::new(
            line,
            col,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

pub fn parse_group_text(input: &str) -> Result<GroupText, ParseError> {
    let mut lines = content_lines(input);
    let (hl, hc, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty input, expected `group <label> order <n>`"))?;
    let toks = tokens(header, hc);
    if toks.len() != 4 || toks[0].1 != "group" || toks[2].1 != "order" {
        return Err(ParseError::new(
            hl,
            hc,
            "expected `group <label> order <n>`",
        ));
    }
    let label = toks[1].1.to_string();
    let order = parse_index(hl, toks[3])?;
    if order == 0 {
        return Err(ParseError::new(hl, toks[3].0, "order must be positive"));
    }

    let mut rows = Vec::with_capacity(order);
    for r in 0..order {
        let (ln, col, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(hl + r + 1, 1, format!("missing table row {r}")))?;
        let entries = tokens(line, col)
            .into_iter()
            .map(|t| parse_index(ln, t))
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != order {
            return Err(ParseError::new(
                ln,
                col,
                format!("row {r} has {} entries, expected {order}", entries.len()),
            ));
        }
        rows.push(entries);
    }

    let (gl, gc, gline) = lines
        .next()
        .ok_or_else(|| ParseError::new(hl + order + 1, 1, "missing `generators` line"))?;
    let toks = tokens(gline, gc);
    if toks.first().map(|t| t.1) != Some("generators") {
        return Err(ParseError::new(
            gl,
            gc,
            "expected `generators <i1> <i2> ...`",
        ));
    }
    let generators = toks[1..]
        .iter()
        .map(|&t| parse_index(gl, t))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some((ln, col, _)) = lines.next() {
        return Err(ParseError::new(
            ln,
            col,
            "unexpected content after `generators`",
        ));
    }
    Ok(GroupText {
        label,
        rows,
        generators,
    })
}

/// Writes a group in the text format. Labels containing whitespace have it
/// replaced by `_` so the output parses back.
pub fn format_group(group: &FiniteGroup) -> String {
    GroupDisplay(group).to_string()
}

struct GroupDisplay<'a>(&'a FiniteGroup);

impl fmt::Display for GroupDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.0;
        let label: String = g
            .label()
            .chars()
            .map(|c| if c.is_whitespace() { '_' } else { c })
            .collect();
        writeln!(f, "group {label} order {}", g.order())?;
        for row in g.table().chunks(g.order()) {
            let row: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        let gens: Vec<String> = g.generators().iter().map(usize::to_string).collect();
        writeln!(f, "generators {}", gens.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::{cyclic, symmetric};

    #[test]
    fn round_trip() {
        for g in [cyclic(1), cyclic(5), symmetric(3)] {
            let text = format_group(&g);
            let parsed = parse_group_text(&text).unwrap().build().unwrap();
            assert_eq!(parsed, g);
            assert_eq!(parsed.generators(), g.generators());
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# Z/2\n\ngroup Z/2 order 2\n0 1\n  1 0\n\ngenerators 1\n";
        assert_eq!(parse_group_text(text).unwrap().build().unwrap().order(), 2);
    }

    #[test]
    fn positions() {
        let err = parse_group_text("group G order 2\n0 1\n1 x\ngenerators 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));

        let err = parse_group_text("group G order 2\n0 1\n1 0 1\ngenerators 1\n").unwrap_err();
        assert_eq!(err.line, 3);

        let err = parse_group_text("grp G order 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));

        let err = parse_group_text("group G order 2\n0 1\n1 0\n").unwrap_err();
        assert!(err.message.contains("generators"));
    }

    #[test]
    fn syntax_ok_but_not_a_group() {
        let text = "group bad order 2\n0 1\n1 1\ngenerators 1\n";
        let parsed = parse_group_text(text).unwrap();
        assert!(parsed.build().is_err());
    }
}
