//! PWF v1, the line-based text encoding of a [`PwFn`].
//!
//! ```text
//! pwf v1
//! x: 0 3/4 1
//! v: 0 1 0
//! seg 0: 0 0
//! seg 1: 0 0
//! ```
//!
//! `#` starts a comment that runs to the end of the line; blank lines are ignored.

use std::fmt::Write as _;

use super::{Affine, PwFn};
use crate::error::{Error, Result};
use crate::rat::{parse_rat, Rat};

pub const PWF_HEADER: &str = "pwf v1";

/// Canonical, deterministic encoding.
pub fn serialize_pwf(f: &PwFn) -> String {
    let mut out = String::new();
    out.push_str(PWF_HEADER);
    out.push('\n');
    let join = |items: &[Rat]| {
        items
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "x: {}", join(f.breakpoints()));
    let _ = writeln!(out, "v: {}", join(f.point_values()));
    for (i, seg) in f.segments().iter().enumerate() {
        let _ = writeln!(out, "seg {i}: {} {}", seg.slope, seg.intercept);
    }
    out
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// Whitespace-separated tokens with 1-based columns.
    fn tokens(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s + 1, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    fn rationals(&self, tokens: &[(usize, &str)]) -> Result<Vec<Rat>> {
        tokens
            .iter()
            .map(|(col, tok)| parse_rat(tok).map_err(|m| self.error(*col, m)))
            .collect()
    }

    /// Parses `<keyword>: r r r ...`.
    fn keyed_list(&self, keyword: &str) -> Result<Vec<Rat>> {
        let tokens = self.tokens();
        let expected = format!("{keyword}:");
        match tokens.first() {
            Some((_, tok)) if *tok == expected => self.rationals(&tokens[1..]),
            Some((col, tok)) => {
                Err(self.error(*col, format!("expected `{expected}`, found `{tok}`")))
            }
            None => Err(self.error(1, format!("expected `{expected}`"))),
        }
    }
}

pub fn parse_pwf(text: &str) -> Result<PwFn> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| Line {
            number: i + 1,
            text: raw.split('#').next().unwrap_or(""),
        })
        .filter(|l| !l.text.trim().is_empty());

    let eof = |what: &str| Error::Syntax {
        line: text.lines().count() + 1,
        column: 1,
        message: format!("unexpected end of input, expected {what}"),
    };

    let header = lines.next().ok_or_else(|| eof("`pwf v1`"))?;
    let header_tokens = header.tokens();
    if header_tokens.iter().map(|(_, t)| *t).collect::<Vec<_>>() != ["pwf", "v1"] {
        let col = header_tokens.first().map_or(1, |(c, _)| *c);
        return Err(header.error(col, "expected header `pwf v1`"));
    }

    let x_line = lines.next().ok_or_else(|| eof("`x:` line"))?;
    let xs = x_line.keyed_list("x")?;
    let v_line = lines.next().ok_or_else(|| eof("`v:` line"))?;
    let values = v_line.keyed_list("v")?;
    if values.len() != xs.len() {
        return Err(v_line.error(
            1,
            format!("{} point values for {} breakpoints", values.len(), xs.len()),
        ));
    }

    let mut segments = Vec::with_capacity(xs.len().saturating_sub(1));
    for line in lines {
        let i = segments.len();
        let tokens = line.tokens();
        let label_ok = tokens.len() == 4
            && tokens[0].1 == "seg"
            && tokens[1].1.strip_suffix(':') == Some(i.to_string().as_str());
        if !label_ok {
            let col = tokens.first().map_or(1, |(c, _)| *c);
            return Err(line.error(col, format!("expected `seg {i}: <slope> <intercept>`")));
        }
        let mut law = line.rationals(&tokens[2..])?;
        let intercept = law.pop().unwrap();
        let slope = law.pop().unwrap();
        segments.push(Affine::new(slope, intercept));
    }
    if segments.len() + 1 != xs.len() {
        return Err(eof(&format!("{} segments", xs.len().saturating_sub(1))));
    }
    PwFn::from_parts(xs, values, segments)
}
