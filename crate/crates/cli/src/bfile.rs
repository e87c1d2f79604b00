//! b-file reading and writing.
//!
//! One term per line as `n a_n`, indices contiguous from 1. Lines starting
//! with `#` are comments; the first one carries the sequence label.

use std::fmt::Write as _;

use num_bigint::BigInt;
use realseq_core::Seq;

use crate::error::FormatError;

pub fn parse(text: &str) -> Result<Seq, FormatError> {
    let mut label = None;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if label.is_none() && terms.is_empty() {
                label = Some(comment.strip_prefix(' ').unwrap_or(comment).to_string());
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next())
        else {
            return Err(FormatError::Line { line: line_no, reason: "expected `n a_n`".into() });
        };
        let index: usize = index.parse().map_err(|_| FormatError::Line {
            line: line_no,
            reason: format!("bad index `{index}`"),
        })?;
        if index != terms.len() + 1 {
            return Err(FormatError::Line {
                line: line_no,
                reason: format!("expected index {}, found {index}", terms.len() + 1),
            });
        }
        let value: BigInt = value.parse().map_err(|_| FormatError::Line {
            line: line_no,
            reason: format!("bad integer `{value}`"),
        })?;
        terms.push(value);
    }
    let seq = Seq::new(terms).map_err(|_| FormatError::Empty)?;
    Ok(match label {
        Some(l) => seq.with_label(l),
        None => seq,
    })
}

pub fn render(seq: &Seq) -> String {
    let mut out = String::new();
    if !seq.label().is_empty() {
        writeln!(out, "# {}", seq.label()).unwrap();
    }
    for (i, t) in seq.terms().iter().enumerate() {
        writeln!(out, "{} {}", i + 1, t).unwrap();
    }
    out
}
