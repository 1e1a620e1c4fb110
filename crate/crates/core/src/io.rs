//! Plain-text formats for algebras and relations.
//!
//! An algebra file:
//!
//! ```text
//! algebra n=3 N=2
//! zero=c0,c2
//! one=c2,c0
//! op c0 arity=0 table=0
//! op f1_0 arity=1 table=0,0,0
//! ```
//!
//! A relation file:
//!
//! ```text
//! relation n=3 h=2
//! 0,0
//! 0,1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Operations keep
//! their file order, relations are stored sorted, and writers emit
//! exactly what the parsers accept, so both formats round-trip.

use std::fmt;

use crate::algebra::FiniteAlgebra;
use crate::error::AlgebraError;
use crate::op::{Element, Operation};
use crate::relation::Relation;

/// A parse failure, reported with the 1-based line it occurred on.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            message: message.into(),
        }
    }

    fn from_algebra(line: usize, e: AlgebraError) -> ParseError {
        ParseError::new(line, e.to_string())
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("expected a number for {what}, got {token:?}")))
}

fn parse_field<'a>(
    line: usize,
    token: &'a str,
    key: &str,
) -> Result<&'a str, ParseError> {
    match token.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(ParseError::new(
            line,
            format!("expected {key}=<value>, got {token:?}"),
        )),
    }
}

fn parse_elements(line: usize, text: &str, what: &str) -> Result<Vec<Element>, ParseError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| parse_usize(line, t.trim(), what))
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses an algebra file.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input, expected an algebra header"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("algebra") {
        return Err(ParseError::new(
            header_line,
            "expected a header of the form: algebra n=<size> N=<frame width>",
        ));
    }
    let n_tok = tokens
        .next()
        .ok_or_else(|| ParseError::new(header_line, "missing n=<size>"))?;
    let n = parse_usize(header_line, parse_field(header_line, n_tok, "n")?, "n")?;
    let width_tok = tokens
        .next()
        .ok_or_else(|| ParseError::new(header_line, "missing N=<frame width>"))?;
    let width = parse_usize(header_line, parse_field(header_line, width_tok, "N")?, "N")?;
    if let Some(extra) = tokens.next() {
        return Err(ParseError::new(
            header_line,
            format!("unexpected token {extra:?} in header"),
        ));
    }

    let mut operations: Vec<Operation> = Vec::new();
    let mut zero: Option<(usize, Vec<String>)> = None;
    let mut one: Option<(usize, Vec<String>)> = None;
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("op ") {
            let mut toks = rest.split_whitespace();
            let name = toks
                .next()
                .ok_or_else(|| ParseError::new(ln, "missing operation name"))?;
            let arity_tok = toks
                .next()
                .ok_or_else(|| ParseError::new(ln, "missing arity=<k>"))?;
            let arity = parse_usize(ln, parse_field(ln, arity_tok, "arity")?, "arity")?;
            let table_tok = toks
                .next()
                .ok_or_else(|| ParseError::new(ln, "missing table=<entries>"))?;
            let table = parse_elements(ln, parse_field(ln, table_tok, "table")?, "table entry")?;
            if let Some(extra) = toks.next() {
                return Err(ParseError::new(
                    ln,
                    format!("unexpected token {extra:?} after table"),
                ));
            }
            let op = Operation::new(name, n, arity, table)
                .map_err(|e| ParseError::from_algebra(ln, e))?;
            operations.push(op);
        } else if let Some(names) = line.strip_prefix("zero=") {
            if zero.is_some() {
                return Err(ParseError::new(ln, "duplicate zero= line"));
            }
            zero = Some((ln, split_names(names)));
        } else if let Some(names) = line.strip_prefix("one=") {
            if one.is_some() {
                return Err(ParseError::new(ln, "duplicate one= line"));
            }
            one = Some((ln, split_names(names)));
        } else {
            return Err(ParseError::new(
                ln,
                format!("expected an op, zero=, or one= line, got {line:?}"),
            ));
        }
    }

    let zero_names = zero.map(|(_, v)| v).unwrap_or_default();
    let one_names = one.map(|(_, v)| v).unwrap_or_default();
    if zero_names.len() != width || one_names.len() != width {
        return Err(ParseError::new(
            header_line,
            format!(
                "frame width N={width} but zero lists {} names and one lists {}",
                zero_names.len(),
                one_names.len()
            ),
        ));
    }
    FiniteAlgebra::new(n, operations, zero_names, one_names)
        .map_err(|e| ParseError::from_algebra(header_line, e))
}

fn split_names(text: &str) -> Vec<String> {
    if text.is_empty() {
        Vec::new()
    } else {
        text.split(',').map(|s| s.trim().to_string()).collect()
    }
}

/// Writes an algebra in the format accepted by [`parse_algebra`].
pub fn write_algebra(a: &FiniteAlgebra) -> String {
    let mut out = format!("algebra n={} N={}\n", a.universe(), a.frame_width());
    if a.frame_width() > 0 {
        out.push_str(&format!("zero={}\n", a.zero_names().join(",")));
        out.push_str(&format!("one={}\n", a.one_names().join(",")));
    }
    for op in a.operations() {
        let table: Vec<String> = op.table().iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "op {} arity={} table={}\n",
            op.name(),
            op.arity(),
            table.join(",")
        ));
    }
    out
}

/// Parses a relation file.
pub fn parse_relation(text: &str) -> Result<Relation, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input, expected a relation header"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("relation") {
        return Err(ParseError::new(
            header_line,
            "expected a header of the form: relation n=<size> h=<arity>",
        ));
    }
    let n_tok = tokens
        .next()
        .ok_or_else(|| ParseError::new(header_line, "missing n=<size>"))?;
    let n = parse_usize(header_line, parse_field(header_line, n_tok, "n")?, "n")?;
    let h_tok = tokens
        .next()
        .ok_or_else(|| ParseError::new(header_line, "missing h=<arity>"))?;
    let h = parse_usize(header_line, parse_field(header_line, h_tok, "h")?, "h")?;
    if let Some(extra) = tokens.next() {
        return Err(ParseError::new(
            header_line,
            format!("unexpected token {extra:?} in header"),
        ));
    }

    let mut tuples = Vec::new();
    for (ln, line) in lines {
        let tuple = parse_elements(ln, line, "tuple entry")?;
        if tuple.len() != h {
            return Err(ParseError::new(
                ln,
                format!("tuple has {} entries, expected {h}", tuple.len()),
            ));
        }
        tuples.push(tuple);
    }
    Relation::new(n, h, tuples).map_err(|e| ParseError::from_algebra(header_line, e))
}

/// Writes a relation in the format accepted by [`parse_relation`].
pub fn write_relation(rho: &Relation) -> String {
    let mut out = format!("relation n={} h={}\n", rho.universe(), rho.arity());
    for t in rho.tuples() {
        let entries: Vec<String> = t.iter().map(|v| v.to_string()).collect();
        out.push_str(&entries.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::two_chain_lattice;
    use proptest::prelude::*;

    #[test]
    fn algebra_files_round_trip() {
        let a = two_chain_lattice();
        let text = write_algebra(&a);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn frameless_algebra_files_round_trip() {
        let a = crate::testutil::z4_group();
        let text = write_algebra(&a);
        assert!(!text.contains("zero="));
        assert_eq!(parse_algebra(&text).unwrap(), a);
    }

    #[test]
    fn relation_files_round_trip() {
        let rho = Relation::equivalence_from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        let text = write_relation(&rho);
        assert_eq!(parse_relation(&text).unwrap(), rho);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a comment\n\nrelation n=2 h=1\n# more\n0\n\n1\n";
        let rho = parse_relation(text).unwrap();
        assert_eq!(rho.len(), 2);
    }

    #[test]
    fn unsorted_input_tuples_are_normalized() {
        let text = "relation n=2 h=1\n1\n0\n";
        let rho = parse_relation(text).unwrap();
        assert_eq!(rho.tuples(), &[vec![0], vec![1]]);
        assert_eq!(write_relation(&rho), "relation n=2 h=1\n0\n1\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let missing_header = parse_algebra("op f arity=1 table=0,0").unwrap_err();
        assert_eq!(missing_header.line, 1);

        let bad_arity = parse_algebra("algebra n=2 N=0\nop f arity=x table=0,0").unwrap_err();
        assert_eq!(bad_arity.line, 2);
        assert!(bad_arity.to_string().contains("line 2"));

        let bad_table = parse_algebra("algebra n=2 N=0\nop f arity=1 table=0,7").unwrap_err();
        assert_eq!(bad_table.line, 2);

        let short_table = parse_algebra("algebra n=2 N=0\nop f arity=1 table=0").unwrap_err();
        assert_eq!(short_table.line, 2);

        let stray = parse_algebra("algebra n=2 N=0\nwhat is this").unwrap_err();
        assert_eq!(stray.line, 2);

        let bad_tuple = parse_relation("relation n=2 h=2\n0,1\n0\n").unwrap_err();
        assert_eq!(bad_tuple.line, 3);

        let out_of_range = parse_relation("relation n=2 h=1\n5\n").unwrap_err();
        assert_eq!(out_of_range.line, 1);
    }

    #[test]
    fn frame_names_must_resolve_to_nullary_operations() {
        let text = "algebra n=2 N=1\nzero=c0\none=c9\nop c0 arity=0 table=0\n";
        let err = parse_algebra(text).unwrap_err();
        assert!(err.message.contains("c9"));

        let width_clash = "algebra n=2 N=2\nzero=c0\none=c0\nop c0 arity=0 table=0\n";
        assert!(parse_algebra(width_clash).is_err());
    }

    #[test]
    fn duplicate_frame_lines_are_rejected() {
        let text = "algebra n=2 N=1\nzero=c0\nzero=c0\none=c0\nop c0 arity=0 table=0\n";
        let err = parse_algebra(text).unwrap_err();
        assert_eq!(err.line, 3);
    }

    fn arbitrary_algebra() -> impl Strategy<Value = FiniteAlgebra> {
        (1usize..4)
            .prop_flat_map(|n| {
                let op = (0usize..3).prop_flat_map(move |arity| {
                    let cells = n.pow(arity as u32);
                    proptest::collection::vec(0..n, cells..=cells)
                        .prop_map(move |table| (arity, table))
                });
                (Just(n), proptest::collection::vec(op, 1..4))
            })
            .prop_map(|(n, specs)| {
                let ops: Vec<Operation> = specs
                    .into_iter()
                    .enumerate()
                    .map(|(i, (arity, table))| {
                        Operation::new(format!("op{i}"), n, arity, table).unwrap()
                    })
                    .collect();
                FiniteAlgebra::without_frame(n, ops).unwrap()
            })
    }

    fn arbitrary_relation() -> impl Strategy<Value = Relation> {
        (1usize..5, 1usize..4)
            .prop_flat_map(|(n, h)| {
                let tuple = proptest::collection::vec(0..n, h..=h);
                (
                    Just(n),
                    Just(h),
                    proptest::collection::vec(tuple, 0..12),
                )
            })
            .prop_map(|(n, h, tuples)| Relation::new(n, h, tuples).unwrap())
    }

    proptest! {
        #[test]
        fn any_algebra_round_trips(a in arbitrary_algebra()) {
            prop_assert_eq!(parse_algebra(&write_algebra(&a)).unwrap(), a);
        }

        #[test]
        fn any_relation_round_trips(rho in arbitrary_relation()) {
            prop_assert_eq!(parse_relation(&write_relation(&rho)).unwrap(), rho);
        }
    }
}
