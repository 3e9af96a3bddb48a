//! Reading and writing instances, masks, formulas and assignments.
//!
//! Every object has a JSON form and a line-oriented text form. The writers
//! are canonical: JSON keys appear in a fixed order with no insignificant
//! whitespace, text output uses single spaces, and both end with one
//! newline. Parsing the output of a writer gives back an equal value.
//!
//! In the text forms, blank lines and lines whose first non-blank character
//! is `#` are ignored.
//!
//! | object      | JSON                                                           | text |
//! |-------------|----------------------------------------------------------------|------|
//! | instance    | `{"rows":r,"cols":c,"grid":[[..],..],"row_hints":[..],"col_hints":[..]}` | `r c`, r grid lines, a row-hint line, a column-hint line |
//! | mask        | `{"rows":r,"cols":c,"keep":[[true,false,..],..]}`             | `r c`, then r lines of `1` (kept) / `0` (crossed) |
//! | formula     | `{"n_vars":n,"clauses":[[i,j,k],..]}`                         | `p xsat n m`, then m lines of three indices |
//! | assignment  | `{"n_vars":n,"values":[true,false,..]}`                       | `p assign n`, then one line of n `1` (true) / `0` (false) |

use std::fmt::Write as _;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Axis, InvariantError, Mask, SumpleteInstance, MAX_CELLS, MAX_CELL_VALUE};
use crate::xsat::{Assignment, XsatError, XsatInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl Format {
    /// Guesses the format of `input`: JSON if the first non-blank byte is `{`.
    pub fn detect(input: &str) -> Format {
        if input.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Text
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" | "grid-text" | "xsat-text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

/// Broad classification of a [`ParseError`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// The input is not well formed.
    Syntax,
    /// The input is well formed but describes an invalid object.
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Instance(#[from] InvariantError),
    #[error(transparent)]
    Formula(#[from] XsatError),
}

impl ParseError {
    pub fn category(&self) -> ErrorCategory {
        match self {
            ParseError::Syntax { .. } | ParseError::Json { .. } => ErrorCategory::Syntax,
            ParseError::Instance(_) | ParseError::Formula(_) => ErrorCategory::Invariant,
        }
    }

    fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn from_json<T: DeserializeOwned>(input: &str) -> Result<T, ParseError> {
    if input.trim().is_empty() {
        return Err(ParseError::syntax(1, "empty input"));
    }
    Ok(serde_json::from_str(input)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("plain data always serializes");
    out.push('\n');
    out
}

/// Non-comment lines of a text document, with 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(input: &'a str) -> Self {
        Lines {
            inner: input.lines().enumerate(),
            last: 0,
        }
    }

    /// Next content line split into tokens.
    fn next_tokens(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        for (k, line) in self.inner.by_ref() {
            self.last = k + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Ok((k + 1, trimmed.split_whitespace().collect()));
        }
        let line = self.last.max(1);
        Err(if self.last == 0 {
            ParseError::syntax(line, "empty input")
        } else {
            ParseError::syntax(line, format!("unexpected end of input, expected {what}"))
        })
    }

    /// Like `next_tokens`, also checking the token count.
    fn next_exact(
        &mut self,
        count: usize,
        what: &str,
    ) -> Result<(usize, Vec<&'a str>), ParseError> {
        let (line, tokens) = self.next_tokens(what)?;
        if tokens.len() != count {
            return Err(ParseError::syntax(
                line,
                format!("expected {count} values for {what}, found {}", tokens.len()),
            ));
        }
        Ok((line, tokens))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.next_tokens("") {
            Ok((line, _)) => Err(ParseError::syntax(line, "unexpected trailing content")),
            Err(_) => Ok(()),
        }
    }
}

fn number<T: FromStr>(line: usize, token: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::syntax(line, format!("{token:?} is not a valid integer")))
}

fn flag(line: usize, token: &str) -> Result<bool, ParseError> {
    match token {
        "1" => Ok(true),
        "0" => Ok(false),
        _ => Err(ParseError::syntax(
            line,
            format!("{token:?} is not a flag (expected 0 or 1)"),
        )),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------- instances

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    rows: usize,
    cols: usize,
    grid: Vec<Vec<i64>>,
    row_hints: Vec<i64>,
    col_hints: Vec<i64>,
}

fn cell_value(row: usize, col: usize, value: i64) -> Result<u64, InvariantError> {
    match u64::try_from(value) {
        Ok(v) if (1..=MAX_CELL_VALUE).contains(&v) => Ok(v),
        _ => Err(InvariantError::CellValue { row, col, value }),
    }
}

fn hint_values(axis: Axis, hints: &[i64]) -> Result<Vec<u64>, InvariantError> {
    hints
        .iter()
        .enumerate()
        .map(|(k, &h)| {
            u64::try_from(h).map_err(|_| InvariantError::NegativeHint {
                axis,
                index: k + 1,
                value: h,
            })
        })
        .collect()
}

fn check_dims(rows: usize, cols: usize) -> Result<(), InvariantError> {
    if rows == 0 || cols == 0 {
        return Err(InvariantError::EmptyGrid { rows, cols });
    }
    let cells = rows.saturating_mul(cols);
    if cells > MAX_CELLS {
        return Err(InvariantError::TooManyCells { cells });
    }
    Ok(())
}

pub fn parse_instance(input: &str, format: Format) -> Result<SumpleteInstance, ParseError> {
    match format {
        Format::Json => instance_from_doc(from_json(input)?),
        Format::Text => parse_instance_text(input),
    }
}

fn instance_from_doc(doc: InstanceDoc) -> Result<SumpleteInstance, ParseError> {
    check_dims(doc.rows, doc.cols)?;
    if doc.grid.len() != doc.rows {
        return Err(InvariantError::RowCount {
            expected: doc.rows,
            found: doc.grid.len(),
        }
        .into());
    }
    let mut cells = Vec::with_capacity(doc.rows * doc.cols);
    for (i, row) in doc.grid.iter().enumerate() {
        if row.len() != doc.cols {
            return Err(InvariantError::RowLength {
                row: i + 1,
                expected: doc.cols,
                found: row.len(),
            }
            .into());
        }
        for (j, &v) in row.iter().enumerate() {
            cells.push(cell_value(i + 1, j + 1, v)?);
        }
    }
    Ok(SumpleteInstance::from_flat(
        doc.rows,
        doc.cols,
        cells,
        hint_values(Axis::Row, &doc.row_hints)?,
        hint_values(Axis::Column, &doc.col_hints)?,
    )?)
}

fn parse_instance_text(input: &str) -> Result<SumpleteInstance, ParseError> {
    let mut lines = Lines::new(input);
    let (line, header) = lines.next_exact(2, "the \"rows cols\" header")?;
    let rows: usize = number(line, header[0])?;
    let cols: usize = number(line, header[1])?;
    check_dims(rows, cols)?;

    let mut cells = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let (line, tokens) = lines.next_exact(cols, &format!("grid row {}", i + 1))?;
        for (j, tok) in tokens.iter().enumerate() {
            cells.push(cell_value(i + 1, j + 1, number(line, tok)?)?);
        }
    }
    let (line, tokens) = lines.next_exact(rows, "the row hints")?;
    let row_hints = tokens
        .iter()
        .map(|t| number(line, t))
        .collect::<Result<Vec<i64>, _>>()?;
    let (line, tokens) = lines.next_exact(cols, "the column hints")?;
    let col_hints = tokens
        .iter()
        .map(|t| number(line, t))
        .collect::<Result<Vec<i64>, _>>()?;
    lines.finish()?;

    Ok(SumpleteInstance::from_flat(
        rows,
        cols,
        cells,
        hint_values(Axis::Row, &row_hints)?,
        hint_values(Axis::Column, &col_hints)?,
    )?)
}

pub fn serialize_instance(inst: &SumpleteInstance, format: Format) -> String {
    match format {
        Format::Json => to_json(&InstanceDoc {
            rows: inst.rows(),
            cols: inst.cols(),
            grid: (0..inst.rows())
                .map(|i| inst.row(i).iter().map(|&v| v as i64).collect())
                .collect(),
            row_hints: inst.row_hints().iter().map(|&h| h as i64).collect(),
            col_hints: inst.col_hints().iter().map(|&h| h as i64).collect(),
        }),
        Format::Text => {
            let mut out = format!("{} {}\n", inst.rows(), inst.cols());
            for i in 0..inst.rows() {
                let _ = writeln!(out, "{}", join(inst.row(i)));
            }
            let _ = writeln!(out, "{}", join(inst.row_hints()));
            let _ = writeln!(out, "{}", join(inst.col_hints()));
            out
        }
    }
}

// -------------------------------------------------------------------- masks

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaskDoc {
    rows: usize,
    cols: usize,
    keep: Vec<Vec<bool>>,
}

pub fn parse_mask(input: &str, format: Format) -> Result<Mask, ParseError> {
    match format {
        Format::Json => {
            let doc: MaskDoc = from_json(input)?;
            if doc.keep.len() != doc.rows {
                return Err(InvariantError::RowCount {
                    expected: doc.rows,
                    found: doc.keep.len(),
                }
                .into());
            }
            let mask = Mask::new(doc.keep)?;
            if mask.cols() != doc.cols {
                return Err(InvariantError::RowLength {
                    row: 1,
                    expected: doc.cols,
                    found: mask.cols(),
                }
                .into());
            }
            Ok(mask)
        }
        Format::Text => {
            let mut lines = Lines::new(input);
            let (line, header) = lines.next_exact(2, "the \"rows cols\" header")?;
            let rows: usize = number(line, header[0])?;
            let cols: usize = number(line, header[1])?;
            check_dims(rows, cols)?;
            let mut keep = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                let (line, tokens) = lines.next_exact(cols, &format!("mask row {}", i + 1))?;
                for tok in tokens {
                    keep.push(flag(line, tok)?);
                }
            }
            lines.finish()?;
            Ok(Mask::from_flat(rows, cols, keep)?)
        }
    }
}

pub fn serialize_mask(mask: &Mask, format: Format) -> String {
    match format {
        Format::Json => to_json(&MaskDoc {
            rows: mask.rows(),
            cols: mask.cols(),
            keep: (0..mask.rows()).map(|i| mask.row(i).to_vec()).collect(),
        }),
        Format::Text => {
            let mut out = format!("# 1 = kept, 0 = crossed out\n{} {}\n", mask.rows(), mask.cols());
            for i in 0..mask.rows() {
                let _ = writeln!(out, "{}", join(mask.row(i).iter().map(|&k| u8::from(k))));
            }
            out
        }
    }
}

// ----------------------------------------------------------------- formulas

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulaDoc {
    n_vars: usize,
    clauses: Vec<Vec<usize>>,
}

pub fn parse_xsat(input: &str, format: Format) -> Result<XsatInstance, ParseError> {
    match format {
        Format::Json => {
            let doc: FormulaDoc = from_json(input)?;
            Ok(XsatInstance::from_lists(doc.n_vars, doc.clauses)?)
        }
        Format::Text => {
            let mut lines = Lines::new(input);
            let (line, header) = lines.next_exact(4, "the \"p xsat n m\" header")?;
            if header[0] != "p" || header[1] != "xsat" {
                return Err(ParseError::syntax(line, "header must read \"p xsat <n> <m>\""));
            }
            let n: usize = number(line, header[2])?;
            let m: usize = number(line, header[3])?;
            let mut clauses = Vec::with_capacity(m.min(1 << 16));
            for c in 0..m {
                let (line, tokens) = lines.next_tokens(&format!("clause {}", c + 1))?;
                clauses.push(
                    tokens
                        .iter()
                        .map(|t| number(line, t))
                        .collect::<Result<Vec<usize>, _>>()?,
                );
            }
            lines.finish()?;
            Ok(XsatInstance::from_lists(n, clauses)?)
        }
    }
}

pub fn serialize_xsat(phi: &XsatInstance, format: Format) -> String {
    match format {
        Format::Json => to_json(&FormulaDoc {
            n_vars: phi.n_vars(),
            clauses: phi.clauses().iter().map(|c| c.to_vec()).collect(),
        }),
        Format::Text => {
            let mut out = format!("p xsat {} {}\n", phi.n_vars(), phi.n_clauses());
            for c in phi.clauses() {
                let _ = writeln!(out, "{}", join(c));
            }
            out
        }
    }
}

// -------------------------------------------------------------- assignments

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssignmentDoc {
    n_vars: usize,
    values: Vec<bool>,
}

pub fn parse_assignment(input: &str, format: Format) -> Result<Assignment, ParseError> {
    match format {
        Format::Json => {
            let doc: AssignmentDoc = from_json(input)?;
            if doc.values.len() != doc.n_vars {
                return Err(ParseError::syntax(
                    1,
                    format!(
                        "n_vars is {} but {} values are given",
                        doc.n_vars,
                        doc.values.len()
                    ),
                ));
            }
            Ok(Assignment::new(doc.values))
        }
        Format::Text => {
            let mut lines = Lines::new(input);
            let (line, header) = lines.next_exact(3, "the \"p assign n\" header")?;
            if header[0] != "p" || header[1] != "assign" {
                return Err(ParseError::syntax(line, "header must read \"p assign <n>\""));
            }
            let n: usize = number(line, header[2])?;
            let (line, tokens) = lines.next_exact(n, "the assignment values")?;
            let values = tokens
                .iter()
                .map(|t| flag(line, t))
                .collect::<Result<Vec<_>, _>>()?;
            lines.finish()?;
            Ok(Assignment::new(values))
        }
    }
}

pub fn serialize_assignment(a: &Assignment, format: Format) -> String {
    match format {
        Format::Json => to_json(&AssignmentDoc {
            n_vars: a.len(),
            values: a.values().to_vec(),
        }),
        Format::Text => format!(
            "p assign {}\n{}\n",
            a.len(),
            join(a.values().iter().map(|&v| u8::from(v)))
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn canonical_json_of_sample_puzzle() {
        let inst = fixtures::sample_puzzle();
        let json = serialize_instance(&inst, Format::Json);
        assert_eq!(
            json,
            "{\"rows\":5,\"cols\":5,\"grid\":[[3,5,5,7,1],[5,1,4,1,8],[4,7,2,5,2],[6,2,4,9,4],\
             [3,3,4,9,6]],\"row_hints\":[13,14,11,6,15],\"col_hints\":[11,18,11,9,10]}\n"
        );
        assert_eq!(parse_instance(&json, Format::Json).unwrap(), inst);
    }

    #[test]
    fn grid_text_of_sample_puzzle() {
        let inst = fixtures::sample_puzzle();
        let text = serialize_instance(&inst, Format::Text);
        assert!(text.starts_with("5 5\n3 5 5 7 1\n"));
        assert!(text.ends_with("13 14 11 6 15\n11 18 11 9 10\n"));
        assert_eq!(parse_instance(&text, Format::Text).unwrap(), inst);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# tiny\n1 2\n\n  # grid\n1 3\n4\n1 3\n";
        let inst = parse_instance(text, Format::Text).unwrap();
        assert_eq!(inst.cells(), &[1, 3]);
        assert_eq!(inst.row_hints(), &[4]);
    }

    #[test]
    fn empty_input_is_a_syntax_error() {
        for format in [Format::Json, Format::Text] {
            let err = parse_instance("", format).unwrap_err();
            assert_eq!(err.category(), ErrorCategory::Syntax, "{format:?}");
            let err = parse_xsat("  \n", format).unwrap_err();
            assert_eq!(err.category(), ErrorCategory::Syntax, "{format:?}");
        }
    }

    #[test]
    fn zero_cell_is_an_invariant_error() {
        let err = parse_instance("1 2\n1 0\n1\n1 0\n", Format::Text).unwrap_err();
        assert_eq!(err.category(), ErrorCategory::Invariant);
        assert_eq!(
            err,
            ParseError::Instance(InvariantError::CellValue {
                row: 1,
                col: 2,
                value: 0
            })
        );
    }

    #[test]
    fn negative_hint_is_an_invariant_error() {
        let json = r#"{"rows":1,"cols":1,"grid":[[2]],"row_hints":[-1],"col_hints":[0]}"#;
        let err = parse_instance(json, Format::Json).unwrap_err();
        assert_eq!(
            err,
            ParseError::Instance(InvariantError::NegativeHint {
                axis: Axis::Row,
                index: 1,
                value: -1
            })
        );
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_instance("2 2\n1 1\n1 x\n0 0\n0 0\n", Format::Text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }), "{err}");
        let err = parse_instance("2 2\n1 1\n1\n0 0\n0 0\n", Format::Text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }), "{err}");
        let err = parse_instance("1 1\n1\n0\n0\n9\n", Format::Text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 5, .. }), "{err}");
        let err = parse_instance("{\"rows\":1,\n\"cols\":}", Format::Json).unwrap_err();
        assert!(matches!(err, ParseError::Json { line: 2, .. }), "{err}");
    }

    #[test]
    fn json_shape_mismatch() {
        let json = r#"{"rows":2,"cols":1,"grid":[[2]],"row_hints":[0,0],"col_hints":[0]}"#;
        assert_eq!(
            parse_instance(json, Format::Json).unwrap_err(),
            ParseError::Instance(InvariantError::RowCount {
                expected: 2,
                found: 1
            })
        );
        let json = r#"{"rows":1,"cols":1,"grid":[[2]],"row_hints":[0],"col_hints":[0],"x":1}"#;
        assert_eq!(
            parse_instance(json, Format::Json).unwrap_err().category(),
            ErrorCategory::Syntax
        );
    }

    #[test]
    fn mask_formats() {
        let mask = fixtures::sample_solution();
        let json = serialize_mask(&mask, Format::Json);
        assert!(json.starts_with("{\"rows\":5,\"cols\":5,\"keep\":[[true,true,true,false,false],"));
        assert_eq!(parse_mask(&json, Format::Json).unwrap(), mask);
        let text = serialize_mask(&mask, Format::Text);
        assert!(text.contains("\n1 1 1 0 0\n"));
        assert_eq!(parse_mask(&text, Format::Text).unwrap(), mask);
        assert!(parse_mask("1 2\n1 2\n", Format::Text).is_err());
    }

    #[test]
    fn xsat_text_of_sample_formula() {
        let text = "p xsat 6 6\n1 2 3\n2 3 6\n1 4 6\n2 5 6\n1 4 5\n3 4 5\n";
        let phi = parse_xsat(text, Format::Text).unwrap();
        assert_eq!(phi, fixtures::sample_formula());
        assert_eq!(serialize_xsat(&phi, Format::Text), text);
        let json = serialize_xsat(&phi, Format::Json);
        assert_eq!(
            json,
            "{\"n_vars\":6,\"clauses\":[[1,2,3],[2,3,6],[1,4,6],[2,5,6],[1,4,5],[3,4,5]]}\n"
        );
        assert_eq!(parse_xsat(&json, Format::Json).unwrap(), phi);
    }

    #[test]
    fn xsat_clause_errors() {
        let err = parse_xsat("p xsat 3 1\n1 1 2\n", Format::Text).unwrap_err();
        assert_eq!(
            err,
            ParseError::Formula(XsatError::RepeatedVariable { clause: 1, var: 1 })
        );
        let err = parse_xsat("p xsat 3 1\n1 2\n", Format::Text).unwrap_err();
        assert_eq!(
            err,
            ParseError::Formula(XsatError::Arity {
                clause: 1,
                found: 2
            })
        );
        let err = parse_xsat("p xsat 3 1\n1 2 7\n", Format::Text).unwrap_err();
        assert_eq!(err.category(), ErrorCategory::Invariant);
        let err = parse_xsat("p cnf 3 1\n1 2 3\n", Format::Text).unwrap_err();
        assert_eq!(err.category(), ErrorCategory::Syntax);
        let err = parse_xsat("p xsat 3 2\n1 2 3\n", Format::Text).unwrap_err();
        assert_eq!(err.category(), ErrorCategory::Syntax);
    }

    #[test]
    fn assignment_formats() {
        let a = fixtures::sample_assignment();
        let text = serialize_assignment(&a, Format::Text);
        assert_eq!(text, "p assign 6\n0 1 0 1 0 0\n");
        assert_eq!(parse_assignment(&text, Format::Text).unwrap(), a);
        let json = serialize_assignment(&a, Format::Json);
        assert_eq!(
            json,
            "{\"n_vars\":6,\"values\":[false,true,false,true,false,false]}\n"
        );
        assert_eq!(parse_assignment(&json, Format::Json).unwrap(), a);
        assert!(parse_assignment("{\"n_vars\":2,\"values\":[true]}", Format::Json).is_err());
    }

    #[test]
    fn format_detection() {
        assert_eq!(Format::detect("  {\"rows\":1}"), Format::Json);
        assert_eq!(Format::detect("# c\n1 1\n"), Format::Text);
        assert_eq!("grid-text".parse::<Format>(), Ok(Format::Text));
        assert!("yaml".parse::<Format>().is_err());
    }
}
