//! Problem and assignment file formats.
//!
//! A problem file is a JSON object with keys `"A"` (array of rows of number
//! literals) and `"b"` (array of number literals), plus optional `"name"`
//! and `"comment"`. An assignment file is `{"x": [literals]}`. Literals are
//! preferably strings (`"0.85"`, `"13/15"`) so no binary floating point ever
//! touches the values; bare JSON numbers are accepted and parsed from their
//! decimal literal text.

use fri_core::{render_exact, Assignment, Error, Problem, Requirement, UnitScalar};
use serde::{Deserialize, Serialize};

/// A number as it appears in a file: either a string or a bare JSON number.
/// Bare numbers keep their exact decimal text (arbitrary-precision parsing),
/// so `0.6` means 3/5, not the nearest double.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum NumberLit {
    Text(String),
    Number(serde_json::Number),
}

impl NumberLit {
    pub fn literal(&self) -> String {
        match self {
            NumberLit::Text(s) => s.clone(),
            NumberLit::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct ProblemDocument {
    #[serde(rename = "A")]
    pub a: Vec<Vec<NumberLit>>,
    pub b: Vec<NumberLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct AssignmentDocument {
    pub x: Vec<NumberLit>,
}

/// Parses a problem file. Errors carry the offending matrix position in
/// 1-based row/column form.
pub fn parse_problem(text: &str) -> Result<Problem, Error> {
    let doc: ProblemDocument = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed problem document: {e}")))?;
    problem_from_document(&doc)
}

pub fn problem_from_document(doc: &ProblemDocument) -> Result<Problem, Error> {
    let mut entries = Vec::with_capacity(doc.a.len());
    for (i, row) in doc.a.iter().enumerate() {
        let mut parsed = Vec::with_capacity(row.len());
        for (j, lit) in row.iter().enumerate() {
            let value = UnitScalar::parse(&lit.literal())
                .map_err(|e| Error::Input(format!("A[{}][{}]: {e}", i + 1, j + 1)))?;
            parsed.push(value);
        }
        entries.push(parsed);
    }
    let mut requirements = Vec::with_capacity(doc.b.len());
    for (i, lit) in doc.b.iter().enumerate() {
        let value = Requirement::parse(&lit.literal())
            .map_err(|e| Error::Input(format!("b[{}]: {e}", i + 1)))?;
        requirements.push(value);
    }
    Problem::new(entries, requirements)
}

pub fn parse_assignment(text: &str) -> Result<Assignment, Error> {
    let doc: AssignmentDocument = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed assignment document: {e}")))?;
    let mut coords = Vec::with_capacity(doc.x.len());
    for (j, lit) in doc.x.iter().enumerate() {
        let value = UnitScalar::parse(&lit.literal())
            .map_err(|e| Error::Input(format!("x[{}]: {e}", j + 1)))?;
        coords.push(value);
    }
    Ok(Assignment::new(coords))
}

/// Renders a problem back to a document with canonical exact literals, so
/// that parse(render(p)) reproduces `p` bit for bit.
pub fn render_problem(p: &Problem, name: Option<String>, comment: Option<String>) -> ProblemDocument {
    ProblemDocument {
        a: (0..p.rows())
            .map(|i| {
                p.row(i)
                    .iter()
                    .map(|v| NumberLit::Text(render_exact(v.ratio())))
                    .collect()
            })
            .collect(),
        b: (0..p.rows())
            .map(|i| NumberLit::Text(render_exact(p.requirement(i).ratio())))
            .collect(),
        name,
        comment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_string_and_bare_number_literals() {
        let p = parse_problem(
            r#"{"A": [["0.5", 0.9, "7/10"], ["0.7", "0.5", "0.6"], ["0.6", "0.8", "0.9"]],
                "b": ["1.7", 1.2, "1.8"], "name": "mixed"}"#,
        )
        .unwrap();
        assert_eq!(p.rows(), 3);
        assert_eq!(p.entry(0, 1), &UnitScalar::parse("0.9").unwrap());
        assert_eq!(p.entry(0, 2), &UnitScalar::parse("0.7").unwrap());
        assert_eq!(p.requirement(1), &Requirement::parse("1.2").unwrap());
    }

    #[test]
    fn rejects_out_of_range_entries_with_location() {
        let err = parse_problem(r#"{"A": [["1.2"]], "b": ["0.5"]}"#).unwrap_err();
        assert!(matches!(&err, Error::Input(msg) if msg.contains("A[1][1]")), "{err}");

        let err = parse_problem(r#"{"A": [["0.5", "0.5"]], "b": ["0"]}"#).unwrap_err();
        assert!(matches!(&err, Error::Input(msg) if msg.contains("b[1]")), "{err}");

        let err = parse_problem(r#"{"A": [["0.5"], ["0.5", "0.5"]], "b": ["0.5", "0.5"]}"#)
            .unwrap_err();
        assert!(matches!(&err, Error::Input(msg) if msg.contains("row 1")), "{err}");

        assert!(parse_problem("not json").is_err());
    }

    #[test]
    fn round_trips_exactly() {
        let text = r#"{"A": [["0.5","0.9","0.7"],["0.7","0.5","0.6"],["0.6","0.8","0.9"]],
                       "b": ["1.7","1.2","1.8"]}"#;
        let p = parse_problem(text).unwrap();
        let rendered = serde_json::to_string(&render_problem(&p, None, None)).unwrap();
        assert_eq!(parse_problem(&rendered).unwrap(), p);
    }

    #[test]
    fn parses_assignments() {
        let x = parse_assignment(r#"{"x": ["0.8", "0.9", 1]}"#).unwrap();
        assert_eq!(x.len(), 3);
        assert!(x.coord(2).is_one());
        assert!(parse_assignment(r#"{"x": ["2"]}"#).is_err());
    }
}
