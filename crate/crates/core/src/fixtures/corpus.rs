//! The example surfaces shipped as text files in the polynomial grammar.
//!
//! Each file starts with `# key: value` header lines (`name`, `description`,
//! `expected_invariant`, `optional`) followed by the polynomial, which may span
//! several lines.

use crate::error::{Error, Result};
use crate::poly::HomoPoly;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub description: String,
    pub expected_invariant: Option<i64>,
    /// Heavy entries that are not part of the default checks.
    pub optional: bool,
    pub poly: HomoPoly,
}

const FILES: [&str; 8] = [
    include_str!("../../corpus/roman.poly"),
    include_str!("../../corpus/ex4.poly"),
    include_str!("../../corpus/ex5.poly"),
    include_str!("../../corpus/ex6.poly"),
    include_str!("../../corpus/ex7_plus.poly"),
    include_str!("../../corpus/ex7_minus.poly"),
    include_str!("../../corpus/smooth_quadric.poly"),
    include_str!("../../corpus/figure_eight_torus.poly"),
];

/// Parses a corpus file: header lines, then the polynomial text.
pub fn parse_entry(text: &str) -> Result<CorpusEntry> {
    let mut name = String::new();
    let mut description = String::new();
    let mut expected = None;
    let mut optional = false;
    let mut body = String::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            let Some((key, value)) = rest.split_once(':') else { continue };
            let value = value.trim();
            match key.trim() {
                "name" => name = value.to_string(),
                "description" => description = value.to_string(),
                "expected_invariant" => {
                    expected = Some(value.parse::<i64>().map_err(|e| Error::Parse {
                        pos: 0,
                        msg: format!("bad expected_invariant {value:?}: {e}"),
                    })?)
                }
                "optional" => optional = value == "true",
                _ => {}
            }
        } else if !line.is_empty() {
            body.push_str(line);
            body.push(' ');
        }
    }
    Ok(CorpusEntry { name, description, expected_invariant: expected, optional, poly: HomoPoly::parse(&body)? })
}

/// All shipped example surfaces, including the optional ones.
pub fn corpus() -> Vec<CorpusEntry> {
    FILES.iter().map(|t| parse_entry(t).expect("shipped corpus file parses")).collect()
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}
