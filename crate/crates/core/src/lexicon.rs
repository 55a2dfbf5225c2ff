//! Lexicon files.
//!
//! One entry per line, tab separated:
//!
//! ```text
//! word<TAB>lambek:FORMULA[<TAB>sem:TERM]
//! word<TAB>mill1:TEMPLATE[<TAB>sem:TERM]
//! ```
//!
//! In `mill1:` templates the constants `L` and `R` stand for the left and
//! right string positions of the word. Lines starting with `#` are comments.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Formula, LambekFormula};
use crate::semantics::{parse_lambda, LambdaTerm};
use crate::syntax::{parse_lambek, Mill1Parser, ParseError};
use crate::term::{Term, VarSupply};
use crate::translate::{translate_lambek, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaSource {
    Lambek(LambekFormula),
    Template(Formula),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexEntry {
    pub word: String,
    pub source: FormulaSource,
    pub sem: Option<LambdaTerm>,
}

impl LexEntry {
    /// The MILL1 formula for this entry when the word occupies `span`.
    pub fn formula_at(&self, span: &Span, fresh: &mut VarSupply) -> Formula {
        match &self.source {
            FormulaSource::Lambek(l) => translate_lambek(l, span, fresh),
            FormulaSource::Template(t) => fill_placeholders(t, &span.left, &span.right).rename_apart(fresh),
        }
    }
}

/// Replace the constants `L` and `R` by the given terms.
pub fn fill_placeholders(f: &Formula, left: &Term, right: &Term) -> Formula {
    fn go(t: &Term, left: &Term, right: &Term) -> Term {
        match t {
            Term::Fun(s, args) if args.is_empty() && &**s == "L" => left.clone(),
            Term::Fun(s, args) if args.is_empty() && &**s == "R" => right.clone(),
            Term::Fun(s, args) => Term::Fun(s.clone(), args.iter().map(|a| go(a, left, right)).collect()),
            _ => t.clone(),
        }
    }
    f.map_terms(&mut |t| go(t, left, right))
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
}

#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<LexEntry>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, entry: LexEntry) {
        self.entries.entry(entry.word.clone()).or_default().push(entry);
    }

    pub fn entries(&self, word: &str) -> Option<&[LexEntry]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::new();
        let mut templates = Mill1Parser::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
            if fields.len() < 2 {
                return Err(LexiconError::Malformed { line, msg: "expected word<TAB>lambek:… or word<TAB>mill1:…".into() });
            }
            let word = fields[0].to_string();
            if word.is_empty() {
                return Err(LexiconError::Malformed { line, msg: "empty word".into() });
            }
            let source = if let Some(rest) = fields[1].strip_prefix("lambek:") {
                FormulaSource::Lambek(parse_lambek(rest).map_err(|source| LexiconError::Formula { line, source })?)
            } else if let Some(rest) = fields[1].strip_prefix("mill1:") {
                FormulaSource::Template(templates.formula(rest).map_err(|source| LexiconError::Formula { line, source })?)
            } else {
                return Err(LexiconError::Malformed { line, msg: format!("unknown formula field {:?}", fields[1]) });
            };
            let mut sem = None;
            for extra in &fields[2..] {
                if extra.is_empty() {
                    continue;
                }
                let Some(body) = extra.strip_prefix("sem:") else {
                    return Err(LexiconError::Malformed { line, msg: format!("unknown field {extra:?}") });
                };
                sem = Some(parse_lambda(body).map_err(|source| LexiconError::Formula { line, source })?);
            }
            lex.add(LexEntry { word, source, sem });
        }
        Ok(lex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::format_mill1;

    #[test]
    fn parses_both_entry_kinds() {
        let text = "# toy\nJohn\tlambek:np\tsem:john\nsleeps\tlambek:np\\s\tsem:\\x. sleep x\nwhich\tmill1:forall x. n(x,L) -o n(x,R)\n";
        let lex = Lexicon::parse(text).unwrap();
        assert_eq!(lex.words().count(), 3);
        let which = &lex.entries("which").unwrap()[0];
        let f = which.formula_at(&Span::positions(3, 4), &mut VarSupply::new());
        assert_eq!(format_mill1(&f), "forall x0. (n(x0,3) -o n(x0,4))");
        assert!(lex.entries("John").unwrap()[0].sem.is_some());
    }

    #[test]
    fn reports_line_numbers() {
        let err = Lexicon::parse("a\tlambek:np\nb\tlambek:(np\n").unwrap_err();
        assert!(matches!(err, LexiconError::Formula { line: 2, .. }), "{err}");
        let err = Lexicon::parse("\n\nc np\n").unwrap_err();
        assert!(matches!(err, LexiconError::Malformed { line: 3, .. }), "{err}");
    }
}
