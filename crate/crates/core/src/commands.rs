//! Text front end shared by the command-line tool and the browser demo.
//!
//! Every command returns its full line-oriented report together with an
//! exit status; nothing here touches the file system or the terminal.

use std::fmt::Write as _;

use crate::contraction::Step;
use crate::formula::{format_mill1, format_sequent, Sequent};
use crate::lexicon::{fill_placeholders, Lexicon};
use crate::prover::{prove, derivable, BudgetExhausted, ProofSearch, Reading, SearchConfig, SearchStatus, Verdict};
use crate::semantics::{apply_lexicon, extract_term, LambdaTerm};
use crate::syntax::{parse_lambek, Mill1Parser};
use crate::term::{Term, Var};
use crate::translate::{sentence_to_sequent, translate_lambek, LintKind, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Underivable = 1,
    Budget = 2,
    InputError = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub status: Status,
}

impl Report {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Report { text: format!("ERROR: {msg}\n"), status: Status::InputError }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub search: SearchConfig,
    /// Emit contraction traces and search statistics.
    pub trace: bool,
    /// Emit deep-structure terms.
    pub sem: bool,
}

/// `translate FORMULA LEFT RIGHT`
pub fn cmd_translate(lambek: &str, left: u32, right: u32) -> Report {
    match parse_lambek(lambek) {
        Ok(f) => {
            let m = translate_lambek(&f, &Span::positions(left, right), &mut Default::default());
            Report { text: format!("{}\n", format_mill1(&m)), status: Status::Success }
        }
        Err(e) => Report::input_error(e),
    }
}

fn write_lint(out: &mut String, search: &ProofSearch, seq: &Sequent) {
    for (i, issue) in &search.lint {
        let f = seq.polarized().nth(*i).map(|(f, _)| format_mill1(f)).unwrap_or_default();
        let what = match issue.kind {
            LintKind::Occurrences(n) => format!("quantifier binds {n} occurrence(s), expected 2"),
            LintKind::SamePolarity => "both occurrences have the same polarity".to_string(),
        };
        let _ = writeln!(out, "LINT formula {}: {what}: {f}", i + 1);
    }
}

fn write_steps(out: &mut String, steps: &[Step]) {
    for (k, s) in steps.iter().enumerate() {
        out.push_str(&s.trace_line(k + 1));
        out.push('\n');
    }
}

fn write_reading(out: &mut String, r: &Reading, trace: bool) {
    for &(n, p) in &r.matching {
        let (a, b) = (r.structure.atom(n).expect("atom"), r.structure.atom(p).expect("atom"));
        let _ = writeln!(out, "AXIOM {n} {p} {a} {b}");
    }
    for (m, t) in r.substitution.iter() {
        let _ = writeln!(out, "SUBST {} := {}", Term::Var(Var::Meta(m)), r.substitution.apply(t));
    }
    if trace {
        write_steps(out, &r.steps);
        out.push_str("FINAL vertices=1 links=0\n");
    }
}

fn write_failure(out: &mut String, search: &ProofSearch) {
    if let Some(f) = &search.first_failure {
        out.push_str("REJECTED");
        for (n, p) in &f.matching {
            let _ = write!(out, " {n}-{p}");
        }
        out.push('\n');
        write_steps(out, &f.steps);
        for line in f.graph.describe() {
            out.push_str(&line);
            out.push('\n');
        }
    }
}

fn write_stats(out: &mut String, search: &ProofSearch) {
    let s = &search.stats;
    let _ = writeln!(
        out,
        "STATS visited={} link_attempts={} doomed={} rejected={}",
        s.visited, s.link_attempts, s.doomed, s.rejected
    );
}

fn status_line(out: &mut String, readings: usize, verdict: Verdict) -> Status {
    match verdict {
        Verdict::Derivable => {
            let _ = writeln!(out, "READINGS: {readings}");
            Status::Success
        }
        Verdict::Underivable => {
            out.push_str("UNDERIVABLE\n");
            Status::Underivable
        }
        Verdict::Unknown => {
            out.push_str("BUDGET\n");
            Status::Budget
        }
    }
}

/// `prove SEQUENT`
pub fn cmd_prove(sequent: &str, opts: &Options) -> Report {
    let seq = match Mill1Parser::new().sequent(sequent) {
        Ok(s) => s,
        Err(e) => return Report::input_error(e),
    };
    let search = prove(&seq, &opts.search);
    let mut out = String::new();
    let _ = writeln!(out, "SEQUENT {}", format_sequent(&seq));
    write_lint(&mut out, &search, &seq);
    if search.unbalanced && opts.trace {
        out.push_str("UNBALANCED atom counts; no matching exists\n");
    }
    for (i, r) in search.readings.iter().enumerate() {
        let _ = writeln!(out, "READING {}", i + 1);
        write_reading(&mut out, r, opts.trace);
        if opts.sem {
            match extract_term(r, &seq) {
                Ok(t) => {
                    let _ = writeln!(out, "DEEP: {t}");
                }
                Err(e) => {
                    let _ = writeln!(out, "DEEP: error: {e}");
                }
            }
        }
    }
    if opts.trace {
        if search.readings.is_empty() {
            write_failure(&mut out, &search);
        }
        write_stats(&mut out, &search);
    }
    let status = status_line(&mut out, search.readings.len(), search.verdict());
    Report { text: out, status }
}

/// `parse LEXICON SENTENCE`, with the lexicon given as text.
pub fn cmd_parse(lexicon: &str, sentence: &str, goal: Option<&str>, opts: &Options) -> Report {
    let lex = match Lexicon::parse(lexicon) {
        Ok(l) => l,
        Err(e) => return Report::input_error(format!("lexicon: {e}")),
    };
    let words: Vec<&str> = sentence.split_whitespace().collect();
    if words.is_empty() {
        return Report::input_error("usage: parse LEXICON SENTENCE (the sentence is empty)");
    }
    let goal = match goal {
        Some(g) => match Mill1Parser::new().formula(g) {
            Ok(f) => Some(fill_placeholders(&f, &Term::Pos(0), &Term::Pos(words.len() as u32))),
            Err(e) => return Report::input_error(format!("goal: {e}")),
        },
        None => None,
    };
    let choices = match sentence_to_sequent(&words, &lex, goal.as_ref()) {
        Ok(c) => c,
        Err(e) => return Report::input_error(e),
    };
    let mut out = String::new();
    let mut total = 0;
    let mut budget = false;
    for (k, choice) in choices.enumerate() {
        let seq = &choice.sequent;
        let search = prove(seq, &opts.search);
        let _ = writeln!(out, "CHOICE {} {}", k + 1, format_sequent(seq));
        write_lint(&mut out, &search, seq);
        budget |= search.status == SearchStatus::BudgetExhausted;
        let sems: Option<Vec<LambdaTerm>> = choice.entries.iter().map(|e| e.sem.clone()).collect();
        for (i, r) in search.readings.iter().enumerate() {
            let _ = writeln!(out, "READING {}.{}", k + 1, i + 1);
            write_reading(&mut out, r, opts.trace);
            match extract_term(r, seq) {
                Ok(deep) => {
                    if opts.sem {
                        let _ = writeln!(out, "DEEP: {deep}");
                    }
                    if let Some(lex_terms) = &sems {
                        let _ = writeln!(out, "SEM: {}", apply_lexicon(&deep, lex_terms));
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "SEM: error: {e}");
                }
            }
        }
        if opts.trace {
            if search.readings.is_empty() {
                write_failure(&mut out, &search);
            }
            write_stats(&mut out, &search);
        }
        total += search.readings.len();
    }
    let verdict = if total > 0 {
        Verdict::Derivable
    } else if budget {
        Verdict::Unknown
    } else {
        Verdict::Underivable
    };
    let status = status_line(&mut out, total, verdict);
    Report { text: out, status }
}

/// Named formulas from a `NAME: FORMULA` file; `#` starts a comment line.
pub fn parse_formula_file(text: &str) -> Result<Vec<(String, crate::formula::Formula)>, String> {
    let mut parser = Mill1Parser::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((name, body)) = line.split_once(':') else {
            return Err(format!("line {}: expected NAME: FORMULA", i + 1));
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(format!("line {}: empty formula name", i + 1));
        }
        let f = parser.formula(body).map_err(|e| format!("formula {name} (line {}): {e}", i + 1))?;
        out.push((name.to_string(), f));
    }
    Ok(out)
}

/// `compare FILE`, with the file given as text. Prints `a -> b` for every
/// ordered pair where `b` is derivable from `a`.
pub fn cmd_compare(file: &str, opts: &Options) -> Report {
    let formulas = match parse_formula_file(file) {
        Ok(f) if f.is_empty() => return Report::input_error("no formulas"),
        Ok(f) => f,
        Err(e) => return Report::input_error(e),
    };
    let mut out = String::new();
    let mut unknown = false;
    for (a, fa) in &formulas {
        for (b, fb) in &formulas {
            match derivable(fa, fb, &opts.search) {
                Ok(true) => {
                    let _ = writeln!(out, "{a} -> {b}");
                }
                Ok(false) => {}
                Err(BudgetExhausted) => {
                    unknown = true;
                    let _ = writeln!(out, "UNKNOWN {a} -> {b}");
                }
            }
        }
    }
    Report { text: out, status: if unknown { Status::Budget } else { Status::Success } }
}
