//! Browser bindings for the linnet prover.
//!
//! Three entry points, each taking plain strings and returning a JSON
//! document: [`translate`] (Lambek to MILL1), [`prove`] (readings with their
//! contraction traces) and [`compare`] (the derivability matrix of a list of
//! named formulas). The page in `www/` renders them.

use linnet::commands::{parse_formula_file, Status};
use linnet::prover::{Failure, SearchStatus};
use linnet::semantics::extract_term;
use linnet::syntax::{parse_lambek, Mill1Parser};
use linnet::term::Var;
use linnet::{derivable, format_mill1, format_sequent, prove as search, translate_lambek, Reading, SearchConfig, Span, Term};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct ErrorOut {
    status: &'static str,
    exit_code: i32,
    error: String,
}

fn error(msg: impl std::fmt::Display) -> String {
    to_json(&ErrorOut { status: "input-error", exit_code: Status::InputError.code(), error: msg.to_string() })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

#[derive(Serialize)]
struct TranslateOut {
    status: &'static str,
    exit_code: i32,
    formula: String,
}

/// Translate a Lambek formula spanning `left..right`.
#[wasm_bindgen]
pub fn translate(formula: &str, left: u32, right: u32) -> String {
    match parse_lambek(formula) {
        Ok(f) => to_json(&TranslateOut {
            status: "success",
            exit_code: Status::Success.code(),
            formula: format_mill1(&translate_lambek(&f, &Span::positions(left, right), &mut Default::default())),
        }),
        Err(e) => error(e),
    }
}

#[derive(Serialize)]
struct AxiomOut {
    negative: usize,
    positive: usize,
    atom: String,
}

#[derive(Serialize)]
struct ReadingOut {
    axioms: Vec<AxiomOut>,
    substitution: Vec<(String, String)>,
    steps: Vec<String>,
    deep: Option<String>,
}

#[derive(Serialize)]
struct RejectedOut {
    axioms: Vec<(usize, usize)>,
    steps: Vec<String>,
    irreducible: Vec<String>,
}

#[derive(Serialize)]
struct StatsOut {
    visited: u64,
    link_attempts: u64,
    doomed: u64,
    rejected: u64,
}

#[derive(Serialize)]
struct ProveOut {
    status: &'static str,
    exit_code: i32,
    sequent: String,
    readings: Vec<ReadingOut>,
    rejected: Option<RejectedOut>,
    stats: StatsOut,
}

fn trace(steps: &[linnet::Step]) -> Vec<String> {
    steps.iter().enumerate().map(|(k, s)| s.trace_line(k + 1)).collect()
}

fn reading_out(r: &Reading, seq: &linnet::Sequent) -> ReadingOut {
    ReadingOut {
        axioms: r
            .matching
            .iter()
            .map(|&(n, p)| AxiomOut { negative: n, positive: p, atom: r.structure.atom(n).map(|a| a.to_string()).unwrap_or_default() })
            .collect(),
        substitution: r
            .substitution
            .iter()
            .map(|(m, t)| (Term::Var(Var::Meta(m)).to_string(), r.substitution.apply(t).to_string()))
            .collect(),
        steps: trace(&r.steps),
        deep: extract_term(r, seq).ok().map(|t| t.to_string()),
    }
}

fn rejected_out(f: &Failure) -> RejectedOut {
    RejectedOut { axioms: f.matching.clone(), steps: trace(&f.steps), irreducible: f.graph.describe() }
}

/// Prove a MILL1 sequent, returning every reading with its contraction
/// trace, or the first rejected structure when there is none.
#[wasm_bindgen]
pub fn prove(sequent: &str, max_readings: u32, budget: u32) -> String {
    let seq = match Mill1Parser::new().sequent(sequent) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let cfg = SearchConfig {
        max_readings: (max_readings > 0).then_some(max_readings as usize),
        step_budget: if budget > 0 { u64::from(budget) } else { SearchConfig::default().step_budget },
        ..SearchConfig::default()
    };
    let result = search(&seq, &cfg);
    let (status, code) = if !result.readings.is_empty() {
        ("derivable", Status::Success)
    } else if result.status == SearchStatus::BudgetExhausted {
        ("budget", Status::Budget)
    } else {
        ("underivable", Status::Underivable)
    };
    let s = &result.stats;
    to_json(&ProveOut {
        status,
        exit_code: code.code(),
        sequent: format_sequent(&seq),
        readings: result.readings.iter().map(|r| reading_out(r, &seq)).collect(),
        rejected: if result.readings.is_empty() { result.first_failure.as_ref().map(rejected_out) } else { None },
        stats: StatsOut { visited: s.visited, link_attempts: s.link_attempts, doomed: s.doomed, rejected: s.rejected },
    })
}

#[derive(Serialize)]
struct CompareOut {
    status: &'static str,
    exit_code: i32,
    names: Vec<String>,
    /// `matrix[i][j]`: formula `j` is derivable from formula `i`; `null`
    /// when the search budget ran out.
    matrix: Vec<Vec<Option<bool>>>,
}

/// The derivability matrix of a `NAME: FORMULA` list.
#[wasm_bindgen]
pub fn compare(file: &str) -> String {
    let formulas = match parse_formula_file(file) {
        Ok(f) if f.is_empty() => return error("no formulas"),
        Ok(f) => f,
        Err(e) => return error(e),
    };
    let cfg = SearchConfig::default();
    let matrix: Vec<Vec<Option<bool>>> =
        formulas.iter().map(|(_, a)| formulas.iter().map(|(_, b)| derivable(a, b, &cfg).ok()).collect()).collect();
    let complete = matrix.iter().flatten().all(Option::is_some);
    to_json(&CompareOut {
        status: if complete { "success" } else { "budget" },
        exit_code: if complete { Status::Success } else { Status::Budget }.code(),
        names: formulas.into_iter().map(|(n, _)| n).collect(),
        matrix,
    })
}
