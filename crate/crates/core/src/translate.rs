//! Lambek calculus to MILL1 translation over string positions, and sequent
//! construction for sentences.
//!
//! A Lambek formula spanning positions `(x, y)` becomes a MILL1 formula whose
//! atoms carry position arguments:
//!
//! ```text
//! |p|(x,y)    = p(x,y)
//! |A\B|(y,z)  = forall x. |A|(x,y) -o |B|(x,z)
//! |A/B|(x,y)  = forall z. |B|(y,z) -o |A|(x,z)
//! |A*B|(x,z)  = exists y. |A|(x,y) * |B|(y,z)
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Formula, LambekFormula, Polarity, Sequent};
use crate::lexicon::{LexEntry, Lexicon};
use crate::term::{Term, Var, VarSupply};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub left: Term,
    pub right: Term,
}

impl Span {
    pub fn new(left: Term, right: Term) -> Self {
        Span { left, right }
    }

    pub fn positions(left: u32, right: u32) -> Self {
        Span { left: Term::Pos(left), right: Term::Pos(right) }
    }
}

pub fn translate_lambek(f: &LambekFormula, span: &Span, fresh: &mut VarSupply) -> Formula {
    match f {
        LambekFormula::Atom(p) => Formula::atom(p, vec![span.left.clone(), span.right.clone()]),
        LambekFormula::Under(a, b) => {
            let x = fresh.bound();
            let arg = translate_lambek(a, &Span::new(Term::bound(x), span.left.clone()), fresh);
            let res = translate_lambek(b, &Span::new(Term::bound(x), span.right.clone()), fresh);
            Formula::forall(x, Formula::lolli(arg, res))
        }
        LambekFormula::Over(a, b) => {
            let z = fresh.bound();
            let arg = translate_lambek(b, &Span::new(span.right.clone(), Term::bound(z)), fresh);
            let res = translate_lambek(a, &Span::new(span.left.clone(), Term::bound(z)), fresh);
            Formula::forall(z, Formula::lolli(arg, res))
        }
        LambekFormula::Prod(a, b) => {
            let y = fresh.bound();
            let l = translate_lambek(a, &Span::new(span.left.clone(), Term::bound(y)), fresh);
            let r = translate_lambek(b, &Span::new(Term::bound(y), span.right.clone()), fresh);
            Formula::exists(y, Formula::tensor(l, r))
        }
    }
}

/// Translate a Lambek sequent `A1..An |- C` with `Ai` at `(i-1, i)` and the
/// goal at `(0, n)`.
pub fn translate_lambek_sequent(ante: &[LambekFormula], goal: &LambekFormula) -> Sequent {
    let mut fresh = VarSupply::new();
    let antecedents = ante
        .iter()
        .enumerate()
        .map(|(i, a)| translate_lambek(a, &Span::positions(i as u32, i as u32 + 1), &mut fresh))
        .collect();
    let succedent = translate_lambek(goal, &Span::positions(0, ante.len() as u32), &mut fresh);
    Sequent { antecedents, succedent }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SentenceError {
    #[error("unknown word: {0}")]
    UnknownWord(String),
    #[error("no lexical entries for word: {0}")]
    EmptyEntry(String),
}

/// One lexical choice per word together with the resulting sequent.
#[derive(Clone, Debug)]
pub struct SentenceSequent<'a> {
    pub choice: Vec<usize>,
    pub entries: Vec<&'a LexEntry>,
    pub sequent: Sequent,
}

/// Lazily enumerates the sequents of a sentence, one per combination of
/// lexical entries, in lexicographic order of entry indices.
pub struct SentenceSequents<'a> {
    words: Vec<&'a [LexEntry]>,
    goal: Formula,
    odometer: Option<Vec<usize>>,
}

impl<'a> Iterator for SentenceSequents<'a> {
    type Item = SentenceSequent<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        let choice = self.odometer.clone()?;
        let mut fresh = VarSupply::new();
        let entries: Vec<&LexEntry> = self.words.iter().zip(&choice).map(|(es, &c)| &es[c]).collect();
        let antecedents = entries
            .iter()
            .enumerate()
            .map(|(i, e)| e.formula_at(&Span::positions(i as u32, i as u32 + 1), &mut fresh))
            .collect();
        let succedent = self.goal.rename_apart(&mut fresh);

        // Advance the odometer, last word fastest.
        let mut next = choice.clone();
        let mut i = next.len();
        self.odometer = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.words[i].len() {
                break Some(next);
            }
            next[i] = 0;
        };
        Some(SentenceSequent { choice, entries, sequent: Sequent { antecedents, succedent } })
    }
}

/// The default goal `s(0,n)`.
pub fn default_goal(n: usize) -> Formula {
    Formula::atom("s", vec![Term::Pos(0), Term::Pos(n as u32)])
}

/// Build the sequents for `words`; `goal` defaults to `s(0,n)`.
pub fn sentence_to_sequent<'a>(
    words: &[&str],
    lexicon: &'a Lexicon,
    goal: Option<&Formula>,
) -> Result<SentenceSequents<'a>, SentenceError> {
    let mut per_word = Vec::with_capacity(words.len());
    for w in words {
        let entries = lexicon.entries(w).ok_or_else(|| SentenceError::UnknownWord(w.to_string()))?;
        if entries.is_empty() {
            return Err(SentenceError::EmptyEntry(w.to_string()));
        }
        per_word.push(entries);
    }
    let goal = goal.cloned().unwrap_or_else(|| default_goal(words.len()));
    Ok(SentenceSequents { words: per_word, goal, odometer: Some(vec![0; words.len()]) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LintKind {
    /// The quantifier binds a number of occurrences other than two.
    Occurrences(usize),
    /// Both position occurrences have the same polarity once a right
    /// position is counted as a polarity switch.
    SamePolarity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LintIssue {
    pub binder: u32,
    pub kind: LintKind,
}

/// Check that every quantifier binds exactly two occurrences, one positive
/// and one negative, where the polarity of an occurrence is the polarity of
/// its atom, flipped for an argument in right (second) position.
pub fn lint_two_occurrence(f: &Formula) -> Vec<LintIssue> {
    let mut occ: BTreeMap<u32, Vec<Option<Polarity>>> = BTreeMap::new();
    for b in f.binder_occurrences().keys() {
        occ.insert(*b, Vec::new());
    }
    for (sub, pol) in f.polarized_subformulas(Polarity::Neg) {
        let Formula::Atom(a) = sub else { continue };
        for (i, t) in a.args.iter().enumerate() {
            let p = match i {
                0 => Some(pol),
                1 => Some(pol.flip()),
                _ => None,
            };
            let mut ids = Vec::new();
            bound_occurrences(t, &mut ids);
            for id in ids {
                occ.entry(id).or_default().push(p);
            }
        }
    }
    let mut issues = Vec::new();
    for (binder, ps) in occ {
        if ps.len() != 2 {
            issues.push(LintIssue { binder, kind: LintKind::Occurrences(ps.len()) });
        } else if let (Some(a), Some(b)) = (ps[0], ps[1]) {
            if a == b {
                issues.push(LintIssue { binder, kind: LintKind::SamePolarity });
            }
        }
    }
    issues
}

fn bound_occurrences(t: &Term, out: &mut Vec<u32>) {
    match t {
        Term::Var(Var::Bound(id)) => out.push(*id),
        Term::Var(_) | Term::Pos(_) => {}
        Term::Fun(_, args) => args.iter().for_each(|a| bound_occurrences(a, out)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::format_mill1;
    use crate::syntax::{parse_lambek, parse_mill1};

    fn tr(s: &str, l: u32, r: u32) -> String {
        format_mill1(&translate_lambek(&parse_lambek(s).unwrap(), &Span::positions(l, r), &mut VarSupply::new()))
    }

    #[test]
    fn atom_translation() {
        assert_eq!(tr("np", 0, 1), "np(0,1)");
    }

    #[test]
    fn under_translation() {
        assert_eq!(tr("np\\s", 1, 2), "forall x0. (np(x0,1) -o s(x0,2))");
    }

    #[test]
    fn relative_pronoun_translation_matches_object_extraction_formula() {
        let expected = parse_mill1(
            "forall x0. ((forall x1. (np(x0,x1) -o s(4,x1))) -o (forall x2. (n(x2,3) -o n(x2,x0))))",
        )
        .unwrap();
        let got = translate_lambek(&parse_lambek("(n\\n)/(s/np)").unwrap(), &Span::positions(3, 4), &mut VarSupply::new());
        assert!(got.alpha_eq(&expected), "{}", format_mill1(&got));
    }

    #[test]
    fn product_translation() {
        assert_eq!(tr("a*b", 0, 2), "exists x0. (a(0,x0) * b(x0,2))");
    }

    #[test]
    fn translations_pass_two_occurrence_lint() {
        for s in ["np\\s", "(n\\n)/(s/np)", "(np\\s)/(np\\s)", "a*b", "((a/b)\\c)*d"] {
            let f = translate_lambek(&parse_lambek(s).unwrap(), &Span::positions(2, 3), &mut VarSupply::new());
            assert!(lint_two_occurrence(&f).is_empty(), "{s}: {:?}", lint_two_occurrence(&f));
        }
    }

    #[test]
    fn lint_flags_three_occurrences() {
        let f = parse_mill1("forall x. a(x) -o a(f(x,x))").unwrap();
        assert_eq!(lint_two_occurrence(&f)[0].kind, LintKind::Occurrences(3));
        let g = parse_mill1("forall x. np(x,1) -o s(2,x)").unwrap();
        assert_eq!(lint_two_occurrence(&g)[0].kind, LintKind::SamePolarity);
    }
}
