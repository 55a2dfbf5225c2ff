//! Proof search: backtracking over axiom matchings.
//!
//! The sequent is unfolded once; the search then repeatedly picks an open
//! atom, tries each unifiable partner of opposite polarity, and recurses.
//! With early contraction a running contraction graph is kept alongside the
//! partial structure and branches whose graph is doomed are cut. Every
//! complete structure is checked from scratch with the contraction
//! criterion before it becomes a reading.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::contraction::{is_proof_net, ContractionGraph, Step};
use crate::formula::{Formula, Polarity, Sequent};
use crate::structure::{NodeId, ProofStructure};
use crate::translate::{lint_two_occurrence, LintIssue};
use crate::unify::{unify_atoms, Substitution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Stop after this many readings; `None` means all. A capped search
    /// returns the first readings in search order, which need not be the
    /// first ones of the sorted complete list.
    pub max_readings: Option<usize>,
    /// Maximum number of axiom-link attempts.
    pub step_budget: u64,
    /// Branch on the open atom with the fewest compatible partners.
    pub fewest_candidates_first: bool,
    /// Maintain a contracted running graph and prune doomed branches.
    pub early_contraction: bool,
    /// Report formulas violating the two-occurrence pattern.
    pub diagnostic_two_occurrence: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_readings: None,
            step_budget: 1_000_000,
            fewest_candidates_first: true,
            early_contraction: true,
            diagnostic_two_occurrence: false,
        }
    }
}

/// One proof net for the sequent.
#[derive(Clone, Debug)]
pub struct Reading {
    /// Axiom links as `(negative, positive)` atom pairs, sorted.
    pub matching: Vec<(NodeId, NodeId)>,
    pub substitution: Substitution,
    pub structure: ProofStructure,
    /// Contraction sequence taking the abstraction to a single vertex.
    pub steps: Vec<Step>,
}

/// A complete structure rejected by the contraction criterion.
#[derive(Clone, Debug)]
pub struct Failure {
    pub matching: Vec<(NodeId, NodeId)>,
    pub structure: ProofStructure,
    pub steps: Vec<Step>,
    pub graph: ContractionGraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The search space was exhausted.
    Complete,
    /// Stopped after `max_readings` readings.
    Truncated,
    /// The step budget ran out first.
    BudgetExhausted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search nodes (partial structures) visited.
    pub visited: u64,
    /// Axiom-link attempts.
    pub link_attempts: u64,
    /// Branches cut because the running graph was doomed.
    pub doomed: u64,
    /// Complete structures rejected by the criterion.
    pub rejected: u64,
}

#[derive(Clone, Debug)]
pub struct ProofSearch {
    pub readings: Vec<Reading>,
    pub status: SearchStatus,
    pub stats: SearchStats,
    /// The first complete structure that failed the criterion, if any.
    pub first_failure: Option<Failure>,
    /// Two-occurrence diagnostics as `(formula index, issue)`, antecedents
    /// first and the succedent last.
    pub lint: Vec<(usize, LintIssue)>,
    /// Set when search was skipped because some predicate has unequal
    /// positive and negative occurrence counts.
    pub unbalanced: bool,
}

/// Three-valued derivability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Derivable,
    Underivable,
    Unknown,
}

impl ProofSearch {
    pub fn verdict(&self) -> Verdict {
        if !self.readings.is_empty() {
            Verdict::Derivable
        } else if self.status == SearchStatus::BudgetExhausted {
            Verdict::Unknown
        } else {
            Verdict::Underivable
        }
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("step budget exhausted")]
pub struct BudgetExhausted;

struct Searcher<'c> {
    cfg: &'c SearchConfig,
    readings: Vec<Reading>,
    stats: SearchStats,
    first_failure: Option<Failure>,
    out_of_budget: bool,
}

impl Searcher<'_> {
    fn stop(&self) -> bool {
        self.out_of_budget || self.cfg.max_readings.is_some_and(|m| self.readings.len() >= m)
    }

    fn candidates(ps: &ProofStructure, a: NodeId) -> Vec<NodeId> {
        let pol = ps.node(a).polarity;
        let atom = ps.raw_atom(a);
        ps.open_atoms()
            .iter()
            .copied()
            .filter(|&b| ps.node(b).polarity != pol)
            .filter(|&b| {
                let other = ps.raw_atom(b);
                other.pred == atom.pred && other.arity() == atom.arity() && unify_atoms(atom, other, ps.subst()).is_ok()
            })
            .collect()
    }

    /// The atom to branch on and its partners, or `None` if some atom has
    /// no partner left.
    fn choose(&self, ps: &ProofStructure) -> Option<(NodeId, Vec<NodeId>)> {
        if !self.cfg.fewest_candidates_first {
            let a = *ps.open_atoms().iter().next()?;
            let c = Self::candidates(ps, a);
            return (!c.is_empty()).then_some((a, c));
        }
        let mut best: Option<(NodeId, Vec<NodeId>)> = None;
        for &a in ps.open_atoms() {
            let c = Self::candidates(ps, a);
            if c.is_empty() {
                return None;
            }
            if best.as_ref().is_none_or(|(_, bc)| c.len() < bc.len()) {
                best = Some((a, c));
            }
        }
        best
    }

    fn search(&mut self, ps: ProofStructure, graph: Option<ContractionGraph>) {
        if self.stop() {
            return;
        }
        self.stats.visited += 1;
        if ps.is_complete() {
            self.finish(ps);
            return;
        }
        let Some((a, partners)) = self.choose(&ps) else { return };
        for b in partners {
            if self.stop() {
                return;
            }
            if self.stats.link_attempts >= self.cfg.step_budget {
                self.out_of_budget = true;
                return;
            }
            self.stats.link_attempts += 1;
            let (neg, pos) = if ps.node(a).polarity == Polarity::Neg { (a, b) } else { (b, a) };
            let Ok(next) = ps.add_axiom_link(neg, pos) else { continue };
            let next_graph = match &graph {
                Some(g) => {
                    let mut g = g.clone();
                    g.add_solid_between(neg, pos);
                    g.refresh(&next);
                    g.contract_fully();
                    if g.doomed(next.open_atoms()).is_some() {
                        self.stats.doomed += 1;
                        continue;
                    }
                    Some(g)
                }
                None => None,
            };
            self.search(next, next_graph);
        }
    }

    fn finish(&mut self, ps: ProofStructure) {
        let mut matching = ps.axiom_links();
        matching.sort_unstable();
        let mut g = ContractionGraph::abstract_structure(&ps).expect("complete structure");
        let steps = g.contract_fully();
        if g.is_single_point() {
            debug_assert!(is_proof_net(&ps));
            let substitution = ps.subst().clone();
            self.readings.push(Reading { matching, substitution, structure: ps, steps });
        } else {
            self.stats.rejected += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(Failure { matching, structure: ps, steps, graph: g });
            }
        }
    }
}

/// Search for proof nets of `seq`. Readings are returned sorted by their
/// axiom matchings.
pub fn prove(seq: &Sequent, cfg: &SearchConfig) -> ProofSearch {
    let mut lint = Vec::new();
    if cfg.diagnostic_two_occurrence {
        for (i, (f, _)) in seq.polarized().enumerate() {
            lint.extend(lint_two_occurrence(f).into_iter().map(|issue| (i, issue)));
        }
    }
    if !seq.is_balanced() {
        return ProofSearch {
            readings: Vec::new(),
            status: SearchStatus::Complete,
            stats: SearchStats::default(),
            first_failure: None,
            lint,
            unbalanced: true,
        };
    }
    let ps = ProofStructure::unfold(seq);
    let graph = cfg.early_contraction.then(|| {
        let mut g = ContractionGraph::abstract_partial(&ps);
        g.contract_fully();
        g
    });
    let mut s = Searcher { cfg, readings: Vec::new(), stats: SearchStats::default(), first_failure: None, out_of_budget: false };
    let doomed_at_start = graph.as_ref().is_some_and(|g| g.doomed(ps.open_atoms()).is_some());
    if doomed_at_start {
        s.stats.visited = 1;
        s.stats.doomed = 1;
    } else {
        s.search(ps, graph);
    }
    let status = if s.out_of_budget {
        SearchStatus::BudgetExhausted
    } else if cfg.max_readings.is_some_and(|m| s.readings.len() >= m) {
        SearchStatus::Truncated
    } else {
        SearchStatus::Complete
    };
    let mut readings = s.readings;
    readings.sort_by(|x, y| x.matching.cmp(&y.matching));
    ProofSearch { readings, status, stats: s.stats, first_failure: s.first_failure, lint, unbalanced: false }
}

/// Whether `conclusion` is derivable from the single hypothesis `premise`.
pub fn derivable(premise: &Formula, conclusion: &Formula, cfg: &SearchConfig) -> Result<bool, BudgetExhausted> {
    let cfg = SearchConfig { max_readings: Some(1), ..cfg.clone() };
    let seq = Sequent::new(vec![premise.clone()], conclusion.clone());
    match prove(&seq, &cfg).verdict() {
        Verdict::Derivable => Ok(true),
        Verdict::Underivable => Ok(false),
        Verdict::Unknown => Err(BudgetExhausted),
    }
}

/// Derivability matrix: `m[i][j]` iff `formulas[j]` is derivable from
/// `formulas[i]`.
pub fn compare(formulas: &[Formula], cfg: &SearchConfig) -> Result<Vec<Vec<bool>>, BudgetExhausted> {
    formulas
        .iter()
        .map(|p| formulas.iter().map(|c| derivable(p, c, cfg)).collect())
        .collect()
}

/// Atoms that were never given a partner (useful for diagnostics).
pub fn unmatched_predicates(seq: &Sequent) -> BTreeSet<String> {
    seq.atom_balance()
        .into_iter()
        .filter(|(_, n)| *n != 0)
        .map(|((p, arity), _)| format!("{p}/{arity}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_mill1, parse_sequent};
    use crate::term::Term;

    fn run(s: &str) -> ProofSearch {
        prove(&parse_sequent(s).unwrap(), &SearchConfig::default())
    }

    #[test]
    fn noproof_is_underivable() {
        let r = run("(forall x. a(x)) -o b |- exists y. (a(y) -o b)");
        assert_eq!(r.verdict(), Verdict::Underivable);
        let f = r.first_failure.expect("the unique matching is tried");
        assert_eq!(f.graph.vertex_count(), 3);
    }

    #[test]
    fn verb_example_has_one_reading() {
        let r = run("np(0,1), forall x.(np(x,1) -o s(x,2)) |- s(0,2)");
        assert_eq!(r.readings.len(), 1);
        assert_eq!(r.readings[0].substitution.get(0), Some(&Term::Pos(0)));
    }

    #[test]
    fn identity_and_converse() {
        assert_eq!(run("a |- a").readings.len(), 1);
        assert_eq!(run("exists y. (a(y) -o b) |- (forall x. a(x)) -o b").verdict(), Verdict::Derivable);
    }

    #[test]
    fn unbalanced_fails_fast() {
        let r = run("a, a |- a");
        assert!(r.unbalanced);
        assert_eq!(r.stats.visited, 0);
        assert_eq!(r.verdict(), Verdict::Underivable);
        assert_eq!(unmatched_predicates(&parse_sequent("a, a |- a").unwrap()), ["a/0".to_string()].into());
    }

    #[test]
    fn ambiguity_gives_two_readings_in_order() {
        let r = run("a, a -o a |- a");
        assert_eq!(r.readings.len(), 1);
        let r = run("a -o b, a -o b, a, a |- b * b");
        assert_eq!(r.readings.len(), 4);
        for w in r.readings.windows(2) {
            assert!(w[0].matching < w[1].matching);
        }
    }

    #[test]
    fn budget_is_reported() {
        let cfg = SearchConfig { step_budget: 1, ..SearchConfig::default() };
        let r = prove(&parse_sequent("a -o b, a -o b, a, a |- b * b").unwrap(), &cfg);
        assert_eq!(r.status, SearchStatus::BudgetExhausted);
    }

    #[test]
    fn derivable_self() {
        let f = parse_mill1("forall x. (np(x,1) -o s(x,2))").unwrap();
        assert_eq!(derivable(&f, &f, &SearchConfig::default()), Ok(true));
        assert_eq!(compare(&[f], &SearchConfig::default()).unwrap(), vec![vec![true]]);
    }
}
