//! Independent decision procedures used as ground truth in tests.
//!
//! [`oracle_derivable`] is a naive backward search in the two-sided MILL1
//! sequent calculus with meta-variables for `∀L`/`∃R` witnesses and
//! eigenvariable constraints for `∀R`/`∃L`. It shares only the term and
//! unification layer with the proof-net prover.
//!
//! [`lambek_derivable`] is a brute-force cut-free prover for the associative
//! Lambek calculus with empty antecedents allowed.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::formula::{Formula, LambekFormula, Sequent};
use crate::term::{Term, Var, VarSupply};
use crate::unify::{unify_atoms, Substitution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Maximum number of rule applications on one search path.
    pub max_depth: usize,
}

impl OracleBudget {
    /// A depth that always suffices for `seq`: every rule application
    /// consumes a connective or closes a branch with an axiom.
    pub fn sufficient(seq: &Sequent) -> Self {
        OracleBudget { max_depth: seq.connective_count() + seq.atom_count() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug)]
struct Goal {
    ante: Vec<Formula>,
    succ: Formula,
}

#[derive(Clone, Debug)]
struct State {
    goals: Vec<Goal>,
    subst: Substitution,
    /// `(eigen, metas)`: none of the metas may be instantiated to a term
    /// containing the eigenvariable.
    constraints: Vec<(u32, BTreeSet<u32>)>,
    depth: usize,
}

struct Oracle {
    budget: OracleBudget,
    supply: VarSupply,
    failed: HashSet<String>,
    hit_limit: bool,
}

fn constraints_hold(subst: &Substitution, constraints: &[(u32, BTreeSet<u32>)]) -> bool {
    constraints
        .iter()
        .all(|(e, metas)| metas.iter().all(|&m| !subst.apply(&Term::meta(m)).occurs(Var::Eigen(*e))))
}

fn goal_metas(g: &Goal) -> BTreeSet<u32> {
    let mut out = g.succ.metas();
    for f in &g.ante {
        out.extend(f.metas());
    }
    out
}

fn balanced(g: &Goal) -> bool {
    Sequent::new(g.ante.clone(), g.succ.clone()).is_balanced()
}

/// All ways to split `items` into two sub-multisets, by bitmask.
fn splits<T: Clone>(items: &[T]) -> impl Iterator<Item = (Vec<T>, Vec<T>)> + '_ {
    (0u32..(1 << items.len())).map(move |mask| {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for (i, x) in items.iter().enumerate() {
            if mask & (1 << i) != 0 {
                l.push(x.clone());
            } else {
                r.push(x.clone());
            }
        }
        (l, r)
    })
}

impl Oracle {
    /// Text key of a state with metas and eigenvariables renamed by first
    /// occurrence.
    fn canonical(&self, st: &State) -> String {
        let mut metas: BTreeMap<u32, usize> = BTreeMap::new();
        let mut eigens: BTreeMap<u32, usize> = BTreeMap::new();
        let mut out = String::new();
        let rename = |t: &Term, metas: &mut BTreeMap<u32, usize>, eigens: &mut BTreeMap<u32, usize>| {
            t.map_vars(&mut |v| match v {
                Var::Meta(m) => {
                    let n = metas.len();
                    Term::constant(&format!("?{}", *metas.entry(m).or_insert(n)))
                }
                Var::Eigen(e) => {
                    let n = eigens.len();
                    Term::constant(&format!("!{}", *eigens.entry(e).or_insert(n)))
                }
                Var::Bound(b) => Term::bound(b),
            })
        };
        for g in &st.goals {
            for f in g.ante.iter().chain(std::iter::once(&g.succ)) {
                let f = f.substitute(&st.subst).map_terms(&mut |t| rename(t, &mut metas, &mut eigens));
                out.push_str(&crate::formula::format_mill1(&f));
                out.push(',');
            }
            out.push('|');
        }
        out.push('#');
        for (e, ms) in &st.constraints {
            let Some(ce) = eigens.get(e) else { continue };
            let mut live: Vec<usize> = ms
                .iter()
                .flat_map(|&m| st.subst.apply(&Term::meta(m)).vars())
                .filter_map(|v| match v {
                    Var::Meta(m) => metas.get(&m).copied(),
                    _ => None,
                })
                .collect();
            live.sort_unstable();
            live.dedup();
            if !live.is_empty() {
                out.push_str(&format!("{ce}:{live:?};"));
            }
        }
        out
    }

    fn solve(&mut self, st: State) -> bool {
        let Some(first) = st.goals.first() else { return true };
        if !balanced(first) {
            return false;
        }
        if st.depth >= self.budget.max_depth {
            self.hit_limit = true;
            return false;
        }
        let key = self.canonical(&st);
        if self.failed.contains(&key) {
            return false;
        }
        let limit_before = self.hit_limit;
        self.hit_limit = false;
        let ok = self.expand(st);
        if !ok && !self.hit_limit {
            self.failed.insert(key);
        }
        self.hit_limit |= limit_before;
        ok
    }

    fn with_goal(st: &State, replace: Vec<Goal>) -> State {
        let mut goals = replace;
        goals.extend(st.goals[1..].iter().cloned());
        State { goals, subst: st.subst.clone(), constraints: st.constraints.clone(), depth: st.depth + 1 }
    }

    fn expand(&mut self, st: State) -> bool {
        let g = st.goals[0].clone();

        // Invertible rules first, one at a time.
        match &g.succ {
            Formula::Lolli(a, b) => {
                let mut ante = g.ante.clone();
                ante.push((**a).clone());
                return self.solve(Self::with_goal(&st, vec![Goal { ante, succ: (**b).clone() }]));
            }
            Formula::Forall(v, body) => {
                let e = self.supply.eigen();
                let mut next = Self::with_goal(&st, vec![Goal { ante: g.ante.clone(), succ: body.instantiate(*v, &Term::eigen(e)) }]);
                next.constraints.push((e, goal_metas(&g)));
                return self.solve(next);
            }
            _ => {}
        }
        for (i, f) in g.ante.iter().enumerate() {
            match f {
                Formula::Tensor(a, b) => {
                    let mut ante = g.ante.clone();
                    ante.splice(i..=i, [(**a).clone(), (**b).clone()]);
                    return self.solve(Self::with_goal(&st, vec![Goal { ante, succ: g.succ.clone() }]));
                }
                Formula::Exists(v, body) => {
                    let e = self.supply.eigen();
                    let mut ante = g.ante.clone();
                    ante[i] = body.instantiate(*v, &Term::eigen(e));
                    let mut next = Self::with_goal(&st, vec![Goal { ante, succ: g.succ.clone() }]);
                    next.constraints.push((e, goal_metas(&g)));
                    return self.solve(next);
                }
                _ => {}
            }
        }

        // Axiom.
        if let ([Formula::Atom(a)], Formula::Atom(c)) = (g.ante.as_slice(), &g.succ) {
            if let Ok(subst) = unify_atoms(a, c, &st.subst) {
                if constraints_hold(&subst, &st.constraints) {
                    let mut next = Self::with_goal(&st, vec![]);
                    next.subst = subst;
                    if self.solve(next) {
                        return true;
                    }
                }
            }
        }

        // Right rules.
        match &g.succ {
            Formula::Tensor(a, b) => {
                for (l, r) in splits(&g.ante) {
                    let next = Self::with_goal(
                        &st,
                        vec![Goal { ante: l, succ: (**a).clone() }, Goal { ante: r, succ: (**b).clone() }],
                    );
                    if self.solve(next) {
                        return true;
                    }
                }
            }
            Formula::Exists(v, body) => {
                let m = self.supply.meta();
                let next = Self::with_goal(&st, vec![Goal { ante: g.ante.clone(), succ: body.instantiate(*v, &Term::meta(m)) }]);
                if self.solve(next) {
                    return true;
                }
            }
            _ => {}
        }

        // Left rules.
        for (i, f) in g.ante.iter().enumerate() {
            match f {
                Formula::Lolli(a, b) => {
                    let mut rest = g.ante.clone();
                    rest.remove(i);
                    for (l, mut r) in splits(&rest) {
                        r.push((**b).clone());
                        let next = Self::with_goal(
                            &st,
                            vec![Goal { ante: l, succ: (**a).clone() }, Goal { ante: r, succ: g.succ.clone() }],
                        );
                        if self.solve(next) {
                            return true;
                        }
                    }
                }
                Formula::Forall(v, body) => {
                    let m = self.supply.meta();
                    let mut ante = g.ante.clone();
                    ante[i] = body.instantiate(*v, &Term::meta(m));
                    if self.solve(Self::with_goal(&st, vec![Goal { ante, succ: g.succ.clone() }])) {
                        return true;
                    }
                }
                _ => {}
            }
        }
        false
    }
}

/// Decide `seq` in the MILL1 sequent calculus by exhaustive backward search.
pub fn oracle_derivable(seq: &Sequent, budget: OracleBudget) -> OracleAnswer {
    let mut supply = VarSupply::new();
    let seq = seq.rename_apart(&mut supply);
    // Reserve ids above anything in the input (free eigens/metas in input
    // are treated as rigid/flexible respectively).
    let mut max_id = 0;
    for (f, _) in seq.polarized() {
        for v in f.free_vars() {
            if let Var::Meta(i) | Var::Eigen(i) = v {
                max_id = max_id.max(i + 1);
            }
        }
    }
    let mut supply = VarSupply::new();
    while supply.metas_issued() < max_id {
        supply.meta();
    }
    while supply.eigens_issued() < max_id {
        supply.eigen();
    }
    let mut oracle = Oracle { budget, supply, failed: HashSet::new(), hit_limit: false };
    let st = State {
        goals: vec![Goal { ante: seq.antecedents.clone(), succ: seq.succedent.clone() }],
        subst: Substitution::new(),
        constraints: Vec::new(),
        depth: 0,
    };
    if oracle.solve(st) {
        OracleAnswer::Yes
    } else if oracle.hit_limit {
        OracleAnswer::Unknown
    } else {
        OracleAnswer::No
    }
}

/// Decide `ante |- goal` in the associative Lambek calculus (empty
/// antecedents allowed) by cut-free backward search.
pub fn lambek_derivable(ante: &[LambekFormula], goal: &LambekFormula) -> bool {
    let mut memo = HashMap::new();
    lambek(ante, goal, &mut memo)
}

type LambekMemo = HashMap<(Vec<LambekFormula>, LambekFormula), bool>;

fn lambek(ante: &[LambekFormula], goal: &LambekFormula, memo: &mut LambekMemo) -> bool {
    let key = (ante.to_vec(), goal.clone());
    if let Some(&r) = memo.get(&key) {
        return r;
    }
    let r = lambek_uncached(ante, goal, memo);
    memo.insert(key, r);
    r
}

fn lambek_uncached(ante: &[LambekFormula], goal: &LambekFormula, memo: &mut LambekMemo) -> bool {
    use LambekFormula::*;
    if let (Atom(p), [Atom(q)]) = (goal, ante) {
        if p == q {
            return true;
        }
    }
    // Right rules.
    match goal {
        Over(a, b) => {
            let mut g = ante.to_vec();
            g.push((**b).clone());
            if lambek(&g, a, memo) {
                return true;
            }
        }
        Under(b, a) => {
            let mut g = vec![(**b).clone()];
            g.extend_from_slice(ante);
            if lambek(&g, a, memo) {
                return true;
            }
        }
        Prod(a, b) => {
            for k in 0..=ante.len() {
                if lambek(&ante[..k], a, memo) && lambek(&ante[k..], b, memo) {
                    return true;
                }
            }
        }
        Atom(_) => {}
    }
    // Left rules.
    for (i, f) in ante.iter().enumerate() {
        match f {
            Prod(a, b) => {
                let mut g = ante[..i].to_vec();
                g.push((**a).clone());
                g.push((**b).clone());
                g.extend_from_slice(&ante[i + 1..]);
                if lambek(&g, goal, memo) {
                    return true;
                }
            }
            Over(a, b) => {
                // Γ, A/B, Δ, Σ ⊢ C  from  Δ ⊢ B  and  Γ, A, Σ ⊢ C
                for j in i + 1..=ante.len() {
                    if lambek(&ante[i + 1..j], b, memo) {
                        let mut g = ante[..i].to_vec();
                        g.push((**a).clone());
                        g.extend_from_slice(&ante[j..]);
                        if lambek(&g, goal, memo) {
                            return true;
                        }
                    }
                }
            }
            Under(b, a) => {
                // Γ, Δ, B\A, Σ ⊢ C  from  Δ ⊢ B  and  Γ, A, Σ ⊢ C
                for j in 0..=i {
                    if lambek(&ante[j..i], b, memo) {
                        let mut g = ante[..j].to_vec();
                        g.push((**a).clone());
                        g.extend_from_slice(&ante[i + 1..]);
                        if lambek(&g, goal, memo) {
                            return true;
                        }
                    }
                }
            }
            Atom(_) => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_lambek, parse_sequent};

    fn decide(s: &str) -> OracleAnswer {
        let seq = parse_sequent(s).unwrap();
        oracle_derivable(&seq, OracleBudget::sufficient(&seq))
    }

    #[test]
    fn basic_answers() {
        assert_eq!(decide("a |- a"), OracleAnswer::Yes);
        assert_eq!(decide("(forall x. a(x)) -o b |- exists y. (a(y) -o b)"), OracleAnswer::No);
        assert_eq!(decide("np(0,1), forall x.(np(x,1) -o s(x,2)) |- s(0,2)"), OracleAnswer::Yes);
        assert_eq!(decide("exists y. (a(y) -o b) |- (forall x. a(x)) -o b"), OracleAnswer::Yes);
    }

    #[test]
    fn eigenvariable_conditions() {
        assert_eq!(decide("forall x. a(x) |- forall y. a(y)"), OracleAnswer::Yes);
        assert_eq!(decide("exists x. a(x) |- forall y. a(y)"), OracleAnswer::No);
        assert_eq!(decide("exists x. a(x) |- exists y. a(y)"), OracleAnswer::Yes);
        assert_eq!(decide("exists x. forall y. r(x,y) |- forall y. exists x. r(x,y)"), OracleAnswer::Yes);
        assert_eq!(decide("forall y. exists x. r(x,y) |- exists x. forall y. r(x,y)"), OracleAnswer::No);
    }

    #[test]
    fn linearity() {
        assert_eq!(decide("a, a |- a"), OracleAnswer::No);
        assert_eq!(decide("a, b |- a * b"), OracleAnswer::Yes);
        assert_eq!(decide("a, a -o b |- b"), OracleAnswer::Yes);
        assert_eq!(decide("a -o b, b -o c |- a -o c"), OracleAnswer::Yes);
    }

    #[test]
    fn tight_budget_is_unknown() {
        let seq = parse_sequent("a, a -o b, b -o c |- c").unwrap();
        assert_eq!(oracle_derivable(&seq, OracleBudget { max_depth: 2 }), OracleAnswer::Unknown);
    }

    fn lam(ante: &[&str], goal: &str) -> bool {
        let ante: Vec<LambekFormula> = ante.iter().map(|s| parse_lambek(s).unwrap()).collect();
        lambek_derivable(&ante, &parse_lambek(goal).unwrap())
    }

    #[test]
    fn lambek_examples() {
        assert!(lam(&["np", "np\\s"], "s"));
        assert!(!lam(&["np\\s", "np"], "s"));
        assert!(lam(&["s/np", "np"], "s"));
        assert!(lam(&["np"], "s/(np\\s)"));
        assert!(lam(&["a/b", "b/c"], "a/c"));
        assert!(lam(&["a", "b"], "a*b"));
        assert!(!lam(&["a", "b"], "b*a"));
        // empty antecedents are allowed
        assert!(lam(&[], "a/a"));
        assert!(lam(&["a/(b/b)"], "a"));
    }
}
