//! MILL1 and Lambek formulas, sequents, and structural utilities.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::term::{Name, Term, Var, VarSupply};
use crate::unify::Substitution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }

    pub fn sign(self) -> char {
        match self {
            Polarity::Pos => '+',
            Polarity::Neg => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: Name,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Self {
        Atom { pred: crate::term::name(pred), args }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn apply(&self, s: &Substitution) -> Atom {
        Atom { pred: self.pred.clone(), args: self.args.iter().map(|t| s.apply(t)).collect() }
    }
}

/// A MILL1 formula. Quantifiers carry the id of the `Var::Bound` they bind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Tensor(Box<Formula>, Box<Formula>),
    Lolli(Box<Formula>, Box<Formula>),
    Forall(u32, Box<Formula>),
    Exists(u32, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(pred, args))
    }

    pub fn tensor(a: Formula, b: Formula) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn lolli(a: Formula, b: Formula) -> Self {
        Formula::Lolli(Box::new(a), Box::new(b))
    }

    pub fn forall(v: u32, body: Formula) -> Self {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: u32, body: Formula) -> Self {
        Formula::Exists(v, Box::new(body))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Variables with a free occurrence (bound variables under their binder
    /// are excluded).
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, binders: &mut Vec<u32>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    for v in t.vars() {
                        match v {
                            Var::Bound(id) if binders.contains(&id) => {}
                            _ => {
                                out.insert(v);
                            }
                        }
                    }
                }
            }
            Formula::Tensor(a, b) | Formula::Lolli(a, b) => {
                a.collect_free(binders, out);
                b.collect_free(binders, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                binders.push(*v);
                body.collect_free(binders, out);
                binders.pop();
            }
        }
    }

    pub fn free_eigens(&self) -> BTreeSet<u32> {
        self.free_vars()
            .into_iter()
            .filter_map(|v| match v {
                Var::Eigen(id) => Some(id),
                _ => None,
            })
            .collect()
    }

    pub fn metas(&self) -> BTreeSet<u32> {
        self.free_vars()
            .into_iter()
            .filter_map(|v| match v {
                Var::Meta(id) => Some(id),
                _ => None,
            })
            .collect()
    }

    /// Apply a substitution of meta-variables. Bound variables are never in
    /// the domain of a substitution, so no capture can occur.
    pub fn substitute(&self, s: &Substitution) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        self.map_terms(&mut |t| s.apply(t))
    }

    /// Replace the bound variable `v` by `by` (quantifier instantiation).
    pub fn instantiate(&self, v: u32, by: &Term) -> Formula {
        self.map_terms(&mut |t| t.replace(Var::Bound(v), by))
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom { pred: a.pred.clone(), args: a.args.iter().map(&mut *f).collect() }),
            Formula::Tensor(a, b) => Formula::tensor(a.map_terms(f), b.map_terms(f)),
            Formula::Lolli(a, b) => Formula::lolli(a.map_terms(f), b.map_terms(f)),
            Formula::Forall(v, body) => Formula::forall(*v, body.map_terms(f)),
            Formula::Exists(v, body) => Formula::exists(*v, body.map_terms(f)),
        }
    }

    /// Give every binder a fresh id from `supply`.
    pub fn rename_apart(&self, supply: &mut VarSupply) -> Formula {
        fn go(f: &Formula, env: &mut HashMap<u32, u32>, supply: &mut VarSupply) -> Formula {
            match f {
                Formula::Atom(a) => Formula::Atom(Atom {
                    pred: a.pred.clone(),
                    args: a
                        .args
                        .iter()
                        .map(|t| {
                            t.map_vars(&mut |v| match v {
                                Var::Bound(id) => Term::bound(*env.get(&id).unwrap_or(&id)),
                                other => Term::Var(other),
                            })
                        })
                        .collect(),
                }),
                Formula::Tensor(a, b) => Formula::tensor(go(a, env, supply), go(b, env, supply)),
                Formula::Lolli(a, b) => Formula::lolli(go(a, env, supply), go(b, env, supply)),
                Formula::Forall(v, body) | Formula::Exists(v, body) => {
                    let fresh = supply.bound();
                    let saved = env.insert(*v, fresh);
                    let body = go(body, env, supply);
                    match saved {
                        Some(old) => env.insert(*v, old),
                        None => env.remove(v),
                    };
                    if matches!(f, Formula::Forall(..)) {
                        Formula::forall(fresh, body)
                    } else {
                        Formula::exists(fresh, body)
                    }
                }
            }
        }
        go(self, &mut HashMap::new(), supply)
    }

    /// Alpha-equivalence: equal up to the naming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn term_eq(a: &Term, b: &Term, env: &[(u32, u32)]) -> bool {
            match (a, b) {
                (Term::Var(Var::Bound(x)), Term::Var(Var::Bound(y))) => {
                    match (env.iter().rev().find(|p| p.0 == *x), env.iter().rev().find(|p| p.1 == *y)) {
                        (Some(p), Some(q)) => p == q,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Term::Fun(f, xs), Term::Fun(g, ys)) => {
                    f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, env))
                }
                _ => a == b,
            }
        }
        fn go(a: &Formula, b: &Formula, env: &mut Vec<(u32, u32)>) -> bool {
            match (a, b) {
                (Formula::Atom(x), Formula::Atom(y)) => {
                    x.pred == y.pred
                        && x.args.len() == y.args.len()
                        && x.args.iter().zip(&y.args).all(|(s, t)| term_eq(s, t, env))
                }
                (Formula::Tensor(a1, a2), Formula::Tensor(b1, b2)) | (Formula::Lolli(a1, a2), Formula::Lolli(b1, b2)) => {
                    go(a1, b1, env) && go(a2, b2, env)
                }
                (Formula::Forall(x, p), Formula::Forall(y, q)) | (Formula::Exists(x, p), Formula::Exists(y, q)) => {
                    env.push((*x, *y));
                    let r = go(p, q, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// Every subformula with its polarity, in pre-order.
    pub fn polarized_subformulas(&self, pol: Polarity) -> Vec<(&Formula, Polarity)> {
        let mut out = Vec::new();
        fn go<'a>(f: &'a Formula, pol: Polarity, out: &mut Vec<(&'a Formula, Polarity)>) {
            out.push((f, pol));
            match f {
                Formula::Atom(_) => {}
                Formula::Tensor(a, b) => {
                    go(a, pol, out);
                    go(b, pol, out);
                }
                Formula::Lolli(a, b) => {
                    go(a, pol.flip(), out);
                    go(b, pol, out);
                }
                Formula::Forall(_, body) | Formula::Exists(_, body) => go(body, pol, out),
            }
        }
        go(self, pol, &mut out);
        out
    }

    pub fn connective_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Tensor(a, b) | Formula::Lolli(a, b) => 1 + a.connective_count() + b.connective_count(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.connective_count(),
        }
    }

    pub fn atom_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Tensor(a, b) | Formula::Lolli(a, b) => a.atom_count() + b.atom_count(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.atom_count(),
        }
    }

    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Tensor(a, b) | Formula::Lolli(a, b) => a.quantifier_count() + b.quantifier_count(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.quantifier_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Tensor(a, b) | Formula::Lolli(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.depth(),
        }
    }

    /// Number of occurrences of each bound variable in its quantifier body.
    pub fn binder_occurrences(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        self.walk_binders(&mut counts);
        counts
    }

    fn walk_binders(&self, counts: &mut BTreeMap<u32, usize>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    count_bound(t, counts);
                }
            }
            Formula::Tensor(a, b) | Formula::Lolli(a, b) => {
                a.walk_binders(counts);
                b.walk_binders(counts);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                counts.entry(*v).or_insert(0);
                body.walk_binders(counts);
            }
        }
    }
}

fn count_bound(t: &Term, counts: &mut BTreeMap<u32, usize>) {
    match t {
        Term::Var(Var::Bound(id)) => *counts.entry(*id).or_insert(0) += 1,
        Term::Var(_) | Term::Pos(_) => {}
        Term::Fun(_, args) => args.iter().for_each(|a| count_bound(a, counts)),
    }
}

/// Canonical text rendering. Binders are displayed as `x0`, `x1`, … in order
/// of appearance; operands of binary connectives are parenthesized unless
/// atomic.
pub fn format_mill1(f: &Formula) -> String {
    let mut fmt = Mill1Formatter::for_formulas(std::slice::from_ref(f));
    let mut out = String::new();
    fmt.formula(f, &mut out);
    out
}

pub fn format_sequent(s: &Sequent) -> String {
    let all: Vec<Formula> = s.antecedents.iter().chain(std::iter::once(&s.succedent)).cloned().collect();
    let mut fmt = Mill1Formatter::for_formulas(&all);
    let mut out = String::new();
    for (i, a) in s.antecedents.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        fmt.formula(a, &mut out);
    }
    if !s.antecedents.is_empty() {
        out.push(' ');
    }
    out.push_str("|- ");
    fmt.formula(&s.succedent, &mut out);
    out
}

struct Mill1Formatter {
    names: HashMap<u32, String>,
    reserved: BTreeSet<String>,
    next: usize,
}

impl Mill1Formatter {
    fn for_formulas(fs: &[Formula]) -> Self {
        let mut reserved = BTreeSet::new();
        fn consts(t: &Term, out: &mut BTreeSet<String>) {
            if let Term::Fun(s, args) = t {
                out.insert(s.to_string());
                args.iter().for_each(|a| consts(a, out));
            }
        }
        for f in fs {
            for (sub, _) in f.polarized_subformulas(Polarity::Pos) {
                if let Formula::Atom(a) = sub {
                    a.args.iter().for_each(|t| consts(t, &mut reserved));
                }
            }
        }
        Mill1Formatter { names: HashMap::new(), reserved, next: 0 }
    }

    fn fresh(&mut self) -> String {
        loop {
            let cand = format!("x{}", self.next);
            self.next += 1;
            if !self.reserved.contains(&cand) {
                return cand;
            }
        }
    }

    fn term(&self, t: &Term, out: &mut String) {
        match t {
            Term::Var(Var::Bound(id)) => match self.names.get(id) {
                Some(n) => out.push_str(n),
                None => out.push_str(&format!("_{id}")),
            },
            Term::Var(v) => out.push_str(&v.to_string()),
            Term::Pos(p) => out.push_str(&p.to_string()),
            Term::Fun(s, args) => {
                out.push_str(s);
                if !args.is_empty() {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        self.term(a, out);
                    }
                    out.push(')');
                }
            }
        }
    }

    fn formula(&mut self, f: &Formula, out: &mut String) {
        match f {
            Formula::Atom(a) => {
                out.push_str(&a.pred);
                if !a.args.is_empty() {
                    out.push('(');
                    for (i, t) in a.args.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        self.term(t, out);
                    }
                    out.push(')');
                }
            }
            Formula::Tensor(a, b) | Formula::Lolli(a, b) => {
                self.operand(a, out);
                out.push_str(if matches!(f, Formula::Tensor(..)) { " * " } else { " -o " });
                self.operand(b, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let n = self.fresh();
                out.push_str(if matches!(f, Formula::Forall(..)) { "forall " } else { "exists " });
                out.push_str(&n);
                out.push_str(". ");
                self.names.insert(*v, n);
                if matches!(**body, Formula::Tensor(..) | Formula::Lolli(..)) {
                    out.push('(');
                    self.formula(body, out);
                    out.push(')');
                } else {
                    self.formula(body, out);
                }
            }
        }
    }

    fn operand(&mut self, f: &Formula, out: &mut String) {
        if f.is_atom() {
            self.formula(f, out);
        } else {
            out.push('(');
            self.formula(f, out);
            out.push(')');
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_mill1(self))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_mill1(&Formula::Atom(self.clone())))
    }
}

/// Lambek calculus formula over bare atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LambekFormula {
    Atom(Name),
    /// `A/B`: numerator `A`, denominator `B`.
    Over(Box<LambekFormula>, Box<LambekFormula>),
    /// `A\B`: denominator `A`, numerator `B`.
    Under(Box<LambekFormula>, Box<LambekFormula>),
    /// `A*B`
    Prod(Box<LambekFormula>, Box<LambekFormula>),
}

impl LambekFormula {
    pub fn atom(n: &str) -> Self {
        LambekFormula::Atom(crate::term::name(n))
    }

    pub fn over(num: LambekFormula, den: LambekFormula) -> Self {
        LambekFormula::Over(Box::new(num), Box::new(den))
    }

    pub fn under(den: LambekFormula, num: LambekFormula) -> Self {
        LambekFormula::Under(Box::new(den), Box::new(num))
    }

    pub fn prod(a: LambekFormula, b: LambekFormula) -> Self {
        LambekFormula::Prod(Box::new(a), Box::new(b))
    }

    pub fn slash_depth(&self) -> usize {
        match self {
            LambekFormula::Atom(_) => 0,
            LambekFormula::Over(a, b) | LambekFormula::Under(a, b) | LambekFormula::Prod(a, b) => {
                1 + a.slash_depth().max(b.slash_depth())
            }
        }
    }
}

impl fmt::Display for LambekFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(x: &LambekFormula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match x {
                LambekFormula::Atom(n) => f.write_str(n),
                _ => write!(f, "({x})"),
            }
        }
        match self {
            LambekFormula::Atom(n) => f.write_str(n),
            LambekFormula::Over(a, b) => {
                operand(a, f)?;
                f.write_str("/")?;
                operand(b, f)
            }
            LambekFormula::Under(a, b) => {
                operand(a, f)?;
                f.write_str("\\")?;
                operand(b, f)
            }
            LambekFormula::Prod(a, b) => {
                operand(a, f)?;
                f.write_str("*")?;
                operand(b, f)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub antecedents: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedents: Vec<Formula>, succedent: Formula) -> Self {
        Sequent { antecedents, succedent }
    }

    /// All formulas with their starting polarity: antecedents negative,
    /// succedent positive.
    pub fn polarized(&self) -> impl Iterator<Item = (&Formula, Polarity)> {
        self.antecedents
            .iter()
            .map(|f| (f, Polarity::Neg))
            .chain(std::iter::once((&self.succedent, Polarity::Pos)))
    }

    /// Per predicate symbol and arity: positive atom count minus negative
    /// atom count. A proof requires every entry to be zero.
    pub fn atom_balance(&self) -> BTreeMap<(Name, usize), i64> {
        let mut out = BTreeMap::new();
        for (f, pol) in self.polarized() {
            for (sub, p) in f.polarized_subformulas(pol) {
                if let Formula::Atom(a) = sub {
                    let e = out.entry((a.pred.clone(), a.arity())).or_insert(0);
                    *e += if p == Polarity::Pos { 1 } else { -1 };
                }
            }
        }
        out
    }

    pub fn is_balanced(&self) -> bool {
        self.atom_balance().values().all(|&c| c == 0)
    }

    pub fn rename_apart(&self, supply: &mut VarSupply) -> Sequent {
        Sequent {
            antecedents: self.antecedents.iter().map(|f| f.rename_apart(supply)).collect(),
            succedent: self.succedent.rename_apart(supply),
        }
    }

    pub fn atom_count(&self) -> usize {
        self.polarized().map(|(f, _)| f.atom_count()).sum()
    }

    pub fn quantifier_count(&self) -> usize {
        self.polarized().map(|(f, _)| f.quantifier_count()).sum()
    }

    pub fn connective_count(&self) -> usize {
        self.polarized().map(|(f, _)| f.connective_count()).sum()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sequent(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    fn np(a: Term, b: Term) -> Formula {
        Formula::atom("np", vec![a, b])
    }

    #[test]
    fn free_vars_examples() {
        let f = Formula::atom("a", vec![Term::bound(0)]);
        assert_eq!(f.free_vars(), [Var::Bound(0)].into());
        assert!(Formula::forall(0, f).free_vars().is_empty());
        let g = Formula::lolli(np(Term::bound(1), Term::Pos(1)), Formula::atom("s", vec![Term::Pos(4), Term::bound(0)]));
        assert_eq!(g.free_vars(), [Var::Bound(0), Var::Bound(1)].into());
    }

    #[test]
    fn substitute_examples() {
        let f = np(Term::meta(0), Term::Pos(1));
        let s = Substitution::from_pairs([(0, Term::Pos(0))]);
        assert_eq!(format_mill1(&f.substitute(&s)), "np(0,1)");
        assert_eq!(f.substitute(&Substitution::new()), f);
        let g = Formula::atom("a", vec![Term::meta(0)]);
        let ff = Term::Fun(crate::term::name("f"), vec![Term::meta(1), Term::meta(1)]);
        let s = Substitution::from_pairs([(0, ff)]);
        assert_eq!(format_mill1(&g.substitute(&s)), "a(f(?1,?1))");
    }

    #[test]
    fn formats_quantifier_bodies() {
        let f = Formula::forall(7, Formula::lolli(np(Term::bound(7), Term::Pos(1)), Formula::atom("s", vec![Term::bound(7), Term::Pos(2)])));
        assert_eq!(format_mill1(&f), "forall x0. (np(x0,1) -o s(x0,2))");
    }

    #[test]
    fn formatter_avoids_constant_names() {
        let f = Formula::forall(0, Formula::atom("p", vec![Term::bound(0), Term::constant("x0")]));
        assert_eq!(format_mill1(&f), "forall x1. p(x1,x0)");
    }

    #[test]
    fn balance_counts_polarities() {
        let s = Sequent::new(vec![np(Term::Pos(0), Term::Pos(1))], np(Term::Pos(0), Term::Pos(1)));
        assert!(s.is_balanced());
        let t = Sequent::new(vec![], np(Term::Pos(0), Term::Pos(1)));
        assert!(!t.is_balanced());
    }
}
