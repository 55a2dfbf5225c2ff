//! First-order unification with occurs check.
//!
//! Only meta-variables are flexible. Eigenvariables, bound variables, integer
//! positions and function symbols are rigid. Substitutions are kept
//! idempotent: every binding's right-hand side is fully resolved.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formula::Atom;
use crate::term::{Name, Term, Var};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    bindings: BTreeMap<u32, Term>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum UnifyError {
    #[error("symbol clash: {0} vs {1}")]
    SymbolClash(String, String),
    #[error("arity clash for {symbol}: {left} vs {right}")]
    ArityClash { symbol: Name, left: usize, right: usize },
    #[error("rigid mismatch: {0} vs {1}")]
    RigidMismatch(Term, Term),
    #[error("occurs check: ?{var} in {term}")]
    Occurs { var: u32, term: Term },
    #[error("predicate mismatch: {0} vs {1}")]
    PredicateMismatch(Name, Name),
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from raw bindings; the caller guarantees idempotence.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Term)>) -> Self {
        Substitution { bindings: pairs.into_iter().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, meta: u32) -> Option<&Term> {
        self.bindings.get(&meta)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Term)> {
        self.bindings.iter().map(|(k, v)| (*k, v))
    }

    pub fn apply(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        t.map_vars(&mut |v| match v {
            Var::Meta(id) => match self.bindings.get(&id) {
                Some(b) => b.clone(),
                None => Term::Var(v),
            },
            _ => Term::Var(v),
        })
    }

    /// `compose(s1, s2)` applied to `t` equals `s2.apply(&s1.apply(t))`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut bindings: BTreeMap<u32, Term> = self.bindings.iter().map(|(k, v)| (*k, then.apply(v))).collect();
        for (k, v) in &then.bindings {
            bindings.entry(*k).or_insert_with(|| v.clone());
        }
        bindings.retain(|k, v| *v != Term::meta(*k));
        Substitution { bindings }
    }

    fn bind(&mut self, var: u32, term: Term) {
        let single = Substitution::from_pairs([(var, term.clone())]);
        for v in self.bindings.values_mut() {
            *v = single.apply(v);
        }
        self.bindings.insert(var, term);
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "?{k} := {v}")?;
        }
        f.write_str("}")
    }
}

/// Extend `s` with a most general unifier of `t1` and `t2`.
pub fn unify(t1: &Term, t2: &Term, s: &Substitution) -> Result<Substitution, UnifyError> {
    let mut out = s.clone();
    unify_into(t1, t2, &mut out)?;
    Ok(out)
}

/// Unify two atoms argument-wise under one substitution.
pub fn unify_atoms(a1: &Atom, a2: &Atom, s: &Substitution) -> Result<Substitution, UnifyError> {
    if a1.pred != a2.pred {
        return Err(UnifyError::PredicateMismatch(a1.pred.clone(), a2.pred.clone()));
    }
    if a1.args.len() != a2.args.len() {
        return Err(UnifyError::ArityClash { symbol: a1.pred.clone(), left: a1.args.len(), right: a2.args.len() });
    }
    let mut out = s.clone();
    for (x, y) in a1.args.iter().zip(&a2.args) {
        unify_into(x, y, &mut out)?;
    }
    Ok(out)
}

fn unify_into(t1: &Term, t2: &Term, s: &mut Substitution) -> Result<(), UnifyError> {
    let a = s.apply(t1);
    let b = s.apply(t2);
    match (&a, &b) {
        _ if a == b => Ok(()),
        (Term::Var(Var::Meta(x)), Term::Var(Var::Meta(y))) => {
            // Orient by id so the result does not depend on argument order.
            let (from, to) = if x > y { (*x, *y) } else { (*y, *x) };
            s.bind(from, Term::meta(to));
            Ok(())
        }
        (Term::Var(Var::Meta(x)), t) | (t, Term::Var(Var::Meta(x))) => {
            if t.occurs(Var::Meta(*x)) {
                return Err(UnifyError::Occurs { var: *x, term: t.clone() });
            }
            s.bind(*x, t.clone());
            Ok(())
        }
        (Term::Fun(f, xs), Term::Fun(g, ys)) => {
            if f != g {
                return Err(UnifyError::SymbolClash(f.to_string(), g.to_string()));
            }
            if xs.len() != ys.len() {
                return Err(UnifyError::ArityClash { symbol: f.clone(), left: xs.len(), right: ys.len() });
            }
            for (x, y) in xs.iter().zip(ys) {
                unify_into(x, y, s)?;
            }
            Ok(())
        }
        _ => Err(UnifyError::RigidMismatch(a.clone(), b.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::name;

    fn f(args: Vec<Term>) -> Term {
        Term::Fun(name("f"), args)
    }

    #[test]
    fn binds_position() {
        let a = Atom::new("np", vec![Term::meta(0), Term::Pos(1)]);
        let b = Atom::new("np", vec![Term::Pos(0), Term::Pos(1)]);
        let s = unify_atoms(&a, &b, &Substitution::new()).unwrap();
        assert_eq!(s.get(0), Some(&Term::Pos(0)));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn occurs_check_rejects() {
        let x = Term::meta(0);
        assert!(matches!(unify(&x, &f(vec![x.clone(), x.clone()]), &Substitution::new()), Err(UnifyError::Occurs { .. })));
        let a = Atom::new("a", vec![x.clone()]);
        let b = Atom::new("a", vec![f(vec![x.clone(), x])]);
        assert!(unify_atoms(&a, &b, &Substitution::new()).is_err());
    }

    #[test]
    fn clashes() {
        let a = Term::Fun(name("a"), vec![Term::meta(0)]);
        let b = Term::Fun(name("b"), vec![Term::meta(1)]);
        assert!(matches!(unify(&a, &b, &Substitution::new()), Err(UnifyError::SymbolClash(..))));
        assert!(matches!(unify(&Term::eigen(0), &Term::eigen(1), &Substitution::new()), Err(UnifyError::RigidMismatch(..))));
        assert!(unify(&Term::eigen(0), &Term::Pos(3), &Substitution::new()).is_err());
        let p = Atom::new("a", vec![]);
        let q = Atom::new("b", vec![]);
        assert!(matches!(unify_atoms(&p, &q, &Substitution::new()), Err(UnifyError::PredicateMismatch(..))));
    }

    #[test]
    fn flexible_rigid() {
        let s = unify(&Term::Fun(name("a"), vec![Term::meta(0)]), &Term::Fun(name("a"), vec![Term::eigen(4)]), &Substitution::new()).unwrap();
        assert_eq!(s.get(0), Some(&Term::eigen(4)));
    }

    #[test]
    fn already_equal_is_empty() {
        let a = Atom::new("s", vec![Term::Pos(4), Term::meta(0)]);
        assert!(unify_atoms(&a, &a, &Substitution::new()).unwrap().is_empty());
    }

    #[test]
    fn stays_idempotent() {
        let s = unify(&Term::meta(0), &f(vec![Term::meta(1)]), &Substitution::new()).unwrap();
        let s = unify(&Term::meta(1), &Term::Pos(2), &s).unwrap();
        assert_eq!(s.get(0), Some(&f(vec![Term::Pos(2)])));
        for (_, t) in s.iter() {
            assert_eq!(s.apply(t), *t);
        }
    }

    #[test]
    fn meta_meta_orientation_is_symmetric() {
        let a = unify(&Term::meta(3), &Term::meta(1), &Substitution::new()).unwrap();
        let b = unify(&Term::meta(1), &Term::meta(3), &Substitution::new()).unwrap();
        assert_eq!(a, b);
    }
}
