//! First-order terms over string positions.
//!
//! A term is a variable (bound, meta or eigen), an integer string position,
//! or a function symbol applied to arguments. Constants are zero-ary
//! function symbols.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Interned-ish symbol name shared between formulas.
pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

/// A variable occurrence.
///
/// `Bound` variables are introduced by quantifiers and only ever appear in
/// quantifier bodies. `Meta` variables are flexible placeholders created when
/// a negative universal or positive existential is unfolded. `Eigen`
/// variables are rigid and created for positive universals and negative
/// existentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Bound(u32),
    Meta(u32),
    Eigen(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Bound(id) => write!(f, "_{id}"),
            Var::Meta(id) => write!(f, "?{id}"),
            Var::Eigen(id) => write!(f, "!{id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    Pos(u32),
    Fun(Name, Vec<Term>),
}

impl Term {
    pub fn meta(id: u32) -> Self {
        Term::Var(Var::Meta(id))
    }

    pub fn eigen(id: u32) -> Self {
        Term::Var(Var::Eigen(id))
    }

    pub fn bound(id: u32) -> Self {
        Term::Var(Var::Bound(id))
    }

    pub fn constant(sym: &str) -> Self {
        Term::Fun(name(sym), Vec::new())
    }

    pub fn occurs(&self, var: Var) -> bool {
        match self {
            Term::Var(v) => *v == var,
            Term::Pos(_) => false,
            Term::Fun(_, args) => args.iter().any(|a| a.occurs(var)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Pos(_) => {}
            Term::Fun(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Replace every occurrence of `var` by `by`.
    pub fn replace(&self, var: Var, by: &Term) -> Term {
        match self {
            Term::Var(v) if *v == var => by.clone(),
            Term::Var(_) | Term::Pos(_) => self.clone(),
            Term::Fun(f, args) => Term::Fun(f.clone(), args.iter().map(|a| a.replace(var, by)).collect()),
        }
    }

    /// Rewrite all variables through `f`.
    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(*v),
            Term::Pos(_) => self.clone(),
            Term::Fun(s, args) => Term::Fun(s.clone(), args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Pos(_) => 1,
            Term::Fun(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Pos(p) => write!(f, "{p}"),
            Term::Fun(s, args) if args.is_empty() => write!(f, "{s}"),
            Term::Fun(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Source of fresh identifiers for bound, meta and eigen variables.
#[derive(Clone, Debug, Default)]
pub struct VarSupply {
    next_bound: u32,
    next_meta: u32,
    next_eigen: u32,
}

impl VarSupply {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bound(&mut self) -> u32 {
        let id = self.next_bound;
        self.next_bound += 1;
        id
    }

    pub fn meta(&mut self) -> u32 {
        let id = self.next_meta;
        self.next_meta += 1;
        id
    }

    pub fn eigen(&mut self) -> u32 {
        let id = self.next_eigen;
        self.next_eigen += 1;
        id
    }

    pub fn metas_issued(&self) -> u32 {
        self.next_meta
    }

    pub fn eigens_issued(&self) -> u32 {
        self.next_eigen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replace_and_occurs() {
        let t = Term::Fun(name("f"), vec![Term::meta(0), Term::Pos(3)]);
        assert!(t.occurs(Var::Meta(0)));
        assert!(!t.occurs(Var::Meta(1)));
        let r = t.replace(Var::Meta(0), &Term::eigen(2));
        assert_eq!(r.to_string(), "f(!2,3)");
    }
}
