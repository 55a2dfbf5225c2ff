//! Syntax–semantics interface: linear lambda terms for proofs.
//!
//! A reading's deep structure is the Curry–Howard term of its proof with the
//! first-order quantifiers erased. The term is recovered by sequentializing
//! the net over its fixed axiom matching: hypotheses are split along the
//! connected components of the axiom links, which for a proof net always
//! succeeds for some choice of the next left rule. The meaning of a reading
//! substitutes the lexical terms for the hypotheses and normalizes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Polarity, Sequent};
use crate::prover::Reading;
use crate::structure::{Link, NodeId, ProofStructure};
use crate::syntax::{Cursor, ParseError, Tok};
use crate::term::{name, Name};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaTerm {
    Var(Name),
    Const(Name),
    Abs(Name, Box<LambdaTerm>),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
    Pair(Box<LambdaTerm>, Box<LambdaTerm>),
    LetPair(Name, Name, Box<LambdaTerm>, Box<LambdaTerm>),
}

impl LambdaTerm {
    pub fn var(x: &str) -> Self {
        LambdaTerm::Var(name(x))
    }

    pub fn constant(c: &str) -> Self {
        LambdaTerm::Const(name(c))
    }

    pub fn abs(x: &str, body: LambdaTerm) -> Self {
        LambdaTerm::Abs(name(x), Box::new(body))
    }

    pub fn app(f: LambdaTerm, a: LambdaTerm) -> Self {
        LambdaTerm::App(Box::new(f), Box::new(a))
    }

    pub fn pair(a: LambdaTerm, b: LambdaTerm) -> Self {
        LambdaTerm::Pair(Box::new(a), Box::new(b))
    }

    pub fn let_pair(x: &str, y: &str, t: LambdaTerm, u: LambdaTerm) -> Self {
        LambdaTerm::LetPair(name(x), name(y), Box::new(t), Box::new(u))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            LambdaTerm::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            LambdaTerm::Const(_) => {}
            LambdaTerm::Abs(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            LambdaTerm::App(a, b) | LambdaTerm::Pair(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            LambdaTerm::LetPair(x, y, t, u) => {
                t.collect_free(bound, out);
                bound.push(x.clone());
                bound.push(y.clone());
                u.collect_free(bound, out);
                bound.pop();
                bound.pop();
            }
        }
    }

    fn all_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            LambdaTerm::Var(x) | LambdaTerm::Const(x) => {
                out.insert(x.clone());
            }
            LambdaTerm::Abs(x, b) => {
                out.insert(x.clone());
                b.all_names(out);
            }
            LambdaTerm::App(a, b) | LambdaTerm::Pair(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            LambdaTerm::LetPair(x, y, t, u) => {
                out.insert(x.clone());
                out.insert(y.clone());
                t.all_names(out);
                u.all_names(out);
            }
        }
    }

    /// Occurrences of the free variable `x`.
    pub fn count_free(&self, x: &str) -> usize {
        match self {
            LambdaTerm::Var(y) => usize::from(&**y == x),
            LambdaTerm::Const(_) => 0,
            LambdaTerm::Abs(y, b) => {
                if &**y == x {
                    0
                } else {
                    b.count_free(x)
                }
            }
            LambdaTerm::App(a, b) | LambdaTerm::Pair(a, b) => a.count_free(x) + b.count_free(x),
            LambdaTerm::LetPair(y, z, t, u) => {
                t.count_free(x) + if &**y == x || &**z == x { 0 } else { u.count_free(x) }
            }
        }
    }

    /// Every lambda- and let-bound variable occurs exactly once in its scope.
    pub fn is_linear(&self) -> bool {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Const(_) => true,
            LambdaTerm::Abs(x, b) => b.count_free(x) == 1 && b.is_linear(),
            LambdaTerm::App(a, b) | LambdaTerm::Pair(a, b) => a.is_linear() && b.is_linear(),
            LambdaTerm::LetPair(x, y, t, u) => {
                x != y && u.count_free(x) == 1 && u.count_free(y) == 1 && t.is_linear() && u.is_linear()
            }
        }
    }

    /// Capture-avoiding simultaneous substitution of free variables.
    pub fn substitute(&self, map: &BTreeMap<Name, LambdaTerm>) -> LambdaTerm {
        let mut avoid = BTreeSet::new();
        for t in map.values() {
            avoid.extend(t.free_vars());
        }
        self.all_names(&mut avoid);
        let mut fresh = Fresh { avoid };
        subst(self, map, &mut fresh)
    }

    /// Size in constructors, used to bound normalization in tests.
    pub fn size(&self) -> usize {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Const(_) => 1,
            LambdaTerm::Abs(_, b) => 1 + b.size(),
            LambdaTerm::App(a, b) | LambdaTerm::Pair(a, b) => 1 + a.size() + b.size(),
            LambdaTerm::LetPair(_, _, t, u) => 1 + t.size() + u.size(),
        }
    }
}

struct Fresh {
    avoid: BTreeSet<Name>,
}

impl Fresh {
    fn rename(&mut self, base: &Name) -> Name {
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
        let stem = if stem.is_empty() { "v" } else { stem };
        let mut i = 1;
        loop {
            let cand = name(&format!("{stem}{i}"));
            if !self.avoid.contains(&cand) {
                self.avoid.insert(cand.clone());
                return cand;
            }
            i += 1;
        }
    }
}

fn subst(t: &LambdaTerm, map: &BTreeMap<Name, LambdaTerm>, fresh: &mut Fresh) -> LambdaTerm {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        LambdaTerm::Var(x) => map.get(x).cloned().unwrap_or_else(|| t.clone()),
        LambdaTerm::Const(_) => t.clone(),
        LambdaTerm::App(a, b) => LambdaTerm::App(Box::new(subst(a, map, fresh)), Box::new(subst(b, map, fresh))),
        LambdaTerm::Pair(a, b) => LambdaTerm::Pair(Box::new(subst(a, map, fresh)), Box::new(subst(b, map, fresh))),
        LambdaTerm::Abs(x, b) => {
            let (x, inner) = bind(x, map, fresh);
            LambdaTerm::Abs(x, Box::new(subst(b, &inner, fresh)))
        }
        LambdaTerm::LetPair(x, y, p, u) => {
            let p = subst(p, map, fresh);
            let (x, inner) = bind(x, map, fresh);
            let (y, inner) = bind(y, &inner, fresh);
            LambdaTerm::LetPair(x, y, Box::new(p), Box::new(subst(u, &inner, fresh)))
        }
    }
}

/// Enter a binder for `x`: drop `x` from the map and rename it if a
/// substituted term would capture it.
fn bind(x: &Name, map: &BTreeMap<Name, LambdaTerm>, fresh: &mut Fresh) -> (Name, BTreeMap<Name, LambdaTerm>) {
    let mut inner = map.clone();
    inner.remove(x);
    let captures = inner.values().any(|t| t.free_vars().contains(x));
    if captures {
        let y = fresh.rename(x);
        inner.insert(x.clone(), LambdaTerm::Var(y.clone()));
        (y, inner)
    } else {
        (x.clone(), inner)
    }
}

/// Beta and pair-let normal form, reducing leftmost-outermost.
pub fn normalize(t: &LambdaTerm) -> LambdaTerm {
    let mut cur = t.clone();
    while let Some(next) = step(&cur) {
        cur = next;
    }
    cur
}

fn step(t: &LambdaTerm) -> Option<LambdaTerm> {
    match t {
        LambdaTerm::App(f, a) => {
            if let LambdaTerm::Abs(x, body) = &**f {
                return Some(body.substitute(&[(x.clone(), (**a).clone())].into()));
            }
            if let Some(f2) = step(f) {
                return Some(LambdaTerm::App(Box::new(f2), a.clone()));
            }
            step(a).map(|a2| LambdaTerm::App(f.clone(), Box::new(a2)))
        }
        LambdaTerm::LetPair(x, y, p, u) => {
            if let LambdaTerm::Pair(l, r) = &**p {
                return Some(u.substitute(&[(x.clone(), (**l).clone()), (y.clone(), (**r).clone())].into()));
            }
            if let Some(p2) = step(p) {
                return Some(LambdaTerm::LetPair(x.clone(), y.clone(), Box::new(p2), u.clone()));
            }
            step(u).map(|u2| LambdaTerm::LetPair(x.clone(), y.clone(), p.clone(), Box::new(u2)))
        }
        LambdaTerm::Abs(x, b) => step(b).map(|b2| LambdaTerm::Abs(x.clone(), Box::new(b2))),
        LambdaTerm::Pair(a, b) => {
            if let Some(a2) = step(a) {
                return Some(LambdaTerm::Pair(Box::new(a2), b.clone()));
            }
            step(b).map(|b2| LambdaTerm::Pair(a.clone(), Box::new(b2)))
        }
        LambdaTerm::Var(_) | LambdaTerm::Const(_) => None,
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaTerm::Var(x) | LambdaTerm::Const(x) => f.write_str(x),
            LambdaTerm::Abs(x, b) => write!(f, "\\{x}. {b}"),
            LambdaTerm::Pair(a, b) => write!(f, "<{a},{b}>"),
            LambdaTerm::LetPair(x, y, t, u) => write!(f, "let <{x},{y}> = {t} in {u}"),
            LambdaTerm::App(..) => {
                let mut args = Vec::new();
                let mut head = self;
                while let LambdaTerm::App(h, a) = head {
                    args.push(a);
                    head = h;
                }
                args.reverse();
                match head {
                    LambdaTerm::Var(_) | LambdaTerm::Const(_) => write!(f, "{head}(")?,
                    _ => write!(f, "({head})(")?,
                }
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

/// Parse the ASCII lambda syntax: `\x y. body`, juxtaposition,
/// `f(a,b)` for `f a b`, `<t,u>`, `let <x,y> = t in u`. Identifiers not
/// bound by an enclosing binder are constants.
pub fn parse_lambda(text: &str) -> Result<LambdaTerm, ParseError> {
    let mut c = Cursor::new(text)?;
    let t = lambda_term(&mut c, &mut Vec::new())?;
    c.finish()?;
    Ok(t)
}

fn is_keyword(s: &str) -> bool {
    s == "let" || s == "in"
}

fn binder(c: &mut Cursor) -> Result<String, ParseError> {
    let x = c.ident()?;
    if is_keyword(&x) {
        return Err(c.error("keyword used as variable"));
    }
    Ok(x)
}

fn lambda_term(c: &mut Cursor, scope: &mut Vec<String>) -> Result<LambdaTerm, ParseError> {
    if c.eat(&Tok::Backslash) {
        let mut xs = vec![binder(c)?];
        while matches!(c.peek(), Some(Tok::Ident(_))) {
            xs.push(binder(c)?);
        }
        c.expect(&Tok::Dot, "'.'")?;
        let n = scope.len();
        scope.extend(xs.iter().cloned());
        let body = lambda_term(c, scope);
        scope.truncate(n);
        let mut t = body?;
        for x in xs.iter().rev() {
            t = LambdaTerm::abs(x, t);
        }
        return Ok(t);
    }
    if c.peek() == Some(&Tok::Ident("let".into())) {
        c.bump();
        c.expect(&Tok::Lt, "'<'")?;
        let x = binder(c)?;
        c.expect(&Tok::Comma, "','")?;
        let y = binder(c)?;
        c.expect(&Tok::Gt, "'>'")?;
        c.expect(&Tok::Eq, "'='")?;
        let t = lambda_term(c, scope)?;
        if !c.eat(&Tok::Ident("in".into())) {
            return Err(c.error("expected 'in'"));
        }
        scope.push(x.clone());
        scope.push(y.clone());
        let u = lambda_term(c, scope);
        scope.truncate(scope.len() - 2);
        return Ok(LambdaTerm::let_pair(&x, &y, t, u?));
    }
    let mut head: Option<LambdaTerm> = None;
    loop {
        match c.peek() {
            Some(Tok::Backslash) => {
                let lam = lambda_term(c, scope)?;
                head = Some(match head {
                    Some(h) => LambdaTerm::app(h, lam),
                    None => lam,
                });
                break;
            }
            Some(Tok::Ident(s)) if is_keyword(s) => break,
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Lt) => {
                let a = lambda_atom(c, scope)?;
                head = Some(match head {
                    Some(h) => LambdaTerm::app(h, a),
                    None => a,
                });
            }
            Some(Tok::LParen) => {
                c.bump();
                let mut items = vec![lambda_term(c, scope)?];
                while c.eat(&Tok::Comma) {
                    items.push(lambda_term(c, scope)?);
                }
                c.expect(&Tok::RParen, "')'")?;
                head = match head {
                    Some(mut h) => {
                        for a in items {
                            h = LambdaTerm::app(h, a);
                        }
                        Some(h)
                    }
                    None if items.len() == 1 => items.pop(),
                    None => return Err(c.error("argument list without a function")),
                };
            }
            _ => break,
        }
    }
    head.ok_or_else(|| c.error("expected a lambda term"))
}

fn lambda_atom(c: &mut Cursor, scope: &mut Vec<String>) -> Result<LambdaTerm, ParseError> {
    match c.bump() {
        Some(Tok::Ident(s)) => Ok(if scope.contains(&s) { LambdaTerm::var(&s) } else { LambdaTerm::constant(&s) }),
        Some(Tok::Int(n)) => Ok(LambdaTerm::constant(&n.to_string())),
        Some(Tok::Lt) => {
            let a = lambda_term(c, scope)?;
            c.expect(&Tok::Comma, "','")?;
            let b = lambda_term(c, scope)?;
            c.expect(&Tok::Gt, "'>'")?;
            Ok(LambdaTerm::pair(a, b))
        }
        _ => unreachable!("caller checked the token"),
    }
}

/// Simple types: MILL1 formulas with quantifiers and term arguments erased.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimpleType {
    Atom(Name),
    Lolli(Box<SimpleType>, Box<SimpleType>),
    Tensor(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn erase(f: &Formula) -> SimpleType {
        match f {
            Formula::Atom(a) => SimpleType::Atom(a.pred.clone()),
            Formula::Lolli(a, b) => SimpleType::Lolli(Box::new(Self::erase(a)), Box::new(Self::erase(b))),
            Formula::Tensor(a, b) => SimpleType::Tensor(Box::new(Self::erase(a)), Box::new(Self::erase(b))),
            Formula::Forall(_, b) | Formula::Exists(_, b) => Self::erase(b),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Atom(a) => f.write_str(a),
            SimpleType::Lolli(a, b) => write!(f, "({a} -o {b})"),
            SimpleType::Tensor(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

pub type TypeContext = BTreeMap<Name, SimpleType>;

/// Infer the type of `t` in `ctx`, or `None` if it is ill-typed or needs an
/// annotation (a bare abstraction in synthesis position).
pub fn infer_type(t: &LambdaTerm, ctx: &TypeContext) -> Option<SimpleType> {
    match t {
        LambdaTerm::Var(x) | LambdaTerm::Const(x) => ctx.get(x).cloned(),
        LambdaTerm::App(f, a) => {
            if let LambdaTerm::Abs(x, body) = &**f {
                let ta = infer_type(a, ctx)?;
                let mut inner = ctx.clone();
                inner.insert(x.clone(), ta);
                return infer_type(body, &inner);
            }
            match infer_type(f, ctx)? {
                SimpleType::Lolli(dom, cod) => check_type(a, &dom, ctx).then_some(*cod),
                _ => None,
            }
        }
        LambdaTerm::Pair(a, b) => Some(SimpleType::Tensor(Box::new(infer_type(a, ctx)?), Box::new(infer_type(b, ctx)?))),
        LambdaTerm::LetPair(x, y, p, u) => match infer_type(p, ctx)? {
            SimpleType::Tensor(l, r) => {
                let mut inner = ctx.clone();
                inner.insert(x.clone(), *l);
                inner.insert(y.clone(), *r);
                infer_type(u, &inner)
            }
            _ => None,
        },
        LambdaTerm::Abs(..) => None,
    }
}

pub fn check_type(t: &LambdaTerm, ty: &SimpleType, ctx: &TypeContext) -> bool {
    match (t, ty) {
        (LambdaTerm::Abs(x, body), SimpleType::Lolli(dom, cod)) => {
            let mut inner = ctx.clone();
            inner.insert(x.clone(), (**dom).clone());
            check_type(body, cod, &inner)
        }
        (LambdaTerm::Abs(..), _) => false,
        (LambdaTerm::Pair(a, b), SimpleType::Tensor(l, r)) => check_type(a, l, ctx) && check_type(b, r, ctx),
        (LambdaTerm::LetPair(x, y, p, u), _) => match infer_type(p, ctx) {
            Some(SimpleType::Tensor(l, r)) => {
                let mut inner = ctx.clone();
                inner.insert(x.clone(), *l);
                inner.insert(y.clone(), *r);
                check_type(u, ty, &inner)
            }
            _ => false,
        },
        _ => infer_type(t, ctx).as_ref() == Some(ty),
    }
}

/// The name of the hypothesis variable for antecedent `i` (0-based).
pub fn hypothesis_name(i: usize) -> String {
    format!("h{}", i + 1)
}

/// Typing context for the hypotheses of `seq`.
pub fn hypothesis_context(seq: &Sequent) -> TypeContext {
    seq.antecedents
        .iter()
        .enumerate()
        .map(|(i, f)| (name(&hypothesis_name(i)), SimpleType::erase(f)))
        .collect()
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("the structure could not be sequentialized")]
    NotSequentializable,
    #[error("no lexical term for antecedent {0}")]
    MissingTerm(usize),
}

struct Extractor<'a> {
    ps: &'a ProofStructure,
    mate: BTreeMap<NodeId, NodeId>,
    below: Vec<Vec<NodeId>>,
    next_var: usize,
}

type Hyp = (NodeId, LambdaTerm);

impl Extractor<'_> {
    fn fresh(&mut self) -> String {
        self.next_var += 1;
        format!("z{}", self.next_var)
    }

    /// Partition `items` into connected components, where two items are
    /// adjacent iff an atom below one is axiom-linked to an atom below the
    /// other. Returns a component index per item.
    fn components(&self, items: &[NodeId]) -> Vec<usize> {
        let mut owner: BTreeMap<NodeId, usize> = BTreeMap::new();
        for (i, &n) in items.iter().enumerate() {
            for &a in &self.below[n] {
                owner.insert(a, i);
            }
        }
        let mut comp: Vec<usize> = (0..items.len()).collect();
        fn find(c: &mut [usize], mut x: usize) -> usize {
            while c[x] != x {
                c[x] = c[c[x]];
                x = c[x];
            }
            x
        }
        for (i, &n) in items.iter().enumerate() {
            for a in &self.below[n] {
                if let Some(j) = self.mate.get(a).and_then(|m| owner.get(m)) {
                    let (ri, rj) = (find(&mut comp, i), find(&mut comp, *j));
                    comp[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        (0..items.len()).map(|i| find(&mut comp, i)).collect()
    }

    fn prove(&mut self, mut hyps: Vec<Hyp>, mut goal: NodeId) -> Option<LambdaTerm> {
        // Right invertible rules.
        let mut lambdas = Vec::new();
        loop {
            match self.ps.link_of(goal) {
                Some(Link::ParBinary { left, right, .. }) => {
                    let v = self.fresh();
                    hyps.push((*left, LambdaTerm::var(&v)));
                    lambdas.push(v);
                    goal = *right;
                }
                Some(Link::SolidUnary { child, .. }) | Some(Link::UniversalUnary { child, .. }) => goal = *child,
                _ => break,
            }
        }
        // Left invertible rules.
        let mut lets = Vec::new();
        let mut i = 0;
        while i < hyps.len() {
            let (n, t) = hyps[i].clone();
            match self.ps.link_of(n) {
                Some(Link::SolidUnary { child, .. }) | Some(Link::UniversalUnary { child, .. }) => {
                    hyps[i] = (*child, t);
                }
                Some(Link::ParBinary { left, right, .. }) => {
                    let (x, y) = (self.fresh(), self.fresh());
                    hyps[i] = (*left, LambdaTerm::var(&x));
                    hyps.push((*right, LambdaTerm::var(&y)));
                    lets.push((x, y, t));
                }
                _ => i += 1,
            }
        }
        let body = self.prove_focused(hyps, goal)?;
        let mut t = body;
        for (x, y, p) in lets.into_iter().rev() {
            t = LambdaTerm::let_pair(&x, &y, p, t);
        }
        for v in lambdas.into_iter().rev() {
            t = LambdaTerm::abs(&v, t);
        }
        Some(t)
    }

    fn prove_focused(&mut self, hyps: Vec<Hyp>, goal: NodeId) -> Option<LambdaTerm> {
        if hyps.len() == 1 && self.mate.get(&hyps[0].0) == Some(&goal) {
            return Some(hyps[0].1.clone());
        }
        if let Some(Link::SolidBinary { left, right, .. }) = self.ps.link_of(goal) {
            let (left, right) = (*left, *right);
            let mut items: Vec<NodeId> = hyps.iter().map(|h| h.0).collect();
            items.push(left);
            items.push(right);
            let comp = self.components(&items);
            let (cl, cr) = (comp[hyps.len()], comp[hyps.len() + 1]);
            if cl != cr && comp[..hyps.len()].iter().all(|&c| c == cl || c == cr) {
                let (l, r) = split_by(&hyps, &comp, cl);
                if let (Some(a), Some(b)) = (self.prove(l, left), self.prove(r, right)) {
                    return Some(LambdaTerm::pair(a, b));
                }
            }
        }
        for k in 0..hyps.len() {
            let Some(Link::SolidBinary { left, right, .. }) = self.ps.link_of(hyps[k].0) else { continue };
            if self.ps.node(hyps[k].0).polarity != Polarity::Neg {
                continue;
            }
            let (arg, res) = (*left, *right);
            let others: Vec<Hyp> = hyps.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, h)| h.clone()).collect();
            let mut items: Vec<NodeId> = others.iter().map(|h| h.0).collect();
            items.extend([arg, res, goal]);
            let comp = self.components(&items);
            let m = others.len();
            let (ca, cb, cg) = (comp[m], comp[m + 1], comp[m + 2]);
            if ca == cb || ca == cg {
                continue;
            }
            let (delta1, mut delta2) = split_by(&others, &comp, ca);
            let Some(a) = self.prove(delta1, arg) else { continue };
            delta2.push((res, LambdaTerm::app(hyps[k].1.clone(), a)));
            if let Some(t) = self.prove(delta2, goal) {
                return Some(t);
            }
        }
        None
    }
}

/// Hypotheses in component `c` and the rest.
fn split_by(hyps: &[Hyp], comp: &[usize], c: usize) -> (Vec<Hyp>, Vec<Hyp>) {
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for (h, &k) in hyps.iter().zip(comp) {
        if k == c {
            inside.push(h.clone());
        } else {
            outside.push(h.clone());
        }
    }
    (inside, outside)
}

/// The deep-structure term of a reading, with free variables `h1..hn` for
/// the antecedents in order.
pub fn extract_term(r: &Reading, seq: &Sequent) -> Result<LambdaTerm, SemanticsError> {
    let ps = &r.structure;
    let mut mate = BTreeMap::new();
    for &(n, p) in &r.matching {
        mate.insert(n, p);
        mate.insert(p, n);
    }
    let below = (0..ps.nodes().len()).map(|n| ps.atoms_below(n)).collect();
    let mut ex = Extractor { ps, mate, below, next_var: 0 };
    let roots = ps.roots();
    let hyps: Vec<Hyp> = (0..seq.antecedents.len())
        .map(|i| (roots[i], LambdaTerm::var(&hypothesis_name(i))))
        .collect();
    ex.prove(hyps, roots[seq.antecedents.len()]).ok_or(SemanticsError::NotSequentializable)
}

/// Substitute lexical terms for the hypotheses and normalize.
pub fn meaning(r: &Reading, seq: &Sequent, lex_terms: &[LambdaTerm]) -> Result<LambdaTerm, SemanticsError> {
    let deep = extract_term(r, seq)?;
    if lex_terms.len() < seq.antecedents.len() {
        return Err(SemanticsError::MissingTerm(lex_terms.len()));
    }
    Ok(apply_lexicon(&deep, lex_terms))
}

/// Substitute `lex_terms[i]` for `h{i+1}` and normalize.
pub fn apply_lexicon(deep: &LambdaTerm, lex_terms: &[LambdaTerm]) -> LambdaTerm {
    let map: BTreeMap<Name, LambdaTerm> =
        lex_terms.iter().enumerate().map(|(i, t)| (name(&hypothesis_name(i)), t.clone())).collect();
    normalize(&deep.substitute(&map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prover::{prove, SearchConfig};
    use crate::syntax::parse_sequent;

    fn deep(s: &str) -> Vec<String> {
        let seq = parse_sequent(s).unwrap();
        prove(&seq, &SearchConfig::default())
            .readings
            .iter()
            .map(|r| extract_term(r, &seq).unwrap().to_string())
            .collect()
    }

    #[test]
    fn parse_and_display() {
        let t = parse_lambda("\\x. sleep x").unwrap();
        assert_eq!(t, LambdaTerm::abs("x", LambdaTerm::app(LambdaTerm::constant("sleep"), LambdaTerm::var("x"))));
        assert_eq!(t.to_string(), "\\x. sleep(x)");
        let u = parse_lambda("\\x y. and(x, y)").unwrap();
        assert_eq!(u.to_string(), "\\x. \\y. and(x,y)");
        assert_eq!(parse_lambda(&u.to_string()).unwrap(), u);
        let p = parse_lambda("let <a,b> = h in f a b").unwrap();
        assert_eq!(p.to_string(), "let <a,b> = h in f(a,b)");
        assert_eq!(parse_lambda("<m, n>").unwrap().to_string(), "<m,n>");
        assert!(parse_lambda("(a, b)").is_err());
        assert!(parse_lambda("").is_err());
    }

    #[test]
    fn normalization_examples() {
        let t = parse_lambda("(\\x. sleep x) john").unwrap();
        assert_eq!(normalize(&t).to_string(), "sleep(john)");
        let p = LambdaTerm::let_pair(
            "a",
            "b",
            LambdaTerm::pair(LambdaTerm::constant("m"), LambdaTerm::constant("n")),
            parse_lambda("\\a b. f a b").unwrap().pipe_app(&["a", "b"]),
        );
        assert_eq!(normalize(&p).to_string(), "f(m,n)");
    }

    trait PipeApp {
        fn pipe_app(self, vars: &[&str]) -> LambdaTerm;
    }

    impl PipeApp for LambdaTerm {
        fn pipe_app(self, vars: &[&str]) -> LambdaTerm {
            vars.iter().fold(self, |t, v| LambdaTerm::app(t, LambdaTerm::var(v)))
        }
    }

    #[test]
    fn substitution_avoids_capture() {
        let body = LambdaTerm::app(LambdaTerm::app(LambdaTerm::constant("f"), LambdaTerm::var("x")), LambdaTerm::var("y"));
        let t = LambdaTerm::abs("y", body);
        let s = t.substitute(&[(name("x"), LambdaTerm::var("y"))].into());
        let LambdaTerm::Abs(b, _) = &s else { panic!() };
        assert_ne!(&**b, "y");
        assert_eq!(s.free_vars(), [name("y")].into());
    }

    #[test]
    fn deep_structures() {
        assert_eq!(deep("a |- a"), ["h1"]);
        assert_eq!(deep("np(0,1), forall x.(np(x,1) -o s(x,2)) |- s(0,2)"), ["h2(h1)"]);
        assert_eq!(deep("|- a -o a"), ["\\z1. z1"]);
        assert_eq!(deep("a * b |- b * a"), ["let <z1,z2> = h1 in <z2,z1>"]);
        assert_eq!(deep("a -o b, b -o c |- a -o c"), ["\\z1. h2(h1(z1))"]);
    }

    #[test]
    fn lexical_substitution() {
        let seq = parse_sequent("np(0,1), forall x.(np(x,1) -o s(x,2)) |- s(0,2)").unwrap();
        let r = &prove(&seq, &SearchConfig::default()).readings[0];
        let lex = [LambdaTerm::constant("john"), parse_lambda("\\x. sleep x").unwrap()];
        assert_eq!(meaning(r, &seq, &lex).unwrap().to_string(), "sleep(john)");
    }

    #[test]
    fn types_and_linearity() {
        let seq = parse_sequent("a -o b, b -o c |- a -o c").unwrap();
        let r = &prove(&seq, &SearchConfig::default()).readings[0];
        let t = extract_term(r, &seq).unwrap();
        assert!(t.is_linear());
        assert!(check_type(&t, &SimpleType::erase(&seq.succedent), &hypothesis_context(&seq)));
        assert!(!parse_lambda("\\x. f x x").unwrap().is_linear());
        assert!(!parse_lambda("\\x. c").unwrap().is_linear());
    }
}
