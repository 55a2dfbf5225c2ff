//! ASCII syntax for MILL1 formulas, sequents and Lambek formulas.
//!
//! ```text
//! formula ::= ("forall" | "exists") ident+ "." formula
//!           | tensor ("-o" formula)?
//! tensor  ::= unary ("*" unary)*
//! unary   ::= atom | "(" formula ")" | quantified
//! atom    ::= ident ("(" term ("," term)* ")")?
//! term    ::= integer | ident ("(" term ("," term)* ")")?
//! sequent ::= (formula ("," formula)*)? "|-" formula
//! ```
//!
//! Identifiers in term position that are not bound by an enclosing
//! quantifier are constants. Bound variables are renamed to fresh ids.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::formula::{Atom, Formula, LambekFormula, Sequent};
use crate::term::{name, Name, Term, VarSupply};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(u32),
    LParen,
    RParen,
    Comma,
    Dot,
    Lolli,
    Star,
    Turnstile,
    Slash,
    Backslash,
    Lt,
    Gt,
    Eq,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b',' => out.push((start, Tok::Comma)),
            b'.' => out.push((start, Tok::Dot)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'\\' => out.push((start, Tok::Backslash)),
            b'<' => out.push((start, Tok::Lt)),
            b'>' => out.push((start, Tok::Gt)),
            b'=' => out.push((start, Tok::Eq)),
            b'-' if bytes.get(i + 1) == Some(&b'o') => {
                out.push((start, Tok::Lolli));
                i += 2;
                continue;
            }
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                out.push((start, Tok::Turnstile));
                i += 2;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = text[start..i].parse::<u32>().map_err(|_| ParseError::new(start, "integer out of range"))?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character {ch:?}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Cursor { toks: tokenize(text)?, at: 0, end: text.len() })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|t| &t.1)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.error("expected identifier")),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> ParseError {
        let msg = msg.into();
        match self.peek() {
            Some(t) => ParseError::new(self.pos(), format!("{msg}, found {t:?}")),
            None => ParseError::new(self.pos(), format!("{msg}, found end of input")),
        }
    }
}

/// Arities of predicate and function symbols seen so far in one problem.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    preds: BTreeMap<Name, usize>,
    funs: BTreeMap<Name, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn check(table: &mut BTreeMap<Name, usize>, kind: &str, sym: &str, arity: usize, pos: usize) -> Result<(), ParseError> {
        match table.get(sym) {
            Some(&seen) if seen != arity => Err(ParseError::new(
                pos,
                format!("arity mismatch for {kind} {sym}: used with {arity} argument(s), previously {seen}"),
            )),
            Some(_) => Ok(()),
            None => {
                table.insert(name(sym), arity);
                Ok(())
            }
        }
    }
}

/// Parser state shared across the formulas of one problem: binder ids are
/// drawn from one supply and symbol arities must agree.
#[derive(Debug, Default)]
pub struct Mill1Parser {
    pub supply: VarSupply,
    pub signature: Signature,
}

impl Mill1Parser {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn formula(&mut self, text: &str) -> Result<Formula, ParseError> {
        let mut cur = Cursor::new(text)?;
        let f = self.parse_formula(&mut cur, &mut HashMap::new())?;
        cur.finish()?;
        Ok(f)
    }

    pub fn sequent(&mut self, text: &str) -> Result<Sequent, ParseError> {
        let mut cur = Cursor::new(text)?;
        let mut antecedents = Vec::new();
        if cur.peek() != Some(&Tok::Turnstile) {
            loop {
                antecedents.push(self.parse_formula(&mut cur, &mut HashMap::new())?);
                if !cur.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        cur.expect(&Tok::Turnstile, "'|-'")?;
        let succedent = self.parse_formula(&mut cur, &mut HashMap::new())?;
        cur.finish()?;
        Ok(Sequent { antecedents, succedent })
    }

    fn parse_formula(&mut self, cur: &mut Cursor, scope: &mut HashMap<String, Vec<u32>>) -> Result<Formula, ParseError> {
        if let Some(q) = self.quantifier_keyword(cur) {
            return self.parse_quantified(cur, scope, q);
        }
        let left = self.parse_tensor(cur, scope)?;
        if cur.eat(&Tok::Lolli) {
            let right = self.parse_formula(cur, scope)?;
            Ok(Formula::lolli(left, right))
        } else {
            Ok(left)
        }
    }

    fn quantifier_keyword(&self, cur: &Cursor) -> Option<bool> {
        match cur.peek() {
            Some(Tok::Ident(s)) if s == "forall" && matches!(cur.peek_at(1), Some(Tok::Ident(_))) => Some(true),
            Some(Tok::Ident(s)) if s == "exists" && matches!(cur.peek_at(1), Some(Tok::Ident(_))) => Some(false),
            _ => None,
        }
    }

    fn parse_quantified(&mut self, cur: &mut Cursor, scope: &mut HashMap<String, Vec<u32>>, universal: bool) -> Result<Formula, ParseError> {
        cur.bump();
        let mut binders = Vec::new();
        while let Some(Tok::Ident(_)) = cur.peek() {
            let v = cur.ident()?;
            let id = self.supply.bound();
            scope.entry(v.clone()).or_default().push(id);
            binders.push((v, id));
            cur.eat(&Tok::Comma);
        }
        cur.expect(&Tok::Dot, "'.' after quantified variables")?;
        let mut body = self.parse_formula(cur, scope)?;
        for (v, id) in binders.into_iter().rev() {
            if let Some(stack) = scope.get_mut(&v) {
                stack.pop();
            }
            body = if universal { Formula::forall(id, body) } else { Formula::exists(id, body) };
        }
        Ok(body)
    }

    fn parse_tensor(&mut self, cur: &mut Cursor, scope: &mut HashMap<String, Vec<u32>>) -> Result<Formula, ParseError> {
        let mut left = self.parse_unary(cur, scope)?;
        while cur.eat(&Tok::Star) {
            let right = self.parse_unary(cur, scope)?;
            left = Formula::tensor(left, right);
        }
        Ok(left)
    }

    fn parse_unary(&mut self, cur: &mut Cursor, scope: &mut HashMap<String, Vec<u32>>) -> Result<Formula, ParseError> {
        if let Some(q) = self.quantifier_keyword(cur) {
            return self.parse_quantified(cur, scope, q);
        }
        if cur.eat(&Tok::LParen) {
            let f = self.parse_formula(cur, scope)?;
            cur.expect(&Tok::RParen, "')'")?;
            return Ok(f);
        }
        let pos = cur.pos();
        let pred = cur.ident().map_err(|_| cur.error("expected formula"))?;
        let args = if cur.eat(&Tok::LParen) { self.parse_args(cur, scope)? } else { Vec::new() };
        Signature::check(&mut self.signature.preds, "predicate", &pred, args.len(), pos)?;
        Ok(Formula::Atom(Atom { pred: name(&pred), args }))
    }

    fn parse_args(&mut self, cur: &mut Cursor, scope: &HashMap<String, Vec<u32>>) -> Result<Vec<Term>, ParseError> {
        let mut args = vec![self.parse_term(cur, scope)?];
        while cur.eat(&Tok::Comma) {
            args.push(self.parse_term(cur, scope)?);
        }
        cur.expect(&Tok::RParen, "')' after arguments")?;
        Ok(args)
    }

    fn parse_term(&mut self, cur: &mut Cursor, scope: &HashMap<String, Vec<u32>>) -> Result<Term, ParseError> {
        let pos = cur.pos();
        match cur.bump() {
            Some(Tok::Int(v)) => Ok(Term::Pos(v)),
            Some(Tok::Ident(s)) => {
                let bound = scope.get(&s).and_then(|stack| stack.last().copied());
                if cur.eat(&Tok::LParen) {
                    if bound.is_some() {
                        return Err(ParseError::new(pos, format!("bound variable {s} used as a function")));
                    }
                    let args = self.parse_args(cur, scope)?;
                    Signature::check(&mut self.signature.funs, "function", &s, args.len(), pos)?;
                    Ok(Term::Fun(name(&s), args))
                } else if let Some(id) = bound {
                    Ok(Term::bound(id))
                } else {
                    Signature::check(&mut self.signature.funs, "function", &s, 0, pos)?;
                    Ok(Term::Fun(name(&s), Vec::new()))
                }
            }
            _ => {
                cur.at -= 1;
                Err(cur.error("expected term"))
            }
        }
    }
}

pub fn parse_mill1(text: &str) -> Result<Formula, ParseError> {
    Mill1Parser::new().formula(text)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    Mill1Parser::new().sequent(text)
}

/// Parse a Lambek formula. Nested slashes and products must be
/// parenthesized.
pub fn parse_lambek(text: &str) -> Result<LambekFormula, ParseError> {
    let mut cur = Cursor::new(text)?;
    let f = lambek_expr(&mut cur)?;
    cur.finish()?;
    Ok(f)
}

fn lambek_expr(cur: &mut Cursor) -> Result<LambekFormula, ParseError> {
    let left = lambek_unary(cur)?;
    let op = match cur.peek() {
        Some(Tok::Slash) | Some(Tok::Backslash) | Some(Tok::Star) => cur.bump(),
        _ => return Ok(left),
    };
    let right = lambek_unary(cur)?;
    if matches!(cur.peek(), Some(Tok::Slash) | Some(Tok::Backslash) | Some(Tok::Star)) {
        return Err(cur.error("ambiguous connective chain; add parentheses"));
    }
    Ok(match op {
        Some(Tok::Slash) => LambekFormula::over(left, right),
        Some(Tok::Backslash) => LambekFormula::under(left, right),
        _ => LambekFormula::prod(left, right),
    })
}

fn lambek_unary(cur: &mut Cursor) -> Result<LambekFormula, ParseError> {
    if cur.eat(&Tok::LParen) {
        let f = lambek_expr(cur)?;
        cur.expect(&Tok::RParen, "')'")?;
        return Ok(f);
    }
    let n = cur.ident().map_err(|_| cur.error("expected Lambek atom"))?;
    Ok(LambekFormula::atom(&n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::format_mill1;

    #[test]
    fn parses_translation_example() {
        let f = parse_mill1("forall x. np(x,1) -o s(x,2)").unwrap();
        let Formula::Forall(v, body) = &f else { panic!("expected forall, got {f:?}") };
        let expected = Formula::lolli(
            Formula::atom("np", vec![Term::bound(*v), Term::Pos(1)]),
            Formula::atom("s", vec![Term::bound(*v), Term::Pos(2)]),
        );
        assert_eq!(**body, expected);
    }

    #[test]
    fn parses_atoms() {
        assert_eq!(parse_mill1("np(0,1)").unwrap(), Formula::atom("np", vec![Term::Pos(0), Term::Pos(1)]));
        assert_eq!(parse_mill1("a").unwrap(), Formula::atom("a", vec![]));
    }

    #[test]
    fn lolli_is_right_associative_and_tensor_binds_tighter() {
        let f = parse_mill1("a -o b -o c").unwrap();
        assert_eq!(format_mill1(&f), "a -o (b -o c)");
        let g = parse_mill1("a * b -o c").unwrap();
        assert_eq!(format_mill1(&g), "(a * b) -o c");
    }

    #[test]
    fn renames_reused_binders_apart() {
        let f = parse_mill1("(forall x. a(x)) * (forall x. b(x))").unwrap();
        let Formula::Tensor(l, r) = f else { panic!() };
        let (Formula::Forall(v1, _), Formula::Forall(v2, _)) = (*l, *r) else { panic!() };
        assert_ne!(v1, v2);
    }

    #[test]
    fn multi_binder_sugar() {
        let f = parse_mill1("forall x0 x2. p(x0,x2)").unwrap();
        assert_eq!(format_mill1(&f), "forall x0. forall x1. p(x0,x1)");
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let err = parse_mill1("np(0,1) -o np(1)").unwrap_err();
        assert!(err.msg.contains("arity mismatch"), "{err}");
        let err = parse_sequent("a(f(1)), a(f(1,2)) |- b").unwrap_err();
        assert!(err.msg.contains("function f"), "{err}");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_mill1("np(0,").unwrap_err();
        assert_eq!(err.pos, 5);
        let err = parse_mill1("a -o").unwrap_err();
        assert_eq!(err.pos, 4);
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("np(0,1), forall x.(np(x,1) -o s(x,2)) |- s(0,2)").unwrap();
        assert_eq!(s.antecedents.len(), 2);
        assert_eq!(s.to_string(), "np(0,1), forall x0. (np(x0,1) -o s(x0,2)) |- s(0,2)");
        let e = parse_sequent("|- s(0,0)").unwrap();
        assert!(e.antecedents.is_empty());
    }

    #[test]
    fn lambek_examples() {
        assert_eq!(parse_lambek("np\\s").unwrap(), LambekFormula::under(LambekFormula::atom("np"), LambekFormula::atom("s")));
        let rel = parse_lambek("(n\\n)/(s/np)").unwrap();
        assert_eq!(
            rel,
            LambekFormula::over(
                LambekFormula::under(LambekFormula::atom("n"), LambekFormula::atom("n")),
                LambekFormula::over(LambekFormula::atom("s"), LambekFormula::atom("np"))
            )
        );
        assert_eq!(rel.to_string(), "(n\\n)/(s/np)");
        assert_eq!(parse_lambek("np").unwrap(), LambekFormula::atom("np"));
        assert!(parse_lambek("a/b/c").is_err());
    }
}
