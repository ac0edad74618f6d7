//! Concrete syntax for terms, types and judgments.
//!
//! ```text
//! term  ::= λx.term | λx:ty.term | term term | <term,term>
//!         | fst(term) | snd(term) | inl(term) | inr(term)
//!         | case(term,x.term,y.term) | eps x.(term,term) | E(term,g.t.term)
//!         | J(term,t.term) | s(term,term) | (reason)(term,term) | x | (term)
//! ty    ::= Pi x:ty. ty | Sigma x:ty. ty | ty -> ty | ty + ty | ty * ty
//!         | Id_A(term,term) | Id_{ty}(term,term) | A | (ty)
//! judg  ::= term : ty | term =_reason term : ty | ty type
//! ```
//! `\` may stand for `λ`. Application is juxtaposition separated by spaces.

use std::fmt;

use super::derivation::Judgment;
use super::term::{Term, Ty};
use crate::reason::{parse_reason, Reason};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset} in '{input}'")]
pub struct SyntaxError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

fn reason_is_simple(s: &Reason) -> bool {
    matches!(s, Reason::Var(_) | Reason::Rho | Reason::Axiom(_, None))
}

fn fmt_term(t: &Term, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
    match t {
        Term::Var(x) => f.write_str(x),
        Term::Lambda(x, ann, b) => {
            if level > 0 {
                f.write_str("(")?;
            }
            write!(f, "λ{x}")?;
            if let Some(ty) = ann {
                write!(f, ":{ty}")?;
            }
            f.write_str(".")?;
            fmt_term(b, f, 0)?;
            if level > 0 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::App(a, b) => {
            if level > 1 {
                f.write_str("(")?;
            }
            fmt_term(a, f, 1)?;
            f.write_str(" ")?;
            fmt_term(b, f, 2)?;
            if level > 1 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::Pair(a, b) => write!(f, "<{a},{b}>"),
        Term::Fst(a) => write!(f, "fst({a})"),
        Term::Snd(a) => write!(f, "snd({a})"),
        Term::Inl(a) => write!(f, "inl({a})"),
        Term::Inr(a) => write!(f, "inr({a})"),
        Term::Case(c, x, d, y, e) => write!(f, "case({c},{x}.{d},{y}.{e})"),
        Term::Eps(x, b, a) => write!(f, "eps {x}.({b},{a})"),
        Term::EpsElim(e, g, t, d) => write!(f, "E({e},{g}.{t}.{d})"),
        Term::PathWitness(s, a, b) => {
            if reason_is_simple(s) {
                write!(f, "{s}({a},{b})")
            } else {
                write!(f, "({s})({a},{b})")
            }
        }
        Term::J(p, t, d) => write!(f, "J({p},{t}.{d})"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(self, f, 0)
    }
}

fn fmt_ty(t: &Ty, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
    let (own, body): (u8, Box<dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result + '_>) = match t {
        Ty::Atom(a) => (3, Box::new(move |f| f.write_str(a))),
        Ty::Prod(a, b) => (
            2,
            Box::new(move |f| {
                fmt_ty(a, f, 2)?;
                f.write_str(" * ")?;
                fmt_ty(b, f, 3)
            }),
        ),
        Ty::Sum(a, b) => (
            1,
            Box::new(move |f| {
                fmt_ty(a, f, 1)?;
                f.write_str(" + ")?;
                fmt_ty(b, f, 2)
            }),
        ),
        Ty::Pi(x, a, b) if !b.free_vars().contains(x) => (
            0,
            Box::new(move |f| {
                fmt_ty(a, f, 1)?;
                f.write_str(" -> ")?;
                fmt_ty(b, f, 0)
            }),
        ),
        Ty::Pi(x, a, b) => (0, Box::new(move |f| write!(f, "Pi {x}:{a}. {b}"))),
        Ty::SigmaTy(x, a, b) => (0, Box::new(move |f| write!(f, "Sigma {x}:{a}. {b}"))),
        Ty::IdTy(a, l, r) => (
            3,
            Box::new(move |f| match &**a {
                Ty::Atom(name) => write!(f, "Id_{name}({l},{r})"),
                other => write!(f, "Id_{{{other}}}({l},{r})"),
            }),
        ),
    };
    if own < level {
        f.write_str("(")?;
        body(f)?;
        f.write_str(")")
    } else {
        body(f)
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ty(self, f, 0)
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgment::Member(a, ty) => write!(f, "{a} : {ty}"),
            Judgment::Eq(a, s, b, ty) => write!(f, "{a} =_{s} {b} : {ty}"),
            Judgment::Type(ty) => write!(f, "{ty} type"),
        }
    }
}

const KEYWORDS: [&str; 8] = ["fst", "snd", "inl", "inr", "case", "eps", "E", "J"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError {
            input: self.src.to_string(),
            offset: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> PResult<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if is_ident_char(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if start == self.pos {
            return self.err("expected identifier");
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn peek_ident(&self) -> Option<&'a str> {
        let rest = self.rest();
        let end = rest.find(|c: char| !is_ident_char(c)).unwrap_or(rest.len());
        (end > 0).then(|| &rest[..end])
    }

    fn done(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    /// Offset of the `)` matching the `(` at the cursor.
    fn matching_paren(&self) -> PResult<usize> {
        let mut depth = 0usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(self.pos + i);
                    }
                }
                _ => {}
            }
        }
        self.err("unbalanced parenthesis")
    }

    fn term(&mut self) -> PResult<Term> {
        self.skip_ws();
        if self.eat("λ") || self.eat("\\") {
            let x = self.ident()?;
            let ann = if self.eat(":") { Some(self.ty()?) } else { None };
            self.expect(".")?;
            let body = self.term()?;
            return Ok(match ann {
                Some(ty) => Term::lam_typed(x, ty, body),
                None => Term::lam(x, body),
            });
        }
        let mut t = self.atom()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('λ' | '\\') => {
                    let arg = self.term()?;
                    return Ok(Term::app(t, arg));
                }
                Some(c) if c == '(' || c == '<' || is_ident_char(c) => {
                    let arg = self.atom()?;
                    t = Term::app(t, arg);
                }
                _ => return Ok(t),
            }
        }
    }

    fn witness_args(&mut self, s: Reason) -> PResult<Term> {
        self.expect("(")?;
        let a = self.term()?;
        self.expect(",")?;
        let b = self.term()?;
        self.expect(")")?;
        Ok(Term::witness(s, a, b))
    }

    fn reason_text(&self, text: &str) -> PResult<Reason> {
        parse_reason(text).or_else(|e| self.err(format!("bad reason '{text}': {e}")))
    }

    fn atom(&mut self) -> PResult<Term> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                let close = self.matching_paren()?;
                if self.src[close + 1..].starts_with('(') {
                    let text = &self.src[self.pos + 1..close];
                    let s = self.reason_text(text)?;
                    self.pos = close + 1;
                    return self.witness_args(s);
                }
                self.pos += 1;
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            Some('<') => {
                self.pos += 1;
                let a = self.term()?;
                self.expect(",")?;
                let b = self.term()?;
                self.expect(">")?;
                Ok(Term::pair(a, b))
            }
            Some(c) if is_ident_char(c) => {
                let name = self.peek_ident().unwrap_or_default();
                if KEYWORDS.contains(&name) {
                    self.keyword()
                } else {
                    self.ident()?;
                    if self.rest().starts_with('(') {
                        let s = self.reason_text(name)?;
                        return self.witness_args(s);
                    }
                    Ok(Term::var(name))
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn keyword(&mut self) -> PResult<Term> {
        let kw = self.ident()?;
        match kw.as_str() {
            "fst" | "snd" | "inl" | "inr" => {
                self.expect("(")?;
                let a = self.term()?;
                self.expect(")")?;
                Ok(match kw.as_str() {
                    "fst" => Term::fst(a),
                    "snd" => Term::snd(a),
                    "inl" => Term::inl(a),
                    _ => Term::inr(a),
                })
            }
            "case" => {
                self.expect("(")?;
                let c = self.term()?;
                self.expect(",")?;
                let x = self.ident()?;
                self.expect(".")?;
                let d = self.term()?;
                self.expect(",")?;
                let y = self.ident()?;
                self.expect(".")?;
                let e = self.term()?;
                self.expect(")")?;
                Ok(Term::case(c, x, d, y, e))
            }
            "eps" => {
                let x = self.ident()?;
                self.expect(".")?;
                self.expect("(")?;
                let b = self.term()?;
                self.expect(",")?;
                let a = self.term()?;
                self.expect(")")?;
                Ok(Term::eps(x, b, a))
            }
            "E" => {
                self.expect("(")?;
                let e = self.term()?;
                self.expect(",")?;
                let g = self.ident()?;
                self.expect(".")?;
                let t = self.ident()?;
                self.expect(".")?;
                let d = self.term()?;
                self.expect(")")?;
                Ok(Term::eps_elim(e, g, t, d))
            }
            _ => {
                self.expect("(")?;
                let p = self.term()?;
                self.expect(",")?;
                let t = self.ident()?;
                self.expect(".")?;
                let d = self.term()?;
                self.expect(")")?;
                Ok(Term::j(p, t, d))
            }
        }
    }

    fn ty(&mut self) -> PResult<Ty> {
        self.skip_ws();
        for (kw, pi) in [("Pi ", true), ("Π", true), ("Sigma ", false), ("Σ", false)] {
            if self.rest().starts_with(kw) {
                self.pos += kw.len();
                let x = self.ident()?;
                self.expect(":")?;
                let a = self.ty()?;
                self.expect(".")?;
                let b = self.ty()?;
                return Ok(if pi { Ty::pi(x, a, b) } else { Ty::sigma(x, a, b) });
            }
        }
        let a = self.sum_ty()?;
        if self.eat("->") || self.eat("→") {
            let b = self.ty()?;
            return Ok(Ty::arrow(a, b));
        }
        Ok(a)
    }

    fn sum_ty(&mut self) -> PResult<Ty> {
        let mut t = self.prod_ty()?;
        while self.eat("+") {
            t = Ty::sum(t, self.prod_ty()?);
        }
        Ok(t)
    }

    fn prod_ty(&mut self) -> PResult<Ty> {
        let mut t = self.atom_ty()?;
        while self.eat("*") || self.eat("×") {
            t = Ty::prod(t, self.atom_ty()?);
        }
        Ok(t)
    }

    fn atom_ty(&mut self) -> PResult<Ty> {
        self.skip_ws();
        if self.eat("(") {
            let t = self.ty()?;
            self.expect(")")?;
            return Ok(t);
        }
        if self.rest().starts_with("Id_") {
            self.pos += 3;
            let base = if self.rest().starts_with('{') {
                self.pos += 1;
                let t = self.ty()?;
                self.expect("}")?;
                t
            } else {
                Ty::atom(self.ident()?)
            };
            self.expect("(")?;
            let l = self.term()?;
            self.expect(",")?;
            let r = self.term()?;
            self.expect(")")?;
            return Ok(Ty::id(base, l, r));
        }
        Ok(Ty::atom(self.ident()?))
    }
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.done()?;
    Ok(t)
}

pub fn parse_ty(text: &str) -> Result<Ty, SyntaxError> {
    let mut p = Parser::new(text);
    let t = p.ty()?;
    p.done()?;
    Ok(t)
}

/// Byte offsets of `needle` outside any brackets.
fn top_level(text: &str, needle: &str) -> Vec<usize> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if bytes[i..].starts_with(b"->") {
            i += 2;
            continue;
        }
        match c {
            b'(' | b'[' | b'{' | b'<' => depth += 1,
            b')' | b']' | b'}' | b'>' => depth -= 1,
            _ => {}
        }
        if depth == 0 && bytes[i..].starts_with(needle.as_bytes()) {
            out.push(i);
        }
        i += 1;
    }
    out
}

pub fn parse_judgment(text: &str) -> Result<Judgment, SyntaxError> {
    let err = |offset: usize, message: &str| SyntaxError {
        input: text.to_string(),
        offset,
        message: message.to_string(),
    };
    let trimmed = text.trim_end();
    if let Some(ty) = trimmed.strip_suffix(" type") {
        if top_level(ty, " : ").is_empty() {
            return Ok(Judgment::Type(parse_ty(ty)?));
        }
    }
    let colon = *top_level(text, " : ").last().ok_or_else(|| err(0, "expected ' : '"))?;
    let ty = parse_ty(&text[colon + 3..])?;
    let lhs = &text[..colon];
    match top_level(lhs, "=_").first() {
        None => Ok(Judgment::Member(parse_term(lhs)?, ty)),
        Some(&eq) => {
            let rest = &lhs[eq + 2..];
            let end = rest.find(char::is_whitespace).ok_or_else(|| err(eq, "expected a term after the reason"))?;
            let s = parse_reason(&rest[..end]).map_err(|e| err(eq + 2, &e.to_string()))?;
            let a = parse_term(&lhs[..eq])?;
            let b = parse_term(&rest[end..])?;
            Ok(Judgment::Eq(a, s, b, ty))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_round_trip() {
        for text in [
            "λx.(λy.y x) (λw.z w) v",
            "(λx.(λy.y x) (λw.z w)) v",
            "λx.λy.λc.J(c(x,y),t.(sigma(t))(y,x))",
            "λx:A.fst(<x,x>)",
            "case(p,x.inl(x),y.inr(y))",
            "E(eps x.(f x,a),g.t.g t)",
            "(tau(t,r))(x,z)",
            "rho(x,x)",
            "(beta@[0.1])(a,b)",
            "f (g a) b",
            "λx:Pi y:A. Id_A(y,y).x",
        ] {
            let t = parse_term(text).unwrap_or_else(|e| panic!("{e}"));
            let printed = t.to_string();
            assert_eq!(parse_term(&printed).unwrap(), t, "{text} -> {printed}");
        }
        assert_eq!(
            parse_term("(λx.(λy.y x) (λw.z w)) v").unwrap().to_string(),
            "(λx.(λy.y x) (λw.z w)) v"
        );
    }

    #[test]
    fn types_round_trip() {
        for text in [
            "Pi x:A. Pi y:A. Id_A(x,y) -> Id_A(y,x)",
            "A * B + C -> A",
            "(A -> B) -> C",
            "Sigma x:A. Id_A(x,x)",
            "Id_{Id_A(x,z)}((tau(tau(t,r),s))(x,z),(tau(t,tau(r,s)))(x,z))",
        ] {
            let t = parse_ty(text).unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(t.to_string(), text);
        }
        let t = parse_ty("A -> B").unwrap();
        assert!(matches!(t, Ty::Pi(..)));
    }

    #[test]
    fn judgments() {
        let j = parse_judgment("x =_rho x : A").unwrap();
        assert_eq!(j, Judgment::Eq(Term::var("x"), Reason::Rho, Term::var("x"), Ty::atom("A")));
        assert_eq!(j.to_string(), "x =_rho x : A");
        let j = parse_judgment("s(a,b) : Id_A(a,b)").unwrap();
        assert!(matches!(j, Judgment::Member(Term::PathWitness(..), Ty::IdTy(..))));
        let j = parse_judgment("λx:A.x : A -> A").unwrap();
        assert_eq!(j.to_string(), "λx:A.x : A -> A");
        assert_eq!(parse_judgment("Id_A(a,b) type").unwrap(), Judgment::Type(parse_ty("Id_A(a,b)").unwrap()));
        assert!(parse_judgment("x =_ : A").is_err());
    }
}
