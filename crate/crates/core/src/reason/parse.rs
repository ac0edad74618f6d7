//! Recursive-descent parser for the reason grammar:
//!
//! ```text
//! reason := atom postfix*
//! atom   := "rho" | ("beta"|"eta"|"zeta"|"alpha") tag? | ident
//!         | "sigma" "(" reason ")" | "tau" "(" reason "," reason ")"
//!         | "xi" "[" kind "]" "(" reasons ")" | "mu" "[" kind "]" "(" reasons ")"
//!         | "subL" "(" reason "," reason ")" | "subR" "(" reason "," reason ")"
//! postfix := "(" reason ")"                      -- r(s), left-associative
//! tag    := "@" "[" (nat ("." nat)*)? "]"
//! ```

use super::{AxiomKind, MuKind, Position, Reason, XiKind};

const KEYWORDS: &[&str] = &[
    "rho", "beta", "eta", "zeta", "alpha", "sigma", "tau", "xi", "mu", "subL", "subR",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: {constructor} takes {expected} argument(s), found {found}")]
    Arity {
        line: usize,
        column: usize,
        constructor: String,
        expected: usize,
        found: usize,
    },
}

pub fn parse_reason(text: &str) -> Result<Reason, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
    };
    let r = p.reason()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn line_col(&self, at: usize) -> (usize, usize) {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.len() - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
        (line, column)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.line_col(at);
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
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

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map(|c| format!("'{c}'"))
                .unwrap_or_else(|| "end of input".into());
            Err(self.error(format!("expected '{c}', found {found}")))
        }
    }

    fn word(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        let end = chars
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        self.pos += end;
        Some((start, &rest[..end]))
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "expected a natural number"))
    }

    fn reason(&mut self) -> Result<Reason, ParseError> {
        let mut r = self.atom()?;
        while self.eat('(') {
            let arg = self.reason()?;
            self.expect(')')?;
            r = Reason::rapp(r, arg);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Reason, ParseError> {
        let Some((start, w)) = self.word() else {
            return Err(self.error("expected a reason"));
        };
        if let Some(kind) = AxiomKind::from_name(w) {
            return Ok(match self.tag()? {
                Some(pos) => Reason::tagged(kind, pos),
                None => Reason::axiom(kind),
            });
        }
        match w {
            "rho" => Ok(Reason::Rho),
            "sigma" => {
                self.expect('(')?;
                let r = self.reason()?;
                self.expect(')')?;
                Ok(Reason::sigma(r))
            }
            "tau" | "subL" | "subR" => {
                self.expect('(')?;
                let a = self.reason()?;
                self.expect(',')?;
                let b = self.reason()?;
                self.expect(')')?;
                Ok(match w {
                    "tau" => Reason::tau(a, b),
                    "subL" => Reason::sub_l(a, b),
                    _ => Reason::sub_r(a, b),
                })
            }
            "xi" | "mu" => {
                self.expect('[')?;
                let (kstart, kname) = self
                    .word()
                    .ok_or_else(|| self.error("expected a constructor kind"))?;
                self.expect(']')?;
                let args = self.args()?;
                let (built, name) = if w == "xi" {
                    let k = XiKind::from_name(kname)
                        .ok_or_else(|| self.error_at(kstart, format!("unknown xi kind '{kname}'")))?;
                    (Reason::try_xi(k, args), format!("xi[{kname}]"))
                } else {
                    let k = MuKind::from_name(kname)
                        .ok_or_else(|| self.error_at(kstart, format!("unknown mu kind '{kname}'")))?;
                    (Reason::try_mu(k, args), format!("mu[{kname}]"))
                };
                built.map_err(|e| {
                    let (line, column) = self.line_col(start);
                    ParseError::Arity {
                        line,
                        column,
                        constructor: name,
                        expected: e.expected,
                        found: e.found,
                    }
                })
            }
            _ if KEYWORDS.contains(&w) => Err(self.error_at(start, format!("keyword '{w}' used as a name"))),
            _ if w.starts_with(|c: char| c.is_ascii_lowercase()) => Ok(Reason::var(w)),
            _ => Err(self.error_at(start, format!("reason variables must start lowercase: '{w}'"))),
        }
    }

    fn args(&mut self) -> Result<Vec<Reason>, ParseError> {
        self.expect('(')?;
        let mut out = vec![self.reason()?];
        while self.eat(',') {
            out.push(self.reason()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn tag(&mut self) -> Result<Option<Position>, ParseError> {
        if !self.eat('@') {
            return Ok(None);
        }
        self.expect('[')?;
        let mut idx = Vec::new();
        if !self.eat(']') {
            idx.push(self.nat()?);
            while self.eat('.') {
                idx.push(self.nat()?);
            }
            self.expect(']')?;
        }
        Ok(Some(Position::from(idx)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Reason {
        Reason::var(s)
    }

    #[test]
    fn rho() {
        assert_eq!(parse_reason("rho").unwrap(), Reason::Rho);
    }

    #[test]
    fn tau_of_sigma() {
        assert_eq!(
            parse_reason("tau(sigma(r),s)").unwrap(),
            Reason::tau(Reason::sigma(v("r")), v("s"))
        );
    }

    #[test]
    fn annotated_projection() {
        assert_eq!(
            parse_reason("mu[fst](xi[pair](r,s))").unwrap(),
            Reason::mu(MuKind::Fst, vec![Reason::xi(XiKind::Pair, vec![v("r"), v("s")])])
        );
    }

    #[test]
    fn tags_and_application() {
        let r = parse_reason(" tau( beta@[0.1] , eta@[] )(s)(t)").unwrap();
        let expect = Reason::rapp(
            Reason::rapp(
                Reason::tau(
                    Reason::tagged(AxiomKind::Beta, Position::from(vec![0, 1])),
                    Reason::tagged(AxiomKind::Eta, Position::root()),
                ),
                v("s"),
            ),
            v("t"),
        );
        assert_eq!(r, expect);
        assert_eq!(r.to_string(), "tau(beta@[0.1],eta@[])(s)(t)");
    }

    #[test]
    fn arity_mismatch_reports_location() {
        match parse_reason("tau(r,\n  xi[pair](r))") {
            Err(ParseError::Arity {
                line,
                column,
                expected,
                found,
                ..
            }) => {
                assert_eq!((line, column, expected, found), (2, 3, 2, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "tau(r)", "sigma", "xi[foo](r)", "Rho", "r s", "beta@[1.]", "sigma(r))"] {
            assert!(parse_reason(bad).is_err(), "{bad:?} should not parse");
        }
        let err = parse_reason("tau(r,").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, column: 7, .. }), "{err}");
    }
}
