use num_traits::{One, ToPrimitive};

use super::ast::{Ident, RawExpr};
use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result, Span};

/// Recursive-descent parser shared by the expression and script grammars.
pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub(crate) fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    pub(crate) fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        self.at(&Tok::Eof)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            span: self.span(),
            message: message.into(),
        }
    }

    pub(crate) fn expect(&mut self, t: &Tok, what: &str) -> Result<Token> {
        if self.at(t) {
            Ok(self.bump())
        } else {
            Err(self.error(format!("expected {what}, found {}", self.peek().describe())))
        }
    }

    pub(crate) fn ident(&mut self, what: &str) -> Result<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.bump().span;
                Ok(Ident::new(name, span))
            }
            other => Err(self.error(format!("expected {what}, found {}", other.describe()))),
        }
    }

    pub(crate) fn keyword(&self) -> Option<&str> {
        match self.peek() {
            Tok::Ident(s) => Some(s.as_str()),
            _ => None,
        }
    }

    pub(crate) fn nat(&mut self) -> Result<u32> {
        match self.peek().clone() {
            Tok::Num(r) if r.is_integer() => {
                let n = r
                    .to_integer()
                    .to_u32()
                    .ok_or_else(|| self.error("exponent out of range"))?;
                self.bump();
                Ok(n)
            }
            other => Err(self.error(format!("expected a natural number, found {}", other.describe()))),
        }
    }

    /// expr := ['+'|'-'] term (('+'|'-') term)*
    pub(crate) fn expr(&mut self) -> Result<RawExpr> {
        let mut items = Vec::new();
        let first_neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let t = self.term()?;
        items.push(if first_neg { RawExpr::negate(t) } else { t });
        loop {
            if self.eat(&Tok::Plus) {
                items.push(self.term()?);
            } else if self.eat(&Tok::Minus) {
                let t = self.term()?;
                items.push(RawExpr::negate(t));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            RawExpr::Sum(items)
        })
    }

    /// term := unary ('*' unary)*
    fn term(&mut self) -> Result<RawExpr> {
        let mut factors = vec![self.unary()?];
        while self.eat(&Tok::Star) {
            factors.push(self.unary()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            RawExpr::Mul(factors)
        })
    }

    fn unary(&mut self) -> Result<RawExpr> {
        if self.eat(&Tok::Minus) {
            return Ok(RawExpr::negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<RawExpr> {
        let base = self.factor()?;
        if self.eat(&Tok::Caret) {
            let n = self.nat()?;
            return Ok(match n {
                0 => RawExpr::Num(One::one()),
                1 => base,
                n => RawExpr::Pow(Box::new(base), n),
            });
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<RawExpr> {
        if let Tok::Num(r) = self.peek().clone() {
            self.bump();
            return Ok(RawExpr::Num(r));
        }
        if let Tok::Ident(name) = self.peek().clone() {
            if self.peek_at(1) == &Tok::LParen && is_function(&name) {
                return self.call(&name);
            }
        }
        let start = self.span();
        let left = self.primary()?;
        if !self.at(&Tok::Dot) {
            return Ok(left);
        }
        self.bump();
        let right = self.primary()?;
        if self.at(&Tok::Dot) {
            let mut end = self.bump().span;
            if matches!(self.peek(), Tok::Ident(_)) {
                end = self.span();
            }
            return Err(Error::ChainedDot {
                span: Span::new(start.line, start.column, chain_len(start, end)),
            });
        }
        Ok(RawExpr::dot(left, right))
    }

    /// primary := IDENT | '(' expr ')'
    fn primary(&mut self) -> Result<RawExpr> {
        match self.peek().clone() {
            Tok::Ident(_) => Ok(RawExpr::Ident(self.ident("identifier")?)),
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            other => Err(self.error(format!("expected an expression, found {}", other.describe()))),
        }
    }

    fn call(&mut self, name: &str) -> Result<RawExpr> {
        let name_span = self.bump().span;
        self.expect(&Tok::LParen, "`(`")?;
        let mut args = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            args.push(self.expr()?);
        }
        self.expect(&Tok::RParen, "`)`")?;
        let expected = if matches!(name, "q" | "h") { 1 } else { 2 };
        if args.len() != expected {
            return Err(Error::Arity {
                span: name_span,
                name: name.to_string(),
                expected,
                found: args.len(),
            });
        }
        let mut args = args.into_iter();
        let a = args.next().unwrap();
        Ok(match name {
            "q" => RawExpr::q(a),
            "b" => RawExpr::b(a, args.next().unwrap()),
            // h(x) = b(x, x.x)
            "h" => RawExpr::b(a.clone(), RawExpr::dot(a.clone(), a)),
            // con(x, y) = x.y - y.x
            "con" => {
                let c = args.next().unwrap();
                RawExpr::Sum(vec![
                    RawExpr::dot(a.clone(), c.clone()),
                    RawExpr::negate(RawExpr::dot(c, a)),
                ])
            }
            _ => unreachable!(),
        })
    }
}

fn chain_len(start: Span, end: Span) -> usize {
    if start.line == end.line && end.column >= start.column {
        end.column - start.column + end.length
    } else {
        1
    }
}

/// Names that are parsed as calls when followed by `(`.
pub fn is_function(name: &str) -> bool {
    matches!(name, "q" | "b" | "h" | "con")
}

/// Parses one expression of the DSL.
///
/// `h(e)` and `con(u, v)` are accepted as shorthands for `b(e, e.e)` and
/// `u.v - v.u`.
pub fn parse_expr(text: &str) -> Result<RawExpr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if !p.at_eof() {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> RawExpr {
        RawExpr::ident(s)
    }

    #[test]
    fn composition_defect() {
        let e = parse_expr("q(x.y) - q(x)*q(y)").unwrap();
        let expected = RawExpr::Sum(vec![
            RawExpr::q(RawExpr::dot(id("x"), id("y"))),
            RawExpr::negate(RawExpr::Mul(vec![RawExpr::q(id("x")), RawExpr::q(id("y"))])),
        ]);
        assert_eq!(e, expected);
    }

    #[test]
    fn single_identifier() {
        assert_eq!(parse_expr("x").unwrap(), id("x"));
    }

    #[test]
    fn flexible_law() {
        let e = parse_expr("(x.y).x - q(x)*y").unwrap();
        let expected = RawExpr::Sum(vec![
            RawExpr::dot(RawExpr::dot(id("x"), id("y")), id("x")),
            RawExpr::negate(RawExpr::Mul(vec![RawExpr::q(id("x")), id("y")])),
        ]);
        assert_eq!(e, expected);
    }

    #[test]
    fn unicode_synonyms() {
        assert_eq!(
            parse_expr("(x·y)·x − α*y").unwrap(),
            parse_expr("(x.y).x - alpha*y").unwrap()
        );
    }

    #[test]
    fn chained_dot_is_rejected() {
        let err = parse_expr("a.b.c").unwrap_err();
        assert!(matches!(err, Error::ChainedDot { span } if span.column == 1 && span.length == 5));
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(
            parse_expr("q(x, y)").unwrap_err(),
            Error::Arity {
                expected: 1,
                found: 2,
                ..
            }
        ));
        assert!(matches!(
            parse_expr("b(x)").unwrap_err(),
            Error::Arity {
                expected: 2,
                found: 1,
                ..
            }
        ));
    }

    #[test]
    fn syntax_error_spans_lie_in_input() {
        for bad in ["x +", "(x.y", "q(x))", "x ^ y", "2 . x", ")"] {
            let err = parse_expr(bad).unwrap_err();
            let span = err.span().expect("span");
            assert_eq!(span.line, 1, "{bad}");
            assert!(
                span.column >= 1 && span.column <= bad.chars().count() + 1,
                "{bad}: {span:?}"
            );
        }
    }

    #[test]
    fn shorthands_expand() {
        assert_eq!(parse_expr("h(x)").unwrap(), parse_expr("b(x, x.x)").unwrap());
        assert_eq!(parse_expr("con(x, y)").unwrap(), parse_expr("x.y - y.x").unwrap());
    }

    #[test]
    fn powers() {
        assert_eq!(
            parse_expr("b(x,y)^3").unwrap(),
            RawExpr::Pow(Box::new(parse_expr("b(x,y)").unwrap()), 3)
        );
        assert_eq!(parse_expr("alpha^1").unwrap(), id("alpha"));
    }
}
