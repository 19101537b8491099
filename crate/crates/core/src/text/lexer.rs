use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result, Span};
use crate::expr::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Num(Rational),
    Str(String),
    Plus,
    Minus,
    Star,
    Caret,
    Dot,
    Comma,
    Semi,
    Colon,
    Eq,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Str(_) => "string".to_string(),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Dot => ".",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Eq => "=",
            Tok::Arrow => "->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Greek letters accepted as synonyms for their ASCII names.
fn greek(c: char) -> Option<&'static str> {
    Some(match c {
        'α' => "alpha",
        'β' => "beta",
        'γ' => "gamma",
        'δ' => "delta",
        'λ' => "lambda",
        'μ' => "mu",
        'ν' => "nu",
        'ξ' => "xi",
        _ => return None,
    })
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    let syntax = |line, col, len, msg: String| Error::Syntax {
        span: Span::new(line, col, len),
        message: msg,
    };

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start_col = col;
        let start = i;
        let tok = if let Some(name) = greek(c) {
            i += 1;
            Tok::Ident(name.to_string())
        } else if c.is_ascii_alphabetic() || c == '_' || c == '@' {
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            // `p/q` is a single rational literal; there is no division operator.
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[ds..i].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return Err(syntax(line, start_col, i - start, "zero denominator".into()));
                }
                Tok::Num(Rational::new(num, den))
            } else {
                Tok::Num(Rational::from_integer(num))
            }
        } else if c == '"' {
            i += 1;
            let s = i;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(syntax(line, start_col, i - start, "unterminated string".into()));
            }
            let text: String = chars[s..i].iter().collect();
            i += 1;
            Tok::Str(text)
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' | '−' => {
                    if i < chars.len() && chars[i] == '>' {
                        i += 1;
                        Tok::Arrow
                    } else {
                        Tok::Minus
                    }
                }
                '→' => Tok::Arrow,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '.' | '·' => Tok::Dot,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '=' => Tok::Eq,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                other => {
                    return Err(syntax(line, start_col, 1, format!("unexpected character `{other}`")));
                }
            }
        };
        let len = i - start;
        col += len;
        out.push(Token {
            tok,
            span: Span::new(line, start_col, len),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(line, col, 0),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greek_and_middle_dot() {
        let toks = tokenize("α·x").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("alpha".into()));
        assert_eq!(toks[1].tok, Tok::Dot);
        assert_eq!(toks[2].span, Span::new(1, 3, 1));
    }

    #[test]
    fn rational_literal_and_comment() {
        let toks = tokenize("3/4 # trailing\n-x").unwrap();
        assert_eq!(toks[0].tok, Tok::Num(Rational::new(3.into(), 4.into())));
        assert_eq!(toks[1].tok, Tok::Minus);
        assert_eq!(toks[1].span.line, 2);
    }

    #[test]
    fn arrow_vs_minus() {
        let toks = tokenize("a->b - c").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[1], Tok::Arrow);
        assert_eq!(kinds[3], Tok::Minus);
    }

    #[test]
    fn bad_character_has_span() {
        let err = tokenize("x $ y").unwrap_err();
        assert_eq!(err.span(), Some(Span::new(1, 3, 1)));
    }
}
