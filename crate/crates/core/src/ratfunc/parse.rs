//! Reader for the weight-expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | factor
//! factor := base ('^' nonneg-integer)?
//! base   := integer | variable | '(' expr ')'
//! ```
//!
//! A leading unary minus is accepted so that every canonical print (which may
//! start with `-`) reads back.

use num_bigint::BigInt;

use super::{RatFuncError, RationalFunction};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, RatFuncError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(RatFuncError::Syntax { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, RatFuncError> {
        Err(RatFuncError::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, RatFuncError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add_ref(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub_ref(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, RatFuncError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul_ref(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div_ref(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, RatFuncError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg_ref());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<RationalFunction, RatFuncError> {
        let b = self.base()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.at += 1;
                    let e: i64 = e
                        .try_into()
                        .map_err(|_| RatFuncError::Syntax { pos: self.pos(), msg: "exponent too large".into() })?;
                    return b.pow(e);
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(b)
    }

    fn base(&mut self) -> Result<RationalFunction, RatFuncError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(RationalFunction::from_integer(n))
            }
            Some(Tok::Ident(v)) => {
                self.at += 1;
                Ok(RationalFunction::var(&v))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression into canonical form.
pub fn parse(text: &str) -> Result<RationalFunction, RatFuncError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> String {
        parse(t).unwrap().to_string()
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(s("0"), "0");
        assert_eq!(s("2/4"), "(1)/(2)");
        assert_eq!(s("x/x"), "1");
        assert_eq!(s("x^2+y^2"), "x^2+y^2");
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(s("1-x"), "-x+1");
        assert_eq!(s("-x^2"), "-x^2");
        assert_eq!(s("2*(x+1)^2"), "2*x^2+4*x+2");
        assert_eq!(s("a/b/c"), "(a)/(b*c)");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x + * y") {
            Err(RatFuncError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("1/(x-x)"), Err(RatFuncError::DivisionByZero)));
        assert!(parse("2x").is_err());
        assert!(parse("x^-1").is_err());
        assert!(parse("(x").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for t in ["y/(x^2+y^2)", "(x^3+x*y^2+1)^2/(3*x-y)", "-7/3", "q^-0"] {
            if let Ok(v) = parse(t) {
                assert_eq!(parse(&v.to_string()).unwrap(), v, "{t}");
            }
        }
    }
}
