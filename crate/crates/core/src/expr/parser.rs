use super::Expr;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("{s:?}"),
            Tok::Sym(c) => format!("\"{c}\""),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse::<BigInt>().expect("digits");
            out.push((start + 1, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start + 1, Tok::Ident(src[start..i].to_string())));
        } else if b"+-*/^()".contains(&c) {
            i += 1;
            out.push((start + 1, Tok::Sym(c as char)));
        } else {
            let ch = src[start..].chars().next().expect("nonempty");
            return Err(Error::Parse {
                offset: start + 1,
                expected: vec!["expression".into()],
                found: format!("{ch:?}"),
            });
        }
    }
    out.push((src.len() + 1, Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T> {
        let (offset, tok) = &self.toks[self.pos];
        Err(Error::Parse {
            offset: *offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(&[&format!("\"{c}\"")])
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.power()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Tok::Int(n) = self.peek().clone() else {
            return self.error(&["integer"]);
        };
        let Some(e) = n.to_i64().filter(|e| *e <= 1 << 16) else {
            return self.error(&["exponent below 65537"]);
        };
        self.bump();
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    /// ['-'] integer ['/' integer], the argument of cos and sin.
    fn turn(&mut self) -> Result<BigRational> {
        let negative = self.eat('-');
        let Tok::Int(n) = self.peek().clone() else {
            return self.error(&["integer"]);
        };
        self.bump();
        let mut d = BigInt::from(1);
        if self.eat('/') {
            let Tok::Int(m) = self.peek().clone() else {
                return self.error(&["integer"]);
            };
            if m.is_zero() {
                return self.error(&["nonzero denominator"]);
            }
            self.bump();
            d = m;
        }
        let q = BigRational::new(n, d);
        Ok(if negative { -q } else { q })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) if name == "cos" || name == "sin" => {
                self.bump();
                self.expect('(')?;
                let q = self.turn()?;
                self.expect(')')?;
                Ok(if name == "cos" { Expr::Cos(q) } else { Expr::Sin(q) })
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr::Ident(name))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.error(&["integer", "name", "\"cos(\"", "\"sin(\"", "\"(\""]),
        }
    }
}

/// expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
/// unary := ['-'] power; power := atom ['^' ['-'] integer];
/// atom := integer | name | cos(turn) | sin(turn) | '(' expr ')'.
pub fn parse_element(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.error(&["operator", "end of input"]);
    }
    Ok(e)
}
