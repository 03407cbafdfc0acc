//! A small language for exact field elements: rationals, named generators,
//! cos and sin of rational fractions of a full turn, + − × ÷ and integer powers.
//!
//! `cos(1/7)` is cos 2π/7. Offsets in parse errors are 1-based byte offsets.

mod field_spec;
mod parser;


pub use field_spec::{parse_field_spec, FieldSpec};
pub use parser::parse_element;

use crate::cyclo::{cos_element, sin_element, CycloElement};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    /// cos of the given fraction of a full turn.
    Cos(BigRational),
    Sin(BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Values of the named generators.
pub type Bindings = BTreeMap<String, CycloElement>;

fn turn_parts(q: &BigRational) -> Result<(i64, u64)> {
    use num_traits::ToPrimitive;
    let n = q.numer().to_i64();
    let d = q.denom().to_u64();
    match (n, d) {
        (Some(n), Some(d)) if d <= 1 << 20 => Ok((n, d)),
        _ => Err(Error::Invalid(format!("angle {q} is too large"))),
    }
}

impl Expr {
    pub fn eval(&self, env: &Bindings) -> Result<CycloElement> {
        Ok(match self {
            Expr::Int(n) => CycloElement::rational(&BigRational::from_integer(n.clone()), 1),
            Expr::Ident(name) => env
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("unknown name {name:?}")))?,
            Expr::Cos(q) => {
                let (n, d) = turn_parts(q)?;
                cos_element(n, d)
            }
            Expr::Sin(q) => {
                let (n, d) = turn_parts(q)?;
                sin_element(n, d)
            }
            Expr::Neg(x) => -x.eval(env)?,
            Expr::Add(x, y) => &x.eval(env)? + &y.eval(env)?,
            Expr::Sub(x, y) => &x.eval(env)? - &y.eval(env)?,
            Expr::Mul(x, y) => &x.eval(env)? * &y.eval(env)?,
            Expr::Div(x, y) => x.eval(env)?.checked_div(&y.eval(env)?)?,
            Expr::Pow(x, e) => x.eval(env)?.pow(*e)?,
        })
    }

    /// 0: sums, 1: products, 2: negation, 3: powers, 4: atoms.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }
}

fn fraction(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical form: minimal parentheses, single spaces around + and −.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) if n.is_negative() => write!(f, "({n})"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ident(s) => f.write_str(s),
            Expr::Cos(q) => write!(f, "cos({})", fraction(q)),
            Expr::Sin(q) => write!(f, "sin({})", fraction(q)),
            Expr::Neg(x) => {
                f.write_str("-")?;
                wrap(f, x, 3)
            }
            Expr::Add(x, y) | Expr::Sub(x, y) => {
                wrap(f, x, 0)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                wrap(f, y, 1)
            }
            Expr::Mul(x, y) | Expr::Div(x, y) => {
                wrap(f, x, 1)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                wrap(f, y, 2)
            }
            Expr::Pow(x, e) => {
                wrap(f, x, 4)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Parses and evaluates in one step.
pub fn evaluate(src: &str, env: &Bindings) -> Result<CycloElement> {
    parse_element(src)?.eval(env)
}
