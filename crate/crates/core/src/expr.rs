//! The expression grammar: a small public syntax for field elements.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := ['-'] factors
//! factors := power (('*' | '/') power)*
//! power   := atom ('^' ['-'] INTEGER)?
//! atom    := INTEGER | VARIABLE | '(' expr ')'
//! ```
//!
//! There is no implicit multiplication, and exponents are integer literals
//! (negative allowed, so `x^-1` parses). Unary minus sits between the
//! additive and multiplicative levels and `^` binds tighter than everything:
//! `-1/x^2` reads as `-(1/(x^2))`. Chained `^` is rejected since an exponent
//! must be a literal. Unknown variable names are errors, not implicit new
//! symbols.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{MultiPolynomial, Variables};
use crate::ratfunc::RationalFunction;
use crate::rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Integer(BigInt),
    Variable(String),
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, i64),
}

impl Expression {
    pub fn int(n: i64) -> Self {
        Expression::Integer(BigInt::from(n))
    }

    pub fn var(name: &str) -> Self {
        Expression::Variable(name.to_string())
    }

    /// Folds `Neg(Integer(k))` into `Integer(-k)` so that hand-built trees
    /// and parsed trees compare equal modulo constant sign placement.
    pub fn normalized(&self) -> Expression {
        match self {
            Expression::Integer(_) | Expression::Variable(_) => self.clone(),
            Expression::Neg(inner) => match inner.normalized() {
                Expression::Integer(k) => Expression::Integer(-k),
                other => Expression::Neg(Box::new(other)),
            },
            Expression::Add(a, b) => {
                Expression::Add(Box::new(a.normalized()), Box::new(b.normalized()))
            }
            Expression::Sub(a, b) => {
                Expression::Sub(Box::new(a.normalized()), Box::new(b.normalized()))
            }
            Expression::Mul(a, b) => {
                Expression::Mul(Box::new(a.normalized()), Box::new(b.normalized()))
            }
            Expression::Div(a, b) => {
                Expression::Div(Box::new(a.normalized()), Box::new(b.normalized()))
            }
            Expression::Pow(a, e) => Expression::Pow(Box::new(a.normalized()), *e),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expression::Add(..) | Expression::Sub(..) => 1,
            Expression::Neg(..) => 2,
            Expression::Integer(n) if n.sign() == num_bigint::Sign::Minus => 2,
            Expression::Mul(..) | Expression::Div(..) => 3,
            Expression::Pow(..) => 4,
            Expression::Integer(_) | Expression::Variable(_) => 5,
        }
    }
}

// ---------------------------------------------------------------------------
// Tokenizer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let n: BigInt = lit.parse().expect("digit run parses");
                out.push((Tok::Int(n), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Variables,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expression::Add(Box::new(lhs), Box::new(rhs));
                }
                Some((Tok::Minus, _)) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expression::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        if let Some((Tok::Minus, _)) = self.peek() {
            self.bump();
            let inner = self.factors()?;
            return Ok(Expression::Neg(Box::new(inner)));
        }
        self.factors()
    }

    fn factors(&mut self) -> Result<Expression> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some((Tok::Star, _)) => {
                    self.bump();
                    let rhs = self.power()?;
                    lhs = Expression::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some((Tok::Slash, _)) => {
                    self.bump();
                    let rhs = self.power()?;
                    lhs = Expression::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expression> {
        let base = self.atom()?;
        if let Some((Tok::Caret, _)) = self.peek() {
            self.bump();
            let mut negative = false;
            if let Some((Tok::Minus, _)) = self.peek() {
                self.bump();
                negative = true;
            }
            let at = self.here();
            match self.bump() {
                Some((Tok::Int(n), _)) => {
                    let mut n = n;
                    if negative {
                        n = -n;
                    }
                    let e = i64::try_from(&n)
                        .map_err(|_| Error::ExponentOverflow { position: at })?;
                    return Ok(Expression::Pow(Box::new(base), e));
                }
                _ => {
                    return Err(Error::Syntax {
                        position: at,
                        message: "expected integer exponent after `^`".to_string(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expression> {
        let at = self.here();
        match self.bump() {
            Some((Tok::Int(n), _)) => Ok(Expression::Integer(n)),
            Some((Tok::Ident(name), pos)) => {
                if self.vars.index_of(&name).is_none() {
                    return Err(Error::UnknownVariable {
                        name,
                        position: pos,
                    });
                }
                Ok(Expression::Variable(name))
            }
            Some((Tok::LParen, open)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => Err(Error::Syntax {
                        position: open,
                        message: "unbalanced `(`".to_string(),
                    }),
                }
            }
            Some((_, pos)) => Err(Error::Syntax {
                position: pos,
                message: "expected integer, variable, or `(`".to_string(),
            }),
            None => Err(Error::Syntax {
                position: at,
                message: "unexpected end of input".to_string(),
            }),
        }
    }
}

/// Parses `text` against the grammar; identifiers must name a variable in
/// `vars`.
pub fn parse(text: &str, vars: &Variables) -> Result<Expression> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        end: text.len(),
    };
    let e = p.expr()?;
    if let Some((_, pos)) = p.peek() {
        return Err(Error::Syntax {
            position: *pos,
            message: "unexpected trailing input".to_string(),
        });
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Printer

struct Printed<'a>(&'a Expression);

impl fmt::Display for Printed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write(self.0, f, 0)
    }
}

/// Writes `e` assuming the context requires precedence at least `required`;
/// parentheses appear exactly when the node binds looser than that, so the
/// printed form re-parses to the same tree.
fn write(e: &Expression, f: &mut fmt::Formatter<'_>, required: u8) -> fmt::Result {
    let prec = e.precedence();
    let parens = prec < required;
    if parens {
        f.write_str("(")?;
    }
    match e {
        Expression::Integer(n) => write!(f, "{n}")?,
        Expression::Variable(v) => f.write_str(v)?,
        Expression::Neg(inner) => {
            f.write_str("-")?;
            write(inner, f, 3)?;
        }
        Expression::Add(a, b) => {
            write(a, f, 1)?;
            f.write_str(" + ")?;
            write(b, f, 2)?;
        }
        Expression::Sub(a, b) => {
            write(a, f, 1)?;
            f.write_str(" - ")?;
            write(b, f, 2)?;
        }
        Expression::Mul(a, b) => {
            write(a, f, 3)?;
            f.write_str("*")?;
            write(b, f, 4)?;
        }
        Expression::Div(a, b) => {
            write(a, f, 3)?;
            f.write_str("/")?;
            write(b, f, 4)?;
        }
        Expression::Pow(base, e) => {
            write(base, f, 5)?;
            write!(f, "^{e}")?;
        }
    }
    if parens {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printed(self).fmt(f)
    }
}

/// Minimally parenthesized rendering; `parse(print(e))` recovers `e` up to
/// `normalized`.
pub fn print(e: &Expression) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// Evaluation and conversion

/// Evaluates to an element of the rational-function field over `vars`.
pub fn to_rational_function(e: &Expression, vars: &Variables) -> Result<RationalFunction> {
    match e {
        Expression::Integer(n) => Ok(RationalFunction::constant(
            vars,
            BigRational::from_integer(n.clone()),
        )),
        Expression::Variable(name) => match vars.index_of(name) {
            Some(idx) => Ok(RationalFunction::variable(vars, idx)),
            None => Err(Error::UnknownVariable {
                name: name.clone(),
                position: 0,
            }),
        },
        Expression::Neg(inner) => Ok(-&to_rational_function(inner, vars)?),
        Expression::Add(a, b) => {
            Ok(&to_rational_function(a, vars)? + &to_rational_function(b, vars)?)
        }
        Expression::Sub(a, b) => {
            Ok(&to_rational_function(a, vars)? - &to_rational_function(b, vars)?)
        }
        Expression::Mul(a, b) => {
            Ok(&to_rational_function(a, vars)? * &to_rational_function(b, vars)?)
        }
        Expression::Div(a, b) => {
            let num = to_rational_function(a, vars)?;
            let den = to_rational_function(b, vars)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            num.try_div(&den)
        }
        Expression::Pow(base, exp) => to_rational_function(base, vars)?.pow(*exp),
    }
}

fn rational_to_expression(q: &BigRational) -> Expression {
    let num = Expression::Integer(q.numer().clone());
    if q.denom() == &BigInt::from(1) {
        num
    } else {
        Expression::Div(
            Box::new(num),
            Box::new(Expression::Integer(q.denom().clone())),
        )
    }
}

fn term_to_expression(
    vars: &Variables,
    coeff: &BigRational,
    exps: &[u32],
) -> Expression {
    debug_assert!(!coeff.is_zero());
    let mut factors: Vec<Expression> = Vec::new();
    let one = BigRational::from_integer(BigInt::from(1));
    if coeff != &one || exps.iter().all(|&e| e == 0) {
        factors.push(rational_to_expression(coeff));
    }
    for (idx, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = Expression::var(vars.name(idx));
        factors.push(if e == 1 {
            v
        } else {
            Expression::Pow(Box::new(v), e as i64)
        });
    }
    let mut it = factors.into_iter();
    let first = it.next().expect("at least one factor");
    it.fold(first, |acc, f| Expression::Mul(Box::new(acc), Box::new(f)))
}

/// Renders a polynomial as a sum of terms in descending graded-lex order,
/// with negative coefficients folded into subtractions.
pub fn poly_to_expression(p: &MultiPolynomial) -> Expression {
    if p.is_zero() {
        return Expression::int(0);
    }
    let mut acc: Option<Expression> = None;
    let terms: Vec<_> = p.terms().collect();
    for (m, c) in terms.into_iter().rev() {
        let negative = c < &BigRational::from_integer(BigInt::zero());
        let abs = if negative { -c } else { c.clone() };
        let term = term_to_expression(p.vars(), &abs, &m.0);
        acc = Some(match acc {
            None => {
                if negative {
                    Expression::Neg(Box::new(term))
                } else {
                    term
                }
            }
            Some(prev) => {
                if negative {
                    Expression::Sub(Box::new(prev), Box::new(term))
                } else {
                    Expression::Add(Box::new(prev), Box::new(term))
                }
            }
        });
    }
    acc.unwrap()
}

/// Renders a rational function; the quotient is omitted when the canonical
/// denominator is 1, and a negative leading numerator coefficient is hoisted
/// outside the quotient so that `-1/x` prints without parentheses.
pub fn rational_function_to_expression(f: &RationalFunction) -> Expression {
    if f.denominator().is_one() {
        return poly_to_expression(f.numerator());
    }
    let negative = crate::poly::is_negative(&f.numerator().leading_coefficient());
    let numerator = if negative {
        f.numerator()
            .mul_scalar(&BigRational::from_integer(BigInt::from(-1)))
    } else {
        f.numerator().clone()
    };
    let quotient = Expression::Div(
        Box::new(poly_to_expression(&numerator)),
        Box::new(poly_to_expression(f.denominator())),
    );
    if negative {
        Expression::Neg(Box::new(quotient))
    } else {
        quotient
    }
}

/// Renders and re-parses already-canonical values; used by reports.
pub fn rational_function_to_string(f: &RationalFunction) -> String {
    print(&rational_function_to_expression(f))
}
