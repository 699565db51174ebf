//! Rational functions in canonical form.
//!
//! Invariants: the denominator is nonzero and monic in graded lex order,
//! gcd(numerator, denominator) = 1, and zero is represented as 0/1. Equality
//! of the canonical components is therefore equality in the field.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{MultiPolynomial, Variables};
use crate::rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPolynomial,
    den: MultiPolynomial,
}

impl RationalFunction {
    /// Canonicalizing constructor; fails only when `den` is the zero polynomial.
    pub fn new(num: MultiPolynomial, den: MultiPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MultiPolynomial, den: MultiPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                num,
                den: MultiPolynomial::one(den.vars()),
            };
        }
        if den.is_constant() {
            let c = den.constant_value();
            let inv = BigRational::one() / c;
            return RationalFunction {
                num: num.mul_scalar(&inv),
                den: MultiPolynomial::one(den.vars()),
            };
        }
        if num.is_constant() {
            // Coprime already; only the monic scaling remains.
            let lc = den.leading_coefficient();
            let inv = BigRational::one() / lc;
            return RationalFunction {
                num: num.mul_scalar(&inv),
                den: den.mul_scalar(&inv),
            };
        }
        let g = MultiPolynomial::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = BigRational::one() / lc;
            RationalFunction {
                num: num.mul_scalar(&inv),
                den: den.mul_scalar(&inv),
            }
        }
    }

    // Caller guarantees the fraction is already in lowest terms with a monic
    // denominator; canonicality is covered by property tests, not asserts,
    // because a gcd per arithmetic op would dominate the runtime.
    fn from_reduced(num: MultiPolynomial, den: MultiPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        debug_assert!(den.leading_coefficient().is_one());
        debug_assert!(!num.is_zero() || den.is_one());
        RationalFunction { num, den }
    }

    pub fn from_poly(p: MultiPolynomial) -> Self {
        let one = MultiPolynomial::one(p.vars());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(vars: &Variables) -> Self {
        Self::from_poly(MultiPolynomial::zero(vars))
    }

    pub fn one(vars: &Variables) -> Self {
        Self::from_poly(MultiPolynomial::one(vars))
    }

    pub fn constant(vars: &Variables, c: BigRational) -> Self {
        Self::from_poly(MultiPolynomial::constant(vars, c))
    }

    pub fn variable(vars: &Variables, idx: usize) -> Self {
        Self::from_poly(MultiPolynomial::variable(vars, idx))
    }

    pub fn vars(&self) -> &Variables {
        self.num.vars()
    }

    pub fn numerator(&self) -> &MultiPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in the scalar field (no variables at all).
    pub fn is_rational_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Scalar value; panics unless `is_rational_constant`.
    pub fn rational_value(&self) -> BigRational {
        assert!(self.is_rational_constant(), "not a scalar");
        self.num.constant_value() / self.den.constant_value()
    }

    /// True when variable `idx` appears in neither component.
    pub fn is_free_of(&self, idx: usize) -> bool {
        self.num.is_free_of(idx) && self.den.is_free_of(idx)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading_coefficient();
        let inv = BigRational::one() / lc;
        Ok(Self::from_reduced(
            self.den.mul_scalar(&inv),
            self.num.mul_scalar(&inv),
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Multiplies by a scalar. Scalars are units, so the reduced form is
    /// preserved without another gcd pass.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        Self::from_reduced(self.num.mul_scalar(c), self.den.clone())
    }

    /// Integer power; negative exponents invert first (zero base fails).
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            let inv = self.inverse()?;
            return inv.pow(-e);
        }
        if e == 0 {
            return Ok(Self::one(self.vars()));
        }
        let e = u32::try_from(e).map_err(|_| Error::ExponentOverflow { position: 0 })?;
        // num and den stay coprime under powers, and a monic den stays monic.
        Ok(Self::from_reduced(self.num.pow(e), self.den.pow(e)))
    }

    /// Formal partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> Self {
        let dn = self.num.partial(idx);
        let dd = self.den.partial(idx);
        if dd.is_zero() {
            return Self::normalize(dn, self.den.clone());
        }
        // f' = N'/D − (N/D)·(D'/D), assembled from reduced pieces. The naive
        // (N'D − ND')/D² form needs one gcd against D², which blows up the
        // remainder sequences as D accumulates repeated factors under
        // iterated differentiation; here every gcd runs against divisors
        // of D itself.
        let first = Self::normalize(dn, self.den.clone());
        let log_den = Self::normalize(dd, self.den.clone());
        &first - &(self * &log_den)
    }

    /// Evaluates under a variable substitution into another ring; `values`
    /// must supply one element per variable of `self`, all sharing a context.
    pub fn substitute(&self, values: &[RationalFunction]) -> Result<Self> {
        assert_eq!(values.len(), self.vars().len(), "substitution arity");
        let target = values
            .first()
            .map(|v| v.vars().clone())
            .unwrap_or_else(|| self.vars().clone());
        let num = eval_poly(&self.num, values, &target)?;
        let den = eval_poly(&self.den, values, &target)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.try_div(&den)
    }
}

/// Evaluates a polynomial at rational-function arguments.
fn eval_poly(
    p: &MultiPolynomial,
    values: &[RationalFunction],
    target: &Variables,
) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero(target);
    for (m, c) in p.terms() {
        let mut term = RationalFunction::constant(target, c.clone());
        for (idx, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            term = &term * &values[idx].pow(e as i64)?;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Reduced addition: with g = gcd(D1, D2), t = N1·(D2/g) + N2·(D1/g)
        // and h = gcd(t, g), the fraction (t/h) / ((D1/g)·(D2/h)) is already
        // in lowest terms, and every gcd runs on divisors of the inputs
        // instead of on the full-size cross products.
        let g = MultiPolynomial::gcd(&self.den, &other.den);
        if g.is_one() {
            // Coprime denominators: a common factor of the sum and D1·D2
            // would divide one Di and hence the other side's cross term,
            // contradicting the inputs being reduced.
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return RationalFunction::zero(self.vars());
            }
            return RationalFunction::from_reduced(num, self.den.mul(&other.den));
        }
        let u = self.den.div_exact(&g);
        let v = other.den.div_exact(&g);
        let t = self.num.mul(&v).add(&other.num.mul(&u));
        if t.is_zero() {
            return RationalFunction::zero(self.vars());
        }
        let h = MultiPolynomial::gcd(&t, &g);
        let (num, d2) = if h.is_one() {
            (t, other.den.clone())
        } else {
            (t.div_exact(&h), other.den.div_exact(&h))
        };
        RationalFunction::from_reduced(num, u.mul(&d2))
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, other: &RationalFunction) -> RationalFunction {
        self + &(-other)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero(self.vars());
        }
        // Cross-reduction keeps the product in lowest terms without a gcd
        // over the full-size numerator and denominator.
        let g1 = MultiPolynomial::gcd(&self.num, &other.den);
        let g2 = MultiPolynomial::gcd(&other.num, &self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1) };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.div_exact(&g1) };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.div_exact(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2) };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        // den is a product of monic quotients of monic polynomials: monic.
        RationalFunction::from_reduced(num, den)
    }
}

/// Panics on division by zero; use `try_div` where zero is a data condition.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, other: &RationalFunction) -> RationalFunction {
        self.try_div(other).expect("division by zero")
    }
}
