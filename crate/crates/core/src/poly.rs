//! Multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are kept in a map from exponent vectors to nonzero coefficients,
//! ordered by graded lexicographic order (total degree first, then
//! lexicographic with the first declared variable strongest). Every public
//! constructor and operation maintains that no zero coefficient is stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::BigRational;

/// An ordered, immutable variable context shared by all values of one ring.
#[derive(Clone, Debug)]
pub struct Variables(Arc<Vec<String>>);

impl Variables {
    /// Panics if names repeat or are empty strings.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in v.iter().enumerate() {
            assert!(!n.is_empty(), "empty variable name");
            assert!(
                !v[..i].contains(n),
                "duplicate variable name `{n}` in context"
            );
        }
        Variables(Arc::new(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn same(&self, other: &Variables) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for Variables {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}
impl Eq for Variables {}

/// Exponent vector; one entry per context variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise division; `None` when not divisible.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolynomial {
    vars: Variables,
    // invariant: no zero coefficients
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPolynomial {
    pub fn zero(vars: &Variables) -> Self {
        MultiPolynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Variables, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        MultiPolynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn one(vars: &Variables) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn variable(vars: &Variables, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(vars.len(), idx), BigRational::one());
        MultiPolynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(vars: &Variables, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in iter {
            assert_eq!(m.0.len(), vars.len(), "monomial arity mismatch");
            if c.is_zero() {
                continue;
            }
            let entry = terms.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPolynomial { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// Constant value when `is_constant`; panics otherwise.
    pub fn constant_value(&self) -> BigRational {
        if self.terms.is_empty() {
            return BigRational::zero();
        }
        assert!(self.is_constant(), "not a constant polynomial");
        self.terms.values().next().unwrap().clone()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().is_one()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Leading term in graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.leading().map(|(m, _)| m.total_degree())
    }

    /// Highest exponent of variable `idx`; `None` on the zero polynomial.
    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    /// True when variable `idx` never appears.
    pub fn is_free_of(&self, idx: usize) -> bool {
        self.terms.keys().all(|m| m.0[idx] == 0)
    }

    fn assert_same_vars(&self, other: &Self) {
        assert!(
            self.vars.same(&other.vars),
            "mixed variable contexts: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPolynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        MultiPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPolynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> Self {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut lowered = m.clone();
            lowered.0[idx] = e - 1;
            let coeff = c * BigRational::from_integer(BigInt::from(e));
            let entry = terms.entry(lowered).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPolynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Scales so the graded-lex leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = BigRational::one() / lc.clone();
                self.mul_scalar(&inv)
            }
        }
    }

    /// Exact quotient `self / divisor`; panics when the division is not exact
    /// (which would indicate an internal algorithmic bug).
    pub fn div_exact(&self, divisor: &Self) -> Self {
        self.assert_same_vars(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero(&self.vars);
        }
        if divisor.is_one() {
            return self.clone();
        }
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut qterms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm
                .div(&dm)
                .expect("non-exact polynomial division (leading monomial)");
            let qc = rc / dc.clone();
            let single = MultiPolynomial {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(qm.clone(), qc.clone())]),
            };
            rem = rem.sub(&single.mul(divisor));
            let entry = qterms.entry(qm).or_insert_with(BigRational::zero);
            *entry += qc;
        }
        qterms.retain(|_, c| !c.is_zero());
        MultiPolynomial {
            vars: self.vars.clone(),
            terms: qterms,
        }
    }

    /// Componentwise minimum exponent across all terms (zero poly → ones).
    fn monomial_content(&self) -> Monomial {
        let n = self.vars.len();
        let mut min = vec![u32::MAX; n];
        for m in self.terms.keys() {
            for (lo, e) in min.iter_mut().zip(&m.0) {
                *lo = (*lo).min(*e);
            }
        }
        if self.terms.is_empty() {
            return Monomial::one(n);
        }
        Monomial(min)
    }

    fn div_monomial(&self, m: &Monomial) -> Self {
        MultiPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m).expect("monomial not a factor"), c.clone()))
                .collect(),
        }
    }

    /// Rescales by a nonzero rational so every coefficient is an integer,
    /// the integers have gcd 1, and the graded-lex leading coefficient is
    /// positive. Polynomial gcds are only defined up to such units, and the
    /// remainder sequences below compound a scalar factor every round —
    /// polynomial content stripping never sees it because constants are
    /// units — so this normalization is what keeps the coefficient integers
    /// (and hence every rational reduction) small.
    fn int_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        let mut out = if den_lcm == num_gcd {
            self.clone()
        } else {
            self.mul_scalar(&BigRational::new(den_lcm, num_gcd))
        };
        if out.leading_coefficient().is_negative() {
            out = out.neg();
        }
        out
    }

    /// Greatest common divisor, normalized monic in graded lex order.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        a.assert_same_vars(b);
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one(&a.vars);
        }
        // Strip the common monomial factor first; it is cheap and handles
        // the ubiquitous pure-power denominators outright.
        let ma = a.monomial_content();
        let mb = b.monomial_content();
        let shared = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| *x.min(y)).collect());
        let a0 = a.div_monomial(&ma).int_primitive();
        let b0 = b.div_monomial(&mb).int_primitive();
        let core = Self::gcd_stripped(&a0, &b0);
        core.mul_monomial(&shared).monic()
    }

    fn gcd_stripped(a: &Self, b: &Self) -> Self {
        if a.is_constant() || b.is_constant() {
            return Self::one(&a.vars);
        }
        if a == b {
            return a.monic();
        }
        let active: Vec<usize> = (0..a.vars.len())
            .filter(|&i| !a.is_free_of(i) || !b.is_free_of(i))
            .collect();
        debug_assert!(!active.is_empty());
        if active.len() == 1 {
            return Self::univariate_gcd(a, b, active[0]);
        }
        // Coprime inputs are the overwhelmingly common case and the worst
        // one for remainder sequences, so try to certify that answer first:
        // the gcd is constant iff its degree in every active variable is
        // zero, one cheap specialized univariate gcd per variable.
        if active
            .iter()
            .all(|&v| Self::specialized_gcd_is_constant(a, b, v))
        {
            return Self::one(&a.vars);
        }
        // Main variable: smallest combined degree keeps the recursion shallow.
        let main = *active
            .iter()
            .min_by_key(|&&i| {
                let da = a.degree_in(i).unwrap_or(0) as u64;
                let db = b.degree_in(i).unwrap_or(0) as u64;
                (da.max(db), i as u64)
            })
            .unwrap();
        let (cont_a, pp_a) = a.content_and_primitive(main);
        let (cont_b, pp_b) = b.content_and_primitive(main);
        let cont = Self::gcd(&cont_a, &cont_b);

        // Collins subresultant pseudo-remainder sequence in `main`. Each
        // pseudo-remainder is divisible by the known factor g·h^δ, so the
        // loop needs no content gcds at all — taking the content of every
        // remainder instead recurses into a multiplicative tree of
        // lower-variate gcds — and dividing by it keeps coefficient sizes
        // determinant-bounded rather than compounding per round.
        let (mut f, mut gp) = if a.degree_in(main).unwrap_or(0) >= b.degree_in(main).unwrap_or(0) {
            (pp_a, pp_b)
        } else {
            (pp_b, pp_a)
        };
        // The primitive parts share no factor free of `main`, so proving
        // their gcd has `main`-degree zero proves them coprime outright.
        if gp.degree_in(main).unwrap_or(0) > 0
            && Self::specialized_gcd_is_constant(&f, &gp, main)
        {
            return cont.monic();
        }
        let mut g = Self::one(&a.vars);
        let mut h = Self::one(&a.vars);
        loop {
            let dg = gp.degree_in(main).unwrap_or(0);
            if dg == 0 {
                // A primitive polynomial of main-degree 0 is a unit at this
                // level: the primitive parts are coprime.
                return cont.monic();
            }
            let df = f.degree_in(main).unwrap_or(0);
            let delta = df - dg;
            let r = Self::prem(&f, &gp, main);
            if r.is_zero() {
                let (_, pp) = gp.content_and_primitive(main);
                return cont.mul(&pp).monic();
            }
            if r.degree_in(main).unwrap_or(0) == 0 {
                // The remainder sequence bottomed out in a nonzero element
                // free of `main`: the primitive parts are coprime.
                return cont.monic();
            }
            let divisor = g.mul(&h.pow(delta));
            f = gp;
            gp = r.div_exact(&divisor);
            let (_, lc) = f.leading_in(main);
            h = match delta {
                0 => h,
                1 => lc.clone(),
                d => lc.pow(d).div_exact(&h.pow(d - 1)),
            };
            g = lc;
        }
    }

    /// Content (gcd of coefficients w.r.t. `main`) and primitive part, both
    /// in integer-primitive form, so `content * primitive` equals `self`
    /// only up to a nonzero rational unit. (Every caller treats the pieces
    /// independently and is unit-insensitive.)
    fn content_and_primitive(&self, main: usize) -> (Self, Self) {
        let coeffs = self.coefficients_in(main);
        let mut cont = Self::zero(&self.vars);
        for (_, c) in &coeffs {
            cont = Self::gcd(&cont, c);
            if cont.is_one() {
                break;
            }
        }
        if cont.is_zero() {
            return (Self::zero(&self.vars), Self::zero(&self.vars));
        }
        let cont = cont.int_primitive();
        let pp = self.div_exact(&cont).int_primitive();
        (cont, pp)
    }

    /// Coefficients of powers of `main`, each a polynomial free of `main`.
    fn coefficients_in(&self, main: usize) -> Vec<(u32, Self)> {
        let mut by_deg: BTreeMap<u32, BTreeMap<Monomial, BigRational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[main];
            let mut rest = m.clone();
            rest.0[main] = 0;
            by_deg
                .entry(e)
                .or_default()
                .insert(rest, c.clone());
        }
        by_deg
            .into_iter()
            .map(|(e, terms)| {
                (
                    e,
                    MultiPolynomial {
                        vars: self.vars.clone(),
                        terms,
                    },
                )
            })
            .collect()
    }

    fn leading_in(&self, main: usize) -> (u32, Self) {
        let d = self.degree_in(main).expect("zero polynomial");
        let terms: BTreeMap<Monomial, BigRational> = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[main] == d)
            .map(|(m, c)| {
                let mut rest = m.clone();
                rest.0[main] = 0;
                (rest, c.clone())
            })
            .collect();
        (
            d,
            MultiPolynomial {
                vars: self.vars.clone(),
                terms,
            },
        )
    }

    /// Pseudo-remainder of `f` by `g` in variable `main` with the exact
    /// classical premultiplier: returns lc(g)^(δ+1)·f mod g for
    /// δ = deg(f) − deg(g) ≥ 0. The subresultant bookkeeping in
    /// `gcd_stripped` relies on that exact power, so when the degree drops
    /// by more than one in a round the missing factors are multiplied back
    /// in at the end.
    fn prem(f: &Self, g: &Self, main: usize) -> Self {
        let dg = g.degree_in(main).expect("zero divisor");
        let df = f.degree_in(main).expect("pseudo-remainder of zero");
        debug_assert!(df >= dg);
        let (_, lcg) = g.leading_in(main);
        let mut r = f.clone();
        let mut budget = df - dg + 1;
        while !r.is_zero() {
            let dr = r.degree_in(main).unwrap_or(0);
            if dr < dg {
                break;
            }
            let (_, lcr) = r.leading_in(main);
            let mut shift = Monomial::one(f.vars.len());
            shift.0[main] = dr - dg;
            r = r.mul(&lcg).sub(&g.mul(&lcr).mul_monomial(&shift));
            budget -= 1;
        }
        if !r.is_zero() {
            for _ in 0..budget {
                r = r.mul(&lcg);
            }
        }
        r
    }

    /// Coefficient vector of `self` viewed as univariate in `var`, indexed
    /// by exponent; every other variable must be absent.
    fn univariate_coeffs(&self, var: usize) -> Vec<BigRational> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut v = vec![BigRational::zero(); d + 1];
        for (m, c) in &self.terms {
            debug_assert!(m.0.iter().enumerate().all(|(i, &e)| i == var || e == 0));
            v[m.0[var] as usize] = c.clone();
        }
        v
    }

    /// Univariate gcd via an integer primitive remainder sequence.
    fn univariate_gcd(a: &Self, b: &Self, var: usize) -> Self {
        let f = int_prs_last(
            int_coeffs(&a.univariate_coeffs(var)),
            int_coeffs(&b.univariate_coeffs(var)),
        );
        let dd = match int_deg(&f) {
            None => return Self::zero(&a.vars),
            Some(d) => d,
        };
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        let nvars = a.vars.len();
        for (e, c) in f.iter().enumerate().take(dd + 1) {
            if c.is_zero() {
                continue;
            }
            let mut m = Monomial::one(nvars);
            m.0[var] = e as u32;
            terms.insert(m, BigRational::from_integer(c.clone()));
        }
        let p = MultiPolynomial {
            vars: a.vars.clone(),
            terms,
        };
        p.monic()
    }

    /// Integer-content-free description useful in tests and debugging.
    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// Fixed specialization points for the coprimality probe. Variable `i`
    /// on retry `attempt` evaluates to a small prime; the table is fixed so
    /// identical inputs take identical paths on every run.
    fn probe_points(nvars: usize, attempt: usize) -> Vec<BigInt> {
        const POINTS: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
        (0..nvars)
            .map(|i| BigInt::from(POINTS[(i + 5 * attempt) % POINTS.len()]))
            .collect()
    }

    /// Univariate polynomial in `main` obtained by evaluating every other
    /// variable at `points[i]`, as a coefficient vector indexed by exponent.
    fn specialize_except(&self, main: usize, points: &[BigInt]) -> Vec<BigRational> {
        let d = self.degree_in(main).unwrap_or(0) as usize;
        let mut out = vec![BigRational::zero(); d + 1];
        for (m, c) in &self.terms {
            let mut scale = BigInt::one();
            for (i, &e) in m.0.iter().enumerate() {
                if i != main {
                    for _ in 0..e {
                        scale *= &points[i];
                    }
                }
            }
            out[m.0[main] as usize] += c * BigRational::from_integer(scale);
        }
        out
    }

    /// Tries to certify that gcd(`a`, `b`) has degree zero in `main` by
    /// specializing every other variable at fixed points and taking the
    /// cheap univariate gcd downstairs. When the leading coefficient of
    /// either input survives the evaluation, the specialized image of the
    /// true gcd keeps its `main`-degree and divides the univariate gcd, so
    /// a constant result downstairs proves degree zero upstairs. Returns
    /// `false` for "no certificate found", never "not coprime".
    fn specialized_gcd_is_constant(a: &Self, b: &Self, main: usize) -> bool {
        let (_, lc_a) = a.leading_in(main);
        let (_, lc_b) = b.leading_in(main);
        for attempt in 0..4 {
            let pts = Self::probe_points(a.vars.len(), attempt);
            let la = lc_a.specialize_except(main, &pts);
            let lb = lc_b.specialize_except(main, &pts);
            if la[0].is_zero() && lb[0].is_zero() {
                continue;
            }
            let ua = a.specialize_except(main, &pts);
            let ub = b.specialize_except(main, &pts);
            let last = int_prs_last(int_coeffs(&ua), int_coeffs(&ub));
            if int_deg(&last) == Some(0) {
                return true;
            }
        }
        false
    }
}

/// Clears denominators and strips the integer content, in place of exact
/// rational arithmetic for the univariate remainder sequences.
fn int_coeffs(cs: &[BigRational]) -> Vec<BigInt> {
    let mut dens = BigInt::one();
    for c in cs {
        dens = dens.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = cs
        .iter()
        .map(|c| {
            let scaled = c * BigRational::from_integer(dens.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    primitive_int(&mut v);
    v
}

fn primitive_int(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in v.iter() {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in v.iter_mut() {
        *c /= &g;
    }
}

fn int_deg(v: &[BigInt]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn prem_int(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let dg = int_deg(g).unwrap();
    let lcg = g[dg].clone();
    let mut r = f.to_vec();
    loop {
        let dr = match int_deg(&r) {
            None => return r,
            Some(d) => d,
        };
        if dr < dg {
            return r;
        }
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lcg;
        }
        for k in 0..=dg {
            r[dr - dg + k] -= &lcr * &g[k];
        }
        debug_assert!(int_deg(&r).map_or(true, |d| d < dr));
    }
}

/// Last nonzero element of the integer primitive remainder sequence; the
/// gcd of the inputs up to a rational unit.
fn int_prs_last(fa: Vec<BigInt>, fb: Vec<BigInt>) -> Vec<BigInt> {
    let (mut f, mut g) = if int_deg(&fa) >= int_deg(&fb) {
        (fa, fb)
    } else {
        (fb, fa)
    };
    loop {
        if int_deg(&g).is_none() {
            return f;
        }
        let mut r = prem_int(&f, &g);
        if int_deg(&r).is_none() {
            return g;
        }
        primitive_int(&mut r);
        f = g;
        g = r;
    }
}

/// Signed helper retained for printing: true when the rational is negative.
pub fn is_negative(q: &BigRational) -> bool {
    q.is_negative()
}
