//! Truncated formal power series in one variable X with exact
//! rational-function coefficients, and the two independent routes to the
//! transported fundamental matrix B:
//!
//!   * `solve_fundamental` — coefficient recursion for dB/dX = taylor(A)·B,
//!     B(0) = I, phrased on factorial-scaled coefficients;
//!   * `compute_B` — taylor(Z)·Z⁻¹ with Z the system's declared
//!     fundamental matrix.
//!
//! The two are kept separate on purpose: their agreement is a checked
//! property, not a shared implementation.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::expr::{rational_function_to_expression, Expression};
use crate::matrix::ExactMatrix;
use crate::poly::Variables;
use crate::ratfunc::RationalFunction;
use crate::rational::BigRational;
use crate::system::SystemSpec;
use crate::tower::DifferentialTower;

/// Polynomial truncation of a power series in X: coefficients for
/// X^0 … X^order, exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    vars: Variables,
    coeffs: Vec<RationalFunction>,
}

impl TruncatedSeries {
    pub fn new(vars: &Variables, coeffs: Vec<RationalFunction>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least X^0");
        for c in &coeffs {
            assert!(c.vars().same(vars), "coefficient from a foreign ring");
        }
        TruncatedSeries {
            vars: vars.clone(),
            coeffs,
        }
    }

    pub fn zero(vars: &Variables, order: usize) -> Self {
        Self::new(vars, vec![RationalFunction::zero(vars); order + 1])
    }

    pub fn constant(c: RationalFunction, order: usize) -> Self {
        let vars = c.vars().clone();
        let mut coeffs = vec![RationalFunction::zero(&vars); order + 1];
        coeffs[0] = c;
        Self::new(&vars, coeffs)
    }

    /// The series X itself (requires order >= 1 to be representable).
    pub fn x(vars: &Variables, order: usize) -> Self {
        assert!(order >= 1);
        let mut s = Self::zero(vars, order);
        s.coeffs[1] = RationalFunction::one(vars);
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn coefficient(&self, k: usize) -> &RationalFunction {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::new(&self.vars, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::new(&self.vars, coeffs))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.vars, self.coeffs.iter().map(|c| -c).collect())
    }

    /// Cauchy product, truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut coeffs = vec![RationalFunction::zero(&self.vars); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        Ok(Self::new(&self.vars, coeffs))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.vars, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Multiplies every coefficient by a fixed element of the coefficient
    /// field (i.e. the product with a constant series).
    pub fn mul_coefficient(&self, c: &RationalFunction) -> Self {
        Self::new(&self.vars, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// d/dX, shortening the reliable window by one.
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 1, "derivative of an order-0 truncation");
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k].scale(&BigRational::from_integer(BigInt::from(k))))
            .collect();
        Self::new(&self.vars, coeffs)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncation");
        Self::new(&self.vars, self.coeffs[..=order].to_vec())
    }

    pub fn agrees_through(&self, other: &Self, order: usize) -> bool {
        assert!(order <= self.order() && order <= other.order());
        (0..=order).all(|k| self.coeffs[k] == other.coeffs[k])
    }

    /// Renders the truncation as an expression in the coefficient variables
    /// plus a fresh series variable (conventionally "X"). The name must not
    /// collide with a coefficient variable.
    pub fn to_expression(&self, series_var: &str) -> Expression {
        assert!(
            self.vars.index_of(series_var).is_none(),
            "series variable shadows a coefficient variable"
        );
        let mut acc: Option<Expression> = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.numerator().leading_coefficient().is_negative();
            let magnitude = if negative {
                c.scale(&BigRational::from_integer(BigInt::from(-1)))
            } else {
                c.clone()
            };
            let coeff_expr = rational_function_to_expression(&magnitude);
            let power = match k {
                0 => None,
                1 => Some(Expression::var(series_var)),
                _ => Some(Expression::Pow(
                    Box::new(Expression::var(series_var)),
                    k as i64,
                )),
            };
            let term = match (magnitude.is_one(), power) {
                (_, None) => coeff_expr,
                (true, Some(p)) => p,
                (false, Some(p)) => Expression::Mul(Box::new(coeff_expr), Box::new(p)),
            };
            acc = Some(match (acc, negative) {
                (None, false) => term,
                (None, true) => Expression::Neg(Box::new(term)),
                (Some(a), false) => Expression::Add(Box::new(a), Box::new(term)),
                (Some(a), true) => Expression::Sub(Box::new(a), Box::new(term)),
            });
        }
        acc.unwrap_or_else(|| Expression::int(0))
    }
}

/// Universal expansion a ↦ Σ ∂ᵏ(a)/k! · Xᵏ, truncated. Defined for
/// single-derivation towers.
pub fn taylor(
    e: &RationalFunction,
    tower: &DifferentialTower,
    order: usize,
) -> Result<TruncatedSeries> {
    let d = tower.derivation_count();
    if d != 1 {
        return Err(Error::SingleDerivationOnly(d));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(e.clone());
    let mut derivative = e.clone();
    let mut factorial = BigInt::one();
    for k in 1..=order {
        derivative = tower.derive(&derivative, 0);
        factorial *= k;
        coeffs.push(derivative.scale(&BigRational::new(BigInt::one(), factorial.clone())));
    }
    Ok(TruncatedSeries::new(tower.vars(), coeffs))
}

/// Square matrix of truncated series, all sharing one order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeriesMatrix {
    n: usize,
    entries: Vec<TruncatedSeries>,
}

impl TruncatedSeriesMatrix {
    pub fn from_entries(n: usize, entries: Vec<TruncatedSeries>) -> Self {
        assert_eq!(entries.len(), n * n);
        assert!(n > 0);
        let order = entries[0].order();
        for e in &entries {
            assert_eq!(e.order(), order, "mixed orders in one matrix");
            assert!(e.vars().same(entries[0].vars()));
        }
        TruncatedSeriesMatrix { n, entries }
    }

    pub fn from_constant(m: &ExactMatrix, order: usize) -> Self {
        assert!(m.is_square());
        let entries = (0..m.rows() * m.cols())
            .map(|idx| {
                TruncatedSeries::constant(m.get(idx / m.cols(), idx % m.cols()).clone(), order)
            })
            .collect();
        Self::from_entries(m.rows(), entries)
    }

    pub fn identity(vars: &Variables, n: usize, order: usize) -> Self {
        Self::from_constant(&ExactMatrix::identity(vars, n), order)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.entries[0].order()
    }

    pub fn vars(&self) -> &Variables {
        self.entries[0].vars()
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.n + j]
    }

    /// The exact matrix of X^k coefficients.
    pub fn coefficient_matrix(&self, k: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.vars(), self.n, self.n, |i, j| {
            self.entry(i, j).coefficient(k).clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.n, other.n);
        let order = self.entries[0].check_order(&other.entries[0]).map(|_| self.order())?;
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = TruncatedSeries::zero(self.vars(), order);
                for k in 0..self.n {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Self::from_entries(self.n, entries))
    }

    /// Right-multiplication by a matrix over the coefficient field.
    pub fn mul_exact(&self, m: &ExactMatrix) -> Self {
        assert_eq!(self.n, m.rows());
        assert!(m.is_square());
        let order = self.order();
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = TruncatedSeries::zero(self.vars(), order);
                for k in 0..self.n {
                    acc = acc
                        .add(&self.entry(i, k).mul_coefficient(m.get(k, j)))
                        .expect("orders agree by construction");
                }
                entries.push(acc);
            }
        }
        Self::from_entries(self.n, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_entries(self.n, entries))
    }

    pub fn derivative(&self) -> Self {
        let entries = self.entries.iter().map(|e| e.derivative()).collect();
        Self::from_entries(self.n, entries)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let entries = self.entries.iter().map(|e| e.truncate(order)).collect();
        Self::from_entries(self.n, entries)
    }

    pub fn agrees_through(&self, other: &Self, order: usize) -> bool {
        assert_eq!(self.n, other.n);
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a.agrees_through(b, order))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Series inverse by coefficient recursion; requires the X^0 matrix to
    /// be invertible over the coefficient field.
    pub fn inverse(&self) -> Result<Self> {
        let order = self.order();
        let c0 = self.coefficient_matrix(0);
        let c0_inv = c0.inverse().map_err(|_| Error::SingularConstantTerm)?;
        let mut inv_coeffs: Vec<ExactMatrix> = vec![c0_inv.clone()];
        for k in 1..=order {
            let mut acc = ExactMatrix::zeros(self.vars(), self.n, self.n);
            for j in 1..=k {
                acc = acc.add(&self.coefficient_matrix(j).mul(&inv_coeffs[k - j]));
            }
            let minus_one = RationalFunction::constant(
                self.vars(),
                BigRational::from_integer(BigInt::from(-1)),
            );
            inv_coeffs.push(c0_inv.mul(&acc).scale(&minus_one));
        }
        Ok(Self::from_coefficient_matrices(&inv_coeffs))
    }

    fn from_coefficient_matrices(coeffs: &[ExactMatrix]) -> Self {
        let n = coeffs[0].rows();
        let vars = coeffs[0].vars().clone();
        let entries = (0..n * n)
            .map(|idx| {
                let series = coeffs
                    .iter()
                    .map(|m| m.get(idx / n, idx % n).clone())
                    .collect();
                TruncatedSeries::new(&vars, series)
            })
            .collect();
        Self::from_entries(n, entries)
    }
}

/// Entrywise universal expansion of an exact matrix.
pub fn taylor_matrix(
    m: &ExactMatrix,
    tower: &DifferentialTower,
    order: usize,
) -> Result<TruncatedSeriesMatrix> {
    assert!(m.is_square());
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            entries.push(taylor(m.get(i, j), tower, order)?);
        }
    }
    Ok(TruncatedSeriesMatrix::from_entries(m.rows(), entries))
}

/// Solves dB/dX = a·B, B(0) = I by the factorial-scaled coefficient
/// recursion: writing a = Σ Aₗ Xˡ/l! and B = Σ Bₘ Xᵐ/m!,
///
///   Bₖ = Σ_{l+m=k-1} (k-1)!/(l!·m!) · Aₗ·Bₘ,   B₀ = I.
pub fn solve_fundamental(a: &TruncatedSeriesMatrix) -> TruncatedSeriesMatrix {
    let order = a.order();
    let n = a.n();
    let vars = a.vars().clone();

    let mut factorials: Vec<BigInt> = Vec::with_capacity(order + 1);
    factorials.push(BigInt::one());
    for k in 1..=order {
        let next = &factorials[k - 1] * k;
        factorials.push(next);
    }
    let scale_matrix = |m: &ExactMatrix, q: BigRational| -> ExactMatrix {
        m.map(|e| e.scale(&q))
    };

    // Factorial-scaled input coefficients A_l = l!·(coefficient of X^l).
    let a_scaled: Vec<ExactMatrix> = (0..=order)
        .map(|l| {
            scale_matrix(
                &a.coefficient_matrix(l),
                BigRational::from_integer(factorials[l].clone()),
            )
        })
        .collect();

    let mut b_scaled: Vec<ExactMatrix> = vec![ExactMatrix::identity(&vars, n)];
    for k in 1..=order {
        let mut acc = ExactMatrix::zeros(&vars, n, n);
        for l in 0..k {
            let m = k - 1 - l;
            let weight = BigRational::new(
                factorials[k - 1].clone(),
                &factorials[l] * &factorials[m],
            );
            acc = acc.add(&scale_matrix(&a_scaled[l].mul(&b_scaled[m]), weight));
        }
        b_scaled.push(acc);
    }

    let plain: Vec<ExactMatrix> = b_scaled
        .iter()
        .enumerate()
        .map(|(k, m)| {
            scale_matrix(
                m,
                BigRational::new(BigInt::one(), factorials[k].clone()),
            )
        })
        .collect();
    TruncatedSeriesMatrix::from_coefficient_matrices(&plain)
}

/// The transported fundamental matrix B = taylor(Z)·Z⁻¹. Independent of
/// `solve_fundamental`; the two routes agreeing is a checked property.
pub fn compute_b(s: &SystemSpec, order: usize) -> Result<TruncatedSeriesMatrix> {
    s.require_valid()?;
    let iz = taylor_matrix(s.z(), s.tower(), order)?;
    let z_inv = s.z().inverse()?;
    Ok(iz.mul_exact(&z_inv))
}

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub passes: bool,
    pub witness: Option<MembershipWitness>,
}

/// First coefficient (entry-major, then degree) that involves a generator
/// and therefore falls outside the base field. Indices 0-based.
#[derive(Clone, Debug)]
pub struct MembershipWitness {
    pub row: usize,
    pub col: usize,
    pub degree: usize,
    pub coefficient: RationalFunction,
}

/// Checks that every series coefficient lies in the base field, i.e. is
/// free of all tower generators.
pub fn check_membership_base(
    m: &TruncatedSeriesMatrix,
    tower: &DifferentialTower,
) -> MembershipReport {
    for i in 0..m.n() {
        for j in 0..m.n() {
            for k in 0..=m.order() {
                let c = m.entry(i, j).coefficient(k);
                let violates = (tower.base_count()..tower.vars().len())
                    .any(|g| !c.is_free_of(g));
                if violates {
                    return MembershipReport {
                        passes: false,
                        witness: Some(MembershipWitness {
                            row: i,
                            col: j,
                            degree: k,
                            coefficient: c.clone(),
                        }),
                    };
                }
            }
        }
    }
    MembershipReport {
        passes: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, print, to_rational_function};
    use crate::rational::{factorial, ratio};
    use crate::system::fixtures::{exp_system, log_system, torus_system, trivial_system};

    fn rf(vars: &Variables, src: &str) -> RationalFunction {
        to_rational_function(&parse(src, vars).unwrap(), vars).unwrap()
    }

    #[test]
    fn taylor_of_inverse_x() {
        let tower = DifferentialTower::single(&[("x", "1")], &[]).unwrap();
        let vars = tower.vars();
        let s = taylor(&rf(vars, "1/x"), &tower, 3).unwrap();
        assert_eq!(s.coefficient(0), &rf(vars, "1/x"));
        assert_eq!(s.coefficient(1), &rf(vars, "-1/x^2"));
        assert_eq!(s.coefficient(2), &rf(vars, "1/x^3"));
        assert_eq!(s.coefficient(3), &rf(vars, "-1/x^4"));
    }

    #[test]
    fn taylor_of_log_generator() {
        // Computed from the definition: l + X/x - X²/(2x²) + X³/(3x³).
        let tower = DifferentialTower::single(&[("x", "1")], &[("l", "1/x")]).unwrap();
        let vars = tower.vars();
        let s = taylor(&rf(vars, "l"), &tower, 3).unwrap();
        assert_eq!(s.coefficient(0), &rf(vars, "l"));
        assert_eq!(s.coefficient(1), &rf(vars, "1/x"));
        assert_eq!(s.coefficient(2), &rf(vars, "-1/(2*x^2)"));
        assert_eq!(s.coefficient(3), &rf(vars, "1/(3*x^3)"));
    }

    #[test]
    fn taylor_is_a_ring_morphism_spot_check() {
        let tower = DifferentialTower::single(&[("x", "1")], &[("l", "1/x")]).unwrap();
        let vars = tower.vars();
        let a = rf(vars, "l^2 + x");
        let b = rf(vars, "(x + 1)/x");
        let n = 6;
        let ta = taylor(&a, &tower, n).unwrap();
        let tb = taylor(&b, &tower, n).unwrap();
        assert_eq!(taylor(&(&a + &b), &tower, n).unwrap(), ta.add(&tb).unwrap());
        assert_eq!(taylor(&(&a * &b), &tower, n).unwrap(), ta.mul(&tb).unwrap());
        // Derivation compatibility: taylor(a') = d/dX taylor(a).
        let da = tower.derive(&a, 0);
        assert!(taylor(&da, &tower, n - 1)
            .unwrap()
            .agrees_through(&ta.derivative(), n - 1));
    }

    #[test]
    fn exp_b_is_exponential_series_both_routes() {
        let s = exp_system();
        let order = 10;
        let b = compute_b(&s, order).unwrap();
        for k in 0..=order {
            let expected = RationalFunction::constant(
                s.tower().vars(),
                BigRational::new(BigInt::one(), factorial(k)),
            );
            assert_eq!(b.entry(0, 0).coefficient(k), &expected, "degree {k}");
        }
        let ia = taylor_matrix(s.a(), s.tower(), order).unwrap();
        assert_eq!(solve_fundamental(&ia), b);
    }

    #[test]
    fn ode_identity_holds_for_log_system() {
        let s = log_system();
        let order = 8;
        let b = compute_b(&s, order).unwrap();
        let ia = taylor_matrix(s.a(), s.tower(), order).unwrap();
        let lhs = b.derivative();
        let rhs = ia.mul(&b).unwrap();
        assert!(lhs.agrees_through(&rhs, order - 1));
        assert_eq!(solve_fundamental(&ia), b);
    }

    #[test]
    fn log_b_matches_closed_forms() {
        // B = [[1, x·log(1+X/x)], [0, x/(x+X)]]: geometric and log series.
        let s = log_system();
        let order = 12;
        let b = compute_b(&s, order).unwrap();
        let vars = s.tower().vars();
        for k in 0..=order {
            // b11 = 1, b21 = 0
            let expect11 = if k == 0 {
                RationalFunction::one(vars)
            } else {
                RationalFunction::zero(vars)
            };
            assert_eq!(b.entry(0, 0).coefficient(k), &expect11);
            assert!(b.entry(1, 0).coefficient(k).is_zero());
            // b12: coefficient of X^k is (-1)^(k+1)/(k·x^(k-1)) for k ≥ 1.
            let expect12 = if k == 0 {
                RationalFunction::zero(vars)
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let base = rf(vars, "1/x")
                    .pow(k as i64 - 1)
                    .unwrap()
                    .scale(&ratio(sign, k as i64));
                base
            };
            assert_eq!(b.entry(0, 1).coefficient(k), &expect12, "b12 degree {k}");
            // b22: coefficient of X^k is (-1)^k/x^k.
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let expect22 = rf(vars, "1/x").pow(k as i64).unwrap().scale(&ratio(sign, 1));
            assert_eq!(b.entry(1, 1).coefficient(k), &expect22, "b22 degree {k}");
        }
    }

    #[test]
    fn membership_holds_for_b_not_for_taylor_z() {
        let s = exp_system();
        let b = compute_b(&s, 10).unwrap();
        assert!(check_membership_base(&b, s.tower()).passes);

        let iz = taylor_matrix(s.z(), s.tower(), 10).unwrap();
        let report = check_membership_base(&iz, s.tower());
        assert!(!report.passes);
        let w = report.witness.unwrap();
        assert_eq!((w.row, w.col, w.degree), (0, 0, 0));
        assert_eq!(w.coefficient, rf(s.tower().vars(), "e"));
    }

    #[test]
    fn b_routes_agree_on_all_fixtures() {
        for s in [exp_system(), log_system(), trivial_system(), torus_system()] {
            let order = 8;
            let b = compute_b(&s, order).unwrap();
            let ia = taylor_matrix(s.a(), s.tower(), order).unwrap();
            assert_eq!(solve_fundamental(&ia), b);
            assert!(check_membership_base(&b, s.tower()).passes);
            assert!(b
                .derivative()
                .agrees_through(&ia.mul(&b).unwrap(), order - 1));
        }
    }

    #[test]
    fn series_inverse_round_trip() {
        let s = log_system();
        let b = compute_b(&s, 8).unwrap();
        let binv = b.inverse().unwrap();
        let product = b.mul(&binv).unwrap();
        let id = TruncatedSeriesMatrix::identity(s.tower().vars(), 2, 8);
        assert_eq!(product, id);
    }

    #[test]
    fn singular_constant_term_rejected() {
        let tower = DifferentialTower::single(&[("x", "1")], &[]).unwrap();
        let vars = tower.vars();
        // X·I has a zero constant-term matrix.
        let x = TruncatedSeries::x(vars, 4);
        let zero = TruncatedSeries::zero(vars, 4);
        let m = TruncatedSeriesMatrix::from_entries(2, vec![x.clone(), zero.clone(), zero, x]);
        assert!(matches!(m.inverse(), Err(Error::SingularConstantTerm)));
    }

    #[test]
    fn order_mismatch_reported() {
        let tower = DifferentialTower::single(&[("x", "1")], &[]).unwrap();
        let vars = tower.vars();
        let a = TruncatedSeries::zero(vars, 4);
        let b = TruncatedSeries::zero(vars, 5);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(4, 5))));
    }

    #[test]
    fn rendering_matches_grammar() {
        let s = exp_system();
        let b = compute_b(&s, 3).unwrap();
        let text = print(&b.entry(0, 0).to_expression("X"));
        assert_eq!(text, "1 + X + 1/2*X^2 + 1/6*X^3");

        let tower = DifferentialTower::single(&[("x", "1")], &[]).unwrap();
        let vars = tower.vars();
        let geo = taylor(&rf(vars, "1/x"), &tower, 2).unwrap();
        assert_eq!(
            print(&geo.to_expression("X")),
            "1/x - 1/x^2*X + 1/x^3*X^2"
        );
    }
}
