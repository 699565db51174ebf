//! Lie-algebra computations attached to a system spec, on both sides of the
//! comparison:
//!
//!   * the symmetry side over the constants: constant matrices M for which
//!     D(Z) = Z·M extends to a well-defined derivation of the tower
//!     commuting with its derivation;
//!   * the expansion side over the coefficient field: matrices Ñ for which
//!     the first-order move taylor(Z) ↦ taylor(Z)·(I + εÑ), ε² = 0,
//!     preserves every transported entry/recovery relation.
//!
//! Both sides reduce to exact homogeneous linear systems; the bases are
//! echelon-normalized nullspaces and therefore deterministic.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, ScalarField};
use crate::poly::{Monomial, MultiPolynomial};
use crate::ratfunc::RationalFunction;
use crate::series::{check_membership_base, compute_b, taylor, taylor_matrix, TruncatedSeries};
use crate::system::SystemSpec;

/// Gap between the two truncation orders of the stability gate.
pub const STABILITY_GAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieSide {
    /// Constant symmetry matrices of the system itself.
    PicardVessiot,
    /// Coefficient-field symmetry matrices of the transported system.
    Hull,
}

#[derive(Clone, Debug)]
pub struct LieAlgebraResult {
    pub side: LieSide,
    pub field: ScalarField,
    pub dimension: usize,
    /// Echelon-normalized basis, one n×n matrix per dimension.
    pub basis: Vec<ExactMatrix>,
    /// Size of the homogeneous system that was solved.
    pub constraint_rows: usize,
    pub constraint_cols: usize,
    /// Truncation order (expansion side only).
    pub order: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub pv: LieAlgebraResult,
    pub hull: LieAlgebraResult,
    pub dimensions_equal: bool,
    /// True when additionally every constant-side basis matrix lies in the
    /// coefficient-field span of the expansion-side basis.
    pub transport_verified: bool,
    /// The two truncation orders of the stability gate.
    pub orders: (usize, usize),
}

/// Chain-rule data shared by both sides:
/// `entry[(i,j)][k]` = ∂Z_ij/∂g_k over the tower, and
/// `recovery[k][(p,q)]` = (∂G_k/∂z_pq) evaluated at z = Z.
struct Partials {
    entry: Vec<Vec<RationalFunction>>,
    recovery: Vec<Vec<RationalFunction>>,
}

fn partials(s: &SystemSpec) -> Result<Partials> {
    let n = s.n();
    let tower = s.tower();
    let gens = tower.generator_count();
    let mut entry = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut per_gen = Vec::with_capacity(gens);
            for k in 0..gens {
                per_gen.push(s.z().get(i, j).partial(tower.base_count() + k));
            }
            entry.push(per_gen);
        }
    }
    let values = s.recovery_values();
    let mut recovery = Vec::with_capacity(gens);
    for g in s.recovery() {
        let mut per_entry = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let d = g.partial(s.z_symbol_index(p, q));
                per_entry.push(d.substitute(&values)?);
            }
        }
        recovery.push(per_entry);
    }
    Ok(Partials { entry, recovery })
}

/// Rows of the constant-side constraint system, one per matrix entry (i,j),
/// each a vector of n² coefficients in the tower field: the coefficient of
/// the unknown m_{rs} in
///
///   Σ_k ∂Z_ij/∂g_k · D(g_k)  −  (Z·M)_ij,
///
/// where D(g_k) = Σ_{p,q} (∂G_k/∂z_pq)|_Z · (Z·M)_pq.
fn symmetry_rows(s: &SystemSpec) -> Result<Vec<Vec<RationalFunction>>> {
    let n = s.n();
    let p = partials(s)?;
    let gens = s.tower().generator_count();

    // recovered[k][(r,s)] = coefficient of m_{rs} in D(g_k)
    //                     = Σ_p (∂G_k/∂z_ps)|_Z · Z_pr.
    let mut recovered = Vec::with_capacity(gens);
    for k in 0..gens {
        let mut per_unknown = Vec::with_capacity(n * n);
        for r in 0..n {
            for sc in 0..n {
                let mut acc = RationalFunction::zero(s.tower().vars());
                for pi in 0..n {
                    let d = &p.recovery[k][pi * n + sc];
                    if d.is_zero() {
                        continue;
                    }
                    acc = &acc + &(d * s.z().get(pi, r));
                }
                per_unknown.push(acc);
            }
        }
        recovered.push(per_unknown);
    }

    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = Vec::with_capacity(n * n);
            for r in 0..n {
                for sc in 0..n {
                    let mut acc = RationalFunction::zero(s.tower().vars());
                    for k in 0..gens {
                        let de = &p.entry[i * n + j][k];
                        if de.is_zero() {
                            continue;
                        }
                        acc = &acc + &(de * &recovered[k][r * n + sc]);
                    }
                    if sc == j {
                        acc = &acc - s.z().get(i, r);
                    }
                    row.push(acc);
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Converts one tower-field row into rational rows by clearing denominators
/// and matching coefficients of every monomial (the unknowns are constants,
/// so each monomial yields its own condition).
fn rationalize_row(row: &[RationalFunction]) -> Vec<Vec<RationalFunction>> {
    let vars = row[0].vars().clone();
    let mut common = MultiPolynomial::one(&vars);
    for c in row {
        if c.is_zero() {
            continue;
        }
        let g = MultiPolynomial::gcd(&common, c.denominator());
        common = common.div_exact(&g).mul(c.denominator());
    }
    let cleared: Vec<MultiPolynomial> = row
        .iter()
        .map(|c| {
            if c.is_zero() {
                MultiPolynomial::zero(&vars)
            } else {
                c.numerator().mul(&common.div_exact(c.denominator()))
            }
        })
        .collect();
    let mut monomials: BTreeSet<Monomial> = BTreeSet::new();
    for p in &cleared {
        monomials.extend(p.support());
    }
    monomials
        .into_iter()
        .map(|m| {
            cleared
                .iter()
                .map(|p| RationalFunction::constant(&vars, p.coefficient(&m)))
                .collect()
        })
        .collect()
}

/// Echelon-normalized nullspace of a list of rows; an empty list of
/// (nonzero) rows means no constraints, i.e. the standard basis.
fn solve_rows(
    s: &SystemSpec,
    rows: Vec<Vec<RationalFunction>>,
    field: ScalarField,
) -> (Vec<Vec<RationalFunction>>, usize) {
    let n = s.n();
    let vars = s.tower().vars();
    let nonzero: Vec<Vec<RationalFunction>> = rows
        .into_iter()
        .filter(|row| row.iter().any(|c| !c.is_zero()))
        .collect();
    let count = nonzero.len();
    if count == 0 {
        let basis = (0..n * n)
            .map(|k| {
                let mut v = vec![RationalFunction::zero(vars); n * n];
                v[k] = RationalFunction::one(vars);
                v
            })
            .collect();
        return (basis, 0);
    }
    let m = ExactMatrix::from_rows(vars, nonzero);
    (m.nullspace(field), count)
}

fn vectors_to_matrices(s: &SystemSpec, vectors: &[Vec<RationalFunction>]) -> Vec<ExactMatrix> {
    let n = s.n();
    vectors
        .iter()
        .map(|v| {
            ExactMatrix::from_fn(s.tower().vars(), n, n, |r, c| v[r * n + c].clone())
        })
        .collect()
}

/// Constant symmetry matrices: all M over the rationals such that
/// D(Z) = Z·M extends through the recovery expressions to a derivation of
/// the tower commuting with ∂. Requires the fundamental checks to pass.
pub fn pv_lie(s: &SystemSpec) -> Result<LieAlgebraResult> {
    s.require_valid()?;
    let rows = symmetry_rows(s)?;
    let rational_rows: Vec<Vec<RationalFunction>> =
        rows.iter().flat_map(|row| rationalize_row(row)).collect();
    let (vectors, count) = solve_rows(s, rational_rows, ScalarField::Constants);
    let basis = vectors_to_matrices(s, &vectors);
    Ok(LieAlgebraResult {
        side: LieSide::PicardVessiot,
        field: ScalarField::Constants,
        dimension: basis.len(),
        basis,
        constraint_rows: count,
        constraint_cols: s.n() * s.n(),
        order: None,
    })
}

/// Series-side constraint rows at one truncation order: the same chain-rule
/// shape as `symmetry_rows`, with every ingredient pushed through the
/// universal expansion and one row per matrix entry and X-degree.
fn expansion_rows(s: &SystemSpec, order: usize) -> Result<Vec<Vec<RationalFunction>>> {
    let n = s.n();
    let tower = s.tower();
    let p = partials(s)?;
    let gens = tower.generator_count();
    let iz = taylor_matrix(s.z(), tower, order)?;

    // Expand every chain-rule ingredient once (None for zero entries).
    let expand = |e: &RationalFunction| -> Result<Option<TruncatedSeries>> {
        if e.is_zero() {
            Ok(None)
        } else {
            taylor(e, tower, order).map(Some)
        }
    };
    let mut recovery_series: Vec<Vec<Option<TruncatedSeries>>> = Vec::with_capacity(gens);
    for k in 0..gens {
        recovery_series.push(
            p.recovery[k]
                .iter()
                .map(&expand)
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut entry_series: Vec<Vec<Option<TruncatedSeries>>> = Vec::with_capacity(n * n);
    for ij in 0..n * n {
        entry_series.push(
            p.entry[ij]
                .iter()
                .map(&expand)
                .collect::<Result<Vec<_>>>()?,
        );
    }

    // recovered[k][(r,s)] = coefficient series of ñ_{rs} in D(taylor(g_k)).
    let mut recovered: Vec<Vec<TruncatedSeries>> = Vec::with_capacity(gens);
    for k in 0..gens {
        let mut per_unknown = Vec::with_capacity(n * n);
        for r in 0..n {
            for sc in 0..n {
                let mut acc = TruncatedSeries::zero(tower.vars(), order);
                for pi in 0..n {
                    if let Some(dseries) = &recovery_series[k][pi * n + sc] {
                        acc = acc.add(&dseries.mul(iz.entry(pi, r))?)?;
                    }
                }
                per_unknown.push(acc);
            }
        }
        recovered.push(per_unknown);
    }

    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut coefficient_series = Vec::with_capacity(n * n);
            for r in 0..n {
                for sc in 0..n {
                    let mut acc = TruncatedSeries::zero(tower.vars(), order);
                    for k in 0..gens {
                        if let Some(de_series) = &entry_series[i * n + j][k] {
                            acc = acc.add(&de_series.mul(&recovered[k][r * n + sc])?)?;
                        }
                    }
                    if sc == j {
                        acc = acc.sub(iz.entry(i, r))?;
                    }
                    coefficient_series.push(acc);
                }
            }
            for d in 0..=order {
                rows.push(
                    coefficient_series
                        .iter()
                        .map(|series| series.coefficient(d).clone())
                        .collect(),
                );
            }
        }
    }
    Ok(rows)
}

fn expansion_solve(
    s: &SystemSpec,
    order: usize,
) -> Result<(Vec<Vec<RationalFunction>>, usize)> {
    let rows = expansion_rows(s, order)?;
    Ok(solve_rows(s, rows, ScalarField::Functions))
}

/// Coefficient-field symmetry matrices of the transported system, solved at
/// `order` and re-solved at `order + STABILITY_GAP`; the two spaces must
/// agree. Gated on the transported matrix having base-field coefficients.
pub fn hull_lie(s: &SystemSpec, order: usize) -> Result<LieAlgebraResult> {
    let b = compute_b(s, order)?;
    let membership = check_membership_base(&b, s.tower());
    if let Some(w) = membership.witness {
        return Err(Error::Membership(format!(
            "transported matrix leaves the base field at entry ({},{}), degree {}",
            w.row + 1,
            w.col + 1,
            w.degree
        )));
    }
    let order_high = order + STABILITY_GAP;
    let (vectors, count) = expansion_solve(s, order)?;
    let (vectors_high, _) = expansion_solve(s, order_high)?;
    if vectors != vectors_high {
        return Err(Error::Unstable {
            order_low: order,
            dim_low: vectors.len(),
            order_high,
            dim_high: vectors_high.len(),
        });
    }
    let basis = vectors_to_matrices(s, &vectors);
    Ok(LieAlgebraResult {
        side: LieSide::Hull,
        field: ScalarField::Functions,
        dimension: basis.len(),
        basis,
        constraint_rows: count,
        constraint_cols: s.n() * s.n(),
        order: Some(order),
    })
}

/// Exact linear membership of every `candidates` matrix in the span of
/// `basis` over the full function field, by rank comparison.
fn span_contains(
    s: &SystemSpec,
    basis: &[ExactMatrix],
    candidates: &[ExactMatrix],
) -> bool {
    if candidates.is_empty() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let n = s.n();
    let flatten = |m: &ExactMatrix| -> Vec<RationalFunction> {
        (0..n * n).map(|k| m.get(k / n, k % n).clone()).collect()
    };
    let base_rows: Vec<Vec<RationalFunction>> = basis.iter().map(flatten).collect();
    let rank0 = ExactMatrix::from_rows(s.tower().vars(), base_rows.clone()).rank();
    candidates.iter().all(|m| {
        let mut stacked = base_rows.clone();
        stacked.push(flatten(m));
        ExactMatrix::from_rows(s.tower().vars(), stacked).rank() == rank0
    })
}

/// Runs both sides and verifies the comparison: equal dimensions, and the
/// constant-side basis embedded in the coefficient-field span of the
/// expansion-side basis.
pub fn compare_lie(s: &SystemSpec, order: usize) -> Result<ComparisonReport> {
    let pv = pv_lie(s)?;
    let hull = hull_lie(s, order)?;
    let dimensions_equal = pv.dimension == hull.dimension;
    let transport_verified = dimensions_equal && span_contains(s, &hull.basis, &pv.basis);
    Ok(ComparisonReport {
        dimensions_equal,
        transport_verified,
        orders: (order, order + STABILITY_GAP),
        pv,
        hull,
    })
}
