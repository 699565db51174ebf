//! Dense matrices over the rational-function field, with exact Gaussian
//! elimination. Pivot selection is the first nonzero entry in column order,
//! so reduced forms — and therefore nullspace bases — are deterministic.

use crate::error::{Error, Result};
use crate::poly::Variables;
use crate::ratfunc::RationalFunction;

/// Tags which scalar field a linear-algebra computation runs over. The
/// arithmetic is identical; the tag documents intent and lets callers assert
/// that constant-field systems really have constant entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarField {
    /// Scalars only (the constant field, represented by the rationals).
    Constants,
    /// The full rational-function field of the ambient variable context.
    Functions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    vars: Variables,
    entries: Vec<RationalFunction>, // row-major, rows*cols
}

impl ExactMatrix {
    pub fn zeros(vars: &Variables, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries: vec![RationalFunction::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Variables, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            *m.get_mut(i, i) = RationalFunction::one(vars);
        }
        m
    }

    pub fn from_rows(vars: &Variables, rows: Vec<Vec<RationalFunction>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for e in row {
                assert!(e.vars().same(vars), "entry from a different ring");
                entries.push(e);
            }
        }
        ExactMatrix {
            rows: r,
            cols: c,
            vars: vars.clone(),
            entries,
        }
    }

    pub fn from_fn<F>(vars: &Variables, rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> RationalFunction,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut RationalFunction {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&RationalFunction) -> RationalFunction,
    {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().map(|e| f(e)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.vars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(&self.vars, self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(&self.vars, self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Self::from_fn(&self.vars, self.rows, other.cols, |i, j| {
            let mut acc = RationalFunction::zero(&self.vars);
            for k in 0..self.cols {
                let term = self.get(i, k) * other.get(k, j);
                acc = &acc + &term;
            }
            acc
        })
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.map(|e| e * c)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row-echelon form and the pivot column list.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let Some(p) = (next_row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(next_row, p);
            let inv = m
                .get(next_row, col)
                .inverse()
                .expect("pivot known nonzero");
            for j in col..m.cols {
                let v = m.get(next_row, j) * &inv;
                *m.get_mut(next_row, j) = v;
            }
            for i in 0..m.rows {
                if i == next_row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(next_row, j));
                    *m.get_mut(i, j) = v;
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right nullspace: the basis vectors, stacked as
    /// rows, form a reduced row-echelon matrix, so the output is the unique
    /// echelon basis of the solution space and is deterministic.
    ///
    /// With `ScalarField::Constants` every entry must already be a scalar;
    /// elimination then stays within the scalars, so the basis does too.
    pub fn nullspace(&self, field: ScalarField) -> Vec<Vec<RationalFunction>> {
        if field == ScalarField::Constants {
            assert!(
                self.entries.iter().all(|e| e.is_rational_constant()),
                "constant-field nullspace requires scalar entries"
            );
        }
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![RationalFunction::zero(&self.vars); self.cols];
            v[f] = RationalFunction::one(&self.vars);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        let (canon, _) = Self::from_rows(&self.vars, basis).rref();
        (0..canon.rows)
            .map(|i| canon.row(i).to_vec())
            .collect()
    }

    /// Determinant by fraction-aware elimination (pivot product with sign).
    pub fn determinant(&self) -> RationalFunction {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return RationalFunction::one(&self.vars);
        }
        let mut m = self.clone();
        let mut det = RationalFunction::one(&self.vars);
        let mut negate = false;
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return RationalFunction::zero(&self.vars);
            };
            if p != col {
                m.swap_rows(col, p);
                negate = !negate;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("pivot known nonzero");
            for i in col + 1..n {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col) * &inv;
                for j in col..n {
                    let v = m.get(i, j) - &(&factor * m.get(col, j));
                    *m.get_mut(i, j) = v;
                }
            }
        }
        if negate {
            -&det
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        // Augment with the identity and run Gauss-Jordan.
        let mut aug = Self::zeros(&self.vars, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.get_mut(i, j) = self.get(i, j).clone();
            }
            *aug.get_mut(i, n + i) = RationalFunction::one(&self.vars);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return Err(Error::SingularMatrix);
        }
        Ok(Self::from_fn(&self.vars, n, n, |i, j| r.get(i, n + j).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPolynomial;
    use crate::rational::int;

    fn vx() -> Variables {
        Variables::new(&["x"])
    }

    fn c(v: &Variables, n: i64) -> RationalFunction {
        RationalFunction::constant(v, int(n))
    }

    fn x(v: &Variables) -> RationalFunction {
        RationalFunction::variable(v, 0)
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        let v = vx();
        let m = ExactMatrix::identity(&v, 3);
        assert!(m.nullspace(ScalarField::Constants).is_empty());
    }

    #[test]
    fn nullspace_of_zero_is_standard_basis() {
        let v = vx();
        let m = ExactMatrix::zeros(&v, 2, 2);
        let ns = m.nullspace(ScalarField::Constants);
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], vec![c(&v, 1), c(&v, 0)]);
        assert_eq!(ns[1], vec![c(&v, 0), c(&v, 1)]);
    }

    #[test]
    fn nullspace_dependent_rows() {
        let v = vx();
        let m = ExactMatrix::from_rows(
            &v,
            vec![vec![c(&v, 1), c(&v, 1)], vec![c(&v, 2), c(&v, 2)]],
        );
        let ns = m.nullspace(ScalarField::Constants);
        assert_eq!(ns.len(), 1);
        // canonical echelon normalization: leading coordinate is 1
        assert_eq!(ns[0], vec![c(&v, 1), c(&v, -1)]);
        // m * v = 0 exactly
        for row in 0..2 {
            let mut acc = RationalFunction::zero(&v);
            for col in 0..2 {
                acc = &acc + &(m.get(row, col) * &ns[0][col]);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn nullspace_over_functions() {
        // [x, 1] has nullspace spanned by (1, -x) -> canonical (1, -x)
        let v = vx();
        let m = ExactMatrix::from_rows(&v, vec![vec![x(&v), c(&v, 1)]]);
        let ns = m.nullspace(ScalarField::Functions);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], c(&v, 1));
        assert_eq!(ns[0][1], -&x(&v));
    }

    #[test]
    fn determinant_and_inverse() {
        let v = vx();
        // [[x, 1], [1/x, 0]] has determinant -1/x
        let m = ExactMatrix::from_rows(
            &v,
            vec![
                vec![x(&v), c(&v, 1)],
                vec![x(&v).inverse().unwrap(), c(&v, 0)],
            ],
        );
        let det = m.determinant();
        let expected = RationalFunction::new(
            MultiPolynomial::constant(&v, int(-1)),
            MultiPolynomial::variable(&v, 0),
        )
        .unwrap();
        assert_eq!(det, expected);

        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        assert_eq!(prod, ExactMatrix::identity(&v, 2));
        let prod2 = inv.mul(&m);
        assert_eq!(prod2, ExactMatrix::identity(&v, 2));
    }

    #[test]
    fn singular_inverse_fails() {
        let v = vx();
        let m = ExactMatrix::from_rows(
            &v,
            vec![vec![c(&v, 1), c(&v, 2)], vec![c(&v, 2), c(&v, 4)]],
        );
        assert_eq!(m.inverse().unwrap_err(), Error::SingularMatrix);
        assert!(m.determinant().is_zero());
        assert_eq!(m.rank(), 1);
    }
}
