//! Linear differential systems Y' = AY presented with a candidate
//! fundamental matrix Z and recovery expressions that write each tower
//! generator in terms of the entries of Z.

use crate::error::{Error, Result};
use crate::expr::{to_rational_function, Expression};
use crate::matrix::ExactMatrix;
use crate::poly::Variables;
use crate::ratfunc::RationalFunction;
use crate::tower::DifferentialTower;

/// Symbol naming for the entries of Z inside recovery expressions:
/// `z{row}{col}`, 1-based, single digit each (systems are capped at 9x9).
pub fn z_symbol(row: usize, col: usize) -> String {
    format!("z{}{}", row + 1, col + 1)
}

#[derive(Clone, Debug)]
pub struct SystemSpec {
    tower: DifferentialTower,
    n: usize,
    a: ExactMatrix,
    z: ExactMatrix,
    /// One per generator, over `recovery_vars`.
    recovery: Vec<RationalFunction>,
    /// Base variables followed by the z-symbols, row-major.
    recovery_vars: Variables,
}

impl SystemSpec {
    pub fn new(
        tower: DifferentialTower,
        a: ExactMatrix,
        z: ExactMatrix,
        recovery_exprs: &[Expression],
    ) -> Result<Self> {
        let d = tower.derivation_count();
        if d != 1 {
            return Err(Error::SingleDerivationOnly(d));
        }
        if !a.is_square() || !z.is_square() || a.rows() != z.rows() {
            return Err(Error::InvalidSystem(format!(
                "A is {}x{} and Z is {}x{}; both must be square of equal size",
                a.rows(),
                a.cols(),
                z.rows(),
                z.cols()
            )));
        }
        let n = a.rows();
        if n == 0 {
            return Err(Error::InvalidSystem("empty system".into()));
        }
        if n > 9 {
            return Err(Error::InvalidSystem(
                "systems larger than 9x9 are not supported by the z-symbol naming".into(),
            ));
        }
        if !a.vars().same(tower.vars()) || !z.vars().same(tower.vars()) {
            return Err(Error::InvalidSystem(
                "A and Z must live over the tower's variables".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                for g in tower.base_count()..tower.vars().len() {
                    if !a.get(i, j).is_free_of(g) {
                        return Err(Error::InvalidSystem(format!(
                            "A[{},{}] involves generator `{}`; A must lie over the base",
                            i + 1,
                            j + 1,
                            tower.vars().name(g)
                        )));
                    }
                }
            }
        }
        if recovery_exprs.len() != tower.generator_count() {
            return Err(Error::InvalidSystem(format!(
                "{} recovery expressions for {} generators",
                recovery_exprs.len(),
                tower.generator_count()
            )));
        }

        let mut names: Vec<String> = (0..tower.base_count())
            .map(|k| tower.vars().name(k).to_string())
            .collect();
        for r in 0..n {
            for c in 0..n {
                names.push(z_symbol(r, c));
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidSystem(
                "a base variable collides with a z-symbol".into(),
            ));
        }
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let recovery_vars = Variables::new(&name_refs);
        let recovery = recovery_exprs
            .iter()
            .map(|e| to_rational_function(e, &recovery_vars))
            .collect::<Result<Vec<_>>>()?;

        Ok(SystemSpec {
            tower,
            n,
            a,
            z,
            recovery,
            recovery_vars,
        })
    }

    pub fn tower(&self) -> &DifferentialTower {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn z(&self) -> &ExactMatrix {
        &self.z
    }

    pub fn recovery(&self) -> &[RationalFunction] {
        &self.recovery
    }

    pub fn recovery_vars(&self) -> &Variables {
        &self.recovery_vars
    }

    /// Index of the z-symbol for entry (row, col) inside `recovery_vars`.
    pub fn z_symbol_index(&self, row: usize, col: usize) -> usize {
        self.tower.base_count() + row * self.n + col
    }

    /// Substitution vector sending each recovery variable to its value in
    /// the tower: base variables to themselves, z-symbols to the entries
    /// of Z.
    pub fn recovery_values(&self) -> Vec<RationalFunction> {
        let mut values = Vec::with_capacity(self.recovery_vars.len());
        for k in 0..self.tower.base_count() {
            values.push(RationalFunction::variable(self.tower.vars(), k));
        }
        for r in 0..self.n {
            for c in 0..self.n {
                values.push(self.z.get(r, c).clone());
            }
        }
        values
    }

    /// What each recovery expression actually evaluates to at z = Z.
    pub fn recovered_generators(&self) -> Result<Vec<RationalFunction>> {
        let values = self.recovery_values();
        self.recovery
            .iter()
            .map(|g| g.substitute(&values))
            .collect()
    }

    /// Entrywise derivative of Z under the tower's derivation.
    pub fn z_prime(&self) -> ExactMatrix {
        self.z.map(|e| self.tower.derive(e, 0))
    }

    /// Full diagnostic pass: Z' = AZ entrywise, det Z invertible, and each
    /// recovery expression reproducing its generator at z = Z.
    pub fn check_fundamental(&self) -> Result<FundamentalReport> {
        let residual = self.z_prime().sub(&self.a.mul(&self.z));
        let mut equation_residuals = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if !residual.get(i, j).is_zero() {
                    equation_residuals.push(EntryResidual {
                        row: i,
                        col: j,
                        residual: residual.get(i, j).clone(),
                    });
                }
            }
        }
        let determinant = self.z.determinant();
        let determinant_nonzero = !determinant.is_zero();
        let recovered = self.recovered_generators()?;
        let mut recovery_residuals = Vec::new();
        for (k, value) in recovered.iter().enumerate() {
            let idx = self.tower.base_count() + k;
            let generator = RationalFunction::variable(self.tower.vars(), idx);
            let r = value - &generator;
            if !r.is_zero() {
                recovery_residuals.push(RecoveryResidual {
                    generator: self.tower.vars().name(idx).to_string(),
                    residual: r,
                });
            }
        }
        let passed =
            equation_residuals.is_empty() && determinant_nonzero && recovery_residuals.is_empty();
        Ok(FundamentalReport {
            equation_residuals,
            determinant,
            determinant_nonzero,
            recovery_residuals,
            passed,
        })
    }

    /// Errs unless the full diagnostic pass succeeds; used as the gate in
    /// front of every computation that assumes Z is fundamental.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.check_fundamental()?;
        if report.passed {
            return Ok(());
        }
        let mut reasons = Vec::new();
        if let Some(e) = report.equation_residuals.first() {
            reasons.push(format!(
                "Z' - AZ is nonzero at entry ({},{})",
                e.row + 1,
                e.col + 1
            ));
        }
        if !report.determinant_nonzero {
            reasons.push("det Z = 0".to_string());
        }
        if let Some(r) = report.recovery_residuals.first() {
            reasons.push(format!("recovery of `{}` does not match", r.generator));
        }
        Err(Error::FundamentalCheck(reasons.join("; ")))
    }
}

#[derive(Clone, Debug)]
pub struct FundamentalReport {
    pub equation_residuals: Vec<EntryResidual>,
    pub determinant: RationalFunction,
    pub determinant_nonzero: bool,
    pub recovery_residuals: Vec<RecoveryResidual>,
    pub passed: bool,
}

/// A nonzero entry of Z' - AZ (0-based indices).
#[derive(Clone, Debug)]
pub struct EntryResidual {
    pub row: usize,
    pub col: usize,
    pub residual: RationalFunction,
}

#[derive(Clone, Debug)]
pub struct RecoveryResidual {
    pub generator: String,
    pub residual: RationalFunction,
}
