//! Differential towers: a rational-function field presented by base
//! variables and generators, each carrying one derivative rule per
//! derivation. Generators are treated as algebraically independent over the
//! base — the tower is a presentation, not a quotient.

use crate::error::{Error, Result};
use crate::expr::{parse, to_rational_function};
use crate::poly::Variables;
use crate::ratfunc::RationalFunction;

#[derive(Clone, Debug)]
pub struct DifferentialTower {
    vars: Variables,
    base_count: usize,
    // rules[d][v] = value of derivation d on variable v, over the full tower
    rules: Vec<Vec<RationalFunction>>,
}

impl DifferentialTower {
    /// Builds the shared variable context: base variables first, then
    /// generators, both in declaration order.
    pub fn variables<S: AsRef<str>>(base: &[S], gens: &[S]) -> Variables {
        let mut names: Vec<&str> = base.iter().map(|s| s.as_ref()).collect();
        names.extend(gens.iter().map(|s| s.as_ref()));
        Variables::new(&names)
    }

    /// Core constructor. `rules[d]` lists the image of each tower variable
    /// under derivation `d`. For more than one derivation, the derivations
    /// must commute on every variable; this is checked here.
    pub fn new(
        vars: Variables,
        base_count: usize,
        rules: Vec<Vec<RationalFunction>>,
    ) -> Result<Self> {
        if base_count > vars.len() {
            return Err(Error::InvalidTower(
                "base variable count exceeds the variable context".into(),
            ));
        }
        if rules.is_empty() {
            return Err(Error::InvalidTower("at least one derivation required".into()));
        }
        for (d, list) in rules.iter().enumerate() {
            if list.len() != vars.len() {
                return Err(Error::InvalidTower(format!(
                    "derivation {d} supplies {} rules for {} variables",
                    list.len(),
                    vars.len()
                )));
            }
            for (v, rule) in list.iter().enumerate() {
                if !rule.vars().same(&vars) {
                    return Err(Error::InvalidTower(format!(
                        "rule for `{}` under derivation {d} uses a foreign variable context",
                        vars.name(v)
                    )));
                }
            }
        }
        let tower = DifferentialTower {
            vars,
            base_count,
            rules,
        };
        let d = tower.rules.len();
        if d > 1 {
            for i in 0..d {
                for j in i + 1..d {
                    for v in 0..tower.vars.len() {
                        let ij = tower.derive(&tower.rules[j][v], i);
                        let ji = tower.derive(&tower.rules[i][v], j);
                        if ij != ji {
                            return Err(Error::NonCommutingDerivations {
                                i,
                                j,
                                variable: tower.vars.name(v).to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(tower)
    }

    /// Single-derivation convenience: `(name, rule-source)` pairs, rules in
    /// the expression grammar over the full tower.
    pub fn single(base: &[(&str, &str)], gens: &[(&str, &str)]) -> Result<Self> {
        let base_names: Vec<&str> = base.iter().map(|(n, _)| *n).collect();
        let gen_names: Vec<&str> = gens.iter().map(|(n, _)| *n).collect();
        let vars = Self::variables(&base_names, &gen_names);
        let mut rules = Vec::with_capacity(vars.len());
        for (_, src) in base.iter().chain(gens.iter()) {
            let ast = parse(src, &vars)?;
            rules.push(to_rational_function(&ast, &vars)?);
        }
        Self::new(vars, base.len(), vec![rules])
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn base_count(&self) -> usize {
        self.base_count
    }

    pub fn generator_count(&self) -> usize {
        self.vars.len() - self.base_count
    }

    pub fn derivation_count(&self) -> usize {
        self.rules.len()
    }

    pub fn is_generator(&self, var_idx: usize) -> bool {
        var_idx >= self.base_count
    }

    pub fn rule(&self, derivation: usize, var_idx: usize) -> &RationalFunction {
        &self.rules[derivation][var_idx]
    }

    /// Applies derivation `which` via the chain rule over all variables.
    pub fn derive(&self, e: &RationalFunction, which: usize) -> RationalFunction {
        assert!(e.vars().same(&self.vars), "element from a foreign tower");
        let mut acc = RationalFunction::zero(&self.vars);
        for v in 0..self.vars.len() {
            if e.is_free_of(v) {
                continue;
            }
            let p = e.partial(v);
            if p.is_zero() {
                continue;
            }
            acc = &acc + &(&p * &self.rules[which][v]);
        }
        acc
    }

    /// True when every derivation kills `e`.
    pub fn is_constant(&self, e: &RationalFunction) -> bool {
        (0..self.rules.len()).all(|d| self.derive(e, d).is_zero())
    }

    /// True when `e` involves no tower variable at all, i.e. lies in the
    /// declared scalar field.
    pub fn in_scalar_field(&self, e: &RationalFunction) -> bool {
        e.is_rational_constant()
    }

    /// Classifies each probe; a probe that is constant under all derivations
    /// but lies outside the declared scalars is flagged as a new constant.
    pub fn new_constants_report(&self, probes: &[RationalFunction]) -> ConstantsReport {
        let probes = probes
            .iter()
            .map(|p| {
                let is_constant = self.is_constant(p);
                let in_scalar_field = self.in_scalar_field(p);
                ProbeOutcome {
                    value: p.clone(),
                    is_constant,
                    in_scalar_field,
                    new_constant: is_constant && !in_scalar_field,
                }
            })
            .collect();
        ConstantsReport { probes }
    }
}

#[derive(Clone, Debug)]
pub struct ConstantsReport {
    pub probes: Vec<ProbeOutcome>,
}

impl ConstantsReport {
    pub fn has_new_constants(&self) -> bool {
        self.probes.iter().any(|p| p.new_constant)
    }
}

#[derive(Clone, Debug)]
pub struct ProbeOutcome {
    pub value: RationalFunction,
    pub is_constant: bool,
    pub in_scalar_field: bool,
    pub new_constant: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn rf(t: &DifferentialTower, src: &str) -> RationalFunction {
        to_rational_function(&parse(src, t.vars()).unwrap(), t.vars()).unwrap()
    }

    /// x' = 1 over the plain base field.
    fn plain() -> DifferentialTower {
        DifferentialTower::single(&[("x", "1")], &[]).unwrap()
    }

    /// x' = 1 with one exponential generator e' = e.
    fn exp_tower() -> DifferentialTower {
        DifferentialTower::single(&[("x", "1")], &[("e", "e")]).unwrap()
    }

    /// x' = 1 with a logarithmic generator l' = 1/x.
    fn log_tower() -> DifferentialTower {
        DifferentialTower::single(&[("x", "1")], &[("l", "1/x")]).unwrap()
    }

    /// Two base variables with the diagonal derivation d/dx + d/dy.
    fn diagonal_tower() -> DifferentialTower {
        DifferentialTower::single(&[("x", "1"), ("y", "1")], &[]).unwrap()
    }

    #[test]
    fn derive_base_variable() {
        let t = plain();
        assert_eq!(t.derive(&rf(&t, "x"), 0), rf(&t, "1"));
        assert_eq!(t.derive(&rf(&t, "x^2"), 0), rf(&t, "2*x"));
    }

    #[test]
    fn derive_generators() {
        let t = log_tower();
        assert_eq!(t.derive(&rf(&t, "l"), 0), rf(&t, "1/x"));
        let e = exp_tower();
        // Leibniz on a product: (e*x)' = e*x + e
        assert_eq!(e.derive(&rf(&e, "e*x"), 0), rf(&e, "e*x + e"));
    }

    #[test]
    fn diagonal_derivation_kills_difference() {
        let t = diagonal_tower();
        assert!(t.derive(&rf(&t, "x - y"), 0).is_zero());
        assert!(t.is_constant(&rf(&t, "x - y")));
        assert!(!t.is_constant(&rf(&t, "x")));
        assert!(!t.is_constant(&rf(&t, "x*y")));
    }

    #[test]
    fn quotient_rule_consistency() {
        let t = log_tower();
        let a = rf(&t, "(l^2 + x)/(x + 1)");
        let inv = a.inverse().unwrap();
        // (a * a^-1)' = 0 expanded by Leibniz
        let lhs = &(&t.derive(&a, 0) * &inv) + &(&a * &t.derive(&inv, 0));
        assert!(lhs.is_zero());
    }

    #[test]
    fn two_commuting_derivations() {
        // d1 = d/dx, d2 = d/dy on Q(x, y); gen g with d1 g = g, d2 g = 2*g.
        let vars = DifferentialTower::variables(&["x", "y"], &["g"]);
        let rf_of = |s: &str| to_rational_function(&parse(s, &vars).unwrap(), &vars).unwrap();
        let rules = vec![
            vec![rf_of("1"), rf_of("0"), rf_of("g")],
            vec![rf_of("0"), rf_of("1"), rf_of("2*g")],
        ];
        let t = DifferentialTower::new(vars.clone(), 2, rules).unwrap();
        assert_eq!(t.derivation_count(), 2);
        // x - y is not constant here: d1 kills neither
        assert!(!t.is_constant(&rf_of("x - y")));
        // commutation on a random-ish element
        let e = rf_of("(g^2 + x*y)/(x + 1)");
        let d12 = t.derive(&t.derive(&e, 0), 1);
        let d21 = t.derive(&t.derive(&e, 1), 0);
        assert_eq!(d12, d21);
    }

    #[test]
    fn non_commuting_rejected() {
        // d1 g = y but d2 g = 0 cannot commute: d2 d1 g = 1, d1 d2 g = 0.
        let vars = DifferentialTower::variables(&["x", "y"], &["g"]);
        let rf_of = |s: &str| to_rational_function(&parse(s, &vars).unwrap(), &vars).unwrap();
        let rules = vec![
            vec![rf_of("1"), rf_of("0"), rf_of("y")],
            vec![rf_of("0"), rf_of("1"), rf_of("0")],
        ];
        let err = DifferentialTower::new(vars, 2, rules).unwrap_err();
        assert!(matches!(err, Error::NonCommutingDerivations { .. }));
    }

    #[test]
    fn constants_report_flags_ratio() {
        // e' = e and q' = q: the ratio q/e is a constant outside the scalars.
        let t = DifferentialTower::single(&[("x", "1")], &[("e", "e"), ("q", "q")]).unwrap();
        let report = t.new_constants_report(&[rf(&t, "q/e"), rf(&t, "7/3"), rf(&t, "x")]);
        assert!(report.probes[0].is_constant);
        assert!(!report.probes[0].in_scalar_field);
        assert!(report.probes[0].new_constant);

        assert!(report.probes[1].is_constant);
        assert!(report.probes[1].in_scalar_field);
        assert!(!report.probes[1].new_constant);

        assert!(!report.probes[2].is_constant);
        assert!(!report.probes[2].new_constant);

        assert!(report.has_new_constants());
    }
}
