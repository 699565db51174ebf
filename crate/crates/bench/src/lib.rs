//! Shared fixtures for the criterion benchmarks: the bundled systems
//! rebuilt through the public core API.

use pvforge_core::{
    parse, to_rational_function, z_symbol, DifferentialTower, ExactMatrix, Expression,
    RationalFunction, SystemSpec, Variables,
};

pub fn rf(vars: &Variables, src: &str) -> RationalFunction {
    to_rational_function(&parse(src, vars).unwrap(), vars).unwrap()
}

pub fn matrix(vars: &Variables, entries: &[&[&str]]) -> ExactMatrix {
    ExactMatrix::from_rows(
        vars,
        entries
            .iter()
            .map(|row| row.iter().map(|s| rf(vars, s)).collect())
            .collect(),
    )
}

pub fn build_system(
    tower: DifferentialTower,
    a: &[&[&str]],
    z: &[&[&str]],
    recovery: &[&str],
) -> SystemSpec {
    let vars = tower.vars().clone();
    let n = a.len();
    let am = matrix(&vars, a);
    let zm = matrix(&vars, z);
    let mut names: Vec<String> = (0..tower.base_count())
        .map(|i| vars.name(i).to_string())
        .collect();
    for r in 0..n {
        for c in 0..n {
            names.push(z_symbol(r, c));
        }
    }
    let rvars = Variables::new(&names);
    let exprs: Vec<Expression> = recovery.iter().map(|s| parse(s, &rvars).unwrap()).collect();
    SystemSpec::new(tower, am, zm, &exprs).unwrap()
}

pub fn log_tower() -> DifferentialTower {
    DifferentialTower::single(&[("x", "1")], &[("l", "1/x")]).unwrap()
}

pub fn log_system() -> SystemSpec {
    build_system(
        log_tower(),
        &[&["0", "1"], &["0", "-1/x"]],
        &[&["l", "1"], &["1/x", "0"]],
        &["z11"],
    )
}

pub fn torus_system() -> SystemSpec {
    build_system(
        DifferentialTower::single(&[("x", "1")], &[("e", "e")]).unwrap(),
        &[&["1", "0"], &["0", "2"]],
        &[&["e", "0"], &["0", "e^2"]],
        &["z11"],
    )
}
