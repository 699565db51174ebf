//! The full acceptance gate: nine numbered criteria, each printed as one
//! pass/fail line with its elapsed time and checked against its stated
//! budget. Everything is exact arithmetic; there are no tolerances.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pvforge_core::rational::{factorial, int, ratio};
use pvforge_core::{
    check_membership_base, compare_lie, compute_b, parse, print, pv_lie,
    rational_function_to_expression, solve_fundamental, taylor, taylor_matrix,
    to_rational_function, z_symbol, BigRational, DifferentialTower, ExactMatrix, Expression,
    Monomial, MultiPolynomial, RationalFunction, SystemSpec, TruncatedSeries, Variables,
};

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

fn rf(vars: &Variables, src: &str) -> RationalFunction {
    to_rational_function(&parse(src, vars).unwrap(), vars).unwrap()
}

fn matrix(vars: &Variables, entries: &[&[&str]]) -> ExactMatrix {
    ExactMatrix::from_rows(
        vars,
        entries
            .iter()
            .map(|row| row.iter().map(|s| rf(vars, s)).collect())
            .collect(),
    )
}

fn build_system(
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

fn exp_system() -> SystemSpec {
    build_system(
        DifferentialTower::single(&[("x", "1")], &[("e", "e")]).unwrap(),
        &[&["1"]],
        &[&["e"]],
        &["z11"],
    )
}

fn log_system() -> SystemSpec {
    build_system(
        DifferentialTower::single(&[("x", "1")], &[("l", "1/x")]).unwrap(),
        &[&["0", "1"], &["0", "-1/x"]],
        &[&["l", "1"], &["1/x", "0"]],
        &["z11"],
    )
}

fn trivial_system() -> SystemSpec {
    build_system(
        DifferentialTower::single(&[("x", "1")], &[]).unwrap(),
        &[&["0", "0"], &["0", "0"]],
        &[&["1", "0"], &["0", "1"]],
        &[],
    )
}

fn torus_system() -> SystemSpec {
    build_system(
        DifferentialTower::single(&[("x", "1")], &[("e", "e")]).unwrap(),
        &[&["1", "0"], &["0", "2"]],
        &[&["e", "0"], &["0", "e^2"]],
        &["z11"],
    )
}

fn bundled_systems() -> Vec<(&'static str, SystemSpec)> {
    vec![
        ("exp", exp_system()),
        ("log", log_system()),
        ("trivial", trivial_system()),
        ("torus", torus_system()),
    ]
}

// ---------------------------------------------------------------------------
// Randomized generic systems: generators g_rc with rules (A·G)_rc, Z the
// generator matrix itself, and the tautological recovery g_rc = z_rc.
// ---------------------------------------------------------------------------

fn random_base_poly(rng: &mut ChaCha8Rng, vars: &Variables) -> RationalFunction {
    // Sparse polynomial in the base variable x (index 0), degree <= 2.
    let mut terms = Vec::new();
    for e in 0..=2u32 {
        if rng.gen_range(0..3) == 0 {
            let c = rng.gen_range(-2i64..=2);
            let mut exps = vec![0; vars.len()];
            exps[0] = e;
            terms.push((Monomial(exps), int(c)));
        }
    }
    RationalFunction::from_poly(MultiPolynomial::from_terms(vars, terms))
}

fn random_generic_system(rng: &mut ChaCha8Rng, n: usize) -> SystemSpec {
    let mut names = vec!["x".to_string()];
    for r in 0..n {
        for c in 0..n {
            names.push(format!("g{}{}", r + 1, c + 1));
        }
    }
    let vars = Variables::new(&names);

    let a = ExactMatrix::from_fn(&vars, n, n, |_, _| random_base_poly(rng, &vars));
    let z = ExactMatrix::from_fn(&vars, n, n, |r, c| {
        RationalFunction::variable(&vars, 1 + r * n + c)
    });

    let mut rules = vec![RationalFunction::one(&vars)];
    for r in 0..n {
        for c in 0..n {
            let mut rule = RationalFunction::zero(&vars);
            for t in 0..n {
                rule = &rule + &(a.get(r, t) * z.get(t, c));
            }
            rules.push(rule);
        }
    }
    let tower = DifferentialTower::new(vars.clone(), 1, vec![rules]).unwrap();

    let mut rnames = vec!["x".to_string()];
    for r in 0..n {
        for c in 0..n {
            rnames.push(z_symbol(r, c));
        }
    }
    let rvars = Variables::new(&rnames);
    let recovery: Vec<Expression> = (0..n)
        .flat_map(|r| (0..n).map(move |c| z_symbol(r, c)))
        .map(|s| parse(&s, &rvars).unwrap())
        .collect();
    SystemSpec::new(tower, a, z, &recovery).unwrap()
}

fn randomized_corpus() -> Vec<SystemSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut out = Vec::new();
    for n in [1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3] {
        out.push(random_generic_system(&mut rng, n));
    }
    out
}

/// Adds `x` to one Z entry. The fundamental-equation residual of that edit is
/// the matrix E - x·A·E (E the unit matrix at the edited entry), whose edited
/// row carries 1 - x·A[i][i] — never zero for polynomial A — so the check is
/// required to fire.
fn perturb_z(s: &SystemSpec, row: usize, col: usize) -> SystemSpec {
    let vars = s.tower().vars().clone();
    let x = RationalFunction::variable(&vars, 0);
    let z = ExactMatrix::from_fn(&vars, s.n(), s.n(), |i, j| {
        if (i, j) == (row, col) {
            s.z().get(i, j) + &x
        } else {
            s.z().get(i, j).clone()
        }
    });
    let recovery: Vec<Expression> = s
        .recovery()
        .iter()
        .map(rational_function_to_expression)
        .collect();
    SystemSpec::new(s.tower().clone(), s.a().clone(), z, &recovery).unwrap()
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

type Outcome = Result<(), String>;

fn criterion_1_exp_b_route() -> Outcome {
    let s = exp_system();
    let order = 16;
    let b = compute_b(&s, order).map_err(|e| e.to_string())?;
    let vars = s.tower().vars();
    for k in 0..=order {
        let expected =
            RationalFunction::constant(vars, BigRational::from_integer(factorial(k)).recip());
        if b.entry(0, 0).coefficient(k) != &expected {
            return Err(format!("B[1][1] coefficient {k} is not 1/{k}!"));
        }
    }
    let ia = taylor_matrix(s.a(), s.tower(), order).map_err(|e| e.to_string())?;
    if solve_fundamental(&ia) != b {
        return Err("the two routes disagree on the exp system".into());
    }
    Ok(())
}

fn criterion_2_log_b_oracle() -> Outcome {
    let s = log_system();
    let order = 16;
    let b = compute_b(&s, order).map_err(|e| e.to_string())?;
    let vars = s.tower().vars();
    let x = RationalFunction::variable(vars, 0);

    // Frozen closed forms, entered independently via the geometric-series
    // identity 1/(x+X) = sum_k (-1)^k x^-(k+1) X^k. Hence
    //   b12 = x*log(1+X/x)  has coefficient (-1)^(k+1)/(k*x^(k-1)) for k >= 1,
    //   b22 = x/(x+X)       has coefficient (-1)^k/x^k.
    let mut b12 = vec![RationalFunction::zero(vars)];
    let mut b22 = vec![RationalFunction::one(vars)];
    for k in 1..=order as i64 {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        b12.push(x.pow(1 - k).unwrap().scale(&ratio(sign, k)));
        b22.push(x.pow(-k).unwrap().scale(&int(-sign)));
    }
    let expected = [
        [
            TruncatedSeries::constant(RationalFunction::one(vars), order),
            TruncatedSeries::new(vars, b12),
        ],
        [
            TruncatedSeries::zero(vars, order),
            TruncatedSeries::new(vars, b22),
        ],
    ];
    for i in 0..2 {
        for j in 0..2 {
            if b.entry(i, j) != &expected[i][j] {
                return Err(format!(
                    "B[{}][{}] deviates from the closed-form expansion",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    Ok(())
}

fn criterion_3_membership_and_gate() -> Outcome {
    for (name, s) in bundled_systems() {
        let b = compute_b(&s, 12).map_err(|e| format!("{name}: {e}"))?;
        if !check_membership_base(&b, s.tower()).passes {
            return Err(format!("{name}: a B coefficient leaves the base field"));
        }
    }
    for (k, s) in randomized_corpus().iter().enumerate() {
        let b = compute_b(s, 12).map_err(|e| format!("random spec {k}: {e}"))?;
        if !check_membership_base(&b, s.tower()).passes {
            return Err(format!(
                "random spec {k}: a B coefficient leaves the base field"
            ));
        }
    }
    // The hypothesis gate: any Z perturbation that breaks Z' = AZ is caught.
    for (name, s) in bundled_systems() {
        for row in 0..s.n() {
            for col in 0..s.n() {
                let broken = perturb_z(&s, row, col);
                let report = broken
                    .check_fundamental()
                    .map_err(|e| format!("{name}: {e}"))?;
                if report.equation_residuals.is_empty() {
                    return Err(format!(
                        "{name}: perturbing Z[{}][{}] went undetected",
                        row + 1,
                        col + 1
                    ));
                }
                if broken.require_valid().is_ok() {
                    return Err(format!("{name}: perturbed system accepted"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_4_route_equivalence_and_ode() -> Outcome {
    let order = 12;
    let mut all: Vec<(String, SystemSpec)> = bundled_systems()
        .into_iter()
        .map(|(n, s)| (n.to_string(), s))
        .collect();
    for (k, s) in randomized_corpus().into_iter().enumerate() {
        all.push((format!("random-{k}"), s));
    }
    for (name, s) in all {
        let b = compute_b(&s, order).map_err(|e| format!("{name}: {e}"))?;
        let ia = taylor_matrix(s.a(), s.tower(), order).map_err(|e| format!("{name}: {e}"))?;
        if solve_fundamental(&ia) != b {
            return Err(format!("{name}: the two routes disagree"));
        }
        let rhs = ia.mul(&b).map_err(|e| format!("{name}: {e}"))?;
        if b.derivative() != rhs.truncate(order - 1) {
            return Err(format!("{name}: dB/dX differs from taylor(A)*B"));
        }
    }
    Ok(())
}

fn bundled_towers() -> Vec<(&'static str, DifferentialTower)> {
    vec![
        (
            "exp",
            DifferentialTower::single(&[("x", "1")], &[("e", "e")]).unwrap(),
        ),
        (
            "log",
            DifferentialTower::single(&[("x", "1")], &[("l", "1/x")]).unwrap(),
        ),
        (
            "trivial",
            DifferentialTower::single(&[("x", "1")], &[]).unwrap(),
        ),
        (
            "torus",
            DifferentialTower::single(&[("x", "1")], &[("e", "e")]).unwrap(),
        ),
        (
            "twin-exp",
            DifferentialTower::single(&[("x", "1")], &[("e", "e"), ("q", "q")]).unwrap(),
        ),
    ]
}

fn random_tower_element(rng: &mut ChaCha8Rng, vars: &Variables) -> RationalFunction {
    // Multilinear numerators over a linear single-variable denominator: eight
    // successive quotient rules still force real cancellation at every step,
    // but the intermediate gcds stay small enough to run hundreds of times.
    let nterms = rng.gen_range(1..=2);
    let num = MultiPolynomial::from_terms(
        vars,
        (0..nterms).map(|_| {
            let exps: Vec<u32> = (0..vars.len()).map(|_| rng.gen_range(0..=1u32)).collect();
            (Monomial(exps), int(rng.gen_range(-3i64..=3)))
        }),
    );
    let v = rng.gen_range(0..vars.len());
    let den = loop {
        let mut terms = Vec::new();
        let c0 = rng.gen_range(-2i64..=2);
        if c0 != 0 {
            terms.push((Monomial(vec![0; vars.len()]), int(c0)));
        }
        let c1 = rng.gen_range(-2i64..=2);
        if c1 != 0 {
            let mut exps = vec![0; vars.len()];
            exps[v] = 1;
            terms.push((Monomial(exps), int(c1)));
        }
        let p = MultiPolynomial::from_terms(vars, terms);
        if !p.is_zero() {
            break p;
        }
    };
    RationalFunction::new(num, den).unwrap()
}

fn criterion_5_expansion_morphism() -> Outcome {
    let order = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(811);
    for (name, tower) in bundled_towers() {
        let vars = tower.vars();
        let elements: Vec<RationalFunction> = (0..100)
            .map(|_| random_tower_element(&mut rng, vars))
            .collect();
        let expansions: Vec<TruncatedSeries> = elements
            .iter()
            .map(|a| taylor(a, &tower, order).unwrap())
            .collect();
        for (a, ta) in elements.iter().zip(&expansions) {
            if ta.coefficient(0) != a {
                return Err(format!("{name}: coefficient 0 does not recover the element"));
            }
            let da = taylor(&tower.derive(a, 0), &tower, order - 1).unwrap();
            if da != ta.derivative() {
                return Err(format!(
                    "{name}: expansion does not intertwine the derivation"
                ));
            }
        }
        for (pair, tpair) in elements.chunks_exact(2).zip(expansions.chunks_exact(2)) {
            let (a, b) = (&pair[0], &pair[1]);
            let (ta, tb) = (&tpair[0], &tpair[1]);
            if taylor(&(a + b), &tower, order).unwrap() != ta.add(tb).unwrap() {
                return Err(format!("{name}: additivity fails"));
            }
            if taylor(&(a * b), &tower, order).unwrap() != ta.mul(tb).unwrap() {
                return Err(format!("{name}: multiplicativity fails"));
            }
        }
    }
    Ok(())
}

fn criterion_6_constant_side_dimensions() -> Outcome {
    let exp = exp_system();
    let log = log_system();
    let trivial = trivial_system();
    let torus = torus_system();
    let exp_basis = vec![matrix(exp.tower().vars(), &[&["1"]])];
    let log_basis = vec![matrix(log.tower().vars(), &[&["0", "0"], &["1", "0"]])];
    let torus_basis = vec![matrix(torus.tower().vars(), &[&["1", "0"], &["0", "2"]])];
    let cases: Vec<(&str, SystemSpec, usize, Vec<ExactMatrix>)> = vec![
        ("exp", exp, 1, exp_basis),
        ("log", log, 1, log_basis),
        ("trivial", trivial, 0, vec![]),
        ("torus", torus, 1, torus_basis),
    ];
    for (name, s, dim, basis) in cases {
        let r = pv_lie(&s).map_err(|e| format!("{name}: {e}"))?;
        if r.dimension != dim {
            return Err(format!(
                "{name}: dimension {} (expected {dim})",
                r.dimension
            ));
        }
        if r.basis != basis {
            return Err(format!("{name}: echelon basis differs from the expected one"));
        }
    }
    Ok(())
}

fn criterion_7_comparison_stable() -> Outcome {
    for (name, s) in bundled_systems() {
        let at12 = compare_lie(&s, 12).map_err(|e| format!("{name}@12: {e}"))?;
        let at16 = compare_lie(&s, 16).map_err(|e| format!("{name}@16: {e}"))?;
        for (order, rep) in [(12, &at12), (16, &at16)] {
            if !rep.dimensions_equal {
                return Err(format!("{name}@{order}: dimensions differ"));
            }
            if !rep.transport_verified {
                return Err(format!("{name}@{order}: transport not verified"));
            }
        }
        if at12.hull.dimension != at16.hull.dimension || at12.hull.basis != at16.hull.basis {
            return Err(format!("{name}: expansion side unstable between 12 and 16"));
        }
    }
    Ok(())
}

fn criterion_8_constants() -> Outcome {
    // Diagonal action on two base variables: the difference is a constant.
    let diagonal = DifferentialTower::single(&[("x", "1"), ("y", "1")], &[]).unwrap();
    let vars = diagonal.vars();
    if !diagonal.is_constant(&rf(vars, "x - y")) {
        return Err("x - y is not seen as a constant of the diagonal derivation".into());
    }
    if diagonal.is_constant(&rf(vars, "x*y")) {
        return Err("x*y wrongly seen as constant".into());
    }
    let report = diagonal.new_constants_report(&[rf(vars, "x - y"), rf(vars, "2/3")]);
    if !report.probes[0].new_constant || report.probes[1].new_constant {
        return Err("diagonal tower misclassifies its probes".into());
    }

    // A genuine two-derivation tower: constants must be killed by both.
    let vars2 = Variables::new(&["x", "y"]);
    let two = DifferentialTower::new(
        vars2.clone(),
        2,
        vec![
            vec![rf(&vars2, "1"), rf(&vars2, "0")],
            vec![rf(&vars2, "0"), rf(&vars2, "1")],
        ],
    )
    .unwrap();
    if two.is_constant(&rf(&vars2, "x - y")) {
        return Err("x - y survives both coordinate derivations".into());
    }
    if !two.is_constant(&rf(&vars2, "5/7")) {
        return Err("rational scalar not constant in the two-derivation tower".into());
    }

    // Two exponential-type generators: their quotient is a fresh constant
    // that is not a rational scalar.
    let twin = DifferentialTower::single(&[("x", "1")], &[("e", "e"), ("q", "q")]).unwrap();
    let tvars = twin.vars();
    let report =
        twin.new_constants_report(&[rf(tvars, "q/e"), rf(tvars, "7/3"), rf(tvars, "x")]);
    let qe = &report.probes[0];
    if !(qe.is_constant && !qe.in_scalar_field && qe.new_constant) {
        return Err("q/e not flagged as a new constant".into());
    }
    if report.probes[1].new_constant || report.probes[2].is_constant {
        return Err("probes 7/3 or x misclassified".into());
    }
    if !report.has_new_constants() {
        return Err("report misses its own new constant".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Criterion 9: determinism and round-trips
// ---------------------------------------------------------------------------

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../specs/{name}"))
}

fn run_cli(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pvforge"))
        .args(args)
        .output()
        .map_err(|e| format!("failed to spawn pvforge: {e}"))?;
    let code = out
        .status
        .code()
        .ok_or_else(|| "pvforge terminated without an exit code".to_string())?;
    Ok((out.stdout, code))
}

fn random_expression(rng: &mut ChaCha8Rng, depth: usize) -> Expression {
    let leaf = depth == 0 || rng.gen_range(0..3) == 0;
    if leaf {
        if rng.gen_bool(0.5) {
            Expression::int(rng.gen_range(-9i64..=9))
        } else {
            Expression::var(if rng.gen_bool(0.5) { "x" } else { "y" })
        }
    } else {
        let a = Box::new(random_expression(rng, depth - 1));
        match rng.gen_range(0..6) {
            0 => Expression::Neg(a),
            1 => Expression::Add(a, Box::new(random_expression(rng, depth - 1))),
            2 => Expression::Sub(a, Box::new(random_expression(rng, depth - 1))),
            3 => Expression::Mul(a, Box::new(random_expression(rng, depth - 1))),
            4 => Expression::Div(a, Box::new(random_expression(rng, depth - 1))),
            _ => Expression::Pow(a, rng.gen_range(-3i64..=3)),
        }
    }
}

fn criterion_9_determinism_roundtrip() -> Outcome {
    // (a) Byte-identical reports and the documented exit codes, in both text
    // and JSON mode, across every bundled document.
    let invocations: Vec<(Vec<&str>, i32)> = vec![
        (vec!["check", "exp.json"], 0),
        (vec!["check", "log.json"], 0),
        (vec!["check", "trivial.json"], 0),
        (vec!["check", "torus.json"], 0),
        (vec!["check", "broken.json"], 2),
        (vec!["taylor", "log.json"], 0),
        (vec!["taylor", "pi_constants.json"], 0),
        (vec!["bmatrix", "exp.json"], 0),
        (vec!["bmatrix", "log.json"], 0),
        (vec!["pvlie", "log.json"], 0),
        (vec!["hulllie", "log.json"], 0),
        (vec!["compare", "exp.json"], 0),
        (vec!["compare", "log.json"], 0),
        (vec!["compare", "trivial.json"], 0),
        (vec!["compare", "torus.json"], 0),
        (vec!["constants", "pi_constants.json"], 0),
        (vec!["constants", "diagonal.json"], 0),
    ];
    for (args, expected_code) in &invocations {
        for json in [false, true] {
            let mut full: Vec<String> = vec![args[0].to_string()];
            full.push(spec_path(args[1]).display().to_string());
            if json {
                full.push("--json".into());
            }
            let argv: Vec<&str> = full.iter().map(|s| s.as_str()).collect();
            let (first, code1) = run_cli(&argv)?;
            let (second, code2) = run_cli(&argv)?;
            if first != second {
                return Err(format!("{argv:?}: stdout differs between runs"));
            }
            if code1 != *expected_code || code2 != *expected_code {
                return Err(format!(
                    "{argv:?}: exit {code1}/{code2}, expected {expected_code}"
                ));
            }
            if first.is_empty() {
                return Err(format!("{argv:?}: empty report"));
            }
        }
    }

    // (b) parse∘print∘parse is a fixpoint on a 200-expression corpus.
    let vars = Variables::new(&["x", "y"]);
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for k in 0..200 {
        let tree = random_expression(&mut rng, 4);
        let text = print(&tree);
        let once = parse(&text, &vars).map_err(|e| format!("corpus {k}: {e}"))?;
        let text2 = print(&once);
        let twice = parse(&text2, &vars).map_err(|e| format!("corpus {k}: {e}"))?;
        if once != twice || text != text2 {
            return Err(format!("corpus {k}: `{text}` is not a fixpoint"));
        }
        if let Ok(direct) = to_rational_function(&tree, &vars) {
            let reparsed =
                to_rational_function(&once, &vars).map_err(|e| format!("corpus {k}: {e}"))?;
            if direct != reparsed {
                return Err(format!("corpus {k}: value changed by printing"));
            }
        }
    }

    // (c) JSON payload expressions re-parse to equal values.
    let (bytes, code) = run_cli(&[
        "bmatrix",
        &spec_path("log.json").display().to_string(),
        "--json",
    ])?;
    if code != 0 {
        return Err("bmatrix log.json --json did not pass".into());
    }
    let parsed: serde_json::Value =
        serde_json::from_slice(&bytes).map_err(|e| format!("report is not JSON: {e}"))?;
    let series_vars = Variables::new(&["x", "l", "X"]);
    let b = compute_b(&log_system(), 12).map_err(|e| e.to_string())?;
    for i in 0..2 {
        for j in 0..2 {
            let payload = parsed["payload"]["b"][i][j]
                .as_str()
                .ok_or("missing B payload entry")?;
            let local = print(&b.entry(i, j).to_expression("X"));
            if payload != local {
                return Err(format!(
                    "payload B[{}][{}] differs from direct rendering",
                    i + 1,
                    j + 1
                ));
            }
            let value = to_rational_function(
                &parse(payload, &series_vars).map_err(|e| e.to_string())?,
                &series_vars,
            )
            .map_err(|e| e.to_string())?;
            let direct = to_rational_function(
                &parse(&local, &series_vars).map_err(|e| e.to_string())?,
                &series_vars,
            )
            .map_err(|e| e.to_string())?;
            if value != direct {
                return Err(format!(
                    "payload B[{}][{}] re-parses to a different value",
                    i + 1,
                    j + 1
                ));
            }
        }
    }

    let (bytes, code) = run_cli(&[
        "compare",
        &spec_path("log.json").display().to_string(),
        "--json",
    ])?;
    if code != 0 {
        return Err("compare log.json --json did not pass".into());
    }
    let parsed: serde_json::Value =
        serde_json::from_slice(&bytes).map_err(|e| format!("report is not JSON: {e}"))?;
    let tower_vars = Variables::new(&["x", "l"]);
    for side in ["pv", "hull"] {
        let entry = parsed["payload"][side]["basis"][0][1][0]
            .as_str()
            .ok_or("missing basis payload entry")?;
        let value = to_rational_function(
            &parse(entry, &tower_vars).map_err(|e| e.to_string())?,
            &tower_vars,
        )
        .map_err(|e| e.to_string())?;
        if value != RationalFunction::one(&tower_vars) {
            return Err(format!("{side} basis entry (2,1) should re-parse to 1"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------------

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, Option<Duration>, fn() -> Outcome)> = vec![
        (
            "1: exp B coefficients are 1/k! through order 16, both routes bit-equal",
            Some(Duration::from_secs(1)),
            criterion_1_exp_b_route,
        ),
        (
            "2: log B equals the closed-form expansion through order 16",
            Some(Duration::from_secs(5)),
            criterion_2_log_b_oracle,
        ),
        (
            "3: B coefficients stay in the base field; broken systems are gated",
            Some(Duration::from_secs(30)),
            criterion_3_membership_and_gate,
        ),
        (
            "4: route equivalence and dB/dX = taylor(A)*B on every spec",
            None,
            criterion_4_route_equivalence_and_ode,
        ),
        (
            "5: expansion is a differential-ring morphism on 100 elements per tower",
            None,
            criterion_5_expansion_morphism,
        ),
        (
            "6: constant-side dimensions and echelon bases on the four systems",
            Some(Duration::from_secs(5)),
            criterion_6_constant_side_dimensions,
        ),
        (
            "7: dimensions equal and transport verified, stable at orders 12 and 16",
            Some(Duration::from_secs(60)),
            criterion_7_comparison_stable,
        ),
        (
            "8: constants of the diagonal, two-derivation, and twin-exponential towers",
            None,
            criterion_8_constants,
        ),
        (
            "9: byte-identical reports, 200-expression print fixpoint, JSON re-parse",
            None,
            criterion_9_determinism_roundtrip,
        ),
    ];

    let mut failures = Vec::new();
    for (name, budget, run) in criteria {
        let started = Instant::now();
        let result = run();
        let elapsed = started.elapsed();
        let mut verdict = match &result {
            Ok(()) => "PASS".to_string(),
            Err(e) => format!("FAIL ({e})"),
        };
        if let (Ok(()), Some(limit)) = (&result, budget) {
            if elapsed > limit {
                verdict = format!("FAIL (exceeded budget: {elapsed:.2?} > {limit:.2?})");
            }
        }
        println!("criterion {name}: {verdict} [{elapsed:.2?}]");
        if verdict != "PASS" {
            failures.push(format!("criterion {name}: {verdict}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
