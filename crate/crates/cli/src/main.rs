//! Batch front door: ingest a spec file, run one pipeline, emit a
//! deterministic report on standard output. Exit code 0 means every check
//! passed, 2 means a mathematical check failed (with witnesses in the
//! report), 1 means the input itself was unusable. Timing goes to standard
//! error so that stdout is byte-identical across runs.

mod document;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use pvforge_core::{
    check_membership_base, compare_lie, compute_b, hull_lie, print, pv_lie,
    rational_function_to_string, taylor, Error as CoreError, ExactMatrix, LieAlgebraResult,
    RationalFunction, TruncatedSeries, TruncatedSeriesMatrix, DEFAULT_ORDER, STABILITY_GAP,
};

use document::{InputError, LoadedDocument};
use report::{Report, SPLIT_CAVEAT};

#[derive(Parser)]
#[command(
    name = "pvforge",
    about = "Exact workbench for linear differential systems: expansions, \
             transported fundamental matrices, and symmetry dimensions on both \
             the constant and the expansion side",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify Z' = AZ, invertibility of Z, and the recovery expressions
    Check(RunArgs),
    /// Expand the document's probes (or its generators) as series in X
    Taylor(RunArgs),
    /// Compute the transported fundamental matrix B and check its
    /// coefficients stay in the base field
    Bmatrix(RunArgs),
    /// Dimension and echelon basis of the constant-side symmetry algebra
    Pvlie(RunArgs),
    /// Dimension and echelon basis of the expansion-side symmetry algebra
    Hulllie(RunArgs),
    /// Run both sides and verify equal dimensions and a common span
    Compare(RunArgs),
    /// Classify the document's probes: constant, in the scalar field, new
    Constants(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Spec document (JSON, format pvforge-spec/1)
    file: PathBuf,
    /// Truncation order for series work (default: the document's `order`
    /// field, or 12)
    #[arg(long)]
    order: Option<usize>,
    /// Emit the report as JSON instead of structured text
    #[arg(long)]
    json: bool,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Taylor(_) => "taylor",
            Command::Bmatrix(_) => "bmatrix",
            Command::Pvlie(_) => "pvlie",
            Command::Hulllie(_) => "hulllie",
            Command::Compare(_) => "compare",
            Command::Constants(_) => "constants",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::Check(a)
            | Command::Taylor(a)
            | Command::Bmatrix(a)
            | Command::Pvlie(a)
            | Command::Hulllie(a)
            | Command::Compare(a)
            | Command::Constants(a) => a,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = dispatch(&cli);
    eprintln!(
        "elapsed-ms: {:.3}",
        started.elapsed().as_secs_f64() * 1e3
    );
    match outcome {
        Ok((rendered, passed)) => {
            print!("{rendered}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, bool), InputError> {
    let args = cli.command.args();
    let doc = document::load(&args.file)?;
    let order = args.order.or(doc.order).unwrap_or(DEFAULT_ORDER);
    let mut report = Report::new(cli.command.name(), doc.raw.as_bytes());
    match &cli.command {
        Command::Check(_) => run_check(&doc, &mut report)?,
        Command::Taylor(_) => run_taylor(&doc, order, &mut report)?,
        Command::Bmatrix(_) => run_bmatrix(&doc, order, &mut report)?,
        Command::Pvlie(_) => run_pvlie(&doc, &mut report)?,
        Command::Hulllie(_) => run_hulllie(&doc, order, &mut report)?,
        Command::Compare(_) => run_compare(&doc, order, &mut report)?,
        Command::Constants(_) => run_constants(&doc, &mut report)?,
    }
    Ok((report.render(args.json), report.passed()))
}

fn series_string(s: &TruncatedSeries) -> String {
    print(&s.to_expression("X"))
}

fn matrix_row_strings(m: &ExactMatrix) -> Vec<String> {
    (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = (0..m.cols())
                .map(|j| rational_function_to_string(m.get(i, j)))
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect()
}

fn matrix_json(m: &ExactMatrix) -> serde_json::Value {
    json!((0..m.rows())
        .map(|i| (0..m.cols())
            .map(|j| rational_function_to_string(m.get(i, j)))
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn basis_lines(report: &mut Report, label: &str, basis: &[ExactMatrix]) {
    for (k, m) in basis.iter().enumerate() {
        report.line(format!("{label}[{}]:", k + 1));
        for row in matrix_row_strings(m) {
            report.line(format!("  {row}"));
        }
    }
}

fn lie_json(r: &LieAlgebraResult) -> serde_json::Value {
    json!({
        "dimension": r.dimension,
        "basis": r.basis.iter().map(matrix_json).collect::<Vec<_>>(),
        "constraint_rows": r.constraint_rows,
        "constraint_cols": r.constraint_cols,
        "order": r.order,
    })
}

/// Maps a failed symmetry computation onto the check it violates.
fn lie_failure(report: &mut Report, e: &CoreError) {
    match e {
        CoreError::Membership(msg) => {
            report.check("membership-in-base-coefficients", false, Some(msg.clone()));
        }
        CoreError::Unstable {
            order_low,
            dim_low,
            order_high,
            dim_high,
        } => {
            report.check(
                "stability-gate",
                false,
                Some(format!(
                    "dimension {dim_low} at order {order_low} but {dim_high} at order {order_high}; \
                     raise --order"
                )),
            );
        }
        other => {
            report.check("system-valid", false, Some(other.to_string()));
        }
    }
}

fn run_check(doc: &LoadedDocument, report: &mut Report) -> Result<(), InputError> {
    let sys = doc.system()?;
    let fund = match sys.check_fundamental() {
        Ok(f) => f,
        Err(e) => {
            report.check("system-valid", false, Some(e.to_string()));
            report.summary("the system could not be evaluated");
            return Ok(());
        }
    };
    report.line(format!("n: {}", sys.n()));
    report.line(format!(
        "determinant: {}",
        rational_function_to_string(&fund.determinant)
    ));

    let equation_detail = if fund.equation_residuals.is_empty() {
        None
    } else {
        Some(
            fund.equation_residuals
                .iter()
                .map(|r| {
                    format!(
                        "entry ({}, {}) has residual {}",
                        r.row + 1,
                        r.col + 1,
                        rational_function_to_string(&r.residual)
                    )
                })
                .collect::<Vec<_>>()
                .join("; "),
        )
    };
    report.check(
        "fundamental-equation",
        fund.equation_residuals.is_empty(),
        equation_detail,
    );
    report.check(
        "determinant-nonzero",
        fund.determinant_nonzero,
        Some(format!(
            "det Z = {}",
            rational_function_to_string(&fund.determinant)
        )),
    );
    let recovery_detail = if fund.recovery_residuals.is_empty() {
        None
    } else {
        Some(
            fund.recovery_residuals
                .iter()
                .map(|r| {
                    format!(
                        "`{}` misses by {}",
                        r.generator,
                        rational_function_to_string(&r.residual)
                    )
                })
                .collect::<Vec<_>>()
                .join("; "),
        )
    };
    report.check(
        "recovery-expressions",
        fund.recovery_residuals.is_empty(),
        recovery_detail,
    );

    report.payload(json!({
        "n": sys.n(),
        "determinant": rational_function_to_string(&fund.determinant),
        "equation_residuals": fund.equation_residuals.iter().map(|r| json!({
            "row": r.row + 1,
            "col": r.col + 1,
            "residual": rational_function_to_string(&r.residual),
        })).collect::<Vec<_>>(),
        "recovery_residuals": fund.recovery_residuals.iter().map(|r| json!({
            "generator": r.generator,
            "residual": rational_function_to_string(&r.residual),
        })).collect::<Vec<_>>(),
    }));
    report.summary(if fund.passed {
        "Z is a fundamental matrix and the recovery expressions hold".to_string()
    } else {
        "the document's Z is not a fundamental matrix for A".to_string()
    });
    Ok(())
}

fn run_taylor(doc: &LoadedDocument, order: usize, report: &mut Report) -> Result<(), InputError> {
    report.order(order);
    report.caveat(format!("truncation: series are printed through X^{order}"));
    let vars = doc.tower.vars();
    let elements: Vec<(String, RationalFunction)> = if doc.probes.is_empty() {
        (doc.tower.base_count()..vars.len())
            .map(|idx| {
                (
                    vars.name(idx).to_string(),
                    RationalFunction::variable(vars, idx),
                )
            })
            .collect()
    } else {
        doc.probes.clone()
    };
    if elements.is_empty() {
        report.line("no probes and no generators: nothing to expand");
    }
    let mut payload = Vec::new();
    for (source, value) in &elements {
        let series = taylor(value, &doc.tower, order).map_err(|e| InputError {
            file: doc.file.clone(),
            line: None,
            expression: Some(source.clone()),
            message: e.to_string(),
        })?;
        let rendered = series_string(&series);
        report.line(format!("taylor({source}) = {rendered}"));
        payload.push(json!({"source": source, "series": rendered}));
    }
    report.payload(json!({ "elements": payload }));
    report.summary(format!(
        "{} element(s) expanded through order {order}",
        elements.len()
    ));
    Ok(())
}

fn bmatrix_payload(b: &TruncatedSeriesMatrix) -> serde_json::Value {
    json!((0..b.n())
        .map(|i| (0..b.n())
            .map(|j| series_string(b.entry(i, j)))
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn run_bmatrix(doc: &LoadedDocument, order: usize, report: &mut Report) -> Result<(), InputError> {
    let sys = doc.system()?;
    report.order(order);
    report.caveat(format!("truncation: series are computed through X^{order}"));
    let b = match compute_b(sys, order) {
        Ok(b) => b,
        Err(e) => {
            report.check("system-valid", false, Some(e.to_string()));
            report.summary("the transported fundamental matrix is undefined");
            return Ok(());
        }
    };
    report.check("system-valid", true, None);
    for i in 0..b.n() {
        for j in 0..b.n() {
            report.line(format!(
                "B[{}][{}] = {}",
                i + 1,
                j + 1,
                series_string(b.entry(i, j))
            ));
        }
    }
    let membership = check_membership_base(&b, sys.tower());
    let detail = membership.witness.as_ref().map(|w| {
        format!(
            "entry ({}, {}) at degree {} has coefficient {} outside the base field",
            w.row + 1,
            w.col + 1,
            w.degree,
            rational_function_to_string(&w.coefficient)
        )
    });
    report.check("membership-in-base-coefficients", membership.passes, detail);
    report.payload(json!({
        "b": bmatrix_payload(&b),
        "membership": {
            "passes": membership.passes,
            "witness": membership.witness.as_ref().map(|w| json!({
                "row": w.row + 1,
                "col": w.col + 1,
                "degree": w.degree,
                "coefficient": rational_function_to_string(&w.coefficient),
            })),
        },
    }));
    report.summary(if membership.passes {
        format!("B computed through order {order}; all coefficients lie in the base field")
    } else {
        format!("B computed through order {order}; a coefficient leaves the base field")
    });
    Ok(())
}

fn run_pvlie(doc: &LoadedDocument, report: &mut Report) -> Result<(), InputError> {
    let sys = doc.system()?;
    report.caveat(SPLIT_CAVEAT);
    let r = match pv_lie(sys) {
        Ok(r) => r,
        Err(e) => {
            report.check("system-valid", false, Some(e.to_string()));
            report.summary("the constant-side symmetry algebra is undefined");
            return Ok(());
        }
    };
    report.line(format!("dimension: {}", r.dimension));
    report.line(format!(
        "constraint-system: {} rows, {} columns",
        r.constraint_rows, r.constraint_cols
    ));
    basis_lines(report, "basis", &r.basis);
    report.payload(lie_json(&r));
    report.summary(format!("pv dim {}", r.dimension));
    Ok(())
}

fn run_hulllie(doc: &LoadedDocument, order: usize, report: &mut Report) -> Result<(), InputError> {
    let sys = doc.system()?;
    report.orders(order, order + STABILITY_GAP);
    report.caveat(SPLIT_CAVEAT);
    let r = match hull_lie(sys, order) {
        Ok(r) => r,
        Err(e) => {
            lie_failure(report, &e);
            report.summary("the expansion-side symmetry algebra is undefined");
            return Ok(());
        }
    };
    report.check(
        "stability-gate",
        true,
        Some(format!(
            "identical solution space at orders {order} and {}",
            order + STABILITY_GAP
        )),
    );
    report.line(format!("dimension: {}", r.dimension));
    report.line(format!(
        "constraint-system: {} rows, {} columns",
        r.constraint_rows, r.constraint_cols
    ));
    basis_lines(report, "basis", &r.basis);
    report.payload(lie_json(&r));
    report.summary(format!("hull dim {}", r.dimension));
    Ok(())
}

fn run_compare(doc: &LoadedDocument, order: usize, report: &mut Report) -> Result<(), InputError> {
    let sys = doc.system()?;
    report.orders(order, order + STABILITY_GAP);
    report.caveat(SPLIT_CAVEAT);
    let cmp = match compare_lie(sys, order) {
        Ok(c) => c,
        Err(e) => {
            lie_failure(report, &e);
            report.summary("comparison aborted");
            return Ok(());
        }
    };
    report.line(format!("pv dimension: {}", cmp.pv.dimension));
    basis_lines(report, "pv basis", &cmp.pv.basis);
    report.line(format!("hull dimension: {}", cmp.hull.dimension));
    basis_lines(report, "hull basis", &cmp.hull.basis);
    report.check(
        "dimensions-equal",
        cmp.dimensions_equal,
        Some(format!(
            "pv {} vs hull {}",
            cmp.pv.dimension, cmp.hull.dimension
        )),
    );
    report.check(
        "transport-verified",
        cmp.transport_verified,
        Some(if cmp.transport_verified {
            "every constant-side basis matrix lies in the expansion-side span".to_string()
        } else {
            "a constant-side basis matrix falls outside the expansion-side span".to_string()
        }),
    );
    report.payload(json!({
        "pv": lie_json(&cmp.pv),
        "hull": lie_json(&cmp.hull),
        "dimensions_equal": cmp.dimensions_equal,
        "transport_verified": cmp.transport_verified,
        "orders": [cmp.orders.0, cmp.orders.1],
    }));
    report.summary(format!(
        "pv dim {}, hull dim {}, transport {}",
        cmp.pv.dimension,
        cmp.hull.dimension,
        if cmp.transport_verified {
            "verified"
        } else {
            "not verified"
        }
    ));
    Ok(())
}

fn run_constants(doc: &LoadedDocument, report: &mut Report) -> Result<(), InputError> {
    report.caveat(SPLIT_CAVEAT);
    let values: Vec<RationalFunction> = doc.probes.iter().map(|(_, v)| v.clone()).collect();
    let outcome = doc.tower.new_constants_report(&values);
    if doc.probes.is_empty() {
        report.line("no probes declared");
    }
    let mut payload = Vec::new();
    for ((source, _), probe) in doc.probes.iter().zip(outcome.probes.iter()) {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        report.line(format!(
            "probe {source}: constant {}, in-scalar-field {}, new-constant {}",
            yes_no(probe.is_constant),
            yes_no(probe.in_scalar_field),
            yes_no(probe.new_constant)
        ));
        payload.push(json!({
            "source": source,
            "value": rational_function_to_string(&probe.value),
            "is_constant": probe.is_constant,
            "in_scalar_field": probe.in_scalar_field,
            "new_constant": probe.new_constant,
        }));
    }
    let new_count = outcome.probes.iter().filter(|p| p.new_constant).count();
    report.payload(json!({ "probes": payload }));
    report.summary(format!(
        "{} probe(s), {} new constant(s)",
        doc.probes.len(),
        new_count
    ));
    Ok(())
}
