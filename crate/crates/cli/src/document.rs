//! The JSON input format and its elaboration into tower and system values.
//!
//! Every mathematical payload in a document is a string in the expression
//! grammar — never a numeric array — so exactness survives serialization.
//! The series indeterminate `X` is reserved and rejected as a variable name.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use pvforge_core::{
    parse, to_rational_function, z_symbol, DifferentialTower, ExactMatrix, Expression,
    RationalFunction, SystemSpec, Variables,
};

pub const SPEC_FORMAT: &str = "pvforge-spec/1";

/// A defect in the input file itself, as opposed to a mathematical check
/// that fails; these exit with code 1.
#[derive(Debug)]
pub struct InputError {
    pub file: String,
    pub line: Option<usize>,
    pub expression: Option<String>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        write!(f, ": {}", self.message)?;
        if let Some(e) = &self.expression {
            write!(f, " (in expression `{e}`)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub format: String,
    #[serde(default = "default_derivations")]
    pub derivations: usize,
    pub base: Vec<VariableDef>,
    #[serde(default)]
    pub generators: Vec<VariableDef>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub a: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub z: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub recovery: Option<Vec<String>>,
    #[serde(default)]
    pub probes: Vec<String>,
    #[serde(default)]
    pub order: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDef {
    pub name: String,
    pub rules: Vec<String>,
}

fn default_derivations() -> usize {
    1
}

/// A document elaborated into live values. The raw text is retained for
/// digesting and for locating offending expressions by line.
pub struct LoadedDocument {
    pub file: String,
    pub raw: String,
    pub tower: DifferentialTower,
    pub system: Option<SystemSpec>,
    pub probes: Vec<(String, RationalFunction)>,
    pub order: Option<usize>,
}

impl LoadedDocument {
    /// The system, or an input error for tower-only documents.
    pub fn system(&self) -> Result<&SystemSpec, InputError> {
        self.system.as_ref().ok_or_else(|| InputError {
            file: self.file.clone(),
            line: None,
            expression: None,
            message: "this subcommand needs a linear system, but the document declares \
                      no `n`/`a`/`z` fields"
                .into(),
        })
    }
}

/// 1-based line of the first occurrence of `needle` as a JSON string, for
/// error messages that must point back into the file.
fn find_line(raw: &str, needle: &str) -> Option<usize> {
    let quoted = format!("\"{needle}\"");
    raw.lines()
        .position(|line| line.contains(&quoted))
        .map(|i| i + 1)
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Loader<'a> {
    file: &'a str,
    raw: &'a str,
}

impl<'a> Loader<'a> {
    fn fail(&self, message: String) -> InputError {
        InputError {
            file: self.file.to_string(),
            line: None,
            expression: None,
            message,
        }
    }

    fn fail_at(&self, source: &str, message: String) -> InputError {
        InputError {
            file: self.file.to_string(),
            line: find_line(self.raw, source),
            expression: Some(source.to_string()),
            message,
        }
    }

    /// Parses one grammar string into a field element of `vars`.
    fn element(&self, source: &str, vars: &Variables, role: &str) -> Result<RationalFunction, InputError> {
        let ast = self
            .expression(source, vars, role)?;
        to_rational_function(&ast, vars)
            .map_err(|e| self.fail_at(source, format!("{role}: {e}")))
    }

    fn expression(&self, source: &str, vars: &Variables, role: &str) -> Result<Expression, InputError> {
        parse(source, vars).map_err(|e| self.fail_at(source, format!("{role}: {e}")))
    }

    fn matrix(
        &self,
        entries: &[Vec<String>],
        n: usize,
        vars: &Variables,
        role: &str,
    ) -> Result<ExactMatrix, InputError> {
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(self.fail(format!(
                "{role} must be a {n}x{n} array of expression strings"
            )));
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in entries.iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (j, src) in row.iter().enumerate() {
                out.push(self.element(src, vars, &format!("{role}[{}][{}]", i + 1, j + 1))?);
            }
            rows.push(out);
        }
        Ok(ExactMatrix::from_rows(vars, rows))
    }
}

pub fn load(path: &Path) -> Result<LoadedDocument, InputError> {
    let file = path.display().to_string();
    let raw = std::fs::read_to_string(path).map_err(|e| InputError {
        file: file.clone(),
        line: None,
        expression: None,
        message: format!("cannot read file: {e}"),
    })?;
    let doc: SpecDocument = serde_json::from_str(&raw).map_err(|e| InputError {
        file: file.clone(),
        line: Some(e.line()),
        expression: None,
        message: format!("invalid JSON: {e}"),
    })?;
    let loader = Loader {
        file: &file,
        raw: &raw,
    };

    if doc.format != SPEC_FORMAT {
        return Err(loader.fail(format!(
            "unsupported format `{}` (expected `{SPEC_FORMAT}`)",
            doc.format
        )));
    }
    if doc.derivations == 0 {
        return Err(loader.fail("`derivations` must be at least 1".into()));
    }
    if doc.base.is_empty() {
        return Err(loader.fail("at least one base variable is required".into()));
    }

    let mut seen = Vec::new();
    for def in doc.base.iter().chain(doc.generators.iter()) {
        if def.name == "X" {
            return Err(loader.fail(
                "`X` is reserved for the series indeterminate and cannot name a variable".into(),
            ));
        }
        if !is_identifier(&def.name) {
            return Err(loader.fail(format!(
                "`{}` is not a valid variable name (letter followed by letters, digits or `_`)",
                def.name
            )));
        }
        if seen.contains(&def.name.as_str()) {
            return Err(loader.fail(format!("variable `{}` is declared twice", def.name)));
        }
        seen.push(&def.name);
        if def.rules.len() != doc.derivations {
            return Err(loader.fail(format!(
                "variable `{}` has {} rules but the document declares {} derivation(s)",
                def.name,
                def.rules.len(),
                doc.derivations
            )));
        }
    }

    let base_names: Vec<&str> = doc.base.iter().map(|d| d.name.as_str()).collect();
    let gen_names: Vec<&str> = doc.generators.iter().map(|d| d.name.as_str()).collect();
    let vars = DifferentialTower::variables(&base_names, &gen_names);

    let mut rules = Vec::with_capacity(doc.derivations);
    for d in 0..doc.derivations {
        let mut list = Vec::with_capacity(vars.len());
        for def in doc.base.iter().chain(doc.generators.iter()) {
            list.push(loader.element(
                &def.rules[d],
                &vars,
                &format!("rule {} of `{}`", d + 1, def.name),
            )?);
        }
        rules.push(list);
    }
    let tower = DifferentialTower::new(vars.clone(), doc.base.len(), rules)
        .map_err(|e| loader.fail(e.to_string()))?;

    let has_system = doc.n.is_some() || doc.a.is_some() || doc.z.is_some() || doc.recovery.is_some();
    let system = if has_system {
        let n = doc
            .n
            .ok_or_else(|| loader.fail("system documents must declare `n`".into()))?;
        if n == 0 || n > 9 {
            return Err(loader.fail(format!("`n` must be between 1 and 9, got {n}")));
        }
        let a_entries = doc
            .a
            .as_ref()
            .ok_or_else(|| loader.fail("system documents must declare `a`".into()))?;
        let z_entries = doc
            .z
            .as_ref()
            .ok_or_else(|| loader.fail("system documents must declare `z`".into()))?;
        let a = loader.matrix(a_entries, n, &vars, "a")?;
        let z = loader.matrix(z_entries, n, &vars, "z")?;

        let mut recovery_names: Vec<String> =
            base_names.iter().map(|s| s.to_string()).collect();
        for row in 0..n {
            for col in 0..n {
                recovery_names.push(z_symbol(row, col));
            }
        }
        let recovery_vars = Variables::new(&recovery_names);
        let sources = doc.recovery.as_deref().unwrap_or(&[]);
        let mut recovery_exprs = Vec::with_capacity(sources.len());
        for (k, src) in sources.iter().enumerate() {
            recovery_exprs.push(loader.expression(
                src,
                &recovery_vars,
                &format!("recovery[{}]", k + 1),
            )?);
        }
        Some(
            SystemSpec::new(tower.clone(), a, z, &recovery_exprs)
                .map_err(|e| loader.fail(e.to_string()))?,
        )
    } else {
        None
    };

    let mut probes = Vec::with_capacity(doc.probes.len());
    for (k, src) in doc.probes.iter().enumerate() {
        let value = loader.element(src, &vars, &format!("probes[{}]", k + 1))?;
        probes.push((src.clone(), value));
    }

    Ok(LoadedDocument {
        file,
        raw,
        tower,
        system,
        probes,
        order: doc.order,
    })
}
