//! Deterministic JSON, CSV and LaTeX renderings.

use intgeo_core::table::{FormulaTableDocument, MatrixDocument};
use intgeo_core::verify::CheckReport;
use intgeo_mc::McEstimate;
use serde::Serialize;
use serde_json::json;

use crate::args::Format;
use crate::CliError;

#[derive(Clone, Debug)]
pub enum Artifact {
    Table(FormulaTableDocument),
    Matrices(Vec<MatrixDocument>),
    Checks(Vec<CheckReport>),
    Estimates(Vec<McEstimate>),
}

impl Artifact {
    /// False when a check failed or an estimate is a hard outlier.
    pub fn passed(&self) -> bool {
        match self {
            Artifact::Checks(c) => c.iter().all(|r| r.passed),
            Artifact::Estimates(e) => intgeo_mc::suite::within(e, intgeo_mc::suite::Z_FAIL),
            _ => true,
        }
    }
}

pub fn emit(artifact: &Artifact, format: Format) -> Result<Vec<u8>, CliError> {
    let text = match format {
        Format::Json => to_json(artifact)?,
        Format::Csv => to_csv(artifact)?,
        Format::Latex => to_latex(artifact),
    };
    Ok(text.into_bytes())
}

/// Pretty JSON with object keys in sorted order.
pub fn sorted_json<T: Serialize>(x: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(x).map_err(|e| CliError::Output(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn to_json(a: &Artifact) -> Result<String, CliError> {
    match a {
        Artifact::Table(t) => sorted_json(t),
        Artifact::Matrices(m) => sorted_json(&json!({ "matrices": m })),
        Artifact::Checks(c) => sorted_json(&json!({ "checks": c, "passed": a.passed() })),
        Artifact::Estimates(e) => sorted_json(&json!({ "estimates": e, "passed": a.passed() })),
    }
}

fn to_csv(a: &Artifact) -> Result<String, CliError> {
    if let Artifact::Estimates(e) = a {
        return Ok(intgeo_mc::suite::to_csv(e));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Output(e.to_string());
    match a {
        Artifact::Table(t) => {
            w.write_record([
                "group", "dimension", "operator", "basis", "normalization", "input", "left", "right",
                "lambda_power", "coefficient",
            ])
            .map_err(err)?;
            for term in &t.terms {
                w.write_record([
                    t.group.as_str(),
                    &t.dimension.to_string(),
                    &t.operator,
                    &t.basis,
                    &t.normalization,
                    &term.input_label,
                    &term.left_label,
                    &term.right_label,
                    &term.lambda_power.to_string(),
                    &term.coefficient.to_string(),
                ])
                .map_err(err)?;
            }
        }
        Artifact::Matrices(ms) => {
            w.write_record(["title", "group", "dimension", "normalization", "row", "col", "coefficient"]).map_err(err)?;
            for m in ms {
                for (i, row) in m.rows.iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        w.write_record([
                            m.title.as_str(),
                            &m.group,
                            &m.dimension.to_string(),
                            &m.normalization,
                            &m.row_labels[i],
                            &m.col_labels[j],
                            &c.to_string(),
                        ])
                        .map_err(err)?;
                    }
                }
            }
        }
        Artifact::Checks(cs) => {
            w.write_record(["suite", "name", "passed", "detail"]).map_err(err)?;
            for c in cs {
                w.write_record([c.suite.as_str(), &c.name, &c.passed.to_string(), &c.detail]).map_err(err)?;
            }
        }
        Artifact::Estimates(_) => unreachable!(),
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn escape(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        match ch {
            '_' | '&' | '%' | '#' | '$' => {
                out.push('\\');
                out.push(ch);
            }
            _ => out.push(ch),
        }
    }
    out
}

fn to_latex(a: &Artifact) -> String {
    let mut out = String::new();
    match a {
        Artifact::Table(t) => {
            out.push_str(&format!(
                "% {}({}) {} formula, basis {}, normalization {}\n",
                t.group, t.dimension, t.operator, t.basis, t.normalization
            ));
            out.push_str("\\begin{tabular}{lll}\n\\hline\ninput & term & coefficient \\\\\n\\hline\n");
            for term in &t.terms {
                let lambda = match term.lambda_power {
                    0 => String::new(),
                    1 => "\\lambda ".into(),
                    p => format!("\\lambda^{{{p}}} "),
                };
                out.push_str(&format!(
                    "${}$ & ${}{} \\otimes {}$ & ${}$ \\\\\n",
                    term.input_label,
                    lambda,
                    term.left_label,
                    term.right_label,
                    term.coefficient.to_latex()
                ));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
        }
        Artifact::Matrices(ms) => {
            for m in ms {
                out.push_str(&format!(
                    "% {} ({}({}), normalization {}, basis {})\n% rows: {}\n% columns: {}\n",
                    m.title,
                    m.group,
                    m.dimension,
                    m.normalization,
                    m.basis,
                    m.row_labels.join(" "),
                    m.col_labels.join(" ")
                ));
                out.push_str("\\[\n\\begin{pmatrix}\n");
                for row in &m.rows {
                    let cells: Vec<String> = row.iter().map(|c| c.to_latex()).collect();
                    out.push_str(&format!("{} \\\\\n", cells.join(" & ")));
                }
                out.push_str("\\end{pmatrix}\n\\]\n");
            }
        }
        Artifact::Checks(cs) => {
            out.push_str("\\begin{tabular}{lll}\n\\hline\nsuite & check & result \\\\\n\\hline\n");
            for c in cs {
                out.push_str(&format!(
                    "{} & {} & {} \\\\\n",
                    escape(&c.suite),
                    escape(&c.name),
                    if c.passed { "PASS" } else { "FAIL" }
                ));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
        }
        Artifact::Estimates(es) => {
            out.push_str("\\begin{tabular}{lrrrrr}\n\\hline\ntest & samples & estimate & stderr & prediction & $z$ \\\\\n\\hline\n");
            for e in es {
                let opt = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_else(|| "--".into());
                out.push_str(&format!(
                    "{} & {} & {:.6} & {:.6} & {} & {} \\\\\n",
                    escape(&e.test),
                    e.samples,
                    e.mean,
                    e.stderr,
                    opt(e.prediction_value),
                    opt(e.z)
                ));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
        }
    }
    out
}
