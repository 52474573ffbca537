use serde::Serialize;

use coordlab::report::CheckRow;

use crate::config::{ExperimentConfig, OutputFormat};

#[derive(Serialize)]
struct ConfigEcho {
    protocol: String,
    dist: String,
    n: usize,
    k: usize,
    suite: String,
    budget: u64,
    tol: f64,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
    budget_errors: usize,
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    config: ConfigEcho,
    checks: &'a [CheckRow],
    summary: Summary,
}

fn summarize(rows: &[CheckRow]) -> Summary {
    Summary {
        total: rows.len(),
        passed: rows.iter().filter(|r| r.pass).count(),
        failed: rows.iter().filter(|r| !r.pass).count(),
        budget_errors: rows.iter().filter(|r| r.is_budget_error()).count(),
    }
}

/// Renders the report in the requested format. Output is byte-identical
/// across runs for a fixed configuration: rows are emitted in construction
/// order and all numbers are pre-rendered canonically.
pub fn render(cfg: &ExperimentConfig, suite_name: &str, rows: &[CheckRow]) -> String {
    match cfg.format {
        OutputFormat::Json => {
            let report = Report {
                schema: 1,
                config: ConfigEcho {
                    protocol: cfg.protocol_name.clone(),
                    dist: cfg.dist_name.clone(),
                    n: cfg.n,
                    k: cfg.k,
                    suite: suite_name.to_string(),
                    budget: cfg.budget,
                    tol: cfg.tol,
                },
                checks: rows,
                summary: summarize(rows),
            };
            let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
            out.push('\n');
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("id,detail,lhs,rhs,margin,pass,error\n");
            for row in rows {
                let fields = [
                    row.id.as_str(),
                    row.detail.as_str(),
                    row.lhs.as_str(),
                    row.rhs.as_str(),
                    row.margin.as_str(),
                    if row.pass { "true" } else { "false" },
                    row.error.as_deref().unwrap_or(""),
                ];
                let rendered: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
                out.push_str(&rendered.join(","));
                out.push('\n');
            }
            out
        }
    }
}

fn csv_field(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
