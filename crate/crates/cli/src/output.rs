//! Rendering of run results. Data files carry no timings or timestamps, so
//! identical runs give identical bytes; timings go to a sidecar.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::OutputFormat;
use crate::run::{
    CompletenessRow, FrequencyTable, RunResult, Section, StaticRow, Timing, VerdictRow,
};

pub const STATIC_HEADER: [&str; 10] = [
    "problem",
    "N",
    "s",
    "basis",
    "nu",
    "central_err_pct",
    "boundary_err_pct",
    "sup_err",
    "energy",
    "wall_ms",
];
pub const FREQUENCY_HEADER: [&str; 5] = ["m", "n", "omega_est", "omega_exact", "rel_err"];
const VERDICT_HEADER: [&str; 6] = [
    "system",
    "verdict",
    "rank",
    "augmented_rank",
    "dimension",
    "residual",
];
const COMPLETENESS_HEADER: [&str; 5] = ["basis", "product", "N", "residual", "rank"];

pub fn render(result: &RunResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => csv_text(result),
        OutputFormat::Markdown => markdown(result),
        OutputFormat::Json => serde_json::to_string_pretty(result).expect("serializable") + "\n",
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

fn static_record(r: &StaticRow) -> Vec<String> {
    vec![
        r.problem.clone(),
        r.n.to_string(),
        opt(r.s),
        r.basis.clone(),
        opt(r.nu),
        r.central_err_pct.to_string(),
        r.boundary_err_pct.to_string(),
        r.sup_err.to_string(),
        r.energy.to_string(),
        // Timings live in the sidecar.
        String::new(),
    ]
}

fn csv_section(section: &Section) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut write = |record: Vec<String>| w.write_record(&record).expect("in-memory write");
    match section {
        Section::Static(rows) => {
            write(STATIC_HEADER.map(String::from).to_vec());
            rows.iter().for_each(|r| write(static_record(r)));
        }
        Section::Frequencies(table) => {
            write(FREQUENCY_HEADER.map(String::from).to_vec());
            for e in &table.block {
                write(vec![
                    e.m.to_string(),
                    e.n.to_string(),
                    e.omega_est.to_string(),
                    e.omega_exact.to_string(),
                    e.rel_err.to_string(),
                ]);
            }
        }
        Section::Verdicts(rows) => {
            write(VERDICT_HEADER.map(String::from).to_vec());
            for r in rows {
                write(vec![
                    r.system.clone(),
                    r.verdict.clone(),
                    r.rank.to_string(),
                    r.augmented_rank.to_string(),
                    r.dimension.to_string(),
                    r.residual.to_string(),
                ]);
            }
        }
        Section::Completeness(rows) => {
            write(COMPLETENESS_HEADER.map(String::from).to_vec());
            for r in rows {
                write(vec![
                    r.basis.clone(),
                    r.product.clone(),
                    r.n.to_string(),
                    r.residual.to_string(),
                    r.rank.to_string(),
                ]);
            }
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Sections are separated by a blank line.
fn csv_text(result: &RunResult) -> String {
    result
        .sections
        .iter()
        .map(csv_section)
        .collect::<Vec<_>>()
        .join("\n")
}

fn markdown(result: &RunResult) -> String {
    let mut out = format!("# {}\n", result.title);
    for section in &result.sections {
        out.push('\n');
        match section {
            Section::Static(rows) => static_markdown(&mut out, rows),
            Section::Frequencies(table) => frequency_markdown(&mut out, table),
            Section::Verdicts(rows) => verdict_markdown(&mut out, rows),
            Section::Completeness(rows) => completeness_markdown(&mut out, rows),
        }
    }
    if !result.skipped.is_empty() {
        out.push_str("\nSkipped:\n\n");
        for s in &result.skipped {
            let _ = writeln!(out, "- {} N={} s={}: {}", s.problem, s.n, s.s, s.reason);
        }
    }
    out
}

fn static_markdown(out: &mut String, rows: &[StaticRow]) {
    out.push_str(
        "| problem | basis | N | s | central error % | boundary error % | sup error | J |\n",
    );
    out.push_str("|---|---|---:|---:|---:|---:|---:|---:|\n");
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {:.4} | {:.4} | {:.3e} | {:.10} |",
            r.problem,
            r.basis,
            r.n,
            r.s.map_or_else(|| "-".into(), |s| s.to_string()),
            r.central_err_pct,
            r.boundary_err_pct,
            r.sup_err,
            r.energy
        );
    }
}

fn frequency_markdown(out: &mut String, table: &FrequencyTable) {
    let _ = writeln!(
        out,
        "ω(m, n), computed / exact, N = {}, s = {}, ν = {}, {} basis\n",
        table.n, table.s, table.nu, table.basis
    );
    let size = table.block.iter().map(|e| e.m.max(e.n)).max().unwrap_or(0);
    out.push_str("| m \\ n |");
    for n in 1..=size {
        let _ = write!(out, " {n} |");
    }
    out.push_str("\n|---|");
    out.push_str(&"---:|".repeat(size));
    out.push('\n');
    for m in 1..=size {
        let _ = write!(out, "| {m} |");
        for n in 1..=size {
            match table.block.iter().find(|e| (e.m, e.n) == (m, n)) {
                Some(e) => {
                    let _ = write!(out, " {:.5} / {:.5} |", e.omega_est, e.omega_exact);
                }
                None => out.push_str(" - |"),
            }
        }
        out.push('\n');
    }
}

fn verdict_markdown(out: &mut String, rows: &[VerdictRow]) {
    for r in rows {
        let _ = writeln!(
            out,
            "- {}: {} (rank {}/{}, augmented {})",
            r.system, r.verdict, r.rank, r.dimension, r.augmented_rank
        );
    }
}

fn completeness_markdown(out: &mut String, rows: &[CompletenessRow]) {
    out.push_str("| basis | product | N | residual | rank |\n|---|---|---:|---:|---:|\n");
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:.6e} | {} |",
            r.basis, r.product, r.n, r.residual, r.rank
        );
    }
}

#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a [String],
    timings: &'a [Timing],
}

/// Provenance written next to a data file.
pub fn sidecar(result: &RunResult, command: &[String]) -> String {
    let meta = Sidecar {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        timings: &result.timings,
    };
    serde_json::to_string_pretty(&meta).expect("serializable") + "\n"
}

/// One line describing what was produced.
pub fn summary(result: &RunResult) -> String {
    let mut parts = vec![format!("{}: {} rows", result.title, result.row_count())];
    if !result.skipped.is_empty() {
        parts.push(format!("{} skipped", result.skipped.len()));
    }
    for section in &result.sections {
        match section {
            Section::Static(rows) => {
                if let Some(last) = rows.last() {
                    parts.push(format!(
                        "last row central {:.4} %, boundary {:.4} %",
                        last.central_err_pct, last.boundary_err_pct
                    ));
                }
            }
            Section::Frequencies(t) => {
                let worst = t.block.iter().map(|e| e.rel_err.abs()).fold(0.0, f64::max);
                parts.push(format!("max deviation from exact {:.3} %", 100.0 * worst));
            }
            Section::Verdicts(rows) => {
                let verdicts: Vec<&str> = rows.iter().map(|r| r.verdict.as_str()).collect();
                parts.push(verdicts.join("/"));
            }
            Section::Completeness(_) => {}
        }
    }
    let total: f64 = result.timings.iter().map(|t| t.wall_ms).sum();
    parts.push(format!("{total:.0} ms"));
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::FrequencyEntry;

    fn row() -> StaticRow {
        StaticRow {
            problem: "P1".into(),
            n: 9,
            s: None,
            basis: "cosine".into(),
            nu: None,
            n_tot: 9,
            s_tot: 2,
            central_err_pct: 0.5,
            boundary_err_pct: 0.0,
            sup_err: 0.01,
            energy: -1.25,
            reference: "closed form".into(),
            warnings: vec![],
            coefficients: vec![1.0],
            multipliers: vec![-1.5],
        }
    }

    #[test]
    fn static_csv_layout() {
        let result = RunResult {
            title: "t".into(),
            sections: vec![Section::Static(vec![row()])],
            ..Default::default()
        };
        let text = render(&result, OutputFormat::Csv);
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "problem,N,s,basis,nu,central_err_pct,boundary_err_pct,sup_err,energy,wall_ms"
        );
        assert_eq!(lines.next().unwrap(), "P1,9,,cosine,,0.5,0,0.01,-1.25,");
    }

    #[test]
    fn frequency_csv_layout() {
        let entry = FrequencyEntry {
            m: 1,
            n: 1,
            omega_est: 19.6,
            omega_exact: 19.7,
            rel_err: -0.005,
        };
        let table = FrequencyTable {
            n: 10,
            s: 5,
            nu: 0.3,
            basis: "augmented".into(),
            block: vec![entry],
            paired: vec![entry],
        };
        let result = RunResult {
            title: "f".into(),
            sections: vec![Section::Frequencies(table)],
            ..Default::default()
        };
        let text = render(&result, OutputFormat::Csv);
        assert_eq!(
            text,
            "m,n,omega_est,omega_exact,rel_err\n1,1,19.6,19.7,-0.005\n"
        );
        assert!(render(&result, OutputFormat::Markdown).contains("19.60000 / 19.70000"));
    }
}
