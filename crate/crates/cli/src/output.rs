//! Report rendering. JSON mirrors the library types field for field.

use std::io::{self, Write};

use clap::ValueEnum;
use ramify::{DegreeReport, RankReport};
use serde::Serialize;

use crate::selftest::SuiteResult;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn join(parts: &[u32]) -> String {
    parts.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

fn json<T: Serialize>(value: &T, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn label(report: &DegreeReport) -> String {
    match &report.geometry {
        Some(g) => g.clone(),
        None => format!("phi({})", join(&report.partition)),
    }
}

pub fn degree(report: &DegreeReport, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => json(report, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["partition", "geometry", "degree", "agreement", "prime", "seed", "value", "zero_dim", "ms", "budget_exhausted"])?;
            for t in &report.trials {
                w.write_record([
                    join(&report.partition),
                    report.geometry.clone().unwrap_or_else(|| "scroll".into()),
                    opt(report.degree),
                    report.agreement.to_string(),
                    t.prime.to_string(),
                    t.seed.to_string(),
                    opt(t.value),
                    t.zero_dim.to_string(),
                    t.ms.to_string(),
                    t.budget_exhausted.to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Text => {
            let verdict = match (report.degree, report.agreement) {
                (Some(d), true) => d.to_string(),
                _ if report.budget_exhausted() => "unknown (budget exhausted)".into(),
                _ => "unknown (no consensus)".into(),
            };
            writeln!(out, "{} = {verdict}", label(report))?;
            for t in &report.trials {
                let value = match (t.value, t.budget_exhausted) {
                    (Some(v), _) => v.to_string(),
                    (None, true) => "budget".into(),
                    (None, false) => "positive-dimensional".into(),
                };
                writeln!(out, "  p={} seed={}: {value} ({} ms)", t.prime, t.seed, t.ms)?;
            }
            Ok(())
        }
    }
}

pub fn rank(report: &RankReport, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => json(report, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["partition", "dim_gr", "rank", "maximal_variation", "prime", "seed", "trial_rank"])?;
            for t in &report.trials {
                w.write_record([
                    join(&report.partition),
                    report.dim_gr.to_string(),
                    report.rank.to_string(),
                    report.maximal_variation.to_string(),
                    t.prime.to_string(),
                    t.seed.to_string(),
                    t.rank.to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Text => {
            writeln!(
                out,
                "({}): maximal variation {} (rank {} of {})",
                join(&report.partition),
                report.maximal_variation,
                report.rank,
                report.dim_gr
            )?;
            for t in &report.trials {
                writeln!(out, "  p={} seed={}: rank {}", t.prime, t.seed, t.rank)?;
            }
            Ok(())
        }
    }
}

pub fn catalan(n: u32, value: &dyn std::fmt::Display, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        // Written by hand so large values stay exact JSON integers.
        Format::Json => writeln!(out, "{{\"n\": {n}, \"plucker_degree\": {value}}}"),
        Format::Csv => writeln!(out, "n,plucker_degree\n{n},{value}"),
        Format::Text => writeln!(out, "{value}"),
    }
}

/// Cell text for one table entry.
fn cell(report: &DegreeReport) -> String {
    match (report.degree, report.agreement) {
        (Some(d), true) => d.to_string(),
        _ if report.budget_exhausted() => "skipped".into(),
        _ => "?".into(),
    }
}

#[derive(Serialize)]
struct TableEntry<'a> {
    a1: u32,
    a2: u32,
    value: String,
    report: &'a DegreeReport,
}

/// Lower-triangular grid: row `i` and column `j <= i` hold `phi(j, i)`.
pub fn table(reports: &[DegreeReport], max_d: u32, format: Format, out: &mut dyn Write) -> io::Result<()> {
    let size = max_d - 1;
    let lookup = |small: u32, large: u32| reports.iter().find(|r| r.partition == [small, large]);
    match format {
        Format::Json => {
            let entries: Vec<TableEntry> = reports
                .iter()
                .map(|r| TableEntry { a1: r.partition[0], a2: r.partition[1], value: cell(r), report: r })
                .collect();
            json(&entries, out)
        }
        Format::Csv | Format::Text => {
            let rows: Vec<Vec<String>> = (1..=size)
                .map(|i| {
                    let mut row = vec![i.to_string()];
                    row.extend((1..=size).map(|j| if j <= i { lookup(j, i).map(cell).unwrap_or_default() } else { String::new() }));
                    row
                })
                .collect();
            let mut header = vec!["a1\\a2".to_string()];
            header.extend((1..=size).map(|j| j.to_string()));
            if format == Format::Csv {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&header)?;
                for row in &rows {
                    w.write_record(row)?;
                }
                return w.flush();
            }
            let width = rows.iter().chain([&header]).flatten().map(|c| c.len()).max().unwrap_or(1);
            for row in [&header].into_iter().chain(&rows) {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                writeln!(out, "{}", line.join(" ").trim_end())?;
            }
            Ok(())
        }
    }
}

pub fn selftest(results: &[SuiteResult], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => json(&results, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["suite", "pass", "detail"])?;
            for r in results {
                w.write_record([r.name.as_str(), if r.pass { "true" } else { "false" }, r.detail.as_str()])?;
            }
            w.flush()
        }
        Format::Text => {
            for r in results {
                writeln!(out, "{} {} ({})", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail)?;
            }
            let passed = results.iter().filter(|r| r.pass).count();
            writeln!(out, "{passed}/{} suites passed", results.len())
        }
    }
}
