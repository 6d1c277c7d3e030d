use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
    Text,
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// A report that can be rendered in every output format.
pub trait Report: Serialize {
    fn title(&self) -> String;
    /// Key/value lines shown above the table in text and markdown.
    fn summary(&self) -> Vec<(&'static str, String)>;
    fn table(&self) -> Table;
}

pub fn render<R: Report>(report: &R, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => csv_table(&report.table())?,
        Format::Markdown => markdown(report),
        Format::Text => text(report),
    })
}

fn csv_table(t: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers)?;
    for row in &t.rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn markdown<R: Report>(r: &R) -> String {
    let mut out = format!("# {}\n\n", r.title());
    for (k, v) in r.summary() {
        let _ = writeln!(out, "- **{k}**: {}", cell(&v));
    }
    let t = r.table();
    if !t.rows.is_empty() {
        let _ = writeln!(out, "\n| {} |", t.headers.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(t.headers.len()));
        for row in &t.rows {
            let cells: Vec<String> = row.iter().map(|c| cell(c)).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
    }
    out
}

fn text<R: Report>(r: &R) -> String {
    let mut out = format!("{}\n", r.title());
    for (k, v) in r.summary() {
        let _ = writeln!(out, "{k}: {v}");
    }
    let t = r.table();
    if !t.rows.is_empty() {
        let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
        for row in &t.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        out.push('\n');
        let line = |cells: Vec<&str>| {
            let last = cells.len() - 1;
            cells
                .iter()
                .enumerate()
                .map(|(i, c)| if i == last { c.to_string() } else { format!("{c:<w$}", w = widths[i]) })
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(out, "{}", line(t.headers.clone()));
        for row in &t.rows {
            let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Demo {
        schema: u32,
        name: &'static str,
    }

    impl Report for Demo {
        fn title(&self) -> String {
            "demo".into()
        }
        fn summary(&self) -> Vec<(&'static str, String)> {
            vec![("name", self.name.into())]
        }
        fn table(&self) -> Table {
            Table { headers: vec!["a", "b"], rows: vec![vec!["1".into(), "x|y".into()]] }
        }
    }

    #[test]
    fn formats() {
        let d = Demo { schema: 1, name: "n" };
        assert_eq!(render(&d, Format::Csv).unwrap(), "a,b\n1,x|y\n");
        assert!(render(&d, Format::Markdown).unwrap().contains("| 1 | x\\|y |"));
        assert!(render(&d, Format::Json).unwrap().contains("\"schema\": 1"));
        assert_eq!(render(&d, Format::Text).unwrap(), "demo\nname: n\n\na  b\n1  x|y\n");
    }
}
