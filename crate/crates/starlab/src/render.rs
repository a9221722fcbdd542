//! Report renderers. CSV and Markdown carry every entry field of the JSON
//! form; floats use the shortest round-tripping exponent notation.

use std::fmt::Write as _;

use starlab_core::report::{Expectation, Status, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

pub fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::PaperDiscrepancy => "paper_discrepancy",
    }
}

fn expect_str(e: Expectation) -> &'static str {
    match e {
        Expectation::Agree => "agree",
        Expectation::Differ => "differ",
    }
}

/// A single report renders as an object, several as an array.
pub fn to_json(reports: &[VerificationReport]) -> String {
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(reports)
    };
    text.expect("reports serialize") + "\n"
}

pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "relation_id", "max_abs_error", "tolerance", "expect", "status", "notes"])
        .expect("in-memory write");
    for r in reports {
        for e in &r.entries {
            w.write_record([
                r.suite.as_str(),
                e.relation_id.as_str(),
                &format!("{:e}", e.max_abs_error),
                &format!("{:e}", e.tolerance),
                expect_str(e.expect),
                status_str(e.status),
                e.notes.as_str(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn to_markdown(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let failed = r.failures().count();
        let _ = writeln!(out, "## {}\n", r.suite);
        let _ = writeln!(out, "{} entries, {} failed\n", r.entries.len(), failed);
        out.push_str("| relation | max abs error | tolerance | expect | status | notes |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for e in &r.entries {
            let _ = writeln!(
                out,
                "| {} | {:e} | {:e} | {} | {} | {} |",
                md_cell(&e.relation_id),
                e.max_abs_error,
                e.tolerance,
                expect_str(e.expect),
                status_str(e.status),
                md_cell(&e.notes)
            );
        }
        let env = &r.environment;
        if let Some(seed) = env.seed {
            let _ = writeln!(out, "\nseed: {seed}");
        }
        for (k, v) in &env.cutoffs {
            let _ = writeln!(out, "cutoff {k}: {v}");
        }
        for (k, v) in &env.tolerances {
            let _ = writeln!(out, "tolerance {k}: {v:e}");
        }
    }
    out
}

pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => to_csv(reports),
        Format::Md => to_markdown(reports),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use starlab_core::report::Entry;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new("demo");
        r.push(Entry::check("Eq.1[a|b]", 1.5e-12, 1e-10).with_notes("note, with comma"));
        r.push(Entry::claim("Eq.2", 0.25, 1e-9));
        r.environment.seed = Some(7);
        r.record_cutoff("oracle", 48);
        r
    }

    #[test]
    fn csv_quotes_and_round_trips_floats() {
        let text = to_csv(&[sample()]);
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(&rows[0][6], "note, with comma");
        assert_eq!(rows[0][2].parse::<f64>().unwrap(), 1.5e-12);
        assert_eq!(&rows[1][5], "paper_discrepancy");
    }

    #[test]
    fn markdown_has_one_table_per_report() {
        let md = to_markdown(&[sample(), sample()]);
        assert_eq!(md.matches("## demo").count(), 2);
        assert!(md.contains("Eq.1[a\\|b]"));
        assert!(md.contains("cutoff oracle: 48"));
    }

    #[test]
    fn json_single_is_object_and_many_is_array() {
        assert!(to_json(&[sample()]).starts_with('{'));
        assert!(to_json(&[sample(), sample()]).starts_with('['));
    }
}
