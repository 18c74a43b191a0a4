//! Command bodies, parameterized over output writers so tests can drive
//! them directly. All primary output is deterministic: identical inputs and
//! flags produce identical bytes.

use std::io::Write;

use windcost_core::ingest::{parse_uswtdb, read_dataset, write_normalized_csv, ColumnMapping};
use windcost_core::plausibility::region_sweep;
use windcost_core::regression::{select_model, BasisFunction, ModelSelection};
use windcost_core::{CostModel64, TurbineSpec64};

use crate::error::CliError;
use crate::report::{
    build_audit_report, builtin_published_rows, discrepancy_report, trunc2, AuditReport,
    DiscrepancyReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// `eval`: specific and total cost of one turbine, two decimals.
pub fn eval<W: Write>(
    out: &mut W,
    model: &CostModel64,
    hh_m: f64,
    p_watts: f64,
    d_m: f64,
    age_yr: f64,
) -> Result<(), CliError> {
    let spec = TurbineSpec64::new(hh_m, d_m, p_watts, age_yr)?;
    let specific = trunc2(model.specific_cost(&spec)?);
    let total = trunc2(model.total_cost(&spec)?);
    writeln!(out, "specific cost: {specific:.2} {}", model.currency_unit)?;
    writeln!(out, "total cost: {total:.2}")?;
    Ok(())
}

/// `sweep`: total cost over an inclusive rated-power grid, one labeled row
/// per point.
#[allow(clippy::too_many_arguments)]
pub fn sweep<W: Write>(
    out: &mut W,
    model: &CostModel64,
    hh_m: f64,
    d_m: f64,
    age_yr: f64,
    p_min_watts: f64,
    p_max_watts: f64,
    steps: usize,
    format: OutputFormat,
) -> Result<(), CliError> {
    let points = region_sweep(model, hh_m, d_m, age_yr, p_min_watts, p_max_watts, steps)?;
    match format {
        OutputFormat::Csv => {
            writeln!(out, "p_watts,total_cost,category")?;
            for point in &points {
                writeln!(
                    out,
                    "{},{},{}",
                    point.rated_power, point.total_cost, point.category
                )?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &points)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// `audit`: parse a fleet CSV, classify every distinct type, emit the
/// report. Returns the report so the caller can print the human summary.
pub fn audit<R: std::io::Read, W: Write>(
    json_out: &mut W,
    model: &CostModel64,
    csv_reader: R,
    columns: &ColumnMapping,
    reference_year: i32,
    tool_version: &str,
    normalized_out: Option<&mut dyn Write>,
) -> Result<AuditReport, CliError> {
    let summary = parse_uswtdb::<f64, _>(csv_reader, columns, reference_year)?;
    let report = build_audit_report(model, &summary, reference_year, tool_version)?;
    if let Some(writer) = normalized_out {
        write_normalized_csv(&summary.specs, writer)?;
    }
    serde_json::to_writer_pretty(&mut *json_out, &report)?;
    writeln!(json_out)?;
    Ok(report)
}

/// Ranking emitted by `fit`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct FitReport {
    pub response: String,
    pub predictors: Vec<String>,
    pub rows_read: usize,
    pub rows_skipped: usize,
    pub candidates_attempted: usize,
    #[serde(flatten)]
    pub selection: ModelSelection<f64>,
}

/// `fit`: read a numeric table, enumerate basis assignments over the
/// predictors, rank by training RMSE.
pub fn fit<R: std::io::Read, W: Write>(
    json_out: &mut W,
    csv_reader: R,
    response: &str,
    predictors: &[String],
    bases: &[BasisFunction],
) -> Result<FitReport, CliError> {
    let read = read_dataset::<f64, _>(csv_reader, response, predictors)?;
    let selection = select_model(&read.dataset, bases)?;
    let report = FitReport {
        response: response.to_owned(),
        predictors: predictors.to_vec(),
        rows_read: read.rows_read,
        rows_skipped: read.rows_skipped,
        candidates_attempted: selection.fits.len() + selection.skipped.len(),
        selection,
    };
    serde_json::to_writer_pretty(&mut *json_out, &report)?;
    writeln!(json_out)?;
    Ok(report)
}

/// `reproduce-table3`: evaluate the built-in published rows at their
/// vintage ages and at age zero, print both side by side, flag the
/// mismatch pattern.
pub fn reproduce_table3<W: Write>(
    out: &mut W,
    model: &CostModel64,
    json_out: Option<&mut dyn Write>,
) -> Result<DiscrepancyReport, CliError> {
    let report = discrepancy_report(model, &builtin_published_rows())?;
    write!(out, "{}", report.render_table())?;
    if let Some(writer) = json_out {
        serde_json::to_writer_pretty(&mut *writer, &report)?;
        writeln!(writer)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_prints_two_decimal_costs() {
        let model = CostModel64::published();
        let mut out = Vec::new();
        eval(&mut out, &model, 75.0, 3.0e6, 90.0, 14.0).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("specific cost: 1560.58"), "{text}");
        assert!(text.contains("total cost: 4681759.00"), "{text}");
    }

    #[test]
    fn sweep_csv_has_a_header_and_exact_category_names() {
        let model = CostModel64::published();
        let mut out = Vec::new();
        sweep(
            &mut out,
            &model,
            75.0,
            90.0,
            12.0,
            1.0e5,
            1.2e7,
            2,
            OutputFormat::Csv,
        )
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "p_watts,total_cost,category");
        assert!(lines[1].ends_with(",Plausible"));
        assert!(lines[2].ends_with(",NegativeCost"));
    }

    #[test]
    fn reproduce_emits_the_side_by_side_table() {
        let model = CostModel64::published();
        let mut out = Vec::new();
        let report = reproduce_table3(&mut out, &model, None).unwrap();
        assert!(report.rows.iter().all(|r| r.flagged));
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("878"));
        assert!(text.contains("1510.07"));
        assert!(text.contains("879.60"));
        assert!(text.contains("1448"));
        assert!(text.contains("1631.45"));
        assert!(text.contains("1449.45"));
    }
}
