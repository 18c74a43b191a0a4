//! Fleet CSV ingestion: US turbine-database style files in, normalized
//! distinct turbine types out.
//!
//! A row is usable when hub height, rotor diameter, capacity and install
//! year are all present, numeric and positive; anything else is skipped and
//! tallied, never imputed. Capacity arrives in kW and is stored in watts;
//! market age is `reference_year - install_year`, and installs after the
//! reference year are kept with a negative age so classification can report
//! them as unsupported. Types are deduplicated on
//! (manufacturer, model, hub height, rotor diameter, capacity) keeping the
//! earliest observed install year per type.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::TurbineSpec;
use crate::real::Real;
use crate::regression::{Dataset, RegressionError};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("column {0:?} not found in the header")]
    MissingColumn(String),
    #[error("duplicate header column {0:?}")]
    DuplicateColumn(String),
    #[error(transparent)]
    Dataset(#[from] RegressionError),
}

impl IngestError {
    /// True when the underlying failure is I/O rather than data shape.
    pub fn is_io(&self) -> bool {
        matches!(self, IngestError::Csv(e) if matches!(e.kind(), csv::ErrorKind::Io(_)))
    }
}

/// Source column names; the defaults match the US turbine database layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMapping {
    pub model: String,
    pub manufacturer: String,
    pub hub_height: String,
    pub rotor_diameter: String,
    pub capacity_kw: String,
    pub install_year: String,
}

impl Default for ColumnMapping {
    fn default() -> Self {
        Self {
            model: "t_model".to_owned(),
            manufacturer: "t_manu".to_owned(),
            hub_height: "t_hh".to_owned(),
            rotor_diameter: "t_rd".to_owned(),
            capacity_kw: "t_cap".to_owned(),
            install_year: "p_year".to_owned(),
        }
    }
}

/// Why a row was not usable.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// One of the required numeric fields is absent or empty.
    MissingField,
    /// A required field is present but not a finite number.
    InvalidNumber,
    /// A required field parsed but is not positive.
    NonPositive,
}

/// One source row, fields as found. Numeric fields are `None` when absent
/// or empty; they may still fail validation when present.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawTurbineRow {
    pub model_name: String,
    pub manufacturer: String,
    pub hub_height_m: Option<String>,
    pub rotor_diameter_m: Option<String>,
    pub capacity_kw: Option<String>,
    pub install_year: Option<String>,
}

impl RawTurbineRow {
    /// A row is usable only when all four numeric fields are present,
    /// parse as finite numbers and are positive. Returns them in
    /// (hub height, rotor diameter, capacity kW, install year) order.
    pub fn usable(&self) -> Result<(f64, f64, f64, f64), SkipReason> {
        let field = |raw: &Option<String>| -> Result<f64, SkipReason> {
            let raw = raw.as_deref().map(str::trim).unwrap_or("");
            if raw.is_empty() {
                return Err(SkipReason::MissingField);
            }
            let value: f64 = raw.parse().map_err(|_| SkipReason::InvalidNumber)?;
            if !value.is_finite() {
                return Err(SkipReason::InvalidNumber);
            }
            if value <= 0.0 {
                return Err(SkipReason::NonPositive);
            }
            Ok(value)
        };
        Ok((
            field(&self.hub_height_m)?,
            field(&self.rotor_diameter_m)?,
            field(&self.capacity_kw)?,
            field(&self.install_year)?,
        ))
    }
}

/// Result of one fleet parse: counts plus the deduplicated specs in first
/// occurrence order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestSummary<T> {
    pub rows_read: usize,
    pub rows_skipped: usize,
    pub skip_reasons: BTreeMap<SkipReason, usize>,
    pub distinct_types: usize,
    pub specs: Vec<TurbineSpec<T>>,
}

struct TypeGroup {
    manufacturer: String,
    model: String,
    hub_height: f64,
    rotor_diameter: f64,
    capacity_kw: f64,
    earliest_year: f64,
}

type GroupKey = (String, String, u64, u64, u64);

fn header_indices(
    headers: &csv::StringRecord,
    columns: &ColumnMapping,
) -> Result<[usize; 6], IngestError> {
    for (i, name) in headers.iter().enumerate() {
        if headers.iter().take(i).any(|prev| prev == name) {
            return Err(IngestError::DuplicateColumn(name.to_owned()));
        }
    }
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::MissingColumn(name.to_owned()))
    };
    Ok([
        find(&columns.model)?,
        find(&columns.manufacturer)?,
        find(&columns.hub_height)?,
        find(&columns.rotor_diameter)?,
        find(&columns.capacity_kw)?,
        find(&columns.install_year)?,
    ])
}

fn optional_field(record: &csv::StringRecord, idx: usize) -> Option<String> {
    record
        .get(idx)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
}

/// Parses a fleet CSV into deduplicated turbine specs.
///
/// Structural problems (unreadable CSV, duplicate header columns, a missing
/// mapped column) are fatal; per-row garbage is a skip. `reference_year` is
/// the year ages are counted back from.
pub fn parse_uswtdb<T: Real, R: Read>(
    reader: R,
    columns: &ColumnMapping,
    reference_year: i32,
) -> Result<IngestSummary<T>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let [model_idx, manu_idx, hh_idx, rd_idx, cap_idx, year_idx] =
        header_indices(&headers, columns)?;

    let mut rows_read = 0usize;
    let mut rows_skipped = 0usize;
    let mut skip_reasons: BTreeMap<SkipReason, usize> = BTreeMap::new();
    let mut groups: Vec<TypeGroup> = Vec::new();
    let mut index: HashMap<GroupKey, usize> = HashMap::new();

    for record in rdr.records() {
        let record = record?;
        rows_read += 1;

        let raw = RawTurbineRow {
            model_name: record.get(model_idx).map(str::trim).unwrap_or("").to_owned(),
            manufacturer: record.get(manu_idx).map(str::trim).unwrap_or("").to_owned(),
            hub_height_m: optional_field(&record, hh_idx),
            rotor_diameter_m: optional_field(&record, rd_idx),
            capacity_kw: optional_field(&record, cap_idx),
            install_year: optional_field(&record, year_idx),
        };
        let (hub_height, rotor_diameter, capacity_kw, year) = match raw.usable() {
            Ok(values) => values,
            Err(reason) => {
                rows_skipped += 1;
                *skip_reasons.entry(reason).or_insert(0) += 1;
                continue;
            }
        };

        let key: GroupKey = (
            raw.manufacturer.clone(),
            raw.model_name.clone(),
            hub_height.to_bits(),
            rotor_diameter.to_bits(),
            capacity_kw.to_bits(),
        );
        match index.get(&key) {
            Some(&at) => {
                let group = &mut groups[at];
                if year < group.earliest_year {
                    group.earliest_year = year;
                }
            }
            None => {
                index.insert(key, groups.len());
                groups.push(TypeGroup {
                    manufacturer: raw.manufacturer,
                    model: raw.model_name,
                    hub_height,
                    rotor_diameter,
                    capacity_kw,
                    earliest_year: year,
                });
            }
        }
    }

    let specs = groups
        .iter()
        .map(|g| {
            let label = match (g.manufacturer.is_empty(), g.model.is_empty()) {
                (true, true) => None,
                (true, false) => Some(g.model.clone()),
                (false, true) => Some(g.manufacturer.clone()),
                (false, false) => Some(format!("{} {}", g.manufacturer, g.model)),
            };
            TurbineSpec {
                hub_height: T::cast(g.hub_height),
                rotor_diameter: T::cast(g.rotor_diameter),
                rated_power: T::cast(g.capacity_kw * 1000.0),
                market_age: T::cast(f64::from(reference_year) - g.earliest_year),
                label,
            }
        })
        .collect::<Vec<_>>();

    Ok(IngestSummary {
        rows_read,
        rows_skipped,
        skip_reasons,
        distinct_types: specs.len(),
        specs,
    })
}

/// A generic numeric table read for the regression front end.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRead<T> {
    pub dataset: Dataset<T>,
    pub rows_read: usize,
    /// Rows dropped because a used field was absent or not a finite number.
    pub rows_skipped: usize,
}

/// Reads named numeric columns into a [`Dataset`]. Rows with missing or
/// non-numeric entries in any used column are dropped and counted.
pub fn read_dataset<T: Real, R: Read>(
    reader: R,
    response: &str,
    predictors: &[String],
) -> Result<DatasetRead<T>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    for (i, name) in headers.iter().enumerate() {
        if headers.iter().take(i).any(|prev| prev == name) {
            return Err(IngestError::DuplicateColumn(name.to_owned()));
        }
    }
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::MissingColumn(name.to_owned()))
    };
    let response_idx = find(response)?;
    let predictor_idx = predictors
        .iter()
        .map(|name| find(name))
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows_read = 0usize;
    let mut rows_skipped = 0usize;
    let mut columns: Vec<Vec<T>> = vec![Vec::new(); predictors.len()];
    let mut response_values: Vec<T> = Vec::new();

    'rows: for record in rdr.records() {
        let record = record?;
        rows_read += 1;
        let mut row = Vec::with_capacity(predictors.len() + 1);
        for &idx in predictor_idx.iter().chain(std::iter::once(&response_idx)) {
            let raw = record.get(idx).map(str::trim).unwrap_or("");
            match raw.parse::<f64>() {
                Ok(v) if v.is_finite() => row.push(v),
                _ => {
                    rows_skipped += 1;
                    continue 'rows;
                }
            }
        }
        let y = row.pop().expect("row holds the response");
        for (col, v) in columns.iter_mut().zip(row) {
            col.push(T::cast(v));
        }
        response_values.push(T::cast(y));
    }

    let dataset = Dataset::new(predictors.to_vec(), columns, response_values)?;
    Ok(DatasetRead {
        dataset,
        rows_read,
        rows_skipped,
    })
}

/// Writes the normalized fleet, one row per distinct type:
/// `label,hh_m,rotor_d_m,power_w,age_yr`.
pub fn write_normalized_csv<T: Real, W: Write>(
    specs: &[TurbineSpec<T>],
    writer: W,
) -> Result<(), IngestError> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["label", "hh_m", "rotor_d_m", "power_w", "age_yr"])?;
    for spec in specs {
        wtr.write_record([
            spec.label.clone().unwrap_or_default(),
            spec.hub_height.to_string(),
            spec.rotor_diameter.to_string(),
            spec.rated_power.to_string(),
            spec.market_age.to_string(),
        ])?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}
