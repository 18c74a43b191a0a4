//! Investment-cost modeling and auditing for wind turbines.
//!
//! The crate evaluates a published per-kW turbine cost model, computes the
//! closed-form boundaries of the regime where that model scales sensibly in
//! rated power, classifies real fleets against those boundaries, and
//! reconstructs the basis-function selection procedure the model came from.
//!
//! - [`cost`]: the specific/total cost equations with strict domain checks.
//! - [`plausibility`]: cost maximum, zero-cost crossing, classification,
//!   rated-power sweeps and sensitivities.
//! - [`regression`]: enumerate basis assignments, fit each by least
//!   squares, rank by training RMSE; polynomial interpolation harness.
//! - [`ingest`]: fleet CSV parsing and normalization to distinct types.
//! - [`synth`]: deterministic synthetic datasets for round-trip checks.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below pin the two concrete instantiations. `f64` is what the published
//! constants and the documented tolerances assume.
//!
//! ```
//! use windcost_core::{plausibility, Category, CostModel64, TurbineSpec64};
//!
//! let model = CostModel64::published();
//! let v90 = TurbineSpec64::new(75.0, 90.0, 3.0e6, 12.0).unwrap();
//! assert!((model.specific_cost(&v90).unwrap() - 1510.07).abs() < 0.01);
//! let verdict = plausibility::classify(&model, &v90).unwrap();
//! assert_eq!(verdict.category, Category::Plausible);
//! ```

pub mod cost;
pub mod ingest;
pub mod plausibility;
pub mod real;
pub mod regression;
pub mod synth;

pub use cost::{CostError, CostModel, TurbineSpec};
pub use ingest::{ColumnMapping, DatasetRead, IngestError, IngestSummary, RawTurbineRow, SkipReason};
pub use plausibility::{Category, Sensitivity, SweepPoint, Verdict};
pub use real::Real;
pub use regression::{
    BasisFunction, CandidateFit, Dataset, LsqFit, Matrix, ModelSelection, RegressionError,
    SkippedCandidate,
};

/// Double-precision instantiations; the published constants and the
/// documented tolerances assume these.
pub type CostModel64 = CostModel<f64>;
pub type TurbineSpec64 = TurbineSpec<f64>;
pub type Verdict64 = Verdict<f64>;
pub type Dataset64 = Dataset<f64>;

/// Single-precision instantiations.
pub type CostModel32 = CostModel<f32>;
pub type TurbineSpec32 = TurbineSpec<f32>;
pub type Verdict32 = Verdict<f32>;
pub type Dataset32 = Dataset<f32>;
