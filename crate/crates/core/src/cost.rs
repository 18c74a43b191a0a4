//! Specific and total investment cost of a wind turbine type.
//!
//! The model prices a turbine per kilowatt of rated capacity from hub
//! height, specific power (rated power over swept rotor area) and market
//! age:
//!
//! ```text
//! specific(hh, p, r, age) = c_hh * ln(hh) + c_sp * p / (r^2 * pi) + c_age * sqrt(age) + intercept
//! ```
//!
//! with `hh` and the rotor radius `r = d / 2` in meters, `p` in watts and
//! `age` in years. Total cost is the specific cost times the rated capacity
//! in kilowatts. The square root makes the model undefined for negative
//! ages, so every operation here rejects them instead of clamping.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::real::Real;

/// Rated power is carried in watts; specific cost is per kW.
const WATTS_PER_KILOWATT: f64 = 1000.0;

/// Inputs outside the model domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CostError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("market age must be finite, got {value}")]
    NonFiniteAge { value: f64 },
    #[error("market age must be non-negative, got {value}: the age term is a square root")]
    NegativeAge { value: f64 },
    #[error("invalid sweep range: {reason}")]
    InvalidSweep { reason: &'static str },
}

pub(crate) fn check_positive<T: Real>(name: &'static str, value: T) -> Result<(), CostError> {
    if value.is_finite() && value > T::zero() {
        Ok(())
    } else {
        Err(CostError::NonPositive {
            name,
            value: value.as_f64(),
        })
    }
}

pub(crate) fn check_age_finite<T: Real>(age: T) -> Result<(), CostError> {
    if age.is_finite() {
        Ok(())
    } else {
        Err(CostError::NonFiniteAge { value: age.as_f64() })
    }
}

/// Physical parameters of one turbine type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurbineSpec<T> {
    /// Hub height in meters.
    pub hub_height: T,
    /// Rotor diameter in meters; the model works with the radius `d / 2`.
    pub rotor_diameter: T,
    /// Rated power in watts.
    pub rated_power: T,
    /// Years on the market before the reference year. Parsing may produce a
    /// negative value (installed after the reference year); cost operations
    /// reject it.
    pub market_age: T,
    /// Display name, if any.
    pub label: Option<String>,
}

impl<T: Real> TurbineSpec<T> {
    /// Validates geometry and power. The age only has to be finite here; a
    /// negative age stays representable so a fleet audit can report it, but
    /// every cost evaluation rejects it.
    pub fn new(
        hub_height: T,
        rotor_diameter: T,
        rated_power: T,
        market_age: T,
    ) -> Result<Self, CostError> {
        check_positive("hub height", hub_height)?;
        check_positive("rotor diameter", rotor_diameter)?;
        check_positive("rated power", rated_power)?;
        check_age_finite(market_age)?;
        Ok(Self {
            hub_height,
            rotor_diameter,
            rated_power,
            market_age,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Rotor radius in meters.
    pub fn rotor_radius(&self) -> T {
        self.rotor_diameter / T::cast(2.0)
    }

    /// Rated power over swept rotor area, W/m^2.
    pub fn specific_power(&self) -> T {
        self.rated_power / (self.rotor_radius().powi(2) * T::PI())
    }
}

/// Coefficients of a specific-cost model (cost per kW of rated capacity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostModel<T> {
    /// Coefficient on the natural log of hub height.
    pub coef_hh: T,
    /// Coefficient on specific power `p / (r^2 * pi)`.
    pub coef_specific_power: T,
    /// Coefficient on the square root of market age.
    pub coef_age: T,
    /// Constant term.
    pub intercept: T,
    /// Unit of the specific cost, carried as opaque text.
    pub currency_unit: String,
}

impl<T: Real> Default for CostModel<T> {
    fn default() -> Self {
        Self::published()
    }
}

impl<T: Real> CostModel<T> {
    /// The published model,
    /// `620 ln(hh) - 1.68 p/(r^2 pi) + 182 sqrt(age) - 1005`,
    /// per kW of rated capacity. The unit text is the presumed one; the
    /// source presents the figures without a unit.
    pub fn published() -> Self {
        Self {
            coef_hh: T::cast(620.0),
            coef_specific_power: T::cast(-1.68),
            coef_age: T::cast(182.0),
            intercept: T::cast(-1005.0),
            currency_unit: "EUR/kW".to_owned(),
        }
    }

    /// The part of the specific cost that does not depend on rated power:
    /// `coef_hh * ln(hh) + coef_age * sqrt(age) + intercept`.
    pub fn power_free_term(&self, hub_height: T, market_age: T) -> Result<T, CostError> {
        check_positive("hub height", hub_height)?;
        check_age_finite(market_age)?;
        if market_age < T::zero() {
            return Err(CostError::NegativeAge {
                value: market_age.as_f64(),
            });
        }
        Ok(self.coef_hh * hub_height.ln() + self.coef_age * market_age.sqrt() + self.intercept)
    }

    /// Slope of the specific cost in rated power,
    /// `coef_specific_power / (r^2 pi)` per watt.
    pub fn power_slope(&self, rotor_diameter: T) -> Result<T, CostError> {
        check_positive("rotor diameter", rotor_diameter)?;
        let r = rotor_diameter / T::cast(2.0);
        Ok(self.coef_specific_power / (r * r * T::PI()))
    }

    /// Specific cost of `spec`, per kW of rated capacity.
    pub fn specific_cost(&self, spec: &TurbineSpec<T>) -> Result<T, CostError> {
        check_positive("rated power", spec.rated_power)?;
        let a = self.power_free_term(spec.hub_height, spec.market_age)?;
        let b = self.power_slope(spec.rotor_diameter)?;
        Ok(a + b * spec.rated_power)
    }

    /// Total cost: rated capacity in kW times the specific cost.
    pub fn total_cost(&self, spec: &TurbineSpec<T>) -> Result<T, CostError> {
        Ok(spec.rated_power / T::cast(WATTS_PER_KILOWATT) * self.specific_cost(spec)?)
    }

    /// Analytic derivative of the total cost in rated power, per watt.
    ///
    /// The total cost is quadratic in `p`; with `A` the power-free term and
    /// `B` the power slope this is `(A + 2 B p) / 1000`, zero exactly at the
    /// cost maximum.
    pub fn total_cost_derivative_p(&self, spec: &TurbineSpec<T>) -> Result<T, CostError> {
        check_positive("rated power", spec.rated_power)?;
        let a = self.power_free_term(spec.hub_height, spec.market_age)?;
        let b = self.power_slope(spec.rotor_diameter)?;
        let two = T::cast(2.0);
        Ok((a + two * b * spec.rated_power) / T::cast(WATTS_PER_KILOWATT))
    }

    /// Analytic second derivative of the total cost in rated power,
    /// `2 B / 1000`. Constant in `p` and negative for the published
    /// coefficients: the total-cost curve is concave.
    pub fn total_cost_second_derivative_p(&self, spec: &TurbineSpec<T>) -> Result<T, CostError> {
        check_positive("rated power", spec.rated_power)?;
        let b = self.power_slope(spec.rotor_diameter)?;
        Ok(T::cast(2.0) * b / T::cast(WATTS_PER_KILOWATT))
    }
}
