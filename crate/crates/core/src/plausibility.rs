//! Where the cost model can be trusted: regimes of rated power.
//!
//! For fixed hub height, rotor and age the total cost is a downward parabola
//! in rated power, so it rises to a single maximum and falls beyond it; the
//! specific cost crosses zero at exactly twice the maximizing power. Above
//! the maximum the model predicts bigger generators getting cheaper in
//! absolute terms, and past the zero crossing it prices them below nothing.
//! Classification is against those two boundaries only; inside the plausible
//! band no statement about the accuracy of the predicted cost is made.

use serde::{Deserialize, Serialize};

use crate::cost::{check_age_finite, check_positive, CostError, CostModel, TurbineSpec};
use crate::real::Real;

/// Regime of a turbine spec relative to the cost model.
///
/// The variants are ordered by severity; scaling the rated power up can only
/// move a verdict down this list, never back towards `Plausible`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    /// At or below the cost maximum: total cost still increases with power.
    Plausible,
    /// Above the cost maximum with non-negative cost: the model predicts
    /// total cost falling as capacity grows.
    ImplausibleDecreasing,
    /// Specific cost below zero. This implies the decreasing pathology as
    /// well; the stronger label wins.
    NegativeCost,
    /// Market age below zero (installed after the reference year), where the
    /// age term is undefined.
    UnsupportedAge,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Plausible => "Plausible",
            Category::ImplausibleDecreasing => "ImplausibleDecreasing",
            Category::NegativeCost => "NegativeCost",
            Category::UnsupportedAge => "UnsupportedAge",
        }
    }
}

impl std::fmt::Display for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classification of one spec together with the boundaries it was judged
/// against. The boundaries are `None` when the model has no cost maximum for
/// the given hub height and age (power-free term not positive: every power
/// is priced negatively) or when the age is unsupported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict<T> {
    pub category: Category,
    /// Rated power at the total-cost maximum, in watts.
    pub critical_power: Option<T>,
    /// Rated power where the specific cost crosses zero, exactly
    /// `2 * critical_power`, in watts.
    pub zero_cost_power: Option<T>,
    /// `rated_power / critical_power`.
    pub margin: Option<T>,
}

/// One grid point of a rated-power sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint<T> {
    #[serde(rename = "p_watts")]
    pub rated_power: T,
    pub total_cost: T,
    pub category: Category,
}

/// Signed partial derivatives of the specific cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sensitivity<T> {
    /// `d specific / d rated_power`, per watt. Negative for the published
    /// coefficients: a larger generator on the same rotor lowers the
    /// predicted specific cost.
    pub d_specific_d_power: T,
    /// `d specific / d rotor_radius`, per meter. Positive for the published
    /// coefficients: a larger rotor on the same generator raises it.
    pub d_specific_d_radius: T,
}

/// Rated power at which the total cost peaks, for fixed hub height, rotor
/// diameter and age.
///
/// With `A` the power-free term and `B` the (negative) power slope the
/// vertex sits at `-A / (2B)`. Returns `Ok(None)` when `A <= 0` (the model
/// prices every power negatively) or `B >= 0` (no interior maximum).
pub fn critical_power<T: Real>(
    model: &CostModel<T>,
    hub_height: T,
    rotor_diameter: T,
    market_age: T,
) -> Result<Option<T>, CostError> {
    let a = model.power_free_term(hub_height, market_age)?;
    let b = model.power_slope(rotor_diameter)?;
    Ok(vertex(a, b))
}

fn vertex<T: Real>(a: T, b: T) -> Option<T> {
    (a > T::zero() && b < T::zero()).then(|| -a / (T::cast(2.0) * b))
}

/// Rated power where the specific cost crosses zero; by vertex symmetry of
/// the parabola this is exactly twice [`critical_power`]. `Ok(None)` under
/// the same degenerate conditions.
pub fn zero_cost_power<T: Real>(
    model: &CostModel<T>,
    hub_height: T,
    rotor_diameter: T,
    market_age: T,
) -> Result<Option<T>, CostError> {
    Ok(critical_power(model, hub_height, rotor_diameter, market_age)?
        .map(|p| T::cast(2.0) * p))
}

/// Classifies a spec against the model's validity boundaries.
///
/// A negative market age yields `UnsupportedAge`. Otherwise a negative
/// specific cost yields `NegativeCost`, a rated power strictly above the
/// cost maximum yields `ImplausibleDecreasing`, and everything else
/// (including power exactly at the maximum) is `Plausible`.
pub fn classify<T: Real>(
    model: &CostModel<T>,
    spec: &TurbineSpec<T>,
) -> Result<Verdict<T>, CostError> {
    check_positive("hub height", spec.hub_height)?;
    check_positive("rotor diameter", spec.rotor_diameter)?;
    check_positive("rated power", spec.rated_power)?;
    check_age_finite(spec.market_age)?;

    if spec.market_age < T::zero() {
        return Ok(Verdict {
            category: Category::UnsupportedAge,
            critical_power: None,
            zero_cost_power: None,
            margin: None,
        });
    }

    let a = model.power_free_term(spec.hub_height, spec.market_age)?;
    let b = model.power_slope(spec.rotor_diameter)?;
    let specific = a + b * spec.rated_power;
    let critical = vertex(a, b);

    let category = if specific < T::zero() {
        Category::NegativeCost
    } else if critical.is_some_and(|p_star| spec.rated_power > p_star) {
        Category::ImplausibleDecreasing
    } else {
        Category::Plausible
    };

    Ok(Verdict {
        category,
        critical_power: critical,
        zero_cost_power: critical.map(|p| T::cast(2.0) * p),
        margin: critical.map(|p| spec.rated_power / p),
    })
}

/// Sweeps total cost over an inclusive, evenly spaced rated-power grid and
/// labels every point. Categories can only degrade along the grid:
/// `Plausible`, then `ImplausibleDecreasing`, then `NegativeCost`.
pub fn region_sweep<T: Real>(
    model: &CostModel<T>,
    hub_height: T,
    rotor_diameter: T,
    market_age: T,
    p_min: T,
    p_max: T,
    steps: usize,
) -> Result<Vec<SweepPoint<T>>, CostError> {
    check_positive("p_min", p_min)?;
    if !p_max.is_finite() || p_max <= p_min {
        return Err(CostError::InvalidSweep {
            reason: "p_max must be finite and greater than p_min",
        });
    }
    if steps < 2 {
        return Err(CostError::InvalidSweep {
            reason: "at least two grid steps are required",
        });
    }

    let span = p_max - p_min;
    let denom = T::cast((steps - 1) as f64);
    let mut points = Vec::with_capacity(steps);
    for i in 0..steps {
        // pin the endpoints so the grid is inclusive bit-for-bit
        let p = if i == steps - 1 {
            p_max
        } else {
            p_min + span * T::cast(i as f64) / denom
        };
        let spec = TurbineSpec::new(hub_height, rotor_diameter, p, market_age)?;
        let verdict = classify(model, &spec)?;
        let total = model.total_cost(&spec)?;
        points.push(SweepPoint {
            rated_power: p,
            total_cost: total,
            category: verdict.category,
        });
    }
    Ok(points)
}

/// Analytic partials of the specific cost in rated power and rotor radius.
///
/// The two enter only through specific power `p / (r^2 pi)`, so for the
/// published negative coefficient they pull in opposite directions.
pub fn sensitivity<T: Real>(
    model: &CostModel<T>,
    spec: &TurbineSpec<T>,
) -> Result<Sensitivity<T>, CostError> {
    check_positive("rated power", spec.rated_power)?;
    // validates hub height and age even though the partials drop them
    model.power_free_term(spec.hub_height, spec.market_age)?;
    let b = model.power_slope(spec.rotor_diameter)?;
    let r = spec.rotor_radius();
    Ok(Sensitivity {
        d_specific_d_power: b,
        d_specific_d_radius: -T::cast(2.0) * b * spec.rated_power / r,
    })
}
