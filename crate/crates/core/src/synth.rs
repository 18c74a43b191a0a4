//! Deterministic synthetic datasets for model-selection round trips.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::real::Real;
use crate::regression::{BasisFunction, Dataset, RegressionError};

/// Realistic sampling box: hub height (m), specific power (W/m^2), market
/// age (yr).
pub const TURBINE_PREDICTOR_BOX: [(f64, f64); 3] = [(50.0, 150.0), (200.0, 600.0), (0.0, 16.0)];
pub const TURBINE_PREDICTOR_NAMES: [&str; 3] = ["hub_height", "specific_power", "market_age"];

/// Lower bound used instead of a non-positive one when a `Log` basis
/// samples the column.
const LOG_SAFE_LOW: f64 = 0.5;

fn effective_low(basis: BasisFunction, low: f64) -> f64 {
    if basis == BasisFunction::Log && low < LOG_SAFE_LOW {
        LOG_SAFE_LOW
    } else {
        low
    }
}

/// Noise-free rows from `y = sum_j beta_j f_j(x_j) + intercept`, with the
/// predictors drawn uniformly from `ranges`. A `Log` basis raises its lower
/// bound to 0.5 so the generated column stays inside the basis domain.
/// Values are computed in `f64` and cast once.
pub fn generate_dataset<T: Real>(
    assignment: &[BasisFunction],
    coefficients: &[f64],
    intercept: f64,
    ranges: &[(f64, f64)],
    names: &[&str],
    rows: usize,
    seed: u64,
) -> Result<Dataset<T>, RegressionError> {
    assert_eq!(assignment.len(), coefficients.len());
    assert_eq!(assignment.len(), ranges.len());
    assert_eq!(assignment.len(), names.len());

    let mut rng = StdRng::seed_from_u64(seed);
    let mut columns: Vec<Vec<T>> = vec![Vec::with_capacity(rows); assignment.len()];
    let mut response = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut y = intercept;
        for (j, (&basis, &(low, high))) in assignment.iter().zip(ranges).enumerate() {
            let x = rng.gen_range(effective_low(basis, low)..=high);
            let fx = basis.apply(x).expect("sample stays inside the basis domain");
            y += coefficients[j] * fx;
            columns[j].push(T::cast(x));
        }
        response.push(T::cast(y));
    }
    Dataset::new(
        names.iter().map(|s| (*s).to_owned()).collect(),
        columns,
        response,
    )
}

/// Coefficients scaled so every term lands on a comparable magnitude over
/// `ranges`, with alternating signs. Keeps round-trip fits far from float
/// cancellation regardless of which basis is under test.
pub fn balanced_coefficients(assignment: &[BasisFunction], ranges: &[(f64, f64)]) -> Vec<f64> {
    assignment
        .iter()
        .zip(ranges)
        .enumerate()
        .map(|(j, (&basis, &(low, high)))| {
            let low = effective_low(basis, low);
            let scale = basis
                .apply(low)
                .unwrap()
                .abs()
                .max(basis.apply(high).unwrap().abs())
                .max(1e-3);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * 500.0 / scale
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_per_seed() {
        let assignment = [BasisFunction::Log, BasisFunction::Identity, BasisFunction::Sqrt];
        let coefficients = [620.0, -1.68, 182.0];
        let a: Dataset<f64> = generate_dataset(
            &assignment,
            &coefficients,
            -1005.0,
            &TURBINE_PREDICTOR_BOX,
            &TURBINE_PREDICTOR_NAMES,
            50,
            7,
        )
        .unwrap();
        let b: Dataset<f64> = generate_dataset(
            &assignment,
            &coefficients,
            -1005.0,
            &TURBINE_PREDICTOR_BOX,
            &TURBINE_PREDICTOR_NAMES,
            50,
            7,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn samples_stay_inside_the_box_and_basis_domains() {
        for basis in BasisFunction::ALL {
            let assignment = [basis; 3];
            let coefficients = balanced_coefficients(&assignment, &TURBINE_PREDICTOR_BOX);
            let data: Dataset<f64> = generate_dataset(
                &assignment,
                &coefficients,
                -250.0,
                &TURBINE_PREDICTOR_BOX,
                &TURBINE_PREDICTOR_NAMES,
                100,
                11,
            )
            .unwrap();
            for (j, &(low, high)) in TURBINE_PREDICTOR_BOX.iter().enumerate() {
                for &x in data.column(j) {
                    assert!(x <= high);
                    assert!(x >= effective_low(basis, low));
                    assert!(basis.apply(x).is_some());
                }
            }
        }
    }

    #[test]
    fn balanced_terms_have_comparable_magnitude() {
        let assignment = [BasisFunction::Square, BasisFunction::Log, BasisFunction::Sqrt];
        let coefficients = balanced_coefficients(&assignment, &TURBINE_PREDICTOR_BOX);
        for (j, (&basis, &(low, high))) in assignment.iter().zip(&TURBINE_PREDICTOR_BOX).enumerate()
        {
            let low = effective_low(basis, low);
            let magnitude = coefficients[j].abs()
                * basis.apply(low).unwrap().abs().max(basis.apply(high).unwrap().abs());
            assert!((magnitude - 500.0).abs() < 1e-9);
        }
    }
}
