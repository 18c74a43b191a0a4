//! Basis-function model selection by training RMSE.
//!
//! A candidate model assigns one basis function (`x`, `x^2`, `ln x` or
//! `sqrt x`) to each predictor; the response is then a linear combination of
//! the transformed predictors plus an intercept. [`select_model`] fits every
//! assignment by least squares and ranks the fits by training RMSE, lowest
//! first. That is the selection procedure as stated, reproduced faithfully:
//! no cross-validation, no information criteria, no regularization. Its
//! failure modes (a rich enough family interpolates anything) are what the
//! polynomial harness below demonstrates.

mod linalg;

use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

use crate::real::Real;

pub use linalg::Matrix;

/// Relative tolerance below which an `R` diagonal counts as a dependent
/// column.
pub const RANK_TOLERANCE: f64 = 1e-10;
/// Condition estimate beyond which a fit carries a warning.
pub const CONDITION_WARNING_THRESHOLD: f64 = 1e8;
/// Conditioning guard for polynomial fits.
pub const MAX_POLY_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegressionError {
    #[error("{basis} is undefined for value {value} (row {row} of column {column})")]
    BasisDomain {
        basis: BasisFunction,
        column: String,
        row: usize,
        value: f64,
    },
    #[error("design matrix has linearly dependent columns (relative tolerance {tolerance:e})")]
    RankDeficient { tolerance: f64 },
    #[error("no candidate model survived domain and rank checks")]
    NoViableCandidate,
    #[error("need at least {needed} rows to fit {predictors} predictors with an intercept, got {rows}")]
    InsufficientRows {
        rows: usize,
        predictors: usize,
        needed: usize,
    },
    #[error("least squares needs at least as many rows as columns, got {rows}x{cols}")]
    Underdetermined { rows: usize, cols: usize },
    #[error("{0}")]
    ShapeMismatch(String),
    #[error("values must be finite: {context}")]
    NonFinite { context: String },
    #[error("duplicate x value {value}: interpolation needs distinct abscissae")]
    DuplicateX { value: f64 },
    #[error("polynomial degree {degree} exceeds the conditioning guard of {max}")]
    DegreeTooHigh { degree: usize, max: usize },
}

/// Elementwise transform applied to one predictor before the linear fit.
///
/// The declaration order doubles as the tie-breaking order wherever a
/// ranking needs one.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum BasisFunction {
    Identity,
    Square,
    Log,
    Sqrt,
}

impl BasisFunction {
    pub const ALL: [BasisFunction; 4] = [
        BasisFunction::Identity,
        BasisFunction::Square,
        BasisFunction::Log,
        BasisFunction::Sqrt,
    ];

    /// Applies the transform; `None` outside the domain (`ln` needs
    /// `x > 0`, `sqrt` needs `x >= 0`).
    pub fn apply<T: Real>(self, x: T) -> Option<T> {
        match self {
            BasisFunction::Identity => Some(x),
            BasisFunction::Square => Some(x * x),
            BasisFunction::Log => (x > T::zero()).then(|| x.ln()),
            BasisFunction::Sqrt => (x >= T::zero()).then(|| x.sqrt()),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BasisFunction::Identity => "identity",
            BasisFunction::Square => "square",
            BasisFunction::Log => "log",
            BasisFunction::Sqrt => "sqrt",
        }
    }
}

impl std::fmt::Display for BasisFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisFunction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "identity" | "x" => Ok(BasisFunction::Identity),
            "square" | "x2" | "x^2" => Ok(BasisFunction::Square),
            "log" | "ln" | "ln(x)" => Ok(BasisFunction::Log),
            "sqrt" | "sqrt(x)" => Ok(BasisFunction::Sqrt),
            other => Err(format!(
                "unknown basis function {other:?}; expected identity, square, log or sqrt"
            )),
        }
    }
}

/// Numeric training table: named predictor columns plus one response.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    names: Vec<String>,
    columns: Vec<Vec<T>>,
    response: Vec<T>,
}

impl<T: Real> Dataset<T> {
    /// Requires equal column lengths, finite values, at least one predictor
    /// and at least `N + 2` rows, so a fit with intercept keeps a degree of
    /// freedom.
    pub fn new(
        names: Vec<String>,
        columns: Vec<Vec<T>>,
        response: Vec<T>,
    ) -> Result<Self, RegressionError> {
        if names.is_empty() || names.len() != columns.len() {
            return Err(RegressionError::ShapeMismatch(format!(
                "{} column names for {} predictor columns",
                names.len(),
                columns.len()
            )));
        }
        let rows = response.len();
        for (name, col) in names.iter().zip(&columns) {
            if col.len() != rows {
                return Err(RegressionError::ShapeMismatch(format!(
                    "column {name} has {} entries, response has {rows}",
                    col.len()
                )));
            }
            if let Some(i) = col.iter().position(|v| !v.is_finite()) {
                return Err(RegressionError::NonFinite {
                    context: format!("row {i} of column {name}"),
                });
            }
        }
        if let Some(i) = response.iter().position(|v| !v.is_finite()) {
            return Err(RegressionError::NonFinite {
                context: format!("row {i} of the response"),
            });
        }
        let needed = names.len() + 2;
        if rows < needed {
            return Err(RegressionError::InsufficientRows {
                rows,
                predictors: names.len(),
                needed,
            });
        }
        Ok(Self {
            names,
            columns,
            response,
        })
    }

    pub fn rows(&self) -> usize {
        self.response.len()
    }

    pub fn predictor_count(&self) -> usize {
        self.columns.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, j: usize) -> &[T] {
        &self.columns[j]
    }

    pub fn response(&self) -> &[T] {
        &self.response
    }
}

/// One fitted candidate: the basis assignment, its coefficients (one per
/// predictor), the intercept and the training RMSE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateFit<T> {
    pub basis_assignment: Vec<BasisFunction>,
    pub coefficients: Vec<T>,
    pub intercept: T,
    pub rmse: T,
    pub condition_warning: bool,
}

/// A candidate that could not be fitted, with the reason it was skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedCandidate {
    pub basis_assignment: Vec<BasisFunction>,
    pub reason: String,
}

/// Outcome of a model search: every successful fit ranked by ascending
/// RMSE, plus the candidates that had to be skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSelection<T> {
    pub fits: Vec<CandidateFit<T>>,
    pub skipped: Vec<SkippedCandidate>,
}

/// Result of a single least-squares solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LsqFit<T> {
    /// One coefficient per design column, in column order.
    pub coefficients: Vec<T>,
    /// Root mean square residual over all training rows.
    pub rmse: T,
    /// Set when the condition estimate of the equilibrated design exceeds
    /// [`CONDITION_WARNING_THRESHOLD`].
    pub condition_warning: bool,
}

/// Applies one basis per predictor and appends the all-ones intercept
/// column.
pub fn design_matrix<T: Real>(
    data: &Dataset<T>,
    assignment: &[BasisFunction],
) -> Result<Matrix<T>, RegressionError> {
    let n = data.predictor_count();
    if assignment.len() != n {
        return Err(RegressionError::ShapeMismatch(format!(
            "{} basis functions assigned to {n} predictors",
            assignment.len()
        )));
    }
    let rows = data.rows();
    let mut m = Matrix::zeros(rows, n + 1);
    for (j, &basis) in assignment.iter().enumerate() {
        let column = data.column(j);
        for (i, &x) in column.iter().enumerate() {
            m[(i, j)] = basis.apply(x).ok_or_else(|| RegressionError::BasisDomain {
                basis,
                column: data.names()[j].clone(),
                row: i,
                value: x.as_f64(),
            })?;
        }
    }
    for i in 0..rows {
        m[(i, n)] = T::one();
    }
    Ok(m)
}

/// Linear least squares on an explicit design matrix, via Householder QR on
/// a column-equilibrated copy (never the normal equations).
pub fn fit_least_squares<T: Real>(
    design: &Matrix<T>,
    response: &[T],
) -> Result<LsqFit<T>, RegressionError> {
    let sol = linalg::least_squares(design, response, T::cast(RANK_TOLERANCE))?;
    Ok(LsqFit {
        coefficients: sol.coefficients,
        rmse: sol.rmse,
        condition_warning: sol.condition_estimate > T::cast(CONDITION_WARNING_THRESHOLD),
    })
}

/// Every assignment of `allowed` bases to `predictors` slots, in
/// lexicographic order of the declaration order. Duplicates in `allowed`
/// are dropped.
pub fn enumerate_assignments(
    allowed: &[BasisFunction],
    predictors: usize,
) -> Vec<Vec<BasisFunction>> {
    let mut bases = allowed.to_vec();
    bases.sort();
    bases.dedup();
    if bases.is_empty() || predictors == 0 {
        return Vec::new();
    }
    let total = bases.len().pow(predictors as u32);
    let mut out = Vec::with_capacity(total);
    let mut indices = vec![0usize; predictors];
    loop {
        out.push(indices.iter().map(|&i| bases[i]).collect());
        // increment the rightmost digit so the output stays lexicographic
        let mut pos = predictors;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < bases.len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// Fits every basis assignment and ranks the successes by ascending
/// training RMSE; ties keep lexicographic assignment order.
///
/// Candidates whose basis domain is violated by the data, or whose design
/// is rank deficient, are recorded as skipped instead of failing the whole
/// search. Only an empty ranking is an error.
pub fn select_model<T: Real>(
    data: &Dataset<T>,
    allowed_bases: &[BasisFunction],
) -> Result<ModelSelection<T>, RegressionError> {
    let assignments = enumerate_assignments(allowed_bases, data.predictor_count());
    let mut fits = Vec::new();
    let mut skipped = Vec::new();
    for assignment in assignments {
        let design = match design_matrix(data, &assignment) {
            Ok(design) => design,
            Err(err) => {
                skipped.push(SkippedCandidate {
                    basis_assignment: assignment,
                    reason: err.to_string(),
                });
                continue;
            }
        };
        match fit_least_squares(&design, data.response()) {
            Ok(fit) if fit.rmse.is_finite() => {
                let mut coefficients = fit.coefficients;
                let intercept = coefficients.pop().expect("design has an intercept column");
                fits.push(CandidateFit {
                    basis_assignment: assignment,
                    coefficients,
                    intercept,
                    rmse: fit.rmse,
                    condition_warning: fit.condition_warning,
                });
            }
            Ok(_) => skipped.push(SkippedCandidate {
                basis_assignment: assignment,
                reason: "fit produced a non-finite rmse".to_owned(),
            }),
            Err(err) => skipped.push(SkippedCandidate {
                basis_assignment: assignment,
                reason: err.to_string(),
            }),
        }
    }
    if fits.is_empty() {
        return Err(RegressionError::NoViableCandidate);
    }
    // stable sort: equal-rmse candidates keep the lexicographic enumeration
    // order, which is the documented tie break
    fits.sort_by(|a, b| a.rmse.partial_cmp(&b.rmse).expect("finite rmse"));
    Ok(ModelSelection { fits, skipped })
}

/// Least-squares polynomial of the given degree through `points`;
/// coefficients in ascending powers of x.
pub fn polynomial_fit<T: Real>(
    points: &[(T, T)],
    degree: usize,
) -> Result<LsqFit<T>, RegressionError> {
    if degree > MAX_POLY_DEGREE {
        return Err(RegressionError::DegreeTooHigh {
            degree,
            max: MAX_POLY_DEGREE,
        });
    }
    if let Some(i) = points
        .iter()
        .position(|(x, y)| !x.is_finite() || !y.is_finite())
    {
        return Err(RegressionError::NonFinite {
            context: format!("point {i}"),
        });
    }
    let rows = points.len();
    let cols = degree + 1;
    let mut design = Matrix::zeros(rows, cols);
    let mut response = Vec::with_capacity(rows);
    for (i, &(x, y)) in points.iter().enumerate() {
        let mut pow = T::one();
        for j in 0..cols {
            design[(i, j)] = pow;
            pow *= x;
        }
        response.push(y);
    }
    fit_least_squares(&design, &response)
}

/// Interpolates `n + 1` points with the degree-`n` polynomial. The fit is
/// exactly determined, so the residuals vanish up to conditioning; that is
/// the whole point of running it.
pub fn interpolating_polynomial<T: Real>(points: &[(T, T)]) -> Result<LsqFit<T>, RegressionError> {
    if points.len() < 2 {
        return Err(RegressionError::ShapeMismatch(
            "interpolation needs at least two points".to_owned(),
        ));
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(prev, _)| prev == x) {
            return Err(RegressionError::DuplicateX { value: x.as_f64() });
        }
    }
    polynomial_fit(points, points.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset(columns: Vec<Vec<f64>>, response: Vec<f64>) -> Dataset<f64> {
        let names = (0..columns.len()).map(|j| format!("x{j}")).collect();
        Dataset::new(names, columns, response).unwrap()
    }

    #[test]
    fn identity_design_is_the_data_plus_ones() {
        let data = dataset(
            vec![vec![1.0, 2.0, 3.0, 4.0], vec![5.0, 6.0, 7.0, 8.0]],
            vec![0.0; 4],
        );
        let m = design_matrix(&data, &[BasisFunction::Identity; 2]).unwrap();
        assert_eq!(m.rows(), 4);
        assert_eq!(m.cols(), 3);
        assert_eq!(m[(2, 0)], 3.0);
        assert_eq!(m[(2, 1)], 7.0);
        assert_eq!(m[(2, 2)], 1.0);
    }

    #[test]
    fn sqrt_of_a_negative_column_names_the_offender() {
        let data = dataset(vec![vec![4.0, -1.0, 9.0]], vec![0.0; 3]);
        let err = design_matrix(&data, &[BasisFunction::Sqrt]).unwrap_err();
        match err {
            RegressionError::BasisDomain {
                basis,
                column,
                row,
                value,
            } => {
                assert_eq!(basis, BasisFunction::Sqrt);
                assert_eq!(column, "x0");
                assert_eq!(row, 1);
                assert_eq!(value, -1.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn log_of_e_column_is_ones() {
        let e = std::f64::consts::E;
        let data = dataset(vec![vec![e, e, e]], vec![0.0; 3]);
        let m = design_matrix(&data, &[BasisFunction::Log]).unwrap();
        for i in 0..3 {
            assert!((m[(i, 0)] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_response_fits_to_zero() {
        let data = dataset(vec![vec![1.0, 2.0, 3.0, 4.0]], vec![0.0; 4]);
        let design = design_matrix(&data, &[BasisFunction::Identity]).unwrap();
        let fit = fit_least_squares(&design, data.response()).unwrap();
        for c in &fit.coefficients {
            assert!(c.abs() < 1e-14);
        }
        assert_eq!(fit.rmse, 0.0);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all = enumerate_assignments(&BasisFunction::ALL, 3);
        assert_eq!(all.len(), 64);
        assert_eq!(all[0], vec![BasisFunction::Identity; 3]);
        assert_eq!(
            all[1],
            vec![
                BasisFunction::Identity,
                BasisFunction::Identity,
                BasisFunction::Square
            ]
        );
        assert_eq!(all[63], vec![BasisFunction::Sqrt; 3]);
        for pair in all.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        // duplicates in the allowed set collapse
        let single = enumerate_assignments(
            &[BasisFunction::Identity, BasisFunction::Identity],
            3,
        );
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn single_basis_set_yields_one_candidate() {
        let data = dataset(
            vec![vec![1.0, 2.0, 3.0, 4.0, 5.0], vec![2.0, 4.0, 8.0, 16.0, 32.0]],
            vec![1.0, 2.0, 3.0, 4.0, 5.0],
        );
        let sel = select_model(&data, &[BasisFunction::Identity]).unwrap();
        assert_eq!(sel.fits.len(), 1);
        assert!(sel.skipped.is_empty());
    }

    #[test]
    fn empty_basis_set_has_no_viable_candidate() {
        let data = dataset(vec![vec![1.0, 2.0, 3.0, 4.0]], vec![1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(
            select_model(&data, &[]),
            Err(RegressionError::NoViableCandidate)
        ));
    }

    #[test]
    fn negative_column_skips_log_and_sqrt_assignments() {
        // column 1 contains a negative value; every assignment putting log
        // or sqrt there is skipped, the rest still fit
        let data = dataset(
            vec![
                vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
                vec![-1.0, 2.5, 3.0, 4.5, 5.0, 6.5],
            ],
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 7.0],
        );
        let sel = select_model(&data, &BasisFunction::ALL).unwrap();
        assert_eq!(sel.fits.len() + sel.skipped.len(), 16);
        assert_eq!(sel.skipped.len(), 8);
        for s in &sel.skipped {
            assert!(matches!(
                s.basis_assignment[1],
                BasisFunction::Log | BasisFunction::Sqrt
            ));
        }
    }

    #[test]
    fn two_points_give_the_unique_line() {
        let fit = interpolating_polynomial(&[(0.0f64, 1.0), (2.0, 5.0)]).unwrap();
        assert!((fit.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 2.0).abs() < 1e-12);
        assert!(fit.rmse < 1e-12);
    }

    #[test]
    fn duplicate_abscissa_is_rejected() {
        let err = interpolating_polynomial(&[(1.0, 0.0), (2.0, 0.0), (1.0, 3.0)]).unwrap_err();
        assert!(matches!(err, RegressionError::DuplicateX { value } if value == 1.0));
    }

    #[test]
    fn degree_guard_is_enforced() {
        let points: Vec<(f64, f64)> = (0..20).map(|i| (i as f64 / 20.0, 0.0)).collect();
        assert!(matches!(
            interpolating_polynomial(&points),
            Err(RegressionError::DegreeTooHigh { degree: 19, max: 12 })
        ));
    }

    #[test]
    fn dataset_needs_headroom_over_predictors() {
        let err = Dataset::new(
            vec!["a".into()],
            vec![vec![1.0, 2.0]],
            vec![1.0, 2.0],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            RegressionError::InsufficientRows {
                rows: 2,
                predictors: 1,
                needed: 3
            }
        ));
    }

    #[test]
    fn basis_names_round_trip_through_fromstr() {
        for basis in BasisFunction::ALL {
            assert_eq!(basis.as_str().parse::<BasisFunction>(), Ok(basis));
        }
        assert!("banana".parse::<BasisFunction>().is_err());
    }
}
