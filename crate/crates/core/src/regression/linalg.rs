//! Just enough dense linear algebra for small least-squares problems.

use std::ops::{Index, IndexMut};

use crate::real::Real;
use crate::regression::RegressionError;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column_max_abs(&self, col: usize) -> T {
        (0..self.rows).fold(T::zero(), |acc, i| acc.max(self[(i, col)].abs()))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (row, col): (usize, usize)) -> &T {
        debug_assert!(row < self.rows && col < self.cols);
        &self.data[row * self.cols + col]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (row, col): (usize, usize)) -> &mut T {
        debug_assert!(row < self.rows && col < self.cols);
        &mut self.data[row * self.cols + col]
    }
}

pub(crate) struct Solution<T> {
    pub coefficients: Vec<T>,
    pub rmse: T,
    pub condition_estimate: T,
}

/// Solves `min ||design x - response||` by Householder QR on a
/// column-equilibrated copy. Normal equations are never formed.
///
/// Each column is divided by its max-abs entry before factorization and the
/// coefficients are unscaled afterwards, so the rank tolerance and the
/// condition estimate (ratio of extreme `R` diagonals) are relative
/// quantities.
pub(crate) fn least_squares<T: Real>(
    design: &Matrix<T>,
    response: &[T],
    rank_tolerance: T,
) -> Result<Solution<T>, RegressionError> {
    let m = design.rows();
    let n = design.cols();
    if response.len() != m {
        return Err(RegressionError::ShapeMismatch(format!(
            "design has {m} rows but the response has {} entries",
            response.len()
        )));
    }
    if m < n {
        return Err(RegressionError::Underdetermined { rows: m, cols: n });
    }

    let scale: Vec<T> = (0..n)
        .map(|j| {
            let s = design.column_max_abs(j);
            if s == T::zero() {
                T::one()
            } else {
                s
            }
        })
        .collect();

    let mut a = design.clone();
    for j in 0..n {
        for i in 0..m {
            a[(i, j)] /= scale[j];
        }
    }
    let mut rhs = response.to_vec();

    // Householder reflections; the k-th reflector is stored in column k
    // below the diagonal, the R diagonal goes to `diag`.
    let mut diag = vec![T::zero(); n];
    for k in 0..n {
        let mut norm_sq = T::zero();
        for i in k..m {
            norm_sq += a[(i, k)] * a[(i, k)];
        }
        let norm = norm_sq.sqrt();
        if norm == T::zero() {
            continue; // dependent column; caught by the rank check below
        }
        // pick the sign that avoids cancellation in v = x - alpha * e1
        let alpha = if a[(k, k)] > T::zero() { -norm } else { norm };
        a[(k, k)] -= alpha;
        let mut vtv = T::zero();
        for i in k..m {
            vtv += a[(i, k)] * a[(i, k)];
        }
        diag[k] = alpha;

        for j in k + 1..n {
            let mut dot = T::zero();
            for i in k..m {
                dot += a[(i, k)] * a[(i, j)];
            }
            let factor = T::cast(2.0) * dot / vtv;
            for i in k..m {
                let update = factor * a[(i, k)];
                a[(i, j)] -= update;
            }
        }
        let mut dot = T::zero();
        for i in k..m {
            dot += a[(i, k)] * rhs[i];
        }
        let factor = T::cast(2.0) * dot / vtv;
        for i in k..m {
            let update = factor * a[(i, k)];
            rhs[i] -= update;
        }
    }

    let mut d_max = T::zero();
    let mut d_min = T::infinity();
    for d in diag.iter().map(|d| d.abs()) {
        d_max = d_max.max(d);
        d_min = d_min.min(d);
    }
    if d_max == T::zero() || d_min <= rank_tolerance * d_max {
        return Err(RegressionError::RankDeficient {
            tolerance: rank_tolerance.as_f64(),
        });
    }
    let condition_estimate = d_max / d_min;

    // back substitution on R
    let mut x = vec![T::zero(); n];
    for k in (0..n).rev() {
        let mut acc = rhs[k];
        for j in k + 1..n {
            acc -= a[(k, j)] * x[j];
        }
        x[k] = acc / diag[k];
    }

    let coefficients: Vec<T> = x.iter().zip(&scale).map(|(&c, &s)| c / s).collect();

    let mut ss = T::zero();
    for i in 0..m {
        let mut fitted = T::zero();
        for j in 0..n {
            fitted += design[(i, j)] * coefficients[j];
        }
        let r = response[i] - fitted;
        ss += r * r;
    }
    let rmse = (ss / T::cast(m as f64)).sqrt();

    Ok(Solution {
        coefficients,
        rmse,
        condition_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_tall_consistent_system() {
        // y = 2 + 3x sampled without noise
        let xs: [f64; 5] = [0.0, 1.0, 2.0, 3.0, 4.0];
        let mut a = Matrix::zeros(5, 2);
        let mut y = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            a[(i, 0)] = x;
            a[(i, 1)] = 1.0;
            y.push(2.0 + 3.0 * x);
        }
        let sol = least_squares(&a, &y, 1e-10).unwrap();
        assert!((sol.coefficients[0] - 3.0).abs() < 1e-12);
        assert!((sol.coefficients[1] - 2.0).abs() < 1e-12);
        assert!(sol.rmse < 1e-12);
    }

    #[test]
    fn detects_dependent_columns() {
        let mut a = Matrix::zeros(4, 2);
        for i in 0..4 {
            a[(i, 0)] = (i + 1) as f64;
            a[(i, 1)] = 2.0 * (i + 1) as f64;
        }
        let y = vec![1.0; 4];
        assert!(matches!(
            least_squares(&a, &y, 1e-10),
            Err(RegressionError::RankDeficient { .. })
        ));
    }

    #[test]
    fn rejects_underdetermined_shapes() {
        let a = Matrix::<f64>::zeros(2, 3);
        assert!(matches!(
            least_squares(&a, &[0.0, 0.0], 1e-10),
            Err(RegressionError::Underdetermined { rows: 2, cols: 3 })
        ));
    }
}
