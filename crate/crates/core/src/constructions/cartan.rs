use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Symmetrizable generalized Cartan matrix with its symmetrizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    matrix: Vec<Vec<i64>>,
    symmetrizers: Vec<u32>,
}

impl CartanDatum {
    pub fn new(matrix: Vec<Vec<i64>>, symmetrizers: Vec<u32>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Validation("Cartan matrix is empty".into()));
        }
        if symmetrizers.len() != n {
            return Err(Error::Validation(format!(
                "{} symmetrizers for a rank {n} matrix",
                symmetrizers.len()
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "row {i} of the Cartan matrix has length {}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(Error::Validation(format!(
                    "a_{i}{i} = {} must be 2",
                    matrix[i][i]
                )));
            }
            if symmetrizers[i] == 0 {
                return Err(Error::Validation(format!(
                    "symmetrizer d_{i} must be positive"
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (matrix[i][j], matrix[j][i]);
                if a > 0 {
                    return Err(Error::Validation(format!("a_{i}{j} = {a} must be <= 0")));
                }
                if (a == 0) != (b == 0) {
                    return Err(Error::Validation(format!(
                        "a_{i}{j} = 0 iff a_{j}{i} = 0 violated ({a} vs {b})"
                    )));
                }
                if i64::from(symmetrizers[i]) * a != i64::from(symmetrizers[j]) * b {
                    return Err(Error::Validation(format!(
                        "matrix is not symmetrized by d: d_{i} a_{i}{j} != d_{j} a_{j}{i}"
                    )));
                }
            }
        }
        Ok(CartanDatum {
            matrix,
            symmetrizers,
        })
    }

    pub fn a1() -> Self {
        Self::new(vec![vec![2]], vec![1]).unwrap()
    }

    pub fn a1xa1() -> Self {
        Self::new(vec![vec![2, 0], vec![0, 2]], vec![1, 1]).unwrap()
    }

    pub fn a2() -> Self {
        Self::new(vec![vec![2, -1], vec![-1, 2]], vec![1, 1]).unwrap()
    }

    /// Built-in data by name: `A1`, `A1xA1`, `A2`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "A1" => Some(Self::a1()),
            "A1xA1" => Some(Self::a1xa1()),
            "A2" => Some(Self::a2()),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn d(&self, i: usize) -> u32 {
        self.symmetrizers[i]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn symmetrizers(&self) -> &[u32] {
        &self.symmetrizers
    }

    /// `q_i = q^{d_i}`
    pub fn q_i(&self, i: usize) -> Scalar {
        Scalar::q_pow(i64::from(self.d(i)))
    }

    /// Exponent of `q` in `t_i X_j t_i^{-1}` for an e-type `X_j`.
    pub fn weight(&self, i: usize, j: usize) -> i64 {
        i64::from(self.d(i)) * self.a(i, j)
    }

    /// Short identification used in reports, e.g. `A2` or the raw matrix.
    pub fn label(&self) -> String {
        for name in ["A1", "A1xA1", "A2"] {
            if Self::builtin(name).as_ref() == Some(self) {
                return name.to_string();
            }
        }
        format!("{:?} d={:?}", self.matrix, self.symmetrizers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_zero_pattern() {
        assert!(CartanDatum::new(vec![vec![2, -1], vec![0, 2]], vec![1, 1]).is_err());
    }

    #[test]
    fn rejects_non_symmetrizable() {
        assert!(CartanDatum::new(vec![vec![2, -2], vec![-1, 2]], vec![1, 1]).is_err());
        assert!(CartanDatum::new(vec![vec![2, -2], vec![-1, 2]], vec![1, 2]).is_ok());
    }
}
