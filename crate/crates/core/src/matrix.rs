//! Dense matrices over exact rationals, with the Lie bracket as the basic
//! operation. Sized for the rank range the tables need (d up to a few
//! dozen); no sparsity, no pivot tricks.

use crate::exact::{rat, rational_to_string, Rational};
use crate::Error;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    /// Matrix with the given integers on the main diagonal.
    pub fn diagonal(values: &[i64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { rat(values[i]) } else { Rational::zero() })
    }

    /// Elementary matrix sending basis vector `j` to basis vector `i`
    /// (1-based indices): single nonzero entry at row `i`, column `j`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        assert!(i >= 1 && i <= n && j >= 1 && j <= n);
        let mut m = Self::zeros(n, n);
        m[(i - 1, j - 1)] = Rational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| i == j || self[(i, j)].is_zero())
            })
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * s)
    }

    pub fn trace(&self) -> Rational {
        self.diagonal_entries().into_iter().sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Lie bracket `AB - BA`. Errors on dimension mismatch.
    pub fn bracket(&self, other: &Self) -> Result<Self, Error> {
        if !self.is_square() || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        Ok(&(self * other) - &(other * self))
    }

    /// JSON array-of-arrays of `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.cols)
                            .map(|j| serde_json::Value::String(rational_to_string(&self[(i, j)])))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| rational_to_string(&self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_bracket_relations() {
        // [pi^{i,j}, pi^{j,i}] = pi^i - pi^j for i != j
        let n = 4;
        let p12 = ExactMatrix::elementary(n, 1, 2);
        let p21 = ExactMatrix::elementary(n, 2, 1);
        let got = p12.bracket(&p21).unwrap();
        let want = &ExactMatrix::elementary(n, 1, 1) - &ExactMatrix::elementary(n, 2, 2);
        assert_eq!(got, want);
    }

    #[test]
    fn elementary_bracket_chain() {
        // [pi^{1,2}, pi^{2,3}] = pi^{1,3} in 3x3
        let p12 = ExactMatrix::elementary(3, 1, 2);
        let p23 = ExactMatrix::elementary(3, 2, 3);
        assert_eq!(p12.bracket(&p23).unwrap(), ExactMatrix::elementary(3, 1, 3));
    }

    #[test]
    fn bracket_self_is_zero() {
        let m = ExactMatrix::from_fn(3, 3, |i, j| rat((2 * i + 3 * j) as i64 - 4));
        assert!(m.bracket(&m).unwrap().is_zero());
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let a = ExactMatrix::zeros(2, 2);
        let b = ExactMatrix::zeros(3, 3);
        assert!(a.bracket(&b).is_err());
    }
}
