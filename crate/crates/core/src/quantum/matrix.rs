use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::symfield::RatFunc;
use crate::Error;

/// Square matrix over rational functions, stored row-major.
///
/// For divisor operators, column `c` holds the stable coordinates of the
/// image of the `c`-th basis class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    n: usize,
    entries: Vec<RatFunc>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            entries: vec![RatFunc::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Matrix, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("matrix is not square".into()));
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &RatFunc {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: RatFunc) {
        self.entries[row * self.n + col] = v;
    }

    pub fn add_at(&mut self, row: usize, col: usize, v: &RatFunc) {
        let cur = &self.entries[row * self.n + col];
        self.entries[row * self.n + col] = cur + v;
    }

    pub fn row(&self, row: usize) -> &[RatFunc] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RatFunc]> + '_ {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<RatFunc> = (0..n)
                    .filter(|&k| !self.get(i, k).is_zero() && !other.get(k, j).is_zero())
                    .map(|k| self.get(i, k) * other.get(k, j))
                    .collect();
                out.set(i, j, RatFunc::sum(&terms));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| {
                let terms: Vec<RatFunc> = (0..self.n)
                    .filter(|&k| !self.get(i, k).is_zero() && !v[k].is_zero())
                    .map(|k| self.get(i, k) * &v[k])
                    .collect();
                RatFunc::sum(&terms)
            })
            .collect()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}
