//! Small dense integer matrices: abelianized endomorphisms and elements of `GL_n(Z)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    n: usize,
    a: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix { n, a: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            a.extend_from_slice(r);
        }
        IntMatrix { n, a }
    }

    pub fn from_flat(n: usize, a: Vec<i64>) -> Self {
        assert_eq!(a.len(), n * n);
        IntMatrix { n, a }
    }

    /// `I + m·E_ij` (1-based). As a column operation it adds `m` times column `i` to column `j`.
    pub fn transvection(n: usize, i: usize, j: usize, m: i64) -> Self {
        assert!(i != j && i >= 1 && j >= 1 && i <= n && j <= n);
        let mut g = Self::identity(n);
        g.a[(i - 1) * n + (j - 1)] = m;
        g
    }

    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(n);
        let (i, j) = (i - 1, j - 1);
        g.a[i * n + i] = 0;
        g.a[j * n + j] = 0;
        g.a[i * n + j] = 1;
        g.a[j * n + i] = 1;
        g
    }

    /// The diagonal matrix with `−1` in position `i` (1-based).
    pub fn sign(n: usize, i: usize) -> Self {
        let mut g = Self::identity(n);
        g.a[(i - 1) * n + (i - 1)] = -1;
        g
    }

    /// Generators of `GL_n(Z)`: every `E_ij`, the swap `(1 2)` and `diag(−1, 1, …, 1)`.
    pub fn gl_generators(n: usize) -> Vec<IntMatrix> {
        let mut gens = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    gens.push(Self::transvection(n, i, j, 1));
                }
            }
        }
        gens.push(Self::swap(n, 1, 2));
        gens.push(Self::sign(n, 1));
        gens
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut r = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    r.a[i * n + j] += x * other.get(k, j);
                }
            }
        }
        r
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut r = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                r.a[j * n + i] = self.get(i, j);
            }
        }
        r
    }

    /// Exact determinant by Bareiss elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Exact inverse over the rationals.
    pub fn inverse_rational(&self) -> Result<Vec<Vec<BigRational>>> {
        let n = self.n;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self.get(i, j).into())
                        } else {
                            BigRational::from_integer(BigInt::from(i64::from(j - n == i)))
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
            m.swap(col, p);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in 0..2 * n {
                        let v = &f * &m[col][j];
                        m[r][j] -= v;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Inverse in `GL_n(Z)`.
    pub fn inverse(&self) -> Result<IntMatrix> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let q = self.inverse_rational()?;
        let mut r = Self::zero(self.n);
        for (i, row) in q.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                debug_assert!(x.is_integer());
                r.set(i, j, x.to_integer().to_i64().ok_or(Error::NotUnimodular)?);
            }
        }
        Ok(r)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<i64>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}
