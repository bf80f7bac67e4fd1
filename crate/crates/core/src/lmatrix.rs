//! Square matrices over `Z A_n`.

use std::fmt;

use crate::intmat::IntMatrix;
use crate::laurent::LaurentPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    rank: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(n: usize, rank: usize) -> Self {
        LaurentMatrix {
            n,
            rank,
            entries: vec![LaurentPoly::zero(rank); n * n],
        }
    }

    pub fn identity(n: usize, rank: usize) -> Self {
        let mut m = Self::zero(n, rank);
        for i in 0..n {
            m.entries[i * n + i] = LaurentPoly::one(rank);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.len();
        assert!(n > 0);
        let rank = rows[0][0].rank();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            for x in r {
                assert_eq!(x.rank(), rank);
                entries.push(x);
            }
        }
        LaurentMatrix { n, rank, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring_rank(&self) -> usize {
        self.rank
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.rank)
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut r = Self::zero(n, self.rank);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        r.entries[i * n + j] = &r.entries[i * n + j] + &(x * y);
                    }
                }
            }
        }
        r
    }

    pub fn scale(&self, s: &LaurentPoly) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            rank: self.rank,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn substitute(&self, g: &IntMatrix) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            rank: self.rank,
            entries: self.entries.iter().map(|x| x.substitute(g)).collect(),
        }
    }

    /// Determinant of the submatrix on the given rows and columns, by Laplace
    /// expansion memoized over column subsets.
    fn sub_det(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        let k = rows.len();
        debug_assert_eq!(k, cols.len());
        if k == 0 {
            return LaurentPoly::one(self.rank);
        }
        // d[mask] = det of rows[0..|mask|] against the columns selected by mask
        let mut d = vec![LaurentPoly::zero(self.rank); 1 << k];
        d[0] = LaurentPoly::one(self.rank);
        for mask in 1usize..(1 << k) {
            let r = rows[mask.count_ones() as usize - 1];
            let mut acc = LaurentPoly::zero(self.rank);
            for (p, &c) in cols.iter().enumerate() {
                if mask & (1 << p) == 0 {
                    continue;
                }
                let x = self.get(r, c);
                let rest = &d[mask & !(1 << p)];
                if x.is_zero() || rest.is_zero() {
                    continue;
                }
                let higher = (mask >> (p + 1)).count_ones();
                let term = x * rest;
                acc = if higher % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            d[mask] = acc;
        }
        d.pop().unwrap()
    }

    pub fn det(&self) -> LaurentPoly {
        let idx: Vec<usize> = (0..self.n).collect();
        self.sub_det(&idx, &idx)
    }

    /// The classical adjoint: `adj(M)·M = M·adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> LaurentMatrix {
        let n = self.n;
        let mut r = Self::zero(n, self.rank);
        if n == 1 {
            r.entries[0] = LaurentPoly::one(self.rank);
            return r;
        }
        for i in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&x| x != i).collect();
            for j in 0..n {
                let cols: Vec<usize> = (0..n).filter(|&x| x != j).collect();
                let minor = self.sub_det(&rows, &cols);
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                r.set(j, i, cof);
            }
        }
        r
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentMatrix\n{self}")
    }
}
