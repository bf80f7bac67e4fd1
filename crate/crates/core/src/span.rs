//! Dimensions of `GL_n`-submodules of `gr_{c,Q}(M_n)^{⊕n}` generated by seed tuples.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::graded::{bullet, graded_basis, GrTuple, GradedVector};
use crate::intmat::IntMatrix;

/// Echelon basis of a subspace of `Q^N`, stored as primitive integer rows keyed by
/// the position of their first nonzero entry.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Vec<BigInt>>,
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if g.is_zero() {
        return;
    }
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

impl Echelon {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder, which is zero iff `v`
    /// already lies in the span.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let mut start = 0;
        while let Some(i) = (start..v.len()).find(|&i| !v[i].is_zero()) {
            let Some(row) = self.rows.get(&i) else {
                return v;
            };
            let a = row[i].clone();
            let b = v[i].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            for (x, r) in v.iter_mut().zip(row).skip(i) {
                *x = &*x * &fa - r * &fb;
            }
            make_primitive(&mut v);
            start = i + 1;
        }
        v.iter_mut().for_each(|x| *x = BigInt::zero());
        v
    }

    /// Adds `v` to the span; returns the new basis row if the dimension grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> Option<Vec<BigInt>> {
        let mut r = self.reduce(v);
        let lead = r.iter().position(|x| !x.is_zero())?;
        make_primitive(&mut r);
        self.rows.insert(lead, r.clone());
        Some(r)
    }

    pub fn contains(&self, v: Vec<BigInt>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

fn integer_row(dense: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in dense {
        l = l.lcm(x.denom());
    }
    let lq = BigRational::from_integer(l);
    dense.iter().map(|x| (x * &lq).to_integer()).collect()
}

/// The matrix of `t ↦ g • t` in dense coordinates, stored by columns.
fn bullet_matrix(g: &IntMatrix, n: usize, c: usize) -> Result<Vec<Vec<(usize, BigRational)>>> {
    let gb = graded_basis(n, c);
    let r = gb.len();
    let elements = gb.elements().to_vec();
    (0..n * r)
        .into_par_iter()
        .map(|k| {
            let mut slots = vec![GradedVector::zero(n, c); n];
            slots[k / r] = GradedVector::unit(n, elements[k % r].clone());
            let image = bullet(g, &GrTuple::new(slots)?)?;
            Ok(image
                .to_dense()
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect())
        })
        .collect()
}

fn apply(m: &[Vec<(usize, BigRational)>], v: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigRational::zero(); v.len()];
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let xq = BigRational::from_integer(x.clone());
        for (j, y) in &m[k] {
            out[*j] += &xq * y;
        }
    }
    integer_row(&out)
}

/// Smallest subspace containing `seeds` and stable under `t ↦ g • t` for every
/// generator and its inverse.
pub fn span_closure(seeds: &[GrTuple], generators: &[IntMatrix]) -> Result<Echelon> {
    let mut ech = Echelon::default();
    let Some(first) = seeds.first() else {
        return Ok(ech);
    };
    let (n, c) = (first.rank(), first.degree());
    let mut maps = Vec::new();
    for g in generators {
        maps.push(bullet_matrix(g, n, c)?);
        let inv = g.inverse_rational()?;
        if inv.iter().all(|row| row.iter().all(|x| x.is_integer())) {
            maps.push(bullet_matrix(&g.inverse()?, n, c)?);
        } else {
            maps.push(bullet_matrix_rational_inverse(g, n, c)?);
        }
    }
    let mut queue = VecDeque::new();
    for s in seeds {
        if let Some(row) = ech.insert(integer_row(&s.to_dense())) {
            queue.push_back(row);
        }
    }
    while let Some(v) = queue.pop_front() {
        let images: Vec<Vec<BigInt>> = maps.par_iter().map(|m| apply(m, &v)).collect();
        for w in images {
            if let Some(row) = ech.insert(w) {
                queue.push_back(row);
            }
        }
    }
    Ok(ech)
}

/// Inverse of the action of `g`, obtained by inverting its matrix.
fn bullet_matrix_rational_inverse(g: &IntMatrix, n: usize, c: usize) -> Result<Vec<Vec<(usize, BigRational)>>> {
    let fwd = bullet_matrix(g, n, c)?;
    let dim = fwd.len();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); 2 * dim]; dim];
    for (k, col) in fwd.iter().enumerate() {
        for (j, x) in col {
            m[*j][k] = x.clone();
        }
        m[k][dim + k] = BigRational::one();
    }
    for col in 0..dim {
        let p = (col..dim)
            .find(|&i| !m[i][col].is_zero())
            .ok_or(crate::error::Error::Singular)?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..dim {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for k in 0..2 * dim {
                    if !m[col][k].is_zero() {
                        let v = &f * &m[col][k];
                        m[i][k] -= v;
                    }
                }
            }
        }
    }
    Ok((0..dim)
        .map(|k| {
            (0..dim)
                .filter(|&j| !m[j][dim + k].is_zero())
                .map(|j| (j, m[j][dim + k].clone()))
                .collect()
        })
        .collect())
}

/// Dimension over `Q` of the submodule generated by `seeds`.
pub fn span_dim(seeds: &[GrTuple], generators: &[IntMatrix]) -> Result<usize> {
    Ok(span_closure(seeds, generators)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{basis, BasicCommutator};

    #[test]
    fn empty_seeds() {
        assert_eq!(span_dim(&[], &IntMatrix::gl_generators(3)).unwrap(), 0);
    }

    #[test]
    fn echelon_basics() {
        let mut e = Echelon::default();
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(e.insert(v(&[0, 2, 4])).is_some());
        assert!(e.insert(v(&[0, -1, -2])).is_none());
        assert!(e.insert(v(&[3, 1, 0])).is_some());
        assert!(e.contains(v(&[6, 0, -4])));
        assert!(!e.contains(v(&[0, 0, 1])));
        assert_eq!(e.dim(), 2);
    }

    #[test]
    fn whole_space_from_one_slot() {
        // gr_2(M_3) ⊕ gr_2(M_3) ⊕ gr_2(M_3) under GL_3: a single vector generates a submodule
        let n = 3;
        let b: BasicCommutator = basis(n, 2)[0].clone();
        let mut slots = vec![GradedVector::zero(n, 2); n];
        slots[0] = GradedVector::unit(n, b);
        let d = span_dim(&[GrTuple::new(slots).unwrap()], &IntMatrix::gl_generators(n)).unwrap();
        assert!(d > 0 && d <= 9);
    }
}
