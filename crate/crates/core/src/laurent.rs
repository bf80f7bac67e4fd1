//! Exact arithmetic in the integral group ring `Z A_n` of a free abelian group.
//!
//! Elements are finite sums `Σ c_e a^e` with `e ∈ Z^n` and arbitrary-precision
//! integer coefficients. Terms are kept sorted by exponent vector and zero
//! coefficients are never stored, so structural equality is ring equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

/// Largest supported rank. Exponent vectors are stored inline.
pub const MAX_RANK: usize = 8;

/// Exponents `(κ_1, …, κ_n)` of a monomial `a_1^κ_1 ⋯ a_n^κ_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec {
    len: u8,
    e: [i32; MAX_RANK],
}

impl ExpVec {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds MAX_RANK");
        ExpVec {
            len: rank as u8,
            e: [0; MAX_RANK],
        }
    }

    /// The exponent vector of `a_i` (1-based).
    pub fn unit(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "index {i} out of range");
        let mut v = Self::zero(rank);
        v.e[i - 1] = 1;
        v
    }

    pub fn from_slice(entries: &[i32]) -> Self {
        let mut v = Self::zero(entries.len());
        v.e[..entries.len()].copy_from_slice(entries);
        v
    }

    pub fn rank(&self) -> usize {
        self.len as usize
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.e[..self.len as usize]
    }

    pub fn as_mut_slice(&mut self) -> &mut [i32] {
        &mut self.e[..self.len as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.as_slice().iter().all(|&x| x == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.as_slice().iter().map(|&x| x as i64).sum()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.len, other.len);
        let mut r = *self;
        for i in 0..self.len as usize {
            r.e[i] += other.e[i];
        }
        r
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpVec {
        let mut r = *self;
        for x in r.as_mut_slice() {
            *x = -*x;
        }
        r
    }

    /// `g · e`, the exponent vector of the image of `a^e` under the
    /// substitution `a_j ↦ ∏_i a_i^{g_ij}`.
    pub fn transform(&self, g: &IntMatrix) -> ExpVec {
        let n = self.rank();
        assert_eq!(g.dim(), n, "matrix dimension does not match rank");
        let mut r = ExpVec::zero(n);
        for i in 0..n {
            let mut acc = 0i64;
            for j in 0..n {
                acc += g.get(i, j) * self.e[j] as i64;
            }
            r.e[i] = i32::try_from(acc).expect("exponent overflow");
        }
        r
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// An element of `Z A_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: u8,
    terms: Vec<(ExpVec, BigInt)>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK);
        LaurentPoly {
            rank: rank as u8,
            terms: Vec::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, 1)
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExpVec::zero(rank), c)
    }

    pub fn monomial(exp: ExpVec, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        let terms = if c.is_zero() { vec![] } else { vec![(exp, c)] };
        LaurentPoly { rank: exp.len, terms }
    }

    /// The group element `a_i` (1-based).
    pub fn var(rank: usize, i: usize) -> Self {
        Self::monomial(ExpVec::unit(rank, i), 1)
    }

    /// `a_i - 1`.
    pub fn var_minus_one(rank: usize, i: usize) -> Self {
        &Self::var(rank, i) - &Self::one(rank)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (ExpVec, BigInt)>) -> Self {
        let mut acc: FxHashMap<ExpVec, BigInt> = FxHashMap::default();
        for (e, c) in terms {
            assert_eq!(e.rank(), rank, "exponent vector rank mismatch");
            *acc.entry(e).or_default() += c;
        }
        Self::from_map(rank, acc)
    }

    fn from_map(rank: usize, acc: FxHashMap<ExpVec, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly {
            rank: rank as u8,
            terms,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn terms(&self) -> &[(ExpVec, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub fn coefficient(&self, e: &ExpVec) -> BigInt {
        match self.terms.binary_search_by(|t| t.0.cmp(e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// If `self = c·a^e` with `c = ±1`, returns `(e, c)`.
    pub fn as_unit_monomial(&self) -> Option<(ExpVec, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = &self.terms[0];
        if c.is_one() {
            Some((*e, 1))
        } else if (-c).is_one() {
            Some((*e, -1))
        } else {
            None
        }
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &LaurentPoly, negate_other: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (e, c) in &b[j..] {
            out.push((*e, if negate_other { -c } else { c.clone() }));
        }
        LaurentPoly {
            rank: self.rank,
            terms: out,
        }
    }

    fn product(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero(self.rank());
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.shift(e).scale(c);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.shift(e).scale(c);
        }
        let mut acc: FxHashMap<ExpVec, BigInt> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.add(e2);
                match acc.get_mut(&e) {
                    Some(v) => *v += c1 * c2,
                    None => {
                        acc.insert(e, c1 * c2);
                    }
                }
            }
        }
        Self::from_map(self.rank(), acc)
    }

    /// Multiplication by the group element `a^e`. Preserves term order.
    pub fn shift(&self, e: &ExpVec) -> LaurentPoly {
        if e.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(f, c)| (f.add(e), c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero(self.rank());
        }
        if k.is_one() {
            return self.clone();
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.rank());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Image under the augmentation `a_i ↦ 1`: the coefficient sum.
    pub fn augmentation(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// The involution `Σ m_i s_i ↦ Σ m_i s_i^{-1}`.
    pub fn star(&self) -> LaurentPoly {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (e.neg(), c.clone())).collect();
        terms.reverse();
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        LaurentPoly { rank: self.rank, terms }
    }

    /// `∏_i (a_i − 1)^{r_i}`.
    pub fn omega(rank: usize, r: &[u32]) -> LaurentPoly {
        assert_eq!(r.len(), rank, "omega: exponent list length must equal rank");
        let mut acc = LaurentPoly::one(rank);
        for (i, &ri) in r.iter().enumerate() {
            for _ in 0..ri {
                acc = &acc * &LaurentPoly::var_minus_one(rank, i + 1);
            }
        }
        acc
    }

    /// Ring endomorphism `a_j ↦ ∏_i a_i^{g_ij}`.
    pub fn substitute(&self, g: &IntMatrix) -> LaurentPoly {
        if g.is_identity() {
            return self.clone();
        }
        Self::from_terms(self.rank(), self.terms.iter().map(|(e, c)| (e.transform(g), c.clone())))
    }

    /// Sets `a_k = 1` (1-based), returning `(q, r)` with `self = q·(a_k − 1) + r`
    /// and `r` free of `a_k`.
    pub fn divide_by_var_minus_one(&self, k: usize) -> (LaurentPoly, LaurentPoly) {
        let n = self.rank();
        let idx = k - 1;
        let mut q = Vec::new();
        let mut r = Vec::new();
        for (e, c) in &self.terms {
            let p = e.as_slice()[idx];
            let mut base = *e;
            base.as_mut_slice()[idx] = 0;
            r.push((base, c.clone()));
            // (a^p − 1)/(a − 1)
            if p > 0 {
                for t in 0..p {
                    let mut m = base;
                    m.as_mut_slice()[idx] = t;
                    q.push((m, c.clone()));
                }
            } else if p < 0 {
                for t in p..0 {
                    let mut m = base;
                    m.as_mut_slice()[idx] = t;
                    q.push((m, -c));
                }
            }
        }
        (Self::from_terms(n, q), Self::from_terms(n, r))
    }

    /// Exponents after multiplying by the monomial that clears all negative powers.
    fn normalized_exponents(&self) -> Vec<(Vec<u32>, &BigInt)> {
        let n = self.rank();
        let mut mins = vec![0i32; n];
        for (e, _) in &self.terms {
            for (m, &x) in mins.iter_mut().zip(e.as_slice()) {
                *m = (*m).min(x);
            }
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let k = e.as_slice().iter().zip(&mins).map(|(&x, &m)| (x - m) as u32).collect();
                (k, c)
            })
            .collect()
    }

    /// Homogeneous part of degree `d` of the normalized expansion in `t_i = a_i − 1`.
    fn expansion_component(normalized: &[(Vec<u32>, &BigInt)], rank: usize, d: u32) -> Vec<(ExpVec, BigInt)> {
        let mut acc: FxHashMap<ExpVec, BigInt> = FxHashMap::default();
        let mut j = vec![0u32; rank];
        for (k, c) in normalized {
            let total: u32 = k.iter().sum();
            if total < d {
                continue;
            }
            enumerate_bounded(k, d, 0, &mut j, &mut |j| {
                let mut coeff = (*c).clone();
                for (&ki, &ji) in k.iter().zip(j.iter()) {
                    if ji > 0 {
                        coeff *= binomial(ki, ji);
                    }
                }
                let e = ExpVec::from_slice(&j.iter().map(|&x| x as i32).collect::<Vec<_>>());
                *acc.entry(e).or_default() += coeff;
            });
        }
        let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Largest `m` with `self ∈ Σ^m`, where `Σ` is the augmentation ideal.
    pub fn valuation(&self) -> Depth {
        if self.is_zero() {
            return Depth::Infinity;
        }
        if !self.augmentation().is_zero() {
            return Depth::Finite(0);
        }
        let normalized = self.normalized_exponents();
        let max_deg = normalized.iter().map(|(k, _)| k.iter().sum::<u32>()).max().unwrap_or(0);
        for d in 1..=max_deg {
            if !Self::expansion_component(&normalized, self.rank(), d).is_empty() {
                return Depth::Finite(d);
            }
        }
        unreachable!("a nonzero Laurent polynomial has finite valuation")
    }

    /// Degree-`d` component of the `t`-expansion, for `d` at most the valuation.
    /// Returns `None` if `d` is larger than the valuation, since the component is
    /// then not independent of the normalizing monomial.
    pub fn component_at(&self, d: u32) -> Option<LeadingForm> {
        let v = self.valuation();
        match v {
            Depth::Infinity => Some(LeadingForm::zero(self.rank(), d)),
            Depth::Finite(v) if v > d => Some(LeadingForm::zero(self.rank(), d)),
            Depth::Finite(v) if v == d => self.leading_form().ok(),
            _ => None,
        }
    }

    /// The lowest-degree homogeneous component of the `t`-expansion.
    pub fn leading_form(&self) -> Result<LeadingForm> {
        let v = self.valuation().finite().ok_or(Error::ZeroInput)?;
        let normalized = self.normalized_exponents();
        Ok(LeadingForm {
            rank: self.rank,
            degree: v,
            coeffs: Self::expansion_component(&normalized, self.rank(), v),
        })
    }
}

fn enumerate_bounded(bounds: &[u32], remaining: u32, pos: usize, cur: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if pos == bounds.len() - 1 {
        if remaining <= bounds[pos] {
            cur[pos] = remaining;
            f(cur);
        }
        cur[pos] = 0;
        return;
    }
    let top = remaining.min(bounds[pos]);
    for x in 0..=top {
        cur[pos] = x;
        enumerate_bounded(bounds, remaining - x, pos + 1, cur, f);
    }
    cur[pos] = 0;
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, e: &ExpVec, var: char) -> fmt::Result {
    let mut first = true;
    for (i, &x) in e.as_slice().iter().enumerate() {
        if x == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if x == 1 {
            write!(f, "{var}{}", i + 1)?;
        } else {
            write!(f, "{var}{}^{x}", i + 1)?;
        }
    }
    Ok(())
}

fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = &'a (ExpVec, BigInt)>,
    var: char,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if e.is_zero() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            fmt_monomial(f, e, var)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Canonical text form, e.g. `2*a1*a2^-1 - a3^2 + 2*a3 - 1`. Terms appear in
/// decreasing exponent order.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().rev(), 'a')
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$inner(rhs).expect("Laurent polynomial rank mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// A homogeneous polynomial in `t_1, …, t_n`, the image of an element of
/// `Σ^d` in `Σ^d / Σ^{d+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LeadingForm {
    rank: u8,
    degree: u32,
    coeffs: Vec<(ExpVec, BigInt)>,
}

impl LeadingForm {
    pub fn zero(rank: usize, degree: u32) -> Self {
        LeadingForm {
            rank: rank as u8,
            degree,
            coeffs: Vec::new(),
        }
    }

    /// Builds a form from `(multi-index, coefficient)` pairs; every multi-index
    /// must have total degree `degree`.
    pub fn from_terms(rank: usize, degree: u32, terms: impl IntoIterator<Item = (ExpVec, BigInt)>) -> Self {
        let p = LaurentPoly::from_terms(rank, terms);
        for (e, _) in p.terms() {
            assert!(e.as_slice().iter().all(|&x| x >= 0), "negative multi-index");
            assert_eq!(e.total_degree(), degree as i64, "inhomogeneous term");
        }
        LeadingForm {
            rank: rank as u8,
            degree,
            coeffs: p.terms,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn terms(&self) -> &[(ExpVec, BigInt)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &LeadingForm) -> LeadingForm {
        let a = LaurentPoly {
            rank: self.rank,
            terms: self.coeffs.clone(),
        };
        let b = LaurentPoly {
            rank: other.rank,
            terms: other.coeffs.clone(),
        };
        LeadingForm {
            rank: self.rank,
            degree: self.degree + other.degree,
            coeffs: (&a * &b).terms,
        }
    }
}

impl fmt::Display for LeadingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter().rev(), 't')
    }
}

impl fmt::Debug for LeadingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeadingForm(deg {}: {self})", self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(n, i)
    }
    fn ainv(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::monomial(ExpVec::unit(n, i).neg(), 1)
    }
    fn one(n: usize) -> LaurentPoly {
        LaurentPoly::one(n)
    }
    fn t(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var_minus_one(n, i)
    }

    #[test]
    fn multiplication_examples() {
        let n = 3;
        assert_eq!(&t(n, 1) * &ainv(n, 1), &one(n) - &ainv(n, 1));
        assert!((&a(n, 1) * &ainv(n, 1)).is_one());
        assert_eq!(&t(n, 1) * &(&a(n, 1) + &one(n)), &a(n, 1).pow(2) - &one(n));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert_eq!(a(2, 1).try_mul(&a(3, 1)), Err(Error::RankMismatch(2, 3)));
        assert!(a(2, 1).try_add(&a(3, 1)).is_err());
    }

    #[test]
    fn augmentation_examples() {
        let n = 3;
        let s = &(&a(n, 1) * &a(n, 2)).scale(&3.into()) - &ainv(n, 3).scale(&2.into());
        assert_eq!(s.augmentation(), BigInt::from(1));
        assert_eq!(t(n, 1).augmentation(), BigInt::zero());
        assert_eq!(LaurentPoly::zero(n).augmentation(), BigInt::zero());
    }

    #[test]
    fn star_examples() {
        let n = 3;
        let s = &a(n, 1) * &ainv(n, 2);
        assert_eq!(s.star(), &ainv(n, 1) * &a(n, 2));
        assert_eq!(t(n, 3).star(), &ainv(n, 3) - &one(n));
    }

    #[test]
    fn omega_examples() {
        assert!(LaurentPoly::omega(3, &[0, 0, 0]).is_one());
        let w = LaurentPoly::omega(3, &[1, 0, 2]);
        assert_eq!(w, &t(3, 1) * &t(3, 3).pow(2));
        assert!(w.augmentation().is_zero());
    }

    #[test]
    fn valuation_examples() {
        let n = 3;
        assert_eq!(t(n, 1).valuation(), Depth::Finite(1));
        assert_eq!((&t(n, 1).pow(2) * &t(n, 2)).valuation(), Depth::Finite(3));
        assert_eq!((&one(n) - &ainv(n, 1)).valuation(), Depth::Finite(1));
        assert_eq!(LaurentPoly::zero(n).valuation(), Depth::Infinity);
        assert_eq!(one(n).valuation(), Depth::Finite(0));
    }

    #[test]
    fn leading_form_examples() {
        let n = 3;
        let e1 = ExpVec::from_slice(&[1, 0, 0]);
        let e2 = ExpVec::from_slice(&[0, 1, 0]);
        let e12 = ExpVec::from_slice(&[1, 1, 0]);

        let lf = (&ainv(n, 2) * &t(n, 1)).leading_form().unwrap();
        assert_eq!(lf, LeadingForm::from_terms(n, 1, [(e1, BigInt::from(1))]));

        let lf = (&t(n, 1) * &t(n, 2)).leading_form().unwrap();
        assert_eq!(lf, LeadingForm::from_terms(n, 2, [(e12, BigInt::from(1))]));

        let s = &(&ainv(n, 1) * &ainv(n, 2)) * &(&one(n) - &a(n, 2));
        let lf = s.leading_form().unwrap();
        assert_eq!(lf, LeadingForm::from_terms(n, 1, [(e2, BigInt::from(-1))]));

        assert_eq!(LaurentPoly::zero(n).leading_form(), Err(Error::ZeroInput));
    }

    #[test]
    fn substitute_examples() {
        let n = 2;
        // column 2 = e_1 + e_2
        let g = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(a(n, 2).substitute(&g), &a(n, 1) * &a(n, 2));
        let s = &t(n, 1) * &ainv(n, 2);
        assert_eq!(s.substitute(&IntMatrix::identity(n)), s);
    }

    #[test]
    fn division_by_var_minus_one() {
        let n = 3;
        let s = &(&a(n, 1).pow(3) * &ainv(n, 2)) - &ainv(n, 3).pow(2).scale(&5.into());
        for k in 1..=3 {
            let (q, r) = s.divide_by_var_minus_one(k);
            assert_eq!(&(&q * &t(n, k)) + &r, s);
            assert!(r.terms().iter().all(|(e, _)| e.as_slice()[k - 1] == 0));
        }
    }

    #[test]
    fn display_is_canonical() {
        let n = 3;
        let s = &(&a(n, 1) * &ainv(n, 2)).scale(&2.into()) - &t(n, 3).pow(2);
        assert_eq!(s.to_string(), "2*a1*a2^-1 - a3^2 + 2*a3 - 1");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
    }

    pub(crate) fn arb_poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-3i32..=3, n), -4i64..=4), 0..6).prop_map(move |ts| {
            LaurentPoly::from_terms(
                n,
                ts.into_iter().map(|(e, c)| (ExpVec::from_slice(&e), BigInt::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn star_is_a_ring_involution(s in arb_poly(3), u in arb_poly(3)) {
            prop_assert_eq!(s.star().star(), s.clone());
            prop_assert_eq!((&s * &u).star(), &s.star() * &u.star());
            prop_assert_eq!((&s + &u).star(), &s.star() + &u.star());
        }

        #[test]
        fn valuation_is_multiplicative(s in arb_poly(3), u in arb_poly(3), sh in prop::collection::vec(-3i32..=3, 3)) {
            prop_assume!(!s.is_zero() && !u.is_zero());
            let vs = s.valuation().finite().unwrap();
            let vu = u.valuation().finite().unwrap();
            prop_assert_eq!((&s * &u).valuation(), Depth::Finite(vs + vu));
            let unit = ExpVec::from_slice(&sh);
            prop_assert_eq!(s.shift(&unit).valuation(), Depth::Finite(vs));
            prop_assert_eq!(s.valuation() >= Depth::Finite(1), s.augmentation().is_zero());
        }

        #[test]
        fn leading_forms_multiply(s in arb_poly(3), u in arb_poly(3), sh in prop::collection::vec(-3i32..=3, 3)) {
            prop_assume!(!s.is_zero() && !u.is_zero());
            let lf = (&s * &u).leading_form().unwrap();
            prop_assert_eq!(lf, s.leading_form().unwrap().mul(&u.leading_form().unwrap()));
            let unit = ExpVec::from_slice(&sh);
            prop_assert_eq!(s.shift(&unit).leading_form().unwrap(), s.leading_form().unwrap());
        }

        #[test]
        fn substitution_is_a_ring_homomorphism(s in arb_poly(3), u in arb_poly(3),
                                               g in prop::collection::vec(-2i64..=2, 9)) {
            let g = IntMatrix::from_flat(3, g);
            prop_assert_eq!((&s * &u).substitute(&g), &s.substitute(&g) * &u.substitute(&g));
            prop_assert_eq!((&s + &u).substitute(&g), &s.substitute(&g) + &u.substitute(&g));
        }
    }
}
