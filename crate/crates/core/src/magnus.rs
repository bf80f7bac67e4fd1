//! Elements of the free metabelian group `M_n` as pairs (abelianization, Fox row).
//!
//! An element `w` is stored as `a^e = π(w)` together with `(∂_1 w, …, ∂_n w)`.
//! Every such pair satisfies `Σ_j ∂_j(w)(a_j − 1) = a^e − 1`, and two elements are
//! equal exactly when their pairs are.

use std::fmt;
use std::ops::Mul;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::laurent::{ExpVec, LaurentPoly, MAX_RANK};

static IDENTITY_CHECKS: AtomicU64 = AtomicU64::new(0);

/// Number of fundamental-identity checks performed so far by this process.
/// Checks run after every group operation when debug assertions are enabled.
pub fn identity_checks() -> u64 {
    IDENTITY_CHECKS.load(Ordering::Relaxed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupContext {
    rank: usize,
}

impl GroupContext {
    pub fn new(rank: usize) -> Result<Self> {
        if !(2..=MAX_RANK).contains(&rank) {
            return Err(Error::UnsupportedRank(rank));
        }
        Ok(GroupContext { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator(&self, i: usize) -> Result<MagnusElement> {
        MagnusElement::generator(*self, i)
    }

    pub fn one(&self) -> MagnusElement {
        MagnusElement::one(*self)
    }

    pub fn generators(&self) -> Vec<MagnusElement> {
        (1..=self.rank).map(|i| self.generator(i).unwrap()).collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MagnusElement {
    e: ExpVec,
    d: Vec<LaurentPoly>,
}

impl MagnusElement {
    pub fn one(ctx: GroupContext) -> Self {
        let n = ctx.rank();
        MagnusElement {
            e: ExpVec::zero(n),
            d: vec![LaurentPoly::zero(n); n],
        }
    }

    pub fn generator(ctx: GroupContext, i: usize) -> Result<Self> {
        let n = ctx.rank();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        let mut w = Self::one(ctx);
        w.e = ExpVec::unit(n, i);
        w.d[i - 1] = LaurentPoly::one(n);
        Ok(w.checked())
    }

    /// Builds an element from its abelianization and Fox row, rejecting pairs
    /// that violate the fundamental identity.
    pub fn from_parts(e: ExpVec, d: Vec<LaurentPoly>) -> Result<Self> {
        let n = e.rank();
        if d.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: d.len(),
            });
        }
        if let Some(p) = d.iter().find(|p| p.rank() != n) {
            return Err(Error::RankMismatch(n, p.rank()));
        }
        let w = MagnusElement { e, d };
        if !w.satisfies_identity() {
            return Err(Error::InvalidParameters(
                "Fox row violates the fundamental identity".into(),
            ));
        }
        Ok(w)
    }

    pub(crate) fn from_parts_unchecked(e: ExpVec, d: Vec<LaurentPoly>) -> Self {
        MagnusElement { e, d }.checked()
    }

    /// `Σ_j d_j (a_j − 1) = a^e − 1`.
    pub fn satisfies_identity(&self) -> bool {
        let n = self.rank();
        let mut lhs = LaurentPoly::zero(n);
        for (j, dj) in self.d.iter().enumerate() {
            if !dj.is_zero() {
                lhs = &lhs + &(&dj.shift(&ExpVec::unit(n, j + 1)) - dj);
            }
        }
        let rhs = &LaurentPoly::monomial(self.e, 1) - &LaurentPoly::one(n);
        lhs == rhs
    }

    fn checked(self) -> Self {
        if cfg!(debug_assertions) {
            IDENTITY_CHECKS.fetch_add(1, Ordering::Relaxed);
            assert!(self.satisfies_identity(), "fundamental identity violated: {self}");
        }
        self
    }

    pub fn context(&self) -> GroupContext {
        GroupContext { rank: self.rank() }
    }

    pub fn rank(&self) -> usize {
        self.e.rank()
    }

    pub fn abelianization(&self) -> &ExpVec {
        &self.e
    }

    pub fn fox_row(&self) -> &[LaurentPoly] {
        &self.d
    }

    pub fn fox(&self, j: usize) -> &LaurentPoly {
        &self.d[j - 1]
    }

    pub fn is_one(&self) -> bool {
        self.e.is_zero() && self.d.iter().all(|p| p.is_zero())
    }

    pub fn is_derived(&self) -> bool {
        self.e.is_zero()
    }

    pub fn try_mul(&self, other: &MagnusElement) -> Result<MagnusElement> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        let d = self
            .d
            .iter()
            .zip(&other.d)
            .map(|(x, y)| x + &y.shift(&self.e))
            .collect();
        Ok(Self::from_parts_unchecked(self.e.add(&other.e), d))
    }

    pub fn inverse(&self) -> MagnusElement {
        let ne = self.e.neg();
        let d = self.d.iter().map(|x| -&x.shift(&ne)).collect();
        Self::from_parts_unchecked(ne, d)
    }

    /// Integer group power.
    pub fn pow(&self, k: i64) -> MagnusElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::one(self.context());
        let mut sq = base;
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// `[u, v] = u⁻¹v⁻¹uv`.
    pub fn commutator(&self, other: &MagnusElement) -> MagnusElement {
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    /// `u^v = v⁻¹uv`.
    pub fn conjugate_by(&self, v: &MagnusElement) -> MagnusElement {
        &(&v.inverse() * self) * v
    }

    /// `[g_1, …, g_c] = [[g_1, …, g_{c−1}], g_c]`.
    pub fn left_normed(items: &[MagnusElement]) -> Result<MagnusElement> {
        if items.len() < 2 {
            return Err(Error::InvalidParameters("a bracket needs at least two entries".into()));
        }
        let mut acc = items[0].clone();
        for x in &items[1..] {
            acc = acc.commutator(x);
        }
        Ok(acc)
    }

    /// `[x, m y] = [x, y, …, y]` with `m` copies of `y`; `[x, 0 y] = x`.
    pub fn iterated(&self, m: usize, y: &MagnusElement) -> MagnusElement {
        let mut acc = self.clone();
        for _ in 0..m {
            acc = acc.commutator(y);
        }
        acc
    }

    /// The `Z A_n`-module action on `M_n'`: `∂_j(w^s) = s*·∂_j(w)`.
    pub fn module_pow(&self, s: &LaurentPoly) -> Result<MagnusElement> {
        if !self.is_derived() {
            return Err(Error::NotDerived);
        }
        if s.rank() != self.rank() {
            return Err(Error::RankMismatch(self.rank(), s.rank()));
        }
        let ss = s.star();
        let d = self.d.iter().map(|x| x * &ss).collect();
        Ok(Self::from_parts_unchecked(self.e, d))
    }

    /// Largest `c` with `w ∈ γ_c(M_n)`.
    pub fn gamma_depth(&self) -> Depth {
        if !self.e.is_zero() {
            return Depth::Finite(1);
        }
        self.d
            .iter()
            .map(|x| x.valuation())
            .min()
            .expect("rank is positive")
            .plus(1)
    }
}

impl Mul<&MagnusElement> for &MagnusElement {
    type Output = MagnusElement;
    fn mul(self, rhs: &MagnusElement) -> MagnusElement {
        self.try_mul(rhs).expect("group element rank mismatch")
    }
}

impl Mul<MagnusElement> for MagnusElement {
    type Output = MagnusElement;
    fn mul(self, rhs: MagnusElement) -> MagnusElement {
        &self * &rhs
    }
}

impl fmt::Debug for MagnusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MagnusElement")
            .field("e", &self.e)
            .field("d", &self.d.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for MagnusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::print_element(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::ExpVec;

    fn ctx(n: usize) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    fn mono(e: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(ExpVec::from_slice(e), 1)
    }

    #[test]
    fn generators_and_one() {
        let c = ctx(3);
        let x1 = c.generator(1).unwrap();
        assert_eq!(x1.abelianization().as_slice(), &[1, 0, 0]);
        assert!(x1.fox(1).is_one());
        assert!(x1.fox(2).is_zero());
        assert!(c.one().is_one());
        assert_eq!(c.generator(4), Err(Error::IndexOutOfRange { index: 4, rank: 3 }));
        assert_eq!(GroupContext::new(1), Err(Error::UnsupportedRank(1)));
    }

    #[test]
    fn product_rule_by_hand() {
        let c = ctx(2);
        let (x1, x2) = (c.generator(1).unwrap(), c.generator(2).unwrap());
        let w = &x1 * &x2;
        assert_eq!(w.abelianization().as_slice(), &[1, 1]);
        assert!(w.fox(1).is_one());
        assert_eq!(w.fox(2), &mono(&[1, 0]));
        assert!((&x1 * &x1.inverse()).is_one());
        assert_eq!(&w * &c.one(), w);
    }

    #[test]
    fn inverse_of_generator() {
        let c = ctx(3);
        let x1i = c.generator(1).unwrap().inverse();
        assert_eq!(x1i.abelianization().as_slice(), &[-1, 0, 0]);
        assert_eq!(x1i.fox(1), &-mono(&[-1, 0, 0]));
        assert!(c.one().inverse().is_one());
    }

    #[test]
    fn commutator_fox_row() {
        let c = ctx(3);
        let (x1, x2) = (c.generator(1).unwrap(), c.generator(2).unwrap());
        let k = x1.commutator(&x2);
        let u = mono(&[-1, -1, 0]);
        assert!(k.is_derived());
        assert_eq!(k.fox(1), &(&u * &(&LaurentPoly::one(3) - &mono(&[0, 1, 0]))));
        assert_eq!(k.fox(2), &(&u * &LaurentPoly::var_minus_one(3, 1)));
        assert!(k.fox(3).is_zero());
        assert!((&k * &x2.commutator(&x1)).is_one());
        assert!(x1.commutator(&x1).is_one());
    }

    #[test]
    fn module_power() {
        let c = ctx(3);
        let (x1, x2, x3) = (
            c.generator(1).unwrap(),
            c.generator(2).unwrap(),
            c.generator(3).unwrap(),
        );
        let k = x1.commutator(&x2);
        let s = LaurentPoly::var_minus_one(3, 3);
        let p = k.module_pow(&s).unwrap();
        for j in 1..=3 {
            assert_eq!(p.fox(j), &(k.fox(j) * &(&mono(&[0, 0, -1]) - &LaurentPoly::one(3))));
        }
        assert_eq!(k.module_pow(&LaurentPoly::one(3)).unwrap(), k);
        assert_eq!(k.module_pow(&LaurentPoly::var(3, 3)).unwrap(), k.conjugate_by(&x3));
        assert_eq!(x1.module_pow(&s), Err(Error::NotDerived));
    }

    #[test]
    fn depths() {
        let c = ctx(3);
        let (x1, x2) = (c.generator(1).unwrap(), c.generator(2).unwrap());
        assert_eq!(x1.commutator(&x2).gamma_depth(), Depth::Finite(2));
        assert_eq!(x1.gamma_depth(), Depth::Finite(1));
        let w = MagnusElement::left_normed(&[x2.clone(), x1.clone(), x1.clone()]).unwrap();
        assert_eq!(w.gamma_depth(), Depth::Finite(3));
        assert_eq!(c.one().gamma_depth(), Depth::Infinity);
    }

    #[test]
    fn from_parts_rejects_bad_rows() {
        let n = 2;
        let e = ExpVec::unit(n, 1);
        assert!(MagnusElement::from_parts(e, vec![LaurentPoly::one(n), LaurentPoly::zero(n)]).is_ok());
        assert!(MagnusElement::from_parts(e, vec![LaurentPoly::zero(n), LaurentPoly::one(n)]).is_err());
    }

    #[test]
    fn iterated_bracket() {
        let c = ctx(2);
        let (x1, x2) = (c.generator(1).unwrap(), c.generator(2).unwrap());
        assert_eq!(x2.iterated(0, &x1), x2);
        assert_eq!(
            x2.iterated(3, &x1),
            MagnusElement::left_normed(&[x2.clone(), x1.clone(), x1.clone(), x1.clone()]).unwrap()
        );
    }
}
