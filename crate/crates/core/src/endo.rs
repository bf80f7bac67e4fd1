//! Endomorphisms of `M_n`, given by the images of the generators.
//!
//! Composition is `(φ∘ψ)(x) = φ(ψ(x))`. The abelianized matrix has column `i`
//! equal to the abelianization of `φ(x_i)`, and the Jacobian has `(i, j)` entry
//! `∂_j(φ(x_i))`.

use std::fmt;

use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::graded::{coordinates, GrTuple};
use crate::intmat::IntMatrix;
use crate::laurent::{ExpVec, LaurentPoly};
use crate::lmatrix::LaurentMatrix;
use crate::magnus::{GroupContext, MagnusElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Endomorphism {
    ctx: GroupContext,
    images: Vec<MagnusElement>,
    abelianized: IntMatrix,
    jacobian: LaurentMatrix,
}

impl Endomorphism {
    pub fn from_images(ctx: GroupContext, images: Vec<MagnusElement>) -> Result<Self> {
        let n = ctx.rank();
        if images.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: images.len(),
            });
        }
        if let Some(w) = images.iter().find(|w| w.rank() != n) {
            return Err(Error::RankMismatch(n, w.rank()));
        }
        let mut g = IntMatrix::zero(n);
        for (i, w) in images.iter().enumerate() {
            for (k, &x) in w.abelianization().as_slice().iter().enumerate() {
                g.set(k, i, x as i64);
            }
        }
        let jacobian = LaurentMatrix::from_rows(images.iter().map(|w| w.fox_row().to_vec()).collect());
        Ok(Endomorphism {
            ctx,
            images,
            abelianized: g,
            jacobian,
        })
    }

    pub fn identity(ctx: GroupContext) -> Self {
        Self::from_images(ctx, ctx.generators()).expect("generators have the right length")
    }

    pub fn context(&self) -> GroupContext {
        self.ctx
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank()
    }

    pub fn images(&self) -> &[MagnusElement] {
        &self.images
    }

    /// Image of `x_i`, 1-based.
    pub fn image(&self, i: usize) -> &MagnusElement {
        &self.images[i - 1]
    }

    pub fn abelianized(&self) -> &IntMatrix {
        &self.abelianized
    }

    pub fn jacobian(&self) -> &LaurentMatrix {
        &self.jacobian
    }

    pub fn det(&self) -> LaurentPoly {
        self.jacobian.det()
    }

    pub fn is_ia(&self) -> bool {
        self.abelianized.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().zip(self.ctx.generators()).all(|(w, x)| *w == x)
    }

    fn check_context(&self, other: GroupContext) -> Result<()> {
        if self.ctx != other {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(())
    }

    /// `φ(w)` by the chain rule `∂_j φ(w) = Σ_k φ(∂_k w)·∂_j φ(x_k)`.
    pub fn apply(&self, w: &MagnusElement) -> Result<MagnusElement> {
        self.check_context(w.context())?;
        let n = self.rank();
        let g = &self.abelianized;
        let e = w.abelianization().transform(g);
        let subs: Vec<LaurentPoly> = w.fox_row().iter().map(|d| d.substitute(g)).collect();
        let d = (0..n)
            .map(|j| {
                let mut acc = LaurentPoly::zero(n);
                for (k, s) in subs.iter().enumerate() {
                    let jk = self.jacobian.get(k, j);
                    if !s.is_zero() && !jk.is_zero() {
                        acc = &acc + &(s * jk);
                    }
                }
                acc
            })
            .collect();
        Ok(MagnusElement::from_parts_unchecked(e, d))
    }

    /// `φ∘ψ`, i.e. `x ↦ φ(ψ(x))`.
    pub fn compose(&self, psi: &Endomorphism) -> Result<Endomorphism> {
        self.check_context(psi.ctx)?;
        let images = psi.images.iter().map(|w| self.apply(w)).collect::<Result<Vec<_>>>()?;
        Endomorphism::from_images(self.ctx, images)
    }

    /// Whether `φ` is an automorphism. IA-endomorphisms are decided by the
    /// determinant of the Jacobian; others are first reduced by a tame lift of their
    /// abelianized matrix.
    pub fn is_automorphism(&self) -> Result<bool> {
        if self.is_ia() {
            return Ok(is_positive_unit(&self.det()));
        }
        let t = TameLift::new(&self.abelianized)?;
        t.inverse_automorphism(self.ctx).compose(self)?.is_automorphism()
    }

    pub fn inverse(&self) -> Result<Endomorphism> {
        if self.is_ia() {
            return self.ia_inverse();
        }
        let t = TameLift::new(&self.abelianized)?;
        let iota = t.inverse_automorphism(self.ctx).compose(self)?;
        iota.ia_inverse()?.compose(&t.inverse_automorphism(self.ctx))
    }

    /// `J(φ⁻¹) = a^{−m} adj J(φ)` where `det J(φ) = a^m`.
    fn ia_inverse(&self) -> Result<Endomorphism> {
        let n = self.rank();
        let det = self.det();
        let m = match det.as_unit_monomial() {
            Some((m, 1)) => m,
            _ => {
                return Err(Error::NotAutomorphism(format!(
                    "Jacobian determinant {det} is not a unit monomial"
                )))
            }
        };
        let inv = self.jacobian.adjugate().scale(&LaurentPoly::monomial(m.neg(), 1));
        let images = (0..n)
            .map(|i| MagnusElement::from_parts(ExpVec::unit(n, i + 1), inv.row(i).to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Endomorphism::from_images(self.ctx, images)
    }

    pub fn pow(&self, k: i64) -> Result<Endomorphism> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Endomorphism::identity(self.ctx);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    /// `[α, β] = α⁻¹β⁻¹αβ`.
    pub fn commutator(&self, other: &Endomorphism) -> Result<Endomorphism> {
        self.inverse()?
            .compose(&other.inverse()?)?
            .compose(self)?
            .compose(other)
    }

    /// `α^β = β⁻¹αβ`.
    pub fn conjugate_by(&self, beta: &Endomorphism) -> Result<Endomorphism> {
        beta.inverse()?.compose(self)?.compose(beta)
    }

    /// `[α_1, …, α_k]`, left-normed.
    pub fn left_normed(items: &[Endomorphism]) -> Result<Endomorphism> {
        let (first, rest) = items
            .split_first()
            .ok_or_else(|| Error::InvalidParameters("empty commutator".into()))?;
        let mut acc = first.clone();
        for b in rest {
            acc = acc.commutator(b)?;
        }
        Ok(acc)
    }

    /// `[α, m β] = [α, β, …, β]`.
    pub fn iterated(&self, m: usize, beta: &Endomorphism) -> Result<Endomorphism> {
        let mut acc = self.clone();
        for _ in 0..m {
            acc = acc.commutator(beta)?;
        }
        Ok(acc)
    }

    /// The largest `c` with `φ ∈ I_cA`.
    pub fn ia_depth(&self) -> Result<Depth> {
        if !self.is_ia() {
            return Err(Error::NotIa);
        }
        self.difference_depth(&Endomorphism::identity(self.ctx))
    }

    /// `min_i` of the γ-depth of `ψ(x_i)⁻¹φ(x_i)`. When `ψ` is an automorphism this
    /// is the Andreadakis depth of `ψ⁻¹φ`, so `φ ≡ ψ (mod I_{c+1}A)` exactly when it
    /// is at least `c + 1`.
    pub fn difference_depth(&self, psi: &Endomorphism) -> Result<Depth> {
        self.check_context(psi.ctx)?;
        Ok(self
            .images
            .iter()
            .zip(&psi.images)
            .map(|(a, b)| (&b.inverse() * a).gamma_depth())
            .min()
            .expect("rank is positive"))
    }

    /// `χ_c(φ)`: the weight `c` coordinates of `x_i⁻¹φ(x_i)` for each `i`.
    pub fn chi(&self, c: usize) -> Result<GrTuple> {
        let depth = self.ia_depth()?;
        if !depth.at_least(c as u32) {
            return Err(Error::DepthTooSmall {
                required: c as u32,
                actual: depth.to_string(),
            });
        }
        let slots = self
            .images
            .iter()
            .zip(self.ctx.generators())
            .map(|(w, x)| coordinates(&(&x.inverse() * w), c))
            .collect::<Result<Vec<_>>>()?;
        GrTuple::new(slots)
    }
}

fn is_positive_unit(p: &LaurentPoly) -> bool {
    matches!(p.as_unit_monomial(), Some((_, 1)))
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "x{} -> {w}", i + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endomorphism[")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

/// An elementary column operation on an integer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Right multiplication by `I + m E_ij`: column `j` gains `m` times column `i`.
    /// Lifts to `x_j ↦ x_j x_i^m`.
    Transvection { i: usize, j: usize, m: i64 },
    /// Lifts to `x_i ↔ x_j`.
    Swap { i: usize, j: usize },
    /// Lifts to `x_i ↦ x_i⁻¹`.
    Sign { i: usize },
}

impl Move {
    fn inverse(self) -> Move {
        match self {
            Move::Transvection { i, j, m } => Move::Transvection { i, j, m: -m },
            other => other,
        }
    }

    /// The standard automorphism inducing this move's matrix. Indices are 0-based.
    pub fn lift(self, ctx: GroupContext) -> Endomorphism {
        let mut images = ctx.generators();
        match self {
            Move::Transvection { i, j, m } => images[j] = &images[j] * &images[i].pow(m),
            Move::Swap { i, j } => images.swap(i, j),
            Move::Sign { i } => images[i] = images[i].inverse(),
        }
        Endomorphism::from_images(ctx, images).expect("rank matches")
    }

    fn apply_to(self, g: &mut IntMatrix) {
        let n = g.dim();
        for r in 0..n {
            match self {
                Move::Transvection { i, j, m } => {
                    let v = g.get(r, j) + m * g.get(r, i);
                    g.set(r, j, v);
                }
                Move::Swap { i, j } => {
                    let (a, b) = (g.get(r, i), g.get(r, j));
                    g.set(r, i, b);
                    g.set(r, j, a);
                }
                Move::Sign { i } => g.set(r, i, -g.get(r, i)),
            }
        }
    }
}

/// Column reduction of `g ∈ GL_n(Z)` to the identity, `g·E_1⋯E_k = I`.
#[derive(Debug, Clone)]
pub struct TameLift {
    moves: Vec<Move>,
}

impl TameLift {
    pub fn new(g: &IntMatrix) -> Result<TameLift> {
        if !g.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let n = g.dim();
        let mut m = g.clone();
        let mut moves = Vec::new();
        let mut record = |mv: Move, m: &mut IntMatrix| {
            mv.apply_to(m);
            moves.push(mv);
        };
        for r in 0..n {
            loop {
                let nz: Vec<usize> = (r..n).filter(|&j| m.get(r, j) != 0).collect();
                let p = *nz
                    .iter()
                    .min_by_key(|&&j| (m.get(r, j).unsigned_abs(), j))
                    .ok_or(Error::NotUnimodular)?;
                if nz.len() == 1 {
                    if p != r {
                        record(Move::Swap { i: r, j: p }, &mut m);
                    }
                    break;
                }
                for &j in &nz {
                    if j != p {
                        let q = m.get(r, j).div_euclid(m.get(r, p));
                        if q != 0 {
                            record(Move::Transvection { i: p, j, m: -q }, &mut m);
                        }
                    }
                }
            }
            if m.get(r, r) < 0 {
                record(Move::Sign { i: r }, &mut m);
            }
            if m.get(r, r) != 1 {
                return Err(Error::NotUnimodular);
            }
            for j in 0..r {
                let v = m.get(r, j);
                if v != 0 {
                    record(Move::Transvection { i: r, j, m: -v }, &mut m);
                }
            }
        }
        debug_assert!(m.is_identity());
        Ok(TameLift { moves })
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// `t_g = lift(E_k⁻¹)∘…∘lift(E_1⁻¹)`, with abelianized matrix `g`.
    pub fn automorphism(&self, ctx: GroupContext) -> Endomorphism {
        let mut acc = Endomorphism::identity(ctx);
        for mv in &self.moves {
            acc = mv.inverse().lift(ctx).compose(&acc).expect("same context");
        }
        acc
    }

    /// `t_g⁻¹ = lift(E_1)∘…∘lift(E_k)`.
    pub fn inverse_automorphism(&self, ctx: GroupContext) -> Endomorphism {
        let mut acc = Endomorphism::identity(ctx);
        for mv in &self.moves {
            acc = acc.compose(&mv.lift(ctx)).expect("same context");
        }
        acc
    }
}

/// A fixed tame automorphism inducing `g` on the abelianization.
pub fn tame_lift(ctx: GroupContext, g: &IntMatrix) -> Result<Endomorphism> {
    if g.dim() != ctx.rank() {
        return Err(Error::RankMismatch(ctx.rank(), g.dim()));
    }
    Ok(TameLift::new(g)?.automorphism(ctx))
}

/// The class of an IA-automorphism in `L^c = I_cA / I_{c+1}A`.
#[derive(Clone, Debug)]
pub struct Coset {
    representative: Endomorphism,
    level: usize,
}

impl Coset {
    pub fn new(representative: Endomorphism, level: usize) -> Result<Coset> {
        let depth = representative.ia_depth()?;
        if !depth.at_least(level as u32) {
            return Err(Error::DepthTooSmall {
                required: level as u32,
                actual: depth.to_string(),
            });
        }
        Ok(Coset { representative, level })
    }

    pub fn representative(&self) -> &Endomorphism {
        &self.representative
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn chi(&self) -> Result<GrTuple> {
        self.representative.chi(self.level)
    }

    /// Equality in `L^c`.
    pub fn same_as(&self, other: &Coset) -> Result<bool> {
        if self.level != other.level {
            return Err(Error::InvalidParameters("cosets at different levels".into()));
        }
        Ok(self
            .representative
            .difference_depth(&other.representative)?
            .at_least(self.level as u32 + 1))
    }

    /// The group operation of `L^c`, written additively.
    pub fn add(&self, other: &Coset) -> Result<Coset> {
        Coset::new(self.representative.compose(&other.representative)?, self.level)
    }
}

/// `g * φ̄ = t_g φ t_g⁻¹`.
pub fn star_act(g: &IntMatrix, phi: &Coset) -> Result<Coset> {
    let ctx = phi.representative.ctx;
    if g.dim() != ctx.rank() {
        return Err(Error::RankMismatch(ctx.rank(), g.dim()));
    }
    let t = TameLift::new(g)?;
    let rep = t
        .automorphism(ctx)
        .compose(&phi.representative)?
        .compose(&t.inverse_automorphism(ctx))?;
    Coset::new(rep, phi.level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_images;
    use crate::graded::{BasicCommutator, GradedVector};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn ctx(n: usize) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    fn endo(n: usize, text: &str) -> Endomorphism {
        let c = ctx(n);
        Endomorphism::from_images(c, parse_images(text, c).unwrap()).unwrap()
    }

    fn pi12(n: usize) -> Endomorphism {
        let mut text = String::from("x1*[x1,x2]\n");
        for i in 2..=n {
            text.push_str(&format!("x{i}\n"));
        }
        endo(n, &text)
    }

    fn mu() -> Endomorphism {
        endo(3, "x1*[x1^-1,[x1,[x2,x3]]]\nx2\nx3")
    }

    #[test]
    fn construction() {
        let c = ctx(3);
        assert!(Endomorphism::identity(c).is_identity());
        assert_eq!(
            Endomorphism::from_images(c, c.generators()[..2].to_vec()),
            Err(Error::LengthMismatch { expected: 3, actual: 2 })
        );
        assert!(mu().abelianized().is_identity());
        let p = pi12(3);
        assert_eq!(p.apply(&c.generator(1).unwrap()).unwrap(), p.image(1).clone());
        assert_eq!(mu().apply(&c.generator(2).unwrap()).unwrap(), c.generator(2).unwrap());
    }

    #[test]
    fn pi12_determinant_and_inverse() {
        let p = pi12(2);
        assert_eq!(p.det(), LaurentPoly::monomial(ExpVec::from_slice(&[0, -1]), 1));
        assert!(p.is_automorphism().unwrap());
        let inv = p.inverse().unwrap();
        assert!(inv.jacobian().mul(p.jacobian()).is_identity());
        assert!(p.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&p).unwrap().is_identity());
        assert_eq!(inv.jacobian().get(0, 0), &LaurentPoly::var(2, 2));
        assert_eq!(inv.jacobian().get(0, 1), &-LaurentPoly::var_minus_one(2, 1));
        assert_eq!(inv.jacobian().get(1, 0), &LaurentPoly::zero(2));
    }

    #[test]
    fn depths() {
        assert_eq!(pi12(3).ia_depth().unwrap(), Depth::Finite(2));
        assert_eq!(mu().ia_depth().unwrap(), Depth::Finite(4));
        assert_eq!(Endomorphism::identity(ctx(3)).ia_depth().unwrap(), Depth::Infinity);
        assert!(mu().is_automorphism().unwrap());
        let s = endo(2, "x2\nx1");
        assert_eq!(s.ia_depth(), Err(Error::NotIa));
    }

    #[test]
    fn chi_values() {
        let p = pi12(2);
        let t = p.chi(2).unwrap();
        let b = BasicCommutator::new(&[2, 1]).unwrap();
        assert_eq!(t.slot(1).get(&b), BigRational::from_integer((-1).into()));
        assert!(t.slot(2).is_zero());
        assert!(Endomorphism::identity(ctx(3)).chi(4).unwrap().is_zero());
        let m = mu().chi(4).unwrap();
        assert!(!m.slot(1).is_zero() && m.slot(2).is_zero() && m.slot(3).is_zero());
        assert!(matches!(p.chi(3), Err(Error::DepthTooSmall { .. })));
        assert_eq!(mu().chi(3).unwrap(), GrTuple::zero(3, 3));
    }

    #[test]
    fn swap_lift_and_inverse() {
        let c = ctx(3);
        let sigma = endo(3, "x2\nx1\nx3");
        assert_eq!(tame_lift(c, &IntMatrix::swap(3, 1, 2)).unwrap(), sigma);
        assert_eq!(sigma.inverse().unwrap(), sigma);
        assert!(sigma.compose(&sigma).unwrap().is_identity());
        assert!(tame_lift(c, &IntMatrix::identity(3)).unwrap().is_identity());
        assert_eq!(
            tame_lift(c, &IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])),
            Err(Error::NotUnimodular)
        );
    }

    #[test]
    fn non_unimodular_automorphism_query_errors() {
        let sq = endo(2, "x1^2\nx2");
        assert_eq!(sq.is_automorphism(), Err(Error::NotUnimodular));
    }

    #[test]
    fn eta_is_not_an_automorphism() {
        let e = endo(4, "x1\nx2*[x2,3 x1]\nx3*[x3,3 x1]\nx4*[x4,3 x1]");
        assert!(e.is_ia());
        assert!(!e.is_automorphism().unwrap());
        assert!(e.inverse().is_err());
    }

    #[test]
    fn general_inverse() {
        let g = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![0, 0, -1]]);
        let t = tame_lift(ctx(3), &g).unwrap();
        let phi = t.compose(&mu()).unwrap().compose(&pi12(3)).unwrap();
        assert!(phi.is_automorphism().unwrap());
        let inv = phi.inverse().unwrap();
        assert!(phi.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&phi).unwrap().is_identity());
    }

    #[test]
    fn coset_star_identity() {
        let c = Coset::new(mu(), 4).unwrap();
        let same = star_act(&IntMatrix::identity(3), &c).unwrap();
        assert!(same.same_as(&c).unwrap());
        assert_eq!(same.chi().unwrap(), c.chi().unwrap());
        assert!(Coset::new(pi12(3), 3).is_err());
    }

    fn arb_unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
        let gens = IntMatrix::gl_generators(n);
        proptest::collection::vec((0..gens.len(), any::<bool>()), 0..8).prop_map(move |word| {
            let mut g = IntMatrix::identity(n);
            for (k, inv) in word {
                let h = if inv {
                    gens[k].inverse().unwrap()
                } else {
                    gens[k].clone()
                };
                g = g.mul(&h);
            }
            g
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn tame_lift_realizes_matrix(g in arb_unimodular(4)) {
            let c = ctx(4);
            let t = tame_lift(c, &g).unwrap();
            prop_assert_eq!(t.abelianized(), &g);
            prop_assert_eq!(tame_lift(c, &g).unwrap(), t.clone());
            let l = TameLift::new(&g).unwrap();
            prop_assert!(t.compose(&l.inverse_automorphism(c)).unwrap().is_identity());
        }

        #[test]
        fn apply_is_a_homomorphism(g in arb_unimodular(3), seed in 0u64..1000) {
            let c = ctx(3);
            let phi = tame_lift(c, &g).unwrap().compose(&mu()).unwrap();
            let gens = c.generators();
            let u = &gens[(seed % 3) as usize] * &gens[((seed / 3) % 3) as usize].pow(2);
            let v = gens[((seed / 9) % 3) as usize].commutator(&gens[((seed / 27) % 3) as usize].inverse());
            let lhs = phi.apply(&u.commutator(&v)).unwrap();
            let rhs = phi.apply(&u).unwrap().commutator(&phi.apply(&v).unwrap());
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(phi.apply(&(&u * &v)).unwrap(), &phi.apply(&u).unwrap() * &phi.apply(&v).unwrap());
        }

        #[test]
        fn jacobian_chain_rule(g in arb_unimodular(3)) {
            let c = ctx(3);
            let psi = tame_lift(c, &g).unwrap().compose(&pi12(3)).unwrap();
            let phi = mu().compose(&tame_lift(c, &g.transpose()).unwrap()).unwrap();
            let comp = phi.compose(&psi).unwrap();
            let expected = psi.jacobian().substitute(phi.abelianized()).mul(phi.jacobian());
            prop_assert_eq!(comp.jacobian(), &expected);
            prop_assert_eq!(comp.abelianized(), &phi.abelianized().mul(psi.abelianized()));
        }
    }

    #[test]
    fn chi_zero_tuple_for_identity_is_graded_zero() {
        let t = Endomorphism::identity(ctx(2)).chi(3).unwrap();
        assert_eq!(t.slot(1), &GradedVector::zero(2, 3));
    }
}
