//! Named endomorphisms of `M_n`.
//!
//! Indices are 1-based. Exponent tuples `r = (r_1, …, r_n)` stand for the scalar
//! `(a_1 − 1)^{r_1} ⋯ (a_n − 1)^{r_n}`.

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::magnus::{GroupContext, MagnusElement};

fn check_index(ctx: GroupContext, i: usize) -> Result<()> {
    if i == 0 || i > ctx.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: ctx.rank(),
        });
    }
    Ok(())
}

fn check_distinct(ctx: GroupContext, ix: &[usize]) -> Result<()> {
    for (k, &i) in ix.iter().enumerate() {
        check_index(ctx, i)?;
        if ix[..k].contains(&i) {
            return Err(Error::InvalidParameters(format!("indices {ix:?} must be distinct")));
        }
    }
    Ok(())
}

fn check_tuple(ctx: GroupContext, r: &[u32]) -> Result<()> {
    if r.len() != ctx.rank() {
        return Err(Error::LengthMismatch {
            expected: ctx.rank(),
            actual: r.len(),
        });
    }
    Ok(())
}

/// Checks `Σ r = c − offset`: offset 2 for the `τ_{ijk}` and `B_{ikj}` families,
/// 3 for `B_{ij}`.
pub fn check_weight(r: &[u32], c: usize, offset: usize) -> Result<()> {
    let s: usize = r.iter().map(|&x| x as usize).sum();
    if s + offset != c {
        return Err(Error::InvalidParameters(format!(
            "exponents {r:?} sum to {s}, weight {c} needs {}",
            c as i64 - offset as i64
        )));
    }
    Ok(())
}

fn gen(ctx: GroupContext, i: usize) -> MagnusElement {
    ctx.generator(i).expect("index checked")
}

fn with_images(ctx: GroupContext, changes: Vec<(usize, MagnusElement)>) -> Endomorphism {
    let mut images = ctx.generators();
    for (i, w) in changes {
        images[i - 1] = w;
    }
    Endomorphism::from_images(ctx, images).expect("rank matches")
}

/// `a_{i_1}^{k_1} ⋯` as a scalar.
fn mono(ctx: GroupContext, powers: &[(usize, i32)]) -> LaurentPoly {
    let mut e = ExpVec::zero(ctx.rank());
    for &(i, k) in powers {
        e.as_mut_slice()[i - 1] += k;
    }
    LaurentPoly::monomial(e, 1)
}

fn bracket(ctx: GroupContext, i: usize, j: usize) -> MagnusElement {
    gen(ctx, i).commutator(&gen(ctx, j))
}

fn mpow(w: &MagnusElement, s: &LaurentPoly) -> MagnusElement {
    w.module_pow(s).expect("derived element")
}

/// `τ_{i,(i_1,…,i_c)}: x_i ↦ x_i[x_{i_1}, …, x_{i_c}]`.
pub fn tau_seq(ctx: GroupContext, i: usize, seq: &[usize]) -> Result<Endomorphism> {
    check_index(ctx, i)?;
    if seq.len() < 2 {
        return Err(Error::InvalidParameters("bracket needs at least two entries".into()));
    }
    for &k in seq {
        check_index(ctx, k)?;
        if k == i {
            return Err(Error::InvalidParameters(format!("{i} occurs in {seq:?}")));
        }
    }
    if seq[0] == seq[1] {
        return Err(Error::InvalidParameters(format!(
            "{seq:?} starts with a repeated index"
        )));
    }
    let items: Vec<MagnusElement> = seq.iter().map(|&k| gen(ctx, k)).collect();
    let u = MagnusElement::left_normed(&items)?;
    Ok(with_images(ctx, vec![(i, &gen(ctx, i) * &u)]))
}

/// `τ_{ijk,(r)}: x_i ↦ x_i[x_j, x_k]^{ω(r)}`.
pub fn tau_p(ctx: GroupContext, i: usize, j: usize, k: usize, r: &[u32]) -> Result<Endomorphism> {
    check_distinct(ctx, &[i, j, k])?;
    check_tuple(ctx, r)?;
    let w = mpow(&bracket(ctx, j, k), &LaurentPoly::omega(ctx.rank(), r));
    Ok(with_images(ctx, vec![(i, &gen(ctx, i) * &w)]))
}

/// `B_{ikj}(P)`, with both moved images exactly as displayed.
pub fn b_p(ctx: GroupContext, i: usize, k: usize, j: usize, p: &LaurentPoly) -> Result<Endomorphism> {
    check_distinct(ctx, &[i, k, j])?;
    if p.rank() != ctx.rank() {
        return Err(Error::RankMismatch(ctx.rank(), p.rank()));
    }
    let (ij, kj) = (bracket(ctx, i, j), bracket(ctx, k, j));
    let xi = &(&gen(ctx, i) * &mpow(&ij, &(&mono(ctx, &[(i, -1), (j, -1), (k, -1)]) * p)))
        * &mpow(&kj, &(&mono(ctx, &[(k, -2), (j, -1)]) * p));
    let xk = &(&gen(ctx, k) * &mpow(&ij, &-(&mono(ctx, &[(i, -2), (j, -1)]) * p)))
        * &mpow(&kj, &-(&mono(ctx, &[(i, -1), (j, -1), (k, -1)]) * p));
    Ok(with_images(ctx, vec![(i, xi), (k, xk)]))
}

/// `B_{ij}(Q)`, with both moved images exactly as displayed.
pub fn b_q(ctx: GroupContext, i: usize, j: usize, q: &LaurentPoly) -> Result<Endomorphism> {
    check_distinct(ctx, &[i, j])?;
    if q.rank() != ctx.rank() {
        return Err(Error::RankMismatch(ctx.rank(), q.rank()));
    }
    let ij = bracket(ctx, i, j);
    let n = ctx.rank();
    let base = -(&mono(ctx, &[(i, -2), (j, -2)]) * q);
    let xi = &gen(ctx, i) * &mpow(&ij, &(&base * &LaurentPoly::var_minus_one(n, i)));
    let xj = &gen(ctx, j) * &mpow(&ij, &(&base * &LaurentPoly::var_minus_one(n, j)));
    Ok(with_images(ctx, vec![(i, xi), (j, xj)]))
}

/// The congruence forms of `B_{ikj}(P)` stated right after its definition:
/// `x_i ↦ x_i[x_i,x_j]^P[x_k,x_j]^P`, `x_k ↦ x_k[x_j,x_i]^P[x_j,x_k]^P`.
pub fn b_p_congruence(ctx: GroupContext, i: usize, k: usize, j: usize, p: &LaurentPoly) -> Result<Endomorphism> {
    check_distinct(ctx, &[i, k, j])?;
    let xi = &(&gen(ctx, i) * &mpow(&bracket(ctx, i, j), p)) * &mpow(&bracket(ctx, k, j), p);
    let xk = &(&gen(ctx, k) * &mpow(&bracket(ctx, j, i), p)) * &mpow(&bracket(ctx, j, k), p);
    Ok(with_images(ctx, vec![(i, xi), (k, xk)]))
}

/// `x_i ↦ x_i[x_i,[x_i,x_j]]^Q`, `x_j ↦ x_j[x_j,[x_i,x_j]]^Q`.
pub fn b_q_congruence(ctx: GroupContext, i: usize, j: usize, q: &LaurentPoly) -> Result<Endomorphism> {
    check_distinct(ctx, &[i, j])?;
    let ij = bracket(ctx, i, j);
    let xi = &gen(ctx, i) * &mpow(&gen(ctx, i).commutator(&ij), q);
    let xj = &gen(ctx, j) * &mpow(&gen(ctx, j).commutator(&ij), q);
    Ok(with_images(ctx, vec![(i, xi), (j, xj)]))
}

/// `ξ_u: x ↦ x[x, u] = u⁻¹xu`.
pub fn inner(u: &MagnusElement) -> Endomorphism {
    let ctx = u.context();
    let images = ctx.generators().iter().map(|x| x * &x.commutator(u)).collect();
    Endomorphism::from_images(ctx, images).expect("rank matches")
}

/// `π_{ij}: x_i ↦ x_i[x_i, x_j]`.
pub fn pi(ctx: GroupContext, i: usize, j: usize) -> Result<Endomorphism> {
    check_distinct(ctx, &[i, j])?;
    Ok(with_images(ctx, vec![(i, &gen(ctx, i) * &bracket(ctx, i, j))]))
}

/// `σ_{ij}: x_i ↔ x_j`.
pub fn sigma(ctx: GroupContext, i: usize, j: usize) -> Result<Endomorphism> {
    check_distinct(ctx, &[i, j])?;
    Ok(with_images(ctx, vec![(i, gen(ctx, j)), (j, gen(ctx, i))]))
}

/// `β: x_2 ↦ x_2 x_1`.
pub fn beta(ctx: GroupContext) -> Endomorphism {
    with_images(ctx, vec![(2, &gen(ctx, 2) * &gen(ctx, 1))])
}

/// `μ: x_1 ↦ x_1[x_1⁻¹, [x_1, [x_2, x_3]]]`.
pub fn mu(ctx: GroupContext) -> Result<Endomorphism> {
    if ctx.rank() < 3 {
        return Err(Error::InvalidParameters("μ needs rank at least 3".into()));
    }
    let x1 = gen(ctx, 1);
    let inner_bracket = x1.commutator(&bracket(ctx, 2, 3));
    Ok(with_images(
        ctx,
        vec![(1, &x1 * &x1.inverse().commutator(&inner_bracket))],
    ))
}

/// `η: x_j ↦ x_j[x_j, (c − 1) x_1]` for every `j`.
pub fn eta(ctx: GroupContext, c: usize) -> Result<Endomorphism> {
    if c < 2 {
        return Err(Error::InvalidParameters("η needs weight at least 2".into()));
    }
    let x1 = gen(ctx, 1);
    let images = ctx.generators().iter().map(|x| x * &x.iterated(c - 1, &x1)).collect();
    Endomorphism::from_images(ctx, images)
}

/// `[w, r_1 x_1, …, r_n x_n]`.
fn tail_bracket(ctx: GroupContext, w: MagnusElement, r: &[u32]) -> MagnusElement {
    let mut acc = w;
    for (i, &m) in r.iter().enumerate() {
        acc = acc.iterated(m as usize, &gen(ctx, i + 1));
    }
    acc
}

/// `δ_{123,(r)}` from its displayed images: `x_1 ↦ x_1[x_1, x_3, r_1 x_1, …, r_n x_n]`,
/// `x_2 ↦ x_2[x_3, x_2, r_1 x_1, …, r_n x_n]`.
pub fn delta(ctx: GroupContext, r: &[u32]) -> Result<Endomorphism> {
    if ctx.rank() < 3 {
        return Err(Error::InvalidParameters("δ needs rank at least 3".into()));
    }
    check_tuple(ctx, r)?;
    let x1 = &gen(ctx, 1) * &tail_bracket(ctx, bracket(ctx, 1, 3), r);
    let x2 = &gen(ctx, 2) * &tail_bracket(ctx, bracket(ctx, 3, 2), r);
    Ok(with_images(ctx, vec![(1, x1), (2, x2)]))
}

/// `B_{123}(r)·τ_{213,(r)}⁻¹·τ_{123,(r)}`, the first definition of `δ`.
pub fn delta_product_first(ctx: GroupContext, r: &[u32]) -> Result<Endomorphism> {
    let p = LaurentPoly::omega(ctx.rank(), r);
    b_p(ctx, 1, 2, 3, &p)?
        .compose(&tau_p(ctx, 2, 1, 3, r)?.inverse()?)?
        .compose(&tau_p(ctx, 1, 2, 3, r)?)
}

/// `B_{123}(r)·τ_{213,(r)}·τ_{123,(r)}⁻¹`, the closing formula for `δ`.
pub fn delta_product_second(ctx: GroupContext, r: &[u32]) -> Result<Endomorphism> {
    let p = LaurentPoly::omega(ctx.rank(), r);
    b_p(ctx, 1, 2, 3, &p)?
        .compose(&tau_p(ctx, 2, 1, 3, r)?)?
        .compose(&tau_p(ctx, 1, 2, 3, r)?.inverse()?)
}

/// `(π_{2j} π_{3j})⁻¹`.
pub fn pi_pair_inverse(ctx: GroupContext, j: usize) -> Result<Endomorphism> {
    pi(ctx, 2, j)?.compose(&pi(ctx, 3, j)?)?.inverse()
}

/// `ψ_{1,s} = [τ_{1,(2,3)}⁻¹, s (π_{2n} π_{3n})⁻¹]`.
pub fn psi1(ctx: GroupContext, s: usize) -> Result<Endomorphism> {
    if ctx.rank() < 4 {
        return Err(Error::InvalidParameters("ψ needs rank at least 4".into()));
    }
    let t = tau_seq(ctx, 1, &[2, 3])?.inverse()?;
    t.iterated(s, &pi_pair_inverse(ctx, ctx.rank())?)
}
