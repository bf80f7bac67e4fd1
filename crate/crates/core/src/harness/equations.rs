//! The explicit automorphism identities behind the generation argument, each
//! checked over every admissible parameter tuple at a given rank and weight.
//!
//! Coset identities are compared by difference depth, exact ones by equality of
//! generator images. Each identity also carries a short list of declared
//! alternative readings; those are always reported separately and labeled.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{discrepancy, VerdictReport};
use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::magnus::GroupContext;
use crate::zoo;

/// Composition convention for products written left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conv {
    /// When set, `φψ` means `ψ∘φ`.
    pub reversed: bool,
}

impl Conv {
    pub const USUAL: Conv = Conv { reversed: false };
    pub const REVERSED: Conv = Conv { reversed: true };

    pub fn mul(self, a: &Endomorphism, b: &Endomorphism) -> Result<Endomorphism> {
        if self.reversed {
            b.compose(a)
        } else {
            a.compose(b)
        }
    }

    pub fn product(self, items: &[Endomorphism]) -> Result<Endomorphism> {
        let (first, rest) = items
            .split_first()
            .ok_or_else(|| Error::InvalidParameters("empty product".into()))?;
        rest.iter().try_fold(first.clone(), |acc, x| self.mul(&acc, x))
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn comm(self, a: &Endomorphism, b: &Endomorphism) -> Result<Endomorphism> {
        self.product(&[a.inverse()?, b.inverse()?, a.clone(), b.clone()])
    }

    /// `[a, m b]`.
    pub fn iter(self, a: &Endomorphism, m: u32, b: &Endomorphism) -> Result<Endomorphism> {
        (0..m).try_fold(a.clone(), |acc, _| self.comm(&acc, b))
    }

    /// `a^b = b⁻¹ab`.
    pub fn conj(self, a: &Endomorphism, b: &Endomorphism) -> Result<Endomorphism> {
        self.product(&[b.inverse()?, a.clone(), b.clone()])
    }

    /// `t * φ = t φ t⁻¹`.
    pub fn star(self, t: &Endomorphism, phi: &Endomorphism) -> Result<Endomorphism> {
        self.product(&[t.clone(), phi.clone(), t.inverse()?])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    /// `ξ_u ∏_λ τ_{λ12}⁻¹ ≡ B_12(s)`.
    B12ViaInner,
    /// `δ(r)` for `r_2 = 0`.
    DeltaBase,
    /// `δ(r)` for `r_2 = 1`.
    DeltaStep,
    /// `δ(r)` for `r_2 ≥ 2`.
    DeltaGeneral,
    /// `τ_{123,(s+1,0,…,0)} = [π_{1n}, (ψ_{1,s}⁻¹)^{σ_{1n}}]`.
    TauFirstSlot,
    /// Removing `r_n`.
    TauLastSlot,
    /// Removing `r_j` for `4 ≤ j ≤ n − 1`.
    TauMiddleSlot,
    /// Removing `r_3`.
    TauThirdSlot,
    /// Removing `r_2`.
    TauSecondSlot,
    /// The whole chain down to `τ_{123,(r_1,0,…,0)}`.
    TauChain,
    /// `τ_{1,(k_1,k_2,…)} = [π_{k_1k_2}⁻¹, τ_{1,(k_1,k_3,…)}⁻¹]` for `k_1 ≠ k_3`.
    SeqDistinct,
    /// `τ_{1,(k_1,k_2,…)} = [τ_{1,(k_2,k_1,k_4,…)}⁻¹, π_{k_2k_1}⁻¹]` for `k_1 = k_3`.
    SeqRepeat,
    /// The displayed images of `δ` against `B_{123} τ_{213}⁻¹ τ_{123}`.
    DeltaImages,
}

/// How an identity is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    Printed,
    /// Products composed right to left.
    Reversed,
    /// The `τ_{λ12}` factors enter with exponent `+1`.
    TauPositive,
    /// Right-hand side replaced by its inverse.
    RhsInverted,
    /// Right-to-left products, with the `k`-th factor of every product raised to
    /// `C(r_2, k)`.
    ReversedBinomial,
    /// An exact identity weakened to equality modulo `I_{c+1}A`.
    Coset,
    /// `δ` compared with `B_{123} τ_{213} τ_{123}⁻¹`.
    ClosingFormula,
}

impl Reading {
    pub fn label(self) -> Option<&'static str> {
        match self {
            Reading::Printed => None,
            Reading::Reversed => Some("reversed-products"),
            Reading::TauPositive => Some("tau-factors-positive"),
            Reading::RhsInverted => Some("rhs-inverted"),
            Reading::ReversedBinomial => Some("reversed-products-binomial-multiplicities"),
            Reading::Coset => Some("modulo-next-filtration-step"),
            Reading::ClosingFormula => Some("closing-formula"),
        }
    }
}

/// One parameter choice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Case {
    Tuple(Vec<u32>),
    /// A slot index together with the tuple.
    Indexed(usize, Vec<u32>),
    Seq(Vec<usize>),
}

impl Case {
    fn to_json(&self) -> Value {
        match self {
            Case::Tuple(r) => json!({ "r": r }),
            Case::Indexed(j, r) => json!({ "j": j, "r": r }),
            Case::Seq(s) => json!({ "seq": s }),
        }
    }

    fn tuple(&self) -> Result<&[u32]> {
        match self {
            Case::Tuple(r) | Case::Indexed(_, r) => Ok(r),
            Case::Seq(_) => Err(Error::InvalidParameters("expected an exponent tuple".into())),
        }
    }
}

/// All `n`-tuples of non-negative integers summing to `total`, in lexicographic order.
pub(crate) fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn sequences(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (2..=n).map(move |k| {
                    let mut t = s.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}

fn binom(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn with(r: &[u32], i: usize, v: u32) -> Vec<u32> {
    let mut t = r.to_vec();
    t[i - 1] = v;
    t
}

fn bump(r: &[u32], i: usize) -> Vec<u32> {
    with(r, i, r[i - 1] + 1)
}

fn tau123(ctx: GroupContext, r: &[u32]) -> Result<Endomorphism> {
    zoo::tau_p(ctx, 1, 2, 3, r)
}

fn tau213(ctx: GroupContext, r: &[u32]) -> Result<Endomorphism> {
    zoo::tau_p(ctx, 2, 1, 3, r)
}

fn pi_inv(ctx: GroupContext, i: usize, j: usize) -> Result<Endomorphism> {
    zoo::pi(ctx, i, j)?.inverse()
}

/// An automorphism representing `δ̄(r)`.
fn delta_auto(ctx: GroupContext, r: &[u32]) -> Result<Endomorphism> {
    zoo::delta_product_second(ctx, r)
}

/// Both sides of an identity and whether they must agree exactly.
struct Sides {
    lhs: Endomorphism,
    rhs: Endomorphism,
    exact: bool,
}

impl Equation {
    pub fn all() -> [Equation; 13] {
        use Equation::*;
        [
            B12ViaInner,
            DeltaBase,
            DeltaStep,
            DeltaGeneral,
            TauFirstSlot,
            TauLastSlot,
            TauMiddleSlot,
            TauThirdSlot,
            TauSecondSlot,
            TauChain,
            SeqDistinct,
            SeqRepeat,
            DeltaImages,
        ]
    }

    /// Short identifier accepted on the command line.
    pub fn id(self) -> &'static str {
        use Equation::*;
        match self {
            B12ViaInner => "3.4",
            DeltaBase => "3.5",
            DeltaStep => "3.6",
            DeltaGeneral => "3.7",
            TauFirstSlot => "3.8",
            TauLastSlot => "3.9",
            TauMiddleSlot => "3.10",
            TauThirdSlot => "3.11",
            TauSecondSlot => "3.12",
            TauChain => "3.13",
            SeqDistinct => "L5a",
            SeqRepeat => "L5b",
            DeltaImages => "delta",
        }
    }

    pub fn name(self) -> &'static str {
        use Equation::*;
        match self {
            B12ViaInner => "b12-via-inner",
            DeltaBase => "delta-r2-zero",
            DeltaStep => "delta-r2-one",
            DeltaGeneral => "delta-r2-general",
            TauFirstSlot => "tau-first-slot",
            TauLastSlot => "tau-last-slot",
            TauMiddleSlot => "tau-middle-slot",
            TauThirdSlot => "tau-third-slot",
            TauSecondSlot => "tau-second-slot",
            TauChain => "tau-chain",
            SeqDistinct => "tau-seq-distinct",
            SeqRepeat => "tau-seq-repeat",
            DeltaImages => "delta-images",
        }
    }

    pub fn parse(s: &str) -> Option<Equation> {
        Equation::all().into_iter().find(|e| e.id() == s || e.name() == s)
    }

    pub fn is_exact(self) -> bool {
        use Equation::*;
        !matches!(self, B12ViaInner | DeltaBase | DeltaStep | DeltaGeneral | DeltaImages)
    }

    /// The printed reading first, then the declared alternatives.
    pub fn readings(self) -> &'static [Reading] {
        use Equation::*;
        use Reading::*;
        match self {
            B12ViaInner => &[Printed, TauPositive],
            DeltaBase => &[Printed, Reversed, RhsInverted],
            DeltaStep => &[Printed, Reversed],
            DeltaGeneral => &[Printed, Reversed, ReversedBinomial],
            DeltaImages => &[Printed, ClosingFormula],
            _ => &[Printed, Reversed, Coset],
        }
    }

    /// Every admissible parameter choice at rank `n` and weight `c`, sorted.
    pub fn cases(self, n: usize, c: usize) -> Vec<Case> {
        use Equation::*;
        if n < 4 || c < 3 {
            return vec![];
        }
        let w = c as u32 - 2;
        let tuples = || compositions(n, w);
        let tail_zero = |r: &[u32], from: usize, to: usize| (from..=to).all(|k| r[k - 1] == 0);
        let mut out: Vec<Case> = match self {
            B12ViaInner => compositions(n, w - 1).into_iter().map(Case::Tuple).collect(),
            DeltaBase => tuples().into_iter().filter(|r| r[1] == 0).map(Case::Tuple).collect(),
            DeltaImages => tuples().into_iter().map(Case::Tuple).collect(),
            DeltaStep => tuples().into_iter().filter(|r| r[1] == 1).map(Case::Tuple).collect(),
            DeltaGeneral => tuples().into_iter().filter(|r| r[1] >= 2).map(Case::Tuple).collect(),
            TauFirstSlot => vec![Case::Tuple(with(&vec![0; n], 1, w))],
            TauLastSlot => tuples()
                .into_iter()
                .filter(|r| r[0] >= 1 && tail_zero(r, 2, n - 1))
                .map(Case::Tuple)
                .collect(),
            TauMiddleSlot => (4..n)
                .flat_map(|j| {
                    tuples()
                        .into_iter()
                        .filter(move |r| r[0] >= 1 && tail_zero(r, 2, j - 1))
                        .map(move |r| Case::Indexed(j, r))
                })
                .collect(),
            TauThirdSlot => tuples()
                .into_iter()
                .filter(|r| r[0] >= 1 && r[1] == 0)
                .map(Case::Tuple)
                .collect(),
            TauSecondSlot | TauChain => tuples().into_iter().filter(|r| r[0] >= 1).map(Case::Tuple).collect(),
            SeqDistinct => sequences(n, c)
                .into_iter()
                .filter(|s| s[0] != s[1] && s[0] != s[2])
                .map(Case::Seq)
                .collect(),
            SeqRepeat => sequences(n, c)
                .into_iter()
                .filter(|s| s[0] != s[1] && s[0] == s[2])
                .map(Case::Seq)
                .collect(),
        };
        out.sort();
        out
    }

    fn sides(self, reading: Reading, ctx: GroupContext, case: &Case) -> Result<Sides> {
        use Equation::*;
        let n = ctx.rank();
        let conv = if matches!(reading, Reading::Reversed | Reading::ReversedBinomial) {
            Conv::REVERSED
        } else {
            Conv::USUAL
        };
        let exact = self.is_exact() && reading != Reading::Coset;
        let binomial = reading == Reading::ReversedBinomial;
        let sides = |lhs, rhs| Ok(Sides { lhs, rhs, exact });
        match self {
            B12ViaInner => {
                let s = case.tuple()?;
                let mut items = vec![zoo::inner(&u_element(ctx, s)?)];
                for l in 3..=n {
                    let t = zoo::tau_p(ctx, l, 1, 2, &bump(s, l))?;
                    items.push(if reading == Reading::TauPositive {
                        t
                    } else {
                        t.inverse()?
                    });
                }
                sides(conv.product(&items)?, zoo::b_q(ctx, 1, 2, &LaurentPoly::omega(n, s))?)
            }
            DeltaBase => {
                let r = case.tuple()?;
                let lhs = conv.product(&[
                    tau213(ctx, r)?,
                    tau123(ctx, r)?.inverse()?,
                    conv.star(&zoo::beta(ctx).inverse()?, &tau123(ctx, r)?)?,
                ])?;
                let rhs = if reading == Reading::RhsInverted {
                    delta_auto(ctx, r)?.inverse()?
                } else {
                    zoo::delta(ctx, r)?
                };
                sides(lhs, rhs)
            }
            DeltaStep => {
                let r = case.tuple()?;
                let r2 = with(&bump(r, 1), 2, 0);
                let phi11 = conv.mul(&tau123(ctx, r)?.inverse()?, &tau123(ctx, &r2)?.inverse()?)?;
                let phi21 = conv.mul(&tau213(ctx, r)?, &tau213(ctx, &r2)?)?;
                let lhs = conv.product(&[
                    delta_auto(ctx, &r2)?.inverse()?,
                    phi21,
                    phi11,
                    conv.star(&zoo::beta(ctx).inverse()?, &tau123(ctx, r)?)?,
                ])?;
                sides(lhs, zoo::delta(ctx, r)?)
            }
            DeltaGeneral => {
                let r = case.tuple()?;
                let (r1, r2) = (r[0], r[1]);
                let mult = |k: u32| if binomial { binom(r2, k) as i64 } else { 1 };
                let shifted = |a: u32, b: u32| {
                    let mut t = r.to_vec();
                    t[0] = a;
                    t[1] = b;
                    t
                };
                let mut big_b = Vec::new();
                let mut psi11 = Vec::new();
                let mut psi22 = Vec::new();
                for k in 1..r2 {
                    let mut q = shifted(r1 + k - 1, r2 - k - 1);
                    q[2] += 1;
                    big_b.push(zoo::b_q(ctx, 1, 2, &LaurentPoly::omega(n, &q))?.pow(mult(k))?);
                    psi11.push(tau123(ctx, &shifted(r1 + k + 1, r2 - k - 1))?.pow(-mult(k))?);
                    psi22.push(tau213(ctx, &shifted(r1 + k - 1, r2 - k + 1))?.pow(mult(k))?);
                }
                let mut psi13 = Vec::new();
                let mut psi24 = Vec::new();
                for k in 0..=r2 {
                    psi13.push(tau123(ctx, &shifted(r1 + k, r2 - k))?.pow(-mult(k))?);
                    psi24.push(tau213(ctx, &shifted(r1 + k, r2 - k))?.pow(mult(k))?);
                }
                let lhs = conv.product(&[
                    conv.product(&big_b)?,
                    conv.product(&psi22)?,
                    conv.product(&psi11)?,
                    delta_auto(ctx, &shifted(r1 + r2, 0))?.inverse()?,
                    conv.product(&psi24)?,
                    conv.product(&psi13)?,
                    conv.star(&zoo::beta(ctx).inverse()?, &tau123(ctx, r)?)?,
                ])?;
                sides(lhs, zoo::delta(ctx, r)?)
            }
            TauFirstSlot => {
                let r = case.tuple()?;
                let s = r[0]
                    .checked_sub(1)
                    .ok_or_else(|| Error::InvalidParameters("r_1 must be positive".into()))?;
                let psi = conv.iter(
                    &zoo::tau_seq(ctx, 1, &[2, 3])?.inverse()?,
                    s,
                    &pi_pair_inverse(conv, ctx, n)?,
                )?;
                let rhs = conv.comm(
                    &zoo::pi(ctx, 1, n)?,
                    &conv.conj(&psi.inverse()?, &zoo::sigma(ctx, 1, n)?)?,
                )?;
                sides(tau123(ctx, r)?, rhs)
            }
            TauLastSlot => {
                let r = case.tuple()?;
                let rhs = conv.iter(
                    &tau123(ctx, &with(r, n, 0))?.inverse()?,
                    r[n - 1],
                    &pi_pair_inverse(conv, ctx, n)?,
                )?;
                sides(tau123(ctx, r)?.inverse()?, rhs)
            }
            TauMiddleSlot => {
                let Case::Indexed(j, r) = case else {
                    return Err(Error::InvalidParameters("expected a slot index".into()));
                };
                let j = *j;
                let rhs = conv.iter(
                    &tau123(ctx, &with(r, j, 0))?.inverse()?,
                    r[j - 1],
                    &pi_pair_inverse(conv, ctx, j)?,
                )?;
                sides(tau123(ctx, r)?.inverse()?, rhs)
            }
            TauThirdSlot => {
                let r = case.tuple()?;
                let rhs = conv.iter(&tau123(ctx, &with(r, 3, 0))?.inverse()?, r[2], &pi_inv(ctx, 2, 3)?)?;
                sides(tau123(ctx, r)?.inverse()?, rhs)
            }
            TauSecondSlot => {
                let r = case.tuple()?;
                let rhs = conv.iter(&tau123(ctx, &with(r, 2, 0))?.inverse()?, r[1], &pi_inv(ctx, 3, 2)?)?;
                sides(tau123(ctx, r)?.inverse()?, rhs)
            }
            TauChain => {
                let r = case.tuple()?;
                sides(tau123(ctx, r)?.inverse()?, tau_chain(conv, ctx, r)?)
            }
            SeqDistinct | SeqRepeat => {
                let Case::Seq(s) = case else {
                    return Err(Error::InvalidParameters("expected an index sequence".into()));
                };
                let lhs = zoo::tau_seq(ctx, 1, s)?;
                let rhs = if self == SeqDistinct {
                    let mut rest = vec![s[0]];
                    rest.extend_from_slice(&s[2..]);
                    conv.comm(&pi_inv(ctx, s[0], s[1])?, &zoo::tau_seq(ctx, 1, &rest)?.inverse()?)?
                } else {
                    let mut rest = vec![s[1], s[0]];
                    rest.extend_from_slice(&s[3..]);
                    conv.comm(&zoo::tau_seq(ctx, 1, &rest)?.inverse()?, &pi_inv(ctx, s[1], s[0])?)?
                };
                sides(lhs, rhs)
            }
            DeltaImages => {
                let r = case.tuple()?;
                let rhs = if reading == Reading::ClosingFormula {
                    zoo::delta_product_second(ctx, r)?
                } else {
                    zoo::delta_product_first(ctx, r)?
                };
                sides(zoo::delta(ctx, r)?, rhs)
            }
        }
    }

    /// The filtration level at which a case lives.
    fn level(self, case: &Case) -> usize {
        match case {
            Case::Seq(s) => s.len(),
            Case::Tuple(r) | Case::Indexed(_, r) => {
                let s: u32 = r.iter().sum();
                s as usize + if self == Equation::B12ViaInner { 3 } else { 2 }
            }
        }
    }
}

/// `u(1, 2, s) = [x_1, x_2, s_1 x_1, …, s_n x_n]`.
fn u_element(ctx: GroupContext, s: &[u32]) -> Result<crate::magnus::MagnusElement> {
    let mut acc = ctx.generator(1)?.commutator(&ctx.generator(2)?);
    for (i, &m) in s.iter().enumerate() {
        acc = acc.iterated(m as usize, &ctx.generator(i + 1)?);
    }
    Ok(acc)
}

/// `(π_{2j} π_{3j})⁻¹` under `conv`.
fn pi_pair_inverse(conv: Conv, ctx: GroupContext, j: usize) -> Result<Endomorphism> {
    conv.mul(&zoo::pi(ctx, 2, j)?, &zoo::pi(ctx, 3, j)?)?.inverse()
}

/// `[τ_{123,(r_1,0,…,0)}⁻¹, r_n ρ_n, …, r_4 ρ_4, r_3 π_{23}⁻¹, r_2 π_{32}⁻¹]`.
pub(crate) fn tau_chain(conv: Conv, ctx: GroupContext, r: &[u32]) -> Result<Endomorphism> {
    let n = ctx.rank();
    let mut base = vec![0; n];
    base[0] = r[0];
    let mut acc = tau123(ctx, &base)?.inverse()?;
    for j in (4..=n).rev() {
        acc = conv.iter(&acc, r[j - 1], &pi_pair_inverse(conv, ctx, j)?)?;
    }
    acc = conv.iter(&acc, r[2], &pi_inv(ctx, 2, 3)?)?;
    conv.iter(&acc, r[1], &pi_inv(ctx, 3, 2)?)
}

fn evaluate(eq: Equation, reading: Reading, ctx: GroupContext, case: &Case) -> Result<Option<Value>> {
    let Sides { lhs, rhs, exact } = eq.sides(reading, ctx, case)?;
    let level = eq.level(case);
    let holds = if exact {
        lhs == rhs
    } else {
        lhs.difference_depth(&rhs)?.at_least(level as u32 + 1)
    };
    Ok(if holds { None } else { Some(discrepancy(&lhs, &rhs)) })
}

fn params(eq: Equation, n: usize, c: usize) -> Value {
    json!({ "id": eq.id(), "n": n, "c": c, "exact": eq.is_exact() })
}

/// Checks one reading of an identity for a single parameter choice.
pub fn verify_equation(eq: Equation, reading: Reading, n: usize, case: &Case) -> Result<VerdictReport> {
    let ctx = GroupContext::new(n)?;
    let c = eq.level(case);
    let mut p = params(eq, n, c);
    p["case"] = case.to_json();
    let report = VerdictReport::new(eq.name(), p).with_variant(reading.label());
    Ok(match evaluate(eq, reading, ctx, case)? {
        None => report,
        Some(mut w) => {
            w["case"] = case.to_json();
            report.fail(w)
        }
    })
}

/// One report per declared reading, each covering every admissible case at
/// rank `n` and weight `c`. A failing report names the least failing case.
pub fn equation_reports(eq: Equation, n: usize, c: usize) -> Vec<VerdictReport> {
    let cases = eq.cases(n, c);
    let ctx = GroupContext::new(n);
    eq.readings()
        .iter()
        .map(|&reading| {
            let mut p = params(eq, n, c);
            p["cases"] = json!(cases.len());
            let report = VerdictReport::new(eq.name(), p).with_variant(reading.label());
            let ctx = match (&ctx, cases.is_empty()) {
                (Ok(ctx), false) => *ctx,
                (Err(e), _) => return report.skipped(&e.to_string()),
                (_, true) => return report.skipped("no admissible parameters at this rank and weight"),
            };
            let outcomes: Vec<Result<Option<Value>>> =
                cases.par_iter().map(|case| evaluate(eq, reading, ctx, case)).collect();
            let failures = outcomes.iter().filter(|o| !matches!(o, Ok(None))).count();
            match outcomes.into_iter().zip(&cases).find(|(o, _)| !matches!(o, Ok(None))) {
                None => report,
                Some((o, case)) => {
                    let mut w = match o {
                        Ok(Some(w)) => w,
                        Err(e) => json!({ "error": e.to_string() }),
                        Ok(None) => unreachable!(),
                    };
                    w["case"] = case.to_json();
                    w["failing_cases"] = json!(failures);
                    report.fail(w)
                }
            }
        })
        .collect()
}
