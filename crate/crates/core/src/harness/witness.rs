//! Explicit commutator words showing that each generator of `L^c(IA(M_n))` lies in
//! the image of `γ_{c−1}(IA(M_n))`.

use std::fmt;

use serde_json::json;

use super::equations::Conv;
use super::{discrepancy, VerdictReport};
use crate::endo::Endomorphism;
use crate::error::Result;
use crate::graded::basis;
use crate::magnus::GroupContext;
use crate::zoo;

/// A formal commutator word over named automorphisms. Atoms carry the index
/// of the lower central term of `IA(M_n)` they are known to lie in (0 for maps
/// outside `IA(M_n)`, which may only appear as conjugators).
#[derive(Clone)]
pub enum Word {
    Atom {
        label: String,
        map: Endomorphism,
        weight: usize,
    },
    Inv(Box<Word>),
    Comm(Box<Word>, Box<Word>),
    Conj(Box<Word>, Box<Word>),
}

impl Word {
    pub fn atom(label: impl Into<String>, map: Endomorphism, weight: usize) -> Word {
        Word::Atom {
            label: label.into(),
            map,
            weight,
        }
    }

    pub fn inv(self) -> Word {
        Word::Inv(Box::new(self))
    }

    pub fn comm(self, other: Word) -> Word {
        Word::Comm(Box::new(self), Box::new(other))
    }

    /// `self^by`.
    pub fn conj(self, by: Word) -> Word {
        Word::Conj(Box::new(self), Box::new(by))
    }

    /// `[self, m b]`.
    pub fn iterated(self, m: u32, b: &Word) -> Word {
        (0..m).fold(self, |acc, _| acc.comm(b.clone()))
    }

    /// A lower bound for the `k` with the word in `γ_k(IA(M_n))`.
    pub fn weight(&self) -> usize {
        match self {
            Word::Atom { weight, .. } => *weight,
            Word::Inv(a) => a.weight(),
            Word::Comm(a, b) => a.weight() + b.weight(),
            Word::Conj(a, _) => a.weight(),
        }
    }

    pub fn eval(&self, conv: Conv) -> Result<Endomorphism> {
        match self {
            Word::Atom { map, .. } => Ok(map.clone()),
            Word::Inv(a) => a.eval(conv)?.inverse(),
            Word::Comm(a, b) => conv.comm(&a.eval(conv)?, &b.eval(conv)?),
            Word::Conj(a, b) => conv.conj(&a.eval(conv)?, &b.eval(conv)?),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Atom { label, .. } => write!(f, "{label}"),
            Word::Inv(a) => match **a {
                Word::Atom { .. } => write!(f, "{a}^-1"),
                _ => write!(f, "({a})^-1"),
            },
            Word::Comm(a, b) => write!(f, "[{a}, {b}]"),
            Word::Conj(a, b) => write!(f, "({a})^({b})"),
        }
    }
}

fn pi_word(ctx: GroupContext, i: usize, j: usize) -> Result<Word> {
    Ok(Word::atom(format!("pi{i}{j}"), zoo::pi(ctx, i, j)?, 1))
}

fn rho_word(ctx: GroupContext, j: usize) -> Result<Word> {
    Ok(Word::atom(format!("rho{j}"), zoo::pi_pair_inverse(ctx, j)?, 1))
}

/// `τ_{1,seq}` with `seq` avoiding 1, by peeling entries off the bracket.
pub fn seq_word(ctx: GroupContext, seq: &[usize]) -> Result<Word> {
    if seq.len() == 2 {
        let label = format!("tau1({},{})", seq[0], seq[1]);
        return Ok(Word::atom(label, zoo::tau_seq(ctx, 1, seq)?, 1));
    }
    let (k1, k2, k3) = (seq[0], seq[1], seq[2]);
    if k1 != k3 {
        let mut rest = vec![k1];
        rest.extend_from_slice(&seq[2..]);
        Ok(pi_word(ctx, k1, k2)?.inv().comm(seq_word(ctx, &rest)?.inv()))
    } else {
        let mut rest = vec![k2, k1];
        rest.extend_from_slice(&seq[3..]);
        Ok(seq_word(ctx, &rest)?.inv().comm(pi_word(ctx, k2, k1)?.inv()))
    }
}

/// `τ_{123,(r_1,0,…,0)}` for `r_1 ≥ 1`, as `[π_{1n}, (ψ_{1,r_1−1}⁻¹)^{σ_{1n}}]`.
fn first_slot_word(ctx: GroupContext, r1: u32) -> Result<Word> {
    let n = ctx.rank();
    let psi = Word::atom("tau1(2,3)", zoo::tau_seq(ctx, 1, &[2, 3])?, 1)
        .inv()
        .iterated(r1 - 1, &rho_word(ctx, n)?);
    let sigma = Word::atom(format!("sigma1{n}"), zoo::sigma(ctx, 1, n)?, 0);
    Ok(pi_word(ctx, 1, n)?.comm(psi.inv().conj(sigma)))
}

/// A word for `τ_{123,(r)}`.
pub fn tau_word(ctx: GroupContext, r: &[u32]) -> Result<Word> {
    let n = ctx.rank();
    if r[0] == 0 {
        let mut seq = vec![2, 3];
        for (k, &m) in r.iter().enumerate() {
            seq.extend(std::iter::repeat_n(k + 1, m as usize));
        }
        return seq_word(ctx, &seq);
    }
    if r[1..].iter().all(|&x| x == 0) {
        return first_slot_word(ctx, r[0]);
    }
    let mut acc = first_slot_word(ctx, r[0])?.inv();
    for j in (4..=n).rev() {
        acc = acc.iterated(r[j - 1], &rho_word(ctx, j)?);
    }
    acc = acc.iterated(r[2], &pi_word(ctx, 2, 3)?.inv());
    acc = acc.iterated(r[1], &pi_word(ctx, 3, 2)?.inv());
    Ok(acc.inv())
}

/// `ξ_v` for `v = [x_{k_1}, …, x_{k_m}]`, as `[τ_{x_{k_1}}, …, τ_{x_{k_m}}]⁻¹` where
/// `τ_x` is conjugation `y ↦ x y x⁻¹`.
pub fn inner_word(ctx: GroupContext, ks: &[usize]) -> Result<Word> {
    let conj =
        |k: usize| -> Result<Word> { Ok(Word::atom(format!("t{k}"), zoo::inner(&ctx.generator(k)?.inverse()), 1)) };
    let mut acc = conj(ks[0])?;
    for &k in &ks[1..] {
        acc = acc.comm(conj(k)?);
    }
    Ok(acc.inv())
}

/// For every generator `τ_{123,(r)}` (`Σr = c − 2`) and `ξ_v` (`v` a basic
/// commutator of weight `c − 1`), builds a word of weight at least `c − 1` and
/// checks that it agrees with the generator modulo `I_{c+1}A`.
pub fn gamma_witnesses(n: usize, c: usize) -> VerdictReport {
    let report = VerdictReport::new("gamma-witnesses", json!({ "n": n, "c": c }));
    if n < 4 || c < 3 {
        return report.skipped("needs n >= 4 and c >= 3");
    }
    let ctx = match GroupContext::new(n) {
        Ok(x) => x,
        Err(e) => return report.skipped(&e.to_string()),
    };
    let build = || -> Result<Vec<(String, Endomorphism, Word)>> {
        let mut out = Vec::new();
        for r in super::equations::compositions(n, c as u32 - 2) {
            out.push((
                format!("tau123{r:?}"),
                zoo::tau_p(ctx, 1, 2, 3, &r)?,
                tau_word(ctx, &r)?,
            ));
        }
        for b in basis(n, c - 1) {
            let ks = b.indices();
            out.push((format!("xi{b}"), zoo::inner(&b.element(ctx)?), inner_word(ctx, &ks)?));
        }
        Ok(out)
    };
    let targets = match build() {
        Ok(t) => t,
        Err(e) => return report.fail(json!({ "error": e.to_string() })),
    };
    let mut report = report;
    report.params["generators"] = json!(targets.len());
    use rayon::prelude::*;
    let outcomes: Vec<Option<serde_json::Value>> = targets
        .par_iter()
        .map(|(label, target, word)| {
            let weight = word.weight();
            let fail = |mut w: serde_json::Value| {
                w["generator"] = json!(label);
                w["word"] = json!(word.to_string());
                w["weight"] = json!(weight);
                Some(w)
            };
            if weight + 1 < c {
                return fail(json!({ "reason": "word weight too small" }));
            }
            match word.eval(Conv::USUAL) {
                Err(e) => fail(json!({ "error": e.to_string() })),
                Ok(m) => match m.difference_depth(target) {
                    Ok(d) if d.at_least(c as u32 + 1) => None,
                    Ok(_) => fail(discrepancy(&m, target)),
                    Err(e) => fail(json!({ "error": e.to_string() })),
                },
            }
        })
        .collect();
    match outcomes.into_iter().flatten().next() {
        None => report,
        Some(w) => report.fail(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_weights() {
        let ctx = GroupContext::new(4).unwrap();
        assert_eq!(seq_word(ctx, &[2, 3, 3, 3]).unwrap().weight(), 3);
        assert_eq!(tau_word(ctx, &[2, 0, 0, 0]).unwrap().weight(), 3);
        assert_eq!(tau_word(ctx, &[1, 1, 0, 1]).unwrap().weight(), 4);
        assert_eq!(inner_word(ctx, &[2, 1, 1]).unwrap().weight(), 3);
    }

    #[test]
    fn inner_commutators_are_exact() {
        let ctx = GroupContext::new(4).unwrap();
        let w = inner_word(ctx, &[2, 1]).unwrap().eval(Conv::USUAL).unwrap();
        let v = ctx.generator(2).unwrap().commutator(&ctx.generator(1).unwrap());
        assert_eq!(w, zoo::inner(&v));
    }
}
