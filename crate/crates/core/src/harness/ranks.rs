//! Rank of `gr_c(M_n)` and dimensions of the submodules of `gr_{c,Q}(M_n)^{⊕n}`
//! spanned by the generating families.

use num_integer::binomial;
use serde::Serialize;
use serde_json::json;

use super::VerdictReport;
use crate::endo::Endomorphism;
use crate::error::Result;
use crate::graded::{basis, rank_gr, GrTuple};
use crate::intmat::IntMatrix;
use crate::magnus::GroupContext;
use crate::span::span_closure;
use crate::zoo;

/// Span closures are only attempted up to this rank and weight.
pub const SPAN_MAX_RANK: usize = 4;
pub const SPAN_MAX_WEIGHT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankNumbers {
    pub gr: u64,
    pub total: u64,
    /// `dim(P_c ⊕ Q_c)`; at weight 2 the rank of the whole first quotient.
    pub pq: u64,
    /// `dim R_c`; absent at weight 2.
    pub r: Option<u64>,
}

/// The closed formulas.
pub fn expected_ranks(n: usize, c: usize) -> RankNumbers {
    let gr = rank_gr(n, c);
    let total = n as u64 * gr;
    if c == 2 {
        return RankNumbers {
            gr,
            total,
            pq: n as u64 * binomial(n as u64, 2),
            r: None,
        };
    }
    let r = binomial((n + c - 2) as u64, (n - 1) as u64);
    RankNumbers {
        gr,
        total,
        pq: n as u64 * (c as u64 - 1) * binomial((n + c - 2) as u64, (n - 2) as u64) - r,
        r: Some(r),
    }
}

/// χ of every `τ_{i,(i_1,…,i_c)}` with `i_1 ≠ i_2` and no `i_k` equal to `i`.
fn p_seeds(ctx: GroupContext, c: usize) -> Result<Vec<GrTuple>> {
    let n = ctx.rank();
    let mut out = Vec::new();
    for i in 1..=n {
        let others: Vec<usize> = (1..=n).filter(|&k| k != i).collect();
        let mut seqs: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..c {
            seqs = seqs
                .into_iter()
                .flat_map(|s| {
                    others.iter().map(move |&k| {
                        let mut t = s.clone();
                        t.push(k);
                        t
                    })
                })
                .collect();
        }
        for s in seqs.into_iter().filter(|s| s[0] != s[1]) {
            out.push(zoo::tau_seq(ctx, i, &s)?.chi(c)?);
        }
    }
    Ok(out)
}

/// χ of the inner automorphisms by the basic commutators of weight `c − 1`.
fn q_seeds(ctx: GroupContext, c: usize) -> Result<Vec<GrTuple>> {
    basis(ctx.rank(), c - 1)
        .into_iter()
        .map(|b| zoo::inner(&b.element(ctx)?).chi(c))
        .collect()
}

/// At weight 2: χ of every `π_{ij}` and `τ_{i,(j,k)}`.
fn weight_two_seeds(ctx: GroupContext) -> Result<Vec<GrTuple>> {
    let n = ctx.rank();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if j == i {
                continue;
            }
            out.push(zoo::pi(ctx, i, j)?.chi(2)?);
            for k in j + 1..=n {
                if k != i {
                    out.push(zoo::tau_seq(ctx, i, &[j, k])?.chi(2)?);
                }
            }
        }
    }
    Ok(out)
}

/// `(0, [x_2,(c−1)x_1], …, [x_n,(c−1)x_1])`, which is χ of `η`.
fn r_seed(ctx: GroupContext, c: usize) -> Result<GrTuple> {
    let eta: Endomorphism = zoo::eta(ctx, c)?;
    eta.chi(c)
}

/// The span dimensions, or `None` outside the span envelope.
pub fn computed_ranks(n: usize, c: usize) -> Result<Option<RankNumbers>> {
    if n > SPAN_MAX_RANK || c > SPAN_MAX_WEIGHT {
        return Ok(None);
    }
    let ctx = GroupContext::new(n)?;
    let gens = IntMatrix::gl_generators(n);
    let gr = basis(n, c).len() as u64;
    if c == 2 {
        let pq = span_closure(&weight_two_seeds(ctx)?, &gens)?.dim() as u64;
        return Ok(Some(RankNumbers {
            gr,
            total: n as u64 * gr,
            pq,
            r: None,
        }));
    }
    let mut pq_seeds = p_seeds(ctx, c)?;
    pq_seeds.extend(q_seeds(ctx, c)?);
    let r = r_seed(ctx, c)?;
    let pq = span_closure(&pq_seeds, &gens)?.dim() as u64;
    let rd = span_closure(std::slice::from_ref(&r), &gens)?.dim() as u64;
    pq_seeds.push(r);
    let total = span_closure(&pq_seeds, &gens)?.dim() as u64;
    Ok(Some(RankNumbers {
        gr,
        total,
        pq,
        r: Some(rd),
    }))
}

/// Compares the basis size and, inside the span envelope, the closure
/// dimensions with the closed formulas.
pub fn rank_report(n: usize, c: usize) -> VerdictReport {
    let report = VerdictReport::new("ranks", json!({ "n": n, "c": c }));
    if n < 2 || c < 2 || GroupContext::new(n).is_err() {
        return report.skipped("needs 2 <= n <= 8 and c >= 2");
    }
    let expected = expected_ranks(n, c);
    let computed = match computed_ranks(n, c) {
        Ok(x) => x,
        Err(e) => return report.fail(json!({ "error": e.to_string() })),
    };
    let gr = basis(n, c).len() as u64;
    let mut report = report;
    report.params["expected"] = json!(expected);
    report.params["computed"] = json!(computed);
    if gr != expected.gr {
        return report.fail(json!({ "basis_size": gr }));
    }
    match computed {
        Some(got) if got != expected => report.fail(json!({ "computed": got, "expected": expected })),
        _ => report,
    }
}
