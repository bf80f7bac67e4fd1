//! Structural laws: Fox goldens, the determinant criterion, exact inversion,
//! depth and filtration laws, and the kernel and equivariance of `χ_c`.

use rand::Rng;
use serde_json::json;

use super::samples::ZooSampler;
use super::VerdictReport;
use crate::depth::Depth;
use crate::endo::{star_act, Coset, Endomorphism};
use crate::error::Result;
use crate::graded::bullet;
use crate::intmat::IntMatrix;
use crate::laurent::{ExpVec, LaurentPoly};
use crate::magnus::{GroupContext, MagnusElement};
use crate::zoo;

fn context(report: &VerdictReport, n: usize) -> std::result::Result<GroupContext, VerdictReport> {
    GroupContext::new(n).map_err(|e| report.clone().skipped(&e.to_string()))
}

fn error_report(report: VerdictReport, e: crate::error::Error) -> VerdictReport {
    report.fail(json!({ "error": e.to_string() }))
}

/// `∂_j[x_j,x_k] = a_j⁻¹a_k⁻¹(1 − a_k)`, `∂_k[x_j,x_k] = a_j⁻¹a_k⁻¹(a_j − 1)`, and
/// every other entry zero, for all ordered pairs.
pub fn fox_goldens(n: usize) -> VerdictReport {
    let report = VerdictReport::new("fox-goldens", json!({ "n": n }));
    let ctx = match context(&report, n) {
        Ok(c) => c,
        Err(r) => return r,
    };
    for j in 1..=n {
        for k in 1..=n {
            if j == k {
                continue;
            }
            let w = ctx.generator(j).unwrap().commutator(&ctx.generator(k).unwrap());
            let mut e = ExpVec::zero(n);
            e.as_mut_slice()[j - 1] = -1;
            e.as_mut_slice()[k - 1] = -1;
            let unit = LaurentPoly::monomial(e, 1);
            let one = LaurentPoly::one(n);
            let dj = &unit * &(&one - &LaurentPoly::var(n, k));
            let dk = &unit * &LaurentPoly::var_minus_one(n, j);
            let ok = w.satisfies_identity()
                && (1..=n).all(|m| {
                    let want = if m == j {
                        dj.clone()
                    } else if m == k {
                        dk.clone()
                    } else {
                        LaurentPoly::zero(n)
                    };
                    *w.fox(m) == want
                });
            if !ok {
                return report.fail(json!({ "pair": [j, k], "element": w.to_string() }));
            }
        }
    }
    report
}

/// Units for the named automorphisms (sign `+1` for the IA ones), `π_{12}` in
/// particular, and a non-unit for `η` at weight `c`.
pub fn determinant_criterion(n: usize, c: usize) -> VerdictReport {
    let report = VerdictReport::new("determinant-criterion", json!({ "n": n, "c": c }));
    let ctx = match context(&report, n) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let run = || -> Result<Option<serde_json::Value>> {
        for (name, f) in super::samples::zoo_automorphisms(ctx)? {
            let det = f.det();
            let ok = match det.as_unit_monomial() {
                Some((_, s)) => !f.is_ia() || s == 1,
                None => false,
            };
            if !ok {
                return Ok(Some(json!({ "map": name, "det": det.to_string() })));
            }
        }
        if c >= 2 {
            let eta = zoo::eta(ctx, c)?;
            if eta.det().as_unit_monomial().is_some() {
                return Ok(Some(json!({ "map": "eta", "det": eta.det().to_string() })));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => report,
        Ok(Some(w)) => report.fail(w),
        Err(e) => error_report(report, e),
    }
}

/// `φ ∘ φ⁻¹ = φ⁻¹ ∘ φ = id` for random products of named automorphisms.
pub fn exact_inversion(n: usize, samples: usize, max_len: usize, seed: u64) -> VerdictReport {
    let report = VerdictReport::new(
        "exact-inversion",
        json!({ "n": n, "samples": samples, "max_len": max_len, "seed": seed }),
    );
    let ctx = match context(&report, n) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let run = || -> Result<Option<serde_json::Value>> {
        let mut s = ZooSampler::new(ctx, seed, "inversion", false)?;
        for k in 0..samples {
            let (labels, f) = s.product(max_len)?;
            let g = f.inverse()?;
            if !f.compose(&g)?.is_identity() || !g.compose(&f)?.is_identity() {
                return Ok(Some(json!({ "sample": k, "factors": labels })));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => report,
        Ok(Some(w)) => report.fail(w),
        Err(e) => error_report(report, e),
    }
}

/// A random element of `γ_k(M_n)` for `k ≥ 1`: a left-normed commutator of
/// random words.
fn deep_word(s: &mut ZooSampler, k: usize) -> MagnusElement {
    let mut w = s.word(4);
    for _ in 1..k {
        let v = s.word(3);
        w = w.commutator(&v);
    }
    w
}

/// Depth of `τ_{1,seq}` equals `|seq|` up to weight `max_weight`; depth of
/// `ξ_w` is one more than the lower central depth of `w`; `μ` has depth 4.
pub fn depth_laws(n: usize, samples: usize, max_weight: usize, seed: u64) -> VerdictReport {
    let report = VerdictReport::new(
        "depth-laws",
        json!({ "n": n, "samples": samples, "max_weight": max_weight, "seed": seed }),
    );
    let ctx = match context(&report, n) {
        Ok(c) => c,
        Err(r) => return r,
    };
    if n < 3 {
        return report.skipped("needs n >= 3");
    }
    let run = || -> Result<Option<serde_json::Value>> {
        let mut s = ZooSampler::new(ctx, seed, "depth", false)?;
        for len in 2..=max_weight {
            for _ in 0..3 {
                let mut seq: Vec<usize> = (0..len).map(|_| s.rng().gen_range(2..=n)).collect();
                if seq[0] == seq[1] {
                    seq[1] = if seq[0] == 2 { 3 } else { 2 };
                }
                let d = zoo::tau_seq(ctx, 1, &seq)?.ia_depth()?;
                if d != Depth::Finite(len as u32) {
                    return Ok(Some(json!({ "law": "tau-seq", "seq": seq, "depth": d })));
                }
            }
        }
        for k in 0..samples {
            let weight = 1 + k % 4;
            let w = deep_word(&mut s, weight);
            let d = zoo::inner(&w).ia_depth()?;
            if d != w.gamma_depth().plus(1) {
                return Ok(Some(json!({ "law": "inner", "element": w.to_string(), "depth": d })));
            }
        }
        let d = zoo::mu(ctx)?.ia_depth()?;
        if d != Depth::Finite(4) {
            return Ok(Some(json!({ "law": "mu", "depth": d })));
        }
        Ok(None)
    };
    match run() {
        Ok(None) => report,
        Ok(Some(w)) => report.fail(w),
        Err(e) => error_report(report, e),
    }
}

/// An IA-automorphism of depth at least `target`, built from a random named
/// IA-automorphism by commutators with others.
fn deep_ia(s: &mut ZooSampler, target: usize) -> Result<Endomorphism> {
    let (_, mut f) = s.product(2)?;
    while !f.ia_depth()?.at_least(target as u32) {
        let (_, g) = s.product(1)?;
        f = f.commutator(&g)?;
    }
    Ok(f)
}

/// `[I_tA, I_sA] ⊆ I_{t+s−1}A` on sampled pairs, and `γ_k(IA) ⊆ I_{k+1}A` on
/// sampled iterated commutators.
pub fn filtration_laws(n: usize, pairs: usize, seed: u64) -> VerdictReport {
    let report = VerdictReport::new("filtration-laws", json!({ "n": n, "pairs": pairs, "seed": seed }));
    let ctx = match context(&report, n) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let run = || -> Result<Option<serde_json::Value>> {
        let mut s = ZooSampler::new(ctx, seed, "filtration", true)?;
        for k in 0..pairs {
            let a = deep_ia(&mut s, 2 + k % 2)?;
            let b = deep_ia(&mut s, 2 + (k / 2) % 2)?;
            let (t, u) = (a.ia_depth()?, b.ia_depth()?);
            let d = a.commutator(&b)?.ia_depth()?;
            if let (Some(t), Some(u)) = (t.finite(), u.finite()) {
                if !d.at_least(t + u - 1) {
                    return Ok(Some(
                        json!({ "law": "commutator", "pair": k, "depths": [t, u], "result": d }),
                    ));
                }
            }
        }
        for k in 0..pairs.min(10) {
            let len = 2 + k % 3;
            let mut acc = s.product(1)?.1;
            for _ in 1..len {
                acc = acc.commutator(&s.product(1)?.1)?;
            }
            let d = acc.ia_depth()?;
            if !d.at_least(len as u32 + 1) {
                return Ok(Some(json!({ "law": "lower-central", "length": len, "depth": d })));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => report,
        Ok(Some(w)) => report.fail(w),
        Err(e) => error_report(report, e),
    }
}

fn random_gl(s: &mut ZooSampler, n: usize) -> IntMatrix {
    let gens = IntMatrix::gl_generators(n);
    let len = s.rng().gen_range(1..=3);
    (0..len).fold(IntMatrix::identity(n), |acc, _| {
        let g = &gens[s.rng().gen_range(0..gens.len())];
        acc.mul(g)
    })
}

/// `χ_c(φ) = 0 ⟺ φ ∈ I_{c+1}A` and `χ_c(g * φ̄) = g • χ_c(φ̄)` on sampled pairs.
pub fn chi_kernel_and_equivariance(n: usize, c: usize, samples: usize, seed: u64) -> VerdictReport {
    let report = VerdictReport::new(
        "chi-kernel-equivariance",
        json!({ "n": n, "c": c, "samples": samples, "seed": seed }),
    );
    let ctx = match context(&report, n) {
        Ok(c) => c,
        Err(r) => return r,
    };
    if c < 2 {
        return report.skipped("needs c >= 2");
    }
    let run = || -> Result<Option<serde_json::Value>> {
        let mut s = ZooSampler::new(ctx, seed, "chi", true)?;
        let id = Endomorphism::identity(ctx);
        if !id.chi(c)?.is_zero() {
            return Ok(Some(json!({ "law": "kernel", "sample": "identity" })));
        }
        for k in 0..samples {
            let phi = deep_ia(&mut s, c)?;
            let deeper = phi.ia_depth()?.at_least(c as u32 + 1);
            let chi = phi.chi(c)?;
            if chi.is_zero() != deeper {
                return Ok(Some(json!({ "law": "kernel", "sample": k, "depth": phi.ia_depth()? })));
            }
            let g = if k == 0 {
                IntMatrix::identity(n)
            } else {
                random_gl(&mut s, n)
            };
            let coset = Coset::new(phi, c)?;
            let lhs = star_act(&g, &coset)?.chi()?;
            let rhs = bullet(&g, &chi)?;
            if lhs != rhs {
                return Ok(Some(json!({
                    "law": "equivariance",
                    "sample": k,
                    "g": g.to_string(),
                    "star": lhs.to_string(),
                    "bullet": rhs.to_string(),
                })));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => report,
        Ok(Some(w)) => report.fail(w),
        Err(e) => error_report(report, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goldens_and_determinants() {
        assert!(fox_goldens(3).passed());
        let r = determinant_criterion(3, 3);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn small_sampled_laws() {
        for r in [
            exact_inversion(3, 5, 3, 1),
            depth_laws(3, 8, 4, 1),
            filtration_laws(3, 4, 1),
            chi_kernel_and_equivariance(3, 3, 4, 1),
        ] {
            assert!(r.passed(), "{r:?}");
        }
    }
}
