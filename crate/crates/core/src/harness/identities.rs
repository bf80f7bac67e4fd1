//! Group laws of `M_n`, checked as exact equalities on sampled elements.

use serde_json::json;

use super::samples::{random_word, rng};
use super::VerdictReport;
use crate::laurent::LaurentPoly;
use crate::magnus::{GroupContext, MagnusElement};

type M = MagnusElement;

fn c3(a: &M, b: &M, c: &M) -> M {
    a.commutator(b).commutator(c)
}

/// Names and checks of the sampled identities. Each takes four elements.
fn identities() -> Vec<(&'static str, fn(&M, &M, &M, &M) -> bool)> {
    vec![
        ("metabelian-jacobi", |u, v, w, _| {
            (&(&c3(u, v, w) * &c3(v, w, u)) * &c3(w, u, v)).is_one()
        }),
        ("second-derived-trivial", |u, v, w, z| {
            u.commutator(v).commutator(&w.commutator(z)).is_one()
        }),
        ("product-commutator-expansion", |a, b, c, d| {
            let lhs = (a * b).commutator(&(c * d));
            let rhs = [
                a.commutator(d),
                c3(a, d, b),
                b.commutator(d),
                a.commutator(c),
                c3(a, c, &(b * d)),
                b.commutator(c),
                c3(b, c, d),
            ]
            .iter()
            .fold(a.context().one(), |acc, x| &acc * x);
            lhs == rhs
        }),
        ("twisted-generators", |x, y, z, _| {
            let lhs = (x * &x.commutator(z)).commutator(&(y * &y.commutator(z)));
            lhs == &x.commutator(y) * &c3(x, y, z)
        }),
    ]
}

/// `[x_i,x_j]^{a_k−1}[x_j,x_k]^{a_i−1}[x_k,x_i]^{a_j−1} = 1` for distinct `i, j, k`.
fn jacobi_relation(ctx: GroupContext) -> Option<(usize, usize, usize)> {
    let n = ctx.rank();
    let g = |i| ctx.generator(i).expect("index in range");
    let term = |i, j, k| {
        g(i).commutator(&g(j))
            .module_pow(&LaurentPoly::var_minus_one(n, k))
            .expect("commutators are derived")
    };
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || j == k || i == k {
                    continue;
                }
                if !(&(&term(i, j, k) * &term(j, k, i)) * &term(k, i, j)).is_one() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Every law on `samples` deterministic samples, plus the generator-level
/// relation over all distinct triples.
pub fn check_group_identities(n: usize, samples: usize, seed: u64) -> VerdictReport {
    let report = VerdictReport::new("group-identities", json!({ "n": n, "samples": samples, "seed": seed }));
    let ctx = match GroupContext::new(n) {
        Ok(c) => c,
        Err(e) => return report.skipped(&e.to_string()),
    };
    for (name, law) in identities() {
        let mut r = rng(seed, name);
        for k in 0..samples {
            let w: Vec<M> = (0..4).map(|_| random_word(ctx, &mut r, 6)).collect();
            if !law(&w[0], &w[1], &w[2], &w[3]) {
                let words: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                return report.fail(json!({ "identity": name, "sample": k, "elements": words }));
            }
        }
    }
    if n >= 3 {
        if let Some(t) = jacobi_relation(ctx) {
            return report.fail(json!({ "identity": "generator-jacobi", "indices": [t.0, t.1, t.2] }));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold() {
        let r = check_group_identities(3, 10, 1);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn free_group_law_fails_on_purpose() {
        // [x1,x2]^2 is not trivial, so a deliberately wrong law must be caught
        let ctx = GroupContext::new(2).unwrap();
        let x = ctx.generator(1).unwrap();
        let y = ctx.generator(2).unwrap();
        assert!(!x.commutator(&y).pow(2).is_one());
    }
}
