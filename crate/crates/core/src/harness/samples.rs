//! Deterministic pseudo-random samples: group words and products of named
//! automorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::endo::Endomorphism;
use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::magnus::{GroupContext, MagnusElement};
use crate::zoo;

/// A generator stream derived from a suite seed and a per-check salt.
pub(crate) fn rng(seed: u64, salt: &str) -> ChaCha8Rng {
    let h = salt.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// A random word of length at most `max_len` in the generators and their inverses.
pub(crate) fn random_word(ctx: GroupContext, rng: &mut ChaCha8Rng, max_len: usize) -> MagnusElement {
    let len = rng.gen_range(0..=max_len);
    let mut w = ctx.one();
    for _ in 0..len {
        let x = ctx.generator(rng.gen_range(1..=ctx.rank())).expect("index in range");
        w = if rng.gen_bool(0.5) { &w * &x } else { &w * &x.inverse() };
    }
    w
}

/// The named automorphisms used for sampling at rank `n`, with labels. The IA
/// ones come first.
pub fn zoo_automorphisms(ctx: GroupContext) -> Result<Vec<(String, Endomorphism)>> {
    let n = ctx.rank();
    let mut out: Vec<(String, Endomorphism)> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push((format!("pi{i}{j}"), zoo::pi(ctx, i, j)?));
            }
        }
    }
    for i in 1..=n {
        out.push((format!("inner(x{i})"), zoo::inner(&ctx.generator(i)?)));
    }
    if n >= 3 {
        out.push(("tau1(2,3)".into(), zoo::tau_seq(ctx, 1, &[2, 3])?));
        out.push(("tau2(3,1,1)".into(), zoo::tau_seq(ctx, 2, &[3, 1, 1])?));
        out.push(("mu".into(), zoo::mu(ctx)?));
        let mut r = vec![0; n];
        r[0] = 1;
        out.push(("tau123(1,0..)".into(), zoo::tau_p(ctx, 1, 2, 3, &r)?));
        out.push((
            "B132(a1-1)".into(),
            zoo::b_p(ctx, 1, 3, 2, &LaurentPoly::var_minus_one(n, 1))?,
        ));
        out.push(("delta(0..)".into(), zoo::delta_product_second(ctx, &vec![0; n])?));
    }
    out.push(("B12(1)".into(), zoo::b_q(ctx, 1, 2, &LaurentPoly::one(n))?));
    out.push((
        "B12(a2-1)".into(),
        zoo::b_q(ctx, 1, 2, &LaurentPoly::var_minus_one(n, 2))?,
    ));
    out.push(("sigma12".into(), zoo::sigma(ctx, 1, 2)?));
    out.push(("beta".into(), zoo::beta(ctx)));
    if n >= 3 {
        out.push(("sigma23".into(), zoo::sigma(ctx, 2, 3)?));
    }
    Ok(out)
}

/// Random products of named automorphisms and their inverses.
pub struct ZooSampler {
    ctx: GroupContext,
    pool: Vec<(String, Endomorphism, Endomorphism)>,
    rng: ChaCha8Rng,
}

impl ZooSampler {
    /// `ia_only` restricts the pool to IA-automorphisms.
    pub fn new(ctx: GroupContext, seed: u64, salt: &str, ia_only: bool) -> Result<Self> {
        let pool = zoo_automorphisms(ctx)?
            .into_iter()
            .filter(|(_, f)| !ia_only || f.is_ia())
            .map(|(name, f)| {
                let inv = f.inverse()?;
                Ok((name, f, inv))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ZooSampler {
            ctx,
            pool,
            rng: rng(seed, salt),
        })
    }

    /// A product of between 1 and `max_len` factors, with its factor labels.
    pub fn product(&mut self, max_len: usize) -> Result<(Vec<String>, Endomorphism)> {
        let len = self.rng.gen_range(1..=max_len.max(1));
        let mut acc = Endomorphism::identity(self.ctx);
        let mut labels = Vec::with_capacity(len);
        for _ in 0..len {
            let k = self.rng.gen_range(0..self.pool.len());
            let (name, f, inv) = &self.pool[k];
            if self.rng.gen_bool(0.5) {
                acc = acc.compose(f)?;
                labels.push(name.clone());
            } else {
                acc = acc.compose(inv)?;
                labels.push(format!("{name}^-1"));
            }
        }
        Ok((labels, acc))
    }

    pub fn word(&mut self, max_len: usize) -> MagnusElement {
        random_word(self.ctx, &mut self.rng, max_len)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
