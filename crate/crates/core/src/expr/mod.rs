//! Text syntax for scalars, group elements and automorphism definitions.
//!
//! ```text
//! element := factor ('*' factor)*
//! factor  := atom ('^' INT | '^' '-' INT | '^' '(' scalar ')')*
//! atom    := 'x' INT | '1' | '(' element ')' | '[' element (',' [INT] element)* ']'
//! scalar  := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | satom ['^' ['-'] INT]
//! satom   := 'a' INT | INT | '(' scalar ')'
//! ```
//!
//! `w^k` is a group power and `w^(s)` is the module action of `s ∈ Z A_n` on a
//! derived element. Inside brackets an entry prefixed by a count `m` is repeated
//! `m` times, so `[x2, 3 x1]` is `[x2, x1, x1, x1]`.

mod ast;
mod lexer;
mod named;
mod parser;

use std::fmt::Write as _;

pub use ast::{ElemAst, ScalarAst};
pub use named::parse_automorphism;

use crate::error::Result;
use crate::laurent::{ExpVec, LaurentPoly};
use crate::magnus::{GroupContext, MagnusElement};
use parser::Parser;

pub fn parse_element_ast(text: &str, rank: usize) -> Result<ElemAst> {
    let mut p = Parser::new(text, rank, 1)?;
    let e = p.element()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_scalar_ast(text: &str, rank: usize) -> Result<ScalarAst> {
    let mut p = Parser::new(text, rank, 1)?;
    let s = p.scalar()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_element(text: &str, ctx: GroupContext) -> Result<MagnusElement> {
    parse_element_ast(text, ctx.rank())?.eval(ctx)
}

pub fn parse_scalar(text: &str, rank: usize) -> Result<LaurentPoly> {
    parse_scalar_ast(text, rank)?.eval(rank)
}

/// Reads one image per non-blank line; `#` starts a comment.
pub fn parse_images(text: &str, ctx: GroupContext) -> Result<Vec<MagnusElement>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let mut p = Parser::new(body, ctx.rank(), k + 1)?;
        let e = p.element()?;
        p.finish()?;
        out.push(e.eval(ctx)?);
    }
    Ok(out)
}

/// Writes a derived element as `∏_{i<j} [x_i, x_j]^{P_ij}`.
///
/// The Fox row of such a product is `d_k = −Σ_j Q_kj (a_j − 1)` with `Q`
/// antisymmetric and `Q_ij = P_ij*·a_i⁻¹a_j⁻¹`. `Q` is recovered one variable at
/// a time by dividing by `a_k − 1`, starting from the last.
pub fn commutator_decomposition(w: &MagnusElement) -> Option<Vec<((usize, usize), LaurentPoly)>> {
    if !w.is_derived() {
        return None;
    }
    let n = w.rank();
    let mut d: Vec<LaurentPoly> = w.fox_row().to_vec();
    let mut q = vec![vec![LaurentPoly::zero(n); n]; n];
    for k in (1..n).rev() {
        let mut correction = LaurentPoly::zero(n);
        for i in 0..k {
            let (quot, rem) = d[i].divide_by_var_minus_one(k + 1);
            correction = &correction + &(&quot * &LaurentPoly::var_minus_one(n, i + 1));
            q[i][k] = -quot;
            d[i] = rem;
        }
        let rest = &d[k] + &correction;
        debug_assert!(rest.is_zero(), "Fox row is not in the image of the Koszul map");
        d[k] = rest;
    }
    debug_assert!(d[0].is_zero());
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if q[i][j].is_zero() {
                continue;
            }
            let mut inv = ExpVec::zero(n);
            inv.as_mut_slice()[i] = -1;
            inv.as_mut_slice()[j] = -1;
            out.push(((i + 1, j + 1), q[i][j].star().shift(&inv)));
        }
    }
    Some(out)
}

/// Canonical text for an element: `x^e` followed by commutators with module exponents.
pub fn print_element(w: &MagnusElement) -> String {
    let mut parts = Vec::new();
    let mut prefix = w.context().one();
    for (i, &k) in w.abelianization().as_slice().iter().enumerate() {
        if k != 0 {
            parts.push(if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{k}", i + 1)
            });
            prefix = &prefix * &w.context().generator(i + 1).unwrap().pow(k as i64);
        }
    }
    let derived = &prefix.inverse() * w;
    for ((i, j), p) in commutator_decomposition(&derived).expect("derived part") {
        let mut s = format!("[x{i},x{j}]");
        if (-&p).is_one() {
            s.push_str("^-1");
        } else if !p.is_one() {
            write!(s, "^({p})").unwrap();
        }
        parts.push(s);
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(n: usize) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    #[test]
    fn documented_examples() {
        let c = ctx(3);
        let (x1, x2, x3) = (
            c.generator(1).unwrap(),
            c.generator(2).unwrap(),
            c.generator(3).unwrap(),
        );
        assert_eq!(parse_element("x1*[x1,x2]", c).unwrap(), &x1 * &x1.commutator(&x2));
        assert_eq!(
            parse_element("[x1,x2]^((a3-1))", c).unwrap(),
            x1.commutator(&x2)
                .module_pow(&LaurentPoly::var_minus_one(3, 3))
                .unwrap()
        );
        assert_eq!(
            parse_element("[x2, 3 x1]", c).unwrap(),
            MagnusElement::left_normed(&[x2.clone(), x1.clone(), x1.clone(), x1.clone()]).unwrap()
        );
        assert_eq!(parse_element("[x2, 0 x1]", c).unwrap(), x2);
        assert_eq!(parse_element("x3^-2", c).unwrap(), x3.pow(-2));
        let s = parse_scalar("2*a1*a2^-1 - (a3-1)^2", 3).unwrap();
        assert_eq!(parse_scalar(&s.to_string(), 3).unwrap(), s);
    }

    #[test]
    fn errors_carry_positions() {
        let c = ctx(3);
        match parse_element("x1*x4", c) {
            Err(Error::Parse { line: 1, column: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_element("x1*(x2", c) {
            Err(Error::Parse { line: 1, column: 7, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_element("x1^((a1-1))", c), Err(Error::NotDerived));
        match parse_images("x1\n\n# comment\nx2*\n", c) {
            Err(Error::Parse { line: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn image_files() {
        let c = ctx(3);
        let imgs = parse_images("x1*[x1,x2]  # pi_12\nx2\nx3\n", c).unwrap();
        assert_eq!(imgs.len(), 3);
        assert_eq!(imgs[1], c.generator(2).unwrap());
    }

    fn random_scalar(rng: &mut ChaCha8Rng, n: usize, depth: u32) -> ScalarAst {
        if depth == 0 || rng.gen_bool(0.3) {
            return if rng.gen_bool(0.6) {
                ScalarAst::Var(rng.gen_range(1..=n))
            } else {
                ScalarAst::Int(rng.gen_range(0..4).into())
            };
        }
        let sub = |rng: &mut ChaCha8Rng| Box::new(random_scalar(rng, n, depth - 1));
        match rng.gen_range(0..5) {
            0 => ScalarAst::Neg(sub(rng)),
            1 => ScalarAst::Add(sub(rng), sub(rng)),
            2 => ScalarAst::Sub(sub(rng), sub(rng)),
            3 => ScalarAst::Mul(sub(rng), sub(rng)),
            _ => ScalarAst::Pow(Box::new(ScalarAst::Var(rng.gen_range(1..=n))), rng.gen_range(-2..=2)),
        }
    }

    fn random_element(rng: &mut ChaCha8Rng, n: usize, depth: u32, derived: bool) -> ElemAst {
        if depth == 0 || rng.gen_bool(0.25) {
            let a = ElemAst::Gen(rng.gen_range(1..=n));
            let b = ElemAst::Gen(rng.gen_range(1..=n));
            return if derived {
                ElemAst::Bracket(vec![(1, a), (1, b)])
            } else {
                a
            };
        }
        let sub = |rng: &mut ChaCha8Rng, d: bool| random_element(rng, n, depth - 1, d);
        match rng.gen_range(0..5) {
            0 => ElemAst::Product((0..rng.gen_range(2..4)).map(|_| sub(rng, derived)).collect()),
            1 => ElemAst::Power(Box::new(sub(rng, derived)), rng.gen_range(-2..=3)),
            2 => ElemAst::ModPow(Box::new(sub(rng, true)), random_scalar(rng, n, 2)),
            3 => {
                let mut items = vec![(1, sub(rng, false)), (rng.gen_range(1..3), sub(rng, false))];
                for _ in 0..rng.gen_range(0..2) {
                    items.push((rng.gen_range(0..3), sub(rng, false)));
                }
                ElemAst::Bracket(items)
            }
            _ => {
                if derived {
                    sub(rng, true)
                } else {
                    ElemAst::One
                }
            }
        }
    }

    #[test]
    fn round_trip_corpus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(2..=4);
            let c = ctx(n);
            let ast = random_element(&mut rng, n, 3, false);
            let text = ast.to_string();
            let reparsed = parse_element_ast(&text, n).unwrap();
            assert_eq!(reparsed, ast, "{text}");
            let v = ast.eval(c).unwrap();
            let printed = print_element(&v);
            assert_eq!(parse_element(&printed, c).unwrap(), v, "{text} printed as {printed}");

            let s = random_scalar(&mut rng, n, 3);
            assert_eq!(parse_scalar_ast(&s.to_string(), n).unwrap(), s);
            if let Ok(p) = s.eval(n) {
                assert_eq!(parse_scalar(&p.to_string(), n).unwrap(), p);
            }
        }
    }

    #[test]
    fn decomposition_rebuilds_element() {
        let c = ctx(4);
        let w = parse_element("[x3,x1,x2]^(a1^2 - a4)*[x4,x2]^-1*[x2,x1,x1,x3]", c).unwrap();
        let mut acc = c.one();
        for ((i, j), p) in commutator_decomposition(&w).unwrap() {
            let k = c.generator(i).unwrap().commutator(&c.generator(j).unwrap());
            acc = &acc * &k.module_pow(&p).unwrap();
        }
        assert_eq!(acc, w);
    }
}
