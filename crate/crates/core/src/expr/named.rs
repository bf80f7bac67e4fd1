//! Products of named automorphisms, e.g. `pi(1,2) * tau(1,2,3)^-1 * inner([x1,x2])`.
//!
//! ```text
//! product := item ('*' item)*
//! item := NAME ['(' arg (',' arg)* ')'] ['^' ['-'] INT]
//! ```
//!
//! `f * g` is the composite `f ∘ g`. Recognised names:
//!
//! | name | arguments | map |
//! |---|---|---|
//! | `id` | | identity |
//! | `pi` | `i, j` | `x_i ↦ x_i[x_i, x_j]` |
//! | `sigma` | `i, j` | swap `x_i`, `x_j` |
//! | `beta` | | `x_2 ↦ x_2 x_1` |
//! | `mu` | | `x_1 ↦ x_1[x_1⁻¹, [x_1, [x_2, x_3]]]` |
//! | `eta` | `c` | `x_j ↦ x_j[x_j, (c − 1) x_1]` |
//! | `tau` | `i, k_1, …, k_m` | `x_i ↦ x_i[x_{k_1}, …, x_{k_m}]` |
//! | `taup` | `i, j, k, r_1, …, r_n` | `x_i ↦ x_i[x_j, x_k]^{ω(r)}` |
//! | `bp` | `i, k, j, P` | `B_{ikj}(P)` |
//! | `bq` | `i, j, Q` | `B_{ij}(Q)` |
//! | `delta` | `r_1, …, r_n` | `δ_{123,(r)}` |
//! | `psi` | `s` | `ψ_{1,s}` |
//! | `inner` | `u` | `x ↦ u⁻¹ x u` |
//!
//! `P`, `Q` are scalars and `u` is an element, both in the element grammar.

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::magnus::GroupContext;
use crate::zoo;

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if !f(ch) {
                break;
            }
            self.pos += ch.len_utf8();
        }
        &self.src[start..self.pos]
    }

    /// Raw argument texts with their columns, split at commas outside brackets.
    fn args(&mut self) -> Result<Vec<(usize, &'a str)>> {
        let mut out = Vec::new();
        let mut depth = 0usize;
        let mut start = self.pos;
        for (off, ch) in self.src[self.pos..].char_indices() {
            let at = self.pos + off;
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' if depth > 0 => depth -= 1,
                ')' => {
                    out.push((self.src[..start].chars().count() + 1, &self.src[start..at]));
                    self.pos = at + 1;
                    return Ok(out);
                }
                ',' if depth == 0 => {
                    out.push((self.src[..start].chars().count() + 1, &self.src[start..at]));
                    start = at + 1;
                }
                _ => {}
            }
        }
        Err(err(self.src.chars().count() + 1, "unclosed argument list"))
    }
}

fn integer<T: std::str::FromStr>((col, s): (usize, &str)) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| err(col, format!("expected a non-negative integer, found {:?}", s.trim())))
}

fn shifted(e: Error, col: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => err(col + column - 1, message),
        other => other,
    }
}

fn build(ctx: GroupContext, name: &str, col: usize, args: &[(usize, &str)]) -> Result<Endomorphism> {
    let want = |k: usize| -> Result<()> {
        if args.len() != k {
            return Err(err(col, format!("{name} takes {k} arguments, got {}", args.len())));
        }
        Ok(())
    };
    let ints = |xs: &[(usize, &str)]| -> Result<Vec<usize>> { xs.iter().map(|&a| integer(a)).collect() };
    let tuple = |xs: &[(usize, &str)]| -> Result<Vec<u32>> { xs.iter().map(|&a| integer(a)).collect() };
    let scalar = |(c, s): (usize, &str)| super::parse_scalar(s, ctx.rank()).map_err(|e| shifted(e, c));
    match name {
        "id" => {
            want(0)?;
            Ok(Endomorphism::identity(ctx))
        }
        "pi" | "sigma" => {
            want(2)?;
            let ix = ints(args)?;
            if name == "pi" {
                zoo::pi(ctx, ix[0], ix[1])
            } else {
                zoo::sigma(ctx, ix[0], ix[1])
            }
        }
        "beta" => {
            want(0)?;
            Ok(zoo::beta(ctx))
        }
        "mu" => {
            want(0)?;
            zoo::mu(ctx)
        }
        "eta" => {
            want(1)?;
            zoo::eta(ctx, integer(args[0])?)
        }
        "tau" => {
            let ix = ints(args)?;
            if ix.len() < 3 {
                return Err(err(col, "tau takes an index and at least two bracket entries"));
            }
            zoo::tau_seq(ctx, ix[0], &ix[1..])
        }
        "taup" => {
            want(3 + ctx.rank())?;
            let ix = ints(&args[..3])?;
            zoo::tau_p(ctx, ix[0], ix[1], ix[2], &tuple(&args[3..])?)
        }
        "bp" => {
            want(4)?;
            let ix = ints(&args[..3])?;
            zoo::b_p(ctx, ix[0], ix[1], ix[2], &scalar(args[3])?)
        }
        "bq" => {
            want(3)?;
            let ix = ints(&args[..2])?;
            zoo::b_q(ctx, ix[0], ix[1], &scalar(args[2])?)
        }
        "delta" => {
            want(ctx.rank())?;
            zoo::delta(ctx, &tuple(args)?)
        }
        "psi" => {
            want(1)?;
            zoo::psi1(ctx, integer(args[0])?)
        }
        "inner" => {
            want(1)?;
            let (c, s) = args[0];
            Ok(zoo::inner(&super::parse_element(s, ctx).map_err(|e| shifted(e, c))?))
        }
        _ => Err(err(col, format!("unknown automorphism {name:?}"))),
    }
}

/// Parses a product of named automorphisms.
pub fn parse_automorphism(text: &str, ctx: GroupContext) -> Result<Endomorphism> {
    let mut s = Scanner { src: text, pos: 0 };
    let mut acc = Endomorphism::identity(ctx);
    loop {
        s.skip_ws();
        let col = s.column();
        let name = s.take_while(|c| c.is_ascii_alphanumeric());
        if name.is_empty() {
            return Err(err(col, "expected an automorphism name"));
        }
        let args = if s.eat('(') { s.args()? } else { Vec::new() };
        let args: Vec<(usize, &str)> = if args.len() == 1 && args[0].1.trim().is_empty() {
            Vec::new()
        } else {
            args
        };
        let mut f = build(ctx, name, col, &args)?;
        if s.eat('^') {
            let neg = s.eat('-');
            let ecol = s.column();
            let k: i64 = integer((ecol, s.take_while(|c| c.is_ascii_digit())))?;
            f = f.pow(if neg { -k } else { k })?;
        }
        acc = acc.compose(&f)?;
        if s.at_end() {
            return Ok(acc);
        }
        if !s.eat('*') {
            return Err(err(s.column(), "expected '*' or end of input"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn ctx(n: usize) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    #[test]
    fn single_names() {
        let c = ctx(4);
        assert_eq!(parse_automorphism("pi(1,2)", c).unwrap(), zoo::pi(c, 1, 2).unwrap());
        assert_eq!(parse_automorphism(" mu ", c).unwrap(), zoo::mu(c).unwrap());
        assert_eq!(
            parse_automorphism("tau(1, 2,3,3)", c).unwrap(),
            zoo::tau_seq(c, 1, &[2, 3, 3]).unwrap()
        );
        assert_eq!(
            parse_automorphism("taup(1,2,3,1,0,0,1)", c).unwrap(),
            zoo::tau_p(c, 1, 2, 3, &[1, 0, 0, 1]).unwrap()
        );
        assert_eq!(
            parse_automorphism("bq(1,2,(a3-1)*a4)", c).unwrap(),
            zoo::b_q(c, 1, 2, &parse_scalar_ok("(a3-1)*a4")).unwrap()
        );
        let u = super::super::parse_element("[x1,x2]", c).unwrap();
        assert_eq!(parse_automorphism("inner([x1,x2])", c).unwrap(), zoo::inner(&u));
        assert!(parse_automorphism("id()", c).unwrap().is_identity());
    }

    fn parse_scalar_ok(s: &str) -> LaurentPoly {
        super::super::parse_scalar(s, 4).unwrap()
    }

    #[test]
    fn products_and_powers() {
        let c = ctx(3);
        let f = parse_automorphism("pi(1,2) * sigma(2,3)^-1", c).unwrap();
        let g = zoo::pi(c, 1, 2)
            .unwrap()
            .compose(&zoo::sigma(c, 2, 3).unwrap().inverse().unwrap())
            .unwrap();
        assert_eq!(f, g);
        assert!(parse_automorphism("pi(1,2)^2 * pi(1,2)^-2", c).unwrap().is_identity());
    }

    #[test]
    fn errors() {
        let c = ctx(3);
        assert!(matches!(
            parse_automorphism("rho(1)", c),
            Err(Error::Parse { column: 1, .. })
        ));
        assert!(matches!(parse_automorphism("pi(1)", c), Err(Error::Parse { .. })));
        assert!(matches!(parse_automorphism("pi(1,2", c), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_automorphism("pi(1,2) pi(2,1)", c),
            Err(Error::Parse { column: 9, .. })
        ));
        assert!(matches!(
            parse_automorphism("inner(x1*x9)", c),
            Err(Error::Parse { column: 10, .. })
        ));
        assert!(parse_automorphism("pi(1,1)", c).is_err());
    }
}
