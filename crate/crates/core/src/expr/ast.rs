use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::magnus::{GroupContext, MagnusElement};

/// A group element expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemAst {
    Gen(usize),
    One,
    Product(Vec<ElemAst>),
    Power(Box<ElemAst>, i64),
    ModPow(Box<ElemAst>, ScalarAst),
    /// `[e_1, m_2 e_2, …]`: entry `k` is repeated `m_k` times; the first count is always 1.
    Bracket(Vec<(u32, ElemAst)>),
}

/// A scalar expression over `Z A_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarAst {
    Var(usize),
    Int(BigInt),
    Neg(Box<ScalarAst>),
    Add(Box<ScalarAst>, Box<ScalarAst>),
    Sub(Box<ScalarAst>, Box<ScalarAst>),
    Mul(Box<ScalarAst>, Box<ScalarAst>),
    Pow(Box<ScalarAst>, i64),
}

impl ScalarAst {
    pub fn eval(&self, rank: usize) -> Result<LaurentPoly> {
        Ok(match self {
            ScalarAst::Var(i) => {
                if *i == 0 || *i > rank {
                    return Err(Error::IndexOutOfRange { index: *i, rank });
                }
                LaurentPoly::var(rank, *i)
            }
            ScalarAst::Int(k) => LaurentPoly::constant(rank, k.clone()),
            ScalarAst::Neg(x) => -x.eval(rank)?,
            ScalarAst::Add(x, y) => x.eval(rank)?.try_add(&y.eval(rank)?)?,
            ScalarAst::Sub(x, y) => x.eval(rank)?.try_sub(&y.eval(rank)?)?,
            ScalarAst::Mul(x, y) => x.eval(rank)?.try_mul(&y.eval(rank)?)?,
            ScalarAst::Pow(x, k) => {
                let base = x.eval(rank)?;
                if *k >= 0 {
                    base.pow(u32::try_from(*k).map_err(|_| Error::InvalidParameters("exponent too large".into()))?)
                } else {
                    let (e, c) = base.as_unit_monomial().ok_or_else(|| {
                        Error::InvalidParameters(format!("negative power of a non-unit: ({base})^{k}"))
                    })?;
                    let m = k.unsigned_abs() as i32;
                    let mut f = e.neg();
                    for x in f.as_mut_slice() {
                        *x *= m;
                    }
                    let sign = if c < 0 && m % 2 == 1 { -1 } else { 1 };
                    LaurentPoly::monomial(f, sign)
                }
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            ScalarAst::Add(..) | ScalarAst::Sub(..) => 1,
            ScalarAst::Mul(..) => 2,
            ScalarAst::Neg(_) => 3,
            ScalarAst::Pow(..) => 4,
            ScalarAst::Var(_) | ScalarAst::Int(_) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, need: u8) -> fmt::Result {
        if self.prec() < need {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            ScalarAst::Var(i) => write!(f, "a{i}"),
            ScalarAst::Int(k) => write!(f, "{k}"),
            ScalarAst::Neg(x) => {
                write!(f, "-")?;
                x.fmt_prec(f, 3)
            }
            ScalarAst::Add(x, y) => {
                x.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                y.fmt_prec(f, 2)
            }
            ScalarAst::Sub(x, y) => {
                x.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                y.fmt_prec(f, 2)
            }
            ScalarAst::Mul(x, y) => {
                x.fmt_prec(f, 2)?;
                write!(f, "*")?;
                y.fmt_prec(f, 3)
            }
            ScalarAst::Pow(x, k) => {
                x.fmt_prec(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for ScalarAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl ElemAst {
    pub fn eval(&self, ctx: GroupContext) -> Result<MagnusElement> {
        Ok(match self {
            ElemAst::Gen(i) => ctx.generator(*i)?,
            ElemAst::One => ctx.one(),
            ElemAst::Product(fs) => {
                let mut acc = ctx.one();
                for x in fs {
                    acc = acc.try_mul(&x.eval(ctx)?)?;
                }
                acc
            }
            ElemAst::Power(x, k) => x.eval(ctx)?.pow(*k),
            ElemAst::ModPow(x, s) => x.eval(ctx)?.module_pow(&s.eval(ctx.rank())?)?,
            ElemAst::Bracket(items) => {
                let mut list = Vec::new();
                for (m, x) in items {
                    let v = x.eval(ctx)?;
                    for _ in 0..*m {
                        list.push(v.clone());
                    }
                }
                match list.len() {
                    0 => ctx.one(),
                    1 => list.pop().unwrap(),
                    _ => MagnusElement::left_normed(&list)?,
                }
            }
        })
    }

    fn is_postfix_base(&self) -> bool {
        !matches!(self, ElemAst::Product(_))
    }
}

impl fmt::Display for ElemAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemAst::Gen(i) => write!(f, "x{i}"),
            ElemAst::One => write!(f, "1"),
            ElemAst::Product(fs) => {
                for (k, x) in fs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    if matches!(x, ElemAst::Product(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            ElemAst::Power(x, k) => {
                if x.is_postfix_base() {
                    write!(f, "{x}^{k}")
                } else {
                    write!(f, "({x})^{k}")
                }
            }
            ElemAst::ModPow(x, s) => {
                if x.is_postfix_base() {
                    write!(f, "{x}^({s})")
                } else {
                    write!(f, "({x})^({s})")
                }
            }
            ElemAst::Bracket(items) => {
                write!(f, "[")?;
                for (k, (m, x)) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    if *m != 1 {
                        write!(f, "{m} ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}
