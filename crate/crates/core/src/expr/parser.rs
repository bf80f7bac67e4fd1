use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::{ElemAst, ScalarAst};
use super::lexer::{tokenize, Pos, Tok};
use crate::error::Result;

pub struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    rank: usize,
}

impl Parser {
    pub fn new(text: &str, rank: usize, first_line: usize) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text, first_line)?,
            at: 0,
            rank,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self
                .pos()
                .error(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.pos().error(format!("unexpected {}", describe(self.peek()))))
        }
    }

    fn check_index(&self, i: usize, pos: Pos) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(pos.error(format!("index {i} outside 1..={}", self.rank)));
        }
        Ok(())
    }

    fn small_int(&self, k: &BigInt, pos: Pos) -> Result<i64> {
        k.to_i64().ok_or_else(|| pos.error("integer too large"))
    }

    pub fn element(&mut self) -> Result<ElemAst> {
        let mut fs = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 {
            fs.pop().unwrap()
        } else {
            ElemAst::Product(fs)
        })
    }

    fn factor(&mut self) -> Result<ElemAst> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            base = match self.bump() {
                Tok::Int(k) => ElemAst::Power(Box::new(base), self.small_int(&k, pos)?),
                Tok::Minus => {
                    let pos = self.pos();
                    match self.bump() {
                        Tok::Int(k) => ElemAst::Power(Box::new(base), -self.small_int(&k, pos)?),
                        t => return Err(pos.error(format!("expected an integer exponent, found {}", describe(&t)))),
                    }
                }
                Tok::LParen => {
                    let s = self.scalar()?;
                    self.expect(Tok::RParen, "')'")?;
                    ElemAst::ModPow(Box::new(base), s)
                }
                t => {
                    return Err(pos.error(format!(
                        "expected an integer or a parenthesized scalar after '^', found {}",
                        describe(&t)
                    )))
                }
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ElemAst> {
        let pos = self.pos();
        match self.bump() {
            Tok::X(i) => {
                self.check_index(i, pos)?;
                Ok(ElemAst::Gen(i))
            }
            Tok::Int(k) if k == BigInt::from(1) => Ok(ElemAst::One),
            Tok::LParen => {
                let e = self.element()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBrack => {
                let mut items = vec![(1u32, self.element()?)];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    let mut count = 1u32;
                    if let Tok::Int(k) = self.peek().clone() {
                        if matches!(self.peek2(), Tok::X(_) | Tok::LParen | Tok::LBrack | Tok::Int(_)) {
                            let p = self.pos();
                            self.bump();
                            count = k.to_u32().ok_or_else(|| p.error("repetition count too large"))?;
                        }
                    }
                    items.push((count, self.element()?));
                }
                self.expect(Tok::RBrack, "',' or ']'")?;
                Ok(ElemAst::Bracket(items))
            }
            t => Err(pos.error(format!("expected a group element, found {}", describe(&t)))),
        }
    }

    pub fn scalar(&mut self) -> Result<ScalarAst> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = ScalarAst::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = ScalarAst::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarAst> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = ScalarAst::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ScalarAst> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(ScalarAst::Neg(Box::new(self.unary()?)));
        }
        let base = self.scalar_atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let neg = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let pos = self.pos();
            let k = match self.bump() {
                Tok::Int(k) => self.small_int(&k, pos)?,
                t => return Err(pos.error(format!("expected an integer exponent, found {}", describe(&t)))),
            };
            return Ok(ScalarAst::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn scalar_atom(&mut self) -> Result<ScalarAst> {
        let pos = self.pos();
        match self.bump() {
            Tok::A(i) => {
                self.check_index(i, pos)?;
                Ok(ScalarAst::Var(i))
            }
            Tok::Int(k) => Ok(ScalarAst::Int(k)),
            Tok::LParen => {
                let s = self.scalar()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(s)
            }
            t => Err(pos.error(format!("expected a scalar, found {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::X(i) => format!("'x{i}'"),
        Tok::A(i) => format!("'a{i}'"),
        Tok::Int(k) => format!("'{k}'"),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Comma => "','".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBrack => "'['".into(),
        Tok::RBrack => "']'".into(),
        Tok::Eof => "end of input".into(),
    }
}
