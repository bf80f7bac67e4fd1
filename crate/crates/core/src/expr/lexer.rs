use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    X(usize),
    A(usize),
    Int(BigInt),
    Star,
    Caret,
    Plus,
    Minus,
    Comma,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn error(self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

pub fn tokenize(text: &str, first_line: usize) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (first_line, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Int(s.parse().unwrap()), pos));
            continue;
        }
        if c == 'x' || c == 'a' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(pos.error(format!("expected an index after '{c}'")));
            }
            let s: String = chars[start..j].iter().collect();
            let idx: usize = s.parse().map_err(|_| pos.error("index too large"))?;
            out.push((if c == 'x' { Tok::X(idx) } else { Tok::A(idx) }, pos));
            col += j - i;
            i = j;
            continue;
        }
        return Err(pos.error(format!("unexpected character '{c}'")));
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = tokenize("x1*[x2, 3 x1]^-2", 1).unwrap();
        assert_eq!(t[0].0, Tok::X(1));
        assert_eq!(t[1].0, Tok::Star);
        assert_eq!(t[5].0, Tok::Int(3.into()));
        assert_eq!(t[5].1, Pos { line: 1, column: 9 });
        assert_eq!(t.last().unwrap().0, Tok::Eof);
    }

    #[test]
    fn bad_character() {
        match tokenize("x1 & x2", 1) {
            Err(Error::Parse { line: 1, column: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(tokenize("x", 1).is_err());
    }
}
