//! Surface syntax: `X0`, `[L, …]` or `0`, `M -o L` (or `M ⊸ L`).

use thiserror::Error;

use super::{LinearType, MultiType, TyVar, Type};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("type syntax error at {pos}: {msg}")]
pub struct TypeParseError {
    pub pos: usize,
    pub msg: String,
}

pub fn parse_type(s: &str) -> Result<Type, TypeParseError> {
    let mut p = P { c: s.chars().collect(), i: 0 };
    let t = p.ty()?;
    p.end()?;
    Ok(t)
}

pub fn parse_linear(s: &str) -> Result<LinearType, TypeParseError> {
    let mut p = P { c: s.chars().collect(), i: 0 };
    let t = p.linear()?;
    p.end()?;
    Ok(t)
}

pub fn parse_multi(s: &str) -> Result<MultiType, TypeParseError> {
    let mut p = P { c: s.chars().collect(), i: 0 };
    let t = p.multi()?;
    p.end()?;
    Ok(t)
}

struct P {
    c: Vec<char>,
    i: usize,
}

impl P {
    fn err(&self, msg: impl Into<String>) -> TypeParseError {
        TypeParseError { pos: self.i, msg: msg.into() }
    }

    fn peek(&mut self) -> Option<char> {
        while self.i < self.c.len() && self.c[self.i].is_whitespace() {
            self.i += 1;
        }
        self.c.get(self.i).copied()
    }

    fn end(&mut self) -> Result<(), TypeParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }

    fn eat(&mut self, c: char) -> Result<(), TypeParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.i += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected '{c}'"))),
        }
    }

    fn arrow(&mut self) -> bool {
        match self.peek() {
            Some('⊸') => {
                self.i += 1;
                true
            }
            Some('-') if self.c.get(self.i + 1) == Some(&'o') => {
                self.i += 2;
                true
            }
            _ => false,
        }
    }

    fn ty(&mut self) -> Result<Type, TypeParseError> {
        match self.peek() {
            Some('[') | Some('0') => {
                let m = self.multi()?;
                if self.arrow() {
                    Ok(Type::Linear(LinearType::arrow(m, self.linear()?)))
                } else {
                    Ok(Type::Multi(m))
                }
            }
            _ => Ok(Type::Linear(self.linear()?)),
        }
    }

    fn linear(&mut self) -> Result<LinearType, TypeParseError> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let l = self.linear()?;
                self.eat(')')?;
                Ok(l)
            }
            Some('[') | Some('0') => {
                let m = self.multi()?;
                if !self.arrow() {
                    return Err(self.err("expected '-o' after a multi type"));
                }
                Ok(LinearType::arrow(m, self.linear()?))
            }
            Some(c) if c.is_ascii_uppercase() => {
                let start = self.i;
                self.i += 1;
                while self.i < self.c.len() && self.c[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let s: String = self.c[start..self.i].iter().collect();
                let v: TyVar = s.parse().map_err(|m: String| TypeParseError { pos: start, msg: m })?;
                Ok(LinearType::Var(v))
            }
            Some(c) => Err(self.err(format!("expected a linear type, found '{c}'"))),
            None => Err(self.err("expected a linear type, found end of input")),
        }
    }

    fn multi(&mut self) -> Result<MultiType, TypeParseError> {
        if self.peek() == Some('0') {
            self.i += 1;
            return Ok(MultiType::empty());
        }
        self.eat('[')?;
        let mut items = Vec::new();
        if self.peek() == Some(']') {
            self.i += 1;
            return Ok(MultiType::empty());
        }
        loop {
            items.push(self.linear()?);
            match self.peek() {
                Some(',') => self.i += 1,
                Some(']') => {
                    self.i += 1;
                    return Ok(MultiType::new(items));
                }
                _ => return Err(self.err("expected ',' or ']'")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        for s in ["X0", "[X0] -o X0", "[X0, [X0] -o X1] -o X1", "0 -o [X2] -o X2", "[X0, X0]", "0"] {
            let t = parse_type(s).unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert_eq!(parse_linear("[X0] ⊸ X0").unwrap().to_string(), "[X0] -o X0");
        assert_eq!(parse_linear("([X0] -o X0)").unwrap().to_string(), "[X0] -o X0");
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_linear("[X0]").is_err());
        assert!(parse_type("X").is_err());
        assert!(parse_type("[X0").is_err());
        assert!(parse_multi("X0").is_err());
    }
}
