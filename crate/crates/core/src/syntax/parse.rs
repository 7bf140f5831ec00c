use thiserror::Error;

use super::term::Term;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable '{name}' at {pos}")]
    Unbound { pos: usize, name: String },
}

/// Parse a term; free variables are allowed.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    Parser::new(text, false).run()
}

/// Parse a term that must be closed.
pub fn parse_closed(text: &str) -> Result<Term, ParseError> {
    Parser::new(text, true).run()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    closed: bool,
    scope: Vec<String>,
}

impl Parser {
    fn new(text: &str, closed: bool) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, closed, scope: Vec::new() }
    }

    fn run(mut self) -> Result<Term, ParseError> {
        let t = self.term()?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.error(format!("unexpected '{}'", self.chars[self.pos])));
        }
        Ok(t)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected '{c}', found '{d}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {}
            Some(c) => return Err(self.error(format!("expected a variable, found '{c}'"))),
            None => return Err(self.error("expected a variable, found end of input")),
        }
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn starts_atom(c: char) -> bool {
        c == '(' || c.is_ascii_lowercase()
    }

    fn starts_lambda(c: char) -> bool {
        c == '\\' || c == 'λ'
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc: Option<Term> = None;
        loop {
            match self.peek() {
                Some(c) if Self::starts_lambda(c) => {
                    let lam = self.lambda()?;
                    return Ok(match acc {
                        Some(f) => Term::app(f, lam),
                        None => lam,
                    });
                }
                Some(c) if Self::starts_atom(c) => {
                    let a = self.atom()?;
                    acc = Some(match acc {
                        Some(f) => Term::app(f, a),
                        None => a,
                    });
                }
                _ => break,
            }
        }
        acc.ok_or_else(|| match self.peek() {
            Some(c) => self.error(format!("expected a term, found '{c}'")),
            None => self.error("expected a term, found end of input"),
        })
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        self.pos += 1;
        let name = self.ident()?;
        self.expect('.')?;
        self.scope.push(name.clone());
        let body = self.term();
        self.scope.pop();
        Ok(Term::lam(&name, body?))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let t = self.term()?;
            self.expect(')')?;
            return Ok(t);
        }
        let start = self.pos;
        let name = self.ident()?;
        if self.closed && !self.scope.contains(&name) {
            return Err(ParseError::Unbound { pos: start, name });
        }
        Ok(Term::var(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn application_is_left_associative() {
        assert_eq!(
            parse("x y z").unwrap(),
            Term::app(Term::app(Term::var("x"), Term::var("y")), Term::var("z"))
        );
    }

    #[test]
    fn lambda_extends_right() {
        assert_eq!(
            parse("x \\y. y z").unwrap(),
            Term::app(Term::var("x"), Term::lam("y", Term::app(Term::var("y"), Term::var("z"))))
        );
        assert_eq!(parse("λx.x").unwrap(), parse("\\x. x").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("(x").unwrap_err(),
            ParseError::Syntax { pos: 2, msg: "expected ')', found end of input".into() }
        );
        assert!(matches!(parse("x )"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("\\X. x"), Err(ParseError::Syntax { pos: 1, .. })));
    }

    #[test]
    fn closed_mode_rejects_free_variables() {
        assert_eq!(
            parse_closed("\\x. y").unwrap_err(),
            ParseError::Unbound { pos: 4, name: "y".into() }
        );
        assert!(parse_closed("\\x. \\y. x y").is_ok());
        assert!(parse("\\x. y").is_ok());
    }

    #[test]
    fn identifiers_allow_primes_and_digits() {
        let t = parse("\\x'. x' y_2").unwrap();
        assert_eq!(t.free_vars().into_iter().collect::<Vec<_>>(), vec!["y_2".to_string()]);
    }
}
