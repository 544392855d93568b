//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := nat | ident | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant; juxtaposition is not multiplication.

use num_bigint::BigInt;

use super::{Coeff, PolyError, Polynomial, VariableSet};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Nat(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

/// Tokens paired with their 1-based column.
fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push((Token::Nat(n), column));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Token::Ident(text[start..i].to_string()), column));
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap_or(c);
                return Err(PolyError::Syntax {
                    column,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, column));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_column: usize,
    vars: &'a VariableSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |(_, c)| *c)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.base()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let column = self.column();
        match self.peek() {
            Some(Token::Nat(n)) => {
                let e = u32::try_from(n).map_err(|_| PolyError::BadExponent { column })?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(PolyError::BadExponent { column }),
        }
    }

    fn base(&mut self) -> Result<Polynomial, PolyError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Token::Nat(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.vars, Coeff::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Polynomial::variable(self.vars, &name)
                    .map_err(|_| PolyError::UnknownVariableAt { name, column })
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.syntax("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.syntax(format!("unexpected {}", describe(&t))),
            None => self.syntax("unexpected end of input"),
        }
    }
}

fn describe(t: &Token) -> &'static str {
    match t {
        Token::Nat(_) => "number",
        Token::Ident(_) => "identifier",
        Token::Plus => "`+`",
        Token::Minus => "`-`",
        Token::Star => "`*`",
        Token::Caret => "`^`",
        Token::LParen => "`(`",
        Token::RParen => "`)`",
    }
}

/// Parses `text` into a canonical polynomial over `vars`.
pub fn parse_polynomial(text: &str, vars: &VariableSet) -> Result<Polynomial, PolyError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end_column: text.len() + 1,
        vars,
    };
    let out = p.expr()?;
    if p.pos < p.tokens.len() {
        let t = p.tokens[p.pos].0.clone();
        return p.syntax(format!("unexpected {} after expression", describe(&t)));
    }
    Ok(out)
}
