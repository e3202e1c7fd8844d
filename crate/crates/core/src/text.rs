//! Tokenizer and recursive-descent parser for polynomial and Hecke element text.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{PolyScalar, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    P,
    Caret,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Bracket(String),
}

pub(crate) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            'p' => {
                out.push(Token::P);
                i += 1;
            }
            '[' => {
                let end = chars[i..].iter().position(|&c| c == ']').ok_or_else(|| err("unterminated `[`"))?;
                out.push(Token::Bracket(chars[i + 1..i + end].iter().collect()));
                i += end + 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(text.parse()?));
            }
            c => return Err(err(alloc::format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

impl Parser {
    pub(crate) fn new(s: &str) -> Result<Self> {
        Ok(Parser { tokens: tokenize(s)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(err(alloc::format!("trailing token {t:?}"))),
        }
    }

    fn at_monomial(&self) -> bool {
        matches!(self.peek(), Some(Token::Num(_)) | Some(Token::P))
    }

    /// `number`, `p`, `p^k`, `number p^k`, optionally with `*` before `p`.
    fn monomial(&mut self) -> Result<(u32, Rational)> {
        let mut c = Rational::ONE;
        let mut seen = false;
        if let Some(Token::Num(n)) = self.peek().cloned() {
            self.pos += 1;
            c = n;
            seen = true;
            if matches!(self.tokens.get(self.pos..self.pos + 2), Some([Token::Star, Token::P])) {
                self.pos += 1;
            }
        }
        let mut degree = 0;
        if self.eat(&Token::P) {
            seen = true;
            degree = 1;
            if self.eat(&Token::Caret) {
                match self.peek().cloned() {
                    Some(Token::Num(n)) if n.denom() == 1 && n.numer() >= 0 => {
                        self.pos += 1;
                        degree = u32::try_from(n.numer()).map_err(|_| err("exponent too large"))?;
                    }
                    _ => return Err(err("expected exponent after `^`")),
                }
            }
        }
        if !seen {
            return Err(err("expected a coefficient"));
        }
        Ok((degree, c))
    }

    fn sign(&mut self) -> Option<Rational> {
        if self.eat(&Token::Plus) {
            Some(Rational::ONE)
        } else if self.eat(&Token::Minus) {
            Some(-Rational::ONE)
        } else {
            None
        }
    }

    pub(crate) fn polynomial(&mut self) -> Result<PolyScalar> {
        let mut acc = PolyScalar::zero();
        let mut sign = if self.eat(&Token::Minus) { -Rational::ONE } else { Rational::ONE };
        loop {
            let (d, c) = self.monomial()?;
            acc += &PolyScalar::monomial(d, c * sign);
            match self.sign() {
                Some(s) => sign = s,
                None => return Ok(acc),
            }
        }
    }

    /// Signed sum of `coefficient [word]` terms; a bare coefficient multiplies `[e]`.
    pub(crate) fn linear_combination(&mut self) -> Result<Vec<(PolyScalar, Option<String>)>> {
        let mut out = Vec::new();
        if self.peek().is_none() {
            return Err(err("empty expression"));
        }
        let mut sign = if self.eat(&Token::Minus) { -Rational::ONE } else { Rational::ONE };
        loop {
            let coeff = if self.eat(&Token::LParen) {
                let poly = self.polynomial()?;
                if !self.eat(&Token::RParen) {
                    return Err(err("expected `)`"));
                }
                Some(poly)
            } else if self.at_monomial() {
                let (d, c) = self.monomial()?;
                Some(PolyScalar::monomial(d, c))
            } else {
                None
            };
            if coeff.is_some() {
                self.eat(&Token::Star);
            }
            let word = match self.peek().cloned() {
                Some(Token::Bracket(w)) => {
                    self.pos += 1;
                    Some(w.trim().to_string())
                }
                _ => None,
            };
            if coeff.is_none() && word.is_none() {
                return Err(err("expected a term"));
            }
            let coeff = coeff.unwrap_or_else(PolyScalar::one).scale(sign);
            out.push((coeff, word));
            match self.sign() {
                Some(s) => sign = s,
                None => break,
            }
        }
        self.expect_end()?;
        Ok(out)
    }
}
