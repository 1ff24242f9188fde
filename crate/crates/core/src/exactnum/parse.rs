//! Tokenizer and recursive-descent expression parser shared by the scalar
//! and element grammars.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] int]
//! atom   := int | 'l' | '(' expr ')' | <ident handled by the caller>
//! ```

use num_bigint::BigInt;

use super::{Field, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

pub struct Tokenizer {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    len: usize,
}

impl Tokenizer {
    pub fn new(input: &str) -> Result<Self> {
        let bytes = input.as_bytes();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            let tok = match c {
                ' ' | '\t' | '\n' | '\r' => {
                    i += 1;
                    continue;
                }
                '(' => Token::LParen,
                ')' => Token::RParen,
                '[' => Token::LBracket,
                ']' => Token::RBracket,
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                '0'..='9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n = input[start..i].parse().expect("ascii digits");
                    tokens.push((start, Token::Int(n)));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    tokens.push((start, Token::Ident(input[start..i].to_string())));
                    continue;
                }
                other => return Err(Error::parse(i, format!("unexpected character {other:?}"))),
            };
            tokens.push((start, tok));
            i += 1;
        }
        Ok(Tokenizer {
            tokens,
            cursor: 0,
            len: input.len(),
        })
    }

    pub fn peek(&self) -> &Token {
        self.tokens.get(self.cursor).map_or(&Token::End, |(_, t)| t)
    }

    pub fn position(&self) -> usize {
        self.tokens.get(self.cursor).map_or(self.len, |(p, _)| *p)
    }

    pub fn next_token(&mut self) -> Token {
        let t = self.peek().clone();
        if self.cursor < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    pub fn expect(&mut self, want: &Token) -> Result<()> {
        let pos = self.position();
        let got = self.next_token();
        if &got == want {
            Ok(())
        } else {
            Err(Error::parse(pos, format!("expected {want:?}, found {got:?}")))
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Token::End => Ok(()),
            t => Err(Error::parse(self.position(), format!("unexpected trailing {t:?}"))),
        }
    }

    /// `['-'] int ['/' int]`, used for bracketed indices.
    pub fn signed_fraction(&mut self) -> Result<Rational> {
        let neg = if *self.peek() == Token::Minus {
            self.next_token();
            true
        } else {
            false
        };
        let num = self.integer()?;
        let den = if *self.peek() == Token::Slash {
            self.next_token();
            self.integer()?
        } else {
            BigInt::from(1)
        };
        let pos = self.position();
        let r = Rational::from_big(if neg { -num } else { num }, den)
            .map_err(|_| Error::parse(pos, "zero denominator"))?;
        Ok(r)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let pos = self.position();
        match self.next_token() {
            Token::Int(n) => Ok(n),
            t => Err(Error::parse(pos, format!("expected integer, found {t:?}"))),
        }
    }
}

/// Values the expression parser can combine.
pub trait ExprValue<F: Field>: Sized {
    fn scalar(c: F) -> Self;
    fn expr_add(self, rhs: Self, pos: usize) -> Result<Self>;
    fn expr_mul(self, rhs: Self, pos: usize) -> Result<Self>;
    fn expr_div(self, rhs: Self, pos: usize) -> Result<Self>;
    fn expr_neg(self) -> Self;
    fn expr_pow(self, exp: i64, pos: usize) -> Result<Self>;
}

impl<F: Field> ExprValue<F> for F {
    fn scalar(c: F) -> Self {
        c
    }
    fn expr_add(self, rhs: Self, _pos: usize) -> Result<Self> {
        Ok(Field::add(&self, &rhs))
    }
    fn expr_mul(self, rhs: Self, _pos: usize) -> Result<Self> {
        Ok(Field::mul(&self, &rhs))
    }
    fn expr_div(self, rhs: Self, pos: usize) -> Result<Self> {
        Field::div(&self, &rhs).map_err(|_| Error::parse(pos, "division by zero"))
    }
    fn expr_neg(self) -> Self {
        Field::neg(&self)
    }
    fn expr_pow(self, exp: i64, pos: usize) -> Result<Self> {
        Field::pow(&self, exp).map_err(|_| Error::parse(pos, "zero to a negative power"))
    }
}

/// Parses an expression; identifiers other than `l` are handed to `atom`.
pub fn parse_expr<F, V, A>(tok: &mut Tokenizer, lambda: &F, atom: &A) -> Result<V>
where
    F: Field,
    V: ExprValue<F>,
    A: Fn(&str, usize, &mut Tokenizer) -> Result<V>,
{
    let mut acc = match tok.peek() {
        Token::Minus => {
            tok.next_token();
            parse_term(tok, lambda, atom)?.expr_neg()
        }
        Token::Plus => {
            tok.next_token();
            parse_term(tok, lambda, atom)?
        }
        _ => parse_term(tok, lambda, atom)?,
    };
    loop {
        let pos = tok.position();
        match tok.peek() {
            Token::Plus => {
                tok.next_token();
                acc = acc.expr_add(parse_term(tok, lambda, atom)?, pos)?;
            }
            Token::Minus => {
                tok.next_token();
                acc = acc.expr_add(parse_term(tok, lambda, atom)?.expr_neg(), pos)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term<F, V, A>(tok: &mut Tokenizer, lambda: &F, atom: &A) -> Result<V>
where
    F: Field,
    V: ExprValue<F>,
    A: Fn(&str, usize, &mut Tokenizer) -> Result<V>,
{
    let mut acc = parse_unary(tok, lambda, atom)?;
    loop {
        let pos = tok.position();
        match tok.peek() {
            Token::Star => {
                tok.next_token();
                acc = acc.expr_mul(parse_unary(tok, lambda, atom)?, pos)?;
            }
            Token::Slash => {
                tok.next_token();
                acc = acc.expr_div(parse_unary(tok, lambda, atom)?, pos)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_unary<F, V, A>(tok: &mut Tokenizer, lambda: &F, atom: &A) -> Result<V>
where
    F: Field,
    V: ExprValue<F>,
    A: Fn(&str, usize, &mut Tokenizer) -> Result<V>,
{
    if *tok.peek() == Token::Minus {
        tok.next_token();
        return Ok(parse_unary(tok, lambda, atom)?.expr_neg());
    }
    let base = parse_atom(tok, lambda, atom)?;
    if *tok.peek() != Token::Caret {
        return Ok(base);
    }
    tok.next_token();
    let pos = tok.position();
    let e = tok.signed_fraction()?;
    let e = e
        .to_i64()
        .ok_or_else(|| Error::parse(pos, "exponent must be a machine-size integer"))?;
    base.expr_pow(e, pos)
}

fn parse_atom<F, V, A>(tok: &mut Tokenizer, lambda: &F, atom: &A) -> Result<V>
where
    F: Field,
    V: ExprValue<F>,
    A: Fn(&str, usize, &mut Tokenizer) -> Result<V>,
{
    let pos = tok.position();
    match tok.next_token() {
        Token::Int(n) => {
            let r = Rational::from_big(n, BigInt::from(1)).expect("unit denominator");
            Ok(V::scalar(F::from_rational(&r)))
        }
        Token::Ident(id) if id == "l" => Ok(V::scalar(lambda.clone())),
        Token::Ident(id) => atom(&id, pos, tok),
        Token::LParen => {
            let v = parse_expr(tok, lambda, atom)?;
            tok.expect(&Token::RParen)?;
            Ok(v)
        }
        t => Err(Error::parse(pos, format!("unexpected {t:?}"))),
    }
}

/// Parses a scalar expression over `F`, substituting `lambda` for `l`.
pub fn parse_scalar<F: Field>(input: &str, lambda: &F) -> Result<F> {
    let mut tok = Tokenizer::new(input)?;
    let v = parse_expr(&mut tok, lambda, &|id: &str, pos, _: &mut Tokenizer| {
        Err(Error::parse(pos, format!("unknown identifier {id:?}")))
    })?;
    tok.expect_end()?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::RatFunc;

    #[test]
    fn scalar_expressions() {
        let l = RatFunc::var();
        let v: RatFunc = parse_scalar("(2*l+1)/(l) - 2", &l).unwrap();
        assert_eq!(v.to_string(), "(1)/(l)");
        let three = Rational::from_int(3);
        let v: Rational = parse_scalar("l^2 - 1/2", &three).unwrap();
        assert_eq!(v.to_string(), "17/2");
    }

    #[test]
    fn errors_carry_positions() {
        let l = RatFunc::var();
        match parse_scalar::<RatFunc>("1 + x", &l) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_scalar::<RatFunc>("1/0", &l).is_err());
        assert!(parse_scalar::<RatFunc>("(1", &l).is_err());
        assert!(parse_scalar::<RatFunc>("1 $", &l).is_err());
    }
}
