//! Recursive-descent parser for programs and types.
//!
//! ```text
//! dist    ::= summand (('+' | '-') summand)*
//! summand ::= '-' summand | coeff '*' pure | pure
//! coeff   ::= ['-'] scalar ('/' scalar)*
//! scalar  ::= NUMBER [('+' | '-') IMAG] | IMAG | sqrtN | '(' coeff (('*' | '+' | '-') coeff)* ')'
//! pure    ::= '\' x ':' type '.' dist
//!           | 'let' '(' x ',' y ')' '=' dist 'in' dist
//!           | 'match' dist '{' 'inl' x '->' dist '|' 'inr' y '->' dist '}'
//!           | app [';' dist]
//! app     ::= atom atom*
//! atom    ::= '*' | x | 'inl' atom | 'inr' atom | '(' dist ')' | '(' dist ',' dist ')'
//! type    ::= sum ['->' type]
//! sum     ::= prod ['+' sum]
//! prod    ::= prefix ['*' prod]
//! prefix  ::= '#' prefix | 'U' | 'B' | '(' type ')'
//! ```
//!
//! Constructors applied to distributions expand through the linear notation,
//! so `inl (0.6 * x + 0.8 * y)` parses as `0.6 * inl x + 0.8 * inl y`.

use std::mem::discriminant;
use std::sync::Arc;

use super::lexer::{lex, Tok, Token};
use super::span::{SourceSpan, SpanIndex};
use super::ParseError;
use crate::scalar::{real, Scalar};
use crate::syntax::{mk_app_dist, mk_inl, mk_inr, mk_let, mk_match, mk_pair, mk_seq, Dist, DistError, Name, Term};
use crate::types::Type;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    expected: Vec<String>,
    index: SpanIndex,
}

type PResult<T> = Result<T, ParseError>;

fn sqrt_literal(name: &str) -> Option<f64> {
    let digits = name.strip_prefix("sqrt")?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<f64>().ok().map(f64::sqrt)
}

fn describe(kind: &Tok) -> String {
    match kind {
        Tok::Ident(_) => "identifier".to_string(),
        Tok::Number(_) => "number".to_string(),
        Tok::Imag(_) => "imaginary number".to_string(),
        other => other.to_string(),
    }
}

impl Parser {
    fn new(toks: Vec<Token>) -> Parser {
        Parser { toks, pos: 0, expected: Vec::new(), index: SpanIndex::default() }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span.clone()
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn advance(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
            self.expected.clear();
        }
        tok
    }

    /// Is the next token of the same kind as `kind`? Records `kind` as
    /// expected when it is not.
    fn at(&mut self, kind: &Tok) -> bool {
        let hit = discriminant(self.peek()) == discriminant(kind);
        if !hit {
            let d = describe(kind);
            if !self.expected.contains(&d) {
                self.expected.push(d);
            }
        }
        hit
    }

    fn eat(&mut self, kind: &Tok) -> bool {
        let hit = self.at(kind);
        if hit {
            self.advance();
        }
        hit
    }

    fn fail<T>(&mut self) -> PResult<T> {
        let found = self.peek().to_string();
        let expected = std::mem::take(&mut self.expected);
        let message = match expected.as_slice() {
            [] => format!("unexpected {found}"),
            [one] => format!("expected {one}, found {found}"),
            many => format!("expected one of {}, found {found}", many.join(", ")),
        };
        Err(ParseError::new(self.span(), message, expected))
    }

    fn expect(&mut self, kind: &Tok) -> PResult<()> {
        if self.eat(kind) {
            Ok(())
        } else {
            self.fail()
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        if self.at(&Tok::Ident(String::new())) {
            match self.advance() {
                Tok::Ident(x) => Ok(x),
                _ => unreachable!(),
            }
        } else {
            self.fail()
        }
    }

    fn span_from(&self, start: usize) -> SourceSpan {
        let file = self.toks[0].span.file.as_ref();
        SourceSpan::new(file, start, self.prev_end().max(start))
    }

    fn notation_error(&self, start: usize, err: DistError) -> ParseError {
        ParseError::new(self.span_from(start), err.to_string(), Vec::new())
    }

    fn record(&mut self, d: &Dist, start: usize) {
        if let Some(t) = d.as_pure() {
            let span = self.span_from(start);
            self.index.record(t, span);
        }
    }

    fn program(&mut self) -> PResult<Dist> {
        let d = self.dist()?;
        self.expect(&Tok::Eof)?;
        Ok(d)
    }

    fn dist(&mut self) -> PResult<Dist> {
        let mut d = self.summand()?;
        loop {
            if self.eat(&Tok::Plus) {
                d = d.plus(&self.summand()?);
            } else if self.eat(&Tok::Minus) {
                d = d.plus(&self.summand()?.scale(real(-1.0)));
            } else {
                return Ok(d);
            }
        }
    }

    fn summand(&mut self) -> PResult<Dist> {
        let is_scalar = |t: &Tok| match t {
            Tok::Number(_) | Tok::Imag(_) => true,
            Tok::Ident(x) => sqrt_literal(x).is_some(),
            _ => false,
        };
        // `-a+bi * t` is the literal `(-a)+bi`, as inside parentheses
        let signed_literal = matches!(self.peek(), Tok::Minus) && matches!(self.peek_at(1), Tok::Number(_));
        if !signed_literal && self.eat(&Tok::Minus) {
            return Ok(self.summand()?.scale(real(-1.0)));
        }
        let scalar_start = signed_literal || is_scalar(self.peek());
        if scalar_start {
            let c = self.coeff()?;
            self.expect(&Tok::Star)?;
            return Ok(self.pure()?.scale(c));
        }
        if matches!(self.peek(), Tok::LParen) {
            let (saved, expected) = (self.pos, self.expected.clone());
            if let Ok(c) = self.coeff() {
                if self.eat(&Tok::Star) {
                    return Ok(self.pure()?.scale(c));
                }
            }
            self.pos = saved;
            self.expected = expected;
        }
        self.pure()
    }

    fn coeff(&mut self) -> PResult<Scalar> {
        let negate = self.eat(&Tok::Minus);
        let mut c = self.scalar(true, negate)?;
        while self.eat(&Tok::Slash) {
            c /= self.scalar(false, false)?;
        }
        Ok(c)
    }

    /// A leading minus on `a+bi` negates `a` only.
    fn scalar(&mut self, complex_literal: bool, negate: bool) -> PResult<Scalar> {
        let sign = if negate { -1.0 } else { 1.0 };
        match self.peek().clone() {
            Tok::Number(re) => {
                let re = sign * re;
                self.advance();
                if complex_literal {
                    if let (Tok::Plus | Tok::Minus, Tok::Imag(im)) = (self.peek().clone(), self.peek_at(1).clone()) {
                        let sign = if matches!(self.peek(), Tok::Minus) { -1.0 } else { 1.0 };
                        self.advance();
                        self.advance();
                        return Ok(Scalar::new(re, sign * im));
                    }
                }
                Ok(real(re))
            }
            Tok::Imag(im) => {
                self.advance();
                Ok(Scalar::new(0.0, sign * im))
            }
            Tok::Ident(x) if sqrt_literal(&x).is_some() => {
                self.advance();
                Ok(real(sign * sqrt_literal(&x).expect("checked")))
            }
            Tok::LParen => {
                self.advance();
                let mut c = self.scalar_product()?;
                loop {
                    if self.eat(&Tok::Plus) {
                        c += self.scalar_product()?;
                    } else if self.eat(&Tok::Minus) {
                        c -= self.scalar_product()?;
                    } else {
                        break;
                    }
                }
                self.expect(&Tok::RParen)?;
                Ok(sign * c)
            }
            _ => {
                self.at(&Tok::Number(0.0));
                self.fail()
            }
        }
    }

    fn scalar_product(&mut self) -> PResult<Scalar> {
        let mut c = self.coeff()?;
        while self.eat(&Tok::Star) {
            c *= self.coeff()?;
        }
        Ok(c)
    }

    fn pure(&mut self) -> PResult<Dist> {
        let start = self.span().start;
        let d = if self.eat(&Tok::Backslash) {
            let x = self.ident()?;
            self.expect(&Tok::Colon)?;
            let ty = self.ty()?;
            self.expect(&Tok::Dot)?;
            let body = self.dist()?;
            Dist::pure(Term::Lam(x, ty, body))
        } else if self.eat(&Tok::Let) {
            self.expect(&Tok::LParen)?;
            let x = self.ident()?;
            self.expect(&Tok::Comma)?;
            let y = self.ident()?;
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::Eq)?;
            let head = self.dist()?;
            self.expect(&Tok::In)?;
            let body = self.dist()?;
            mk_let(&x, &y, &head, &body)
        } else if self.eat(&Tok::Match) {
            let head = self.dist()?;
            self.expect(&Tok::LBrace)?;
            self.expect(&Tok::Inl)?;
            let x1 = self.ident()?;
            self.expect(&Tok::Arrow)?;
            let s1 = self.dist()?;
            self.expect(&Tok::Bar)?;
            self.expect(&Tok::Inr)?;
            let x2 = self.ident()?;
            self.expect(&Tok::Arrow)?;
            let s2 = self.dist()?;
            self.expect(&Tok::RBrace)?;
            mk_match(&head, &x1, &s1, &x2, &s2)
        } else {
            let head = self.app()?;
            if self.eat(&Tok::Semi) {
                let tail = self.dist()?;
                mk_seq(&head, &tail)
            } else {
                return Ok(head);
            }
        };
        self.record(&d, start);
        Ok(d)
    }

    fn starts_atom(&mut self) -> bool {
        // every probe runs, so each one lands in the "expected" list
        let mut hit = false;
        for kind in [Tok::Star, Tok::Ident(String::new()), Tok::Inl, Tok::Inr, Tok::LParen] {
            hit |= self.at(&kind);
        }
        hit
    }

    fn app(&mut self) -> PResult<Dist> {
        let start = self.span().start;
        let mut f = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            f = mk_app_dist(&f, &arg).map_err(|e| self.notation_error(start, e))?;
            self.record(&f, start);
        }
        Ok(f)
    }

    fn atom(&mut self) -> PResult<Dist> {
        let start = self.span().start;
        let d = match self.peek().clone() {
            Tok::Star => {
                self.advance();
                Dist::pure(Term::Void)
            }
            Tok::Ident(x) => {
                self.advance();
                Dist::pure(Term::Var(x))
            }
            Tok::Inl | Tok::Inr => {
                let left = matches!(self.advance(), Tok::Inl);
                let v = self.atom()?;
                let d = if left { mk_inl(&v) } else { mk_inr(&v) };
                d.map_err(|e| self.notation_error(start, e))?
            }
            Tok::LParen => {
                self.advance();
                let d = self.dist()?;
                if self.eat(&Tok::Comma) {
                    let e = self.dist()?;
                    self.expect(&Tok::RParen)?;
                    mk_pair(&d, &e).map_err(|err| self.notation_error(start, err))?
                } else {
                    self.expect(&Tok::RParen)?;
                    d
                }
            }
            _ => {
                self.starts_atom();
                return self.fail();
            }
        };
        self.record(&d, start);
        Ok(d)
    }

    fn ty(&mut self) -> PResult<Type> {
        let a = self.sum_ty()?;
        if self.eat(&Tok::Arrow) {
            Ok(Type::arrow(a, self.ty()?))
        } else {
            Ok(a)
        }
    }

    fn sum_ty(&mut self) -> PResult<Type> {
        let a = self.prod_ty()?;
        if self.eat(&Tok::Plus) {
            Ok(Type::sum(a, self.sum_ty()?))
        } else {
            Ok(a)
        }
    }

    fn prod_ty(&mut self) -> PResult<Type> {
        let a = self.prefix_ty()?;
        if self.eat(&Tok::Star) {
            Ok(Type::prod(a, self.prod_ty()?))
        } else {
            Ok(a)
        }
    }

    fn prefix_ty(&mut self) -> PResult<Type> {
        if self.eat(&Tok::Hash) {
            return Ok(Type::sharp(self.prefix_ty()?));
        }
        if self.eat(&Tok::LParen) {
            let t = self.ty()?;
            self.expect(&Tok::RParen)?;
            return Ok(t);
        }
        if let Tok::Ident(x) = self.peek() {
            let t = match x.as_str() {
                "U" => Some(Type::Unit),
                "B" => Some(Type::bit()),
                _ => None,
            };
            if let Some(t) = t {
                self.advance();
                return Ok(t);
            }
        }
        self.expected.extend(["`U`", "`B`", "`#`", "`(`"].map(String::from));
        self.fail()
    }
}

/// Parses a whole program, recording where each pure subterm came from.
pub fn parse_program_with_spans(text: &str, file: Option<&str>) -> Result<(Dist, SpanIndex), ParseError> {
    let file: Option<Arc<str>> = file.map(Arc::from);
    let mut p = Parser::new(lex(text, file.as_ref())?);
    let d = p.program()?;
    Ok((d, p.index))
}

pub fn parse_program(text: &str) -> Result<Dist, ParseError> {
    parse_program_with_spans(text, None).map(|(d, _)| d)
}

pub fn parse_type(text: &str) -> Result<Type, ParseError> {
    let mut p = Parser::new(lex(text, None)?);
    let t = p.ty()?;
    p.expect(&Tok::Eof)?;
    Ok(t)
}
