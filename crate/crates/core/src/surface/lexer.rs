use std::fmt;
use std::sync::Arc;

use super::span::SourceSpan;
use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Number(f64),
    Imag(f64),
    Backslash,
    Colon,
    Dot,
    LParen,
    RParen,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Hash,
    Eq,
    LBrace,
    RBrace,
    Bar,
    Arrow,
    Let,
    In,
    Match,
    Inl,
    Inr,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(x) => return write!(f, "identifier `{x}`"),
            Tok::Number(n) => return write!(f, "number `{n}`"),
            Tok::Imag(n) => return write!(f, "imaginary number `{n}i`"),
            Tok::Backslash => "`\\`",
            Tok::Colon => "`:`",
            Tok::Dot => "`.`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Slash => "`/`",
            Tok::Hash => "`#`",
            Tok::Eq => "`=`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Bar => "`|`",
            Tok::Arrow => "`->`",
            Tok::Let => "`let`",
            Tok::In => "`in`",
            Tok::Match => "`match`",
            Tok::Inl => "`inl`",
            Tok::Inr => "`inr`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Length in bytes of the decimal literal at the start of `s`, with an
/// optional fraction and exponent.
pub(crate) fn number_len(s: &str) -> usize {
    let b = s.as_bytes();
    let digits = |mut i: usize| {
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        i
    };
    let mut i = digits(0);
    if i == 0 {
        return 0;
    }
    if i + 1 < b.len() && b[i] == b'.' && b[i + 1].is_ascii_digit() {
        i = digits(i + 1);
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            i = digits(j);
        }
    }
    i
}

pub(crate) fn lex(src: &str, file: Option<&Arc<str>>) -> Result<Vec<Token>, ParseError> {
    let span = |start: usize, end: usize| SourceSpan::new(file, start, end);
    let mut out = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().expect("in bounds");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if rest.starts_with("--") {
            i += rest.find('\n').unwrap_or(rest.len());
            continue;
        }
        let start = i;
        let (tok, len) = if c.is_ascii_digit() {
            let n = number_len(rest);
            let value: f64 = rest[..n].parse().expect("lexed a decimal literal");
            let after = &rest[n..];
            if after.starts_with('i') && !after[1..].starts_with(is_ident_continue) {
                (Tok::Imag(value), n + 1)
            } else {
                (Tok::Number(value), n)
            }
        } else if is_ident_start(c) {
            let n = rest.find(|ch: char| !is_ident_continue(ch)).unwrap_or(rest.len());
            let tok = match &rest[..n] {
                "let" => Tok::Let,
                "in" => Tok::In,
                "match" => Tok::Match,
                "inl" => Tok::Inl,
                "inr" => Tok::Inr,
                word => Tok::Ident(word.to_string()),
            };
            (tok, n)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else {
            let tok = match c {
                '\\' | 'λ' => Tok::Backslash,
                ':' => Tok::Colon,
                '.' => Tok::Dot,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' | '⋆' => Tok::Star,
                '/' => Tok::Slash,
                '#' | '♯' => Tok::Hash,
                '=' => Tok::Eq,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '|' => Tok::Bar,
                _ => {
                    return Err(ParseError::new(
                        span(start, start + c.len_utf8()),
                        format!("unexpected character `{c}`"),
                        Vec::new(),
                    ))
                }
            };
            (tok, c.len_utf8())
        };
        i += len;
        out.push(Token { tok, span: span(start, i) });
    }
    out.push(Token { tok: Tok::Eof, span: span(src.len(), src.len()) });
    Ok(out)
}
