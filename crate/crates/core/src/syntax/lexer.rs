//! Tokenizer for programs and weighting expressions.

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Digits with an optional fractional part, kept verbatim.
    Number(String),
    Assign,
    Semi,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    /// `(+)` or `⊕`
    Oplus,
    /// `(*)` or `⊗`
    Otimes,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    AndAnd,
    OrOr,
    Bang,
    At,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    /// Byte offsets into the source.
    pub start: usize,
    pub end: usize,
}

pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

pub fn error_at(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, col) = line_col(src, offset);
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let offset = |i: usize| chars.get(i).map_or(src.len(), |&(o, _)| o);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        let start = offset(i);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '/' && at(i + 1) == Some('/') {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while at(j).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                j += 1;
            }
            // `l[i]` and `l[0]` are single identifiers; arrays are not modelled.
            if at(j) == Some('[') {
                let mut k = j + 1;
                while at(k).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    k += 1;
                }
                if k > j + 1 && at(k) == Some(']') {
                    j = k + 1;
                }
            }
            (Tok::Ident(src[start..offset(j)].to_string()), j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while at(j).is_some_and(|c| c.is_ascii_digit()) {
                j += 1;
            }
            if at(j) == Some('.') && at(j + 1).is_some_and(|c| c.is_ascii_digit()) {
                j += 1;
                while at(j).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                }
            }
            (Tok::Number(src[start..offset(j)].to_string()), j - i)
        } else {
            let next = at(i + 1);
            match (c, next, at(i + 2)) {
                ('(', Some('+'), Some(')')) => (Tok::Oplus, 3),
                ('(', Some('*'), Some(')')) => (Tok::Otimes, 3),
                (':', Some('='), _) => (Tok::Assign, 2),
                ('=', Some('='), _) => (Tok::Eq, 2),
                ('!', Some('='), _) => (Tok::Ne, 2),
                ('<', Some('='), _) => (Tok::Le, 2),
                ('>', Some('='), _) => (Tok::Ge, 2),
                ('&', Some('&'), _) => (Tok::AndAnd, 2),
                ('|', Some('|'), _) => (Tok::OrOr, 2),
                ('ω' | 'ε' | 'Σ' | '∞', ..) => (Tok::Ident(c.to_string()), 1),
                ('⊕', ..) => (Tok::Oplus, 1),
                ('⊗', ..) => (Tok::Otimes, 1),
                ('≤', ..) => (Tok::Le, 1),
                ('≥', ..) => (Tok::Ge, 1),
                ('≠', ..) => (Tok::Ne, 1),
                ('∧', ..) => (Tok::AndAnd, 1),
                ('∨', ..) => (Tok::OrOr, 1),
                ('¬', ..) => (Tok::Bang, 1),
                ('=', ..) => (Tok::Eq, 1),
                ('<', ..) => (Tok::Lt, 1),
                ('>', ..) => (Tok::Gt, 1),
                ('!', ..) => (Tok::Bang, 1),
                (';', ..) => (Tok::Semi, 1),
                (',', ..) => (Tok::Comma, 1),
                ('(', ..) => (Tok::LParen, 1),
                (')', ..) => (Tok::RParen, 1),
                ('{', ..) => (Tok::LBrace, 1),
                ('}', ..) => (Tok::RBrace, 1),
                ('[', ..) => (Tok::LBrack, 1),
                (']', ..) => (Tok::RBrack, 1),
                ('+', ..) => (Tok::Plus, 1),
                ('-', ..) | ('−', ..) => (Tok::Minus, 1),
                ('*', ..) | ('·', ..) => (Tok::Star, 1),
                ('/', ..) => (Tok::Slash, 1),
                ('^', ..) => (Tok::Caret, 1),
                ('@', ..) => (Tok::At, 1),
                _ => return Err(error_at(src, start, format!("unexpected character `{c}`"))),
            }
        };
        i += len;
        out.push(Token {
            tok,
            start,
            end: offset(i),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}
