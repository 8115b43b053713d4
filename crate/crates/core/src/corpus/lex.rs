//! Tokens with source positions.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i128),
    Punct(char),
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::Arrow => write!(f, "`->`"),
        }
    }
}

pub struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
    ahead: Option<(Tok, Pos)>,
}

fn err(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

impl<'a> Lexer<'a> {
    pub fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            pos: Pos { line: 1, col: 1 },
            ahead: None,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '#' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn scan(&mut self) -> Result<Option<(Tok, Pos)>> {
        self.skip_blank();
        let start = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = self.chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '.' {
                    s.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            return Ok(Some((Tok::Ident(s), start)));
        }
        if c.is_ascii_digit() || c == '-' {
            self.bump();
            if c == '-' {
                if self.chars.peek() == Some(&'>') {
                    self.bump();
                    return Ok(Some((Tok::Arrow, start)));
                }
                if !self.chars.peek().is_some_and(char::is_ascii_digit) {
                    return Err(err(start, "expected a digit or `>` after `-`"));
                }
            }
            let mut s = String::from(c);
            while let Some(&d) = self.chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    self.bump();
                } else {
                    break;
                }
            }
            let v = s.parse().map_err(|_| err(start, format!("integer `{s}` out of range")))?;
            return Ok(Some((Tok::Int(v), start)));
        }
        if "=;:,()[]{}".contains(c) {
            self.bump();
            return Ok(Some((Tok::Punct(c), start)));
        }
        Err(err(start, format!("unexpected character `{c}`")))
    }

    pub fn peek(&mut self) -> Result<Option<(Tok, Pos)>> {
        if self.ahead.is_none() {
            self.ahead = self.scan()?;
        }
        Ok(self.ahead.clone())
    }

    fn eof(&self) -> Error {
        err(self.pos, "unexpected end of input")
    }

    pub fn next_tok(&mut self) -> Result<(Tok, Pos)> {
        self.peek()?;
        self.ahead.take().ok_or_else(|| self.eof())
    }

    pub fn ident(&mut self) -> Result<(String, Pos)> {
        match self.next_tok()? {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => Err(err(p, format!("expected a name, found {t}"))),
        }
    }

    pub fn keyword(&mut self, kw: &str) -> Result<(String, Pos)> {
        let (s, p) = self.ident()?;
        if s == kw {
            Ok((s, p))
        } else {
            Err(err(p, format!("expected `{kw}`, found `{s}`")))
        }
    }

    pub fn int(&mut self) -> Result<(i128, Pos)> {
        match self.next_tok()? {
            (Tok::Int(v), p) => Ok((v, p)),
            (t, p) => Err(err(p, format!("expected an integer, found {t}"))),
        }
    }

    pub fn punct(&mut self, c: char) -> Result<(char, Pos)> {
        match self.next_tok()? {
            (Tok::Punct(d), p) if d == c => Ok((d, p)),
            (t, p) => Err(err(p, format!("expected `{c}`, found {t}"))),
        }
    }

    pub fn arrow(&mut self) -> Result<Pos> {
        match self.next_tok()? {
            (Tok::Arrow, p) => Ok(p),
            (t, p) => Err(err(p, format!("expected `->`, found {t}"))),
        }
    }

    /// Consumes `c` if it is next.
    pub fn eat(&mut self, c: char) -> Result<bool> {
        if matches!(self.peek()?, Some((Tok::Punct(d), _)) if d == c) {
            self.ahead = None;
            return Ok(true);
        }
        Ok(false)
    }
}
