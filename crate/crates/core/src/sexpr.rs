//! A small S-expression reader with byte positions, shared by every textual
//! format in the crate.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExp {
    Atom { text: String, pos: usize },
    Str { text: String, pos: usize },
    List { items: Vec<SExp>, pos: usize },
}

impl SExp {
    pub fn pos(&self) -> usize {
        match self {
            SExp::Atom { pos, .. } | SExp::Str { pos, .. } | SExp::List { pos, .. } => *pos,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExp::Atom { text, .. } => Some(text),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExp]> {
        match self {
            SExp::List { items, .. } => Some(items),
            _ => None,
        }
    }

    /// Head atom of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.as_list().and_then(|items| items.first()).and_then(SExp::as_atom)
    }
}

/// Reads every top-level expression in `text`.
pub fn read_all(text: &str) -> Result<Vec<SExp>> {
    let mut reader = Reader { text, bytes: text.as_bytes(), at: 0 };
    let mut out = Vec::new();
    loop {
        reader.skip_ws();
        if reader.at >= reader.bytes.len() {
            return Ok(out);
        }
        out.push(reader.expr()?);
    }
}

/// Reads exactly one expression.
pub fn read_one(text: &str) -> Result<SExp> {
    let mut all = read_all(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(Error::syntax_at(text, text.len(), "expected an expression, found end of input")),
        _ => Err(Error::syntax_at(text, all[1].pos(), "unexpected trailing expression")),
    }
}

struct Reader<'a> {
    text: &'a str,
    bytes: &'a [u8],
    at: usize,
}

impl Reader<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.bytes.len() {
            match self.bytes[self.at] {
                b' ' | b'\t' | b'\n' | b'\r' => self.at += 1,
                b';' => {
                    while self.at < self.bytes.len() && self.bytes[self.at] != b'\n' {
                        self.at += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn expr(&mut self) -> Result<SExp> {
        self.skip_ws();
        let start = self.at;
        match self.bytes.get(self.at) {
            None => Err(Error::syntax_at(self.text, start, "unexpected end of input")),
            Some(b'(') => {
                self.at += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.at) {
                        None => return Err(Error::syntax_at(self.text, start, "unclosed parenthesis")),
                        Some(b')') => {
                            self.at += 1;
                            return Ok(SExp::List { items, pos: start });
                        }
                        Some(_) => items.push(self.expr()?),
                    }
                }
            }
            Some(b')') => Err(Error::syntax_at(self.text, start, "unexpected `)`")),
            Some(b'"') => {
                self.at += 1;
                let mut text = String::new();
                let mut chars = self.text[self.at..].char_indices();
                loop {
                    match chars.next() {
                        None => return Err(Error::syntax_at(self.text, start, "unterminated string")),
                        Some((i, '"')) => {
                            self.at += i + 1;
                            return Ok(SExp::Str { text, pos: start });
                        }
                        Some((_, '\\')) => match chars.next() {
                            Some((_, 'n')) => text.push('\n'),
                            Some((_, c @ ('"' | '\\'))) => text.push(c),
                            _ => return Err(Error::syntax_at(self.text, start, "bad escape in string")),
                        },
                        Some((_, c)) => text.push(c),
                    }
                }
            }
            Some(_) => {
                while self.at < self.bytes.len()
                    && !matches!(self.bytes[self.at], b' ' | b'\t' | b'\n' | b'\r' | b'(' | b')' | b'"' | b';')
                {
                    self.at += 1;
                }
                Ok(SExp::Atom { text: self.text[start..self.at].to_string(), pos: start })
            }
        }
    }
}

/// Quotes a string for the reader above.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists() {
        let e = read_one(" (a (b c) \"d e\") ").unwrap();
        let items = e.as_list().unwrap();
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].as_atom(), Some("a"));
        assert_eq!(items[1].head(), Some("b"));
        assert_eq!(items[2], SExp::Str { text: "d e".into(), pos: 10 });
    }

    #[test]
    fn positions_in_errors() {
        match read_one("(a\n  (b").unwrap_err() {
            Error::Syntax { line, col, .. } => assert_eq!((line, col), (2, 3)),
            e => panic!("{e}"),
        }
        assert!(matches!(read_one(")"), Err(Error::Syntax { line: 1, col: 1, .. })));
        assert!(read_one("a b").is_err());
    }

    #[test]
    fn string_escapes_round_trip() {
        let s = "say \"hi\"\\\n";
        let e = read_one(&quote(s)).unwrap();
        assert_eq!(e, SExp::Str { text: s.into(), pos: 0 });
    }
}
