//! Line scanner shared by the text formats.

use crate::error::Error;

/// Strips a trailing `#` comment.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

pub(crate) struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str, line: usize) -> Self {
        Cursor {
            chars: src.char_indices().collect(),
            src,
            pos: 0,
            line,
        }
    }

    /// 1-based column of the current position.
    pub(crate) fn column(&self) -> usize {
        self.pos + 1
    }

    pub(crate) fn error_at(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.column(), message)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let rest = self.rest_raw();
        if rest.starts_with(s) {
            self.pos += s.chars().count();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => Err(self.error(format!("expected '{c}', found '{found}'"))),
                None => Err(self.error(format!("expected '{c}', found end of line"))),
            }
        }
    }

    fn rest_raw(&self) -> &'a str {
        match self.chars.get(self.pos) {
            Some(&(byte, _)) => &self.src[byte..],
            None => "",
        }
    }

    /// Remaining text, trimmed; consumes it.
    pub(crate) fn take_rest(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest_raw();
        self.pos = self.chars.len();
        rest.trim()
    }

    /// `[A-Za-z][A-Za-z0-9_]*`, with its starting column.
    pub(crate) fn ident(&mut self) -> Result<(String, usize), Error> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(&(_, c)) if c.is_ascii_alphabetic() => {}
            Some(&(_, c)) => return Err(self.error(format!("expected a name, found '{c}'"))),
            None => return Err(self.error("expected a name, found end of line")),
        }
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok((s, start + 1))
    }

    pub(crate) fn number(&mut self) -> Result<usize, Error> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some(&(_, c)) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| self.error_at(start + 1, "number out of range"))
    }

    /// `{a, b, c}` or `{}`; names with their columns.
    pub(crate) fn set(&mut self) -> Result<Vec<(String, usize)>, Error> {
        self.expect('{')?;
        let mut out = Vec::new();
        if self.eat('}') {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            if self.eat('}') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// Comma-separated names up to end of line (possibly none).
    pub(crate) fn name_list(&mut self) -> Result<Vec<(String, usize)>, Error> {
        let mut out = Vec::new();
        if self.at_end() {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            if self.at_end() {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}
