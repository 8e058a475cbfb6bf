//! Tuple notation for structure equations and the shared monomial-sum
//! grammar.
//!
//! An algebra is written `(de^1, ..., de^n)`; each entry is `0` or a signed
//! sum of monomials `[coeff]e<digits>` with single-character basis labels
//! `1..9`, e.g. `(e37,e47,2e17,2e27,e14+e23,e13-e24,0)`. Coefficients are
//! decimals or rationals `p/q`; scientific notation is not part of the
//! grammar since `e` always opens a monomial. Canonical printing uses
//! ascending multi-indices, `+`/`-` separators and no spaces, so printing
//! after parsing is byte-stable on canonical text.

use super::LieAlgebra;
use crate::error::ParseError;
use crate::forms::KForm;

/// Cursor over a single line of text with 1-based column reporting.
pub(crate) struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
    line: usize,
    col_offset: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str, line: usize, col_offset: usize) -> Self {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
            line,
            col_offset,
        }
    }

    pub fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    pub fn skip_spaces(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_spaces();
        self.peek().is_none()
    }

    pub fn column(&self) -> usize {
        self.col_offset + self.pos + 1
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), msg)
    }

    pub fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_spaces();
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.error(format!(
                "expected '{}', found '{}'",
                c as char, found as char
            ))),
            None => Err(self.error(format!("expected '{}', found end of input", c as char))),
        }
    }

    /// Parses an unsigned decimal or rational coefficient; empty means 1.
    fn coefficient(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.') {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(1.0);
        }
        let numerator: f64 = std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| {
                ParseError::new(self.line, self.col_offset + start + 1, "malformed number")
            })?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let dstart = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.') {
                self.pos += 1;
            }
            if self.pos == dstart {
                return Err(self.error("missing denominator"));
            }
            let denominator: f64 = std::str::from_utf8(&self.text[dstart..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| {
                    ParseError::new(self.line, self.col_offset + dstart + 1, "malformed number")
                })?;
            if denominator == 0.0 {
                return Err(self.error("zero denominator"));
            }
            return Ok(numerator / denominator);
        }
        Ok(numerator)
    }

    /// One monomial `[coeff]e<digits>` of the expected degree.
    fn monomial(&mut self, dim: usize, degree: usize) -> Result<(Vec<u8>, f64), ParseError> {
        self.skip_spaces();
        let coeff = self.coefficient()?;
        self.skip_spaces();
        let e_col = self.column();
        match self.bump() {
            Some(b'e') => {}
            Some(c) => {
                return Err(ParseError::new(
                    self.line,
                    e_col,
                    format!("expected 'e', found '{}'", c as char),
                ))
            }
            None => {
                return Err(ParseError::new(
                    self.line,
                    e_col,
                    "expected 'e', found end of input",
                ))
            }
        }
        let mut labels = Vec::with_capacity(degree);
        for _ in 0..degree {
            match self.bump() {
                Some(c @ b'1'..=b'9') => {
                    let label = c - b'0';
                    if label as usize > dim {
                        return Err(ParseError::new(
                            self.line,
                            self.col_offset + self.pos,
                            format!("index {} exceeds dimension {}", label, dim),
                        ));
                    }
                    if labels.contains(&label) {
                        return Err(ParseError::new(
                            self.line,
                            self.col_offset + self.pos,
                            format!("repeated index {} within a term", label),
                        ));
                    }
                    labels.push(label);
                }
                Some(c) => {
                    return Err(ParseError::new(
                        self.line,
                        self.col_offset + self.pos,
                        format!("expected a basis index 1-9, found '{}'", c as char),
                    ))
                }
                None => return Err(self.error("expected a basis index 1-9, found end of input")),
            }
        }
        Ok((labels, coeff))
    }

    /// A signed sum of monomials of one degree, or the single token `0`.
    pub fn form(&mut self, dim: usize, degree: usize) -> Result<KForm, ParseError> {
        self.skip_spaces();
        if self.peek() == Some(b'0')
            && !matches!(self.text.get(self.pos + 1), Some(c) if c.is_ascii_digit() || *c == b'.' || *c == b'/' || *c == b'e')
        {
            self.pos += 1;
            return Ok(KForm::zero(dim, degree));
        }
        let mut form = KForm::zero(dim, degree);
        let mut sign = 1.0;
        if self.peek() == Some(b'+') {
            self.pos += 1;
        } else if self.peek() == Some(b'-') {
            sign = -1.0;
            self.pos += 1;
        }
        loop {
            let col = self.column();
            let (labels, coeff) = self.monomial(dim, degree)?;
            form.add_term(&labels, sign * coeff)
                .map_err(|e| ParseError::new(self.line, col, e.to_string()))?;
            self.skip_spaces();
            match self.peek() {
                Some(b'+') => {
                    sign = 1.0;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1.0;
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(form)
    }
}

/// Parses the tuple `(entry, ..., entry)`; the k-th entry defines `de^k` and
/// the entry count fixes the dimension.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra, ParseError> {
    parse_algebra_at(text, 1, 0)
}

pub fn parse_algebra_at(
    text: &str,
    line: usize,
    col_offset: usize,
) -> Result<LieAlgebra, ParseError> {
    // The dimension is the number of top-level commas plus one; labels are
    // checked against it while parsing entries.
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| ParseError::new(line, col_offset + 1, "expected '(...)'"))?;
    let dim = inner.split(',').count();
    if dim == 0 || dim > 8 {
        return Err(ParseError::new(
            line,
            col_offset + 1,
            format!("dimension {dim} out of range 1..=8"),
        ));
    }
    let mut cursor = Cursor::new(trimmed, line, col_offset + (text.len() - text.trim_start().len()));
    cursor.expect(b'(')?;
    let mut differentials = Vec::with_capacity(dim);
    for k in 0..dim {
        let form = cursor.form(dim, 2)?;
        differentials.push(form);
        if k + 1 < dim {
            cursor.expect(b',')?;
        }
    }
    cursor.expect(b')')?;
    if !cursor.at_end() {
        return Err(cursor.error("trailing input after ')'"));
    }
    LieAlgebra::new(differentials).map_err(|e| {
        ParseError::new(
            line,
            col_offset + 1,
            format!("structure equations rejected: {e}"),
        )
    })
}

pub fn print_algebra(alg: &LieAlgebra) -> String {
    let entries: Vec<String> = alg.differentials().iter().map(KForm::to_string).collect();
    format!("({})", entries.join(","))
}

/// Parses a standalone monomial sum of a given degree, e.g. `-e7` or
/// `5/7e12-3/7e14+3/7e23-1/7e34-e56`.
pub fn parse_form(text: &str, dim: usize, degree: usize) -> Result<KForm, ParseError> {
    parse_form_at(text, dim, degree, 1, 0)
}

pub fn parse_form_at(
    text: &str,
    dim: usize,
    degree: usize,
    line: usize,
    col_offset: usize,
) -> Result<KForm, ParseError> {
    let mut cursor = Cursor::new(text.trim(), line, col_offset);
    let form = cursor.form(dim, degree)?;
    if !cursor.at_end() {
        return Err(cursor.error("trailing input after form"));
    }
    Ok(form)
}
