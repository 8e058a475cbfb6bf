//! Line-oriented structure files: one `algebra` line in tuple notation,
//! any number of named `form`, `vector` and `matrix` items, `#` comments.
//!
//! ```text
//! # an optional comment
//! algebra (0,0,0,0,e14+e23,e13-e24)
//! form omega 2 e12+e34+e56
//! form psi_plus 3 e135-e146-e236-e245
//! vector X 0 0 0 0 0 -1
//! matrix D 6
//! 0 0 1 0 0 0
//! ...
//! ```
//!
//! Canonical printing re-emits content lines (forms in ascending multi-index
//! order, scalars in the shared coefficient format) and preserves full-line
//! comments and blank lines, so canonical files survive a byte-identical
//! parse/print round trip.

use crate::error::ParseError;
use crate::forms::{format_coefficient, KForm, LinearMap, Vector};
use crate::lie::{parse_form_in_line, parse_salamon_in_line, LieAlgebra};

#[derive(Debug, Clone)]
pub struct StructureFile {
    pub algebra: LieAlgebra,
    pub forms: Vec<(String, KForm)>,
    pub vectors: Vec<(String, Vector)>,
    pub matrices: Vec<(String, LinearMap)>,
    layout: Vec<LineKind>,
}

#[derive(Debug, Clone)]
enum LineKind {
    Comment(String),
    Blank,
    Algebra,
    Form(usize),
    Vector(usize),
    Matrix(usize),
}

impl StructureFile {
    pub fn form(&self, name: &str) -> Option<&KForm> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn vector(&self, name: &str) -> Option<&Vector> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn matrix(&self, name: &str) -> Option<&LinearMap> {
        self.matrices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
    }

    /// First matrix in file order, for single-matrix files.
    pub fn first_matrix(&self) -> Option<&LinearMap> {
        self.matrices.first().map(|(_, m)| m)
    }

    pub fn parse(text: &str) -> Result<StructureFile, ParseError> {
        let mut algebra: Option<LieAlgebra> = None;
        let mut forms = Vec::new();
        let mut vectors = Vec::new();
        let mut matrices = Vec::new();
        let mut layout = Vec::new();

        let lines: Vec<&str> = text.lines().collect();
        let mut i = 0usize;
        while i < lines.len() {
            let line_no = i + 1;
            let raw = lines[i];
            let trimmed = raw.trim();
            i += 1;
            if trimmed.is_empty() {
                layout.push(LineKind::Blank);
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                layout.push(LineKind::Comment(comment.trim_end().to_string()));
                continue;
            }
            let mut toks = tokens(raw);
            let (kw_col, keyword) = toks.next().expect("non-empty line");
            match keyword {
                "algebra" => {
                    if algebra.is_some() {
                        return Err(ParseError::new(line_no, kw_col, "duplicate algebra line"));
                    }
                    let rest_col = keyword_end(raw, kw_col, keyword);
                    let rest = &raw[rest_col - 1..];
                    let alg = parse_salamon_in_line(rest, line_no, rest_col - 1)?;
                    algebra = Some(alg);
                    layout.push(LineKind::Algebra);
                }
                "form" => {
                    let alg = algebra.as_ref().ok_or_else(|| {
                        ParseError::new(line_no, kw_col, "algebra line must come first")
                    })?;
                    let (name_col, name) = toks
                        .next()
                        .ok_or_else(|| ParseError::new(line_no, kw_col, "missing form name"))?;
                    let (deg_col, deg_tok) = toks.next().ok_or_else(|| {
                        ParseError::new(line_no, name_col, "missing form degree")
                    })?;
                    let degree: usize = deg_tok.parse().map_err(|_| {
                        ParseError::new(line_no, deg_col, "malformed degree")
                    })?;
                    if degree == 0 || degree > alg.dim() {
                        return Err(ParseError::new(
                            line_no,
                            deg_col,
                            format!("degree {} out of range 1..={}", degree, alg.dim()),
                        ));
                    }
                    let (expr_col, _) = toks.next().ok_or_else(|| {
                        ParseError::new(line_no, deg_col, "missing form expression")
                    })?;
                    let expr = &raw[expr_col - 1..];
                    let form = parse_form_in_line(expr, alg.dim(), degree, line_no, expr_col - 1)?;
                    forms.push((name.to_string(), form));
                    layout.push(LineKind::Form(forms.len() - 1));
                }
                "vector" => {
                    let alg = algebra.as_ref().ok_or_else(|| {
                        ParseError::new(line_no, kw_col, "algebra line must come first")
                    })?;
                    let (_, name) = toks
                        .next()
                        .ok_or_else(|| ParseError::new(line_no, kw_col, "missing vector name"))?;
                    let mut comps = Vec::with_capacity(alg.dim());
                    for (col, tok) in toks.by_ref() {
                        comps.push(parse_scalar(tok, line_no, col)?);
                    }
                    if comps.len() != alg.dim() {
                        return Err(ParseError::new(
                            line_no,
                            kw_col,
                            format!(
                                "vector needs {} components, found {}",
                                alg.dim(),
                                comps.len()
                            ),
                        ));
                    }
                    vectors.push((
                        name.to_string(),
                        Vector::new(comps)
                            .map_err(|e| ParseError::new(line_no, kw_col, e.to_string()))?,
                    ));
                    layout.push(LineKind::Vector(vectors.len() - 1));
                }
                "matrix" => {
                    let (_, name) = toks
                        .next()
                        .ok_or_else(|| ParseError::new(line_no, kw_col, "missing matrix name"))?;
                    let (size_col, size_tok) = toks.next().ok_or_else(|| {
                        ParseError::new(line_no, kw_col, "missing matrix size")
                    })?;
                    let size: usize = size_tok.parse().map_err(|_| {
                        ParseError::new(line_no, size_col, "malformed matrix size")
                    })?;
                    if size == 0 || size > 8 {
                        return Err(ParseError::new(
                            line_no,
                            size_col,
                            format!("matrix size {size} out of range 1..=8"),
                        ));
                    }
                    let mut entries = Vec::with_capacity(size * size);
                    for row in 0..size {
                        let row_line = i + 1;
                        let row_raw = lines.get(i).ok_or_else(|| {
                            ParseError::new(
                                row_line,
                                1,
                                format!("matrix row {} missing", row + 1),
                            )
                        })?;
                        i += 1;
                        let mut count = 0;
                        for (col, tok) in tokens(row_raw) {
                            entries.push(parse_scalar(tok, row_line, col)?);
                            count += 1;
                        }
                        if count != size {
                            return Err(ParseError::new(
                                row_line,
                                1,
                                format!("matrix row needs {size} entries, found {count}"),
                            ));
                        }
                    }
                    matrices.push((
                        name.to_string(),
                        LinearMap::new(size, size, entries)
                            .map_err(|e| ParseError::new(line_no, kw_col, e.to_string()))?,
                    ));
                    layout.push(LineKind::Matrix(matrices.len() - 1));
                }
                other => {
                    return Err(ParseError::new(
                        line_no,
                        kw_col,
                        format!("unknown keyword '{other}'"),
                    ));
                }
            }
        }
        let algebra = algebra
            .ok_or_else(|| ParseError::new(lines.len().max(1), 1, "missing algebra line"))?;
        Ok(StructureFile {
            algebra,
            forms,
            vectors,
            matrices,
            layout,
        })
    }

    /// Canonical re-print (see the module docs).
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for kind in &self.layout {
            match kind {
                LineKind::Blank => out.push('\n'),
                LineKind::Comment(text) => {
                    out.push('#');
                    out.push_str(text);
                    out.push('\n');
                }
                LineKind::Algebra => {
                    out.push_str("algebra ");
                    out.push_str(&self.algebra.to_salamon());
                    out.push('\n');
                }
                LineKind::Form(i) => {
                    let (name, form) = &self.forms[*i];
                    out.push_str(&format!("form {} {} {}\n", name, form.degree(), form));
                }
                LineKind::Vector(i) => {
                    let (name, vector) = &self.vectors[*i];
                    let comps: Vec<String> = vector
                        .components()
                        .iter()
                        .map(|&c| format_coefficient(c))
                        .collect();
                    out.push_str(&format!("vector {} {}\n", name, comps.join(" ")));
                }
                LineKind::Matrix(i) => {
                    let (name, matrix) = &self.matrices[*i];
                    out.push_str(&format!("matrix {} {}\n", name, matrix.rows()));
                    for row in 0..matrix.rows() {
                        let entries: Vec<String> = (0..matrix.cols())
                            .map(|col| format_coefficient(matrix.get(row, col)))
                            .collect();
                        out.push_str(&entries.join(" "));
                        out.push('\n');
                    }
                }
            }
        }
        out
    }
}

/// Tokenizes a line into `(1-based column, token)` pairs.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let bytes = line.as_bytes();
    let mut pos = 0usize;
    std::iter::from_fn(move || {
        while pos < bytes.len() && (bytes[pos] == b' ' || bytes[pos] == b'\t') {
            pos += 1;
        }
        if pos >= bytes.len() {
            return None;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos] != b' ' && bytes[pos] != b'\t' {
            pos += 1;
        }
        Some((start + 1, &line[start..pos]))
    })
}

fn keyword_end(line: &str, col: usize, keyword: &str) -> usize {
    let after = col + keyword.len();
    let bytes = line.as_bytes();
    let mut pos = after - 1;
    while pos < bytes.len() && (bytes[pos] == b' ' || bytes[pos] == b'\t') {
        pos += 1;
    }
    pos + 1
}

/// Decimal or `p/q` scalar.
pub fn parse_scalar(token: &str, line: usize, col: usize) -> Result<f64, ParseError> {
    let value = if let Some((num, den)) = token.split_once('/') {
        let p: f64 = num
            .parse()
            .map_err(|_| ParseError::new(line, col, format!("malformed number '{token}'")))?;
        let q: f64 = den
            .parse()
            .map_err(|_| ParseError::new(line, col, format!("malformed number '{token}'")))?;
        if q == 0.0 {
            return Err(ParseError::new(line, col, "zero denominator"));
        }
        p / q
    } else {
        token
            .parse()
            .map_err(|_| ParseError::new(line, col, format!("malformed number '{token}'")))?
    };
    if !value.is_finite() {
        return Err(ParseError::new(line, col, "non-finite number"));
    }
    Ok(value)
}
