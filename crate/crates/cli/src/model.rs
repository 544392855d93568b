//! The line-oriented model file.
//!
//! ```text
//! # comments run to the end of the line
//! [variables]
//! x1, x2, x3, x4, x5, y
//! [parameters]
//! u
//! [type]
//! rows = 2
//! cols = 3
//! t = 2
//! [matrix]
//! x1, x2, x3
//! x4, x5, x1 + y^4 + u*y
//! [euler]
//! reduced = false
//! chi_stab[2] = -2
//! chi_section[2] = 2
//! [hyperplanes]
//! y
//! x3 = 0
//! [samples]
//! u = 0
//! u = 1/2
//! [supplied]
//! e_pair[2] = 0
//! polar[2] = 0
//! ```

use std::collections::BTreeMap;

use detsing_core::detmodel::{ParameterPoint, PresentationMatrix};
use detsing_core::genericity::Hyperplane;
use detsing_core::invariants::EulerData;
use detsing_core::polyring::{parse_polynomial, Coeff, PolyError, VariableSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ModelError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ModelError> {
    Err(ModelError {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Supplied {
    pub e_pair: BTreeMap<usize, i64>,
    pub polar: BTreeMap<usize, i64>,
}

#[derive(Clone, Debug)]
pub struct ModelFile {
    pub variables: Vec<String>,
    pub parameters: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    pub t: usize,
    pub matrix: PresentationMatrix,
    pub euler: Option<EulerData>,
    /// Source text and parsed hyperplane, in file order.
    pub hyperplanes: Vec<(String, Hyperplane)>,
    pub samples: Vec<ParameterPoint>,
    pub supplied: Supplied,
}

/// A piece of a line with its 1-based starting column.
#[derive(Clone, Copy, Debug)]
struct Span<'a> {
    text: &'a str,
    column: usize,
}

impl<'a> Span<'a> {
    fn trimmed(self) -> Span<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        Span {
            text: self.text.trim(),
            column: self.column + lead,
        }
    }

    fn split(self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in self.text.char_indices() {
            if c == sep {
                out.push(Span {
                    text: &self.text[start..i],
                    column: self.column + start,
                });
                start = i + c.len_utf8();
            }
        }
        out.push(Span {
            text: &self.text[start..],
            column: self.column + start,
        });
        out
    }

    fn split_once(self, sep: char) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(sep)?;
        Some((
            Span {
                text: &self.text[..i],
                column: self.column,
            },
            Span {
                text: &self.text[i + 1..],
                column: self.column + i + 1,
            },
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Variables,
    Parameters,
    Type,
    Matrix,
    Euler,
    Hyperplanes,
    Samples,
    Supplied,
}

impl Section {
    fn from_name(name: &str) -> Option<Section> {
        Some(match name {
            "variables" => Section::Variables,
            "parameters" => Section::Parameters,
            "type" => Section::Type,
            "matrix" => Section::Matrix,
            "euler" => Section::Euler,
            "hyperplanes" => Section::Hyperplanes,
            "samples" => Section::Samples,
            "supplied" => Section::Supplied,
            _ => return None,
        })
    }
}

type Lines<'a> = Vec<(usize, Span<'a>)>;

/// Splits the text into sections of non-blank, comment-stripped lines.
fn sections(text: &str) -> Result<BTreeMap<Section, (usize, Lines<'_>)>, ModelError> {
    let mut out: BTreeMap<Section, (usize, Lines<'_>)> = BTreeMap::new();
    let mut current: Option<Section> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        let span = Span {
            text: content,
            column: 1,
        }
        .trimmed();
        if span.text.is_empty() {
            continue;
        }
        if let Some(name) = span.text.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return err(line, span.column, "section header is missing `]`");
            };
            let Some(section) = Section::from_name(name.trim()) else {
                return err(
                    line,
                    span.column,
                    format!("unknown section `[{}]`", name.trim()),
                );
            };
            if out.contains_key(&section) {
                return err(
                    line,
                    span.column,
                    format!("section `[{}]` appears twice", name.trim()),
                );
            }
            out.insert(section, (line, Vec::new()));
            current = Some(section);
            continue;
        }
        match current {
            Some(s) => out
                .get_mut(&s)
                .expect("section registered")
                .1
                .push((line, span)),
            None => return err(line, span.column, "content before the first section header"),
        }
    }
    Ok(out)
}

fn names(lines: &Lines<'_>) -> Result<Vec<(String, usize, usize)>, ModelError> {
    let mut out = Vec::new();
    for &(line, span) in lines {
        for piece in span.split(',') {
            let piece = piece.trimmed();
            if piece.text.is_empty() {
                return err(line, piece.column, "empty name");
            }
            out.push((piece.text.to_string(), line, piece.column));
        }
    }
    Ok(out)
}

fn key_value<'a>(line: usize, span: Span<'a>) -> Result<(Span<'a>, Span<'a>), ModelError> {
    match span.split_once('=') {
        Some((k, v)) => Ok((k.trimmed(), v.trimmed())),
        None => err(line, span.column, "expected `key = value`"),
    }
}

fn integer<T: std::str::FromStr>(line: usize, span: Span<'_>) -> Result<T, ModelError> {
    span.text.parse().or_else(|_| {
        err(
            line,
            span.column,
            format!("`{}` is not a valid integer", span.text),
        )
    })
}

/// `name[index]` keys.
fn indexed<'a>(line: usize, key: Span<'a>) -> Result<(&'a str, usize), ModelError> {
    let Some((name, rest)) = key.text.split_once('[') else {
        return err(
            line,
            key.column,
            format!("expected `{}[stratum]`", key.text),
        );
    };
    let Some(index) = rest.strip_suffix(']') else {
        return err(line, key.column, "missing `]`");
    };
    let column = key.column + name.len() + 1;
    let index: usize = integer(
        line,
        Span {
            text: index.trim(),
            column,
        },
    )?;
    Ok((name.trim(), index))
}

fn poly_error(line: usize, column: usize, e: &PolyError) -> ModelError {
    ModelError {
        line,
        column: column + e.column().map_or(0, |c| c - 1),
        message: e.to_string(),
    }
}

pub fn parse_model(text: &str) -> Result<ModelFile, ModelError> {
    let secs = sections(text)?;
    let last_line = text.lines().count().max(1);
    let require = |s: Section, name: &str| match secs.get(&s) {
        Some(v) => Ok(v),
        None => err(last_line, 1, format!("missing `[{name}]` section")),
    };

    let (var_line, var_lines) = require(Section::Variables, "variables")?;
    let variables = names(var_lines)?;
    if variables.is_empty() {
        return err(*var_line, 1, "no variables declared");
    }
    let parameters = match secs.get(&Section::Parameters) {
        Some((_, lines)) => names(lines)?,
        None => Vec::new(),
    };
    let vars = VariableSet::new(
        variables.iter().map(|v| v.0.clone()),
        parameters.iter().map(|v| v.0.clone()),
    )
    .map_err(|e| {
        let offending = match &e {
            PolyError::InvalidVariableName(n) => {
                variables.iter().chain(&parameters).find(|v| &v.0 == n)
            }
            PolyError::DuplicateVariable(n) => variables
                .iter()
                .chain(&parameters)
                .filter(|v| &v.0 == n)
                .nth(1),
            _ => None,
        };
        let (line, column) = offending.map_or((*var_line, 1), |v| (v.1, v.2));
        ModelError {
            line,
            column,
            message: e.to_string(),
        }
    })?;

    let (type_line, type_lines) = require(Section::Type, "type")?;
    let mut shape: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
    for &(line, span) in type_lines {
        let (k, v) = key_value(line, span)?;
        if !matches!(k.text, "rows" | "cols" | "t") {
            return err(
                line,
                k.column,
                format!("unknown key `{}` (expected rows, cols, t)", k.text),
            );
        }
        if shape.contains_key(k.text) {
            return err(line, k.column, format!("`{}` given twice", k.text));
        }
        shape.insert(k.text, (integer(line, v)?, line, v.column));
    }
    let get = |key: &str| match shape.get(key) {
        Some(v) => Ok(*v),
        None => err(*type_line, 1, format!("`[type]` is missing `{key}`")),
    };
    let (rows, _, _) = get("rows")?;
    let (cols, _, _) = get("cols")?;
    let (t, t_line, t_col) = get("t")?;

    let (matrix_line, matrix_lines) = require(Section::Matrix, "matrix")?;
    if matrix_lines.len() != rows {
        let line = matrix_lines.last().map_or(*matrix_line, |l| l.0);
        return err(
            line,
            1,
            format!(
                "`[matrix]` has {} rows, `[type]` says {rows}",
                matrix_lines.len()
            ),
        );
    }
    let mut grid = Vec::with_capacity(rows);
    for &(line, span) in matrix_lines {
        let cells = span.split(',');
        if cells.len() != cols {
            return err(
                line,
                span.column,
                format!("row has {} entries, `[type]` says {cols}", cells.len()),
            );
        }
        let mut row = Vec::with_capacity(cols);
        for cell in cells {
            if cell.text.trim().is_empty() {
                return err(line, cell.column, "empty matrix entry");
            }
            row.push(
                parse_polynomial(cell.text, &vars)
                    .map_err(|e| poly_error(line, cell.column, &e))?,
            );
        }
        grid.push(row);
    }
    let matrix = PresentationMatrix::new(&vars, t, grid).map_err(|e| ModelError {
        line: t_line,
        column: t_col,
        message: e.to_string(),
    })?;

    let euler = match secs.get(&Section::Euler) {
        None => None,
        Some((_, lines)) => {
            let mut data = EulerData::default();
            for &(line, span) in lines {
                let (k, v) = key_value(line, span)?;
                if k.text == "reduced" {
                    data.reduced = match v.text {
                        "true" => true,
                        "false" => false,
                        _ => return err(line, v.column, "expected `true` or `false`"),
                    };
                    continue;
                }
                let (name, i) = indexed(line, k)?;
                let map = match name {
                    "chi_stab" => &mut data.chi_stab,
                    "chi_section" => &mut data.chi_section,
                    _ => return err(line, k.column, format!("unknown key `{name}` in `[euler]`")),
                };
                if map.insert(i, integer(line, v)?).is_some() {
                    return err(line, k.column, format!("`{name}[{i}]` given twice"));
                }
            }
            Some(data)
        }
    };

    let mut hyperplanes = Vec::new();
    if let Some((_, lines)) = secs.get(&Section::Hyperplanes) {
        for &(line, span) in lines {
            let h = Hyperplane::parse(span.text, &vars).map_err(|e| match &e {
                detsing_core::Error::Poly(p) => poly_error(line, span.column, p),
                other => ModelError {
                    line,
                    column: span.column,
                    message: other.to_string(),
                },
            })?;
            hyperplanes.push((span.text.to_string(), h));
        }
    }

    let mut samples = Vec::new();
    if let Some((_, lines)) = secs.get(&Section::Samples) {
        for &(line, span) in lines {
            let mut point = ParameterPoint::new();
            for piece in span.split(',') {
                let (k, v) = key_value(line, piece)?;
                if !parameters.iter().any(|p| p.0 == k.text) {
                    return err(
                        line,
                        k.column,
                        format!("`{}` is not a declared parameter", k.text),
                    );
                }
                let value: Coeff = v.text.parse().or_else(|_| {
                    err(
                        line,
                        v.column,
                        format!("`{}` is not a rational number", v.text),
                    )
                })?;
                if point.insert(k.text.to_string(), value).is_some() {
                    return err(line, k.column, format!("`{}` assigned twice", k.text));
                }
            }
            if let Some(missing) = parameters.iter().find(|p| !point.contains_key(&p.0)) {
                return err(
                    line,
                    span.column,
                    format!("sample does not assign `{}`", missing.0),
                );
            }
            samples.push(point);
        }
    }

    let mut supplied = Supplied::default();
    if let Some((_, lines)) = secs.get(&Section::Supplied) {
        for &(line, span) in lines {
            let (k, v) = key_value(line, span)?;
            let (name, i) = indexed(line, k)?;
            let map = match name {
                "e_pair" => &mut supplied.e_pair,
                "polar" => &mut supplied.polar,
                _ => {
                    return err(
                        line,
                        k.column,
                        format!("unknown key `{name}` in `[supplied]`"),
                    )
                }
            };
            if map.insert(i, integer(line, v)?).is_some() {
                return err(line, k.column, format!("`{name}[{i}]` given twice"));
            }
        }
    }

    Ok(ModelFile {
        variables: variables.into_iter().map(|v| v.0).collect(),
        parameters: parameters.into_iter().map(|v| v.0).collect(),
        rows,
        cols,
        t,
        matrix,
        euler,
        hyperplanes,
        samples,
        supplied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const OMEGA3: &str = "\
# Omega_3
[variables]
x1, x2, x3, x4, x5, y
[type]
rows = 2
cols = 3
t = 2
[matrix]
x1, x2, x3
x4, x5, x1 + y^4
[euler]
reduced = false
chi_stab[2] = -2
chi_section[2] = 2
";

    #[test]
    fn parses_omega_three() {
        let m = parse_model(OMEGA3).unwrap();
        assert_eq!(m.variables.len(), 6);
        assert_eq!((m.rows, m.cols, m.t), (2, 3, 2));
        assert_eq!(m.matrix.q(), 6);
        let e = m.euler.unwrap();
        assert_eq!(e.chi_stab[&2], -2);
        assert!(!e.reduced);
        assert!(m.hyperplanes.is_empty() && m.samples.is_empty());
    }

    #[test]
    fn entry_errors_carry_line_and_column() {
        let bad = OMEGA3.replace("x4, x5, x1 + y^4", "x4, x5, x1 + w^4");
        let e = parse_model(&bad).unwrap_err();
        assert_eq!((e.line, e.column), (10, 14));
        assert!(e.message.contains('w'));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let bad = OMEGA3.replace("cols = 3", "cols = 2");
        let e = parse_model(&bad).unwrap_err();
        assert_eq!(e.line, 9);
        let bad = OMEGA3.replace("t = 2", "t = 3");
        assert_eq!(parse_model(&bad).unwrap_err().line, 7);
    }

    #[test]
    fn structural_errors() {
        assert_eq!(parse_model("x\n[variables]\nx").unwrap_err().line, 1);
        assert!(parse_model("[variables]\nx\n[bogus]\n")
            .unwrap_err()
            .message
            .contains("bogus"));
        let dup = OMEGA3.replace("x1, x2, x3, x4, x5, y", "x1, x2, x3, x4, x5, x1");
        let e = parse_model(&dup).unwrap_err();
        assert_eq!((e.line, e.column), (3, 21));
        assert!(parse_model(&OMEGA3.replace("[matrix]", "[type]")).is_err());
    }

    #[test]
    fn samples_and_supplied_values() {
        let text = "[variables]\nx, y\n[parameters]\nu\n[type]\nrows=1\ncols=2\nt=1\n\
                    [matrix]\nx, y + u\n[samples]\nu = 0\nu = -3/2\n[supplied]\ne_pair[1] = 0\n\
                    polar[1] = 2\n[hyperplanes]\nx - y = 0\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.samples.len(), 2);
        assert_eq!(m.samples[1]["u"], Coeff::new((-3).into(), 2.into()));
        assert_eq!(m.supplied.polar[&1], 2);
        assert_eq!(m.hyperplanes[0].0, "x - y = 0");
        let missing = text.replace("u = 0", "x = 0");
        assert_eq!(parse_model(&missing).unwrap_err().line, 12);
    }
}
