//! The sectioned plain-text input format.
//!
//! A file is a sequence of `[section]` headers with entry lines; an entry may
//! also follow the header on the same line. `#` starts a comment.
//!
//! Algebra files: `[field] rational | prime <p>`, `[basis] <labels>`,
//! `[unit] <coeff>*<label> + ...`, `[mult]` entries `<i> <j> <k> <value>`
//! (absent entries are zero, indices are 0-based basis positions).
//!
//! Quiver files: `[field]` (optional, default rational),
//! `[vertices] <names>`, `[arrow] <name> <src> <tgt>`,
//! `[relation] <arrow names in traversal order>`.
//!
//! Form files: `[form]` followed by d rows of exact entries.
//!
//! Structural-map files: `[psi]` entries `<i> <j> <k> <value>` over the dual
//! basis and `[unit]` with d exact coordinates.

use crate::algebra::{dual_bimodule, regular_bimodule, Algebra};
use crate::bv::StructuralMap;
use crate::error::{EngineError, Result};
use crate::frobenius::BilinearForm;
use crate::linalg::Matrix;
use crate::quiver::{Arrow, MonomialPresentation, Quiver};
use crate::scalar::{GroundField, Scalar};

#[derive(Debug)]
struct Entry {
    line: usize,
    tokens: Vec<String>,
}

#[derive(Debug)]
struct Section {
    name: String,
    entries: Vec<Entry>,
}

fn err(line: usize, message: impl Into<String>) -> EngineError {
    EngineError::Parse { line, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let close = rest
                .find(']')
                .ok_or_else(|| err(line_no, "unterminated section header"))?;
            let name = rest[..close].trim().to_string();
            if name.is_empty() {
                return Err(err(line_no, "empty section name"));
            }
            sections.push(Section { name, entries: Vec::new() });
            let inline = rest[close + 1..].trim();
            if !inline.is_empty() {
                sections.last_mut().unwrap().entries.push(Entry {
                    line: line_no,
                    tokens: inline.split_whitespace().map(str::to_string).collect(),
                });
            }
        } else {
            match sections.last_mut() {
                None => return Err(err(line_no, format!("data before any section: `{line}`"))),
                Some(s) => s.entries.push(Entry {
                    line: line_no,
                    tokens: line.split_whitespace().map(str::to_string).collect(),
                }),
            }
        }
    }
    Ok(sections)
}

fn flat_entries(sections: &[Section], name: &str) -> Vec<(usize, Vec<String>)> {
    sections
        .iter()
        .filter(|s| s.name == name)
        .flat_map(|s| s.entries.iter().map(|e| (e.line, e.tokens.clone())))
        .collect()
}

fn parse_field(sections: &[Section], fallback: GroundField) -> Result<GroundField> {
    let entries = flat_entries(sections, "field");
    match entries.as_slice() {
        [] => Ok(fallback),
        [(line, tokens)] => {
            GroundField::parse(&tokens.join(" ")).map_err(|e| err(*line, e.to_string()))
        }
        _ => Err(err(entries[1].0, "duplicate [field] section")),
    }
}

/// An input file: either a structure-constant algebra or a monomial quiver
/// presentation.
pub enum InputFile {
    Algebra(Algebra),
    Quiver(MonomialPresentation),
}

/// Parses an algebra or quiver file; `field_override` replaces the file's
/// `[field]` section when given.
pub fn parse_input(text: &str, field_override: Option<GroundField>) -> Result<InputFile> {
    let sections = tokenize(text)?;
    let has = |name: &str| sections.iter().any(|s| s.name == name);
    if has("vertices") {
        Ok(InputFile::Quiver(parse_quiver(&sections, field_override)?))
    } else if has("basis") {
        Ok(InputFile::Algebra(parse_algebra(&sections, field_override)?))
    } else {
        Err(err(1, "expected a [vertices] (quiver) or [basis] (algebra) section"))
    }
}

fn parse_algebra(sections: &[Section], over: Option<GroundField>) -> Result<Algebra> {
    let field = match over {
        Some(f) => f,
        None => parse_field(sections, GroundField::Rational)?,
    };
    let basis = flat_entries(sections, "basis");
    if basis.is_empty() {
        return Err(err(1, "missing [basis] section"));
    }
    let labels: Vec<String> = basis.iter().flat_map(|(_, t)| t.clone()).collect();
    let d = labels.len();
    if d == 0 {
        return Err(err(basis[0].0, "empty basis"));
    }
    let label_index = |line: usize, name: &str| -> Result<usize> {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| err(line, format!("unknown basis label `{name}`")))
    };

    let mut table = vec![vec![vec![Scalar::zero(field); d]; d]; d];
    for (line, tokens) in flat_entries(sections, "mult") {
        if tokens.len() != 4 {
            return Err(err(line, "expected `[mult] <i> <j> <k> <value>`"));
        }
        let idx = |t: &str| -> Result<usize> {
            let v: usize =
                t.parse().map_err(|_| err(line, format!("invalid basis index `{t}`")))?;
            if v >= d {
                return Err(err(line, format!("basis index {v} out of range 0..{d}")));
            }
            Ok(v)
        };
        let (i, j, k) = (idx(&tokens[0])?, idx(&tokens[1])?, idx(&tokens[2])?);
        let v = Scalar::parse(field, &tokens[3]).map_err(|e| err(line, e.to_string()))?;
        table[i][j][k] = v;
    }

    let unit_entries = flat_entries(sections, "unit");
    if unit_entries.is_empty() {
        return Err(err(1, "missing [unit] section"));
    }
    let mut unit = vec![Scalar::zero(field); d];
    for (line, tokens) in unit_entries {
        for term in tokens.join(" ").split('+') {
            let term = term.trim();
            if term.is_empty() {
                continue;
            }
            let (coeff, label) = match term.split_once('*') {
                Some((c, l)) => (
                    Scalar::parse(field, c.trim()).map_err(|e| err(line, e.to_string()))?,
                    l.trim(),
                ),
                None => (Scalar::one(field), term),
            };
            let i = label_index(line, label)?;
            unit[i] = unit[i].add(&coeff);
        }
    }
    Ok(Algebra::new(field, labels, table, unit))
}

fn parse_quiver(sections: &[Section], over: Option<GroundField>) -> Result<MonomialPresentation> {
    let field = match over {
        Some(f) => f,
        None => parse_field(sections, GroundField::Rational)?,
    };
    let vertex_entries = flat_entries(sections, "vertices");
    let vertices: Vec<String> = vertex_entries.iter().flat_map(|(_, t)| t.clone()).collect();
    if vertices.is_empty() {
        return Err(err(1, "missing or empty [vertices] section"));
    }
    let vertex_index = |line: usize, name: &str| -> Result<usize> {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| err(line, format!("unknown vertex `{name}`")))
    };
    let mut arrows = Vec::new();
    for (line, tokens) in flat_entries(sections, "arrow") {
        if tokens.len() != 3 {
            return Err(err(line, "expected `[arrow] <name> <source> <target>`"));
        }
        arrows.push(Arrow {
            name: tokens[0].clone(),
            source: vertex_index(line, &tokens[1])?,
            target: vertex_index(line, &tokens[2])?,
        });
    }
    let quiver = Quiver::new(vertices, arrows).map_err(|e| err(1, e.to_string()))?;
    let mut relations = Vec::new();
    for (line, tokens) in flat_entries(sections, "relation") {
        let mut word = Vec::new();
        for t in &tokens {
            let i = quiver
                .arrow_by_name(t)
                .ok_or_else(|| err(line, format!("unknown arrow `{t}` in relation")))?;
            word.push(i);
        }
        relations.push(word);
    }
    MonomialPresentation::new(quiver, relations, field)
        .map_err(|e| err(1, e.to_string()))
}

/// Parses a `[form]` file: `dim` rows of `dim` exact entries.
pub fn parse_form(text: &str, field: GroundField, dim: usize) -> Result<BilinearForm> {
    let sections = tokenize(text)?;
    let rows = flat_entries(&sections, "form");
    if rows.is_empty() {
        return Err(err(1, "missing [form] section"));
    }
    if rows.len() != dim {
        return Err(err(rows[0].0, format!("expected {dim} form rows, found {}", rows.len())));
    }
    let mut grid = Vec::with_capacity(dim);
    for (line, tokens) in rows {
        if tokens.len() != dim {
            return Err(err(line, format!("expected {dim} entries per form row")));
        }
        let mut row = Vec::with_capacity(dim);
        for t in tokens {
            row.push(Scalar::parse(field, &t).map_err(|e| err(line, e.to_string()))?);
        }
        grid.push(row);
    }
    Ok(BilinearForm { matrix: Matrix::from_dense(field, &grid)? })
}

/// Parses a custom structural map over the canonical dual of the regular
/// bimodule: `[psi]` entries `<i> <j> <k> <value>` and `[unit]` with `dim`
/// exact coordinates over the dual basis.
pub fn parse_psi(text: &str, a: &Algebra) -> Result<StructuralMap> {
    let sections = tokenize(text)?;
    let d = a.dim;
    let mut tensor = vec![vec![vec![Scalar::zero(a.field); d]; d]; d];
    let psi_entries = flat_entries(&sections, "psi");
    if psi_entries.is_empty() {
        return Err(err(1, "missing [psi] section"));
    }
    for (line, tokens) in psi_entries {
        if tokens.len() != 4 {
            return Err(err(line, "expected `[psi] <i> <j> <k> <value>`"));
        }
        let idx = |t: &str| -> Result<usize> {
            let v: usize =
                t.parse().map_err(|_| err(line, format!("invalid index `{t}`")))?;
            if v >= d {
                return Err(err(line, format!("index {v} out of range 0..{d}")));
            }
            Ok(v)
        };
        let (i, j, k) = (idx(&tokens[0])?, idx(&tokens[1])?, idx(&tokens[2])?);
        tensor[i][j][k] = Scalar::parse(a.field, &tokens[3]).map_err(|e| err(line, e.to_string()))?;
    }
    let unit_rows = flat_entries(&sections, "unit");
    if unit_rows.len() != 1 || unit_rows[0].1.len() != d {
        return Err(err(
            unit_rows.first().map_or(1, |r| r.0),
            format!("expected one [unit] row with {d} coordinates"),
        ));
    }
    let mut unit = Vec::with_capacity(d);
    for t in &unit_rows[0].1 {
        unit.push(Scalar::parse(a.field, t).map_err(|e| err(unit_rows[0].0, e.to_string()))?);
    }
    let module = dual_bimodule(a, &regular_bimodule(a));
    Ok(StructuralMap::new(module, tensor, unit, "custom"))
}
