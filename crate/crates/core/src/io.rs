//! Text and structured (JSON) formats.
//!
//! Square text: a header line `s <order>` followed by `order` lines of
//! space-separated 1-based symbols. Family text: a header
//! `family <name> order <s> count <N>` followed by `N` squares in square
//! text format, separated by exactly one blank line. Both formats
//! round-trip exactly.

use serde::{Deserialize, Serialize};

use crate::construct::ConstructionSpec;
use crate::error::{Error, Result};
use crate::family::SquareFamily;
use crate::square::{FrequencySquare, Grid, LatinSquare};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

pub fn grid_to_text(grid: &Grid) -> String {
    format!("s {}\n{grid}", grid.rows())
}

pub fn square_to_text(square: &LatinSquare) -> String {
    format!("s {}\n{square}", square.order())
}

pub fn frequency_to_text(square: &FrequencySquare) -> String {
    format!("s {}\n{square}", square.side())
}

/// Parses square text into an unvalidated grid. `first_line` is the
/// 1-based line number of the header, for error messages.
fn parse_grid_lines(lines: &[&str], first_line: usize) -> Result<Grid> {
    let header = lines
        .first()
        .ok_or_else(|| parse_err(first_line, "missing `s <order>` header"))?;
    let order: usize = header
        .strip_prefix("s ")
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| {
            parse_err(
                first_line,
                format!("expected `s <order>`, found `{header}`"),
            )
        })?;
    if lines.len() != order + 1 {
        return Err(parse_err(
            first_line,
            format!("expected {order} rows, found {}", lines.len() - 1),
        ));
    }
    let mut rows = Vec::with_capacity(order);
    for (k, line) in lines[1..].iter().enumerate() {
        let at = first_line + 1 + k;
        let row = line
            .split_whitespace()
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| parse_err(at, format!("`{v}` is not a symbol")))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != order {
            return Err(parse_err(
                at,
                format!("expected {order} symbols, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    Grid::from_one_based(rows).map_err(|e| match e {
        Error::Parse { line, reason } => Error::Parse {
            line: first_line + line,
            reason,
        },
        other => other,
    })
}

fn lines_of(text: &str) -> Vec<&str> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    body.split('\n').collect()
}

pub fn parse_grid_text(text: &str) -> Result<Grid> {
    parse_grid_lines(&lines_of(text), 1)
}

pub fn parse_square_text(text: &str) -> Result<LatinSquare> {
    LatinSquare::new(parse_grid_text(text)?)
}

pub fn family_to_text(family: &SquareFamily) -> String {
    let mut out = format!(
        "family {} order {} count {}\n",
        family.name(),
        family.order(),
        family.len()
    );
    for (k, m) in family.members().iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&square_to_text(m));
    }
    out
}

pub fn parse_family_text(text: &str) -> Result<SquareFamily> {
    let lines = lines_of(text);
    let header: Vec<&str> = lines[0].split(' ').collect();
    let (name, order, count) = match header.as_slice() {
        ["family", name, "order", s, "count", n] => (
            *name,
            s.parse::<usize>()
                .map_err(|_| parse_err(1, "order is not a number"))?,
            n.parse::<usize>()
                .map_err(|_| parse_err(1, "count is not a number"))?,
        ),
        _ => return Err(parse_err(1, "expected `family <name> order <s> count <N>`")),
    };
    if count == 0 {
        return Err(Error::EmptyFamily);
    }
    let block = order + 1;
    if lines.len() != 1 + count * block + (count - 1) {
        return Err(parse_err(
            1,
            format!("expected {count} squares of order {order} separated by one blank line"),
        ));
    }
    let mut members = Vec::with_capacity(count);
    for k in 0..count {
        let start = 1 + k * (block + 1);
        if k > 0 && !lines[start - 1].is_empty() {
            return Err(parse_err(start, "expected a blank line between squares"));
        }
        let grid = parse_grid_lines(&lines[start..start + block], start + 1)?;
        if grid.rows() != order {
            return Err(parse_err(
                start + 1,
                format!(
                    "square order {} differs from family order {order}",
                    grid.rows()
                ),
            ));
        }
        members.push(LatinSquare::new(grid)?);
    }
    SquareFamily::new(members, ConstructionSpec::from_name(name))
}

/// Structured form of a single square or grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDoc {
    pub order: usize,
    pub rows: Vec<Vec<usize>>,
    #[serde(default)]
    pub provenance: Option<ConstructionSpec>,
}

/// Structured form of a frequency square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyDoc {
    pub order: usize,
    pub symbols: usize,
    pub lambda: usize,
    pub rows: Vec<Vec<usize>>,
    #[serde(default)]
    pub provenance: Option<ConstructionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDoc {
    pub rows: Vec<Vec<usize>>,
}

/// Structured form of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub name: String,
    pub order: usize,
    pub count: usize,
    pub provenance: ConstructionSpec,
    pub members: Vec<MemberDoc>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

impl SquareDoc {
    pub fn from_square(square: &LatinSquare, provenance: Option<ConstructionSpec>) -> Self {
        SquareDoc {
            order: square.order(),
            rows: square.to_one_based_rows(),
            provenance,
        }
    }

    pub fn from_grid(grid: &Grid) -> Self {
        SquareDoc {
            order: grid.rows(),
            rows: grid.to_one_based_rows(),
            provenance: None,
        }
    }

    pub fn to_grid(&self) -> Result<Grid> {
        Grid::from_one_based(self.rows.clone())
    }

    pub fn to_square(&self) -> Result<LatinSquare> {
        let square = LatinSquare::new(self.to_grid()?)?;
        if square.order() != self.order {
            return Err(Error::OrderMismatch {
                expected: self.order,
                found: square.order(),
            });
        }
        Ok(square)
    }
}

impl FrequencyDoc {
    pub fn from_frequency(f: &FrequencySquare, provenance: Option<ConstructionSpec>) -> Self {
        FrequencyDoc {
            order: f.side(),
            symbols: f.symbols(),
            lambda: f.multiplicity(),
            rows: f.to_grid().to_one_based_rows(),
            provenance,
        }
    }

    pub fn to_frequency(&self) -> Result<FrequencySquare> {
        FrequencySquare::new(Grid::from_one_based(self.rows.clone())?, self.lambda)
    }
}

impl FamilyDoc {
    pub fn from_family(family: &SquareFamily) -> Self {
        FamilyDoc {
            name: family.name(),
            order: family.order(),
            count: family.len(),
            provenance: family.provenance().clone(),
            members: family
                .members()
                .iter()
                .map(|m| MemberDoc {
                    rows: m.to_one_based_rows(),
                })
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<SquareFamily> {
        let members = self
            .members
            .iter()
            .map(|m| LatinSquare::from_one_based(m.rows.clone()))
            .collect::<Result<Vec<_>>>()?;
        if members.len() != self.count {
            return Err(Error::Json(format!(
                "count {} but {} members",
                self.count,
                members.len()
            )));
        }
        let family = SquareFamily::new(members, self.provenance.clone())?;
        if family.order() != self.order {
            return Err(Error::OrderMismatch {
                expected: self.order,
                found: family.order(),
            });
        }
        Ok(family)
    }
}

/// Any file this crate reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    /// A square-text or structured square that may or may not be Latin.
    Grid {
        grid: Grid,
        provenance: Option<ConstructionSpec>,
    },
    Frequency {
        square: FrequencySquare,
        provenance: Option<ConstructionSpec>,
    },
    Family(SquareFamily),
}

/// Detects the format from the first non-blank character or word.
pub fn read_document(text: &str) -> Result<Document> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("members").is_some() {
            let doc: FamilyDoc = serde_json::from_value(value)?;
            return Ok(Document::Family(doc.to_family()?));
        }
        if value.get("lambda").is_some() {
            let doc: FrequencyDoc = serde_json::from_value(value)?;
            return Ok(Document::Frequency {
                square: doc.to_frequency()?,
                provenance: doc.provenance,
            });
        }
        let doc: SquareDoc = serde_json::from_value(value)?;
        let grid = doc.to_grid()?;
        return Ok(Document::Grid {
            grid,
            provenance: doc.provenance,
        });
    }
    if text.starts_with("family ") {
        return Ok(Document::Family(parse_family_text(text)?));
    }
    Ok(Document::Grid {
        grid: parse_grid_text(text)?,
        provenance: None,
    })
}
