use std::fmt;

use serde::{Deserialize, Serialize};

/// A grid position, 0-based. Serializes with both 0-based and 1-based
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "CellDoc", from = "CellDoc")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub(crate) fn from_index(index: usize, cols: usize) -> Self {
        Cell::new(index / cols, index % cols)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row + 1, self.col + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct CellDoc {
    row: usize,
    col: usize,
    row0: usize,
    col0: usize,
}

impl From<Cell> for CellDoc {
    fn from(c: Cell) -> Self {
        CellDoc {
            row: c.row + 1,
            col: c.col + 1,
            row0: c.row,
            col0: c.col,
        }
    }
}

impl From<CellDoc> for Cell {
    fn from(d: CellDoc) -> Self {
        Cell::new(d.row0, d.col0)
    }
}

/// Serde adapter rendering 0-based values 1-based.
pub(crate) mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<T: Shift + Clone, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        v.clone().up().serialize(s)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: Shift + Deserialize<'de>,
        D: Deserializer<'de>,
    {
        let v = T::deserialize(d)?;
        v.down()
            .ok_or_else(|| serde::de::Error::custom("1-based value must be positive"))
    }

    pub trait Shift: Sized + Serialize {
        fn up(self) -> Self;
        fn down(self) -> Option<Self>;
    }

    impl Shift for usize {
        fn up(self) -> Self {
            self + 1
        }
        fn down(self) -> Option<Self> {
            self.checked_sub(1)
        }
    }

    impl Shift for Vec<usize> {
        fn up(self) -> Self {
            self.into_iter().map(|x| x + 1).collect()
        }
        fn down(self) -> Option<Self> {
            self.into_iter().map(|x| x.checked_sub(1)).collect()
        }
    }

    impl Shift for (usize, usize) {
        fn up(self) -> Self {
            (self.0 + 1, self.1 + 1)
        }
        fn down(self) -> Option<Self> {
            Some((self.0.checked_sub(1)?, self.1.checked_sub(1)?))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    Row,
    Column,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Line::Row => "row",
            Line::Column => "column",
        })
    }
}

/// A concrete counterexample. Symbols and member indices are 0-based in
/// memory and 1-based when serialized or displayed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// The grid has more rows or columns than the symbol count allows.
    TooLarge {
        rows: usize,
        cols: usize,
        symbols: usize,
    },
    /// Side is not a multiple of the requested multiplicity.
    NotDivisible {
        side: usize,
        multiplicity: usize,
    },
    SymbolOutOfRange {
        cell: Cell,
        #[serde(with = "one_based")]
        symbol: usize,
    },
    RowDuplicate {
        first: Cell,
        second: Cell,
        #[serde(with = "one_based")]
        symbol: usize,
    },
    ColDuplicate {
        first: Cell,
        second: Cell,
        #[serde(with = "one_based")]
        symbol: usize,
    },
    CountMismatch {
        line: Line,
        #[serde(with = "one_based")]
        index: usize,
        #[serde(with = "one_based")]
        symbol: usize,
        count: usize,
        expected: usize,
    },
    TupleCollision {
        first: Cell,
        second: Cell,
        #[serde(with = "one_based")]
        tuple: Vec<usize>,
    },
    PairCount {
        #[serde(with = "one_based")]
        pair: (usize, usize),
        count: usize,
        expected: usize,
    },
    Subset {
        #[serde(with = "one_based")]
        indices: Vec<usize>,
        first: Cell,
        second: Cell,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotSquare { rows, cols } => write!(f, "grid is {rows}x{cols}, not square"),
            Witness::TooLarge {
                rows,
                cols,
                symbols,
            } => {
                write!(
                    f,
                    "{rows}x{cols} grid cannot be filled from {symbols} symbols"
                )
            }
            Witness::NotDivisible { side, multiplicity } => {
                write!(f, "side {side} is not a multiple of {multiplicity}")
            }
            Witness::SymbolOutOfRange { cell, symbol } => {
                write!(f, "symbol {} at {cell} is out of range", symbol + 1)
            }
            Witness::RowDuplicate {
                first,
                second,
                symbol,
            } => {
                write!(
                    f,
                    "symbol {} repeated in row {} at {first} and {second}",
                    symbol + 1,
                    first.row + 1
                )
            }
            Witness::ColDuplicate {
                first,
                second,
                symbol,
            } => {
                write!(
                    f,
                    "symbol {} repeated in column {} at {first} and {second}",
                    symbol + 1,
                    first.col + 1
                )
            }
            Witness::CountMismatch {
                line,
                index,
                symbol,
                count,
                expected,
            } => write!(
                f,
                "symbol {} occurs {count} times in {line} {}, expected {expected}",
                symbol + 1,
                index + 1
            ),
            Witness::TupleCollision {
                first,
                second,
                tuple,
            } => {
                write!(
                    f,
                    "cells {first} and {second} share tuple ({})",
                    join_one_based(tuple)
                )
            }
            Witness::PairCount {
                pair,
                count,
                expected,
            } => write!(
                f,
                "pair ({}, {}) occurs {count} times, expected {expected}",
                pair.0 + 1,
                pair.1 + 1
            ),
            Witness::Subset {
                indices,
                first,
                second,
            } => write!(
                f,
                "members {{{}}} collide at cells {first} and {second}",
                join_one_based(indices)
            ),
        }
    }
}

fn join_one_based(v: &[usize]) -> String {
    v.iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Outcome of a decision procedure. `holds` is true exactly when no witness
/// is attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VerdictDoc")]
pub struct Verdict {
    holds: bool,
    witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn from_witness(witness: Option<Witness>) -> Self {
        witness.map_or_else(Verdict::pass, Verdict::fail)
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<Witness> {
        self.witness
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => f.write_str("holds"),
            Some(w) => write!(f, "fails: {w}"),
        }
    }
}

#[derive(Deserialize)]
struct VerdictDoc {
    holds: bool,
    witness: Option<Witness>,
}

impl TryFrom<VerdictDoc> for Verdict {
    type Error = String;

    fn try_from(doc: VerdictDoc) -> Result<Self, Self::Error> {
        if doc.holds != doc.witness.is_none() {
            return Err("`holds` must be true exactly when `witness` is absent".into());
        }
        Ok(Verdict {
            holds: doc.holds,
            witness: doc.witness,
        })
    }
}
