//! Grids, Latin squares, Latin rectangles and frequency squares.
//!
//! Symbols are stored 0-based. Text rendering adds one, so the residue 0 of
//! a modular construction prints as the order itself.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verify::latin::{frequency_violation, latin_violation, rectangle_violation};
use crate::verify::Witness;

/// Largest supported order; a row or column symbol set fits one `u64`.
pub const MAX_ORDER: usize = 64;

/// A rectangular array of 0-based symbols with no structural guarantees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    rows: usize,
    cols: usize,
    cells: Vec<usize>,
}

impl Grid {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let cols = rows.first().map(Vec::len).ok_or(Error::EmptyGrid)?;
        if cols == 0 {
            return Err(Error::EmptyGrid);
        }
        let mut cells = Vec::with_capacity(rows.len() * cols);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Ragged {
                    row,
                    len: r.len(),
                    expected: cols,
                });
            }
            cells.extend_from_slice(r);
        }
        Ok(Grid {
            rows: rows.len(),
            cols,
            cells,
        })
    }

    /// Builds a grid from 1-based symbols; a 0 entry is rejected.
    pub fn from_one_based(rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut shifted = Vec::with_capacity(rows.len());
        for (r, row) in rows.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row.into_iter().enumerate() {
                let v = v.checked_sub(1).ok_or(Error::Parse {
                    line: r + 1,
                    reason: format!("symbol 0 in column {}; symbols are 1-based", c + 1),
                })?;
                out.push(v);
            }
            shifted.push(out);
        }
        Grid::from_rows(shifted)
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, cells: Vec<usize>) -> Self {
        debug_assert_eq!(rows * cols, cells.len());
        Grid { rows, cols, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[usize] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.cols)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn to_one_based_rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.cols)
            .map(|r| r.iter().map(|v| v + 1).collect())
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.cells.chunks(self.cols).map(|r| r.iter().copied()))
    }
}

fn write_rows<R, I>(f: &mut fmt::Formatter<'_>, rows: R) -> fmt::Result
where
    R: Iterator<Item = I>,
    I: Iterator<Item = usize>,
{
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", v + 1)?;
        }
        writeln!(f)?;
    }
    Ok(())
}

/// An `s x s` Latin square over symbols `0..s`, validated on construction.
///
/// Serializes as its 1-based rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<usize>>", try_from = "Vec<Vec<usize>>")]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    pub fn new(grid: Grid) -> Result<Self> {
        let order = grid.rows();
        if order > MAX_ORDER || grid.cols() > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: order.max(grid.cols()),
                max: MAX_ORDER,
            });
        }
        if let Some(w) = latin_violation(&grid) {
            return Err(match w {
                Witness::NotSquare { rows, cols } => Error::NotSquare { rows, cols },
                Witness::SymbolOutOfRange { cell, symbol } => Error::SymbolOutOfRange {
                    row: cell.row,
                    col: cell.col,
                    symbol,
                    order,
                },
                Witness::RowDuplicate { first, symbol, .. } => Error::RowDuplicate {
                    row: first.row,
                    symbol,
                },
                Witness::ColDuplicate { first, symbol, .. } => Error::ColDuplicate {
                    col: first.col,
                    symbol,
                },
                other => Error::Violation(other),
            });
        }
        Ok(LatinSquare {
            order,
            cells: grid.cells.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        LatinSquare::new(Grid::from_rows(rows)?)
    }

    pub fn from_one_based(rows: Vec<Vec<usize>>) -> Result<Self> {
        LatinSquare::new(Grid::from_one_based(rows)?)
    }

    /// Caller guarantees the Latin property.
    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u8>) -> Self {
        debug_assert!(latin_violation(&Grid::from_parts(
            order,
            order,
            cells.iter().map(|&v| v as usize).collect()
        ))
        .is_none());
        LatinSquare { order, cells }
    }

    /// The cyclic group table `(r + c) mod s`.
    pub fn cyclic(order: usize) -> Result<Self> {
        check_order(order)?;
        let cells = (0..order * order)
            .map(|i| ((i / order + i % order) % order) as u8)
            .collect();
        Ok(LatinSquare { order, cells })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col] as usize
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.order..(row + 1) * self.order]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn to_grid(&self) -> Grid {
        Grid::from_parts(
            self.order,
            self.order,
            self.cells.iter().map(|&v| v as usize).collect(),
        )
    }

    pub fn to_one_based_rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize + 1).collect())
            .collect()
    }

    pub fn transpose(&self) -> LatinSquare {
        let s = self.order;
        let cells = (0..s * s)
            .map(|i| self.cells[(i % s) * s + i / s])
            .collect();
        LatinSquare { order: s, cells }
    }

    /// Replaces every symbol `x` by `sigma[x]`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<LatinSquare> {
        self.check_permutation(sigma)?;
        let cells = self
            .cells
            .iter()
            .map(|&v| sigma[v as usize] as u8)
            .collect();
        Ok(LatinSquare {
            order: self.order,
            cells,
        })
    }

    /// Row `r` of the result is row `pi[r]` of `self`.
    pub fn permute_rows(&self, pi: &[usize]) -> Result<LatinSquare> {
        self.check_permutation(pi)?;
        let s = self.order;
        let mut cells = Vec::with_capacity(s * s);
        for &src in pi {
            cells.extend_from_slice(self.row(src));
        }
        Ok(LatinSquare { order: s, cells })
    }

    /// Column `c` of the result is column `pi[c]` of `self`.
    pub fn permute_cols(&self, pi: &[usize]) -> Result<LatinSquare> {
        self.check_permutation(pi)?;
        let s = self.order;
        let cells = (0..s * s)
            .map(|i| self.cells[(i / s) * s + pi[i % s]])
            .collect();
        Ok(LatinSquare { order: s, cells })
    }

    /// Rows shifted cyclically upward: row `r` of the result is row
    /// `(r + k) mod s`.
    pub fn shift_rows(&self, k: usize) -> LatinSquare {
        let s = self.order;
        let pi: Vec<usize> = (0..s).map(|r| (r + k) % s).collect();
        self.permute_rows(&pi)
            .expect("cyclic shift is a permutation")
    }

    /// Relabels symbols so the first row reads `0, 1, .., s-1`.
    pub fn normalize_first_row(&self) -> LatinSquare {
        let mut sigma = vec![0; self.order];
        for (c, &v) in self.row(0).iter().enumerate() {
            sigma[v as usize] = c;
        }
        self.relabel(&sigma).expect("first row is a permutation")
    }

    /// The top-left `rows x cols` block.
    pub fn rectangle(&self, rows: usize, cols: usize) -> Result<LatinRectangle> {
        if rows == 0 || cols == 0 || rows > self.order || cols > self.order {
            return Err(Error::Violation(Witness::TooLarge {
                rows,
                cols,
                symbols: self.order,
            }));
        }
        let cells = (0..rows)
            .flat_map(|r| self.row(r)[..cols].iter().copied())
            .collect();
        Ok(LatinRectangle {
            rows,
            cols,
            symbols: self.order,
            cells,
        })
    }

    fn check_permutation(&self, p: &[usize]) -> Result<()> {
        if is_permutation(p, self.order) {
            Ok(())
        } else {
            Err(Error::BadPermutation {
                len: p.len(),
                order: self.order,
            })
        }
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(
            f,
            self.cells
                .chunks(self.order)
                .map(|r| r.iter().map(|&v| v as usize)),
        )
    }
}

impl From<LatinSquare> for Vec<Vec<usize>> {
    fn from(square: LatinSquare) -> Self {
        square.to_one_based_rows()
    }
}

impl TryFrom<Vec<Vec<usize>>> for LatinSquare {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        LatinSquare::from_one_based(rows)
    }
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        Err(Error::EmptyGrid)
    } else if order > MAX_ORDER {
        Err(Error::OrderTooLarge {
            order,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter()
        .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// An `r x c` array over `s` symbols with no repeat in any row or column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinRectangle {
    rows: usize,
    cols: usize,
    symbols: usize,
    cells: Vec<u8>,
}

impl LatinRectangle {
    pub fn new(grid: Grid, symbols: usize) -> Result<Self> {
        check_order(symbols)?;
        if let Some(w) = rectangle_violation(&grid, symbols) {
            return Err(Error::Violation(w));
        }
        Ok(LatinRectangle {
            rows: grid.rows(),
            cols: grid.cols(),
            symbols,
            cells: grid.cells.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.cols + col] as usize
    }

    pub fn to_grid(&self) -> Grid {
        Grid::from_parts(
            self.rows,
            self.cols,
            self.cells.iter().map(|&v| v as usize).collect(),
        )
    }
}

impl fmt::Display for LatinRectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(
            f,
            self.cells
                .chunks(self.cols)
                .map(|r| r.iter().map(|&v| v as usize)),
        )
    }
}

/// A frequency square `F(n; lambda)`: an `n x n` array over `m = n / lambda`
/// symbols, each occurring exactly `lambda` times per row and column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrequencySquare {
    side: usize,
    multiplicity: usize,
    cells: Vec<u8>,
}

impl FrequencySquare {
    pub fn new(grid: Grid, multiplicity: usize) -> Result<Self> {
        if grid.rows() > MAX_ORDER * MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: grid.rows(),
                max: MAX_ORDER * MAX_ORDER,
            });
        }
        if let Some(w) = frequency_violation(&grid, multiplicity) {
            return Err(Error::Violation(w));
        }
        Ok(FrequencySquare {
            side: grid.rows(),
            multiplicity,
            cells: grid.cells.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub(crate) fn from_cells_unchecked(side: usize, multiplicity: usize, cells: Vec<u8>) -> Self {
        debug_assert!(frequency_violation(
            &Grid::from_parts(side, side, cells.iter().map(|&v| v as usize).collect()),
            multiplicity
        )
        .is_none());
        FrequencySquare {
            side,
            multiplicity,
            cells,
        }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn symbols(&self) -> usize {
        self.side / self.multiplicity
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.side + col] as usize
    }

    pub fn to_grid(&self) -> Grid {
        Grid::from_parts(
            self.side,
            self.side,
            self.cells.iter().map(|&v| v as usize).collect(),
        )
    }
}

impl fmt::Display for FrequencySquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(
            f,
            self.cells
                .chunks(self.side)
                .map(|r| r.iter().map(|&v| v as usize)),
        )
    }
}
