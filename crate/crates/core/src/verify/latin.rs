use crate::square::Grid;
use crate::verify::{Cell, Line, Verdict, Witness};

/// Latin square check: square grid, symbols in `0..order`, no repeats in
/// any row or column.
pub fn is_latin(grid: &Grid) -> Verdict {
    Verdict::from_witness(latin_violation(grid))
}

/// Latin rectangle check over `symbols` symbols.
pub fn is_rectangle(grid: &Grid, symbols: usize) -> Verdict {
    Verdict::from_witness(rectangle_violation(grid, symbols))
}

/// Frequency square check: every symbol of `0..side/multiplicity` occurs
/// exactly `multiplicity` times in each row and column.
pub fn is_frequency(grid: &Grid, multiplicity: usize) -> Verdict {
    Verdict::from_witness(frequency_violation(grid, multiplicity))
}

pub(crate) fn latin_violation(grid: &Grid) -> Option<Witness> {
    if grid.rows() != grid.cols() {
        return Some(Witness::NotSquare {
            rows: grid.rows(),
            cols: grid.cols(),
        });
    }
    first_repeat(grid, grid.rows())
}

pub(crate) fn rectangle_violation(grid: &Grid, symbols: usize) -> Option<Witness> {
    if grid.rows() > symbols || grid.cols() > symbols {
        return Some(Witness::TooLarge {
            rows: grid.rows(),
            cols: grid.cols(),
            symbols,
        });
    }
    first_repeat(grid, symbols)
}

/// Row-major scan. Each cell is checked for range, then for a repeat
/// higher up its column, then for a repeat earlier in its row.
fn first_repeat(grid: &Grid, symbols: usize) -> Option<Witness> {
    const UNSEEN: usize = usize::MAX;
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut col_seen = vec![UNSEEN; cols * symbols];
    let mut row_seen = vec![UNSEEN; symbols];
    for r in 0..rows {
        row_seen.fill(UNSEEN);
        for c in 0..cols {
            let symbol = grid.get(r, c);
            let cell = Cell::new(r, c);
            if symbol >= symbols {
                return Some(Witness::SymbolOutOfRange { cell, symbol });
            }
            let above = col_seen[c * symbols + symbol];
            if above != UNSEEN {
                return Some(Witness::ColDuplicate {
                    first: Cell::new(above, c),
                    second: cell,
                    symbol,
                });
            }
            let left = row_seen[symbol];
            if left != UNSEEN {
                return Some(Witness::RowDuplicate {
                    first: Cell::new(r, left),
                    second: cell,
                    symbol,
                });
            }
            col_seen[c * symbols + symbol] = r;
            row_seen[symbol] = c;
        }
    }
    None
}

pub(crate) fn frequency_violation(grid: &Grid, multiplicity: usize) -> Option<Witness> {
    let n = grid.rows();
    if n != grid.cols() {
        return Some(Witness::NotSquare {
            rows: n,
            cols: grid.cols(),
        });
    }
    if multiplicity == 0 || !n.is_multiple_of(multiplicity) {
        return Some(Witness::NotDivisible {
            side: n,
            multiplicity,
        });
    }
    let symbols = n / multiplicity;
    for r in 0..n {
        for c in 0..n {
            let symbol = grid.get(r, c);
            if symbol >= symbols {
                return Some(Witness::SymbolOutOfRange {
                    cell: Cell::new(r, c),
                    symbol,
                });
            }
        }
    }
    let mut counts = vec![0usize; symbols];
    for (line, at) in [
        (
            Line::Row,
            &(|i, k| grid.get(i, k)) as &dyn Fn(usize, usize) -> usize,
        ),
        (Line::Column, &|i, k| grid.get(k, i)),
    ] {
        for index in 0..n {
            counts.fill(0);
            for k in 0..n {
                counts[at(index, k)] += 1;
            }
            if let Some((symbol, &count)) =
                counts.iter().enumerate().find(|(_, &c)| c != multiplicity)
            {
                return Some(Witness::CountMismatch {
                    line,
                    index,
                    symbol,
                    count,
                    expected: multiplicity,
                });
            }
        }
    }
    None
}
