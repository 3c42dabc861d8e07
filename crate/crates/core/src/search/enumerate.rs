use std::time::Instant;

use rayon::prelude::*;

use super::budget::{
    with_pool, EnumerationMode, Meter, Payload, SearchBudget, SearchOutcome, SearchQuery, Status,
};
use crate::error::{Error, Result};
use crate::square::{LatinSquare, MAX_ORDER};

/// Largest order the counting modes accept.
pub const MAX_COUNT_ORDER: usize = 7;

/// Enumerates or counts the Latin squares of order `s`.
///
/// `CountAll` counts every square, `CountReduced` those with first row and
/// column in natural order, and `Stream` collects every square in
/// lexicographic row-major order until the budget runs out.
pub fn enumerate_latin(
    order: usize,
    mode: EnumerationMode,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    if order == 0 {
        return Err(Error::EmptyGrid);
    }
    let replay = SearchQuery::Enumerate { order, mode };
    if mode == EnumerationMode::Stream {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        let deadline = Instant::now() + budget.time;
        let mut squares = Vec::new();
        let mut stream = LatinSquares::new(order)?;
        let exhausted = loop {
            if Instant::now() >= deadline {
                break true;
            }
            match stream.next_within(budget.nodes) {
                Some(sq) => squares.push(sq),
                None => break !stream.finished(),
            }
        };
        let status = if exhausted {
            Status::BudgetExhausted
        } else {
            Status::Found
        };
        return Ok(SearchOutcome {
            status,
            payload: Payload::Squares { squares },
            nodes: stream.nodes(),
            replay,
        });
    }
    if order > MAX_COUNT_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: MAX_COUNT_ORDER,
        });
    }
    // Up to order 6 count squares with a fixed first row and multiply by the
    // relabelings; order 7 counts reduced squares and multiplies by s!(s-1)!.
    let s = order as u64;
    let fact = |n: u64| (1..=n).product::<u64>();
    let (reduced, factor) = match mode {
        EnumerationMode::CountReduced => (true, 1),
        _ if order <= 6 => (false, fact(s)),
        _ => (true, fact(s) * fact(s - 1)),
    };
    let (count, nodes, exhausted) = count_squares(order, reduced, budget);
    let status = if exhausted {
        Status::BudgetExhausted
    } else {
        Status::Found
    };
    Ok(SearchOutcome {
        status,
        payload: Payload::Count {
            count: count * factor,
        },
        nodes,
        replay,
    })
}

struct Counter {
    s: usize,
    full: u64,
    first_col: usize,
    row: Vec<u64>,
    col: Vec<u64>,
    meter: Meter,
}

impl Counter {
    fn new(s: usize, reduced: bool, limit: u64, deadline: Instant) -> Self {
        let full = full_mask(s);
        let mut row = vec![0u64; s];
        let mut col = vec![0u64; s];
        row[0] = full;
        for (c, m) in col.iter_mut().enumerate() {
            *m = 1 << c;
        }
        if reduced {
            for (r, m) in row.iter_mut().enumerate().skip(1) {
                *m |= 1 << r;
                col[0] |= 1 << r;
            }
        }
        Counter {
            s,
            full,
            first_col: usize::from(reduced),
            row,
            col,
            meter: Meter::new(limit, deadline),
        }
    }

    fn set(&mut self, r: usize, c: usize, y: u32) {
        self.row[r] |= 1 << y;
        self.col[c] |= 1 << y;
    }

    fn unset(&mut self, r: usize, c: usize, y: u32) {
        self.row[r] &= !(1 << y);
        self.col[c] &= !(1 << y);
    }

    /// Completions from cell `(r, c)` onward; `None` when the budget ran out.
    /// The final row of a Latin rectangle with one missing row is forced.
    fn count(&mut self, r: usize, c: usize) -> Option<u64> {
        if r + 1 >= self.s {
            return Some(1);
        }
        if c == self.s {
            return self.count(r + 1, self.first_col);
        }
        let mut free = self.full & !self.row[r] & !self.col[c];
        let mut total = 0;
        while free != 0 {
            let y = free.trailing_zeros();
            free &= free - 1;
            if !self.meter.tick() {
                return None;
            }
            self.set(r, c, y);
            let sub = self.count(r, c + 1);
            self.unset(r, c, y);
            total += sub?;
        }
        Some(total)
    }

    /// All fillings of row 1, which seed the independent subtrees.
    fn row_prefixes(&mut self, c: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) -> bool {
        if c == self.s {
            out.push(current.clone());
            return true;
        }
        let mut free = self.full & !self.row[1] & !self.col[c];
        while free != 0 {
            let y = free.trailing_zeros();
            free &= free - 1;
            if !self.meter.tick() {
                return false;
            }
            self.set(1, c, y);
            current.push(y);
            let ok = self.row_prefixes(c + 1, current, out);
            current.pop();
            self.unset(1, c, y);
            if !ok {
                return false;
            }
        }
        true
    }
}

fn full_mask(s: usize) -> u64 {
    if s >= 64 {
        u64::MAX
    } else {
        (1u64 << s) - 1
    }
}

/// Returns `(count, nodes, exhausted)`. On exhaustion the count covers only
/// the subtrees that were completed.
fn count_squares(s: usize, reduced: bool, budget: &SearchBudget) -> (u64, u64, bool) {
    let deadline = Instant::now() + budget.time;
    if s <= 2 {
        return (1, 0, false);
    }
    let mut root = Counter::new(s, reduced, budget.nodes, deadline);
    let first_col = root.first_col;
    let mut prefixes = Vec::new();
    if !root.row_prefixes(first_col, &mut Vec::new(), &mut prefixes) {
        return (0, root.meter.nodes, true);
    }
    let spent = root.meter.nodes;
    let explore = |prefix: &Vec<u32>, limit: u64| {
        let mut ctr = Counter::new(s, reduced, limit, deadline);
        for (k, &y) in prefix.iter().enumerate() {
            ctr.set(1, first_col + k, y);
        }
        let count = ctr.count(2, first_col);
        (ctr.meter.nodes, count)
    };
    let mut total_nodes = spent;
    let mut total = 0u64;
    if budget.parallel() {
        let remaining = budget.nodes - spent;
        let results: Vec<_> = with_pool(budget.threads, || {
            prefixes.par_iter().map(|p| explore(p, remaining)).collect()
        });
        for (nodes, count) in results {
            match count {
                Some(c) if total_nodes + nodes <= budget.nodes => {
                    total_nodes += nodes;
                    total += c;
                }
                _ => return (total, (total_nodes + nodes).min(budget.nodes), true),
            }
        }
    } else {
        for p in &prefixes {
            let (nodes, count) = explore(p, budget.nodes - total_nodes);
            total_nodes += nodes;
            match count {
                Some(c) => total += c,
                None => return (total, total_nodes, true),
            }
        }
    }
    (total, total_nodes, false)
}

/// Every Latin square of one order, in lexicographic row-major order.
pub struct LatinSquares {
    s: usize,
    full: u64,
    cells: Vec<u8>,
    next: Vec<u32>,
    row: Vec<u64>,
    col: Vec<u64>,
    pos: usize,
    nodes: u64,
    done: bool,
}

impl LatinSquares {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyGrid);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        let n = order * order;
        Ok(LatinSquares {
            s: order,
            full: full_mask(order),
            cells: vec![0; n],
            next: vec![0; n],
            row: vec![0; order],
            col: vec![0; order],
            pos: 0,
            nodes: 0,
            done: false,
        })
    }

    /// Symbol placements tried so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn finished(&self) -> bool {
        self.done
    }

    fn unassign(&mut self, k: usize) {
        let (r, c) = (k / self.s, k % self.s);
        let y = self.cells[k];
        self.row[r] &= !(1 << y);
        self.col[c] &= !(1 << y);
    }

    /// Advances to the next square, giving up (without finishing) once
    /// `limit` nodes have been spent.
    pub fn next_within(&mut self, limit: u64) -> Option<LatinSquare> {
        let n = self.s * self.s;
        if self.done {
            return None;
        }
        if self.pos == n {
            self.pos -= 1;
            self.unassign(self.pos);
        }
        loop {
            let k = self.pos;
            let (r, c) = (k / self.s, k % self.s);
            let above = u64::MAX.checked_shl(self.next[k]).unwrap_or(0);
            let free = self.full & !self.row[r] & !self.col[c] & above;
            if free != 0 {
                if self.nodes >= limit {
                    return None;
                }
                self.nodes += 1;
                let y = free.trailing_zeros();
                self.cells[k] = y as u8;
                self.row[r] |= 1 << y;
                self.col[c] |= 1 << y;
                self.next[k] = y + 1;
                self.pos += 1;
                if self.pos == n {
                    return Some(LatinSquare::from_cells_unchecked(
                        self.s,
                        self.cells.clone(),
                    ));
                }
                self.next[self.pos] = 0;
            } else {
                self.next[k] = 0;
                if k == 0 {
                    self.done = true;
                    return None;
                }
                self.pos -= 1;
                self.unassign(self.pos);
            }
        }
    }
}

impl Iterator for LatinSquares {
    type Item = LatinSquare;

    fn next(&mut self) -> Option<LatinSquare> {
        self.next_within(u64::MAX)
    }
}
