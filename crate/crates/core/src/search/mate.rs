use std::time::Instant;

use super::budget::{
    combine_subtrees, Meter, Payload, SearchBudget, SearchOutcome, SearchQuery, Status, Subtree,
};
use crate::square::LatinSquare;

/// Finds a Latin square orthogonal to `square`, or proves none exists.
///
/// Any mate can be relabeled to have its first row in natural order, so
/// only such mates are searched. Cells are filled row-major with symbols
/// tried in ascending order; the fillings of the second row form the
/// independent subtrees. Serial and parallel runs return the same outcome,
/// node count included.
pub fn orthogonal_mate_search(square: &LatinSquare, budget: &SearchBudget) -> SearchOutcome {
    let s = square.order();
    let replay = SearchQuery::Mate {
        square: square.clone(),
    };
    let deadline = Instant::now() + budget.time;
    let mut root = MateState::new(square, budget.nodes, deadline);
    if s == 1 {
        let mate = LatinSquare::from_cells_unchecked(1, vec![0]);
        return SearchOutcome {
            status: Status::Found,
            payload: Payload::Square { square: mate },
            nodes: 0,
            replay,
        };
    }
    let mut prefixes = Vec::new();
    let complete = root.prefixes(s, 2 * s, &mut prefixes);
    let spent = root.meter.nodes;
    if !complete {
        return SearchOutcome {
            status: Status::BudgetExhausted,
            payload: Payload::None,
            nodes: spent,
            replay,
        };
    }
    let explore = |i: usize, limit: u64| {
        let mut st = MateState::new(square, limit, deadline);
        for (c, &y) in prefixes[i].iter().enumerate() {
            st.assign(s + c, y);
        }
        let found = st.fill(2 * s);
        Subtree {
            nodes: st.meter.nodes,
            exhausted: st.meter.exhausted,
            hit: found.then(|| st.to_square()),
        }
    };
    let result = combine_subtrees(prefixes.len(), budget, spent, explore);
    let (status, payload) = match result.hit {
        Some((_, mate)) => (Status::Found, Payload::Square { square: mate }),
        None if result.exhausted => (Status::BudgetExhausted, Payload::None),
        None => (Status::ProvenAbsent, Payload::None),
    };
    SearchOutcome {
        status,
        payload,
        nodes: result.nodes,
        replay,
    }
}

struct MateState<'a> {
    s: usize,
    full: u64,
    base: &'a [u8],
    cells: Vec<u8>,
    row: Vec<u64>,
    col: Vec<u64>,
    /// For each symbol of the input square, the mate symbols already paired with it.
    pair: Vec<u64>,
    meter: Meter,
}

impl<'a> MateState<'a> {
    fn new(square: &'a LatinSquare, limit: u64, deadline: Instant) -> Self {
        let s = square.order();
        let full = if s >= 64 { u64::MAX } else { (1u64 << s) - 1 };
        let mut st = MateState {
            s,
            full,
            base: square.cells(),
            cells: vec![0; s * s],
            row: vec![0; s],
            col: vec![0; s],
            pair: vec![0; s],
            meter: Meter::new(limit, deadline),
        };
        for c in 0..s {
            st.assign(c, c as u8);
        }
        st
    }

    #[inline]
    fn free(&self, k: usize) -> u64 {
        let (r, c) = (k / self.s, k % self.s);
        self.full & !self.row[r] & !self.col[c] & !self.pair[self.base[k] as usize]
    }

    #[inline]
    fn assign(&mut self, k: usize, y: u8) {
        let (r, c) = (k / self.s, k % self.s);
        self.cells[k] = y;
        self.row[r] |= 1 << y;
        self.col[c] |= 1 << y;
        self.pair[self.base[k] as usize] |= 1 << y;
    }

    #[inline]
    fn unassign(&mut self, k: usize) {
        let (r, c) = (k / self.s, k % self.s);
        let y = self.cells[k];
        self.row[r] &= !(1 << y);
        self.col[c] &= !(1 << y);
        self.pair[self.base[k] as usize] &= !(1 << y);
    }

    /// Depth-first from cell `k`; true once the mate is complete. On a false
    /// return the meter tells whether the subtree was exhausted or cut short.
    fn fill(&mut self, k: usize) -> bool {
        if k == self.cells.len() {
            return true;
        }
        let mut free = self.free(k);
        while free != 0 {
            let y = free.trailing_zeros() as u8;
            free &= free - 1;
            if !self.meter.tick() {
                return false;
            }
            self.assign(k, y);
            if self.fill(k + 1) {
                return true;
            }
            self.unassign(k);
            if self.meter.exhausted {
                return false;
            }
        }
        false
    }

    /// Collects every consistent filling of cells `k..end`.
    fn prefixes(&mut self, k: usize, end: usize, out: &mut Vec<Vec<u8>>) -> bool {
        if k == end {
            out.push(self.cells[end - self.s..end].to_vec());
            return true;
        }
        let mut free = self.free(k);
        while free != 0 {
            let y = free.trailing_zeros() as u8;
            free &= free - 1;
            if !self.meter.tick() {
                return false;
            }
            self.assign(k, y);
            let ok = self.prefixes(k + 1, end, out);
            self.unassign(k);
            if !ok {
                return false;
            }
        }
        true
    }

    fn to_square(&self) -> LatinSquare {
        LatinSquare::from_cells_unchecked(self.s, self.cells.clone())
    }
}
