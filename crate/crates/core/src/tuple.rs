//! Superposition of squares into arrays of ordered tuples.

use serde::{Deserialize, Serialize};

use crate::verify::{Cell, Witness};

/// The `s x s` array of ordered `t`-tuples obtained by superposing `t`
/// squares of order `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleArray {
    order: usize,
    arity: usize,
    // cell-major: the tuple of cell i is cells[i*arity..(i+1)*arity]
    cells: Vec<u8>,
}

impl TupleArray {
    pub(crate) fn from_members(order: usize, members: &[&[u8]]) -> Self {
        let arity = members.len();
        let mut cells = Vec::with_capacity(order * order * arity);
        for i in 0..order * order {
            cells.extend(members.iter().map(|m| m[i]));
        }
        TupleArray {
            order,
            arity,
            cells,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuple(&self, row: usize, col: usize) -> &[u8] {
        let i = (row * self.order + col) * self.arity;
        &self.cells[i..i + self.arity]
    }

    pub fn tuples(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.arity)
    }

    pub fn distinct_count(&self) -> usize {
        self.classes().distinct
    }

    pub fn classes(&self) -> TupleClasses {
        classify(self.order, self.arity, |k, i| {
            self.cells[i * self.arity + k] as usize
        })
    }

    /// True when every tuple has either all entries equal or all distinct.
    pub fn all_same_or_distinct(&self) -> bool {
        self.tuples().all(|t| {
            let mut mask = 0u64;
            for &v in t {
                mask |= 1 << v;
            }
            let ones = mask.count_ones() as usize;
            ones == 1 || ones == t.len()
        })
    }

    /// Renders row by row, tuples 1-based and comma separated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|c| {
                    let t: Vec<String> = self
                        .tuple(r, c)
                        .iter()
                        .map(|v| (v + 1).to_string())
                        .collect();
                    format!("({})", t.join(","))
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Equivalence classes of cells with equal tuples. Class ids are numbered
/// in order of first occurrence in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleClasses {
    pub ids: Vec<u32>,
    pub distinct: usize,
}

impl TupleClasses {
    /// The lexicographically first pair of cells `(first, second)` holding
    /// equal tuples, if any.
    pub fn first_collision(&self, order: usize) -> Option<(Cell, Cell)> {
        if self.distinct == self.ids.len() {
            return None;
        }
        let mut first = vec![usize::MAX; self.distinct];
        let mut second = vec![usize::MAX; self.distinct];
        for (i, &id) in self.ids.iter().enumerate() {
            let id = id as usize;
            if first[id] == usize::MAX {
                first[id] = i;
            } else if second[id] == usize::MAX {
                second[id] = i;
            }
        }
        // first occurrences increase with id, so the smallest repeated id
        // has the smallest first cell
        let id = (0..self.distinct).find(|&id| second[id] != usize::MAX)?;
        Some((
            Cell::from_index(first[id], order),
            Cell::from_index(second[id], order),
        ))
    }
}

/// Distinctness of the `order^2` tuples whose `k`-th entry at cell `i` is
/// `symbol(k, i)`.
///
/// Each tuple's mixed-radix code (base `order`) is folded in one coordinate
/// at a time and re-ranked after every step, so codes never exceed
/// `order^3` whatever the arity.
pub(crate) fn classify(
    order: usize,
    arity: usize,
    symbol: impl Fn(usize, usize) -> usize,
) -> TupleClasses {
    let n = order * order;
    let mut ids = vec![0u32; n];
    let mut distinct = 1usize;
    let mut table = vec![u32::MAX; n * order];
    let mut keys = vec![0usize; n];
    for k in 0..arity {
        if distinct == n {
            break;
        }
        let mut next = 0u32;
        for (i, (id, key)) in ids.iter_mut().zip(keys.iter_mut()).enumerate() {
            *key = *id as usize * order + symbol(k, i);
            if table[*key] == u32::MAX {
                table[*key] = next;
                next += 1;
            }
            *id = table[*key];
        }
        for &key in &keys {
            table[key] = u32::MAX;
        }
        distinct = next as usize;
    }
    TupleClasses { ids, distinct }
}

/// Verdict bundle for the superposition of `arity` squares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoReport {
    pub arity: usize,
    pub order: usize,
    pub distinct: usize,
    pub defect: usize,
    #[serde(rename = "holds")]
    pub is_t_orthogonal: bool,
    pub witness: Option<Witness>,
    pub all_same_or_distinct: bool,
}

impl OrthoReport {
    pub fn from_tuples(tuples: &TupleArray) -> Self {
        let classes = tuples.classes();
        let cells = tuples.order * tuples.order;
        let witness = classes
            .first_collision(tuples.order)
            .map(|(first, second)| Witness::TupleCollision {
                first,
                second,
                tuple: tuples
                    .tuple(first.row, first.col)
                    .iter()
                    .map(|&v| v as usize)
                    .collect(),
            });
        OrthoReport {
            arity: tuples.arity,
            order: tuples.order,
            distinct: classes.distinct,
            defect: cells - classes.distinct,
            is_t_orthogonal: classes.distinct == cells,
            witness,
            all_same_or_distinct: tuples.all_same_or_distinct(),
        }
    }

    pub fn collision(&self) -> Option<(Cell, Cell)> {
        match self.witness {
            Some(Witness::TupleCollision { first, second, .. }) => Some((first, second)),
            _ => None,
        }
    }
}
