use std::collections::HashMap;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;

use super::budget::{with_pool, Meter, Payload, SearchBudget, SearchOutcome, SearchQuery, Status};
use super::enumerate::LatinSquares;
use crate::error::{Error, Result};
use crate::family::SquareFamily;
use crate::square::LatinSquare;
use crate::verify::all_distinct;

/// Largest order [`exhaustive_t_max`] accepts.
pub const MAX_EXHAUSTIVE_ORDER: usize = 4;

/// Largest subset of `candidates` that is mutually `t`-orthogonal.
///
/// Branch-and-bound clique search on the `t`-compatibility hypergraph.
/// Among subsets of maximum size the lexicographically smallest index set
/// is returned. Subsets with fewer than `t` members are admissible.
pub fn max_mutual_subset(
    candidates: &SquareFamily,
    t: usize,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    if t < 2 {
        return Err(Error::BadArity {
            t,
            size: candidates.len(),
        });
    }
    let (best, nodes, exhausted) =
        clique_search(candidates.members(), candidates.order(), t, budget);
    let status = if exhausted {
        Status::BudgetExhausted
    } else {
        Status::Found
    };
    Ok(SearchOutcome {
        status,
        payload: Payload::Subset { indices: best },
        nodes,
        replay: SearchQuery::MaxSubset {
            t,
            candidates: candidates.provenance().clone(),
        },
    })
}

/// Largest mutually `t`-orthogonal family over all Latin squares of order
/// `s <= 4`.
///
/// Relabeling one member never changes whether a family is mutually
/// `t`-orthogonal, and `t` relabelings of one square never are. So each
/// square with natural first row stands for its class, available up to
/// `t - 1` times under distinct relabelings.
pub fn exhaustive_t_max(order: usize, t: usize, budget: &SearchBudget) -> Result<SearchOutcome> {
    if order > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    if t < 2 {
        return Err(Error::BadArity { t, size: 0 });
    }
    let normalized: Vec<LatinSquare> = LatinSquares::new(order)?
        .filter(|sq| sq.row(0).iter().enumerate().all(|(c, &v)| v as usize == c))
        .collect();
    let relabelings: Vec<Vec<usize>> = (0..order).permutations(order).take(t - 1).collect();
    let mut candidates = Vec::new();
    for sq in &normalized {
        for sigma in &relabelings {
            candidates.push(sq.relabel(sigma)?);
        }
    }
    let (best, nodes, exhausted) = clique_search(&candidates, order, t, budget);
    let status = if exhausted {
        Status::BudgetExhausted
    } else {
        Status::Found
    };
    Ok(SearchOutcome {
        status,
        payload: Payload::Family {
            squares: best.iter().map(|&i| candidates[i].clone()).collect(),
        },
        nodes,
        replay: SearchQuery::ExhaustiveTMax { order, t },
    })
}

struct Compat<'a> {
    members: &'a [LatinSquare],
    order: usize,
    t: usize,
    pairs: Vec<bool>,
    memo: HashMap<Vec<usize>, bool>,
}

impl<'a> Compat<'a> {
    fn new(members: &'a [LatinSquare], order: usize, t: usize, threads: Option<usize>) -> Self {
        let n = members.len();
        let pairs = if t == 2 {
            with_pool(threads, || {
                (0..n * n)
                    .into_par_iter()
                    .map(|k| {
                        let (a, b) = (k / n, k % n);
                        a != b && all_distinct(order, &[&members[a], &members[b]])
                    })
                    .collect()
            })
        } else {
            Vec::new()
        };
        Compat {
            members,
            order,
            t,
            pairs,
            memo: HashMap::new(),
        }
    }

    fn holds(&mut self, subset: Vec<usize>) -> bool {
        if self.t == 2 {
            return self.pairs[subset[0] * self.members.len() + subset[1]];
        }
        if let Some(&v) = self.memo.get(&subset) {
            return v;
        }
        let squares: Vec<&LatinSquare> = subset.iter().map(|&i| &self.members[i]).collect();
        let v = all_distinct(self.order, &squares);
        self.memo.insert(subset, v);
        v
    }

    /// `u` may join `chosen`, given it was compatible before the last
    /// member of `chosen` was added: every `t`-subset through both the
    /// newest member and `u` must hold.
    fn admits(&mut self, chosen: &[usize], u: usize) -> bool {
        if chosen.len() + 1 < self.t {
            return true;
        }
        let (&newest, rest) = chosen.split_last().expect("nonempty");
        for combo in rest.iter().copied().combinations(self.t - 2) {
            let mut subset = combo;
            subset.push(newest);
            subset.push(u);
            subset.sort_unstable();
            if !self.holds(subset) {
                return false;
            }
        }
        true
    }
}

fn clique_search(
    members: &[LatinSquare],
    order: usize,
    t: usize,
    budget: &SearchBudget,
) -> (Vec<usize>, u64, bool) {
    let mut compat = Compat::new(members, order, t, budget.threads);
    let mut meter = Meter::new(budget.nodes, Instant::now() + budget.time);
    let mut best = Vec::new();
    let all: Vec<usize> = (0..members.len()).collect();
    extend(&mut compat, &mut meter, &mut Vec::new(), &all, &mut best);
    (best, meter.nodes, meter.exhausted)
}

fn extend(
    compat: &mut Compat,
    meter: &mut Meter,
    chosen: &mut Vec<usize>,
    cands: &[usize],
    best: &mut Vec<usize>,
) {
    if chosen.len() > best.len() {
        best.clone_from(chosen);
    }
    for (pos, &v) in cands.iter().enumerate() {
        if chosen.len() + cands.len() - pos <= best.len() || !meter.tick() {
            return;
        }
        chosen.push(v);
        let next: Vec<usize> = cands[pos + 1..]
            .iter()
            .copied()
            .filter(|&u| compat.admits(chosen, u))
            .collect();
        extend(compat, meter, chosen, &next, best);
        chosen.pop();
        if meter.exhausted {
            return;
        }
    }
}
