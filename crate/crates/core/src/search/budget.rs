use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::ConstructionSpec;
use crate::error::{Error, Result};
use crate::square::LatinSquare;

/// Limits for a search. Running out yields [`Status::BudgetExhausted`],
/// never a silently truncated answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub nodes: u64,
    #[serde(with = "secs")]
    pub time: Duration,
    /// Worker threads; `None` or `Some(1)` searches on the calling thread.
    pub threads: Option<usize>,
}

mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            nodes: 1_000_000_000,
            time: Duration::from_secs(300),
            threads: None,
        }
    }
}

impl SearchBudget {
    pub fn new(nodes: u64, time: Duration) -> Result<Self> {
        if nodes == 0 || time.is_zero() {
            return Err(Error::BadSpec {
                spec: format!("budget nodes={nodes} secs={}", time.as_secs_f64()),
                reason: "limits must be positive".into(),
            });
        }
        Ok(SearchBudget {
            nodes,
            time,
            threads: None,
        })
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads.max(1));
        self
    }

    pub fn nodes(nodes: u64) -> Self {
        SearchBudget {
            nodes,
            ..SearchBudget::default()
        }
    }

    pub(crate) fn parallel(&self) -> bool {
        self.threads.is_some_and(|t| t > 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Found,
    /// The whole search space was traversed without a hit.
    ProvenAbsent,
    BudgetExhausted,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Found => "found",
            Status::ProvenAbsent => "proven-absent",
            Status::BudgetExhausted => "budget-exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    None,
    Count {
        count: u64,
    },
    Square {
        square: LatinSquare,
    },
    Squares {
        squares: Vec<LatinSquare>,
    },
    /// Member indices, 1-based when serialized.
    Subset {
        #[serde(with = "crate::verify::one_based")]
        indices: Vec<usize>,
    },
    Family {
        squares: Vec<LatinSquare>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMode {
    CountAll,
    CountReduced,
    Stream,
}

/// What was searched, in enough detail to run it again.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "search", rename_all = "kebab-case")]
pub enum SearchQuery {
    Enumerate {
        order: usize,
        mode: EnumerationMode,
    },
    Mate {
        square: LatinSquare,
    },
    MaxSubset {
        t: usize,
        candidates: ConstructionSpec,
    },
    ExhaustiveTMax {
        order: usize,
        t: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: Status,
    pub payload: Payload,
    pub nodes: u64,
    pub replay: SearchQuery,
}

/// Node and time accounting for one sequential walk.
pub(crate) struct Meter {
    pub nodes: u64,
    limit: u64,
    deadline: Instant,
    pub exhausted: bool,
}

impl Meter {
    pub fn new(limit: u64, deadline: Instant) -> Self {
        Meter {
            nodes: 0,
            limit,
            deadline,
            exhausted: false,
        }
    }

    /// Counts one node; false once either limit is hit.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.nodes >= self.limit {
            self.exhausted = true;
            return false;
        }
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && Instant::now() >= self.deadline {
            self.exhausted = true;
            return false;
        }
        true
    }
}

/// Result of one independent subtree.
pub(crate) struct Subtree<T> {
    pub nodes: u64,
    pub exhausted: bool,
    pub hit: Option<T>,
}

/// Runs `explore` over every subtree and combines the results as a
/// sequential walk in subtree order would: nodes are summed up to and
/// including the first subtree that hits or exhausts the budget.
///
/// `explore(i, limit)` searches subtree `i` with a node limit. Subtrees are
/// run in parallel when the budget asks for it; subtrees after a known hit
/// are abandoned since they cannot change the combined result.
pub(crate) fn combine_subtrees<T, F>(
    count: usize,
    budget: &SearchBudget,
    spent: u64,
    explore: F,
) -> Subtree<(usize, T)>
where
    T: Send,
    F: Fn(usize, u64) -> Subtree<T> + Sync,
{
    let remaining = budget.nodes.saturating_sub(spent);
    let mut total = spent;
    if !budget.parallel() {
        for i in 0..count {
            let left = budget.nodes.saturating_sub(total);
            let sub = explore(i, left);
            total += sub.nodes;
            if sub.exhausted || sub.hit.is_some() {
                return Subtree {
                    nodes: total,
                    exhausted: sub.exhausted,
                    hit: sub.hit.map(|h| (i, h)),
                };
            }
        }
        return Subtree {
            nodes: total,
            exhausted: false,
            hit: None,
        };
    }
    let first_hit = AtomicUsize::new(usize::MAX);
    let run = || {
        (0..count)
            .into_par_iter()
            .map(|i| {
                if i > first_hit.load(Ordering::Relaxed) {
                    return None;
                }
                let sub = explore(i, remaining);
                if sub.hit.is_some() {
                    first_hit.fetch_min(i, Ordering::Relaxed);
                }
                Some(sub)
            })
            .collect::<Vec<_>>()
    };
    let results = with_pool(budget.threads, run);
    for (i, sub) in results.into_iter().enumerate() {
        let sub = sub.expect("subtrees before the first hit are always explored");
        if total + sub.nodes > budget.nodes || (sub.exhausted && sub.hit.is_none()) {
            return Subtree {
                nodes: (total + sub.nodes).min(budget.nodes),
                exhausted: true,
                hit: None,
            };
        }
        total += sub.nodes;
        if let Some(h) = sub.hit {
            return Subtree {
                nodes: total,
                exhausted: false,
                hit: Some((i, h)),
            };
        }
    }
    Subtree {
        nodes: total,
        exhausted: false,
        hit: None,
    }
}

pub(crate) fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}
