//! Backtracking searches. Every search takes a [`SearchBudget`] and reports
//! a [`SearchOutcome`] whose status says whether the answer is complete.

mod budget;
mod enumerate;
mod mate;
mod probe;
mod subset;

pub use budget::{EnumerationMode, Payload, SearchBudget, SearchOutcome, SearchQuery, Status};
pub use enumerate::{enumerate_latin, LatinSquares, MAX_COUNT_ORDER};
pub use mate::orthogonal_mate_search;
pub use probe::{conjecture_probe, ConverseWitness, StaircaseReport, StaircaseStep};
pub use subset::{exhaustive_t_max, max_mutual_subset, MAX_EXHAUSTIVE_ORDER};
