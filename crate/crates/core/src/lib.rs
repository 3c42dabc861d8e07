//! Latin squares, mutually t-orthogonal families and frequency squares:
//! constructions, exact verification and bounded exhaustive search.
//!
//! Symbols are stored 0-based; every text rendering and serialized index is
//! 1-based.

pub mod construct;
mod error;
mod family;
pub mod io;
pub mod search;
mod square;
mod tuple;
pub mod verify;

pub use construct::{Built, ConstructionSpec};
pub use error::{Error, Result};
pub use family::{superpose_squares, SquareFamily};
pub use search::{SearchBudget, SearchOutcome, Status};
pub use square::{FrequencySquare, Grid, LatinRectangle, LatinSquare, MAX_ORDER};
pub use tuple::{OrthoReport, TupleArray, TupleClasses};
pub use verify::{Cell, Line, Verdict, Witness};
