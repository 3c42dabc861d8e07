//! Exact decision procedures over grids, squares and families.

pub(crate) mod latin;
mod ortho;
mod verdict;

pub use latin::{is_frequency, is_latin, is_rectangle};
pub(crate) use ortho::{all_distinct, first_failing_subset};
pub use ortho::{
    defect, freq_orthogonal, min_orthogonality_degree, mutually_t_orthogonal, self_orthogonal,
    t_orthogonal, t_orthogonal_squares,
};
pub(crate) use verdict::one_based;
pub use verdict::{Cell, Line, Verdict, Witness};
