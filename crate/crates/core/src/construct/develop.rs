use crate::construct::ConstructionSpec;
use crate::error::{Error, Result};
use crate::family::SquareFamily;
use crate::square::{check_order, is_permutation, LatinSquare};

/// First rows of four published order-15 squares, 1-based. Each develops
/// cyclically modulo 15.
pub const ORDER_15_FIRST_ROWS: [[usize; 15]; 4] = [
    [1, 15, 2, 14, 3, 13, 4, 12, 5, 11, 6, 10, 7, 9, 8],
    [1, 14, 3, 11, 6, 9, 8, 7, 10, 4, 13, 12, 5, 15, 2],
    [1, 10, 7, 13, 4, 2, 15, 6, 11, 9, 8, 3, 14, 12, 5],
    [1, 6, 11, 10, 7, 15, 2, 5, 12, 14, 3, 9, 8, 4, 13],
];

/// Row `k` holds `((first_row[j] - 1 + k) mod n) + 1`. `first_row` is
/// 1-based and must be a permutation of `1..=n`.
pub fn develop_cyclic(first_row: &[usize]) -> Result<LatinSquare> {
    let n = first_row.len();
    check_order(n)?;
    let zero_based: Option<Vec<usize>> = first_row.iter().map(|v| v.checked_sub(1)).collect();
    let row = match zero_based {
        Some(r) if is_permutation(&r, n) => r,
        _ => return Err(Error::NotPermutation(n)),
    };
    let cells = (0..n)
        .flat_map(|k| row.iter().map(move |&v| ((v + k) % n) as u8))
        .collect();
    Ok(LatinSquare::from_cells_unchecked(n, cells))
}

pub fn develop_family(first_rows: &[Vec<usize>]) -> Result<SquareFamily> {
    let members = first_rows
        .iter()
        .map(|r| develop_cyclic(r))
        .collect::<Result<Vec<_>>>()?;
    SquareFamily::new(
        members,
        ConstructionSpec::CyclicDevelopment {
            first_rows: first_rows.to_vec(),
        },
    )
}
