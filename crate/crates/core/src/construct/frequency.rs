use crate::error::{Error, Result};
use crate::square::{FrequencySquare, LatinSquare};

/// Replaces each cell of `base` by a `lambda x lambda` block of its symbol,
/// giving an `F(m lambda; lambda)` over the `m` symbols of `base`.
pub fn inflate_frequency(base: &LatinSquare, lambda: usize) -> Result<FrequencySquare> {
    if lambda == 0 {
        return Err(Error::MultiplierOutOfRange {
            h: 0,
            order: base.order(),
        });
    }
    let n = base.order() * lambda;
    let cells = (0..n * n)
        .map(|k| base.get(k / n / lambda, k % n / lambda) as u8)
        .collect();
    Ok(FrequencySquare::from_cells_unchecked(n, lambda, cells))
}

/// Maps symbol `x` of `base` to class `classes[x]`. Classes must be
/// numbered `0..k` and all hold the same number of symbols.
pub fn collapse_symbols(base: &LatinSquare, classes: &[usize]) -> Result<FrequencySquare> {
    let m = base.order();
    if classes.len() != m {
        return Err(Error::BadPermutation {
            len: classes.len(),
            order: m,
        });
    }
    let k = classes.iter().max().map_or(0, |c| c + 1);
    let mut sizes = vec![0usize; k];
    for &c in classes {
        sizes[c] += 1;
    }
    let lambda = sizes[0];
    if sizes.iter().any(|&s| s != lambda) {
        return Err(Error::UnevenClasses);
    }
    let cells = base
        .cells()
        .iter()
        .map(|&v| classes[v as usize] as u8)
        .collect();
    Ok(FrequencySquare::from_cells_unchecked(m, lambda, cells))
}
