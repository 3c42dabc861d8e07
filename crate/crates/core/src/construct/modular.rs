//! Modular constructions `(i + h j) mod s`, `(i - h j) mod s` and
//! `(i j) mod (s + 1)`, with 1-based `i, j` and the residue 0 printed as
//! the modulus.

use crate::construct::ConstructionSpec;
use crate::error::{Error, Result};
use crate::family::SquareFamily;
use crate::square::{check_order, Grid, LatinSquare};
use crate::verify::{is_latin, Cell, Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// The square with 1-based cell `(i, j)` equal to `(i ± h j) mod s`.
pub fn modular_additive(order: usize, h: usize, sign: Sign) -> Result<LatinSquare> {
    check_order(order)?;
    let valid_range = if order == 1 {
        h == 1
    } else {
        (1..order).contains(&h)
    };
    if !valid_range {
        return Err(if h == 0 || h.is_multiple_of(order) {
            Error::NotCoprime { h, order }
        } else {
            Error::MultiplierOutOfRange { h, order }
        });
    }
    if gcd(h, order) != 1 {
        return Err(Error::NotCoprime { h, order });
    }
    let s = order;
    let mut cells = Vec::with_capacity(s * s);
    for i in 1..=s {
        for j in 1..=s {
            let hj = h * j % s;
            let v = match sign {
                Sign::Plus => (i + hj) % s,
                Sign::Minus => (i + s - hj) % s,
            };
            // residue v prints as v, or as s when v = 0
            cells.push(((v + s - 1) % s) as u8);
        }
    }
    Ok(LatinSquare::from_cells_unchecked(s, cells))
}

/// Multipliers `1..s` coprime to `s`, ascending (`[1]` for `s = 1`).
pub fn coprime_multipliers(order: usize) -> Vec<usize> {
    if order == 1 {
        return vec![1];
    }
    (1..order).filter(|&h| gcd(h, order) == 1).collect()
}

/// `modular_additive(s, h, Plus)` for every admissible `h`, ascending.
pub fn additive_family(order: usize) -> Result<SquareFamily> {
    additive_family_with(order, &coprime_multipliers(order), Sign::Plus)
}

pub fn subtractive_family(order: usize) -> Result<SquareFamily> {
    additive_family_with(order, &coprime_multipliers(order), Sign::Minus)
}

pub(crate) fn additive_family_with(order: usize, hs: &[usize], sign: Sign) -> Result<SquareFamily> {
    let members = hs
        .iter()
        .map(|&h| modular_additive(order, h, sign))
        .collect::<Result<Vec<_>>>()?;
    let provenance = match sign {
        Sign::Plus => ConstructionSpec::Additive {
            order,
            h: hs.to_vec(),
        },
        Sign::Minus => ConstructionSpec::Subtractive {
            order,
            h: hs.to_vec(),
        },
    };
    SquareFamily::new(members, provenance)
}

/// The grid `(i j) mod (s + 1)` with its Latin verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeGrid {
    modulus: usize,
    grid: Grid,
    verdict: Verdict,
}

impl MultiplicativeGrid {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Residue `r` is stored as symbol `r - 1`; the residue 0 (possible only
    /// for composite moduli) is stored as `s` and prints as `s + 1`.
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Fails with the first column (left to right) that repeats a residue.
    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn is_latin(&self) -> bool {
        self.verdict.holds()
    }

    /// The Latin square, or the column-repeat witness as an error.
    pub fn into_square(self) -> Result<LatinSquare> {
        match self.verdict.into_witness() {
            None => LatinSquare::new(self.grid),
            Some(w) => Err(Error::Violation(w)),
        }
    }
}

/// The 1-based grid `(i j) mod (s + 1)`. Latin exactly when `s + 1` is
/// prime; otherwise the repeats are reported rather than raised.
pub fn modular_multiplicative(order: usize) -> Result<MultiplicativeGrid> {
    check_order(order)?;
    let n = order + 1;
    let cells = (0..order * order)
        .map(|k| {
            let residue = (k / order + 1) * (k % order + 1) % n;
            if residue == 0 {
                order
            } else {
                residue - 1
            }
        })
        .collect();
    let grid = Grid::from_parts(order, order, cells);
    let verdict = Verdict::from_witness(first_repeated_column(&grid));
    debug_assert_eq!(verdict.holds(), is_latin(&grid).holds());
    Ok(MultiplicativeGrid {
        modulus: n,
        grid,
        verdict,
    })
}

fn first_repeated_column(grid: &Grid) -> Option<Witness> {
    let s = grid.rows();
    let mut seen = vec![usize::MAX; s + 1];
    for c in 0..s {
        seen.fill(usize::MAX);
        for r in 0..s {
            let symbol = grid.get(r, c);
            if seen[symbol] != usize::MAX {
                return Some(Witness::ColDuplicate {
                    first: Cell::new(seen[symbol], c),
                    second: Cell::new(r, c),
                    symbol,
                });
            }
            seen[symbol] = r;
        }
    }
    None
}

/// `counts[r]` is how often `(i j) mod n` equals `r` for `i = 1..n-1`.
pub fn column_residue_counts(modulus: usize, column: usize) -> Vec<usize> {
    let mut counts = vec![0; modulus];
    for i in 1..modulus {
        counts[i * column % modulus] += 1;
    }
    counts
}

/// The `s` cyclic upward row shifts of `base`; member `k` has row `r` equal
/// to row `(r + k) mod s` of `base`.
pub fn shift_family(base: &LatinSquare) -> SquareFamily {
    let members = (0..base.order()).map(|k| base.shift_rows(k)).collect();
    SquareFamily::new(
        members,
        ConstructionSpec::ShiftFamily {
            base: Box::new(ConstructionSpec::External {
                name: "square".into(),
            }),
        },
    )
    .expect("shifts share the base order")
}
