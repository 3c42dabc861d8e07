use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{superpose_squares, SquareFamily};
use crate::square::{FrequencySquare, LatinSquare};
use crate::tuple::{classify, OrthoReport, TupleClasses};
use crate::verify::{Verdict, Witness};

/// Superposes the selected members and reports how many of the `s^2` cell
/// tuples are distinct. The selection is `t`-orthogonal when all are.
///
/// `t = 1` is accepted: a single square has exactly `s` distinct tuples.
pub fn t_orthogonal(family: &SquareFamily, indices: &[usize]) -> Result<OrthoReport> {
    Ok(OrthoReport::from_tuples(&family.superpose(indices)?))
}

/// Same as [`t_orthogonal`] for squares held outside a family.
pub fn t_orthogonal_squares(squares: &[&LatinSquare]) -> Result<OrthoReport> {
    Ok(OrthoReport::from_tuples(&superpose_squares(squares)?))
}

/// `s^2` minus the number of distinct superposed tuples.
pub fn defect(family: &SquareFamily, indices: &[usize]) -> Result<usize> {
    let members = family.resolve(indices)?;
    let order = family.order();
    Ok(order * order - classes_of(order, &members).distinct)
}

pub(crate) fn classes_of(order: usize, members: &[&LatinSquare]) -> TupleClasses {
    classify(order, members.len(), |k, i| members[k].cells()[i] as usize)
}

pub(crate) fn all_distinct(order: usize, members: &[&LatinSquare]) -> bool {
    classes_of(order, members).distinct == order * order
}

// subsets are checked this many at a time; a chunk is searched in parallel
// and the first failure in lexicographic order wins
const CHUNK: usize = 2048;

/// Every `t`-subset of the family, taken in ascending index order, is
/// `t`-orthogonal. The witness is the lexicographically first failing
/// subset with its first colliding pair of cells.
pub fn mutually_t_orthogonal(family: &SquareFamily, t: usize) -> Result<Verdict> {
    if t < 2 || t > family.len() {
        return Err(Error::BadArity {
            t,
            size: family.len(),
        });
    }
    Ok(Verdict::from_witness(first_failing_subset(
        family.members(),
        family.order(),
        t,
    )))
}

pub(crate) fn first_failing_subset(
    members: &[LatinSquare],
    order: usize,
    t: usize,
) -> Option<Witness> {
    let mut subsets = (0..members.len()).combinations(t);
    loop {
        let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return None;
        }
        let hit = chunk.par_iter().find_map_first(|idx| {
            let selected: Vec<&LatinSquare> = idx.iter().map(|&i| &members[i]).collect();
            let classes = classes_of(order, &selected);
            classes
                .first_collision(order)
                .map(|(first, second)| Witness::Subset {
                    indices: idx.clone(),
                    first,
                    second,
                })
        });
        if hit.is_some() {
            return hit;
        }
    }
}

/// Smallest `t` in `2..=N` for which the family is mutually
/// `t`-orthogonal. Passing arities are upward closed, so this threshold
/// describes the whole staircase. `None` for families of fewer than two
/// squares or when even `t = N` fails.
pub fn min_orthogonality_degree(family: &SquareFamily) -> Option<usize> {
    (2..=family.len())
        .find(|&t| first_failing_subset(family.members(), family.order(), t).is_none())
}

/// Whether `square` is orthogonal to its transpose.
pub fn self_orthogonal(square: &LatinSquare) -> Verdict {
    let transpose = square.transpose();
    let report = t_orthogonal_squares(&[square, &transpose]).expect("same order");
    Verdict::from_witness(report.witness)
}

/// Two `F(n; lambda)` over the same symbols are orthogonal when every
/// ordered symbol pair occurs exactly `lambda^2` times in the
/// superposition.
pub fn freq_orthogonal(a: &FrequencySquare, b: &FrequencySquare) -> Result<Verdict> {
    if a.side() != b.side() || a.multiplicity() != b.multiplicity() {
        return Err(Error::ParamMismatch);
    }
    let (n, m) = (a.side(), a.symbols());
    let expected = a.multiplicity() * a.multiplicity();
    let mut counts = vec![0usize; m * m];
    for r in 0..n {
        for c in 0..n {
            counts[a.get(r, c) * m + b.get(r, c)] += 1;
        }
    }
    let witness = counts
        .iter()
        .enumerate()
        .find(|(_, &k)| k != expected)
        .map(|(p, &count)| Witness::PairCount {
            pair: (p / m, p % m),
            count,
            expected,
        });
    Ok(Verdict::from_witness(witness))
}
