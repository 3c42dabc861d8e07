use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::ConstructionSpec;
use crate::error::{Error, Result};
use crate::family::SquareFamily;
use crate::verify::{first_failing_subset, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseStep {
    pub t: usize,
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// A `t`-subset that is `t`-orthogonal although one of its
/// `(t - 1)`-subsets is not `(t - 1)`-orthogonal. Indices are 1-based when
/// serialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseWitness {
    pub t: usize,
    #[serde(with = "crate::verify::one_based")]
    pub subset: Vec<usize>,
    #[serde(with = "crate::verify::one_based")]
    pub failing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseReport {
    pub family: ConstructionSpec,
    pub order: usize,
    pub size: usize,
    pub steps: Vec<StaircaseStep>,
    /// Smallest `t` that holds.
    pub threshold: Option<usize>,
    /// Once some `t` holds, every larger one does too.
    pub monotone: bool,
    pub converse: Option<ConverseWitness>,
}

/// Evaluates mutual `t`-orthogonality for every `t = 2..=N`.
pub fn conjecture_probe(family: &SquareFamily) -> Result<StaircaseReport> {
    let n = family.len();
    if n < 2 {
        return Err(Error::BadArity { t: 2, size: n });
    }
    let steps: Vec<StaircaseStep> = (2..=n)
        .map(|t| {
            let witness = first_failing_subset(family.members(), family.order(), t);
            StaircaseStep {
                t,
                holds: witness.is_none(),
                witness,
            }
        })
        .collect();
    let threshold = steps.iter().find(|s| s.holds).map(|s| s.t);
    let monotone = steps.windows(2).all(|w| !w[0].holds || w[1].holds);
    let converse = match threshold {
        Some(t) if t > 2 => {
            let below = &steps[t - 3];
            let Some(Witness::Subset { indices, .. }) = &below.witness else {
                unreachable!("failing step carries a subset witness")
            };
            let extra = (0..n).find(|i| !indices.contains(i)).expect("t - 1 < N");
            let mut subset = indices.clone();
            subset.push(extra);
            subset.sort_unstable();
            Some(ConverseWitness {
                t,
                subset,
                failing: indices.clone(),
            })
        }
        _ => None,
    };
    Ok(StaircaseReport {
        family: family.provenance().clone(),
        order: family.order(),
        size: n,
        steps,
        threshold,
        monotone,
        converse,
    })
}

impl fmt::Display for StaircaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "family {} order {} count {}",
            self.family, self.order, self.size
        )?;
        for step in &self.steps {
            write!(f, "t={}: {}", step.t, step.holds)?;
            if let Some(w) = &step.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        match self.threshold {
            Some(t) => writeln!(f, "threshold {t}")?,
            None => writeln!(f, "threshold none")?,
        }
        writeln!(f, "monotone {}", self.monotone)?;
        if let Some(c) = &self.converse {
            let list = |v: &[usize]| {
                v.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(
                f,
                "converse: members {{{}}} are {}-orthogonal but {{{}}} is not {}-orthogonal",
                list(&c.subset),
                c.t,
                list(&c.failing),
                c.t - 1
            )?;
        }
        Ok(())
    }
}
