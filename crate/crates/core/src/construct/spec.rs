use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construct::{
    additive_family_with, collapse_symbols, develop_family, gf_mols, inflate_frequency,
    modular_multiplicative, shift_family, Sign,
};
use crate::error::{Error, Result};
use crate::family::SquareFamily;
use crate::square::{FrequencySquare, LatinSquare};
use crate::verify::one_based;

/// How a family (or frequency square) was produced. Every generated family
/// carries one, so it can be rebuilt from a file alone.
///
/// The textual form is `tag:key=value:...`; nested constructions come last
/// as `base=<spec>`. Symbols and member indices are 1-based in both forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum ConstructionSpec {
    /// `(i + h j) mod s`, one member per multiplier.
    Additive { order: usize, h: Vec<usize> },
    /// `(i - h j) mod s`, one member per multiplier.
    Subtractive { order: usize, h: Vec<usize> },
    /// `(i j) mod (s + 1)`; a square only when `s + 1` is prime.
    Multiplicative { order: usize },
    /// The `s` cyclic upward row shifts of a single base square.
    ShiftFamily { base: Box<ConstructionSpec> },
    /// The `q - 1` squares `lambda g_i + g_j` over GF(q).
    GfMols { q: usize },
    /// One square per first row, developed by adding `0..n` modulo `n`.
    CyclicDevelopment { first_rows: Vec<Vec<usize>> },
    /// Each cell of a single base square blown up into a `lambda x lambda` block.
    Inflate {
        lambda: usize,
        base: Box<ConstructionSpec>,
    },
    /// Symbol `x` of a single base square mapped to class `classes[x]`.
    Collapse {
        #[serde(with = "one_based")]
        classes: Vec<usize>,
        base: Box<ConstructionSpec>,
    },
    /// Selected members of a base family, in the listed order.
    Select {
        #[serde(with = "one_based")]
        indices: Vec<usize>,
        base: Box<ConstructionSpec>,
    },
    /// Squares ingested from a file; not reproducible by this crate.
    External { name: String },
}

/// The result of replaying a [`ConstructionSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Built {
    Family(SquareFamily),
    Frequency(FrequencySquare),
}

impl ConstructionSpec {
    /// Parses a family name: a valid spec string becomes that spec, anything
    /// else is an external name kept verbatim.
    pub fn from_name(name: &str) -> ConstructionSpec {
        name.parse().unwrap_or_else(|_| ConstructionSpec::External {
            name: name.to_string(),
        })
    }

    pub fn build(&self) -> Result<Built> {
        Ok(match self {
            ConstructionSpec::Additive { order, h } => {
                Built::Family(additive_family_with(*order, h, Sign::Plus)?)
            }
            ConstructionSpec::Subtractive { order, h } => {
                Built::Family(additive_family_with(*order, h, Sign::Minus)?)
            }
            ConstructionSpec::Multiplicative { order } => {
                let grid = modular_multiplicative(*order)?;
                let square = grid.into_square()?;
                Built::Family(SquareFamily::new(vec![square], self.clone())?)
            }
            ConstructionSpec::ShiftFamily { base } => {
                Built::Family(shift_family(&base.single_square()?).with_provenance(self.clone()))
            }
            ConstructionSpec::GfMols { q } => Built::Family(gf_mols(*q)?),
            ConstructionSpec::CyclicDevelopment { first_rows } => {
                Built::Family(develop_family(first_rows)?)
            }
            ConstructionSpec::Inflate { lambda, base } => {
                Built::Frequency(inflate_frequency(&base.single_square()?, *lambda)?)
            }
            ConstructionSpec::Collapse { classes, base } => {
                Built::Frequency(collapse_symbols(&base.single_square()?, classes)?)
            }
            ConstructionSpec::Select { indices, base } => Built::Family(
                base.build_family()?
                    .select(indices)?
                    .with_provenance(self.clone()),
            ),
            ConstructionSpec::External { name } => {
                return Err(Error::BadSpec {
                    spec: name.clone(),
                    reason: "external squares cannot be rebuilt".into(),
                })
            }
        })
    }

    pub fn build_family(&self) -> Result<SquareFamily> {
        match self.build()? {
            Built::Family(f) => Ok(f),
            Built::Frequency(_) => Err(self.bad("produces a frequency square, not a family")),
        }
    }

    fn single_square(&self) -> Result<LatinSquare> {
        let family = self.build_family()?;
        if family.len() != 1 {
            return Err(self.bad("base must produce exactly one square"));
        }
        Ok(family.into_members().remove(0))
    }

    fn bad(&self, reason: &str) -> Error {
        Error::BadSpec {
            spec: self.to_string(),
            reason: reason.into(),
        }
    }
}

fn join(v: &[usize], sep: &str, shift: usize) -> String {
    v.iter()
        .map(|x| (x + shift).to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Additive { order, h } => {
                write!(f, "additive:s={order}:h={}", join(h, ",", 0))
            }
            ConstructionSpec::Subtractive { order, h } => {
                write!(f, "subtractive:s={order}:h={}", join(h, ",", 0))
            }
            ConstructionSpec::Multiplicative { order } => write!(f, "multiplicative:s={order}"),
            ConstructionSpec::ShiftFamily { base } => write!(f, "shift-family:base={base}"),
            ConstructionSpec::GfMols { q } => write!(f, "gf-mols:q={q}"),
            ConstructionSpec::CyclicDevelopment { first_rows } => {
                let rows: Vec<String> = first_rows.iter().map(|r| join(r, ".", 0)).collect();
                write!(f, "cyclic-development:rows={}", rows.join("/"))
            }
            ConstructionSpec::Inflate { lambda, base } => {
                write!(f, "inflate:lambda={lambda}:base={base}")
            }
            ConstructionSpec::Collapse { classes, base } => {
                write!(f, "collapse:classes={}:base={base}", join(classes, ".", 1))
            }
            ConstructionSpec::Select { indices, base } => {
                write!(f, "select:indices={}:base={base}", join(indices, ",", 1))
            }
            ConstructionSpec::External { name } => f.write_str(name),
        }
    }
}

struct Fields<'a> {
    spec: &'a str,
    pairs: Vec<(&'a str, &'a str)>,
    base: Option<&'a str>,
}

impl<'a> Fields<'a> {
    fn parse(spec: &'a str, rest: &'a str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut base = None;
        let mut rest = rest;
        while !rest.is_empty() {
            if let Some(b) = rest.strip_prefix("base=") {
                base = Some(b);
                break;
            }
            let (segment, tail) = rest.split_once(':').unwrap_or((rest, ""));
            let (k, v) = segment.split_once('=').ok_or_else(|| Error::BadSpec {
                spec: spec.into(),
                reason: format!("expected key=value, found `{segment}`"),
            })?;
            pairs.push((k, v));
            rest = tail;
        }
        Ok(Fields { spec, pairs, base })
    }

    fn err(&self, reason: String) -> Error {
        Error::BadSpec {
            spec: self.spec.into(),
            reason,
        }
    }

    fn raw(&self, key: &str) -> Result<&'a str> {
        self.pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| self.err(format!("missing `{key}`")))
    }

    fn number(&self, key: &str) -> Result<usize> {
        let v = self.raw(key)?;
        v.parse()
            .map_err(|_| self.err(format!("`{key}` is not a number: `{v}`")))
    }

    fn list(&self, key: &str, sep: char) -> Result<Vec<usize>> {
        parse_list(self.raw(key)?, sep)
            .ok_or_else(|| self.err(format!("`{key}` is not a list of numbers")))
    }

    fn one_based_list(&self, key: &str, sep: char) -> Result<Vec<usize>> {
        self.list(key, sep)?
            .into_iter()
            .map(|x| x.checked_sub(1))
            .collect::<Option<_>>()
            .ok_or_else(|| self.err(format!("`{key}` entries are 1-based")))
    }

    fn base(&self) -> Result<Box<ConstructionSpec>> {
        let b = self
            .base
            .ok_or_else(|| self.err("missing `base=`".into()))?;
        Ok(Box::new(b.parse()?))
    }
}

fn parse_list(v: &str, sep: char) -> Option<Vec<usize>> {
    if v.is_empty() {
        return None;
    }
    v.split(sep).map(|x| x.parse().ok()).collect()
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, rest) = s.split_once(':').unwrap_or((s, ""));
        let f = Fields::parse(s, rest)?;
        Ok(match tag {
            "additive" => ConstructionSpec::Additive {
                order: f.number("s")?,
                h: f.list("h", ',')?,
            },
            "subtractive" => ConstructionSpec::Subtractive {
                order: f.number("s")?,
                h: f.list("h", ',')?,
            },
            "multiplicative" => ConstructionSpec::Multiplicative {
                order: f.number("s")?,
            },
            "shift-family" => ConstructionSpec::ShiftFamily { base: f.base()? },
            "gf-mols" => ConstructionSpec::GfMols { q: f.number("q")? },
            "cyclic-development" => {
                let rows = f
                    .raw("rows")?
                    .split('/')
                    .map(|r| parse_list(r, '.'))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| {
                        f.err("`rows` must be `/`-separated lists of `.`-separated numbers".into())
                    })?;
                ConstructionSpec::CyclicDevelopment { first_rows: rows }
            }
            "inflate" => ConstructionSpec::Inflate {
                lambda: f.number("lambda")?,
                base: f.base()?,
            },
            "collapse" => ConstructionSpec::Collapse {
                classes: f.one_based_list("classes", '.')?,
                base: f.base()?,
            },
            "select" => ConstructionSpec::Select {
                indices: f.one_based_list("indices", ',')?,
                base: f.base()?,
            },
            _ => return Err(f.err(format!("unknown method `{tag}`"))),
        })
    }
}
