use latinsq::construct::{coprime_multipliers, is_prime, prime_power, ORDER_15_FIRST_ROWS};
use latinsq::verify::mutually_t_orthogonal;
use latinsq::{ConstructionSpec, Error, MAX_ORDER};
use serde::Serialize;

/// Above this many `t`-subsets the degree is left uncomputed.
const SUBSET_CAP: u128 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Degree {
    Computed {
        degree: usize,
    },
    /// No `t` up to the family size works.
    None,
    /// Every `t` below `from` fails; larger `t` were too costly to check.
    Unchecked {
        from: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub construction: String,
    pub size: Option<usize>,
    pub min_degree: Option<Degree>,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn constructed(kind: &'static str, spec: ConstructionSpec) -> Result<Option<Row>, Error> {
    let family = spec.build_family()?;
    if family.len() < 2 {
        return Ok(None);
    }
    let n = family.len();
    let mut degree = Degree::None;
    for t in 2..=n {
        if binomial(n, t) > SUBSET_CAP {
            degree = Degree::Unchecked { from: t };
            break;
        }
        if mutually_t_orthogonal(&family, t)?.holds() {
            degree = Degree::Computed { degree: t };
            break;
        }
    }
    Ok(Some(Row {
        kind,
        construction: spec.to_string(),
        size: Some(n),
        min_degree: Some(degree),
    }))
}

/// Rows for order `s`: every family this tool builds itself, with its
/// computed minimum degree, plus a pointer for orders whose best known
/// constructions have to be supplied as files.
pub fn rows(s: usize) -> Result<Vec<Row>, Error> {
    if s == 0 || s > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: s,
            max: MAX_ORDER,
        });
    }
    let mut rows = Vec::new();
    let power = prime_power(s);
    let additive_kind = if is_prime(s) { "I" } else { "IV" };
    let additive = ConstructionSpec::Additive {
        order: s,
        h: coprime_multipliers(s),
    };
    rows.extend(constructed(additive_kind, additive)?);
    if is_prime(s + 1) {
        let base = ConstructionSpec::Multiplicative { order: s };
        rows.extend(constructed(
            "II",
            ConstructionSpec::ShiftFamily {
                base: Box::new(base),
            },
        )?);
    }
    if power.is_some_and(|(_, k)| k > 1) {
        rows.extend(constructed("III", ConstructionSpec::GfMols { q: s })?);
    }
    if s == 15 {
        let first_rows = ORDER_15_FIRST_ROWS.iter().map(|r| r.to_vec()).collect();
        rows.extend(constructed(
            "IV",
            ConstructionSpec::CyclicDevelopment { first_rows },
        )?);
    }
    if power.is_none() && s >= 10 {
        rows.push(Row {
            kind: "IV",
            construction: "external — ingest via file (published constructions for this order)"
                .into(),
            size: None,
            min_degree: None,
        });
    }
    Ok(rows)
}

pub fn render(s: usize, rows: &[Row]) -> String {
    let mut out = format!("order {s}\n");
    if rows.is_empty() {
        out.push_str("no family of two or more squares\n");
        return out;
    }
    out.push_str(&format!(
        "{:<5} {:<5} {:<11} {}\n",
        "type", "size", "min-degree", "construction"
    ));
    for row in rows {
        let size = row.size.map_or("-".to_string(), |n| n.to_string());
        let degree = match &row.min_degree {
            None => "-".to_string(),
            Some(Degree::Computed { degree }) => degree.to_string(),
            Some(Degree::None) => "none".to_string(),
            Some(Degree::Unchecked { from }) => format!(">={from}?"),
        };
        out.push_str(&format!(
            "{:<5} {:<5} {:<11} {}\n",
            row.kind, size, degree, row.construction
        ));
    }
    out
}
