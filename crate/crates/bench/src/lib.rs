//! Shared inputs for the criterion benches.

use latinsq::construct::{additive_family, gf_mols, modular_multiplicative, shift_family};
use latinsq::{LatinSquare, SquareFamily};

/// The order-6 square with no orthogonal mate.
pub fn order_six_multiplicative() -> LatinSquare {
    modular_multiplicative(6)
        .and_then(|g| g.into_square())
        .expect("7 is prime")
}

pub fn shift_of_multiplicative(order: usize) -> SquareFamily {
    let base = modular_multiplicative(order)
        .and_then(|g| g.into_square())
        .expect("order + 1 prime");
    shift_family(&base)
}

pub fn field_family(q: usize) -> SquareFamily {
    gf_mols(q).expect("prime power")
}

pub fn prime_additive(order: usize) -> SquareFamily {
    additive_family(order).expect("valid order")
}
