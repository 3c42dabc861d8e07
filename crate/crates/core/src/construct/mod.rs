//! Generators: modular families, row-shift families, finite-field MOLS,
//! cyclic development and frequency squares.

mod develop;
mod field;
mod frequency;
mod modular;
mod spec;

pub use develop::{develop_cyclic, develop_family, ORDER_15_FIRST_ROWS};
pub use field::{gf_mols, irreducible_modulus, prime_power, FieldElement, GaloisField};
pub use frequency::{collapse_symbols, inflate_frequency};
pub(crate) use modular::additive_family_with;
pub use modular::{
    additive_family, column_residue_counts, coprime_multipliers, gcd, is_prime, modular_additive,
    modular_multiplicative, shift_family, subtractive_family, MultiplicativeGrid, Sign,
};
pub use spec::{Built, ConstructionSpec};
