//! Finite fields GF(p^k) for `p^k <= 64`, and the complete MOLS family
//! built from them.
//!
//! An element is a coefficient vector `[c_0, .., c_{k-1}]` over GF(p); its
//! index is `c_0 + c_1 p + .. + c_{k-1} p^{k-1}`, so 0 and 1 come first and
//! the remaining elements follow lexicographically.

use crate::construct::ConstructionSpec;
use crate::error::{Error, Result};
use crate::family::SquareFamily;
use crate::square::{LatinSquare, MAX_ORDER};

use super::modular::is_prime;

/// Monic irreducible polynomials, coefficients low degree first, including
/// the leading 1.
const MODULI: &[(usize, usize, &[usize])] = &[
    (2, 2, &[1, 1, 1]),             // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),          // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]),       // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]),    // x^5 + x^2 + 1
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]), // x^6 + x + 1
    (3, 2, &[1, 0, 1]),             // x^2 + 1
    (3, 3, &[1, 2, 0, 1]),          // x^3 + 2x + 1
    (5, 2, &[2, 0, 1]),             // x^2 + 2
    (7, 2, &[1, 0, 1]),             // x^2 + 1
];

/// `Some((p, k))` when `q = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, k))
}

/// The embedded modulus for GF(p^k); degree-1 fields use `x`.
pub fn irreducible_modulus(p: usize, k: usize) -> Option<Vec<usize>> {
    if k == 1 {
        return is_prime(p).then(|| vec![0, 1]);
    }
    MODULI
        .iter()
        .find(|(mp, mk, _)| *mp == p && *mk == k)
        .map(|(_, _, m)| m.to_vec())
}

/// An element of GF(p^k) in polynomial representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub characteristic: usize,
    pub coeffs: Vec<usize>,
}

/// GF(q) with precomputed addition and multiplication tables on element
/// indices.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: usize,
    degree: usize,
    modulus: Vec<usize>,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, degree) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: q,
                max: MAX_ORDER,
            });
        }
        let modulus =
            irreducible_modulus(p, degree).expect("every prime power up to 64 has a modulus");
        let mut field = GaloisField {
            p,
            degree,
            modulus,
            add: vec![0; q * q],
            mul: vec![0; q * q],
        };
        for a in 0..q {
            let ea = field.element(a);
            for b in 0..q {
                let eb = field.element(b);
                field.add[a * q + b] = field.index_of(&field.add_poly(&ea, &eb)) as u8;
                field.mul[a * q + b] = field.index_of(&field.mul_poly(&ea, &eb)) as u8;
            }
        }
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.p.pow(self.degree as u32)
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn element(&self, index: usize) -> FieldElement {
        let mut coeffs = Vec::with_capacity(self.degree);
        let mut rest = index;
        for _ in 0..self.degree {
            coeffs.push(rest % self.p);
            rest /= self.p;
        }
        FieldElement {
            characteristic: self.p,
            coeffs,
        }
    }

    pub fn index_of(&self, e: &FieldElement) -> usize {
        e.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    fn add_poly(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        FieldElement {
            characteristic: self.p,
            coeffs,
        }
    }

    fn mul_poly(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let k = self.degree;
        let mut prod = vec![0usize; 2 * k - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus from the top down
        for top in (k..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            for (d, &m) in self.modulus[..k].iter().enumerate() {
                let at = top - k + d;
                prod[at] = (prod[at] + self.p * self.p - lead * m % self.p) % self.p;
            }
            prod[top] = 0;
        }
        prod.truncate(k);
        FieldElement {
            characteristic: self.p,
            coeffs: prod,
        }
    }
}

/// The `q - 1` squares `L_a(i, j) = a g_i + g_j` for nonzero `a`, with
/// elements enumerated by index. Pairwise orthogonal.
pub fn gf_mols(q: usize) -> Result<SquareFamily> {
    let field = GaloisField::new(q)?;
    let members = (1..q)
        .map(|a| {
            let cells = (0..q * q)
                .map(|k| field.add(field.mul(a, k / q), k % q) as u8)
                .collect();
            LatinSquare::from_cells_unchecked(q, cells)
        })
        .collect();
    SquareFamily::new(members, ConstructionSpec::GfMols { q })
}
