//! Short Weierstrass curves `y² = x³ + ax + b` over `F_p`.

mod torsion;

pub use torsion::{division_polynomial, frobenius_is_scalar_mod};

use num_integer::Integer;
use serde::Serialize;

use crate::finitefield::{PrimeField, QuadraticCharacter};
use crate::{Error, Result};

/// One `F_p`-isomorphism class of elliptic curves, with its Frobenius trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub field: PrimeField,
    pub a: u64,
    pub b: u64,
    pub j: u64,
    pub trace: i64,
    pub aut_count: u32,
}

impl Curve {
    /// Number of rational points, `p + 1 - t`.
    pub fn order(&self) -> u64 {
        (self.field.p() as i64 + 1 - self.trace) as u64
    }

    /// Ordinary iff `p ∤ t`; for `p >= 5` this is `t != 0`.
    pub fn is_ordinary(&self) -> bool {
        self.trace.rem_euclid(self.field.p() as i64) != 0
    }
}

/// `4a³ + 27b²` mod p.
fn discriminant_term(a: u64, b: u64, field: PrimeField) -> u64 {
    let f = field;
    let a3 = f.mul(f.mul(a, a), a);
    f.add(f.mul(4 % f.p(), a3), f.mul(27 % f.p(), f.mul(b, b)))
}

pub fn is_singular(a: u64, b: u64, field: PrimeField) -> bool {
    discriminant_term(a % field.p(), b % field.p(), field) == 0
}

fn check_nonsingular(a: u64, b: u64, field: PrimeField) -> Result<()> {
    if is_singular(a, b, field) {
        Err(Error::SingularCurve { a, b, p: field.p() })
    } else {
        Ok(())
    }
}

/// `j = 1728 · 4a³ / (4a³ + 27b²)`.
pub fn j_invariant(a: u64, b: u64, field: PrimeField) -> Result<u64> {
    let f = field;
    let (a, b) = (a % f.p(), b % f.p());
    check_nonsingular(a, b, f)?;
    let four_a3 = f.mul(4, f.mul(f.mul(a, a), a));
    let den = f.inv(discriminant_term(a, b, f)).expect("nonsingular");
    Ok(f.mul(f.mul(1728 % f.p(), four_a3), den))
}

/// Frobenius trace `t = -Σ_x χ(x³ + ax + b)`.
pub fn point_count(a: u64, b: u64, field: PrimeField) -> Result<i64> {
    let (a, b) = (a % field.p(), b % field.p());
    check_nonsingular(a, b, field)?;
    let sum: i64 = (0..field.p())
        .map(|x| field.legendre(cubic(a, b, x, field)) as i64)
        .sum();
    Ok(-sum)
}

/// As [`point_count`], with a precomputed character table.
pub fn point_count_with(a: u64, b: u64, field: PrimeField, chi: &QuadraticCharacter) -> i64 {
    let sum: i64 = (0..field.p()).map(|x| chi.get(cubic(a, b, x, field)) as i64).sum();
    -sum
}

#[inline]
fn cubic(a: u64, b: u64, x: u64, f: PrimeField) -> u64 {
    f.add(f.mul(f.add(f.mul(x, x), a), x), b)
}

/// `#Aut(E)` over `F_p` for a curve with invariant `j`.
pub fn aut_count(j: u64, field: PrimeField) -> u32 {
    let p = field.p();
    if j == 0 {
        6u64.gcd(&(p - 1)) as u32
    } else if j == 1728 % p {
        4u64.gcd(&(p - 1)) as u32
    } else {
        2
    }
}

/// One curve per `F_p`-isomorphism class with invariant `j`, twists included.
pub fn curves_for_j(j: u64, field: PrimeField) -> Vec<Curve> {
    curves_for_j_with(j, field, &QuadraticCharacter::new(field))
}

pub fn curves_for_j_with(j: u64, field: PrimeField, chi: &QuadraticCharacter) -> Vec<Curve> {
    let f = field;
    let p = f.p();
    let j = j % p;
    let j1728 = 1728 % p;
    let models: Vec<(u64, u64)> = if j == 0 {
        twist_representatives(f, 6).into_iter().map(|b| (0, b)).collect()
    } else if j == j1728 {
        twist_representatives(f, 4).into_iter().map(|a| (a, 0)).collect()
    } else {
        let k = f.mul(j, f.sub(j1728, j));
        let a = f.mul(3, k);
        let b = f.mul(f.mul(2, k), f.sub(j1728, j));
        let z = f.non_residue();
        let z2 = f.mul(z, z);
        vec![(a, b), (f.mul(z2, a), f.mul(f.mul(z2, z), b))]
    };
    let aut = aut_count(j, f);
    models
        .into_iter()
        .map(|(a, b)| Curve {
            field: f,
            a,
            b,
            j,
            trace: point_count_with(a, b, f, chi),
            aut_count: aut,
        })
        .collect()
}

/// Representatives `g^0, ..., g^(k-1)` of `F_p^* / (F_p^*)^n`, `k = gcd(n, p-1)`.
fn twist_representatives(field: PrimeField, n: u64) -> Vec<u64> {
    let k = n.gcd(&(field.p() - 1));
    let g = field.generator();
    (0..k).map(|i| field.pow(g, i)).collect()
}

/// Total number of `F_p`-isomorphism classes of elliptic curves.
pub fn isomorphism_class_count(field: PrimeField) -> u64 {
    let p = field.p();
    2 * (p - 2) + 4u64.gcd(&(p - 1)) + 6u64.gcd(&(p - 1))
}
