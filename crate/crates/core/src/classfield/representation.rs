//! Solutions of `4p = t² + |D| v²` with `p ∤ t`.

use crate::finitefield::{exact_sqrt, isqrt, sqrt_mod_p, PrimeField};
use crate::quadforms::Discriminant;
use crate::{Error, Result};

/// Smallest-`v` solution `(t, v)` with `t > 0`, found by scanning `v`.
pub fn representation_test(disc: Discriminant, p: u64) -> Result<Option<(u64, u64)>> {
    let field = PrimeField::new(p)?;
    let d = disc.abs();
    if d % p == 0 {
        return Err(Error::PrimeDividesDiscriminant { p, d: disc.value() });
    }
    Ok(representation_loop(d, field.p()))
}

pub(crate) fn representation_loop(d: u64, p: u64) -> Option<(u64, u64)> {
    let four_p = 4 * p;
    let mut v = 1;
    while d * v * v <= four_p {
        if let Some(t) = exact_sqrt(four_p - d * v * v) {
            if t > 0 && t % p != 0 {
                return Some((t, v));
            }
        }
        v += 1;
    }
    None
}

/// Same predicate as the `v`-loop by scanning `t ∈ [1, 2√p]` instead.
pub fn representation_by_trace(disc: Discriminant, p: u64) -> bool {
    let d = disc.abs();
    let four_p = 4 * p;
    (1..=isqrt(four_p)).any(|t| {
        let rest = four_p.saturating_sub(t * t);
        t * t < four_p && t % p != 0 && rest % d == 0 && exact_sqrt(rest / d).is_some_and(|v| v > 0)
    })
}

/// Whether `4p = t² + |D| v²` is solvable with `p ∤ t`, for a prime `p ∤ D`.
///
/// Uses Cornacchia's algorithm; tiny primes fall back to the loop.
pub fn is_representable(d: u64, p: u64) -> bool {
    if p < 64 {
        return representation_loop(d, p).is_some();
    }
    if d % 4 == 0 {
        cornacchia(d / 4, p)
    } else {
        cornacchia_4p(d, p) || cornacchia(d, p)
    }
}

/// Primitive solution of `x² + d y² = p` for an odd prime `p`.
fn cornacchia(d: u64, p: u64) -> bool {
    if d >= p {
        return false;
    }
    let field = PrimeField::new(p).expect("odd prime");
    let Some(mut r) = sqrt_mod_p(p - d % p, field) else {
        return false;
    };
    if r > p / 2 {
        r = p - r;
    }
    let (mut a, mut b) = (p, r);
    let bound = isqrt(p);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    rest % d == 0 && exact_sqrt(rest / d).is_some()
}

/// Primitive solution of `x² + d y² = 4p` for `-d ≡ 0, 1 (mod 4)`.
fn cornacchia_4p(d: u64, p: u64) -> bool {
    if d > 4 * p {
        return false;
    }
    let field = PrimeField::new(p).expect("odd prime");
    let neg = (p - d % p) % p;
    let Some(mut x0) = sqrt_mod_p(neg, field) else {
        return false;
    };
    if x0 % 2 != d % 2 {
        x0 = p - x0;
    }
    let (mut a, mut b) = (2 * p, x0);
    let bound = isqrt(4 * p);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = 4 * p - b * b;
    rest % d == 0 && exact_sqrt(rest / d).is_some()
}
