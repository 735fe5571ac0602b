//! Prime-field arithmetic, quadratic characters and polynomials over `F_p`.

mod poly;

pub use poly::FpPolynomial;

use serde::Serialize;

use crate::{Error, Result};

/// The prime field `F_p` for a prime `5 <= p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(5..(1u64 << 63)).contains(&p) {
            return Err(Error::UnsupportedPrime(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn reduce_u128(&self, x: u128) -> u64 {
        (x % self.p as u128) as u64
    }

    /// Reduces an exact decimal integer (optional leading `-`) mod `p`.
    pub fn reduce_decimal(&self, s: &str) -> u64 {
        reduce_decimal(s, self.p)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Legendre symbol `(a | p)` by Euler's criterion.
    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn sqrt(&self, a: u64) -> Option<u64> {
        sqrt_mod_p(a, *self)
    }

    /// Smallest generator of `F_p^*`.
    pub fn generator(&self) -> u64 {
        let order = self.p - 1;
        let factors = prime_factors(order);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, order / q) != 1))
            .expect("F_p^* is cyclic")
    }

    /// Smallest quadratic non-residue.
    pub fn non_residue(&self) -> u64 {
        (2..self.p)
            .find(|&z| self.legendre(z) == -1)
            .expect("odd prime has a non-residue")
    }
}

/// Table of the quadratic character `χ(x) = (x | p)` for every residue.
#[derive(Clone, Debug)]
pub struct QuadraticCharacter {
    values: Vec<i8>,
}

impl QuadraticCharacter {
    pub fn new(field: PrimeField) -> Self {
        let p = field.p() as usize;
        let mut values = vec![-1i8; p];
        values[0] = 0;
        for x in 1..=p / 2 {
            let sq = (x * x) % p;
            values[sq] = 1;
        }
        QuadraticCharacter { values }
    }

    #[inline]
    pub fn get(&self, x: u64) -> i8 {
        self.values[x as usize]
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

pub(crate) fn reduce_decimal(s: &str, m: u64) -> u64 {
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let mut acc = 0u64;
    for c in digits.bytes() {
        debug_assert!(c.is_ascii_digit(), "malformed decimal {s}");
        acc = ((acc as u128 * 10 + (c - b'0') as u128) % m as u128) as u64;
    }
    if negative && acc != 0 {
        m - acc
    } else {
        acc
    }
}

/// Deterministic Miller–Rabin, exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The Kronecker symbol `(n | m)` for arbitrary integers.
pub fn kronecker(n: i64, m: i64) -> i8 {
    if m == 0 {
        return if n == 1 || n == -1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut m = m;
    if m < 0 {
        m = -m;
        if n < 0 {
            result = -result;
        }
    }
    let twos = m.trailing_zeros();
    m >>= twos;
    if twos > 0 {
        if n % 2 == 0 {
            return 0;
        }
        // (n | 2) = +1 for n ≡ ±1 mod 8, -1 for n ≡ ±3 mod 8
        let r = n.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    // Jacobi symbol (n | m) with m odd, positive
    let mut a = n.rem_euclid(m);
    let mut b = m;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = b % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut b);
        if a % 4 == 3 && b % 4 == 3 {
            result = -result;
        }
        a %= b;
    }
    if b == 1 {
        result
    } else {
        0
    }
}

/// Square root mod `p` by Tonelli–Shanks; returns the smaller of the two roots.
pub fn sqrt_mod_p(a: u64, field: PrimeField) -> Option<u64> {
    let p = field.p();
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if field.legendre(a) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        field.pow(a, (p + 1) / 4)
    } else {
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let z = field.non_residue();
        let mut m = s;
        let mut c = field.pow(z, q);
        let mut t = field.pow(a, q);
        let mut r = field.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = field.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = field.mul(b, b);
            }
            m = i;
            c = field.mul(b, b);
            t = field.mul(t, c);
            r = field.mul(r, b);
        }
        r
    };
    Some(root.min(p - root))
}

/// Integer square root of a non-negative integer, if it is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_small_and_composite() {
        assert_eq!(PrimeField::new(3), Err(Error::UnsupportedPrime(3)));
        assert_eq!(PrimeField::new(2), Err(Error::UnsupportedPrime(2)));
        assert_eq!(PrimeField::new(91), Err(Error::NotPrime(91)));
        assert!(PrimeField::new(4611686018427387847).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), naive, "n = {n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-23, 59), 1);
    }

    #[test]
    fn kronecker_matches_euler_for_odd_primes() {
        for p in (3..1000u64).filter(|&p| is_prime(p)) {
            for n in -60i64..60 {
                let r = n.rem_euclid(p as i64) as u64;
                let euler = if r == 0 {
                    0
                } else if pow_mod(r, (p - 1) / 2, p) == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(n, p as i64), euler, "({n} | {p})");
            }
        }
    }

    #[test]
    fn kronecker_is_multiplicative_in_the_bottom() {
        for n in [-47i64, -36, -23, -8, -4, -3, 5, 12] {
            for m1 in 1..30i64 {
                for m2 in 1..30i64 {
                    assert_eq!(
                        kronecker(n, m1 * m2),
                        kronecker(n, m1) * kronecker(n, m2),
                        "n={n} m1={m1} m2={m2}"
                    );
                }
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod_p(4, f(13)), Some(2));
        assert_eq!(sqrt_mod_p(2, f(5)), None);
        assert_eq!(sqrt_mod_p(10, f(13)), Some(6));
        assert_eq!(sqrt_mod_p(0, f(13)), Some(0));
    }

    #[test]
    fn sqrt_exhaustive_against_legendre() {
        for p in (5..=1000u64).filter(|&p| is_prime(p)) {
            let field = f(p);
            let mut roots = 0;
            for a in 1..p {
                let r = sqrt_mod_p(a, field);
                assert_eq!(r.is_some(), kronecker(a as i64, p as i64) == 1, "a={a} p={p}");
                if let Some(r) = r {
                    assert_eq!(field.mul(r, r), a);
                    assert!(r <= p - r);
                    roots += 1;
                }
            }
            assert_eq!(roots, (p - 1) / 2);
        }
    }

    #[test]
    fn decimal_reduction() {
        assert_eq!(reduce_decimal("1728", 13), 12);
        assert_eq!(reduce_decimal("-1728", 13), 1);
        assert_eq!(reduce_decimal("-157464000000000", 1_000_003), {
            (-157464000000000i64).rem_euclid(1_000_003) as u64
        });
    }

    #[test]
    fn generator_has_full_order() {
        for p in [5u64, 7, 13, 31, 4999] {
            let field = f(p);
            let g = field.generator();
            let mut x = 1;
            for k in 1..p - 1 {
                x = field.mul(x, g);
                assert_ne!(x, 1, "order {k} < p-1");
            }
        }
    }
}
