use std::fmt;

use super::PrimeField;
use crate::{Error, Result};

/// Below this, sums of up to 2^24 coefficient products fit in a `u64`.
const SMALL_PRIME: u64 = 1 << 20;

/// Dense univariate polynomial over `F_p`, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPolynomial {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FpPolynomial {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= field.p();
        }
        let mut poly = FpPolynomial { field, coeffs };
        poly.trim();
        poly
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        FpPolynomial { field, coeffs: Vec::new() }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    /// `X - r`.
    pub fn linear_root(field: PrimeField, r: u64) -> Self {
        Self::new(field, vec![field.neg(r % field.p()), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Self::new(f, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.sub(a, b)
            })
            .collect();
        Self::new(f, out)
    }

    pub fn scale(&self, k: u64) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.mul(c, k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let p = self.field.p();
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if p < SMALL_PRIME {
            let mut acc = vec![0u64; n];
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (slot, &b) in acc[i..].iter_mut().zip(&other.coeffs) {
                    *slot += a * b;
                }
            }
            return Self::new(self.field, acc.into_iter().map(|c| c % p).collect());
        }
        let mut acc = vec![0u128; n];
        let lazy = p < 1 << 32;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = &mut acc[i..i + other.coeffs.len()];
            if lazy {
                for (slot, &b) in row.iter_mut().zip(&other.coeffs) {
                    *slot += (a * b) as u128;
                }
            } else {
                for (slot, &b) in row.iter_mut().zip(&other.coeffs) {
                    *slot = (*slot + a as u128 * b as u128) % p as u128;
                }
            }
        }
        Self::new(self.field, acc.into_iter().map(|c| (c % p as u128) as u64).collect())
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = self.field;
        let dd = divisor.degree().ok_or(Error::ZeroModulus)?;
        let lead_inv = f.inv(divisor.leading()).ok_or(Error::ZeroModulus)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let p = f.p();
        if p < SMALL_PRIME {
            return Ok(self.div_rem_small(divisor, dd, lead_inv));
        }
        let lazy = p < 1 << 32;
        // rem[k] ≡ acc[k] mod p; subtracting q·d is done by adding (p - q)·d
        let mut acc: Vec<u128> = self.coeffs.iter().map(|&c| c as u128).collect();
        let mut quot = vec![0u64; acc.len() - dd];
        for i in (dd..acc.len()).rev() {
            let c = (acc[i] % p as u128) as u64;
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i - dd] = q;
            let neg_q = p - q;
            let row = &mut acc[i - dd..=i];
            if lazy {
                for (slot, &d) in row.iter_mut().zip(&divisor.coeffs) {
                    *slot += (neg_q * d) as u128;
                }
            } else {
                for (slot, &d) in row.iter_mut().zip(&divisor.coeffs) {
                    *slot = (*slot + neg_q as u128 * d as u128) % p as u128;
                }
            }
        }
        acc.truncate(dd);
        let rem = acc.into_iter().map(|c| (c % p as u128) as u64).collect();
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    fn div_rem_small(&self, divisor: &Self, dd: usize, lead_inv: u64) -> (Self, Self) {
        let f = self.field;
        let p = f.p();
        let mut acc = self.coeffs.clone();
        let mut quot = vec![0u64; acc.len() - dd];
        for i in (dd..acc.len()).rev() {
            let c = acc[i] % p;
            if c == 0 {
                continue;
            }
            let q = c * lead_inv % p;
            quot[i - dd] = q;
            let neg_q = p - q;
            for (slot, &d) in acc[i - dd..=i].iter_mut().zip(&divisor.coeffs) {
                *slot += neg_q * d;
            }
        }
        acc.truncate(dd);
        (Self::new(f, quot), Self::new(f, acc.into_iter().map(|c| c % p).collect()))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, i as u64 % f.p()))
            .collect();
        Self::new(f, out)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// `self^exponent mod modulus` by square-and-multiply.
    pub fn powmod(&self, exponent: u64, modulus: &Self) -> Result<Self> {
        poly_powmod(self, exponent, modulus)
    }

    /// `X^p mod self`.
    fn frobenius_of_x(&self) -> Self {
        poly_powmod(&Self::x(self.field), self.field.p(), self).expect("nonzero modulus")
    }

    /// `gcd(self, X^p - X)`: the product of the distinct linear factors.
    pub fn split_part(&self) -> Self {
        let f = self.field;
        if self.degree().unwrap_or(0) == 0 {
            return Self::constant(f, 1);
        }
        let xp = self.frobenius_of_x();
        let g = xp.sub(&Self::x(f));
        self.gcd(&g)
    }

    /// Number of distinct roots in `F_p`.
    pub fn count_distinct_roots(&self) -> usize {
        self.split_part().degree().unwrap_or(0)
    }

    /// Whether `self` splits into distinct linear factors over `F_p`.
    ///
    /// Non-squarefree input is rejected with [`Error::NotSquarefree`].
    pub fn splits_completely(&self) -> Result<bool> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree { p: self.field.p() });
        }
        Ok(self.count_distinct_roots() == self.degree().unwrap_or(0))
    }

    /// Distinct roots in `F_p`, sorted.
    pub fn roots(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let g = self.split_part();
        split_linear(&g, &mut out);
        out.sort_unstable();
        out
    }

    /// Roots in `F_p` with their multiplicities, sorted by root.
    pub fn roots_with_multiplicity(&self) -> Vec<(u64, usize)> {
        let f = self.field;
        self.roots()
            .into_iter()
            .map(|r| {
                let lin = Self::linear_root(f, r);
                let mut q = self.clone();
                let mut mult = 0;
                loop {
                    let (d, rem) = q.div_rem(&lin).expect("linear divisor");
                    if !rem.is_zero() {
                        break;
                    }
                    mult += 1;
                    q = d;
                }
                (r, mult)
            })
            .collect()
    }
}

/// Splits a product of distinct linear factors by `gcd(g, (X+a)^((p-1)/2) - 1)`
/// for `a = 0, 1, 2, ...`.
fn split_linear(g: &FpPolynomial, out: &mut Vec<u64>) {
    let f = g.field;
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let c = g.monic();
            out.push(f.neg(c.coeffs[0]));
        }
        Some(d) => {
            let half = (f.p() - 1) / 2;
            for a in 0..f.p() {
                let shifted = FpPolynomial::new(f, vec![a, 1]);
                let h = poly_powmod(&shifted, half, g).expect("nonzero modulus");
                let h = h.sub(&FpPolynomial::constant(f, 1));
                let part = g.gcd(&h);
                let pd = part.degree().unwrap_or(0);
                if pd > 0 && pd < d {
                    let (rest, _) = g.div_rem(&part).expect("nonzero divisor");
                    split_linear(&part, out);
                    split_linear(&rest.monic(), out);
                    return;
                }
            }
            unreachable!("distinct roots are always separated by some shift");
        }
    }
}

/// `base^exponent mod modulus`.
pub fn poly_powmod(base: &FpPolynomial, exponent: u64, modulus: &FpPolynomial) -> Result<FpPolynomial> {
    if modulus.degree().unwrap_or(0) == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut result = FpPolynomial::constant(base.field, 1).rem(modulus)?;
    let mut b = base.rem(modulus)?;
    let mut e = exponent;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&b).rem(modulus)?;
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b).rem(modulus)?;
        }
    }
    Ok(result)
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, c: &[i64]) -> FpPolynomial {
        FpPolynomial::from_i64(field(p), c)
    }

    #[test]
    fn powmod_examples() {
        let x5 = poly(5, &[0, 1]).powmod(5, &poly(5, &[1, 0, 1])).unwrap();
        assert_eq!(x5, poly(5, &[0, 1]));
        let x7 = poly(7, &[0, 1]).powmod(7, &poly(7, &[-3, 1])).unwrap();
        assert_eq!(x7, poly(7, &[3]));
        let m = poly(11, &[3, 0, 2, 1]);
        assert_eq!(poly(11, &[0, 1]).powmod(1, &m).unwrap(), poly(11, &[0, 1]));
        assert_eq!(
            poly(11, &[0, 1]).powmod(0, &FpPolynomial::zero(field(11))),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn root_counting_examples() {
        assert_eq!(poly(7, &[-1, 0, 1]).count_distinct_roots(), 2);
        assert_eq!(poly(7, &[1, 0, 1]).count_distinct_roots(), 0);
        assert_eq!(poly(5, &[0, -1, 0, 1]).count_distinct_roots(), 3);
        assert_eq!(poly(7, &[-1, 0, 1]).splits_completely(), Ok(true));
        assert_eq!(poly(7, &[1, 0, 1]).splits_completely(), Ok(false));
        assert_eq!(poly(13, &[1, 0, 1]).splits_completely(), Ok(true));
        assert_eq!(
            poly(13, &[1, 2, 1]).splits_completely(),
            Err(Error::NotSquarefree { p: 13 })
        );
    }

    #[test]
    fn roots_with_multiplicity_recovers_factorisation() {
        // (X-2)^2 (X-5) (X^2+1) over F_7
        let f = field(7);
        let a = FpPolynomial::linear_root(f, 2);
        let b = FpPolynomial::linear_root(f, 5);
        let c = poly(7, &[1, 0, 1]);
        let g = a.mul(&a).mul(&b).mul(&c);
        assert_eq!(g.roots_with_multiplicity(), vec![(2, 2), (5, 1)]);
        assert_eq!(g.roots(), vec![2, 5]);
    }

    #[test]
    fn roots_agree_with_brute_force() {
        for p in [5u64, 7, 11, 13, 101, 499] {
            let f = field(p);
            for seed in 0..40u64 {
                let coeffs: Vec<u64> = (0..6).map(|i| (seed * 7919 + i * 104729 + i * i * 31) % p).collect();
                let g = FpPolynomial::new(f, coeffs);
                if g.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let brute: Vec<u64> = (0..p).filter(|&x| g.eval(x) == 0).collect();
                assert_eq!(g.roots(), brute, "p={p} g={g}");
            }
        }
    }

    fn arb_poly(p: u64, max_len: usize) -> impl Strategy<Value = FpPolynomial> {
        prop::collection::vec(0..p, 1..max_len).prop_map(move |c| FpPolynomial::new(field(p), c))
    }

    proptest! {
        #[test]
        fn powmod_matches_repeated_multiplication(
            base in arb_poly(31, 6),
            modulus in arb_poly(31, 6),
            e in 0u64..=64,
        ) {
            prop_assume!(modulus.degree().unwrap_or(0) >= 1);
            let mut naive = FpPolynomial::constant(field(31), 1);
            for _ in 0..e {
                naive = naive.mul(&base).rem(&modulus).unwrap();
            }
            naive = naive.rem(&modulus).unwrap();
            prop_assert_eq!(base.powmod(e, &modulus).unwrap(), naive);
        }

        #[test]
        fn root_count_is_subadditive(f in arb_poly(23, 6), g in arb_poly(23, 6)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let prod = f.mul(&g).count_distinct_roots();
            let sum = f.count_distinct_roots() + g.count_distinct_roots();
            prop_assert!(prod <= sum);
            if f.gcd(&g).degree() == Some(0) {
                prop_assert_eq!(prod, sum);
            }
        }

        #[test]
        fn division_identity(a in arb_poly(101, 9), b in arb_poly(101, 5)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }
    }
}
