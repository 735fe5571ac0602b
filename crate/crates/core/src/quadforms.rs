//! Imaginary quadratic discriminants, positive definite binary quadratic
//! forms and (weighted) class numbers.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::finitefield::kronecker;
use crate::{Error, Exact, Result};

/// A negative integer `D ≡ 0, 1 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(value: i64) -> Result<Self> {
        if value < 0 && matches!(value.rem_euclid(4), 0 | 1) {
            Ok(Discriminant(value))
        } else {
            Err(Error::InvalidDiscriminant(value))
        }
    }

    #[inline]
    pub fn value(self) -> i64 {
        self.0
    }

    #[inline]
    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    pub fn is_fundamental(self) -> bool {
        let d = self.0;
        if d.rem_euclid(4) == 1 {
            is_squarefree(d.unsigned_abs())
        } else {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
    }

    /// Number of units `w(D)` of the order of discriminant `D`.
    pub fn unit_count(self) -> u32 {
        match self.0 {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }

    /// `f^2 · D`.
    pub fn scaled(self, f: u64) -> Discriminant {
        Discriminant(self.0 * (f * f) as i64)
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_squarefree(mut n: u64) -> bool {
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return false;
            }
        }
        q += 1;
    }
    true
}

/// `Δ = v² · D_K` together with the divisor lattice of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantDecomposition {
    pub delta: Discriminant,
    pub conductor_bound: u64,
    pub fundamental: Discriminant,
    pub divisors: Vec<u64>,
}

impl DiscriminantDecomposition {
    /// `D_f = f² D_K`.
    pub fn order_discriminant(&self, f: u64) -> Discriminant {
        self.fundamental.scaled(f)
    }
}

/// Splits `delta` into its conductor bound and fundamental part.
pub fn decompose(delta: Discriminant) -> DiscriminantDecomposition {
    // |Δ| = m · s² with m squarefree
    let mut rest = delta.abs();
    let mut m = 1u64;
    let mut s = 1u64;
    let mut q = 2u64;
    while q * q <= rest {
        let mut e = 0;
        while rest % q == 0 {
            rest /= q;
            e += 1;
        }
        s *= q.pow(e / 2);
        if e % 2 == 1 {
            m *= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    m *= rest;
    let d0 = -(m as i64);
    let (fundamental, v) = if d0.rem_euclid(4) == 1 {
        (d0, s)
    } else {
        (4 * d0, s / 2)
    };
    debug_assert_eq!(delta.value(), fundamental * (v * v) as i64);
    DiscriminantDecomposition {
        delta,
        conductor_bound: v,
        fundamental: Discriminant(fundamental),
        divisors: divisors(v),
    }
}

/// All positive divisors of `n`, increasing.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `ℓ`-adic valuation of `n > 0`.
pub fn valuation(mut n: u64, ell: u64) -> u32 {
    let mut k = 0;
    while n % ell == 0 {
        n /= ell;
        k += 1;
    }
    k
}

/// The form `a x² + b xy + c y²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadraticForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let QuadraticForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The reduced representative of the proper equivalence class.
    pub fn reduce(&self) -> Result<QuadraticForm> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite { a: self.a, b: self.b, c: self.c });
        }
        let disc = self.discriminant() as i128;
        let (mut a, mut b) = (self.a as i128, self.b as i128);
        let mut c = self.c as i128;
        loop {
            // translate b into (-a, a]
            let two_a = 2 * a;
            let mut nb = b.rem_euclid(two_a);
            if nb > a {
                nb -= two_a;
            }
            if nb != b {
                b = nb;
                c = (b * b - disc) / (4 * a);
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            break;
        }
        if a == c && b < 0 {
            b = -b;
        }
        Ok(QuadraticForm { a: a as i64, b: b as i64, c: c as i64 })
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Every reduced primitive form of discriminant `disc`.
pub fn reduced_forms(disc: Discriminant) -> Vec<QuadraticForm> {
    let d = disc.value();
    let abs = disc.abs() as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= abs {
        let start = if (a - d).rem_euclid(2) == 0 { -a } else { -a + 1 };
        let mut b = start;
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let form = QuadraticForm::new(a, b, num / (4 * a));
                if form.is_reduced() && form.is_primitive() {
                    out.push(form);
                }
            }
            b += 2;
        }
        a += 1;
    }
    out
}

/// Class number, unit count and weighted class number of one discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub disc: Discriminant,
    pub h: u64,
    pub w: u32,
    pub h_star: Exact,
    pub ring_class_degree: u64,
}

pub fn class_number(disc: Discriminant) -> ClassData {
    let h = reduced_forms(disc).len() as u64;
    let w = disc.unit_count();
    ClassData {
        disc,
        h,
        w,
        h_star: Exact::new(h as i64, w as i64),
        ring_class_degree: 2 * h,
    }
}

/// `h(f² D_K)` from `h(D_K)` by the conductor formula
/// `h(O_f) = h(O_K) f / [O_K^× : O_f^×] · ∏_{ℓ | f} (1 - (D_K | ℓ)/ℓ)`.
pub fn class_number_by_formula(fundamental: Discriminant, f: u64) -> Result<u64> {
    if !fundamental.is_fundamental() {
        return Err(Error::NotFundamental(fundamental.value()));
    }
    let hk = class_number(fundamental).h;
    if f == 1 {
        return Ok(hk);
    }
    let mut num = hk * f;
    let mut den = 1u64;
    for ell in crate::finitefield::prime_factors(f) {
        let chi = kronecker(fundamental.value(), ell as i64) as i64;
        num *= (ell as i64 - chi) as u64;
        den *= ell;
    }
    let unit_index = (fundamental.unit_count() / 2) as u64;
    debug_assert_eq!(num % (den * unit_index), 0);
    Ok(num / (den * unit_index))
}

/// The divisor-sum bookkeeping `H(Δ) = Σ_{f | v} h*(D_f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedDecomposition {
    pub decomposition: DiscriminantDecomposition,
    pub per_f: BTreeMap<u64, ClassData>,
    /// `Σ_f h(D_f)/w(D_f)`: the weighted total as used by the densities.
    pub total: Exact,
    /// `Σ_f h(D_f)`: the Kronecker class number.
    pub kronecker_sum: u64,
    /// `Σ_f 2 h(D_f)/w(D_f)`: the classical Hurwitz class number (twice `total`).
    pub classical_hurwitz: Exact,
}

pub fn weighted_decomposition(delta: Discriminant) -> WeightedDecomposition {
    let decomposition = decompose(delta);
    let per_f: BTreeMap<u64, ClassData> = decomposition
        .divisors
        .iter()
        .map(|&f| (f, class_number(decomposition.order_discriminant(f))))
        .collect();
    let total = per_f.values().map(|c| c.h_star).sum::<Exact>();
    let kronecker_sum = per_f.values().map(|c| c.h).sum();
    WeightedDecomposition {
        decomposition,
        per_f,
        total,
        kronecker_sum,
        classical_hurwitz: total * Exact::integer(2),
    }
}
