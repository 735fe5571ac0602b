//! Division polynomials and the action of Frobenius on `E[ℓ]`.

use std::collections::BTreeMap;

use super::Curve;
use crate::finitefield::{FpPolynomial, PrimeField};
use crate::{Error, Result};

/// Univariate division polynomial in `x`.
///
/// For odd `n` this is `ψ_n`; for even `n` it is `ψ_n / 2y`.
pub fn division_polynomial(n: u64, a: u64, b: u64, field: PrimeField) -> FpPolynomial {
    let mut memo = BTreeMap::new();
    DivisionPolys { a, b, field, four_cubic_sq: four_cubic_sq(a, b, field) }.get(n, &mut memo)
}

/// `(4(x³ + ax + b))²`.
fn four_cubic_sq(a: u64, b: u64, field: PrimeField) -> FpPolynomial {
    let f = FpPolynomial::new(field, vec![b, a, 0, 1]).scale(4);
    f.mul(&f)
}

struct DivisionPolys {
    a: u64,
    b: u64,
    field: PrimeField,
    four_cubic_sq: FpPolynomial,
}

impl DivisionPolys {
    fn get(&self, n: u64, memo: &mut BTreeMap<u64, FpPolynomial>) -> FpPolynomial {
        if let Some(g) = memo.get(&n) {
            return g.clone();
        }
        let f = self.field;
        let (a, b) = (self.a, self.b);
        let a2 = f.mul(a, a);
        let g = match n {
            0 => FpPolynomial::zero(f),
            1 | 2 => FpPolynomial::constant(f, 1),
            3 => FpPolynomial::new(f, vec![f.neg(a2), f.mul(12, b), f.mul(6, a), 0, 3]),
            4 => FpPolynomial::new(
                f,
                vec![
                    f.neg(f.add(f.mul(8, f.mul(b, b)), f.mul(a2, a))),
                    f.neg(f.mul(4, f.mul(a, b))),
                    f.neg(f.mul(5, a2)),
                    f.mul(20, b),
                    f.mul(5, a),
                    0,
                    1,
                ],
            )
            .scale(2),
            n if n % 2 == 1 => {
                let m = n / 2;
                let gm2 = self.get(m + 2, memo);
                let gm = self.get(m, memo);
                let gm1 = self.get(m - 1, memo);
                let gp1 = self.get(m + 1, memo);
                let left = gm2.mul(&gm.mul(&gm).mul(&gm));
                let right = gm1.mul(&gp1.mul(&gp1).mul(&gp1));
                if m % 2 == 0 {
                    self.four_cubic_sq.mul(&left).sub(&right)
                } else {
                    left.sub(&self.four_cubic_sq.mul(&right))
                }
            }
            n => {
                let m = n / 2;
                let gm = self.get(m, memo);
                let gm2 = self.get(m + 2, memo);
                let gm1 = self.get(m - 1, memo);
                let gmm2 = self.get(m - 2, memo);
                let gp1 = self.get(m + 1, memo);
                gm.mul(&gm2.mul(&gm1.mul(&gm1)).sub(&gmm2.mul(&gp1.mul(&gp1))))
            }
        };
        memo.insert(n, g.clone());
        g
    }
}

/// Whether Frobenius acts on `E[ℓ]` as a scalar, for an odd prime `ℓ != p`.
///
/// Equivalent to `(π - λ)/ℓ ∈ End(E)` for some integer `λ`, i.e. to
/// `ℓ | [End(E) : Z[π]]`. Requires `ℓ² | t² - 4p`, otherwise it is false.
/// The only possible scalar is `λ = t/2 mod ℓ`, and `π = ±[λ]` pointwise on
/// `E[ℓ]` forces `π = [λ]`, so it suffices to compare x-coordinates:
/// `X^p ≡ x([λ]P) (mod ψ_ℓ)`.
pub fn frobenius_is_scalar_mod(curve: &Curve, ell: u64) -> Result<bool> {
    let f = curve.field;
    let p = f.p();
    if ell == p {
        return Err(Error::LevelIsCharacteristic(ell));
    }
    if ell < 3 || !crate::finitefield::is_prime(ell) {
        return Err(Error::UnsupportedLevel(ell));
    }
    let delta = curve.trace as i128 * curve.trace as i128 - 4 * p as i128;
    if delta.rem_euclid((ell * ell) as i128) != 0 {
        return Ok(false);
    }
    let t = curve.trace.rem_euclid(ell as i64) as u64;
    let lambda = t * (ell + 1) / 2 % ell;
    let lambda = lambda.min(ell - lambda);
    let polys = DivisionPolys { a: curve.a, b: curve.b, field: f, four_cubic_sq: four_cubic_sq(curve.a, curve.b, f) };
    let mut memo = BTreeMap::new();
    let psi = polys.get(ell, &mut memo);
    let below = polys.get(lambda - 1, &mut memo);
    let at = polys.get(lambda, &mut memo);
    let above = polys.get(lambda + 1, &mut memo);
    let four_cubic = FpPolynomial::new(f, vec![curve.b, curve.a, 0, 1]).scale(4);
    // x([n]P) = x - ψ_{n-1} ψ_{n+1} / ψ_n², with the 2y factor on even indices
    let (num, den) = if lambda % 2 == 0 {
        (below.mul(&above), four_cubic.mul(&at.mul(&at)))
    } else {
        (four_cubic.mul(&below.mul(&above)), at.mul(&at))
    };
    let (num, den) = (num.rem(&psi)?, den.rem(&psi)?);
    let x = FpPolynomial::x(f);
    let frob = x.powmod(p, &psi)?;
    let lhs = frob.mul(&den).rem(&psi)?;
    let rhs = x.mul(&den).sub(&num).rem(&psi)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{curves_for_j, is_singular};

    type Point = Option<(u64, u64)>;

    fn add(p1: Point, p2: Point, a: u64, f: PrimeField) -> Point {
        let (Some((x1, y1)), Some((x2, y2))) = (p1, p2) else {
            return p1.or(p2);
        };
        let slope = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return None;
            }
            let num = f.add(f.mul(3, f.mul(x1, x1)), a);
            f.mul(num, f.inv(f.mul(2, y1)).unwrap())
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)).unwrap())
        };
        let x3 = f.sub(f.sub(f.mul(slope, slope), x1), x2);
        let y3 = f.sub(f.mul(slope, f.sub(x1, x3)), y1);
        Some((x3, y3))
    }

    fn multiple(n: u64, pt: Point, a: u64, f: PrimeField) -> Point {
        (0..n).fold(None, |acc, _| add(acc, pt, a, f))
    }

    #[test]
    fn division_polynomial_roots_are_torsion_abscissae() {
        for p in [13u64, 17, 31, 37] {
            let f = PrimeField::new(p).unwrap();
            for (a, b) in [(1u64, 1u64), (2, 5), (3, 7), (0, 3), (5, 0)] {
                if is_singular(a, b, f) {
                    continue;
                }
                for n in [3u64, 5, 7] {
                    let psi = division_polynomial(n, a, b, f);
                    assert_eq!(psi.degree(), Some(((n * n - 1) / 2) as usize));
                    for x in 0..p {
                        let rhs = f.add(f.mul(f.add(f.mul(x, x), a), x), b);
                        let Some(y) = f.sqrt(rhs) else { continue };
                        let torsion = multiple(n, Some((x, y)), a, f).is_none();
                        assert_eq!(psi.eval(x) == 0, torsion, "n={n} x={x} a={a} b={b} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn even_division_polynomial() {
        // ψ_4 / 2y vanishes at x(P) for points of exact order 4
        let f = PrimeField::new(29).unwrap();
        let (a, b) = (4u64, 3u64);
        let g = division_polynomial(4, a, b, f);
        for x in 0..29 {
            let rhs = f.add(f.mul(f.add(f.mul(x, x), a), x), b);
            let Some(y) = f.sqrt(rhs) else { continue };
            if y == 0 {
                continue;
            }
            let order4 = multiple(4, Some((x, y)), a, f).is_none();
            assert_eq!(g.eval(x) == 0, order4, "x={x}");
        }
    }

    #[test]
    fn scalar_frobenius_detects_full_rational_torsion() {
        // E[3] ⊆ E(F_p) forces π ≡ 1 on E[3]; such a curve must be detected as scalar.
        let f = PrimeField::new(43).unwrap();
        let mut found = 0;
        for j in 0..43 {
            for c in curves_for_j(j, f) {
                if c.trace == 0 {
                    continue;
                }
                let psi = division_polynomial(3, c.a, c.b, f);
                let full_rational = psi.count_distinct_roots() == 4
                    && psi.roots().iter().all(|&x| {
                        f.legendre(f.add(f.mul(f.add(f.mul(x, x), c.a), x), c.b)) == 1
                    });
                if full_rational {
                    found += 1;
                    assert_eq!(frobenius_is_scalar_mod(&c, 3), Ok(true));
                }
            }
        }
        assert!(found > 0);
    }

    /// `X^(p^k) ≡ X (mod ψ_ℓ)` with `k` the order of `t/2` in `F_ℓ^*/{±1}`.
    fn scalar_by_frobenius_order(c: &Curve, ell: u64) -> bool {
        let f = c.field;
        let delta = c.trace * c.trace - 4 * f.p() as i64;
        if delta.rem_euclid((ell * ell) as i64) != 0 {
            return false;
        }
        let lambda = c.trace.rem_euclid(ell as i64) as u64 * (ell + 1) / 2 % ell;
        let (mut k, mut power) = (1, lambda);
        while power != 1 && power != ell - 1 {
            power = power * lambda % ell;
            k += 1;
        }
        let psi = division_polynomial(ell, c.a, c.b, f);
        let x = FpPolynomial::x(f);
        let frob = (0..k).fold(x.clone(), |g, _| g.powmod(f.p(), &psi).unwrap());
        frob == x.rem(&psi).unwrap()
    }

    #[test]
    fn scalar_test_matches_frobenius_order_test() {
        let mut scalar = 0;
        let mut checked = 0;
        for p in [101u64, 211, 331, 433, 461, 487] {
            let f = PrimeField::new(p).unwrap();
            for j in 0..p {
                for c in curves_for_j(j, f) {
                    if c.trace == 0 {
                        continue;
                    }
                    for ell in [3u64, 5, 7, 11] {
                        let delta = c.trace * c.trace - 4 * p as i64;
                        if delta % (ell * ell) as i64 != 0 {
                            continue;
                        }
                        checked += 1;
                        let fast = frobenius_is_scalar_mod(&c, ell).unwrap();
                        assert_eq!(fast, scalar_by_frobenius_order(&c, ell), "p={p} j={j} t={} ℓ={ell}", c.trace);
                        scalar += fast as usize;
                    }
                }
            }
        }
        assert!(scalar > 0 && scalar < checked);
    }
}
