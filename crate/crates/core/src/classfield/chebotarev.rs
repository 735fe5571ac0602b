//! Prime counts `π_D(x)` of primes admitting CM by `O_D`, against `1/(2h(D))`.

use rayon::prelude::*;
use serde::Serialize;

use super::representation::is_representable;
use crate::finitefield::isqrt;
use crate::quadforms::{class_number, Discriminant};
use crate::rational::decimal_12;
use crate::Exact;

const BLOCK: u64 = 1 << 18;

/// Primes `≤ n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n as usize + 1];
    let mut out = Vec::new();
    for i in 2..=n as usize {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut k = i * i;
        while k <= n as usize {
            composite[k] = true;
            k += i;
        }
    }
    out
}

/// Primes in `[lo, hi)`, given all primes up to `√hi`.
fn segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let mut composite = vec![false; (hi - lo) as usize];
    for &q in base {
        if q * q >= hi {
            break;
        }
        let mut m = (q * q).max(lo.div_ceil(q) * q);
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += q;
        }
    }
    (lo.max(2)..hi).filter(|&n| !composite[(n - lo) as usize]).collect()
}

/// `10³, 10⁴, …` below `x_max`, then `x_max` itself.
pub fn checkpoints(x_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 1000;
    while x < x_max {
        out.push(x);
        x *= 10;
    }
    out.push(x_max);
    out
}

/// `Li(x) = ∫₂ˣ du / ln u`, by adaptive Simpson in the variable `s = ln u`.
pub fn li(x: f64) -> f64 {
    if x <= 2.0 {
        return 0.0;
    }
    let f = |s: f64| s.exp() / s;
    let (a, b) = (2f64.ln(), x.ln());
    let whole = simpson(&f, a, b);
    adaptive(&f, a, b, whole, 1e-12 * x / x.ln(), 50)
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, left, tol / 2.0, depth - 1) + adaptive(f, m, b, right, tol / 2.0, depth - 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct Checkpoint {
    pub x: u64,
    pub primes_tested: u64,
    pub qualifying: u64,
    pub empirical: String,
    pub reference: String,
    pub li_over_2h: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub disc: Discriminant,
    pub h: u64,
    pub x_max: u64,
    pub primes_tested: u64,
    pub qualifying: u64,
    pub empirical_density: Exact,
    pub reference_density: Exact,
    pub li_reference: f64,
    pub per_checkpoint: Vec<Checkpoint>,
}

impl ScanReport {
    pub fn deviation(&self) -> f64 {
        (self.empirical_density.to_f64() - self.reference_density.to_f64()).abs()
    }

    /// `|empirical − reference|` at the checkpoint `x`, if it was recorded.
    pub fn deviation_at(&self, x: u64) -> Option<f64> {
        let r = 1.0 / (2 * self.h) as f64;
        self.per_checkpoint
            .iter()
            .find(|c| c.x == x)
            .map(|c| (c.qualifying as f64 / c.primes_tested as f64 - r).abs())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,primes_tested,qualifying,empirical,reference,li_over_2h\n");
        for c in &self.per_checkpoint {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.x, c.primes_tested, c.qualifying, c.empirical, c.reference, c.li_over_2h
            ));
        }
        out
    }
}

/// Counts primes `p ≤ x_max`, `p ∤ D`, for which `4p = t² + |D| v²` with `p ∤ t`.
///
/// The range is cut into sieve blocks scanned in parallel on the current
/// rayon pool.
pub fn chebotarev_scan(disc: Discriminant, x_max: u64) -> ScanReport {
    let d = disc.abs();
    let h = class_number(disc).h;
    let marks = checkpoints(x_max);
    let base = primes_up_to(isqrt(x_max) + 1);
    let blocks = x_max / BLOCK + 1;
    let counts = (0..blocks)
        .into_par_iter()
        .map(|i| {
            let lo = i * BLOCK;
            let hi = ((i + 1) * BLOCK).min(x_max + 1);
            let mut local = vec![(0u64, 0u64); marks.len()];
            for p in segment(lo, hi, &base) {
                if d % p == 0 {
                    continue;
                }
                let k = marks.partition_point(|&x| x < p);
                local[k].0 += 1;
                if is_representable(d, p) {
                    local[k].1 += 1;
                }
            }
            local
        })
        .reduce(
            || vec![(0, 0); marks.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| {
                    x.0 += y.0;
                    x.1 += y.1;
                });
                a
            },
        );
    let reference = Exact::new(1, 2 * h as i64);
    let mut tested = 0;
    let mut qualifying = 0;
    let per_checkpoint = marks
        .iter()
        .zip(&counts)
        .map(|(&x, &(n, q))| {
            tested += n;
            qualifying += q;
            Checkpoint {
                x,
                primes_tested: tested,
                qualifying,
                empirical: decimal_12(qualifying as f64 / tested.max(1) as f64),
                reference: reference.decimal(),
                li_over_2h: decimal_12(li(x as f64) / (2 * h) as f64),
            }
        })
        .collect();
    ScanReport {
        disc,
        h,
        x_max,
        primes_tested: tested,
        qualifying,
        empirical_density: Exact::new(qualifying as i64, tested.max(1) as i64),
        reference_density: reference,
        li_reference: li(x_max as f64) / (2 * h) as f64,
        per_checkpoint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::is_prime;

    #[test]
    fn segmented_sieve_matches_trial_division() {
        let base = primes_up_to(1000);
        for (lo, hi) in [(0, 1000), (1000, 5000), (999_000, 1_000_000)] {
            let expect: Vec<u64> = (lo..hi).filter(|&n| is_prime(n)).collect();
            assert_eq!(segment(lo, hi, &base), expect);
        }
    }

    #[test]
    fn li_reference_values() {
        assert!((li(1e6) - 78626.504).abs() / 78626.504 < 1e-7);
        assert!((li(1e3) - 176.5645).abs() / 176.5645 < 1e-6);
        assert!((li(1e8) - 5_762_208.33).abs() / 5_762_208.33 < 1e-8);
    }

    #[test]
    fn scan_of_minus_four_counts_primes_one_mod_four() {
        let r = chebotarev_scan(Discriminant::new(-4).unwrap(), 1000);
        assert_eq!(r.primes_tested, 167);
        assert_eq!(r.qualifying, 80);
        assert_eq!(r.per_checkpoint.len(), 1);
        assert_eq!(r.reference_density, Exact::new(1, 2));
    }

    #[test]
    fn scan_counts_match_direct_enumeration() {
        for d in [-7i64, -8, -23, -71] {
            let disc = Discriminant::new(d).unwrap();
            let r = chebotarev_scan(disc, 20_000);
            let (mut n, mut q) = (0, 0);
            for p in (2..=20_000u64).filter(|&p| is_prime(p) && disc.abs() % p != 0) {
                n += 1;
                if super::super::representation::representation_loop(disc.abs(), p).is_some() {
                    q += 1;
                }
            }
            assert_eq!((r.primes_tested, r.qualifying), (n, q));
            assert_eq!(r.per_checkpoint.iter().map(|c| c.x).collect::<Vec<_>>(), vec![1000, 10_000, 20_000]);
        }
    }
}
