//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `h(D)` by listing every reduced primitive form `(a, b, c)`.
pub fn class_number(d: i64) -> u64 {
    let n = -d;
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a, b), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// Largest `f` with `d / f²` a discriminant, and that quotient.
pub fn split_conductor(d: i64) -> (u64, i64) {
    let mut best = (1, d);
    let mut f = 2i64;
    while f * f <= -d {
        if d % (f * f) == 0 {
            let q = d / (f * f);
            if q.rem_euclid(4) == 0 || q.rem_euclid(4) == 1 {
                best = (f as u64, q);
            }
        }
        f += 1;
    }
    best
}

/// `p + 1 - #E(F_p)` by testing every `(x, y)`.
pub fn naive_trace(a: u64, b: u64, p: u64) -> i64 {
    let mut points = 1i64;
    for x in 0..p {
        let rhs = (x * x % p * x + a * x + b) % p;
        for y in 0..p {
            if y * y % p == rhs {
                points += 1;
            }
        }
    }
    p as i64 + 1 - points
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}
