//! Embedded classical modular polynomials `Φ_ℓ(X, Y)` for `ℓ ∈ {2, 3, 5, 7}`.

use std::sync::OnceLock;

use crate::finitefield::{reduce_decimal, FpPolynomial, PrimeField};
use crate::{Error, Result};

pub const SUPPORTED_LEVELS: [u64; 4] = [2, 3, 5, 7];

const TABLE_2: &str = include_str!("../../data/phi2.txt");
const TABLE_3: &str = include_str!("../../data/phi3.txt");
const TABLE_5: &str = include_str!("../../data/phi5.txt");
const TABLE_7: &str = include_str!("../../data/phi7.txt");

/// Integer coefficient table of `Φ_ℓ`; `coefficient(a, b)` multiplies `X^a Y^b`.
#[derive(Debug)]
pub struct ModularPolynomial {
    level: u64,
    coefficients: Vec<Vec<&'static str>>,
}

pub fn modular_polynomial(level: u64) -> Result<&'static ModularPolynomial> {
    static CELLS: [OnceLock<ModularPolynomial>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let (idx, table) = match level {
        2 => (0, TABLE_2),
        3 => (1, TABLE_3),
        5 => (2, TABLE_5),
        7 => (3, TABLE_7),
        _ => return Err(Error::UnsupportedLevel(level)),
    };
    Ok(CELLS[idx].get_or_init(|| ModularPolynomial::parse(level, table)))
}

impl ModularPolynomial {
    fn parse(level: u64, table: &'static str) -> Self {
        let n = level as usize + 2;
        let mut coefficients = vec![vec!["0"; n]; n];
        for line in table.lines().filter(|l| !l.trim().is_empty()) {
            let mut parts = line.split_whitespace();
            let a: usize = parts.next().and_then(|s| s.parse().ok()).expect("row index");
            let b: usize = parts.next().and_then(|s| s.parse().ok()).expect("column index");
            let value = parts.next().expect("coefficient");
            coefficients[a][b] = value;
        }
        ModularPolynomial { level, coefficients }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coefficient(&self, a: usize, b: usize) -> &'static str {
        self.coefficients
            .get(a)
            .and_then(|row| row.get(b))
            .copied()
            .unwrap_or("0")
    }

    /// Table equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        let n = self.coefficients.len();
        (0..n).all(|a| (0..n).all(|b| self.coefficients[a][b] == self.coefficients[b][a]))
    }

    /// Largest `a` with a nonzero coefficient of `X^a`.
    pub fn degree_in_x(&self) -> usize {
        (0..self.coefficients.len())
            .rev()
            .find(|&a| self.coefficients[a].iter().any(|&c| c != "0"))
            .unwrap_or(0)
    }

    /// `Φ_ℓ ≡ (X^ℓ - Y)(X - Y^ℓ) (mod ℓ)`.
    pub fn satisfies_kronecker_congruence(&self) -> bool {
        let l = self.level as usize;
        let n = self.coefficients.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let expected = match (a, b) {
                    (x, 0) | (0, x) if x == l + 1 => 1,
                    (x, y) if x == l && y == l => self.level - 1,
                    (1, 1) => self.level - 1,
                    _ => 0,
                };
                reduce_decimal(self.coefficients[a][b], self.level) == expected
            })
        })
    }

    pub fn reduce(&self, field: PrimeField) -> ReducedModularPolynomial {
        let coeffs = self
            .coefficients
            .iter()
            .map(|row| row.iter().map(|c| field.reduce_decimal(c)).collect())
            .collect();
        ReducedModularPolynomial { level: self.level, field, coeffs }
    }
}

/// `Φ_ℓ` with coefficients reduced mod `p`.
#[derive(Clone, Debug)]
pub struct ReducedModularPolynomial {
    level: u64,
    field: PrimeField,
    coeffs: Vec<Vec<u64>>,
}

impl ReducedModularPolynomial {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `Φ_ℓ(X, j)` as a polynomial in `X`.
    pub fn at_y(&self, j: u64) -> FpPolynomial {
        let f = self.field;
        let out = self
            .coeffs
            .iter()
            .map(|row| row.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, j), c)))
            .collect();
        FpPolynomial::new(f, out)
    }

    pub fn eval(&self, x: u64, y: u64) -> u64 {
        self.at_y(y).eval(x)
    }
}
