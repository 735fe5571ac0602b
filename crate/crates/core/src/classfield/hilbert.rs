//! Embedded Hilbert class polynomials `H_D`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::finitefield::{reduce_decimal, FpPolynomial, PrimeField};
use crate::quadforms::Discriminant;
use crate::{Error, Result};

const TABLE: &str = include_str!("../../data/hilbert.txt");

/// `H_D` over the integers, constant term first.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertEntry {
    pub disc: Discriminant,
    pub coefficients: Vec<&'static str>,
}

impl HilbertEntry {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last() == Some(&"1")
    }

    pub fn reduce(&self, field: PrimeField) -> FpPolynomial {
        let coeffs = self.coefficients.iter().map(|c| reduce_decimal(c, field.p())).collect();
        FpPolynomial::new(field, coeffs)
    }
}

pub fn hilbert_table() -> &'static [HilbertEntry] {
    static CELL: OnceLock<Vec<HilbertEntry>> = OnceLock::new();
    CELL.get_or_init(|| {
        TABLE
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let mut parts = line.split_whitespace();
                let d: i64 = parts.next().and_then(|s| s.parse().ok()).expect("hilbert table discriminant");
                HilbertEntry {
                    disc: Discriminant::new(d).expect("hilbert table discriminant"),
                    coefficients: parts.collect(),
                }
            })
            .collect()
    })
}

pub fn embedded_discriminants() -> Vec<Discriminant> {
    hilbert_table().iter().map(|e| e.disc).collect()
}

pub fn hilbert_entry(disc: Discriminant) -> Result<&'static HilbertEntry> {
    hilbert_table()
        .iter()
        .find(|e| e.disc == disc)
        .ok_or(Error::UnsupportedDiscriminant(disc.value()))
}

pub fn hilbert_mod_p(disc: Discriminant, field: PrimeField) -> Result<FpPolynomial> {
    Ok(hilbert_entry(disc)?.reduce(field))
}
