//! Range-wide verification suites over censuses, volcanoes and CM channels.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::census::{build_census, verify_deuring_counts, Census, DEFAULT_CENSUS_BOUND};
use crate::classfield::{cm_channels, embedded_discriminants};
use crate::finitefield::{is_prime, kronecker, PrimeField};
use crate::volcano::verify_class;
use crate::{Error, Result};

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub exempt: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: SuiteReport) -> Self {
        self.checked += other.checked;
        self.exempt += other.exempt;
        self.failures.extend(other.failures);
        self
    }

    fn named(name: &str) -> Self {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }
}

fn primes_in(range: RangeInclusive<u64>) -> Vec<u64> {
    range.filter(|&p| p >= 5 && is_prime(p)).collect()
}

fn census(p: u64) -> Result<Census> {
    build_census(PrimeField::new(p)?, DEFAULT_CENSUS_BOUND)
}

/// Per-order `j`-counts against `h(D_f)` for every ordinary class.
pub fn deuring_suite(range: RangeInclusive<u64>) -> Result<SuiteReport> {
    let parts = primes_in(range)
        .into_par_iter()
        .map(|p| {
            let mut report = SuiteReport::named("deuring");
            let c = census(p)?;
            for s in c.classes.values() {
                report.checked += 1;
                match verify_deuring_counts(s) {
                    Ok(_) => {}
                    Err(e) if e.is_verification_failure() => report.failures.push(e.to_string()),
                    Err(e) => return Err(e),
                }
            }
            if c.total_isomorphism_classes() as u64 != c.expected_isomorphism_classes() {
                report.failures.push(format!("p={p}: census does not partition the isomorphism classes"));
            }
            Ok(report)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(SuiteReport::named("deuring"), SuiteReport::merge))
}

/// Degree and level laws on every component of every class, for each `ℓ`.
pub fn volcano_suite(range: RangeInclusive<u64>, levels: &[u64]) -> Result<SuiteReport> {
    let parts = primes_in(range)
        .into_par_iter()
        .map(|p| {
            let mut report = SuiteReport::named("volcano");
            let c = census(p)?;
            for s in c.classes.values() {
                for &ell in levels.iter().filter(|&&l| l != p) {
                    let components = match verify_class(s, ell) {
                        Ok(c) => c,
                        Err(e) if e.is_verification_failure() => {
                            report.failures.push(format!("p={p} t={} ℓ={ell}: {e}", s.t));
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    for (_, r) in components {
                        if r.exempt {
                            report.exempt += 1;
                            continue;
                        }
                        report.checked += 1;
                        for v in r.violations {
                            report.failures.push(format!("p={p} t={} ℓ={ell}: {v}", s.t));
                        }
                    }
                }
            }
            Ok(report)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(SuiteReport::named("volcano"), SuiteReport::merge))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeSelection {
    /// Every `p ∤ D` with `H_D mod p` squarefree.
    All,
    /// Only primes split in the quadratic field, `(D | p) = 1`.
    Split,
}

#[derive(Clone, Debug, Serialize)]
pub struct CmSuiteReport {
    #[serde(flatten)]
    pub suite: SuiteReport,
    pub selection: PrimeSelection,
    /// Skipped because `H_D mod p` is not squarefree.
    pub skipped: usize,
    /// Failures at primes inert in the quadratic field.
    pub inert_failures: usize,
}

/// Agreement of the representation, splitting and census channels.
///
/// The census channel is consulted for `p ≤ census_max`.
pub fn cm_equivalence_suite(p_max: u64, census_max: u64, selection: PrimeSelection) -> Result<CmSuiteReport> {
    let discs = embedded_discriminants();
    let parts = primes_in(5..=p_max)
        .into_par_iter()
        .map(|p| {
            let field = PrimeField::new(p)?;
            let c = if p <= census_max {
                let mut c = census(p)?;
                c.classify()?;
                Some(c)
            } else {
                None
            };
            let mut report = SuiteReport::named("cm-equivalence");
            let (mut skipped, mut inert) = (0, 0);
            for &d in &discs {
                if d.abs() % p == 0 {
                    continue;
                }
                let chi = kronecker(d.value(), p as i64);
                if selection == PrimeSelection::Split && chi != 1 {
                    continue;
                }
                let record = match cm_channels(d, field, c.as_ref()) {
                    Ok(r) => r,
                    Err(Error::PrimeDividesDiscriminant { .. }) => continue,
                    Err(e) => return Err(e),
                };
                if record.by_splitting.is_none() {
                    skipped += 1;
                    continue;
                }
                report.checked += 1;
                let violations = record.violations();
                if !violations.is_empty() {
                    if chi == -1 {
                        inert += 1;
                    }
                    report.failures.push(format!("D={d} p={p}: {}", violations.join("; ")));
                }
            }
            Ok((report, skipped, inert))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = CmSuiteReport {
        suite: SuiteReport::named("cm-equivalence"),
        selection,
        skipped: 0,
        inert_failures: 0,
    };
    for (r, s, i) in parts {
        out.suite = out.suite.merge(r);
        out.skipped += s;
        out.inert_failures += i;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges_pass() {
        assert!(deuring_suite(5..=60).unwrap().passed());
        let v = volcano_suite(5..=60, &[2, 3]).unwrap();
        assert!(v.passed(), "{:?}", v.failures);
        assert!(v.checked > 0);
        let cm = cm_equivalence_suite(200, 60, PrimeSelection::Split).unwrap();
        assert!(cm.suite.passed(), "{:?}", cm.suite.failures);
    }

    #[test]
    fn literal_selection_fails_only_at_inert_primes() {
        let cm = cm_equivalence_suite(200, 60, PrimeSelection::All).unwrap();
        assert!(!cm.suite.passed());
        assert_eq!(cm.inert_failures, cm.suite.failures.len());
    }
}
