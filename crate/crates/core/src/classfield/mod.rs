//! CM existence per prime and the density of primes admitting it.
//!
//! Three independent channels decide whether some ordinary curve over `F_p`
//! has endomorphism ring `O_D`: solvability of `4p = t² + |D| v²`, complete
//! splitting of `H_D mod p`, and a lookup in an exhaustive census.

mod chebotarev;
mod hilbert;
mod representation;

pub use chebotarev::{chebotarev_scan, checkpoints, li, primes_up_to, Checkpoint, ScanReport};
pub use hilbert::{embedded_discriminants, hilbert_entry, hilbert_mod_p, hilbert_table, HilbertEntry};
pub use representation::{is_representable, representation_by_trace, representation_test};

use serde::Serialize;

use crate::census::Census;
use crate::finitefield::PrimeField;
use crate::quadforms::{class_number, Discriminant};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceRecord {
    pub disc: Discriminant,
    pub p: u64,
    pub h: u64,
    pub representation: Option<(u64, u64)>,
    pub by_representation: bool,
    /// `None` when `D` is not embedded or `H_D mod p` is not squarefree.
    pub by_splitting: Option<bool>,
    pub root_count: Option<usize>,
    pub roots: Option<Vec<u64>>,
    pub by_census: Option<bool>,
    /// Census `j`-invariants with `End ≅ O_D`, when a census was supplied.
    pub census_j: Option<Vec<u64>>,
}

impl ExistenceRecord {
    pub fn channels(&self) -> Vec<(&'static str, bool)> {
        let mut out = vec![("representation", self.by_representation)];
        if let Some(b) = self.by_splitting {
            out.push(("splitting", b));
        }
        if let Some(b) = self.by_census {
            out.push(("census", b));
        }
        out
    }

    pub fn agrees(&self) -> bool {
        self.channels().iter().all(|&(_, b)| b == self.by_representation)
    }

    /// Every clause of the equivalence, as human-readable failures.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.agrees() {
            let desc: Vec<String> = self.channels().iter().map(|(n, b)| format!("{n}={b}")).collect();
            out.push(desc.join(" "));
        }
        if self.by_representation {
            if let Some(n) = self.root_count {
                if n as u64 != self.h {
                    out.push(format!("{n} distinct roots of H_D, expected h={}", self.h));
                }
            }
        }
        if let (Some(roots), Some(js)) = (&self.roots, &self.census_j) {
            if self.by_representation && roots != js {
                out.push(format!("roots {roots:?} differ from census j-invariants {js:?}"));
            }
        }
        out
    }
}

/// Evaluates every available channel without asserting agreement.
pub fn cm_channels(disc: Discriminant, field: PrimeField, census: Option<&Census>) -> Result<ExistenceRecord> {
    let p = field.p();
    if disc.abs() % p == 0 {
        return Err(Error::PrimeDividesDiscriminant { p, d: disc.value() });
    }
    let representation = representation_test(disc, p)?;
    let (by_splitting, root_count, roots) = match hilbert_entry(disc) {
        Ok(entry) => {
            let h = entry.reduce(field);
            match h.splits_completely() {
                Ok(b) => (Some(b), Some(h.count_distinct_roots()), Some(h.roots())),
                Err(Error::NotSquarefree { .. }) => {
                    log::info!("splitting channel skipped for D={} at p={p}: H_D mod p is not squarefree", disc);
                    (None, None, None)
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::UnsupportedDiscriminant(_)) => (None, None, None),
        Err(e) => return Err(e),
    };
    let census_j = census
        .filter(|c| c.field.p() == p)
        .map(|c| c.j_with_order(disc).into_iter().collect::<Vec<u64>>());
    Ok(ExistenceRecord {
        disc,
        p,
        h: class_number(disc).h,
        by_representation: representation.is_some(),
        representation,
        by_splitting,
        root_count,
        roots,
        by_census: census_j.as_ref().map(|js| !js.is_empty()),
        census_j,
    })
}

/// [`cm_channels`], with any disagreement or wrong root count a hard error.
pub fn cm_existence(disc: Discriminant, field: PrimeField, census: Option<&Census>) -> Result<ExistenceRecord> {
    let record = cm_channels(disc, field, census)?;
    let violations = record.violations();
    if violations.is_empty() {
        Ok(record)
    } else {
        Err(Error::ChannelDisagreement { d: disc.value(), p: field.p(), detail: violations.join("; ") })
    }
}
