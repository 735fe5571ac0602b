//! Exhaustive enumeration of the ordinary isogeny classes `I(t, p)` over `F_p`.
//!
//! Isomorphism classes are enumerated per `j`-invariant with all twists, so a
//! census costs `O(p)` point counts of `O(p)` each.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{curves_for_j_with, isomorphism_class_count, Curve};
use crate::finitefield::{PrimeField, QuadraticCharacter};
use crate::quadforms::{
    class_number, decompose, weighted_decomposition, Discriminant, DiscriminantDecomposition,
};
use crate::{volcano, Error, Exact, Result};

pub const DEFAULT_CENSUS_BOUND: u64 = 5000;

/// All curves over `F_p` with Frobenius trace `t`, up to `F_p`-isomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct IsogenyClassSummary {
    pub p: u64,
    pub t: i64,
    pub delta: Discriminant,
    pub decomposition: DiscriminantDecomposition,
    pub members: Vec<Curve>,
    pub j_set: BTreeSet<u64>,
    /// Conductor of `End(E)` per `j`; empty until [`Census::classify`] runs.
    pub ring_of: BTreeMap<u64, u64>,
}

impl IsogenyClassSummary {
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("census field is valid")
    }

    /// The member with invariant `j`.
    pub fn member(&self, j: u64) -> Option<&Curve> {
        self.members.iter().find(|c| c.j == j)
    }

    pub fn is_classified(&self) -> bool {
        self.ring_of.len() == self.j_set.len()
    }

    pub fn contains_special_j(&self) -> bool {
        self.j_set.contains(&0) || self.j_set.contains(&(1728 % self.p))
    }

    /// Invariants with `End(E) ≅ O_f`.
    pub fn j_with_conductor(&self, f: u64) -> Vec<u64> {
        self.ring_of.iter().filter(|&(_, &g)| g == f).map(|(&j, _)| j).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub field: PrimeField,
    pub classes: BTreeMap<i64, IsogenyClassSummary>,
    pub supersingular: Vec<Curve>,
}

/// Builds every ordinary class over `F_p`, `p <= bound`.
pub fn build_census(field: PrimeField, bound: u64) -> Result<Census> {
    let p = field.p();
    if p > bound {
        return Err(Error::CensusBound { p, bound });
    }
    let chi = QuadraticCharacter::new(field);
    let mut curves: Vec<Curve> = (0..p)
        .into_par_iter()
        .flat_map_iter(|j| curves_for_j_with(j, field, &chi))
        .collect();
    curves.sort_by_key(|c| (c.trace, c.j, c.a, c.b));

    let mut classes = BTreeMap::new();
    let mut supersingular = Vec::new();
    for curve in curves {
        if !curve.is_ordinary() {
            supersingular.push(curve);
            continue;
        }
        let t = curve.trace;
        let summary = classes.entry(t).or_insert_with(|| {
            let delta = Discriminant::new(t * t - 4 * p as i64).expect("Hasse bound gives Δ < 0");
            IsogenyClassSummary {
                p,
                t,
                delta,
                decomposition: decompose(delta),
                members: Vec::new(),
                j_set: BTreeSet::new(),
                ring_of: BTreeMap::new(),
            }
        });
        summary.j_set.insert(curve.j);
        summary.members.push(curve);
    }
    Ok(Census { field, classes, supersingular })
}

/// [`build_census`] followed by [`Census::classify`].
pub fn build_classified_census(field: PrimeField, bound: u64) -> Result<Census> {
    let mut census = build_census(field, bound)?;
    census.classify()?;
    Ok(census)
}

impl Census {
    /// Fills `ring_of` for every class.
    pub fn classify(&mut self) -> Result<()> {
        let results: Vec<(i64, Result<BTreeMap<u64, u64>>)> = self
            .classes
            .par_iter()
            .map(|(&t, summary)| (t, volcano::classify_rings(summary)))
            .collect();
        for (t, rings) in results {
            self.classes.get_mut(&t).expect("same keys").ring_of = rings?;
        }
        Ok(())
    }

    pub fn class(&self, t: i64) -> Result<&IsogenyClassSummary> {
        self.classes.get(&t).ok_or(Error::NoSuchClass { p: self.field.p(), t })
    }

    /// Ordinary classes plus supersingular ones.
    pub fn total_isomorphism_classes(&self) -> usize {
        self.classes.values().map(|s| s.members.len()).sum::<usize>() + self.supersingular.len()
    }

    /// Expected value of [`Census::total_isomorphism_classes`].
    pub fn expected_isomorphism_classes(&self) -> u64 {
        isomorphism_class_count(self.field)
    }

    /// Every `j` with `End(E) ≅ O_D`, over all classes.
    pub fn j_with_order(&self, d: Discriminant) -> BTreeSet<u64> {
        let dd = decompose(d);
        self.classes
            .values()
            .filter(|s| s.decomposition.fundamental == dd.fundamental)
            .filter(|s| s.decomposition.conductor_bound % dd.conductor_bound == 0)
            .flat_map(|s| s.j_with_conductor(dd.conductor_bound))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeuringEntry {
    pub f: u64,
    pub d_f: Discriminant,
    pub expected: u64,
    pub actual: u64,
}

/// Per-order counts of one class against the class numbers `h(D_f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeuringRecord {
    pub p: u64,
    pub t: i64,
    pub per_f: Vec<DeuringEntry>,
    pub j_count: usize,
    pub kronecker_sum: u64,
    /// `Σ_{E ∈ I(t,p)} 1/#Aut(E)` over isomorphism classes.
    pub aut_weighted_count: Exact,
    /// `Σ_f h(D_f)/w(D_f)`.
    pub weighted_total: Exact,
    /// `Σ_f 2h(D_f)/w(D_f)`.
    pub classical_hurwitz: Exact,
    pub counts_match: bool,
    pub weighted_identity_holds: bool,
}

/// Checks `#{j : End ≅ O_f} = h(D_f)` for every `f | v`.
///
/// Classifies the class on the fly if `ring_of` is empty.
pub fn verify_deuring_counts(summary: &IsogenyClassSummary) -> Result<DeuringRecord> {
    let computed;
    let ring_of = if summary.is_classified() {
        &summary.ring_of
    } else {
        computed = volcano::classify_rings(summary)?;
        &computed
    };
    let wd = weighted_decomposition(summary.delta);
    let per_f: Vec<DeuringEntry> = wd
        .per_f
        .iter()
        .map(|(&f, data)| DeuringEntry {
            f,
            d_f: data.disc,
            expected: data.h,
            actual: ring_of.values().filter(|&&g| g == f).count() as u64,
        })
        .collect();
    let aut_weighted_count = summary
        .members
        .iter()
        .map(|c| Exact::new(1, c.aut_count as i64))
        .sum::<Exact>();
    let counts_match = per_f.iter().all(|e| e.expected == e.actual)
        && summary.j_set.len() as u64 == wd.kronecker_sum;
    let record = DeuringRecord {
        p: summary.p,
        t: summary.t,
        j_count: summary.j_set.len(),
        kronecker_sum: wd.kronecker_sum,
        aut_weighted_count,
        weighted_total: wd.total,
        classical_hurwitz: wd.classical_hurwitz,
        weighted_identity_holds: aut_weighted_count == wd.total,
        counts_match,
        per_f,
    };
    if !record.counts_match {
        let detail = record
            .per_f
            .iter()
            .map(|e| format!("f={} D_f={} h={} found={}", e.f, e.d_f, e.expected, e.actual))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::DeuringMismatch {
            p: summary.p,
            t: summary.t,
            detail: format!("{detail}; #j={} Σh={}", record.j_count, record.kronecker_sum),
        });
    }
    Ok(record)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusPerF {
    pub f: u64,
    #[serde(rename = "D_f")]
    pub d_f: Discriminant,
    pub h: u64,
    pub h_star: Exact,
    pub j_count: usize,
}

/// JSON shape of one class.
#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub p: u64,
    pub t: i64,
    pub delta: Discriminant,
    pub v: u64,
    #[serde(rename = "D_K")]
    pub d_k: Discriminant,
    pub per_f: Vec<CensusPerF>,
    pub j_invariants: Vec<u64>,
}

impl CensusReport {
    pub fn new(summary: &IsogenyClassSummary) -> Self {
        let dec = &summary.decomposition;
        let per_f = dec
            .divisors
            .iter()
            .map(|&f| {
                let data = class_number(dec.order_discriminant(f));
                CensusPerF {
                    f,
                    d_f: data.disc,
                    h: data.h,
                    h_star: data.h_star,
                    j_count: summary.ring_of.values().filter(|&&g| g == f).count(),
                }
            })
            .collect();
        CensusReport {
            p: summary.p,
            t: summary.t,
            delta: summary.delta,
            v: dec.conductor_bound,
            d_k: dec.fundamental,
            per_f,
            j_invariants: summary.j_set.iter().copied().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(p: u64) -> Census {
        build_classified_census(PrimeField::new(p).unwrap(), DEFAULT_CENSUS_BOUND).unwrap()
    }

    #[test]
    fn class_sizes_examples() {
        assert_eq!(census(13).class(4).unwrap().j_set.len(), 3);
        assert_eq!(census(5).class(2).unwrap().j_set.len(), 2);
        assert_eq!(census(7).class(1).unwrap().j_set.len(), 2);
    }

    #[test]
    fn deuring_examples() {
        let counts = |p: u64, t: i64| -> Vec<(u64, u64)> {
            let c = census(p);
            let r = verify_deuring_counts(c.class(t).unwrap()).unwrap();
            r.per_f.iter().map(|e| (e.f, e.actual)).collect()
        };
        assert_eq!(counts(13, 4), vec![(1, 1), (3, 2)]);
        assert_eq!(counts(17, 2), vec![(1, 1), (2, 1), (4, 2)]);
        assert_eq!(counts(7, 1), vec![(1, 1), (3, 1)]);
    }

    #[test]
    fn rejects_primes_above_bound() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(build_census(f, 100).unwrap_err(), Error::CensusBound { p: 101, bound: 100 });
    }

    #[test]
    fn partition_and_trace_symmetry() {
        for p in [5u64, 7, 13, 37, 101, 211] {
            let c = census(p);
            assert_eq!(c.total_isomorphism_classes() as u64, c.expected_isomorphism_classes());
            for (&t, s) in &c.classes {
                assert!(t != 0 && t * t < 4 * p as i64);
                assert!(s.members.iter().all(|m| m.trace == t && m.is_ordinary()));
                let twin = c.class(-t).unwrap();
                assert_eq!(s.members.len(), twin.members.len());
                assert_eq!(s.j_set, twin.j_set);
                assert_eq!(s.j_set.len(), s.members.len());
            }
            assert!(c.supersingular.iter().all(|m| m.trace == 0));
        }
    }

    #[test]
    fn aut_weighted_count_is_the_weighted_total() {
        for p in [5u64, 13, 37, 61, 97] {
            for s in census(p).classes.values() {
                let r = verify_deuring_counts(s).unwrap();
                assert!(r.weighted_identity_holds, "p={p} t={}", s.t);
                assert_eq!(r.classical_hurwitz, r.weighted_total * Exact::integer(2));
            }
        }
    }

    #[test]
    fn report_shape() {
        let c = census(13);
        let json = serde_json::to_value(CensusReport::new(c.class(4).unwrap())).unwrap();
        assert_eq!(json["delta"], -36);
        assert_eq!(json["v"], 3);
        assert_eq!(json["D_K"], -4);
        assert_eq!(json["per_f"][1]["D_f"], -36);
        assert_eq!(json["per_f"][1]["h_star"], "1");
        assert_eq!(json["per_f"][0]["h_star"], "1/4");
        assert_eq!(json["per_f"][1]["j_count"], 2);
        assert_eq!(json["j_invariants"].as_array().unwrap().len(), 3);
    }
}
