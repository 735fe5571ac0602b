//! Weighted exact and containment densities of endomorphism rings over an
//! isogeny class, and the `ℓ`-adic law of the conductor.
//!
//! Everything here depends on `Δ` alone. [`compare_with_census`] sets the
//! weighted densities beside the literal frequencies observed in a census.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::IsogenyClassSummary;
use crate::quadforms::{valuation, weighted_decomposition, Discriminant, WeightedDecomposition};
use crate::Exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FDensity {
    pub exact_density: Exact,
    pub containment_density: Exact,
    pub h_star: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub delta: Discriminant,
    pub conductor_bound: u64,
    pub fundamental: Discriminant,
    pub per_f: BTreeMap<u64, FDensity>,
    pub total_mass: Exact,
}

impl DensityReport {
    pub fn exact(&self, f: u64) -> Option<Exact> {
        self.per_f.get(&f).map(|d| d.exact_density)
    }

    pub fn containment(&self, f: u64) -> Option<Exact> {
        self.per_f.get(&f).map(|d| d.containment_density)
    }
}

pub fn exact_density(delta: Discriminant) -> DensityReport {
    density_from(&weighted_decomposition(delta))
}

fn density_from(wd: &WeightedDecomposition) -> DensityReport {
    let total = wd.total;
    let exact: BTreeMap<u64, Exact> = wd.per_f.iter().map(|(&f, c)| (f, c.h_star / total)).collect();
    let per_f = wd
        .per_f
        .iter()
        .map(|(&f, c)| {
            let containment = exact
                .iter()
                .filter(|(&g, _)| g % f == 0)
                .map(|(_, &e)| e)
                .sum();
            (f, FDensity { exact_density: exact[&f], containment_density: containment, h_star: c.h_star })
        })
        .collect();
    DensityReport {
        delta: wd.decomposition.delta,
        conductor_bound: wd.decomposition.conductor_bound,
        fundamental: wd.decomposition.fundamental,
        per_f,
        total_mass: total,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelMassReport {
    pub ell: u64,
    pub masses: Vec<Exact>,
    pub probabilities: Vec<Exact>,
}

/// `M_i = Σ_{f | v, v_ℓ(f) = i} h*(D_f)`, for `i = 0..=v_ℓ(v)`.
pub fn level_masses(delta: Discriminant, ell: u64) -> LevelMassReport {
    levels_from(&weighted_decomposition(delta), ell)
}

fn levels_from(wd: &WeightedDecomposition, ell: u64) -> LevelMassReport {
    let depth = valuation(wd.decomposition.conductor_bound, ell) as usize;
    let mut masses = vec![Exact::zero(); depth + 1];
    for (&f, c) in &wd.per_f {
        let i = valuation(f, ell) as usize;
        masses[i] = masses[i] + c.h_star;
    }
    let probabilities = masses.iter().map(|&m| m / wd.total).collect();
    LevelMassReport { ell, masses, probabilities }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub f: u64,
    #[serde(rename = "D_f")]
    pub d_f: Discriminant,
    pub weighted_density: Exact,
    pub j_frequency: Exact,
    pub aut_weighted_frequency: Exact,
    pub differs: bool,
}

/// Weighted density, literal `j`-frequency and `1/#Aut`-weighted frequency per order.
pub fn compare_with_census(report: &DensityReport, summary: &IsogenyClassSummary) -> Vec<ComparisonRow> {
    let n = summary.ring_of.len().max(1) as i64;
    let weight = |j: &u64| {
        let aut = summary.member(*j).map_or(2, |c| c.aut_count) as i64;
        Exact::new(1, aut)
    };
    let weighted_total: Exact = summary.ring_of.keys().map(weight).sum();
    report
        .per_f
        .iter()
        .map(|(&f, d)| {
            let js: Vec<&u64> = summary.ring_of.iter().filter(|(_, &g)| g == f).map(|(j, _)| j).collect();
            let j_frequency = Exact::new(js.len() as i64, n);
            let aut_weighted_frequency = if weighted_total == Exact::zero() {
                Exact::zero()
            } else {
                js.iter().map(|j| weight(j)).sum::<Exact>() / weighted_total
            };
            ComparisonRow {
                f,
                d_f: report.fundamental.scaled(f),
                weighted_density: d.exact_density,
                j_frequency,
                aut_weighted_frequency,
                differs: d.exact_density != j_frequency,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityPerF {
    pub f: u64,
    pub exact: Exact,
    pub exact_decimal: String,
    pub containment: Exact,
    pub containment_decimal: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelsJson {
    pub ell: u64,
    pub masses: Vec<Exact>,
    pub law: BTreeMap<u32, Exact>,
    pub law_decimal: BTreeMap<u32, String>,
}

/// JSON shape of a density report with an optional level law.
#[derive(Clone, Debug, Serialize)]
pub struct DistributionReport {
    pub delta: Discriminant,
    pub v: u64,
    #[serde(rename = "D_K")]
    pub d_k: Discriminant,
    pub total_mass: Exact,
    pub per_f: Vec<DensityPerF>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<LevelsJson>,
}

impl DistributionReport {
    pub fn new(delta: Discriminant, ell: Option<u64>) -> Self {
        let wd = weighted_decomposition(delta);
        let density = density_from(&wd);
        let levels = ell.map(|ell| {
            let lm = levels_from(&wd, ell);
            let law: BTreeMap<u32, Exact> =
                lm.probabilities.iter().enumerate().map(|(i, &p)| (i as u32, p)).collect();
            LevelsJson {
                ell,
                law_decimal: law.iter().map(|(&i, p)| (i, p.decimal())).collect(),
                masses: lm.masses,
                law,
            }
        });
        DistributionReport {
            delta,
            v: density.conductor_bound,
            d_k: density.fundamental,
            total_mass: density.total_mass,
            per_f: density
                .per_f
                .iter()
                .map(|(&f, d)| DensityPerF {
                    f,
                    exact: d.exact_density,
                    exact_decimal: d.exact_density.decimal(),
                    containment: d.containment_density,
                    containment_decimal: d.containment_density.decimal(),
                })
                .collect(),
            levels,
        }
    }
}
