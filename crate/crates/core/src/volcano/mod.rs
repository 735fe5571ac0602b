//! `ℓ`-isogeny graphs on a censused isogeny class and the volcano structure
//! they carry.
//!
//! Edges come from the `F_p`-roots of `Φ_ℓ(X, j)`, counted with multiplicity
//! and restricted to the class's `j`-invariants. Levels are read off the graph:
//! a vertex lies on the floor iff `Φ_ℓ(X, j)` has fewer than `ℓ + 1` roots in
//! the class, and the level of any vertex is `d - dist(j, floor)`.

mod dot;
mod modpoly;

pub use dot::to_dot;
pub use modpoly::{modular_polynomial, ModularPolynomial, ReducedModularPolynomial, SUPPORTED_LEVELS};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::census::IsogenyClassSummary;
use crate::curves::frobenius_is_scalar_mod;
use crate::finitefield::{kronecker, prime_factors, PrimeField};
use crate::quadforms::valuation;
use crate::{Error, Result};

/// Roots of `Φ_ℓ(X, j)` in `F_p`, repeated by multiplicity.
pub fn neighbors(j: u64, ell: u64, field: PrimeField) -> Result<Vec<u64>> {
    if ell == field.p() {
        return Err(Error::LevelIsCharacteristic(ell));
    }
    let phi = modular_polynomial(ell)?.reduce(field);
    Ok(expand(&phi.at_y(j % field.p()).roots_with_multiplicity()))
}

fn expand(roots: &[(u64, usize)]) -> Vec<u64> {
    roots.iter().flat_map(|&(r, m)| std::iter::repeat(r).take(m)).collect()
}

/// The `ℓ`-isogeny graph on one isogeny class, with levels.
#[derive(Clone, Debug)]
pub struct ClassGraph {
    pub ell: u64,
    pub depth: u32,
    /// In-class neighbour multiplicities per vertex.
    pub edges: BTreeMap<u64, BTreeMap<u64, usize>>,
    pub level_of: BTreeMap<u64, u32>,
}

impl ClassGraph {
    pub fn build(summary: &IsogenyClassSummary, ell: u64) -> Result<Self> {
        let field = summary.field();
        if ell == field.p() {
            return Err(Error::LevelIsCharacteristic(ell));
        }
        let phi = modular_polynomial(ell)?.reduce(field);
        let edges: BTreeMap<u64, BTreeMap<u64, usize>> = summary
            .j_set
            .iter()
            .map(|&j| {
                let nbrs = phi
                    .at_y(j)
                    .roots_with_multiplicity()
                    .into_iter()
                    .filter(|(r, _)| summary.j_set.contains(r))
                    .collect();
                (j, nbrs)
            })
            .collect();
        let depth = valuation(summary.decomposition.conductor_bound, ell);
        let level_of = assign_levels(&edges, ell, depth)?;
        Ok(ClassGraph { ell, depth, edges, level_of })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<u64>> {
        joint_components(std::slice::from_ref(self), &self.edges.keys().copied().collect())
    }

    pub fn component(&self, seed: u64, field: PrimeField) -> Result<VolcanoComponent> {
        let members = self
            .components()
            .into_iter()
            .find(|c| c.binary_search(&seed).is_ok())
            .ok_or(Error::NotInClass { j: seed, t: 0 })?;
        let special = [0, 1728 % field.p()];
        Ok(VolcanoComponent {
            ell: self.ell,
            contains_special_j: members.iter().any(|j| special.contains(j)),
            edges: members.iter().map(|j| (*j, self.edges[j].clone())).collect(),
            level_of: members.iter().map(|j| (*j, self.level_of[j])).collect(),
            depth: self.depth,
            vertices: members,
        })
    }
}

/// `level = d - dist(floor)`; the floor is where fewer than `ℓ + 1` roots lie in the class.
fn assign_levels(
    edges: &BTreeMap<u64, BTreeMap<u64, usize>>,
    ell: u64,
    depth: u32,
) -> Result<BTreeMap<u64, u32>> {
    if depth == 0 {
        return Ok(edges.keys().map(|&j| (j, 0)).collect());
    }
    let full = ell as usize + 1;
    let mut dist: BTreeMap<u64, u32> = edges
        .iter()
        .filter(|(_, nb)| nb.values().sum::<usize>() < full)
        .map(|(&j, _)| (j, 0))
        .collect();
    let mut queue: VecDeque<u64> = dist.keys().copied().collect();
    let mut reverse: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (&u, nb) in edges {
        for &w in nb.keys() {
            reverse.entry(w).or_default().push(u);
        }
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        let around = edges[&u].keys().chain(reverse.get(&u).into_iter().flatten());
        for &w in around {
            if !dist.contains_key(&w) {
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    edges
        .keys()
        .map(|&j| match dist.get(&j) {
            Some(&d) if d <= depth => Ok((j, depth - d)),
            Some(&d) => Err(Error::VolcanoInconsistent(format!(
                "j={j} lies {d} steps above the floor in an {ell}-volcano of depth {depth}"
            ))),
            None => Err(Error::VolcanoInconsistent(format!(
                "j={j} cannot reach the floor of its {ell}-volcano"
            ))),
        })
        .collect()
}

/// One connected component of the `ℓ`-isogeny graph of a class.
#[derive(Clone, Debug, Serialize)]
pub struct VolcanoComponent {
    pub ell: u64,
    pub vertices: Vec<u64>,
    pub edges: BTreeMap<u64, BTreeMap<u64, usize>>,
    pub level_of: BTreeMap<u64, u32>,
    pub depth: u32,
    pub contains_special_j: bool,
}

impl VolcanoComponent {
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.depth as usize + 1];
        for &l in self.level_of.values() {
            sizes[l as usize] += 1;
        }
        sizes
    }
}

/// The component of `seed` inside its class graph.
pub fn build_component(seed: u64, ell: u64, summary: &IsogenyClassSummary) -> Result<VolcanoComponent> {
    if !summary.j_set.contains(&seed) {
        return Err(Error::NotInClass { j: seed, t: summary.t });
    }
    let graph = ClassGraph::build(summary, ell)?;
    let component = graph.component(seed, summary.field())?;
    if summary.is_classified() {
        for (&j, &level) in &component.level_of {
            if valuation(summary.ring_of[&j], ell) != level {
                return Err(Error::VolcanoInconsistent(format!(
                    "j={j}: level {level} but conductor {}",
                    summary.ring_of[&j]
                )));
            }
        }
    }
    Ok(component)
}

/// Conductor of `End(E)` for every `j` in the class.
///
/// `ℓ ∈ {2, 3, 5, 7}` use the volcano levels. Larger `ℓ | v` only occur with
/// depth 1 at census scale; there the surface is recognised by Frobenius
/// acting as a scalar on `E[ℓ]`. An `ℓ'`-isogeny with `ℓ' ≠ ℓ` preserves
/// `v_ℓ` of the conductor, so that test runs once per connected component of
/// the combined small-degree isogeny graph.
pub fn classify_rings(summary: &IsogenyClassSummary) -> Result<BTreeMap<u64, u64>> {
    let v = summary.decomposition.conductor_bound;
    let mut ring_of: BTreeMap<u64, u64> = summary.j_set.iter().map(|&j| (j, 1)).collect();
    let mut small_graphs = Vec::new();
    for ell in SUPPORTED_LEVELS.into_iter().filter(|&l| l != summary.p) {
        let graph = ClassGraph::build(summary, ell)?;
        for (j, &level) in &graph.level_of {
            *ring_of.get_mut(j).expect("same vertex set") *= ell.pow(level);
        }
        small_graphs.push(graph);
    }
    let large: Vec<u64> = prime_factors(v).into_iter().filter(|l| !SUPPORTED_LEVELS.contains(l)).collect();
    if large.is_empty() {
        return Ok(ring_of);
    }
    let components = joint_components(&small_graphs, &summary.j_set);
    for ell in large {
        if valuation(v, ell) > 1 {
            return Err(Error::UnsupportedLevel(ell));
        }
        for component in &components {
            let curve = summary.member(component[0]).expect("member of j_set");
            if !frobenius_is_scalar_mod(curve, ell)? {
                for j in component {
                    *ring_of.get_mut(j).expect("member of j_set") *= ell;
                }
            }
        }
    }
    Ok(ring_of)
}

fn joint_components(graphs: &[ClassGraph], vertices: &BTreeSet<u64>) -> Vec<Vec<u64>> {
    let mut adjacency: BTreeMap<u64, BTreeSet<u64>> = vertices.iter().map(|&j| (j, BTreeSet::new())).collect();
    for g in graphs {
        for (&u, nb) in &g.edges {
            for &w in nb.keys() {
                adjacency.get_mut(&u).expect("in class").insert(w);
                adjacency.get_mut(&w).expect("in class").insert(u);
            }
        }
    }
    connected(&adjacency)
}

fn connected(adjacency: &BTreeMap<u64, BTreeSet<u64>>) -> Vec<Vec<u64>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in adjacency.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[&u] {
                if seen.insert(w) {
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Horizontal,
    Ascending,
    Descending,
}

impl EdgeKind {
    pub fn between(from_level: u32, to_level: u32) -> Option<EdgeKind> {
        match to_level as i64 - from_level as i64 {
            0 => Some(EdgeKind::Horizontal),
            -1 => Some(EdgeKind::Ascending),
            1 => Some(EdgeKind::Descending),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Horizontal => "horizontal",
            EdgeKind::Ascending => "ascending",
            EdgeKind::Descending => "descending",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexDegrees {
    pub j: u64,
    pub level: u32,
    pub horizontal: usize,
    pub ascending: usize,
    pub descending: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub ell: u64,
    pub depth: u32,
    pub kronecker: i8,
    pub level_sizes: Vec<usize>,
    pub degrees: Vec<VertexDegrees>,
    /// True when the component touches `j ∈ {0, 1728}` and was not checked.
    pub exempt: bool,
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the degree and level laws of an `ℓ`-volcano on one component.
///
/// Degrees count roots of `Φ_ℓ` with multiplicity, so a loop at a ramified
/// surface vertex contributes 1 horizontal edge.
pub fn verify_structure(component: &VolcanoComponent, summary: &IsogenyClassSummary) -> StructureReport {
    let ell = component.ell;
    let d = component.depth;
    let chi = kronecker(summary.decomposition.fundamental.value(), ell as i64);
    let mut violations = Vec::new();
    let mut degrees = Vec::new();
    for &u in &component.vertices {
        let level = component.level_of[&u];
        let mut deg = VertexDegrees { j: u, level, horizontal: 0, ascending: 0, descending: 0 };
        for (&w, &mult) in &component.edges[&u] {
            match EdgeKind::between(level, component.level_of[&w]) {
                Some(EdgeKind::Horizontal) => deg.horizontal += mult,
                Some(EdgeKind::Ascending) => deg.ascending += mult,
                Some(EdgeKind::Descending) => deg.descending += mult,
                None => violations.push(format!(
                    "edge j={u} (level {level}) -> j={w} (level {}) skips a level",
                    component.level_of[&w]
                )),
            }
        }
        degrees.push(deg);
    }
    let level_sizes = component.level_sizes();
    let report = |violations, degrees| StructureReport {
        ell,
        depth: d,
        kronecker: chi,
        level_sizes: level_sizes.clone(),
        degrees,
        exempt: component.contains_special_j,
        violations,
    };
    if component.contains_special_j {
        return report(Vec::new(), degrees);
    }
    let surface_h = (1 + chi as i64) as usize;
    let surface_down = (ell as i64 - chi as i64) as usize;
    for deg in &degrees {
        let j = deg.j;
        if deg.level == 0 {
            if deg.horizontal != surface_h {
                violations.push(format!("surface j={j}: {} horizontal, expected {surface_h}", deg.horizontal));
            }
            if d > 0 && deg.descending != surface_down {
                violations.push(format!("surface j={j}: {} descending, expected {surface_down}", deg.descending));
            }
        } else {
            if deg.ascending != 1 {
                violations.push(format!("j={j} at level {}: {} ascending, expected 1", deg.level, deg.ascending));
            }
            if deg.horizontal != 0 {
                violations.push(format!("j={j} at level {}: {} horizontal, expected 0", deg.level, deg.horizontal));
            }
            if deg.level < d && deg.descending != ell as usize {
                violations.push(format!("j={j} at level {}: {} descending, expected {ell}", deg.level, deg.descending));
            }
        }
        if deg.level == d && deg.descending != 0 {
            violations.push(format!("floor j={j}: {} descending edges", deg.descending));
        }
        let total = deg.horizontal + deg.ascending + deg.descending;
        if deg.level < d && total != ell as usize + 1 {
            violations.push(format!("j={j} at level {}: degree {total}, expected {}", deg.level, ell + 1));
        }
    }
    for (&u, nb) in &component.edges {
        for (&w, &mult) in nb {
            let back = component.edges[&w].get(&u).copied().unwrap_or(0);
            if back != mult {
                violations.push(format!("edge j={u} -> j={w} has multiplicity {mult}, reverse {back}"));
            }
        }
    }
    for i in 1..level_sizes.len() {
        let factor = if i == 1 { surface_down } else { ell as usize };
        if level_sizes[i] != level_sizes[i - 1] * factor {
            violations.push(format!(
                "level {i} has {} vertices, expected {} · {factor}",
                level_sizes[i],
                level_sizes[i - 1]
            ));
        }
    }
    report(violations, degrees)
}

/// Structure reports for every component of the class.
pub fn verify_class(summary: &IsogenyClassSummary, ell: u64) -> Result<Vec<(VolcanoComponent, StructureReport)>> {
    let graph = ClassGraph::build(summary, ell)?;
    let field = summary.field();
    graph
        .components()
        .into_iter()
        .map(|c| {
            let comp = graph.component(c[0], field)?;
            let report = verify_structure(&comp, summary);
            Ok((comp, report))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{build_census, build_classified_census, Census, DEFAULT_CENSUS_BOUND};

    fn census(p: u64) -> Census {
        build_classified_census(PrimeField::new(p).unwrap(), DEFAULT_CENSUS_BOUND).unwrap()
    }

    #[test]
    fn neighbor_multiset_has_at_most_l_plus_one_elements() {
        let f = PrimeField::new(101).unwrap();
        for ell in SUPPORTED_LEVELS {
            for j in 0..101 {
                assert!(neighbors(j, ell, f).unwrap().len() <= ell as usize + 1);
            }
        }
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(neighbors(1, 7, f7).unwrap_err(), Error::LevelIsCharacteristic(7));
        assert_eq!(neighbors(1, 11, f).unwrap_err(), Error::UnsupportedLevel(11));
    }

    #[test]
    fn volcano_over_minus_64() {
        // I(2, 17): Δ = -64 = 4² · (-4)
        let c = census(17);
        let s = c.class(2).unwrap();
        let graph = ClassGraph::build(s, 2).unwrap();
        assert_eq!(graph.depth, 2);
        let floor: Vec<u64> = graph.level_of.iter().filter(|(_, &l)| l == 2).map(|(&j, _)| j).collect();
        assert_eq!(floor.len(), 2);
        for &j in &floor {
            assert_eq!(graph.edges[&j].values().sum::<usize>(), 1);
        }
        let surface = s.j_with_conductor(1);
        assert_eq!(surface, vec![1728 % 17]);
        let comp = build_component(surface[0], 2, s).unwrap();
        assert_eq!(comp.level_sizes(), vec![1, 1, 2]);
        // surface: (-4 | 2) = 0, 1 horizontal + 2 descending
        let nb = neighbors(surface[0], 2, s.field()).unwrap();
        assert_eq!(nb.len(), 3);
        let ring_of = &s.ring_of;
        assert_eq!(s.j_with_conductor(4).len(), 2);
        assert_eq!(s.j_with_conductor(2).len(), 1);
        assert!(ring_of.values().all(|f| 4 % f == 0));
    }

    #[test]
    fn volcano_over_minus_36() {
        let c = census(13);
        let s = c.class(4).unwrap();
        let comp = build_component(1728 % 13, 3, s).unwrap();
        assert_eq!(comp.level_sizes(), vec![1, 2]);
        assert!(comp.contains_special_j);
        assert_eq!(s.j_with_conductor(1), vec![1728 % 13]);
        assert_eq!(s.j_with_conductor(3).len(), 2);
    }

    #[test]
    fn depth_zero_split_prime_gives_cycles() {
        // p = 13, t = 4, ℓ = 5: (-4 | 5) = 1, 5 ∤ 3
        let c = census(13);
        let s = c.class(4).unwrap();
        for (comp, report) in verify_class(s, 5).unwrap() {
            assert_eq!(comp.depth, 0);
            assert!(comp.level_of.values().all(|&l| l == 0));
            if !comp.contains_special_j {
                assert!(report.holds(), "{:?}", report.violations);
                assert!(report.degrees.iter().all(|d| d.horizontal == 2));
            }
        }
    }

    #[test]
    fn unclassified_summary_classifies_like_census() {
        let f = PrimeField::new(101).unwrap();
        let raw = build_census(f, DEFAULT_CENSUS_BOUND).unwrap();
        let done = census(101);
        for (t, s) in &raw.classes {
            assert_eq!(classify_rings(s).unwrap(), done.classes[t].ring_of);
        }
    }

    #[test]
    fn single_order_classes_have_trivial_conductors() {
        let c = census(101);
        for s in c.classes.values().filter(|s| s.decomposition.conductor_bound == 1) {
            assert!(s.ring_of.values().all(|&f| f == 1));
        }
    }

    #[test]
    fn large_level_test_agrees_with_volcano_levels() {
        // for ℓ ∈ {3, 5, 7} at depth 1, the Frobenius-scalar test picks out the surface
        for p in [101u64, 197, 331, 449] {
            let c = census(p);
            for s in c.classes.values() {
                let v = s.decomposition.conductor_bound;
                for ell in [3u64, 5, 7] {
                    if valuation(v, ell) != 1 {
                        continue;
                    }
                    for m in &s.members {
                        let surface = valuation(s.ring_of[&m.j], ell) == 0;
                        assert_eq!(frobenius_is_scalar_mod(m, ell).unwrap(), surface, "p={p} t={} j={}", s.t, m.j);
                    }
                }
            }
        }
    }
}
