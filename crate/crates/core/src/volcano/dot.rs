use std::fmt::Write;

use super::{EdgeKind, VolcanoComponent};
use crate::census::IsogenyClassSummary;

/// DOT rendering of one or more components of a class.
///
/// Vertices are labelled `j=<j>/f=<conductor>`; each root of `Φ_ℓ` gives one edge.
pub fn to_dot(components: &[VolcanoComponent], summary: &IsogenyClassSummary) -> String {
    let label = |j: u64| match summary.ring_of.get(&j) {
        Some(f) => format!("j={j}/f={f}"),
        None => format!("j={j}/f=?"),
    };
    let ell = components.first().map_or(0, |c| c.ell);
    let mut out = String::new();
    writeln!(out, "digraph volcano_l{ell}_t{}_p{} {{", summary.t, summary.p).unwrap();
    for (i, component) in components.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{i} {{").unwrap();
        for &j in &component.vertices {
            writeln!(out, "    \"{}\" [level={}];", label(j), component.level_of[&j]).unwrap();
        }
        for (&u, nb) in &component.edges {
            for (&w, &mult) in nb {
                let kind = EdgeKind::between(component.level_of[&u], component.level_of[&w])
                    .map_or("invalid", EdgeKind::as_str);
                for _ in 0..mult {
                    writeln!(out, "    \"{}\" -> \"{}\" [type={kind}];", label(u), label(w)).unwrap();
                }
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{build_classified_census, DEFAULT_CENSUS_BOUND};
    use crate::finitefield::PrimeField;
    use crate::volcano::build_component;

    #[test]
    fn labels_and_edge_types() {
        let c = build_classified_census(PrimeField::new(17).unwrap(), DEFAULT_CENSUS_BOUND).unwrap();
        let s = c.class(2).unwrap();
        let comp = build_component(1728 % 17, 2, s).unwrap();
        let dot = to_dot(&[comp], s);
        assert!(dot.starts_with("digraph volcano_l2_t2_p17 {"));
        assert!(dot.contains("\"j=11/f=1\" [level=0];"));
        assert!(dot.contains("[type=descending]"));
        assert!(dot.contains("[type=ascending]"));
        assert!(dot.contains("\"j=11/f=1\" -> \"j=11/f=1\" [type=horizontal];"));
        assert!(!dot.contains("invalid"));
    }
}
