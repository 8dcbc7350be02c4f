use serde::Serialize;

use super::{cm_exact, omega_exact, DEFAULT_CM_LIMIT, DEFAULT_OMEGA_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{Graph, Matching, VertexId};

/// Connected matching grown from a clique `A`: a maximum matching between
/// `A` and `B = V \ A` (augmenting paths), then the unmatched vertices of
/// `A` paired among themselves. Every edge touches `A`, so any two edges
/// see each other through the clique.
pub fn cambie_extend(g: &Graph, clique_a: &[VertexId]) -> Result<Matching> {
    for &v in clique_a {
        g.check_vertex(v)?;
    }
    if let Some((u, v)) = g.clique_violation(clique_a) {
        return Err(Error::NotAClique(u, v));
    }
    let mut in_a = vec![false; g.n()];
    for &a in clique_a {
        in_a[a] = true;
    }

    let mut mate_of_b: Vec<Option<VertexId>> = vec![None; g.n()];
    let mut mate_of_a: Vec<Option<VertexId>> = vec![None; g.n()];
    for &a in clique_a {
        let mut visited = vec![false; g.n()];
        augment(g, &in_a, a, &mut visited, &mut mate_of_b, &mut mate_of_a);
    }

    let mut edges: Vec<(VertexId, VertexId)> = clique_a
        .iter()
        .filter_map(|&a| mate_of_a[a].map(|b| (a, b)))
        .collect();
    let leftover: Vec<VertexId> = clique_a
        .iter()
        .copied()
        .filter(|&a| mate_of_a[a].is_none())
        .collect();
    edges.extend(leftover.chunks_exact(2).map(|c| (c[0], c[1])));
    Matching::new(g, edges)
}

fn augment(
    g: &Graph,
    in_a: &[bool],
    a: VertexId,
    visited: &mut [bool],
    mate_of_b: &mut [Option<VertexId>],
    mate_of_a: &mut [Option<VertexId>],
) -> bool {
    for b in g.neighbors(a) {
        if in_a[b] || visited[b] {
            continue;
        }
        visited[b] = true;
        let free = match mate_of_b[b] {
            None => true,
            Some(prev) => augment(g, in_a, prev, visited, mate_of_b, mate_of_a),
        };
        if free {
            mate_of_b[b] = Some(a);
            mate_of_a[a] = Some(b);
            return true;
        }
    }
    false
}

/// Outcome of checking "α(G) = 2, |V| >= 4t-1, cm(G) <= t-1 ⇒ ω(G) <= cm(G)"
/// on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub t: usize,
    pub n: usize,
    pub alpha_is_2: bool,
    pub order_ok: bool,
    pub cm: Option<usize>,
    pub omega: Option<usize>,
    pub hypotheses_hold: bool,
    pub holds: bool,
}

pub fn audit_report(
    g: &Graph,
    t: usize,
    cm_limit: usize,
    omega_limit: usize,
) -> Result<AuditReport> {
    let n = g.n();
    let all_pairs = n * n.saturating_sub(1) / 2;
    let alpha_is_2 = n >= 2 && g.m() < all_pairs && g.is_alpha_at_most_2();
    let order_ok = n + 1 >= 4 * t;
    let mut report = AuditReport {
        t,
        n,
        alpha_is_2,
        order_ok,
        cm: None,
        omega: None,
        hypotheses_hold: false,
        holds: true,
    };
    if !(alpha_is_2 && order_ok) {
        return Ok(report);
    }
    let cm = cm_exact(g, cm_limit)?;
    report.cm = Some(cm);
    if cm + 1 > t {
        return Ok(report);
    }
    let omega = omega_exact(g, omega_limit)?;
    report.omega = Some(omega);
    report.hypotheses_hold = true;
    report.holds = omega <= cm;
    Ok(report)
}

/// True iff the implication holds on `g` (vacuously when a hypothesis fails).
pub fn lemma5_audit(g: &Graph, t: usize) -> Result<bool> {
    audit_report(g, t, DEFAULT_CM_LIMIT, DEFAULT_OMEGA_LIMIT).map(|r| r.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complement_of_random_triangle_free, complete_graph, two_cliques};
    use crate::oracles::{cm_exact, connected_matching_check};

    #[test]
    fn extend_examples() {
        let k6 = complete_graph(6);
        let m = cambie_extend(&k6, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(connected_matching_check(&k6, &m), Ok(true));

        let g = two_cliques(5);
        let m = cambie_extend(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(m.len(), 2);
        assert!(cm_exact(&g, 24).unwrap() >= 2);

        let lonely = Graph::from_edge_list(3, &[(1, 2)]).unwrap();
        assert!(cambie_extend(&lonely, &[0]).unwrap().is_empty());

        assert_eq!(cambie_extend(&g, &[0, 5]), Err(Error::NotAClique(0, 5)));
    }

    #[test]
    fn extend_uses_bipartite_part() {
        // clique {0,1,2}, each with a private neighbour outside
        let g =
            Graph::from_edge_list(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let m = cambie_extend(&g, &[0, 1, 2]).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(connected_matching_check(&g, &m), Ok(true));
    }

    #[test]
    fn extend_is_always_connected() {
        for seed in 0..60 {
            let g = complement_of_random_triangle_free(5 + seed as usize % 20, seed);
            // grow a maximal clique greedily
            let mut a: Vec<usize> = Vec::new();
            for v in 0..g.n() {
                if a.iter().all(|&u| g.has_edge(u, v)) {
                    a.push(v);
                }
            }
            let m = cambie_extend(&g, &a).unwrap();
            assert_eq!(connected_matching_check(&g, &m), Ok(true));
            assert!(m.len() >= a.len() / 2);
        }
    }

    #[test]
    fn audit_examples() {
        let r = audit_report(&two_cliques(5), 3, 24, 40).unwrap();
        assert!(!r.order_ok && r.holds);
        let r = audit_report(&complete_graph(11), 3, 24, 40).unwrap();
        assert!(!r.hypotheses_hold && r.holds);
        assert_eq!(
            lemma5_audit(&complement_of_random_triangle_free(12, 1), 2),
            Ok(true)
        );
        assert!(lemma5_audit(&complement_of_random_triangle_free(30, 1), 2).is_err());
    }
}
