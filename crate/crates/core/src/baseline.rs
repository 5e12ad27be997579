//! Textbook single-source engines used as oracles and CLI baselines.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Potential, VertexId};

/// Per-vertex distances; `None` marks an unreachable vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceArray {
    values: Vec<Option<i64>>,
}

impl DistanceArray {
    pub fn from_values(values: Vec<Option<i64>>) -> Self {
        DistanceArray { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: VertexId) -> Option<i64> {
        self.values[v]
    }

    pub fn values(&self) -> &[Option<i64>] {
        &self.values
    }
}

fn check_source(g: &Graph, source: VertexId) -> Result<()> {
    if source >= g.vertex_count() {
        return Err(Error::Range(format!(
            "source {source} out of range for {} vertices",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Bellman-Ford with early termination. Detects negative cycles reachable
/// from `source` and reports a witness cycle as edge indices.
pub fn bellman_ford(g: &Graph, source: VertexId) -> Result<DistanceArray> {
    check_source(g, source)?;
    let mut dist: Vec<Option<i64>> = vec![None; g.vertex_count()];
    let mut pred: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    relax_to_fixpoint(g, &mut dist, &mut pred)?;
    Ok(DistanceArray { values: dist })
}

/// Runs up to `vertex_count` relaxation passes over the edge list; an update
/// in the final pass proves a negative cycle, which is extracted from the
/// predecessor pointers.
fn relax_to_fixpoint(
    g: &Graph,
    dist: &mut [Option<i64>],
    pred: &mut [Option<EdgeId>],
) -> Result<()> {
    let n = g.vertex_count();
    for pass in 0..n {
        let mut updated = false;
        let mut witness_seed = None;
        for (id, e) in g.edges().iter().enumerate() {
            let Some(du) = dist[e.src] else { continue };
            let cand = du
                .checked_add(e.weight)
                .ok_or(Error::Overflow("distance relaxation"))?;
            if dist[e.dst].is_none_or(|dv| cand < dv) {
                dist[e.dst] = Some(cand);
                pred[e.dst] = Some(id);
                updated = true;
                witness_seed = Some(e.dst);
            }
        }
        if !updated {
            return Ok(());
        }
        if pass == n - 1 {
            return Err(Error::NegativeCycle {
                witness: extract_cycle(g, pred, witness_seed.unwrap()),
            });
        }
    }
    Ok(())
}

/// Walks predecessor pointers from a vertex relaxed in the final pass; after
/// `vertex_count` steps the walk is inside a negative cycle, which is then
/// collected in forward order.
fn extract_cycle(g: &Graph, pred: &[Option<EdgeId>], seed: VertexId) -> Vec<EdgeId> {
    let mut v = seed;
    for _ in 0..g.vertex_count() {
        v = g.edge(pred[v].expect("predecessor chain too short")).src;
    }
    let start = v;
    let mut cycle = Vec::new();
    loop {
        let e = pred[v].expect("predecessor chain broken");
        cycle.push(e);
        v = g.edge(e).src;
        if v == start {
            break;
        }
    }
    cycle.reverse();
    cycle
}

/// Dijkstra with a binary heap; requires non-negative weights. Ties in the
/// heap break toward the smaller vertex id, so pop order is deterministic.
pub fn dijkstra(g: &Graph, source: VertexId) -> Result<DistanceArray> {
    check_source(g, source)?;
    if let Some((id, e)) = g.edges().iter().enumerate().find(|(_, e)| e.weight < 0) {
        return Err(Error::Precondition(format!(
            "dijkstra requires non-negative weights; edge {id} ({} -> {}) has weight {}",
            e.src, e.dst, e.weight
        )));
    }
    let adj = g.out_adjacency();
    let mut dist: Vec<Option<i64>> = vec![None; g.vertex_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0i64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u] != Some(d) {
            continue; // stale entry
        }
        for &id in &adj[u] {
            let e = g.edge(id);
            let cand = d
                .checked_add(e.weight)
                .ok_or(Error::Overflow("distance relaxation"))?;
            if dist[e.dst].is_none_or(|dv| cand < dv) {
                dist[e.dst] = Some(cand);
                heap.push(Reverse((cand, e.dst)));
            }
        }
    }
    Ok(DistanceArray { values: dist })
}

/// The all-pairs-to-vertex potential phi(v) = min over u of dist(u, v),
/// computed by Bellman-Ford from a virtual super-source with a zero-weight
/// edge to every vertex. Always non-positive; neutralizing whenever the graph
/// has no negative cycle.
pub fn johnson_potential(g: &Graph) -> Result<Potential> {
    let mut dist: Vec<Option<i64>> = vec![Some(0); g.vertex_count()];
    let mut pred: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    relax_to_fixpoint(g, &mut dist, &mut pred)?;
    Ok(Potential::from_values(
        dist.into_iter().map(|d| d.unwrap()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_neutralizing, Edge};

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> Graph {
        Graph::new(
            n,
            edges
                .iter()
                .map(|&(src, dst, weight)| Edge { src, dst, weight })
                .collect(),
        )
        .unwrap()
    }

    /// Checks that the witness is a closed walk with negative total weight.
    fn assert_negative_cycle(g: &Graph, witness: &[EdgeId]) {
        assert!(!witness.is_empty());
        let mut total = 0i64;
        for (i, &id) in witness.iter().enumerate() {
            let e = g.edge(id);
            let next = g.edge(witness[(i + 1) % witness.len()]);
            assert_eq!(e.dst, next.src, "witness edges do not chain");
            total += e.weight;
        }
        assert!(total < 0, "witness cycle has total weight {total}");
    }

    #[test]
    fn bellman_ford_short_path() {
        let g = graph(3, &[(0, 1, -1), (1, 2, 1)]);
        let d = bellman_ford(&g, 0).unwrap();
        assert_eq!(d.values(), &[Some(0), Some(-1), Some(0)]);
    }

    #[test]
    fn bellman_ford_unreachable() {
        let g = graph(3, &[(1, 2, 4)]);
        let d = bellman_ford(&g, 0).unwrap();
        assert_eq!(d.values(), &[Some(0), None, None]);
    }

    #[test]
    fn bellman_ford_negative_cycle_witness() {
        let g = graph(2, &[(0, 1, 1), (1, 0, -2)]);
        match bellman_ford(&g, 0) {
            Err(Error::NegativeCycle { witness }) => assert_negative_cycle(&g, &witness),
            other => panic!("expected negative cycle, got {other:?}"),
        }
    }

    #[test]
    fn bellman_ford_ignores_unreachable_negative_cycle() {
        let g = graph(4, &[(0, 1, 5), (2, 3, -1), (3, 2, -1)]);
        let d = bellman_ford(&g, 0).unwrap();
        assert_eq!(d.values(), &[Some(0), Some(5), None, None]);
    }

    #[test]
    fn dijkstra_triangle() {
        let g = graph(3, &[(0, 1, 2), (1, 2, 3), (0, 2, 10)]);
        let d = dijkstra(&g, 0).unwrap();
        assert_eq!(d.values(), &[Some(0), Some(2), Some(5)]);
    }

    #[test]
    fn dijkstra_rejects_negative_weights() {
        let g = graph(2, &[(0, 1, -1)]);
        assert!(matches!(dijkstra(&g, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn dijkstra_agrees_with_bellman_ford_on_non_negative() {
        let g = graph(
            5,
            &[
                (0, 1, 3),
                (0, 2, 1),
                (2, 1, 1),
                (1, 3, 0),
                (3, 4, 7),
                (2, 4, 9),
            ],
        );
        assert_eq!(dijkstra(&g, 0).unwrap(), bellman_ford(&g, 0).unwrap());
    }

    #[test]
    fn rejects_out_of_range_source() {
        let g = graph(2, &[(0, 1, 1)]);
        assert!(matches!(bellman_ford(&g, 2), Err(Error::Range(_))));
        assert!(matches!(dijkstra(&g, 5), Err(Error::Range(_))));
    }

    #[test]
    fn johnson_zero_on_non_negative_graphs() {
        let g = graph(3, &[(0, 1, 2), (1, 2, 0), (2, 0, 5)]);
        assert_eq!(johnson_potential(&g).unwrap(), Potential::zeros(3));
    }

    #[test]
    fn johnson_short_path() {
        // Minima ending at each vertex: empty, (-1), (-1,1) vs empty.
        let g = graph(3, &[(0, 1, -1), (1, 2, 1)]);
        let phi = johnson_potential(&g).unwrap();
        assert_eq!(phi.values(), &[0, -1, 0]);
        assert!(is_neutralizing(&g, &phi).unwrap());
    }

    #[test]
    fn johnson_is_non_positive_and_neutralizing() {
        let g = graph(
            4,
            &[(0, 1, -3), (1, 2, 2), (2, 3, -4), (3, 0, 6), (0, 2, -1)],
        );
        let phi = johnson_potential(&g).unwrap();
        assert!(phi.values().iter().all(|&x| x <= 0));
        assert!(is_neutralizing(&g, &phi).unwrap());
    }

    #[test]
    fn johnson_detects_negative_cycle() {
        let g = graph(3, &[(0, 1, 2), (1, 2, -1), (2, 1, -1)]);
        match johnson_potential(&g) {
            Err(Error::NegativeCycle { witness }) => assert_negative_cycle(&g, &witness),
            other => panic!("expected negative cycle, got {other:?}"),
        }
    }

    #[test]
    fn negative_self_loop_is_a_negative_cycle() {
        let g = graph(1, &[(0, 0, -1)]);
        match johnson_potential(&g) {
            Err(Error::NegativeCycle { witness }) => assert_negative_cycle(&g, &witness),
            other => panic!("expected negative cycle, got {other:?}"),
        }
    }
}
