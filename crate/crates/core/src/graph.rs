//! Directed graphs with exact 64-bit integer weights, potentials, and
//! potential-based reweighting.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: i64,
}

/// A directed multigraph in edge-list form. Parallel edges and self-loops are
/// representable; edge order is stable and meaningful (edge ids index into it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph, rejecting edges whose endpoints are out of range.
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        for (id, e) in edges.iter().enumerate() {
            if e.src >= vertex_count || e.dst >= vertex_count {
                return Err(Error::Range(format!(
                    "edge {id} ({} -> {}) out of range for {vertex_count} vertices",
                    e.src, e.dst
                )));
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn view(&self, filter: EdgeFilter) -> SubgraphView<'_> {
        SubgraphView {
            graph: self,
            filter,
        }
    }

    pub fn negative_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.weight < 0).count()
    }

    pub fn has_negative_edge(&self) -> bool {
        self.edges.iter().any(|e| e.weight < 0)
    }

    /// Outgoing edge ids per vertex, in edge-id order.
    pub fn out_adjacency(&self) -> Vec<Vec<EdgeId>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.src].push(id);
        }
        adj
    }

    /// Incoming edge ids per vertex, in edge-id order.
    pub fn in_adjacency(&self) -> Vec<Vec<EdgeId>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.dst].push(id);
        }
        adj
    }
}

/// Edge predicate for [`SubgraphView`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFilter {
    NonPositive,
    NonNegative,
    Zero,
    Negative,
}

impl EdgeFilter {
    pub fn matches(self, weight: i64) -> bool {
        match self {
            EdgeFilter::NonPositive => weight <= 0,
            EdgeFilter::NonNegative => weight >= 0,
            EdgeFilter::Zero => weight == 0,
            EdgeFilter::Negative => weight < 0,
        }
    }
}

/// A borrowed, filtered view of a graph's edges. No copying; iterates the
/// underlying edge list and yields the edges that satisfy the filter.
#[derive(Debug, Clone, Copy)]
pub struct SubgraphView<'a> {
    graph: &'a Graph,
    filter: EdgeFilter,
}

impl<'a> SubgraphView<'a> {
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &'a Edge)> + '_ {
        self.graph
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| self.filter.matches(e.weight))
    }

    /// Outgoing edge ids per vertex, restricted to the view.
    pub fn out_adjacency(&self) -> Vec<Vec<EdgeId>> {
        let mut adj = vec![Vec::new(); self.graph.vertex_count];
        for (id, e) in self.edges() {
            adj[e.src].push(id);
        }
        adj
    }

    /// Incoming edge ids per vertex, restricted to the view.
    pub fn in_adjacency(&self) -> Vec<Vec<EdgeId>> {
        let mut adj = vec![Vec::new(); self.graph.vertex_count];
        for (id, e) in self.edges() {
            adj[e.dst].push(id);
        }
        adj
    }
}

/// A vertex potential: one i64 per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    values: Vec<i64>,
}

impl Potential {
    pub fn zeros(n: usize) -> Self {
        Potential { values: vec![0; n] }
    }

    pub fn from_values(values: Vec<i64>) -> Self {
        Potential { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: VertexId) -> i64 {
        self.values[v]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Pointwise checked sum of two potentials.
    pub fn checked_add(&self, other: &Potential) -> Result<Potential> {
        assert_eq!(self.len(), other.len(), "potential length mismatch");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                a.checked_add(*b)
                    .ok_or(Error::Overflow("potential accumulation"))
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(Potential { values })
    }
}

/// Single reduced weight l(u,v) + phi(u) - phi(v), checked.
pub fn reduced_weight(weight: i64, phi_src: i64, phi_dst: i64) -> Result<i64> {
    // Compute in 128 bits so only the final value has to fit.
    let r = weight as i128 + phi_src as i128 - phi_dst as i128;
    i64::try_from(r).map_err(|_| Error::Overflow("reduced weight out of i64 range"))
}

/// Replaces every weight l(u,v) by l(u,v) + phi(u) - phi(v), preserving
/// structure and edge order.
///
/// Panics if `phi` does not have one value per vertex.
pub fn reduce_weights(g: &Graph, phi: &Potential) -> Result<Graph> {
    assert_eq!(phi.len(), g.vertex_count(), "potential length mismatch");
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            Ok(Edge {
                src: e.src,
                dst: e.dst,
                weight: reduced_weight(e.weight, phi.value(e.src), phi.value(e.dst))?,
            })
        })
        .collect::<Result<Vec<Edge>>>()?;
    Ok(Graph {
        vertex_count: g.vertex_count(),
        edges,
    })
}

/// True iff no edge of non-negative weight becomes negative under `phi`.
pub fn is_valid_potential(g: &Graph, phi: &Potential) -> Result<bool> {
    assert_eq!(phi.len(), g.vertex_count(), "potential length mismatch");
    for (_, e) in g.view(EdgeFilter::NonNegative).edges() {
        if reduced_weight(e.weight, phi.value(e.src), phi.value(e.dst))? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every reduced weight is non-negative under `phi`.
pub fn is_neutralizing(g: &Graph, phi: &Potential) -> Result<bool> {
    assert_eq!(phi.len(), g.vertex_count(), "potential length mismatch");
    for e in g.edges() {
        if reduced_weight(e.weight, phi.value(e.src), phi.value(e.dst))? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    #[test]
    fn rejects_out_of_range_endpoints() {
        let e = Graph::new(
            2,
            vec![Edge {
                src: 0,
                dst: 2,
                weight: 1,
            }],
        );
        assert!(matches!(e, Err(Error::Range(_))));
    }

    #[test]
    fn reduce_single_edge() {
        let g = graph(2, &[(0, 1, 5)]);
        let phi = Potential::from_values(vec![2, 3]);
        let r = reduce_weights(&g, &phi).unwrap();
        assert_eq!(r.edge(0).weight, 4);
    }

    #[test]
    fn reduce_overflow_is_reported() {
        let g = graph(2, &[(0, 1, i64::MAX)]);
        let phi = Potential::from_values(vec![1, 0]);
        assert!(matches!(reduce_weights(&g, &phi), Err(Error::Overflow(_))));
        // An intermediate excursion out of range is fine if the result fits.
        let phi = Potential::from_values(vec![1, 1]);
        assert_eq!(reduce_weights(&g, &phi).unwrap().edge(0).weight, i64::MAX);
    }

    #[test]
    fn zero_potential_is_identity() {
        let g = graph(3, &[(0, 1, -4), (1, 2, 7), (2, 0, 0)]);
        let r = reduce_weights(&g, &Potential::zeros(3)).unwrap();
        assert_eq!(r, g);
    }

    #[test]
    fn valid_potential_examples() {
        let g = graph(3, &[(0, 1, -4), (1, 2, -1)]);
        // Only negative edges: any potential is valid.
        let phi = Potential::from_values(vec![100, -100, 55]);
        assert!(is_valid_potential(&g, &phi).unwrap());

        let g = graph(2, &[(0, 1, 3)]);
        assert!(is_valid_potential(&g, &Potential::zeros(2)).unwrap());
        // 3 + 0 - 4 < 0: the non-negative edge turns negative.
        assert!(!is_valid_potential(&g, &Potential::from_values(vec![0, 4])).unwrap());
    }

    #[test]
    fn neutralizing_example_on_short_path() {
        let g = graph(3, &[(0, 1, -1), (1, 2, 1)]);
        let phi = Potential::from_values(vec![0, -1, -1]);
        assert!(is_neutralizing(&g, &phi).unwrap());
        assert!(!is_neutralizing(&g, &Potential::zeros(3)).unwrap());
    }

    #[test]
    fn subgraph_views_partition_by_sign() {
        let g = graph(3, &[(0, 1, -2), (1, 2, 0), (2, 0, 9)]);
        let ids = |f: EdgeFilter| -> Vec<EdgeId> { g.view(f).edges().map(|(id, _)| id).collect() };
        assert_eq!(ids(EdgeFilter::Negative), vec![0]);
        assert_eq!(ids(EdgeFilter::Zero), vec![1]);
        assert_eq!(ids(EdgeFilter::NonPositive), vec![0, 1]);
        assert_eq!(ids(EdgeFilter::NonNegative), vec![1, 2]);
    }

    prop_compose! {
        fn arb_graph()(n in 1usize..10)(
            n in Just(n),
            edges in proptest::collection::vec((0..n, 0..n, -50i64..=50), 0..25),
        ) -> Graph {
            graph(n, &edges)
        }
    }

    fn arb_potential(n: usize) -> impl Strategy<Value = Potential> {
        proptest::collection::vec(-100i64..=100, n).prop_map(Potential::from_values)
    }

    proptest! {
        // Reweighting twice by phi1 then phi2 equals reweighting once by their sum.
        #[test]
        fn reduction_composes((g, phi1, phi2) in arb_graph().prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), arb_potential(n), arb_potential(n))
        })) {
            let twice = reduce_weights(&reduce_weights(&g, &phi1).unwrap(), &phi2).unwrap();
            let summed = reduce_weights(&g, &phi1.checked_add(&phi2).unwrap()).unwrap();
            prop_assert_eq!(twice, summed);
        }

        // Along any walk, the reduced length telescopes to
        // l(P) + phi(start) - phi(end).
        #[test]
        fn reduction_telescopes((g, phi, walk_seed) in arb_graph().prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), arb_potential(n), any::<u64>())
        })) {
            let r = reduce_weights(&g, &phi).unwrap();
            let adj = g.out_adjacency();
            // Deterministic pseudo-random walk of up to 8 edges.
            let mut v = (walk_seed as usize) % g.vertex_count();
            let start = v;
            let mut raw = 0i64;
            let mut reduced = 0i64;
            let mut s = walk_seed;
            for _ in 0..8 {
                if adj[v].is_empty() {
                    break;
                }
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let id = adj[v][(s as usize) % adj[v].len()];
                raw += g.edge(id).weight;
                reduced += r.edge(id).weight;
                v = g.edge(id).dst;
            }
            prop_assert_eq!(reduced, raw + phi.value(start) - phi.value(v));
        }

        #[test]
        fn neutralizing_implies_valid((g, phi) in arb_graph().prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), arb_potential(n))
        })) {
            if is_neutralizing(&g, &phi).unwrap() {
                prop_assert!(is_valid_potential(&g, &phi).unwrap());
            }
        }
    }
}
