//! Snake statistics.
//!
//! A snake is a strictly negative "head" edge together with an
//! inclusion-maximal zero-weight path (its "tail") leading into the head's
//! source; maximal means the tail cannot be extended backwards, i.e. its
//! first vertex has no incoming zero edge. Snake length counts edges, so a
//! bare negative edge is a snake of length 1. Per-iteration snake lengths
//! measure how much consecutive zero-edge structure feeds each remaining
//! negative edge.
//!
//! Both operations require the zero-weight subgraph to be acyclic; zero
//! cycles would blur snake identity and are rejected.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{EdgeFilter, EdgeId, Graph, VertexId};

/// Cap on [`enumerate_snakes`] output used by convenience callers.
pub const DEFAULT_SNAKE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snake {
    /// Zero edges of the tail in path order; may be empty.
    pub tail: Vec<EdgeId>,
    /// The strictly negative head edge.
    pub head: EdgeId,
}

impl Snake {
    /// Length in edges, tail plus head.
    pub fn length(&self) -> u64 {
        self.tail.len() as u64 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeEnumeration {
    pub snakes: Vec<Snake>,
    /// True iff enumeration stopped at the limit.
    pub truncated: bool,
}

/// Topological order of the zero-weight subgraph, or a `ZeroCycle` error
/// carrying one witness cycle.
fn zero_topo_order(g: &Graph) -> Result<Vec<VertexId>> {
    let n = g.vertex_count();
    let zero_out = g.view(EdgeFilter::Zero).out_adjacency();
    let mut indegree = vec![0usize; n];
    for (_, e) in g.view(EdgeFilter::Zero).edges() {
        indegree[e.dst] += 1;
    }
    let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &id in &zero_out[v] {
            let w = g.edge(id).dst;
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Leftover vertices all lie on or downstream of zero cycles; walk
    // backwards through leftover in-edges until a vertex repeats.
    let zero_in = g.view(EdgeFilter::Zero).in_adjacency();
    let leftover: Vec<bool> = {
        let mut in_order = vec![false; n];
        for &v in &order {
            in_order[v] = true;
        }
        in_order.iter().map(|&x| !x).collect()
    };
    let start = (0..n).find(|&v| leftover[v]).unwrap();
    let mut seen_at = vec![usize::MAX; n];
    let mut walk: Vec<EdgeId> = Vec::new();
    let mut v = start;
    loop {
        if seen_at[v] != usize::MAX {
            let mut witness: Vec<EdgeId> = walk[seen_at[v]..].to_vec();
            witness.reverse();
            return Err(Error::ZeroCycle { witness });
        }
        seen_at[v] = walk.len();
        let &id = zero_in[v]
            .iter()
            .find(|&&id| leftover[g.edge(id).src])
            .expect("leftover vertex without leftover zero in-edge");
        walk.push(id);
        v = g.edge(id).src;
    }
}

/// Shortest snake length in `g`: the minimum over strictly negative edges of
/// one plus the shortest inclusion-maximal zero path into the edge's source.
/// Returns `None` when no strictly negative edge exists.
pub fn min_snake_length(g: &Graph) -> Result<Option<u64>> {
    let order = zero_topo_order(g)?;
    if !g.has_negative_edge() {
        return Ok(None);
    }
    // Shortest zero-path distance from the nearest vertex with no incoming
    // zero edge, computed along the topological order.
    let zero_in = g.view(EdgeFilter::Zero).in_adjacency();
    let mut depth = vec![0u64; g.vertex_count()];
    for &v in &order {
        depth[v] = zero_in[v]
            .iter()
            .map(|&id| depth[g.edge(id).src] + 1)
            .min()
            .unwrap_or(0);
    }
    Ok(g.view(EdgeFilter::Negative)
        .edges()
        .map(|(_, e)| depth[e.src] + 1)
        .min())
}

/// Enumerates every snake, each exactly once, in deterministic order (heads
/// by edge id, tails in depth-first order over incoming zero edges). Stops
/// after `limit` snakes and sets `truncated`.
pub fn enumerate_snakes(g: &Graph, limit: usize) -> Result<SnakeEnumeration> {
    zero_topo_order(g)?;
    let zero_in = g.view(EdgeFilter::Zero).in_adjacency();
    let mut snakes = Vec::new();
    for (head, e) in g.view(EdgeFilter::Negative).edges() {
        // Depth-first over reversed zero edges; a frame is (vertex, next
        // in-edge position), and tail_rev holds the edge into each non-root
        // frame.
        let mut frames: Vec<(VertexId, usize)> = vec![(e.src, 0)];
        let mut tail_rev: Vec<EdgeId> = Vec::new();
        while let Some(frame) = frames.last_mut() {
            let (v, pos) = *frame;
            let ins = &zero_in[v];
            if ins.is_empty() || pos == ins.len() {
                if ins.is_empty() {
                    if snakes.len() == limit {
                        return Ok(SnakeEnumeration {
                            snakes,
                            truncated: true,
                        });
                    }
                    snakes.push(Snake {
                        tail: tail_rev.iter().rev().copied().collect(),
                        head,
                    });
                }
                frames.pop();
                if !frames.is_empty() {
                    tail_rev.pop();
                }
                continue;
            }
            frame.1 += 1;
            let id = ins[pos];
            tail_rev.push(id);
            frames.push((g.edge(id).src, 0));
        }
    }
    Ok(SnakeEnumeration {
        snakes,
        truncated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

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
    fn no_negative_edges_means_no_snakes() {
        let g = graph(3, &[(0, 1, 0), (1, 2, 4)]);
        assert_eq!(min_snake_length(&g).unwrap(), None);
        let e = enumerate_snakes(&g, DEFAULT_SNAKE_LIMIT).unwrap();
        assert!(e.snakes.is_empty() && !e.truncated);
    }

    #[test]
    fn bare_negative_edge_is_length_one() {
        let g = graph(2, &[(0, 1, -3)]);
        assert_eq!(min_snake_length(&g).unwrap(), Some(1));
        let e = enumerate_snakes(&g, DEFAULT_SNAKE_LIMIT).unwrap();
        assert_eq!(
            e.snakes,
            vec![Snake {
                tail: vec![],
                head: 0
            }]
        );
    }

    #[test]
    fn zero_chain_feeds_the_head() {
        // 0 -0-> 1 -0-> 2 -(-1)-> 3: single snake of length 3.
        let g = graph(4, &[(0, 1, 0), (1, 2, 0), (2, 3, -1)]);
        assert_eq!(min_snake_length(&g).unwrap(), Some(3));
        let e = enumerate_snakes(&g, DEFAULT_SNAKE_LIMIT).unwrap();
        assert_eq!(
            e.snakes,
            vec![Snake {
                tail: vec![0, 1],
                head: 2
            }]
        );
    }

    #[test]
    fn min_takes_shortest_maximal_tail() {
        // Two maximal tails into vertex 3: [a->3] and [b->c->3].
        let g = graph(5, &[(0, 3, 0), (1, 2, 0), (2, 3, 0), (3, 4, -2)]);
        assert_eq!(min_snake_length(&g).unwrap(), Some(2));
        let e = enumerate_snakes(&g, DEFAULT_SNAKE_LIMIT).unwrap();
        let mut lengths: Vec<u64> = e.snakes.iter().map(Snake::length).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![2, 3]);
        assert_eq!(min_snake_length(&g).unwrap().unwrap(), lengths[0],);
    }

    #[test]
    fn positive_edges_do_not_extend_tails() {
        // Incoming positive edge does not make the tail longer.
        let g = graph(3, &[(0, 1, 7), (1, 2, -1)]);
        assert_eq!(min_snake_length(&g).unwrap(), Some(1));
    }

    #[test]
    fn zero_cycle_is_rejected() {
        let g = graph(3, &[(0, 1, 0), (1, 0, 0), (1, 2, -1)]);
        match min_snake_length(&g) {
            Err(Error::ZeroCycle { witness }) => {
                assert_eq!(witness.len(), 2);
                for &id in &witness {
                    assert_eq!(g.edge(id).weight, 0);
                }
            }
            other => panic!("expected zero cycle, got {other:?}"),
        }
        assert!(matches!(
            enumerate_snakes(&g, 10),
            Err(Error::ZeroCycle { .. })
        ));
    }

    #[test]
    fn enumeration_truncates_at_limit() {
        // A zero diamond doubles the tail count per layer: 4 maximal tails.
        let g = graph(
            8,
            &[
                (0, 2, 0),
                (1, 2, 0),
                (2, 3, 0),
                (4, 5, 0),
                (5, 3, 0),
                (6, 5, 0),
                (3, 7, -1),
            ],
        );
        let full = enumerate_snakes(&g, DEFAULT_SNAKE_LIMIT).unwrap();
        assert_eq!(full.snakes.len(), 4);
        assert!(!full.truncated);
        let cut = enumerate_snakes(&g, 3).unwrap();
        assert_eq!(cut.snakes.len(), 3);
        assert!(cut.truncated);
    }

    #[test]
    fn snakes_are_maximal_and_well_formed() {
        let g = graph(
            6,
            &[(0, 1, 0), (1, 2, 0), (2, 3, -4), (4, 1, 0), (1, 5, -1)],
        );
        let e = enumerate_snakes(&g, DEFAULT_SNAKE_LIMIT).unwrap();
        let zero_in = g.view(EdgeFilter::Zero).in_adjacency();
        for s in &e.snakes {
            assert!(g.edge(s.head).weight < 0);
            let mut at = g.edge(s.head).src;
            for &id in s.tail.iter().rev() {
                assert_eq!(g.edge(id).dst, at);
                assert_eq!(g.edge(id).weight, 0);
                at = g.edge(id).src;
            }
            assert!(zero_in[at].is_empty(), "tail is extendable");
        }
        // Heads 2 and 4; head 2 has tails [0,1] and [3,1]; head 4 has [0], [3].
        assert_eq!(e.snakes.len(), 4);
    }
}
