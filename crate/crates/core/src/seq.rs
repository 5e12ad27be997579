//! Weight sequences: the path-graph view of the engine.
//!
//! A weight sequence is the edge-weight list of a directed path read in
//! order. Contraction (dropping zeros and merging same-sign runs) preserves
//! everything the engine's behavior on a path depends on, which makes the
//! alternating contracted form the right object for counting how negative
//! entries disappear across iterations.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSeq {
    weights: Vec<i64>,
}

impl WeightSeq {
    pub fn new(weights: Vec<i64>) -> Self {
        WeightSeq { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn negative_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w < 0).count()
    }
}

impl From<Vec<i64>> for WeightSeq {
    fn from(weights: Vec<i64>) -> Self {
        WeightSeq::new(weights)
    }
}

/// Removes zero entries and merges maximal same-sign runs into their checked
/// sums. The result alternates in sign; contraction is idempotent.
pub fn contract_sequence(p: &WeightSeq) -> Result<WeightSeq> {
    let mut out: Vec<i64> = Vec::new();
    for &w in &p.weights {
        if w == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if (*last > 0) == (w > 0) => {
                *last = last
                    .checked_add(w)
                    .ok_or(Error::Overflow("run sum in contraction"))?;
            }
            _ => out.push(w),
        }
    }
    Ok(WeightSeq::new(out))
}

/// Neg-segment structure of a contracted sequence (all indices 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegSegmentAnalysis {
    /// Odd indices i with l(i) + l(i+1) > 0, ascending.
    pub terminals: Vec<usize>,
    /// Closed neg-segments [i, j]: i odd, j even, the segment's only terminal
    /// is j-1, and segments tile the prefix of the sequence in order.
    pub segments: Vec<(usize, usize)>,
    /// Trailing region after the last closed segment, when no terminal closes
    /// it (for an all-non-terminal sequence this spans everything).
    pub open_segment: Option<(usize, usize)>,
    /// True iff the input had odd length (trailing negative) and a virtual
    /// positive entry at position len+1 was assumed; that position can then
    /// appear as a segment end.
    pub sentinel_appended: bool,
}

/// Computes terminal indices and the neg-segment partition of a contracted
/// sequence.
///
/// The input must be zero-free and sign-alternating starting with a negative
/// entry (the shape `contract_sequence` produces for a path that still has
/// negative weight), otherwise `Precondition` is returned. Odd-length inputs
/// end in a negative entry; they are normalized by assuming one virtual
/// positive entry past the end, reported via `sentinel_appended`.
pub fn analyze_neg_segments(p: &WeightSeq) -> Result<NegSegmentAnalysis> {
    let w = &p.weights;
    for (idx, &x) in w.iter().enumerate() {
        let i = idx + 1;
        let want_negative = i % 2 == 1;
        if x == 0 || (x < 0) != want_negative {
            return Err(Error::Precondition(format!(
                "not a contracted alternating sequence: entry {i} is {x}"
            )));
        }
    }
    let n = w.len();
    let sentinel_appended = n % 2 == 1;
    let is_terminal = |i: usize| -> Result<bool> {
        if i == n {
            return Ok(true); // pairs with the virtual positive entry
        }
        let sum = w[i - 1]
            .checked_add(w[i])
            .ok_or(Error::Overflow("terminal pair sum"))?;
        Ok(sum > 0)
    };
    let mut terminals = Vec::new();
    let mut segments = Vec::new();
    let mut start = 1usize;
    for i in (1..=n).step_by(2) {
        if is_terminal(i)? {
            terminals.push(i);
            segments.push((start, i + 1));
            start = i + 2;
        }
    }
    let open_segment = (start <= n).then_some((start, n));
    Ok(NegSegmentAnalysis {
        terminals,
        segments,
        open_segment,
        sentinel_appended,
    })
}

/// The path graph whose k-th edge (k -> k+1) carries the k-th weight.
pub fn seq_to_path_graph(p: &WeightSeq) -> Graph {
    let edges = p
        .weights
        .iter()
        .enumerate()
        .map(|(k, &weight)| Edge {
            src: k,
            dst: k + 1,
            weight,
        })
        .collect();
    Graph::new(p.len() + 1, edges).expect("path construction is always in range")
}

/// Inverse of [`seq_to_path_graph`]; fails with `Shape` unless `g` is exactly
/// a directed path in vertex-id order with edges stored in path order.
pub fn path_graph_to_seq(g: &Graph) -> Result<WeightSeq> {
    if g.vertex_count() != g.edge_count() + 1 {
        return Err(Error::Shape(format!(
            "not a path graph: {} vertices, {} edges",
            g.vertex_count(),
            g.edge_count()
        )));
    }
    let mut weights = Vec::with_capacity(g.edge_count());
    for (k, e) in g.edges().iter().enumerate() {
        if e.src != k || e.dst != k + 1 {
            return Err(Error::Shape(format!(
                "not a path graph: edge {k} is {} -> {}, expected {k} -> {}",
                e.src,
                e.dst,
                k + 1
            )));
        }
        weights.push(e.weight);
    }
    Ok(WeightSeq::new(weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(w: &[i64]) -> WeightSeq {
        WeightSeq::new(w.to_vec())
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(
            contract_sequence(&seq(&[0, 0, -1, 1, 0, 0, -1, 1])).unwrap(),
            seq(&[-1, 1, -1, 1])
        );
        assert_eq!(
            contract_sequence(&seq(&[-1, -2, 3, 0, 4])).unwrap(),
            seq(&[-3, 7])
        );
        assert_eq!(contract_sequence(&seq(&[])).unwrap(), seq(&[]));
        assert_eq!(contract_sequence(&seq(&[0, 0])).unwrap(), seq(&[]));
    }

    #[test]
    fn contraction_overflow() {
        assert!(matches!(
            contract_sequence(&seq(&[i64::MAX, i64::MAX])),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn segment_examples() {
        let a = analyze_neg_segments(&seq(&[-1, 2, -1, 2])).unwrap();
        assert_eq!(a.terminals, vec![1, 3]);
        assert_eq!(a.segments, vec![(1, 2), (3, 4)]);
        assert_eq!(a.open_segment, None);
        assert!(!a.sentinel_appended);

        let a = analyze_neg_segments(&seq(&[-3, 1, -1, 2])).unwrap();
        assert_eq!(a.terminals, vec![3]);
        assert_eq!(a.segments, vec![(1, 4)]);
        assert_eq!(a.open_segment, None);
    }

    #[test]
    fn all_non_terminal_reports_one_open_segment() {
        let a = analyze_neg_segments(&seq(&[-1, 1])).unwrap();
        assert!(a.terminals.is_empty());
        assert!(a.segments.is_empty());
        assert_eq!(a.open_segment, Some((1, 2)));
    }

    #[test]
    fn non_terminal_tail_stays_open() {
        let a = analyze_neg_segments(&seq(&[-1, 2, -5, 1])).unwrap();
        assert_eq!(a.terminals, vec![1]);
        assert_eq!(a.segments, vec![(1, 2)]);
        assert_eq!(a.open_segment, Some((3, 4)));
    }

    #[test]
    fn odd_length_uses_virtual_sentinel() {
        let a = analyze_neg_segments(&seq(&[-1, 1, -2])).unwrap();
        assert!(a.sentinel_appended);
        assert_eq!(a.terminals, vec![3]);
        assert_eq!(a.segments, vec![(1, 4)]);
        assert_eq!(a.open_segment, None);
    }

    #[test]
    fn rejects_non_contracted_input() {
        for bad in [&[1i64, -1][..], &[-1, -1], &[-1, 0], &[0]] {
            assert!(matches!(
                analyze_neg_segments(&seq(bad)),
                Err(Error::Precondition(_))
            ));
        }
        assert!(analyze_neg_segments(&seq(&[])).unwrap().segments.is_empty());
    }

    #[test]
    fn path_round_trip() {
        let p = seq(&[-3, 1, -1, 2, -2, 1, -1, 3]);
        let g = seq_to_path_graph(&p);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(path_graph_to_seq(&g).unwrap(), p);

        let empty = seq(&[]);
        let g = seq_to_path_graph(&empty);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(path_graph_to_seq(&g).unwrap(), empty);
    }

    #[test]
    fn non_paths_are_rejected() {
        // Star: two edges out of vertex 0.
        let g = Graph::new(
            3,
            vec![
                Edge {
                    src: 0,
                    dst: 1,
                    weight: 1,
                },
                Edge {
                    src: 0,
                    dst: 2,
                    weight: 1,
                },
            ],
        )
        .unwrap();
        assert!(matches!(path_graph_to_seq(&g), Err(Error::Shape(_))));
        let g = Graph::new(2, vec![]).unwrap();
        assert!(matches!(path_graph_to_seq(&g), Err(Error::Shape(_))));
    }

    fn prefix_min(w: &[i64]) -> i64 {
        let mut acc = 0i64;
        let mut best = 0i64;
        for &x in w {
            acc += x;
            best = best.min(acc);
        }
        best
    }

    proptest! {
        #[test]
        fn contraction_is_idempotent_and_sum_preserving(
            w in proptest::collection::vec(-20i64..=20, 0..60)
        ) {
            let p = WeightSeq::new(w.clone());
            let c = contract_sequence(&p).unwrap();
            prop_assert_eq!(contract_sequence(&c).unwrap(), c.clone());
            let total: i64 = w.iter().sum();
            let ctotal: i64 = c.weights().iter().sum();
            prop_assert_eq!(total, ctotal);
            // The running minimum of prefix sums survives contraction.
            prop_assert_eq!(prefix_min(&w), prefix_min(c.weights()));
            // Alternation: no zeros, no same-sign neighbors.
            for pair in c.weights().windows(2) {
                prop_assert!((pair[0] > 0) != (pair[1] > 0));
            }
            prop_assert!(!c.weights().contains(&0));
        }

        #[test]
        fn path_graph_round_trips(w in proptest::collection::vec(any::<i64>(), 0..50)) {
            let p = WeightSeq::new(w);
            prop_assert_eq!(path_graph_to_seq(&seq_to_path_graph(&p)).unwrap(), p);
        }
    }
}
