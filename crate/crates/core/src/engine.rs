//! The iterative potential-neutralization engine.
//!
//! Each iteration computes the eta potential — for every vertex, the minimum
//! length of a path ending there whose negative edges all precede its
//! positive edges (zero edges may sit anywhere; the empty path counts) — and
//! reweights the graph by it. Iterations repeat until no strictly negative
//! edge remains; the accumulated potential then neutralizes the input.
//!
//! Eta is computed in two phases: first the minimum over non-positive paths
//! (propagated in topological order over the condensation of the non-positive
//! subgraph, with zero-weight strongly connected components contracted
//! virtually), then a multi-source Dijkstra pass over the non-negative
//! subgraph seeded with the phase-one values.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::collections::VecDeque;

use serde::Serialize;

use crate::baseline::{dijkstra, DistanceArray};
use crate::error::{Error, Result};
use crate::graph::{reduce_weights, EdgeFilter, EdgeId, Graph, Potential, VertexId};
use crate::snake::min_snake_length;

/// Result of one eta computation: the phase-one (non-positive paths only)
/// potential and the full potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaResult {
    pub eta_minus: Potential,
    pub eta: Potential,
}

/// Computes the eta potential of `g`.
///
/// Fails with `NegativeCycle` if the non-positive subgraph contains a cycle
/// with a strictly negative edge (a self-loop counts), and with `Overflow`
/// if any path sum leaves the i64 range.
pub fn compute_eta(g: &Graph) -> Result<EtaResult> {
    let c = EtaComputation::run(g)?;
    Ok(EtaResult {
        eta_minus: Potential::from_values(c.eta_minus),
        eta: Potential::from_values(c.eta),
    })
}

/// Internal eta computation with enough bookkeeping to reconstruct
/// realizing paths.
struct EtaComputation {
    eta_minus: Vec<i64>,
    eta: Vec<i64>,
    scc_id: Vec<usize>,
    /// Minimizing incoming non-positive edge per condensation component.
    scc_parent: Vec<Option<EdgeId>>,
    /// Dijkstra parent edge per vertex (phase two).
    vertex_parent: Vec<Option<EdgeId>>,
}

impl EtaComputation {
    fn run(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        let nonpos = g.view(EdgeFilter::NonPositive);
        let nonpos_out = nonpos.out_adjacency();
        let (scc_count, scc_id) = tarjan_scc(g, &nonpos_out);

        // A strictly negative edge inside a component of the non-positive
        // subgraph closes a negative cycle.
        for (id, e) in nonpos.edges() {
            if e.weight < 0 && scc_id[e.src] == scc_id[e.dst] {
                let back = intra_scc_path(g, &scc_id, e.dst, e.src);
                let mut witness = vec![id];
                witness.extend(back);
                return Err(Error::NegativeCycle { witness });
            }
        }

        // Phase one: propagate over the condensation. Components are numbered
        // in reverse topological order, so descending id order visits sources
        // first. All intra-component edges are zero and contribute nothing.
        let mut members = vec![Vec::new(); scc_count];
        for v in 0..n {
            members[scc_id[v]].push(v);
        }
        let nonpos_in = nonpos.in_adjacency();
        let mut val = vec![0i64; scc_count];
        let mut scc_parent = vec![None; scc_count];
        for c in (0..scc_count).rev() {
            for &v in &members[c] {
                for &id in &nonpos_in[v] {
                    let e = g.edge(id);
                    let cu = scc_id[e.src];
                    if cu == c {
                        continue;
                    }
                    let cand = val[cu]
                        .checked_add(e.weight)
                        .ok_or(Error::Overflow("eta propagation"))?;
                    if cand < val[c] {
                        val[c] = cand;
                        scc_parent[c] = Some(id);
                    }
                }
            }
        }
        let eta_minus: Vec<i64> = (0..n).map(|v| val[scc_id[v]]).collect();

        // Phase two: multi-source Dijkstra over the non-negative subgraph,
        // seeded with the phase-one values. Heap ties break toward the
        // smaller vertex id.
        let nonneg_out = g.view(EdgeFilter::NonNegative).out_adjacency();
        let mut eta = eta_minus.clone();
        let mut vertex_parent = vec![None; n];
        let mut heap: BinaryHeap<Reverse<(i64, VertexId)>> =
            (0..n).map(|v| Reverse((eta[v], v))).collect();
        while let Some(Reverse((d, u))) = heap.pop() {
            if d != eta[u] {
                continue; // stale entry
            }
            for &id in &nonneg_out[u] {
                let e = g.edge(id);
                let cand = d
                    .checked_add(e.weight)
                    .ok_or(Error::Overflow("eta propagation"))?;
                if cand < eta[e.dst] {
                    eta[e.dst] = cand;
                    vertex_parent[e.dst] = Some(id);
                    heap.push(Reverse((cand, e.dst)));
                }
            }
        }

        Ok(EtaComputation {
            eta_minus,
            eta,
            scc_id,
            scc_parent,
            vertex_parent,
        })
    }
}

/// Iterative Tarjan over the subgraph described by `adj` (edge ids into `g`).
/// Returns (component count, component id per vertex); ids are assigned in
/// reverse topological order of the condensation, i.e. for an edge between
/// distinct components the target's id is smaller.
fn tarjan_scc(g: &Graph, adj: &[Vec<EdgeId>]) -> (usize, Vec<usize>) {
    const UNSET: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSET; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut scc_id = vec![UNSET; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut frames: Vec<(VertexId, usize)> = Vec::new();
    let mut next_index = 0usize;
    let mut scc_count = 0usize;

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));
        while let Some(&(v, pos)) = frames.last() {
            if pos < adj[v].len() {
                frames.last_mut().unwrap().1 += 1;
                let w = g.edge(adj[v][pos]).dst;
                if index[w] == UNSET {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _)) = frames.last() {
                    lowlink[p] = lowlink[p].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        scc_id[w] = scc_count;
                        if w == v {
                            break;
                        }
                    }
                    scc_count += 1;
                }
            }
        }
    }
    (scc_count, scc_id)
}

/// BFS path (as edge ids, forward order) from `from` to `to` using
/// non-positive edges inside a single condensation component. Both vertices
/// must belong to the same component, which is strongly connected in the
/// non-positive subgraph, so a path always exists.
fn intra_scc_path(g: &Graph, scc_id: &[usize], from: VertexId, to: VertexId) -> Vec<EdgeId> {
    if from == to {
        return Vec::new();
    }
    let c = scc_id[from];
    debug_assert_eq!(c, scc_id[to]);
    let mut back: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let nonpos_out = g.view(EdgeFilter::NonPositive).out_adjacency();
    let mut queue = VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    'bfs: while let Some(u) = queue.pop_front() {
        for &id in &nonpos_out[u] {
            let w = g.edge(id).dst;
            if scc_id[w] != c || seen[w] {
                continue;
            }
            seen[w] = true;
            back[w] = Some(id);
            if w == to {
                break 'bfs;
            }
            queue.push_back(w);
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let id = back[v].expect("component not strongly connected");
        path.push(id);
        v = g.edge(id).src;
    }
    path.reverse();
    path
}

/// A path realizing eta(v), split into its non-positive prefix and
/// non-negative suffix: `path[..split]` has weights <= 0 and `path[split..]`
/// has weights >= 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbpDecomposition {
    pub path: Vec<EdgeId>,
    pub split: usize,
}

/// Reconstructs a minimum path ending at `target` whose negative edges all
/// precede its positive edges. The empty decomposition means eta(target) = 0
/// is realized by the empty path.
pub fn nbp_decomposition(g: &Graph, target: VertexId) -> Result<NbpDecomposition> {
    if target >= g.vertex_count() {
        return Err(Error::Range(format!(
            "vertex {target} out of range for {} vertices",
            g.vertex_count()
        )));
    }
    let c = EtaComputation::run(g)?;

    // Suffix: walk Dijkstra parents back to the vertex whose value phase two
    // never improved.
    let mut suffix = Vec::new();
    let mut v = target;
    while let Some(id) = c.vertex_parent[v] {
        suffix.push(id);
        v = g.edge(id).src;
    }
    suffix.reverse();

    // Prefix: walk the condensation parents from there, expanding zero-weight
    // detours inside each contracted component.
    let mut prefix_rev: Vec<EdgeId> = Vec::new();
    let mut comp = c.scc_id[v];
    let mut target_vertex = v;
    while let Some(id) = c.scc_parent[comp] {
        let e = g.edge(id);
        let intra = intra_scc_path(g, &c.scc_id, e.dst, target_vertex);
        prefix_rev.extend(intra.into_iter().rev());
        prefix_rev.push(id);
        comp = c.scc_id[e.src];
        target_vertex = e.src;
    }
    prefix_rev.reverse();

    let split = prefix_rev.len();
    let mut path = prefix_rev;
    path.extend(suffix);
    Ok(NbpDecomposition { path, split })
}

/// What [`run_to_fixpoint`] stores per iteration beyond the defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct RecordOptions {
    /// Also keep the full reduced weight array after each iteration.
    pub record_reduced_weights: bool,
}

/// One iteration of the engine as recorded in a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRecord {
    /// 1-based iteration index.
    pub index: usize,
    /// The potential applied by this iteration.
    pub eta: Potential,
    /// Strictly negative edges remaining after reweighting.
    pub negative_edges_after: usize,
    /// Minimum snake length after reweighting; `None` when no negative edge
    /// remains or the zero-weight subgraph is cyclic.
    pub min_snake_length_after: Option<u64>,
    /// Weight array after reweighting, in edge-id order (opt-in).
    pub reduced_weights: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace {
    pub iterations: Vec<IterationRecord>,
    /// Pointwise sum of all per-iteration potentials; neutralizes the input.
    pub accumulated_potential: Potential,
    pub iterations_executed: usize,
}

/// The default iteration cap.
pub fn default_max_iters(g: &Graph) -> usize {
    g.vertex_count() + 1
}

/// Repeats eta-reweighting until no strictly negative edge remains.
///
/// An iteration is counted iff at least one strictly negative edge existed
/// when it began; a graph without negative edges yields zero iterations.
/// Exceeding `max_iters` with negative edges remaining fails with
/// `IterationLimit` (a suspected negative cycle that never surfaces in the
/// non-positive subgraph, or a pathological instance).
pub fn run_to_fixpoint(g: &Graph, max_iters: usize, opts: RecordOptions) -> Result<IterationTrace> {
    let mut cur = g.clone();
    let mut accumulated = Potential::zeros(g.vertex_count());
    let mut iterations = Vec::new();
    let mut executed = 0usize;
    while cur.has_negative_edge() {
        if executed == max_iters {
            return Err(Error::IterationLimit {
                max_iters,
                negative_edges: cur.negative_edge_count(),
            });
        }
        let eta = compute_eta(&cur)?.eta;
        cur = reduce_weights(&cur, &eta)?;
        accumulated = accumulated.checked_add(&eta)?;
        executed += 1;
        let negative_edges_after = cur.negative_edge_count();
        let min_snake_length_after = if negative_edges_after > 0 {
            min_snake_length(&cur).ok().flatten()
        } else {
            None
        };
        iterations.push(IterationRecord {
            index: executed,
            eta,
            negative_edges_after,
            min_snake_length_after,
            reduced_weights: opts
                .record_reduced_weights
                .then(|| cur.edges().iter().map(|e| e.weight).collect()),
        });
    }
    Ok(IterationTrace {
        iterations,
        accumulated_potential: accumulated,
        iterations_executed: executed,
    })
}

#[derive(Serialize)]
struct IterationJson<'a> {
    index: usize,
    eta: &'a [i64],
    #[serde(rename = "negEdges")]
    neg_edges: usize,
    #[serde(rename = "minSnakeLen")]
    min_snake_len: Option<u64>,
}

#[derive(Serialize)]
struct TraceJson<'a> {
    iterations: Vec<IterationJson<'a>>,
    #[serde(rename = "accumulatedPotential")]
    accumulated_potential: &'a [i64],
    #[serde(rename = "iterationsExecuted")]
    iterations_executed: usize,
}

impl IterationTrace {
    /// Stable JSON rendering of the trace. Eta arrays are in vertex-id order;
    /// reduced weight arrays are never included.
    pub fn to_json(&self) -> String {
        let doc = TraceJson {
            iterations: self
                .iterations
                .iter()
                .map(|it| IterationJson {
                    index: it.index,
                    eta: it.eta.values(),
                    neg_edges: it.negative_edges_after,
                    min_snake_len: it.min_snake_length_after,
                })
                .collect(),
            accumulated_potential: self.accumulated_potential.values(),
            iterations_executed: self.iterations_executed,
        };
        serde_json::to_string_pretty(&doc).expect("trace serialization cannot fail")
    }
}

/// Single-source shortest paths by neutralize-then-Dijkstra: runs the engine
/// to its fixpoint, reweights by the accumulated potential, runs Dijkstra on
/// the now non-negative weights and shifts distances back.
pub fn sssp(g: &Graph, source: VertexId) -> Result<DistanceArray> {
    sssp_with_limit(g, source, default_max_iters(g))
}

/// [`sssp`] with an explicit iteration cap.
pub fn sssp_with_limit(g: &Graph, source: VertexId, max_iters: usize) -> Result<DistanceArray> {
    if source >= g.vertex_count() {
        return Err(Error::Range(format!(
            "source {source} out of range for {} vertices",
            g.vertex_count()
        )));
    }
    let trace = run_to_fixpoint(g, max_iters, RecordOptions::default())?;
    let phi = &trace.accumulated_potential;
    let neutralized = reduce_weights(g, phi)?;
    let reduced_dist = dijkstra(&neutralized, source)?;
    let values = reduced_dist
        .values()
        .iter()
        .enumerate()
        .map(|(v, d)| {
            d.map(|d| {
                let real = d as i128 - phi.value(source) as i128 + phi.value(v) as i128;
                i64::try_from(real).map_err(|_| Error::Overflow("distance out of i64 range"))
            })
            .transpose()
        })
        .collect::<Result<Vec<Option<i64>>>>()?;
    Ok(DistanceArray::from_values(values))
}
