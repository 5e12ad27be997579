//! Instance families.
//!
//! `gen_gn` builds the two-rail gadget family G_n on vertices x_0..x_2n and
//! y_0..y_2n whose weights are powers of three arranged so the engine must
//! iterate Omega(n) times: each iteration neutralizes only the outermost
//! gadget and reproduces G_{n-1} (with the rails swapped) on the rest.
//! `gn_closed_form_eta` and `gn_closed_form_reduced` give the exact
//! first-iteration potentials and reduced weights, usable as oracles against
//! the engine. `gen_hard_path` builds path instances of length 2^s that need
//! exactly s iterations; `gen_alternating_path` the (-1, 1)-repeated paths;
//! `gen_random_graph` seeded negative-weight instances that are free of
//! negative cycles by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use crate::engine::{compute_eta, EtaResult};
use crate::error::{Error, Result};
use crate::graph::{reduce_weights, Edge, Graph, Potential, VertexId};
use crate::seq::WeightSeq;

pub const GN_MAX_N: u32 = 37;
pub const HARD_PATH_MAX_S: u32 = 30;

/// Vertex layout of G_n: x_i at id i, y_i at id 2n+1+i, 0 <= i <= 2n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GnLayout {
    n: u32,
}

impl GnLayout {
    pub fn new(n: u32) -> Self {
        GnLayout { n }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        4 * self.n as usize + 2
    }

    pub fn edge_count(&self) -> usize {
        6 * self.n as usize
    }

    pub fn x(&self, i: u32) -> VertexId {
        debug_assert!(i <= 2 * self.n);
        i as usize
    }

    pub fn y(&self, i: u32) -> VertexId {
        debug_assert!(i <= 2 * self.n);
        (2 * self.n + 1 + i) as usize
    }

    /// Human-readable vertex name ("x3", "y0", ...).
    pub fn label(&self, v: VertexId) -> String {
        let split = 2 * self.n as usize + 1;
        if v < split {
            format!("x{v}")
        } else {
            format!("y{}", v - split)
        }
    }
}

fn pow3(k: u32) -> i64 {
    3i64.checked_pow(k).expect("3^k out of range")
}

fn check_gn_range(n: u32) -> Result<()> {
    if !(1..=GN_MAX_N).contains(&n) {
        return Err(Error::Range(format!(
            "gn parameter n={n} outside 1..={GN_MAX_N}"
        )));
    }
    Ok(())
}

/// Builds G_n. Edges are emitted gadget-major (i = 0..n), each gadget in the
/// order: x-rail negative, x-rail positive, y-rail negative, y-rail zero,
/// cross positive, cross zero.
pub fn gen_gn(n: u32) -> Result<(Graph, GnLayout)> {
    check_gn_range(n)?;
    let l = GnLayout::new(n);
    let mut edges = Vec::with_capacity(l.edge_count());
    for i in 0..n {
        let mut push = |src: VertexId, dst: VertexId, weight: i64| {
            edges.push(Edge { src, dst, weight });
        };
        push(l.x(2 * i), l.x(2 * i + 1), -2 * pow3(n - i));
        push(l.x(2 * i + 1), l.x(2 * i + 2), 2 * pow3(n - i - 1));
        push(l.y(2 * i), l.y(2 * i + 1), -pow3(n - i));
        push(l.y(2 * i + 1), l.y(2 * i + 2), 0);
        push(l.x(2 * i + 1), l.y(2 * i + 2), pow3(n - i - 1));
        push(l.y(2 * i + 1), l.x(2 * i + 2), 0);
    }
    Ok((Graph::new(l.vertex_count(), edges)?, l))
}

/// Exact first-iteration potentials of G_n.
///
/// Phase one: eta-(x_0) = eta-(y_0) = 0, eta-(x_1) = -2*3^n, and for the rest
/// eta-(y_{2i+1}) = eta-(y_{2i+2}) = (3^{n-i} - 3^{n+1})/2 for 0 <= i < n,
/// eta-(x_{2i}) = eta-(y_{2i}) = (3^{n-i+1} - 3^{n+1})/2 for 1 <= i <= n,
/// eta-(x_{2i+1}) = (-3^{n-i} - 3^{n+1})/2 for 1 <= i < n.
/// Phase two only lowers the even-indexed interior vertices:
/// eta(x_{2i}) = (3^{n-i} - 3^{n+1})/2 and eta(y_{2i}) = (-3^{n-i} - 3^{n+1})/2
/// for 1 <= i <= n.
pub fn gn_closed_form_eta(n: u32) -> Result<EtaResult> {
    check_gn_range(n)?;
    let l = GnLayout::new(n);
    let top = pow3(n + 1);
    let mut minus = vec![0i64; l.vertex_count()];
    minus[l.x(1)] = -2 * pow3(n);
    for i in 0..n {
        let val = (pow3(n - i) - top) / 2;
        minus[l.y(2 * i + 1)] = val;
        minus[l.y(2 * i + 2)] = val;
    }
    for i in 1..=n {
        minus[l.x(2 * i)] = (pow3(n - i + 1) - top) / 2;
    }
    for i in 1..n {
        minus[l.x(2 * i + 1)] = (-pow3(n - i) - top) / 2;
    }
    let mut full = minus.clone();
    for i in 1..=n {
        full[l.x(2 * i)] = (pow3(n - i) - top) / 2;
        full[l.y(2 * i)] = (-pow3(n - i) - top) / 2;
    }
    Ok(EtaResult {
        eta_minus: Potential::from_values(minus),
        eta: Potential::from_values(full),
    })
}

/// Exact weights of G_n after one engine iteration, same vertex layout and
/// edge order as [`gen_gn`].
///
/// For 1 <= i < n the iteration swaps the rails edge-for-edge: the x-rail
/// gadget takes the former y-rail weights and vice versa. The boundary gadget
/// i = 0 neutralizes except for the two edges out of y_1, which become
/// 3^{n-1} (into x_2) and 2*3^{n-1} (into y_2).
pub fn gn_closed_form_reduced(n: u32) -> Result<Graph> {
    check_gn_range(n)?;
    let l = GnLayout::new(n);
    let mut edges = Vec::with_capacity(l.edge_count());
    for i in 0..n {
        let mut push = |src: VertexId, dst: VertexId, weight: i64| {
            edges.push(Edge { src, dst, weight });
        };
        let x_neg = if i == 0 { 0 } else { -pow3(n - i) };
        let y_neg = if i == 0 { 0 } else { -2 * pow3(n - i) };
        push(l.x(2 * i), l.x(2 * i + 1), x_neg);
        push(l.x(2 * i + 1), l.x(2 * i + 2), 0);
        push(l.y(2 * i), l.y(2 * i + 1), y_neg);
        push(l.y(2 * i + 1), l.y(2 * i + 2), 2 * pow3(n - i - 1));
        push(l.x(2 * i + 1), l.y(2 * i + 2), 0);
        push(l.y(2 * i + 1), l.x(2 * i + 2), pow3(n - i - 1));
    }
    Graph::new(l.vertex_count(), edges)
}

/// A verification failure with enough identity to act on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnMismatch {
    pub n: u32,
    pub detail: String,
}

impl std::fmt::Display for GnMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={}: {}", self.n, self.detail)
    }
}

/// Checks the engine against the closed forms on G_n: the eta potentials,
/// the weights after one iteration, and the self-similarity of the reduced
/// graph (its restriction to indices >= 2 must be G_{n-1} with the rails
/// swapped). Returns the first mismatch, or `None` when everything agrees.
pub fn verify_gn(n: u32) -> Result<Option<GnMismatch>> {
    let (g, l) = gen_gn(n)?;
    let expect = gn_closed_form_eta(n)?;
    let got = compute_eta(&g)?;
    for v in 0..g.vertex_count() {
        if got.eta_minus.value(v) != expect.eta_minus.value(v) {
            return Ok(Some(GnMismatch {
                n,
                detail: format!(
                    "eta-({}) = {}, closed form {}",
                    l.label(v),
                    got.eta_minus.value(v),
                    expect.eta_minus.value(v)
                ),
            }));
        }
        if got.eta.value(v) != expect.eta.value(v) {
            return Ok(Some(GnMismatch {
                n,
                detail: format!(
                    "eta({}) = {}, closed form {}",
                    l.label(v),
                    got.eta.value(v),
                    expect.eta.value(v)
                ),
            }));
        }
    }

    let reduced = reduce_weights(&g, &got.eta)?;
    let expect_reduced = gn_closed_form_reduced(n)?;
    for (id, (a, b)) in reduced
        .edges()
        .iter()
        .zip(expect_reduced.edges())
        .enumerate()
    {
        debug_assert!((a.src, a.dst) == (b.src, b.dst));
        if a.weight != b.weight {
            return Ok(Some(GnMismatch {
                n,
                detail: format!(
                    "reduced weight of edge {id} ({} -> {}) is {}, closed form {}",
                    l.label(a.src),
                    l.label(a.dst),
                    a.weight,
                    b.weight
                ),
            }));
        }
    }

    Ok(check_gn_self_similarity(&reduced, n))
}

/// Verifies that the reduced G_n restricted to indices >= 2 equals G_{n-1}
/// under the relabeling x_{j+2} -> y_j, y_{j+2} -> x_j.
fn check_gn_self_similarity(reduced: &Graph, n: u32) -> Option<GnMismatch> {
    let l = GnLayout::new(n);
    let interior: Vec<(VertexId, VertexId, i64)> = reduced
        .edges()
        .iter()
        .filter(|e| {
            let inner = |v: VertexId| v != l.x(0) && v != l.x(1) && v != l.y(0) && v != l.y(1);
            inner(e.src) && inner(e.dst)
        })
        .map(|e| (e.src, e.dst, e.weight))
        .collect();
    if n == 1 {
        return (!interior.is_empty()).then(|| GnMismatch {
            n,
            detail: format!(
                "expected no interior edges at n=1, found {}",
                interior.len()
            ),
        });
    }
    let (prev, pl) = gen_gn(n - 1).expect("n-1 in range");
    if interior.len() != prev.edge_count() {
        return Some(GnMismatch {
            n,
            detail: format!(
                "interior has {} edges, G_{} has {}",
                interior.len(),
                n - 1,
                prev.edge_count()
            ),
        });
    }
    // Relabel: interior x_{j+2} plays y_j of G_{n-1}, interior y_{j+2} plays x_j.
    let relabel = |v: VertexId| -> VertexId {
        let split = 2 * n as usize + 1;
        if v < split {
            pl.y(v as u32 - 2)
        } else {
            pl.x((v - split) as u32 - 2)
        }
    };
    let mapped: HashSet<(VertexId, VertexId, i64)> = interior
        .iter()
        .map(|&(s, d, w)| (relabel(s), relabel(d), w))
        .collect();
    for e in prev.edges() {
        if !mapped.contains(&(e.src, e.dst, e.weight)) {
            return Some(GnMismatch {
                n,
                detail: format!(
                    "G_{} edge {} -> {} (weight {}) missing from reduced interior",
                    n - 1,
                    pl.label(e.src),
                    pl.label(e.dst),
                    e.weight
                ),
            });
        }
    }
    None
}

/// The hard path of order s: 2^s weights built by starting from (-1, 1) and
/// repeatedly expanding every pair (a, b) into (a-1, 1, -1, b+1). Needs
/// exactly s engine iterations.
pub fn gen_hard_path(s: u32) -> Result<WeightSeq> {
    if !(1..=HARD_PATH_MAX_S).contains(&s) {
        return Err(Error::Range(format!(
            "hard path parameter s={s} outside 1..={HARD_PATH_MAX_S}"
        )));
    }
    let mut w: Vec<i64> = vec![-1, 1];
    for _ in 1..s {
        let mut next = Vec::with_capacity(w.len() * 2);
        for pair in w.chunks_exact(2) {
            next.extend_from_slice(&[pair[0] - 1, 1, -1, pair[1] + 1]);
        }
        w = next;
    }
    Ok(WeightSeq::new(w))
}

/// The alternating path (-1, 1) repeated k times; neutralized in one
/// iteration regardless of k.
pub fn gen_alternating_path(k: u32) -> Result<WeightSeq> {
    if k < 1 {
        return Err(Error::Range("alternating path needs k >= 1".into()));
    }
    Ok(WeightSeq::new(
        std::iter::repeat_n([-1i64, 1], k as usize)
            .flatten()
            .collect(),
    ))
}

/// Seeded random graph with negative weights but no negative cycle: every
/// weight is w(u,v) + pi(v) - pi(u) for base weights w and vertex shifts pi
/// drawn uniformly from [0, max_weight], so cycle totals stay non-negative.
///
/// Draw order (ChaCha8, `seed_from_u64`): pi for v = 0..n, then per edge the
/// pair (u, v) — rejecting self-loops and repeats — followed by its base
/// weight. Self-loops and parallel edges are never emitted, so m may not
/// exceed n*(n-1).
pub fn gen_random_graph(n: usize, m: usize, max_weight: i64, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Range("random graph needs n >= 1".into()));
    }
    if max_weight < 0 {
        return Err(Error::Range("max_weight must be non-negative".into()));
    }
    if m as u128 > n as u128 * (n as u128 - 1) {
        return Err(Error::Range(format!(
            "m={m} exceeds the {} simple ordered pairs on {n} vertices",
            n as u128 * (n as u128 - 1)
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pi: Vec<i64> = (0..n).map(|_| rng.random_range(0..=max_weight)).collect();
    let mut used: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || !used.insert((u, v)) {
            continue;
        }
        let w = rng.random_range(0..=max_weight);
        let weight = i64::try_from(w as i128 + pi[v] as i128 - pi[u] as i128)
            .map_err(|_| Error::Overflow("shifted weight out of i64 range"))?;
        edges.push(Edge {
            src: u,
            dst: v,
            weight,
        });
    }
    Graph::new(n, edges)
}
