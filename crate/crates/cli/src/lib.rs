//! Plumbing behind the `neutralize` binary: experiment rows, CSV output,
//! iteration-cap resolution, and the exit-code vocabulary.

use neutralize::{Error, Graph, IterationTrace, Result};

/// Fixed CSV header; columns never change so downstream scripts can rely on
/// positions.
pub const CSV_HEADER: &str = "family,param,vertices,edges,iterations,wall_time_ns";

/// Exit code for a closed-form verification mismatch.
pub const EXIT_MISMATCH: u8 = 5;

/// One benchmarked engine run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub family: String,
    pub param: u64,
    pub vertices: usize,
    pub edges: usize,
    pub iterations: usize,
    /// Minimum snake length after each iteration, one entry per iteration;
    /// 0 marks "no snake left" (or a zero-weight cycle blocking the
    /// measurement). Not part of the CSV columns.
    pub min_snake_by_iter: Vec<u64>,
    pub wall_time_ns: u128,
}

impl ExperimentRow {
    pub fn from_trace(
        family: &str,
        param: u64,
        g: &Graph,
        t: &IterationTrace,
        wall_time_ns: u128,
    ) -> Self {
        let min_snake_by_iter: Vec<u64> = t
            .iterations
            .iter()
            .map(|r| r.min_snake_length_after.unwrap_or(0))
            .collect();
        assert_eq!(min_snake_by_iter.len(), t.iterations_executed);
        ExperimentRow {
            family: family.to_owned(),
            param,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            iterations: t.iterations_executed,
            min_snake_by_iter,
            wall_time_ns,
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.family, self.param, self.vertices, self.edges, self.iterations, self.wall_time_ns
        )
    }
}

pub fn rows_to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

/// Iteration cap resolution: an explicit flag beats the NEUTRALIZE_MAX_ITERS
/// environment variable, which beats `default`.
pub fn resolve_max_iters(flag: Option<usize>, env: Option<&str>, default: usize) -> Result<usize> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match env {
        Some(raw) => raw.trim().parse().map_err(|_| {
            Error::Range(format!(
                "NEUTRALIZE_MAX_ITERS must be a non-negative integer, got {raw:?}"
            ))
        }),
        None => Ok(default),
    }
}

/// Exit-code vocabulary: 0 ok, 2 usage/range/IO, 3 negative cycle,
/// 4 iteration limit, 5 verification mismatch (see [`EXIT_MISMATCH`]).
pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NegativeCycle { .. } => 3,
        Error::IterationLimit { .. } => 4,
        _ => 2,
    }
}
