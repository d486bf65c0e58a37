//! K-theory of the C*-algebra of a directed graph of groups.
//!
//! For a row-finite directed graph of infinite cyclic groups with no
//! sources, the two K-groups come from the integer weight matrices `N` and
//! `M` that record the range- and source-side multipliers summed over
//! parallel edges:
//!
//! ```text
//! K0 = coker(1 - N) + ker(1 - M),     K1 = coker(1 - M) + ker(1 - N).
//! ```
//!
//! When every group is trivial the object is an ordinary directed graph and
//! the classical graph-algebra formula applies instead: `K0 = coker(1 - A)`
//! and `K1` is free of rank `ker(1 - A)` for the vertex matrix `A`. Graphs
//! mixing other finite groups are rejected rather than silently
//! approximated.

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::intlin::{cokernel, kernel_rank, AbelianInvariants, IntMatrix};

#[derive(Debug, Clone)]
pub struct KTheoryResult {
    pub k0: AbelianInvariants,
    pub k1: AbelianInvariants,
    /// Range-side weight matrix, kept for audit.
    pub n_matrix: IntMatrix,
    /// Source-side weight matrix, kept for audit.
    pub m_matrix: IntMatrix,
    /// Row/column ordering used for both matrices.
    pub vertex_order: Vec<String>,
}

fn vertex_order(g: &GraphOfGroups) -> Vec<String> {
    g.vertex_ids().map(str::to_string).collect()
}

fn require_no_sources(g: &GraphOfGroups) -> Result<()> {
    for v in g.vertex_ids() {
        if g.incoming_edges(v).next().is_none() {
            return Err(Error::validation(
                "has a source",
                format!("vertex {v} receives no oriented edge"),
            ));
        }
    }
    Ok(())
}

/// Assemble the weight matrices over the sorted vertex ordering: entry
/// `(w, v)` sums `n_e` (resp. `m_e`) over the edges with range `v` and
/// source `w`. Requires every vertex and edge group to be infinite cyclic.
pub fn weight_matrices(g: &GraphOfGroups) -> Result<(IntMatrix, IntMatrix)> {
    for v in g.vertex_ids() {
        if !g.vertex_group(v)?.is_infinite() {
            return Err(Error::NonCyclicInfinite(format!(
                "infinite cyclic groups, but vertex {v} carries {}",
                g.vertex_group(v)?
            )));
        }
    }
    for e in g.edges() {
        if !e.edge_group.is_infinite() {
            return Err(Error::NonCyclicInfinite(format!(
                "infinite cyclic groups, but edge {} carries {}",
                e.id, e.edge_group
            )));
        }
    }
    Ok(weights_by(g, |n, _| n, |_, m| m))
}

fn weights_by(
    g: &GraphOfGroups,
    n_of: impl Fn(i64, i64) -> i64,
    m_of: impl Fn(i64, i64) -> i64,
) -> (IntMatrix, IntMatrix) {
    let order = vertex_order(g);
    let pos: std::collections::BTreeMap<&str, usize> =
        order.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let dim = order.len();
    let mut n = IntMatrix::zero(dim, dim);
    let mut m = IntMatrix::zero(dim, dim);
    for e in g.edges() {
        let row = pos[e.source.as_str()];
        let col = pos[e.range.as_str()];
        n[(row, col)] += n_of(e.n, e.m);
        m[(row, col)] += m_of(e.n, e.m);
    }
    (n, m)
}

/// Compute both K-groups.
pub fn k_theory(g: &GraphOfGroups) -> Result<KTheoryResult> {
    require_no_sources(g)?;
    let all_trivial = g.vertex_ids().all(|v| g.vertex_group(v).unwrap().is_trivial())
        && g.edges().iter().all(|e| e.edge_group.is_trivial());

    let (n, m) = if all_trivial {
        // Ordinary directed graph: both weight matrices degenerate to the
        // vertex adjacency matrix.
        weights_by(g, |_, _| 1, |_, _| 1)
    } else {
        weight_matrices(g)?
    };

    let order = vertex_order(g);
    let one = IntMatrix::identity(order.len());
    let one_minus_n = one.sub(&n);
    let one_minus_m = one.sub(&m);

    let (k0, k1) = if all_trivial {
        (
            cokernel(&one_minus_n),
            AbelianInvariants::free(kernel_rank(&one_minus_n)),
        )
    } else {
        (
            cokernel(&one_minus_n).plus(&AbelianInvariants::free(kernel_rank(&one_minus_m))),
            cokernel(&one_minus_m).plus(&AbelianInvariants::free(kernel_rank(&one_minus_n))),
        )
    };

    Ok(KTheoryResult { k0, k1, n_matrix: n, m_matrix: m, vertex_order: order })
}
