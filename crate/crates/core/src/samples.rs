//! Ready-made sample graphs, used throughout the test and bench suites and
//! handy as CLI input.

use crate::gog::GraphOfGroups;

/// Single vertex Z with one loop, alpha_e = x2 and alpha_ebar = x1. Its
/// fundamental group is the Baumslag-Solitar group BS(1,2).
pub fn bs12() -> GraphOfGroups {
    loop_nm(2, 1)
}

/// Single vertex Z with one loop and arbitrary multipliers.
pub fn loop_nm(n: i64, m: i64) -> GraphOfGroups {
    GraphOfGroups::load(&format!(
        r#"{{
        "vertices": [{{"id": "v", "group": {{"type": "Z"}}}}],
        "edges": [{{"id": "e", "range": "v", "source": "v",
                   "edge_group": {{"type": "Z"}}, "n": {n}, "m": {m}}}]
    }}"#
    ))
    .expect("sample graph is valid")
}

/// Two vertices carrying Z/2 and Z/3, joined by one edge with trivial edge
/// group. Its fundamental group is the free product Z/2 * Z/3.
pub fn z2_star_z3() -> GraphOfGroups {
    GraphOfGroups::load(
        r#"{
        "vertices": [{"id": "v", "group": {"type": "Zmod", "order": 2}},
                     {"id": "w", "group": {"type": "Zmod", "order": 3}}],
        "edges": [{"id": "e", "range": "v", "source": "w",
                   "edge_group": {"type": "Zmod", "order": 1}, "n": 1, "m": 1}]
    }"#,
    )
    .expect("sample graph is valid")
}

/// Single vertex Z with `k` loops, all multipliers 1.
pub fn rose(k: usize) -> GraphOfGroups {
    rose_with_group(k, r#"{"type": "Z"}"#)
}

/// Single vertex carrying the trivial group with `k` loops; this is an
/// ordinary directed graph in disguise.
pub fn trivial_rose(k: usize) -> GraphOfGroups {
    rose_with_group(k, r#"{"type": "Zmod", "order": 1}"#)
}

fn rose_with_group(k: usize, group: &str) -> GraphOfGroups {
    let edges: Vec<String> = (0..k)
        .map(|i| {
            format!(
                r#"{{"id": "e{i}", "range": "v", "source": "v",
                     "edge_group": {group}, "n": 1, "m": 1}}"#
            )
        })
        .collect();
    GraphOfGroups::load(&format!(
        r#"{{"vertices": [{{"id": "v", "group": {group}}}], "edges": [{}]}}"#,
        edges.join(",")
    ))
    .expect("sample graph is valid")
}

/// Z/4 and Z/8 vertices joined by an edge with Z/2 edge group, embedded by
/// x2 and x4; both transversals are non-trivial.
pub fn finite_chain() -> GraphOfGroups {
    GraphOfGroups::load(
        r#"{
        "vertices": [{"id": "v", "group": {"type": "Zmod", "order": 4}},
                     {"id": "w", "group": {"type": "Zmod", "order": 8}}],
        "edges": [{"id": "e", "range": "v", "source": "w",
                   "edge_group": {"type": "Zmod", "order": 2}, "n": 2, "m": 4}]
    }"#,
    )
    .expect("sample graph is valid")
}

/// Two trivial-group vertices on a directed 2-cycle.
pub fn trivial_two_cycle() -> GraphOfGroups {
    GraphOfGroups::load(
        r#"{
        "vertices": [{"id": "v", "group": {"type": "Zmod", "order": 1}},
                     {"id": "w", "group": {"type": "Zmod", "order": 1}}],
        "edges": [{"id": "e", "range": "v", "source": "w",
                   "edge_group": {"type": "Zmod", "order": 1}, "n": 1, "m": 1},
                  {"id": "f", "range": "w", "source": "v",
                   "edge_group": {"type": "Zmod", "order": 1}, "n": 1, "m": 1}]
    }"#,
    )
    .expect("sample graph is valid")
}

/// Two Z-vertices on a directed 2-cycle with unit multipliers.
pub fn z_two_cycle() -> GraphOfGroups {
    GraphOfGroups::load(
        r#"{
        "vertices": [{"id": "v", "group": {"type": "Z"}},
                     {"id": "w", "group": {"type": "Z"}}],
        "edges": [{"id": "e", "range": "v", "source": "w",
                   "edge_group": {"type": "Z"}, "n": 1, "m": 1},
                  {"id": "f", "range": "w", "source": "v",
                   "edge_group": {"type": "Z"}, "n": 1, "m": 1}]
    }"#,
    )
    .expect("sample graph is valid")
}
