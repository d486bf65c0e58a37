//! Depth-bounded expansion of the directed Bass-Serre tree and recovery of
//! the quotient graph.
//!
//! Vertices of the tree based at `x` are cosets `gamma G_w`, represented by
//! the letters of a normal word with the tail dropped. The neighbours of a
//! coset ending at vertex `v` are obtained by appending one letter `h f` for
//! every signed edge `f` with traversal range `v` and every representative
//! `h` of the matching transversal; exactly one of them cancels back to the
//! parent. A tree edge is in the orientation from the vertex appended with a
//! forward letter towards the other endpoint, which lifts the orientation of
//! the base graph.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gog::{Direction, GraphOfGroups};
use crate::par;
use crate::words::{normalize, NormalWord, RawWord, SignedEdge};

/// A coset `gamma G_w`: a normal word with its tail dropped. Field equality
/// is coset equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetWord(NormalWord);

impl CosetWord {
    fn new(word: &NormalWord) -> CosetWord {
        CosetWord(word.with_zero_tail())
    }

    pub fn word(&self) -> &NormalWord {
        &self.0
    }

    /// The base-graph vertex this coset lies over.
    pub fn terminal_vertex(&self) -> &str {
        self.0.source()
    }

    /// Stable rendering, usable as a map key: letters as `h:e` segments
    /// (with `~` marking reversals) or `@v` for a base coset.
    pub fn key(&self) -> String {
        if self.0.is_empty() {
            return format!("@{}", self.0.range());
        }
        self.0
            .letters()
            .iter()
            .map(|l| {
                let marker = if l.direction == Direction::Reversed { "~" } else { "" };
                format!("{}:{}{}", l.rep.value(), l.edge, marker)
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl std::fmt::Display for CosetWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.key())
    }
}

#[derive(Debug, Clone)]
pub struct TreeVertex {
    pub coset: CosetWord,
    /// Base-graph vertex it lifts.
    pub lift_of: String,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    /// Index of the vertex discovered through this edge.
    pub child: usize,
    pub parent: usize,
    /// Base-graph edge it lifts.
    pub lift_of: String,
    /// True when the orientation points from the child to the parent (the
    /// child was appended with a forward letter).
    pub oriented_child_to_parent: bool,
}

/// A ball of the directed Bass-Serre tree: all cosets within a given
/// distance of the root, in deterministic breadth-first order.
#[derive(Debug, Clone)]
pub struct TreeBall {
    pub base_vertex: String,
    pub depth: usize,
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<TreeEdge>,
}

impl TreeBall {
    pub fn vertex_count_at(&self, distance: usize) -> usize {
        self.vertices.iter().filter(|v| v.distance == distance).count()
    }

    /// Undirected degree of vertex `i` inside the ball.
    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.child == i || e.parent == i).count()
    }

    /// Number of tree edges oriented into vertex `i`.
    pub fn oriented_in_degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| {
                (e.oriented_child_to_parent && e.parent == i)
                    || (!e.oriented_child_to_parent && e.child == i)
            })
            .count()
    }

    pub fn is_interior(&self, i: usize) -> bool {
        self.vertices[i].distance < self.depth
    }
}

/// Expand the tree ball of radius `depth` around the base coset at `x`.
pub fn expand(g: &GraphOfGroups, x: &str, depth: usize) -> Result<TreeBall> {
    expand_impl(g, x, depth, true)
}

/// Sequential variant of [`expand`]; identical output.
pub fn expand_seq(g: &GraphOfGroups, x: &str, depth: usize) -> Result<TreeBall> {
    expand_impl(g, x, depth, false)
}

fn expand_impl(g: &GraphOfGroups, x: &str, depth: usize, parallel: bool) -> Result<TreeBall> {
    let root = CosetWord::new(&NormalWord::identity(g, x)?);
    let mut vertices = vec![TreeVertex { coset: root.clone(), lift_of: x.to_string(), distance: 0 }];
    let mut edges: Vec<TreeEdge> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    index.insert(root.key(), 0);

    let mut frontier: Vec<usize> = vec![0];
    for dist in 1..=depth {
        let expand_one = |&vi: &usize| -> Result<Vec<(CosetWord, String, bool)>> {
            let coset = &vertices[vi].coset;
            let at = coset.terminal_vertex();
            let mut out = Vec::new();
            for (edge, dir) in g.signed_edges_at(at) {
                let reps = g.front_embedding(edge, dir).index();
                for rep in 0..reps {
                    let mut raw = RawWord {
                        base: Some(coset.word().range().to_string()),
                        pairs: coset
                            .word()
                            .letters()
                            .iter()
                            .map(|l| {
                                (l.rep.value().clone(), SignedEdge::new(&l.edge, l.direction))
                            })
                            .collect(),
                        tail: BigInt::from(0),
                    };
                    raw.pairs.push((BigInt::from(rep), SignedEdge::new(&edge.id, dir)));
                    let neighbour = CosetWord::new(&normalize(g, &raw)?);
                    out.push((neighbour, edge.id.clone(), dir == Direction::Forward));
                }
            }
            Ok(out)
        };

        let batches: Vec<Result<Vec<_>>> = if parallel {
            par::map_vec(&frontier, expand_one)
        } else {
            frontier.iter().map(expand_one).collect()
        };

        let mut next = Vec::new();
        for (&vi, batch) in frontier.iter().zip(batches) {
            for (coset, lift_of, forward) in batch? {
                if index.contains_key(&coset.key()) {
                    continue;
                }
                let ni = vertices.len();
                index.insert(coset.key(), ni);
                vertices.push(TreeVertex {
                    lift_of: coset.terminal_vertex().to_string(),
                    coset,
                    distance: dist,
                });
                edges.push(TreeEdge {
                    child: ni,
                    parent: vi,
                    lift_of,
                    oriented_child_to_parent: forward,
                });
                next.push(ni);
            }
        }
        frontier = next;
    }

    Ok(TreeBall { base_vertex: x.to_string(), depth, vertices, edges })
}

/// One collapsed edge of the quotient, with the lift multiplicities observed
/// at interior vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientEdge {
    pub id: String,
    pub range: String,
    pub source: String,
    /// Lifts oriented into an interior lift of the range vertex.
    pub in_multiplicity: usize,
    /// Lifts oriented out of an interior lift of the source vertex.
    pub reverse_multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<QuotientEdge>,
}

/// Collapse a ball back onto the base graph, recording per-edge lift
/// multiplicities. Only interior vertices are counted, so the truncated
/// stars at the rim do not distort the result.
pub fn quotient(ball: &TreeBall, g: &GraphOfGroups) -> Result<QuotientGraph> {
    if ball.depth < 1 {
        return Err(Error::BallTooShallow);
    }
    let vertices: Vec<String> = g.vertex_ids().map(str::to_string).collect();
    let mut edges = Vec::new();
    for spec in g.edges() {
        let in_mult = observed_multiplicity(ball, &spec.id, &spec.range, true)?;
        let rev_mult = observed_multiplicity(ball, &spec.id, &spec.source, false)?;
        edges.push(QuotientEdge {
            id: spec.id.clone(),
            range: spec.range.clone(),
            source: spec.source.clone(),
            in_multiplicity: in_mult,
            reverse_multiplicity: rev_mult,
        });
    }
    Ok(QuotientGraph { vertices, edges })
}

fn observed_multiplicity(
    ball: &TreeBall,
    edge_id: &str,
    over: &str,
    inward: bool,
) -> Result<usize> {
    let mut counts: Vec<usize> = Vec::new();
    for (i, v) in ball.vertices.iter().enumerate() {
        if v.lift_of != over || !ball.is_interior(i) {
            continue;
        }
        let count = ball
            .edges
            .iter()
            .filter(|e| e.lift_of == edge_id)
            .filter(|e| {
                let into_i = (e.oriented_child_to_parent && e.parent == i)
                    || (!e.oriented_child_to_parent && e.child == i);
                let out_of_i = (e.oriented_child_to_parent && e.child == i)
                    || (!e.oriented_child_to_parent && e.parent == i);
                if inward {
                    into_i
                } else {
                    out_of_i
                }
            })
            .count();
        counts.push(count);
    }
    let Some(&first) = counts.first() else {
        return Err(Error::BallTooShallow);
    };
    if counts.iter().any(|&c| c != first) {
        return Err(Error::validation(
            "quotient",
            format!("interior lifts of {over} disagree on the multiplicity of {edge_id}"),
        ));
    }
    Ok(first)
}
