//! Directed graphs of cyclic groups: data model, validation, canonical
//! serialization, and the derived letter graph.
//!
//! The on-disk document is JSON:
//!
//! ```json
//! { "vertices": [ {"id": "v", "group": {"type": "Z"}} ],
//!   "edges":    [ {"id": "e", "range": "v", "source": "v",
//!                  "edge_group": {"type": "Z"}, "n": 2, "m": 1} ] }
//! ```
//!
//! `n` is the multiplier of the edge-group embedding into the range vertex
//! group, `m` the multiplier into the source vertex group. Loading validates
//! connectedness and injectivity of every embedding, and normalizes signs so
//! that `n > 0` whenever the range group is infinite (flipping the sign of
//! `m` along with it, which amounts to re-choosing the edge-group
//! generator). Vertices receiving no oriented edge are accepted here; the
//! computations whose hypotheses need the no-sources condition check it
//! themselves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclic::{CyclicGroup, Embedding};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum GroupDoc {
    Z,
    Zmod { order: u64 },
}

impl GroupDoc {
    fn to_group(self) -> Result<CyclicGroup> {
        match self {
            GroupDoc::Z => Ok(CyclicGroup::Infinite),
            GroupDoc::Zmod { order } if order >= 1 => Ok(CyclicGroup::Finite(order)),
            GroupDoc::Zmod { .. } => {
                Err(Error::validation("invalid group", "finite order must be >= 1"))
            }
        }
    }

    fn of(group: CyclicGroup) -> GroupDoc {
        match group {
            CyclicGroup::Infinite => GroupDoc::Z,
            CyclicGroup::Finite(k) => GroupDoc::Zmod { order: k },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    group: GroupDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    range: String,
    source: String,
    edge_group: GroupDoc,
    n: i64,
    m: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

/// One oriented edge with its two embedding multipliers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub range: String,
    pub source: String,
    pub edge_group: CyclicGroup,
    /// Multiplier of the embedding into the range vertex group.
    pub n: i64,
    /// Multiplier of the embedding into the source vertex group.
    pub m: i64,
}

/// Direction in which an edge is traversed inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reversed,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Reversed,
            Direction::Reversed => Direction::Forward,
        }
    }
}

/// A validated, immutable directed graph of cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    vertices: Vec<(String, CyclicGroup)>,
    edges: Vec<EdgeSpec>,
    vertex_index: BTreeMap<String, usize>,
    edge_index: BTreeMap<String, usize>,
    /// Edge indexes with range v (the edges v receives).
    incoming: BTreeMap<String, Vec<usize>>,
    /// Edge indexes with source v.
    outgoing: BTreeMap<String, Vec<usize>>,
}

impl GraphOfGroups {
    /// Parse and validate a graph document.
    pub fn load(document: &str) -> Result<GraphOfGroups> {
        let doc: GraphDoc = serde_json::from_str(document)
            .map_err(|e| Error::parse("graph document", e.to_string()))?;
        Self::from_doc(doc)
    }

    fn from_doc(doc: GraphDoc) -> Result<GraphOfGroups> {
        if doc.vertices.is_empty() {
            return Err(Error::validation("disconnected", "graph has no vertices"));
        }

        let mut vertices: Vec<(String, CyclicGroup)> = Vec::with_capacity(doc.vertices.len());
        for v in &doc.vertices {
            vertices.push((v.id.clone(), v.group.to_group()?));
        }
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        let vertex_index: BTreeMap<String, usize> =
            vertices.iter().enumerate().map(|(i, (id, _))| (id.clone(), i)).collect();
        if vertex_index.len() != vertices.len() {
            return Err(Error::validation("duplicate id", "vertex ids must be unique"));
        }

        let mut edges: Vec<EdgeSpec> = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            let edge_group = e.edge_group.to_group()?;
            let range_group = *vertex_index
                .get(&e.range)
                .map(|&i| &vertices[i].1)
                .ok_or_else(|| Error::validation("unknown vertex", format!("edge {} has unknown range {}", e.id, e.range)))?;
            let source_group = *vertex_index
                .get(&e.source)
                .map(|&i| &vertices[i].1)
                .ok_or_else(|| Error::validation("unknown vertex", format!("edge {} has unknown source {}", e.id, e.source)))?;

            let (mut n, mut m) = (e.n, e.m);
            if range_group.is_infinite() && n < 0 {
                n = -n;
                m = -m;
            }
            Embedding::new(edge_group, range_group, n)
                .map_err(|err| annotate(err, &e.id, "range"))?;
            Embedding::new(edge_group, source_group, m)
                .map_err(|err| annotate(err, &e.id, "source"))?;
            edges.push(EdgeSpec {
                id: e.id.clone(),
                range: e.range.clone(),
                source: e.source.clone(),
                edge_group,
                n,
                m,
            });
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        let edge_index: BTreeMap<String, usize> =
            edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        if edge_index.len() != edges.len() {
            return Err(Error::validation("duplicate id", "edge ids must be unique"));
        }

        let mut incoming: BTreeMap<String, Vec<usize>> =
            vertices.iter().map(|(id, _)| (id.clone(), Vec::new())).collect();
        let mut outgoing = incoming.clone();
        for (i, e) in edges.iter().enumerate() {
            incoming.get_mut(&e.range).unwrap().push(i);
            outgoing.get_mut(&e.source).unwrap().push(i);
        }

        let graph = GraphOfGroups { vertices, edges, vertex_index, edge_index, incoming, outgoing };
        graph.check_connected()?;
        Ok(graph)
    }

    fn check_connected(&self) -> Result<()> {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let start = self.vertices[0].0.as_str();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            for &i in self.incoming[v].iter().chain(self.outgoing[v].iter()) {
                for w in [self.edges[i].range.as_str(), self.edges[i].source.as_str()] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        if seen.len() != self.vertices.len() {
            let missing =
                self.vertices.iter().find(|(id, _)| !seen.contains(id.as_str())).unwrap();
            return Err(Error::validation(
                "disconnected",
                format!("vertex {} is not reachable from {start}", missing.0),
            ));
        }
        Ok(())
    }

    /// Canonical document form; `load(serialize(g))` reproduces `g` exactly.
    pub fn serialize(&self) -> String {
        let doc = GraphDoc {
            vertices: self
                .vertices
                .iter()
                .map(|(id, g)| VertexDoc { id: id.clone(), group: GroupDoc::of(*g) })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    range: e.range.clone(),
                    source: e.source.clone(),
                    edge_group: GroupDoc::of(e.edge_group),
                    n: e.n,
                    m: e.m,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|(id, _)| id.as_str())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertex_index.contains_key(id)
    }

    pub fn vertex_group(&self, id: &str) -> Result<CyclicGroup> {
        self.vertex_index
            .get(id)
            .map(|&i| self.vertices[i].1)
            .ok_or_else(|| Error::validation("unknown vertex", id.to_string()))
    }

    pub fn edges(&self) -> &[EdgeSpec] {
        &self.edges
    }

    pub fn edge(&self, id: &str) -> Result<&EdgeSpec> {
        self.edge_index
            .get(id)
            .map(|&i| &self.edges[i])
            .ok_or_else(|| Error::validation("unknown edge", id.to_string()))
    }

    /// Edges e with range v, in edge-id order.
    pub fn incoming_edges(&self, v: &str) -> impl Iterator<Item = &EdgeSpec> {
        self.incoming.get(v).into_iter().flatten().map(|&i| &self.edges[i])
    }

    /// Edges e with source v, in edge-id order.
    pub fn outgoing_edges(&self, v: &str) -> impl Iterator<Item = &EdgeSpec> {
        self.outgoing.get(v).into_iter().flatten().map(|&i| &self.edges[i])
    }

    /// Range vertex of an edge traversed in the given direction.
    pub fn range_of<'a>(&self, edge: &'a EdgeSpec, dir: Direction) -> &'a str {
        match dir {
            Direction::Forward => &edge.range,
            Direction::Reversed => &edge.source,
        }
    }

    pub fn source_of<'a>(&self, edge: &'a EdgeSpec, dir: Direction) -> &'a str {
        self.range_of(edge, dir.flip())
    }

    /// The embedding of the edge group into the range group of the traversal
    /// (the one whose transversal the letter representative lives in).
    pub fn front_embedding(&self, edge: &EdgeSpec, dir: Direction) -> Embedding {
        let (mult, vertex) = match dir {
            Direction::Forward => (edge.n, &edge.range),
            Direction::Reversed => (edge.m, &edge.source),
        };
        let group = self.vertices[self.vertex_index[vertex]].1;
        Embedding::new(edge.edge_group, group, mult).expect("validated at load")
    }

    /// The embedding into the source group of the traversal (the side a
    /// quotient is pushed through).
    pub fn back_embedding(&self, edge: &EdgeSpec, dir: Direction) -> Embedding {
        self.front_embedding(edge, dir.flip())
    }

    /// All signed edges whose traversal range is `v`: forward edges received
    /// by `v` and reversals of edges emitted by `v`. Deterministic order:
    /// forward first, each group sorted by edge id.
    pub fn signed_edges_at(&self, v: &str) -> Vec<(&EdgeSpec, Direction)> {
        let mut out: Vec<(&EdgeSpec, Direction)> =
            self.incoming_edges(v).map(|e| (e, Direction::Forward)).collect();
        out.extend(self.outgoing_edges(v).map(|e| (e, Direction::Reversed)));
        out
    }
}

fn annotate(err: Error, edge: &str, side: &str) -> Error {
    match err {
        Error::Validation { invariant, detail } => Error::Validation {
            invariant,
            detail: format!("edge {edge}, {side} side: {detail}"),
        },
        other => other,
    }
}

/// One edge of the letter graph: a transversal representative attached to an
/// oriented edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaLetter {
    pub rep: BigInt,
    pub edge: String,
}

impl std::fmt::Display for SigmaLetter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.rep, self.edge)
    }
}

/// The directed graph obtained from the orientation by replicating each edge
/// once per element of its transversal.
#[derive(Debug, Clone)]
pub struct SigmaGraph {
    letters: Vec<SigmaLetter>,
    by_range: BTreeMap<String, Vec<usize>>,
}

/// Derive the letter graph. Letters are ordered by edge id, then
/// representative value.
pub fn sigma_graph(g: &GraphOfGroups) -> SigmaGraph {
    let mut letters = Vec::new();
    let mut by_range: BTreeMap<String, Vec<usize>> =
        g.vertex_ids().map(|v| (v.to_string(), Vec::new())).collect();
    for e in g.edges() {
        let index = g.front_embedding(e, Direction::Forward).index();
        for rep in 0..index {
            by_range.get_mut(&e.range).unwrap().push(letters.len());
            letters.push(SigmaLetter { rep: BigInt::from(rep), edge: e.id.clone() });
        }
    }
    SigmaGraph { letters, by_range }
}

impl SigmaGraph {
    pub fn letters(&self) -> &[SigmaLetter] {
        &self.letters
    }

    /// Letters whose range is `v`, in deterministic order.
    pub fn letters_at(&self, v: &str) -> impl Iterator<Item = &SigmaLetter> {
        self.by_range.get(v).into_iter().flatten().map(|&i| &self.letters[i])
    }

    pub fn letter_count_at(&self, v: &str) -> usize {
        self.by_range.get(v).map_or(0, |v| v.len())
    }
}

/// A finite path in the letter graph, read range to source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaPath {
    /// Range vertex of the path (meaningful when there are no letters).
    pub base: String,
    pub letters: Vec<SigmaLetter>,
}

impl SigmaPath {
    pub fn empty(base: impl Into<String>) -> SigmaPath {
        SigmaPath { base: base.into(), letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_prefix_of(&self, other: &SigmaPath) -> bool {
        self.base == other.base
            && self.len() <= other.len()
            && self.letters[..] == other.letters[..self.len()]
    }

    /// Source vertex of the path.
    pub fn source<'g>(&self, g: &'g GraphOfGroups) -> Result<&'g str> {
        match self.letters.last() {
            None => g
                .vertex_ids()
                .find(|v| *v == self.base)
                .ok_or_else(|| Error::validation("unknown vertex", self.base.clone())),
            Some(l) => Ok(&g.edge(&l.edge)?.source),
        }
    }
}

impl std::fmt::Display for SigmaPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "@{}", self.base);
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}
