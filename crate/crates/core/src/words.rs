//! Normal forms in the fundamental groupoid of a graph of groups, and the
//! word category of forward words.
//!
//! A raw word is an alternating sequence `g1 f1 g2 f2 ... gn fn g(n+1)` of
//! group elements and signed edges forming a composable path. The groupoid
//! relations are `ebar = e^-1` and, for each edge-group element `q`,
//! `alpha_f(q) f = f alpha_fbar(q)`. Every groupoid element has exactly one
//! representative in which each pre-edge element lies in the canonical
//! transversal of the upcoming embedding and no `fbar 0 f` cancellation is
//! left; [`normalize`] computes it with a single left-to-right pass that
//! decomposes the pending element against the next transversal, pushes the
//! quotient through the other side of the edge, and pops the previous letter
//! whenever a cancellation appears (which merges the neighbouring elements
//! and implicitly restarts the pass from the merge point). Each cancellation
//! strictly shortens the word, so the pass terminates.
//!
//! Words whose letters are all forward make up the word category; its
//! prefix order, joins and exhaustive sets are all decided through the
//! projection [`q_projection`] onto paths of the letter graph.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::cyclic::GroupElement;
use crate::error::{Error, Result};
use crate::gog::{Direction, GraphOfGroups, SigmaGraph, SigmaLetter, SigmaPath};
use crate::par;

/// One letter of a normalized word: a transversal representative followed by
/// a signed edge. The representative lives in the vertex group at the range
/// of the traversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub rep: GroupElement,
    pub edge: String,
    pub direction: Direction,
}

impl Letter {
    fn cancels(&self, edge: &str, direction: Direction) -> bool {
        self.edge == edge && self.direction == direction.flip()
    }
}

/// A Sigma-normalised element of the fundamental groupoid. Two words are
/// equal in the groupoid exactly when they are field-equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalWord {
    range: String,
    source: String,
    letters: Vec<Letter>,
    tail: GroupElement,
}

impl NormalWord {
    pub fn identity(g: &GraphOfGroups, vertex: &str) -> Result<NormalWord> {
        let group = g.vertex_group(vertex)?;
        Ok(NormalWord {
            range: vertex.to_string(),
            source: vertex.to_string(),
            letters: Vec::new(),
            tail: GroupElement::identity(group),
        })
    }

    /// The word consisting of a single vertex-group element.
    pub fn constant(g: &GraphOfGroups, vertex: &str, value: impl Into<BigInt>) -> Result<NormalWord> {
        let group = g.vertex_group(vertex)?;
        Ok(NormalWord {
            range: vertex.to_string(),
            source: vertex.to_string(),
            letters: Vec::new(),
            tail: GroupElement::new(value, group),
        })
    }

    /// Assemble a word from parts already known to be normalized (internal:
    /// used when peeling or truncating preserves normality).
    pub(crate) fn from_parts(
        range: String,
        source: String,
        letters: Vec<Letter>,
        tail: GroupElement,
    ) -> NormalWord {
        debug_assert!(letters.windows(2).all(|w| {
            !(w[1].rep.is_identity() && w[0].cancels(&w[1].edge, w[1].direction))
        }));
        NormalWord { range, source, letters, tail }
    }

    pub fn range(&self) -> &str {
        &self.range
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn tail(&self) -> &GroupElement {
        &self.tail
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty() && self.tail.is_identity()
    }

    pub fn is_directed(&self) -> bool {
        self.letters.iter().all(|l| l.direction == Direction::Forward)
    }

    /// Replace the tail with the identity (same coset, canonical member).
    pub fn with_zero_tail(&self) -> NormalWord {
        NormalWord {
            range: self.range.clone(),
            source: self.source.clone(),
            letters: self.letters.clone(),
            tail: GroupElement::identity(self.tail.group()),
        }
    }

    /// Right-multiply by a vertex-group element at the source; only the tail
    /// moves, so the result stays normalized.
    pub fn shift_tail(&self, by: &GroupElement) -> NormalWord {
        NormalWord {
            range: self.range.clone(),
            source: self.source.clone(),
            letters: self.letters.clone(),
            tail: self.tail.add(by),
        }
    }

    fn to_raw(&self) -> RawWord {
        RawWord {
            base: Some(self.range.clone()),
            pairs: self
                .letters
                .iter()
                .map(|l| (l.rep.value().clone(), SignedEdge::new(&l.edge, l.direction)))
                .collect(),
            tail: self.tail.value().clone(),
        }
    }
}

impl std::fmt::Display for NormalWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.letters {
            let marker = if l.direction == Direction::Reversed { "~" } else { "" };
            write!(f, "{} {}{} ", l.rep.value(), l.edge, marker)?;
        }
        write!(f, "{}", self.tail.value())
    }
}

/// A word of the word category: a normal word all of whose letters are
/// forward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedWord(NormalWord);

impl DirectedWord {
    pub fn new(word: NormalWord) -> Result<DirectedWord> {
        if word.is_directed() {
            Ok(DirectedWord(word))
        } else {
            Err(Error::NotComposable("word contains reversed letters".into()))
        }
    }

    pub fn identity(g: &GraphOfGroups, vertex: &str) -> Result<DirectedWord> {
        Ok(DirectedWord(NormalWord::identity(g, vertex)?))
    }

    pub fn as_word(&self) -> &NormalWord {
        &self.0
    }

    pub fn into_word(self) -> NormalWord {
        self.0
    }

    pub fn with_zero_tail(&self) -> DirectedWord {
        DirectedWord(self.0.with_zero_tail())
    }
}

impl std::ops::Deref for DirectedWord {
    type Target = NormalWord;

    fn deref(&self) -> &NormalWord {
        &self.0
    }
}

impl std::fmt::Display for DirectedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A signed edge reference inside a raw word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedEdge {
    pub edge: String,
    pub direction: Direction,
}

impl SignedEdge {
    pub fn new(edge: impl Into<String>, direction: Direction) -> SignedEdge {
        SignedEdge { edge: edge.into(), direction }
    }
}

/// An unnormalized alternating word. `base` names the range vertex and is
/// required only when there are no edges.
#[derive(Debug, Clone, Default)]
pub struct RawWord {
    pub base: Option<String>,
    pub pairs: Vec<(BigInt, SignedEdge)>,
    pub tail: BigInt,
}

impl RawWord {
    /// Parse the CLI literal `g1 e1 g2 e2 ... g(n+1)`, edges optionally
    /// suffixed `~` for a reversed traversal.
    pub fn parse(literal: &str) -> Result<RawWord> {
        let tokens: Vec<&str> = literal.split_whitespace().collect();
        if tokens.is_empty() || tokens.len() % 2 == 0 {
            return Err(Error::parse(
                "word literal",
                "expected an odd-length alternation `g1 e1 g2 e2 ... g(n+1)`",
            ));
        }
        let int = |tok: &str| {
            BigInt::from_str(tok)
                .map_err(|_| Error::parse("word literal", format!("`{tok}` is not an integer")))
        };
        let mut pairs = Vec::new();
        for chunk in tokens.chunks_exact(2) {
            let value = int(chunk[0])?;
            let (edge, direction) = match chunk[1].strip_suffix('~') {
                Some(stripped) => (stripped, Direction::Reversed),
                None => (chunk[1], Direction::Forward),
            };
            if edge.is_empty() {
                return Err(Error::parse("word literal", "empty edge id"));
            }
            pairs.push((value, SignedEdge::new(edge, direction)));
        }
        Ok(RawWord { base: None, pairs, tail: int(tokens[tokens.len() - 1])? })
    }

    pub fn with_base(mut self, base: impl Into<String>) -> RawWord {
        self.base = Some(base.into());
        self
    }
}

/// Reduce a raw word to its unique Sigma-normal form.
pub fn normalize(g: &GraphOfGroups, raw: &RawWord) -> Result<NormalWord> {
    // Resolve the edge path and check composability.
    let mut edges = Vec::with_capacity(raw.pairs.len());
    for (_, se) in &raw.pairs {
        edges.push((g.edge(&se.edge)?, se.direction));
    }
    for window in edges.windows(2) {
        let (e1, d1) = window[0];
        let (e2, d2) = window[1];
        if g.source_of(e1, d1) != g.range_of(e2, d2) {
            return Err(Error::NotComposable(format!(
                "edge {} ends at {} but edge {} starts at {}",
                e1.id,
                g.source_of(e1, d1),
                e2.id,
                g.range_of(e2, d2)
            )));
        }
    }

    let range = match edges.first() {
        Some(&(e, d)) => {
            let r = g.range_of(e, d);
            if let Some(base) = &raw.base {
                if base != r {
                    return Err(Error::NotComposable(format!(
                        "declared range {base} but the first edge has range {r}"
                    )));
                }
            }
            r.to_string()
        }
        None => raw
            .base
            .clone()
            .ok_or_else(|| Error::parse("word", "an edgeless word needs an explicit vertex"))?,
    };
    let source = match edges.last() {
        Some(&(e, d)) => g.source_of(e, d).to_string(),
        None => range.clone(),
    };

    let mut stack: Vec<Letter> = Vec::with_capacity(edges.len());
    let mut pending = GroupElement::identity(g.vertex_group(&range)?);
    for (i, &(edge, dir)) in edges.iter().enumerate() {
        pending = pending.add(&GroupElement::new(raw.pairs[i].0.clone(), pending.group()));
        let front = g.front_embedding(edge, dir);
        let back = g.back_embedding(edge, dir);
        let (rep, quot) = front.decompose(&pending);
        let carried = back.apply(&quot);
        match stack.last() {
            Some(top) if rep.is_identity() && top.cancels(&edge.id, dir) => {
                let popped = stack.pop().expect("stack top exists");
                pending = popped.rep.add(&carried);
            }
            _ => {
                stack.push(Letter { rep, edge: edge.id.clone(), direction: dir });
                pending = carried;
            }
        }
    }
    pending = pending.add(&GroupElement::new(raw.tail.clone(), pending.group()));

    debug_assert!(stack.windows(2).all(|w| {
        !(w[1].rep.is_identity() && w[0].cancels(&w[1].edge, w[1].direction))
    }));
    Ok(NormalWord { range, source, letters: stack, tail: pending })
}

/// Groupoid composition: normalize the concatenation.
pub fn multiply(g: &GraphOfGroups, a: &NormalWord, b: &NormalWord) -> Result<NormalWord> {
    if a.source() != b.range() {
        return Err(Error::NotComposable(format!(
            "left word ends at {} but right word starts at {}",
            a.source(),
            b.range()
        )));
    }
    if b.is_empty() {
        return Ok(a.shift_tail(b.tail()));
    }
    let mut raw = a.to_raw();
    let mut b_raw = b.to_raw();
    let junction = &raw.tail + &b_raw.pairs[0].0;
    raw.pairs.push((junction, b_raw.pairs[0].1.clone()));
    raw.pairs.extend(b_raw.pairs.drain(1..));
    raw.tail = b_raw.tail;
    normalize(g, &raw)
}

/// Groupoid inverse: reverse the letters, flip their directions, negate the
/// elements, and renormalize.
pub fn invert(g: &GraphOfGroups, a: &NormalWord) -> Result<NormalWord> {
    if a.is_empty() {
        return Ok(NormalWord {
            range: a.range.clone(),
            source: a.source.clone(),
            letters: Vec::new(),
            tail: a.tail.neg(),
        });
    }
    let mut pairs = Vec::with_capacity(a.len());
    let mut carried = -a.tail.value();
    for l in a.letters.iter().rev() {
        pairs.push((carried, SignedEdge::new(&l.edge, l.direction.flip())));
        carried = -l.rep.value();
    }
    let raw = RawWord { base: Some(a.source.clone()), pairs, tail: carried };
    normalize(g, &raw)
}

/// Project a word of the word category to its path in the letter graph
/// (drop the tail).
pub fn q_projection(w: &DirectedWord) -> SigmaPath {
    SigmaPath {
        base: w.range().to_string(),
        letters: w
            .letters()
            .iter()
            .map(|l| SigmaLetter { rep: l.rep.value().clone(), edge: l.edge.clone() })
            .collect(),
    }
}

/// The prefix order of the word category: `a <= b` iff `q(a)` is a prefix of
/// `q(b)`.
pub fn le(a: &DirectedWord, b: &DirectedWord) -> bool {
    q_projection(a).is_prefix_of(&q_projection(b))
}

/// Least common extension when one exists. The full set of minimal common
/// extensions is the returned word right-translated by its source group;
/// the representative with identity tail is returned.
pub fn join(a: &DirectedWord, b: &DirectedWord) -> Option<DirectedWord> {
    if le(a, b) {
        Some(b.with_zero_tail())
    } else if le(b, a) {
        Some(a.with_zero_tail())
    } else {
        None
    }
}

/// Whether the finite family `family` of words with range `v` is exhaustive:
/// writing `n` for the longest projection length in the family, every
/// length-`n` path of the letter graph with range `v` must extend some
/// member.
pub fn is_exhaustive(
    g: &GraphOfGroups,
    sigma: &SigmaGraph,
    v: &str,
    family: &[DirectedWord],
) -> Result<bool> {
    exhaustive_impl(g, sigma, v, family, true)
}

/// Sequential variant of [`is_exhaustive`]; same output.
pub fn is_exhaustive_seq(
    g: &GraphOfGroups,
    sigma: &SigmaGraph,
    v: &str,
    family: &[DirectedWord],
) -> Result<bool> {
    exhaustive_impl(g, sigma, v, family, false)
}

fn exhaustive_impl(
    g: &GraphOfGroups,
    sigma: &SigmaGraph,
    v: &str,
    family: &[DirectedWord],
    parallel: bool,
) -> Result<bool> {
    for w in family {
        if w.range() != v {
            return Err(Error::SourceMismatch(format!(
                "family word has range {} instead of {v}",
                w.range()
            )));
        }
    }
    if family.is_empty() {
        return Ok(false);
    }
    let projections: Vec<SigmaPath> = family.iter().map(q_projection).collect();
    let n = projections.iter().map(|p| p.len()).max().unwrap_or(0);
    let paths = sigma.paths(g, v, n)?;
    let covers = |alpha: &SigmaPath| projections.iter().any(|p| p.is_prefix_of(alpha));
    if parallel {
        Ok(par::all(&paths, covers))
    } else {
        Ok(paths.iter().all(covers))
    }
}

impl SigmaGraph {
    /// All length-`n` paths with range `v`, extended letter by letter at the
    /// source end; deterministic order.
    pub fn paths(&self, g: &GraphOfGroups, v: &str, n: usize) -> Result<Vec<SigmaPath>> {
        if !g.has_vertex(v) {
            return Err(Error::validation("unknown vertex", v.to_string()));
        }
        let mut acc = vec![SigmaPath::empty(v)];
        for _ in 0..n {
            let mut next = Vec::new();
            for path in &acc {
                let end = path.source(g)?.to_string();
                for letter in self.letters_at(&end) {
                    let mut longer = path.clone();
                    longer.letters.push(letter.clone());
                    next.push(longer);
                }
            }
            acc = next;
        }
        Ok(acc)
    }
}
