//! Seeded random generators and an independent reduction strategy, shared by
//! the unit, property and acceptance suites.

#![doc(hidden)]

use num_bigint::BigInt;
use rand::Rng;

use crate::boundary::LassoPath;
use crate::cyclic::GroupElement;
use crate::error::Result;
use crate::gog::{Direction, GraphOfGroups, SigmaGraph, SigmaLetter};
use crate::words::{normalize, DirectedWord, Letter, NormalWord, RawWord, SignedEdge};

/// A random composable raw word of at most `max_len` edges, starting
/// anywhere.
pub fn raw_word<R: Rng>(g: &GraphOfGroups, rng: &mut R, max_len: usize) -> RawWord {
    let vertices: Vec<&str> = g.vertex_ids().collect();
    let start = vertices[rng.random_range(0..vertices.len())];
    raw_word_from(g, rng, start, max_len)
}

/// A random composable raw word with range `start`.
pub fn raw_word_from<R: Rng>(
    g: &GraphOfGroups,
    rng: &mut R,
    start: &str,
    max_len: usize,
) -> RawWord {
    let len = rng.random_range(0..=max_len);
    let mut pairs = Vec::new();
    let mut at = start.to_string();
    for _ in 0..len {
        let options = g.signed_edges_at(&at);
        if options.is_empty() {
            break;
        }
        let (edge, dir) = options[rng.random_range(0..options.len())];
        pairs.push((BigInt::from(rng.random_range(-8i64..=8)), SignedEdge::new(&edge.id, dir)));
        at = g.source_of(edge, dir).to_string();
    }
    RawWord { base: Some(start.to_string()), pairs, tail: BigInt::from(rng.random_range(-8i64..=8)) }
}

/// A random normalized word.
pub fn raw_normal_word<R: Rng>(g: &GraphOfGroups, rng: &mut R, max_len: usize) -> NormalWord {
    normalize(g, &raw_word(g, rng, max_len)).expect("generated word is composable")
}

/// A random word of the word category (forward letters only) with range
/// `start`. May come out shorter than `max_len` at a dead end.
pub fn directed_word_from<R: Rng>(
    g: &GraphOfGroups,
    rng: &mut R,
    start: &str,
    max_len: usize,
) -> DirectedWord {
    let len = rng.random_range(0..=max_len);
    let mut pairs = Vec::new();
    let mut at = start.to_string();
    for _ in 0..len {
        let options: Vec<_> = g.incoming_edges(&at).collect();
        if options.is_empty() {
            break;
        }
        let edge = options[rng.random_range(0..options.len())];
        pairs.push((
            BigInt::from(rng.random_range(-8i64..=8)),
            SignedEdge::new(&edge.id, Direction::Forward),
        ));
        at = edge.source.clone();
    }
    let raw = RawWord {
        base: Some(start.to_string()),
        pairs,
        tail: BigInt::from(rng.random_range(-8i64..=8)),
    };
    DirectedWord::new(normalize(g, &raw).expect("generated word is composable"))
        .expect("forward raw words normalize to directed words")
}

/// A random canonical lasso through `base`; requires every vertex reachable
/// forward from `base` to keep receiving edges (true for the sample graphs
/// with loops).
pub fn lasso<R: Rng>(
    g: &GraphOfGroups,
    sigma: &SigmaGraph,
    rng: &mut R,
    base: &str,
    max_prefix: usize,
    max_cycle: usize,
) -> LassoPath {
    let step = |rng: &mut R, at: &str| -> SigmaLetter {
        let options: Vec<&SigmaLetter> = sigma.letters_at(at).collect();
        assert!(!options.is_empty(), "vertex {at} has no letters");
        options[rng.random_range(0..options.len())].clone()
    };
    'outer: loop {
        let mut at = base.to_string();
        let mut prefix = Vec::new();
        for _ in 0..rng.random_range(0..=max_prefix) {
            let l = step(rng, &at);
            at = g.edge(&l.edge).unwrap().source.clone();
            prefix.push(l);
        }
        let cycle_base = at.clone();
        let mut cycle = Vec::new();
        for _ in 0..max_cycle.max(1) {
            let l = step(rng, &at);
            at = g.edge(&l.edge).unwrap().source.clone();
            cycle.push(l);
            if at == cycle_base && rng.random_bool(0.6) {
                break;
            }
        }
        if at != cycle_base {
            continue 'outer;
        }
        return LassoPath::new(g, prefix, cycle).expect("generated lasso is well-formed");
    }
}

/// Independent normalization strategy for confluence testing: repeatedly
/// cancel the rightmost cancellable reversal pair, then run one
/// transversal-decomposition pass. Shares no code path with
/// [`normalize`]'s interleaved leftmost strategy.
pub fn normalize_rightmost(g: &GraphOfGroups, raw: &RawWord) -> Result<NormalWord> {
    let mut elems: Vec<BigInt> = raw.pairs.iter().map(|(v, _)| v.clone()).collect();
    elems.push(raw.tail.clone());
    let mut edges: Vec<SignedEdge> = raw.pairs.iter().map(|(_, e)| e.clone()).collect();

    // Phase 1: rightmost-first cancellation of f-bar g f patterns whose
    // middle element lies in the forward image.
    loop {
        let mut target = None;
        for i in (0..edges.len().saturating_sub(1)).rev() {
            let first = g.edge(&edges[i].edge)?;
            if edges[i + 1].edge != edges[i].edge
                || edges[i + 1].direction != edges[i].direction.flip()
            {
                continue;
            }
            let front = g.front_embedding(first, edges[i + 1].direction);
            let middle = GroupElement::new(elems[i + 1].clone(), front.codomain());
            if front.contains(&middle) {
                target = Some(i);
                break;
            }
        }
        let Some(i) = target else { break };
        let spec = g.edge(&edges[i + 1].edge)?;
        let dir = edges[i + 1].direction;
        let front = g.front_embedding(spec, dir);
        let back = g.back_embedding(spec, dir);
        let (_, quot) = front.decompose(&GroupElement::new(elems[i + 1].clone(), front.codomain()));
        let merged = &elems[i] + back.apply(&quot).value() + &elems[i + 2];
        elems.splice(i..=i + 2, [merged]);
        edges.drain(i..=i + 1);
    }

    // Phase 2: one left-to-right transversal pass. No cancellable pair can
    // reappear: the carry pushed through an edge lies in the image tested at
    // the next reversal pair, so membership there is unchanged.
    let range = match edges.first() {
        Some(se) => g.range_of(g.edge(&se.edge)?, se.direction).to_string(),
        None => raw.base.clone().expect("edgeless raw words carry a base"),
    };
    let source = match edges.last() {
        Some(se) => g.source_of(g.edge(&se.edge)?, se.direction).to_string(),
        None => range.clone(),
    };
    let mut letters = Vec::with_capacity(edges.len());
    let mut pending = GroupElement::identity(g.vertex_group(&range)?);
    for (i, se) in edges.iter().enumerate() {
        let spec = g.edge(&se.edge)?;
        pending = pending.add(&GroupElement::new(elems[i].clone(), pending.group()));
        let front = g.front_embedding(spec, se.direction);
        let back = g.back_embedding(spec, se.direction);
        let (rep, quot) = front.decompose(&pending);
        if let Some(prev) = letters.last() {
            let prev: &Letter = prev;
            assert!(
                !(rep.is_identity()
                    && prev.edge == se.edge
                    && prev.direction == se.direction.flip()),
                "a cancellation survived phase 1"
            );
        }
        letters.push(Letter { rep, edge: se.edge.clone(), direction: se.direction });
        pending = back.apply(&quot);
    }
    pending = pending.add(&GroupElement::new(elems[edges.len()].clone(), pending.group()));
    Ok(NormalWord::from_parts(range, source, letters, pending))
}
