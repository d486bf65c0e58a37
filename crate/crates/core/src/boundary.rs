//! Eventually periodic boundary points of the letter graph and the action of
//! groupoid elements on them.
//!
//! A lasso is an infinite path stored as a finite prefix plus a primitive
//! repeating cycle; these are the computable dense family of boundary points,
//! and germ computations only ever need them. Acting by a groupoid element
//! first peels its reversed letters against the head of the path (the element
//! must have the shape `lambda mu^-1` with `q(mu)` a prefix of the path, or
//! it does not act within the forward boundary at all), then streams the
//! normal form of the concatenation letter by letter, pushing an exact
//! integer carry through each edge. The carry state either revisits a
//! configuration, making the output an exact lasso, or the prefix of output
//! letters produced so far is returned; either way every emitted letter is
//! final, since letter `i` of the output depends only on finitely many input
//! letters.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::cyclic::GroupElement;
use crate::error::{Error, Result};
use crate::gog::{Direction, GraphOfGroups, SigmaLetter, SigmaPath};
use crate::words::{DirectedWord, Letter, NormalWord};

/// Number of output letters examined for a repeating carry state before
/// [`act`] gives up and returns a prefix.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// An eventually periodic infinite path, in canonical form: the cycle is
/// primitive and no tail of the prefix can be absorbed into a rotation of
/// the cycle. Two lassos are equal as infinite paths iff they are
/// field-equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoPath {
    base: String,
    prefix: Vec<SigmaLetter>,
    cycle: Vec<SigmaLetter>,
}

impl LassoPath {
    pub fn new(
        g: &GraphOfGroups,
        prefix: Vec<SigmaLetter>,
        cycle: Vec<SigmaLetter>,
    ) -> Result<LassoPath> {
        if cycle.is_empty() {
            return Err(Error::parse("lasso", "the repeating cycle must be non-empty"));
        }
        let all: Vec<&SigmaLetter> = prefix.iter().chain(cycle.iter()).collect();
        for l in &all {
            let edge = g.edge(&l.edge)?;
            let index = g.front_embedding(edge, Direction::Forward).index();
            if l.rep.is_negative() || l.rep >= BigInt::from(index) {
                return Err(Error::parse(
                    "lasso",
                    format!("representative {} is outside the transversal of {}", l.rep, l.edge),
                ));
            }
        }
        for w in all.windows(2) {
            let e1 = g.edge(&w[0].edge)?;
            let e2 = g.edge(&w[1].edge)?;
            if e1.source != e2.range {
                return Err(Error::NotComposable(format!(
                    "letter {} ends at {} but letter {} starts at {}",
                    w[0], e1.source, w[1], e2.range
                )));
            }
        }
        let first_cycle = g.edge(&cycle[0].edge)?;
        let last_cycle = g.edge(&cycle[cycle.len() - 1].edge)?;
        if last_cycle.source != first_cycle.range {
            return Err(Error::NotComposable(format!(
                "cycle does not close: {} ends at {} but the cycle starts at {}",
                cycle[cycle.len() - 1],
                last_cycle.source,
                first_cycle.range
            )));
        }

        let (mut prefix, mut cycle) = (prefix, cycle);
        // Primitive cycle: shrink to the smallest period.
        for d in 1..cycle.len() {
            if cycle.len() % d == 0 && (0..cycle.len()).all(|i| cycle[i] == cycle[i % d]) {
                cycle.truncate(d);
                break;
            }
        }
        // Minimal prefix: absorb any prefix tail that matches the cycle end.
        while let Some(last) = prefix.last() {
            if *last == cycle[cycle.len() - 1] {
                prefix.pop();
                cycle.rotate_right(1);
            } else {
                break;
            }
        }

        let first = prefix.first().unwrap_or(&cycle[0]);
        let base = g.edge(&first.edge)?.range.clone();
        Ok(LassoPath { base, prefix, cycle })
    }

    /// Parse the CLI literal `prefix|cycle` with letters `h:e` joined by
    /// dots; the prefix part may be empty, and a literal without `|` is a
    /// pure cycle.
    pub fn parse(g: &GraphOfGroups, literal: &str) -> Result<LassoPath> {
        let (prefix_part, cycle_part) = match literal.split_once('|') {
            Some((p, c)) => (p, c),
            None => ("", literal),
        };
        let parse_letters = |part: &str| -> Result<Vec<SigmaLetter>> {
            if part.trim().is_empty() {
                return Ok(Vec::new());
            }
            part.split('.')
                .map(|tok| {
                    let (rep, edge) = tok.trim().split_once(':').ok_or_else(|| {
                        Error::parse("lasso", format!("letter `{tok}` is not of the form h:e"))
                    })?;
                    let rep = rep.parse::<BigInt>().map_err(|_| {
                        Error::parse("lasso", format!("`{rep}` is not an integer"))
                    })?;
                    Ok(SigmaLetter { rep, edge: edge.to_string() })
                })
                .collect()
        };
        LassoPath::new(g, parse_letters(prefix_part)?, parse_letters(cycle_part)?)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn prefix(&self) -> &[SigmaLetter] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[SigmaLetter] {
        &self.cycle
    }

    /// Letter `i` of the unrolled infinite path.
    pub fn letter_at(&self, i: usize) -> &SigmaLetter {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Drop the first `k` letters of the unrolled path.
    pub fn drop_letters(&self, g: &GraphOfGroups, k: usize) -> Result<LassoPath> {
        if k <= self.prefix.len() {
            LassoPath::new(g, self.prefix[k..].to_vec(), self.cycle.clone())
        } else {
            let shift = (k - self.prefix.len()) % self.cycle.len();
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(shift);
            LassoPath::new(g, Vec::new(), cycle)
        }
    }

    /// Whether the finite path is a prefix of this infinite one.
    pub fn starts_with(&self, path: &SigmaPath) -> bool {
        if path.letters.is_empty() {
            return path.base == self.base;
        }
        path.letters.iter().enumerate().all(|(i, l)| self.letter_at(i) == l)
    }
}

impl std::fmt::Display for LassoPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |letters: &[SigmaLetter]| {
            letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".")
        };
        write!(f, "{}|{}", join(&self.prefix), join(&self.cycle))
    }
}

/// The first `k` letters of the unrolled path.
pub fn prefix_of(alpha: &LassoPath, k: usize) -> SigmaPath {
    SigmaPath {
        base: alpha.base().to_string(),
        letters: (0..k).map(|i| alpha.letter_at(i).clone()).collect(),
    }
}

/// Decide whether `gamma . alpha` stays within the forward boundary, and if
/// so return the factorization `gamma = lambda . mu^-1` with `q(mu)` a
/// prefix of `alpha`.
///
/// The reversed letters of `gamma` are peeled one at a time against the head
/// of `alpha`: the sourcemost letter of `gamma` must be the reversal of the
/// next path letter, and the group element trapped between them must lie in
/// the image of the forward embedding for the pair to cancel. A directed
/// `gamma` returns `(gamma, identity)`.
pub fn decompose_action(
    g: &GraphOfGroups,
    gamma: &NormalWord,
    alpha: &LassoPath,
) -> Result<Option<(DirectedWord, DirectedWord)>> {
    if gamma.source() != alpha.base() {
        return Err(Error::SourceMismatch(format!(
            "word ends at {} but the path starts at {}",
            gamma.source(),
            alpha.base()
        )));
    }
    let mut current = gamma.clone();
    let mut consumed: Vec<Letter> = Vec::new();
    while !current.is_directed() {
        let last = current.letters().last().expect("non-directed word has letters").clone();
        if last.direction != Direction::Reversed {
            // A reversed letter is trapped behind a forward one; nothing in
            // the forward path can ever cancel it.
            return Ok(None);
        }
        let next = alpha.letter_at(consumed.len()).clone();
        if next.edge != last.edge {
            return Ok(None);
        }
        let edge = g.edge(&next.edge)?;
        let front = g.front_embedding(edge, Direction::Forward);
        let back = g.back_embedding(edge, Direction::Forward);
        let between = current.tail().add(&GroupElement::new(next.rep.clone(), current.tail().group()));
        let (rep, quot) = front.decompose(&between);
        if !rep.is_identity() {
            return Ok(None);
        }
        let letters = current.letters()[..current.len() - 1].to_vec();
        let new_source = g.range_of(edge, Direction::Reversed).to_string();
        let new_tail = last.rep.add(&back.apply(&quot));
        current = NormalWord::from_parts(current.range().to_string(), new_source, letters, new_tail);
        consumed.push(Letter {
            rep: GroupElement::new(next.rep, g.vertex_group(&edge.range)?),
            edge: next.edge,
            direction: Direction::Forward,
        });
    }

    let mu_source = match consumed.last() {
        Some(l) => g.edge(&l.edge)?.source.clone(),
        None => alpha.base().to_string(),
    };
    let mu = NormalWord::from_parts(
        alpha.base().to_string(),
        mu_source.clone(),
        consumed,
        GroupElement::identity(g.vertex_group(&mu_source)?),
    );
    Ok(Some((DirectedWord::new(current)?, DirectedWord::new(mu)?)))
}

/// Result of acting on a lasso: either an exact eventually periodic path, or
/// the first `max_steps` output letters when no carry state repeated within
/// the bound (the letters themselves are exact).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActResult {
    Lasso(LassoPath),
    Prefix(SigmaPath),
}

impl ActResult {
    pub fn as_lasso(&self) -> Option<&LassoPath> {
        match self {
            ActResult::Lasso(l) => Some(l),
            ActResult::Prefix(_) => None,
        }
    }

    /// The first `k` output letters, available from either variant (for a
    /// prefix result, `k` must not exceed the computed bound).
    pub fn prefix(&self, k: usize) -> SigmaPath {
        match self {
            ActResult::Lasso(l) => prefix_of(l, k),
            ActResult::Prefix(p) => {
                assert!(k <= p.len(), "only {} letters were computed", p.len());
                SigmaPath { base: p.base.clone(), letters: p.letters[..k].to_vec() }
            }
        }
    }
}

/// Act by a groupoid element on a boundary lasso, streaming the normal form
/// of the concatenation.
pub fn act(
    g: &GraphOfGroups,
    gamma: &NormalWord,
    alpha: &LassoPath,
    max_steps: usize,
) -> Result<ActResult> {
    let Some((lambda, mu)) = decompose_action(g, gamma, alpha)? else {
        return Err(Error::NotInDomain(format!(
            "{gamma} does not map {alpha} into the forward boundary"
        )));
    };
    let rest = alpha.drop_letters(g, mu.len())?;

    let mut out: Vec<SigmaLetter> = lambda
        .letters()
        .iter()
        .map(|l| SigmaLetter { rep: l.rep.value().clone(), edge: l.edge.clone() })
        .collect();
    let base = lambda.range().to_string();
    let mut pending = lambda.tail().clone();
    // Carry states seen inside the cycle region: (carry value, position in
    // the input cycle) -> output length at that moment.
    let mut seen: HashMap<(BigInt, usize), usize> = HashMap::new();
    let mut consumed = 0usize;

    while out.len() < max_steps {
        let in_cycle = consumed >= rest.prefix().len();
        if in_cycle {
            let cycle_idx = (consumed - rest.prefix().len()) % rest.cycle().len();
            let key = (pending.value().clone(), cycle_idx);
            if let Some(&start) = seen.get(&key) {
                let cycle = out.split_off(start);
                return Ok(ActResult::Lasso(LassoPath::new(g, out, cycle)?));
            }
            seen.insert(key, out.len());
        }
        let letter = rest.letter_at(consumed);
        let edge = g.edge(&letter.edge)?;
        let front = g.front_embedding(edge, Direction::Forward);
        let back = g.back_embedding(edge, Direction::Forward);
        let incoming = pending.add(&GroupElement::new(letter.rep.clone(), pending.group()));
        let (rep, quot) = front.decompose(&incoming);
        out.push(SigmaLetter { rep: rep.value().clone(), edge: letter.edge.clone() });
        pending = back.apply(&quot);
        consumed += 1;
    }
    out.truncate(max_steps);
    Ok(ActResult::Prefix(SigmaPath { base, letters: out }))
}
