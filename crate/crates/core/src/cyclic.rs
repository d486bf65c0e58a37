//! Arithmetic for cyclic groups and injective multiplication homomorphisms
//! between them.
//!
//! Every group here is cyclic, written additively with a fixed generator:
//! either the infinite cyclic group or a finite one of order `k >= 1`
//! (`k == 1` is the trivial group). A homomorphism between two cyclic groups
//! is recorded by the integer multiplier it applies to the chosen generators.
//! The module provides the coset decomposition of a codomain element against
//! the canonical transversal `{0, 1, ..., d-1}` of the image, which is the
//! kernel every normal-form computation in this crate rests on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A cyclic group: infinite, or finite of a given order (`1` is trivial).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CyclicGroup {
    Infinite,
    Finite(u64),
}

impl CyclicGroup {
    pub fn is_infinite(&self) -> bool {
        matches!(self, CyclicGroup::Infinite)
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, CyclicGroup::Finite(1))
    }

    /// Canonical representative of `value`: reduction mod the order for
    /// finite groups, the identity map on the infinite one.
    pub fn reduce(&self, value: BigInt) -> BigInt {
        match self {
            CyclicGroup::Infinite => value,
            CyclicGroup::Finite(k) => value.mod_floor(&BigInt::from(*k)),
        }
    }
}

impl std::fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CyclicGroup::Infinite => write!(f, "Z"),
            CyclicGroup::Finite(k) => write!(f, "Z/{k}"),
        }
    }
}

/// An element of a cyclic group, stored as the canonical coefficient of the
/// generator (`0 <= value < k` for finite groups).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    value: BigInt,
    group: CyclicGroup,
}

impl GroupElement {
    pub fn new(value: impl Into<BigInt>, group: CyclicGroup) -> Self {
        GroupElement { value: group.reduce(value.into()), group }
    }

    pub fn identity(group: CyclicGroup) -> Self {
        GroupElement { value: BigInt::zero(), group }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn is_identity(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.group, other.group);
        GroupElement::new(&self.value + &other.value, self.group)
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement::new(-&self.value, self.group)
    }
}

/// `reduce(value, group)`: the canonical representative of `value`.
pub fn reduce(value: impl Into<BigInt>, group: CyclicGroup) -> GroupElement {
    GroupElement::new(value, group)
}

/// An injective homomorphism between cyclic groups, `generator -> multiplier
/// * generator`.
///
/// Validity:
/// * infinite codomain: the domain must be infinite and the multiplier
///   nonzero (a finite group admits no finite-index embedding into Z);
/// * finite codomain of order `j`: a domain of order `k >= 2` must satisfy
///   `k | j` and `j / gcd(multiplier, j) = k`; a trivial domain embeds as the
///   zero map for any declared multiplier, with index `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Embedding {
    domain: CyclicGroup,
    codomain: CyclicGroup,
    multiplier: i64,
}

impl Embedding {
    pub fn new(domain: CyclicGroup, codomain: CyclicGroup, multiplier: i64) -> Result<Self> {
        if multiplier == 0 {
            return Err(Error::validation("non-injective embedding", "multiplier is 0"));
        }
        match (domain, codomain) {
            (CyclicGroup::Infinite, CyclicGroup::Infinite) => {}
            (CyclicGroup::Finite(_), CyclicGroup::Infinite) => {
                return Err(Error::validation(
                    "non-injective embedding",
                    "a finite group has no finite-index embedding into Z",
                ));
            }
            (CyclicGroup::Infinite, CyclicGroup::Finite(j)) => {
                return Err(Error::validation(
                    "non-injective embedding",
                    format!("Z does not embed into Z/{j}"),
                ));
            }
            (CyclicGroup::Finite(1), CyclicGroup::Finite(_)) => {}
            (CyclicGroup::Finite(k), CyclicGroup::Finite(j)) => {
                let g = multiplier.unsigned_abs().gcd(&j);
                if j % k != 0 || j / g != k {
                    return Err(Error::validation(
                        "non-injective embedding",
                        format!("x{multiplier} does not embed Z/{k} into Z/{j}"),
                    ));
                }
            }
        }
        Ok(Embedding { domain, codomain, multiplier })
    }

    pub fn domain(&self) -> CyclicGroup {
        self.domain
    }

    pub fn codomain(&self) -> CyclicGroup {
        self.codomain
    }

    pub fn multiplier(&self) -> i64 {
        self.multiplier
    }

    /// Apply the homomorphism to a domain element.
    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        debug_assert_eq!(g.group(), self.domain);
        GroupElement::new(g.value() * self.multiplier, self.codomain)
    }

    /// The index of the image in the codomain (the transversal size).
    pub fn index(&self) -> u64 {
        match (self.domain, self.codomain) {
            (_, CyclicGroup::Infinite) => self.multiplier.unsigned_abs(),
            (CyclicGroup::Finite(1), CyclicGroup::Finite(j)) => j,
            (_, CyclicGroup::Finite(j)) => self.multiplier.unsigned_abs().gcd(&j),
        }
    }

    /// Split a codomain element `g` as `rep + multiplier * quot` with `rep`
    /// the least non-negative residue in the canonical transversal
    /// `{0, ..., index - 1}` and `quot` an element of the domain. The
    /// decomposition is unique given that transversal.
    pub fn decompose(&self, g: &GroupElement) -> (GroupElement, GroupElement) {
        debug_assert_eq!(g.group(), self.codomain);
        let d = BigInt::from(self.index());
        let rep = g.value().mod_floor(&d);
        let quot = match (self.domain, self.codomain) {
            (_, CyclicGroup::Infinite) => (g.value() - &rep) / BigInt::from(self.multiplier),
            (CyclicGroup::Finite(1), _) => BigInt::zero(),
            (CyclicGroup::Infinite, CyclicGroup::Finite(_)) => {
                unreachable!("rejected at construction")
            }
            (CyclicGroup::Finite(k), CyclicGroup::Finite(j)) => {
                // Solve multiplier * x = g - rep  (mod j); after dividing out
                // d = gcd(multiplier, j) the reduced multiplier is a unit mod
                // j/d = k.
                let j = BigInt::from(j);
                let t = BigInt::from(self.multiplier).mod_floor(&j);
                let unit = (&t / &d).mod_floor(&BigInt::from(k));
                let inv = modular_inverse(&unit, &BigInt::from(k));
                ((g.value() - &rep) / &d * inv).mod_floor(&BigInt::from(k))
            }
        };
        (GroupElement { value: rep, group: self.codomain }, GroupElement::new(quot, self.domain))
    }

    /// Whether `g` lies in the image of the embedding.
    pub fn contains(&self, g: &GroupElement) -> bool {
        self.decompose(g).0.is_identity()
    }
}

/// The size of the canonical transversal of `emb`.
pub fn transversal_size(emb: &Embedding) -> u64 {
    emb.index()
}

fn modular_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd == BigInt::from(1));
    e.x.mod_floor(m)
}
