//! The left inverse hull of the word category: partial bijections
//! `tau^lambda sigma^mu` in canonical form, their composition, idempotents,
//! and germ equality over boundary points.
//!
//! A non-zero element is a pair of directed words with a common source. Two
//! pairs describe the same partial bijection exactly when they differ by a
//! common right translation by a source-group element, so zeroing the tail
//! of `mu` picks one canonical member per class and equality becomes field
//! equality.

use crate::boundary::LassoPath;
use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::words::{invert, le, multiply, q_projection, DirectedWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HullElement {
    Zero,
    /// `tau^lambda sigma^mu` with `tail(mu) = 0`.
    Map { lambda: DirectedWord, mu: DirectedWord },
}

impl HullElement {
    pub fn is_zero(&self) -> bool {
        matches!(self, HullElement::Zero)
    }

    pub fn parts(&self) -> Option<(&DirectedWord, &DirectedWord)> {
        match self {
            HullElement::Zero => None,
            HullElement::Map { lambda, mu } => Some((lambda, mu)),
        }
    }
}

impl std::fmt::Display for HullElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HullElement::Zero => write!(f, "0"),
            HullElement::Map { lambda, mu } => write!(f, "tau[{lambda}] sigma[{mu}]"),
        }
    }
}

/// Build `tau^lambda sigma^mu` in canonical form: both words are
/// right-multiplied by the inverse of `mu`'s tail.
pub fn make(lambda: &DirectedWord, mu: &DirectedWord) -> Result<HullElement> {
    if lambda.source() != mu.source() {
        return Err(Error::SourceMismatch(format!(
            "tau-word ends at {} but sigma-word ends at {}",
            lambda.source(),
            mu.source()
        )));
    }
    let shift = mu.tail().neg();
    Ok(HullElement::Map {
        lambda: DirectedWord::new(lambda.as_word().shift_tail(&shift))?,
        mu: mu.with_zero_tail(),
    })
}

/// The unit `tau^1_v sigma^1_v` at a vertex.
pub fn unit(g: &GraphOfGroups, vertex: &str) -> Result<HullElement> {
    let id = DirectedWord::identity(g, vertex)?;
    make(&id, &id)
}

/// The inverse-semigroup adjoint `s* = tau^mu sigma^lambda`.
pub fn star(s: &HullElement) -> Result<HullElement> {
    match s {
        HullElement::Zero => Ok(HullElement::Zero),
        HullElement::Map { lambda, mu } => make(mu, lambda),
    }
}

/// Right-divide `b` by `a` when `a <= b`: the directed word `eta` with
/// `a . eta = b`.
fn divide(g: &GraphOfGroups, a: &DirectedWord, b: &DirectedWord) -> Result<DirectedWord> {
    debug_assert!(le(a, b));
    DirectedWord::new(multiply(g, &invert(g, a.as_word())?, b.as_word())?)
}

/// Semigroup composition. The product of `tau^lambda sigma^mu` and
/// `tau^nu sigma^xi` is nonzero exactly when `mu` and `nu` are comparable;
/// the shared extension is divided out and pushed onto the surviving side.
pub fn compose(g: &GraphOfGroups, s: &HullElement, t: &HullElement) -> Result<HullElement> {
    let (HullElement::Map { lambda, mu }, HullElement::Map { lambda: nu, mu: xi }) = (s, t) else {
        return Ok(HullElement::Zero);
    };
    if le(nu, mu) {
        let eta = divide(g, nu, mu)?;
        let xi_eta = DirectedWord::new(multiply(g, xi.as_word(), eta.as_word())?)?;
        make(lambda, &xi_eta)
    } else if le(mu, nu) {
        let eta = divide(g, mu, nu)?;
        let lambda_eta = DirectedWord::new(multiply(g, lambda.as_word(), eta.as_word())?)?;
        make(&lambda_eta, xi)
    } else {
        Ok(HullElement::Zero)
    }
}

/// The idempotents are zero and the elements `tau^xi sigma^xi`.
pub fn is_idempotent(s: &HullElement) -> bool {
    match s {
        HullElement::Zero => true,
        HullElement::Map { lambda, mu } => lambda == mu,
    }
}

/// Germ equality of `(s, alpha)` and `(t, beta)`: the paths must coincide
/// and the two elements must agree after extending the shorter `sigma`-word
/// onto the longer one.
pub fn germ_equal(
    g: &GraphOfGroups,
    s: &HullElement,
    alpha: &LassoPath,
    t: &HullElement,
    beta: &LassoPath,
) -> Result<bool> {
    let (s_lambda, s_mu) = s
        .parts()
        .ok_or_else(|| Error::DomainViolation("the zero map has empty domain".into()))?;
    let (t_lambda, t_mu) = t
        .parts()
        .ok_or_else(|| Error::DomainViolation("the zero map has empty domain".into()))?;
    if !alpha.starts_with(&q_projection(s_mu)) {
        return Err(Error::DomainViolation(format!("{alpha} is not in the domain of {s}")));
    }
    if !beta.starts_with(&q_projection(t_mu)) {
        return Err(Error::DomainViolation(format!("{beta} is not in the domain of {t}")));
    }
    if alpha != beta {
        return Ok(false);
    }
    // Both sigma-projections are prefixes of the same path, hence comparable.
    let (short, long) = if s_mu.len() <= t_mu.len() {
        ((s_lambda, s_mu), (t_lambda, t_mu))
    } else {
        ((t_lambda, t_mu), (s_lambda, s_mu))
    };
    let eta = divide(g, short.1, long.1)?;
    let extended = multiply(g, short.0.as_word(), eta.as_word())?;
    Ok(&extended == long.0.as_word())
}
