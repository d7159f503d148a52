//! Closed-form k-th dual-variety degrees for rational normal scrolls
//! and elliptic normal surface scrolls, and the balanced selfduality
//! check.

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational normal scroll of type (d_1, ..., d_m), d_1 <= ... <= d_m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalScrollSpec {
    pub scroll_type: Vec<i64>,
}

impl RationalScrollSpec {
    pub fn new(mut scroll_type: Vec<i64>) -> Result<Self> {
        if scroll_type.len() < 2 {
            return Err(Error::MalformedInput("scroll type needs at least two entries".into()));
        }
        if scroll_type.iter().any(|&d| d < 1) {
            return Err(Error::MalformedInput("scroll type entries must be >= 1".into()));
        }
        scroll_type.sort();
        Ok(RationalScrollSpec { scroll_type })
    }

    pub fn m(&self) -> i64 {
        self.scroll_type.len() as i64
    }

    /// degree d = Σ d_i
    pub fn degree(&self) -> i64 {
        self.scroll_type.iter().sum()
    }

    /// ambient projective dimension n = Σ (d_i + 1) - 1
    pub fn ambient_dim(&self) -> i64 {
        self.degree() + self.m() - 1
    }

    fn check_order(&self, k: i64) -> Result<()> {
        if k < 1 || k > self.scroll_type[0] {
            return Err(Error::Precondition(format!(
                "order k = {} outside the validity range 1..=d_1 = {}",
                k, self.scroll_type[0]
            )));
        }
        Ok(())
    }
}

/// deg X^(k) = kd - k(k-1)m, valid for 1 <= k <= d_1.
pub fn rns_dual_degree(s: &RationalScrollSpec, k: i64) -> Result<BigInt> {
    s.check_order(k)?;
    Ok(BigInt::from(k * s.degree() - k * (k - 1) * s.m()))
}

/// True iff the scroll is balanced of type (k, ..., k); then X^(k) is a
/// scroll of the same type and deg X^(k) = deg X.
pub fn rns_is_balanced_selfdual(s: &RationalScrollSpec, k: i64) -> Result<bool> {
    s.check_order(k)?;
    let balanced = s.scroll_type.iter().all(|&d| d == k);
    if balanced {
        debug_assert_eq!(rns_dual_degree(s, k)?, BigInt::from(s.degree()));
    }
    Ok(balanced)
}

/// Elliptic normal surface scroll P(E ⊗ M): Atiyah invariant e of the
/// rank-2 bundle E, degree d of M, and decomposability of E.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticScrollSpec {
    pub e: i64,
    pub d: i64,
    pub decomposable: bool,
}

impl EllipticScrollSpec {
    pub fn new(e: i64, d: i64, decomposable: bool) -> Result<Self> {
        if d < e + 3 {
            return Err(Error::Precondition(format!(
                "d = {} must be at least e + 3 = {} for an embedding",
                d,
                e + 3
            )));
        }
        if decomposable && e < 0 {
            return Err(Error::Precondition(
                "decomposable bundles have Atiyah invariant e >= 0".into(),
            ));
        }
        if !decomposable && !(e == 0 || e == -1) {
            return Err(Error::Precondition(
                "indecomposable bundles have Atiyah invariant e = 0 or -1".into(),
            ));
        }
        Ok(EllipticScrollSpec { e, d, decomposable })
    }
}

/// One printed case of the elliptic dual-degree table.
struct EllipticCase {
    decomposable: bool,
    matches: fn(e: i64) -> bool,
    order: fn(d: i64) -> i64,
    degree: fn(d: i64) -> i64,
}

const ELLIPTIC_CASES: &[EllipticCase] = &[
    EllipticCase {
        decomposable: true,
        matches: |e| e == 0,
        order: |d| d - 1,
        degree: |d| 2 * d * (d - 1),
    },
    EllipticCase {
        decomposable: true,
        matches: |e| e == 1,
        order: |d| d - 2,
        degree: |d| 2 * d * d - 5 * d + 2,
    },
    EllipticCase {
        decomposable: true,
        matches: |e| e >= 2,
        order: |d| d - 2,
        degree: |d| d * (d - 1),
    },
    EllipticCase {
        decomposable: false,
        matches: |e| e == -1,
        order: |d| d - 1,
        degree: |d| 2 * d * d - 3,
    },
    EllipticCase {
        decomposable: false,
        matches: |e| e == 0,
        order: |d| d - 1,
        degree: |d| 2 * d * d - d - 2,
    },
];

/// (k, deg X^(k)) for the five printed elliptic scroll cases.
pub fn elliptic_dual_degree(s: &EllipticScrollSpec) -> Result<(i64, BigInt)> {
    let case = ELLIPTIC_CASES
        .iter()
        .find(|c| c.decomposable == s.decomposable && (c.matches)(s.e))
        .ok_or_else(|| {
            Error::Precondition(format!(
                "no dual-degree case for e = {}, decomposable = {}",
                s.e, s.decomposable
            ))
        })?;
    Ok(((case.order)(s.d), BigInt::from((case.degree)(s.d))))
}
