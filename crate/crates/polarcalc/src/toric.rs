//! Polar invariants of projective toric varieties from their lattice
//! polytopes: Euler-obstruction-weighted volume sums (the Mather-Chern
//! degrees), classical polar and reciprocal polar degrees, the ED
//! degree, and the higher-order polar formulas for smooth polygons and
//! smooth 3-polytopes.
//!
//! Local Euler obstructions are user input keyed by face (the weight of
//! the dense orbit is always 1); computing them from the fan is out of
//! scope.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::classes::{
    ed_degree_closed_form, polar_from_mather, reciprocal_from_mather_direct,
    reciprocal_from_polar, DegreeSequence,
};
use crate::error::{Error, Result};
use crate::exact::binom;
use crate::polytope::{FaceLattice, LatticePolytope};

/// Local Euler obstruction weights per face, keyed by the face's sorted
/// vertex-index set. Faces without an override get `default_weight`.
#[derive(Debug, Clone)]
pub struct EulerWeighting {
    pub default_weight: BigInt,
    pub overrides: BTreeMap<Vec<usize>, BigInt>,
}

impl EulerWeighting {
    pub fn all_ones() -> Self {
        EulerWeighting { default_weight: BigInt::one(), overrides: BTreeMap::new() }
    }

    fn validate(&self, p: &LatticePolytope, fl: &FaceLattice) -> Result<()> {
        let full: Vec<usize> = (0..p.vertices().len()).collect();
        for (key, w) in &self.overrides {
            if fl.face_by_key(key).is_none() {
                return Err(Error::MalformedInput(format!(
                    "Euler weight override {:?} does not match any face",
                    key
                )));
            }
            if *key == full && *w != BigInt::one() {
                return Err(Error::MalformedInput(
                    "the dense orbit (full-dimensional face) must have Euler weight 1".into(),
                ));
            }
        }
        Ok(())
    }

    fn weight(&self, p: &LatticePolytope, face_key: &[usize], face_dim: usize) -> BigInt {
        if face_dim == p.dim() {
            return BigInt::one();
        }
        self.overrides
            .get(face_key)
            .cloned()
            .unwrap_or_else(|| self.default_weight.clone())
    }
}

/// Full toric invariant report for one polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricReport {
    #[serde(with = "crate::cli::bigint_vec_serde")]
    pub vol: Vec<BigInt>,
    #[serde(with = "crate::cli::bigint_vec_serde")]
    pub evol: Vec<BigInt>,
    pub polar: DegreeSequence,
    pub reciprocal: DegreeSequence,
    #[serde(with = "crate::cli::bigint_serde")]
    pub ed_degree: BigInt,
}

/// EVol^j: Euler-weighted normalized volume sums by codimension.
pub fn weighted_volume_sums(p: &LatticePolytope, w: &EulerWeighting) -> Result<Vec<BigInt>> {
    let fl = p.face_lattice();
    weighted_volume_sums_from(p, &fl, w)
}

fn weighted_volume_sums_from(
    p: &LatticePolytope,
    fl: &FaceLattice,
    w: &EulerWeighting,
) -> Result<Vec<BigInt>> {
    w.validate(p, fl)?;
    let m = p.dim();
    let mut out = vec![BigInt::zero(); m + 1];
    for f in &fl.faces {
        let wt = w.weight(p, &f.vertex_indices, f.dim);
        out[m - f.dim] += wt * &f.normalized_volume;
    }
    Ok(out)
}

/// Polar degrees of X_Π: the CP transform of the EVol sequence (EVol^j
/// are the Mather-Chern degrees of a toric variety).
pub fn polar_degrees(p: &LatticePolytope, w: &EulerWeighting) -> Result<DegreeSequence> {
    let evol = weighted_volume_sums(p, w)?;
    Ok(polar_from_mather(&DegreeSequence::new(evol)?))
}

/// Reciprocal polar degrees, evaluated both as prefix sums of the polar
/// degrees and via the direct double-sum formula; the two routes must
/// agree.
pub fn reciprocal_degrees(p: &LatticePolytope, w: &EulerWeighting) -> Result<DegreeSequence> {
    let evol = DegreeSequence::new(weighted_volume_sums(p, w)?)?;
    let via_prefix = reciprocal_from_polar(&polar_from_mather(&evol));
    let direct = reciprocal_from_mather_direct(&evol);
    if via_prefix != direct {
        return Err(Error::Inconsistency(
            "reciprocal degrees: prefix-sum and double-sum routes disagree".into(),
        ));
    }
    Ok(via_prefix)
}

/// ED degree via the (2^{m-j+1} - 1) closed form, checked against the
/// last reciprocal degree.
pub fn ed_degree(p: &LatticePolytope, w: &EulerWeighting) -> Result<BigInt> {
    let evol = DegreeSequence::new(weighted_volume_sums(p, w)?)?;
    let closed = ed_degree_closed_form(&evol);
    let recip = reciprocal_degrees(p, w)?;
    if &closed != recip.entries.last().unwrap() {
        return Err(Error::Inconsistency(
            "ED degree: closed form and prefix sum disagree".into(),
        ));
    }
    Ok(closed)
}

/// Everything at once.
pub fn toric_report(p: &LatticePolytope, w: &EulerWeighting) -> Result<ToricReport> {
    let fl = p.face_lattice();
    let vol = p.codim_volume_sums_from(&fl);
    let evol = weighted_volume_sums_from(p, &fl, w)?;
    let polar = polar_from_mather(&DegreeSequence::new(evol.clone())?);
    let reciprocal = reciprocal_degrees(p, w)?;
    let ed = ed_degree(p, w)?;
    Ok(ToricReport { vol, evol, polar, reciprocal, ed_degree: ed })
}

/// Gate shared by the higher-order formulas: the k-th osculating spaces
/// must not fill the ambient space, which needs the lattice point count
/// of Π to exceed binom(m+k, k).
fn jet_gate(p: &LatticePolytope, k: i64, budget: u64) -> Result<()> {
    let m = p.dim() as i64;
    let pts = BigInt::from(p.lattice_point_count(budget)?);
    let jet_rank = binom(m + k, k);
    if pts <= jet_rank {
        return Err(Error::Precondition(format!(
            "degenerate osculating behavior: {} lattice points do not exceed the {}-jet rank {}",
            pts, k, jet_rank
        )));
    }
    Ok(())
}

/// deg[M_{k,1}] and deg[M_{k,2}] for the toric surface of a smooth
/// lattice polygon with all edge lengths >= k.
pub fn polygon_higher_polar(
    p: &LatticePolytope,
    k: i64,
    budget: u64,
) -> Result<(BigInt, BigInt)> {
    if p.dim() != 2 {
        return Err(Error::Precondition(format!(
            "polygon formulas need a 2-dimensional polytope, got dimension {}",
            p.dim()
        )));
    }
    if k < 1 {
        return Err(Error::Precondition("order k must be >= 1".into()));
    }
    if !p.is_smooth()? {
        return Err(Error::Precondition("polygon is not smooth".into()));
    }
    if let Some(short) = p.edge_lattice_lengths()?.iter().find(|l| **l < BigInt::from(k)) {
        return Err(Error::Precondition(format!(
            "edge of lattice length {} is shorter than the order {}",
            short, k
        )));
    }
    jet_gate(p, k, budget)?;

    let vol = p.codim_volume_sums();
    let q = |x: &BigInt| BigRational::from(x.clone());
    let ki = BigInt::from(k);

    let m_k1 = binom(k + 2, 2) * &vol[0] - binom(k + 2, 3) * &vol[1];

    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let inner = q(&(BigInt::from(3) * &vol[0]))
        - q(&(BigInt::from(2) * &ki * &vol[1]))
        - third * q(&((&ki * &ki - 4) * &vol[2]))
        + q(&(BigInt::from(4) * (&ki * &ki - 1)));
    let m_k2 = q(&binom(k + 3, 4)) * inner;
    if !m_k2.is_integer() {
        return Err(Error::Inconsistency(format!(
            "non-integer higher polar degree {} for order {}",
            m_k2, k
        )));
    }
    Ok((m_k1, m_k2.to_integer()))
}

/// deg[M_{2,1}], deg[M_{2,2}], deg[M_{2,3}] for the toric threefold of
/// a smooth lattice polyhedron with all edge lengths >= 2. The interior
/// hull Π₀ contributes with codimension taken inside Π₀; terms beyond
/// its dimension (or with Π₀ empty) are zero.
pub fn polyhedron_order2_polar(
    p: &LatticePolytope,
    budget: u64,
) -> Result<(BigInt, BigInt, BigInt)> {
    if p.dim() != 3 {
        return Err(Error::Precondition(format!(
            "polyhedron formulas need a 3-dimensional polytope, got dimension {}",
            p.dim()
        )));
    }
    if !p.is_smooth()? {
        return Err(Error::Precondition("polyhedron is not smooth".into()));
    }
    if let Some(short) = p.edge_lattice_lengths()?.iter().find(|l| **l < BigInt::from(2)) {
        return Err(Error::Precondition(format!(
            "edge of lattice length {} is shorter than the order 2",
            short
        )));
    }
    jet_gate(p, 2, budget)?;

    let vol = p.codim_volume_sums();
    let pi0_vol: Vec<BigInt> = match p.interior_hull(budget)? {
        Some(pi0) => pi0.codim_volume_sums(),
        None => vec![],
    };
    let pv = |j: usize| pi0_vol.get(j).cloned().unwrap_or_else(BigInt::zero);
    let c = |x: i64| BigInt::from(x);

    let m1 = c(4) * &vol[0] - &vol[1];
    let m2 = c(36) * &vol[0] - c(27) * &vol[1] + c(6) * &vol[2] + c(18) * pv(0) + c(9) * pv(1);
    let m3 = c(62) * &vol[0] - c(57) * &vol[1] + c(28) * &vol[2] - c(8) * &vol[3]
        + c(58) * pv(0)
        + c(51) * pv(1)
        + c(20) * pv(2);
    Ok((m1, m2, m3))
}
