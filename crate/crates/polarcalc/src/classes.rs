//! Degree-level linear algebra of graded class families: the
//! polar ↔ Mather-Chern conversion (an involution), reciprocal prefix
//! sums, the dual degree reversal for k-reflexive varieties, and the
//! osculating-hypersurface polar formula.
//!
//! Everything here is pure linear algebra on integer sequences;
//! geometric realizability is the caller's concern.

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::binom;

/// Degrees of a graded class family indexed by codimension 0..=m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    pub m: usize,
    #[serde(with = "crate::cli::bigint_vec_serde")]
    pub entries: Vec<BigInt>,
}

impl DegreeSequence {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::MalformedInput("degree sequence must be nonempty".into()));
        }
        Ok(DegreeSequence { m: entries.len() - 1, entries })
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        DegreeSequence::new(xs.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }
}

/// Dual defect δ_k ≥ 0: drop of dim X^(k) below its expected dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualDefect(pub usize);

/// Degree-level data for the polar classes of a smooth, generically
/// k-regular hypersurface-osculating embedding (m_k = n - 1):
/// deg c₁(P^k(1))^i and the Segre term degrees for j = 0..i-1.
#[derive(Debug, Clone)]
pub struct OsculatingHypersurfaceData {
    pub m: usize,
    pub i: usize,
    pub c1_power_degree: BigInt,
    pub segre_term_degrees: Vec<BigInt>,
}

/// The (m+1)x(m+1) lower-triangular conversion matrix with entries
/// A[i][j] = (-1)^j binom(m-j+1, m-i+1) for j <= i. It is an involution.
pub fn cp_matrix(m: usize) -> Vec<Vec<BigInt>> {
    let mi = m as i64;
    (0..=mi)
        .map(|i| {
            (0..=mi)
                .map(|j| {
                    let b = binom(mi - j + 1, mi - i + 1);
                    if j % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .collect()
        })
        .collect()
}

fn apply_cp(seq: &DegreeSequence) -> DegreeSequence {
    let a = cp_matrix(seq.m);
    let entries = a
        .iter()
        .map(|row| row.iter().zip(&seq.entries).map(|(c, x)| c * x).sum())
        .collect();
    DegreeSequence { m: seq.m, entries }
}

/// Polar degrees from Mather-Chern degrees:
/// p_i = Σ_j (-1)^j binom(m-j+1, m-i+1) c_j.
pub fn polar_from_mather(c: &DegreeSequence) -> DegreeSequence {
    apply_cp(c)
}

/// Mather-Chern degrees from polar degrees (same coefficient pattern;
/// the transform is its own inverse).
pub fn mather_from_polar(p: &DegreeSequence) -> DegreeSequence {
    apply_cp(p)
}

/// Reciprocal polar degrees: entry i is the prefix sum p_0 + ... + p_i.
/// The last entry is the (generic) Euclidean distance degree.
pub fn reciprocal_from_polar(p: &DegreeSequence) -> DegreeSequence {
    let mut acc = BigInt::zero();
    let entries = p
        .entries
        .iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect();
    DegreeSequence { m: p.m, entries }
}

/// Degrees of the polar classes of the k-th dual variety of a
/// k-reflexive variety: entry i of the result is p_{m-δ-i}. Requires
/// p_i = 0 above the top nonvanishing index m - δ.
pub fn dual_degree_reversal(p: &DegreeSequence, delta: DualDefect) -> Result<DegreeSequence> {
    let d = delta.0;
    if d > p.m {
        return Err(Error::Precondition(format!(
            "dual defect {} exceeds the dimension {}",
            d, p.m
        )));
    }
    let top = p.m - d;
    if p.entries[top + 1..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Precondition(format!(
            "polar degrees above index {} must vanish for dual defect {}",
            top, d
        )));
    }
    let entries: Vec<BigInt> = (0..=top).map(|i| p.entries[top - i].clone()).collect();
    Ok(DegreeSequence { m: top, entries })
}

/// deg[M_{k,i}] = deg c₁^i - Σ_{j<i} binom(i,j) · (Segre term j).
pub fn osculating_hypersurface_polar(data: &OsculatingHypersurfaceData) -> Result<BigInt> {
    if data.segre_term_degrees.len() != data.i {
        return Err(Error::MalformedInput(format!(
            "expected {} Segre term degrees, got {}",
            data.i,
            data.segre_term_degrees.len()
        )));
    }
    if data.i > data.m {
        return Err(Error::MalformedInput(format!(
            "codimension {} exceeds dimension {}",
            data.i, data.m
        )));
    }
    let mut acc = data.c1_power_degree.clone();
    for (j, s) in data.segre_term_degrees.iter().enumerate() {
        acc -= binom(data.i as i64, j as i64) * s;
    }
    Ok(acc)
}

/// Closed-form ED coefficient sum Σ_j (-1)^j (2^{m-j+1} - 1) c_j on
/// Mather-Chern (or Euler-weighted volume) degrees.
pub fn ed_degree_closed_form(c: &DegreeSequence) -> BigInt {
    let m = c.m;
    let mut acc = BigInt::zero();
    for (j, x) in c.entries.iter().enumerate() {
        let coeff = (BigInt::one() << (m - j + 1)) - 1;
        let term = coeff * x;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Direct evaluation of the reciprocal double sum
/// Σ_j (-1)^j Σ_{ℓ=0}^{i-j} binom(m-j+1, ℓ) c_j for each i.
pub fn reciprocal_from_mather_direct(c: &DegreeSequence) -> DegreeSequence {
    let m = c.m as i64;
    let entries = (0..=m)
        .map(|i| {
            let mut acc = BigInt::zero();
            for (j, x) in c.entries.iter().enumerate() {
                let j = j as i64;
                if j > i {
                    break;
                }
                let mut inner = BigInt::zero();
                for l in 0..=(i - j) {
                    inner += binom(m - j + 1, l);
                }
                let term = inner * x;
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect();
    DegreeSequence { m: c.m, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;
    use proptest::prelude::*;

    fn seq(xs: &[i64]) -> DegreeSequence {
        DegreeSequence::from_i64(xs)
    }

    #[test]
    fn cp_matrix_examples() {
        assert_eq!(cp_matrix(0), vec![vec![BigInt::one()]]);
        let m1 = cp_matrix(1);
        assert_eq!(m1[0], vec![BigInt::from(1), BigInt::from(0)]);
        assert_eq!(m1[1], vec![BigInt::from(2), BigInt::from(-1)]);
        let m3 = cp_matrix(3);
        let row3: Vec<BigInt> = [4, -3, 2, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(m3[3], row3);
    }

    #[test]
    fn cp_involution_to_m10() {
        for m in 0..=10usize {
            let a = cp_matrix(m);
            for i in 0..=m {
                for j in 0..=m {
                    let prod: BigInt = (0..=m).map(|k| &a[i][k] * &a[k][j]).sum();
                    let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                    assert_eq!(prod, expect, "m={} entry ({},{})", m, i, j);
                }
            }
        }
    }

    #[test]
    fn wp1235_transforms() {
        let c = seq(&[900, 330, 41, 4]);
        let p = polar_from_mather(&c);
        assert_eq!(p, seq(&[900, 3270, 4451, 2688]));
        assert_eq!(mather_from_polar(&p), c);
        let r = reciprocal_from_polar(&p);
        assert_eq!(r, seq(&[900, 4170, 8621, 11309]));
    }

    #[test]
    fn degenerate_and_basis_cases() {
        assert_eq!(polar_from_mather(&seq(&[7])), seq(&[7]));
        assert_eq!(mather_from_polar(&seq(&[7])), seq(&[7]));
        assert_eq!(polar_from_mather(&seq(&[0, 1, 0])), seq(&[0, -1, -2]));
        assert_eq!(reciprocal_from_polar(&seq(&[0, 0, 0])), seq(&[0, 0, 0]));
        assert_eq!(reciprocal_from_polar(&seq(&[3, 6])), seq(&[3, 9]));
    }

    #[test]
    fn dual_reversal_examples() {
        let p = seq(&[3, 6]);
        assert_eq!(dual_degree_reversal(&p, DualDefect(0)).unwrap(), seq(&[6, 3]));
        let p = seq(&[900, 3270, 4451, 2688]);
        assert_eq!(
            dual_degree_reversal(&p, DualDefect(0)).unwrap(),
            seq(&[2688, 4451, 3270, 900])
        );
        let p = seq(&[5, 8, 11, 0]);
        assert_eq!(dual_degree_reversal(&p, DualDefect(1)).unwrap(), seq(&[11, 8, 5]));
        assert!(dual_degree_reversal(&seq(&[5, 8, 11, 1]), DualDefect(1)).is_err());
    }

    #[test]
    fn osculating_formula_examples() {
        let d = OsculatingHypersurfaceData {
            m: 2,
            i: 0,
            c1_power_degree: BigInt::from(9),
            segre_term_degrees: vec![],
        };
        assert_eq!(osculating_hypersurface_polar(&d).unwrap(), BigInt::from(9));

        let d = OsculatingHypersurfaceData {
            m: 2,
            i: 2,
            c1_power_degree: BigInt::from(30),
            segre_term_degrees: vec![BigInt::zero(), BigInt::zero()],
        };
        assert_eq!(osculating_hypersurface_polar(&d).unwrap(), BigInt::from(30));

        let d = OsculatingHypersurfaceData {
            m: 2,
            i: 2,
            c1_power_degree: BigInt::from(30),
            segre_term_degrees: vec![BigInt::from(3), BigInt::from(2)],
        };
        assert_eq!(osculating_hypersurface_polar(&d).unwrap(), BigInt::from(23));
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(xs in prop::collection::vec(-1000i64..1000, 1..=9)) {
            let s = seq(&xs);
            prop_assert_eq!(mather_from_polar(&polar_from_mather(&s)), s);
        }

        #[test]
        fn reciprocal_monotone_for_nonneg(xs in prop::collection::vec(0i64..1000, 1..=9)) {
            let r = reciprocal_from_polar(&seq(&xs));
            for w in r.entries.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
        }

        #[test]
        fn ed_closed_form_matches_prefix_sums(xs in prop::collection::vec(-1000i64..1000, 1..=9)) {
            let c = seq(&xs);
            let via_prefix = reciprocal_from_polar(&polar_from_mather(&c));
            prop_assert_eq!(
                via_prefix.entries.last().unwrap().clone(),
                ed_degree_closed_form(&c)
            );
        }

        #[test]
        fn reciprocal_double_sum_matches(xs in prop::collection::vec(-1000i64..1000, 1..=9)) {
            let c = seq(&xs);
            let a = reciprocal_from_polar(&polar_from_mather(&c));
            let b = reciprocal_from_mather_direct(&c);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn dual_reversal_involution(xs in prop::collection::vec(-1000i64..1000, 1..=9)) {
            let p = seq(&xs);
            let r = dual_degree_reversal(&p, DualDefect(0)).unwrap();
            prop_assert_eq!(dual_degree_reversal(&r, DualDefect(0)).unwrap(), p);
        }
    }
}
