//! Numeric invariants of projective curves: osculating ranks r_k,
//! higher-order polar and reciprocal polar degrees, and the strict dual
//! rank symmetry.

use num::{BigInt, Signed};
use serde::{Deserialize, Serialize};

use crate::classes::DegreeSequence;
use crate::error::{Error, Result};

/// (n, d, g, κ): ambient projective dimension, degree, geometric genus
/// of the normalization, and the stationary indices κ_0..κ_{n-2}.
///
/// Realizability of the data as an actual curve is not validated; the
/// caller owns that. Negative computed ranks are reported as warnings
/// by the CLI, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub n: usize,
    #[serde(with = "crate::cli::bigint_serde")]
    pub d: BigInt,
    #[serde(with = "crate::cli::bigint_serde")]
    pub g: BigInt,
    #[serde(with = "crate::cli::bigint_vec_serde")]
    pub kappa: Vec<BigInt>,
}

impl CurveData {
    pub fn new(n: usize, d: BigInt, g: BigInt, kappa: Vec<BigInt>) -> Result<Self> {
        if n < 1 {
            return Err(Error::MalformedInput("ambient dimension n must be >= 1".into()));
        }
        if d < BigInt::from(1) {
            return Err(Error::MalformedInput("degree d must be >= 1".into()));
        }
        if g.is_negative() {
            return Err(Error::MalformedInput("genus g must be >= 0".into()));
        }
        if kappa.len() != n - 1 {
            return Err(Error::MalformedInput(format!(
                "expected {} stationary indices (kappa_0..kappa_{}), got {}",
                n - 1,
                n.max(2) - 2,
                kappa.len()
            )));
        }
        if kappa.iter().any(|k| k.is_negative()) {
            return Err(Error::MalformedInput("stationary indices must be >= 0".into()));
        }
        Ok(CurveData { n, d, g, kappa })
    }

    pub fn rational_normal(n: usize) -> Self {
        CurveData::new(
            n,
            BigInt::from(n as i64),
            BigInt::from(0),
            vec![BigInt::from(0); n - 1],
        )
        .unwrap()
    }
}

/// r_k = (k+1)(d + k(g-1)) - Σ_{j<k} (k-j) κ_j; r_0 = d.
pub fn rank(c: &CurveData, k: usize) -> Result<BigInt> {
    if k > c.n - 1 {
        return Err(Error::Precondition(format!(
            "order k = {} out of range 0..={}",
            k,
            c.n - 1
        )));
    }
    let kb = BigInt::from(k as i64);
    let mut r = (&kb + 1) * (&c.d + &kb * (&c.g - 1));
    for j in 0..k {
        r -= (&kb - BigInt::from(j as i64)) * &c.kappa[j];
    }
    Ok(r)
}

/// The m = 1 polar degree sequence (d, r_k) of order k.
pub fn polar_degrees_curve(c: &CurveData, k: usize) -> Result<DegreeSequence> {
    if k < 1 {
        return Err(Error::Precondition("order k must be >= 1".into()));
    }
    let r = rank(c, k)?;
    DegreeSequence::new(vec![c.d.clone(), r])
}

/// deg[M_{k,1}^⊥] = d + r_k (the order-k ED degree of the curve).
pub fn reciprocal_degree_curve(c: &CurveData, k: usize) -> Result<BigInt> {
    if k < 1 {
        return Err(Error::Precondition("order k must be >= 1".into()));
    }
    Ok(&c.d + rank(c, k)?)
}

/// Rank list of the strict dual curve X^(n-1): entry k is r_{n-1-k}.
pub fn strict_dual_ranks(c: &CurveData) -> Result<Vec<BigInt>> {
    (0..c.n).map(|k| rank(c, c.n - 1 - k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn plane_cubic_smooth() -> CurveData {
        CurveData::new(2, BigInt::from(3), BigInt::from(1), vec![BigInt::from(0)]).unwrap()
    }

    fn plane_cubic_cuspidal() -> CurveData {
        CurveData::new(2, BigInt::from(3), BigInt::from(0), vec![BigInt::from(1)]).unwrap()
    }

    #[test]
    fn rank_examples() {
        for n in 2..=8usize {
            let c = CurveData::rational_normal(n);
            for k in 0..n {
                let expect = (k as i64 + 1) * (n as i64 - k as i64);
                assert_eq!(rank(&c, k).unwrap(), BigInt::from(expect));
            }
        }
        assert_eq!(rank(&plane_cubic_smooth(), 1).unwrap(), BigInt::from(6));
        assert_eq!(rank(&plane_cubic_cuspidal(), 1).unwrap(), BigInt::from(3));
    }

    #[test]
    fn rank_zero_is_degree() {
        let c = CurveData::new(
            5,
            BigInt::from(17),
            BigInt::from(3),
            vec![BigInt::from(2); 4],
        )
        .unwrap();
        assert_eq!(rank(&c, 0).unwrap(), c.d);
    }

    #[test]
    fn polar_and_reciprocal_examples() {
        let c = CurveData::rational_normal(4);
        assert_eq!(polar_degrees_curve(&c, 2).unwrap(), DegreeSequence::from_i64(&[4, 6]));
        assert_eq!(reciprocal_degree_curve(&c, 2).unwrap(), BigInt::from(10));

        assert_eq!(
            polar_degrees_curve(&plane_cubic_smooth(), 1).unwrap(),
            DegreeSequence::from_i64(&[3, 6])
        );
        assert_eq!(reciprocal_degree_curve(&plane_cubic_smooth(), 1).unwrap(), BigInt::from(9));
        assert_eq!(
            reciprocal_degree_curve(&plane_cubic_cuspidal(), 1).unwrap(),
            BigInt::from(6)
        );
    }

    #[test]
    fn out_of_range_k() {
        let c = CurveData::rational_normal(3);
        assert!(rank(&c, 3).is_err());
        assert!(polar_degrees_curve(&c, 0).is_err());
    }

    #[test]
    fn strict_dual_examples() {
        // the rational normal curve is (n-1)-selfdual: palindromic ranks
        let c = CurveData::rational_normal(4);
        let ranks: Vec<BigInt> = (0..4).map(|k| rank(&c, k).unwrap()).collect();
        let dual = strict_dual_ranks(&c).unwrap();
        let mut rev = ranks.clone();
        rev.reverse();
        assert_eq!(dual, rev);
        assert_eq!(dual, ranks, "palindromic for the rational normal curve");

        // involution on a generic curve
        let c = CurveData::new(
            4,
            BigInt::from(11),
            BigInt::from(2),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(2)],
        )
        .unwrap();
        let ranks: Vec<BigInt> = (0..4).map(|k| rank(&c, k).unwrap()).collect();
        let mut twice = strict_dual_ranks(&c).unwrap();
        twice.reverse();
        assert_eq!(twice, ranks);
    }

    #[test]
    fn dual_reversal_consistency_with_classes() {
        use crate::classes::{dual_degree_reversal, DualDefect};
        let c = plane_cubic_smooth();
        let p = polar_degrees_curve(&c, 1).unwrap();
        let rev = dual_degree_reversal(&p, DualDefect(0)).unwrap();
        assert_eq!(rev, DegreeSequence::from_i64(&[6, 3]));
    }

    #[test]
    fn kappa_unit_increase_drops_rank_by_k_minus_j() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(2..=7usize);
            let d = rng.gen_range(1..=30i64);
            let g = rng.gen_range(0..=5i64);
            let kappa: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=3)).collect();
            let mk = |kap: &[i64]| {
                CurveData::new(
                    n,
                    BigInt::from(d),
                    BigInt::from(g),
                    kap.iter().map(|&x| BigInt::from(x)).collect(),
                )
                .unwrap()
            };
            let base = mk(&kappa);
            let k = rng.gen_range(1..n);
            let j = rng.gen_range(0..k);
            let mut bumped = kappa.clone();
            bumped[j] += 1;
            let diff = rank(&base, k).unwrap() - rank(&mk(&bumped), k).unwrap();
            assert_eq!(diff, BigInt::from((k - j) as i64));
        }
    }
}
