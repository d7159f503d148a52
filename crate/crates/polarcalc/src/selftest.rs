//! Built-in acceptance checks, runnable both from the CLI (`selftest`)
//! and from the integration test suite. Every check is exact; there are
//! no tolerances anywhere.

use num::{BigInt, One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::classes::{
    cp_matrix, ed_degree_closed_form, mather_from_polar, polar_from_mather,
    reciprocal_from_polar, DegreeSequence,
};
use crate::curves::{rank, reciprocal_degree_curve, CurveData};
use crate::error::Result;
use crate::polytope::LatticePolytope;
use crate::scrolls::{rns_dual_degree, rns_is_balanced_selfdual, RationalScrollSpec};
use crate::toric::{polar_degrees, polygon_higher_polar, polyhedron_order2_polar, toric_report, EulerWeighting};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn ok(name: &'static str) -> Self {
        CheckResult { name, passed: true, detail: String::new() }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckResult { name, passed: false, detail }
    }
}

/// Knobs for the selftest run. `flip_cp_sign` is a fault-injection hook
/// that corrupts the CP matrix inside the involution check, to verify
/// that the harness actually detects failures.
#[derive(Debug, Clone)]
pub struct Config {
    pub scan_budget: u64,
    pub flip_cp_sign: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { scan_budget: crate::DEFAULT_SCAN_BUDGET, flip_cp_sign: false }
    }
}

fn ipoly(pts: &[&[i64]]) -> LatticePolytope {
    let v: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    LatticePolytope::from_vertices(&v).expect("suite polytope")
}

fn simplex(m: usize, d: i64) -> LatticePolytope {
    let mut pts: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m]];
    for i in 0..m {
        let mut p = vec![BigInt::zero(); m];
        p[i] = BigInt::from(d);
        pts.push(p);
    }
    LatticePolytope::from_vertices(&pts).expect("simplex")
}

fn cube(m: usize, t: i64) -> LatticePolytope {
    let mut pts = Vec::new();
    for mask in 0..(1u32 << m) {
        pts.push(
            (0..m)
                .map(|i| BigInt::from(if mask >> i & 1 == 1 { t } else { 0 }))
                .collect(),
        );
    }
    LatticePolytope::from_vertices(&pts).expect("cube")
}

fn wp1235() -> LatticePolytope {
    ipoly(&[&[0, 0, 0], &[15, 0, 0], &[0, 10, 0], &[0, 0, 6]])
}

/// The fixed polytope suite shared by the volume-oracle and
/// unimodular-invariance checks.
fn suite() -> Vec<LatticePolytope> {
    let mut out = Vec::new();
    for m in 1..=4 {
        out.push(simplex(m, 1));
    }
    for d in 1..=4 {
        out.push(simplex(2, d));
    }
    for d in 1..=3 {
        out.push(simplex(3, d));
    }
    for m in 2..=3 {
        for t in 1..=2 {
            out.push(cube(m, t));
        }
    }
    out.push(wp1235());
    out
}

fn random_unimodular(rng: &mut StdRng, n: usize) -> Vec<Vec<BigInt>> {
    // identity perturbed by random shears, a permutation, and signs;
    // determinant stays +-1 by construction
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for _ in 0..4 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if n > 1 {
            while j == i {
                j = rng.gen_range(0..n);
            }
            let c = BigInt::from(rng.gen_range(-3i64..=3));
            for k in 0..n {
                let t = &m[j][k] * &c;
                m[i][k] += t;
            }
        }
    }
    let flip = rng.gen_range(0..n);
    for k in 0..n {
        m[flip][k] = -m[flip][k].clone();
    }
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    m.swap(a, b);
    m
}

fn transform(p: &LatticePolytope, m: &[Vec<BigInt>], shift: &[BigInt]) -> LatticePolytope {
    let pts: Vec<Vec<BigInt>> = p
        .vertices()
        .iter()
        .map(|v| {
            (0..m.len())
                .map(|i| {
                    let mut x = shift[i].clone();
                    for (j, vj) in v.iter().enumerate() {
                        x += &m[i][j] * vj;
                    }
                    x
                })
                .collect()
        })
        .collect();
    LatticePolytope::from_vertices(&pts).expect("transformed polytope")
}

fn seq_eq(name: &'static str, got: &DegreeSequence, want: &[i64]) -> std::result::Result<(), CheckResult> {
    if got != &DegreeSequence::from_i64(want) {
        return Err(CheckResult::fail(
            name,
            format!("expected {:?}, got {:?}", want, got.entries),
        ));
    }
    Ok(())
}

fn check_wp1235_pipeline() -> Result<CheckResult> {
    const NAME: &str = "wp1235-pipeline";
    let p = wp1235();
    let w = EulerWeighting::all_ones();
    let r = toric_report(&p, &w)?;
    let evol: Vec<BigInt> = [900, 330, 41, 4].iter().map(|&x| BigInt::from(x)).collect();
    if r.evol != evol {
        return Ok(CheckResult::fail(NAME, format!("EVol mismatch: {:?}", r.evol)));
    }
    if let Err(f) = seq_eq(NAME, &r.polar, &[900, 3270, 4451, 2688]) {
        return Ok(f);
    }
    if r.ed_degree != BigInt::from(11309) {
        return Ok(CheckResult::fail(NAME, format!("ED degree mismatch: {}", r.ed_degree)));
    }
    Ok(CheckResult::ok(NAME))
}

fn check_cp_involution(flip: bool) -> Result<CheckResult> {
    const NAME: &str = "cp-involution";
    for m in 0..=10usize {
        let mut a = cp_matrix(m);
        if flip {
            // fault injection: drop the alternating sign
            for row in a.iter_mut() {
                for x in row.iter_mut() {
                    *x = x.clone().abs();
                }
            }
        }
        for i in 0..=m {
            for j in 0..=m {
                let prod: BigInt = (0..=m).map(|k| &a[i][k] * &a[k][j]).sum();
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                if prod != expect {
                    return Ok(CheckResult::fail(
                        NAME,
                        format!("cp_matrix({m})^2 entry ({i},{j}) = {prod}"),
                    ));
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(101);
    for m in 0..=8usize {
        for _ in 0..100 {
            let entries: Vec<BigInt> =
                (0..=m).map(|_| BigInt::from(rng.gen_range(-10_000i64..10_000))).collect();
            let s = DegreeSequence::new(entries)?;
            if mather_from_polar(&polar_from_mather(&s)) != s {
                return Ok(CheckResult::fail(NAME, format!("round trip failed for m = {m}")));
            }
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn check_ed_coefficient_identity() -> Result<CheckResult> {
    const NAME: &str = "ed-coefficient-identity";
    let mut rng = StdRng::seed_from_u64(202);
    for m in 0..=8usize {
        for _ in 0..50 {
            let entries: Vec<BigInt> =
                (0..=m).map(|_| BigInt::from(rng.gen_range(0i64..100_000))).collect();
            let c = DegreeSequence::new(entries)?;
            let via_prefix = reciprocal_from_polar(&polar_from_mather(&c));
            let closed = ed_degree_closed_form(&c);
            if via_prefix.entries.last().unwrap() != &closed {
                return Ok(CheckResult::fail(
                    NAME,
                    format!("mismatch for m = {m}: {:?} vs {closed}", via_prefix.entries),
                ));
            }
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn check_volume_oracle(budget: u64) -> Result<CheckResult> {
    const NAME: &str = "volume-oracle";
    for p in suite() {
        let fl = p.face_lattice();
        for f in &fl.faces {
            let ehr = p.ehrhart_normalized_volume(f, budget)?;
            if ehr != f.normalized_volume {
                return Ok(CheckResult::fail(
                    NAME,
                    format!(
                        "face {:?}: triangulation {} vs Ehrhart {}",
                        f.vertex_indices, f.normalized_volume, ehr
                    ),
                ));
            }
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn check_rational_normal_curves() -> Result<CheckResult> {
    const NAME: &str = "rational-normal-curve";
    for n in 2..=10usize {
        let c = CurveData::rational_normal(n);
        for k in 1..n {
            let want = BigInt::from((k as i64 + 1) * (n as i64 - k as i64));
            if rank(&c, k)? != want {
                return Ok(CheckResult::fail(NAME, format!("rank mismatch n={n} k={k}")));
            }
            if reciprocal_degree_curve(&c, k)? != BigInt::from(n as i64) + &want {
                return Ok(CheckResult::fail(NAME, format!("reciprocal mismatch n={n} k={k}")));
            }
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn smooth_polygon_seeds() -> Vec<LatticePolytope> {
    vec![
        cube(2, 1),
        ipoly(&[&[0, 0], &[2, 0], &[0, 3], &[2, 3]]),
        simplex(2, 2),
        simplex(2, 3),
        // hexagon of the sextic del Pezzo surface
        ipoly(&[&[1, 0], &[2, 0], &[0, 1], &[0, 2], &[2, 1], &[1, 2]]),
    ]
}

fn check_classical_reduction(budget: u64) -> Result<CheckResult> {
    const NAME: &str = "classical-reduction-k1";
    let mut rng = StdRng::seed_from_u64(303);
    let seeds = smooth_polygon_seeds();
    for s in &seeds {
        if !s.is_smooth()? {
            return Ok(CheckResult::fail(NAME, "seed polygon not smooth".into()));
        }
    }
    for t in 0..20 {
        let seed = &seeds[t % seeds.len()];
        let m = random_unimodular(&mut rng, 2);
        let shift: Vec<BigInt> =
            (0..2).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
        let p = transform(seed, &m, &shift);
        let (a, b) = polygon_higher_polar(&p, 1, budget)?;
        let polar = polar_degrees(&p, &EulerWeighting::all_ones())?;
        if a != polar.entries[1] || b != polar.entries[2] {
            return Ok(CheckResult::fail(
                NAME,
                format!(
                    "polygon {t}: order-1 ({a}, {b}) vs classical ({}, {})",
                    polar.entries[1], polar.entries[2]
                ),
            ));
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn check_veronese_dual_degree() -> Result<CheckResult> {
    const NAME: &str = "veronese-dual-degree";
    for d in 2..=6i64 {
        let p = polar_degrees(&simplex(2, d), &EulerWeighting::all_ones())?;
        if p.entries[2] != BigInt::from(3 * (d - 1) * (d - 1)) {
            return Ok(CheckResult::fail(NAME, format!("d = {d}: got {}", p.entries[2])));
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn check_balanced_scrolls() -> Result<CheckResult> {
    const NAME: &str = "balanced-scroll-selfduality";
    for a in 1..=6i64 {
        for m in 2..=6usize {
            let s = RationalScrollSpec::new(vec![a; m])?;
            if rns_dual_degree(&s, a)? != BigInt::from(a * m as i64) {
                return Ok(CheckResult::fail(NAME, format!("degree mismatch a={a} m={m}")));
            }
            if !rns_is_balanced_selfdual(&s, a)? {
                return Ok(CheckResult::fail(NAME, format!("selfdual flag false a={a} m={m}")));
            }
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn check_pluecker_sanity() -> Result<CheckResult> {
    const NAME: &str = "pluecker-sanity";
    let mut rng = StdRng::seed_from_u64(404);
    for _ in 0..50 {
        let d = rng.gen_range(1i64..=40);
        let g = rng.gen_range(0i64..=10);
        let k0 = rng.gen_range(0i64..=8);
        let c = CurveData::new(2, BigInt::from(d), BigInt::from(g), vec![BigInt::from(k0)])?;
        if rank(&c, 1)? != BigInt::from(2 * d + 2 * g - 2 - k0) {
            return Ok(CheckResult::fail(NAME, format!("d={d} g={g} k0={k0}")));
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn check_unimodular_invariance() -> Result<CheckResult> {
    const NAME: &str = "unimodular-invariance";
    let mut rng = StdRng::seed_from_u64(505);
    let w = EulerWeighting::all_ones();
    for p in suite() {
        let base = toric_report(&p, &w)?;
        for _ in 0..10 {
            let m = random_unimodular(&mut rng, p.ambient_dim());
            let shift: Vec<BigInt> = (0..p.ambient_dim())
                .map(|_| BigInt::from(rng.gen_range(-10i64..=10)))
                .collect();
            let q = transform(&p, &m, &shift);
            let got = toric_report(&q, &w)?;
            if got != base {
                return Ok(CheckResult::fail(
                    NAME,
                    format!("report changed under a unimodular map of {:?}", p.vertices()),
                ));
            }
        }
    }
    Ok(CheckResult::ok(NAME))
}

fn check_polyhedron_order2(budget: u64) -> Result<CheckResult> {
    const NAME: &str = "polyhedron-order-2";
    let got = polyhedron_order2_polar(&simplex(3, 3), budget)?;
    let want = (BigInt::from(72), BigInt::from(108), BigInt::from(94));
    if got != want {
        return Ok(CheckResult::fail(NAME, format!("3-simplex: got {:?}", got)));
    }
    let got = polyhedron_order2_polar(&cube(3, 2), budget)?;
    let want = (BigInt::from(144), BigInt::from(594), BigInt::from(906));
    if got != want {
        return Ok(CheckResult::fail(NAME, format!("cube: got {:?}", got)));
    }
    Ok(CheckResult::ok(NAME))
}

/// Run every acceptance check. A `Result::Err` means the run itself
/// could not complete (e.g. resource limits), as opposed to a check
/// failing.
pub fn run_all(config: &Config) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_wp1235_pipeline()?,
        check_cp_involution(config.flip_cp_sign)?,
        check_ed_coefficient_identity()?,
        check_volume_oracle(config.scan_budget)?,
        check_rational_normal_curves()?,
        check_classical_reduction(config.scan_budget)?,
        check_veronese_dual_degree()?,
        check_balanced_scrolls()?,
        check_pluecker_sanity()?,
        check_unimodular_invariance()?,
        check_polyhedron_order2(config.scan_budget)?,
    ])
}
