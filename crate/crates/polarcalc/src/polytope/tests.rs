use super::*;
use crate::DEFAULT_SCAN_BUDGET;
use num::BigInt;

pub fn poly(pts: &[&[i64]]) -> LatticePolytope {
    let v: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    LatticePolytope::from_vertices(&v).unwrap()
}

pub fn wp1235_tetrahedron() -> LatticePolytope {
    poly(&[&[0, 0, 0], &[15, 0, 0], &[0, 10, 0], &[0, 0, 6]])
}

/// d-dilated standard simplex in dimension m.
pub fn dilated_simplex(m: usize, d: i64) -> LatticePolytope {
    let mut pts: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); m]];
    for i in 0..m {
        let mut p = vec![BigInt::from(0); m];
        p[i] = BigInt::from(d);
        pts.push(p);
    }
    LatticePolytope::from_vertices(&pts).unwrap()
}

/// Cube [0, t]^m.
pub fn cube(m: usize, t: i64) -> LatticePolytope {
    let mut pts = Vec::new();
    for mask in 0..(1u32 << m) {
        let p: Vec<BigInt> = (0..m)
            .map(|i| BigInt::from(if mask >> i & 1 == 1 { t } else { 0 }))
            .collect();
        pts.push(p);
    }
    LatticePolytope::from_vertices(&pts).unwrap()
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn construction_examples() {
    let t = wp1235_tetrahedron();
    assert_eq!(t.dim(), 3);
    assert_eq!(t.vertices().len(), 4);

    let p = poly(&[&[7, 7]]);
    assert_eq!(p.dim(), 0);
    assert_eq!(p.vertices().len(), 1);

    let s = poly(&[&[0, 0], &[2, 0], &[1, 0]]);
    assert_eq!(s.dim(), 1);
    assert_eq!(s.vertices().len(), 2, "collinear middle point dropped");
}

#[test]
fn rejects_empty_input() {
    assert!(LatticePolytope::from_vertices(&[]).is_err());
}

#[test]
fn f_vectors() {
    assert_eq!(wp1235_tetrahedron().face_lattice().f_vector(), vec![4, 6, 4, 1]);
    assert_eq!(cube(2, 1).face_lattice().f_vector(), vec![4, 4, 1]);
    assert_eq!(poly(&[&[0], &[5]]).face_lattice().f_vector(), vec![2, 1]);
}

#[test]
fn euler_relation() {
    for p in [
        wp1235_tetrahedron(),
        cube(3, 2),
        cube(4, 1),
        dilated_simplex(4, 2),
        poly(&[&[0, 0], &[3, 0], &[0, 3]]),
    ] {
        let fv = p.face_lattice().f_vector();
        let mut acc: i64 = 0;
        for (f, count) in fv.iter().enumerate() {
            let c = *count as i64;
            acc += if f % 2 == 0 { c } else { -c };
        }
        assert_eq!(acc, 1, "Euler relation for f-vector {:?}", fv);
    }
}

#[test]
fn wp1235_volumes() {
    let t = wp1235_tetrahedron();
    let fl = t.face_lattice();
    let top = fl.faces.last().unwrap();
    assert_eq!(top.normalized_volume, BigInt::from(900));
    // vertices sort lexicographically: 2 = (0,10,0), 3 = (15,0,0);
    // that edge has lattice length gcd(15,10) = 5
    let e = fl
        .faces
        .iter()
        .find(|f| f.dim == 1 && f.vertex_indices == vec![2, 3])
        .unwrap();
    assert_eq!(e.normalized_volume, BigInt::from(5));
    for &vid in &fl.by_dim[0] {
        assert_eq!(fl.faces[vid].normalized_volume, BigInt::from(1));
    }
}

#[test]
fn codim_volume_sums_examples() {
    assert_eq!(wp1235_tetrahedron().codim_volume_sums(), ints(&[900, 330, 41, 4]));
    assert_eq!(dilated_simplex(2, 3).codim_volume_sums(), ints(&[9, 9, 3]));
    assert_eq!(cube(2, 1).codim_volume_sums(), ints(&[2, 4, 4]));
}

#[test]
fn ehrhart_oracle_examples() {
    for d in 1..=4 {
        let s = dilated_simplex(d, 1);
        assert_eq!(s.ehrhart_volume_top(DEFAULT_SCAN_BUDGET).unwrap(), BigInt::from(1));
    }
    let seg = poly(&[&[0], &[5]]);
    assert_eq!(seg.ehrhart_volume_top(DEFAULT_SCAN_BUDGET).unwrap(), BigInt::from(5));
    let t = wp1235_tetrahedron();
    assert_eq!(t.ehrhart_volume_top(DEFAULT_SCAN_BUDGET).unwrap(), BigInt::from(900));
}

#[test]
fn interior_hull_examples() {
    let p = dilated_simplex(3, 4).interior_hull(DEFAULT_SCAN_BUDGET).unwrap().unwrap();
    assert_eq!(p.dim(), 0);
    assert_eq!(p.vertices()[0], ints(&[1, 1, 1]));

    assert!(dilated_simplex(3, 3).interior_hull(DEFAULT_SCAN_BUDGET).unwrap().is_none());

    let c = cube(3, 2).interior_hull(DEFAULT_SCAN_BUDGET).unwrap().unwrap();
    assert_eq!(c.dim(), 0);
    assert_eq!(c.vertices()[0], ints(&[1, 1, 1]));
}

#[test]
fn edge_lengths_examples() {
    let mut e: Vec<BigInt> = wp1235_tetrahedron().edge_lattice_lengths().unwrap();
    e.sort();
    assert_eq!(e, ints(&[2, 3, 5, 6, 10, 15]));

    let mut t = dilated_simplex(2, 3).edge_lattice_lengths().unwrap();
    t.sort();
    assert_eq!(t, ints(&[3, 3, 3]));

    let c = cube(3, 1).edge_lattice_lengths().unwrap();
    assert_eq!(c.len(), 12);
    assert!(c.iter().all(|x| *x == BigInt::from(1)));
}

#[test]
fn smoothness_examples() {
    assert!(dilated_simplex(2, 3).is_smooth().unwrap());
    assert!(!wp1235_tetrahedron().is_smooth().unwrap());
    assert!(cube(3, 2).is_smooth().unwrap());
}

#[test]
fn vertex_count_and_edge_sum_identities() {
    for p in [wp1235_tetrahedron(), cube(3, 2), dilated_simplex(3, 2), cube(2, 1)] {
        let sums = p.codim_volume_sums();
        let m = p.dim();
        assert_eq!(sums[m], BigInt::from(p.vertices().len()));
        let edge_sum: BigInt = p.edge_lattice_lengths().unwrap().into_iter().sum();
        assert_eq!(sums[m - 1], edge_sum);
    }
}

#[test]
fn dilation_scales_volume() {
    for base in [dilated_simplex(2, 1), dilated_simplex(3, 1), cube(2, 1)] {
        let m = base.dim() as u32;
        let v1 = base.codim_volume_sums()[0].clone();
        for t in 1..=3i64 {
            let scaled: Vec<Vec<BigInt>> = base
                .vertices()
                .iter()
                .map(|v| v.iter().map(|x| x * BigInt::from(t)).collect())
                .collect();
            let pt = LatticePolytope::from_vertices(&scaled).unwrap();
            assert_eq!(pt.codim_volume_sums()[0], BigInt::from(t).pow(m) * &v1);
        }
    }
}

#[test]
fn scan_budget_is_enforced() {
    let t = wp1235_tetrahedron();
    match t.lattice_point_count(0) {
        Err(Error::ResourceLimit(_)) => {}
        other => panic!("expected resource error, got {:?}", other),
    }
}

#[test]
fn oracle_matches_triangulation_on_all_faces() {
    for p in [wp1235_tetrahedron(), cube(3, 2), dilated_simplex(3, 3)] {
        let fl = p.face_lattice();
        for f in &fl.faces {
            let ehr = p.ehrhart_normalized_volume(f, DEFAULT_SCAN_BUDGET).unwrap();
            assert_eq!(ehr, f.normalized_volume, "face {:?}", f.vertex_indices);
        }
    }
}
