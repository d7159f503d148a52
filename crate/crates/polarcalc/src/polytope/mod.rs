//! Lattice polytopes: construction from vertices, face lattice
//! enumeration, normalized lattice volumes (pulling triangulation plus
//! an independent Ehrhart oracle), interior hulls, edge lengths, and
//! the smoothness test.
//!
//! Polytopes may sit in a higher-dimensional ambient lattice; all
//! metric computation happens in coordinates on the saturated
//! difference lattice of the affine hull, so normalized volumes are
//! always taken with respect to the ambient lattice restricted to the
//! hull, not the (possibly finer-indexed) lattice spanned by vertex
//! differences.

pub mod linalg;

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{gcd_all, interpolate_leading_times_factorial};

/// Hard desk-scale limits; exceeding them is a resource error.
pub const MAX_AMBIENT_DIM: usize = 6;
pub const MAX_VERTICES: usize = 60;
const MAX_HYPERPLANE_SUBSETS: u128 = 5_000_000;

/// A supporting halfspace in lattice coordinates: `normal · x <= offset`
/// for all points of the polytope, with primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// indices of the vertices lying on the hyperplane
    pub vertex_set: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LatticePolytope {
    ambient_dim: usize,
    dim: usize,
    /// extreme points only, sorted lexicographically, ambient coords
    vertices: Vec<Vec<BigInt>>,
    /// rows form a basis of Z^n intersected with the linear span of the
    /// vertex differences; empty for a point
    lattice_basis: Vec<Vec<BigInt>>,
    /// vertices in basis coordinates relative to `vertices[0]`, in Z^dim
    lattice_vertices: Vec<Vec<BigInt>>,
    facets: Vec<Facet>,
}

/// A face identified by its vertex-index set within the parent
/// polytope, with its normalized lattice volume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub dim: usize,
    pub vertex_indices: Vec<usize>,
    pub normalized_volume: BigInt,
}

/// All faces of a polytope grouped by dimension, the polytope itself
/// included as the unique top face.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    /// face ids grouped by dimension 0..=m
    pub by_dim: Vec<Vec<usize>>,
    /// children[f] = ids of the (dim-1)-faces contained in face f
    pub children: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(|v| v.len()).collect()
    }

    pub fn face_by_key(&self, key: &[usize]) -> Option<&Face> {
        self.faces.iter().find(|f| f.vertex_indices == key)
    }
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<BigInt>] {
        &self.vertices
    }

    pub fn lattice_vertices(&self) -> &[Vec<BigInt>] {
        &self.lattice_vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Convex hull of a nonempty set of lattice points. Redundant input
    /// points are dropped; only the extreme points are stored.
    pub fn from_vertices(points: &[Vec<BigInt>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::MalformedInput("empty vertex list".into()));
        }
        let n = points[0].len();
        if n > MAX_AMBIENT_DIM {
            return Err(Error::ResourceLimit(format!(
                "ambient dimension {} exceeds the supported maximum {}",
                n, MAX_AMBIENT_DIM
            )));
        }
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::MalformedInput(
                "vertices have inconsistent coordinate counts".into(),
            ));
        }
        let dedup: BTreeSet<Vec<BigInt>> = points.iter().cloned().collect();
        let points: Vec<Vec<BigInt>> = dedup.into_iter().collect();
        if points.len() > MAX_VERTICES {
            return Err(Error::ResourceLimit(format!(
                "{} points exceed the supported maximum {}",
                points.len(),
                MAX_VERTICES
            )));
        }
        let built = Self::build(&points, n)?;
        // rebuild from the extreme points only, so stored data refers to
        // vertices exclusively
        if built.vertices.len() == points.len() {
            Ok(built)
        } else {
            Self::build(&built.vertices, n)
        }
    }

    fn build(points: &[Vec<BigInt>], n: usize) -> Result<Self> {
        let base = points[0].clone(); // lexicographically smallest
        let diffs: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| (0..n).map(|i| &p[i] - &base[i]).collect())
            .collect();
        let ortho = linalg::integer_kernel(&diffs, n);
        let basis = linalg::integer_kernel(&ortho, n);
        let m = basis.len();

        let lattice_points: Vec<Vec<BigInt>> = diffs
            .iter()
            .map(|d| {
                linalg::solve_row_coords(&basis, d)
                    .expect("vertex difference lies in the saturated lattice")
            })
            .collect();

        if m == 0 {
            return Ok(LatticePolytope {
                ambient_dim: n,
                dim: 0,
                vertices: vec![base],
                lattice_basis: basis,
                lattice_vertices: vec![vec![]],
                facets: vec![],
            });
        }

        let facets = enumerate_facets(&lattice_points, m)?;

        // a point is extreme iff the facets through it have normals of
        // full rank
        let mut extreme: Vec<usize> = Vec::new();
        for (i, _) in lattice_points.iter().enumerate() {
            let normals: Vec<Vec<BigInt>> = facets
                .iter()
                .filter(|f| f.vertex_set.contains(&i))
                .map(|f| f.normal.clone())
                .collect();
            if linalg::rank(&normals, m) == m {
                extreme.push(i);
            }
        }

        if extreme.len() != points.len() {
            // keep only extreme points; caller re-runs build
            let verts: Vec<Vec<BigInt>> = extreme.iter().map(|&i| points[i].clone()).collect();
            return Ok(LatticePolytope {
                ambient_dim: n,
                dim: m,
                vertices: verts,
                lattice_basis: basis,
                lattice_vertices: vec![],
                facets: vec![],
            });
        }

        // sanity: each facet is supported by >= m affinely independent
        // vertices
        for f in &facets {
            let vs: Vec<Vec<BigInt>> = f
                .vertex_set
                .iter()
                .map(|&i| lattice_points[i].clone())
                .collect();
            let d: Vec<Vec<BigInt>> = vs[1..]
                .iter()
                .map(|v| (0..m).map(|j| &v[j] - &vs[0][j]).collect())
                .collect();
            debug_assert_eq!(linalg::rank(&d, m), m - 1);
        }

        Ok(LatticePolytope {
            ambient_dim: n,
            dim: m,
            vertices: points.to_vec(),
            lattice_basis: basis,
            lattice_vertices: lattice_points,
            facets,
        })
    }

    /// Combinatorial face lattice: every face of every dimension, as
    /// vertex-index sets, with containment between consecutive
    /// dimensions. Volumes are filled by [`Self::face_lattice`].
    fn face_sets(&self) -> (Vec<(usize, Vec<usize>)>, Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let full: Vec<usize> = (0..self.vertices.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(full);
        for f in &self.facets {
            sets.insert(f.vertex_set.clone());
        }
        // close under pairwise intersection; every face is an
        // intersection of facets
        loop {
            let cur: Vec<Vec<usize>> = sets.iter().cloned().collect();
            let mut added = false;
            for i in 0..cur.len() {
                for j in (i + 1)..cur.len() {
                    let inter: Vec<usize> = cur[i]
                        .iter()
                        .filter(|v| cur[j].binary_search(v).is_ok())
                        .cloned()
                        .collect();
                    if !inter.is_empty() && sets.insert(inter) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }

        let mut dims: Vec<(usize, Vec<usize>)> = sets
            .into_iter()
            .map(|s| (self.vertex_subset_dim(&s), s))
            .collect();
        dims.sort();

        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); self.dim + 1];
        for (id, (d, _)) in dims.iter().enumerate() {
            by_dim[*d].push(id);
        }
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); dims.len()];
        for (id, (d, s)) in dims.iter().enumerate() {
            if *d == 0 {
                continue;
            }
            for &cid in &by_dim[*d - 1] {
                let (_, cs) = &dims[cid];
                if cs.iter().all(|v| s.binary_search(v).is_ok()) {
                    children[id].push(cid);
                }
            }
        }
        (dims, by_dim, children)
    }

    fn vertex_subset_dim(&self, set: &[usize]) -> usize {
        let p0 = &self.lattice_vertices[set[0]];
        let d: Vec<Vec<BigInt>> = set[1..]
            .iter()
            .map(|&i| {
                (0..self.dim)
                    .map(|j| &self.lattice_vertices[i][j] - &p0[j])
                    .collect()
            })
            .collect();
        linalg::rank(&d, self.dim)
    }

    /// All faces with normalized volumes, grouped by dimension.
    pub fn face_lattice(&self) -> FaceLattice {
        let (dims, by_dim, children) = self.face_sets();
        let simplices = pulling_triangulations(&dims, &children);
        let faces: Vec<Face> = dims
            .iter()
            .enumerate()
            .map(|(id, (d, s))| Face {
                id,
                dim: *d,
                vertex_indices: s.clone(),
                normalized_volume: self.face_volume_from_simplices(*d, &simplices[id]),
            })
            .collect();
        FaceLattice { faces, by_dim, children }
    }

    /// Normalized lattice volume of a face given by its vertex-index
    /// set (a point has volume 1). The face must actually be a face of
    /// the polytope when used with Euler weights, but any affinely
    /// spanning vertex subset has a well-defined volume.
    pub fn normalized_volume(&self, face: &Face) -> BigInt {
        let sub = self.face_subpolytope(&face.vertex_indices);
        sub.volume_top()
    }

    /// Normalized volume of the polytope itself.
    pub fn volume_top(&self) -> BigInt {
        let (dims, _, children) = self.face_sets();
        let simplices = pulling_triangulations(&dims, &children);
        let top = dims.len() - 1;
        self.face_volume_from_simplices(self.dim, &simplices[top])
    }

    fn face_volume_from_simplices(&self, fdim: usize, simplices: &[Vec<usize>]) -> BigInt {
        if fdim == 0 {
            return BigInt::one();
        }
        // coordinates on the saturated lattice of the face's own hull
        let all: BTreeSet<usize> = simplices.iter().flatten().cloned().collect();
        let all: Vec<usize> = all.into_iter().collect();
        let p0 = &self.lattice_vertices[all[0]];
        let d: Vec<Vec<BigInt>> = all
            .iter()
            .map(|&i| {
                (0..self.dim)
                    .map(|j| &self.lattice_vertices[i][j] - &p0[j])
                    .collect()
            })
            .collect();
        let ortho = linalg::integer_kernel(&d, self.dim);
        let basis = linalg::integer_kernel(&ortho, self.dim);
        debug_assert_eq!(basis.len(), fdim);
        let coord = |v: usize| -> Vec<BigInt> {
            let diff: Vec<BigInt> = (0..self.dim)
                .map(|j| &self.lattice_vertices[v][j] - &p0[j])
                .collect();
            linalg::solve_row_coords(&basis, &diff).expect("face vertex in face lattice span")
        };
        let coords: BTreeMap<usize, Vec<BigInt>> = all.iter().map(|&v| (v, coord(v))).collect();
        let mut vol = BigInt::zero();
        for s in simplices {
            let c0 = &coords[&s[0]];
            let edges: Vec<Vec<BigInt>> = s[1..]
                .iter()
                .map(|&v| (0..fdim).map(|j| &coords[&v][j] - &c0[j]).collect())
                .collect();
            vol += linalg::det(&edges).abs();
        }
        vol
    }

    /// Standalone polytope built from a face's vertices (in ambient
    /// coordinates).
    pub fn face_subpolytope(&self, vertex_indices: &[usize]) -> LatticePolytope {
        let pts: Vec<Vec<BigInt>> = vertex_indices
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect();
        LatticePolytope::from_vertices(&pts).expect("face vertices form a valid polytope")
    }

    /// Sum of normalized face volumes by codimension j = 0..=dim.
    pub fn codim_volume_sums(&self) -> Vec<BigInt> {
        let fl = self.face_lattice();
        self.codim_volume_sums_from(&fl)
    }

    pub fn codim_volume_sums_from(&self, fl: &FaceLattice) -> Vec<BigInt> {
        let m = self.dim;
        let mut out = vec![BigInt::zero(); m + 1];
        for f in &fl.faces {
            out[m - f.dim] += &f.normalized_volume;
        }
        out
    }

    /// Lattice lengths of all edges (dimension-1 faces).
    pub fn edge_lattice_lengths(&self) -> Result<Vec<BigInt>> {
        if self.dim < 1 {
            return Err(Error::Precondition(
                "edge lengths require a polytope of dimension >= 1".into(),
            ));
        }
        let fl = self.face_lattice();
        Ok(fl.by_dim[1]
            .iter()
            .map(|&id| fl.faces[id].normalized_volume.clone())
            .collect())
    }

    /// Independent volume oracle: count lattice points of the dilates
    /// t·F for t = 0..dim(F) and take the leading Ehrhart coefficient
    /// times dim(F)!.
    pub fn ehrhart_normalized_volume(&self, face: &Face, budget: u64) -> Result<BigInt> {
        let sub = self.face_subpolytope(&face.vertex_indices);
        sub.ehrhart_volume_top(budget)
    }

    pub fn ehrhart_volume_top(&self, budget: u64) -> Result<BigInt> {
        let f = self.dim;
        let mut counts = Vec::with_capacity(f + 1);
        for t in 0..=(f as i64) {
            counts.push(BigInt::from(self.dilate_point_count(t, budget)?));
        }
        let vol = interpolate_leading_times_factorial(&counts);
        if vol.is_negative() {
            return Err(Error::Inconsistency(
                "Ehrhart interpolation produced a negative leading coefficient".into(),
            ));
        }
        Ok(vol)
    }

    /// Number of lattice points in t·P, counted in lattice coordinates.
    fn dilate_point_count(&self, t: i64, budget: u64) -> Result<u64> {
        if self.dim == 0 {
            return Ok(1);
        }
        if t == 0 {
            return Ok(1);
        }
        let tb = BigInt::from(t);
        let scaled: Vec<Vec<BigInt>> = self
            .lattice_vertices
            .iter()
            .map(|v| v.iter().map(|x| x * &tb).collect())
            .collect();
        let (lo, hi) = bounding_box(&scaled)?;
        let mut count = 0u64;
        scan_box(&lo, &hi, budget, &mut |pt| {
            let inside = self.facets.iter().all(|fc| {
                let mut s = BigInt::zero();
                for (a, x) in fc.normal.iter().zip(pt) {
                    s += a * x;
                }
                s <= &fc.offset * &tb
            });
            if inside {
                count += 1;
            }
        })?;
        Ok(count)
    }

    /// Number of lattice points in P itself.
    pub fn lattice_point_count(&self, budget: u64) -> Result<u64> {
        self.dilate_point_count(1, budget)
    }

    /// Convex hull of the lattice points in the relative interior of P
    /// (strictly inside every facet), in ambient coordinates. `None`
    /// when there are no interior lattice points. A point is its own
    /// relative interior.
    pub fn interior_hull(&self, budget: u64) -> Result<Option<LatticePolytope>> {
        if self.dim == 0 {
            return Ok(Some(self.clone()));
        }
        let (lo, hi) = bounding_box(&self.lattice_vertices)?;
        let mut interior: Vec<Vec<BigInt>> = Vec::new();
        scan_box(&lo, &hi, budget, &mut |pt| {
            let strict = self.facets.iter().all(|fc| {
                let mut s = BigInt::zero();
                for (a, x) in fc.normal.iter().zip(pt) {
                    s += a * x;
                }
                s < fc.offset
            });
            if strict {
                interior.push(pt.to_vec());
            }
        })?;
        if interior.is_empty() {
            return Ok(None);
        }
        // map back to ambient coordinates
        let base = &self.vertices[0];
        let ambient: Vec<Vec<BigInt>> = interior
            .iter()
            .map(|c| {
                (0..self.ambient_dim)
                    .map(|j| {
                        let mut x = base[j].clone();
                        for (ci, b) in c.iter().zip(&self.lattice_basis) {
                            x += ci * &b[j];
                        }
                        x
                    })
                    .collect()
            })
            .collect();
        Ok(Some(LatticePolytope::from_vertices(&ambient)?))
    }

    /// True iff the polytope (viewed full-dimensionally in its own
    /// lattice) is simple and the primitive edge directions at every
    /// vertex form a basis of the lattice.
    pub fn is_smooth(&self) -> Result<bool> {
        let m = self.dim;
        if m == 0 {
            return Ok(true);
        }
        let fl = self.face_lattice();
        for v in 0..self.vertices.len() {
            let mut dirs: Vec<Vec<BigInt>> = Vec::new();
            for &eid in &fl.by_dim[1] {
                let e = &fl.faces[eid];
                if !e.vertex_indices.contains(&v) {
                    continue;
                }
                let &w = e.vertex_indices.iter().find(|&&x| x != v).unwrap();
                let d: Vec<BigInt> = (0..m)
                    .map(|j| &self.lattice_vertices[w][j] - &self.lattice_vertices[v][j])
                    .collect();
                let g = gcd_all(&d);
                dirs.push(d.iter().map(|x| x / &g).collect());
            }
            if dirs.len() != m {
                return Ok(false);
            }
            if linalg::det(&dirs).abs() != BigInt::one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Supporting hyperplanes of a full-dimensional point set in Z^m by
/// brute force over m-subsets. Desk scale only.
fn enumerate_facets(points: &[Vec<BigInt>], m: usize) -> Result<Vec<Facet>> {
    let p = points.len() as u128;
    let mut subsets = 1u128;
    for i in 0..m as u128 {
        subsets = subsets * (p - i) / (i + 1);
        if subsets > MAX_HYPERPLANE_SUBSETS {
            return Err(Error::ResourceLimit(
                "too many vertex subsets for facet enumeration".into(),
            ));
        }
    }

    let mut seen: BTreeSet<(Vec<BigInt>, BigInt)> = BTreeSet::new();
    let mut facets = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        // hyperplane through points[idx], if affinely independent
        let p0 = &points[idx[0]];
        let dirs: Vec<Vec<BigInt>> = idx[1..]
            .iter()
            .map(|&i| (0..m).map(|j| &points[i][j] - &p0[j]).collect())
            .collect();
        let normal = linalg::hyperplane_normal(&dirs, m);
        let g = gcd_all(&normal);
        if !g.is_zero() {
            let mut normal: Vec<BigInt> = normal.iter().map(|x| x / &g).collect();
            let mut offset = dot(&normal, p0);
            let mut pos = false;
            let mut neg = false;
            for pt in points {
                let s = dot(&normal, pt);
                if s > offset {
                    pos = true;
                } else if s < offset {
                    neg = true;
                }
            }
            if !(pos && neg) {
                if pos {
                    normal = normal.iter().map(|x| -x).collect();
                    offset = -offset;
                }
                if seen.insert((normal.clone(), offset.clone())) {
                    let vertex_set: Vec<usize> = points
                        .iter()
                        .enumerate()
                        .filter(|(_, pt)| dot(&normal, pt) == offset)
                        .map(|(i, _)| i)
                        .collect();
                    facets.push(Facet { normal, offset, vertex_set });
                }
            }
        }

        // next m-combination
        let n = points.len();
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(facets);
            }
            i -= 1;
            if idx[i] != i + n - m {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pulling triangulation of every face: cone the lowest-index vertex of
/// a face over the triangulations of the child faces avoiding it.
fn pulling_triangulations(
    dims: &[(usize, Vec<usize>)],
    children: &[Vec<usize>],
) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dims.len()];
    for (id, (d, s)) in dims.iter().enumerate() {
        if *d == 0 {
            out[id] = vec![vec![s[0]]];
            continue;
        }
        let v0 = s[0];
        let mut simplices = Vec::new();
        for &cid in &children[id] {
            let (_, cs) = &dims[cid];
            if cs.contains(&v0) {
                continue;
            }
            for simplex in &out[cid] {
                let mut t = simplex.clone();
                t.push(v0);
                simplices.push(t);
            }
        }
        out[id] = simplices;
    }
    out
}

fn bounding_box(points: &[Vec<BigInt>]) -> Result<(Vec<i64>, Vec<i64>)> {
    let m = points[0].len();
    let mut lo = vec![i64::MAX; m];
    let mut hi = vec![i64::MIN; m];
    for p in points {
        for (j, x) in p.iter().enumerate() {
            let v = x.to_i64().ok_or_else(|| {
                Error::ResourceLimit("coordinate too large for lattice-point scan".into())
            })?;
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    Ok((lo, hi))
}

/// Enumerate all integer points of the box [lo, hi], invoking `f` on
/// each; errors out if the box exceeds `budget` points.
fn scan_box(
    lo: &[i64],
    hi: &[i64],
    budget: u64,
    f: &mut dyn FnMut(&[BigInt]),
) -> Result<()> {
    let mut total = 1u128;
    for (l, h) in lo.iter().zip(hi) {
        total *= (h - l + 1) as u128;
    }
    if total > budget as u128 {
        return Err(Error::ResourceLimit(format!(
            "lattice-point scan of {} points exceeds the budget of {}",
            total, budget
        )));
    }
    let m = lo.len();
    let mut cur = lo.to_vec();
    loop {
        let pt: Vec<BigInt> = cur.iter().map(|&x| BigInt::from(x)).collect();
        f(&pt);
        let mut i = 0;
        loop {
            if i == m {
                return Ok(());
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

#[cfg(test)]
pub mod tests;
