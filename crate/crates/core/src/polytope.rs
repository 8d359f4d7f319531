//! Newton polytopes of finite integer point sets: vertices, facet
//! inequalities, the full face lattice, and supporting-face queries.
//!
//! A face is the set of points minimizing an integer linear functional; the
//! improper face (the whole polytope) carries the zero functional. Lower
//! dimensional hulls are handled by a unimodular projection onto lattice
//! coordinates of the affine hull.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPolynomial};
use crate::lattice::{smith_normal_form, IntegerMatrix};

const MAX_AMBIENT_DIM: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive inner normal: `<normal, p> >= offset` for all generators.
    pub normal: Vec<i64>,
    pub offset: i64,
}

#[derive(Debug)]
struct FaceData {
    dim: usize,
    /// Indices into `generators`, sorted.
    support: Vec<usize>,
    /// Integer direction whose argmin over the polytope is this face; zero
    /// for the improper face.
    normal: Vec<i64>,
}

#[derive(Debug)]
struct PolytopeData {
    ambient_dim: usize,
    dim: usize,
    generators: Vec<ExponentVector>,
    vertices: Vec<ExponentVector>,
    facets: Vec<Facet>,
    faces: Vec<FaceData>,
    support_index: BTreeMap<Vec<usize>, usize>,
}

/// Convex hull of a finite set of lattice points, with its full face lattice
/// computed eagerly. Cheap to clone.
#[derive(Clone, Debug)]
pub struct NewtonPolytope {
    inner: Arc<PolytopeData>,
}

/// One face of a `NewtonPolytope`. Faces of the same polytope compare equal
/// iff their support point sets agree.
#[derive(Clone, Debug)]
pub struct Face {
    polytope: NewtonPolytope,
    index: usize,
}

impl PartialEq for Face {
    fn eq(&self, other: &Self) -> bool {
        self.polytope.generators() == other.polytope.generators()
            && self.data().support == other.data().support
    }
}

impl Eq for Face {}

impl Face {
    fn data(&self) -> &FaceData {
        &self.polytope.inner.faces[self.index]
    }

    pub fn polytope(&self) -> &NewtonPolytope {
        &self.polytope
    }

    /// Position in the polytope's deterministic face ordering.
    pub fn id(&self) -> usize {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.data().dim
    }

    pub fn is_improper(&self) -> bool {
        self.data().support.len() == self.polytope.inner.generators.len()
    }

    pub fn defining_normal(&self) -> &[i64] {
        &self.data().normal
    }

    pub fn support_points(&self) -> Vec<ExponentVector> {
        self.data()
            .support
            .iter()
            .map(|&i| self.polytope.inner.generators[i].clone())
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.data().support.len()
    }

    /// True when the point is one of the face's support points.
    pub fn contains(&self, p: &ExponentVector) -> bool {
        self.polytope
            .inner
            .generators
            .iter()
            .position(|g| g == p)
            .map(|i| self.data().support.binary_search(&i).is_ok())
            .unwrap_or(false)
    }
}

impl NewtonPolytope {
    /// Hull of the given points. Arity is capped at 6.
    pub fn new(points: &[ExponentVector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        let n = points[0].arity();
        if n > MAX_AMBIENT_DIM {
            return Err(Error::DimensionCap {
                dim: n,
                max: MAX_AMBIENT_DIM,
            });
        }
        if points.iter().any(|p| p.arity() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: points.iter().map(|p| p.arity()).find(|&a| a != n).unwrap(),
            });
        }
        let mut generators = points.to_vec();
        generators.sort();
        generators.dedup();
        Ok(NewtonPolytope {
            inner: Arc::new(build(n, generators)),
        })
    }

    /// Newton polytope of the support of `f`.
    pub fn of_polynomial(f: &LaurentPolynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::EmptySupport);
        }
        Self::new(&f.support())
    }

    pub fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.inner.generators
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.inner.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.inner.facets
    }

    pub fn is_vertex(&self, p: &ExponentVector) -> bool {
        self.inner.vertices.iter().any(|v| v == p)
    }

    pub fn face_count(&self) -> usize {
        self.inner.faces.len()
    }

    pub fn face(&self, index: usize) -> Face {
        assert!(index < self.inner.faces.len(), "face index out of range");
        Face {
            polytope: self.clone(),
            index,
        }
    }

    /// Every face: all proper faces plus the improper face, ordered by
    /// (dimension, support).
    pub fn all_faces(&self) -> Vec<Face> {
        (0..self.inner.faces.len()).map(|i| self.face(i)).collect()
    }

    pub fn improper_face(&self) -> Face {
        let all: Vec<usize> = (0..self.inner.generators.len()).collect();
        let idx = *self
            .inner
            .support_index
            .get(&all)
            .expect("improper face is always present");
        self.face(idx)
    }

    /// The face on which `<v, .>` attains its minimum.
    pub fn face_of_direction(&self, v: &[i64]) -> Result<Face> {
        if v.len() != self.inner.ambient_dim {
            return Err(Error::ArityMismatch {
                expected: self.inner.ambient_dim,
                found: v.len(),
            });
        }
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroDirection);
        }
        let values: Vec<i128> = self
            .inner
            .generators
            .iter()
            .map(|g| dot(v, g.entries()))
            .collect();
        let mn = *values.iter().min().unwrap();
        let support: Vec<usize> = (0..values.len()).filter(|&i| values[i] == mn).collect();
        let idx = *self
            .inner
            .support_index
            .get(&support)
            .expect("argmin of a linear functional must be a face");
        Ok(self.face(idx))
    }

    /// Face with exactly this support point set, if any.
    pub fn face_with_support(&self, points: &[ExponentVector]) -> Option<Face> {
        let mut idxs = Vec::with_capacity(points.len());
        for p in points {
            idxs.push(self.inner.generators.iter().position(|g| g == p)?);
        }
        idxs.sort();
        idxs.dedup();
        self.inner.support_index.get(&idxs).map(|&i| self.face(i))
    }
}

fn dot(v: &[i64], p: &[i64]) -> i128 {
    v.iter().zip(p).map(|(&a, &b)| a as i128 * b as i128).sum()
}

fn build(ambient_dim: usize, generators: Vec<ExponentVector>) -> PolytopeData {
    let m = generators.len();
    // lattice coordinates of the affine hull via the Smith transform of the
    // difference matrix
    let p0 = generators[0].clone();
    let diffs: Vec<Vec<i64>> = generators
        .iter()
        .map(|p| p.sub(&p0).entries().to_vec())
        .collect();
    let (dim, projected, u) = project_to_affine_hull(ambient_dim, &diffs);

    if dim == 0 {
        let support: Vec<usize> = (0..m).collect();
        let faces = vec![FaceData {
            dim: 0,
            support: support.clone(),
            normal: vec![0; ambient_dim],
        }];
        let mut support_index = BTreeMap::new();
        support_index.insert(support, 0);
        return PolytopeData {
            ambient_dim,
            dim: 0,
            vertices: generators.clone(),
            generators,
            facets: Vec::new(),
            faces,
            support_index,
        };
    }

    // facets of the full-dimensional projection
    let mut facet_map: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
    let mut subset = vec![0usize; dim];
    enumerate_subsets(m, dim, &mut subset, 0, 0, &mut |sel| {
        if let Some(w) = hyperplane_normal(&projected, sel, dim) {
            let values: Vec<i128> = projected.iter().map(|y| dot(&w, y)).collect();
            let mn = *values.iter().min().unwrap();
            let mx = *values.iter().max().unwrap();
            if mn == mx {
                return;
            }
            let v0 = values[sel[0]];
            let (normal, bound) = if v0 == mn {
                (w, mn)
            } else if v0 == mx {
                (w.iter().map(|&x| -x).collect(), -mx)
            } else {
                return;
            };
            let support: Vec<usize> = (0..m)
                .filter(|&i| dot(&normal, &projected[i]) == bound)
                .collect();
            facet_map.entry(support).or_insert(normal);
        }
    });

    // pull facet normals back to the ambient lattice and compute offsets
    let mut facets = Vec::new();
    let mut facet_supports = Vec::new();
    for (support, w) in &facet_map {
        let normal = pull_back(&u, w, ambient_dim, dim);
        let offset = generators
            .iter()
            .map(|g| dot(&normal, g.entries()))
            .min()
            .unwrap();
        facets.push(Facet {
            normal,
            offset: i64::try_from(offset).expect("facet offset overflows i64"),
        });
        facet_supports.push(support.clone());
    }

    // the face lattice is the meet-closure of the facet supports
    let mut sets: BTreeSet<Vec<usize>> = facet_supports.iter().cloned().collect();
    let mut queue: Vec<Vec<usize>> = sets.iter().cloned().collect();
    while let Some(s) = queue.pop() {
        for f in &facet_supports {
            let inter: Vec<usize> = s
                .iter()
                .copied()
                .filter(|i| f.binary_search(i).is_ok())
                .collect();
            if !inter.is_empty() && sets.insert(inter.clone()) {
                queue.push(inter);
            }
        }
    }
    sets.insert((0..m).collect());

    let mut faces: Vec<FaceData> = sets
        .into_iter()
        .map(|support| {
            let pts: Vec<&[i64]> = support.iter().map(|&i| projected[i].as_slice()).collect();
            let fdim = affine_rank(&pts);
            let normal = if support.len() == m {
                vec![0; ambient_dim]
            } else {
                let mut acc = vec![0i64; ambient_dim];
                for (fi, fs) in facet_supports.iter().enumerate() {
                    if support.iter().all(|i| fs.binary_search(i).is_ok()) {
                        for (a, b) in acc.iter_mut().zip(&facets[fi].normal) {
                            *a += *b;
                        }
                    }
                }
                acc
            };
            FaceData {
                dim: fdim,
                support,
                normal,
            }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.support.cmp(&b.support)));

    let support_index: BTreeMap<Vec<usize>, usize> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.support.clone(), i))
        .collect();

    let vertices: Vec<ExponentVector> = faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| generators[f.support[0]].clone())
        .collect();

    PolytopeData {
        ambient_dim,
        dim,
        generators,
        vertices,
        facets,
        faces,
        support_index,
    }
}

/// Rank of the affine hull and lattice coordinates `y_i` of each point in it,
/// together with the unimodular row transform used for the projection.
fn project_to_affine_hull(
    ambient_dim: usize,
    diffs: &[Vec<i64>],
) -> (usize, Vec<Vec<i64>>, IntegerMatrix) {
    let m = diffs.len();
    let cols: Vec<&Vec<i64>> = diffs.iter().filter(|d| d.iter().any(|&x| x != 0)).collect();
    if cols.is_empty() || ambient_dim == 0 {
        return (
            0,
            vec![Vec::new(); m],
            IntegerMatrix::identity(ambient_dim),
        );
    }
    let mut data = Vec::with_capacity(ambient_dim * cols.len());
    for i in 0..ambient_dim {
        for d in &cols {
            data.push(BigInt::from(d[i]));
        }
    }
    let dmat = IntegerMatrix::new(ambient_dim, cols.len(), data).unwrap();
    let snf = smith_normal_form(&dmat);
    let dim = snf.rank();
    let u = snf.u;
    let projected: Vec<Vec<i64>> = diffs
        .iter()
        .map(|d| {
            let full = u.apply_i64(d).unwrap();
            debug_assert!(full[dim..].iter().all(|x| x.is_zero()));
            full[..dim]
                .iter()
                .map(|b| i64::try_from(b).expect("projected coordinate overflows i64"))
                .collect()
        })
        .collect();
    (dim, projected, u)
}

/// `v = u^T (w, 0)`: the ambient functional inducing `w` on the projected
/// coordinates.
fn pull_back(u: &IntegerMatrix, w: &[i64], ambient_dim: usize, dim: usize) -> Vec<i64> {
    (0..ambient_dim)
        .map(|j| {
            let mut acc = BigInt::zero();
            for (i, &wi) in w.iter().enumerate().take(dim) {
                acc += u.get(i, j) * BigInt::from(wi);
            }
            i64::try_from(&acc).expect("pulled-back normal overflows i64")
        })
        .collect()
}

fn enumerate_subsets(
    m: usize,
    k: usize,
    subset: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(subset);
        return;
    }
    for i in start..m {
        subset[depth] = i;
        enumerate_subsets(m, k, subset, depth + 1, i + 1, visit);
    }
}

/// Primitive normal of the affine hull of `dim` points in Z^dim, provided the
/// hull is a hyperplane (affine dimension exactly dim - 1).
fn hyperplane_normal(points: &[Vec<i64>], sel: &[usize], dim: usize) -> Option<Vec<i64>> {
    let base = &points[sel[0]];
    let rows: Vec<Vec<i64>> = sel[1..]
        .iter()
        .map(|&i| {
            points[i]
                .iter()
                .zip(base)
                .map(|(a, b)| a - b)
                .collect::<Vec<i64>>()
        })
        .collect();
    // generalized cross product: signed maximal minors
    let mut w = vec![0i64; dim];
    let mut nonzero = false;
    for j in 0..dim {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, &x)| x as i128)
                    .collect()
            })
            .collect();
        let mut d = det_i128(&minor);
        if j % 2 == 1 {
            d = -d;
        }
        w[j] = i64::try_from(d).expect("hyperplane normal overflows i64");
        nonzero |= d != 0;
    }
    if !nonzero {
        return None;
    }
    let g = w.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        for x in &mut w {
            *x /= g;
        }
    }
    Some(w)
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = m[0][j] * det_i128(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Affine dimension of a point set (rank of the difference vectors).
fn affine_rank(points: &[&[i64]]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let mut rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    let cols = base.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            if rows[i][col] != 0 {
                let (a, b) = (rows[rank][col], rows[i][col]);
                for j in col..cols {
                    rows[i][j] = rows[i][j] * a - rows[rank][j] * b;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
